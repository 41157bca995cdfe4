use alloc::vec::Vec;

use super::compare::maximize_over;
use super::lp::LpResult;
use super::system::{IneqSystem, Mode};
use crate::rational::{int, to_f64};
use crate::{Error, Result};

/// Vertices must satisfy every row to within this.
pub const VERTEX_TOL: f64 = 1e-7;
const FEAS_TOL: f64 = 1e-9;

/// A bounded convex polygon in the `(R1, R2)` plane.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Region2D {
    /// Counterclockwise, starting from the lowest-leftmost vertex.
    pub vertices: Vec<(f64, f64)>,
    pub area: f64,
}

impl Region2D {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Whether both vertex lists agree point-for-point within `tol`.
    pub fn same_vertices(&self, other: &Region2D, tol: f64) -> bool {
        let close = |p: &(f64, f64), q: &(f64, f64)| (p.0 - q.0).abs() <= tol && (p.1 - q.1).abs() <= tol;
        self.vertices.len() == other.vertices.len()
            && self.vertices.iter().all(|p| other.vertices.iter().any(|q| close(p, q)))
            && other.vertices.iter().all(|q| self.vertices.iter().any(|p| close(p, q)))
    }
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Convex hull by monotone chain, dropping collinear points.
fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    let mut uniq: Vec<(f64, f64)> = Vec::new();
    for p in pts.drain(..) {
        if !uniq.iter().any(|q| (p.0 - q.0).abs() <= FEAS_TOL && (p.1 - q.1).abs() <= FEAS_TOL) {
            uniq.push(p);
        }
    }
    pts = uniq;
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    if pts.len() < 3 {
        return pts;
    }
    let eps = 1e-12;
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= eps {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= eps {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn shoelace(v: &[(f64, f64)]) -> f64 {
    if v.len() < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..v.len() {
        let (a, b) = (v[i], v[(i + 1) % v.len()]);
        s += a.0 * b.1 - b.0 * a.1;
    }
    (s / 2.0).abs()
}

/// Enumerates the polygon of a numeric `(R1, R2)` system with `R >= 0`.
pub fn geometry2d(sys: &IneqSystem) -> Result<Region2D> {
    if sys.mode() != Mode::Numeric || sys.variables().len() != 2 {
        return Err(Error::DimensionMismatch("geometry needs a numeric two-variable system".into()));
    }
    match maximize_over(sys, &[int(1), int(1)]) {
        LpResult::Infeasible => return Ok(Region2D::default()),
        LpResult::Unbounded => return Err(Error::Unbounded("region is not bounded".into())),
        LpResult::Optimal { .. } => {}
    }
    let mut lines: Vec<(f64, f64, f64)> = sys
        .rows()
        .iter()
        .map(|r| (to_f64(&r.coeffs[0]), to_f64(&r.coeffs[1]), r.rhs.as_num().unwrap_or(f64::NAN)))
        .filter(|l| l.0 != 0.0 || l.1 != 0.0)
        .collect();
    lines.push((-1.0, 0.0, 0.0));
    lines.push((0.0, -1.0, 0.0));
    let inside = |p: (f64, f64)| p.0 >= -FEAS_TOL && p.1 >= -FEAS_TOL && sys.contains(&[p.0, p.1], FEAS_TOL);
    let mut pts = Vec::new();
    for i in 0..lines.len() {
        for j in i + 1..lines.len() {
            let (a, b) = (lines[i], lines[j]);
            let det = a.0 * b.1 - a.1 * b.0;
            if det.abs() < 1e-14 {
                continue;
            }
            let p = ((a.2 * b.1 - a.1 * b.2) / det, (a.0 * b.2 - a.2 * b.0) / det);
            if inside(p) {
                let snap = |x: f64| if x.abs() < 1e-12 { 0.0 } else { x };
                pts.push((snap(p.0), snap(p.1)));
            }
        }
    }
    let vertices = hull(pts);
    let area = shoelace(&vertices);
    Ok(Region2D { vertices, area })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Rhs;

    fn sys(rows: &[(&[(&str, i64)], f64)]) -> IneqSystem {
        let mut s = IneqSystem::new(Mode::Numeric, &["R1", "R2"]);
        for (t, b) in rows {
            s.add("r", t, Rhs::Num(*b)).unwrap();
        }
        s.add_nonnegativity();
        s
    }

    #[test]
    fn unit_square() {
        let g = geometry2d(&sys(&[(&[("R1", 1)], 1.0), (&[("R2", 1)], 1.0)])).unwrap();
        assert_eq!(g.vertices, [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]);
        assert_eq!(g.area, 1.0);
    }

    #[test]
    fn pentagon() {
        let g = geometry2d(&sys(&[(&[("R1", 1), ("R2", 1)], 2.0), (&[("R1", 1)], 1.5), (&[("R2", 1)], 1.5)])).unwrap();
        assert_eq!(g.vertices, [(0.0, 0.0), (1.5, 0.0), (1.5, 0.5), (0.5, 1.5), (0.0, 1.5)]);
        assert!((g.area - (2.25 - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn empty_region() {
        let g = geometry2d(&sys(&[(&[("R1", 1)], -1.0), (&[("R2", 1)], 1.0)])).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.area, 0.0);
    }

    #[test]
    fn degenerate_segment() {
        let g = geometry2d(&sys(&[(&[("R1", 1)], -1e-15), (&[("R2", 1)], 0.5), (&[("R1", 1), ("R2", 1)], 0.5)])).unwrap();
        assert_eq!(g.vertices, [(0.0, 0.0), (0.0, 0.5)]);
        assert_eq!(g.area, 0.0);
    }

    #[test]
    fn origin_only() {
        let g = geometry2d(&sys(&[(&[("R1", 1)], 0.0), (&[("R2", 1)], 0.0)])).unwrap();
        assert_eq!(g.vertices, [(0.0, 0.0)]);
    }

    #[test]
    fn unbounded_region() {
        assert!(matches!(geometry2d(&sys(&[(&[("R1", 1)], 1.0)])), Err(Error::Unbounded(_))));
    }
}
