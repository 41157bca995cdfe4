use alloc::string::String;
use alloc::vec::Vec;

use super::{build_symbolic, region_pair};
use crate::bounds::{axioms, RelationFamily, Style};
use crate::polytope::{project_rates, reduce, AxiomSet, IneqSystem};
use crate::probspace::Family;
use crate::Result;

/// Symbolic elimination of a family's split region.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicProjection {
    pub family: Family,
    /// Distinct rows straight out of elimination.
    pub raw: IneqSystem,
    /// `raw` after axiom-driven redundancy removal.
    pub reduced: IneqSystem,
    /// The family's closed form.
    pub closed: IneqSystem,
}

impl SymbolicProjection {
    /// Nontrivial rows of `raw`.
    pub fn raw_rows(&self) -> usize {
        nontrivial(&self.raw).len()
    }

    /// Whether the reduced rows are exactly the closed-form rows.
    pub fn matches_closed_form(&self) -> bool {
        nontrivial(&self.reduced) == nontrivial(&self.closed)
    }
}

/// Rows other than `-R_i <= 0`, as a label-free set.
pub fn nontrivial(sys: &IneqSystem) -> Vec<String> {
    let mut rows: Vec<String> = sys
        .rows()
        .iter()
        .filter(|r| r.coeffs.iter().any(num_traits::Signed::is_positive) || !r.rhs.as_sym().is_some_and(|e| e.is_zero()))
        .map(|r| sys.row_text(r))
        .collect();
    rows.sort();
    rows.dedup();
    rows
}

/// Relations licensed for the family's reduction.
pub fn reduction_axioms(family: Family) -> Result<AxiomSet> {
    let style = Style::of(family)?;
    let mut ax = AxiomSet::new();
    let groups: &[RelationFamily] = match family {
        Family::Hk | Family::GeneralIc => &[RelationFamily::HkIneq, RelationFamily::HkIndependence],
        Family::Hod => &[RelationFamily::HodIneq],
        Family::Cmg | Family::HodCmg => &[RelationFamily::CmgIneq],
        Family::ModCmg => &[RelationFamily::ModCmgIneq],
    };
    for rf in groups {
        ax.extend(&axioms(*rf, style)?);
    }
    Ok(ax)
}

pub fn symbolic_projection(family: Family) -> Result<SymbolicProjection> {
    let (split, closed) = region_pair(family);
    let style = Style::of(family)?;
    let raw = project_rates(&build_symbolic(split, style)?)?;
    let reduced = reduce(&raw, &reduction_axioms(family)?)?;
    Ok(SymbolicProjection { family, raw, reduced, closed: build_symbolic(closed, style)? })
}
