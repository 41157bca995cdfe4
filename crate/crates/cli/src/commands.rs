use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use icregion::binning_sim::{pool_rates, scaled_rates, simulate, simulate_direct, TrialConfig, DEFAULT_EPS};
use icregion::common_info;
use icregion::polytope::{equal, geometry2d, project_rates, reduce, AxiomSet};
use icregion::probspace::Family;
use icregion::rational::{format_sig, parse_rational, Rational};
use icregion::regions::{
    build, compare_suite, crosscheck_constants, nontrivial, region_pair, symbolic_projection, RegionId, Status,
};
use icregion::sweep::{crosscheck_sweep, lift_sweep, relation_sweep, SweepReport};

use crate::context::Context;
use crate::distfile::{parse_str, DistError};
use crate::plot;

const COMMON_INFO_FILE: &str = include_str!("../data/common_info.json");

#[derive(Debug, Parser)]
#[command(name = "icregion", version, about = "Interference-channel rate-region workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the bound constants of a distribution.
    Eval {
        #[arg(long)]
        dist: PathBuf,
        /// Constant family; defaults to the file's own.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Project a split region and compare it with the closed form.
    Project {
        #[arg(long, required_unless_present = "symbolic")]
        dist: Option<PathBuf>,
        #[arg(long)]
        family: Option<String>,
        /// Eliminate symbolically for the given family instead.
        #[arg(long, conflicts_with = "dist")]
        symbolic: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare independent and lifted dependent regions.
    Compare {
        #[arg(long)]
        dist: PathBuf,
        /// Pmf of the first common part, e.g. 1/2,1/2.
        #[arg(long, value_delimiter = ',', requires = "k2")]
        k1: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',', requires = "k1")]
        k2: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every sweep and the symbolic reductions.
    Verify {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        sweeps: usize,
        /// Largest common-part alphabet in the lift sweep.
        #[arg(long, default_value_t = 2)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the common-information example.
    Example {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo binning error rates as CSV.
    Simulate {
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, value_delimiter = ',', default_value = "10")]
        n: Vec<usize>,
        /// Fractions of the boundary along `direction`.
        #[arg(long, value_delimiter = ',', default_value = "0.7,1.3", conflicts_with = "rates")]
        scale: Vec<f64>,
        /// Direction in (T1,S1,T2,S2).
        #[arg(long, value_delimiter = ',', default_value = "0,1,0,0", allow_negative_numbers = true)]
        direction: Vec<f64>,
        /// Explicit (T1,S1,T2,S2) rates.
        #[arg(long, value_delimiter = ',')]
        rates: Option<Vec<f64>>,
        /// Pool rate above S_i + I(U_i;W_i|Q).
        #[arg(long, default_value_t = 0.25)]
        pool_slack: f64,
        #[arg(long, default_value_t = 2000)]
        trials: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_EPS)]
        eps: f64,
        /// Ignore errors on the other sender's common message.
        #[arg(long)]
        modified_error: bool,
        /// One independent codeword per message instead of binning.
        #[arg(long)]
        direct: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw up to four regions.
    Plot {
        #[arg(long, value_delimiter = ',', required = true)]
        regions: Vec<String>,
        #[arg(long)]
        dist: PathBuf,
        #[arg(long, value_enum, default_value = "svg")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Process exit status for a finished run.
pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_BAD_INPUT: i32 = 2;

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => stdout.write_all(text.as_bytes()).context("writing output"),
    }
}

fn family(name: &str) -> Result<Family> {
    Family::parse(name).ok_or_else(|| anyhow!("unknown family `{name}`"))
}

fn load(path: &Path) -> Result<Context> {
    Ok(Context::load(path)?)
}

fn status(ok: bool) -> i32 {
    if ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}

/// Runs one command, writing its report to `stdout` unless `--out` is set.
pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Eval { dist, family: f, format, out } => {
            let ctx = load(&dist)?;
            let fam = match f {
                Some(f) => family(&f)?,
                None => ctx.default_family(),
            };
            let c = ctx.constants(fam)?;
            let mut s = String::new();
            match format {
                Format::Text => {
                    let _ = writeln!(s, "family {fam}");
                    for (k, v) in &c.values {
                        let _ = writeln!(s, "{k} = {}", format_sig(*v, 12));
                    }
                    if fam == Family::Hod {
                        for i in 0..2 {
                            let _ = writeln!(s, "I(U{n};W{n}|Q) = {}", format_sig(c.correlation[i], 12), n = i + 1);
                        }
                    }
                }
                Format::Csv => {
                    s.push_str("name,value\n");
                    for (k, v) in &c.values {
                        let _ = writeln!(s, "{k},{}", format_sig(*v, 12));
                    }
                }
                Format::Svg => bail!("eval writes text or csv"),
            }
            emit(&out, &s, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Project { dist, family: f, symbolic, out } => match symbolic {
            Some(name) => {
                let fam = family(&name)?;
                let p = symbolic_projection(fam)?;
                let (split, closed) = region_pair(fam);
                let mut s = String::new();
                let _ = writeln!(s, "{split}: {} distinct rows after elimination", p.raw_rows());
                let _ = writeln!(s, "after reduction ({} rows):", nontrivial(&p.reduced).len());
                for row in nontrivial(&p.reduced) {
                    let _ = writeln!(s, "  {row}");
                }
                let _ = writeln!(s, "matches {closed}: {}", if p.matches_closed_form() { "yes" } else { "no" });
                emit(&out, &s, stdout)?;
                Ok(status(p.matches_closed_form()))
            }
            None => {
                let ctx = load(dist.as_deref().expect("required by clap"))?;
                let fam = match f {
                    Some(f) => family(&f)?,
                    None => ctx.default_family(),
                };
                let c = ctx.constants(fam)?;
                let (split, closed) = region_pair(fam);
                let projected = reduce(&project_rates(&build(split, &c)?)?, &AxiomSet::new())?;
                let closed_sys = build(closed, &c)?;
                let same = equal(&projected, &closed_sys)?;
                let mut s = String::new();
                for (title, sys) in [(format!("{closed} (closed form)"), &closed_sys), (format!("{split} projected"), &projected)]
                {
                    let g = geometry2d(sys)?;
                    let _ = writeln!(s, "{title}:");
                    for r in sys.rows() {
                        let _ = writeln!(s, "  {}", sys.row_text(r));
                    }
                    let pts: Vec<String> = g
                        .vertices
                        .iter()
                        .map(|(x, y)| format!("({}, {})", format_sig(*x, 8), format_sig(*y, 8)))
                        .collect();
                    let _ = writeln!(s, "  vertices: {}", pts.join(" "));
                    let _ = writeln!(s, "  area: {}", format_sig(g.area, 8));
                }
                let report = crosscheck_constants(&c)?;
                s.push_str(&report.to_text());
                let _ = writeln!(s, "regions equal: {}", if same { "yes" } else { "no" });
                emit(&out, &s, stdout)?;
                Ok(status(same && report.passed()))
            }
        },
        Command::Compare { dist, k1, k2, format, out } => {
            let ctx = load(&dist)?;
            if ctx.family() != Family::Hk {
                bail!("compare needs an HK distribution to lift, found {}", ctx.family());
            }
            let k = match (k1, k2) {
                (Some(a), Some(b)) => [pmf(&a)?, pmf(&b)?],
                _ => ctx.common(),
            };
            let report = compare_suite(ctx.joint(), [&k[0], &k[1]])?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
                Format::Svg => bail!("compare writes text or csv"),
            };
            emit(&out, &text, stdout)?;
            Ok(status(report.passed()))
        }
        Command::Verify { seed, sweeps, max_k, format, out } => {
            let report = verify(seed, sweeps, max_k)?;
            let mut text = match format {
                Format::Text => report.to_text(),
                Format::Csv => report.to_csv(),
                Format::Svg => bail!("verify writes text or csv"),
            };
            if format == Format::Text {
                let failed: Vec<&str> =
                    report.tallies.iter().filter(|t| t.failures > 0).map(|t| t.name.as_str()).collect();
                let _ = writeln!(
                    text,
                    "\nsummary: {} checks, {} failed{}",
                    report.tallies.iter().filter(|t| !t.info).count(),
                    failed.len(),
                    if failed.is_empty() { String::new() } else { format!(" ({})", failed.join(", ")) }
                );
            }
            emit(&out, &text, stdout)?;
            Ok(status(report.passed()))
        }
        Command::Example { out } => {
            let text = example()?;
            emit(&out, &text, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Simulate {
            dist,
            n,
            scale,
            direction,
            rates,
            pool_slack,
            trials,
            seed,
            eps,
            modified_error,
            direct,
            out,
        } => {
            let ctx = load(&dist)?;
            let spec = &ctx.file.spec;
            let points: Vec<(String, [f64; 4])> = match rates {
                Some(r) => vec![(String::new(), four(&r, "--rates")?)],
                None => {
                    let dir = four(&direction, "--direction")?;
                    scale
                        .iter()
                        .map(|&k| Ok((format_sig(k, 6), scaled_rates(spec, &dir, k)?)))
                        .collect::<Result<_>>()?
                }
            };
            let mut s = format!(
                "# icregion {} seed={seed} trials={trials} eps={eps} scheme={}\n",
                env!("CARGO_PKG_VERSION"),
                if direct { "direct" } else { "binning" }
            );
            s.push_str("n,scale,T1,S1,T2,S2,s1,s2,err1,err1_low,err1_high,err2,err2_low,err2_high,encfail1,encfail2\n");
            for &len in &n {
                for (label, r) in &points {
                    let pool = pool_rates(spec, r, pool_slack)?;
                    let cfg = TrialConfig { n: len, rates: *r, pool, eps, trials, seed, modified_error };
                    let res = if direct { simulate_direct(spec, &cfg)? } else { simulate(spec, &cfg)? };
                    let f = |x: f64| format_sig(x, 6);
                    let [e1, e2] = res.error;
                    let _ = writeln!(
                        s,
                        "{len},{label},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                        f(r[0]),
                        f(r[1]),
                        f(r[2]),
                        f(r[3]),
                        f(pool[0]),
                        f(pool[1]),
                        f(e1.rate),
                        f(e1.low),
                        f(e1.high),
                        f(e2.rate),
                        f(e2.low),
                        f(e2.high),
                        f(res.encoder_failure[0].rate),
                        f(res.encoder_failure[1].rate)
                    );
                }
            }
            emit(&out, &s, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Plot { regions, dist, format, out } => {
            if regions.len() > plot::MAX_REGIONS {
                bail!("at most {} regions per plot", plot::MAX_REGIONS);
            }
            let ctx = load(&dist)?;
            let mut drawn = Vec::new();
            for name in &regions {
                let id = RegionId::parse(name).ok_or_else(|| anyhow!("unknown region `{name}`"))?;
                if id.is_split() {
                    bail!("{id} lives in (T1,S1,T2,S2); plot draws (R1,R2) regions");
                }
                let fam = ctx.pick(id.families()).ok_or_else(|| anyhow!("{id} is not defined for this distribution"))?;
                drawn.push((id.to_string(), geometry2d(&build(id, &ctx.constants(fam)?)?)?));
            }
            let text = match format {
                Format::Svg => plot::svg(&drawn),
                Format::Csv => plot::csv(&drawn),
                Format::Text => bail!("plot writes svg or csv"),
            };
            emit(&out, &text, stdout)?;
            Ok(EXIT_OK)
        }
    }
}

fn pmf(xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|x| parse_rational(x).map_err(|e| anyhow!("bad probability `{x}`: {e}"))).collect()
}

fn four(xs: &[f64], flag: &str) -> Result<[f64; 4]> {
    xs.try_into().map_err(|_| anyhow!("{flag} takes four values T1,S1,T2,S2"))
}

/// Every sweep plus the symbolic reductions of all five families.
pub fn verify(seed: u64, sweeps: usize, max_k: usize) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for fam in [Family::Hk, Family::Hod, Family::Cmg, Family::ModCmg, Family::HodCmg] {
        let p = symbolic_projection(fam)?;
        let ok = p.matches_closed_form();
        let rows = nontrivial(&p.reduced).len() as f64;
        let detail = format!("{} rows after reduction", rows);
        report.record(&format!("symbolic.{fam}.reduction"), 0, if ok { Status::Pass } else { Status::Fail }, rows, &detail);
    }
    report.extend(crosscheck_sweep(seed, sweeps)?);
    report.extend(relation_sweep(seed, sweeps)?);
    report.extend(lift_sweep(seed, sweeps, max_k)?);
    report.extend(lift_sweep(seed, sweeps, 1)?);
    Ok(report)
}

fn example() -> Result<String> {
    let e = common_info::compute()?;
    let f = |x: f64| format_sig(x, 12);
    let mut s = String::new();
    let _ = writeln!(s, "U, W uniform over {{0..3}}, K uniform over {{0,1}}, U_d = (U,K), W_d = (W,K)");
    let _ = writeln!(s, "H(K) = {}", f(e.h_k));
    let _ = writeln!(s, "H(U_d) = {}", f(e.h_ud));
    let _ = writeln!(s, "H(W_d) = {}", f(e.h_wd));
    let _ = writeln!(s, "H(U_d,W_d) = {}", f(e.h_ud_wd));
    let _ = writeln!(s, "H(U,W) = {}", f(e.h_u_w));
    let _ = writeln!(s, "I(U_d;W_d) = {}", f(e.i_ud_wd));
    let _ = writeln!(s, "I(U,W;U+W) = {}", f(e.i_sum));
    let _ = writeln!(s, "I(U,W;(U+W,2K)) = {}", f(e.i_base));
    let _ = writeln!(s, "I(U_d,W_d;(U+W,2K)) = {}", f(e.i_lifted));
    let _ = writeln!(s, "lifted pair strictly better: {}", if e.lemma_strict() { "yes" } else { "no" });

    let ctx = Context::new(parse_str(COMMON_INFO_FILE).map_err(|e: DistError| anyhow!("bundled example: {e}"))?)?;
    let j = ctx.joint();
    let _ = writeln!(s, "bundled file (U1 = U_d, W1 = W_d, Y1 = (U+W,2K)):");
    let _ = writeln!(s, "  H(U1) = {}", f(j.entropy(&["U1"])?));
    let _ = writeln!(s, "  H(U1,W1) = {}", f(j.entropy(&["U1", "W1"])?));
    let _ = writeln!(s, "  I(U1;W1|Q) = {}", f(j.info(&["U1"], &["W1"], &["Q"])?));
    let _ = writeln!(s, "  I(U1,W1;Y1|Q) = {}", f(j.info(&["U1", "W1"], &["Y1"], &["Q"])?));
    Ok(s)
}
