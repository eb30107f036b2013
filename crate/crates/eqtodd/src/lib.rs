//! File formats and command implementations behind the `eqtodd` binary.
//!
//! Each command returns a JSON value; the binary only parses flags, prints
//! and maps [`CliError`] to an exit code.

pub mod io;

use std::path::Path;

use eqtodd_core::cycle::m_names;
use eqtodd_core::polytope::DEFAULT_BUDGET;
use eqtodd_core::series::default_names;
use eqtodd_core::{act, Cone, EquivariantCycle, Fan, InnerProduct, PolySeries, Rational, SquarefreeReducer, ToddEngine};
use num_traits::Signed;
use serde_json::{json, Map, Value};

use io::{read_json, DPolyJson, DivisorJson, FanJson, GramJson, PolytopeJson, SeriesJson};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Core(#[from] eqtodd_core::Error),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl CliError {
    /// 1 other, 3 schema, 4 Cartier, 5 genericity, 6 verification.
    pub fn exit_code(&self) -> i32 {
        use eqtodd_core::Error as E;
        match self {
            CliError::Io(_) => 1,
            CliError::Schema(_) => 3,
            CliError::Mismatch(_) => 6,
            CliError::Core(e) => match e {
                E::NotCartier { .. } => 4,
                E::NotGeneric => 5,
                E::Verification(_) => 6,
                E::DimensionMismatch { .. }
                | E::ZeroVector
                | E::InvalidFan(_)
                | E::InvalidPolytope(_)
                | E::NotSymmetric
                | E::NotPositiveDefinite => 3,
                _ => 1,
            },
        }
    }
}

/// Flags shared by every command.
#[derive(Debug, Clone, Default)]
pub struct Options<'a> {
    pub order: u32,
    pub gram: Option<&'a Path>,
    pub no_cache: bool,
}

impl Options<'_> {
    fn inner_product(&self, rank: usize) -> Result<InnerProduct, CliError> {
        match self.gram {
            None => Ok(InnerProduct::identity(rank)),
            Some(p) => {
                let g = read_json::<GramJson>(p)?.build()?;
                if g.gram().len() != rank {
                    return Err(CliError::Schema(format!("gram is {0}x{0}, lattice rank is {rank}", g.gram().len())));
                }
                Ok(g)
            }
        }
    }

    fn engine(&self, rank: usize) -> Result<ToddEngine, CliError> {
        let e = ToddEngine::new(self.inner_product(rank)?, self.order);
        Ok(if self.no_cache { e.without_cache() } else { e })
    }
}

fn cycle_json(fan: &Fan, c: &EquivariantCycle) -> Value {
    let map: Map<String, Value> =
        c.display_map(fan, &m_names(fan.rank())).into_iter().map(|(k, v)| (k, Value::String(v))).collect();
    Value::Object(map)
}

fn load_fan(path: &Path) -> Result<Fan, CliError> {
    read_json::<FanJson>(path)?.build()
}

/// `D · V_σ` where `σ` is given by its label, e.g. `V13` or `V` for the zero cone.
pub fn cmd_act(fan: &Path, divisor: &Path, cycle: &str, opts: &Options) -> Result<Value, CliError> {
    let fan = load_fan(fan)?;
    let d = read_json::<DivisorJson>(divisor)?.build(&fan)?;
    let id = fan.parse_label(cycle).ok_or_else(|| CliError::Schema(format!("no cone labelled {cycle:?} in the fan")))?;
    let g = opts.inner_product(fan.rank())?;
    let out = act(&fan, &g, &d, &EquivariantCycle::basis(fan.rank(), id, opts.order))?;
    Ok(cycle_json(&fan, &out))
}

/// `r(σ)` for a cone given as a JSON list of generators.
pub fn cmd_rcoef(cone: &str, opts: &Options) -> Result<Value, CliError> {
    let gens: Vec<Vec<i64>> =
        serde_json::from_str(cone).map_err(|e| CliError::Schema(format!("cone generators: {e}")))?;
    let rank = gens.first().map(Vec::len).ok_or_else(|| CliError::Schema("cone needs at least one generator".into()))?;
    if gens.iter().any(|g| g.len() != rank) {
        return Err(CliError::Schema("generators have different lengths".into()));
    }
    let mut engine = opts.engine(rank)?;
    let r = engine.r_general(&Cone::new(rank, gens.clone())?)?;
    Ok(json!({
        "cone": gens,
        "order": opts.order,
        "series": SeriesJson::from_series(&r),
        "display": r.display_with(&default_names(rank)),
    }))
}

/// Square-free expansion `Σ r(σ) V_σ` of the equivariant Todd class.
pub fn cmd_todd(fan: &Path, opts: &Options) -> Result<Value, CliError> {
    let fan = load_fan(fan)?;
    let mut engine = opts.engine(fan.rank())?;
    let td = engine.todd_class(&fan)?;
    Ok(cycle_json(&fan, &td))
}

/// Lattice-point count from the Euler–Maclaurin constant term, cross-checked
/// by enumeration.
pub fn cmd_count(polytope: &Path, opts: &Options) -> Result<Value, CliError> {
    let p = read_json::<PolytopeJson>(polytope)?.build()?;
    let mut engine = ToddEngine::new(opts.inner_product(p.rank())?, 0);
    if opts.no_cache {
        engine = engine.without_cache();
    }
    let c = p.count_lattice_points(&mut engine, DEFAULT_BUDGET)?;
    Ok(json!({
        "count": c.enumeration,
        "certificate": format!("EM={}, enumeration={}", c.euler_maclaurin, c.enumeration),
    }))
}

/// Coefficientwise comparison of the Euler–Maclaurin series with the
/// enumerated exponential sum. Any nonzero difference is a failure.
pub fn cmd_verify(polytope: &Path, opts: &Options) -> Result<Value, CliError> {
    let p = read_json::<PolytopeJson>(polytope)?.build()?;
    let mut engine = opts.engine(p.rank())?;
    let em = p.euler_maclaurin_series(&mut engine)?;
    let sum = p.exp_sum_series(opts.order, DEFAULT_BUDGET)?;
    let report = diff_report(&em, &sum);
    if report.max_diff != Rational::from_integer(0.into()) {
        return Err(CliError::Mismatch(format!(
            "max diff {} over {} coefficients: {}",
            report.max_diff,
            report.compared,
            report.offending.join(", ")
        )));
    }
    Ok(json!({
        "order": opts.order,
        "coefficients": report.compared,
        "max_diff": report.max_diff.to_string(),
    }))
}

struct DiffReport {
    compared: usize,
    max_diff: Rational,
    offending: Vec<String>,
}

fn diff_report(a: &PolySeries, b: &PolySeries) -> DiffReport {
    let mut exps: Vec<Vec<u32>> = a.terms().chain(b.terms()).map(|(e, _)| e.to_vec()).collect();
    exps.sort();
    exps.dedup();
    let mut max_diff = Rational::from_integer(0.into());
    let mut offending = Vec::new();
    for e in &exps {
        let d = (a.coeff(e) - b.coeff(e)).abs();
        if d > Rational::from_integer(0.into()) {
            offending.push(format!("{e:?}: {}", a.coeff(e) - b.coeff(e)));
        }
        if d > max_diff {
            max_diff = d;
        }
    }
    DiffReport { compared: exps.len(), max_diff, offending }
}

/// Square-free normal form of a D-polynomial on a simplicial fan.
pub fn cmd_reduce(fan: &Path, poly: &Path, opts: &Options) -> Result<Value, CliError> {
    let fan = load_fan(fan)?;
    let p = read_json::<DPolyJson>(poly)?.build(&fan, opts.order)?;
    let g = opts.inner_product(fan.rank())?;
    let mut red = SquarefreeReducer::new(&fan, &g, opts.order)?;
    if opts.no_cache {
        red = red.without_memo();
    }
    Ok(cycle_json(&fan, &red.reduce(&p)?))
}
