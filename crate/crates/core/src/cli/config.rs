use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;

use crate::cantor::{MissingDigitSet, RatInterval};
use crate::error::{Error, Result};
use crate::exact::{PrecisionBudget, Rational, RealExpr};
use crate::explicit::ExponentRule;
use crate::limsup::{truncate_psi, ApproxFunction, DimensionFunction, SymReal};

/// Keys accepted in a config file; each matches the long flag of the same name.
pub const KEYS: &[&str] = &[
    "set",
    "psi",
    "truncate",
    "f",
    "f-monotone",
    "window",
    "nmax",
    "n",
    "m",
    "n0",
    "Q",
    "S",
    "depth",
    "x",
    "quotients",
    "tau",
    "lambda",
    "coef",
    "rule",
    "all-centers",
    "output",
    "out",
    "workers",
    "precision-budget",
    "plot",
    "timing",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
}

/// The point handed to `cf`, `exponent` and `cf-interval`.
#[derive(Clone, Debug)]
pub enum PointSpec {
    Exact(Rational),
    Real(RealExpr),
    /// The sparse-digit number configured by `--tau`, `--lambda`, `--coef`, `--rule`, `-S`.
    Xi,
}

/// Fully validated options for one run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub set: MissingDigitSet,
    pub psi: ApproxFunction,
    pub f: DimensionFunction,
    pub window: RatInterval,
    pub n_max: u32,
    pub n: Option<u32>,
    pub m: Option<u32>,
    pub n0: u32,
    pub q: u32,
    pub s: usize,
    pub depth: u32,
    pub x: Option<PointSpec>,
    pub quotients: Option<Vec<BigInt>>,
    pub rule: ExponentRule,
    pub coef: u32,
    pub coprime: bool,
    pub output: OutputFormat,
    pub out: Option<PathBuf>,
    pub workers: usize,
    pub budget: PrecisionBudget,
    pub plot: bool,
    pub timing: bool,
    /// Every resolved option as text, in key order.
    pub echo: BTreeMap<String, String>,
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read config file {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::invalid(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim();
        if !KEYS.contains(&k) {
            return Err(Error::invalid(format!("config line {}: unknown key {k:?}", i + 1)));
        }
        out.insert(k.to_string(), v.trim().to_string());
    }
    Ok(out)
}

fn parse_u32(key: &str, v: &str) -> Result<u32> {
    v.parse().map_err(|_| Error::invalid(format!("{key}: expected a non-negative integer, got {v:?}")))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(Error::invalid(format!("{key}: expected true or false, got {v:?}"))),
    }
}

/// `n=v,n=v,...` keyed by level.
fn parse_table(key: &str, body: &str) -> Result<Vec<(u32, Rational)>> {
    body.split(',')
        .map(|kv| {
            let (n, v) = kv
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("{key}: table entries are n=value, got {kv:?}")))?;
            Ok((parse_u32(key, n.trim())?, v.trim().parse()?))
        })
        .collect()
}

/// `pow:E`, `powlog:A:B` or `table:n=v,...`, with `E`, `A`, `B` in the
/// exponent syntax of [`SymReal`].
pub fn parse_psi(spec: &str) -> Result<ApproxFunction> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("psi: expected pow:E, powlog:A:B or table:..., got {spec:?}")))?;
    match kind {
        "pow" => Ok(ApproxFunction::power(body.parse::<SymReal>()?)),
        "powlog" => {
            let (a, b) = body
                .split_once(':')
                .ok_or_else(|| Error::invalid(format!("psi: powlog needs two exponents, got {spec:?}")))?;
            Ok(ApproxFunction::power_log(a.parse::<SymReal>()?, b.parse::<SymReal>()?))
        }
        "table" => ApproxFunction::table(parse_table("psi", body)?),
        _ => Err(Error::invalid(format!("psi: unknown kind {kind:?}"))),
    }
}

/// `pow:S` or `table:n=v,...` (values of `f(Ψ(b^n))`).
pub fn parse_f(spec: &str, monotone: bool) -> Result<DimensionFunction> {
    let (kind, body) = spec
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("f: expected pow:S or table:..., got {spec:?}")))?;
    match kind {
        "pow" => Ok(DimensionFunction::power(body.parse::<SymReal>()?)),
        "table" => DimensionFunction::table(parse_table("f", body)?, monotone),
        _ => Err(Error::invalid(format!("f: unknown kind {kind:?}"))),
    }
}

/// `lo,hi`.
pub fn parse_window(spec: &str) -> Result<RatInterval> {
    let (lo, hi) = spec
        .split_once(',')
        .ok_or_else(|| Error::invalid(format!("window: expected lo,hi, got {spec:?}")))?;
    RatInterval::new(lo.parse()?, hi.parse()?)
}

/// A rational or one of `gamma`, `golden`, `sqrt5`, `threshold`.
pub fn parse_real(key: &str, spec: &str) -> Result<RealExpr> {
    Ok(match spec {
        "gamma" => RealExpr::gamma(),
        "golden" => RealExpr::golden(),
        "sqrt5" => RealExpr::integer(5).sqrt(),
        "threshold" => RealExpr::exact_order_threshold(),
        _ => RealExpr::rational(
            spec.parse()
                .map_err(|_| Error::invalid(format!("{key}: expected a rational or named constant, got {spec:?}")))?,
        ),
    })
}

pub fn parse_point(spec: &str) -> Result<PointSpec> {
    match spec {
        "xi" => Ok(PointSpec::Xi),
        "golden" => Ok(PointSpec::Real(RealExpr::golden())),
        "gamma" => Ok(PointSpec::Real(RealExpr::gamma())),
        _ => spec
            .parse()
            .map(PointSpec::Exact)
            .map_err(|_| Error::invalid(format!("x: expected a rational, golden, gamma or xi, got {spec:?}"))),
    }
}

fn parse_quotients(spec: &str) -> Result<Vec<BigInt>> {
    spec.split(',')
        .map(|a| {
            a.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::invalid(format!("quotients: expected integers, got {a:?}")))
        })
        .collect()
}

impl RunConfig {
    /// Resolves `values` (flags over config file) and validates every option.
    pub fn resolve(values: &BTreeMap<String, String>) -> Result<Self> {
        let get = |k: &str, default: &str| values.get(k).cloned().unwrap_or_else(|| default.to_string());
        let mut echo = BTreeMap::new();
        let mut take = |k: &str, default: &str| {
            let v = get(k, default);
            echo.insert(k.to_string(), v.clone());
            v
        };

        let set: MissingDigitSet = take("set", "3:0,2").parse()?;
        let mut psi = parse_psi(&take("psi", "pow:2"))?;
        let truncate = take("truncate", "none");
        if truncate != "none" {
            psi = truncate_psi(&psi, truncate.parse()?)?;
        }
        let f_monotone = parse_bool("f-monotone", &take("f-monotone", "false"))?;
        let f = parse_f(&take("f", "pow:gamma"), f_monotone)?;
        let window = parse_window(&take("window", "0,1"))?;
        let n_max = parse_u32("nmax", &take("nmax", "8"))?;
        let opt_u32 = |v: String, k: &str| -> Result<Option<u32>> {
            if v == "none" {
                Ok(None)
            } else {
                parse_u32(k, &v).map(Some)
            }
        };
        let n = opt_u32(take("n", "none"), "n")?;
        let m = opt_u32(take("m", "none"), "m")?;
        let n0 = parse_u32("n0", &take("n0", "1"))?;
        let q = parse_u32("Q", &take("Q", "2"))?;
        let s = parse_u32("S", &take("S", "5"))? as usize;
        let depth = parse_u32("depth", &take("depth", "10"))?;
        let x = match take("x", "none").as_str() {
            "none" => None,
            spec => Some(parse_point(spec)?),
        };
        let quotients = match take("quotients", "none").as_str() {
            "none" => None,
            spec => Some(parse_quotients(spec)?),
        };
        let tau = parse_real("tau", &take("tau", "3"))?;
        let lambda = parse_real("lambda", &take("lambda", "1"))?;
        let rule = match take("rule", "power").as_str() {
            "power" => ExponentRule::power(tau, lambda),
            "factorial" => ExponentRule::Factorial,
            other => return Err(Error::invalid(format!("rule: expected power or factorial, got {other:?}"))),
        };
        let coef = parse_u32("coef", &take("coef", "2"))?;
        let coprime = !parse_bool("all-centers", &take("all-centers", "false"))?;
        let output = match take("output", "json").as_str() {
            "json" => OutputFormat::Json,
            "csv" => OutputFormat::Csv,
            other => return Err(Error::invalid(format!("output: expected json or csv, got {other:?}"))),
        };
        let out = match take("out", "-").as_str() {
            "-" => None,
            p => Some(PathBuf::from(p)),
        };
        let workers = parse_u32("workers", &take("workers", "1"))? as usize;
        if workers == 0 {
            return Err(Error::invalid("workers must be at least 1"));
        }
        let steps = parse_u32("precision-budget", &take("precision-budget", "16"))?;
        if steps == 0 || steps > 20 {
            return Err(Error::invalid("precision-budget must lie in 1..=20"));
        }
        let plot = parse_bool("plot", &take("plot", "false"))?;
        let timing = parse_bool("timing", &take("timing", "false"))?;

        Ok(RunConfig {
            set,
            psi,
            f,
            window,
            n_max,
            n,
            m,
            n0,
            q,
            s,
            depth,
            x,
            quotients,
            rule,
            coef,
            coprime,
            output,
            out,
            workers,
            budget: PrecisionBudget::with_steps(steps),
            plot,
            timing,
            echo,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_lines() {
        let m = parse_config("# fixture\nset = 3:0,2\n\npsi=pow:3 # cubic\n").unwrap();
        assert_eq!(m["set"], "3:0,2");
        assert_eq!(m["psi"], "pow:3");
        assert!(parse_config("bogus=1").is_err());
        assert!(parse_config("set").is_err());
    }

    #[test]
    fn specs() {
        assert_eq!(parse_psi("pow:2").unwrap(), ApproxFunction::power(Rational::integer(2)));
        assert_eq!(parse_psi("pow:gamma/3").unwrap().to_string(), "pow:1/3*gamma");
        assert!(parse_psi("powlog:1:2").is_ok());
        assert!(parse_psi("table:1=1/9,2=1/81").unwrap().is_table());
        assert!(parse_psi("table:1=0").is_err());
        assert!(parse_psi("exp:2").is_err());
        assert_eq!(parse_f("pow:gamma", false).unwrap().to_string(), "pow:gamma");
        assert_eq!(parse_window("0,1/3").unwrap(), RatInterval::new(Rational::zero(), Rational::frac(1, 3)).unwrap());
        assert!(parse_window("1,0").is_err());
        assert!(matches!(parse_point("2/27").unwrap(), PointSpec::Exact(_)));
        assert!(parse_point("pi").is_err());
    }

    #[test]
    fn defaults_resolve() {
        let c = RunConfig::resolve(&BTreeMap::new()).unwrap();
        assert_eq!(c.set, MissingDigitSet::middle_third());
        assert_eq!(c.echo["psi"], "pow:2");
        assert_eq!(c.budget, PrecisionBudget::default());
        let bad: BTreeMap<String, String> = [("workers".to_string(), "0".to_string())].into();
        assert!(RunConfig::resolve(&bad).is_err());
    }
}
