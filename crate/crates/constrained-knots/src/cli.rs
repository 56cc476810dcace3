//! Command-line surface: argument parsing, dispatch and output rendering.

use std::ffi::OsString;
use std::io::{self, BufRead, Write};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse, Fraction};
use crate::census::{classify_filling, FillingRecord};
use crate::floer::{classwise_equivalent, hfk_euler, width_genus_fibred};
use crate::groups::verify_isomorphism;
use crate::knots::{
    classify_special, constrained_to_11, decide_equivalence, is_lspace_knot, mirror_normal_sweep, simple_knot_of,
    validate_constrained, ConstrainedParams, Verdict,
};
use crate::surgery::{
    braid_alexander, braid_fill, braid_normalize, constrained_to_braid, lens_from_magic, magic_classify,
    simple_interval, MagicSurgery, Slope,
};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) | CliError::Io(_) => 2,
        }
    }
}

fn data<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Data(e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "11")]
    OneOne,
    Simple,
}

#[derive(Debug, Parser)]
#[command(
    name = "ck",
    version,
    about = "Invariants and classification of constrained knots in lens spaces"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Euler characteristic, rank, genus and fibredness of C(p,q,l,u,v).
    #[command(allow_negative_numbers = true)]
    Invariants {
        #[arg(value_names = ["P", "Q", "L", "U", "V"], num_args = 5, required_unless_present = "sweep")]
        params: Vec<i64>,
        /// Every mirror-normal tuple with p <= PMAX and u <= UMAX, one line each.
        #[arg(long, num_args = 2, value_names = ["PMAX", "UMAX"], conflicts_with = "params")]
        sweep: Option<Vec<i64>>,
    },
    /// (1,1) diagram or simple-knot form of C(p,q,l,u,v).
    #[command(allow_negative_numbers = true)]
    Convert {
        #[arg(value_names = ["P", "Q", "L", "U", "V"], num_args = 5, required = true)]
        params: Vec<i64>,
        #[arg(long, value_enum, default_value = "11")]
        to: Target,
    },
    /// Decide whether two constrained knots are equivalent.
    #[command(allow_negative_numbers = true)]
    Equivalent {
        #[arg(value_names = ["P1", "Q1", "L1", "U1", "V1", "P2", "Q2", "L2", "U2", "V2"], num_args = 10, required = true)]
        params: Vec<i64>,
    },
    /// Knot from surgery on the magic link over b(u,v) with slopes P1/Q1 and P2/Q2.
    #[command(allow_negative_numbers = true)]
    SurgeryMagic {
        u: i64,
        v: i64,
        slope1: String,
        slope2: String,
    },
    /// 1-bridge braid data for winding W and inverse slope N/D, or for a constrained knot.
    #[command(allow_negative_numbers = true)]
    SurgeryBraid {
        #[arg(required_unless_present = "from")]
        w: Option<i64>,
        #[arg(required_unless_present = "from")]
        slope: Option<String>,
        /// Fill along P/Q and report whether the result is simple.
        #[arg(long, num_args = 2, value_names = ["P", "Q"])]
        fill: Option<Vec<i64>>,
        /// Braid presentation of C(p,q,l,u,±1).
        #[arg(long, num_args = 5, value_names = ["P", "Q", "L", "U", "V"], conflicts_with_all = ["w", "slope"])]
        from: Option<Vec<i64>>,
        /// Lift index of the straightened arc.
        #[arg(long)]
        lift: Option<i64>,
    },
    /// Classify JSON-lines filling records from standard input.
    Census,
    /// Verify the word identities giving C(p,q,l,u,v) ≅ C(p,q',l,u,v) for l in {2, p}.
    #[command(allow_negative_numbers = true)]
    VerifyIso {
        #[arg(value_names = ["P", "Q", "L", "U", "V"], num_args = 5, required_unless_present = "sweep")]
        params: Vec<i64>,
        /// All p <= PMAX, q coprime, l in {2, p}, odd u <= UMAX, 0 < 2v < u.
        #[arg(long, num_args = 2, value_names = ["PMAX", "UMAX"], conflicts_with = "params")]
        sweep: Option<Vec<i64>>,
    },
}

fn knot(params: &[i64]) -> Result<ConstrainedParams, CliError> {
    validate_constrained(params[0], params[1], params[2], params[3], params[4]).map_err(data)
}

fn invariants_value(k: ConstrainedParams) -> Value {
    let euler = hfk_euler(k);
    let genus = width_genus_fibred(k);
    let mut v = json!({
        "knot": k,
        "total_rank": euler.total_rank(),
        "lspace": is_lspace_knot(k),
        "special": classify_special(k),
    });
    match genus {
        Ok(g) => {
            v["width"] = json!(g.width);
            v["thurston_norm"] = json!(g.thurston_norm);
            v["genus"] = json!(g.genus);
            v["top_rank"] = json!(g.top_rank);
            v["fibred"] = json!(g.fibred);
        }
        Err(e) => v["genus_error"] = json!(e.to_string()),
    }
    v["euler"] = json!(euler);
    v
}

fn equivalence_value(k1: ConstrainedParams, k2: ConstrainedParams) -> Value {
    let verdict = match decide_equivalence(k1, k2) {
        Ok(v) => v,
        Err(e) => {
            return json!({ "knots": [k1, k2], "verdict": Verdict::NotEquivalent, "reason": e.to_string() });
        }
    };
    let mut certificate = json!({
        "total_rank": [k1.total_rank(), k2.total_rank()],
        "classwise_euler_equivalent": k1.ambient() == k2.ambient() && classwise_equivalent(k1, k2),
    });
    if verdict == Verdict::Equivalent {
        let (a, b) = (k1.mirror_normal().0, k2.mirror_normal().0);
        if a.p() == b.p() && (a.l(), a.u(), a.v()) == (b.l(), b.u(), b.v()) && a.p() > 1 {
            if let Ok(inv) = mod_inverse(a.q(), a.p()) {
                if inv == b.q() {
                    if let Ok(cert) = verify_isomorphism(a.p(), a.q(), a.l(), a.u(), a.v()) {
                        certificate["rewrite"] = json!(cert);
                    }
                }
            }
        }
    }
    json!({ "knots": [k1, k2], "verdict": verdict, "certificate": certificate })
}

fn iso_sweep(pmax: i64, umax: i64) -> Vec<[i64; 5]> {
    let mut out = Vec::new();
    for p in 2..=pmax {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            let mut ls = vec![2, p];
            ls.dedup();
            for l in ls {
                for u in (3..=umax).step_by(2) {
                    for v in (1..u).filter(|&v| 2 * v < u && gcd(u, v) == 1) {
                        out.push([p, q, l, u, v]);
                    }
                }
            }
        }
    }
    out
}

fn sweep_bounds(s: &[i64]) -> Result<(i64, i64), CliError> {
    match s {
        [p, u] if *p >= 1 && *u >= 1 => Ok((*p, *u)),
        _ => Err(CliError::Usage("--sweep needs positive PMAX UMAX".into())),
    }
}

fn braid_value(w: i64, slope: Fraction, fill: Option<&[i64]>) -> Result<Value, CliError> {
    let braid = braid_normalize(w, slope).map_err(data)?;
    let mut v = json!({
        "braid": braid,
        "interval": simple_interval(&braid),
        "alexander": braid_alexander(&braid),
    });
    if let Some(f) = fill {
        v["filling"] = json!(braid_fill(&braid, f[0], f[1]).map_err(data)?);
    }
    Ok(v)
}

fn parse_fraction(s: &str) -> Result<Fraction, CliError> {
    let bad = || CliError::Data(format!("cannot parse slope {s:?}"));
    let (a, b) = s.split_once('/').ok_or_else(bad)?;
    let (n, d) = (
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    );
    Fraction::new(n, d).map_err(data)
}

/// One JSON value per output line.
fn execute(cli: &Cli, input: &mut dyn BufRead, err: &mut dyn Write) -> Result<(Vec<Value>, bool), CliError> {
    let mut malformed = false;
    let values = match &cli.command {
        Command::Invariants { params, sweep } => match sweep {
            Some(s) => {
                let (pmax, umax) = sweep_bounds(s)?;
                mirror_normal_sweep(pmax, umax)
                    .into_iter()
                    .map(invariants_value)
                    .collect()
            }
            None => vec![invariants_value(knot(params)?)],
        },
        Command::Convert { params, to } => {
            let k = knot(params)?;
            let v = match to {
                Target::OneOne => {
                    let w = constrained_to_11(k);
                    json!({ "knot": k, "one_one": w, "display": w.to_string() })
                }
                Target::Simple => {
                    let s = simple_knot_of(k).map_err(data)?;
                    json!({ "knot": k, "simple": s, "display": s.to_string() })
                }
            };
            vec![v]
        }
        Command::Equivalent { params } => {
            vec![equivalence_value(knot(&params[..5])?, knot(&params[5..])?)]
        }
        Command::SurgeryMagic { u, v, slope1, slope2 } => {
            let s1: Slope = slope1.parse().map_err(data)?;
            let s2: Slope = slope2.parse().map_err(data)?;
            let m = MagicSurgery::new(*u, *v, s1, s2).map_err(data)?;
            let mut out = json!({ "surgery": m });
            match lens_from_magic(&m) {
                Ok(l) => out["lens"] = json!(l),
                Err(e) => out["lens_error"] = json!(e.to_string()),
            }
            match magic_classify(&m) {
                Ok(c) => out["classification"] = json!(c),
                Err(e) => {
                    out["classification"] = Value::Null;
                    out["reason"] = json!(e.to_string());
                }
            }
            vec![out]
        }
        Command::SurgeryBraid {
            w,
            slope,
            fill,
            from,
            lift,
        } => {
            let fill = fill.as_deref();
            if let Some(f) = from {
                let k = knot(f)?;
                let pres = constrained_to_braid(k, *lift).map_err(data)?;
                let mut v = braid_value(pres.braid.w, pres.braid.slope, fill)?;
                v["knot"] = json!(k);
                v["presentation"] = json!(pres);
                vec![v]
            } else {
                let (w, slope) = (w.unwrap(), slope.as_deref().unwrap());
                vec![braid_value(w, parse_fraction(slope)?, fill)?]
            }
        }
        Command::Census => {
            let mut out = Vec::new();
            for (n, line) in input.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                match FillingRecord::from_json(&line) {
                    Ok(r) => out.push(json!(classify_filling(&r))),
                    Err(e) => {
                        writeln!(err, "line {}: {e}", n + 1)?;
                        malformed = true;
                    }
                }
            }
            out
        }
        Command::VerifyIso { params, sweep } => {
            let tuples = match sweep {
                Some(s) => {
                    let (pmax, umax) = sweep_bounds(s)?;
                    iso_sweep(pmax, umax)
                }
                None => vec![[params[0], params[1], params[2], params[3], params[4]]],
            };
            let single = sweep.is_none();
            let mut out = Vec::new();
            for [p, q, l, u, v] in tuples {
                let cert = verify_isomorphism(p, q, l, u, v).map_err(data)?;
                let mut val = json!({ "params": [p, q, l, u, v], "holds": cert.holds() });
                if single {
                    val["certificate"] = json!(cert);
                }
                out.push(val);
            }
            out
        }
    };
    Ok((values, malformed))
}

fn render_table(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
            map.iter()
                .map(|(k, val)| {
                    let shown = match val {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    format!("{k:<width$}  {shown}\n")
                })
                .collect()
        }
        other => format!("{other}\n"),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, format: Format, values: &[T]) -> io::Result<()> {
    for (i, v) in values.iter().enumerate() {
        let v = serde_json::to_value(v).map_err(io::Error::other)?;
        match format {
            Format::Json => writeln!(out, "{v}")?,
            Format::Table => {
                if i > 0 {
                    writeln!(out)?;
                }
                write!(out, "{}", render_table(&v))?;
            }
        }
    }
    Ok(())
}

/// Run the CLI; returns the process exit code.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    match execute(&cli, input, err) {
        Ok((values, malformed)) => {
            if let Err(e) = emit(out, cli.format, &values) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            if malformed {
                2
            } else {
                0
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
