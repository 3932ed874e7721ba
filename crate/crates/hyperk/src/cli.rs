//! Command line front end: a thin dispatcher over the library.
//!
//! Every subcommand prints machine-readable output (JSON, or chain text for
//! the chain-producing commands) and exits 0; validation problems exit 2
//! with a one-line diagnostic; numeric failures exit 3. Output for a fixed
//! configuration is byte-identical across runs: JSON keys are emitted in
//! sorted order and floats use shortest round-trip form.

use crate::complex::ComplexValue;
use crate::counting::curves::CertifiedCurve;
use crate::counting::{self, curves};
use crate::error::{Error, Result};
use crate::hyp2f1::{f21_euler_integral, f21_series, HypParams};
use crate::modular;
use crate::path::PathSpec;
use crate::pfaffian::{self, dsl};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

#[derive(Parser, Debug)]
#[command(
    name = "hyperk",
    version,
    about = "Branch-aware hypergeometric and elliptic evaluation, Pfaffian chains, \
             modular values, and certified rational point counts"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum F21Method {
    Series,
    Integral,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate 2F1(a, b; c; z)
    F21 {
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, allow_negative_numbers = true)]
        c: f64,
        #[arg(long = "z-re", allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long = "z-im", default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long, value_enum, default_value = "series")]
        method: F21Method,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the complete elliptic integral K(z)
    K {
        #[arg(long = "z-re", allow_negative_numbers = true)]
        z_re: f64,
        #[arg(long = "z-im", default_value_t = 0.0, allow_negative_numbers = true)]
        z_im: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Continue (K(z), K(1-z)) along a waypoint path with sheet bookkeeping
    KContinue {
        /// JSON file: {"waypoints": [[re, im], ...], "max_step": h}
        #[arg(long)]
        path: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Operate on chain files
    Chain {
        #[command(subcommand)]
        action: ChainAction,
    },
    /// Modular lambda at tau
    Lambda {
        #[arg(long = "tau-re", default_value_t = 0.0, allow_negative_numbers = true)]
        tau_re: f64,
        #[arg(long = "tau-im", allow_negative_numbers = true)]
        tau_im: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Modular j invariant at tau
    J {
        #[arg(long = "tau-re", default_value_t = 0.0, allow_negative_numbers = true)]
        tau_re: f64,
        #[arg(long = "tau-im", allow_negative_numbers = true)]
        tau_im: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Count rational points on a curve over a height ladder
    Count {
        /// Curve name: exp, k, or f21:a,b,c with rational parameters
        #[arg(long)]
        curve: String,
        #[arg(long, allow_negative_numbers = true)]
        lo: f64,
        #[arg(long, allow_negative_numbers = true)]
        hi: f64,
        /// Comma-separated strictly increasing heights
        #[arg(long)]
        heights: Option<String>,
        #[arg(long = "certify-tol", default_value_t = counting::DEFAULT_CERTIFY_TOL)]
        certify_tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write a CSV with columns H,N here (the JSON report still goes to stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum ChainAction {
    /// Check triangularity and integrability; report the verified kind
    Verify {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the chain from its base point to a target
    Integrate {
        #[arg(long)]
        file: PathBuf,
        /// Target point, comma-separated coordinates
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Intermediate waypoint, repeatable
        #[arg(long, allow_hyphen_values = true)]
        via: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pull a chain back along a polynomial map given by another chain
    Pullback {
        #[arg(long)]
        file: PathBuf,
        /// Chain file computing the map
        #[arg(long)]
        map: PathBuf,
        /// Indices of map functions serving as the base coordinates
        #[arg(long)]
        coords: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the chain for q = Y'/Y from a Riccati description
    Riccati {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse, dispatch, and convert the outcome to a process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            // Collapse the clap message to a single diagnostic line.
            let text = e.to_string();
            let mut pieces = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() {
                    if !pieces.is_empty() {
                        break;
                    }
                    continue;
                }
                pieces.push(line);
            }
            if pieces.is_empty() {
                pieces.push("invalid arguments");
            }
            eprintln!("{}", pieces.join(" "));
            return 2;
        }
    };
    match dispatch(cfg) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            i32::from(e.exit_code())
        }
    }
}

fn cjson(z: ComplexValue) -> serde_json::Value {
    json!({"im": z.im, "re": z.re})
}

fn to_text(v: &serde_json::Value) -> Result<String> {
    serde_json::to_string(v).map_err(|e| Error::Parse(format!("serialization failed: {e}")))
}

fn emit(text: &str, out: &Option<PathBuf>) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{text}\n"))
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", p.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn read_file(p: &Path) -> Result<String> {
    std::fs::read_to_string(p)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", p.display())))
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<f64>> {
    let coords: Vec<f64> = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("bad coordinate '{}'", t.trim())))
        })
        .collect::<Result<_>>()?;
    if coords.len() != dim {
        return Err(Error::Domain(format!(
            "point '{text}' has {} coordinates but the chain has {dim} base variables",
            coords.len()
        )));
    }
    Ok(coords)
}

fn parse_heights(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad height '{}'", t.trim())))
        })
        .collect()
}

fn parse_curve(name: &str) -> Result<Box<dyn CertifiedCurve>> {
    match name {
        "exp" => Ok(Box::new(curves::ExpCurve)),
        "k" => Ok(Box::new(curves::EllipticKCurve)),
        _ => {
            if let Some(rest) = name.strip_prefix("f21:") {
                let parts: Vec<&str> = rest.split(',').collect();
                if parts.len() != 3 {
                    return Err(Error::Parse(
                        "the f21 curve needs three parameters: f21:a,b,c".into(),
                    ));
                }
                let a = curves::parse_rational(parts[0])?;
                let b = curves::parse_rational(parts[1])?;
                let c = curves::parse_rational(parts[2])?;
                return Ok(Box::new(curves::F21Curve::new(a, b, c)?));
            }
            Err(Error::Parse(format!(
                "unknown curve '{name}' (choose exp, k, or f21:a,b,c)"
            )))
        }
    }
}

fn dispatch(cfg: RunConfig) -> Result<()> {
    match cfg.command {
        Command::F21 {
            a,
            b,
            c,
            z_re,
            z_im,
            method,
            out,
        } => {
            let params = HypParams::real(a, b, c)?;
            let z = ComplexValue { re: z_re, im: z_im };
            let value = match method {
                F21Method::Series => f21_series(&params, z, 1e-13)?.value,
                F21Method::Integral => f21_euler_integral(&params, z)?,
            };
            emit(&to_text(&cjson(value))?, &out)
        }
        Command::K { z_re, z_im, out } => {
            let value = crate::elliptic::k_principal(ComplexValue { re: z_re, im: z_im })?;
            emit(&to_text(&cjson(value))?, &out)
        }
        Command::KContinue { path, out } => {
            let text = read_file(&path)?;
            let spec: PathSpec = serde_json::from_str(&text)
                .map_err(|e| Error::Parse(format!("bad path file {}: {e}", path.display())))?;
            let state = crate::elliptic::continue_along_path(&spec)?;
            let m = &state.accumulated_monodromy.entries;
            let doc = json!({
                "accumulated_monodromy": [
                    [cjson(m[0][0]), cjson(m[0][1])],
                    [cjson(m[1][0]), cjson(m[1][1])],
                ],
                "current_point": cjson(state.current_point),
                "values": [cjson(state.base_values[0]), cjson(state.base_values[1])],
            });
            emit(&to_text(&doc)?, &out)
        }
        Command::Chain { action } => dispatch_chain(action),
        Command::Lambda {
            tau_re,
            tau_im,
            out,
        } => {
            let sol = modular::lambda_from_tau(ComplexValue {
                re: tau_re,
                im: tau_im,
            })?;
            let doc = json!({"lambda": cjson(sol.lambda), "residual": sol.residual});
            emit(&to_text(&doc)?, &out)
        }
        Command::J {
            tau_re,
            tau_im,
            out,
        } => {
            let (j, sol) = modular::j_from_tau(ComplexValue {
                re: tau_re,
                im: tau_im,
            })?;
            let doc = json!({
                "j": cjson(j),
                "lambda": cjson(sol.lambda),
                "residual": sol.residual,
            });
            emit(&to_text(&doc)?, &out)
        }
        Command::Count {
            curve,
            lo,
            hi,
            heights,
            certify_tol,
            jobs,
            out,
        } => {
            let curve = parse_curve(&curve)?;
            let ladder = match heights {
                Some(text) => parse_heights(&text)?,
                None => counting::DEFAULT_LADDER.to_vec(),
            };
            let (counts, report) =
                counting::count_report(curve.as_ref(), lo, hi, &ladder, certify_tol, jobs)?;
            if let Some(csv_path) = &out {
                let mut csv = String::from("H,N\n");
                for (h, n) in ladder.iter().zip(&counts) {
                    csv.push_str(&format!("{h},{n}\n"));
                }
                std::fs::write(csv_path, csv).map_err(|e| {
                    Error::Parse(format!("cannot write {}: {e}", csv_path.display()))
                })?;
            }
            let doc = serde_json::to_value(&report)
                .map_err(|e| Error::Parse(format!("serialization failed: {e}")))?;
            emit(&to_text(&doc)?, &None)
        }
    }
}

fn dispatch_chain(action: ChainAction) -> Result<()> {
    match action {
        ChainAction::Verify { file, out } => {
            let spec = dsl::parse_chain(&read_file(&file)?)?;
            let report = pfaffian::verify_chain(&spec);
            let doc = match report.witness {
                Some(w) => json!({"kind": report.kind.to_string(), "witness": w}),
                None => json!({"kind": report.kind.to_string()}),
            };
            emit(&to_text(&doc)?, &out)
        }
        ChainAction::Integrate { file, to, via, out } => {
            let spec = dsl::parse_chain(&read_file(&file)?)?;
            let dim = spec.n_base_vars;
            let mut path = vec![spec.base_point.clone()];
            for w in &via {
                path.push(parse_point(w, dim)?);
            }
            path.push(parse_point(&to, dim)?);
            let values = pfaffian::integrate_chain(&spec, &path)?;
            let names: Vec<&str> = spec.functions.iter().map(|f| f.name.as_str()).collect();
            let doc = json!({
                "functions": names,
                "point": path.last().unwrap(),
                "values": values,
            });
            emit(&to_text(&doc)?, &out)
        }
        ChainAction::Pullback {
            file,
            map,
            coords,
            out,
        } => {
            let spec = dsl::parse_chain(&read_file(&file)?)?;
            let map_chain = dsl::parse_chain(&read_file(&map)?)?;
            let indices: Vec<usize> = coords
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad coordinate index '{}'", t.trim())))
                })
                .collect::<Result<_>>()?;
            let pulled = pfaffian::pull_back(&spec, &map_chain, &indices)?;
            emit(dsl::serialize_chain(&pulled).trim_end(), &out)
        }
        ChainAction::Riccati { file, out } => {
            let rf = dsl::parse_riccati_file(&read_file(&file)?)?;
            let system =
                pfaffian::riccati_system(&rf.coeffs, rf.prefix.as_ref(), rf.base_point, rf.q_init)?;
            emit(dsl::serialize_chain(&system).trim_end(), &out)
        }
    }
}
