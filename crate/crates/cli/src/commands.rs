use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use sl3chars_core::{
    certify_parameter_set, eval_trace, generator_catalog, sample_tuple, span_dimension,
    submersivity_rank, BigRational, CertifyOptions, Complex64, GroupWord, MagnusMap, MatrixTuple,
    ParameterSet, ScalarMode, TraceInvariant, VariableSet, Variant, Verdict,
};

use crate::format::{
    parse_tuple, tuple_json, verify_certificate, write_tuple, AnyTuple, CertificateRecord,
    TextScalar,
};

/// Exit status for a run that completed but did not certify.
pub const NOT_CERTIFIED: u8 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "sl3chars",
    version,
    about = "Trace coordinates on SL(3,C) character varieties"
)]
pub struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the minimal generator forms and their count N_r.
    Generators {
        #[arg(long)]
        rank: usize,
        /// Also list one representative trace word per generator.
        #[arg(long)]
        representatives: bool,
    },
    /// Print a distinguished parameter set.
    Params {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        variant: Variant,
        /// Also print the chart coordinates.
        #[arg(long)]
        variables: bool,
    },
    /// Certify independence of a parameter set at random unimodular samples.
    Certify {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long, default_value_t = 5)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exact")]
        mode: ScalarMode,
        /// Bound on numerators and denominators of transvection entries.
        #[arg(long, default_value_t = 10)]
        height: u32,
        /// Write the certificate here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Replace tr(X2^-1) by a second copy of tr(X2).
        #[arg(long, hide = true)]
        control_duplicate: bool,
    },
    /// Evaluate tr(W) at a tuple.
    Eval {
        /// Signed generator indices, e.g. "1 2 -1" for X1 X2 X1^-1.
        #[arg(long, allow_hyphen_values = true)]
        word: String,
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Rank of the parameter set's Jacobian at a tuple.
    Rank {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        variant: Variant,
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Burnside test: do the matrices generate all 3x3 matrices?
    Irreducible {
        #[arg(long)]
        tuple: PathBuf,
    },
    /// Write the sampler's tuple for a seed and sample index.
    Sample {
        #[arg(long)]
        rank: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        index: u64,
        #[arg(long, default_value_t = 10)]
        height: u32,
        #[arg(long, default_value = "exact")]
        mode: ScalarMode,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Recompute a certificate's determinant at its embedded tuple.
    Verify {
        #[arg(long)]
        certificate: PathBuf,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_tuple(path: &Path) -> Result<AnyTuple> {
    parse_tuple(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(v)?)?;
    Ok(())
}

/// Runs one command and returns the process exit status.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    match &cli.command {
        Command::Generators {
            rank,
            representatives,
        } => generators(out, cli.json, *rank, *representatives),
        Command::Params {
            rank,
            variant,
            variables,
        } => params(out, cli.json, *rank, *variant, *variables),
        Command::Certify {
            rank,
            variant,
            samples,
            seed,
            mode,
            height,
            output,
            control_duplicate,
        } => {
            if *rank < 2 {
                bail!("certification needs rank at least 2 (rank 1 is settled by dimension count)");
            }
            let mut set = ParameterSet::new(*rank, *variant)?;
            if *control_duplicate {
                let target = TraceInvariant::from_signed(&[-2]);
                let i = set
                    .invariants()
                    .iter()
                    .position(|f| *f == target)
                    .context("the control needs tr(X2^-1) in the parameter set")?;
                set = set.with_replaced(i, TraceInvariant::from_signed(&[2]));
            }
            let options = CertifyOptions {
                num_samples: *samples,
                seed: *seed,
                height: *height,
            };
            let record = match mode {
                ScalarMode::ExactRational => CertificateRecord::from_certificate(
                    &certify_parameter_set::<BigRational>(&set, &options)?,
                ),
                ScalarMode::ComplexFloat => CertificateRecord::from_certificate(
                    &certify_parameter_set::<Complex64>(&set, &options)?,
                ),
            };
            if cli.json {
                if let Some(p) = output {
                    emit(out, Some(p), &record.to_text())?;
                }
                print_json(out, &record.to_json())?;
            } else {
                emit(out, output.as_deref(), &record.to_text())?;
                if output.is_some() {
                    writeln!(out, "{} determinant {}", record.verdict, record.determinant)?;
                }
            }
            Ok(match record.verdict {
                Verdict::Independent => 0,
                Verdict::NotCertified => NOT_CERTIFIED,
            })
        }
        Command::Eval { word, tuple } => {
            let w = GroupWord::parse_signed(word)?;
            let inv = TraceInvariant::new(&w);
            let value = match load_tuple(tuple)? {
                AnyTuple::Exact(t) => scalar_pair(&eval_trace(&inv, &t)?),
                AnyTuple::Float(t) => scalar_pair(&eval_trace(&inv, &t)?),
            };
            if cli.json {
                print_json(
                    out,
                    &json!({ "invariant": inv.to_string(), "value": value.1 }),
                )?;
            } else {
                writeln!(out, "{}", value.0)?;
            }
            Ok(0)
        }
        Command::Rank {
            rank,
            variant,
            tuple,
        } => {
            let set = ParameterSet::new(*rank, *variant)?;
            let map = MagnusMap::from(&set);
            let t = load_tuple(tuple)?;
            if t.rank() != *rank {
                bail!("tuple has rank {}, expected {rank}", t.rank());
            }
            let c = variant.constraint();
            let r = match t {
                AnyTuple::Exact(t) => submersivity_rank(&map, &t.with_constraint(c)?)?,
                AnyTuple::Float(t) => submersivity_rank(&map, &t.with_constraint(c)?)?,
            };
            if cli.json {
                print_json(
                    out,
                    &json!({ "rank": r, "functions": set.len(), "full": r == set.len() }),
                )?;
            } else {
                writeln!(out, "{r} of {}", set.len())?;
            }
            Ok(0)
        }
        Command::Irreducible { tuple } => {
            let dim = match load_tuple(tuple)? {
                AnyTuple::Exact(t) => span_dimension(&t),
                AnyTuple::Float(t) => span_dimension(&t),
            };
            if cli.json {
                print_json(
                    out,
                    &json!({ "irreducible": dim == 9, "span_dimension": dim }),
                )?;
            } else {
                writeln!(out, "{} (span dimension {dim})", dim == 9)?;
            }
            Ok(0)
        }
        Command::Sample {
            rank,
            seed,
            index,
            height,
            mode,
            output,
        } => {
            if *rank == 0 {
                bail!("rank must be positive");
            }
            let (text, v) = match mode {
                ScalarMode::ExactRational => {
                    let t: MatrixTuple<BigRational> = sample_tuple(*seed, *index, *rank, *height);
                    (write_tuple(&t), tuple_json(&t))
                }
                ScalarMode::ComplexFloat => {
                    let t: MatrixTuple<Complex64> = sample_tuple(*seed, *index, *rank, *height);
                    (write_tuple(&t), tuple_json(&t))
                }
            };
            if cli.json {
                if let Some(p) = output {
                    emit(out, Some(p), &text)?;
                }
                print_json(out, &v)?;
            } else {
                emit(out, output.as_deref(), &text)?;
            }
            Ok(0)
        }
        Command::Verify { certificate } => {
            let rec = CertificateRecord::parse(&read(certificate)?)
                .with_context(|| format!("parsing {}", certificate.display()))?;
            let v = verify_certificate(&rec)?;
            if cli.json {
                print_json(
                    out,
                    &json!({
                        "ok": v.ok(),
                        "verdict": rec.verdict.tag(),
                        "params_match_variant": v.params_match_variant,
                        "vars_match": v.vars_match,
                        "determinant_matches": v.determinant_matches,
                        "verdict_consistent": v.verdict_consistent,
                        "recomputed": v.recomputed,
                    }),
                )?;
            } else if v.ok() {
                writeln!(
                    out,
                    "verified: {} (determinant {})",
                    rec.verdict, v.recomputed
                )?;
            } else {
                writeln!(out, "mismatch: {v:?}")?;
            }
            Ok(if v.ok() { 0 } else { NOT_CERTIFIED })
        }
    }
}

fn scalar_pair<S: TextScalar>(s: &S) -> (String, Value) {
    (s.display(), s.to_json())
}

fn generators(out: &mut dyn Write, as_json: bool, rank: usize, reps: bool) -> Result<u8> {
    if rank == 0 {
        bail!("rank must be positive");
    }
    let catalog = generator_catalog(rank);
    if as_json {
        let rows: Vec<Value> = catalog
            .rows
            .iter()
            .map(|r| {
                json!({
                    "form": r.form.label,
                    "multiplicity": r.form.multiplicity,
                    "arity": r.form.arity,
                    "count": r.count.to_string(),
                })
            })
            .collect();
        let mut v = json!({ "rank": rank, "forms": rows, "total": catalog.total.to_string() });
        if reps {
            v["representatives"] = catalog
                .representatives()
                .iter()
                .map(|t| Value::String(t.to_string()))
                .collect();
        }
        return print_json(out, &v).map(|_| 0);
    }
    writeln!(
        out,
        "{:<18} {:>4} {:>5} {:>12}",
        "form", "mult", "arity", "count"
    )?;
    for r in &catalog.rows {
        writeln!(
            out,
            "{:<18} {:>4} {:>5} {:>12}",
            r.form.label, r.form.multiplicity, r.form.arity, r.count
        )?;
    }
    writeln!(out, "total {}", catalog.total)?;
    if reps {
        for t in catalog.representatives() {
            writeln!(out, "  {t}")?;
        }
    }
    Ok(0)
}

fn params(
    out: &mut dyn Write,
    as_json: bool,
    rank: usize,
    variant: Variant,
    vars: bool,
) -> Result<u8> {
    let set = ParameterSet::new(rank, variant)?;
    let chart = if vars {
        Some(VariableSet::for_set(&set)?)
    } else {
        None
    };
    if as_json {
        let mut v = json!({
            "rank": rank,
            "variant": variant.tag(),
            "constraint": set.constraint().tag(),
            "invariants": set.invariants().iter().map(|f| f.to_string()).collect::<Vec<_>>(),
            "words": set.invariants().iter().map(|f| f.word().to_signed_string()).collect::<Vec<_>>(),
        });
        if let Some(c) = &chart {
            v["variables"] = c.vars.iter().map(|x| json!([x.k, x.i, x.j])).collect();
        }
        return print_json(out, &v).map(|_| 0);
    }
    for (n, f) in set.invariants().iter().enumerate() {
        writeln!(out, "{:>3}  {f}", n + 1)?;
    }
    if let Some(c) = chart {
        let names: Vec<String> = c.vars.iter().map(|x| x.to_string()).collect();
        writeln!(out, "variables {}", names.join(" "))?;
    }
    Ok(0)
}
