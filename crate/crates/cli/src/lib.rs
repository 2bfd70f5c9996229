//! Argument parsing and dispatch for the `lefschetz` binary.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use lefschetz_core::apolarity::{InverseSystem, DEFAULT_HEIGHT};
use lefschetz_core::coeffring::Domain;
use lefschetz_core::error::Error;
use lefschetz_core::harness::{self, orbit, CensusOptions};
use lefschetz_core::par::{self, Mode};
use lefschetz_core::polyspace::{DividedElem, ExponentTuple, Space, SymElem};
use lefschetz_core::verify::{self, Suite};
use lefschetz_core::{gamma, normalform};

#[derive(Parser, Debug)]
#[command(name = "lefschetz", version, about = "Weak Lefschetz checks for socle-degree-three inverse systems")]
struct Cli {
    /// Write the structured report to FILE instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads; 1 runs sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Seed for randomized sampling.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PhiArgs {
    /// Inverse system: structured JSON, or text such as `x^(3) + y*z*w`.
    /// Text files may start with `domain: GF(2)` and `d: 4` lines.
    #[arg(long)]
    phi: PathBuf,
    /// Coefficient domain for text input (default Q).
    #[arg(long)]
    domain: Option<String>,
    /// Number of variables for text input (default: 4 if `w` occurs, else 3).
    #[arg(long)]
    d: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Gamma coordinates: one monomial, one power of a linear form, or all.
    Gamma {
        #[command(flatten)]
        phi: PhiArgs,
        /// Exponent vector of a primal monomial, e.g. `2,1,1,0`.
        #[arg(long, conflicts_with = "ell")]
        monomial: Option<String>,
        /// Linear form `l`; prints the coordinate of `l^(d)`.
        #[arg(long)]
        ell: Option<String>,
    },
    /// Full classification record.
    Classify {
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// First Lefschetz element in the search order.
    Wlp {
        #[command(flatten)]
        phi: PhiArgs,
        /// Coordinate bound for the search over Q.
        #[arg(long, default_value_t = DEFAULT_HEIGHT)]
        height: u32,
    },
    /// Normal form of a socle-degree-three inverse system.
    NormalForm {
        #[command(flatten)]
        phi: PhiArgs,
    },
    /// Run the symbolic identity registry.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        id: Option<String>,
    },
    /// Classify every nonzero cubic over GF(p).
    Exhaust {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        /// Allow jobs beyond the default budget.
        #[arg(long)]
        force: bool,
        /// Also write the bin table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// GL-orbit of a cubic over a prime field.
    Orbit {
        #[command(flatten)]
        phi: PhiArgs,
        /// Include the members (structured format).
        #[arg(long)]
        members: bool,
        #[arg(long)]
        force: bool,
    },
    /// Sampled agreement between rational witnesses and Gamma != 0.
    Agree {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
}

/// Outcome of a subcommand: the report and the process exit code.
struct Outcome {
    report: Value,
    code: i32,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, code: 0 }
    }
}

type CliResult = Result<Outcome, String>;

/// Entry point; `args` includes the program name.
pub fn cli_main<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    par::set_default(Mode::from_jobs(cli.jobs));
    let result = run(&cli).and_then(|o| emit(cli.out.as_deref(), &o.report).map(|_| o.code));
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn emit(out: Option<&Path>, report: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(report).map_err(|e| e.to_string())?;
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn run(cli: &Cli) -> CliResult {
    let mode = par::current();
    match &cli.command {
        Command::Gamma { phi, monomial, ell } => {
            let phi = load_phi(phi)?;
            gamma_report(&phi, monomial.as_deref(), ell.as_deref())
        }
        Command::Classify { phi } => {
            let s = InverseSystem::new(load_phi(phi)?).map_err(err)?;
            Ok(Outcome::ok(s.classify().map_err(err)?.to_json()))
        }
        Command::Wlp { phi, height } => {
            let s = InverseSystem::new(load_phi(phi)?).map_err(err)?;
            let h = s.hilbert_function().map_err(err)?;
            let report = match s.wlp_witness(*height).map_err(err)? {
                Some(l) => {
                    let ranks = (0..3)
                        .map(|i| s.multiplication_rank(&l, i))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(err)?;
                    json!({"witness": l.to_string(), "ranks": ranks, "hilbert": h})
                }
                None => json!({"witness": "NONE", "ranks": Value::Null, "hilbert": h}),
            };
            Ok(Outcome::ok(report))
        }
        Command::NormalForm { phi } => {
            let r = normalform::standard_form(&load_phi(phi)?).map_err(err)?;
            Ok(Outcome::ok(r.to_json()))
        }
        Command::Verify { suite, id } => {
            let suite: Suite = suite.parse().map_err(err)?;
            let outcomes = verify::run_suite(suite, id.as_deref()).map_err(err)?;
            let all = outcomes.iter().all(|o| o.passed);
            Ok(Outcome {
                report: verify::report(&outcomes),
                code: if all { 0 } else { 1 },
            })
        }
        Command::Exhaust { p, d, force, csv } => {
            let opts = CensusOptions {
                p: *p,
                d: *d,
                force: *force,
                mode,
            };
            let r = harness::enumerate(&opts).map_err(err)?;
            if let Some(path) = csv {
                fs::write(path, r.to_csv().map_err(err)?).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            Ok(Outcome::ok(r.to_json()))
        }
        Command::Orbit { phi, members, force } => {
            let phi = load_phi(phi)?;
            let o = orbit::orbit(&phi, *force, mode).map_err(err)?;
            let mut report = json!({"size": o.size, "group": orbit::gl_order(
                phi.domain().order().unwrap_or(0), phi.d()).to_string()});
            if *members {
                let p = phi.domain().order().unwrap_or(0);
                let list = o
                    .members
                    .iter()
                    .map(|&k| orbit::decode(k, p, phi.d()).map(|v| v.to_json()))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                report["members"] = json!(list);
            }
            Ok(Outcome::ok(report))
        }
        Command::Agree { q, d, samples } => {
            let r = harness::agreement(*q, *d, *samples, cli.seed, mode).map_err(err)?;
            Ok(Outcome::ok(r.to_json()))
        }
    }
}

fn gamma_report(phi: &DividedElem, monomial: Option<&str>, ell: Option<&str>) -> CliResult {
    let d = phi.d();
    if let Some(m) = monomial {
        let e = m
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| format!("bad exponent {t:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        if e.len() != d {
            return Err(format!("monomial needs {d} exponents"));
        }
        let x = DividedElem::monomial(ExponentTuple::new(&e), Space::Primal, phi.domain().one());
        let v = gamma::gamma_coordinate(phi, &x).map_err(err)?;
        return Ok(Outcome::ok(json!({"monomial": e, "value": v.to_string()})));
    }
    if let Some(l) = ell {
        let l = SymElem::parse_with_degree(l, d, 1, phi.domain()).map_err(err)?;
        let v = gamma::gamma_on_power(phi, &l).map_err(err)?;
        return Ok(Outcome::ok(json!({"ell": l.to_string(), "value": v.to_string()})));
    }
    let vector: Vec<Value> = gamma::gamma_vector(phi)
        .map_err(err)?
        .into_iter()
        .map(|(e, v)| json!({"e": e.entries(), "value": v.to_string()}))
        .collect();
    Ok(Outcome::ok(json!({"d": d, "vector": vector})))
}

/// Parse an inverse system file; see [`PhiArgs`].
pub fn parse_phi(text: &str, domain: Option<&str>, d: Option<usize>) -> Result<DividedElem, String> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        let phi = DividedElem::from_json_str(trimmed).map_err(err)?;
        return check_dual(phi);
    }
    let mut dom_text = domain.map(str::to_string);
    let mut dim = d;
    let mut body = Vec::new();
    for line in trimmed.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(v) = line.strip_prefix("domain:") {
            dom_text.get_or_insert_with(|| v.trim().to_string());
        } else if let Some(v) = line.strip_prefix("d:") {
            let v = v.trim().parse().map_err(|_| format!("bad dimension {v:?}"))?;
            dim.get_or_insert(v);
        } else {
            body.push(line);
        }
    }
    let dom: Domain = dom_text.as_deref().unwrap_or("Q").parse().map_err(err)?;
    let body = body.join(" ");
    let dim = dim.unwrap_or(if body.contains('w') { 4 } else { 3 });
    let phi = DividedElem::parse_with_degree(&body, dim, 3, Space::Dual, &dom).map_err(err)?;
    check_dual(phi)
}

fn check_dual(phi: DividedElem) -> Result<DividedElem, String> {
    if phi.space() != Space::Dual {
        return Err("inverse systems live in the dual space".into());
    }
    Ok(phi)
}

fn load_phi(args: &PhiArgs) -> Result<DividedElem, String> {
    let text = fs::read_to_string(&args.phi).map_err(|e| format!("{}: {e}", args.phi.display()))?;
    parse_phi(&text, args.domain.as_deref(), args.d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_headers_and_overrides() {
        let phi = parse_phi("domain: GF(2)\nd: 4\nx^(3) + y*z*w\n", None, None).unwrap();
        assert_eq!(phi.domain(), &Domain::PrimeField(2));
        assert_eq!(phi.d(), 4);
        let phi = parse_phi("domain: GF(2)\nx*y*z", Some("GF(5)"), None).unwrap();
        assert_eq!(phi.domain(), &Domain::PrimeField(5));
        assert_eq!(phi.d(), 3);
        assert!(parse_phi("x + y", None, None).is_err());
    }

    #[test]
    fn structured_input() {
        let text = r#"{"d":4,"degree":3,"space":"dual","domain":"GF(2)","terms":[{"e":[3,0,0,0],"c":"1"},{"e":[0,1,1,1],"c":"1"}]}"#;
        let phi = parse_phi(text, None, None).unwrap();
        assert_eq!(phi.to_string(), "x^(3) + y*z*w");
    }
}
