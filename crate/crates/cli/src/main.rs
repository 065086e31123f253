use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_core::codet::codet_basis;
use hecke_core::pbw::{pbw_image, PbwForm};
use hecke_core::schur::{hom_basis, SchurElement, SymmetricGroupIso};
use hecke_core::simples::{simple_index_set, udot_simple_index_set, SimpleIndexReport};
use hecke_core::udot::{gl2_generic_table, udot_basis_upto, udot_multiply, UdotElement};
use hecke_core::verify::{run_suite, SuiteParams, VerificationReport, SUITES};
use hecke_core::weights::{compositions, margin_matrices};
use hecke_core::{kostka, Permutation, UElement, Weight};

#[derive(Parser)]
#[command(name = "hecke", version, about = "Exact computations in Schur algebras and the modified enveloping algebra of gl_n")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// All n-part compositions of r, in reverse-lexicographic order.
    Compositions {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    /// Dimension of 1_λ S(n,r) 1_μ (μ defaults to λ).
    Dim {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        r: Option<usize>,
    },
    /// A basis of 1_λ S(n,r) 1_μ.
    Basis {
        #[arg(value_enum)]
        kind: BasisKind,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// For `pbw`: one of PSA-a, PSA-b, Zbas-a, Zbas-b.
        #[arg(long, default_value = "Zbas-a")]
        form: String,
    },
    /// Product of two elements given as JSON (inline or @file).
    Mul {
        #[arg(long, value_enum, default_value_t = Algebra::Schur)]
        algebra: Algebra,
        a: String,
        b: String,
    },
    /// The Kostka number K_{μλ}; μ is padded with zeros to the length of λ.
    Kostka {
        #[arg(long)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Simple S(λ)-modules in characteristic 0; with --window, simple U̇(λ)-modules.
    Simples {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        window: Option<u32>,
    },
    /// The correspondence π ↦ ξ_{P_π} between ℤΣ_r and 1_ω S(r,r) 1_ω.
    SymIso {
        #[arg(long)]
        r: usize,
    },
    /// The modified form U̇.
    Udot {
        #[command(subcommand)]
        command: UdotCommand,
    },
    /// Run a verification suite: one of the named suites, or `all`.
    Verify {
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisKind {
    Xi,
    Codet,
    Pbw,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Schur,
    U,
}

#[derive(Subcommand)]
enum UdotCommand {
    /// Product of two U̇ elements given as JSON (inline or @file).
    Mul { a: String, b: String },
    /// Basis elements of 1_λ U̇ 1_μ of degree at most d.
    Basis {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        degree: u32,
    },
    /// Structure constants of U̇(λ) for n = 2.
    Gl2Table {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long)]
        degree: u32,
    },
    /// The quotient maps U̇ → S(n,r): surjective and multiplicative.
    VerifyPsi {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        degree: Option<u32>,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

/// A verified outcome: the payload plus whether every check held.
struct Outcome {
    payload: Value,
    csv: Option<Vec<Vec<String>>>,
    passed: bool,
}

impl Outcome {
    fn ok(payload: Value) -> Self {
        Outcome { payload, csv: None, passed: true }
    }

    fn with_csv(mut self, rows: Vec<Vec<String>>) -> Self {
        self.csv = Some(rows);
        self
    }
}

fn parse_weight(s: &str) -> Result<Weight> {
    let entries = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().with_context(|| format!("'{x}' is not an integer")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Weight::new(entries)?)
}

fn parse_composition(s: &str, r: Option<usize>) -> Result<Weight> {
    let w = parse_weight(s)?;
    w.require_composition()?;
    if let Some(r) = r {
        if w.degree() != r as i64 {
            bail!("{w} has degree {}, not r = {r}", w.degree());
        }
    }
    Ok(w)
}

fn read_json(arg: &str) -> Result<Value> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?,
        None => arg.to_string(),
    };
    serde_json::from_str(&text).context("invalid JSON")
}

fn report_outcome(rep: &VerificationReport) -> Outcome {
    let rows = std::iter::once(vec!["id".into(), "passed".into(), "witness".into()])
        .chain(rep.checks.iter().map(|c| vec![c.id.clone(), c.passed.to_string(), c.witness.clone().unwrap_or_default()]))
        .collect();
    Outcome { payload: serde_json::to_value(rep).expect("serializable"), csv: Some(rows), passed: rep.passed }
}

fn simples_csv(rep: &SimpleIndexReport) -> Vec<Vec<String>> {
    std::iter::once(vec!["mu".into(), "multiplicity".into()])
        .chain(rep.csv_rows().into_iter().map(|(m, k)| vec![m, k.to_string()]))
        .collect()
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Compositions { n, r } => {
            if n == 0 {
                bail!("n must be at least 1");
            }
            let comps = compositions(n, r);
            let rows = comps.iter().map(|c| vec![c.entries().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")]);
            let csv = std::iter::once(vec!["composition".to_string()]).chain(rows).collect();
            let list: Vec<_> = comps.iter().map(|c| c.entries().to_vec()).collect();
            Ok(Outcome::ok(json!({ "n": n, "r": r, "count": list.len(), "compositions": list })).with_csv(csv))
        }
        Command::Dim { lambda, mu, r } => {
            let l = parse_composition(&lambda, r)?;
            let m = match mu {
                Some(m) => parse_composition(&m, r)?,
                None => l.clone(),
            };
            let dim = margin_matrices(&l, &m)?.len();
            Ok(Outcome::ok(json!({ "dim": dim })).with_csv(vec![vec!["dim".into()], vec![dim.to_string()]]))
        }
        Command::Basis { kind, lambda, mu, form } => {
            let l = parse_composition(&lambda, None)?;
            let m = match mu {
                Some(m) => parse_composition(&m, None)?,
                None => l.clone(),
            };
            let elements: Vec<Value> = match kind {
                BasisKind::Xi => hom_basis(&l, &m)?.iter().map(SchurElement::to_json).collect(),
                BasisKind::Codet => codet_basis(&l, &m)?.iter().map(|c| c.to_json()).collect(),
                BasisKind::Pbw => {
                    let form = PbwForm::parse(&form).ok_or_else(|| anyhow!("unknown form '{form}'"))?;
                    margin_matrices(&l, &m)?
                        .iter()
                        .map(|a| Ok(json!({ "matrix": a.rows(), "value": pbw_image(a, form)?.to_json() })))
                        .collect::<Result<_>>()?
                }
            };
            Ok(Outcome::ok(json!({ "lambda": l.entries(), "mu": m.entries(), "dim": elements.len(), "basis": elements })))
        }
        Command::Mul { algebra, a, b } => {
            let (a, b) = (read_json(&a)?, read_json(&b)?);
            let product = match algebra {
                Algebra::Schur => SchurElement::from_json(&a)?.multiply(&SchurElement::from_json(&b)?)?.to_json(),
                Algebra::U => UElement::from_json(&a)?.multiply(&UElement::from_json(&b)?)?.to_json(),
            };
            Ok(Outcome::ok(product))
        }
        Command::Kostka { mu, lambda } => {
            let l = parse_composition(&lambda, None)?;
            let mu = parse_weight(&mu)?;
            if mu.n() > l.n() {
                bail!("μ has more parts than λ");
            }
            let k = kostka(&mu.padded(l.n()), &l)?;
            Ok(Outcome::ok(json!({ "kostka": k })).with_csv(vec![vec!["kostka".into()], vec![k.to_string()]]))
        }
        Command::Simples { lambda, window } => {
            let l = parse_weight(&lambda)?;
            let rep = match window {
                Some(w) => udot_simple_index_set(&l, w)?,
                None if l.is_composition() => simple_index_set(&l)?,
                None => bail!("λ has negative entries: pass --window for the U̇(λ) index set"),
            };
            let csv = simples_csv(&rep);
            let mut payload = serde_json::to_value(&rep)?;
            payload["char_p"] = json!("not computed");
            Ok(Outcome::ok(payload).with_csv(csv))
        }
        Command::SymIso { r } => {
            let iso = SymmetricGroupIso::new(r)?;
            let pairs: Vec<Value> = iso
                .pairs()
                .map(|(p, m)| json!({ "permutation": p.images().iter().map(|x| x + 1).collect::<Vec<_>>(), "matrix": m.rows() }))
                .collect();
            let perms = Permutation::all(r);
            let mut table_matches = true;
            for p in &perms {
                for s in &perms {
                    table_matches &= iso.image(p)?.multiply(&iso.image(s)?)? == iso.image(&p.compose(s))?;
                }
            }
            Ok(Outcome { payload: json!({ "r": r, "table_matches": table_matches, "pairs": pairs }), csv: None, passed: table_matches })
        }
        Command::Udot { command } => match command {
            UdotCommand::Mul { a, b } => {
                let u = UdotElement::from_json(&read_json(&a)?)?;
                let v = UdotElement::from_json(&read_json(&b)?)?;
                Ok(Outcome::ok(udot_multiply(&u, &v)?.to_json()))
            }
            UdotCommand::Basis { lambda, mu, degree } => {
                let l = parse_weight(&lambda)?;
                let m = match mu {
                    Some(m) => parse_weight(&m)?,
                    None => l.clone(),
                };
                let basis: Vec<Value> = udot_basis_upto(&l, &m, degree)?.iter().map(UdotElement::to_json).collect();
                Ok(Outcome::ok(json!({ "lambda": l.entries(), "mu": m.entries(), "degree": degree, "count": basis.len(), "basis": basis })))
            }
            UdotCommand::Gl2Table { lambda, degree } => {
                let l = parse_weight(&lambda)?;
                let table = gl2_generic_table(&l, degree)?;
                let passed = table.unit && table.commutative && table.generated_by_b1;
                Ok(Outcome { payload: serde_json::to_value(&table)?, csv: None, passed })
            }
            UdotCommand::VerifyPsi { n, r, degree, seed } => {
                let p = SuiteParams { n, r, degree, seed, ..SuiteParams::default() };
                Ok(report_outcome(&run_suite("psi", &p)?))
            }
        },
        Command::Verify { suite, n, r, degree, window, lambda, seed } => {
            let defaults = SuiteParams::default();
            let lambda = lambda.map(|s| parse_weight(&s)).transpose()?;
            let mut p = SuiteParams {
                n: n.unwrap_or(defaults.n),
                r: r.unwrap_or(defaults.r),
                degree,
                window: window.unwrap_or(defaults.window),
                lambda: lambda.clone(),
                seed,
            };
            if let Some(l) = &lambda {
                if suite != "gl2" {
                    if n.is_some_and(|n| n != l.n()) || r.is_some_and(|r| r as i64 != l.degree()) {
                        bail!("--lambda {l} does not match --n/--r");
                    }
                    p.n = l.n();
                    p.r = l.degree().max(0) as usize;
                }
            }
            if suite == "all" {
                let reports = SUITES.iter().map(|s| run_suite(s, &p)).collect::<hecke_core::Result<Vec<_>>>()?;
                let passed = reports.iter().all(|r| r.passed);
                let rows = std::iter::once(vec!["suite".into(), "id".into(), "passed".into(), "witness".into()])
                    .chain(reports.iter().flat_map(|r| {
                        r.checks.iter().map(|c| {
                            vec![r.suite.clone(), c.id.clone(), c.passed.to_string(), c.witness.clone().unwrap_or_default()]
                        })
                    }))
                    .collect();
                Ok(Outcome { payload: json!({ "suite": "all", "passed": passed, "reports": reports }), csv: Some(rows), passed })
            } else if SUITES.contains(&suite.as_str()) {
                Ok(report_outcome(&run_suite(&suite, &p)?))
            } else {
                bail!("unknown suite '{suite}'; expected one of {} or all", SUITES.join(", "))
            }
        }
    }
}

fn emit(format: Format, out: &Outcome) -> Result<()> {
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match format {
        Format::Json => writeln!(lock, "{}", serde_json::to_string_pretty(&out.payload)?)?,
        Format::Csv => {
            let rows = out.csv.as_ref().ok_or_else(|| anyhow!("this command has no CSV form; use --format json"))?;
            let mut w = csv::Writer::from_writer(lock);
            for row in rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let format = cli.format;
    let start = Instant::now();
    let outcome = run(cli).and_then(|o| {
        if format == Format::Csv && o.csv.is_none() {
            bail!("this command has no CSV form; use --format json");
        }
        Ok(o)
    });
    match outcome {
        Ok(o) => {
            if let Err(e) = emit(format, &o) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
            if o.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
