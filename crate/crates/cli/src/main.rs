use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use skein_core::expr::{self, format_links};
use skein_core::presentations::{self, Presentation};
use skein_core::suites::{self, SuiteOptions};
use skein_core::torus::{CurveTable, LinkExpansion, TorusTarget};
use skein_core::{Element, Error, Laurent, QuotientSpec, Specialization};

#[derive(Parser)]
#[command(
    name = "skein",
    version,
    about = "Exact computation in skein algebras of small surfaces"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Reduce coefficients modulo this polynomial in A
    #[arg(long, global = true, allow_hyphen_values = true)]
    quotient: Option<String>,
    /// Evaluate A at this integer (must be 1 or -1)
    #[arg(long = "eval-A", global = true, allow_hyphen_values = true)]
    eval_a: Option<i64>,
    /// Write the output to this file instead of standard output
    #[arg(long, global = true)]
    out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression
    Normalize {
        #[arg(long)]
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Normal form of a product
    Multiply {
        #[arg(long)]
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Normal form of u·ab − u⁻¹·ba
    Commutator {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        u: String,
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Element of the lattice link (p,q) on the torus
    Curve {
        #[arg(long, default_value = "f11")]
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        link: String,
    },
    /// Expansion of an expression in lattice links
    Tolinks {
        #[arg(long, default_value = "f11")]
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Run a verification suite
    Verify {
        #[arg(value_parser = suites::SUITES)]
        suite: String,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Complexity bound for the curve product sweep
        #[arg(long, default_value_t = 25)]
        max_complexity: i64,
    },
    /// Generators, relations and normal words of a presentation
    Info {
        #[arg(long)]
        algebra: String,
    },
}

struct Output {
    text: String,
    json: Value,
    failed: bool,
}

fn specialization(cli: &Cli) -> Result<Option<Specialization>, Error> {
    let modulus = match (&cli.quotient, cli.eval_a) {
        (Some(_), Some(_)) => {
            return Err(Error::Precondition(
                "--quotient and --eval-A are exclusive".into(),
            ))
        }
        (Some(q), None) => expr::parse_scalar(q)?,
        (None, Some(c)) => Laurent::a() - Laurent::constant(c),
        (None, None) => return Ok(None),
    };
    Ok(Some(Specialization::Quotient(QuotientSpec::new(&modulus)?)))
}

fn algebra(name: &str, rule: Option<&Specialization>) -> Result<Presentation, Error> {
    let p = presentations::by_name(name)?;
    Ok(match rule {
        Some(r) => p.specialized(r),
        None => p,
    })
}

fn parse(p: &Presentation, s: &str, rule: Option<&Specialization>) -> Result<Element, Error> {
    let e = expr::parse_element(s, p.table())?;
    Ok(match rule {
        Some(r) => e.map_coeffs(|c| r.apply(c)),
        None => e,
    })
}

fn element_output(p: &Presentation, e: &Element) -> Output {
    Output {
        text: e.to_string(),
        json: expr::element_to_json(&p.name, e),
        failed: false,
    }
}

fn torus_target(name: &str) -> Result<TorusTarget, Error> {
    match name {
        "f11" => Ok(TorusTarget::F11),
        "f10" => Ok(TorusTarget::F10),
        _ => Err(Error::Precondition(format!(
            "link bases exist for f11 and f10, not '{name}'"
        ))),
    }
}

/// Link expansion, enlarging the curve table until every leading word is
/// covered.
fn to_links(target: TorusTarget, s: &str) -> Result<(String, LinkExpansion), Error> {
    let mut bound = 8;
    loop {
        let table = CurveTable::new(target, bound);
        let e = table.pres.nf(&expr::parse_element(s, table.pres.table())?);
        match table.to_link_basis(&e) {
            Ok(x) => return Ok((table.pres.name.clone(), x)),
            Err(Error::BoundExceeded { needed, .. }) if needed > bound && needed <= 4096 => {
                bound = needed
            }
            Err(e) => return Err(e),
        }
    }
}

fn links_output(algebra: &str, x: &LinkExpansion) -> Output {
    Output {
        text: format_links(x),
        json: expr::links_to_json(algebra, x),
        failed: false,
    }
}

fn info(p: &Presentation) -> Output {
    let t = p.table();
    let gens: Vec<Value> = (0..t.len() as u8)
        .map(|g| {
            json!({
                "name": t.name(g),
                "central": t.is_central(g),
                "weight": p.system.weights()[g as usize],
            })
        })
        .collect();
    let relations: Vec<String> = p.relations.iter().map(|r| format!("{r} = 0")).collect();
    let basis = "words x_{i1} ... x_{ik} with nondecreasing indices, divisible by no monomial rule";
    let mut rules: Vec<String> = p
        .system
        .monomial_rules()
        .iter()
        .map(|m| {
            let w: Vec<String> = m
                .trigger
                .iter()
                .enumerate()
                .filter(|(_, k)| **k > 0)
                .map(|(g, k)| match k {
                    1 => t.name(g as u8).to_string(),
                    _ => format!("{}^{k}", t.name(g as u8)),
                })
                .collect();
            w.join(" ")
        })
        .collect();
    rules.sort();
    let mut text = format!("algebra {}\ngenerators:", p.name);
    for g in 0..t.len() as u8 {
        text += &format!(
            " {}{}",
            t.name(g),
            if t.is_central(g) { " (central)" } else { "" }
        );
    }
    text += &format!("\nweights: {:?}\nrelations:\n", p.system.weights());
    for r in &relations {
        text += &format!("  {r}\n");
    }
    text += &format!("normal words: {basis}\n");
    if !rules.is_empty() {
        text += &format!("rewritten monomials: {}\n", rules.join(", "));
    }
    Output {
        text: text.trim_end().to_string(),
        json: json!({
            "algebra": p.name,
            "generators": gens,
            "relations": relations,
            "normal_words": basis,
            "rewritten_monomials": rules,
        }),
        failed: false,
    }
}

fn execute(cli: &Cli) -> Result<Output, Error> {
    let rule = specialization(cli)?;
    let rule = rule.as_ref();
    Ok(match &cli.command {
        Command::Normalize { algebra: a, expr } => {
            let p = algebra(a, rule)?;
            let e = p.nf(&parse(&p, expr, rule)?);
            element_output(&p, &e)
        }
        Command::Multiply {
            algebra: a,
            left,
            right,
        } => {
            let p = algebra(a, rule)?;
            let e = p.mul(&parse(&p, left, rule)?, &parse(&p, right, rule)?);
            element_output(&p, &e)
        }
        Command::Commutator {
            algebra: a,
            u,
            left,
            right,
        } => {
            let p = algebra(a, rule)?;
            let mut u = expr::parse_scalar(u)?;
            if let Some(r) = rule {
                u = r.apply(&u);
            }
            let e = p
                .system
                .commutator(&parse(&p, left, rule)?, &parse(&p, right, rule)?, &u)?;
            element_output(&p, &e)
        }
        Command::Curve { algebra: a, link } => {
            let target = torus_target(a)?;
            let v = expr::parse_link(link)?;
            let table = CurveTable::new(target, v.complexity().max(1));
            let mut e = table.curve(&v)?.clone();
            let mut p = table.pres.clone();
            if let Some(r) = rule {
                p = p.specialized(r);
                e = p.nf(&e.map_coeffs(|c| r.apply(c)));
            }
            element_output(&p, &e)
        }
        Command::Tolinks { algebra: a, expr } => {
            if rule.is_some() {
                return Err(Error::Precondition(
                    "link expansions are computed over Z[A, A^-1]".into(),
                ));
            }
            let (name, x) = to_links(torus_target(a)?, expr)?;
            links_output(&name, &x)
        }
        Command::Verify {
            suite,
            max_degree,
            seed,
            trials,
            max_complexity,
        } => {
            let o = SuiteOptions {
                max_degree: *max_degree,
                seed: *seed,
                trials: *trials,
                max_complexity: *max_complexity,
            };
            let r = suites::run_suite(suite, &o)?;
            Output {
                text: r.to_text().trim_end().to_string(),
                json: r.to_json(),
                failed: !r.passed(),
            }
        }
        Command::Info { algebra: a } => info(&algebra(a, rule)?),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let body = match cli.format {
        Format::Text => out.text,
        Format::Json => serde_json::to_string_pretty(&out.json).expect("plain data"),
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout(), "{body}");
        }
    }
    if out.failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
