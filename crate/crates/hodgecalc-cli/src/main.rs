mod expr;

use std::collections::BTreeMap;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hodgecalc::bundle::{BundleDescriptor, HClass, WeightTuple};
use hodgecalc::catalog::{hurwitz_lambda, reduce};
use hodgecalc::checks::{manifest, run, run_all, Check};
use hodgecalc::ledger::{boundary_order_profile, Ledger};
use hodgecalc::plethysm::{hyperelliptic_pullback_weight, sym_sym2, GL2Rep};
use hodgecalc::{FormalClass, Generator, Rational, SpaceId};

use expr::Symbol;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact divisor-class computations on moduli of curves and Hurwitz spaces.
#[derive(Parser, Debug)]
#[command(name = "hodgecalc", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Default output format.
    #[arg(long, global = true, value_enum, env = "HODGECALC_FORMAT", default_value = "text")]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the verification checks (all of them by default).
    Verify {
        /// Check identifier such as AC1.
        id: Option<String>,
        /// Same as the positional identifier.
        #[arg(long = "check", conflicts_with = "id")]
        check: Option<String>,
        /// List the checks without running them.
        #[arg(long)]
        list: bool,
    },
    /// Evaluate a class expression on a space.
    Eval {
        /// Space such as M2bar, M3bar, H3bar or H32.
        #[arg(long)]
        space: String,
        /// Reduce modulo all known relations.
        #[arg(long)]
        reduce: bool,
        /// The expression; several arguments are joined by spaces.
        #[arg(required = true, trailing_var_arg = true, allow_hyphen_values = true)]
        expr: Vec<String>,
    },
    /// Decompose Sym^n(Sym^2 W), or the pullback of a weight to the hyperelliptic stack.
    Decompose {
        /// The symmetric power n.
        #[arg(required_unless_present = "weight")]
        n: Option<u32>,
        /// A weight such as 4,0,8 to pull back instead.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "n")]
        weight: Option<Vec<i64>>,
    },
    /// Boundary vanishing order profile for two groups of branch points.
    Orders {
        /// Group sizes p,q.
        #[arg(long, value_delimiter = ',', num_args = 1, default_value = "3,3")]
        groups: Vec<u32>,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Print the registered modular forms.
    Ledger {
        /// Only this record.
        name: Option<String>,
    },
}

#[derive(Serialize)]
struct CheckJson<'a> {
    id: &'a str,
    anchor: &'a str,
    claimed: &'a str,
    computed: &'a str,
    pass: bool,
}

#[derive(Serialize)]
struct ClassJson {
    space: String,
    coeffs: BTreeMap<String, String>,
}

#[derive(Serialize)]
struct RepJson {
    summands: Vec<(u32, i64)>,
    dimension: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    invariant_degree: Option<i64>,
}

#[derive(Serialize)]
struct RecordJson {
    name: String,
    space: String,
    weight: Vec<i64>,
    class: String,
    orders: BTreeMap<String, i64>,
    anchor: String,
}

struct Usage(String);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json || cli.format == Format::Json;
    match dispatch(cli.command, json) {
        Ok(code) => code,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn print_json<T: Serialize>(v: &T) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn dispatch(cmd: Command, json: bool) -> Result<ExitCode, Usage> {
    match cmd {
        Command::Verify { id, check, list } => verify(id.or(check), list, json),
        Command::Eval { space, reduce, expr } => {
            // Flags written after the expression end up in the trailing arguments.
            let reduce = reduce || expr.iter().any(|w| w == "--reduce");
            let json = json || expr.iter().any(|w| w == "--json");
            let words: Vec<&str> = expr
                .iter()
                .map(String::as_str)
                .filter(|w| *w != "--reduce" && *w != "--json")
                .collect();
            eval(&space, reduce, &words.join(" "), json)
        }
        Command::Decompose { n, weight } => decompose(n, weight, json),
        Command::Orders { groups, shift } => orders(&groups, shift, json),
        Command::Ledger { name } => ledger(name.as_deref(), json),
    }
}

fn verify(id: Option<String>, list: bool, json: bool) -> Result<ExitCode, Usage> {
    if list {
        for (i, a) in manifest() {
            println!("{i:<5} {a}");
        }
        return Ok(ExitCode::SUCCESS);
    }
    let checks: Vec<Check> = match id.as_deref() {
        None | Some("all") => run_all(),
        Some(i) => vec![run(i).ok_or_else(|| Usage(format!("unknown check {i:?}")))?],
    };
    if json {
        let v: Vec<CheckJson> = checks
            .iter()
            .map(|c| CheckJson {
                id: c.id,
                anchor: c.anchor,
                claimed: &c.claimed,
                computed: &c.computed,
                pass: c.pass,
            })
            .collect();
        print_json(&v);
    } else {
        for c in &checks {
            println!("{} {:<5} {}", if c.pass { "PASS" } else { "FAIL" }, c.id, c.anchor);
            println!("      claimed:  {}", c.claimed);
            println!("      computed: {}", c.computed);
        }
        let passed = checks.iter().filter(|c| c.pass).count();
        println!("{passed}/{} checks passed", checks.len());
    }
    Ok(if checks.iter().all(|c| c.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn eval(space: &str, do_reduce: bool, text: &str, json: bool) -> Result<ExitCode, Usage> {
    let s: SpaceId = space.parse().map_err(|e| Usage(format!("{e}")))?;
    let e = expr::parse(text).map_err(|e| Usage(format!("cannot parse {text:?} {e}")))?;
    if !e.constant.is_zero() {
        return Err(Usage(format!("constant term {} in a class expression", e.constant)));
    }
    let mut hyper: Option<(bool, Rational)> = None;
    let mut base = Vec::new();
    for (sym, c) in &e.terms {
        match sym {
            Symbol::H | Symbol::HDual => {
                if hyper.is_some() {
                    return Err(Usage("h and hdual live on different bundles".into()));
                }
                hyper = Some((*sym == Symbol::HDual, c.clone()));
            }
            Symbol::Base(g) => base.push((*g, c.clone())),
        }
    }
    let mut class = FormalClass::new(s, base).map_err(|e| Usage(format!("{e}")))?;
    if let SpaceId::Hurwitz(g) = s {
        class = class
            .substitute(s, |gen| match gen {
                Generator::Lambda => Ok(hurwitz_lambda(g)),
                other => FormalClass::generator(s, *other),
            })
            .map_err(|e| Usage(format!("{e}")))?;
    }
    if do_reduce {
        class = reduce(&class);
    }
    let rendered = match &hyper {
        Some((dual, c)) => {
            let b = BundleDescriptor::hodge(s);
            let b = if *dual { b.dual() } else { b };
            HClass::divisor(&b, c.clone(), class.clone())
                .map_err(|e| Usage(format!("{e}")))?
                .to_string()
        }
        None => class.to_string(),
    };
    if json {
        let mut coeffs: BTreeMap<String, String> = class
            .terms()
            .map(|(g, c)| (g.to_string(), c.to_fraction_string()))
            .collect();
        if let Some((dual, c)) = hyper {
            coeffs.insert(if dual { "hdual" } else { "h" }.into(), c.to_fraction_string());
        }
        print_json(&ClassJson {
            space: s.to_string(),
            coeffs,
        });
    } else {
        println!("{rendered}");
    }
    Ok(ExitCode::SUCCESS)
}

fn show_rep(rep: &GL2Rep, degree: Option<i64>, json: bool) {
    if json {
        print_json(&RepJson {
            summands: rep.summands().to_vec(),
            dimension: rep.dimension(),
            invariant_degree: degree,
        });
    } else {
        println!("{rep}");
        println!("dimension {}", rep.dimension());
        if let Some(d) = degree {
            println!("invariant degree {d}");
        }
    }
}

fn decompose(n: Option<u32>, weight: Option<Vec<i64>>, json: bool) -> Result<ExitCode, Usage> {
    if let Some(w) = weight {
        if w.len() < 2 {
            return Err(Usage("a weight has at least two entries".into()));
        }
        let p = hyperelliptic_pullback_weight(&WeightTuple::new(w)).map_err(|e| Usage(format!("{e}")))?;
        show_rep(&p.rep, p.invariant_degree, json);
    } else {
        let n = n.expect("clap requires n or --weight");
        show_rep(&sym_sym2(n), None, json);
    }
    Ok(ExitCode::SUCCESS)
}

fn orders(groups: &[u32], shift: i64, json: bool) -> Result<ExitCode, Usage> {
    let [p, q] = groups else {
        return Err(Usage("--groups takes two sizes p,q".into()));
    };
    if *p == 0 || *q == 0 {
        return Err(Usage("group sizes must be positive".into()));
    }
    let v = boundary_order_profile(*p, *q, shift);
    if json {
        print_json(&v);
    } else {
        let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        println!("({})", parts.join(", "));
    }
    Ok(ExitCode::SUCCESS)
}

fn ledger(name: Option<&str>, json: bool) -> Result<ExitCode, Usage> {
    let l = match Ledger::shipped() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("ledger inconsistent: {e}");
            return Ok(ExitCode::from(1));
        }
    };
    let records: Vec<_> = match name {
        Some(n) => vec![l.get(n).ok_or_else(|| Usage(format!("no record named {n:?}")))?],
        None => l.records().iter().collect(),
    };
    if json {
        let v: Vec<RecordJson> = records
            .iter()
            .map(|r| RecordJson {
                name: r.name.clone(),
                space: r.space.to_string(),
                weight: r.weight.entries().to_vec(),
                class: r.class.to_string(),
                orders: r.orders.iter().map(|(g, o)| (g.to_string(), *o)).collect(),
                anchor: r.anchor.clone(),
            })
            .collect();
        print_json(&v);
    } else {
        for r in records {
            println!("{r}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
