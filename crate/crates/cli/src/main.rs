use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ptq_core::eval::{eval_big, reduction_sequence};
use ptq_core::harness::{verify, Property, VerifyConfig};
use ptq_core::machine::{Machine, DEFAULT_FUEL};
use ptq_core::measure::{control_length, id, measure_e, measure_p, VarMeasureEnv};
use ptq_core::parse::{parse_eterm, parse_judgment, parse_lam_judgment, parse_lambda, parse_term};
use ptq_core::readback::{readback, readback_judgment};
use ptq_core::syntax::Term;
use ptq_core::translate::{
    plotkin_translate, ptq_translate, ptq_translate_e, EvalOrder, Pairing, Strategy,
};
use ptq_core::typing::{
    check_judgment, check_lam_judgment, infer_lambda_box, infer_ptq, LamEnv, TypeEnv,
};

#[derive(Parser)]
#[command(
    name = "ptq",
    version,
    about = "Typed continuation calculus: translate, reduce, read back, verify"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term and print it back in canonical form.
    Parse {
        #[arg(long, value_enum, default_value = "ptq")]
        lang: Lang,
        input: Option<PathBuf>,
    },
    /// Typecheck a judgment, or infer the type of a closed term.
    Typecheck {
        #[arg(long, value_enum, default_value = "ptq")]
        lang: Lang,
        input: Option<PathBuf>,
    },
    /// Translate a λ-term.
    Translate {
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "term")]
        form: Form,
        #[arg(long, value_enum, default_value = "arg-first")]
        order: OrderArg,
        #[arg(long, value_enum, default_value = "curried")]
        pairing: PairingArg,
        input: Option<PathBuf>,
    },
    /// Run the reduction machine on an e-term.
    Reduce {
        /// Print every step with its rule.
        #[arg(long)]
        trace: bool,
        /// Emit the trace as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        input: Option<PathBuf>,
    },
    /// Read a ptq-term or ptq-judgment back into the λ-calculus.
    Readback { input: Option<PathBuf> },
    /// Print the measure at the identity and the control length.
    Measure { input: Option<PathBuf> },
    /// Evaluate a λ-term.
    Eval {
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long, value_enum, default_value = "arg-first")]
        order: OrderArg,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 100_000)]
        fuel: usize,
        input: Option<PathBuf>,
    },
    /// Check properties on generated terms.
    Verify {
        /// `all` or a comma-separated list of property names.
        #[arg(long, default_value = "all")]
        property: String,
        #[arg(long, default_value_t = 500)]
        count: usize,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Lang {
    Ptq,
    Lam,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Cbn,
    Cbv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Term,
    Eterm,
    Plotkin,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    FnFirst,
    ArgFirst,
}

#[derive(Clone, Copy, ValueEnum)]
enum PairingArg {
    Curried,
    Uncurried,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Cbn => Strategy::CbN,
            StrategyArg::Cbv => Strategy::CbV,
        }
    }
}

impl From<OrderArg> for EvalOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::FnFirst => EvalOrder::FunctionFirst,
            OrderArg::ArgFirst => EvalOrder::ArgumentFirst,
        }
    }
}

/// A domain failure, reported by its kind name.
struct Failure {
    kind: String,
    message: String,
}

impl Failure {
    fn new(kind: &str, message: impl ToString) -> Self {
        Failure {
            kind: kind.to_string(),
            message: message.to_string(),
        }
    }
}

macro_rules! failure_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::new(e.kind(), &e)
            }
        }
    )*};
}

failure_from!(
    ptq_core::parse::ParseError,
    ptq_core::typing::TypeError,
    ptq_core::readback::ReadbackError,
    ptq_core::translate::TranslateError,
    ptq_core::measure::MeasureError,
    ptq_core::eval::EvalError
);

impl From<ptq_core::machine::NotTClosed> for Failure {
    fn from(e: ptq_core::machine::NotTClosed) -> Self {
        Failure::new("NotTClosed", e)
    }
}

type Out = Result<(String, bool), Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    match path {
        Some(p) => {
            s = fs::read_to_string(p)
                .map_err(|e| Failure::new("IoError", format!("{}: {e}", p.display())))?
        }
        None => {
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::new("IoError", e))?;
        }
    }
    Ok(s)
}

fn is_judgment(src: &str) -> bool {
    src.contains("|-")
}

fn ok(s: impl ToString) -> Out {
    Ok((s.to_string(), true))
}

fn run(cmd: Command) -> Out {
    match cmd {
        Command::Parse { lang, input } => {
            let src = read_input(&input)?;
            match lang {
                Lang::Ptq => ok(parse_term(&src)?),
                Lang::Lam => ok(parse_lambda(&src)?),
            }
        }
        Command::Typecheck { lang, input } => {
            let src = read_input(&input)?;
            let ty = match (lang, is_judgment(&src)) {
                (Lang::Ptq, true) => check_judgment(&parse_judgment(&src)?)?.to_string(),
                (Lang::Ptq, false) => infer_ptq(&TypeEnv::new(), &parse_term(&src)?)?.to_string(),
                (Lang::Lam, true) => check_lam_judgment(&parse_lam_judgment(&src)?)?.to_string(),
                (Lang::Lam, false) => {
                    infer_lambda_box(&LamEnv::default(), &parse_lambda(&src)?)?.to_string()
                }
            };
            ok(format!("OK {ty}"))
        }
        Command::Translate {
            strategy,
            form,
            order,
            pairing,
            input,
        } => {
            let m = parse_lambda(&read_input(&input)?)?;
            let s = strategy.into();
            match form {
                Form::Term => ok(ptq_translate(&m, s)?),
                Form::Eterm => ok(ptq_translate_e(&m, s)?),
                Form::Plotkin => {
                    let pairing = match pairing {
                        PairingArg::Curried => Pairing::Curried,
                        PairingArg::Uncurried => Pairing::Uncurried,
                    };
                    ok(plotkin_translate(&m, s, order.into(), pairing)?)
                }
            }
        }
        Command::Reduce {
            trace,
            json,
            fuel,
            input,
        } => {
            let u = parse_eterm(&read_input(&input)?)?;
            let out = Machine::new().normalize(&u, fuel)?;
            if out.exhausted {
                return Err(Failure::new(
                    "FuelExhausted",
                    format!("no normal form within {fuel} steps"),
                ));
            }
            if json {
                return ok(out.trace.to_json());
            }
            let mut text = String::new();
            if trace {
                text.push_str(&format!("        {}\n", out.trace.initial));
                for (rule, t) in &out.trace.steps {
                    text.push_str(&format!("{:<7} {}\n", rule.name(), t));
                }
                text.push_str(&format!("{} steps", out.trace.steps.len()));
            } else {
                text = out.final_term().to_string();
            }
            ok(text)
        }
        Command::Readback { input } => {
            let src = read_input(&input)?;
            if is_judgment(&src) {
                ok(readback_judgment(&parse_judgment(&src)?)?)
            } else {
                ok(readback(&parse_term(&src)?)?)
            }
        }
        Command::Measure { input } => {
            let env = VarMeasureEnv::zero();
            match parse_term(&read_input(&input)?)? {
                Term::P(p) => ok(format!("measure {}", measure_p(&p, &env)?)),
                Term::E(u) => ok(format!(
                    "measure {}\ncontrol-length {}",
                    measure_e(&u, &env, &id)?,
                    control_length(&u)?
                )),
                other => Err(Failure::new(
                    "RoleMismatch",
                    format!("expected a p-term or e-term, found a {}", other.sort()),
                )),
            }
        }
        Command::Eval {
            strategy,
            order,
            trace,
            fuel,
            input,
        } => {
            let m = parse_lambda(&read_input(&input)?)?;
            let (s, order) = (strategy.into(), order.into());
            if trace {
                let seq = reduction_sequence(&m, s, order, fuel)?;
                let lines: Vec<String> = seq.iter().map(|t| t.to_string()).collect();
                ok(format!("{}\n{} steps", lines.join("\n"), seq.len() - 1))
            } else {
                ok(eval_big(&m, s, order, fuel)?.result)
            }
        }
        Command::Verify {
            property,
            count,
            max_size,
            seed,
            json,
        } => {
            let properties = parse_properties(&property)?;
            let cfg = VerifyConfig {
                count,
                max_size,
                seed,
            };
            let reports = verify(&properties, &cfg);
            let all_passed = reports.iter().all(|r| r.passed());
            if json {
                let text = serde_json::to_string_pretty(&reports)
                    .map_err(|e| Failure::new("IoError", e))?;
                return Ok((text, all_passed));
            }
            let mut lines = vec![format!(
                "seed {seed}, {count} instances, sizes 0..={max_size}"
            )];
            for p in &properties {
                let mine: Vec<_> = reports.iter().filter(|r| r.property == p.name()).collect();
                let failed: Vec<_> = mine.iter().filter(|r| !r.passed()).collect();
                let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
                lines.push(format!(
                    "{verdict} {} {}/{}",
                    p.name(),
                    mine.len() - failed.len(),
                    mine.len()
                ));
                for r in failed.iter().take(3) {
                    lines.push(format!(
                        "  size {} seed {}: {}\n    {}",
                        r.size,
                        r.seed,
                        r.instance,
                        r.counterexample.as_deref().unwrap_or("")
                    ));
                }
            }
            Ok((lines.join("\n"), all_passed))
        }
    }
}

fn parse_properties(list: &str) -> Result<Vec<Property>, Failure> {
    if list == "all" {
        return Ok(Property::ALL.to_vec());
    }
    list.split(',')
        .map(|s| {
            s.trim()
                .parse::<Property>()
                .map_err(|e| Failure::new("UnknownProperty", e))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((text, passed)) => {
            println!("{text}");
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("error: {}: {}", f.kind, f.message);
            ExitCode::from(1)
        }
    }
}
