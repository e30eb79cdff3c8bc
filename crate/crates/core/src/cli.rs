//! The `ratkit` command line.
//!
//! Exit codes: 0 = success (and "equivalent" for `equiv`); 1 = decided
//! not-equivalent; 2 = usage or input error; 3 = sampled (undecided-exact)
//! equivalence verdict.  Automata print in the automaton text format,
//! expressions in the expression grammar; `--dot` switches automaton output
//! to GraphViz.  `-` as a file name reads the automaton from stdin.

use std::io::Read;

use clap::{Args, Parser, Subcommand};

use crate::automaton::{Automaton, Order};
use crate::delta;
use crate::equiv::{self, Method, Verdict};
use crate::expr::{self, Expr};
use crate::gamma::{self, RecursiveDivision};
use crate::semiring::SemiringTag;
use crate::{Error, Result};

#[derive(Parser)]
#[command(
    name = "ratkit",
    about = "rational expressions and finite weighted automata, converted both ways",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ExprArgs {
    /// The expression to work on.
    #[arg(short = 'E', long = "expr", value_name = "EXPR")]
    expr: String,
    /// Semiring of the expression: B, N, Z, Q or minplus.
    #[arg(short = 'W', long = "semiring", default_value = "B")]
    semiring: String,
    /// Declared alphabet (letters beyond those occurring), e.g. `ab`.
    #[arg(long)]
    alphabet: Option<String>,
}

impl ExprArgs {
    fn parse_expr(&self) -> Result<Expr> {
        let tag: SemiringTag = self.semiring.parse()?;
        match &self.alphabet {
            Some(letters) => {
                let letters: Vec<char> = letters.chars().collect();
                expr::parse_with_alphabet(&self.expr, tag, Some(&letters))
            }
            None => expr::parse(&self.expr, tag),
        }
    }
}

fn read_automaton(path: &str) -> Result<Automaton> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Invalid(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read '{path}': {e}")))?
    };
    Automaton::parse_text(&text)
}

fn parse_order(a: &Automaton, order: &Option<String>) -> Result<Order> {
    match order {
        Some(text) => a.parse_order(text),
        None => Ok(Order::ascending(a.state_count())),
    }
}

fn apply_simplify(e: Expr, simplify: &str) -> Result<Expr> {
    match simplify {
        "trivial" => Ok(e),
        "natural" => Ok(e.simplify_natural()),
        other => Err(Error::Invalid(format!(
            "unknown simplification '{other}' (trivial|natural)"
        ))),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its reduced form.
    Parse {
        #[command(flatten)]
        expr: ExprArgs,
        /// Display-level simplification: trivial (none beyond the trivial
        /// identities) or natural.
        #[arg(long, default_value = "trivial")]
        simplify: String,
    },
    /// Build an automaton from an expression.
    Exp2aut {
        #[command(flatten)]
        expr: ExprArgs,
        /// Construction: standard, derived, thompson or eggan.
        #[arg(long, default_value = "standard")]
        method: String,
        /// Emit GraphViz instead of the text format.
        #[arg(long)]
        dot: bool,
    },
    /// Compute an expression denoting the behaviour of an automaton.
    Aut2exp {
        /// Automaton file (`-` for stdin).
        file: String,
        /// Algorithm: se, system, my or recursive.
        #[arg(long, default_value = "se")]
        method: String,
        /// Elimination order as comma-separated states (default: ascending).
        #[arg(long)]
        order: Option<String>,
        /// Recursive division as a nested partition, e.g. `((0,1),2)`.
        #[arg(long)]
        division: Option<String>,
        /// Also print the full matrix (my and recursive methods).
        #[arg(long)]
        matrix: bool,
        #[arg(long, default_value = "trivial")]
        simplify: String,
    },
    /// Evaluate an automaton on a word.
    Eval {
        file: String,
        /// The input word (`\e` or empty for the empty word).
        #[arg(long, default_value = "")]
        word: String,
    },
    /// Print all nonzero coefficients up to a length bound.
    Series {
        /// Automaton file; omit when using --expr.
        file: Option<String>,
        #[arg(short = 'E', long = "expr")]
        expr: Option<String>,
        #[arg(short = 'W', long = "semiring", default_value = "B")]
        semiring: String,
        #[arg(long, default_value_t = 4)]
        degree: usize,
    },
    /// Decide equivalence of two expressions or two automata.
    Equiv {
        /// Automaton files (when not comparing expressions).
        files: Vec<String>,
        #[arg(short = 'E', long = "lhs")]
        lhs: Option<String>,
        #[arg(short = 'F', long = "rhs")]
        rhs: Option<String>,
        #[arg(short = 'W', long = "semiring", default_value = "B")]
        semiring: String,
    },
    /// Star-normal form of a Boolean expression.
    Snf {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Derivation of an expression by a letter or a word.
    Derive {
        #[command(flatten)]
        expr: ExprArgs,
        /// Word to derive by (single letters included).
        #[arg(long)]
        word: String,
    },
    /// The derived terms of an expression, one per line.
    Terms {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Loop complexity of an automaton.
    Lc { file: String },
    /// Loop index of an automaton relative to an order.
    Index {
        file: String,
        #[arg(long)]
        order: Option<String>,
    },
    /// Star height of an expression.
    Height {
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Minimal quotient of an automaton.
    Quotient {
        file: String,
        /// Also print the state map as comments.
        #[arg(long)]
        map: bool,
        #[arg(long)]
        dot: bool,
    },
}

/// Entry point used by the `ratkit` binary.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own message; --help and --version exit 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ratkit: {e}");
            2
        }
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Parse { expr, simplify } => {
            let e = apply_simplify(expr.parse_expr()?, &simplify)?;
            println!("{e}");
            Ok(0)
        }
        Command::Exp2aut { expr, method, dot } => {
            let e = expr.parse_expr()?;
            let a = match method.as_str() {
                "standard" => delta::standard_automaton(&e)?.into_automaton(),
                "derived" => delta::derived_term_automaton(&e)?.0,
                "thompson" => delta::thompson(&e)?,
                "eggan" => delta::eggan_automaton(&e)?,
                other => {
                    return Err(Error::Invalid(format!(
                        "unknown method '{other}' (standard|derived|thompson|eggan)"
                    )))
                }
            };
            print!("{}", if dot { a.to_dot() } else { a.to_text() });
            Ok(0)
        }
        Command::Aut2exp {
            file,
            method,
            order,
            division,
            matrix,
            simplify,
        } => {
            let a = read_automaton(&file)?;
            match method.as_str() {
                "se" => {
                    let e = gamma::state_elimination(&a, &parse_order(&a, &order)?)?;
                    println!("{}", apply_simplify(e, &simplify)?);
                }
                "system" => {
                    let e = gamma::system_solution(&a, &parse_order(&a, &order)?)?;
                    println!("{}", apply_simplify(e, &simplify)?);
                }
                "my" => {
                    let res = gamma::mcnaughton_yamada(&a, &parse_order(&a, &order)?)?;
                    if matrix {
                        for (p, row) in res.matrix.iter().enumerate() {
                            for (q, entry) in row.iter().enumerate() {
                                let entry = apply_simplify(entry.clone(), &simplify)?;
                                println!("M {} {} {entry}", a.state_name(p), a.state_name(q));
                            }
                        }
                    }
                    println!("{}", apply_simplify(res.aggregate, &simplify)?);
                }
                "recursive" => {
                    let div = match &division {
                        Some(text) => RecursiveDivision::parse(text, &a)?,
                        None => RecursiveDivision::balanced(a.state_count()),
                    };
                    let res = gamma::recursive_method(&a, &div)?;
                    if matrix {
                        for (p, row) in res.matrix.iter().enumerate() {
                            for (q, entry) in row.iter().enumerate() {
                                let entry = apply_simplify(entry.clone(), &simplify)?;
                                println!("M {} {} {entry}", a.state_name(p), a.state_name(q));
                            }
                        }
                    }
                    println!("{}", apply_simplify(res.aggregate, &simplify)?);
                }
                other => {
                    return Err(Error::Invalid(format!(
                        "unknown method '{other}' (se|system|my|recursive)"
                    )))
                }
            }
            Ok(0)
        }
        Command::Eval { file, word } => {
            let a = read_automaton(&file)?;
            let word = if word == "\\e" { String::new() } else { word };
            println!("{}", a.eval(&word)?);
            Ok(0)
        }
        Command::Series {
            file,
            expr,
            semiring,
            degree,
        } => {
            let series = match (&file, &expr) {
                (Some(path), None) => read_automaton(path)?.truncated_behaviour(degree)?,
                (None, Some(text)) => {
                    let tag: SemiringTag = semiring.parse()?;
                    expr::parse(text, tag)?.truncated_series(degree)?
                }
                _ => {
                    return Err(Error::Invalid(
                        "series needs exactly one of a file or --expr".into(),
                    ))
                }
            };
            for (w, k) in series.iter() {
                let shown = if w.is_empty() { "\\e" } else { w };
                println!("{shown}\t{k}");
            }
            Ok(0)
        }
        Command::Equiv {
            files,
            lhs,
            rhs,
            semiring,
        } => {
            let tag: SemiringTag = semiring.parse()?;
            let verdict = match (lhs, rhs, files.as_slice()) {
                (Some(l), Some(r), []) => {
                    let e = expr::parse(&l, tag)?;
                    let f = expr::parse(&r, tag)?;
                    equiv::equivalent_exprs(&e, &f)?
                }
                (None, None, [fa, fb]) => {
                    let a = close_if_boolean(read_automaton(fa)?)?;
                    let b = close_if_boolean(read_automaton(fb)?)?;
                    equiv::equivalent_automata(&a, &b)?
                }
                _ => {
                    return Err(Error::Invalid(
                        "equiv needs either -E and -F, or two automaton files".into(),
                    ))
                }
            };
            Ok(report_verdict(&verdict))
        }
        Command::Snf { expr } => {
            let e = expr.parse_expr()?;
            println!("{}", delta::star_normal_form(&e)?);
            Ok(0)
        }
        Command::Derive { expr, word } => {
            let e = expr.parse_expr()?;
            let comb = delta::derive_word(&e, &word)?;
            for (term, weight) in comb.iter() {
                println!("{weight}\t{term}");
            }
            Ok(0)
        }
        Command::Terms { expr } => {
            let e = expr.parse_expr()?;
            for term in delta::derived_terms(&e) {
                println!("{term}");
            }
            Ok(0)
        }
        Command::Lc { file } => {
            let a = read_automaton(&file)?;
            println!("{}", a.loop_complexity()?);
            Ok(0)
        }
        Command::Index { file, order } => {
            let a = read_automaton(&file)?;
            let order = parse_order(&a, &order)?;
            println!("{}", a.loop_index(&order)?);
            Ok(0)
        }
        Command::Height { expr } => {
            let e = expr.parse_expr()?;
            println!("{}", e.star_height());
            Ok(0)
        }
        Command::Quotient { file, map, dot } => {
            let a = read_automaton(&file)?;
            let a = if a.has_eps_edge() {
                a.backward_closure()?
            } else {
                a
            };
            let (q, phi) = a.minimal_quotient();
            print!("{}", if dot { q.to_dot() } else { q.to_text() });
            if map {
                for (p, c) in phi.0.iter().enumerate() {
                    println!("# map {} -> {}", a.state_name(p), q.state_name(*c));
                }
            }
            Ok(0)
        }
    }
}

fn close_if_boolean(a: Automaton) -> Result<Automaton> {
    if a.has_eps_edge() && a.tag() == SemiringTag::B {
        a.backward_closure()
    } else {
        Ok(a)
    }
}

fn report_verdict(v: &Verdict) -> i32 {
    if v.equivalent {
        if v.method == Method::Sampled {
            println!("probably equivalent (sampled, method={})", v.method);
            3
        } else {
            println!("equivalent (method={})", v.method);
            0
        }
    } else {
        let w = v
            .witness
            .as_ref()
            .expect("inequivalent verdicts carry a witness");
        let shown = if w.word.is_empty() { "\\e" } else { &w.word };
        println!(
            "not equivalent (method={}): '{shown}' evaluates to {} vs {}",
            v.method, w.left, w.right
        );
        1
    }
}
