//! The `dhopf` command line.
//!
//! Exit status: 0 on success, 1 when a check finds a counterexample, 2 on
//! usage or evaluation errors. Output goes to the given stream as TSV
//! (default) or as one JSON object `{"command": …, "result": …}`.

pub mod expr;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value as Json};

use crate::arithfn::{self, ArithFn};
use crate::bell::{self, BellSeries, PrimeValues};
use crate::coalgebra::{self, Coproduct, Duality, Kind, Variant};
use crate::error::{Error, Result};
use crate::integers::{self, prime_count};
use crate::values::{fmt_rational, parse_rational, Value};
use crate::verdict::Verdict;

pub use expr::parse_expr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "dhopf", version, about = "Exact Dirichlet convolution, coproducts, antipodes and Bell series")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum VariantArg {
    Renormalized,
    Unrenormalized,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::Renormalized => Variant::Renormalized,
            VariantArg::Unrenormalized => Variant::Unrenormalized,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AntipodeArg {
    Add,
    Mult,
    MultUnren,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoprodArg {
    Add,
    Mult,
    AddUnren,
    MultUnren,
}

impl From<CoprodArg> for Coproduct {
    fn from(c: CoprodArg) -> Coproduct {
        match c {
            CoprodArg::Add => Coproduct::Add,
            CoprodArg::Mult => Coproduct::Mult,
            CoprodArg::AddUnren => Coproduct::AddUnren,
            CoprodArg::MultUnren => Coproduct::MultUnren,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Additive,
    Multiplicative,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DualityArg {
    Additive,
    Multiplicative,
    AdditiveUnren,
    MultiplicativeUnren,
}

#[derive(Debug, Args)]
struct Range {
    /// Upper end of the argument range (inclusive).
    #[arg(long, default_value_t = 20)]
    upto: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate a function expression on 1..=upto.
    Tabulate {
        expr: String,
        #[command(flatten)]
        range: Range,
    },
    /// Tabulate the Dirichlet convolution of two expressions.
    Conv {
        f: String,
        g: String,
        #[command(flatten)]
        range: Range,
    },
    /// Tabulate the Dirichlet inverse of an expression.
    Inverse {
        f: String,
        #[command(flatten)]
        range: Range,
    },
    /// Tabulate one of the antipodes.
    Antipode {
        #[arg(value_enum)]
        which: AntipodeArg,
        #[command(flatten)]
        range: Range,
    },
    /// Print a coproduct as a sum of pairs.
    Coprod {
        #[arg(value_enum)]
        which: CoprodArg,
        n: u64,
    },
    /// Diagonal excess of the unrenormalized divisor coproduct at n.
    Overcount { n: u64 },
    /// Run an identity or axiom check; exits 1 on a counterexample.
    Check {
        #[command(subcommand)]
        check: CheckCommand,
    },
    /// Bell series of a function at a prime.
    Bell {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Cauchy product of two Bell series at the same prime.
    BellMul {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Coefficients of 1/(1 - fp x + gp x^2), by recursion and by series inversion.
    Recursion {
        #[arg(long, allow_hyphen_values = true)]
        fp: String,
        #[arg(long, allow_hyphen_values = true)]
        gp: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// Residual of the counter-term product formula for a specially multiplicative function.
    ProductFormula {
        /// f on primes: a rational or an affine form in p such as `p+1`.
        #[arg(long, allow_hyphen_values = true)]
        fp: String,
        /// Completely multiplicative weight function.
        #[arg(long)]
        g: String,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Upper-triangular Toeplitz matrix of a function at a prime (exponents 0..=order).
    Matrix {
        #[arg(long = "fn")]
        f: String,
        #[arg(long)]
        prime: u64,
        #[arg(long, default_value_t = 4)]
        order: usize,
    },
    /// Primitive elements of the additive or divisor coproduct.
    Primitives {
        #[arg(long, default_value_t = 30)]
        upto: u64,
        #[arg(long, value_enum, default_value_t = KindArg::Multiplicative)]
        variant: KindArg,
    },
    /// Prime count and the ratio pi(x) ln(x) / x.
    Pnt {
        #[arg(long)]
        x: u64,
    },
    /// Renormalized vs unrenormalized divisor coproduct over 1..=upto.
    HgVsHa {
        #[command(flatten)]
        range: Range,
    },
}

#[derive(Debug, Subcommand)]
enum CheckCommand {
    /// f(nm) = f(n) f(m) on coprime pairs with nm <= upto.
    Mult {
        #[arg(long = "fn")]
        f: String,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
    },
    /// f(nm) = f(n) f(m) on all pairs with nm <= upto.
    CompleteMult {
        #[arg(long = "fn")]
        f: String,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
    },
    /// f.(g*h) = (f.g)*(f.h) on 1..=upto.
    Lambek {
        #[arg(long = "fn")]
        f: String,
        #[arg(long, default_value = "one")]
        g: String,
        #[arg(long, default_value = "one")]
        h: String,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
    },
    /// f.tau = f*f on 1..=upto.
    Carlitz {
        #[arg(long = "fn")]
        f: String,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
    },
    /// Delta(n m) against Delta(n) Delta(m).
    HomAxiom {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Renormalized)]
        variant: VariantArg,
    },
    /// Sum over Delta(n) of S(a) b equals u(n); at --n, or for every n <= --upto.
    Antipode {
        #[arg(long, conflicts_with = "upto")]
        n: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
        #[arg(long, value_enum, default_value_t = VariantArg::Renormalized)]
        variant: VariantArg,
    },
    /// Product pairs against k as n x m pairs against Delta(k).
    Duality {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum, default_value_t = DualityArg::Multiplicative)]
        variant: DualityArg,
    },
    /// Divisor coproduct rebuilt from exponent splittings equals the divisor enumeration.
    Coring {
        #[arg(long, conflicts_with = "upto")]
        n: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        upto: u64,
    },
}

/// Output of one command: the stream text for each format and whether a
/// check failed.
struct Outcome {
    tsv: String,
    json: Json,
    failed: bool,
}

impl Outcome {
    fn ok(tsv: String, json: Json) -> Self {
        Outcome { tsv, json, failed: false }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit status.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let name = command_name(&cli.command);
    match execute(&cli.command) {
        Ok(outcome) => {
            let text = match cli.format {
                Format::Tsv => outcome.tsv,
                Format::Json => json!({"command": name, "result": outcome.json}).to_string() + "\n",
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            i32::from(outcome.failed)
        }
        Err(e) => {
            let _ = writeln!(err, "dhopf {name}: {e}");
            2
        }
    }
}

fn command_name(cmd: &Command) -> String {
    let name = match cmd {
        Command::Tabulate { .. } => "tabulate",
        Command::Conv { .. } => "conv",
        Command::Inverse { .. } => "inverse",
        Command::Antipode { .. } => "antipode",
        Command::Coprod { .. } => "coprod",
        Command::Overcount { .. } => "overcount",
        Command::Check { check } => {
            return format!(
                "check {}",
                match check {
                    CheckCommand::Mult { .. } => "mult",
                    CheckCommand::CompleteMult { .. } => "complete-mult",
                    CheckCommand::Lambek { .. } => "lambek",
                    CheckCommand::Carlitz { .. } => "carlitz",
                    CheckCommand::HomAxiom { .. } => "hom-axiom",
                    CheckCommand::Antipode { .. } => "antipode",
                    CheckCommand::Duality { .. } => "duality",
                    CheckCommand::Coring { .. } => "coring",
                }
            )
        }
        Command::Bell { .. } => "bell",
        Command::BellMul { .. } => "bell-mul",
        Command::Recursion { .. } => "recursion",
        Command::ProductFormula { .. } => "product-formula",
        Command::Matrix { .. } => "matrix",
        Command::Primitives { .. } => "primitives",
        Command::Pnt { .. } => "pnt",
        Command::HgVsHa { .. } => "hg-vs-ha",
    };
    name.to_string()
}

fn positive(what: &str, n: u64) -> Result<u64> {
    if n == 0 {
        Err(Error::InvalidParameter(format!("--{what} must be at least 1")))
    } else {
        Ok(n)
    }
}

fn prime(p: u64) -> Result<u64> {
    if integers::is_prime(p) {
        Ok(p)
    } else {
        Err(Error::NotPrime(p))
    }
}

fn table(f: &ArithFn, upto: u64) -> Result<Outcome> {
    let rows = f.tabulate(positive("upto", upto)?)?;
    Ok(value_table(rows))
}

/// `n<TAB>f(n)` header, then one row per argument.
fn value_table(rows: Vec<(u64, Value)>) -> Outcome {
    let mut tsv = String::from("n\tf(n)\n");
    for (n, v) in &rows {
        tsv.push_str(&format!("{n}\t{v}\n"));
    }
    let json = Json::Array(rows.iter().map(|(n, v)| json!({"n": n, "value": v.to_json()})).collect());
    Outcome::ok(tsv, json)
}

fn check_row(check: &str, passed: bool, detail: &str) -> String {
    let verdict = if passed { "pass" } else { "fail" };
    format!("check\tverdict\tdetail\n{check}\t{verdict}\t{detail}\n")
}

fn verdict_outcome(check: &str, verdict: &Verdict, scope: &str) -> Outcome {
    let detail = match verdict {
        Verdict::Pass => scope.to_string(),
        Verdict::Fail(w) => format!("witness {w}"),
    };
    let json = json!({
        "check": check,
        "verdict": if verdict.is_pass() { "pass" } else { "fail" },
        "scope": scope,
        "witness": verdict.witness().map(|w| json!({"at": w.at, "detail": w.to_string()})),
    });
    Outcome { tsv: check_row(check, verdict.is_pass(), &detail), json, failed: !verdict.is_pass() }
}

fn series_outcome(series: &BellSeries) -> Outcome {
    let header: Vec<String> = (0..=series.order()).map(|k| format!("c{k}")).collect();
    let row: Vec<String> = series.coeffs().iter().map(fmt_rational).collect();
    Outcome::ok(format!("{}\n{}\n", header.join("\t"), row.join("\t")), series.to_json())
}

fn bigint_table(rows: Vec<(u64, BigInt)>) -> Outcome {
    value_table(rows.into_iter().map(|(n, v)| (n, Value::int(v))).collect())
}

fn execute(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Tabulate { expr, range } => table(&parse_expr(expr)?, range.upto),
        Command::Conv { f, g, range } => table(&arithfn::conv(&parse_expr(f)?, &parse_expr(g)?), range.upto),
        Command::Inverse { f, range } => table(&arithfn::inverse(&parse_expr(f)?), range.upto),
        Command::Antipode { which, range } => {
            let upto = positive("upto", range.upto)?;
            let rows = match which {
                AntipodeArg::Add => (0..=upto).map(|n| Ok((n, coalgebra::antipode_add(n)))).collect::<Result<_>>()?,
                AntipodeArg::Mult => (1..=upto).map(|n| Ok((n, coalgebra::antipode_mult(n)?))).collect::<Result<_>>()?,
                AntipodeArg::MultUnren => {
                    (1..=upto).map(|n| Ok((n, coalgebra::antipode_mult_unren(n)?))).collect::<Result<_>>()?
                }
            };
            Ok(bigint_table(rows))
        }
        Command::Coprod { which, n } => {
            let cop = Coproduct::from(*which);
            if cop.kind() == Kind::Multiplicative {
                positive("n", *n)?;
            }
            let s = cop.apply(*n)?;
            Ok(Outcome::ok(format!("{s}\n"), json!({"n": n, "terms": s.to_json(), "rendered": s.to_string()})))
        }
        Command::Overcount { n } => {
            let s = coalgebra::overcounting_report(positive("n", *n)?)?;
            Ok(Outcome::ok(format!("{s}\n"), json!({"n": n, "terms": s.to_json(), "rendered": s.to_string()})))
        }
        Command::Check { check } => execute_check(check),
        Command::Bell { f, prime: p, order } => Ok(series_outcome(&bell::bell_of(&parse_expr(f)?, prime(*p)?, *order)?)),
        Command::BellMul { f, g, prime: p, order } => {
            let p = prime(*p)?;
            let a = bell::bell_of(&parse_expr(f)?, p, *order)?;
            let b = bell::bell_of(&parse_expr(g)?, p, *order)?;
            Ok(series_outcome(&bell::cauchy_mul(&a, &b)?))
        }
        Command::Recursion { fp, gp, order } => {
            let (f_p, g_p) = (parse_rational(fp)?, parse_rational(gp)?);
            let by_recursion = bell::recursion_coeffs(&f_p, &g_p, *order);
            let by_series = bell::rational_expand(&f_p, &g_p, *order);
            let header: Vec<String> = (0..=*order).map(|k| format!("c{k}")).collect();
            let line = |s: &BellSeries| s.coeffs().iter().map(fmt_rational).collect::<Vec<_>>().join("\t");
            let tsv = format!(
                "method\t{}\nrecursion\t{}\nrational\t{}\n",
                header.join("\t"),
                line(&by_recursion),
                line(&by_series)
            );
            let json = json!({"recursion": by_recursion.to_json(), "rational": by_series.to_json(),
                              "agree": by_recursion == by_series});
            Ok(Outcome { tsv, json, failed: by_recursion != by_series })
        }
        Command::ProductFormula { fp, g, m, n } => {
            let (m, n) = (positive("m", *m)?, positive("n", *n)?);
            let g = parse_expr(g)?;
            let f = bell::specially_multiplicative(PrimeValues::parse(fp)?, &g, 1000)?;
            let residual = bell::product_formula_residual(&f, &g, m, n)?;
            let mn = f.eval(m.checked_mul(n).ok_or(Error::Overflow("m·n"))?)?;
            let tsv = format!("m\tn\tf(mn)\tresidual\n{m}\t{n}\t{mn}\t{residual}\n");
            let json = json!({"m": m, "n": n, "f(mn)": mn.to_json(), "residual": residual.to_json()});
            Ok(Outcome { tsv, json, failed: !residual.is_zero() })
        }
        Command::Matrix { f, prime: p, order } => {
            let m = bell::toeplitz_of(&parse_expr(f)?, prime(*p)?, *order)?;
            Ok(Outcome::ok(m.to_tsv(), m.to_json()))
        }
        Command::Primitives { upto, variant } => {
            let kind = match variant {
                KindArg::Additive => Kind::Additive,
                KindArg::Multiplicative => Kind::Multiplicative,
            };
            let xs = coalgebra::primitive_elements(*upto, kind)?;
            let tsv = std::iter::once("x".to_string()).chain(xs.iter().map(u64::to_string)).collect::<Vec<_>>().join("\n") + "\n";
            Ok(Outcome::ok(tsv, json!(xs)))
        }
        Command::Pnt { x } => {
            let x = positive("x", *x)?;
            let count = prime_count(x);
            let ratio = pnt_ratio(count, x);
            let tsv = format!("x\tpi(x)\tratio\n{x}\t{count}\t{ratio:.6}\n");
            Ok(Outcome::ok(tsv, json!({"x": x, "pi": count, "ratio": ratio})))
        }
        Command::HgVsHa { range } => {
            let upto = positive("upto", range.upto)?;
            let mut tsv = String::from("n\tsquarefree\tweight_hg\tweight_ha\texcess\n");
            let mut rows = Vec::new();
            let mut overcounted = 0u64;
            for n in 1..=upto {
                let row = coalgebra::overcount_row(n)?;
                let squarefree = integers::is_squarefree(n)?;
                overcounted += u64::from(!row.excess.is_empty());
                tsv.push_str(&format!(
                    "{n}\t{squarefree}\t{}\t{}\t{}\n",
                    row.renormalized_weight, row.unrenormalized_weight, row.excess
                ));
                rows.push(json!({
                    "n": n,
                    "squarefree": squarefree,
                    "weight_hg": row.renormalized_weight.to_string(),
                    "weight_ha": row.unrenormalized_weight.to_string(),
                    "excess": row.excess.to_json(),
                }));
            }
            Ok(Outcome::ok(tsv, json!({"rows": rows, "overcounted": overcounted})))
        }
    }
}

/// π(x)·ln(x)/x; the only floating point quantity the CLI prints.
pub fn pnt_ratio(count: u64, x: u64) -> f64 {
    count as f64 * (x as f64).ln() / x as f64
}

fn execute_check(check: &CheckCommand) -> Result<Outcome> {
    match check {
        CheckCommand::Mult { f, upto } => {
            let v = arithfn::is_multiplicative(&parse_expr(f)?, positive("upto", *upto)?);
            Ok(verdict_outcome("mult", &v, &format!("coprime pairs with nm <= {upto}")))
        }
        CheckCommand::CompleteMult { f, upto } => {
            let v = arithfn::is_completely_multiplicative(&parse_expr(f)?, positive("upto", *upto)?);
            Ok(verdict_outcome("complete-mult", &v, &format!("all pairs with nm <= {upto}")))
        }
        CheckCommand::Lambek { f, g, h, upto } => {
            let v = arithfn::lambek_check(&parse_expr(f)?, &parse_expr(g)?, &parse_expr(h)?, positive("upto", *upto)?);
            Ok(verdict_outcome("lambek", &v, &format!("n <= {upto}")))
        }
        CheckCommand::Carlitz { f, upto } => {
            let v = arithfn::carlitz_check(&parse_expr(f)?, positive("upto", *upto)?);
            Ok(verdict_outcome("carlitz", &v, &format!("n <= {upto}")))
        }
        CheckCommand::HomAxiom { n, m, variant } => {
            let r = coalgebra::hom_axiom_check(positive("n", *n)?, positive("m", *m)?, (*variant).into())?;
            let detail = if r.passes() {
                format!("Δ({}) = Δ({n})·Δ({m})", n * m)
            } else {
                format!("Δ({n})·Δ({m}) - Δ({}) = {}", n * m, r.discrepancy)
            };
            let json = json!({
                "check": "hom-axiom",
                "verdict": if r.passes() { "pass" } else { "fail" },
                "coproduct_of_product": r.coproduct_of_product.to_json(),
                "product_of_coproducts": r.product_of_coproducts.to_json(),
                "discrepancy": r.discrepancy.to_json(),
            });
            Ok(Outcome { tsv: check_row("hom-axiom", r.passes(), &detail), json, failed: !r.passes() })
        }
        CheckCommand::Antipode { n, upto, variant } => {
            let range = match n {
                Some(n) => positive("n", *n)?..=*n,
                None => 1..=positive("upto", *upto)?,
            };
            let scope = format!("n in {}..={}", range.start(), range.end());
            for k in range {
                let c = coalgebra::antipode_identity_check(k, (*variant).into())?;
                if !c.passes() {
                    let detail = format!("n = {k}: sum = {}", c.sum);
                    let json = json!({"check": "antipode", "verdict": "fail", "n": k, "sum": c.sum.to_string()});
                    return Ok(Outcome { tsv: check_row("antipode", false, &detail), json, failed: true });
                }
            }
            Ok(Outcome::ok(check_row("antipode", true, &scope), json!({"check": "antipode", "verdict": "pass", "scope": scope})))
        }
        CheckCommand::Duality { n, m, k, variant } => {
            let which = match variant {
                DualityArg::Additive => Duality::Additive,
                DualityArg::Multiplicative => Duality::Multiplicative,
                DualityArg::AdditiveUnren => Duality::AdditiveUnren,
                DualityArg::MultiplicativeUnren => Duality::MultiplicativeUnren,
            };
            let c = coalgebra::duality_check(*n, *m, *k, which)?;
            let detail = format!("lhs = {}, rhs = {}", c.lhs, c.rhs);
            let json = json!({"check": "duality", "verdict": if c.passes() { "pass" } else { "fail" },
                              "lhs": c.lhs.to_string(), "rhs": c.rhs.to_string()});
            Ok(Outcome { tsv: check_row("duality", c.passes(), &detail), json, failed: !c.passes() })
        }
        CheckCommand::Coring { n, upto } => {
            let range = match n {
                Some(n) => positive("n", *n)?..=*n,
                None => 1..=positive("upto", *upto)?,
            };
            let scope = format!("n in {}..={}", range.start(), range.end());
            for k in range {
                let expanded = coalgebra::coring_expand(k)?;
                let direct = coalgebra::coprod_mult(k)?;
                if expanded != direct {
                    let detail = format!("n = {k}: {expanded} vs {direct}");
                    let json = json!({"check": "coring", "verdict": "fail", "n": k});
                    return Ok(Outcome { tsv: check_row("coring", false, &detail), json, failed: true });
                }
            }
            Ok(Outcome::ok(check_row("coring", true, &scope), json!({"check": "coring", "verdict": "pass", "scope": scope})))
        }
    }
}

/// Parses one `tabulate` TSV body back into exact values.
pub fn parse_table(tsv: &str) -> Result<Vec<(u64, Value)>> {
    let mut lines = tsv.lines();
    if lines.next() != Some("n\tf(n)") {
        return Err(Error::Parse("missing `n\\tf(n)` header".into()));
    }
    lines
        .map(|line| {
            let (n, v) = line.split_once('\t').ok_or_else(|| Error::Parse(line.to_string()))?;
            Ok((n.parse().map_err(|_| Error::Parse(line.to_string()))?, v.parse()?))
        })
        .collect()
}
