//! Expression language and command implementations behind the `lrcreal`
//! binary.
//!
//! ```text
//! expr     := rational
//!           | "avg(" expr "," expr ")"
//!           | "add(" expr "," expr ")"
//!           | "affine(" rational "," rational "," rational ";" expr "," expr ")"
//!           | "affine_unchecked(" rational "," rational "," rational ";" expr "," expr ")"
//! rational := integer | integer "/" integer
//! ```
//!
//! Whitespace between tokens is ignored.

use std::fmt;

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::digit::{prefix_interval, Interval};
use crate::engine::{ConsumeTable, EngineOptions};
use crate::error::Error as CoreError;
use crate::numeric::Rational;
use crate::oracle::{random_unit_rational, AffineCase};
use crate::real::{affine, from_rational, ExactReal};
use crate::stream::{fib_stream, increasing_to_depth, local_fib_to_depth};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Lit(Rational),
    Avg(Box<Expr>, Box<Expr>),
    /// `x + y`, evaluated without a coefficient guard.
    Add(Box<Expr>, Box<Expr>),
    Affine {
        ca: Rational,
        cb: Rational,
        cc: Rational,
        x: Box<Expr>,
        y: Box<Expr>,
        checked: bool,
    },
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Lit(r) => write!(f, "{r}"),
            Expr::Avg(x, y) => write!(f, "avg({x}, {y})"),
            Expr::Add(x, y) => write!(f, "add({x}, {y})"),
            Expr::Affine {
                ca,
                cb,
                cc,
                x,
                y,
                checked,
            } => {
                let name = if *checked { "affine" } else { "affine_unchecked" };
                write!(f, "{name}({ca}, {cb}, {cc}; {x}, {y})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("syntax error at position {position}: expected {}", expected.join(" or "))]
    Syntax {
        /// 1-based byte offset.
        position: usize,
        expected: Vec<&'static str>,
    },
    #[error("domain error: {0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Syntax { .. } => 1,
            CliError::Domain(_) => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Domain(e.to_string())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn fail<T>(&self, expected: Vec<&'static str>) -> Result<T, CliError> {
        Err(CliError::Syntax {
            position: self.pos + 1,
            expected,
        })
    }

    fn eat(&mut self, tok: &'static str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    /// Matches `name` followed by optional whitespace and `(`.
    fn eat_call(&mut self, name: &'static str) -> bool {
        self.skip_ws();
        let start = self.pos;
        if self.src[self.pos..].starts_with(name.as_bytes()) {
            self.pos += name.len();
            if self.eat("(") {
                return true;
            }
        }
        self.pos = start;
        false
    }

    fn expect(&mut self, tok: &'static str) -> Result<(), CliError> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.fail(vec![tok])
        }
    }

    fn integer(&mut self) -> Result<&'a str, CliError> {
        self.skip_ws();
        let start = self.pos;
        if self.pos < self.src.len() && self.src[self.pos] == b'-' {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return self.fail(vec!["integer"]);
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn rational(&mut self) -> Result<Rational, CliError> {
        let num = self.integer()?;
        let text = if self.eat("/") {
            let den_pos = self.pos;
            let den = self.integer()?;
            if den.trim_start_matches('-').bytes().all(|b| b == b'0') {
                return Err(CliError::Domain(format!(
                    "zero denominator at position {}",
                    den_pos + 1
                )));
            }
            format!("{num}/{den}")
        } else {
            num.to_string()
        };
        text.parse::<Rational>().map_err(CliError::from)
    }

    fn coefficient(&mut self) -> Result<Rational, CliError> {
        let r = self.rational()?;
        if r.is_negative() {
            return Err(CoreError::NegativeCoefficient(r).into());
        }
        Ok(r)
    }

    fn pair(&mut self) -> Result<(Box<Expr>, Box<Expr>), CliError> {
        let x = self.expr()?;
        self.expect(",")?;
        let y = self.expr()?;
        self.expect(")")?;
        Ok((Box::new(x), Box::new(y)))
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        if self.eat_call("avg") {
            let (x, y) = self.pair()?;
            return Ok(Expr::Avg(x, y));
        }
        if self.eat_call("add") {
            let (x, y) = self.pair()?;
            return Ok(Expr::Add(x, y));
        }
        let checked = if self.eat_call("affine_unchecked") {
            Some(false)
        } else if self.eat_call("affine") {
            Some(true)
        } else {
            None
        };
        if let Some(checked) = checked {
            let ca = self.coefficient()?;
            self.expect(",")?;
            let cb = self.coefficient()?;
            self.expect(",")?;
            let cc = self.coefficient()?;
            self.expect(";")?;
            let (x, y) = self.pair()?;
            return Ok(Expr::Affine {
                ca,
                cb,
                cc,
                x,
                y,
                checked,
            });
        }
        self.skip_ws();
        let at = self.pos;
        match self.rational() {
            Ok(r) if r.in_unit_interval() => Ok(Expr::Lit(r)),
            Ok(r) => Err(CliError::Domain(format!(
                "literal {r} at position {} is outside [0, 1]",
                at + 1
            ))),
            Err(CliError::Syntax { position, .. }) => Err(CliError::Syntax {
                position,
                expected: vec!["rational", "avg(", "add(", "affine("],
            }),
            Err(e) => Err(e),
        }
    }
}

pub fn parse_expr(input: &str) -> Result<Expr, CliError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return p.fail(vec!["end of input"]);
    }
    Ok(e)
}

/// Evaluates an expression tree. `check_depth` bounds the best-effort range
/// check on unguarded sums.
pub fn eval_expr(e: &Expr, check_depth: usize) -> Result<ExactReal, CliError> {
    match e {
        Expr::Lit(r) => Ok(from_rational(r)?),
        Expr::Avg(x, y) => Ok(eval_expr(x, check_depth)?.average(&eval_expr(y, check_depth)?)),
        Expr::Add(x, y) => {
            let one = Rational::one();
            eval_affine(&one, &one, &Rational::zero(), x, y, false, check_depth)
        }
        Expr::Affine {
            ca,
            cb,
            cc,
            x,
            y,
            checked,
        } => eval_affine(ca, cb, cc, x, y, *checked, check_depth),
    }
}

fn eval_affine(
    ca: &Rational,
    cb: &Rational,
    cc: &Rational,
    x: &Expr,
    y: &Expr,
    checked: bool,
    check_depth: usize,
) -> Result<ExactReal, CliError> {
    let (vx, vy) = (eval_expr(x, check_depth)?, eval_expr(y, check_depth)?);
    if !checked {
        // the result is certainly above 1 once the operands' lower bounds say so
        let low = ca * vx.to_interval(check_depth).lo()
            + cb * vy.to_interval(check_depth).lo()
            + cc.clone();
        if low > Rational::one() {
            return Err(CliError::Domain(format!(
                "result exceeds 1 (lower bound {low} at depth {check_depth})"
            )));
        }
    }
    Ok(affine(ca, cb, cc, &vx, &vy, checked)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Digits,
    Interval,
    Decimal,
}

pub fn eval_command(
    input: &str,
    digits: usize,
    format: OutputFormat,
    decimals: usize,
) -> Result<String, CliError> {
    let e = parse_expr(input)?;
    let v = eval_expr(&e, digits)?;
    Ok(match format {
        OutputFormat::Digits => v.digit_string(digits),
        OutputFormat::Interval => v.to_interval(digits).to_string(),
        OutputFormat::Decimal => v.to_decimal(decimals),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub text: String,
    pub passed: usize,
    pub total: usize,
}

impl SelftestReport {
    pub fn exit_code(&self) -> i32 {
        if self.passed == self.total {
            0
        } else {
            3
        }
    }
}

/// Runs `cases` random rational-conversion and affine-combination checks
/// against the exact oracle at `depth` digits.
pub fn selftest_command(cases: usize, depth: usize, seed: u64, table: ConsumeTable) -> SelftestReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let opts = EngineOptions {
        normalize: true,
        table,
    };
    let mut failures = Vec::new();
    let mut passed = 0;
    for i in 0..cases {
        let r = random_unit_rational(&mut rng, 1_000_000);
        let digits = from_rational(&r).expect("in range").take(depth);
        let rat_ok = prefix_interval(&digits).contains(&r);

        let case = AffineCase::random(&mut rng);
        let (out, aff_ok) = case.check(depth, opts);

        if rat_ok && aff_ok {
            passed += 1;
            continue;
        }
        if !rat_ok {
            failures.push(format!("case {i}: rational {r} not in {}", prefix_interval(&digits)));
        }
        if !aff_ok {
            let [ca, cb, cc] = &case.coeffs;
            failures.push(format!(
                "case {i}: affine({ca}, {cb}, {cc}; {}, {}) = {} not in {} (digits {}, input seed {})",
                case.p,
                case.q,
                case.exact_value(),
                prefix_interval(&out),
                crate::digit::digits_to_string(&out),
                case.seed
            ));
        }
    }
    let mut text = String::new();
    for f in failures.iter().take(5) {
        text.push_str("FAIL ");
        text.push_str(f);
        text.push('\n');
    }
    if failures.len() > 5 {
        text.push_str(&format!("... {} more failures\n", failures.len() - 5));
    }
    text.push_str(&format!("{passed}/{cases} passed"));
    SelftestReport {
        text,
        passed,
        total: cases,
    }
}

pub fn fib_command(count: usize) -> String {
    let s = fib_stream(BigUint::from(1u32), BigUint::from(1u32));
    let elems: Vec<String> = s.take(count).iter().map(|x| x.to_string()).collect();
    format!(
        "{} | increasing: {} | local_fib: {}",
        elems.join(" "),
        increasing_to_depth(&s, count.saturating_sub(1)),
        local_fib_to_depth(&s, count.saturating_sub(2))
    )
}

/// Renders an interval as the CLI prints it.
pub fn render_interval(iv: &Interval) -> String {
    iv.to_string()
}
