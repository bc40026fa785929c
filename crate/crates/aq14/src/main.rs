//! Command-line frontend for the aq14 engine.
//!
//! Exit codes: 0 success / all verified, 1 verification failure or
//! expansion residue, 2 usage error.

use std::fmt::Display;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use aq14::bases::{self, Window};
use aq14::cluster::Frame;
use aq14::multiplication::{self, VerifyRecord};
use aq14::triangular::{self, Section4Window};
use aq14::{BasisFamily, BasisLabel, ChebKind, Error, FrameAlgebra, QLaurent, TorusElement};

#[derive(Parser)]
#[command(
    name = "aq14",
    about = "Exact computation in the rank-2 quantum cluster algebra with exchange pattern (1,4)",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputOpts {
    /// Emit JSON instead of text
    #[arg(long)]
    json: bool,
    /// Write output to a file instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ChebKindArg {
    F,
    S,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    B,
    S,
    D,
}

impl FamilyArg {
    fn family(self) -> BasisFamily {
        match self {
            FamilyArg::B => BasisFamily::B,
            FamilyArg::S => BasisFamily::S,
            FamilyArg::D => BasisFamily::D,
        }
    }
}

/// Inclusive integer range written as `lo..hi`.
#[derive(Clone, Copy)]
struct RangeArg {
    lo: i64,
    hi: i64,
}

impl std::str::FromStr for RangeArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s
            .split_once("..")
            .ok_or_else(|| format!("expected lo..hi, got {s:?}"))?;
        let lo: i64 = lo.trim().parse().map_err(|_| format!("bad lower bound {lo:?}"))?;
        let hi: i64 = hi.trim().parse().map_err(|_| format!("bad upper bound {hi:?}"))?;
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(RangeArg { lo, hi })
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the Laurent expansion of the cluster variable X_m
    Expand {
        /// Variable index
        #[arg(long)]
        m: i64,
        /// Frame index s: expansions are taken in the torus of X_s, X_{s+1}
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the Laurent expansion of X_delta
    Delta {
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Print the Chebyshev polynomial F_n or S_n evaluated at X_delta
    Cheb {
        /// Family: F (first kind, normalized) or S (second kind)
        #[arg(long, value_enum)]
        kind: ChebKindArg,
        #[arg(long)]
        n: i64,
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Evaluate a product expression in the quantum torus
    ///
    /// Expression language: X[m], F[n], S[n], delta, q^(e/2), powers ^k,
    /// products with *, left-to-right association (noncommutative).
    Mul {
        /// Expression, e.g. "X[1]*X[3]" or "q^(-1/2)*X[2]^3*F[2]"
        expr: String,
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Run a verification suite; exits 1 if any check fails
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Expand an expression in one of the bar-invariant bases
    BasisExpand {
        /// Expression in the same language as `mul`
        expr: String,
        /// Basis family: B (F_n), S (S_n) or D (powers of X_delta)
        #[arg(long, value_enum, default_value_t = FamilyArg::B)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Compute the triangular basis element C_(a,b) and its E-expansion
    Triangular {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// Check the closed-form product rules against direct torus products
    Theorem2 {
        /// Range of the variable index, inclusive, e.g. -6..8
        #[arg(long, default_value = "-6..8", allow_hyphen_values = true)]
        m: RangeArg,
        /// Range of the rule parameter n, inclusive
        #[arg(long, default_value = "1..8", allow_hyphen_values = true)]
        n: RangeArg,
        /// Comma-separated frame indices
        #[arg(long, default_value = "1,2", value_delimiter = ',')]
        frames: Vec<i64>,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check exchange relations, q-commutation, product displays and
    /// the structure-coefficient identity
    Identities {
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check the triangular-basis identities and crystal-lattice memberships
    Section4 {
        #[arg(long, default_value_t = 1)]
        frame: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
    /// Check positivity of basis expansions of pairwise label products
    Positivity {
        #[arg(long, value_enum, default_value_t = FamilyArg::B)]
        family: FamilyArg,
        #[arg(long, default_value_t = 1)]
        frame: i64,
        /// Label window: variable index range
        #[arg(long, default_value = "-3..5", allow_hyphen_values = true)]
        m: RangeArg,
        /// Label window: maximal total cluster-monomial degree
        #[arg(long, default_value_t = 3)]
        deg: i64,
        /// Label window: maximal Chebyshev index
        #[arg(long, default_value_t = 4)]
        cheb: i64,
        #[command(flatten)]
        output: OutputOpts,
    },
}

// expression mini-language

struct ExprParser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    alg: &'a FrameAlgebra,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str, alg: &'a FrameAlgebra) -> Self {
        ExprParser {
            src,
            bytes: src.as_bytes(),
            pos: 0,
            alg,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), String> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(format!(
                "expected {:?} at position {} in {:?}",
                c as char, self.pos, self.src
            ))
        }
    }

    fn integer(&mut self) -> Result<i64, String> {
        self.skip_ws();
        let start = self.pos;
        if self.bytes.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|c| c.is_ascii_digit())
        {
            self.pos += 1;
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| format!("expected an integer at position {start} in {:?}", self.src))
    }

    fn bracketed_index(&mut self) -> Result<i64, String> {
        self.expect(b'[')?;
        let n = self.integer()?;
        self.expect(b']')?;
        Ok(n)
    }

    /// q-scalar after the leading 'q': `^(e/2)`, `^(e)` or `^e`.
    fn q_scalar(&mut self) -> Result<QLaurent, String> {
        self.expect(b'^')?;
        if self.peek() == Some(b'(') {
            self.pos += 1;
            let e = self.integer()?;
            let half = if self.peek() == Some(b'/') {
                self.pos += 1;
                if self.integer()? != 2 {
                    return Err("only halves are allowed in q exponents".into());
                }
                true
            } else {
                false
            };
            self.expect(b')')?;
            Ok(QLaurent::q_half(if half { e } else { 2 * e }))
        } else {
            Ok(QLaurent::q_half(2 * self.integer()?))
        }
    }

    fn atom(&mut self) -> Result<TorusElement, String> {
        match self.peek() {
            Some(b'X') => {
                self.pos += 1;
                Ok(self.alg.cluster_var(self.bracketed_index()?))
            }
            Some(b'F') => {
                self.pos += 1;
                Ok(self.alg.chebyshev(ChebKind::F, self.bracketed_index()?))
            }
            Some(b'S') => {
                self.pos += 1;
                Ok(self.alg.chebyshev(ChebKind::S, self.bracketed_index()?))
            }
            Some(b'q') => {
                self.pos += 1;
                Ok(TorusElement::scalar(self.q_scalar()?))
            }
            Some(b'd') => {
                if self.src[self.pos..].starts_with("delta") {
                    self.pos += 5;
                    Ok(self.alg.x_delta())
                } else {
                    Err(format!("unknown token at position {} in {:?}", self.pos, self.src))
                }
            }
            _ => Err(format!(
                "expected X[m], F[n], S[n], delta or q^(e/2) at position {} in {:?}",
                self.pos, self.src
            )),
        }
    }

    fn factor(&mut self) -> Result<TorusElement, String> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let k = self.integer()?;
            let k = u32::try_from(k).map_err(|_| format!("power must be nonnegative, got {k}"))?;
            Ok(base.pow(k))
        } else {
            Ok(base)
        }
    }

    fn product(&mut self) -> Result<TorusElement, String> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        self.skip_ws();
        if self.pos != self.bytes.len() {
            return Err(format!(
                "trailing input at position {} in {:?}",
                self.pos, self.src
            ));
        }
        Ok(acc)
    }
}

fn eval_expr(src: &str, alg: &FrameAlgebra) -> Result<TorusElement, String> {
    ExprParser::new(src, alg).product()
}

// output plumbing

fn emit(output: &OutputOpts, text: impl Display, json: serde_json::Value) -> ExitCode {
    let payload = if output.json {
        format!("{json:#}\n")
    } else {
        format!("{text}\n")
    };
    match &output.out {
        None => {
            print!("{payload}");
            ExitCode::SUCCESS
        }
        Some(path) => match std::fs::File::create(path)
            .and_then(|mut f| f.write_all(payload.as_bytes()))
        {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write {path}: {e}");
                ExitCode::from(2)
            }
        },
    }
}

fn report_json(records: &[VerifyRecord]) -> serde_json::Value {
    serde_json::json!({
        "total": records.len(),
        "failed": records.iter().filter(|r| !r.pass).count(),
        "checks": records
            .iter()
            .map(|r| serde_json::json!({"name": r.name, "frame": r.frame, "pass": r.pass}))
            .collect::<Vec<_>>(),
    })
}

fn report_text(records: &[VerifyRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&format!(
            "[{}] {} (frame {})\n",
            if r.pass { "pass" } else { "FAIL" },
            r.name,
            r.frame
        ));
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    out.push_str(&format!("{} checks, {} failed", records.len(), failed));
    out
}

fn emit_report(output: &OutputOpts, records: &[VerifyRecord]) -> ExitCode {
    let code = emit(output, report_text(records), report_json(records));
    if code != ExitCode::SUCCESS {
        return code;
    }
    if records.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn usage_error(msg: impl Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn engine_error(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        // a residue means the element is not in the basis span: a negative
        // verification outcome, not a usage problem
        Error::ExpansionResidue { .. } => ExitCode::from(1),
        _ => ExitCode::from(2),
    }
}

fn run(cli: Cli) -> ExitCode {
    match cli.command {
        Command::Expand { m, frame, output } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            let x = alg.cluster_var(m);
            emit(&output, &x, x.to_json())
        }
        Command::Delta { frame, output } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            let x = alg.x_delta();
            emit(&output, &x, x.to_json())
        }
        Command::Cheb {
            kind,
            n,
            frame,
            output,
        } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            let kind = match kind {
                ChebKindArg::F => ChebKind::F,
                ChebKindArg::S => ChebKind::S,
            };
            let x = alg.chebyshev(kind, n);
            emit(&output, &x, x.to_json())
        }
        Command::Mul {
            expr,
            frame,
            output,
        } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            match eval_expr(&expr, &alg) {
                Ok(x) => emit(&output, &x, x.to_json()),
                Err(e) => usage_error(e),
            }
        }
        Command::Verify { target } => match target {
            VerifyTarget::Theorem2 {
                m,
                n,
                frames,
                output,
            } => match multiplication::verify_theorem2((m.lo, m.hi), (n.lo, n.hi), &frames) {
                Ok(records) => emit_report(&output, &records),
                Err(e) => engine_error(e),
            },
            VerifyTarget::Identities { output } => match multiplication::verify_identities() {
                Ok(records) => emit_report(&output, &records),
                Err(e) => engine_error(e),
            },
            VerifyTarget::Section4 { frame, output } => {
                let alg = FrameAlgebra::new(Frame::new(frame));
                match triangular::verify_section4(&Section4Window::default(), &alg) {
                    Ok(records) => emit_report(&output, &records),
                    Err(e) => engine_error(e),
                }
            }
            VerifyTarget::Positivity {
                family,
                frame,
                m,
                deg,
                cheb,
                output,
            } => {
                let alg = FrameAlgebra::new(Frame::new(frame));
                let family = family.family();
                let label_window = Window {
                    m_lo: m.lo,
                    m_hi: m.hi,
                    deg_max: deg,
                    cheb_max: cheb,
                };
                let labels: Vec<BasisLabel> = label_window.labels(family);
                let expansion = label_window.product_expansion_window();
                match multiplication::verify_positivity(&labels, family, &alg, &expansion) {
                    Ok(records) => emit_report(&output, &records),
                    Err(e) => engine_error(e),
                }
            }
        },
        Command::BasisExpand {
            expr,
            family,
            frame,
            output,
        } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            let x = match eval_expr(&expr, &alg) {
                Ok(x) => x,
                Err(e) => return usage_error(e),
            };
            match bases::expand_in_basis(&x, family.family(), &alg, &Window::default()) {
                Ok(c) => emit(&output, &c, c.to_json()),
                Err(e) => engine_error(e),
            }
        }
        Command::Triangular {
            a,
            b,
            frame,
            output,
        } => {
            let alg = FrameAlgebra::new(Frame::new(frame));
            match triangular::lusztig_c(a, b, &alg) {
                Ok((c, exp)) => {
                    let text = format!("C = {c}\nE-expansion: {exp}");
                    let json = serde_json::json!({
                        "element": c.to_json(),
                        "e_expansion": exp.to_json(),
                    });
                    emit(&output, text, json)
                }
                Err(e) => engine_error(e),
            }
        }
    }
}

fn main() -> ExitCode {
    run(Cli::parse())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn range_parsing() {
        let r: RangeArg = "-6..8".parse().unwrap();
        assert_eq!((r.lo, r.hi), (-6, 8));
        assert!("8..-6".parse::<RangeArg>().is_err());
        assert!("5".parse::<RangeArg>().is_err());
    }

    #[test]
    fn expression_evaluation() {
        let alg = FrameAlgebra::new(Frame::new(1));
        assert_eq!(eval_expr("delta", &alg).unwrap(), alg.x_delta());
        assert_eq!(
            eval_expr("X[1]*X[3]", &alg).unwrap(),
            alg.cluster_var(1).mul(&alg.cluster_var(3))
        );
        assert_eq!(
            eval_expr("q^(-1/2) * X[2]^3", &alg).unwrap(),
            alg.cluster_var(2).pow(3).scale(&QLaurent::q_half(-1))
        );
        assert_eq!(
            eval_expr("q^2*F[2]", &alg).unwrap(),
            alg.chebyshev(ChebKind::F, 2).scale(&QLaurent::q_half(4))
        );
        assert_eq!(
            eval_expr(" S[3] ", &alg).unwrap(),
            alg.chebyshev(ChebKind::S, 3)
        );
        assert!(eval_expr("X[1", &alg).is_err());
        assert!(eval_expr("X[1]]", &alg).is_err());
        assert!(eval_expr("Y[1]", &alg).is_err());
        assert!(eval_expr("X[1]^-2", &alg).is_err());
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
