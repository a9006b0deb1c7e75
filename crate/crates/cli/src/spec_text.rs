//! The trace-form function mini-language:
//!
//! ```text
//! function := "Tr" "(" term ("+" term)* ")"
//! term     := [coeff] "x" "^" int
//! coeff    := "xi" "^" int | "[" int ("," int)* "]"
//! ```
//!
//! e.g. `Tr(x^34 + x^2)` or `Tr(xi^10 x^22 + x^4)` or `Tr([2,0,1] x^4)`.
//! Coefficients default to 1. Errors carry the 1-based column where
//! scanning stopped.

use std::fmt;
use std::sync::Arc;

use walsh_forge_core::gf::FieldCtx;
use walsh_forge_core::walsh::{PFunction, WalshError};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A coefficient as written in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoeffSpec {
    One,
    XiPow(u64),
    Coords(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermSpec {
    pub coeff: CoeffSpec,
    pub exponent: u128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionSpec {
    pub terms: Vec<TermSpec>,
}

struct Scanner<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Scanner<'a> {
        Scanner {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            column: self.column(),
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, ch: u8) -> Result<(), ParseError> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(&c) if c == ch => {
                self.pos += 1;
                Ok(())
            }
            Some(&c) => self.err(format!("expected '{}', found '{}'", ch as char, c as char)),
            None => self.err(format!("expected '{}', found end of input", ch as char)),
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            Ok(())
        } else {
            self.err(format!("expected '{kw}'"))
        }
    }

    fn integer(&mut self) -> Result<u128, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("digits are ascii");
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => Err(ParseError {
                column: start + 1,
                message: String::from("integer too large"),
            }),
        }
    }
}

/// Parse a function spec; unknown tokens are rejected with the column
/// where scanning stopped.
pub fn parse(src: &str) -> Result<FunctionSpec, ParseError> {
    let mut s = Scanner::new(src);
    s.expect_keyword("Tr")?;
    s.expect(b'(')?;
    let mut terms = vec![parse_term(&mut s)?];
    loop {
        match s.peek() {
            Some(b'+') => {
                s.pos += 1;
                terms.push(parse_term(&mut s)?);
            }
            Some(b')') => {
                s.pos += 1;
                break;
            }
            Some(c) => return s.err(format!("expected '+' or ')', found '{}'", c as char)),
            None => return s.err("expected '+' or ')', found end of input"),
        }
    }
    s.skip_ws();
    if s.pos != s.src.len() {
        return s.err("trailing input after ')'");
    }
    Ok(FunctionSpec { terms })
}

fn parse_term(s: &mut Scanner) -> Result<TermSpec, ParseError> {
    let coeff = match s.peek() {
        Some(b'[') => {
            s.pos += 1;
            let mut coords = Vec::new();
            loop {
                let v = s.integer()?;
                if v > u32::MAX as u128 {
                    return s.err("coordinate too large");
                }
                coords.push(v as u32);
                match s.peek() {
                    Some(b',') => {
                        s.pos += 1;
                    }
                    Some(b']') => {
                        s.pos += 1;
                        break;
                    }
                    Some(c) => return s.err(format!("expected ',' or ']', found '{}'", c as char)),
                    None => return s.err("expected ',' or ']', found end of input"),
                }
            }
            CoeffSpec::Coords(coords)
        }
        // "xi^..." but not the bare variable "x^..."
        Some(b'x') if s.src.get(s.pos + 1) == Some(&b'i') => {
            s.pos += 2;
            s.expect(b'^')?;
            let e = s.integer()?;
            if e > u64::MAX as u128 {
                return s.err("xi exponent too large");
            }
            CoeffSpec::XiPow(e as u64)
        }
        _ => CoeffSpec::One,
    };
    s.expect(b'x')?;
    s.expect(b'^')?;
    let exponent = s.integer()?;
    Ok(TermSpec { coeff, exponent })
}

impl FunctionSpec {
    /// Canonical text: coefficients printed as `xi^L` (omitted when 1,
    /// `[0]` when zero), exponents as written. Parsing the canonical form
    /// reproduces the resolved function exactly.
    pub fn canonical(&self, ctx: &FieldCtx) -> Result<String, ParseError> {
        let mut out = String::from("Tr(");
        for (i, term) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let c = resolve_coeff(ctx, &term.coeff)?;
            match ctx.log(c) {
                None => out.push_str("[0] "),
                Some(0) => {}
                Some(l) => out.push_str(&format!("xi^{l} ")),
            }
            out.push_str(&format!("x^{}", term.exponent));
        }
        out.push(')');
        Ok(out)
    }

    /// Resolve against a field into a trace-form function.
    pub fn build(&self, ctx: &Arc<FieldCtx>) -> Result<PFunction, SpecBuildError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((resolve_coeff(ctx, &t.coeff)?, t.exponent)))
            .collect::<Result<Vec<_>, ParseError>>()?;
        Ok(PFunction::from_trace_form(Arc::clone(ctx), terms)?)
    }
}

fn resolve_coeff(
    ctx: &FieldCtx,
    coeff: &CoeffSpec,
) -> Result<walsh_forge_core::gf::FieldElem, ParseError> {
    match coeff {
        CoeffSpec::One => Ok(ctx.one()),
        CoeffSpec::XiPow(e) => Ok(ctx.xi_pow(*e as u128)),
        CoeffSpec::Coords(v) => ctx.from_coords(v).map_err(|e| ParseError {
            column: 1,
            message: format!("coefficient out of range for this field: {e}"),
        }),
    }
}

#[derive(Debug)]
pub enum SpecBuildError {
    Parse(ParseError),
    Walsh(WalshError),
}

impl fmt::Display for SpecBuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecBuildError::Parse(e) => write!(f, "{e}"),
            SpecBuildError::Walsh(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecBuildError {}

impl From<ParseError> for SpecBuildError {
    fn from(e: ParseError) -> Self {
        SpecBuildError::Parse(e)
    }
}

impl From<WalshError> for SpecBuildError {
    fn from(e: WalshError) -> Self {
        SpecBuildError::Walsh(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use walsh_forge_core::gf::build_field;

    #[test]
    fn parses_the_family_spec() {
        let f = parse("Tr(x^34 + x^2)").unwrap();
        assert_eq!(f.terms.len(), 2);
        assert_eq!(
            f.terms[0],
            TermSpec {
                coeff: CoeffSpec::One,
                exponent: 34
            }
        );
        assert_eq!(f.terms[1].exponent, 2);
    }

    #[test]
    fn parses_coefficient_forms() {
        let f = parse("Tr(xi^10 x^22 + x^4)").unwrap();
        assert_eq!(f.terms[0].coeff, CoeffSpec::XiPow(10));
        let f = parse("Tr([2,0,1] x^4)").unwrap();
        assert_eq!(f.terms[0].coeff, CoeffSpec::Coords(vec![2, 0, 1]));
    }

    #[test]
    fn rejects_with_column_positions() {
        let e = parse("Tr(x^^)").unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("integer"));

        let e = parse("Tr(x^2 & x^3)").unwrap_err();
        assert_eq!(e.column, 8);

        let e = parse("Trace(x^2)").unwrap_err();
        assert!(e.column >= 3);

        let e = parse("Tr(x^2) junk").unwrap_err();
        assert!(e.message.contains("trailing"));
    }

    #[test]
    fn canonical_round_trip() {
        let ctx = std::sync::Arc::new(build_field(3, 4).unwrap());
        for src in [
            "Tr(x^34 + x^2)",
            "Tr( xi^10   x^22 + x^4 )",
            "Tr([2,0,1] x^4)",
            "Tr([0] x^1)",
            "Tr(xi^0 x^5)",
        ] {
            let spec = parse(src).unwrap();
            let canonical = spec.canonical(&ctx).unwrap();
            let reparsed = parse(&canonical).unwrap();
            // canonical form is a fixed point
            assert_eq!(reparsed.canonical(&ctx).unwrap(), canonical);
            // and resolves to the same function
            let f1 = spec.build(&ctx).unwrap();
            let f2 = reparsed.build(&ctx).unwrap();
            assert_eq!(f1.values(), f2.values());
        }
    }

    #[test]
    fn zero_coefficient_prints_as_zero_vector() {
        let ctx = std::sync::Arc::new(build_field(3, 4).unwrap());
        let spec = parse("Tr([0,0] x^7)").unwrap();
        assert_eq!(spec.canonical(&ctx).unwrap(), "Tr([0] x^7)");
    }
}
