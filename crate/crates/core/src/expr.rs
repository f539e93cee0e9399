//! Text syntax for profiles.
//!
//! ```text
//! expr  := term "/" "(" sum ")"
//! term  := "1" | factor ("*"? factor)*
//! factor:= var ("^" nat)?
//! sum   := prod ("+" prod)*
//! prod  := (coef "*"?)? var "^" even_nat
//! coef  := decimal | nat "/" nat
//! var   := letter (letter | digit | "_")*
//! ```
//!
//! Whitespace is free between tokens. Adjacent factors multiply, so `x y`
//! is `x*y` while `xy` is a single variable. Variables are ordered by first
//! appearance in the numerator, then in the denominator, and every variable
//! must appear exactly once in the denominator.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::kernel::Profile;
use crate::serial::parse_rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DiagnosticCategory {
    Syntax,
    NotMonomialNumerator,
    OddDenominatorExponent,
    NonpositiveCoefficient,
    UnknownVariable,
    DuplicateDenominatorTerm,
}

impl DiagnosticCategory {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Syntax => "SYNTAX",
            Self::NotMonomialNumerator => "NOT_MONOMIAL_NUMERATOR",
            Self::OddDenominatorExponent => "ODD_DENOMINATOR_EXPONENT",
            Self::NonpositiveCoefficient => "NONPOSITIVE_COEFFICIENT",
            Self::UnknownVariable => "UNKNOWN_VARIABLE",
            Self::DuplicateDenominatorTerm => "DUPLICATE_DENOMINATOR_TERM",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseDiagnostic {
    pub byte_offset: usize,
    pub message: String,
    pub category: DiagnosticCategory,
}

impl ParseDiagnostic {
    fn new(byte_offset: usize, category: DiagnosticCategory, message: impl Into<String>) -> Self {
        Self {
            byte_offset,
            message: message.into(),
            category,
        }
    }

    /// The input line with a caret under the offending byte.
    pub fn render(&self, input: &str) -> String {
        let col = input[..self.byte_offset.min(input.len())].chars().count();
        format!(
            "error[{}]: {}\n  {}\n  {}^",
            self.category.as_str(),
            self.message,
            input,
            " ".repeat(col)
        )
    }
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at byte {}: {}",
            self.category.as_str(),
            self.byte_offset,
            self.message
        )
    }
}

impl std::error::Error for ParseDiagnostic {}

/// A parsed expression: the profile plus the variable names in profile order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedExpr {
    pub profile: Profile,
    pub variables: Vec<String>,
}

pub fn parse(text: &str) -> Result<Profile, ParseDiagnostic> {
    parse_with_names(text).map(|parsed| parsed.profile)
}

pub fn parse_with_names(text: &str) -> Result<ParsedExpr, ParseDiagnostic> {
    Parser { src: text, pos: 0 }.expr()
}

struct NumFactor {
    name: String,
    offset: usize,
    exponent: u32,
}

struct DenTerm {
    name: String,
    offset: usize,
    coef: BigRational,
    half_degree: u32,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

use DiagnosticCategory as Cat;

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b) if b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    /// Next non-space byte, consuming the whitespace.
    fn next_token(&mut self) -> Option<u8> {
        self.skip_ws();
        self.peek()
    }

    fn err(&self, category: Cat, message: impl Into<String>) -> ParseDiagnostic {
        ParseDiagnostic::new(self.pos, category, message)
    }

    fn describe_here(&self) -> String {
        match self.src[self.pos..].chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_owned(),
        }
    }

    fn expect(&mut self, byte: u8) -> Result<(), ParseDiagnostic> {
        if self.next_token() == Some(byte) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(
                Cat::Syntax,
                format!("expected '{}', found {}", byte as char, self.describe_here()),
            ))
        }
    }

    fn expr(mut self) -> Result<ParsedExpr, ParseDiagnostic> {
        let numerator = self.term()?;
        match self.next_token() {
            Some(b'/') => self.pos += 1,
            Some(b'+' | b'-') => {
                return Err(self.err(
                    Cat::NotMonomialNumerator,
                    "numerator must be a single monomial",
                ))
            }
            _ => {
                return Err(self.err(
                    Cat::Syntax,
                    format!("expected '/', found {}", self.describe_here()),
                ))
            }
        }
        self.expect(b'(')?;
        let denominator = self.sum()?;
        self.expect(b')')?;
        if self.next_token().is_some() {
            return Err(self.err(
                Cat::Syntax,
                format!("unexpected {} after the denominator", self.describe_here()),
            ));
        }
        assemble(numerator, denominator)
    }

    fn term(&mut self) -> Result<Vec<NumFactor>, ParseDiagnostic> {
        match self.next_token() {
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let start = self.pos;
                let literal = self.number_literal();
                let after = self.pos;
                if literal == "1" && self.next_token() == Some(b'/') {
                    return Ok(Vec::new());
                }
                self.pos = if literal == "1" { after } else { start };
                let message = if literal == "1" {
                    "numerator is either 1 or a product of variables"
                } else {
                    "numerator must be a monomial with coefficient 1"
                };
                Err(self.err(Cat::NotMonomialNumerator, message))
            }
            Some(b) if b.is_ascii_alphabetic() => {
                let mut factors = vec![self.factor()?];
                loop {
                    match self.next_token() {
                        Some(b'*') => {
                            self.pos += 1;
                            match self.next_token() {
                                Some(b) if b.is_ascii_alphabetic() => factors.push(self.factor()?),
                                Some(b) if b.is_ascii_digit() => {
                                    return Err(self.err(
                                        Cat::NotMonomialNumerator,
                                        "numerator must be a monomial with coefficient 1",
                                    ))
                                }
                                _ => {
                                    return Err(self.err(
                                        Cat::Syntax,
                                        format!("expected a variable, found {}", self.describe_here()),
                                    ))
                                }
                            }
                        }
                        Some(b) if b.is_ascii_alphabetic() => factors.push(self.factor()?),
                        _ => break,
                    }
                }
                Ok(factors)
            }
            Some(b'+' | b'-') => Err(self.err(
                Cat::NotMonomialNumerator,
                "numerator must be a single monomial",
            )),
            _ => Err(self.err(
                Cat::Syntax,
                format!("expected a monomial, found {}", self.describe_here()),
            )),
        }
    }

    fn factor(&mut self) -> Result<NumFactor, ParseDiagnostic> {
        let offset = self.pos;
        let name = self.ident();
        let exponent = if self.next_token() == Some(b'^') {
            self.pos += 1;
            self.natural()?.0
        } else {
            1
        };
        Ok(NumFactor {
            name,
            offset,
            exponent,
        })
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_alphanumeric() || b == b'_') {
            self.pos += 1;
        }
        self.src[start..self.pos].to_owned()
    }

    fn number_literal(&mut self) -> &'a str {
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit() || b == b'.') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    /// A `u32` literal, returned with its byte offset.
    fn natural(&mut self) -> Result<(u32, usize), ParseDiagnostic> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b) if b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err(
                Cat::Syntax,
                format!("expected an exponent, found {}", self.describe_here()),
            ));
        }
        let value = self.src[start..self.pos].parse::<u32>().map_err(|_| {
            ParseDiagnostic::new(start, Cat::Syntax, "exponent does not fit in 32 bits")
        })?;
        Ok((value, start))
    }

    fn sum(&mut self) -> Result<Vec<DenTerm>, ParseDiagnostic> {
        let mut terms = vec![self.prod()?];
        loop {
            match self.next_token() {
                Some(b'+') => {
                    self.pos += 1;
                    terms.push(self.prod()?);
                }
                Some(b'-') => {
                    return Err(self.err(
                        Cat::NonpositiveCoefficient,
                        "denominator terms must have positive coefficients",
                    ))
                }
                _ => return Ok(terms),
            }
        }
    }

    fn coefficient(&mut self) -> Result<BigRational, ParseDiagnostic> {
        let start = self.pos;
        let mut literal = self.number_literal().to_owned();
        // "p/q" only when a digit follows the slash
        if self.peek() == Some(b'/')
            && matches!(self.src.as_bytes().get(self.pos + 1), Some(b) if b.is_ascii_digit())
        {
            self.pos += 1;
            literal.push('/');
            literal.push_str(self.number_literal());
        }
        let value = parse_rational(&literal).map_err(|e| {
            ParseDiagnostic::new(start, Cat::Syntax, format!("malformed coefficient: {}", e.reason))
        })?;
        if value.is_zero() {
            return Err(ParseDiagnostic::new(
                start,
                Cat::NonpositiveCoefficient,
                "denominator coefficients must be positive",
            ));
        }
        Ok(value)
    }

    fn prod(&mut self) -> Result<DenTerm, ParseDiagnostic> {
        let coef = match self.next_token() {
            Some(b'-') => {
                return Err(self.err(
                    Cat::NonpositiveCoefficient,
                    "denominator coefficients must be positive",
                ))
            }
            Some(b) if b.is_ascii_digit() || b == b'.' => {
                let c = self.coefficient()?;
                if self.next_token() == Some(b'*') {
                    self.pos += 1;
                }
                c
            }
            _ => BigRational::one(),
        };
        match self.next_token() {
            Some(b) if b.is_ascii_alphabetic() => {}
            _ => {
                return Err(self.err(
                    Cat::Syntax,
                    format!("expected a variable, found {}", self.describe_here()),
                ))
            }
        }
        let offset = self.pos;
        let name = self.ident();
        if self.next_token() != Some(b'^') {
            return Err(ParseDiagnostic::new(
                offset,
                Cat::OddDenominatorExponent,
                format!("denominator term {name} needs an explicit even exponent"),
            ));
        }
        self.pos += 1;
        let (exponent, at) = self.natural()?;
        if exponent == 0 || exponent % 2 != 0 {
            return Err(ParseDiagnostic::new(
                at,
                Cat::OddDenominatorExponent,
                format!("denominator exponent {exponent} is not a positive even integer"),
            ));
        }
        Ok(DenTerm {
            name,
            offset,
            coef,
            half_degree: exponent / 2,
        })
    }
}

fn assemble(numerator: Vec<NumFactor>, denominator: Vec<DenTerm>) -> Result<ParsedExpr, ParseDiagnostic> {
    let mut variables: Vec<String> = Vec::new();
    let mut a: Vec<u32> = Vec::new();
    for factor in &numerator {
        match variables.iter().position(|v| v == &factor.name) {
            Some(i) => {
                a[i] = a[i].checked_add(factor.exponent).ok_or_else(|| {
                    ParseDiagnostic::new(factor.offset, Cat::Syntax, "exponent does not fit in 32 bits")
                })?
            }
            None => {
                variables.push(factor.name.clone());
                a.push(factor.exponent);
            }
        }
    }
    let mut seen: Vec<Option<usize>> = vec![None; variables.len()];
    for (k, term) in denominator.iter().enumerate() {
        match variables.iter().position(|v| v == &term.name) {
            Some(i) if i < seen.len() => {
                if seen[i].is_some() {
                    return Err(duplicate(term));
                }
                seen[i] = Some(k);
            }
            Some(_) => return Err(duplicate(term)),
            None => {
                variables.push(term.name.clone());
                a.push(0);
            }
        }
    }
    if let Some(i) = seen.iter().position(Option::is_none) {
        let offset = numerator
            .iter()
            .find(|f| f.name == variables[i])
            .map_or(0, |f| f.offset);
        return Err(ParseDiagnostic::new(
            offset,
            Cat::UnknownVariable,
            format!("variable {} does not appear in the denominator", variables[i]),
        ));
    }
    let mut m = vec![0u32; variables.len()];
    let mut c = vec![BigRational::one(); variables.len()];
    for term in denominator {
        let i = variables
            .iter()
            .position(|v| v == &term.name)
            .expect("every denominator variable was registered");
        m[i] = term.half_degree;
        c[i] = term.coef;
    }
    let profile = Profile::new(a, m, c).expect("parser only produces valid profiles");
    Ok(ParsedExpr { profile, variables })
}

fn duplicate(term: &DenTerm) -> ParseDiagnostic {
    ParseDiagnostic::new(
        term.offset,
        Cat::DuplicateDenominatorTerm,
        format!("variable {} appears more than once in the denominator", term.name),
    )
}

/// `x, y, z` for up to three variables, otherwise `x1 ... xN`.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| (*s).to_owned()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Canonical text for a profile; [`parse`] maps it back to the same profile.
///
/// Zero numerator exponents that precede a nonzero one are written as `^0`
/// so the variable order survives the round trip.
pub fn format(p: &Profile) -> String {
    let names = variable_names(p.n());
    let last = p.a().iter().rposition(|&ai| ai > 0);
    let numerator = match last {
        None => "1".to_owned(),
        Some(last) => p.a()[..=last]
            .iter()
            .zip(&names)
            .map(|(&ai, name)| match ai {
                1 => name.clone(),
                _ => format!("{name}^{ai}"),
            })
            .collect::<Vec<_>>()
            .join("*"),
    };
    let denominator = p
        .m()
        .iter()
        .zip(p.c())
        .zip(&names)
        .map(|((&mi, ci), name)| {
            let power = format!("{name}^{}", 2 * u64::from(mi));
            if ci.is_one() {
                power
            } else {
                format!("{ci}*{power}")
            }
        })
        .collect::<Vec<_>>()
        .join(" + ");
    format!("{numerator}/({denominator})")
}
