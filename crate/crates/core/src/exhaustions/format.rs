//! Text formats for descriptors, profiles and rational literals.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::{
    certify, AlgType, AlgebraProfile, DensityClass, ExhaustionDescriptor, ExhaustionError, Field,
    RationalInterval, Real, SignatureTriple, SymmetryClass, TailGenerator,
};
use crate::steinitz::SteinitzNumber;
use crate::text::{content_lines, split_key, ParseError, Scanner};

/// Rational literal: `p/q`, `n`, or `b^-e` / `b^e`.
pub fn parse_rational(src: &str) -> Result<BigRational, ParseError> {
    parse_rational_at(src, 1, 1)
}

pub(crate) fn parse_rational_at(
    src: &str,
    line: usize,
    column: usize,
) -> Result<BigRational, ParseError> {
    let mut sc = Scanner::new(src, line, column);
    let value = rational(&mut sc)?;
    sc.finish()?;
    Ok(value)
}

fn rational(sc: &mut Scanner<'_>) -> Result<BigRational, ParseError> {
    let negative = sc.eat('-');
    let base = sc.big_natural()?;
    let value = if sc.eat('/') {
        let at = sc.pos();
        let den = sc.big_natural()?;
        if den.is_zero() {
            return Err(sc.error_at(at, "zero denominator"));
        }
        BigRational::new(base.into(), den.into())
    } else if sc.eat('^') {
        let exp = sc.signed()?;
        if base.is_zero() && exp < 0 {
            return Err(sc.error("zero to a negative power"));
        }
        let b = BigRational::from_integer(BigInt::from(base));
        if exp >= 0 {
            Pow::pow(b, exp as u64)
        } else {
            Pow::pow(b.recip(), exp.unsigned_abs())
        }
    } else {
        BigRational::from_integer(base.into())
    };
    Ok(if negative { -value } else { value })
}

fn real(sc: &mut Scanner<'_>) -> Result<Real, ParseError> {
    if sc.eat('[') {
        let lo = rational(sc)?;
        sc.expect(',')?;
        let hi_at = sc.pos();
        let hi = rational(sc)?;
        sc.expect(']')?;
        let iv = RationalInterval::new(lo, hi)
            .ok_or_else(|| sc.error_at(hi_at, "interval upper end below lower end"))?;
        Ok(if iv.is_point() {
            Real::Exact(iv.lo().clone())
        } else {
            Real::Interval(iv)
        })
    } else {
        Ok(Real::Exact(rational(sc)?))
    }
}

fn triple(sc: &mut Scanner<'_>) -> Result<SignatureTriple, ParseError> {
    sc.expect('(')?;
    let l = sc.natural()?;
    sc.expect(',')?;
    let r = sc.natural()?;
    sc.expect(',')?;
    let z = sc.natural()?;
    sc.expect(')')?;
    Ok(SignatureTriple::new(l, r, z))
}

fn triples(sc: &mut Scanner<'_>) -> Result<Vec<SignatureTriple>, ParseError> {
    let mut out = Vec::new();
    while sc.peek() == Some('(') {
        out.push(triple(sc)?);
    }
    sc.finish()?;
    Ok(out)
}

fn alg_type(sc: &mut Scanner<'_>) -> Result<AlgType, ParseError> {
    let t = match sc.identifier() {
        Some("A") => AlgType::A,
        Some("C") => AlgType::C,
        Some("O") => AlgType::O,
        Some(other) => return Err(sc.error(format!("unknown type '{other}', expected A, C or O"))),
        None => return Err(sc.error("expected a type tag A, C or O")),
    };
    sc.finish()?;
    Ok(t)
}

fn tail(sc: &mut Scanner<'_>) -> Result<TailGenerator, ParseError> {
    let t = if sc.eat_keyword("periodic") {
        let period = triples(sc)?;
        if period.is_empty() {
            return Err(sc.error("periodic tail needs at least one triple"));
        }
        TailGenerator::Periodic(period)
    } else if sc.eat_keyword("primes") {
        if !sc.eat_keyword("offset") {
            return Err(sc.error("expected 'offset'"));
        }
        TailGenerator::PrimeSeq {
            offset: sc.natural()?,
        }
    } else if sc.eat_keyword("proportional") {
        let t = triple(sc)?;
        TailGenerator::Proportional {
            l: t.l,
            r: t.r,
            beta: t.z,
        }
    } else {
        return Err(sc.error("expected 'periodic', 'primes' or 'proportional'"));
    };
    sc.finish()?;
    Ok(t)
}

/// Collects `key: value` lines, rejecting unknown or repeated keys.
struct Fields<'a> {
    entries: Vec<(&'a str, &'a str, usize, usize)>,
}

impl<'a> Fields<'a> {
    fn collect(
        lines: impl Iterator<Item = (usize, &'a str)>,
        known: &[&str],
    ) -> Result<Self, ParseError> {
        let mut entries: Vec<(&str, &str, usize, usize)> = Vec::new();
        for (line, content) in lines {
            let (key, value, column) = split_key(content)
                .ok_or_else(|| ParseError::new(line, 1, "expected 'key: value'"))?;
            if !known.contains(&key) {
                return Err(ParseError::new(line, 1, format!("unknown key '{key}'")));
            }
            if entries.iter().any(|e| e.0 == key) {
                return Err(ParseError::new(line, 1, format!("duplicate key '{key}'")));
            }
            entries.push((key, value, line, column));
        }
        Ok(Fields { entries })
    }

    fn get(&self, key: &str) -> Option<(Scanner<'a>, usize)> {
        self.entries
            .iter()
            .find(|e| e.0 == key)
            .map(|&(_, value, line, column)| (Scanner::new(value, line, column), line))
    }

    fn require(&self, key: &str, whole: usize) -> Result<(Scanner<'a>, usize), ParseError> {
        self.get(key)
            .ok_or_else(|| ParseError::new(whole, 1, format!("missing key '{key}'")))
    }

    fn last_line(&self) -> usize {
        self.entries.iter().map(|e| e.2).max().unwrap_or(1)
    }
}

/// Parses descriptor lines; the lines may be a fragment of a larger file.
pub(crate) fn parse_descriptor_lines<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<ExhaustionDescriptor, ParseError> {
    let fields = Fields::collect(lines, &["type", "n0", "prefix", "tail"])?;
    let end = fields.last_line();
    let (mut sc, type_line) = fields.require("type", end)?;
    let t = alg_type(&mut sc)?;
    let (mut sc, n0_line) = fields.require("n0", end)?;
    let n0 = sc.natural()?;
    sc.finish()?;
    let (prefix, prefix_line) = match fields.get("prefix") {
        Some((mut sc, line)) => (triples(&mut sc)?, line),
        None => (Vec::new(), type_line),
    };
    let (mut sc, tail_line) = fields.require("tail", end)?;
    let tail = tail(&mut sc)?;
    ExhaustionDescriptor::new(t, n0, prefix, tail).map_err(|e| {
        let line = match &e {
            ExhaustionError::InvalidDescriptor { field, .. } => match field {
                Field::Type => type_line,
                Field::N0 => n0_line,
                Field::Prefix => prefix_line,
                Field::Tail => tail_line,
            },
            _ => tail_line,
        };
        ParseError::new(line, 1, e.to_string())
    })
}

pub fn parse_descriptor(src: &str) -> Result<ExhaustionDescriptor, ParseError> {
    parse_descriptor_lines(content_lines(src))
}

impl std::str::FromStr for ExhaustionDescriptor {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse_descriptor(s)
    }
}

impl fmt::Display for TailGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TailGenerator::Periodic(period) => {
                f.write_str("periodic")?;
                for t in period {
                    write!(f, " {t}")?;
                }
                Ok(())
            }
            TailGenerator::PrimeSeq { offset } => write!(f, "primes offset {offset}"),
            TailGenerator::Proportional { l, r, beta } => {
                write!(f, "proportional ({l},{r},{beta})")
            }
        }
    }
}

impl fmt::Display for ExhaustionDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type: {}", self.alg_type)?;
        writeln!(f, "n0: {}", self.n0)?;
        let prefix: Vec<String> = self.prefix.iter().map(|t| t.to_string()).collect();
        if prefix.is_empty() {
            writeln!(f, "prefix:")?;
        } else {
            writeln!(f, "prefix: {}", prefix.join(" "))?;
        }
        writeln!(f, "tail: {}", self.tail)
    }
}

fn density(sc: &mut Scanner<'_>) -> Result<DensityClass, ParseError> {
    let d = match sc.identifier() {
        Some("sparse") => DensityClass::Sparse,
        Some("dense") => DensityClass::Dense,
        Some("pure") => DensityClass::Pure,
        _ => return Err(sc.error("expected sparse, dense or pure")),
    };
    sc.finish()?;
    Ok(d)
}

fn symmetry(sc: &mut Scanner<'_>) -> Result<SymmetryClass, ParseError> {
    sc.skip_ws();
    let word: String = {
        let mut w = String::new();
        while let Some(c) = sc.peek() {
            if c.is_ascii_alphabetic() || c == '-' {
                w.push(c);
                sc.eat(c);
            } else {
                break;
            }
        }
        w
    };
    let s = match word.as_str() {
        "one-sided" => SymmetryClass::OneSided,
        "two-sided-symmetric" => SymmetryClass::TwoSidedSymmetric,
        "weakly-non-symmetric" => SymmetryClass::WeaklyNonSymmetric,
        "strongly-non-symmetric" => SymmetryClass::StronglyNonSymmetric,
        _ => return Err(sc.error(format!("unknown symmetry class '{word}'"))),
    };
    sc.finish()?;
    Ok(s)
}

fn steinitz_field(sc: Scanner<'_>, value: &str, line: usize) -> Result<SteinitzNumber, ParseError> {
    SteinitzNumber::parse_at(value, line, sc.column())
}

/// Profile file: the profile fields, Steinitz numbers as literals.
pub fn parse_profile(src: &str) -> Result<AlgebraProfile, ParseError> {
    let keys = [
        "type", "S", "C", "density", "symmetry", "delta", "sigma", "finitary",
    ];
    let fields = Fields::collect(content_lines(src), &keys)?;
    let end = fields.last_line();
    let raw = |key: &str| {
        fields
            .entries
            .iter()
            .find(|e| e.0 == key)
            .map(|&(_, value, _, _)| value)
    };
    let (mut sc, _) = fields.require("type", end)?;
    let t = alg_type(&mut sc)?;
    let (sc, s_line) = fields.require("S", end)?;
    let s = steinitz_field(sc, raw("S").expect("present"), s_line)?;
    let c = match fields.get("C") {
        Some((mut sc, line)) => {
            if sc.eat_keyword("none") {
                sc.finish()?;
                None
            } else {
                Some(steinitz_field(sc, raw("C").expect("present"), line)?)
            }
        }
        None => None,
    };
    let (mut sc, _) = fields.require("density", end)?;
    let dens = density(&mut sc)?;
    let (mut sc, _) = fields.require("symmetry", end)?;
    let sym = symmetry(&mut sc)?;
    let (mut sc, _) = fields.require("delta", end)?;
    let delta = real(&mut sc)?;
    sc.finish()?;
    let sigma = match fields.get("sigma") {
        Some((mut sc, _)) => {
            let v = real(&mut sc)?;
            sc.finish()?;
            v
        }
        None if sym == SymmetryClass::OneSided => Real::Exact(BigRational::one()),
        None => Real::zero(),
    };
    let finitary = match fields.get("finitary") {
        Some((mut sc, _)) => {
            let v = match sc.identifier() {
                Some("true") => true,
                Some("false") => false,
                _ => return Err(sc.error("expected true or false")),
            };
            sc.finish()?;
            v
        }
        None => s.is_finite(),
    };
    let profile = AlgebraProfile {
        alg_type: t,
        s,
        c,
        density: dens,
        symmetry: sym,
        delta,
        sigma,
        finitary,
        descriptor: None,
    };
    certify(profile).map_err(|e| ParseError::new(end, 1, e.to_string()))
}

impl fmt::Display for AlgebraProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "type: {}", self.alg_type)?;
        writeln!(f, "S: {}", self.s)?;
        match &self.c {
            Some(c) => writeln!(f, "C: {c}")?,
            None => writeln!(f, "C: none")?,
        }
        writeln!(f, "density: {}", self.density)?;
        writeln!(f, "symmetry: {}", self.symmetry)?;
        writeln!(f, "delta: {}", self.delta)?;
        writeln!(f, "sigma: {}", self.sigma)?;
        writeln!(f, "finitary: {}", self.finitary)
    }
}

/// A file holding either a descriptor or a profile.
#[derive(Clone, Debug)]
pub enum AlgebraInput {
    Descriptor(ExhaustionDescriptor),
    Profile(AlgebraProfile),
}

impl AlgebraInput {
    pub fn parse(src: &str) -> Result<Self, ParseError> {
        let is_profile = content_lines(src)
            .any(|(_, line)| split_key(line).is_some_and(|(key, _, _)| key == "S"));
        if is_profile {
            parse_profile(src).map(AlgebraInput::Profile)
        } else {
            parse_descriptor(src).map(AlgebraInput::Descriptor)
        }
    }

    pub fn profile(&self, precision: &BigRational) -> AlgebraProfile {
        match self {
            AlgebraInput::Descriptor(d) => d.profile(precision),
            AlgebraInput::Profile(p) => p.clone(),
        }
    }
}
