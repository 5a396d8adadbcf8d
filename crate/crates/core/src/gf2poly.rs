//! Polynomials over GF(2), packed into machine words.
//!
//! Bit `i` of the packed form is the coefficient of `x^i`. Addition is XOR,
//! multiplication is word-level carry-less multiplication. Every value is
//! stored in canonical form: the highest set bit is the degree and the zero
//! polynomial is the all-clear word array.
//!
//! ```text
//! 0b0111 = 0x7 -> x^2+x+1
//! 0b1011 = 0xB -> x^3+x+1
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use thiserror::Error;

/// Number of 64-bit words backing a [`Poly`].
pub const WORDS: usize = 4;

/// Largest degree a [`Poly`] can hold.
pub const MAX_DEGREE: usize = WORDS * 64 - 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    BothZero,
    #[error("expected a nonconstant polynomial, got {0}")]
    Constant(Poly),
    #[error("{0} is not irreducible")]
    Reducible(Poly),
    #[error("the multiplicity of a factor in the zero polynomial is unbounded")]
    ZeroArgument,
    #[error("product degree {0} exceeds the supported maximum {MAX_DEGREE}")]
    Overflow(usize),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
}

/// A polynomial over GF(2).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    words: [u64; WORDS],
}

impl Poly {
    pub const ZERO: Poly = Poly { words: [0; WORDS] };
    pub const ONE: Poly = Poly::from_bits(1);
    /// The polynomial `x`.
    pub const X: Poly = Poly::from_bits(0b10);
    /// The polynomial `x+1`.
    pub const X_PLUS_ONE: Poly = Poly::from_bits(0b11);

    /// Builds a polynomial from a coefficient mask.
    pub const fn from_bits(bits: u64) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits;
        Poly { words }
    }

    pub const fn from_u128(bits: u128) -> Self {
        let mut words = [0; WORDS];
        words[0] = bits as u64;
        words[1] = (bits >> 64) as u64;
        Poly { words }
    }

    /// `x^k`. Returns `None` when `k` exceeds [`MAX_DEGREE`].
    pub fn monomial(k: usize) -> Option<Self> {
        if k > MAX_DEGREE {
            return None;
        }
        let mut p = Poly::ZERO;
        p.words[k / 64] = 1 << (k % 64);
        Some(p)
    }

    /// Builds a polynomial from a list of exponents; repeated exponents cancel.
    pub fn from_exponents(exponents: &[usize]) -> Option<Self> {
        let mut p = Poly::ZERO;
        for &k in exponents {
            p += Poly::monomial(k)?;
        }
        Some(p)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        (0..WORDS)
            .rev()
            .find(|&i| self.words[i] != 0)
            .map(|i| i * 64 + 63 - self.words[i].leading_zeros() as usize)
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_one(&self) -> bool {
        *self == Poly::ONE
    }

    pub fn coeff(&self, i: usize) -> bool {
        i <= MAX_DEGREE && (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    /// The coefficient mask when the polynomial fits in one word.
    pub fn to_u64(&self) -> Option<u64> {
        if self.words[1..].iter().all(|&w| w == 0) {
            Some(self.words[0])
        } else {
            None
        }
    }

    pub fn words(&self) -> &[u64; WORDS] {
        &self.words
    }

    /// Exponents with a nonzero coefficient, highest first.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        (0..=self.degree().unwrap_or(0))
            .rev()
            .filter(move |&i| self.coeff(i))
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }

    /// Multiplication by `x^k`; `None` on overflow.
    pub fn checked_shl(&self, k: usize) -> Option<Self> {
        match self.degree() {
            None => Some(*self),
            Some(d) if d + k > MAX_DEGREE => None,
            Some(_) => {
                let (ws, bs) = (k / 64, k % 64);
                let mut out = [0u64; WORDS];
                for i in (ws..WORDS).rev() {
                    let src = i - ws;
                    out[i] = self.words[src] << bs;
                    if bs != 0 && src > 0 {
                        out[i] |= self.words[src - 1] >> (64 - bs);
                    }
                }
                Some(Poly { words: out })
            }
        }
    }

    pub fn checked_mul(&self, other: &Poly) -> Option<Poly> {
        match (self.degree(), other.degree()) {
            (None, _) | (_, None) => return Some(Poly::ZERO),
            (Some(a), Some(b)) if a + b > MAX_DEGREE => return None,
            _ => {}
        }
        let mut out = [0u64; WORDS];
        for (i, &a) in self.words.iter().enumerate().filter(|(_, w)| **w != 0) {
            for (j, &b) in other.words.iter().enumerate().filter(|(_, w)| **w != 0) {
                let prod = clmul64(a, b);
                out[i + j] ^= prod as u64;
                let hi = (prod >> 64) as u64;
                if hi != 0 {
                    out[i + j + 1] ^= hi;
                }
            }
        }
        Some(Poly { words: out })
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly), PolyError> {
        let db = divisor.degree().ok_or(PolyError::DivisionByZero)?;
        let mut q = Poly::ZERO;
        let mut r = *self;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let shift = dr - db;
            q.words[shift / 64] |= 1 << (shift % 64);
            r += divisor.checked_shl(shift).expect("shift stays below the remainder degree");
        }
        Ok((q, r))
    }

    /// Remainder of division by `divisor`.
    pub fn rem(&self, divisor: &Poly) -> Result<Poly, PolyError> {
        self.divrem(divisor).map(|(_, r)| r)
    }

    /// Whether `divisor` divides `self`. The zero polynomial divides only zero.
    pub fn is_divisible_by(&self, divisor: &Poly) -> bool {
        if divisor.is_zero() {
            return self.is_zero();
        }
        self.rem(divisor).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// `self(x+1)`, the image under the ring automorphism `x -> x+1`.
    pub fn compose_x_plus_one(&self) -> Poly {
        let mut acc = Poly::ZERO;
        for i in (0..=self.degree().unwrap_or(0)).rev() {
            acc = acc * Poly::X_PLUS_ONE;
            if self.coeff(i) {
                acc += Poly::ONE;
            }
        }
        acc
    }

    /// Hex mask syntax, e.g. `0xb` for `x^3+x+1`.
    pub fn to_hex(&self) -> String {
        let top = (0..WORDS).rev().find(|&i| self.words[i] != 0);
        match top {
            None => "0x0".to_string(),
            Some(top) => {
                let mut s = format!("0x{:x}", self.words[top]);
                for i in (0..top).rev() {
                    s.push_str(&format!("{:016x}", self.words[i]));
                }
                s
            }
        }
    }
}

/// Carry-less product of two words.
#[inline]
pub fn clmul64(a: u64, b: u64) -> u128 {
    let (a, mut b) = (a as u128, b);
    let mut acc = 0u128;
    while b != 0 {
        acc ^= a << b.trailing_zeros();
        b &= b - 1;
    }
    acc
}

impl Ord for Poly {
    /// Bit-vector order: compares the coefficient masks as unsigned integers.
    fn cmp(&self, other: &Self) -> Ordering {
        self.words.iter().rev().cmp(other.words.iter().rev())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += rhs;
        self
    }
}

impl AddAssign for Poly {
    // addition in characteristic 2 is XOR
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Poly) {
        for (a, b) in self.words.iter_mut().zip(rhs.words) {
            *a ^= b;
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    /// Panics if the product degree exceeds [`MAX_DEGREE`]; see [`Poly::checked_mul`].
    fn mul(self, rhs: Poly) -> Poly {
        self.checked_mul(&rhs).unwrap_or_else(|| {
            panic!(
                "{}",
                PolyError::Overflow(self.degree().unwrap_or(0) + rhs.degree().unwrap_or(0))
            )
        })
    }
}

/// Greatest common divisor. `gcd(a, 0) = a`.
pub fn gcd(a: &Poly, b: &Poly) -> Result<Poly, PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut a, mut b) = (*a, *b);
    while !b.is_zero() {
        let r = a.rem(&b)?;
        a = b;
        b = r;
    }
    Ok(a)
}

/// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`.
pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<(Poly, Poly, Poly), PolyError> {
    if a.is_zero() && b.is_zero() {
        return Err(PolyError::BothZero);
    }
    let (mut r0, mut r1) = (*a, *b);
    let (mut s0, mut s1) = (Poly::ONE, Poly::ZERO);
    let (mut t0, mut t1) = (Poly::ZERO, Poly::ONE);
    while !r1.is_zero() {
        let (q, r) = r0.divrem(&r1)?;
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s0 + q * s1);
        (t0, t1) = (t1, t0 + q * t1);
    }
    Ok((r0, s0, t0))
}

/// Trial division by every polynomial of degree `1..=deg p / 2`.
pub fn is_irreducible(p: &Poly) -> Result<bool, PolyError> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(PolyError::Constant(*p)),
    };
    let half = d / 2;
    assert!(half < 63, "trial division is limited to degree < 126");
    let end = 1u64 << (half + 1);
    Ok((2..end).all(|g| !p.is_divisible_by(&Poly::from_bits(g))))
}

/// Irreducible factorization, ordered as `x`, `x+1`, then ascending bit-vector value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(Poly, u32)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Position of the given irreducible in the list.
    pub fn index_of(&self, p: &Poly) -> Option<usize> {
        self.factors.iter().position(|(q, _)| q == p)
    }

    /// Multiplicity of `p` (zero when absent).
    pub fn multiplicity(&self, p: &Poly) -> u32 {
        self.index_of(p).map_or(0, |i| self.factors[i].1)
    }

    pub fn expand(&self) -> Poly {
        self.factors.iter().fold(Poly::ONE, |acc, (p, n)| {
            (0..*n).fold(acc, |acc, _| acc * *p)
        })
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl fmt::Display for Factorization {
    /// `x^2 * (x+1)^2`; multi-term factors are parenthesized unless they stand alone.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alone = self.factors.len() == 1;
        for (i, (p, n)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            let paren = p.weight() > 1 && (!alone || *n > 1);
            if paren {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
            if *n > 1 {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

/// Factors `f` by trial division over candidates in ascending bit-vector order.
///
/// Candidates are tried smallest first, so every divisor found is irreducible
/// and `x`, `x+1` come out in front.
pub fn factor(f: &Poly) -> Result<Factorization, PolyError> {
    if f.degree().unwrap_or(0) == 0 {
        return Err(PolyError::Constant(*f));
    }
    let mut rest = *f;
    let mut factors = Vec::new();
    let mut g = 2u64;
    loop {
        let rd = rest.degree().unwrap_or(0);
        let gd = 63 - g.leading_zeros() as usize;
        if 2 * gd > rd {
            break;
        }
        let cand = Poly::from_bits(g);
        let mut n = 0;
        while let Ok((q, r)) = rest.divrem(&cand) {
            if !r.is_zero() {
                break;
            }
            rest = q;
            n += 1;
        }
        if n > 0 {
            factors.push((cand, n));
        }
        g += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { factors })
}

/// Largest `k` with `h^k | g`.
pub fn pot(h: &Poly, g: &Poly) -> Result<u32, PolyError> {
    if !is_irreducible(h)? {
        return Err(PolyError::Reducible(*h));
    }
    if g.is_zero() {
        return Err(PolyError::ZeroArgument);
    }
    Ok(multiplicity_unchecked(h, g))
}

/// [`pot`] without the irreducibility check; `h` must be nonconstant and `g` nonzero.
pub(crate) fn multiplicity_unchecked(h: &Poly, g: &Poly) -> u32 {
    let mut g = *g;
    let mut k = 0;
    loop {
        match g.divrem(h) {
            Ok((q, r)) if r.is_zero() => {
                g = q;
                k += 1;
            }
            _ => return k,
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for e in self.exponents() {
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl FromStr for Poly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

fn syntax(position: usize, message: impl Into<String>) -> PolyError {
    PolyError::Syntax {
        position,
        message: message.into(),
    }
}

/// Parses `x^3+x+1` style text (terms in any order, repeats cancel) or a
/// hex mask such as `0xB`.
pub fn parse(text: &str) -> Result<Poly, PolyError> {
    let start = text.len() - text.trim_start().len();
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(syntax(start, "empty polynomial"));
    }
    if let Some(hex) = trimmed.strip_prefix("0x").or_else(|| trimmed.strip_prefix("0X")) {
        return parse_hex(hex, start + 2);
    }
    parse_terms(text)
}

fn parse_hex(hex: &str, offset: usize) -> Result<Poly, PolyError> {
    if hex.is_empty() {
        return Err(syntax(offset, "expected hex digits"));
    }
    let digits: Vec<(usize, u32)> = hex
        .char_indices()
        .map(|(i, c)| {
            c.to_digit(16)
                .map(|d| (i, d))
                .ok_or_else(|| syntax(offset + i, format!("invalid hex digit {c:?}")))
        })
        .collect::<Result<_, _>>()?;
    let mut p = Poly::ZERO;
    for (nibble, &(i, d)) in digits.iter().rev().enumerate() {
        if d == 0 {
            continue;
        }
        let bit = nibble * 4;
        if bit + (31 - d.leading_zeros() as usize) > MAX_DEGREE {
            return Err(syntax(offset + i, "hex mask exceeds the supported degree"));
        }
        p.words[bit / 64] |= (d as u64) << (bit % 64);
    }
    Ok(p)
}

fn parse_terms(text: &str) -> Result<Poly, PolyError> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut p = Poly::ZERO;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Err(syntax(pos, "expected a term"));
        }
        match bytes[pos] {
            b'0' | b'1' if !matches!(bytes.get(pos + 1), Some(b) if b.is_ascii_alphanumeric()) => {
                if bytes[pos] == b'1' {
                    p += Poly::ONE;
                }
                pos += 1;
            }
            b'x' | b'X' => {
                pos += 1;
                skip_ws(&mut pos);
                let mut exp = 1usize;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let digits_start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if digits_start == pos {
                        return Err(syntax(pos, "expected an exponent after '^'"));
                    }
                    exp = text[digits_start..pos]
                        .parse()
                        .ok()
                        .filter(|&e| e <= MAX_DEGREE)
                        .ok_or_else(|| syntax(digits_start, "exponent too large"))?;
                }
                p += Poly::monomial(exp).expect("exponent checked against MAX_DEGREE");
            }
            c => {
                return Err(syntax(pos, format!("unexpected character {:?}", c as char)));
            }
        }
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            return Ok(p);
        }
        if bytes[pos] != b'+' {
            return Err(syntax(pos, format!("expected '+', found {:?}", bytes[pos] as char)));
        }
        pos += 1;
    }
}
