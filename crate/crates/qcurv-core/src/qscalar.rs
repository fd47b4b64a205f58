//! Exact arithmetic in the rational-function field Q(s) and the two
//! quantum-integer conventions.
//!
//! Every scalar in the engine is a [`ScalarRat`]: a reduced fraction of sparse
//! polynomials in the deformation variable `s`. A session fixes `n`, and the
//! display symbol `q` abbreviates `s^{n+1}`; exponents like `q^{2/(n+1)}`
//! become the integral powers `s^2`. Negative powers of `s` live in the
//! denominator, never as Laurent terms, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from quantum-integer constructors.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum QScalarError {
    #[error("base exponent t must be nonzero")]
    ZeroBase,
    #[error("invalid arguments: {0}")]
    InvalidArgs(String),
    #[error("division by zero scalar")]
    DivisionByZero,
}

/// Sparse polynomial in `s` with arbitrary-precision rational coefficients.
///
/// Invariants: no stored zero coefficients, exponents unique and >= 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SPoly {
    terms: BTreeMap<u32, BigRational>,
}

impl SPoly {
    pub fn zero() -> Self {
        SPoly::default()
    }

    pub fn one() -> Self {
        SPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        SPoly { terms }
    }

    /// The monomial `c * s^e`.
    pub fn monomial(c: BigRational, e: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        SPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.values().next_back()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, e: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &SPoly) -> SPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(*e, c.clone());
        }
        out
    }

    pub fn neg(&self) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &SPoly) -> SPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SPoly) -> SPoly {
        let mut out = SPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.insert(e1 + e2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> SPoly {
        if c.is_zero() {
            return SPoly::zero();
        }
        SPoly {
            terms: self.terms.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by s^e.
    pub fn shift(&self, e: u32) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    /// Divide every exponent's base power: self / s^e (exact; requires valuation >= e).
    fn unshift(&self, e: u32) -> SPoly {
        SPoly {
            terms: self.terms.iter().map(|(k, c)| (k - e, c.clone())).collect(),
        }
    }

    /// Polynomial long division; returns (quotient, remainder).
    pub fn div_rem(&self, d: &SPoly) -> (SPoly, SPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let mut rem = self.clone();
        let mut quo = SPoly::zero();
        let d_deg = d.degree().unwrap();
        let d_lc = d.leading_coeff().unwrap().clone();
        while let Some(r_deg) = rem.degree() {
            if r_deg < d_deg {
                break;
            }
            let r_lc = rem.leading_coeff().unwrap().clone();
            let c = r_lc / &d_lc;
            let e = r_deg - d_deg;
            quo.insert(e, c.clone());
            let sub = d.mul(&SPoly::monomial(c, e));
            rem = rem.sub(&sub);
        }
        (quo, rem)
    }

    /// Monic gcd via Euclid. gcd(0, 0) = 0.
    pub fn gcd(&self, other: &SPoly) -> SPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.make_monic();
        a
    }

    fn make_monic(&mut self) {
        if let Some(lc) = self.leading_coeff().cloned() {
            if !lc.is_one() {
                let inv = BigRational::one() / lc;
                *self = self.scale(&inv);
            }
        }
    }

    /// Evaluate at a rational point (used for the classical limit s = 1).
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            acc += c * num::pow::pow(x.clone(), *e as usize);
        }
        acc
    }
}

/// Element of Q(s): reduced fraction `num/den` with `den` monic and nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScalarRat {
    num: SPoly,
    den: SPoly,
}

impl Default for ScalarRat {
    fn default() -> Self {
        ScalarRat::zero()
    }
}

impl ScalarRat {
    pub fn zero() -> Self {
        ScalarRat {
            num: SPoly::zero(),
            den: SPoly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarRat {
            num: SPoly::one(),
            den: SPoly::one(),
        }
    }

    pub fn from_int(k: i64) -> Self {
        ScalarRat {
            num: SPoly::constant(BigRational::from_integer(BigInt::from(k))),
            den: SPoly::one(),
        }
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        assert!(q != 0);
        ScalarRat {
            num: SPoly::constant(BigRational::new(BigInt::from(p), BigInt::from(q))),
            den: SPoly::one(),
        }
    }

    /// `s^e`, with negative `e` stored as `1/s^{-e}`.
    pub fn spow(e: i64) -> Self {
        if e >= 0 {
            ScalarRat {
                num: SPoly::monomial(BigRational::one(), e as u32),
                den: SPoly::one(),
            }
        } else {
            ScalarRat {
                num: SPoly::one(),
                den: SPoly::monomial(BigRational::one(), (-e) as u32),
            }
        }
    }

    pub fn from_poly(p: SPoly) -> Self {
        ScalarRat {
            num: p,
            den: SPoly::one(),
        }
    }

    fn normalize(mut num: SPoly, mut den: SPoly) -> ScalarRat {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ScalarRat::zero();
        }
        // Cheap common factor: powers of s.
        let v = num.valuation().unwrap().min(den.valuation().unwrap());
        if v > 0 {
            num = num.unshift(v);
            den = den.unshift(v);
        }
        // Full gcd only when both sides are genuine polynomials.
        if den.degree() != Some(0) && num.degree() != Some(0) {
            let g = num.gcd(&den);
            if g.degree().map_or(false, |d| d > 0) {
                num = num.div_rem(&g).0;
                den = den.div_rem(&g).0;
            }
        }
        // Monic denominator.
        let lc = den.leading_coeff().unwrap().clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ScalarRat { num, den }
    }

    pub fn num(&self) -> &SPoly {
        &self.num
    }

    pub fn den(&self) -> &SPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &ScalarRat::one()
    }

    pub fn add(&self, other: &ScalarRat) -> ScalarRat {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        ScalarRat::normalize(num, den)
    }

    pub fn sub(&self, other: &ScalarRat) -> ScalarRat {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ScalarRat {
        ScalarRat {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &ScalarRat) -> ScalarRat {
        ScalarRat::normalize(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn inverse(&self) -> Result<ScalarRat, QScalarError> {
        if self.is_zero() {
            return Err(QScalarError::DivisionByZero);
        }
        Ok(ScalarRat::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &ScalarRat) -> Result<ScalarRat, QScalarError> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn pow(&self, e: i64) -> Result<ScalarRat, QScalarError> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = ScalarRat::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Substitute s = x (classical limit uses x = 1). None if the denominator
    /// vanishes at x.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// If this scalar is a pure monomial `c * s^e` (e may be negative),
    /// returns (c, e).
    pub fn as_monomial(&self) -> Option<(BigRational, i64)> {
        if self.num.num_terms() != 1 || self.den.num_terms() != 1 {
            return None;
        }
        let (en, cn) = self.num.terms().next().unwrap();
        let (ed, cd) = self.den.terms().next().unwrap();
        Some((cn / cd, *en as i64 - *ed as i64))
    }

    /// Canonical text: sparse terms by ascending exponent, e.g. "1 + s^2 + s^4".
    pub fn render_s(&self) -> String {
        self.render(1)
    }

    /// Render with `q = s^{qstep}` preferred wherever exponents allow it.
    pub fn render(&self, qstep: u32) -> String {
        if self.den == SPoly::one() {
            return render_poly_shifted(&self.num, 0, qstep);
        }
        // A monomial denominator s^k renders as negative powers.
        if self.den.num_terms() == 1 {
            let (ed, cd) = self.den.terms().next().unwrap();
            if cd.is_one() {
                return render_poly_shifted(&self.num, *ed as i64, qstep);
            }
        }
        format!(
            "({}) / ({})",
            render_poly_shifted(&self.num, 0, qstep),
            render_poly_shifted(&self.den, 0, qstep)
        )
    }
}

/// Render `p / s^shift` as a sum of (possibly negative) powers.
fn render_poly_shifted(p: &SPoly, shift: i64, qstep: u32) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    for (e, c) in p.terms() {
        let e = *e as i64 - shift;
        let mono = render_power(e, qstep);
        let piece = if c.is_one() && e != 0 {
            mono
        } else if (-c).is_one() && e != 0 {
            format!("-{mono}")
        } else if e == 0 {
            format!("{c}")
        } else {
            format!("{c}*{mono}")
        };
        parts.push(piece);
    }
    let mut out = String::new();
    for (i, piece) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(piece);
        } else if let Some(rest) = piece.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(piece);
        }
    }
    out
}

fn render_power(e: i64, qstep: u32) -> String {
    if e == 0 {
        return "1".to_string();
    }
    if qstep > 1 && e % qstep as i64 == 0 {
        let k = e / qstep as i64;
        if k == 1 {
            "q".to_string()
        } else {
            format!("q^{k}")
        }
    } else if e == 1 {
        "s".to_string()
    } else {
        format!("s^{e}")
    }
}

impl fmt::Display for ScalarRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_s())
    }
}

/// JSON form: {"num": [[exp, "p/q"], ...], "den": [...]}. Bit-exact across runs
/// because BTreeMap iteration is ordered.
#[derive(Serialize, Deserialize)]
pub struct ScalarRatJson {
    pub num: Vec<(u32, String)>,
    pub den: Vec<(u32, String)>,
}

impl From<&ScalarRat> for ScalarRatJson {
    fn from(x: &ScalarRat) -> Self {
        let enc = |p: &SPoly| p.terms().map(|(e, c)| (*e, c.to_string())).collect();
        ScalarRatJson {
            num: enc(&x.num),
            den: enc(&x.den),
        }
    }
}

impl ScalarRatJson {
    pub fn decode(&self) -> Result<ScalarRat, QScalarError> {
        let dec = |v: &Vec<(u32, String)>| -> Result<SPoly, QScalarError> {
            let mut p = SPoly::zero();
            for (e, c) in v {
                let c: BigRational = c
                    .parse()
                    .map_err(|_| QScalarError::InvalidArgs(format!("bad coefficient {c}")))?;
                p.insert(*e, c);
            }
            Ok(p)
        };
        Ok(ScalarRat::normalize(dec(&self.num)?, dec(&self.den)?))
    }
}

/// Round quantum integer `(m)_{s^t} = 1 + s^t + ... + s^{t(m-1)}`.
pub fn qint_round(m: u32, t: i64) -> Result<ScalarRat, QScalarError> {
    if t == 0 {
        return Err(QScalarError::ZeroBase);
    }
    let mut acc = ScalarRat::zero();
    for j in 0..m {
        acc = acc.add(&ScalarRat::spow(t * j as i64));
    }
    Ok(acc)
}

/// Symmetric quantum integer `[m]_{s^t} = s^{t(-m+1)} + s^{t(-m+3)} + ... + s^{t(m-1)}`.
pub fn qint_bracket(m: u32, t: i64) -> Result<ScalarRat, QScalarError> {
    if t == 0 {
        return Err(QScalarError::ZeroBase);
    }
    let mut acc = ScalarRat::zero();
    let m = m as i64;
    let mut e = -m + 1;
    while e <= m - 1 {
        acc = acc.add(&ScalarRat::spow(t * e));
        e += 2;
    }
    Ok(acc)
}

/// `[m]_{s^t}! = [m][m-1]...[1]`, with `[0]! = 1`.
pub fn qfactorial(m: u32, t: i64) -> Result<ScalarRat, QScalarError> {
    if t == 0 {
        return Err(QScalarError::ZeroBase);
    }
    let mut acc = ScalarRat::one();
    for j in 1..=m {
        acc = acc.mul(&qint_bracket(j, t)?);
    }
    Ok(acc)
}

/// Symmetric q-binomial `[n choose r]_{s^t}` via the factorial formula.
pub fn qbinomial(n: u32, r: u32, t: i64) -> Result<ScalarRat, QScalarError> {
    if t == 0 {
        return Err(QScalarError::ZeroBase);
    }
    if r > n {
        return Err(QScalarError::InvalidArgs(format!("r = {r} exceeds n = {n}")));
    }
    qfactorial(n, t)?
        .div(&qfactorial(r, t)?.mul(&qfactorial(n - r, t)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn srp(e: i64) -> ScalarRat {
        ScalarRat::spow(e)
    }

    #[test]
    fn spow_cases() {
        assert_eq!(srp(0), ScalarRat::one());
        assert_eq!(srp(3).render_s(), "s^3");
        assert_eq!(srp(-2).render_s(), "s^-2");
        assert_eq!(srp(3).mul(&srp(-3)), ScalarRat::one());
    }

    #[test]
    fn round_qint_in_q_base() {
        // With q = s^{n+1}, base q means t = n+1. n = 2 here.
        let q3 = qint_round(3, 3).unwrap();
        assert_eq!(q3, srp(0).add(&srp(3)).add(&srp(6)));
        assert_eq!(q3.render(3), "1 + q + q^2");
        assert_eq!(qint_round(0, 5).unwrap(), ScalarRat::zero());
        // (2)_{s^{-2}} = 1 + 1/s^2
        assert_eq!(qint_round(2, -2).unwrap(), ScalarRat::one().add(&srp(-2)));
    }

    #[test]
    fn bracket_qint() {
        // [2]_q = q^{-1} + q with q = s^2 (n = 1).
        assert_eq!(qint_bracket(2, 2).unwrap(), srp(-2).add(&srp(2)));
        assert_eq!(qint_bracket(1, 7).unwrap(), ScalarRat::one());
        let b4 = qint_bracket(4, 2).unwrap();
        let expect = srp(-6).add(&srp(-2)).add(&srp(2)).add(&srp(6));
        assert_eq!(b4, expect);
        assert!(qint_bracket(3, 0).is_err());
    }

    #[test]
    fn factorial_and_binomial() {
        assert_eq!(qfactorial(0, 2).unwrap(), ScalarRat::one());
        assert_eq!(qbinomial(5, 0, 2).unwrap(), ScalarRat::one());
        // [4 2]_q against direct expansion [4]!/([2]![2]!).
        let direct = qfactorial(4, 2)
            .unwrap()
            .div(&qfactorial(2, 2).unwrap().mul(&qfactorial(2, 2).unwrap()))
            .unwrap();
        assert_eq!(qbinomial(4, 2, 2).unwrap(), direct);
        assert!(qbinomial(2, 3, 2).is_err());
    }

    #[test]
    fn round_times_one_minus_base() {
        for t in [-3i64, -1, 1, 2, 5] {
            for m in 0..=20u32 {
                let lhs = qint_round(m, t)
                    .unwrap()
                    .mul(&ScalarRat::one().sub(&srp(t)));
                let rhs = ScalarRat::one().sub(&srp(t * m as i64));
                assert_eq!(lhs, rhs, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn bracket_palindromic() {
        for t in [1i64, 2, 3] {
            for m in 1..=12u32 {
                assert_eq!(qint_bracket(m, t).unwrap(), qint_bracket(m, -t).unwrap());
            }
        }
    }

    #[test]
    fn conversion_identity() {
        // [m]_{s^t} = s^{t(1-m)} (m)_{s^{2t}} for m = 0..20.
        for t in [1i64, 2, -3] {
            for m in 0..=20u32 {
                let lhs = qint_bracket(m, t).unwrap();
                let rhs = srp(t * (1 - m as i64)).mul(&qint_round(m, 2 * t).unwrap());
                assert_eq!(lhs, rhs, "m={m} t={t}");
            }
        }
    }

    #[test]
    fn q_pascal_recurrence() {
        // [n r] = s^{-tr} [n-1 r] + s^{t(n-r)} [n-1 r-1], checked against the
        // factorial expansion for all 0 <= r <= n <= 8.
        let t = 2i64;
        for n in 1..=8u32 {
            for r in 0..=n {
                let direct = qbinomial(n, r, t).unwrap();
                let a = if r <= n - 1 {
                    srp(-t * r as i64).mul(&qbinomial(n - 1, r, t).unwrap())
                } else {
                    ScalarRat::zero()
                };
                let b = if r >= 1 {
                    srp(t * (n - r) as i64).mul(&qbinomial(n - 1, r - 1, t).unwrap())
                } else {
                    ScalarRat::zero()
                };
                assert_eq!(direct, a.add(&b), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn classical_limit() {
        let one = BigRational::one();
        for m in 0..=8u32 {
            let v = qint_round(m, 2).unwrap().eval(&one).unwrap();
            assert_eq!(v, BigRational::from_integer(BigInt::from(m)));
        }
    }

    #[test]
    fn json_roundtrip() {
        let x = qint_round(3, -2).unwrap().mul(&ScalarRat::from_ratio(3, 7));
        let j = ScalarRatJson::from(&x);
        let back = j.decode().unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn rendering() {
        let x = ScalarRat::one().add(&srp(2)).add(&srp(4));
        assert_eq!(x.render_s(), "1 + s^2 + s^4");
        assert_eq!(x.render(2), "1 + q + q^2");
        let y = ScalarRat::one().sub(&srp(1));
        assert_eq!(y.render_s(), "1 - s");
    }
}
