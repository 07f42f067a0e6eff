//! Exact scalar arithmetic: arbitrary-precision rationals, quadratic surds
//! `a + b*sqrt(d)`, exact complex numbers over them, and the small integer
//! linear algebra (row-space bases, saturated kernels) used to classify
//! closures of finitely generated subgroups.
//!
//! Scalars are dual-mode throughout the crate: operations that depend on
//! arithmetic identities (group laws, congruences, closure types) run on the
//! types in this module; analytic operations run on `f64`.

use crate::error::SubgroupError;
use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

pub type Rat = BigRational;

/// Rational from a machine-integer pair.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Strip square factors: returns `(k, d')` with `d = k^2 * d'`, `d'` squarefree.
fn squarefree_part(d: u32) -> (u32, u32) {
    let mut k = 1u32;
    let mut rest = d;
    let mut p = 2u32;
    while p * p <= rest {
        while rest % (p * p) == 0 {
            rest /= p * p;
            k *= p;
        }
        p += 1;
    }
    (k, rest)
}

/// Real number of the form `a + b*sqrt(d)` with `a, b` rational.
///
/// Invariant: `b == 0` implies `d == 0`; otherwise `d` is squarefree and `>= 2`.
/// Arithmetic panics on incompatible radicands; callers validate compatibility
/// at the API boundary (see [`Surd::compatible`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    a: Rat,
    b: Rat,
    d: u32,
}

impl Surd {
    pub fn from_rat(a: Rat) -> Self {
        Surd { a, b: Rat::zero(), d: 0 }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n, 1))
    }

    /// Build `a + b*sqrt(d)`, normalizing the radicand.
    pub fn new(a: Rat, b: Rat, d: u32) -> Self {
        if b.is_zero() || d == 0 {
            return Self::from_rat(a);
        }
        let (k, sf) = squarefree_part(d);
        let b = b * Rat::from(BigInt::from(k));
        if sf == 1 {
            Self::from_rat(a + b)
        } else {
            Surd { a, b, d: sf }
        }
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn surd_coeff(&self) -> &Rat {
        &self.b
    }

    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Two surds are compatible when their radicands agree or either is rational.
    pub fn compatible(&self, other: &Surd) -> bool {
        self.d == 0 || other.d == 0 || self.d == other.d
    }

    fn join_radicand(&self, other: &Surd) -> u32 {
        if self.d != 0 {
            self.d
        } else {
            other.d
        }
    }

    fn check(&self, other: &Surd) {
        assert!(
            self.compatible(other),
            "incompatible radicands {} vs {}",
            self.d,
            other.d
        );
    }

    /// Sign of the real value: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        if self.b.is_zero() {
            return sign_of(&self.a);
        }
        if self.a.is_zero() {
            return sign_of(&self.b);
        }
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == sb {
            return sa;
        }
        // a and b*sqrt(d) have opposite signs: compare a^2 with b^2*d.
        let a2 = &self.a * &self.a;
        let b2d = &self.b * &self.b * Rat::from(BigInt::from(self.d));
        match a2.cmp(&b2d) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut v = self.a.to_f64().unwrap_or(f64::NAN);
        if !self.b.is_zero() {
            v += self.b.to_f64().unwrap_or(f64::NAN) * (self.d as f64).sqrt();
        }
        v
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Surd> {
        if self.is_zero() {
            return None;
        }
        if self.b.is_zero() {
            return Some(Surd::from_rat(self.a.recip()));
        }
        // 1/(a + b√d) = (a - b√d)/(a² - b²d); the norm is nonzero since d is
        // squarefree ≥ 2 and (a, b) ≠ (0, 0).
        let norm = &self.a * &self.a - &self.b * &self.b * Rat::from(BigInt::from(self.d));
        Some(Surd {
            a: &self.a / &norm,
            b: -(&self.b / &norm),
            d: self.d,
        })
    }
}

fn sign_of(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for Surd {
    type Output = Surd;
    fn add(self, rhs: Surd) -> Surd {
        self.check(&rhs);
        let d = self.join_radicand(&rhs);
        Surd::new(self.a + rhs.a, self.b + rhs.b, d)
    }
}

impl Sub for Surd {
    type Output = Surd;
    fn sub(self, rhs: Surd) -> Surd {
        self + (-rhs)
    }
}

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Mul for Surd {
    type Output = Surd;
    fn mul(self, rhs: Surd) -> Surd {
        self.check(&rhs);
        let d = self.join_radicand(&rhs);
        let dd = Rat::from(BigInt::from(d));
        // (a + b√d)(a' + b'√d) = aa' + bb'd + (ab' + a'b)√d
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dd;
        let b = &self.a * &rhs.b + &rhs.a * &self.b;
        Surd::new(a, b, d)
    }
}

impl Div for Surd {
    type Output = Surd;
    fn div(self, rhs: Surd) -> Surd {
        self.check(&rhs);
        let inv = rhs.recip().expect("division by zero surd");
        self * inv
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            if self.b.is_one() {
                return write!(f, "\u{221a}{}", self.d);
            }
            return write!(f, "{}\u{221a}{}", self.b, self.d);
        }
        if self.b.is_positive() {
            write!(f, "{}+{}\u{221a}{}", self.a, self.b, self.d)
        } else {
            write!(f, "{}{}\u{221a}{}", self.a, self.b, self.d)
        }
    }
}

/// Parse an exact scalar: `p`, `p/q`, `[coef]√d`, `[coef]sqrt(d)` and sums or
/// differences of one rational and one surd term, e.g. `"3/4"`, `"√2"`,
/// `"-2sqrt(5)"`, `"1/2+3/4√2"`.
pub fn parse_exact(s: &str) -> Result<Surd, SubgroupError> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(SubgroupError::Parse("empty scalar".into()));
    }
    // Split into at most two top-level terms on '+'/'-' (not at position 0).
    let bytes: Vec<char> = s.chars().collect();
    let mut split = None;
    let mut depth = 0i32;
    for (i, &c) in bytes.iter().enumerate().skip(1) {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' | '-' if depth == 0 && bytes[i - 1] != '/' && bytes[i - 1] != '+' && bytes[i - 1] != '-' => {
                split = Some(i);
                break;
            }
            _ => {}
        }
    }
    if let Some(i) = split {
        let head: String = bytes[..i].iter().collect();
        let tail: String = bytes[i..].iter().collect();
        let lhs = parse_term(&head)?;
        let rhs = parse_term(&tail)?;
        if !lhs.compatible(&rhs) {
            return Err(SubgroupError::MixedRadicands(lhs.d, rhs.d));
        }
        return Ok(lhs + rhs);
    }
    parse_term(&s)
}

fn parse_term(s: &str) -> Result<Surd, SubgroupError> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(b) => (true, b),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let surd_at = body.find('\u{221a}').map(|i| (i, '\u{221a}'.len_utf8()));
    let sqrt_at = body.find("sqrt").map(|i| (i, 4));
    let v = if let Some((i, w)) = surd_at.or(sqrt_at) {
        let coef = &body[..i];
        let mut rad = &body[i + w..];
        if let Some(r) = rad.strip_prefix('(') {
            rad = r
                .strip_suffix(')')
                .ok_or_else(|| SubgroupError::Parse(format!("unclosed sqrt in `{s}`")))?;
        }
        let d: u32 = rad
            .parse()
            .map_err(|_| SubgroupError::Parse(format!("bad radicand in `{s}`")))?;
        let c = if coef.is_empty() { Rat::one() } else { parse_rat(coef)? };
        Surd::new(Rat::zero(), c, d)
    } else {
        Surd::from_rat(parse_rat(body)?)
    };
    Ok(if neg { -v } else { v })
}

fn parse_rat(s: &str) -> Result<Rat, SubgroupError> {
    let parse_int = |t: &str| -> Result<BigInt, SubgroupError> {
        t.parse()
            .map_err(|_| SubgroupError::Parse(format!("bad integer `{t}`")))
    };
    if let Some((p, q)) = s.split_once('/') {
        let den = parse_int(q)?;
        if den.is_zero() {
            return Err(SubgroupError::Parse("zero denominator".into()));
        }
        Ok(Rat::new(parse_int(p)?, den))
    } else {
        Ok(Rat::from(parse_int(s)?))
    }
}

/// Exact complex number with [`Surd`] components.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactComplex {
    pub re: Surd,
    pub im: Surd,
}

impl ExactComplex {
    pub fn new(re: Surd, im: Surd) -> Self {
        ExactComplex { re, im }
    }

    pub fn from_int(re: i64, im: i64) -> Self {
        ExactComplex::new(Surd::from_int(re), Surd::from_int(im))
    }

    pub fn zero() -> Self {
        Self::from_int(0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactComplex::new(self.re.clone(), -self.im.clone())
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    /// `Im(conj(self) * other)`, the oriented cross form used by the dual pairing.
    pub fn cross(&self, other: &ExactComplex) -> Surd {
        self.re.clone() * other.im.clone() - self.im.clone() * other.re.clone()
    }

    /// Radicand shared by both components (0 when purely rational).
    pub fn radicand(&self) -> Result<u32, SubgroupError> {
        if !self.re.compatible(&self.im) {
            return Err(SubgroupError::MixedRadicands(self.re.d, self.im.d));
        }
        Ok(if self.re.d != 0 { self.re.d } else { self.im.d })
    }
}

impl Add for ExactComplex {
    type Output = ExactComplex;
    fn add(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for ExactComplex {
    type Output = ExactComplex;
    fn sub(self, rhs: ExactComplex) -> ExactComplex {
        ExactComplex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for ExactComplex {
    type Output = ExactComplex;
    fn neg(self) -> ExactComplex {
        ExactComplex::new(-self.re, -self.im)
    }
}

impl Mul for ExactComplex {
    type Output = ExactComplex;
    fn mul(self, rhs: ExactComplex) -> ExactComplex {
        let re = self.re.clone() * rhs.re.clone() - self.im.clone() * rhs.im.clone();
        let im = self.re * rhs.im + self.im * rhs.re;
        ExactComplex::new(re, im)
    }
}

// ---------------------------------------------------------------------------
// Integer linear algebra on small matrices.
// ---------------------------------------------------------------------------

/// Basis of the subgroup of Z^n generated by the rows of `rows` (a row-style
/// Hermite reduction; only the basis property matters, not a canonical form).
pub fn row_space_basis(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return vec![];
    }
    let n = rows[0].len();
    let mut basis: Vec<Vec<BigInt>> = Vec::new();
    let mut col = 0;
    while col < n && !rows.is_empty() {
        loop {
            // Rows with a nonzero entry in this column, smallest |entry| first.
            let mut idx: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if idx.is_empty() {
                break;
            }
            idx.sort_by_key(|&i| rows[i][col].abs());
            let pivot = idx[0];
            if idx.len() == 1 {
                let p = rows.remove(pivot);
                basis.push(p);
                break;
            }
            // Reduce every other row by the pivot row.
            let pivot_row = rows[pivot].clone();
            for &i in &idx[1..] {
                let q = floor_div(&rows[i][col], &pivot_row[col]);
                if !q.is_zero() {
                    for j in 0..n {
                        let delta = &q * &pivot_row[j];
                        rows[i][j] = &rows[i][j] - delta;
                    }
                }
                if !rows[i][col].is_zero() {
                    // Remainder-style step: one more subtraction puts |entry| < |pivot|.
                    continue;
                }
            }
            rows.retain(|r| r.iter().any(|x| !x.is_zero()));
            if rows.is_empty() {
                break;
            }
        }
        col += 1;
    }
    basis.extend(rows.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
    basis
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    // Round-to-nearest quotient keeps the Euclidean steps short.
    let two = BigInt::from(2);
    let (q, r) = num::Integer::div_rem(a, b);
    if (&r * &two).abs() > b.abs() {
        if (r.is_positive()) == (b.is_positive()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Basis of the saturated kernel `{x in Z^n : M x = 0}` for an integer matrix
/// `M` given by rows. Column reduction with a unimodular transform: columns of
/// the accumulated transform that end up annihilated by every row form a basis.
pub fn integer_kernel(rows: &[Vec<BigInt>], n: usize) -> Vec<Vec<BigInt>> {
    // u: n columns, each a vector in Z^n; m: the images of those columns.
    let mut u: Vec<Vec<BigInt>> = (0..n)
        .map(|j| (0..n).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut m: Vec<Vec<BigInt>> = (0..n)
        .map(|j| rows.iter().map(|r| r[j].clone()).collect())
        .collect();
    let rcount = rows.len();
    let mut locked = vec![false; n];
    for r in 0..rcount {
        loop {
            let mut idx: Vec<usize> =
                (0..n).filter(|&j| !locked[j] && !m[j][r].is_zero()).collect();
            if idx.len() <= 1 {
                if let Some(&j) = idx.first() {
                    locked[j] = true;
                }
                break;
            }
            idx.sort_by_key(|&j| m[j][r].abs());
            let pj = idx[0];
            for &j in &idx[1..] {
                let q = floor_div(&m[j][r], &m[pj][r]);
                if !q.is_zero() {
                    for k in 0..rcount {
                        let delta = &q * &m[pj][k];
                        m[j][k] = &m[j][k] - delta;
                    }
                    for k in 0..n {
                        let delta = &q * &u[pj][k];
                        u[j][k] = &u[j][k] - delta;
                    }
                }
            }
        }
    }
    (0..n)
        .filter(|&j| m[j].iter().all(|x| x.is_zero()))
        .map(|j| u[j].clone())
        .collect()
}

/// Scale rational rows to a common-denominator integer matrix; returns the
/// matrix together with the denominator used.
pub fn clear_denominators(rows: &[Vec<Rat>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let mut lcm = BigInt::one();
    for row in rows {
        for x in row {
            lcm = num::Integer::lcm(&lcm, x.denom());
        }
    }
    let scaled = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    (scaled, lcm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn surd_normalizes_radicand() {
        let s = Surd::new(rat(0, 1), rat(1, 1), 8); // √8 = 2√2
        assert_eq!(s.radicand(), 2);
        assert_eq!(s.surd_coeff(), &rat(2, 1));
        let t = Surd::new(rat(1, 1), rat(3, 1), 4); // 1 + 3√4 = 7
        assert!(t.is_rational());
        assert_eq!(t.rational_part(), &rat(7, 1));
    }

    #[test]
    fn surd_sign_with_cancellation() {
        // 3 - 2√2 > 0 (since 9 > 8), 1 - √2 < 0
        let p = Surd::new(rat(3, 1), rat(-2, 1), 2);
        assert_eq!(p.signum(), 1);
        let q = Surd::new(rat(1, 1), rat(-1, 1), 2);
        assert_eq!(q.signum(), -1);
    }

    #[test]
    fn surd_recip_roundtrip() {
        let s = Surd::new(rat(1, 2), rat(-3, 4), 5);
        let r = s.recip().unwrap();
        let prod = s * r;
        assert!(prod.is_rational());
        assert_eq!(prod.rational_part(), &rat(1, 1));
    }

    #[test]
    fn parse_exact_forms() {
        assert_eq!(parse_exact("3/4").unwrap(), Surd::from_rat(rat(3, 4)));
        assert_eq!(parse_exact("-2").unwrap(), Surd::from_int(-2));
        let r2 = parse_exact("\u{221a}2").unwrap();
        assert_eq!(r2.radicand(), 2);
        let x = parse_exact("1/2+3/4\u{221a}2").unwrap();
        assert_eq!(x.rational_part(), &rat(1, 2));
        assert_eq!(x.surd_coeff(), &rat(3, 4));
        let y = parse_exact("-2sqrt(5)").unwrap();
        assert_eq!(y.radicand(), 5);
        assert_eq!(y.surd_coeff(), &rat(-2, 1));
        assert!(parse_exact("1+sqrt(2)+sqrt(3)").is_err());
        assert!(parse_exact("").is_err());
    }

    #[test]
    fn parse_display_roundtrip() {
        for s in ["5/3", "-7/2+2\u{221a}3", "\u{221a}7", "0"] {
            let v = parse_exact(s).unwrap();
            let again = parse_exact(&v.to_string()).unwrap();
            assert_eq!(v, again);
        }
    }

    #[test]
    fn row_space_basis_gcd() {
        // rows (4), (6) in Z^1 generate (2)
        let b = row_space_basis(vec![vec![BigInt::from(4)], vec![BigInt::from(6)]]);
        assert_eq!(b.len(), 1);
        assert_eq!(b[0][0].clone().abs(), BigInt::from(2));
    }

    #[test]
    fn row_space_basis_rank() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(3)],
            vec![BigInt::from(1), BigInt::from(1), BigInt::from(5)],
        ];
        let b = row_space_basis(rows);
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn integer_kernel_simple() {
        // x + 2y - z = 0 over Z^3: rank-2 kernel containing (1, 0, 1), (0, 1, 2)
        let rows = vec![vec![BigInt::from(1), BigInt::from(2), BigInt::from(-1)]];
        let k = integer_kernel(&rows, 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s = &v[0] + BigInt::from(2) * &v[1] - &v[2];
            assert!(s.is_zero());
        }
    }

    #[test]
    fn integer_kernel_saturated() {
        // 2x = 2y over Z^2: saturated kernel is generated by (1,1), not (2,2).
        let rows = vec![vec![BigInt::from(2), BigInt::from(-2)]];
        let k = integer_kernel(&rows, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].clone().abs(), BigInt::one());
        assert_eq!(k[0][0], k[0][1]);
    }

    proptest! {
        #[test]
        fn surd_field_ops(a1 in -20i64..20, b1 in -20i64..20, a2 in -20i64..20, b2 in -20i64..20) {
            let x = Surd::new(rat(a1, 3), rat(b1, 2), 2);
            let y = Surd::new(rat(a2, 5), rat(b2, 7), 2);
            // to_f64 is a homomorphism up to rounding
            let sum = (x.clone() + y.clone()).to_f64();
            prop_assert!((sum - (x.to_f64() + y.to_f64())).abs() <= 1e-9 * (1.0 + sum.abs()));
            let prod = (x.clone() * y.clone()).to_f64();
            prop_assert!((prod - x.to_f64() * y.to_f64()).abs() <= 1e-9 * (1.0 + prod.abs()));
            // sign agrees with the float value away from zero
            let v = x.to_f64();
            if v.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if v > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn kernel_vectors_annihilate(rows in proptest::collection::vec(
            proptest::collection::vec(-5i64..=5, 4), 1..4))
        {
            let m: Vec<Vec<BigInt>> = rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let k = integer_kernel(&m, 4);
            for v in &k {
                for row in &m {
                    let dot: BigInt = row.iter().zip(v).map(|(a, b)| a * b).sum();
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
