//! The ambient groups: the plane C (as R^2) and the Heisenberg group
//! `H = C x R` with product
//! `(z1,t1)(z2,t2) = (z1+z2, t1+t2 + Im(z1*conj(z2))/2)`,
//! together with its automorphism group `(H/Z(H)) ⋊ GL2(R)` and the dilation
//! family `phi_s(z,t) = (s z, s^2 t)`.
//!
//! Elements come in two modes: `f64` coordinates for analysis and exact
//! rational coordinates for algebraic identities. The commutator convention is
//! `[x, y] = y^{-1} x^{-1} y x`, the one under which the closed formula
//! `[x, y] = (0, Im(conj(z1) z2))` holds for the product above.

use crate::error::SubgroupError;
use crate::exact::Rat;
use num::complex::Complex64;
use num::Zero;
use std::ops::Mul;

/// Group element `(z, t)` of `H` in float mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisElement {
    pub z: Complex64,
    pub t: f64,
}

impl HeisElement {
    pub fn new(z: Complex64, t: f64) -> Self {
        HeisElement { z, t }
    }

    pub fn identity() -> Self {
        HeisElement::new(Complex64::zero(), 0.0)
    }

    pub fn inverse(self) -> Self {
        HeisElement::new(-self.z, -self.t)
    }

    /// `[x, y] = (0, Im(conj(z1) z2))`; always central.
    pub fn commutator(self, other: HeisElement) -> HeisElement {
        HeisElement::new(Complex64::zero(), (self.z.conj() * other.z).im)
    }

    /// Dilation `phi_s(z, t) = (s z, s^2 t)`, `s > 0`.
    pub fn dilate(self, s: f64) -> Result<Self, SubgroupError> {
        if !(s > 0.0) {
            return Err(SubgroupError::Degenerate(format!(
                "dilation parameter must be positive, got {s}"
            )));
        }
        Ok(HeisElement::new(s * self.z, s * s * self.t))
    }

    /// Euclidean norm of the coordinates `(Re z, Im z, t)`.
    pub fn norm(self) -> f64 {
        (self.z.norm_sqr() + self.t * self.t).sqrt()
    }
}

impl Mul for HeisElement {
    type Output = HeisElement;
    fn mul(self, rhs: HeisElement) -> HeisElement {
        HeisElement::new(
            self.z + rhs.z,
            self.t + rhs.t + 0.5 * (self.z * rhs.z.conj()).im,
        )
    }
}

/// Group element of `H` with exact rational coordinates `(x + iy, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeisElementExact {
    pub x: Rat,
    pub y: Rat,
    pub t: Rat,
}

impl HeisElementExact {
    pub fn new(x: Rat, y: Rat, t: Rat) -> Self {
        HeisElementExact { x, y, t }
    }

    pub fn identity() -> Self {
        HeisElementExact::new(Rat::zero(), Rat::zero(), Rat::zero())
    }

    pub fn mul(&self, rhs: &HeisElementExact) -> HeisElementExact {
        // Im(z1 * conj(z2)) = y1 x2 - x1 y2
        let twist = (&self.y * &rhs.x - &self.x * &rhs.y) / Rat::from(num::BigInt::from(2));
        HeisElementExact::new(
            &self.x + &rhs.x,
            &self.y + &rhs.y,
            &self.t + &rhs.t + twist,
        )
    }

    pub fn inverse(&self) -> HeisElementExact {
        HeisElementExact::new(-self.x.clone(), -self.y.clone(), -self.t.clone())
    }

    /// Closed commutator formula `(0, Im(conj(z1) z2))`.
    pub fn commutator(&self, rhs: &HeisElementExact) -> HeisElementExact {
        // Im(conj(z1) z2) = x1 y2 - y1 x2
        HeisElementExact::new(
            Rat::zero(),
            Rat::zero(),
            &self.x * &rhs.y - &self.y * &rhs.x,
        )
    }

    /// The word `y^{-1} x^{-1} y x`, evaluated with the group product.
    pub fn commutator_word(&self, rhs: &HeisElementExact) -> HeisElementExact {
        rhs.inverse().mul(&self.inverse()).mul(rhs).mul(self)
    }

    pub fn to_float(&self) -> HeisElement {
        use num::ToPrimitive;
        HeisElement::new(
            Complex64::new(self.x.to_f64().unwrap(), self.y.to_f64().unwrap()),
            self.t.to_f64().unwrap(),
        )
    }
}

/// Automorphism of `H`: an inner part `w in H/Z(H) = C` followed by the
/// `GL2(R)` part acting as `(x+iy, t) -> ((ax+by) + i(cx+dy), det(M) t)`.
///
/// The central coordinate scales by `det(M)` (exponent one); that is the only
/// exponent compatible with the group law and with `phi_s = diag(s, s)`
/// scaling `t` by `s^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisAutomorphism {
    pub matrix: [[f64; 2]; 2],
    pub inner: Complex64,
}

impl HeisAutomorphism {
    pub fn new(matrix: [[f64; 2]; 2], inner: Complex64) -> Result<Self, SubgroupError> {
        let a = HeisAutomorphism { matrix, inner };
        if a.det().abs() < 1e-300 {
            return Err(SubgroupError::Degenerate(
                "automorphism matrix is singular".into(),
            ));
        }
        Ok(a)
    }

    pub fn identity() -> Self {
        HeisAutomorphism { matrix: [[1.0, 0.0], [0.0, 1.0]], inner: Complex64::zero() }
    }

    /// The dilation `phi_s`, i.e. the matrix `diag(s, s)` with trivial inner part.
    pub fn dilation(s: f64) -> Result<Self, SubgroupError> {
        if !(s > 0.0) {
            return Err(SubgroupError::Degenerate(format!(
                "dilation parameter must be positive, got {s}"
            )));
        }
        HeisAutomorphism::new([[s, 0.0], [0.0, s]], Complex64::zero())
    }

    pub fn det(&self) -> f64 {
        self.matrix[0][0] * self.matrix[1][1] - self.matrix[0][1] * self.matrix[1][0]
    }

    /// Matrix action on the plane `H/Z(H)`.
    pub fn apply_plane(&self, z: Complex64) -> Complex64 {
        let [[a, b], [c, d]] = self.matrix;
        Complex64::new(a * z.re + b * z.im, c * z.re + d * z.im)
    }

    pub fn apply(&self, x: HeisElement) -> HeisElement {
        let mz = self.apply_plane(x.z);
        let t = self.det() * x.t;
        // Conjugation by (w, 0): (z, t) -> (z, t + Im(w conj z)).
        HeisElement::new(mz, t + (self.inner * mz.conj()).im)
    }

    /// Semi-direct product law: `(w1, M1)(w2, M2) = (w1 + M1 w2, M1 M2)`.
    pub fn compose(&self, other: &HeisAutomorphism) -> HeisAutomorphism {
        let m1 = self.matrix;
        let m2 = other.matrix;
        let mut m = [[0.0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                m[i][j] = m1[i][0] * m2[0][j] + m1[i][1] * m2[1][j];
            }
        }
        HeisAutomorphism { matrix: m, inner: self.inner + self.apply_plane(other.inner) }
    }
}

/// Exact-mode automorphism for algebraic property checks.
#[derive(Debug, Clone, PartialEq)]
pub struct HeisAutomorphismExact {
    pub matrix: [[Rat; 2]; 2],
    pub inner: (Rat, Rat),
}

impl HeisAutomorphismExact {
    pub fn det(&self) -> Rat {
        &self.matrix[0][0] * &self.matrix[1][1] - &self.matrix[0][1] * &self.matrix[1][0]
    }

    pub fn apply(&self, x: &HeisElementExact) -> HeisElementExact {
        let mx = &self.matrix[0][0] * &x.x + &self.matrix[0][1] * &x.y;
        let my = &self.matrix[1][0] * &x.x + &self.matrix[1][1] * &x.y;
        let t = self.det() * &x.t;
        // Im(w conj z) = wy*zx - wx*zy with z = M(x).
        let twist = &self.inner.1 * &mx - &self.inner.0 * &my;
        HeisElementExact::new(mx, my, t + twist)
    }
}
