//! Geometric support descriptions returned by the point enumerators.
//!
//! Discrete strata enumerate to points; strata with continuous directions
//! enumerate to segments, flat rectangular patches, or a solid box. Pieces may
//! overhang the requested ball; consumers prune by norm.

use num::complex::Complex64;

use crate::ambient::HeisElement;

/// Ambient points the metric engine can do vector geometry on.
pub trait SpacePoint: Copy {
    fn norm(self) -> f64;
    fn add(self, other: Self) -> Self;
    fn sub(self, other: Self) -> Self;
    fn scale(self, f: f64) -> Self;
    /// Coordinate axes of the ambient space (used to split box pieces).
    fn axes() -> Vec<Self>;
    /// Flat coordinates for reports.
    fn coords(self) -> Vec<f64>;
}

impl SpacePoint for f64 {
    fn norm(self) -> f64 {
        self.abs()
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn axes() -> Vec<Self> {
        vec![1.0]
    }
    fn coords(self) -> Vec<f64> {
        vec![self]
    }
}

impl SpacePoint for Complex64 {
    fn norm(self) -> f64 {
        Complex64::norm(self)
    }
    fn add(self, other: Self) -> Self {
        self + other
    }
    fn sub(self, other: Self) -> Self {
        self - other
    }
    fn scale(self, f: f64) -> Self {
        self * f
    }
    fn axes() -> Vec<Self> {
        vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
    }
    fn coords(self) -> Vec<f64> {
        vec![self.re, self.im]
    }
}

impl SpacePoint for HeisElement {
    fn norm(self) -> f64 {
        HeisElement::norm(self)
    }
    fn add(self, other: Self) -> Self {
        HeisElement::new(self.z + other.z, self.t + other.t)
    }
    fn sub(self, other: Self) -> Self {
        HeisElement::new(self.z - other.z, self.t - other.t)
    }
    fn scale(self, f: f64) -> Self {
        HeisElement::new(self.z * f, self.t * f)
    }
    fn axes() -> Vec<Self> {
        vec![
            HeisElement::new(Complex64::new(1.0, 0.0), 0.0),
            HeisElement::new(Complex64::new(0.0, 1.0), 0.0),
            HeisElement::new(Complex64::new(0.0, 0.0), 1.0),
        ]
    }
    fn coords(self) -> Vec<f64> {
        vec![self.z.re, self.z.im, self.t]
    }
}

/// One flat piece of a support.
#[derive(Debug, Clone, Copy)]
pub enum Piece<P> {
    Point(P),
    /// Straight segment between two points.
    Segment { a: P, b: P },
    /// Rectangle `center + s*axis1 + t*axis2`, `|s| <= half1`, `|t| <= half2`;
    /// axes are unit length and orthogonal.
    Patch {
        center: P,
        axis1: P,
        axis2: P,
        half1: f64,
        half2: f64,
    },
    /// Solid coordinate box `{sum c_i * e_i : |c_i| <= half}` at the origin.
    Box3 { half: f64 },
}

/// Support of a closed set inside (a superset of) a ball.
#[derive(Debug, Clone, Default)]
pub struct Support<P> {
    pub pieces: Vec<Piece<P>>,
}

impl<P> Support<P> {
    pub fn new() -> Self {
        Support { pieces: Vec::new() }
    }

    pub fn point(mut self, p: P) -> Self {
        self.pieces.push(Piece::Point(p));
        self
    }

    pub fn push(&mut self, piece: Piece<P>) {
        self.pieces.push(piece);
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// All point pieces (convenient for tests on discrete strata).
    pub fn points(&self) -> Vec<P>
    where
        P: Copy,
    {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                Piece::Point(x) => Some(*x),
                _ => None,
            })
            .collect()
    }
}
