//! Signed inner-product space, the involutive vector inverse and extended points.
//!
//! The signature is stored in diagonal form: coordinate `i` of the conjugate
//! `Z*` is `signs[i] * Z[i]`. The inverse is `1/Z = Z* / |Z|^2`, with the
//! zero vector and the point at infinity exchanged.

use std::ops::{Deref, DerefMut};

use smallvec::SmallVec;

use crate::error::JvfError;

/// Coordinates of a finite point. Inline storage covers the common small dimensions.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Vector(SmallVec<[f64; 6]>);

impl Vector {
    pub fn zeros(dim: usize) -> Self {
        Vector(SmallVec::from_elem(0.0, dim))
    }

    pub fn from_slice(coords: &[f64]) -> Self {
        Vector(SmallVec::from_slice(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        self.iter().zip(other.iter()).map(|(a, b)| a * b).sum()
    }

    pub fn norm_sq(&self) -> f64 {
        self.dot(self)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|&c| c == 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Vector {
        Vector(self.iter().map(|c| c * factor).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn distance(&self, other: &Vector) -> f64 {
        self.iter().zip(other.iter()).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt()
    }
}

impl Deref for Vector {
    type Target = [f64];
    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }
}

impl From<Vec<f64>> for Vector {
    fn from(v: Vec<f64>) -> Self {
        Vector(SmallVec::from_vec(v))
    }
}

impl From<&[f64]> for Vector {
    fn from(v: &[f64]) -> Self {
        Vector::from_slice(v)
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(v: [f64; N]) -> Self {
        Vector::from_slice(&v)
    }
}

impl FromIterator<f64> for Vector {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

/// A point of the one-point compactification of the vector space.
#[derive(Clone, Debug, PartialEq)]
pub enum ExtVector {
    Finite(Vector),
    Infinity,
}

impl ExtVector {
    pub fn zeros(dim: usize) -> Self {
        ExtVector::Finite(Vector::zeros(dim))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtVector::Infinity)
    }

    pub fn finite(&self) -> Option<&Vector> {
        match self {
            ExtVector::Finite(v) => Some(v),
            ExtVector::Infinity => None,
        }
    }

    pub fn into_finite(self) -> Option<Vector> {
        match self {
            ExtVector::Finite(v) => Some(v),
            ExtVector::Infinity => None,
        }
    }

    /// `β·V`; infinity stays infinity.
    pub fn scaled(&self, factor: f64) -> ExtVector {
        match self {
            ExtVector::Finite(v) => ExtVector::Finite(v.scaled(factor)),
            ExtVector::Infinity => ExtVector::Infinity,
        }
    }

    /// `base − V`; subtracting infinity gives infinity.
    pub fn subtracted_from(&self, base: &Vector) -> ExtVector {
        match self {
            ExtVector::Finite(v) => ExtVector::Finite(base.sub(v)),
            ExtVector::Infinity => ExtVector::Infinity,
        }
    }

    /// Euclidean norm, `+inf` at infinity.
    pub fn norm(&self) -> f64 {
        match self {
            ExtVector::Finite(v) => v.norm(),
            ExtVector::Infinity => f64::INFINITY,
        }
    }
}

impl From<Vector> for ExtVector {
    fn from(v: Vector) -> Self {
        ExtVector::Finite(v)
    }
}

/// Diagonal signature of the self-inverse orthogonal map together with the
/// embedding direction `y`, a canonical basis vector of the negative eigenspace.
#[derive(Clone, Debug, PartialEq)]
pub struct SignatureSpace {
    signs: Vec<f64>,
    y_index: usize,
}

impl SignatureSpace {
    /// Builds a space from a list of `±1` signs.
    pub fn new(signs: &[i8], y_index: usize) -> Result<Self, JvfError> {
        if signs.is_empty() {
            return Err(JvfError::InvalidSignature("empty signature".into()));
        }
        if let Some(bad) = signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(JvfError::InvalidSignature(format!("sign {bad} is not +1 or -1")));
        }
        if !signs.contains(&1) || !signs.contains(&-1) {
            return Err(JvfError::InvalidSignature("signature needs at least one +1 and one -1".into()));
        }
        if y_index >= signs.len() {
            return Err(JvfError::InvalidSignature(format!(
                "y index {y_index} out of range for dimension {}",
                signs.len()
            )));
        }
        if signs[y_index] != -1 {
            return Err(JvfError::InvalidSignature(format!("y index {y_index} is not in the negative eigenspace")));
        }
        Ok(SignatureSpace { signs: signs.iter().map(|&s| f64::from(s)).collect(), y_index })
    }

    /// Three dimensions with signature `(+1, +1, -1)` and `y` the third axis.
    pub fn standard_3d() -> Self {
        SignatureSpace::new(&[1, 1, -1], 2).expect("valid signature")
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn y_index(&self) -> usize {
        self.y_index
    }

    pub fn sign(&self, i: usize) -> f64 {
        self.signs[i]
    }

    pub fn signs(&self) -> impl Iterator<Item = i8> + '_ {
        self.signs.iter().map(|&s| s as i8)
    }

    /// The unit embedding vector `y`.
    pub fn y_vector(&self) -> Vector {
        let mut v = Vector::zeros(self.dim());
        v[self.y_index] = 1.0;
        v
    }

    pub fn conjugate_vec(&self, z: &Vector) -> Vector {
        z.iter().zip(&self.signs).map(|(c, s)| c * s).collect()
    }

    pub fn conjugate(&self, z: &ExtVector) -> ExtVector {
        match z {
            ExtVector::Finite(v) => ExtVector::Finite(self.conjugate_vec(v)),
            ExtVector::Infinity => ExtVector::Infinity,
        }
    }

    /// Inverse of a finite vector; only the exact zero vector maps to infinity.
    pub fn invert_vec(&self, z: &Vector) -> ExtVector {
        if z.is_zero() {
            return ExtVector::Infinity;
        }
        let inv = 1.0 / z.norm_sq();
        ExtVector::Finite(z.iter().zip(&self.signs).map(|(c, s)| c * s * inv).collect())
    }

    pub fn invert(&self, z: &ExtVector) -> ExtVector {
        match z {
            ExtVector::Finite(v) => self.invert_vec(v),
            ExtVector::Infinity => ExtVector::zeros(self.dim()),
        }
    }

    /// In-place `v ← scale · 1/v`. Returns `false` (leaving `v` untouched)
    /// when `v` is exactly zero, i.e. the result is infinity.
    pub(crate) fn invert_scaled_in_place(&self, v: &mut [f64], scale: f64) -> bool {
        let n2: f64 = v.iter().map(|c| c * c).sum();
        if n2 == 0.0 && v.iter().all(|&c| c == 0.0) {
            return false;
        }
        let k = scale / n2;
        for (c, s) in v.iter_mut().zip(&self.signs) {
            *c *= s * k;
        }
        true
    }

    pub fn y_component(&self, z: &Vector) -> f64 {
        z[self.y_index]
    }

    pub fn check_dim(&self, z: &Vector) -> Result<(), JvfError> {
        if z.dim() != self.dim() {
            return Err(JvfError::DimensionMismatch { expected: self.dim(), found: z.dim() });
        }
        Ok(())
    }
}
