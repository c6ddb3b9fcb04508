use num_complex::Complex64;

/// `t ↦ (a t + b) / (c t + d)`, applied to `conj(t)` when `conjugating`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
    pub conjugating: bool,
}

/// A fixed point of a non-conjugating map; `None` is the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusFixedPoint {
    pub location: Option<Complex64>,
    /// Derivative of the map at the fixed point.
    pub multiplier: Complex64,
}

impl MoebiusMap {
    pub fn identity() -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        MoebiusMap { a: one, b: zero, c: zero, d: one, conjugating: false }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// `tr² / det`, invariant under rescaling of the coefficients.
    pub fn normalized_trace_sq(&self) -> Complex64 {
        self.trace() * self.trace() / self.det()
    }

    pub fn apply(&self, t: Complex64) -> Complex64 {
        let s = if self.conjugating { t.conj() } else { t };
        (self.a * s + self.b) / (self.c * s + self.d)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &MoebiusMap) -> MoebiusMap {
        let (ia, ib, ic, id) = if self.conjugating {
            (inner.a.conj(), inner.b.conj(), inner.c.conj(), inner.d.conj())
        } else {
            (inner.a, inner.b, inner.c, inner.d)
        };
        MoebiusMap {
            a: self.a * ia + self.b * ic,
            b: self.a * ib + self.b * id,
            c: self.c * ia + self.d * ic,
            d: self.c * ib + self.d * id,
            conjugating: self.conjugating != inner.conjugating,
        }
    }

    /// Divides all coefficients by the largest magnitude among them.
    pub fn rescaled(&self) -> MoebiusMap {
        let m = [self.a, self.b, self.c, self.d].iter().map(|v| v.norm()).fold(0.0, f64::max);
        if m == 0.0 {
            return *self;
        }
        MoebiusMap { a: self.a / m, b: self.b / m, c: self.c / m, d: self.d / m, conjugating: self.conjugating }
    }

    /// Fixed points with their multipliers. Only meaningful for
    /// non-conjugating maps; returns an empty list otherwise.
    pub fn fixed_points(&self) -> Vec<MoebiusFixedPoint> {
        if self.conjugating {
            return Vec::new();
        }
        let m = self.rescaled();
        let det = m.det();
        let multiplier_at = |t: Complex64| det / ((m.c * t + m.d) * (m.c * t + m.d));
        // c t² + (d − a) t − b = 0
        if m.c.norm() <= 1e-15 {
            let mut out = vec![MoebiusFixedPoint { location: None, multiplier: m.d / m.a }];
            let denom = m.d - m.a;
            if denom.norm() > 1e-15 {
                let t = m.b / denom;
                out.push(MoebiusFixedPoint { location: Some(t), multiplier: multiplier_at(t) });
            }
            return out;
        }
        let p = m.d - m.a;
        let disc = (p * p + 4.0 * m.c * m.b).sqrt();
        // pick the larger-magnitude numerator to avoid cancellation
        let q = if (-p + disc).norm() >= (-p - disc).norm() { -p + disc } else { -p - disc };
        let t1 = q / (2.0 * m.c);
        let t2 = if q.norm() == 0.0 { t1 } else { -2.0 * m.b / q };
        let mut out = vec![MoebiusFixedPoint { location: Some(t1), multiplier: multiplier_at(t1) }];
        if (t1 - t2).norm() > 1e-14 * (1.0 + t1.norm()) {
            out.push(MoebiusFixedPoint { location: Some(t2), multiplier: multiplier_at(t2) });
        }
        out
    }

    /// The smaller modulus of the multiplier pair `(λ, 1/λ)` determined by
    /// `λ + 1/λ + 2 = tr²/det`.
    pub fn min_multiplier_modulus(&self) -> f64 {
        let s = self.normalized_trace_sq() - 2.0;
        let disc = (s * s - 4.0).sqrt();
        // the larger root without cancellation; the pair multiplies to one
        let big = if (s + disc).norm() >= (s - disc).norm() { (s + disc) / 2.0 } else { (s - disc) / 2.0 };
        1.0 / big.norm()
    }
}
