//! Formal symmetrised products of Gaussian-polynomial functions.

use super::gauss::GaussPolyFn;

/// `Σ c · f₁⊙⋯⊙fₙ`; the empty product is the unit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor {
    dim: usize,
    terms: Vec<(f64, Vec<GaussPolyFn>)>,
}

impl SymTensor {
    pub fn zero(dim: usize) -> Self {
        SymTensor {
            dim,
            terms: Vec::new(),
        }
    }

    pub fn constant(dim: usize, c: f64) -> Self {
        let mut out = Self::zero(dim);
        if c != 0.0 {
            out.terms.push((c, Vec::new()));
        }
        out
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, 1.0)
    }

    /// The single factor `f`.
    pub fn factor(f: GaussPolyFn) -> Self {
        SymTensor {
            dim: f.dim(),
            terms: vec![(1.0, vec![f])],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[(f64, Vec<GaussPolyFn>)] {
        &self.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, c: f64) -> Self {
        SymTensor {
            dim: self.dim,
            terms: if c == 0.0 {
                Vec::new()
            } else {
                self.terms
                    .iter()
                    .map(|(v, fs)| (v * c, fs.clone()))
                    .collect()
            },
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.dim);
        for (a, fa) in &self.terms {
            for (b, fb) in &other.terms {
                let mut fs = fa.clone();
                fs.extend(fb.iter().cloned());
                out.terms.push((a * b, fs));
            }
        }
        out
    }

    /// `Ẽ(F)(0)`: on deterministic processes each factor contributes its value at the origin.
    pub fn expectation(&self) -> f64 {
        let origin = vec![0.0; self.dim];
        self.terms
            .iter()
            .map(|(c, fs)| c * fs.iter().map(|f| f.eval(&origin)).product::<f64>())
            .sum()
    }

    /// `ev₀∘Ẽ` as a map into constants.
    pub fn project(&self) -> Self {
        Self::constant(self.dim, self.expectation())
    }

    /// `Σ c · Π f_i(y)`, collapsing the symmetrised product to a pointwise one.
    pub fn eval(&self, y: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(c, fs)| c * fs.iter().map(|f| f.eval(y)).product::<f64>())
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::poly::Poly;

    #[test]
    fn expectation_is_multiplicative() {
        let f = GaussPolyFn::from_poly(Poly::var(1, 0).add(&Poly::constant(1, 2.0)));
        let g = GaussPolyFn::constant(1, 3.0);
        let t = SymTensor::factor(f.clone()).mul(&SymTensor::factor(g));
        assert_eq!(t.expectation(), 6.0);
        assert_eq!(SymTensor::constant(1, 4.5).expectation(), 4.5);
        let centred = SymTensor::factor(f).sub(&SymTensor::constant(1, 2.0));
        assert_eq!(centred.expectation(), 0.0);
    }
}
