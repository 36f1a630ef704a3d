//! Target algebras for characters, with their Rota–Baxter projections.

pub mod gauss;
pub mod laurent;
pub mod osc;
pub mod poly;
pub mod sym;

pub use gauss::GaussPolyFn;
pub use laurent::LaurentSeries;
pub use osc::OscillatoryFn;
pub use poly::Poly;
pub use sym::SymTensor;

use std::fmt::Debug;

/// Commutative unital algebra over the reals, as used by characters.
pub trait Algebra: Clone + Debug {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, c: f64) -> Self;
    /// Unit of the algebra `self` lives in.
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }
}

impl Algebra for f64 {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, c: f64) -> Self {
        self * c
    }
    fn one_like(&self) -> Self {
        1.0
    }
    fn zero_like(&self) -> Self {
        0.0
    }
}

macro_rules! forward_algebra {
    ($t:ty, $size:ident) => {
        impl Algebra for $t {
            fn add(&self, other: &Self) -> Self {
                <$t>::add(self, other)
            }
            fn mul(&self, other: &Self) -> Self {
                <$t>::mul(self, other)
            }
            fn scale(&self, c: f64) -> Self {
                <$t>::scale(self, c)
            }
            fn one_like(&self) -> Self {
                <$t>::one(self.$size())
            }
            fn zero_like(&self) -> Self {
                <$t>::zero(self.$size())
            }
        }
    };
}

forward_algebra!(LaurentSeries, order);
forward_algebra!(GaussPolyFn, dim);
forward_algebra!(OscillatoryFn, nfreq);
forward_algebra!(SymTensor, dim);
forward_algebra!(Poly, nvars);

/// Left-hand minus right-hand side of the weight −1 Rota–Baxter identity
/// `R(f)R(g) = R(R(f)g + fR(g)) − R(fg)`.
pub fn rota_baxter_defect<A: Algebra>(r: &dyn Fn(&A) -> A, f: &A, g: &A) -> A {
    let lhs = r(f).mul(&r(g));
    let rhs = r(&r(f).mul(g).add(&f.mul(&r(g)))).sub(&r(&f.mul(g)));
    lhs.sub(&rhs)
}
