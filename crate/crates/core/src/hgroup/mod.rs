//! The class-2 nilpotent `p`-group of exponent `p³` attached to an H-algebra.
//!
//! Elements are normal forms `g_1^α_1 … g_n^α_n · a` with `α ∈ (Z/p³Z)ⁿ` and
//! `a` in the central module of the algebra. Writing `b_k` for the algebra
//! basis vector sitting at generator position `k`, the product is
//!
//! ```text
//! (α, a) · (β, b) = (α + β, a + b + Σ_{k<l} α_l β_k [b_l, b_k])
//! ```
//!
//! so that `[g_k, g_l] = [b_k, b_l]` and in particular `[g_i, g_j] = a_ij`
//! for the identity labelling.

mod presentation;
mod small;
mod transport;

use num_bigint::BigUint;
use rand::Rng;
use thiserror::Error;

use crate::graphs::{Graph, VertexBijection};
use crate::halgebra::{build_h_algebra, AlgebraError, AlgebraKind, HAlgebra};
use crate::modarith::{MixedVector, Prime, Profile};

pub use presentation::{Presentation, PresentationGen, Relator};
pub use small::{group_iso_small, GROUP_ISO_MAX_ORDER};
pub use transport::{f2_map, transport_iso, GroupIsoWitness};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HGroupError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("H-groups are built from Lie-kind algebras")]
    NotLie,
    #[error("generator labelling has {got} entries, expected {expected}")]
    LabellingSize { expected: usize, got: usize },
    #[error("element does not belong to this group")]
    ForeignElement,
    #[error("not an isomorphism between the base algebras")]
    InvalidIso,
}

/// Normal form `g_1^α_1 … g_n^α_n · a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HGroupElement {
    pub alpha: MixedVector,
    pub central: MixedVector,
}

impl HGroupElement {
    pub fn is_central(&self) -> bool {
        self.alpha.is_zero()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HGroup {
    base: HAlgebra,
    /// `chi[i]` is the generator position of vertex generator `v_i`.
    chi: VertexBijection,
    alpha_profile: Profile,
    /// `brackets[k * n + l] = [b_k, b_l]` in generator-position order.
    brackets: Vec<MixedVector>,
}

impl HGroup {
    pub fn new(base: HAlgebra, chi: VertexBijection) -> Result<Self, HGroupError> {
        if base.kind() != AlgebraKind::Lie {
            return Err(HGroupError::NotLie);
        }
        let n = base.n();
        if chi.len() != n {
            return Err(HGroupError::LabellingSize { expected: n, got: chi.len() });
        }
        let at = chi.inverse();
        let brackets = (0..n * n).map(|x| base.table().product(at.apply(x / n), at.apply(x % n)).clone()).collect();
        let alpha_profile = Profile::uniform_cube(base.prime(), n);
        Ok(HGroup { base, chi, alpha_profile, brackets })
    }

    /// The group of the H-algebra of `g` with the identity labelling.
    pub fn from_graph(g: &Graph, p: Prime) -> Self {
        Self::new(build_h_algebra(g, p), VertexBijection::identity(g.n())).expect("lie kind, matching size")
    }

    pub fn base(&self) -> &HAlgebra {
        &self.base
    }

    pub fn chi(&self) -> &VertexBijection {
        &self.chi
    }

    pub fn prime(&self) -> Prime {
        self.base.prime()
    }

    /// Number of generators `g_k`.
    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn central_profile(&self) -> &Profile {
        self.base.table().central_profile()
    }

    /// `[b_k, b_l]` for generator positions `k`, `l`.
    pub fn bracket(&self, k: usize, l: usize) -> &MixedVector {
        &self.brackets[k * self.n() + l]
    }

    pub fn contains(&self, x: &HGroupElement) -> bool {
        x.alpha.profile() == &self.alpha_profile && x.central.profile() == self.central_profile()
    }

    pub fn element(&self, alpha: &[i64], central: &[i64]) -> Result<HGroupElement, HGroupError> {
        let alpha = MixedVector::from_i64(&self.alpha_profile, alpha).map_err(AlgebraError::from)?;
        let central = MixedVector::from_i64(self.central_profile(), central).map_err(AlgebraError::from)?;
        Ok(HGroupElement { alpha, central })
    }

    pub fn identity(&self) -> HGroupElement {
        HGroupElement {
            alpha: MixedVector::zero(&self.alpha_profile),
            central: MixedVector::zero(self.central_profile()),
        }
    }

    /// `g_k`.
    pub fn generator(&self, k: usize) -> HGroupElement {
        HGroupElement {
            alpha: MixedVector::unit(&self.alpha_profile, k),
            central: MixedVector::zero(self.central_profile()),
        }
    }

    /// `g_k^e`; a single generator power carries no correction term.
    pub fn generator_power(&self, k: usize, e: u64) -> HGroupElement {
        HGroupElement {
            alpha: MixedVector::unit(&self.alpha_profile, k).scale(e),
            central: MixedVector::zero(self.central_profile()),
        }
    }

    /// The central generator `a_e` for pair index `e`.
    pub fn central_generator(&self, e: usize) -> HGroupElement {
        HGroupElement {
            alpha: MixedVector::zero(&self.alpha_profile),
            central: MixedVector::unit(self.central_profile(), e),
        }
    }

    pub fn central_element(&self, central: MixedVector) -> HGroupElement {
        HGroupElement { alpha: MixedVector::zero(&self.alpha_profile), central }
    }

    pub fn random_element(&self, rng: &mut impl Rng) -> HGroupElement {
        let alpha: Vec<u64> = self.alpha_profile.moduli().iter().map(|&m| rng.gen_range(0..m)).collect();
        let central: Vec<u64> = self.central_profile().moduli().iter().map(|&m| rng.gen_range(0..m)).collect();
        HGroupElement {
            alpha: MixedVector::from_values(&self.alpha_profile, &alpha).expect("profile length"),
            central: MixedVector::from_values(self.central_profile(), &central).expect("profile length"),
        }
    }

    /// `Σ_{k<l} α_l β_k [b_l, b_k]`.
    fn correction(&self, alpha: &MixedVector, beta: &MixedVector) -> MixedVector {
        let n = self.n();
        let mut out = MixedVector::zero(self.central_profile());
        for l in 0..n {
            let al = alpha.get(l);
            if al == 0 {
                continue;
            }
            for k in 0..l {
                let bk = beta.get(k);
                if bk != 0 {
                    out.add_scaled_unchecked(al * bk, &self.brackets[l * n + k]);
                }
            }
        }
        out
    }

    fn mul(&self, x: &HGroupElement, y: &HGroupElement) -> HGroupElement {
        let mut alpha = x.alpha.clone();
        alpha.add_assign_unchecked(&y.alpha);
        let mut central = x.central.clone();
        central.add_assign_unchecked(&y.central);
        central.add_assign_unchecked(&self.correction(&x.alpha, &y.alpha));
        HGroupElement { alpha, central }
    }

    fn inv(&self, x: &HGroupElement) -> HGroupElement {
        // (α, a)(−α, −a + c(α, α)) has central part c(α, α) + c(α, −α) = 0
        let mut central = x.central.neg();
        central.add_assign_unchecked(&self.correction(&x.alpha, &x.alpha));
        HGroupElement { alpha: x.alpha.neg(), central }
    }

    fn check(&self, x: &HGroupElement) -> Result<(), HGroupError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(HGroupError::ForeignElement)
        }
    }

    pub fn group_mul(&self, x: &HGroupElement, y: &HGroupElement) -> Result<HGroupElement, HGroupError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn group_inv(&self, x: &HGroupElement) -> Result<HGroupElement, HGroupError> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    /// `x^e` by repeated squaring.
    pub fn pow(&self, x: &HGroupElement, mut e: u64) -> Result<HGroupElement, HGroupError> {
        self.check(x)?;
        let mut acc = self.identity();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `x⁻¹ y⁻¹ x y`.
    pub fn commutator(&self, x: &HGroupElement, y: &HGroupElement) -> Result<HGroupElement, HGroupError> {
        self.check(x)?;
        self.check(y)?;
        let left = self.mul(&self.inv(x), &self.inv(y));
        Ok(self.mul(&left, &self.mul(x, y)))
    }

    /// Least `k ≥ 1` with `x^k = e`; always a power of `p` dividing `p³`.
    pub fn element_order(&self, x: &HGroupElement) -> Result<u64, HGroupError> {
        let p = self.prime().get();
        let mut k = 1;
        let mut y = x.clone();
        self.check(x)?;
        while y != self.identity() {
            y = self.pow(&y, p)?;
            k *= p;
        }
        Ok(k)
    }

    /// `p^{3n} · p^{|E|} · p^{2(l − |E|)}`.
    pub fn group_order(&self) -> BigUint {
        let exp = 3 * self.n() as u32 + self.central_profile().order_exponent();
        BigUint::from(self.prime().get()).pow(exp)
    }

    /// Order of the central `a`-span, `p^{|E|} · p^{2(l − |E|)}`.
    pub fn central_order(&self) -> BigUint {
        BigUint::from(self.prime().get()).pow(self.central_profile().order_exponent())
    }

    /// The algebra `U ⊕ Z` read off the group: generators `u_k` at the
    /// generator positions, `u_k × u_l = [g_k, g_l]`, same central profile.
    pub fn reconstruct_algebra(&self) -> crate::halgebra::StructureTable {
        transport::reconstruct(self)
    }

    pub fn export_presentation(&self) -> Presentation {
        Presentation::of(self)
    }
}
