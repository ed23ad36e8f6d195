//! Non-twisted affinization: δ, α₀ = δ − θ, root enumeration to a depth,
//! base changes (even and odd reflections) and base validity checking.

use crate::error::{Error, Result};
use crate::finite::{parity_from_coeffs, FiniteRootSystem};
use crate::linalg;
use crate::root::{Parity, Root};
use crate::scalar::{Rat, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootClass {
    RealEven,
    RealOdd,
    Imaginary,
    NotARoot,
}

/// An ordered affine base candidate with derived parities.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Base {
    pub roots: Vec<Root>,
    pub parities: Vec<Parity>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AffineRootSystem {
    pub finite: FiniteRootSystem,
    /// Dimension assigned to each kδ root space; defaults to rank(ġ).
    pub imaginary_multiplicity: usize,
}

/// Affinize a finite system; the distinguished base is {α₀ = δ−θ} ∪ π̇.
pub fn affinize(finite: FiniteRootSystem) -> AffineRootSystem {
    let mult = finite.rank;
    AffineRootSystem {
        finite,
        imaginary_multiplicity: mult,
    }
}

impl AffineRootSystem {
    pub fn rank(&self) -> usize {
        self.finite.rank
    }

    /// Affine coordinate dimension: |π̇| + the δ axis.
    pub fn dim(&self) -> usize {
        self.finite.rank + 1
    }

    pub fn with_imaginary_multiplicity(mut self, mult: usize) -> Self {
        self.imaginary_multiplicity = mult;
        self
    }

    pub fn delta(&self) -> Root {
        Root::imaginary(self.rank(), 1)
    }

    pub fn alpha0(&self) -> Root {
        self.finite.theta().neg().add_delta(1)
    }

    /// Distinguished base: α₀ first, then the finite base in diagram order.
    pub fn distinguished_base(&self) -> Base {
        let mut roots = vec![self.alpha0()];
        for i in 0..self.rank() {
            let mut c = vec![0; self.rank()];
            c[i] = 1;
            roots.push(Root::finite(c));
        }
        let parities = roots.iter().map(|r| self.parity(r)).collect();
        Base { roots, parities }
    }

    /// Parity of any base-span vector: δ contributes even parity.
    pub fn parity(&self, v: &Root) -> Parity {
        parity_from_coeffs(v, &self.finite.parities)
    }

    /// Form on affine vectors: δ is isotropic and orthogonal to everything,
    /// so only finite parts contribute.
    pub fn form(&self, x: &Root, y: &Root) -> Result<Scalar> {
        self.finite.form(&x.finite_part(), &y.finite_part())
    }

    pub fn classify_vector(&self, v: &Root) -> RootClass {
        if v.rank() != self.rank() {
            return RootClass::NotARoot;
        }
        if v.is_imaginary_vector() {
            return RootClass::Imaginary;
        }
        if self.finite.is_root(&v.finite_part()) {
            match self.parity(v) {
                Parity::Even => RootClass::RealEven,
                Parity::Odd => RootClass::RealOdd,
            }
        } else {
            RootClass::NotARoot
        }
    }

    pub fn is_root(&self, v: &Root) -> bool {
        self.classify_vector(v) != RootClass::NotARoot
    }

    /// Positive w.r.t. the distinguished base: Δ₊ = {δ-coeff > 0} ∪ Δ̇₊.
    pub fn is_positive(&self, v: &Root) -> bool {
        v.delta > 0 || (v.delta == 0 && v.is_nonneg() && !v.is_zero())
    }

    /// All roots with |δ-coefficient| ≤ depth matching the filters,
    /// in deterministic (δ, coeffs) order.
    pub fn roots_up_to_depth(&self, depth: i64, filters: RootFilter) -> Vec<Root> {
        let mut out = Vec::new();
        for k in -depth..=depth {
            if filters.real != Some(false) {
                for fin in self.finite.positive_roots.iter() {
                    for root in [fin.clone().add_delta(k), fin.neg().add_delta(k)] {
                        if self.matches(&root, &filters) {
                            out.push(root);
                        }
                    }
                }
            }
            if k != 0 && filters.real != Some(true) {
                let im = Root::imaginary(self.rank(), k);
                if self.matches(&im, &filters) {
                    out.push(im);
                }
            }
        }
        out.sort();
        out
    }

    fn matches(&self, root: &Root, f: &RootFilter) -> bool {
        if let Some(p) = f.parity {
            if self.parity(root) != p {
                return false;
            }
        }
        if let Some(pos) = f.positive {
            if self.is_positive(root) != pos {
                return false;
            }
        }
        if let Some(real) = f.real {
            if root.is_imaginary_vector() == real {
                return false;
            }
        }
        true
    }

    /// δ expressed in the given base; unique exact expansion.
    /// The base is sanity-checked with a shallow is_base pass.
    pub fn delta_expansion(&self, base: &Base) -> Result<Vec<i64>> {
        if !self.is_base(base, 2) {
            return Err(Error::InvalidBase(
                "candidate fails is_base at depth 2".into(),
            ));
        }
        let cols: Vec<Vec<i64>> = base.roots.iter().map(|r| r.as_vec()).collect();
        linalg::solve_columns_int(&cols, &self.delta().as_vec())
            .ok_or_else(|| Error::InvalidBase("δ has no integer expansion in the base".into()))
    }

    /// Reflection r_α(β) = β − 2(β,α)/(α,α)·α at an even non-isotropic base
    /// root, applied to every base root.
    pub fn even_reflection(&self, base: &Base, i: usize) -> Result<Base> {
        let alpha = base
            .roots
            .get(i)
            .ok_or(Error::NotEvenReflectable(i))?
            .clone();
        let norm = self.form(&alpha, &alpha)?;
        if self.parity(&alpha) != Parity::Even || norm.is_zero() {
            return Err(Error::NotEvenReflectable(i));
        }
        let mut roots = Vec::with_capacity(base.roots.len());
        for beta in &base.roots {
            roots.push(self.reflect_root(beta, &alpha, &norm)?);
        }
        let parities = roots.iter().map(|r| self.parity(r)).collect();
        Ok(Base { roots, parities })
    }

    /// r_α applied to a single vector.
    pub fn reflect_root(&self, beta: &Root, alpha: &Root, norm: &Scalar) -> Result<Root> {
        let val = self.form(beta, alpha)?;
        let ratio = val
            .try_div(norm)
            .ok_or_else(|| Error::InvalidBase(format!("({beta},{alpha}) not rational·(α,α)")))?;
        let twice = ratio * Rat::from_integer(2);
        if !twice.is_integer() {
            return Err(Error::InvalidBase(format!(
                "non-integral Cartan pairing for {beta} against {alpha}"
            )));
        }
        Ok(beta.sub(&alpha.scale(twice.to_integer())))
    }

    /// Odd reflection at an isotropic odd base root γ: γ ↦ −γ; β ↦ β+γ when
    /// (β,γ) ≠ 0; other roots fixed.
    pub fn odd_reflection(&self, base: &Base, i: usize) -> Result<Base> {
        let gamma = base
            .roots
            .get(i)
            .ok_or(Error::NotOddReflectable(i))?
            .clone();
        if self.parity(&gamma) != Parity::Odd || !self.form(&gamma, &gamma)?.is_zero() {
            return Err(Error::NotOddReflectable(i));
        }
        let mut roots = Vec::with_capacity(base.roots.len());
        for (j, beta) in base.roots.iter().enumerate() {
            if j == i {
                roots.push(gamma.neg());
            } else if !self.form(beta, &gamma)?.is_zero() {
                roots.push(beta.add(&gamma));
            } else {
                roots.push(beta.clone());
            }
        }
        let parities = roots.iter().map(|r| self.parity(r)).collect();
        Ok(Base { roots, parities })
    }

    /// True iff every root with |δ-coefficient| ≤ depth is an all-nonnegative
    /// or all-nonpositive integer combination of the candidate roots, and the
    /// candidate roots are indecomposable among themselves. Returns false on
    /// malformed candidates (wrong cardinality, non-roots, dependent sets).
    pub fn is_base(&self, candidate: &Base, depth: i64) -> bool {
        let dim = self.dim();
        if candidate.roots.len() != dim {
            return false;
        }
        if candidate.roots.iter().any(|r| !self.is_root(r)) {
            return false;
        }
        let cols: Vec<Vec<i64>> = candidate.roots.iter().map(|r| r.as_vec()).collect();
        if !linalg::columns_independent(&cols) {
            return false;
        }

        let window = self.roots_up_to_depth(depth, RootFilter::all());
        let mut positive: HashSet<Root> = HashSet::new();
        for root in &window {
            let Some(sol) = linalg::solve_columns_int(&cols, &root.as_vec()) else {
                return false;
            };
            let nonneg = sol.iter().all(|&c| c >= 0);
            let nonpos = sol.iter().all(|&c| c <= 0);
            if !nonneg && !nonpos {
                return false;
            }
            if nonneg && !root.is_zero() {
                positive.insert(root.clone());
            }
        }
        // Indecomposability: no candidate root is a sum of two positives.
        for c in &candidate.roots {
            for x in &positive {
                let y = c.sub(x);
                if !y.is_zero() && positive.contains(&y) {
                    return false;
                }
            }
        }
        true
    }

    /// Σ_α membership: ρ = α+nδ (n ≥ 0) or ρ = −α+mδ (m > 0).
    pub fn sigma_contains(&self, alpha: &Root, rho: &Root) -> Result<bool> {
        if alpha.is_imaginary_vector() || !self.is_root(alpha) {
            return Err(Error::NotARoot(format!("{alpha} is not a real root")));
        }
        let same = alpha.coeffs == rho.coeffs;
        let opposite = alpha.neg().coeffs == rho.coeffs;
        Ok((same && rho.delta - alpha.delta >= 0) || (opposite && rho.delta + alpha.delta > 0))
    }
}

/// Filters for root enumeration.
#[derive(Debug, Clone, Copy, Default)]
pub struct RootFilter {
    pub parity: Option<Parity>,
    pub positive: Option<bool>,
    /// Some(true): real only; Some(false): imaginary only.
    pub real: Option<bool>,
}

impl RootFilter {
    pub fn all() -> Self {
        RootFilter::default()
    }

    pub fn positive() -> Self {
        RootFilter {
            positive: Some(true),
            ..Default::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::{build_finite, build_finite_ambient, TypeTag};

    fn aff(tag: TypeTag) -> AffineRootSystem {
        affinize(build_finite(tag).unwrap())
    }

    #[test]
    fn alpha0_is_minus_theta_plus_delta() {
        let a = aff(TypeTag::B { m: 2, n: 2 });
        let alpha0 = a.alpha0();
        assert_eq!(alpha0.delta, 1);
        assert_eq!(alpha0.finite_part(), a.finite.theta().neg());
    }

    #[test]
    fn cn_alpha0_plus_alpha1_is_even() {
        // §5.2: α₀+α₁ ∈ Δ₀ ∖ Δ̇₀ although α₀, α₁ are both odd.
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        assert_eq!(base.parities[0], Parity::Odd);
        assert_eq!(base.parities[1], Parity::Odd);
        let sum = base.roots[0].add(&base.roots[1]);
        assert_eq!(a.classify_vector(&sum), RootClass::RealEven);
        assert_eq!(sum.delta, 1); // not in Δ̇₀
    }

    #[test]
    fn depth_enumeration_counts() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let finite_count = a.finite.positive_roots.len() * 2;
        for d in 0..4 {
            let all = a.roots_up_to_depth(d, RootFilter::all());
            let expected = (2 * d as usize + 1) * finite_count + 2 * d as usize;
            assert_eq!(all.len(), expected);
        }
        let imag = a.roots_up_to_depth(
            2,
            RootFilter {
                real: Some(false),
                positive: Some(true),
                ..Default::default()
            },
        );
        assert_eq!(
            imag,
            vec![Root::imaginary(2, 1), Root::imaginary(2, 2)]
        );
        // depth 0, positive, real = Δ̇₊
        let fin_pos = a.roots_up_to_depth(
            0,
            RootFilter {
                real: Some(true),
                positive: Some(true),
                ..Default::default()
            },
        );
        assert_eq!(fin_pos.len(), a.finite.positive_roots.len());
    }

    #[test]
    fn depth_monotone() {
        let a = aff(TypeTag::C { n: 3 });
        let d2: std::collections::BTreeSet<_> =
            a.roots_up_to_depth(2, RootFilter::all()).into_iter().collect();
        let d3: std::collections::BTreeSet<_> =
            a.roots_up_to_depth(3, RootFilter::all()).into_iter().collect();
        assert!(d2.is_subset(&d3));
    }

    #[test]
    fn classify_vectors() {
        let a = aff(TypeTag::G3);
        assert_eq!(
            a.classify_vector(&Root::imaginary(3, 2)),
            RootClass::Imaginary
        );
        let theta_plus = a.finite.theta().add_delta(1);
        assert_eq!(a.classify_vector(&theta_plus), RootClass::RealEven);
        let junk = a.finite.theta().scale(2).add_delta(1);
        assert_eq!(a.classify_vector(&junk), RootClass::NotARoot);
    }

    #[test]
    fn distinguished_base_passes_is_base() {
        for tag in [
            TypeTag::A { m: 2, n: 1 },
            TypeTag::B { m: 1, n: 1 },
            TypeTag::B { m: 0, n: 2 },
            TypeTag::C { n: 3 },
            TypeTag::D { m: 2, n: 1 },
            TypeTag::D21a { a: None },
            TypeTag::G3,
            TypeTag::F4,
        ] {
            let a = aff(tag);
            assert!(a.is_base(&a.distinguished_base(), 3), "{tag}");
        }
    }

    #[test]
    fn negated_root_fails_is_base() {
        let a = aff(TypeTag::C { n: 3 });
        let mut base = a.distinguished_base();
        base.roots[1] = base.roots[1].neg();
        assert!(!a.is_base(&base, 2));
    }

    #[test]
    fn even_reflection_involution_and_form() {
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        // α₂ is even (index 2 in the base: [α₀, α₁, α₂, α₃]).
        let r = a.even_reflection(&base, 2).unwrap();
        assert!(a.is_base(&r, 3));
        let rr = a.even_reflection(&r, 2).unwrap();
        assert_eq!(rr.roots, base.roots);
        // Form values preserved.
        for i in 0..base.roots.len() {
            for j in 0..base.roots.len() {
                assert_eq!(
                    a.form(&base.roots[i], &base.roots[j]).unwrap(),
                    a.form(&r.roots[i], &r.roots[j]).unwrap()
                );
            }
        }
        // C(3)^: α₂–α₃ is the double edge, so r_{α₂}(α₃) = 2α₂+α₃ …
        assert_eq!(r.roots[3], base.roots[2].scale(2).add(&base.roots[3]));
        // … and r_{α₃}(α₂) = α₂+α₃.
        let r3 = a.even_reflection(&base, 3).unwrap();
        assert_eq!(r3.roots[2], base.roots[2].add(&base.roots[3]));

        // C(4)^: α₂, α₃ both short, r_{α₂}(α₃) = α₂+α₃.
        let a4 = aff(TypeTag::C { n: 4 });
        let base4 = a4.distinguished_base();
        let r4 = a4.even_reflection(&base4, 2).unwrap();
        assert_eq!(r4.roots[3], base4.roots[2].add(&base4.roots[3]));
    }

    #[test]
    fn even_reflection_rejects_odd_or_isotropic() {
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        assert!(matches!(
            a.even_reflection(&base, 1),
            Err(Error::NotEvenReflectable(1))
        ));
    }

    #[test]
    fn odd_reflection_rule_and_involution() {
        let a = aff(TypeTag::D21a { a: None });
        let base = a.distinguished_base();
        // α₁ is the isotropic odd root at index 1.
        let r = a.odd_reflection(&base, 1).unwrap();
        assert_eq!(r.roots[1], base.roots[1].neg());
        assert!(a.is_base(&r, 3));
        let rr = a.odd_reflection(&r, 1).unwrap();
        assert_eq!(rr.roots, base.roots);
    }

    #[test]
    fn odd_reflection_flips_exactly_gamma_in_positive_system() {
        // A(1,1)^ ambient: the reflected base generates the same root system;
        // Δ₊(π′) = (Δ₊(π) ∖ {γ}) ∪ {−γ} on the depth-3 window.
        let a = affinize(build_finite_ambient(TypeTag::A { m: 1, n: 1 }).unwrap());
        let base = a.distinguished_base();
        let gamma_idx = 2; // [α₀, α₁, γ, β₁]
        let gamma = base.roots[gamma_idx].clone();
        assert_eq!(a.parity(&gamma), Parity::Odd);
        let reflected = a.odd_reflection(&base, gamma_idx).unwrap();
        assert!(a.is_base(&reflected, 3));

        let cols: Vec<Vec<i64>> = reflected.roots.iter().map(|r| r.as_vec()).collect();
        let window = a.roots_up_to_depth(3, RootFilter::all());
        let mut new_pos: std::collections::BTreeSet<Root> = Default::default();
        for root in &window {
            let sol = linalg::solve_columns_int(&cols, &root.as_vec()).unwrap();
            if sol.iter().all(|&c| c >= 0) && !root.is_zero() {
                new_pos.insert(root.clone());
            }
        }
        let mut old_pos: std::collections::BTreeSet<Root> = window
            .iter()
            .filter(|r| a.is_positive(r))
            .cloned()
            .collect();
        old_pos.remove(&gamma);
        old_pos.insert(gamma.neg());
        assert_eq!(new_pos, old_pos);
    }

    #[test]
    fn sigma_membership() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let alpha = Root::finite(vec![1, 0]);
        assert!(a.sigma_contains(&alpha, &alpha).unwrap());
        assert!(!a.sigma_contains(&alpha, &alpha.neg()).unwrap());
        assert!(a.sigma_contains(&alpha, &alpha.neg().add_delta(1)).unwrap());
        assert!(a
            .sigma_contains(&alpha, &alpha.add_delta(5))
            .unwrap());
        assert!(a
            .sigma_contains(&Root::imaginary(2, 1), &alpha)
            .is_err());
    }

    #[test]
    fn sigma_symmetry_probe() {
        // Σ_α = Σ_{−α+δ} on all probes to depth 10.
        let a = aff(TypeTag::C { n: 3 });
        let alpha = Root::finite(vec![0, 1, 0]);
        let twin = alpha.neg().add_delta(1);
        for probe in a.roots_up_to_depth(10, RootFilter::all()) {
            if probe.is_imaginary_vector() {
                continue;
            }
            assert_eq!(
                a.sigma_contains(&alpha, &probe).unwrap(),
                a.sigma_contains(&twin, &probe).unwrap()
            );
        }
    }

    #[test]
    fn delta_expansions_match_diagram_data() {
        let a = aff(TypeTag::B { m: 3, n: 2 });
        let exp = a.delta_expansion(&a.distinguished_base()).unwrap();
        assert_eq!(exp, vec![1, 2, 2, 2, 2, 2]);

        let a = aff(TypeTag::D { m: 3, n: 2 });
        let exp = a.delta_expansion(&a.distinguished_base()).unwrap();
        assert_eq!(exp, vec![1, 2, 2, 2, 1, 1]);

        let a = aff(TypeTag::A { m: 2, n: 1 });
        let exp = a.delta_expansion(&a.distinguished_base()).unwrap();
        assert_eq!(exp, vec![1; 5]);

        let a = aff(TypeTag::C { n: 4 });
        let exp = a.delta_expansion(&a.distinguished_base()).unwrap();
        assert_eq!(exp, vec![1, 1, 2, 2, 1]);

        let a = aff(TypeTag::B { m: 0, n: 3 });
        let exp = a.delta_expansion(&a.distinguished_base()).unwrap();
        assert_eq!(exp, vec![1, 2, 2, 2]);
    }
}
