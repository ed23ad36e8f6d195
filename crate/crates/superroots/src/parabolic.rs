//! Parabolic subsets of Δ: standard P_S, lexicographic functional chains,
//! and the explicit (Y,Z) form, with P⁺/P⁰/P⁻ decomposition and at-depth
//! validation.

use crate::affine::{AffineRootSystem, RootFilter};
use crate::error::{Error, Result};
use crate::linalg;
use crate::root::Root;
use crate::scalar::Rat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap, HashSet};

/// A rational functional on base coordinates ⊕ the δ-axis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Functional {
    pub coeffs: Vec<Rat>,
    pub delta: Rat,
}

impl Functional {
    pub fn new(coeffs: Vec<Rat>, delta: Rat) -> Self {
        Functional { coeffs, delta }
    }

    pub fn eval(&self, v: &Root) -> Rat {
        let mut acc = self.delta * Rat::from_integer(v.delta);
        for (c, &x) in self.coeffs.iter().zip(&v.coeffs) {
            acc += *c * Rat::from_integer(x);
        }
        acc
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParabolicKind {
    /// P = Δ₊ ∪ Δ(S) for S a subset of the distinguished affine base.
    Standard { s: Vec<Root> },
    /// α ∈ P iff the first functional with nonzero value on α is positive,
    /// or all vanish.
    Functional { chain: Vec<Functional> },
    /// P⁰ = ±Δ(Y); P⁺ = (Δ₊ ∖ (P⁰ ∪ Z)) ∪ (−Z).
    Explicit { y: Vec<Root>, z: Vec<Root> },
}

/// Finitely described parabolic subset membership structure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicSubset {
    pub kind: ParabolicKind,
}

/// Witness of a parabolicity failure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// α, β ∈ P with α+β a root outside P.
    NotClosed(Root, Root),
    /// Root with neither ρ nor −ρ in P.
    NotCovering(Root),
}

impl std::fmt::Display for Witness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Witness::NotClosed(a, b) => write!(f, "additive closure fails on ({a}, {b})"),
            Witness::NotCovering(r) => write!(f, "neither {r} nor its negative is in the set"),
        }
    }
}

/// Δ(S) = ZS ∩ Δ restricted to the depth window, exactly.
pub fn closure(aff: &AffineRootSystem, s: &[Root], depth: i64) -> Vec<Root> {
    let gens: Vec<Vec<i64>> = s.iter().map(|r| r.as_vec()).collect();
    aff.roots_up_to_depth(depth, RootFilter::all())
        .into_iter()
        .filter(|r| linalg::in_lattice(&gens, &r.as_vec()))
        .collect()
}

impl ParabolicSubset {
    /// P_S = Δ₊ ∪ Δ(S); S must consist of distinguished base roots.
    pub fn standard(aff: &AffineRootSystem, s: &[Root]) -> Result<ParabolicSubset> {
        let base = aff.distinguished_base();
        let base_set: BTreeSet<&Root> = base.roots.iter().collect();
        for r in s {
            if !base_set.contains(r) {
                return Err(Error::InvalidParams(format!(
                    "{r} is not a distinguished base root"
                )));
            }
        }
        let mut s = s.to_vec();
        s.sort();
        s.dedup();
        Ok(ParabolicSubset {
            kind: ParabolicKind::Standard { s },
        })
    }

    /// Standard parabolic from base indices (0 = α₀).
    pub fn standard_by_indices(aff: &AffineRootSystem, idx: &[usize]) -> Result<ParabolicSubset> {
        let base = aff.distinguished_base();
        let mut s = Vec::new();
        for &i in idx {
            let root = base
                .roots
                .get(i)
                .ok_or_else(|| Error::InvalidParams(format!("base index {i} out of range")))?;
            s.push(root.clone());
        }
        Self::standard(aff, &s)
    }

    /// Membership by the first nonzero functional value; the result is
    /// validated at the given depth.
    pub fn functional(
        aff: &AffineRootSystem,
        chain: Vec<Functional>,
        depth: i64,
    ) -> Result<ParabolicSubset> {
        if chain.is_empty() {
            return Err(Error::BadFunctionalChain);
        }
        for f in &chain {
            if f.coeffs.len() != aff.rank() {
                return Err(Error::BadFunctionalChain);
            }
        }
        let p = ParabolicSubset {
            kind: ParabolicKind::Functional { chain },
        };
        match p.validate(aff, depth) {
            Ok(()) => Ok(p),
            Err(w) => Err(Error::NotParabolic(w.to_string())),
        }
    }

    /// Explicit (Y,Z) construction; validates parabolicity and reports the
    /// failure witness otherwise.
    pub fn explicit(
        aff: &AffineRootSystem,
        y: &[Root],
        z: &[Root],
        depth: i64,
    ) -> Result<ParabolicSubset> {
        for r in y.iter().chain(z) {
            if !aff.is_root(r) {
                return Err(Error::NotARoot(format!("{r}")));
            }
            if !aff.is_positive(r) {
                return Err(Error::InvalidParams(format!("{r} is not positive")));
            }
        }
        for r in z {
            if aff.parity(r) != crate::root::Parity::Odd {
                return Err(Error::InvalidParams(format!("Z root {r} is not odd")));
            }
        }
        let p = ParabolicSubset {
            kind: ParabolicKind::Explicit {
                y: y.to_vec(),
                z: z.to_vec(),
            },
        };
        match p.validate(aff, depth) {
            Ok(()) => Ok(p),
            Err(w) => Err(Error::NotParabolic(w.to_string())),
        }
    }

    /// Membership oracle.
    pub fn contains(&self, aff: &AffineRootSystem, root: &Root) -> bool {
        match &self.kind {
            ParabolicKind::Standard { s } => {
                if aff.is_positive(root) {
                    return true;
                }
                let gens: Vec<Vec<i64>> = s.iter().map(|r| r.as_vec()).collect();
                linalg::in_lattice(&gens, &root.as_vec())
            }
            ParabolicKind::Functional { chain } => {
                for f in chain {
                    let v = f.eval(root);
                    if !v.is_zero() {
                        return v > Rat::zero();
                    }
                }
                true
            }
            ParabolicKind::Explicit { y, z } => {
                let gens: Vec<Vec<i64>> = y.iter().map(|r| r.as_vec()).collect();
                if linalg::in_lattice(&gens, &root.as_vec()) {
                    return true; // ±Δ(Y)
                }
                if aff.is_positive(root) {
                    !z.contains(root)
                } else {
                    z.contains(&root.neg())
                }
            }
        }
    }

    /// (P⁺, P⁰, P⁻) on the depth window; the three parts partition the
    /// window and P⁻ = −P⁺ pointwise.
    pub fn decompose(&self, aff: &AffineRootSystem, depth: i64) -> Decomposition {
        let mut plus = Vec::new();
        let mut zero = Vec::new();
        let mut minus = Vec::new();
        for root in aff.roots_up_to_depth(depth, RootFilter::all()) {
            let inp = self.contains(aff, &root);
            let inm = self.contains(aff, &root.neg());
            match (inp, inm) {
                (true, true) => zero.push(root),
                (true, false) => plus.push(root),
                (false, true) => minus.push(root),
                (false, false) => {
                    // not parabolic; surfaced by validate(), keep the root out
                }
            }
        }
        Decomposition { plus, zero, minus }
    }

    /// Exhaustive at-depth check of the two parabolic axioms.
    pub fn validate(&self, aff: &AffineRootSystem, depth: i64) -> std::result::Result<(), Witness> {
        is_parabolic(aff, |r| self.contains(aff, r), depth)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub plus: Vec<Root>,
    pub zero: Vec<Root>,
    pub minus: Vec<Root>,
}

/// Check that a membership oracle defines a parabolic subset on the window:
/// additively closed, and P ∪ −P covers every root. Returns the first
/// violation as a witness.
pub fn is_parabolic<F: Fn(&Root) -> bool>(
    aff: &AffineRootSystem,
    member: F,
    depth: i64,
) -> std::result::Result<(), Witness> {
    let window = aff.roots_up_to_depth(depth, RootFilter::all());
    let index: HashMap<&Root, usize> = window.iter().enumerate().map(|(i, r)| (r, i)).collect();
    let in_p: Vec<bool> = window.iter().map(|r| member(r)).collect();

    let members: Vec<usize> = (0..window.len()).filter(|&i| in_p[i]).collect();
    for (a, &i) in members.iter().enumerate() {
        for &j in members.iter().skip(a) {
            let sum = window[i].add(&window[j]);
            if let Some(&k) = index.get(&sum) {
                if !in_p[k] {
                    return Err(Witness::NotClosed(window[i].clone(), window[j].clone()));
                }
            }
        }
    }
    for (i, root) in window.iter().enumerate() {
        if !in_p[i] && !member(&root.neg()) {
            return Err(Witness::NotCovering(root.clone()));
        }
    }
    Ok(())
}

/// Membership oracle for Δ(S) where S is an arbitrary root set.
pub struct LatticeMembership {
    gens: Vec<Vec<i64>>,
}

impl LatticeMembership {
    pub fn new(s: &[Root]) -> Self {
        LatticeMembership {
            gens: s.iter().map(|r| r.as_vec()).collect(),
        }
    }

    pub fn contains(&self, root: &Root) -> bool {
        linalg::in_lattice(&self.gens, &root.as_vec())
    }
}

/// The spec's Σ-compatibility probe: for a standard P_S and every
/// α ∈ Δ(S) ∩ Δ₊ on the window, Σ_α ∖ {α} ⊂ P⁺ ∪ P⁰.
pub fn sigma_compatible(aff: &AffineRootSystem, p: &ParabolicSubset, depth: i64) -> bool {
    let ParabolicKind::Standard { s } = &p.kind else {
        return true;
    };
    let mem = LatticeMembership::new(s);
    let window = aff.roots_up_to_depth(depth, RootFilter::positive());
    let window_set: HashSet<Root> = aff
        .roots_up_to_depth(depth, RootFilter::all())
        .into_iter()
        .collect();
    for alpha in window.iter().filter(|r| !r.is_imaginary_vector()) {
        if !mem.contains(alpha) {
            continue;
        }
        for probe in &window_set {
            if probe == alpha || probe.is_imaginary_vector() {
                continue;
            }
            if aff.sigma_contains(alpha, probe).unwrap_or(false) && !p.contains(aff, probe) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::affinize;
    use crate::finite::{build_finite, TypeTag};

    fn aff(tag: TypeTag) -> AffineRootSystem {
        affinize(build_finite(tag).unwrap())
    }

    #[test]
    fn closure_of_two_even_simples() {
        // {α₁, α₂} in the even A-block of A(0,2): closure is ±{α₁, α₂, α₁+α₂}.
        let a = aff(TypeTag::A { m: 0, n: 2 });
        let s = vec![Root::finite(vec![1, 0, 0]), Root::finite(vec![0, 1, 0])];
        let got = closure(&a, &s, 2);
        let expect: Vec<Root> = vec![
            Root::finite(vec![-1, -1, 0]),
            Root::finite(vec![-1, 0, 0]),
            Root::finite(vec![0, -1, 0]),
            Root::finite(vec![0, 1, 0]),
            Root::finite(vec![1, 0, 0]),
            Root::finite(vec![1, 1, 0]),
        ];
        assert_eq!(got, expect);
    }

    #[test]
    fn closure_empty_and_full() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        assert!(closure(&a, &[], 3).is_empty());
        let base = a.distinguished_base();
        let full = closure(&a, &base.roots, 3);
        assert_eq!(full.len(), a.roots_up_to_depth(3, RootFilter::all()).len());
    }

    #[test]
    fn closure_idempotent() {
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        let s = vec![base.roots[0].clone(), base.roots[1].clone()];
        let once = closure(&a, &s, 4);
        let twice = closure(&a, &once, 4);
        assert_eq!(once, twice);
    }

    #[test]
    fn standard_parabolic_shapes() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        // S = ∅: highest-weight shape.
        let p = ParabolicSubset::standard(&a, &[]).unwrap();
        let d = p.decompose(&a, 3);
        assert!(d.zero.is_empty());
        assert!(d.plus.iter().all(|r| a.is_positive(r)));
        assert_eq!(p.validate(&a, 3), Ok(()));

        // S = π: P = Δ.
        let base = a.distinguished_base();
        let p = ParabolicSubset::standard(&a, &base.roots).unwrap();
        let d = p.decompose(&a, 3);
        assert!(d.plus.is_empty() && d.minus.is_empty());

        // S = π̇: P⁰ = Δ̇.
        let p = ParabolicSubset::standard(&a, &base.roots[1..]).unwrap();
        let d = p.decompose(&a, 3);
        assert!(d.zero.iter().all(|r| r.delta == 0));
        assert_eq!(d.zero.len(), a.finite.positive_roots.len() * 2);
    }

    #[test]
    fn standard_rejects_non_base_roots() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let theta = a.finite.theta();
        assert!(ParabolicSubset::standard(&a, &[theta]).is_err());
    }

    #[test]
    fn decompose_partitions_window() {
        let a = aff(TypeTag::D21a { a: None });
        let base = a.distinguished_base();
        let p = ParabolicSubset::standard(&a, &base.roots[2..]).unwrap();
        let d = p.decompose(&a, 4);
        let window = a.roots_up_to_depth(4, RootFilter::all());
        assert_eq!(d.plus.len() + d.zero.len() + d.minus.len(), window.len());
        let minus_set: BTreeSet<Root> = d.minus.iter().cloned().collect();
        let neg_plus: BTreeSet<Root> = d.plus.iter().map(|r| r.neg()).collect();
        assert_eq!(minus_set, neg_plus);
        // P⁰ closed under negation.
        for r in &d.zero {
            assert!(d.zero.contains(&r.neg()));
        }
    }

    #[test]
    fn is_parabolic_catches_broken_set() {
        // Δ₊ ∖ {α₁+α₂} with α₁, α₂ in the set: witness (α₁, α₂).
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let hole = Root::finite(vec![1, 1]);
        let witness = is_parabolic(&a, |r| a.is_positive(r) && *r != hole, 2).unwrap_err();
        match witness {
            Witness::NotClosed(x, y) => {
                assert_eq!(x.add(&y), hole);
            }
            Witness::NotCovering(r) => panic!("wrong witness {r}"),
        }
        // Coverage violations are caught too.
        let only_plus = is_parabolic(&a, |r| a.is_positive(r) && r.delta == 0, 1).unwrap_err();
        assert!(matches!(only_plus, Witness::NotCovering(_)));
    }

    #[test]
    fn functional_height_gives_highest_weight_shape() {
        let a = aff(TypeTag::C { n: 3 });
        // Height functional w.r.t. the distinguished base: positive on Δ₊.
        // With α₀ = δ−θ, height(α₀) = 1 requires f(δ) = 1 + height(θ).
        let theta_height: i64 = a.finite.theta().coeffs.iter().sum();
        let f = Functional::new(
            vec![Rat::from_integer(1); a.rank()],
            Rat::from_integer(theta_height + 1),
        );
        let p = ParabolicSubset::functional(&a, vec![f], 3).unwrap();
        let d = p.decompose(&a, 3);
        assert!(d.zero.is_empty());
        for r in &d.plus {
            assert!(a.is_positive(r));
        }
    }

    #[test]
    fn functional_matching_standard_on_probes() {
        // A functional chain vanishing exactly on span(S) agrees with the
        // standard parabolic P_S on all probes.
        let a = aff(TypeTag::B { m: 1, n: 1 });
        let base = a.distinguished_base();
        // S = {α₁}: base coords α₁ = (1,0).
        let s = vec![base.roots[1].clone()];
        let p_std = ParabolicSubset::standard(&a, &s).unwrap();
        // Single functional vanishing exactly on span(α₁) within the window,
        // positive on the rest of Δ₊.
        let f1 = Functional::new(
            vec![Rat::zero(), Rat::from_integer(1)],
            Rat::from_integer(100),
        );
        let p_fun = ParabolicSubset::functional(&a, vec![f1], 4).unwrap();
        for probe in a.roots_up_to_depth(4, RootFilter::all()) {
            assert_eq!(
                p_std.contains(&a, &probe),
                p_fun.contains(&a, &probe),
                "disagree on {probe}"
            );
        }
    }

    #[test]
    fn functional_with_delta_in_kernel_gives_affine_levi() {
        let a = aff(TypeTag::C { n: 3 });
        // Kernel contains the δ-axis (and the α₂, α₃ directions).
        let f = Functional::new(
            vec![Rat::from_integer(1), Rat::zero(), Rat::zero()],
            Rat::zero(),
        );
        let p = ParabolicSubset::functional(&a, vec![f], 3).unwrap();
        let delta = a.delta();
        assert!(p.contains(&a, &delta) && p.contains(&a, &delta.neg()));
    }

    #[test]
    fn explicit_empty_equals_standard_empty() {
        let a = aff(TypeTag::G3);
        let pe = ParabolicSubset::explicit(&a, &[], &[], 3).unwrap();
        let ps = ParabolicSubset::standard(&a, &[]).unwrap();
        for probe in a.roots_up_to_depth(3, RootFilter::all()) {
            assert_eq!(pe.contains(&a, &probe), ps.contains(&a, &probe));
        }
    }

    #[test]
    fn decompose_levi_action_stays_in_plus() {
        // α ∈ P⁰, β ∈ P⁺, α+β ∈ Δ ⇒ α+β ∈ P⁺ (probe check).
        let a = aff(TypeTag::B { m: 1, n: 1 });
        let base = a.distinguished_base();
        let p = ParabolicSubset::standard(&a, &base.roots[1..=1]).unwrap();
        let d = p.decompose(&a, 4);
        let plus: HashSet<Root> = d.plus.iter().cloned().collect();
        for z in &d.zero {
            for pl in &d.plus {
                let sum = z.add(pl);
                if a.is_root(&sum) && sum.delta.abs() <= 4 {
                    assert!(plus.contains(&sum), "{z} + {pl} left P⁺");
                }
            }
        }
    }

    #[test]
    fn sigma_compatibility_for_standard() {
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        let p = ParabolicSubset::standard(&a, &base.roots[2..=3]).unwrap();
        assert!(sigma_compatible(&a, &p, 4));
    }
}
