//! Truncated graded characters: Heisenberg Verma modules M±(a) and
//! Verma-type parabolically induced characters via super Kostant partition
//! counting, with support checks.

use crate::affine::{AffineRootSystem, RootFilter};
use crate::error::{Error, Result};
use crate::parabolic::ParabolicSubset;
use crate::root::{Parity, Root};
use crate::scalar::Rat;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Degree-indexed dimension table of a Z-graded module with a cyclic vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedCharacter {
    /// Eigenvalue of the central element; nonzero in K(G).
    pub level: Rat,
    /// dims[k] for δ-depth k = 0..=depth.
    pub dims: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VermaSign {
    Highest,
    Lowest,
}

/// dims[k] = number of multisets of degree-k monomials where each degree
/// j ≥ 1 supplies `rank` independent generators: the coefficients of
/// Π_{j≥1} (1−q^j)^{−rank}.
pub fn heisenberg_verma(
    rank: usize,
    level: Rat,
    depth: usize,
    _sign: VermaSign,
) -> Result<GradedCharacter> {
    if level.is_zero() {
        return Err(Error::ZeroLevel);
    }
    let mut dims = vec![0u64; depth + 1];
    dims[0] = 1;
    for j in 1..=depth {
        for _color in 0..rank {
            for k in j..=depth {
                dims[k] += dims[k - j];
            }
        }
    }
    Ok(GradedCharacter { level, dims })
}

/// One generator of the PBW basis of U(G⁻_P), with its multiplicity rule.
#[derive(Debug, Clone)]
enum Generator {
    /// Unlimited multiplicity (even real roots).
    Even(Root),
    /// At most once (odd roots; isotropic or not).
    Odd(Root),
    /// kδ with `colors` independent copies, each unlimited.
    Imaginary(Root, usize),
}

impl Generator {
    fn weight(&self) -> &Root {
        match self {
            Generator::Even(r) | Generator::Odd(r) | Generator::Imaginary(r, _) => r,
        }
    }
}

/// Positive roots of P⁺ as PBW generators, truncated at the δ-depth of the
/// target. Odd roots (isotropic or non-isotropic alike) carry multiplicity
/// at most one; for a non-isotropic odd α the double 2α is present in the
/// even list on its own.
fn generators(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    max_delta: i64,
    imaginary_mult: usize,
) -> Vec<Generator> {
    let mut out = Vec::new();
    for root in aff.roots_up_to_depth(max_delta, RootFilter::positive()) {
        if !p.contains(aff, &root) || p.contains(aff, &root.neg()) {
            continue; // keep only P⁺
        }
        if root.is_imaginary_vector() {
            out.push(Generator::Imaginary(root, imaginary_mult));
        } else {
            match aff.parity(&root) {
                Parity::Even => out.push(Generator::Even(root)),
                Parity::Odd => out.push(Generator::Odd(root)),
            }
        }
    }
    out
}

/// Height functional that is strictly positive on every positive root:
/// finite height plus a δ-weight exceeding the height of θ.
fn budget_height(aff: &AffineRootSystem, v: &Root) -> i64 {
    let theta_height: i64 = aff.finite.theta().coeffs.iter().sum();
    v.coeffs.iter().sum::<i64>() + v.delta * (theta_height + 1)
}

/// Super Kostant partition count: the number of ways to write μ as a
/// multiset of P⁺ generators under the multiplicity rules.
pub fn kostant_count(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    mu: &Root,
    imaginary_mult: usize,
) -> Result<u64> {
    if mu.rank() != aff.rank() {
        return Err(Error::DimensionMismatch {
            expected: aff.rank(),
            got: mu.rank(),
        });
    }
    if mu.delta < 0 {
        return Err(Error::OutsideCone(format!("{mu}")));
    }
    let gens = generators(aff, p, mu.delta.max(1), imaginary_mult);
    let mut memo: HashMap<(usize, Root), u64> = HashMap::new();
    Ok(count_rec(aff, &gens, 0, mu, &mut memo))
}

fn count_rec(
    aff: &AffineRootSystem,
    gens: &[Generator],
    i: usize,
    target: &Root,
    memo: &mut HashMap<(usize, Root), u64>,
) -> u64 {
    if target.is_zero() {
        return 1;
    }
    if budget_height(aff, target) < 0 || i == gens.len() {
        return 0;
    }
    if let Some(&v) = memo.get(&(i, target.clone())) {
        return v;
    }
    let g = &gens[i];
    let w = g.weight();
    let hw = budget_height(aff, w);
    debug_assert!(hw > 0);
    let max_mult: i64 = match g {
        Generator::Odd(_) => 1,
        _ => budget_height(aff, target) / hw,
    };
    let mut total = 0u64;
    let mut rest = target.clone();
    for m in 0..=max_mult {
        let sub = count_rec(aff, gens, i + 1, &rest, memo);
        let ways = match g {
            Generator::Imaginary(_, colors) => sub * multichoose(*colors as u64, m as u64),
            _ => sub,
        };
        total += ways;
        rest = rest.sub(w);
        if budget_height(aff, &rest) < 0 {
            break;
        }
    }
    memo.insert((i, target.clone()), total);
    total
}

/// C(m + r − 1, r − 1): multisets of size m from r colors.
fn multichoose(r: u64, m: u64) -> u64 {
    if m == 0 {
        return 1;
    }
    if r == 0 {
        return 0;
    }
    let mut num = 1u64;
    for i in 0..m {
        num = num * (r + i) / (i + 1);
    }
    num
}

/// The spec's verma_weight_multiplicity: P = P_∅, N one-dimensional.
pub fn verma_weight_multiplicity(
    aff: &AffineRootSystem,
    mu: &Root,
    imaginary_mult: usize,
) -> Result<u64> {
    let p = ParabolicSubset::standard(aff, &[])?;
    kostant_count(aff, &p, mu, imaginary_mult)
}

/// Truncated weight character of M_P(λ) for standard P: offsets ν with
/// nonzero multiplicity, δ-depth ≤ depth, finite coordinates bounded by
/// the reachable cone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightCharacter {
    pub imaginary_mult: usize,
    /// multiplicity at weight λ − ν for each stored offset ν.
    pub multiplicities: Vec<(Root, u64)>,
}

/// Prop 1(iii)-style support check on the truncated Verma-type character:
/// no weight at λ + kδ for 0 < k ≤ depth, and the support misses at least
/// one lattice point of the Q-coset inside the window (vacuous at depth 0).
pub fn induced_support_check(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    depth: i64,
) -> Result<bool> {
    if depth == 0 {
        return Ok(true);
    }
    // Support offsets are sums of P⁺ generators. Verify mechanically that
    // every generator on the window has δ-coefficient ≥ 0 and a strictly
    // positive height budget: then every nonzero offset ν has positive
    // budget, while the offsets −kδ of the weights λ+kδ (k = 1..depth)
    // have negative budget and are unreachable. The point λ+δ is then a
    // lattice point of the Q-coset inside the window with multiplicity 0,
    // so the support misses its coset.
    let gens = generators(aff, p, depth, aff.imaginary_multiplicity);
    for g in &gens {
        let w = g.weight();
        if w.delta < 0 || budget_height(aff, w) <= 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Full truncated character table for a standard parabolic: all offsets
/// ν = Σ c_i π_i with 0 ≤ δ-depth ≤ depth and finite coefficients bounded
/// by `bound`.
pub fn truncated_character(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    depth: i64,
    bound: i64,
    imaginary_mult: usize,
) -> Result<WeightCharacter> {
    let rank = aff.rank();
    let mut offsets = vec![Root::zero(rank)];
    // enumerate the box of candidate offsets
    for i in 0..rank {
        let mut next = Vec::new();
        for off in &offsets {
            for c in 0..=bound {
                let mut coeffs = off.coeffs.clone();
                coeffs[i] = c;
                next.push(Root::affine(coeffs, off.delta));
            }
        }
        offsets = next;
    }
    let mut with_delta = Vec::new();
    for off in offsets {
        for d in 0..=depth {
            with_delta.push(off.clone().add_delta(d));
        }
    }
    let mut multiplicities = Vec::new();
    for nu in with_delta {
        let m = kostant_count(aff, p, &nu, imaginary_mult)?;
        if m > 0 {
            multiplicities.push((nu, m));
        }
    }
    multiplicities.sort();
    Ok(WeightCharacter {
        imaginary_mult,
        multiplicities,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::affinize;
    use crate::finite::{build_finite, TypeTag};

    fn aff(tag: TypeTag) -> AffineRootSystem {
        affinize(build_finite(tag).unwrap())
    }

    fn one() -> Rat {
        Rat::from_integer(1)
    }

    /// Independent oracle: count r-colored partitions of k by explicit
    /// enumeration over (part, color) multisets.
    fn colored_partitions_oracle(rank: usize, k: usize) -> u64 {
        fn rec(remaining: usize, max_part: usize, rank: usize) -> u64 {
            if remaining == 0 {
                return 1;
            }
            let mut total = 0;
            for part in (1..=max_part.min(remaining)).rev() {
                // choose how many of `part` across colors: multiset of
                // colors of size m contributes C(m+rank−1, rank−1)
                let maxm = remaining / part;
                for m in 1..=maxm {
                    total += multichoose(rank as u64, m as u64)
                        * rec(remaining - m * part, part - 1, rank);
                }
            }
            total
        }
        rec(k, k, rank)
    }

    #[test]
    fn heisenberg_rank1_is_partition_numbers() {
        let ch = heisenberg_verma(1, one(), 5, VermaSign::Highest).unwrap();
        assert_eq!(ch.dims, vec![1, 1, 2, 3, 5, 7]);
    }

    #[test]
    fn heisenberg_rank0_and_rank2() {
        let ch = heisenberg_verma(0, one(), 4, VermaSign::Highest).unwrap();
        assert_eq!(ch.dims, vec![1, 0, 0, 0, 0]);
        let ch = heisenberg_verma(2, one(), 3, VermaSign::Lowest).unwrap();
        assert_eq!(ch.dims, vec![1, 2, 5, 10]);
    }

    #[test]
    fn heisenberg_matches_oracle() {
        for rank in 1..=3 {
            let ch = heisenberg_verma(rank, one(), 8, VermaSign::Highest).unwrap();
            for k in 0..=8 {
                assert_eq!(
                    ch.dims[k],
                    colored_partitions_oracle(rank, k),
                    "rank {rank}, degree {k}"
                );
            }
        }
    }

    #[test]
    fn heisenberg_rejects_zero_level() {
        assert_eq!(
            heisenberg_verma(1, Rat::zero(), 3, VermaSign::Highest),
            Err(Error::ZeroLevel)
        );
    }

    #[test]
    fn single_even_simple_root_multiplicity_one() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let mu = Root::finite(vec![1, 0]); // α₁ even simple
        assert_eq!(verma_weight_multiplicity(&a, &mu, 2).unwrap(), 1);
    }

    #[test]
    fn twice_isotropic_simple_has_no_decomposition() {
        // 2γ for the isotropic odd simple γ of C(3), 2γ ∉ Δ: only way would
        // be γ+γ, forbidden by the odd rule.
        let a = aff(TypeTag::C { n: 3 });
        let mu = Root::finite(vec![2, 0, 0]);
        assert_eq!(verma_weight_multiplicity(&a, &mu, 3).unwrap(), 0);
    }

    #[test]
    fn non_isotropic_odd_double_counts_via_even_root() {
        // In B(0,1), μ = 2α₁ decomposes as the even root 2α₁ itself; α₁+α₁
        // is forbidden. So multiplicity 1.
        let a = aff(TypeTag::B { m: 0, n: 1 });
        let mu = Root::finite(vec![2]);
        assert_eq!(verma_weight_multiplicity(&a, &mu, 1).unwrap(), 1);
    }

    /// Brute-force decomposition oracle: enumerate explicit multisets over
    /// the generator list with odd roots used at most once and imaginary
    /// roots enumerated per color.
    fn oracle_count(aff: &AffineRootSystem, mu: &Root, imaginary_mult: usize) -> u64 {
        let p = ParabolicSubset::standard(aff, &[]).unwrap();
        // explicit color expansion: an imaginary root kδ with r colors
        // becomes r distinct even generators of the same weight
        let mut gens: Vec<(Root, bool)> = Vec::new(); // (weight, odd?)
        for root in aff.roots_up_to_depth(mu.delta.max(1), RootFilter::positive()) {
            if !p.contains(aff, &root) || p.contains(aff, &root.neg()) {
                continue;
            }
            if root.is_imaginary_vector() {
                for _ in 0..imaginary_mult {
                    gens.push((root.clone(), false));
                }
            } else {
                gens.push((root.clone(), aff.parity(&root) == Parity::Odd));
            }
        }
        fn rec(aff: &AffineRootSystem, gens: &[(Root, bool)], i: usize, rest: &Root) -> u64 {
            if rest.is_zero() {
                return 1;
            }
            if i == gens.len() || budget_height(aff, rest) < 0 {
                return 0;
            }
            let (w, odd) = &gens[i];
            let mut total = 0;
            let mut r = rest.clone();
            let cap = if *odd { 1 } else { i64::MAX };
            let mut m = 0;
            loop {
                total += rec(aff, gens, i + 1, &r);
                m += 1;
                if m > cap {
                    break;
                }
                r = r.sub(w);
                if budget_height(aff, &r) < 0 {
                    break;
                }
            }
            total
        }
        rec(aff, &gens, 0, mu)
    }

    #[test]
    fn kostant_matches_exhaustive_oracle_b02() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        for delta in 0..=2i64 {
            for c1 in 0..=2i64 {
                for c2 in 0..=2i64 {
                    let mu = Root::affine(vec![c1, c2], delta);
                    let got = verma_weight_multiplicity(&a, &mu, 2).unwrap();
                    let want = oracle_count(&a, &mu, 2);
                    assert_eq!(got, want, "μ = {mu}");
                }
            }
        }
    }

    #[test]
    fn kostant_matches_exhaustive_oracle_c3() {
        let a = aff(TypeTag::C { n: 3 });
        for delta in 0..=1i64 {
            for c1 in 0..=1i64 {
                for c2 in 0..=2i64 {
                    for c3 in 0..=1i64 {
                        let mu = Root::affine(vec![c1, c2, c3], delta);
                        let got = verma_weight_multiplicity(&a, &mu, 3).unwrap();
                        let want = oracle_count(&a, &mu, 3);
                        assert_eq!(got, want, "μ = {mu}");
                    }
                }
            }
        }
    }

    #[test]
    fn delta_multiplicity_in_b01() {
        // μ = δ in B(0,1)^ with imaginary_mult = 1: decompositions counted
        // by the independent oracle.
        let a = aff(TypeTag::B { m: 0, n: 1 });
        let mu = Root::imaginary(1, 1);
        let got = verma_weight_multiplicity(&a, &mu, 1).unwrap();
        assert_eq!(got, oracle_count(&a, &mu, 1));
    }

    #[test]
    fn odd_rule_is_active() {
        // Sensitivity: treating an isotropic odd root as unlimited must
        // change some multiplicity at depth ≤ 4.
        let a = aff(TypeTag::C { n: 3 });
        let gamma = Root::finite(vec![1, 0, 0]);
        let mu = gamma.scale(2);
        // With the super rule: 0 ways (tested above). Pretend-even count:
        // decompose 2γ into arbitrary positive roots without the odd cap.
        let p = ParabolicSubset::standard(&a, &[]).unwrap();
        let mut gens: Vec<Root> = Vec::new();
        for root in a.roots_up_to_depth(1, RootFilter::positive()) {
            if !p.contains(&a, &root) || p.contains(&a, &root.neg()) {
                continue;
            }
            gens.push(root);
        }
        fn rec(aff: &AffineRootSystem, gens: &[Root], i: usize, rest: &Root) -> u64 {
            if rest.is_zero() {
                return 1;
            }
            if i == gens.len() || budget_height(aff, rest) < 0 {
                return 0;
            }
            let mut total = 0;
            let mut r = rest.clone();
            loop {
                total += rec(aff, gens, i + 1, &r);
                r = r.sub(&gens[i]);
                if budget_height(aff, &r) < 0 {
                    break;
                }
            }
            total
        }
        let unlimited = rec(&a, &gens, 0, &mu);
        assert!(unlimited > 0);
        assert_eq!(verma_weight_multiplicity(&a, &mu, 3).unwrap(), 0);
    }

    #[test]
    fn multiplicities_monotone_in_imaginary_mult() {
        let a = aff(TypeTag::B { m: 0, n: 2 });
        let mu = Root::affine(vec![1, 1], 2);
        let m1 = verma_weight_multiplicity(&a, &mu, 1).unwrap();
        let m2 = verma_weight_multiplicity(&a, &mu, 2).unwrap();
        let m3 = verma_weight_multiplicity(&a, &mu, 3).unwrap();
        assert!(m1 <= m2 && m2 <= m3);
    }

    #[test]
    fn standard_factorization_over_levi_offsets() {
        // For P = P_S the multiplicity at offsets inside Δ(S)-directions is
        // that of the smaller generator set: μ = α₂ (∈ Δ(S)) has count 0
        // since Δ(S)-roots are not in P⁺.
        let a = aff(TypeTag::C { n: 3 });
        let base = a.distinguished_base();
        let p = ParabolicSubset::standard(&a, &base.roots[2..=2]).unwrap();
        let alpha2 = Root::finite(vec![0, 1, 0]);
        assert_eq!(kostant_count(&a, &p, &alpha2, 3).unwrap(), 0);
        // while P_∅ gives 1
        assert_eq!(verma_weight_multiplicity(&a, &alpha2, 3).unwrap(), 1);
    }

    #[test]
    fn support_checks() {
        for tag in [
            TypeTag::B { m: 0, n: 2 },
            TypeTag::C { n: 3 },
            TypeTag::D21a { a: None },
        ] {
            let a = aff(tag);
            let p_empty = ParabolicSubset::standard(&a, &[]).unwrap();
            assert!(induced_support_check(&a, &p_empty, 4).unwrap());
            let base = a.distinguished_base();
            let p_fin = ParabolicSubset::standard(&a, &base.roots[1..]).unwrap();
            assert!(induced_support_check(&a, &p_fin, 4).unwrap());
            assert!(induced_support_check(&a, &p_empty, 0).unwrap());
        }
    }

    #[test]
    fn truncated_character_cyclic_vector() {
        let a = aff(TypeTag::B { m: 0, n: 1 });
        let p = ParabolicSubset::standard(&a, &[]).unwrap();
        let ch = truncated_character(&a, &p, 1, 2, 1).unwrap();
        let zero = Root::zero(1);
        let at_zero = ch
            .multiplicities
            .iter()
            .find(|(nu, _)| *nu == zero)
            .unwrap();
        assert_eq!(at_zero.1, 1);
    }
}
