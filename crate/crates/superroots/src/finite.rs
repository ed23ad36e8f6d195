//! Finite basic classical super root systems, generated from hardcoded
//! ambient ε/δ realizations and converted to simple-base coordinates.

use crate::error::{Error, Result};
use crate::linalg;
use crate::root::{Parity, Root};
use crate::scalar::{Rat, Scalar};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// Family tag with parameters. `D21a { a: None }` keeps the parameter formal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeTag {
    /// A(m,n) = sl(m+1|n+1) (pgl(n+1,n+1) when m = n).
    A { m: usize, n: usize },
    /// B(m,n) = osp(2m+1,2n), m ≥ 0, n ≥ 1.
    B { m: usize, n: usize },
    /// C(n) = osp(2,2n−2), n ≥ 2.
    C { n: usize },
    /// D(m,n) = osp(2m,2n), m ≥ 2, n ≥ 1.
    D { m: usize, n: usize },
    /// D(2,1;a), rational a ∉ {0,−1}, or the formal parameter when `None`.
    D21a { a: Option<Rat> },
    G3,
    F4,
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::A { m, n } => write!(f, "A({m},{n})"),
            TypeTag::B { m, n } => write!(f, "B({m},{n})"),
            TypeTag::C { n } => write!(f, "C({n})"),
            TypeTag::D { m, n } => write!(f, "D({m},{n})"),
            TypeTag::D21a { a: None } => write!(f, "D(2,1;a)"),
            TypeTag::D21a { a: Some(a) } => write!(f, "D(2,1;{})", crate::scalar::rat_string(*a)),
            TypeTag::G3 => write!(f, "G(3)"),
            TypeTag::F4 => write!(f, "F(4)"),
        }
    }
}

/// Ambient realization: integer root vectors in a coordinate space carrying
/// a symmetric Scalar-valued form.
struct Ambient {
    dim: usize,
    /// Symmetric form matrix on ambient coordinates.
    form: Vec<Vec<Scalar>>,
    /// (vector, parity) for every root (positives and negatives).
    roots: Vec<(Vec<i64>, Parity)>,
    /// Distinguished simple roots, in diagram order.
    simple: Vec<Vec<i64>>,
    simple_parities: Vec<Parity>,
}

impl Ambient {
    fn form_value(&self, x: &[i64], y: &[i64]) -> Scalar {
        let mut acc = Scalar::ZERO;
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                acc += self.form[i][j].scale(Rat::from_integer(xi * yj));
            }
        }
        acc
    }
}

fn unit(dim: usize, i: usize, v: i64) -> Vec<i64> {
    let mut x = vec![0; dim];
    x[i] = v;
    x
}

fn add2(dim: usize, i: usize, vi: i64, j: usize, vj: i64) -> Vec<i64> {
    let mut x = vec![0; dim];
    x[i] += vi;
    x[j] += vj;
    x
}

fn diag_form(entries: &[Scalar]) -> Vec<Vec<Scalar>> {
    let n = entries.len();
    let mut m = vec![vec![Scalar::ZERO; n]; n];
    for i in 0..n {
        m[i][i] = entries[i];
    }
    m
}

/// osp-style families share the coordinate layout: `nd` coordinates δ_i with
/// (δ,δ) = −1 followed by `ne` coordinates ε_j with (ε,ε) = +1.
fn osp_coords(nd: usize, ne: usize) -> Vec<Vec<Scalar>> {
    let mut entries = vec![Scalar::int(-1); nd];
    entries.extend(vec![Scalar::int(1); ne]);
    diag_form(&entries)
}

fn ambient_a(m: usize, n: usize) -> Ambient {
    // d_1..d_{n+1} with form −1, then e_1..e_{m+1} with form +1.
    let nd = n + 1;
    let ne = m + 1;
    let dim = nd + ne;
    let mut roots = Vec::new();
    for i in 0..nd {
        for j in 0..nd {
            if i != j {
                roots.push((add2(dim, i, 1, j, -1), Parity::Even));
            }
        }
    }
    for i in 0..ne {
        for j in 0..ne {
            if i != j {
                roots.push((add2(dim, nd + i, 1, nd + j, -1), Parity::Even));
            }
        }
    }
    for i in 0..nd {
        for j in 0..ne {
            roots.push((add2(dim, i, 1, nd + j, -1), Parity::Odd));
            roots.push((add2(dim, i, -1, nd + j, 1), Parity::Odd));
        }
    }
    // Base order: α_1..α_n (d-chain), γ, β_1..β_m (e-chain).
    let mut simple = Vec::new();
    let mut simple_parities = Vec::new();
    for i in 0..n {
        simple.push(add2(dim, i, 1, i + 1, -1));
        simple_parities.push(Parity::Even);
    }
    simple.push(add2(dim, nd - 1, 1, nd, -1));
    simple_parities.push(Parity::Odd);
    for j in 0..m {
        simple.push(add2(dim, nd + j, 1, nd + j + 1, -1));
        simple_parities.push(Parity::Even);
    }
    Ambient {
        dim,
        form: osp_coords(nd, ne),
        roots,
        simple,
        simple_parities,
    }
}

fn ambient_b(m: usize, n: usize) -> Ambient {
    // δ_1..δ_n then ε_1..ε_m.
    let dim = n + m;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push((add2(dim, i, si, j, sj), Parity::Even));
                }
            }
        }
        for s in [2, -2] {
            roots.push((unit(dim, i, s), Parity::Even));
        }
        for s in [1, -1] {
            roots.push((unit(dim, i, s), Parity::Odd));
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i < j {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push((add2(dim, n + i, si, n + j, sj), Parity::Even));
                }
            }
        }
        for s in [1, -1] {
            roots.push((unit(dim, n + i, s), Parity::Even));
        }
        for di in 0..n {
            for (sd, se) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                roots.push((add2(dim, di, sd, n + i, se), Parity::Odd));
            }
        }
    }
    let mut simple = Vec::new();
    let mut simple_parities = Vec::new();
    for i in 0..n - 1 {
        simple.push(add2(dim, i, 1, i + 1, -1));
        simple_parities.push(Parity::Even);
    }
    if m > 0 {
        simple.push(add2(dim, n - 1, 1, n, -1)); // α_n = δ_n − ε_1, isotropic
    } else {
        simple.push(unit(dim, n - 1, 1)); // α_n = δ_n, non-isotropic odd
    }
    simple_parities.push(Parity::Odd);
    for j in 0..m.saturating_sub(1) {
        simple.push(add2(dim, n + j, 1, n + j + 1, -1));
        simple_parities.push(Parity::Even);
    }
    if m > 0 {
        simple.push(unit(dim, n + m - 1, 1)); // β_m = ε_m
        simple_parities.push(Parity::Even);
    }
    Ambient {
        dim,
        form: osp_coords(n, m),
        roots,
        simple,
        simple_parities,
    }
}

fn ambient_c(n: usize) -> Ambient {
    // ε_1 (+1) then δ_1..δ_{n−1} (−1): osp(2, 2n−2).
    let q = n - 1;
    let dim = 1 + q;
    let mut entries = vec![Scalar::int(1)];
    entries.extend(vec![Scalar::int(-1); q]);
    let mut roots = Vec::new();
    for i in 0..q {
        for j in 0..q {
            if i < j {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push((add2(dim, 1 + i, si, 1 + j, sj), Parity::Even));
                }
            }
        }
        for s in [2, -2] {
            roots.push((unit(dim, 1 + i, s), Parity::Even));
        }
        for (se, sd) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
            roots.push((add2(dim, 0, se, 1 + i, sd), Parity::Odd));
        }
    }
    let mut simple = vec![add2(dim, 0, 1, 1, -1)]; // α_1 = ε_1 − δ_1
    let mut simple_parities = vec![Parity::Odd];
    for i in 0..q - 1 {
        simple.push(add2(dim, 1 + i, 1, 2 + i, -1));
        simple_parities.push(Parity::Even);
    }
    simple.push(unit(dim, q, 2)); // α_n = 2δ_{n−1}
    simple_parities.push(Parity::Even);
    Ambient {
        dim,
        form: diag_form(&entries),
        roots,
        simple,
        simple_parities,
    }
}

fn ambient_d(m: usize, n: usize) -> Ambient {
    // δ_1..δ_n then ε_1..ε_m.
    let dim = n + m;
    let mut roots = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i < j {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push((add2(dim, i, si, j, sj), Parity::Even));
                }
            }
        }
        for s in [2, -2] {
            roots.push((unit(dim, i, s), Parity::Even));
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i < j {
                for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    roots.push((add2(dim, n + i, si, n + j, sj), Parity::Even));
                }
            }
        }
        for di in 0..n {
            for (sd, se) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                roots.push((add2(dim, di, sd, n + i, se), Parity::Odd));
            }
        }
    }
    let mut simple = Vec::new();
    let mut simple_parities = Vec::new();
    for i in 0..n - 1 {
        simple.push(add2(dim, i, 1, i + 1, -1));
        simple_parities.push(Parity::Even);
    }
    simple.push(add2(dim, n - 1, 1, n, -1)); // α_n = δ_n − ε_1
    simple_parities.push(Parity::Odd);
    for j in 0..m - 1 {
        simple.push(add2(dim, n + j, 1, n + j + 1, -1));
        simple_parities.push(Parity::Even);
    }
    simple.push(add2(dim, n + m - 2, 1, n + m - 1, 1)); // β_m = ε_{m−1} + ε_m
    simple_parities.push(Parity::Even);
    Ambient {
        dim,
        form: osp_coords(n, m),
        roots,
        simple,
        simple_parities,
    }
}

fn ambient_d21a(a: Option<Rat>) -> Ambient {
    // Coordinates e_1, e_2, e_3; form diag(−(1+a)/2, 1/2, a/2).
    let half = Rat::new(1, 2);
    let (e1, e2, e3) = match a {
        Some(a) => (
            Scalar::rat(-(Rat::from_integer(1) + a) * half),
            Scalar::rat(half),
            Scalar::rat(a * half),
        ),
        None => (
            Scalar {
                c: -half,
                k: -half,
            },
            Scalar::rat(half),
            Scalar::formal_a(half),
        ),
    };
    let dim = 3;
    let mut roots = Vec::new();
    for i in 0..3 {
        for s in [2, -2] {
            roots.push((unit(dim, i, s), Parity::Even));
        }
    }
    for s1 in [1, -1] {
        for s2 in [1i64, -1] {
            for s3 in [1i64, -1] {
                roots.push((vec![s1, s2, s3], Parity::Odd));
            }
        }
    }
    Ambient {
        dim,
        form: diag_form(&[e1, e2, e3]),
        roots,
        simple: vec![vec![1, -1, -1], vec![0, 2, 0], vec![0, 0, 2]],
        simple_parities: vec![Parity::Odd, Parity::Even, Parity::Even],
    }
}

fn ambient_g3() -> Ambient {
    // Coordinates (t, f_1, f_2); G₂ part has Gram [[2,−1],[−1,2]], (t,t) = −2.
    let dim = 3;
    let mut form = vec![vec![Scalar::ZERO; 3]; 3];
    form[0][0] = Scalar::int(-2);
    form[1][1] = Scalar::int(2);
    form[2][2] = Scalar::int(2);
    form[1][2] = Scalar::int(-1);
    form[2][1] = Scalar::int(-1);
    // G₂ roots in (f_1, f_2): short ±f1, ±f2, ±(f1+f2); long ±(f1−f2), ±(2f1+f2), ±(f1+2f2).
    let g2: Vec<[i64; 2]> = vec![
        [1, 0],
        [0, 1],
        [1, 1],
        [1, -1],
        [2, 1],
        [1, 2],
        [-1, 0],
        [0, -1],
        [-1, -1],
        [-1, 1],
        [-2, -1],
        [-1, -2],
    ];
    let shorts: Vec<[i64; 2]> = vec![[1, 0], [0, 1], [1, 1], [-1, 0], [0, -1], [-1, -1]];
    let mut roots = Vec::new();
    for s in [2, -2] {
        roots.push((vec![s, 0, 0], Parity::Even));
    }
    for g in &g2 {
        roots.push((vec![0, g[0], g[1]], Parity::Even));
    }
    for s in [1, -1] {
        roots.push((vec![s, 0, 0], Parity::Odd));
        for sh in &shorts {
            roots.push((vec![s, sh[0], sh[1]], Parity::Odd));
        }
    }
    Ambient {
        dim,
        form,
        roots,
        // α_1 = t − f_1 − f_2, α_2 = f_1 (short), α_3 = f_2 − f_1 (long).
        simple: vec![vec![1, -1, -1], vec![0, 1, 0], vec![0, -1, 1]],
        simple_parities: vec![Parity::Odd, Parity::Even, Parity::Even],
    }
}

fn ambient_f4() -> Ambient {
    // Coordinates (s, E_1, E_2, E_3); form diag(−3,1,1,1).
    let dim = 4;
    let entries = [
        Scalar::int(-3),
        Scalar::int(1),
        Scalar::int(1),
        Scalar::int(1),
    ];
    let mut roots = Vec::new();
    for s in [2, -2] {
        roots.push((unit(dim, 0, s), Parity::Even));
    }
    for i in 1..4 {
        for s in [2, -2] {
            roots.push((unit(dim, i, s), Parity::Even));
        }
        for j in (i + 1)..4 {
            for (si, sj) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                roots.push((add2(dim, i, si, j, sj), Parity::Even));
            }
        }
    }
    for s0 in [1, -1] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                for s3 in [1i64, -1] {
                    roots.push((vec![s0, s1, s2, s3], Parity::Odd));
                }
            }
        }
    }
    Ambient {
        dim,
        form: diag_form(&entries),
        roots,
        // α_1 = s−E_1−E_2−E_3, α_2 = 2E_3, α_3 = 2E_2−2E_3, α_4 = 2E_1−2E_2.
        simple: vec![
            vec![1, -1, -1, -1],
            vec![0, 0, 0, 2],
            vec![0, 0, 2, -2],
            vec![0, 2, -2, 0],
        ],
        simple_parities: vec![Parity::Odd, Parity::Even, Parity::Even, Parity::Even],
    }
}

fn ambient_for(tag: TypeTag) -> Result<Ambient> {
    match tag {
        TypeTag::A { m, n } => Ok(ambient_a(m, n)),
        TypeTag::B { m, n } => {
            if n == 0 {
                return Err(Error::InvalidParams("B(m,n) requires n ≥ 1".into()));
            }
            Ok(ambient_b(m, n))
        }
        TypeTag::C { n } => {
            if n < 2 {
                return Err(Error::InvalidParams("C(n) requires n ≥ 2".into()));
            }
            Ok(ambient_c(n))
        }
        TypeTag::D { m, n } => {
            if m < 2 || n == 0 {
                return Err(Error::InvalidParams("D(m,n) requires m ≥ 2, n ≥ 1".into()));
            }
            Ok(ambient_d(m, n))
        }
        TypeTag::D21a { a } => {
            if let Some(a) = a {
                if a.is_zero() || a == Rat::from_integer(-1) {
                    return Err(Error::ParameterA);
                }
            }
            Ok(ambient_d21a(a))
        }
        TypeTag::G3 => Ok(ambient_g3()),
        TypeTag::F4 => Ok(ambient_f4()),
    }
}

/// A finite basic classical super root system in simple-base coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteRootSystem {
    pub type_tag: TypeTag,
    pub rank: usize,
    /// Parity flag per simple root (diagram order).
    pub parities: Vec<Parity>,
    /// Form values on simple roots.
    pub gram: Vec<Vec<Scalar>>,
    /// All positive roots, sorted.
    pub positive_roots: Vec<Root>,
    /// θ = −α₀ + δ: the highest root, in simple-base coordinates.
    pub alpha0_expansion: Vec<i64>,
    /// True for A(n,n) built through the ambient-gated constructor.
    pub ambient_only: bool,
    #[serde(skip)]
    root_index: BTreeSet<Root>,
}

impl FiniteRootSystem {
    /// Build a finite system. Rejects A(n,n); use [`build_finite_ambient`]
    /// for the pgl(n+1,n+1) realization.
    pub fn build(tag: TypeTag) -> Result<FiniteRootSystem> {
        if let TypeTag::A { m, n } = tag {
            if m == n {
                return Err(Error::BaseCoordinateMode);
            }
        }
        Self::build_inner(tag, false)
    }

    /// Ambient-gated constructor: also accepts A(n,n) (pgl convention).
    pub fn build_ambient(tag: TypeTag) -> Result<FiniteRootSystem> {
        let ambient_only = matches!(tag, TypeTag::A { m, n } if m == n);
        Self::build_inner(tag, ambient_only)
    }

    fn build_inner(tag: TypeTag, ambient_only: bool) -> Result<FiniteRootSystem> {
        let amb = ambient_for(tag)?;
        let rank = amb.simple.len();
        let cols: Vec<Vec<i64>> = (0..rank)
            .map(|j| (0..amb.dim).map(|i| amb.simple[j][i]).collect())
            .collect();

        let mut all = Vec::with_capacity(amb.roots.len());
        for (vec, parity) in &amb.roots {
            let coeffs = linalg::solve_columns_int(&cols, vec).ok_or_else(|| {
                Error::InvalidParams(format!(
                    "{tag}: ambient root {vec:?} has no integer base expansion"
                ))
            })?;
            let root = Root::finite(coeffs);
            // Consistency: parity from the coefficient rule must agree.
            let parity_rule = parity_from_coeffs(&root, &amb.simple_parities);
            debug_assert_eq!(parity_rule, *parity, "{tag}: parity mismatch on {root}");
            all.push((root, *parity, vec.clone()));
        }

        let mut positive_roots = Vec::new();
        for (root, _, _) in &all {
            if root.is_nonneg() {
                positive_roots.push(root.clone());
            } else if !root.is_nonpos() {
                return Err(Error::InvalidParams(format!(
                    "{tag}: root {root} is not sign-uniform over the base"
                )));
            }
        }
        positive_roots.sort();

        let mut gram = vec![vec![Scalar::ZERO; rank]; rank];
        for i in 0..rank {
            for j in 0..rank {
                gram[i][j] = amb.form_value(&amb.simple[i], &amb.simple[j]);
            }
        }

        // θ: the unique positive root of maximal height, checked dominant.
        let theta = positive_roots
            .iter()
            .max_by_key(|r| r.height())
            .expect("nonempty root set")
            .clone();
        for r in &positive_roots {
            if r.coeffs.iter().zip(&theta.coeffs).any(|(c, t)| c > t) {
                return Err(Error::InvalidParams(format!(
                    "{tag}: no dominant highest root ({r} vs {theta})"
                )));
            }
        }

        let root_index: BTreeSet<Root> = all.iter().map(|(r, _, _)| r.clone()).collect();
        let sys = FiniteRootSystem {
            type_tag: tag,
            rank,
            parities: amb.simple_parities.clone(),
            gram,
            positive_roots,
            alpha0_expansion: theta.coeffs,
            ambient_only,
            root_index,
        };

        // Form consistency: gram-computed values agree with ambient dot
        // products on every pair of simple roots by construction; cross-check
        // a full pass over the roots.
        for (root, _, vec) in &all {
            let via_gram = sys.form(root, root)?;
            let via_ambient = amb.form_value(vec, vec);
            if via_gram != via_ambient {
                return Err(Error::InvalidParams(format!(
                    "{tag}: form mismatch on {root}: {via_gram} vs {via_ambient}"
                )));
            }
        }
        Ok(sys)
    }

    /// Rebuild the membership index after deserialization.
    pub fn reindex(&mut self) {
        self.root_index = self
            .positive_roots
            .iter()
            .flat_map(|r| [r.clone(), r.neg()])
            .collect();
    }

    pub fn is_root(&self, v: &Root) -> bool {
        v.delta == 0 && v.rank() == self.rank && self.root_index.contains(v)
    }

    /// θ as a Root.
    pub fn theta(&self) -> Root {
        Root::finite(self.alpha0_expansion.clone())
    }

    /// Bilinear form on base-coordinate vectors (not necessarily roots).
    pub fn form(&self, x: &Root, y: &Root) -> Result<Scalar> {
        if x.rank() != self.rank || y.rank() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: x.rank().max(y.rank()),
            });
        }
        let mut acc = Scalar::ZERO;
        for (i, &xi) in x.coeffs.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.coeffs.iter().enumerate() {
                if yj == 0 {
                    continue;
                }
                acc += self.gram[i][j].scale(Rat::from_integer(xi * yj));
            }
        }
        Ok(acc)
    }

    /// Parity of a root of the system.
    pub fn parity_of(&self, root: &Root) -> Result<Parity> {
        if !self.is_root(root) {
            return Err(Error::NotARoot(format!("{root}")));
        }
        Ok(parity_from_coeffs(root, &self.parities))
    }

    pub fn is_isotropic(&self, root: &Root) -> Result<bool> {
        if !self.is_root(root) {
            return Err(Error::NotARoot(format!("{root}")));
        }
        Ok(self.form(root, root)?.is_zero())
    }

    /// Roots filtered by parity and sign, in lexicographic order.
    pub fn all_roots(&self, parity: Option<Parity>, positive: Option<bool>) -> Vec<Root> {
        let mut out = Vec::new();
        for r in &self.positive_roots {
            let p = parity_from_coeffs(r, &self.parities);
            if parity.map_or(true, |want| want == p) {
                if positive != Some(false) {
                    out.push(r.clone());
                }
                if positive != Some(true) {
                    out.push(r.neg());
                }
            }
        }
        out.sort();
        out
    }

    pub fn positive_count(&self, parity: Parity) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| parity_from_coeffs(r, &self.parities) == parity)
            .count()
    }
}

/// Parity rule: sum of coefficients over odd base indices, mod 2 (δ even).
pub fn parity_from_coeffs(root: &Root, base_parities: &[Parity]) -> Parity {
    let odd_sum: i64 = root
        .coeffs
        .iter()
        .zip(base_parities)
        .filter(|(_, p)| **p == Parity::Odd)
        .map(|(c, _)| *c)
        .sum();
    if odd_sum.rem_euclid(2) == 0 {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// Convenience constructor mirroring the CLI surface.
pub fn build_finite(tag: TypeTag) -> Result<FiniteRootSystem> {
    FiniteRootSystem::build(tag)
}

pub fn build_finite_ambient(tag: TypeTag) -> Result<FiniteRootSystem> {
    FiniteRootSystem::build_ambient(tag)
}
