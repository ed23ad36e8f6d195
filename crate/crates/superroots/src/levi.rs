//! Levi root data extracted from parabolic subsets: component splitting,
//! type recognition (up to base permutation, odd reflections and a global
//! form rescale) and cuspidality verdicts.

use crate::affine::AffineRootSystem;
use crate::error::{Error, Result};
use crate::finite::{build_finite_ambient, TypeTag};
use crate::parabolic::ParabolicSubset;
use crate::root::{Parity, Root};
use crate::scalar::{Rat, Scalar};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet, VecDeque};

/// Root datum of the Levi component G_P⁰.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviDatum {
    /// P⁰ on the extraction window.
    pub root_set: Vec<Root>,
    /// True iff P⁰ contains an imaginary root.
    pub is_affine: bool,
    /// Simple system inside P⁰ (indecomposables of the positive side of a
    /// generic rational functional); empty for a torus.
    pub chosen_base: Vec<Root>,
}

/// Canonical component type labels.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LeviType {
    /// Even simple types; A1 = B1 = C1, B2 = C2 and D3 = A3 are canonicalized
    /// to TypeA(1), TypeC(2) and TypeA(3).
    TypeA(usize),
    TypeB(usize),
    TypeC(usize),
    TypeD(usize),
    G2,
    F4,
    /// sl(p+1|q+1), p ≤ q canonical; (0,0) is the degenerate sl(1|1) datum.
    SuperA(usize, usize),
    /// osp(2m+1|2n), m ≥ 0 (m = 0 is osp(1,2n)).
    SuperB(usize, usize),
    /// osp(2|2n−2), n ≥ 2; n = 2 is canonicalized to SuperA(0,1).
    SuperC(usize),
    /// osp(2m|2n), m ≥ 2. D(2,q) and D(3,q) are the cuspidal ones.
    SuperD(usize, usize),
    /// D(2,1;a)-family member, tagged by the canonical even-norm triple.
    D21 { triple: [Scalar; 3] },
    SuperG3,
    SuperF4,
    /// δ ∈ P⁰: affine Levi over the listed finite component types.
    Affine(Vec<LeviType>),
}

impl LeviType {
    /// Display with the osp translation applied where the tables use it.
    pub fn label(&self) -> String {
        match self {
            LeviType::TypeA(k) => format!("A{k}"),
            LeviType::TypeB(k) => format!("B{k}"),
            LeviType::TypeC(k) => format!("C{k}"),
            LeviType::TypeD(k) => format!("D{k}"),
            LeviType::G2 => "G2".into(),
            LeviType::F4 => "F4".into(),
            LeviType::SuperA(p, q) => format!("A({p},{q})"),
            LeviType::SuperB(m, n) => format!("osp({},{})", 2 * m + 1, 2 * n),
            LeviType::SuperC(n) => format!("C({n})"),
            LeviType::SuperD(m, n) => format!("osp({},{})", 2 * m, 2 * n),
            LeviType::D21 { triple } => format!(
                "D(2,1;a)[{},{},{}]",
                triple[0], triple[1], triple[2]
            ),
            LeviType::SuperG3 => "G(3)".into(),
            LeviType::SuperF4 => "F(4)".into(),
            LeviType::Affine(parts) => {
                let inner: Vec<String> = parts.iter().map(|p| p.label()).collect();
                format!("affine({})", inner.join("+"))
            }
        }
    }

    /// Cuspidal component types: A and C in the even case, osp(m,2n) for
    /// m ∈ {1,3,4,5,6}, and D(2,1;a).
    pub fn is_cuspidal_type(&self) -> bool {
        match self {
            LeviType::TypeA(_) | LeviType::TypeC(_) => true,
            LeviType::SuperB(m, _) => *m <= 2,          // osp(1|3|5, 2n)
            LeviType::SuperD(m, _) => *m == 2 || *m == 3, // osp(4|6, 2n)
            LeviType::D21 { .. } => true,
            _ => false,
        }
    }
}

/// One census entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviReport {
    /// Indices into the distinguished base (0 = α₀), or a descriptor for
    /// non-standard parabolics.
    pub source: String,
    pub components: Vec<LeviType>,
    pub cuspidal: bool,
    pub parabolic_ok: bool,
    pub depth: i64,
    pub notes: String,
}

/// Generic rational functional with prime-power weights: vanishes only on
/// the zero vector as long as every coefficient stays below P/2 in absolute
/// value, which holds on all windows we enumerate.
fn generic_value(root: &Root) -> i128 {
    const P: i128 = 101;
    let mut acc = root.delta as i128;
    for &c in root.coeffs.iter().rev() {
        debug_assert!((c as i128).abs() < P / 2);
        acc = acc * P + c as i128;
    }
    acc
}

/// Extract the Levi datum of P at the given depth.
pub fn levi_of(aff: &AffineRootSystem, p: &ParabolicSubset, depth: i64) -> LeviDatum {
    let d = p.decompose(aff, depth);
    let root_set = d.zero;
    let is_affine = root_set.iter().any(|r| r.is_imaginary_vector());
    let chosen_base = if is_affine {
        Vec::new()
    } else {
        chosen_base_of(&root_set)
    };
    LeviDatum {
        root_set,
        is_affine,
        chosen_base,
    }
}

/// Indecomposables of the positive side of the generic functional.
fn chosen_base_of(roots: &[Root]) -> Vec<Root> {
    let positive: HashSet<Root> = roots
        .iter()
        .filter(|r| generic_value(r) > 0)
        .cloned()
        .collect();
    let mut base: Vec<Root> = positive
        .iter()
        .filter(|r| {
            !positive
                .iter()
                .any(|x| x != *r && positive.contains(&r.sub(x)))
        })
        .cloned()
        .collect();
    base.sort();
    base
}

/// Split a finite Levi datum into connected components under the form.
pub fn components(aff: &AffineRootSystem, levi: &LeviDatum) -> Result<Vec<LeviDatum>> {
    if levi.is_affine {
        return Err(Error::AffineLevi);
    }
    let base = &levi.chosen_base;
    let n = base.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if !seen[j] && !aff.form(&base[i], &base[j])?.is_zero() {
                    seen[j] = true;
                    comp.push(j);
                    queue.push_back(j);
                }
            }
        }
        let comp_base: Vec<Root> = comp.iter().map(|&i| base[i].clone()).collect();
        // Component root set: roots of P⁰ lying in the span of the component
        // base (uniform-sign combinations of it).
        let cols: Vec<Vec<i64>> = comp_base.iter().map(|r| r.as_vec()).collect();
        let root_set: Vec<Root> = levi
            .root_set
            .iter()
            .filter(|r| crate::linalg::solve_columns_int(&cols, &r.as_vec()).is_some())
            .cloned()
            .collect();
        out.push(LeviDatum {
            root_set,
            is_affine: false,
            chosen_base: comp_base,
        });
    }
    // Cross-component orthogonality is structural; assert it cheaply.
    for a in 0..out.len() {
        for b in (a + 1)..out.len() {
            for x in &out[a].chosen_base {
                for y in &out[b].chosen_base {
                    debug_assert!(aff.form(x, y)?.is_zero());
                }
            }
        }
    }
    Ok(out)
}

/// Count signature: (rank, positive even, positive odd, positive
/// non-isotropic odd).
fn signature(aff: &AffineRootSystem, comp: &LeviDatum) -> (usize, usize, usize, usize) {
    let rank = comp.chosen_base.len();
    let mut even = 0;
    let mut odd = 0;
    let mut noniso = 0;
    for r in &comp.root_set {
        if generic_value(r) <= 0 {
            continue;
        }
        match aff.parity(r) {
            Parity::Even => even += 1,
            Parity::Odd => {
                odd += 1;
                if !aff.form(r, r).map(|v| v.is_zero()).unwrap_or(true) {
                    noniso += 1;
                }
            }
        }
    }
    (rank, even, odd, noniso)
}

/// Candidate types with the same count signature, rank ≤ cap.
fn candidates_for(sig: (usize, usize, usize, usize)) -> Vec<TypeTag> {
    let (rank, even, odd, noniso) = sig;
    let mut out = Vec::new();
    // A(p,q): rank p+q+1, even p(p+1)/2+q(q+1)/2, odd (p+1)(q+1), noniso 0.
    for p in 0..=rank.saturating_sub(1) {
        let q = rank - 1 - p;
        if p > q {
            continue; // canonical order
        }
        if p * (p + 1) / 2 + q * (q + 1) / 2 == even && (p + 1) * (q + 1) == odd && noniso == 0 {
            out.push(TypeTag::A { m: p, n: q });
        }
    }
    // B(m,n), m ≥ 0, n ≥ 1: rank m+n, even m²+n², odd n+2mn, noniso n.
    for m in 0..rank {
        let n = rank - m;
        if m * m + n * n == even && n + 2 * m * n == odd && n == noniso {
            out.push(TypeTag::B { m, n });
        }
    }
    // C(n), n ≥ 2: rank n, even (n−1)², odd 2(n−1), noniso 0.
    if rank >= 2 && (rank - 1) * (rank - 1) == even && 2 * (rank - 1) == odd && noniso == 0 {
        out.push(TypeTag::C { n: rank });
    }
    // D(m,n), m ≥ 2, n ≥ 1: rank m+n, even m(m−1)+n², odd 2mn, noniso 0.
    for m in 2..rank {
        let n = rank - m;
        if m * (m - 1) + n * n == even && 2 * m * n == odd && noniso == 0 {
            out.push(TypeTag::D { m, n });
        }
    }
    if rank == 3 && even == 7 && odd == 7 && noniso == 1 {
        out.push(TypeTag::G3);
    }
    if rank == 4 && even == 10 && odd == 8 && noniso == 0 {
        out.push(TypeTag::F4);
    }
    out
}

/// Classify a connected finite component.
pub fn classify(aff: &AffineRootSystem, comp: &LeviDatum) -> Result<LeviType> {
    let base = &comp.chosen_base;
    if base.is_empty() {
        return Err(Error::UnknownComponent("empty component".into()));
    }
    let all_even = base
        .iter()
        .all(|r| aff.parity(r) == Parity::Even)
        && comp
            .root_set
            .iter()
            .all(|r| aff.parity(r) == Parity::Even);
    if all_even {
        return classify_even(aff, base);
    }

    let sig = signature(aff, comp);
    // D(2,1;x)-family: three mutually orthogonal positive even roots plus
    // four positive odd ones; identified by the canonical norm triple.
    if sig == (3, 3, 4, 0) {
        let evens: Vec<&Root> = comp
            .root_set
            .iter()
            .filter(|r| generic_value(r) > 0 && aff.parity(r) == Parity::Even)
            .collect();
        let mut ok = true;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if !aff.form(evens[i], evens[j])?.is_zero() {
                    ok = false;
                }
            }
        }
        if ok {
            let norms = [
                aff.form(evens[0], evens[0])?,
                aff.form(evens[1], evens[1])?,
                aff.form(evens[2], evens[2])?,
            ];
            return Ok(LeviType::D21 {
                triple: canonical_triple(norms),
            });
        }
    }

    // Match against the catalog, trying odd-reflection-equivalent bases.
    let mut queue: VecDeque<Vec<Root>> = VecDeque::from([sorted(base.clone())]);
    let mut seen: BTreeSet<Vec<Root>> = queue.iter().cloned().collect();
    let candidates = candidates_for(sig);
    while let Some(b) = queue.pop_front() {
        for tag in &candidates {
            if let Some(ty) = match_catalog(aff, &b, *tag)? {
                return Ok(ty);
            }
        }
        for i in 0..b.len() {
            if aff.parity(&b[i]) == Parity::Odd && aff.form(&b[i], &b[i])?.is_zero() {
                let mut refl = Vec::with_capacity(b.len());
                for (j, beta) in b.iter().enumerate() {
                    if j == i {
                        refl.push(b[i].neg());
                    } else if !aff.form(beta, &b[i])?.is_zero() {
                        refl.push(beta.add(&b[i]));
                    } else {
                        refl.push(beta.clone());
                    }
                }
                let refl = sorted(refl);
                if seen.insert(refl.clone()) && seen.len() <= 512 {
                    queue.push_back(refl);
                }
            }
        }
    }
    Err(Error::UnknownComponent(format!(
        "signature {sig:?}, base gram {}",
        gram_debug(aff, base)
    )))
}

fn sorted(mut v: Vec<Root>) -> Vec<Root> {
    v.sort();
    v
}

fn gram_debug(aff: &AffineRootSystem, base: &[Root]) -> String {
    let mut rows = Vec::new();
    for x in base {
        let mut row = Vec::new();
        for y in base {
            row.push(
                aff.form(x, y)
                    .map(|v| v.display_string())
                    .unwrap_or_else(|_| "?".into()),
            );
        }
        rows.push(format!("[{}]", row.join(", ")));
    }
    rows.join(" ")
}

/// Does the base match the distinguished base of `tag` up to permutation
/// and a global rational rescale of the form?
fn match_catalog(aff: &AffineRootSystem, base: &[Root], tag: TypeTag) -> Result<Option<LeviType>> {
    let cat = build_finite_ambient(tag)
        .map_err(|e| Error::UnknownComponent(format!("catalog {tag}: {e}")))?;
    let n = base.len();
    if cat.rank != n {
        return Ok(None);
    }
    let base_par: Vec<Parity> = base.iter().map(|r| aff.parity(r)).collect();
    let mut gram = vec![vec![Scalar::ZERO; n]; n];
    for i in 0..n {
        for j in 0..n {
            gram[i][j] = aff.form(&base[i], &base[j])?;
        }
    }
    let mut perm: Vec<usize> = Vec::new();
    if permute_match(&gram, &base_par, &cat.gram, &cat.parities, &mut perm, None) {
        Ok(Some(tag_to_type(tag)))
    } else {
        Ok(None)
    }
}

fn tag_to_type(tag: TypeTag) -> LeviType {
    match tag {
        TypeTag::A { m, n } => LeviType::SuperA(m.min(n), m.max(n)),
        TypeTag::B { m, n } => LeviType::SuperB(m, n),
        TypeTag::C { n } => {
            if n == 2 {
                LeviType::SuperA(0, 1)
            } else {
                LeviType::SuperC(n)
            }
        }
        TypeTag::D { m, n } => LeviType::SuperD(m, n),
        TypeTag::D21a { .. } => unreachable!("D21 handled by the norm triple"),
        TypeTag::G3 => LeviType::SuperG3,
        TypeTag::F4 => LeviType::SuperF4,
    }
}

/// Backtracking permutation search: find σ and a nonzero scalar λ (rational,
/// or a-linear when the component carries the formal parameter) with
/// gram[i][j] = λ·cat[σ(i)][σ(j)] and matching parities. Catalog grams are
/// always rational, so λ·cat stays degree ≤ 1.
fn permute_match(
    gram: &[Vec<Scalar>],
    par: &[Parity],
    cat: &[Vec<Scalar>],
    cat_par: &[Parity],
    perm: &mut Vec<usize>,
    lambda: Option<Scalar>,
) -> bool {
    let n = gram.len();
    let i = perm.len();
    if i == n {
        return true;
    }
    'cand: for c in 0..n {
        if perm.contains(&c) || par[i] != cat_par[c] {
            continue;
        }
        let mut lam = lambda;
        for (j, &cj) in perm.iter().enumerate() {
            if !pair_consistent(&gram[i][j], &cat[c][cj], &mut lam)
                || !pair_consistent(&gram[j][i], &cat[cj][c], &mut lam)
            {
                continue 'cand;
            }
        }
        if !pair_consistent(&gram[i][i], &cat[c][c], &mut lam) {
            continue;
        }
        perm.push(c);
        if permute_match(gram, par, cat, cat_par, perm, lam) {
            return true;
        }
        perm.pop();
    }
    false
}

/// Check `x = λ·y` with rational y, inferring λ when still unknown.
fn pair_consistent(x: &Scalar, y: &Scalar, lambda: &mut Option<Scalar>) -> bool {
    match (x.is_zero(), y.is_zero()) {
        (true, true) => true,
        (true, false) | (false, true) => false,
        (false, false) => {
            let Some(yr) = y.as_rat() else {
                return false; // catalogs are rational by construction
            };
            let l = x.scale(Rat::from_integer(1) / yr);
            match lambda {
                Some(known) => *known == l,
                None => {
                    *lambda = Some(l);
                    true
                }
            }
        }
    }
}

/// Even type recognition from the Cartan graph of the base.
fn classify_even(aff: &AffineRootSystem, base: &[Root]) -> Result<LeviType> {
    let n = base.len();
    if n == 1 {
        return Ok(LeviType::TypeA(1));
    }
    // Cartan integers a_ij = 2(α_i,α_j)/(α_j,α_j) (scale-free).
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                a[i][j] = 2;
                continue;
            }
            let val = aff.form(&base[i], &base[j])?;
            if val.is_zero() {
                continue;
            }
            let norm = aff.form(&base[j], &base[j])?;
            let ratio = val.try_div(&norm).ok_or_else(|| {
                Error::UnknownComponent("irrational Cartan ratio in even component".into())
            })?;
            let twice = ratio * Rat::from_integer(2);
            if !twice.is_integer() {
                return Err(Error::UnknownComponent(format!(
                    "non-integral Cartan value {twice}"
                )));
            }
            a[i][j] = twice.to_integer();
        }
    }
    let unknown = |msg: &str| Error::UnknownComponent(format!("{msg}: {}", gram_debug(aff, base)));

    let degree: Vec<usize> = (0..n)
        .map(|i| (0..n).filter(|&j| j != i && a[i][j] != 0).count())
        .collect();
    let edge_mults: Vec<(usize, usize, i64)> = (0..n)
        .flat_map(|i| {
            let a = &a;
            ((i + 1)..n)
                .filter(move |&j| a[i][j] != 0)
                .map(move |j| (i, j, a[i][j] * a[j][i]))
        })
        .collect();
    if edge_mults.len() != n - 1 {
        return Err(unknown("even component graph is not a tree"));
    }
    let max_mult = edge_mults.iter().map(|e| e.2).max().unwrap_or(1);
    let trivalent: Vec<usize> = (0..n).filter(|&i| degree[i] >= 3).collect();

    match (max_mult, trivalent.len()) {
        (1, 0) => Ok(LeviType::TypeA(n)), // path, simply laced
        (1, 1) => {
            // fork: D or E by leg lengths
            let center = trivalent[0];
            if degree[center] != 3 {
                return Err(unknown("fork of degree > 3"));
            }
            let mut legs: Vec<usize> = (0..n)
                .filter(|&j| a[center][j] != 0 && j != center)
                .map(|start| leg_length(&a, center, start))
                .collect();
            legs.sort();
            match legs.as_slice() {
                [1, 1, _] => {
                    if n == 4 && legs == [1, 1, 1] {
                        Ok(LeviType::TypeD(4))
                    } else {
                        Ok(LeviType::TypeD(n))
                    }
                }
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => Err(unknown("E-type component")),
                _ => Err(unknown("unrecognized fork")),
            }
        }
        (2, 0) => {
            // path with one double edge
            let doubles: Vec<&(usize, usize, i64)> =
                edge_mults.iter().filter(|e| e.2 == 2).collect();
            if doubles.len() != 1 {
                return Err(unknown("multiple double edges"));
            }
            if n == 2 {
                return Ok(LeviType::TypeC(2)); // B2 = C2 canonical
            }
            let &(u, v, _) = doubles[0];
            // The end node of the path among {u, v}, if any.
            let end = if degree[u] == 1 {
                Some((u, v))
            } else if degree[v] == 1 {
                Some((v, u))
            } else {
                None
            };
            match end {
                None => {
                    if n == 4 {
                        Ok(LeviType::F4)
                    } else {
                        Err(unknown("interior double edge, rank ≠ 4"))
                    }
                }
                Some((e, inner)) => {
                    // a[inner][e] = −2 means the end root e is short (B);
                    // a[e][inner] = −2 means e is long (C).
                    if a[inner][e] == -2 {
                        Ok(LeviType::TypeB(n))
                    } else if a[e][inner] == -2 {
                        Ok(LeviType::TypeC(n))
                    } else {
                        Err(unknown("inconsistent double edge"))
                    }
                }
            }
        }
        (3, 0) => {
            if n == 2 {
                Ok(LeviType::G2)
            } else {
                Err(unknown("triple edge, rank ≠ 2"))
            }
        }
        _ => Err(unknown("unrecognized even diagram")),
    }
}

fn leg_length(a: &[Vec<i64>], center: usize, start: usize) -> usize {
    let n = a.len();
    let mut len = 1;
    let mut prev = center;
    let mut cur = start;
    loop {
        let next: Vec<usize> = (0..n)
            .filter(|&j| j != prev && j != cur && a[cur][j] != 0)
            .collect();
        match next.as_slice() {
            [] => return len,
            [one] => {
                prev = cur;
                cur = *one;
                len += 1;
            }
            _ => return len, // branches again; handled as unknown upstream
        }
    }
}

/// Canonical representative of a norm triple up to sorting and a rational
/// rescale (the D(2,1;a)-parameter orbit invariant).
pub fn canonical_triple(norms: [Scalar; 3]) -> [Scalar; 3] {
    // Clear denominators and divide by the integer-content gcd.
    let mut denom: i64 = 1;
    for s in &norms {
        denom = num_integer::lcm(denom, *s.c.denom());
        denom = num_integer::lcm(denom, *s.k.denom());
    }
    let ints: Vec<(i64, i64)> = norms
        .iter()
        .map(|s| {
            let c = s.c * Rat::from_integer(denom);
            let k = s.k * Rat::from_integer(denom);
            (c.to_integer(), k.to_integer())
        })
        .collect();
    let mut g: i64 = 0;
    for (c, k) in &ints {
        g = num_integer::gcd(g, *c);
        g = num_integer::gcd(g, *k);
    }
    if g == 0 {
        g = 1;
    }
    let build = |sign: i64| -> [Scalar; 3] {
        let mut v: Vec<Scalar> = ints
            .iter()
            .map(|(c, k)| Scalar {
                c: Rat::new(sign * c, g),
                k: Rat::new(sign * k, g),
            })
            .collect();
        v.sort_by(|a, b| a.canonical_cmp(b));
        [v[0], v[1], v[2]]
    };
    let pos = build(1);
    let neg = build(-1);
    // Deterministic pick between the two sign normalizations.
    let key = |t: &[Scalar; 3]| (t[0].k, t[0].c, t[1].k, t[1].c, t[2].k, t[2].c);
    if key(&pos) <= key(&neg) {
        pos
    } else {
        neg
    }
}

/// True iff every classified component is a cuspidal type. A torus (empty
/// list) passes; affine components are never cuspidal.
pub fn is_cuspidal(types: &[LeviType]) -> bool {
    types.iter().all(|t| t.is_cuspidal_type())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    /// One report per S ⊆ π.
    Standard,
}

/// Standard census: one LeviReport per subset of the distinguished base.
pub fn census(aff: &AffineRootSystem, depth: i64, audit_parabolic: bool) -> Result<Vec<LeviReport>> {
    let base = aff.distinguished_base();
    let n = base.roots.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let idx: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let s: Vec<Root> = idx.iter().map(|&i| base.roots[i].clone()).collect();
        let p = ParabolicSubset::standard(aff, &s)?;
        let report = report_for(aff, &p, &format!("S={idx:?}"), depth, audit_parabolic)?;
        out.push(report);
    }
    Ok(out)
}

/// Build the report for one parabolic subset.
pub fn report_for(
    aff: &AffineRootSystem,
    p: &ParabolicSubset,
    source: &str,
    depth: i64,
    audit_parabolic: bool,
) -> Result<LeviReport> {
    let parabolic_ok = if audit_parabolic {
        p.validate(aff, depth).is_ok()
    } else {
        true
    };
    let datum = levi_of(aff, p, depth);
    let mut notes = String::new();
    let (components_list, cuspidal) = if datum.is_affine {
        let parts = affine_component_types(aff, &datum, depth)?;
        notes.push_str("affine Levi: excluded from cuspidality; ");
        (vec![LeviType::Affine(parts)], false)
    } else {
        // Window saturation guard: a finite Levi must not touch the boundary
        // band, otherwise the window was too shallow.
        if datum
            .root_set
            .iter()
            .any(|r| r.delta.abs() >= depth.max(2) - 1)
        {
            notes.push_str("warning: P⁰ reaches the window boundary; ");
        }
        let comps = components(aff, &datum)?;
        let mut types = Vec::new();
        for c in &comps {
            types.push(classify(aff, c)?);
        }
        types.sort();
        let cusp = is_cuspidal(&types);
        (types, cusp)
    };
    Ok(LeviReport {
        source: source.to_string(),
        components: components_list,
        cuspidal,
        parabolic_ok,
        depth,
        notes,
    })
}

/// For an affine Levi, classify the finite-part root system of the real
/// roots in P⁰ (imaginary part removed).
fn affine_component_types(
    aff: &AffineRootSystem,
    datum: &LeviDatum,
    _depth: i64,
) -> Result<Vec<LeviType>> {
    let finite_parts: BTreeSet<Root> = datum
        .root_set
        .iter()
        .filter(|r| !r.is_imaginary_vector())
        .map(|r| r.finite_part())
        .collect();
    if finite_parts.is_empty() {
        return Ok(Vec::new());
    }
    let root_set: Vec<Root> = finite_parts.into_iter().collect();
    let chosen_base = chosen_base_of(&root_set);
    let finite_datum = LeviDatum {
        root_set,
        is_affine: false,
        chosen_base,
    };
    let comps = components(aff, &finite_datum)?;
    let mut types = Vec::new();
    for c in &comps {
        types.push(classify(aff, c)?);
    }
    types.sort();
    Ok(types)
}
