//! Small exact linear algebra: rational elimination and integer lattice
//! membership. Everything here works on tiny matrices (rank ≤ 13).

use crate::scalar::Rat;
use num_integer::Integer;
use num_traits::Zero;

/// Solve `M x = rhs` over the rationals where `M` is given by columns.
/// Returns `None` when the system is inconsistent or underdetermined with
/// the columns dependent (we only use it with independent columns).
pub fn solve_columns(cols: &[Vec<Rat>], rhs: &[Rat]) -> Option<Vec<Rat>> {
    let n = cols.len();
    if n == 0 {
        return rhs.iter().all(|x| x.is_zero()).then(Vec::new);
    }
    let m = cols[0].len();
    debug_assert!(cols.iter().all(|c| c.len() == m) && rhs.len() == m);

    // Augmented row-major matrix [cols | rhs].
    let mut a = vec![vec![Rat::zero(); n + 1]; m];
    for (j, col) in cols.iter().enumerate() {
        for i in 0..m {
            a[i][j] = col[i];
        }
    }
    for i in 0..m {
        a[i][n] = rhs[i];
    }

    let mut pivot_rows = Vec::with_capacity(n);
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            return None; // dependent columns
        };
        a.swap(row, p);
        let inv = a[row][col];
        for x in a[row].iter_mut() {
            *x = *x / inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=n {
                    let sub = a[row][c] * f;
                    a[r][c] = a[r][c] - sub;
                }
            }
        }
        pivot_rows.push(row);
        row += 1;
    }
    // Consistency: remaining rows must have zero rhs.
    for r in row..m {
        if !a[r][n].is_zero() {
            return None;
        }
    }
    Some((0..n).map(|j| a[pivot_rows[j]][n]).collect())
}

/// Solve with integer columns/rhs, demanding an integer solution.
pub fn solve_columns_int(cols: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let rcols: Vec<Vec<Rat>> = cols
        .iter()
        .map(|c| c.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let rrhs: Vec<Rat> = rhs.iter().map(|&x| Rat::from_integer(x)).collect();
    let sol = solve_columns(&rcols, &rrhs)?;
    sol.iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// Whether the columns are linearly independent over Q.
pub fn columns_independent(cols: &[Vec<i64>]) -> bool {
    rank_int(cols) == cols.len()
}

fn rank_int(cols: &[Vec<i64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let m = cols[0].len();
    let mut a: Vec<Vec<Rat>> = (0..m)
        .map(|i| cols.iter().map(|c| Rat::from_integer(c[i])).collect())
        .collect();
    let n = cols.len();
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let inv = a[rank][col];
        for x in a[rank].iter_mut() {
            *x = *x / inv;
        }
        for r in 0..m {
            if r != rank && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..n {
                    let sub = a[rank][c] * f;
                    a[r][c] = a[r][c] - sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of the rational annihilator {f : f·g = 0 for all g in rows}.
pub fn annihilator_basis(rows: &[Vec<i64>], dim: usize) -> Vec<Vec<Rat>> {
    let mut a: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| Rat::from_integer(x)).collect())
        .collect();
    let m = a.len();
    let mut pivot_col = vec![usize::MAX; m];
    let mut row = 0;
    for col in 0..dim {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col];
        for x in a[row].iter_mut() {
            *x = *x / inv;
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..dim {
                    let sub = a[row][c] * f;
                    a[r][c] = a[r][c] - sub;
                }
            }
        }
        pivot_col[row] = col;
        row += 1;
        if row == m {
            break;
        }
    }
    let pivots: Vec<usize> = pivot_col[..row].to_vec();
    let mut basis = Vec::new();
    for free in (0..dim).filter(|c| !pivots.contains(c)) {
        let mut f = vec![Rat::zero(); dim];
        f[free] = Rat::from_integer(1);
        for (r, &pc) in pivots.iter().enumerate() {
            f[pc] = -a[r][free];
        }
        basis.push(f);
    }
    basis
}

/// Integer lattice membership: is `v` an integer combination of `gens`?
/// Column-style Hermite reduction followed by forward substitution; handles
/// dependent generator sets.
pub fn in_lattice(gens: &[Vec<i64>], v: &[i64]) -> bool {
    if gens.is_empty() {
        return v.iter().all(|&x| x == 0);
    }
    let m = gens[0].len();
    debug_assert!(gens.iter().all(|g| g.len() == m) && v.len() == m);
    let mut cols: Vec<Vec<i64>> = gens.to_vec();
    let mut target = v.to_vec();

    let mut active = 0usize; // columns before `active` are pivots already used
    for row in 0..m {
        // Reduce entries in this row (among active columns) to a single gcd.
        loop {
            let mut nonzero: Vec<usize> = (active..cols.len())
                .filter(|&j| cols[j][row] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            // pick two with smallest absolute value and combine
            nonzero.sort_by_key(|&j| cols[j][row].abs());
            let (ja, jb) = (nonzero[0], nonzero[1]);
            let q = Integer::div_floor(&cols[jb][row], &cols[ja][row]);
            for i in 0..m {
                cols[jb][i] -= q * cols[ja][i];
            }
        }
        if let Some(j) = (active..cols.len()).find(|&j| cols[j][row] != 0) {
            cols.swap(active, j);
            let g = cols[active][row];
            if target[row] % g != 0 {
                return false;
            }
            let q = target[row] / g;
            for i in 0..m {
                target[i] -= q * cols[active][i];
            }
            active += 1;
        } else if target[row] != 0 {
            return false;
        }
    }
    target.iter().all(|&x| x == 0)
}
