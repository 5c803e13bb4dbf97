//! `2m × 2m` matrix computations in `SO_{2m}` for the even quadric `Q_{2m-2}`:
//! Chevalley generators, the factored lower-unipotent element `ū₂`, Plücker
//! coordinates from its bottom row, and ordinary minors.
//!
//! Minors are written `D^{rows}_{cols}` with 1-based indices.

use std::collections::HashMap;

use thiserror::Error;

use crate::arith::{LaurentPolynomial as LP, Symbol};
use crate::lg_zoo::{a_sym, b_sym, p_sym, pp_sym};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LieError {
    #[error("rank m must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("generator index {i} out of range for m = {m}")]
    GeneratorIndex { m: usize, i: usize },
    #[error("minor needs as many rows as columns ({rows} vs {cols})")]
    SizeMismatch { rows: usize, cols: usize },
    #[error("index out of range in minor")]
    IndexRange,
    #[error("matrix dimensions do not agree")]
    Shape,
}

/// Square matrix with Laurent polynomial entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    n: usize,
    entries: Vec<LP>,
}

impl PolyMatrix {
    pub fn zero(n: usize) -> Self {
        PolyMatrix { n, entries: vec![LP::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = LP::one();
        }
        m
    }

    /// Elementary matrix `E_{ij}` (1-based).
    pub fn elementary(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n);
        m.entries[(i - 1) * n + (j - 1)] = LP::one();
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &LP {
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, LieError> {
        if self.n != other.n {
            return Err(LieError::Shape);
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(PolyMatrix { n: self.n, entries })
    }

    pub fn scale(&self, c: &LP) -> Self {
        PolyMatrix { n: self.n, entries: self.entries.iter().map(|e| e * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LieError> {
        if self.n != other.n {
            return Err(LieError::Shape);
        }
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k * n + j];
                    if !b.is_zero() {
                        out.entries[i * n + j] = &out.entries[i * n + j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn is_lower_unipotent(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            self.entries[i * n + i] == LP::one() && (i + 1..n).all(|j| self.entries[i * n + j].is_zero())
        })
    }

    /// Determinant of the submatrix on 1-based `rows × cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<LP, LieError> {
        if rows.len() != cols.len() {
            return Err(LieError::SizeMismatch { rows: rows.len(), cols: cols.len() });
        }
        if rows.iter().chain(cols).any(|&i| i == 0 || i > self.n) {
            return Err(LieError::IndexRange);
        }
        let mut memo = HashMap::new();
        Ok(self.laplace(rows, cols, 0, (1u64 << cols.len()) - 1, &mut memo))
    }

    // expansion along rows[r]; `mask` marks the columns still free
    fn laplace(&self, rows: &[usize], cols: &[usize], r: usize, mask: u64, memo: &mut HashMap<u64, LP>) -> LP {
        if r == rows.len() {
            return LP::one();
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let mut total = LP::zero();
        let mut sign_pos = 0;
        for (k, &c) in cols.iter().enumerate() {
            if mask & (1 << k) == 0 {
                continue;
            }
            let e = self.get(rows[r], c);
            if !e.is_zero() {
                let sub = self.laplace(rows, cols, r + 1, mask & !(1 << k), memo);
                let t = e * &sub;
                total = if sign_pos % 2 == 0 { &total + &t } else { &total - &t };
            }
            sign_pos += 1;
        }
        memo.insert(mask, total.clone());
        total
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<Vec<String>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.entries[i * self.n + j].to_string()).collect())
            .collect();
        serde_json::json!({"size": self.n, "rows": rows})
    }
}

fn check_rank(m: usize) -> Result<(), LieError> {
    if m < 3 {
        Err(LieError::RankTooSmall(m))
    } else {
        Ok(())
    }
}

/// Raising generator `e_i` of `so_{2m}`.
pub fn chevalley_e(m: usize, i: usize) -> Result<PolyMatrix, LieError> {
    check_rank(m)?;
    let n = 2 * m;
    let e = PolyMatrix::elementary;
    if i >= 1 && i < m {
        e(n, i, i + 1).add(&e(n, n - i, n - i + 1))
    } else if i == m {
        e(n, m - 1, m + 1).add(&e(n, m, m + 2))
    } else {
        Err(LieError::GeneratorIndex { m, i })
    }
}

/// All `(e_i, f_i = e_iᵀ)` for `i = 1..m`.
pub fn chevalley_generators(m: usize) -> Result<Vec<(PolyMatrix, PolyMatrix)>, LieError> {
    (1..=m)
        .map(|i| {
            let e = chevalley_e(m, i)?;
            let f = e.transpose();
            Ok((e, f))
        })
        .collect()
}

/// `y_i(t) = exp(t f_i) = I + t f_i`, exact because `f_i² = 0`.
pub fn one_param_subgroup(m: usize, i: usize, t: &LP) -> Result<PolyMatrix, LieError> {
    let f = chevalley_e(m, i)?.transpose();
    PolyMatrix::identity(2 * m).add(&f.scale(t))
}

/// `ū₂ = y_1(a_1)⋯y_{m-2}(a_{m-2}) y_m(d) y_{m-1}(c) y_{m-2}(b_{m-2})⋯y_1(b_1)`.
pub fn factored_u2(m: usize) -> Result<PolyMatrix, LieError> {
    check_rank(m)?;
    let mut factors: Vec<(usize, Symbol)> = (1..=m - 2).map(|i| (i, a_sym(i))).collect();
    factors.push((m, Symbol::new("d")));
    factors.push((m - 1, Symbol::new("c")));
    factors.extend((1..=m - 2).rev().map(|i| (i, b_sym(i))));
    let mut u = PolyMatrix::identity(2 * m);
    for (i, s) in factors {
        u = u.mul(&one_param_subgroup(m, i, &LP::var(&s))?)?;
    }
    Ok(u)
}

/// The quadratic form `Q(v_i, v_j) = (-1)^{max(i,j)} δ_{i+j,2m+1}`.
pub fn quadratic_form(m: usize) -> PolyMatrix {
    let n = 2 * m;
    let mut q = PolyMatrix::zero(n);
    for i in 1..=n {
        let j = n + 1 - i;
        let s = if i.max(j) % 2 == 0 { 1 } else { -1 };
        q.entries[(i - 1) * n + (j - 1)] = LP::from_int(s);
    }
    q
}

pub fn is_orthogonal(u: &PolyMatrix, m: usize) -> Result<bool, LieError> {
    let q = quadratic_form(m);
    Ok(u.transpose().mul(&q)?.mul(u)? == q)
}

/// Column of the bottom row holding each Plücker coordinate. The bottom row
/// is read right to left, except that the middle pair is swapped: `p_{m-1}`
/// sits over `v_{m+1}` and `p'_{m-1}` over `v_m`.
pub fn pluecker_column(m: usize, k: usize) -> usize {
    let n = 2 * m;
    if k <= m - 2 {
        n - k
    } else if k == m - 1 {
        m + 1
    } else {
        n - 1 - k
    }
}

/// `(p_0, …, p_{2m-2})` and `p'_{m-1}` from the bottom row.
pub fn pluecker_from_matrix(u: &PolyMatrix) -> Vec<(Symbol, LP)> {
    let n = u.size();
    let m = n / 2;
    let mut out: Vec<(Symbol, LP)> =
        (0..=2 * m - 2).map(|k| (p_sym(k), u.get(n, pluecker_column(m, k)).clone())).collect();
    out.insert(m, (pp_sym(m), u.get(n, m).clone()));
    out
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).collect()
}

#[derive(Debug, Clone)]
pub struct MinorCheck {
    pub name: String,
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    pub holds: bool,
}

impl MinorCheck {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({"name": self.name, "rows": self.rows, "cols": self.cols, "holds": self.holds})
    }
}

/// Checks the minor identities on `ū₂`. The printed row sets for `δ_{s-m}`
/// are included as their own entries so that a failure is visible; the
/// matrix-derived form `δ_ℓ = D^{2..ℓ+1,2m}_{1..ℓ+1}` is checked alongside.
pub fn minor_identities(m: usize) -> Result<Vec<MinorCheck>, LieError> {
    let u = factored_u2(m)?;
    let n = 2 * m;
    let big_n = 2 * m - 2;
    let p: HashMap<Symbol, LP> = pluecker_from_matrix(&u).into_iter().collect();
    let pk = |k: usize| p[&p_sym(k)].clone();
    let delta = |l: usize| -> LP {
        (0..=l)
            .map(|k| {
                let t = &pk(l - k) * &pk(big_n - l + k);
                if k % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    };
    let mut out = Vec::new();
    let mut push = |name: String, rows: Vec<usize>, cols: Vec<usize>, target: LP| -> Result<(), LieError> {
        let holds = u.minor(&rows, &cols)? == target;
        out.push(MinorCheck { name, rows, cols, holds });
        Ok(())
    };
    push("p_N".into(), vec![n], vec![1], pk(big_n))?;
    let mut rows = range(2, m);
    rows.push(n);
    let mut cols = range(1, m - 1);
    cols.push(m + 1);
    push("p_{m-1}^2".into(), rows, cols, pk(m - 1).pow(2))?;
    let mut rows = range(2, m - 1);
    rows.extend([m + 1, n]);
    push("p'_{m-1}^2".into(), rows, range(1, m), p[&pp_sym(m)].pow(2))?;
    for s in m + 1..=2 * m - 3 {
        let k = 2 * m - 1 - s;
        let mut rows = range(2, k);
        rows.push(m + 1);
        push(format!("printed delta_{}", s - m), rows, range(1, k), delta(s - m))?;
    }
    for l in 1..=m - 3 {
        let mut rows = range(2, l + 1);
        rows.push(n);
        push(format!("delta_{}", l), rows, range(1, l + 1), delta(l))?;
    }
    Ok(out)
}

/// True when every identity except the printed `δ` row sets holds.
pub fn verify_minor_identities(m: usize) -> Result<bool, LieError> {
    Ok(minor_identities(m)?.iter().filter(|c| !c.name.starts_with("printed")).all(|c| c.holds))
}

/// The single entry `D^{m+1}_{2m-1-s}` for `m+1 ≤ s ≤ 2m-3`.
pub fn column_entry(m: usize, s: usize) -> Result<LP, LieError> {
    let u = factored_u2(m)?;
    Ok(u.get(m + 1, 2 * m - 1 - s).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lg_zoo;

    #[test]
    fn generators_square_to_zero() {
        for m in 3..=5 {
            for (e, f) in chevalley_generators(m).unwrap() {
                assert!(e.mul(&e).unwrap() == PolyMatrix::zero(2 * m));
                assert!(f == e.transpose());
            }
        }
    }

    #[test]
    fn u2_matches_lusztig_table() {
        for m in 3..=5 {
            let u = factored_u2(m).unwrap();
            assert!(u.is_lower_unipotent());
            assert!(is_orthogonal(&u, m).unwrap());
            let table = lg_zoo::pluecker_images(2 * m - 2).unwrap();
            for (s, v) in pluecker_from_matrix(&u) {
                assert_eq!(v, table[&s], "m={} {}", m, s);
            }
        }
    }

    #[test]
    fn minors() {
        for m in 3..=5 {
            assert!(verify_minor_identities(m).unwrap(), "m={}", m);
        }
    }

    #[test]
    fn printed_delta_rows_fail() {
        for m in 4..=5 {
            let checks = minor_identities(m).unwrap();
            let printed: Vec<_> = checks.iter().filter(|c| c.name.starts_with("printed")).collect();
            assert!(!printed.is_empty());
            assert!(printed.iter().all(|c| !c.holds), "m={}", m);
        }
    }

    #[test]
    fn column_entry_monomial() {
        for m in 4..=6 {
            for s in m + 1..=2 * m - 3 {
                let mut vars = vec![Symbol::new("d")];
                vars.extend((2 * m - 1 - s..=m - 2).map(b_sym));
                assert_eq!(column_entry(m, s).unwrap(), LP::product(&vars), "m={} s={}", m, s);
            }
        }
    }
}
