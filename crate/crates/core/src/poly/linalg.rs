//! Exact linear algebra: determinants over polynomial and rational-function
//! entries, and an incremental sparse echelon form over the rationals.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{LinForm, Poly, RatFn, Rational};

/// Determinant of a square polynomial matrix, by dynamic programming over
/// subsets of columns.
pub fn det_poly(m: &[Vec<Poly>], nvars: usize) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::one(nvars);
    }
    assert!(n <= 20, "matrix too large for subset expansion");
    assert!(m.iter().all(|r| r.len() == n), "matrix is not square");
    let mut dp: Vec<Option<Poly>> = vec![None; 1 << n];
    dp[0] = Some(Poly::one(nvars));
    for mask in 0usize..(1 << n) {
        let Some(acc) = dp[mask].take() else { continue };
        if acc.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(acc);
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let above = (mask >> (j + 1)).count_ones();
            let mut term = &acc * &m[row][j];
            if above % 2 == 1 {
                term = -term;
            }
            let next = mask | (1 << j);
            dp[next] = Some(match dp[next].take() {
                Some(p) => &p + &term,
                None => term,
            });
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| Poly::zero(nvars))
}

/// Determinant of a square rational-function matrix.
///
/// Each column is brought over the least common multiple of its
/// denominators, the polynomial determinant is expanded, and the product
/// of the column denominators is divided back out.
pub fn det(m: &[Vec<RatFn>], nvars: usize) -> RatFn {
    let n = m.len();
    if n == 0 {
        return RatFn::one(nvars);
    }
    let mut cleared = vec![Vec::with_capacity(n); n];
    let mut total: BTreeMap<LinForm, u32> = BTreeMap::new();
    for j in 0..n {
        let mut lcm: BTreeMap<LinForm, u32> = BTreeMap::new();
        for row in m {
            for (f, &k) in row[j].den_factors() {
                let e = lcm.entry(f.clone()).or_insert(0);
                *e = (*e).max(k);
            }
        }
        for (i, row) in m.iter().enumerate() {
            let r = &row[j];
            let cof = lcm.iter().fold(Poly::one(nvars), |acc, (f, &k)| {
                let have = r.den_factors().get(f).copied().unwrap_or(0);
                &acc * &f.to_poly().pow(k - have)
            });
            cleared[i].push(r.numer() * &cof);
        }
        for (f, k) in lcm {
            *total.entry(f).or_insert(0) += k;
        }
    }
    RatFn::from_parts(det_poly(&cleared, nvars), total)
}

/// Sparse row: column index to nonzero value.
pub type SparseVec = BTreeMap<usize, Rational>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn dense_from_sparse(v: &SparseVec, ncols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ncols];
    for (&i, c) in v {
        out[i] = c.clone();
    }
    out
}

/// Incrementally built row echelon form.
///
/// Every stored row has a leading coefficient 1 at its pivot column and no
/// entries left of it. Rows are only reduced against earlier pivots, so
/// [`Echelon::nullspace`] runs a back-substitution first.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after elimination against the stored pivots.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let Some((&c, val)) = v.range(cursor..).next() else {
                break;
            };
            cursor = c + 1;
            let Some(&r) = self.pivots.get(&c) else {
                continue;
            };
            let factor = val.clone();
            for (&j, pv) in &self.rows[r] {
                let entry = v.entry(j).or_insert_with(Rational::zero);
                *entry -= &factor * pv;
                if entry.is_zero() {
                    v.remove(&j);
                }
            }
        }
        v
    }

    /// Adds `v`; returns `true` when it was independent of the stored rows.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let mut v = self.reduce(v);
        let Some((&lead, lc)) = v.iter().next() else {
            return false;
        };
        let inv = Rational::one() / lc;
        for val in v.values_mut() {
            *val *= &inv;
        }
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(v);
        true
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of the right kernel of the stored rows.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        // Reduced echelon form: clear every pivot column above and below.
        let order: Vec<(usize, usize)> = self.pivots.iter().map(|(&c, &r)| (c, r)).collect();
        let mut rref: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &(c, r) in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let later: Vec<usize> = row.range(c + 1..).map(|(&j, _)| j).collect();
            for j in later {
                let Some(other) = rref.get(&j) else { continue };
                let Some(factor) = row.get(&j).cloned() else { continue };
                for (&k, ov) in other {
                    let entry = row.entry(k).or_insert_with(Rational::zero);
                    *entry -= &factor * ov;
                    if entry.is_zero() {
                        row.remove(&k);
                    }
                }
            }
            rref.insert(c, row);
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|j| !self.pivots.contains_key(j)) {
            let mut v = vec![Rational::zero(); self.ncols];
            v[free] = Rational::one();
            for (&c, row) in &rref {
                if let Some(val) = row.get(&free) {
                    v[c] = -val.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// Basis of `{v : a v = 0}`; the column count is taken from the rows.
pub fn nullspace(a: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for row in a {
        assert_eq!(row.len(), ncols, "ragged matrix");
        e.insert(sparse_from_dense(row));
    }
    e.nullspace()
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let ncols = a.first().map_or(0, Vec::len);
    let mut e = Echelon::new(ncols);
    for row in a {
        e.insert(sparse_from_dense(row));
    }
    e.rank()
}

/// Dense rational matrix.
pub type Matrix = Vec<Vec<Rational>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect()
}

pub fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..k).fold(Rational::zero(), |acc, t| acc + &a[i][t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn mat_vec(a: &Matrix, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Rational matrix times a vector of rational functions.
pub fn mat_vec_ratfn(a: &Matrix, v: &[RatFn]) -> Vec<RatFn> {
    let n = v.first().map_or(0, RatFn::nvars);
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(c, _)| !c.is_zero())
                .fold(RatFn::zero(n), |acc, (c, t)| &acc + &t.scale(c))
        })
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Gauss-Jordan inverse; `None` for singular input.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = Rational::one() / &aug[col][col];
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let f = aug[r][col].clone();
            for c in 0..2 * n {
                let delta = &f * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a dense rational matrix by elimination.
pub fn det_rational(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut acc = Rational::one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Rational::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            acc = -acc;
        }
        acc *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &f * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use proptest::prelude::*;

    fn x() -> Poly {
        Poly::var(2, 0)
    }
    fn y() -> Poly {
        Poly::var(2, 1)
    }
    fn form(p: &Poly) -> LinForm {
        LinForm::from_poly(p).unwrap().0
    }
    fn over(num: Poly, dens: &[Poly]) -> RatFn {
        let mut den = BTreeMap::new();
        for d in dens {
            *den.entry(form(d)).or_insert(0) += 1;
        }
        RatFn::from_parts(num, den)
    }

    #[test]
    fn two_by_two_with_poles() {
        let xmy = &x() - &y();
        let m = vec![
            vec![over(Poly::one(2), &[x()]), over(x(), &[xmy.clone()])],
            vec![RatFn::zero(2), over(-y(), &[xmy.clone()])],
        ];
        assert_eq!(det(&m, 2), over(-y(), &[x(), xmy]));
    }

    #[test]
    fn identity_has_unit_determinant() {
        let m: Vec<Vec<RatFn>> = (0..3)
            .map(|i| (0..3).map(|j| if i == j { RatFn::one(2) } else { RatFn::zero(2) }).collect())
            .collect();
        assert_eq!(det(&m, 2), RatFn::one(2));
    }

    #[test]
    fn dependent_columns_vanish() {
        let two = Poly::constant(2, int(2));
        let m = vec![vec![x(), &two * &x()], vec![y(), &two * &y()]];
        assert!(det_poly(&m, 2).is_zero());
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace(&[vec![int(1), int(0)], vec![int(0), int(1)]]).is_empty());
        let k = nullspace(&[vec![int(1), int(1)]]);
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
        assert_eq!(nullspace(&[vec![int(0), int(0)]]).len(), 2);
    }

    #[test]
    fn inverse_round_trip() {
        let g = vec![vec![int(1), int(1)], vec![int(1), int(2)]];
        let inv = inverse(&g).unwrap();
        assert_eq!(inv, vec![vec![int(2), int(-1)], vec![int(-1), int(1)]]);
        assert_eq!(mat_mul(&g, &inv), identity(2));
        assert!(inverse(&vec![vec![int(1), int(2)], vec![int(2), int(4)]]).is_none());
    }

    fn leibniz(m: &Matrix) -> Rational {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Rational::zero();
        fn heap(k: usize, perm: &mut Vec<usize>, m: &Matrix, total: &mut Rational) {
            if k == 1 {
                let mut inv = 0;
                for i in 0..perm.len() {
                    for j in i + 1..perm.len() {
                        if perm[i] > perm[j] {
                            inv += 1;
                        }
                    }
                }
                let mut p = Rational::one();
                for (r, &c) in perm.iter().enumerate() {
                    p *= &m[r][c];
                }
                if inv % 2 == 1 {
                    p = -p;
                }
                *total += p;
                return;
            }
            for i in 0..k {
                heap(k - 1, perm, m, total);
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut perm, m, &mut total);
        total
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-9i64..=9, 1i64..=5).prop_map(|(n, d)| rat(n, d))
    }

    fn matrix(n: usize) -> impl Strategy<Value = Matrix> {
        proptest::collection::vec(proptest::collection::vec(small_rational(), n), n)
    }

    proptest! {
        #[test]
        fn det_matches_permutation_sum(m in matrix(3)) {
            let expected = leibniz(&m);
            let as_poly: Vec<Vec<Poly>> = m
                .iter()
                .map(|r| r.iter().map(|c| Poly::constant(1, c.clone())).collect())
                .collect();
            let got = det_poly(&as_poly, 1).constant_value().unwrap();
            prop_assert_eq!(&got, &expected);
            prop_assert_eq!(det_rational(&m), expected);
        }

        #[test]
        fn nullspace_vectors_are_kernel(m in proptest::collection::vec(
            proptest::collection::vec(-3i64..=3, 5), 1..5)) {
            let a: Matrix = m.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect();
            let k = nullspace(&a);
            prop_assert_eq!(k.len(), 5 - rank(&a));
            for v in &k {
                prop_assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
            }
        }
    }
}
