//! Homogeneous pieces of the module and the bounded basis search.
//!
//! In degree `d` every member has the shape `t_i = f_i / Q-` with `f_i`
//! homogeneous of degree `e = d + deg Q-`. The plus and minus conditions
//! are divisibility statements `alpha^k | sum_i w_i f_i` for fixed weight
//! vectors `w`. After the substitution that turns `alpha` into its pivot
//! variable `x_p`, divisibility by `alpha^k` means that every coefficient of
//! x_p-degree below `k` vanishes, which is linear in the coefficients of
//! the `f_i`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;

use crate::arrangement::{InnerProduct, SignedMulti};
use crate::poly::linalg::{sparse_from_dense, Echelon, SparseVec};
use crate::poly::{LinForm, Monomial, Poly, RatFn, Rational};

use super::{saito_check, FreeBasis, LogVectorField};

/// Rational basis of the degree-`d` part of the module.
#[derive(Debug, Clone)]
pub struct GradedPiece {
    degree: i64,
    nvars: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    den: BTreeMap<LinForm, u32>,
    basis: Vec<Vec<Rational>>,
}

impl GradedPiece {
    pub fn compute(a: &SignedMulti, g: &InnerProduct, d: i64) -> Self {
        let n = a.dim();
        let e = d + a.deg_q_minus();
        let den = a.q_minus_factors();
        if e < 0 {
            return GradedPiece {
                degree: d,
                nvars: n,
                monomials: Vec::new(),
                index: HashMap::new(),
                den,
                basis: Vec::new(),
            };
        }
        let monomials = Monomial::all_of_degree(n, e as u32);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut piece = GradedPiece {
            degree: d,
            nvars: n,
            monomials,
            index,
            den,
            basis: Vec::new(),
        };
        let mut system = Echelon::new(piece.ambient_dim());
        for (alpha, k) in a.plus() {
            let images = piece.truncated_images(alpha, k);
            for row in piece.rows(&images, alpha.coeffs()) {
                system.insert(row);
            }
        }
        let ginv = g.inverse();
        for (alpha, k) in a.minus() {
            let images = piece.truncated_images(alpha, k);
            let p = alpha.pivot();
            let ac = alpha.coeffs();
            for kk in (0..n).filter(|&kk| kk != p) {
                // (G^-1 f)_kk - a_kk (G^-1 f)_p
                let w: Vec<Rational> = (0..n).map(|j| &ginv[kk][j] - &ac[kk] * &ginv[p][j]).collect();
                for row in piece.rows(&images, &w) {
                    system.insert(row);
                }
            }
        }
        piece.basis = system.nullspace();
        piece
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Number of unknown coefficients, `l * dim S_e`.
    pub fn ambient_dim(&self) -> usize {
        self.nvars * self.monomials.len()
    }

    /// Images of the degree-`e` monomials under the substitution that sends
    /// `alpha` to its pivot variable, cut below x_p-degree `k`.
    fn truncated_images(&self, alpha: &LinForm, k: u32) -> Vec<Poly> {
        let sigma = alpha.straightening();
        let p = alpha.pivot();
        self.monomials
            .iter()
            .map(|m| Poly::monomial(m.clone(), Rational::from_integer(1.into())).compose(&sigma).truncate_in(p, k))
            .collect()
    }

    fn rows(&self, images: &[Poly], weights: &[Rational]) -> Vec<SparseVec> {
        let m = self.monomials.len();
        let mut rows: BTreeMap<&Monomial, SparseVec> = BTreeMap::new();
        for (i, w) in weights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for (u, img) in images.iter().enumerate() {
                for (nu, c) in img.terms() {
                    let row = rows.entry(nu).or_default();
                    let entry = row.entry(i * m + u).or_insert_with(Rational::zero);
                    *entry += w * c;
                    if entry.is_zero() {
                        row.remove(&(i * m + u));
                    }
                }
            }
        }
        rows.into_values().filter(|r| !r.is_empty()).collect()
    }

    fn numerators(&self, v: &[Rational]) -> Vec<Poly> {
        let m = self.monomials.len();
        (0..self.nvars)
            .map(|i| {
                Poly::from_terms(
                    self.nvars,
                    self.monomials
                        .iter()
                        .enumerate()
                        .map(|(u, mono)| (mono.clone(), v[i * m + u].clone())),
                )
            })
            .collect()
    }

    fn field_of(&self, v: &[Rational]) -> LogVectorField {
        LogVectorField::new(
            self.numerators(v)
                .into_iter()
                .map(|f| RatFn::from_parts(f, self.den.clone()))
                .collect(),
        )
    }

    pub fn fields(&self) -> Vec<LogVectorField> {
        self.basis.iter().map(|v| self.field_of(v)).collect()
    }

    fn coords_of_numerators(&self, fs: &[Poly]) -> Option<SparseVec> {
        let m = self.monomials.len();
        let mut out = SparseVec::new();
        for (i, f) in fs.iter().enumerate() {
            for (mono, c) in f.terms() {
                let u = *self.index.get(mono)?;
                out.insert(i * m + u, c.clone());
            }
        }
        Some(out)
    }

    fn numerators_of(&self, theta: &LogVectorField) -> Option<Vec<Poly>> {
        let q = RatFn::from_parts(
            self.den
                .iter()
                .fold(Poly::one(self.nvars), |acc, (f, &k)| &acc * &f.to_poly().pow(k)),
            BTreeMap::new(),
        );
        theta
            .coeffs()
            .iter()
            .map(|t| (t * &q).as_poly().cloned())
            .collect()
    }

    /// Coordinates of a degree-`d` field in the ambient coefficient space.
    pub fn coords(&self, theta: &LogVectorField) -> Option<SparseVec> {
        if self.monomials.is_empty() {
            return if theta.is_zero() { Some(SparseVec::new()) } else { None };
        }
        self.coords_of_numerators(&self.numerators_of(theta)?)
    }

    /// Echelon form of the degree-`d` span of `S`-multiples of `gens`.
    pub fn span_of_multiples(&self, gens: &[LogVectorField]) -> Echelon {
        let mut ech = Echelon::new(self.ambient_dim());
        if self.monomials.is_empty() {
            return ech;
        }
        for gen in gens {
            let Some(dg) = gen.degree() else { continue };
            if dg > self.degree {
                continue;
            }
            let Some(fs) = self.numerators_of(gen) else { continue };
            for mu in Monomial::all_of_degree(self.nvars, (self.degree - dg) as u32) {
                let shifted: Vec<Poly> = fs.iter().map(|f| f.mul_monomial(&mu)).collect();
                if let Some(v) = self.coords_of_numerators(&shifted) {
                    ech.insert(v);
                }
            }
        }
        ech
    }

    /// `true` when every basis element lies in the span of the multiples
    /// of `gens`.
    pub fn spanned_by(&self, gens: &[LogVectorField]) -> bool {
        let ech = self.span_of_multiples(gens);
        self.basis.iter().all(|v| ech.contains(sparse_from_dense(v)))
    }
}

pub fn graded_piece(a: &SignedMulti, g: &InnerProduct, d: i64) -> Vec<LogVectorField> {
    GradedPiece::compute(a, g, d).fields()
}

/// Witness that the module needs more than `l` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NotFreeEvidence {
    /// Degree at which the minimal-generator count first exceeded `l`.
    pub degree: i64,
    pub generator_degrees: Vec<i64>,
    pub generators: Vec<LogVectorField>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisCertificate {
    Free(FreeBasis),
    NotFree(NotFreeEvidence),
    Inconclusive {
        max_degree: i64,
        generators: Vec<LogVectorField>,
    },
}

impl BasisCertificate {
    pub fn verdict(&self) -> &'static str {
        match self {
            BasisCertificate::Free(_) => "free",
            BasisCertificate::NotFree(_) => "not-free",
            BasisCertificate::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn free(&self) -> Option<&FreeBasis> {
        match self {
            BasisCertificate::Free(fb) => Some(fb),
            _ => None,
        }
    }
}

/// Scans degrees from `-deg Q-` to `max_degree` collecting minimal
/// generators.
pub fn find_basis(a: &SignedMulti, g: &InnerProduct, max_degree: i64) -> BasisCertificate {
    let l = a.dim();
    let mut gens: Vec<LogVectorField> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    for d in -a.deg_q_minus()..=max_degree {
        let piece = GradedPiece::compute(a, g, d);
        if piece.dim() == 0 {
            continue;
        }
        let mut ech = piece.span_of_multiples(&gens);
        for v in &piece.basis {
            if ech.insert(sparse_from_dense(v)) {
                gens.push(piece.field_of(v));
                degrees.push(d);
            }
        }
        if gens.len() > l {
            return BasisCertificate::NotFree(NotFreeEvidence {
                degree: d,
                generator_degrees: degrees,
                generators: gens,
            });
        }
        if gens.len() == l && degrees.iter().sum::<i64>() == a.m_abs() {
            if let Ok(fb) = saito_check(&gens, a, g) {
                return BasisCertificate::Free(fb);
            }
        }
    }
    BasisCertificate::Inconclusive {
        max_degree,
        generators: gens,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_lines() -> SignedMulti {
        SignedMulti::from_strs(&["x", "y"], &[("x", 1), ("y", -1)]).unwrap()
    }

    #[test]
    fn pieces_of_two_lines() {
        let id = InnerProduct::identity(2);
        let p = graded_piece(&two_lines(), &id, -1);
        assert_eq!(p, vec![LogVectorField::parse("(1/y)@y", &["x".into(), "y".into()], &[]).unwrap()]);
        assert!(graded_piece(&two_lines(), &id, -2).is_empty());
        assert_eq!(graded_piece(&two_lines(), &id, 1).len(), 4);
        assert_eq!(graded_piece(&two_lines(), &id, 0).len(), 2);
    }

    #[test]
    fn search_two_lines() {
        let id = InnerProduct::identity(2);
        let cert = find_basis(&two_lines(), &id, 2);
        assert_eq!(cert.free().unwrap().exponents, vec![-1, 1]);
    }
}
