//! Partial linearization: splitting high-degree columns into slices of
//! average degree so that products with unbalanced degrees stay balanced.

use super::PolyMat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// How `m` columns with declared degrees `δ_1..δ_m` are cut into
/// `m̄ = Σ α_i` slices of degree at most `δ`.
///
/// Column `i` becomes columns `offsets[i] .. offsets[i] + alpha[i]`; slice `k`
/// holds the coefficients of degrees `kδ .. (k+1)δ - 1`, except the last
/// slice which keeps everything from `(α_i - 1)δ` upward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearizationPlan {
    delta: usize,
    degrees: Vec<usize>,
    alpha: Vec<usize>,
    offsets: Vec<usize>,
}

impl LinearizationPlan {
    /// Plan with slice degree `max(1, ⌈Σ δ_i / m⌉)`.
    pub fn new(degrees: &[usize]) -> Self {
        let m = degrees.len().max(1);
        let total: usize = degrees.iter().sum();
        Self::with_delta(degrees, total.div_ceil(m).max(1))
    }

    pub fn with_delta(degrees: &[usize], delta: usize) -> Self {
        assert!(delta >= 1, "slice degree must be positive");
        let alpha: Vec<usize> = degrees.iter().map(|&d| d.div_ceil(delta).max(1)).collect();
        let mut offsets = Vec::with_capacity(alpha.len());
        let mut acc = 0;
        for &a in &alpha {
            offsets.push(acc);
            acc += a;
        }
        LinearizationPlan {
            delta,
            degrees: degrees.to_vec(),
            alpha,
            offsets,
        }
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn alpha(&self) -> &[usize] {
        &self.alpha
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Number of original columns `m`.
    pub fn original_dim(&self) -> usize {
        self.alpha.len()
    }

    /// Number of slices `m̄`.
    pub fn expanded_dim(&self) -> usize {
        self.alpha.iter().sum()
    }

    /// `δ̄`: `δ` for every slice but the last of each block, which gets
    /// `β_i = δ_i - (α_i - 1)δ` (zero for `δ_i = 0`).
    pub fn expanded_degrees(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.expanded_dim());
        for (&d, &a) in self.degrees.iter().zip(&self.alpha) {
            out.extend(std::iter::repeat_n(self.delta, a - 1));
            out.push(d - (a - 1) * self.delta);
        }
        out
    }

    /// Index of the last slice of each block (`α_1 + … + α_i - 1`).
    pub fn block_ends(&self) -> Vec<usize> {
        self.offsets
            .iter()
            .zip(&self.alpha)
            .map(|(o, a)| o + a - 1)
            .collect()
    }

    /// The `m̄ x m` matrix `E` with `E[offset_i + k][i] = x^{kδ}`, so that
    /// `P = P̄ E`.
    pub fn expansion_matrix(&self, field: Field) -> PolyMat {
        let mut e = PolyMat::zeros(field, self.expanded_dim(), self.original_dim());
        for i in 0..self.original_dim() {
            for k in 0..self.alpha[i] {
                e.set(self.offsets[i] + k, i, Poly::monomial(field, 1, k * self.delta));
            }
        }
        e
    }

    fn slice(&self, p: &Poly, i: usize, k: usize) -> Poly {
        let lo = k * self.delta;
        let hi = if k + 1 == self.alpha[i] {
            usize::MAX
        } else {
            lo + self.delta
        };
        p.slice(lo, hi)
    }

    /// Sum of the slices of row block `i` of `m̄`-row data, shifted back into
    /// place: `Σ_k x^{kδ} rows[offset_i + k]`.
    fn collapse_rows(&self, expanded: &PolyMat) -> PolyMat {
        let f = expanded.field();
        let mut out = PolyMat::zeros(f, self.original_dim(), expanded.cols());
        for i in 0..self.original_dim() {
            for k in 0..self.alpha[i] {
                let src = self.offsets[i] + k;
                for j in 0..expanded.cols() {
                    out.get_mut(i, j)
                        .add_scaled_shifted(1, k * self.delta, expanded.get(src, j));
                }
            }
        }
        out
    }
}

/// Cuts every column of `P` into slices according to
/// `LinearizationPlan::new(degrees)`; `P = P̄ E`.
pub fn expand_columns(p: &PolyMat, degrees: &[usize]) -> Result<(PolyMat, LinearizationPlan)> {
    if degrees.len() != p.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} declared degrees for {} columns",
            degrees.len(),
            p.cols()
        )));
    }
    let plan = LinearizationPlan::new(degrees);
    let expanded = expand_columns_with(p, &plan);
    Ok((expanded, plan))
}

pub(crate) fn expand_columns_with(p: &PolyMat, plan: &LinearizationPlan) -> PolyMat {
    debug_assert_eq!(plan.original_dim(), p.cols());
    let mut out = PolyMat::zeros(p.field(), p.rows(), plan.expanded_dim());
    for r in 0..p.rows() {
        for i in 0..p.cols() {
            let e = p.get(r, i);
            if e.is_zero() {
                continue;
            }
            for k in 0..plan.alpha[i] {
                out.set(r, plan.offsets[i] + k, plan.slice(e, i, k));
            }
        }
    }
    out
}

/// Row counterpart of [`expand_columns_with`]: `A = Eᵀ Ā`.
pub(crate) fn expand_rows_with(a: &PolyMat, plan: &LinearizationPlan) -> PolyMat {
    debug_assert_eq!(plan.original_dim(), a.rows());
    let mut out = PolyMat::zeros(a.field(), plan.expanded_dim(), a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = a.get(i, j);
            if e.is_zero() {
                continue;
            }
            for k in 0..plan.alpha[i] {
                out.set(plan.offsets[i] + k, j, plan.slice(e, i, k));
            }
        }
    }
    out
}

/// `A·B` where the rows of `A` have very different degrees: the rows are cut
/// into slices according to `plan` (built on the row degrees of `A`), the
/// balanced product is formed, and the slices are recombined.
pub fn matmul_unbalanced(a: &PolyMat, b: &PolyMat, plan: &LinearizationPlan) -> Result<PolyMat> {
    if plan.original_dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "plan covers {} rows, matrix has {}",
            plan.original_dim(),
            a.rows()
        )));
    }
    let expanded = expand_rows_with(a, plan);
    let prod = expanded.matmul(b)?;
    Ok(plan.collapse_rows(&prod))
}

/// Plan for [`matmul_unbalanced`] built from the row degrees of `A`.
pub fn row_plan(a: &PolyMat) -> LinearizationPlan {
    let degs: Vec<usize> = a.rdeg().iter().map(|d| d.unwrap_or(0)).collect();
    LinearizationPlan::new(&degs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> Field {
        Field::default_field()
    }

    #[test]
    fn single_column_needs_no_expansion() {
        let p = PolyMat::from_i64(f(), &[vec![vec![0, 0, 1]]]);
        let (pb, plan) = expand_columns(&p, &[2]).unwrap();
        assert_eq!(plan.delta(), 2);
        assert_eq!(plan.alpha(), &[1]);
        assert_eq!(pb, p);
        assert_eq!(plan.expansion_matrix(f()), PolyMat::identity(f(), 1));
    }

    #[test]
    fn cubic_column_is_cut_in_two() {
        let p = PolyMat::from_i64(f(), &[vec![vec![0, 0, 0, 1], vec![1]]]);
        let (pb, plan) = expand_columns(&p, &[3, 0]).unwrap();
        assert_eq!(plan.delta(), 2);
        assert_eq!(plan.alpha(), &[2, 1]);
        assert_eq!(plan.expanded_dim(), 3);
        assert_eq!(plan.expanded_degrees(), vec![2, 1, 0]);
        assert_eq!(plan.block_ends(), vec![1, 2]);
        assert_eq!(pb, PolyMat::from_i64(f(), &[vec![vec![], vec![0, 1], vec![1]]]));
        let e = plan.expansion_matrix(f());
        assert_eq!(
            e.transpose(),
            PolyMat::from_i64(f(), &[vec![vec![1], vec![0, 0, 1], vec![]], vec![vec![], vec![], vec![1]]])
        );
        assert_eq!(&pb * &e, p);
    }

    #[test]
    fn zero_matrix_keeps_single_slices() {
        let p = PolyMat::zeros(f(), 2, 3);
        let (pb, plan) = expand_columns(&p, &[0, 0, 0]).unwrap();
        assert_eq!(plan.alpha(), &[1, 1, 1]);
        assert!(pb.is_zero());
    }

    #[test]
    fn random_round_trips_and_unbalanced_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let fld = f();
        for _ in 0..30 {
            let (r, m) = (rng.gen_range(1..4), rng.gen_range(1..5));
            let degs: Vec<usize> = (0..m).map(|_| rng.gen_range(0..40)).collect();
            let p = PolyMat::from_fn(fld, r, m, |_, j| {
                let l = rng.gen_range(0..=degs[j] + 1);
                Poly::from_coeffs(fld, (0..l).map(|_| rng.gen_range(0..fld.modulus())).collect())
            });
            let (pb, plan) = expand_columns(&p, &degs).unwrap();
            assert!(plan.expanded_dim() >= m && plan.expanded_dim() < 2 * m);
            if degs.iter().any(|&d| d > 0) {
                assert_eq!(plan.expanded_degrees().into_iter().max(), Some(plan.delta()));
            }
            assert!(pb.degree().is_none_or(|d| d <= plan.delta()));
            assert_eq!(&pb * &plan.expansion_matrix(fld), p);

            let b = PolyMat::from_fn(fld, r, 3, |_, _| {
                let l = rng.gen_range(0..6);
                Poly::from_coeffs(fld, (0..l).map(|_| rng.gen_range(0..fld.modulus())).collect())
            });
            let a = p.transpose();
            let plan = row_plan(&a);
            assert_eq!(matmul_unbalanced(&a, &b, &plan).unwrap(), &a * &b);
        }
    }
}
