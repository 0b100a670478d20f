//! Shifted Popov bases of relation modules `{ p : p·F ≡ 0 mod M }` and
//! shifted Popov forms built on them.

use std::sync::atomic::{AtomicBool, Ordering};

use crate::approx::{approximant_basis_popov, relations_mod_single_poly};
use crate::division::{remainder, Divider};
use crate::error::{Error, Result};
use crate::hermite::hermite_form;
use crate::linalg::relations_by_linear_algebra;
use crate::polymat::{check_fields, LinearizationPlan, PolyMat};

static SELF_CHECK: AtomicBool = AtomicBool::new(false);

/// When enabled, the public relation routines re-verify their output
/// (Popov shape, annihilation, degree bound) and report `Error::Internal`
/// on failure.
pub fn set_self_check(on: bool) {
    SELF_CHECK.store(on, Ordering::Relaxed);
}

pub fn self_check_enabled() -> bool {
    SELF_CHECK.load(Ordering::Relaxed)
}

fn self_verify(p: &PolyMat, m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<()> {
    if !self_check_enabled() {
        return Ok(());
    }
    if !p.is_popov(s) {
        return Err(Error::Internal("relation basis is not in shifted Popov form".into()));
    }
    if !remainder(m, &p.matmul(f)?)?.is_zero() {
        return Err(Error::Internal("relation basis does not annihilate F".into()));
    }
    let got: usize = p.diagonal_degrees().iter().map(|d| d.unwrap_or(0)).sum();
    let bound: usize = m.cdeg().iter().map(|d| d.unwrap_or(0)).sum();
    if got > bound {
        return Err(Error::Internal(format!(
            "relation basis has determinant degree {got} above {bound}"
        )));
    }
    Ok(())
}

fn check_system(m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<()> {
    check_fields(m, f)?;
    if !m.is_square() || f.cols() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, M is {}x{}",
            f.rows(),
            f.cols(),
            m.rows(),
            m.cols()
        )));
    }
    if s.len() != f.rows() {
        return Err(Error::ShiftLength { expected: f.rows(), got: s.len() });
    }
    Ok(())
}

fn check_reduced_input(m: &PolyMat, f: &PolyMat) -> Result<()> {
    for (j, (df, dm)) in f.cdeg().iter().zip(m.cdeg()).enumerate() {
        if let Some(df) = df {
            if dm.is_none_or(|dm| *df >= dm) {
                return Err(Error::DegreePrecondition(format!(
                    "column {j} of F has degree {df}, must be below the column degree of M"
                )));
            }
        }
    }
    Ok(())
}

/// Removes the columns `j` of `M` equal to the unit vector `e_j` together
/// with the matching rows of `M` and columns of `F`. Returns the remaining
/// square matrix, the remaining columns of `F`, and the kept indices. The
/// relation module is unchanged provided `F` vanishes on removed columns.
pub fn clean_identity_columns(m: &PolyMat, f: &PolyMat) -> Result<(PolyMat, PolyMat, Vec<usize>)> {
    check_fields(m, f)?;
    if !m.is_square() || f.cols() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, M is {}x{}",
            f.rows(),
            f.cols(),
            m.rows(),
            m.cols()
        )));
    }
    let n = m.cols();
    let mut kept = Vec::new();
    for j in 0..n {
        let unit = (0..n).all(|i| {
            let e = m.get(i, j);
            if i == j {
                e.degree() == Some(0) && e.coeff(0) == 1
            } else {
                e.is_zero()
            }
        });
        if !unit {
            kept.push(j);
        } else if (0..f.rows()).any(|i| !f.get(i, j).is_zero()) {
            return Err(Error::IdentityColumnNotZero(j));
        }
    }
    let n2 = m.select_rows(&kept).select_cols(&kept);
    Ok((n2, f.select_cols(&kept), kept))
}

/// The `s`-Popov relation basis of `F` modulo the column-reduced `M`
/// (`cdeg F < cdeg M`), given its diagonal degrees `delta`. The basis is
/// read off an approximant basis of `[F̄; M]`, where `F̄` stacks the
/// remainders of `x^{kδ}·F` for the column linearization of `delta`.
pub fn known_degree_relations(m: &PolyMat, f: &PolyMat, s: &[i64], delta: &[usize]) -> Result<PolyMat> {
    check_system(m, f, s)?;
    if delta.len() != f.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees supplied for {} rows",
            delta.len(),
            f.rows()
        )));
    }
    check_reduced_input(m, f)?;
    let fld = m.field();
    let rows = f.rows();
    if delta.iter().all(|&d| d == 0) {
        return Ok(PolyMat::identity(fld, rows));
    }
    let mut div = Divider::new(m)?;
    let plan = LinearizationPlan::new(delta);
    let fbar = div.expanded_remainders(f, &plan);
    let davg = plan.delta();
    let mut u: Vec<i64> = plan.expanded_degrees().iter().map(|&d| -(d as i64)).collect();
    u.extend(std::iter::repeat_n(-(davg as i64), m.cols()));
    let tau: Vec<usize> = div.sigma().iter().map(|&sj| sj + davg + 1).collect();
    let (a, _) = approximant_basis_popov(&fbar.vstack(m)?, &tau, &u)?;
    let mbar = plan.expanded_dim();
    let block = a.submatrix(0..mbar, 0..mbar);
    let collapsed = block.matmul(&plan.expansion_matrix(fld))?;
    let p = collapsed.select_rows(&plan.block_ends());
    let degs_match = p
        .diagonal_degrees()
        .iter()
        .zip(delta)
        .all(|(d, &e)| *d == Some(e));
    if !degs_match || !p.is_popov(s) {
        return Err(Error::MinimalDegreeMismatch);
    }
    Ok(p)
}

/// Top-level split performed by [`relations_mod_hermite_traced`]: the
/// relation bases of the two halves and their diagonal degrees.
#[derive(Clone, Debug)]
pub struct SplitTrace {
    pub n1: usize,
    pub p1: PolyMat,
    pub p2: PolyMat,
    pub delta1: Vec<usize>,
    pub delta2: Vec<usize>,
}

fn diag(p: &PolyMat) -> Vec<usize> {
    p.diagonal_degrees().iter().map(|d| d.unwrap_or(0)).collect()
}

fn check_hermite_input(h: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<()> {
    check_system(h, f, s)?;
    if !h.is_hermite() {
        return Err(Error::NotHermite);
    }
    if let Some(j) = h.diagonal_degrees().iter().position(|d| *d == Some(0)) {
        return Err(Error::ZeroDiagonalDegree(j));
    }
    check_reduced_input(h, f)
}

fn hermite_step(h: &PolyMat, f: &PolyMat, s: &[i64], trace: Option<&mut Option<SplitTrace>>) -> Result<PolyMat> {
    let fld = h.field();
    let (m, n) = (f.rows(), h.cols());
    if m == 0 {
        return Ok(PolyMat::zeros(fld, 0, 0));
    }
    if f.is_zero() {
        return Ok(PolyMat::identity(fld, m));
    }
    let dsum: usize = diag(h).iter().sum();
    if dsum <= m {
        return relations_by_linear_algebra(h, f, s);
    }
    if n == 1 {
        return relations_mod_single_poly(h.get(0, 0), f, s);
    }
    let n1 = n / 2;
    let p1 = hermite_step(&h.submatrix(0..n1, 0..n1), &f.submatrix(0..m, 0..n1), s, None)?;
    let delta1 = diag(&p1);
    let g = Divider::new(h)?.residual(&p1, f)?.submatrix(0..m, n1..n);
    let s2: Vec<i64> = s.iter().zip(&delta1).map(|(&a, &d)| a + d as i64).collect();
    let p2 = hermite_step(&h.submatrix(n1..n, n1..n), &g, &s2, None)?;
    let delta2 = diag(&p2);
    let delta: Vec<usize> = delta1.iter().zip(&delta2).map(|(a, b)| a + b).collect();
    let p = known_degree_relations(h, f, s, &delta)?;
    if let Some(t) = trace {
        *t = Some(SplitTrace { n1, p1, p2, delta1, delta2 });
    }
    Ok(p)
}

/// The `s`-Popov relation basis of `F` modulo a Hermite matrix `H` with no
/// degree-zero diagonal entry, for `cdeg F < cdeg H`. Splits the columns in
/// two halves, solves the first, moves the residual to the second, and
/// rebuilds the full basis from the combined diagonal degrees.
pub fn relations_mod_hermite(h: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    check_hermite_input(h, f, s)?;
    let p = hermite_step(h, f, s, None)?;
    self_verify(&p, h, f, s)?;
    Ok(p)
}

/// Like [`relations_mod_hermite`], also returning the top-level split
/// (absent when a base case applied directly).
pub fn relations_mod_hermite_traced(h: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<(PolyMat, Option<SplitTrace>)> {
    check_hermite_input(h, f, s)?;
    let mut trace = None;
    let p = hermite_step(h, f, s, Some(&mut trace))?;
    self_verify(&p, h, f, s)?;
    Ok((p, trace))
}

/// Relations modulo a Hermite matrix for arbitrary `F`: reduces `F`, drops
/// identity columns, then runs [`relations_mod_hermite`].
pub fn relations_mod_hermite_reducing(h: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    check_system(h, f, s)?;
    if !h.is_hermite() {
        return Err(Error::NotHermite);
    }
    let fr = remainder(h, f)?;
    let (hn, g, _) = clean_identity_columns(h, &fr)?;
    if hn.rows() == 0 {
        return Ok(PolyMat::identity(h.field(), f.rows()));
    }
    let p = hermite_step(&hn, &g, s, None)?;
    self_verify(&p, h, f, s)?;
    Ok(p)
}

/// The `s`-Popov relation basis of any `F` modulo any nonsingular `M`,
/// computed through the Hermite form of `M`.
pub fn relation_basis(m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    check_system(m, f, s)?;
    let h = hermite_form(m)?;
    relations_mod_hermite_reducing(&h, f, s)
}

/// The `s`-Popov form of a nonsingular square matrix: the `s`-Popov basis
/// of the relations of the identity modulo its Hermite form.
pub fn popov_form(m: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Popov form of a non-square matrix".into()));
    }
    if s.len() != m.rows() {
        return Err(Error::ShiftLength { expected: m.rows(), got: s.len() });
    }
    let h = hermite_form(m)?;
    relations_mod_hermite_reducing(&h, &PolyMat::identity(m.field(), m.rows()), s)
}

/// A shift `(nd, (n-1)d, …, d)` with `d > deg det H` for which the Hermite
/// matrix `H` is also in shifted Popov form.
pub fn hermite_shift(m: &PolyMat) -> Vec<i64> {
    let d: usize = m.diagonal_degrees().iter().map(|d| d.unwrap_or(0)).sum::<usize>() + 1;
    let n = m.rows();
    (0..n).map(|i| ((n - i) * d) as i64).collect()
}
