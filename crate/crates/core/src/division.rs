//! Division with remainder by a column-reduced matrix, remainders of
//! `x^{rδ}F`, and residuals `rem(P·F, M)` for unbalanced `P`.
//!
//! For column-reduced `M` with `σ = cdeg(M)`, every `F` has a unique
//! decomposition `F = Q·M + R` with `cdeg(R) < σ`. The quotient is obtained
//! from a truncated power-series expansion of the column reversal of `M`.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymat::{
    check_fields, expand_columns_with, matmul_unbalanced, row_plan, LinearizationPlan, PolyMat,
};

/// Power-series inverse of a square matrix with invertible constant term,
/// kept to a precision that grows on demand.
///
/// When the column degrees of the matrix are unbalanced, the inverse is
/// taken of a column linearization `M̄` of dimension `< 2n` and degree close
/// to the average column degree; `M⁻¹` is a submatrix of `M̄⁻¹`.
struct SeriesInverse {
    n: usize,
    mbar: PolyMat,
    /// Rows of `M̄⁻¹` holding the rows of `M⁻¹` (its first `n` columns).
    rows: Vec<usize>,
    nbar: PolyMat,
    prec: usize,
}

impl SeriesInverse {
    fn new(m: &PolyMat) -> Result<Self> {
        let n = m.rows();
        let f = m.field();
        let cdeg: Vec<usize> = m.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
        let total: usize = cdeg.iter().sum();
        let avg = total.div_ceil(n.max(1)).max(1);
        let (mbar, rows) = if cdeg.iter().any(|&d| d > 2 * avg) {
            let plan = LinearizationPlan::with_delta(&cdeg, avg);
            let top = expand_columns_with(m, &plan);
            let nb = plan.expanded_dim();
            let mut mbar = PolyMat::zeros(f, nb, nb);
            for i in 0..n {
                for j in 0..nb {
                    mbar.set(i, j, top.get(i, j).clone());
                }
            }
            let mut r = n;
            for (j, &a) in plan.alpha().iter().enumerate() {
                let o = plan.offsets()[j];
                for k in 1..a {
                    mbar.set(r, o + k - 1, Poly::monomial(f, 1, avg));
                    mbar.set(r, o + k, Poly::constant(f, f.neg(1)));
                    r += 1;
                }
            }
            (mbar, plan.offsets().to_vec())
        } else {
            (m.clone(), (0..n).collect())
        };
        let c0 = mbar.constant_term();
        let inv0 = c0.inverse().ok_or(Error::SingularConstantTerm)?;
        Ok(SeriesInverse {
            n,
            mbar,
            rows,
            nbar: PolyMat::from_constmat(&inv0),
            prec: 1,
        })
    }

    fn ensure(&mut self, t: usize) {
        let f = self.mbar.field();
        let nb = self.mbar.rows();
        while self.prec < t {
            let p = self.prec;
            let q = 2 * p;
            // N ← N + N·(I − M̄N) mod x^{2p}; the correction is divisible by x^p.
            let mn = self.mbar.truncate(q).matmul(&self.nbar).expect("square");
            let resid = &PolyMat::identity(f, nb) - &mn.truncate(q);
            let e = resid.div_x_pow(p).truncate(q - p);
            let corr = self.nbar.matmul(&e).expect("square").truncate(q - p).shift(p);
            self.nbar = &self.nbar + &corr;
            self.prec = q;
        }
    }

    /// `F·M⁻¹ mod x^t`.
    fn apply(&mut self, fm: &PolyMat, t: usize) -> PolyMat {
        self.ensure(t);
        let block = self
            .nbar
            .select_rows(&self.rows)
            .submatrix(0..self.n, 0..self.n)
            .truncate(t);
        fm.truncate(t).matmul(&block).expect("shapes agree").truncate(t)
    }
}

/// `F·M⁻¹ mod x^t` for `M` with invertible constant term.
pub fn truncated_expansion(f: &PolyMat, m: &PolyMat, t: usize) -> Result<PolyMat> {
    check_fields(f, m)?;
    if !m.is_square() || f.cols() != m.rows() {
        return Err(Error::DimensionMismatch(format!(
            "expansion of {}x{} times the inverse of {}x{}",
            f.rows(),
            f.cols(),
            m.rows(),
            m.cols()
        )));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("expansion order must be positive".into()));
    }
    let mut inv = SeriesInverse::new(m)?;
    Ok(inv.apply(f, t))
}

/// Division machinery bound to one column-reduced divisor; the series
/// inverse of its reversal is shared by every division performed.
pub(crate) struct Divider {
    m: PolyMat,
    sigma: Vec<usize>,
    inv: SeriesInverse,
}

impl Divider {
    pub(crate) fn new(m: &PolyMat) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch("divisor must be square".into()));
        }
        if !m.is_column_reduced() {
            return Err(Error::NotColumnReduced);
        }
        let sigma: Vec<usize> = m.cdeg().iter().map(|d| d.expect("no zero column")).collect();
        let rev = m.column_reversal(&sigma)?;
        let inv = SeriesInverse::new(&rev)?;
        Ok(Divider {
            m: m.clone(),
            sigma,
            inv,
        })
    }

    pub(crate) fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    fn check_operand(&self, f: &PolyMat) -> Result<()> {
        check_fields(f, &self.m)?;
        if f.cols() != self.m.rows() {
            return Err(Error::DimensionMismatch(format!(
                "dividend has {} columns, divisor is {}x{}",
                f.cols(),
                self.m.rows(),
                self.m.cols()
            )));
        }
        Ok(())
    }

    /// Checks `cdeg(F) < σ + (δ,…,δ)`.
    fn check_degrees(&self, f: &PolyMat, delta: usize) -> Result<()> {
        for (j, d) in f.cdeg().iter().enumerate() {
            if let Some(d) = d {
                if *d >= self.sigma[j] + delta {
                    return Err(Error::DegreePrecondition(format!(
                        "column {j} of the dividend has degree {d}, bound is {}",
                        self.sigma[j] + delta
                    )));
                }
            }
        }
        Ok(())
    }

    /// Smallest `δ ≥ 1` with `cdeg(F) < σ + δ`.
    pub(crate) fn needed_delta(&self, f: &PolyMat) -> usize {
        f.cdeg()
            .iter()
            .zip(&self.sigma)
            .filter_map(|(d, &s)| d.map(|d| (d + 1).saturating_sub(s)))
            .max()
            .unwrap_or(1)
            .max(1)
    }

    /// Quotient and remainder, assuming the degree precondition holds.
    pub(crate) fn quorem_unchecked(&mut self, f: &PolyMat, delta: usize) -> (PolyMat, PolyMat) {
        let n = self.m.rows();
        let fld = self.m.field();
        if f.rows() == 0 || f.is_zero() {
            return (PolyMat::zeros(fld, f.rows(), n), f.clone());
        }
        let offsets: Vec<usize> = self.sigma.iter().map(|&s| s + delta - 1).collect();
        let frev = f.column_reversal(&offsets).expect("degree precondition checked");
        let qrev = self.inv.apply(&frev, delta);
        let q = qrev
            .column_reversal(&vec![delta - 1; n])
            .expect("truncated to degree below delta");
        let plan = row_plan(&q);
        let qm = matmul_unbalanced(&q, &self.m, &plan).expect("shapes agree");
        let r = f - &qm;
        (q, r)
    }

    pub(crate) fn quorem(&mut self, f: &PolyMat, delta: usize) -> Result<(PolyMat, PolyMat)> {
        self.check_operand(f)?;
        if delta == 0 {
            return Err(Error::InvalidParameter("quotient degree bound must be at least 1".into()));
        }
        self.check_degrees(f, delta)?;
        Ok(self.quorem_unchecked(f, delta))
    }

    pub(crate) fn rem(&mut self, f: &PolyMat) -> Result<PolyMat> {
        self.check_operand(f)?;
        let delta = self.needed_delta(f);
        Ok(self.quorem_unchecked(f, delta).1)
    }

    fn rem_of_shifts_unchecked(&mut self, f: &PolyMat, delta: usize, k: u32) -> Vec<PolyMat> {
        if k == 0 {
            return vec![f.clone()];
        }
        let h = (1usize << (k - 1)) * delta;
        let (_, g) = self.quorem_unchecked(&f.shift(h), h);
        let stacked = f.vstack(&g).expect("same width");
        let halves = self.rem_of_shifts_unchecked(&stacked, delta, k - 1);
        let m = f.rows();
        let top = halves.iter().map(|r| r.submatrix(0..m, 0..r.cols()));
        let bottom = halves.iter().map(|r| r.submatrix(m..2 * m, 0..r.cols()));
        top.chain(bottom).collect()
    }

    pub(crate) fn rem_of_shifts(&mut self, f: &PolyMat, delta: usize, k: u32) -> Result<Vec<PolyMat>> {
        self.check_operand(f)?;
        if delta == 0 {
            return Err(Error::InvalidParameter("shift degree must be at least 1".into()));
        }
        self.check_degrees(f, 0)?;
        Ok(self.rem_of_shifts_unchecked(f, delta, k))
    }

    /// `rem(Ē F, M)` for the expansion `Ē` described by `plan` (rows of `F`
    /// indexed like the columns of the original `P`), assuming
    /// `cdeg(F) < σ`.
    pub(crate) fn expanded_remainders(&mut self, f: &PolyMat, plan: &LinearizationPlan) -> PolyMat {
        let fld = self.m.field();
        let (m, n) = (f.rows(), f.cols());
        let delta = plan.delta();
        let alpha = plan.alpha();
        let mut out = PolyMat::zeros(fld, plan.expanded_dim(), n);
        let place = |out: &mut PolyMat, i: usize, r: usize, src: &PolyMat, src_row: usize| {
            let dst = plan.offsets()[i] + r;
            for j in 0..n {
                out.set(dst, j, src.get(src_row, j).clone());
            }
        };
        for i in (0..m).filter(|&i| alpha[i] == 1) {
            place(&mut out, i, 0, f, i);
        }
        let max_alpha = alpha.iter().copied().max().unwrap_or(1);
        let levels = usize::BITS - (max_alpha - 1).leading_zeros();
        for k in 1..=levels {
            let lo = 1usize << (k - 1);
            let hi = 1usize << k;
            let idx: Vec<usize> = (0..m).filter(|&i| alpha[i] > lo && alpha[i] <= hi).collect();
            if idx.is_empty() {
                continue;
            }
            let g = f.select_rows(&idx);
            let rems = self.rem_of_shifts_unchecked(&g, delta, k);
            for (j, &i) in idx.iter().enumerate() {
                for (r, rem) in rems.iter().enumerate().take(alpha[i]) {
                    place(&mut out, i, r, rem, j);
                }
            }
        }
        out
    }

    pub(crate) fn residual_unchecked(&mut self, p: &PolyMat, f: &PolyMat) -> PolyMat {
        let degs: Vec<usize> = p.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
        let plan = LinearizationPlan::new(&degs);
        let pbar = expand_columns_with(p, &plan);
        let fbar = self.expanded_remainders(f, &plan);
        let prod = pbar.matmul(&fbar).expect("shapes agree");
        self.quorem_unchecked(&prod, plan.delta()).1
    }

    pub(crate) fn residual(&mut self, p: &PolyMat, f: &PolyMat) -> Result<PolyMat> {
        self.check_operand(f)?;
        check_fields(p, f)?;
        if p.cols() != f.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                p.rows(),
                p.cols(),
                f.rows(),
                f.cols()
            )));
        }
        self.check_degrees(f, 0)?;
        Ok(self.residual_unchecked(p, f))
    }
}

/// Quotient and remainder of `F` by the column-reduced `M`, given
/// `δ ≥ 1` with `cdeg(F) < cdeg(M) + (δ,…,δ)`; the quotient has degree
/// below `δ`.
pub fn pm_quorem(m: &PolyMat, f: &PolyMat, delta: usize) -> Result<(PolyMat, PolyMat)> {
    Divider::new(m)?.quorem(f, delta)
}

/// Quotient and remainder of an arbitrary `F` by the column-reduced `M`.
pub fn quo_rem(m: &PolyMat, f: &PolyMat) -> Result<(PolyMat, PolyMat)> {
    let mut d = Divider::new(m)?;
    d.check_operand(f)?;
    let delta = d.needed_delta(f);
    Ok(d.quorem_unchecked(f, delta))
}

/// `rem(F, M)` for arbitrary `F`.
pub fn remainder(m: &PolyMat, f: &PolyMat) -> Result<PolyMat> {
    Divider::new(m)?.rem(f)
}

/// `(rem(x^{rδ} F, M))_{0 ≤ r < 2^k}`, ordered by `r`; requires
/// `cdeg(F) < cdeg(M)`.
pub fn rem_of_shifts(m: &PolyMat, f: &PolyMat, delta: usize, k: u32) -> Result<Vec<PolyMat>> {
    Divider::new(m)?.rem_of_shifts(f, delta, k)
}

/// `rem(P·F, M)` for `cdeg(F) < cdeg(M)` and `P` of arbitrary (possibly
/// very unbalanced) column degrees.
pub fn residual(m: &PolyMat, p: &PolyMat, f: &PolyMat) -> Result<PolyMat> {
    Divider::new(m)?.residual(p, f)
}
