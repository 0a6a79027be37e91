use crate::error::{Error, Result};
use crate::hilbert::layout::SiteLayout;
use crate::hilbert::linalg::{
    entropy_of_spectrum, hermitian_eigen, hermitian_eigenvalues, trace_of_product, CMatrix, CVector,
};
use crate::hilbert::operator::{check_local, Operator};
use crate::num::{c, Real, C};

/// Norm deviations up to this are silently normalized away.
pub const NORMALIZE_SLACK: f64 = 1e-6;
/// Tolerance used when validating density matrices.
pub const DENSITY_TOL: f64 = 1e-10;

/// Normalized amplitude vector over a [`SiteLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    layout: SiteLayout,
    amps: CVector<T>,
}

impl<T: Real> PureState<T> {
    /// Accepts vectors within [`NORMALIZE_SLACK`] of unit norm and rescales them.
    pub fn new(layout: SiteLayout, amps: CVector<T>) -> Result<Self> {
        check_len(&layout, amps.len())?;
        let norm = amps.norm();
        if (norm - T::one()).abs() > T::tol(NORMALIZE_SLACK) {
            return Err(Error::NotNormalized { norm: norm.to_f64_lossy() });
        }
        Ok(Self { layout, amps: amps / c(norm) })
    }

    /// Rescales any nonzero vector and returns the norm it had.
    pub fn renormalized(layout: SiteLayout, amps: CVector<T>) -> Result<(Self, T)> {
        check_len(&layout, amps.len())?;
        let norm = amps.norm();
        if norm <= T::default_epsilon() {
            return Err(Error::ZeroVector);
        }
        Ok((Self { layout, amps: amps / c(norm) }, norm))
    }

    pub fn from_fn(layout: SiteLayout, f: impl FnMut(usize) -> C<T>) -> Result<Self> {
        let amps = CVector::from_iterator(layout.total_dim(), (0..layout.total_dim()).map(f));
        Self::new(layout, amps)
    }

    pub fn basis(layout: SiteLayout, index: usize) -> Result<Self> {
        if index >= layout.total_dim() {
            return Err(Error::InvalidParameter(format!("basis index {index} out of range")));
        }
        let mut amps = CVector::zeros(layout.total_dim());
        amps[index] = c(T::one());
        Ok(Self { layout, amps })
    }

    /// Basis ket from per-site labels, leftmost label on site 0.
    pub fn basis_digits(layout: SiteLayout, digits: &[usize]) -> Result<Self> {
        let idx = layout.index_of(digits)?;
        Self::basis(layout, idx)
    }

    /// `|b_0 b_1 ...>` for a string of qubit labels such as `"0110"`.
    pub fn qubit_ket(bits: &str) -> Result<Self> {
        let digits: Vec<usize> = bits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidParameter(format!("bad qubit label {ch:?}"))),
            })
            .collect::<Result<_>>()?;
        Self::basis_digits(SiteLayout::qubits(digits.len())?, &digits)
    }

    #[inline]
    pub fn layout(&self) -> &SiteLayout {
        &self.layout
    }

    #[inline]
    pub fn amplitudes(&self) -> &CVector<T> {
        &self.amps
    }

    #[inline]
    pub fn amp(&self, index: usize) -> C<T> {
        self.amps[index]
    }

    pub fn norm(&self) -> T {
        self.amps.norm()
    }

    /// `<self|other>`, conjugate-linear in `self`.
    pub fn inner(&self, other: &PureState<T>) -> Result<C<T>> {
        same_layout(&self.layout, &other.layout)?;
        Ok(self.amps.dotc(&other.amps))
    }

    /// `|<self|other>|^2`
    pub fn fidelity(&self, other: &PureState<T>) -> Result<T> {
        Ok(self.inner(other)?.norm_sqr())
    }

    pub fn tensor(&self, other: &PureState<T>) -> Result<PureState<T>> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self { layout, amps: self.amps.kronecker(&other.amps) })
    }

    pub fn scale_phase(&self, z: C<T>) -> PureState<T> {
        Self { layout: self.layout.clone(), amps: &self.amps * z }
    }

    pub fn density(&self) -> DensityMatrix<T> {
        DensityMatrix { layout: self.layout.clone(), matrix: &self.amps * self.amps.adjoint() }
    }

    /// Applies a full-space operator.
    pub fn apply(&self, op: &Operator<T>) -> Result<PureState<T>> {
        same_layout(op.layout(), &self.layout)?;
        Ok(Self { layout: self.layout.clone(), amps: op.matrix() * &self.amps })
    }

    /// Applies `op` to `sites` without forming the embedded matrix.
    pub fn apply_local(&self, op: &Operator<T>, sites: &[usize]) -> Result<PureState<T>> {
        check_local(op, &self.layout, sites)?;
        let rest = self.layout.complement(sites);
        let (table, d_rest, d_loc) = self.layout.split_table(&rest, sites);
        let mut out = self.amps.clone();
        let mut buf = CVector::zeros(d_loc);
        let m = op.matrix();
        for r in 0..d_rest {
            let row = &table[r * d_loc..(r + 1) * d_loc];
            for (k, &f) in row.iter().enumerate() {
                buf[k] = self.amps[f];
            }
            let res = m * &buf;
            for (k, &f) in row.iter().enumerate() {
                out[f] = res[k];
            }
        }
        Ok(Self { layout: self.layout.clone(), amps: out })
    }

    /// Reorders sites: site `k` of the result is site `order[k]` of `self`.
    pub fn permute_sites(&self, order: &[usize]) -> Result<PureState<T>> {
        self.layout.check_sites(order)?;
        if order.len() != self.layout.n_sites() {
            return Err(Error::DimensionMismatch { expected: self.layout.n_sites(), found: order.len() });
        }
        let layout = self.layout.select(order)?;
        let (table, _, _) = self.layout.split_table(order, &[]);
        let amps = CVector::from_iterator(table.len(), table.iter().map(|&f| self.amps[f]));
        Ok(Self { layout, amps })
    }

    /// Amplitudes reshaped to a `(kept, rest)` matrix, kept sites in the given order.
    pub(crate) fn split_matrix(&self, keep: &[usize]) -> CMatrix<T> {
        let rest = self.layout.complement(keep);
        let (table, dk, dr) = self.layout.split_table(keep, &rest);
        CMatrix::from_fn(dk, dr, |k, r| self.amps[table[k * dr + r]])
    }

    /// Reduced density matrix on `keep` (kept sites stay in ascending order).
    pub fn marginal(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let keep = normalize_keep(&self.layout, keep)?;
        let m = self.split_matrix(&keep);
        let matrix = &m * m.adjoint();
        Ok(DensityMatrix { layout: self.layout.select(&keep)?, matrix })
    }

    /// Schmidt coefficients across the cut `keep | rest`, descending.
    pub fn schmidt_coefficients(&self, keep: &[usize]) -> Result<Vec<T>> {
        let keep = normalize_keep(&self.layout, keep)?;
        let m = self.split_matrix(&keep);
        let mut sv: Vec<T> = m.singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        Ok(sv)
    }

    /// Purity of the reduced state on `keep`; `1` for an empty selection.
    pub fn marginal_purity(&self, keep: &[usize]) -> Result<T> {
        self.marginal_overlap(self, keep)
    }

    /// `Tr[rho_self^X rho_other^X]` for the marginals on the site set `X`.
    ///
    /// Works in whichever of `X` or its complement is smaller. An empty
    /// selection gives `1`; the full set gives the fidelity.
    pub fn marginal_overlap(&self, other: &PureState<T>, keep: &[usize]) -> Result<T> {
        same_layout(&self.layout, &other.layout)?;
        if keep.is_empty() {
            return Ok(T::one());
        }
        let keep = normalize_keep(&self.layout, keep)?;
        let ma = self.split_matrix(&keep);
        let mb = other.split_matrix(&keep);
        let v = if ma.nrows() <= ma.ncols() {
            let ra = &ma * ma.adjoint();
            let rb = &mb * mb.adjoint();
            trace_of_product(&ra, &rb).re
        } else {
            let k = ma.adjoint() * &mb;
            k.iter().fold(T::zero(), |s, z| s + z.norm_sqr())
        };
        Ok(v)
    }
}

/// Positive unit-trace matrix over a [`SiteLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    layout: SiteLayout,
    matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity within [`DENSITY_TOL`].
    pub fn new(layout: SiteLayout, matrix: CMatrix<T>) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch { expected: d, found: matrix.nrows() });
        }
        let tol = T::tol(DENSITY_TOL);
        let herm = (&matrix - matrix.adjoint()).iter().fold(T::zero(), |m, z| {
            let v = z.norm_sqr().sqrt();
            if v > m {
                v
            } else {
                m
            }
        });
        if herm > tol {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian ({})", herm.to_f64_lossy())));
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidDensityMatrix(format!("trace {} != 1", tr.re.to_f64_lossy())));
        }
        let min = hermitian_eigenvalues(&matrix).iter().copied().fold(T::one(), |m, v| if v < m { v } else { m });
        if min < -tol {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {}", min.to_f64_lossy())));
        }
        Ok(Self { layout, matrix })
    }

    pub fn maximally_mixed(layout: SiteLayout) -> Self {
        let d = layout.total_dim();
        let matrix = CMatrix::identity(d, d) * c(T::one() / T::from_count(d));
        Self { layout, matrix }
    }

    /// `sum_k w_k |psi_k><psi_k|`; weights must be nonnegative and sum to 1.
    pub fn mixture(terms: &[(T, &PureState<T>)]) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptySelection)?;
        let layout = first.1.layout().clone();
        let d = layout.total_dim();
        let mut m = CMatrix::zeros(d, d);
        let mut total = T::zero();
        for (w, s) in terms {
            same_layout(&layout, s.layout())?;
            if *w < T::zero() {
                return Err(Error::InvalidParameter("negative mixture weight".into()));
            }
            total += *w;
            m += s.density().matrix * c(*w);
        }
        if (total - T::one()).abs() > T::tol(DENSITY_TOL) {
            return Err(Error::InvalidParameter("mixture weights do not sum to 1".into()));
        }
        Ok(Self { layout, matrix: m })
    }

    #[inline]
    pub fn layout(&self) -> &SiteLayout {
        &self.layout
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn tensor(&self, other: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self { layout, matrix: self.matrix.kronecker(&other.matrix) })
    }

    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        let keep = normalize_keep(&self.layout, keep)?;
        let rest = self.layout.complement(&keep);
        let (table, dk, dr) = self.layout.split_table(&keep, &rest);
        let mut out = CMatrix::zeros(dk, dk);
        for i in 0..dk {
            for j in 0..dk {
                let mut acc = c(T::zero());
                for r in 0..dr {
                    acc += self.matrix[(table[i * dr + r], table[j * dr + r])];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(Self { layout: self.layout.select(&keep)?, matrix: out })
    }

    /// `Tr rho^2`
    pub fn purity(&self) -> T {
        trace_of_product(&self.matrix, &self.matrix).re
    }

    /// `Tr[rho sigma]`
    pub fn overlap(&self, other: &DensityMatrix<T>) -> Result<T> {
        same_layout(&self.layout, &other.layout)?;
        Ok(trace_of_product(&self.matrix, &other.matrix).re)
    }

    /// Spectrum with values in `[-DENSITY_TOL, 0)` clamped to zero.
    pub fn eigenvalues(&self) -> Vec<T> {
        let tol = T::tol(DENSITY_TOL);
        hermitian_eigenvalues(&self.matrix)
            .iter()
            .map(|&v| if v < T::zero() && v >= -tol { T::zero() } else { v })
            .collect()
    }

    /// Spectral decomposition into weighted pure states, dropping weights below `cutoff`.
    pub fn ensemble(&self, cutoff: T) -> Vec<(T, PureState<T>)> {
        let (vals, vecs) = hermitian_eigen(&self.matrix);
        vals.iter()
            .enumerate()
            .filter(|(_, &w)| w > cutoff)
            .map(|(k, &w)| {
                let v = vecs.column(k).into_owned();
                let n = v.norm();
                (w, PureState { layout: self.layout.clone(), amps: v / c(n) })
            })
            .collect()
    }

    pub fn von_neumann_entropy(&self) -> T {
        entropy_of_spectrum(self.eigenvalues())
    }

    /// `U rho U^dagger`
    pub fn apply(&self, op: &Operator<T>) -> Result<DensityMatrix<T>> {
        same_layout(op.layout(), &self.layout)?;
        let m = op.matrix() * &self.matrix * op.matrix().adjoint();
        Ok(Self { layout: self.layout.clone(), matrix: m })
    }
}

fn check_len(layout: &SiteLayout, len: usize) -> Result<()> {
    if len != layout.total_dim() {
        return Err(Error::DimensionMismatch { expected: layout.total_dim(), found: len });
    }
    Ok(())
}

pub(crate) fn same_layout(a: &SiteLayout, b: &SiteLayout) -> Result<()> {
    if a != b {
        return Err(Error::LayoutMismatch { left: a.dims().to_vec(), right: b.dims().to_vec() });
    }
    Ok(())
}

/// Sorted, validated, nonempty copy of a keep set.
fn normalize_keep(layout: &SiteLayout, keep: &[usize]) -> Result<Vec<usize>> {
    if keep.is_empty() {
        return Err(Error::EmptySelection);
    }
    layout.check_sites(keep)?;
    let mut k = keep.to_vec();
    k.sort_unstable();
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::operator::gates;
    use crate::num::cplx;

    fn bell() -> PureState<f64> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::from_fn(SiteLayout::qubits(2).unwrap(), |i| if i == 0 || i == 3 { c(h) } else { c(0.0) })
            .unwrap()
    }

    #[test]
    fn basis_product_is_big_endian() {
        let k0 = PureState::<f64>::qubit_ket("0").unwrap();
        let k1 = PureState::<f64>::qubit_ket("1").unwrap();
        let p = k0.tensor(&k1).unwrap();
        assert_eq!(p.amplitudes().iter().map(|z| z.re).collect::<Vec<_>>(), vec![0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn normalization_slack() {
        let l = SiteLayout::qubits(1).unwrap();
        let v = CVector::from_vec(vec![c(1.0 + 5e-7), c(0.0)]);
        let s = PureState::<f64>::new(l.clone(), v).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
        let v = CVector::from_vec(vec![c(1.1), c(0.0)]);
        assert!(matches!(PureState::new(l.clone(), v), Err(Error::NotNormalized { .. })));
        let z = CVector::from_vec(vec![c(0.0), c(0.0)]);
        assert_eq!(PureState::renormalized(l, z).unwrap_err(), Error::ZeroVector);
    }

    #[test]
    fn inner_with_plus() {
        let k0 = PureState::<f64>::qubit_ket("0").unwrap();
        let plus = k0.apply(&gates::hadamard()).unwrap();
        let z = k0.inner(&plus).unwrap();
        assert!((z - c(std::f64::consts::FRAC_1_SQRT_2)).norm() < 1e-15);
    }

    #[test]
    fn bell_marginals() {
        let b = bell();
        let m = b.marginal(&[1]).unwrap();
        assert!((m.purity() - 0.5).abs() < 1e-15);
        assert!((m.von_neumann_entropy() - 2f64.ln()).abs() < 1e-12);
        let full = b.density().partial_trace(&[0]).unwrap();
        assert!(max_abs(&full, &m) < 1e-15);
    }

    #[test]
    fn partial_trace_of_bell_pair_product() {
        let bb = bell().tensor(&bell()).unwrap().density();
        let r = bb.partial_trace(&[0, 1, 3]).unwrap();
        let expect = bell().density().tensor(&DensityMatrix::maximally_mixed(SiteLayout::qubits(1).unwrap())).unwrap();
        assert!(max_abs(&r, &expect) < 1e-15);
        assert_eq!(bb.partial_trace(&[]).unwrap_err(), Error::EmptySelection);
    }

    #[test]
    fn keep_order_is_irrelevant() {
        let l = SiteLayout::new(vec![2, 3, 2]).unwrap();
        let (s, _) = PureState::<f64>::renormalized(
            l.clone(),
            CVector::from_fn(12, |i, _| cplx(i as f64, 1.0 - i as f64)),
        )
        .unwrap();
        let a = s.marginal(&[2, 0]).unwrap();
        let b = s.marginal(&[0, 2]).unwrap();
        assert_eq!(a, b);
        let via_rho = s.density().partial_trace(&[0, 2]).unwrap();
        assert!(max_abs(&a, &via_rho) < 1e-14);
    }

    #[test]
    fn marginal_overlap_both_branches() {
        let l = SiteLayout::qubits(4).unwrap();
        let mk = |k: f64| {
            PureState::<f64>::renormalized(l.clone(), CVector::from_fn(16, |i, _| cplx((i as f64 * k).sin(), (i as f64).cos())))
                .unwrap()
                .0
        };
        let (a, b) = (mk(0.7), mk(1.3));
        for keep in [vec![0], vec![1, 2, 3], vec![0, 1], vec![0, 1, 2, 3]] {
            let direct = a.marginal(&keep).unwrap().overlap(&b.marginal(&keep).unwrap()).unwrap();
            assert!((a.marginal_overlap(&b, &keep).unwrap() - direct).abs() < 1e-14);
        }
        assert!((a.marginal_overlap(&b, &[0, 1, 2, 3]).unwrap() - a.fidelity(&b).unwrap()).abs() < 1e-14);
    }

    #[test]
    fn apply_local_matches_embed() {
        let l = SiteLayout::new(vec![2, 3, 2]).unwrap();
        let (s, _) = PureState::<f64>::renormalized(l.clone(), CVector::from_fn(12, |i, _| cplx(1.0 + i as f64, 0.5))).unwrap();
        let cn = gates::cnot::<f64>();
        let direct = s.apply_local(&cn, &[2, 0]).unwrap();
        let via = s.apply(&cn.embed(&l, &[2, 0]).unwrap()).unwrap();
        assert!((direct.amplitudes() - via.amplitudes()).norm() < 1e-15);
    }

    #[test]
    fn density_validation() {
        let l = SiteLayout::qubits(1).unwrap();
        let bad = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(1.0)]);
        assert!(DensityMatrix::new(l.clone(), bad).is_err());
        let neg = CMatrix::from_row_slice(2, 2, &[c(1.5), c(0.0), c(0.0), c(-0.5)]);
        assert!(DensityMatrix::new(l.clone(), neg).is_err());
        let ok = CMatrix::from_row_slice(2, 2, &[c(0.5), cplx(0.0, 0.5), cplx(0.0, -0.5), c(0.5)]);
        assert!(DensityMatrix::new(l, ok).is_ok());
    }

    #[test]
    fn ensemble_reconstructs() {
        let k0 = PureState::<f64>::qubit_ket("0").unwrap();
        let plus = k0.apply(&gates::hadamard()).unwrap();
        let rho = DensityMatrix::mixture(&[(0.3, &k0), (0.7, &plus)]).unwrap();
        let parts = rho.ensemble(1e-14);
        let mut m = CMatrix::zeros(2, 2);
        for (w, s) in &parts {
            m += s.density().matrix() * c(*w);
        }
        assert!((m - rho.matrix()).norm() < 1e-14);
    }

    #[test]
    fn permute_sites_roundtrip() {
        let s = PureState::<f64>::qubit_ket("011").unwrap();
        let p = s.permute_sites(&[2, 0, 1]).unwrap();
        assert_eq!(p, PureState::qubit_ket("101").unwrap());
    }

    fn max_abs(a: &DensityMatrix<f64>, b: &DensityMatrix<f64>) -> f64 {
        crate::hilbert::linalg::max_abs_diff(a.matrix(), b.matrix())
    }
}
