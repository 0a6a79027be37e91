use crate::error::{Error, Result};
use crate::hilbert::layout::SiteLayout;
use crate::hilbert::linalg::{max_abs_diff, CMatrix};
use crate::num::{c, Real};

/// Linear operator on the space described by its layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real> {
    layout: SiteLayout,
    matrix: CMatrix<T>,
}

impl<T: Real> Operator<T> {
    pub fn new(layout: SiteLayout, matrix: CMatrix<T>) -> Result<Self> {
        let d = layout.total_dim();
        if matrix.nrows() != d || matrix.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: matrix.nrows().max(matrix.ncols()),
            });
        }
        Ok(Self { layout, matrix })
    }

    /// Builds an operator from real entries given row by row.
    pub fn from_real_rows(layout: SiteLayout, rows: &[&[f64]]) -> Result<Self> {
        let d = layout.total_dim();
        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
            return Err(Error::DimensionMismatch { expected: d, found: rows.len() });
        }
        let m = CMatrix::from_fn(d, d, |i, j| c(T::lit(rows[i][j])));
        Self::new(layout, m)
    }

    pub fn identity(layout: SiteLayout) -> Self {
        let d = layout.total_dim();
        Self { layout, matrix: CMatrix::identity(d, d) }
    }

    #[inline]
    pub fn layout(&self) -> &SiteLayout {
        &self.layout
    }

    #[inline]
    pub fn matrix(&self) -> &CMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix<T> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self { layout: self.layout.clone(), matrix: self.matrix.adjoint() }
    }

    /// `self * rhs` (rhs acts first).
    pub fn compose(&self, rhs: &Operator<T>) -> Result<Self> {
        if self.layout != rhs.layout {
            return Err(Error::LayoutMismatch {
                left: self.layout.dims().to_vec(),
                right: rhs.layout.dims().to_vec(),
            });
        }
        Ok(Self { layout: self.layout.clone(), matrix: &self.matrix * &rhs.matrix })
    }

    pub fn tensor(&self, other: &Operator<T>) -> Result<Self> {
        let layout = self.layout.concat(&other.layout)?;
        Ok(Self { layout, matrix: self.matrix.kronecker(&other.matrix) })
    }

    /// Largest entry of `|U^dagger U - I|`.
    pub fn unitarity_defect(&self) -> T {
        let d = self.layout.total_dim();
        let p = self.matrix.adjoint() * &self.matrix;
        max_abs_diff(&p, &CMatrix::identity(d, d))
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Lifts this operator onto `sites` of `layout`, identity elsewhere.
    ///
    /// Site `k` of this operator's layout is placed on `sites[k]`.
    pub fn embed(&self, layout: &SiteLayout, sites: &[usize]) -> Result<Operator<T>> {
        check_local(self, layout, sites)?;
        let rest = layout.complement(sites);
        let (table, d_rest, d_loc) = layout.split_table(&rest, sites);
        let d = layout.total_dim();
        let mut m = CMatrix::zeros(d, d);
        for r in 0..d_rest {
            let row = &table[r * d_loc..(r + 1) * d_loc];
            for (i, &fi) in row.iter().enumerate() {
                for (j, &fj) in row.iter().enumerate() {
                    m[(fi, fj)] = self.matrix[(i, j)];
                }
            }
        }
        Ok(Operator { layout: layout.clone(), matrix: m })
    }
}

pub(crate) fn check_local<T: Real>(op: &Operator<T>, layout: &SiteLayout, sites: &[usize]) -> Result<()> {
    layout.check_sites(sites)?;
    let want: Vec<usize> = sites.iter().map(|&s| layout.dims()[s]).collect();
    if want.as_slice() != op.layout.dims() {
        return Err(Error::LayoutMismatch { left: op.layout.dims().to_vec(), right: want });
    }
    Ok(())
}

/// Named gates.
pub mod gates {
    use super::*;
    use crate::num::cplx;

    pub fn hadamard<T: Real>() -> Operator<T> {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Operator::from_real_rows(SiteLayout::qubits(1).unwrap(), &[&[h, h], &[h, -h]]).unwrap()
    }

    pub fn pauli_x<T: Real>() -> Operator<T> {
        Operator::from_real_rows(SiteLayout::qubits(1).unwrap(), &[&[0.0, 1.0], &[1.0, 0.0]]).unwrap()
    }

    pub fn pauli_z<T: Real>() -> Operator<T> {
        Operator::from_real_rows(SiteLayout::qubits(1).unwrap(), &[&[1.0, 0.0], &[0.0, -1.0]]).unwrap()
    }

    /// First qubit controls, second is the target.
    pub fn cnot<T: Real>() -> Operator<T> {
        let mut m = CMatrix::identity(4, 4);
        m.swap_rows(2, 3);
        Operator::new(SiteLayout::qubits(2).unwrap(), m).unwrap()
    }

    /// First two qubits control, third is the target.
    pub fn toffoli<T: Real>() -> Operator<T> {
        let mut m = CMatrix::identity(8, 8);
        m.swap_rows(6, 7);
        Operator::new(SiteLayout::qubits(3).unwrap(), m).unwrap()
    }

    /// Exchange of two `d`-level sites.
    pub fn swap<T: Real>(d: usize) -> Result<Operator<T>> {
        let layout = SiteLayout::uniform(d, 2)?;
        let mut m = CMatrix::zeros(d * d, d * d);
        for x in 0..d {
            for y in 0..d {
                m[(y * d + x, x * d + y)] = c(T::one());
            }
        }
        Operator::new(layout, m)
    }

    /// Controlled exchange of two `d`-level sites; the control is site 0.
    pub fn fredkin<T: Real>(d: usize) -> Result<Operator<T>> {
        let layout = SiteLayout::new(vec![2, d, d])?;
        let dd = d * d;
        let mut m = CMatrix::zeros(2 * dd, 2 * dd);
        for i in 0..dd {
            m[(i, i)] = c(T::one());
        }
        let s = swap::<T>(d)?;
        m.view_mut((dd, dd), (dd, dd)).copy_from(s.matrix());
        Operator::new(layout, m)
    }

    /// Generalized shift `|j> -> |j+1 mod d>`.
    pub fn shift<T: Real>(d: usize) -> Result<Operator<T>> {
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            m[((j + 1) % d, j)] = c(T::one());
        }
        Operator::new(SiteLayout::new(vec![d])?, m)
    }

    /// Generalized clock `|j> -> w^j |j>` with `w = e^{2 pi i / d}`.
    pub fn clock<T: Real>(d: usize) -> Result<Operator<T>> {
        let mut m = CMatrix::zeros(d, d);
        for j in 0..d {
            let a = T::two_pi() * T::from_count(j) / T::from_count(d);
            m[(j, j)] = cplx(a.cos(), a.sin());
        }
        Operator::new(SiteLayout::new(vec![d])?, m)
    }
}
