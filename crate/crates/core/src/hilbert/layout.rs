use crate::error::{Error, Result};

/// Default cap on the total dimension of any composite space.
pub const DIMENSION_CAP: usize = 1 << 24;

/// Ordered per-site dimensions of a composite Hilbert space.
///
/// Basis indices are mixed-radix numbers with site 0 as the most significant
/// digit, i.e. site 0 is the leftmost label of a ket `|x_0 x_1 ... x_{n-1}>`.
/// A label written right-to-left as `|x_n ... x_2 x_1>` therefore puts
/// position `k` on site `n - k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SiteLayout {
    dims: Vec<usize>,
    total: usize,
}

impl SiteLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        Self::with_cap(dims, DIMENSION_CAP)
    }

    pub fn with_cap(dims: Vec<usize>, cap: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidLayout("no sites".into()));
        }
        let mut total = 1usize;
        for &d in &dims {
            if d < 2 {
                return Err(Error::InvalidLayout(format!("site dimension {d} < 2")));
            }
            total = total
                .checked_mul(d)
                .filter(|&t| t <= cap)
                .ok_or(Error::DimensionCap { dim: usize::MAX, cap })?;
        }
        Ok(Self { dims, total })
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn uniform(d: usize, n: usize) -> Result<Self> {
        Self::new(vec![d; n])
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn n_sites(&self) -> usize {
        self.dims.len()
    }

    #[inline]
    pub fn total_dim(&self) -> usize {
        self.total
    }

    pub fn concat(&self, other: &SiteLayout) -> Result<SiteLayout> {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        SiteLayout::new(dims)
    }

    /// Layout of the given sites, in the order given.
    pub fn select(&self, sites: &[usize]) -> Result<SiteLayout> {
        self.check_sites(sites)?;
        SiteLayout::new(sites.iter().map(|&s| self.dims[s]).collect())
    }

    /// Place values of each site in the flat index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.dims.len()];
        for i in (0..self.dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.dims[i + 1];
        }
        strides
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }

    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::DimensionMismatch {
                expected: self.dims.len(),
                found: digits.len(),
            });
        }
        let mut idx = 0;
        for (&x, &d) in digits.iter().zip(&self.dims) {
            if x >= d {
                return Err(Error::InvalidParameter(format!("digit {x} >= dimension {d}")));
            }
            idx = idx * d + x;
        }
        Ok(idx)
    }

    /// Checks indices are in range and pairwise distinct.
    pub fn check_sites(&self, sites: &[usize]) -> Result<()> {
        let mut seen = vec![false; self.dims.len()];
        for &s in sites {
            if s >= self.dims.len() {
                return Err(Error::SiteOutOfRange {
                    index: s,
                    sites: self.dims.len(),
                });
            }
            if seen[s] {
                return Err(Error::RepeatedSite(s));
            }
            seen[s] = true;
        }
        Ok(())
    }

    /// Sites not in `sites`, ascending.
    pub fn complement(&self, sites: &[usize]) -> Vec<usize> {
        (0..self.dims.len()).filter(|s| !sites.contains(s)).collect()
    }

    /// Flat-index table for a split of the sites into `outer` and `inner`.
    ///
    /// Entry `[o * inner_dim + i]` is the full index whose `outer` digits
    /// encode `o` and whose `inner` digits encode `i` (each mixed-radix in
    /// the order the sites are listed). Together the two lists must cover
    /// every site exactly once.
    pub(crate) fn split_table(&self, outer: &[usize], inner: &[usize]) -> (Vec<usize>, usize, usize) {
        let strides = self.strides();
        let offsets = |sites: &[usize]| -> Vec<usize> {
            let mut offs = vec![0usize];
            for &s in sites {
                let d = self.dims[s];
                let mut next = Vec::with_capacity(offs.len() * d);
                for &o in &offs {
                    for x in 0..d {
                        next.push(o + x * strides[s]);
                    }
                }
                offs = next;
            }
            offs
        };
        let outer_offs = offsets(outer);
        let inner_offs = offsets(inner);
        let mut table = Vec::with_capacity(outer_offs.len() * inner_offs.len());
        for &o in &outer_offs {
            for &i in &inner_offs {
                table.push(o + i);
            }
        }
        (table, outer_offs.len(), inner_offs.len())
    }
}
