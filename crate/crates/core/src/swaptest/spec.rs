use crate::error::{Error, Result};
use crate::hilbert::SiteLayout;

/// Disjoint site groups, each swapped under its own control qubit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapGroupSpec {
    layout: SiteLayout,
    groups: Vec<Vec<usize>>,
    covers_all: bool,
}

impl SwapGroupSpec {
    pub fn new(layout: SiteLayout, groups: Vec<Vec<usize>>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::InvalidGroups("no groups".into()));
        }
        if groups.len() > 24 {
            return Err(Error::InvalidGroups(format!("{} control qubits", groups.len())));
        }
        let mut seen = vec![false; layout.n_sites()];
        for g in &groups {
            if g.is_empty() {
                return Err(Error::InvalidGroups("empty group".into()));
            }
            for &s in g {
                if s >= layout.n_sites() {
                    return Err(Error::InvalidGroups(format!("site {s} out of range")));
                }
                if seen[s] {
                    return Err(Error::InvalidGroups(format!("site {s} in two groups")));
                }
                seen[s] = true;
            }
        }
        let covers_all = seen.iter().all(|&x| x);
        Ok(Self { layout, groups, covers_all })
    }

    /// One group per site.
    pub fn per_site(layout: SiteLayout) -> Self {
        let groups = (0..layout.n_sites()).map(|s| vec![s]).collect();
        Self::new(layout, groups).unwrap()
    }

    /// `{cut, complement}`
    pub fn bipartite(layout: SiteLayout, cut: &[usize]) -> Result<Self> {
        layout.check_sites(cut).map_err(|e| Error::InvalidGroups(e.to_string()))?;
        if cut.is_empty() || cut.len() >= layout.n_sites() {
            return Err(Error::InvalidGroups("cut must be a nonempty proper subset".into()));
        }
        let rest = layout.complement(cut);
        Self::new(layout, vec![cut.to_vec(), rest])
    }

    /// `{{i}, {j}}`, other sites untouched.
    pub fn pair(layout: SiteLayout, i: usize, j: usize) -> Result<Self> {
        if i == j {
            return Err(Error::InvalidGroups(format!("pair sites coincide ({i})")));
        }
        Self::new(layout, vec![vec![i], vec![j]])
    }

    pub fn single(layout: SiteLayout) -> Self {
        let all = (0..layout.n_sites()).collect();
        Self::new(layout, vec![all]).unwrap()
    }

    #[inline]
    pub fn layout(&self) -> &SiteLayout {
        &self.layout
    }

    #[inline]
    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    /// Number of control qubits.
    #[inline]
    pub fn m(&self) -> usize {
        self.groups.len()
    }

    #[inline]
    pub fn covers_all(&self) -> bool {
        self.covers_all
    }

    /// Sites of the groups whose bits are set in `mask` (bit `g` = group `g`), ascending.
    pub fn union(&self, mask: usize) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.m())
            .filter(|g| mask >> g & 1 == 1)
            .flat_map(|g| self.groups[g].iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}
