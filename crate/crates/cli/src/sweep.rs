//! Generic sweeps: a state family crossed with a parameter grid and one test layout.

use std::f64::consts::FRAC_PI_4;

use anyhow::Result;
use cswap_core::hilbert::{DensityMatrix, PureState};
use cswap_core::qstates::{self, MixedFamilyParams, WVariant};
use cswap_core::swaptest::{Input, SwapGroupSpec};
use cswap_core::SiteLayout;

use crate::experiments::{test_with, Experiment, Kind};
use crate::grid::{Axis, Grid, Point};
use crate::record::{cells, Row};
use crate::UsageError;

pub const FAMILIES: &[&str] =
    &["ghz", "w", "seesaw", "mixed-bell", "mixed-ghz", "mixed-w", "mixed-w-literal", "phi-plus-plus-4"];

/// Which controlled swaps a sweep applies.
#[derive(Debug, Clone, PartialEq)]
pub enum TestLayout {
    Full,
    Equivalence,
    Groups(Vec<Vec<usize>>),
}

impl TestLayout {
    /// `full`, `equivalence`, `bipartite:0,1`, `pair:0,2` or `groups:0,1/2/3`; sites count from 0.
    pub fn parse(s: &str) -> Result<Self> {
        let sites = |t: &str| -> Result<Vec<usize>> {
            t.split(',')
                .map(|x| x.trim().parse::<usize>().map_err(|_| UsageError(format!("bad site {x:?} in {s:?}")).into()))
                .collect()
        };
        Ok(match s.split_once(':') {
            None if s == "full" => TestLayout::Full,
            None if s == "equivalence" => TestLayout::Equivalence,
            Some(("bipartite", t)) => TestLayout::Groups(vec![sites(t)?]),
            Some(("pair", t)) => {
                let v = sites(t)?;
                if v.len() != 2 {
                    return Err(UsageError(format!("pair needs two sites, got {s:?}")).into());
                }
                TestLayout::Groups(vec![vec![v[0]], vec![v[1]]])
            }
            Some(("groups", t)) => TestLayout::Groups(t.split('/').map(sites).collect::<Result<_>>()?),
            _ => return Err(UsageError(format!("unknown test layout {s:?}")).into()),
        })
    }

    fn spec(&self, layout: &SiteLayout) -> Result<SwapGroupSpec> {
        Ok(match self {
            TestLayout::Full => SwapGroupSpec::per_site(layout.clone()),
            TestLayout::Equivalence => SwapGroupSpec::single(layout.clone()),
            // a single listed group is one side of a cut
            TestLayout::Groups(g) if g.len() == 1 => SwapGroupSpec::bipartite(layout.clone(), &g[0])?,
            TestLayout::Groups(g) => SwapGroupSpec::new(layout.clone(), g.clone())?,
        })
    }
}

enum Pair {
    Pure(PureState<f64>, PureState<f64>),
    Mixed(DensityMatrix<f64>, DensityMatrix<f64>),
}

fn default_grid(family: &str) -> Grid {
    let angle = |k: &str| Axis::linspace(k, 0.0, FRAC_PI_4, 9);
    Grid::new(match family {
        "ghz" => vec![Axis::ints("n", 2..=6)],
        "w" => vec![Axis::ints("n", 3..=6)],
        "seesaw" => vec![Axis::ints("d", 2..=5), Axis::ints("n", 2..=3), angle("delta")],
        "mixed-bell" => vec![angle("theta"), angle("delta")],
        "phi-plus-plus-4" => vec![angle("delta")],
        _ => vec![Axis::ints("n", [3]), angle("delta"), angle("epsilon")],
    })
}

fn inputs(family: &str, p: &Point) -> Result<Pair> {
    let mixed = |(a, b): (PureState<f64>, PureState<f64>), sys: Vec<usize>| -> Result<Pair> {
        Ok(Pair::Mixed(a.marginal(&sys)?, b.marginal(&sys)?))
    };
    Ok(match family {
        "ghz" => {
            let g = qstates::ghz(p.count("n"))?;
            Pair::Pure(g.clone(), g)
        }
        "w" => {
            let g = qstates::w(p.count("n"))?;
            Pair::Pure(g.clone(), g)
        }
        "seesaw" => {
            let (d, n) = (p.count("d"), p.count("n"));
            Pair::Pure(qstates::seesaw_qudit(d, n, 0.0)?, qstates::seesaw_qudit(d, n, p.get("delta"))?)
        }
        "phi-plus-plus-4" => {
            let s = qstates::phi_plus_plus_4(p.get("delta"));
            Pair::Pure(s.clone(), s)
        }
        "mixed-bell" => {
            let rho = qstates::mixed_bell_purified(p.get("theta"), p.get("delta")).marginal(&[1, 2])?;
            Pair::Mixed(rho.clone(), rho)
        }
        _ => {
            let params = MixedFamilyParams::new(p.count("n"), p.get("delta"), p.get("epsilon"))?;
            let sys = params.system_sites();
            match family {
                "mixed-ghz" => mixed(params.ghz_pair()?, sys)?,
                "mixed-w" => mixed(params.w_pair(WVariant::CoherenceDamped)?, sys)?,
                _ => mixed(params.w_pair(WVariant::Literal)?, sys)?,
            }
        }
    })
}

pub fn build(family: &str, test: &str) -> Result<Experiment> {
    if !FAMILIES.contains(&family) {
        return Err(UsageError(format!("unknown family {family:?} (known: {})", FAMILIES.join(", "))).into());
    }
    let layout = TestLayout::parse(test)?;
    let fam = family.to_string();
    let test = test.to_string();
    Ok(Experiment::new(
        &format!("sweep-{family}"),
        Kind::Sweep,
        "generic sweep",
        default_grid(family),
        &["test"],
        &["m", "p_all_zero", "p_not_all_zero", "p_odd", "p_even_nonzero", "p_all_one", "probs"],
        move |ctx, p| {
            let pair = inputs(&fam, p)?;
            let (a, b): (Input<f64>, Input<f64>) = match &pair {
                Pair::Pure(a, b) => (a.into(), b.into()),
                Pair::Mixed(a, b) => (a.into(), b.into()),
            };
            let d = test_with(a, b, &layout.spec(a.layout())?)?;
            let probs: Vec<String> = d.entries(ctx.order).into_iter().map(|(k, v)| format!("{k}={v:.16e}")).collect();
            let out = cells![d.m(), d.all_zero(), 1.0 - d.all_zero(), d.odd(), d.even_nonzero(), d.all_one(), probs.join(";")];
            Ok(vec![Row::new(cells![test.as_str()], out).with_dist(d)])
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layouts_parse() {
        assert_eq!(TestLayout::parse("full").unwrap(), TestLayout::Full);
        assert_eq!(TestLayout::parse("pair:0,2").unwrap(), TestLayout::Groups(vec![vec![0], vec![2]]));
        assert_eq!(TestLayout::parse("groups:0,1/2").unwrap(), TestLayout::Groups(vec![vec![0, 1], vec![2]]));
        for bad in ["pairs:0,1", "pair:0", "bipartite:x", "nope"] {
            assert!(TestLayout::parse(bad).is_err(), "{bad}");
        }
    }
}
