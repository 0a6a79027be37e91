use std::f64::consts::FRAC_PI_4;

use anyhow::Result;
use cswap_core::measures::{ce_error_correction, concentratable_from_distribution, ratio_r, ClassLabel};
use cswap_core::qstates::{self, HaarSampler, MixedFamilyParams, WVariant};
use cswap_core::swaptest::{bipartitions, SwapGroupSpec};
use cswap_core::PureState;

use super::{per_site, test_with, Ctx, Dist, Experiment, Kind};
use crate::grid::{Axis, Grid, Point};
use crate::record::{cells, Row};

pub(crate) fn delta_axis(key: &str) -> Axis {
    Axis::linspace(key, 0.0, FRAC_PI_4, 64)
}

pub fn mixed_bell() -> Experiment {
    Experiment::new(
        "mixed-bell",
        Kind::Figure,
        "mixed two-qubit twins: P(not 00) and P(01 or 10) against mixedness, one series per concurrence",
        Grid::new(vec![Axis::linspace("c2", 0.0, 1.0, 5), delta_axis("delta")]),
        &["theta"],
        &["p00", "p01", "p10", "p11", "p_not00", "p_odd", "purity", "p_odd_closed"],
        |ctx, p| {
            let (c2, delta) = (p.get("c2"), p.get("delta"));
            let theta = 0.5 * c2.clamp(0.0, 1.0).asin();
            let rho = qstates::mixed_bell_purified::<f64>(theta, delta).marginal(&[1, 2])?;
            let d = per_site(&rho, &rho)?;
            let gamma = 1.0 - 0.5 * c2 * c2 * (2.0 * delta).sin().powi(2);
            let outputs = cells![
                d.all_zero(),
                d.prob_bits("01", ctx.order)?,
                d.prob_bits("10", ctx.order)?,
                d.all_one(),
                1.0 - d.all_zero(),
                d.odd(),
                rho.purity(),
                0.5 * (1.0 - gamma),
            ];
            Ok(vec![Row::new(cells![theta], outputs).with_dist(d)])
        },
    )
}

const MIXED_OUTPUTS: &[&str] =
    &["f_ab", "purity", "p0", "p_not0", "p_odd", "p_even", "ce", "ce_corrected", "p_not0_closed", "p_odd_closed"];

fn mixed_grid() -> Grid {
    Grid::new(vec![Axis::ints("n", [3]), delta_axis("delta"), delta_axis("epsilon")])
}

fn mixed_row(pair: (PureState, PureState), sys: &[usize], r: f64, closed: (f64, f64), eps: f64) -> Result<Row> {
    let a = pair.0.marginal(sys)?;
    let b = pair.1.marginal(sys)?;
    let d = per_site(&a, &b)?;
    let ce = concentratable_from_distribution(&d);
    let outputs = cells![
        eps.cos().powi(2),
        a.purity(),
        d.all_zero(),
        1.0 - d.all_zero(),
        d.odd(),
        d.even_nonzero(),
        ce,
        ce_error_correction(ce, d.odd(), r),
        closed.0,
        closed.1,
    ];
    Ok(Row::new(vec![], outputs).with_dist(d))
}

pub fn mixed_ghz() -> Experiment {
    Experiment::new(
        "mixed-ghz",
        Kind::Figure,
        "mixed GHZ inputs of unequal fidelity: P(not 0^n) and P(odd) against mixedness",
        mixed_grid(),
        &[],
        MIXED_OUTPUTS,
        |_, p| {
            let (n, delta, eps) = (p.count("n"), p.get("delta"), p.get("epsilon"));
            let params = MixedFamilyParams::new(n, delta, eps)?;
            let f = 1.0 - (2.0 * delta).cos().powi(2) * (2.0 * eps).cos();
            let pn = 0.5f64.powi(n as i32);
            let closed = (1.0 - (0.5 + pn - 0.5 * pn * f), 0.25 * f);
            let r = ratio_r(ClassLabel::Ghz, n)?;
            Ok(vec![mixed_row(params.ghz_pair()?, &params.system_sites(), r, closed, eps)?])
        },
    )
}

pub fn mixed_w() -> Experiment {
    Experiment::new(
        "mixed-w",
        Kind::Figure,
        "mixed W inputs of unequal fidelity: P(not 0^n) and P(odd) against mixedness",
        mixed_grid(),
        &["w_variant"],
        MIXED_OUTPUTS,
        |_, p| {
            let (n, delta, eps) = (p.count("n"), p.get("delta"), p.get("epsilon"));
            let params = MixedFamilyParams::new(n, delta, eps)?;
            let (nf, x) = (n as f64, delta.cos().powi(2) * eps.cos());
            let k = (nf - 1.0) / (4.0 * nf);
            let closed = (1.0 - (0.5 + 0.5 / nf - k * (1.0 - x)), 2.0 * k * (1.0 - x));
            let r = ratio_r(ClassLabel::W, n)?;
            let mut row = mixed_row(params.w_pair(WVariant::CoherenceDamped)?, &params.system_sites(), r, closed, eps)?;
            row.params = cells!["coherence-damped"];
            Ok(vec![row])
        },
    )
}

pub fn haar_comparison() -> Experiment {
    Experiment::new(
        "haar-comparison",
        Kind::Figure,
        "Haar-random states: summed bipartite-cut P(11) against the general test on equal copies, per state",
        Grid::new(vec![Axis::ints("n", [3, 4]), Axis::ints("states", [1000]), Axis::fixed("copy_ratio", 1.0)]),
        &["state_index"],
        &["ce", "n_cuts", "general_total", "bipartite_total", "general_ge_bipartite"],
        |ctx: &Ctx, p: &Point| {
            let (n, states) = (p.count("n"), p.count("states"));
            // general-test trials run per bipartite-cut trial; 1 means equal copies
            let ratio = p.get("copy_ratio");
            let cuts = bipartitions(n);
            (0..states)
                .map(|i| {
                    // one stream per state so the rows do not depend on scheduling
                    let s: PureState = HaarSampler::for_worker(n, ctx.seed, i as u64)?.sample();
                    let full: Dist = per_site(&s, &s)?;
                    let ce = concentratable_from_distribution(&full);
                    let mut bip = 0.0;
                    for c in &cuts {
                        bip += test_with(&s, &s, &SwapGroupSpec::bipartite(s.layout().clone(), c)?)?.all_one();
                    }
                    let general = ratio * cuts.len() as f64 * ce;
                    Ok(Row::new(cells![i], cells![ce, cuts.len(), general, bip, general >= bip]).with_dist(full))
                })
                .collect()
        },
    )
}
