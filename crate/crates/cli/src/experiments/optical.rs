use std::f64::consts::{FRAC_PI_4, PI};

use cswap_core::optical::{self, analytic, DeficitPolicy, EcsAmplitudes, FockCutoff, OpticalParams};
use cswap_core::swaptest::{optical_equivalence_suite, OpticalCase};
use cswap_core::Complex;

use super::{per_site, single_control, Experiment, Kind};
use crate::grid::{Axis, Grid};
use crate::record::{cells, Row};

/// Cutoff for the single-mode equivalence experiments.
const D_SINGLE: usize = 80;
/// Cutoff for the two-mode coherent superpositions.
const D_PAIR: usize = 40;
/// Largest squeezing the single-mode numerics are run at.
const R_NUMERIC_MAX: f64 = 1.5;

fn re(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn alpha_axis() -> Axis {
    Axis::linspace("alpha", 0.0, 3.0, 61)
}

pub fn squeezed_equiv() -> Experiment {
    Experiment::new(
        "squeezed-equiv",
        Kind::Figure,
        "coherent state against its squeezed copy: P(1) from truncated numerics and closed form",
        Grid::new(vec![
            Axis::linspace("alpha", 0.0, 2.0, 5),
            Axis::linspace("r", 0.0, R_NUMERIC_MAX, 31),
            Axis::fixed("theta", 0.0),
        ]),
        &["d_cut"],
        &["p1_numeric", "p1_analytic", "abs_err", "norm_deficit"],
        |_, p| {
            let params = OpticalParams::new(re(p.get("alpha")), p.get("r"), p.get("theta"), 0.0)?;
            let rec = optical_equivalence_suite(OpticalCase::SqueezedCoherent(params), &FockCutoff::new(D_SINGLE)?)?;
            let out = cells![rec.numeric, rec.analytic, (rec.numeric - rec.analytic).abs(), rec.norm_deficit];
            Ok(vec![Row::new(cells![D_SINGLE], out).with_dist(single_control(rec.numeric)?)])
        },
    )
}

pub fn squeezed_cat() -> Experiment {
    Experiment::new(
        "squeezed-cat",
        Kind::Figure,
        "cat state against a squeezed cat: P(1) against relative phase and amplitude, one series per squeezing",
        Grid::new(vec![
            Axis::linspace("alpha", 0.5, 3.0, 6),
            Axis::linspace("r", 0.0, 4.0, 9),
            Axis::linspace("phi", 0.0, 2.0 * PI, 17),
        ]),
        &["phi1", "d_cut"],
        &["p1_analytic", "p1_printed", "p1_numeric", "abs_err", "norm_deficit"],
        |_, p| {
            let (alpha, r, phi) = (p.get("alpha"), p.get("r"), p.get("phi"));
            let an = analytic::squeezed_cat_p1(alpha, r, 0.0, phi);
            let printed = analytic::squeezed_cat_p1_printed(alpha, r, 0.0, phi);
            // beyond the verified squeezing range only the closed form is reported
            if r > R_NUMERIC_MAX {
                let out = cells![an, printed, None::<f64>, None::<f64>, None::<f64>];
                return Ok(vec![Row::new(cells![0.0, None::<usize>], out).with_dist(single_control(an)?)]);
            }
            let params = OpticalParams::new(re(alpha), r, 0.0, phi)?;
            let case = OpticalCase::SqueezedCat { params, phi1: 0.0 };
            let rec = optical_equivalence_suite(case, &FockCutoff::new(D_SINGLE)?)?;
            let out = cells![an, printed, rec.numeric, (rec.numeric - an).abs(), rec.norm_deficit];
            Ok(vec![Row::new(cells![0.0, D_SINGLE], out).with_dist(single_control(rec.numeric)?)])
        },
    )
}

pub fn ecs_general() -> Experiment {
    Experiment::new(
        "ecs-general",
        Kind::Figure,
        "two-mode coherent superpositions: P(11) against amplitude, one series per amplitude angle",
        Grid::new(vec![Axis::linspace("t", 0.0, FRAC_PI_4, 5), alpha_axis()]),
        &["d_cut"],
        &["c2_prime", "p00", "p_odd", "p11", "norm_deficit"],
        |_, p| {
            let (t, alpha) = (p.get("t"), re(p.get("alpha")));
            let z = re(0.0);
            let amps: EcsAmplitudes<f64> = [re(t.cos()), z, z, re(t.sin())];
            let s = optical::ecs_general(amps, alpha, &FockCutoff::new(D_PAIR)?)?;
            let d = per_site(&s.state, &s.state)?;
            let c2 = optical::ecs_concurrence_analogue(amps, alpha)?;
            let out = cells![c2, d.all_zero(), d.odd(), d.all_one(), s.norm_deficit];
            Ok(vec![Row::new(cells![D_PAIR], out).with_dist(d)])
        },
    )
}

pub fn ecvs_vs_ecsplus() -> Experiment {
    Experiment::new(
        "ecvs-vs-ecsplus",
        Kind::Figure,
        "P(11) for the entangled coherent-vacuum and symmetric entangled coherent states against amplitude",
        Grid::new(vec![alpha_axis()]),
        &["d_cut"],
        &["p11_ecvs", "p11_ecsplus", "p11_ecvs_printed", "p11_ecsplus_printed", "norm_deficit"],
        |_, p| {
            let alpha = p.get("alpha");
            let cut = FockCutoff::new(D_PAIR)?;
            let v = optical::ecvs(re(alpha), &cut)?;
            let e = optical::ecs_plus(re(alpha), &cut)?;
            let pv = per_site(&v.state, &v.state)?.all_one();
            let pe = per_site(&e.state, &e.state)?.all_one();
            let out = cells![
                pv,
                pe,
                analytic::ecvs_p11_printed(alpha),
                analytic::ecs_plus_p11_printed(alpha),
                v.norm_deficit.max(e.norm_deficit),
            ];
            Ok(vec![Row::new(cells![D_PAIR], out)])
        },
    )
}

pub fn ecs_qudit() -> Experiment {
    Experiment::new(
        "ecs-qudit",
        Kind::Figure,
        "finite-dimension approximation of a two-mode cat: squared norm and P(11) against amplitude and dimension",
        Grid::new(vec![Axis::ints("d", [15]), alpha_axis()]),
        &[],
        &["norm_sq", "p11_qudit", "p11_ecs"],
        |_, p| {
            let (d, alpha) = (p.count("d"), re(p.get("alpha")));
            let q = optical::ecs_qudit_approx(alpha, &FockCutoff::new(d)?.with_policy(DeficitPolicy::Allow))?;
            let dq = per_site(&q.state, &q.state)?;
            let one = re(1.0);
            let z = re(0.0);
            let e = optical::ecs_general([one, z, z, one], alpha, &FockCutoff::new(D_PAIR)?)?;
            let pe = per_site(&e.state, &e.state)?.all_one();
            Ok(vec![Row::new(vec![], cells![1.0 - q.norm_deficit, dq.all_one(), pe]).with_dist(dq)])
        },
    )
}

pub fn tmsv() -> Experiment {
    Experiment::new(
        "tmsv",
        Kind::Figure,
        "two-mode squeezed vacuum cut to D levels: P(11) and squared norm against squeezing",
        Grid::new(vec![Axis::ints("d", [250]), Axis::linspace("r", 0.0, 6.0, 31)]),
        &[],
        &["norm_sq", "p11", "p11_printed", "p11_limit"],
        |_, p| {
            let (d, r) = (p.count("d"), p.get("r"));
            let t = optical::tmsv_qudit(r, 0.0, &FockCutoff::new(d)?.with_policy(DeficitPolicy::Allow))?;
            let dist = per_site(&t.state, &t.state)?;
            let out = cells![1.0 - t.norm_deficit, dist.all_one(), analytic::tmsv_p11_printed(r, d), 0.5 - 0.5 / d as f64];
            Ok(vec![Row::new(vec![], out).with_dist(dist)])
        },
    )
}
