use cswap_core::qstates;

use super::qubit::delta_axis;
use super::{per_site, Experiment, Kind};
use crate::grid::{Axis, Grid};
use crate::record::{cells, Row};

pub fn seesaw() -> Experiment {
    Experiment::new(
        "qudit-seesaw",
        Kind::Figure,
        "inequivalent seesaw qudit states: P(not 0^n) and P(odd) against inequivalence, one series per dimension",
        Grid::new(vec![Axis::ints("d", 2..=8), Axis::ints("n", [3]), delta_axis("delta")]),
        &[],
        &[
            "fidelity",
            "p0",
            "p_not0",
            "p_odd",
            "p_even",
            "p0_closed",
            "p_odd_closed",
            "p_odd_from_fidelity",
        ],
        |_, p| {
            let (d, n, delta) = (p.count("d"), p.count("n"), p.get("delta"));
            let a = qstates::seesaw_qudit::<f64>(d, n, 0.0)?;
            let b = qstates::seesaw_qudit::<f64>(d, n, delta)?;
            let fid = a.fidelity(&b)?;
            let dist = per_site(&a, &b)?;
            let (df, pn) = (d as f64, 0.5f64.powi(n as i32));
            // the closed form carries X = (D-1)/D for odd D and F = cos^2 delta
            let x = if d % 2 == 0 { 1.0 } else { (df - 1.0) / df };
            let one_minus_f = delta.sin().powi(2);
            let outputs = cells![
                fid,
                dist.all_zero(),
                1.0 - dist.all_zero(),
                dist.odd(),
                dist.even_nonzero(),
                2.0 / df * (0.5 + (df - 1.0) * pn) - x * pn * one_minus_f,
                0.5 * x * one_minus_f,
                0.5 * (1.0 - fid),
            ];
            Ok(vec![Row::new(vec![], outputs).with_dist(dist)])
        },
    )
}

pub fn versus_qubit() -> Experiment {
    Experiment::new(
        "qudit-vs-qubit",
        Kind::Figure,
        "maximally entangled two-qudit P(11) against dimension, with the n-qubit GHZ value at D = 2^(n-1)",
        Grid::new(vec![Axis::ints("d", 2..=16)]),
        &["n_qubits"],
        &["p11_qudit", "p_not0_ghz", "gap"],
        |_, p| {
            let d = p.count("d");
            let s = qstates::seesaw_qudit::<f64>(d, 2, 0.0)?;
            let dist = per_site(&s, &s)?;
            let p11 = 1.0 - dist.all_zero();
            let row = if d.is_power_of_two() {
                let n = d.trailing_zeros() as usize + 1;
                let g = qstates::ghz::<f64>(n)?;
                let ghz = 1.0 - per_site(&g, &g)?.all_zero();
                Row::new(cells![n], cells![p11, ghz, (p11 - ghz).abs()])
            } else {
                Row::new(cells![None::<usize>], cells![p11, None::<f64>, None::<f64>])
            };
            Ok(vec![row.with_dist(dist)])
        },
    )
}
