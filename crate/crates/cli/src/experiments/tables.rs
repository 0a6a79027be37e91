use std::f64::consts::FRAC_PI_4;

use cswap_core::measures::two_party_failure_flag;
use cswap_core::qstates;
use cswap_core::swaptest::{bipartitions, SwapGroupSpec};
use cswap_core::PureState;

use super::{test_with, Dist, Experiment, Kind};
use crate::grid::{Axis, Grid};
use crate::record::{cells, Cell, Row};

const TOL: f64 = 1e-12;

fn label(sites: &[usize]) -> String {
    sites.iter().map(|s| (s + 1).to_string()).collect()
}

fn four(d: &Dist, order: cswap_core::swaptest::BitOrder) -> anyhow::Result<[f64; 4]> {
    Ok([d.prob_bits("00", order)?, d.prob_bits("01", order)?, d.prob_bits("10", order)?, d.prob_bits("11", order)?])
}

fn matches(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).abs() <= TOL)
}

fn table_cells(t: Option<[f64; 4]>) -> Vec<Cell> {
    match t {
        Some(v) => v.iter().map(|&x| Cell::from(x)).collect(),
        None => vec![Cell::Empty; 4],
    }
}

/// Values printed for three cuts of the paired-Bell state, with `c` the pair concurrence.
fn printed_cut(cut: &str, c: f64) -> Option<[f64; 4]> {
    let c2 = c * c;
    match cut {
        "12-34" => Some([1.0, 0.0, 0.0, 0.0]),
        "13-24" => Some([1.0 - 0.375 * c2, 0.0, 0.0, 0.375 * c2]),
        "3-124" => Some([1.0 - 0.5 * c2, 0.125 * c2, 0.25 * c2, 0.125 * c2]),
        _ => None,
    }
}

/// Exact P(11) for the same three cuts.
fn oracle_p11(cut: &str, c: f64) -> Option<f64> {
    let c2 = c * c;
    match cut {
        "12-34" => Some(0.0),
        "13-24" => Some(0.5 * c2 - 0.125 * c2 * c2),
        "3-124" => Some(0.25 * c2),
        _ => None,
    }
}

pub fn bipartite() -> Experiment {
    Experiment::new(
        "bipartite-tables",
        Kind::Table,
        "bipartite-cut test on the paired-Bell four-qubit state, every cut, against pair concurrence",
        Grid::new(vec![Axis::linspace("delta", 0.0, FRAC_PI_4, 9)]),
        &["cut"],
        &[
            "c2",
            "p00",
            "p01",
            "p10",
            "p11",
            "p_odd",
            "table_p00",
            "table_p01",
            "table_p10",
            "table_p11",
            "oracle_p11",
            "table_discrepancy",
        ],
        |ctx, p| {
            let delta = p.get("delta");
            let s = qstates::phi_plus_plus_4::<f64>(delta);
            let c = (2.0 * delta).cos().abs();
            bipartitions(4)
                .into_iter()
                .map(|side| {
                    // smaller side first; at equal size the side holding qubit 1
                    let rest = s.layout().complement(&side);
                    let (first, second) = if side.len() > rest.len() { (rest, side) } else { (side, rest) };
                    let name = format!("{}-{}", label(&first), label(&second));
                    let spec = SwapGroupSpec::new(s.layout().clone(), vec![first, second])?;
                    let d = test_with(&s, &s, &spec)?;
                    let got = four(&d, ctx.order)?;
                    let printed = printed_cut(&name, c);
                    let mut out = cells![c, got[0], got[1], got[2], got[3], d.odd()];
                    out.extend(table_cells(printed));
                    out.extend(cells![oracle_p11(&name, c), printed.map(|t| !matches(&t, &got))]);
                    Ok(Row::new(cells![name], out).with_dist(d))
                })
                .collect()
        },
    )
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn printed_pair(state: &str, pair: (usize, usize)) -> Option<[f64; 4]> {
    match (state, pair) {
        ("chi4", (0, 1)) => Some([1.0, 0.0, 0.0, 0.0]),
        ("chi4", (0, 2) | (1, 2)) => Some([0.75, 0.25, 0.0, 0.0]),
        ("chi4", (2, 3)) => Some([0.75, 0.0, 0.0, 0.25]),
        ("phi++4", (0, 1) | (2, 3)) => Some([0.75, 0.0, 0.0, 0.25]),
        ("phi++4", (0, 2) | (1, 2)) => Some([9.0 / 16.0, 3.0 / 16.0, 3.0 / 16.0, 1.0 / 16.0]),
        _ => None,
    }
}

pub fn two_party() -> Experiment {
    Experiment::new(
        "two-party-tables",
        Kind::Table,
        "two-party test on every qubit pair of a partly separable state and of the paired-Bell state",
        Grid::default(),
        &["state", "pair", "separable_pair"],
        &[
            "p00",
            "p01",
            "p10",
            "p11",
            "p_odd",
            "failure_flag",
            "table_p00",
            "table_p01",
            "table_p10",
            "table_p11",
            "table_matches",
        ],
        |ctx, _| {
            let chi = qstates::chi_4(&PureState::qubit_ket("01")?)?;
            let phi = qstates::phi_plus_plus_4::<f64>(0.0);
            let mut rows = Vec::new();
            for (name, s, sep) in [("chi4", &chi, Some("|01>")), ("phi++4", &phi, None)] {
                for (i, j) in PAIRS {
                    let d = test_with(s, s, &SwapGroupSpec::pair(s.layout().clone(), i, j)?)?;
                    let got = four(&d, ctx.order)?;
                    let printed = printed_pair(name, (i, j));
                    let mut out = cells![got[0], got[1], got[2], got[3], d.odd(), two_party_failure_flag(&d)?];
                    out.extend(table_cells(printed));
                    out.push(printed.map(|t| matches(&t, &got)).into());
                    rows.push(Row::new(cells![name, format!("{}-{}", i + 1, j + 1), sep], out).with_dist(d));
                }
            }
            Ok(rows)
        },
    )
}
