use std::io::Write;

use anyhow::{bail, Context, Result};
use cswap_core::shots::{self, Z_95};
use cswap_core::swaptest::BitOrder;
use rayon::prelude::*;

use crate::experiments::{Ctx, Experiment};
use crate::grid::Point;
use crate::record::{cells, csv_writer, write_line, Cell, Row, SCHEMA_VERSION};

pub const DEFAULT_SEED: u64 = 202406;
pub const SHOT_COLUMNS: &[&str] =
    &["n_shots", "shot_seed", "emp_p0", "emp_p_odd", "emp_p_even", "emp_p_odd_lo", "emp_p_odd_hi"];

#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub seed: u64,
    pub shots: Option<u64>,
    pub order: BitOrder,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, shots: None, order: BitOrder::GroupFirst, workers: 1 }
    }
}

/// Seed for the shots of output row `row`; depends only on the run seed and row position.
pub fn shot_seed(seed: u64, row: usize) -> u64 {
    let mut z = seed ^ (row as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Evaluates every grid point, in parallel, keeping grid order.
pub fn evaluate(exp: &Experiment, cfg: &RunConfig) -> Result<Vec<(Point, Row)>> {
    let ctx = Ctx { seed: cfg.seed, order: cfg.order };
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers.max(1)).build()?;
    let chunks = pool.install(|| {
        exp.grid
            .points()
            .into_par_iter()
            .map(|p| {
                let rows = (exp.eval)(&ctx, &p).with_context(|| format!("{} at {p}", exp.id))?;
                for r in &rows {
                    if r.params.len() != exp.params.len() || r.outputs.len() != exp.outputs.len() {
                        bail!("{} at {p}: row shape does not match the column layout", exp.id);
                    }
                }
                Ok(rows.into_iter().map(|r| (p.clone(), r)).collect::<Vec<_>>())
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(chunks.into_iter().flatten().collect())
}

pub fn header(exp: &Experiment, cfg: &RunConfig) -> Vec<String> {
    let mut h: Vec<String> = ["experiment_id", "schema_version", "seed"].map(String::from).to_vec();
    h.extend(exp.grid.keys().into_iter().map(String::from));
    h.extend(exp.params.iter().chain(&exp.outputs).map(|s| s.to_string()));
    if cfg.shots.is_some() {
        h.extend(SHOT_COLUMNS.iter().map(|s| s.to_string()));
    }
    h
}

fn shot_cells(row: &Row, n: u64, seed: u64) -> Result<Vec<Cell>> {
    let Some(dist) = &row.dist else { return Ok(vec![Cell::Empty; SHOT_COLUMNS.len()]) };
    let rec = shots::sample(dist, n, seed)?;
    let emp = rec.to_distribution()?;
    let odd: u64 = (0..1usize << rec.m()).filter(|z| z.count_ones() % 2 == 1).map(|z| rec.count(z)).sum();
    let (lo, hi) = shots::wilson(odd, n, Z_95);
    Ok(cells![n, seed, emp.all_zero(), emp.odd(), emp.even_nonzero(), lo, hi])
}

pub fn write_csv<W: Write>(exp: &Experiment, cfg: &RunConfig, rows: &[(Point, Row)], out: W) -> Result<()> {
    let mut w = csv_writer(out);
    write_line(&mut w, header(exp, cfg))?;
    let integer: Vec<bool> = exp.grid.axes().iter().map(|a| a.integer).collect();
    for (i, (p, row)) in rows.iter().enumerate() {
        let mut line = cells![exp.id.as_str(), SCHEMA_VERSION as u64, cfg.seed];
        line.extend(p.values().zip(&integer).map(|(v, &int)| if int { Cell::Int(v as i64) } else { Cell::Float(v) }));
        line.extend(row.params.iter().chain(&row.outputs).cloned());
        if let Some(n) = cfg.shots {
            line.extend(shot_cells(row, n, shot_seed(cfg.seed, i))?);
        }
        write_line(&mut w, line.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

pub fn run_to<W: Write>(exp: &Experiment, cfg: &RunConfig, out: W) -> Result<()> {
    let rows = evaluate(exp, cfg)?;
    write_csv(exp, cfg, &rows, out)
}

pub fn run_to_string(exp: &Experiment, cfg: &RunConfig) -> Result<String> {
    let mut buf = Vec::new();
    run_to(exp, cfg, &mut buf)?;
    Ok(String::from_utf8(buf)?)
}
