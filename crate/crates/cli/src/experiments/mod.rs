//! The named experiments. Each one owns a default grid and a fixed column
//! layout; `eval` turns one grid point into one or more rows.

use anyhow::Result;
use cswap_core::swaptest::{run, BitOrder, ControlDistribution, Engine, Input, SwapGroupSpec};

use crate::grid::{Grid, Point};
use crate::record::Row;

mod optical;
mod qubit;
mod qudit;
mod tables;

pub type Dist = ControlDistribution<f64>;
pub type EvalFn = Box<dyn Fn(&Ctx, &Point) -> Result<Vec<Row>> + Send + Sync>;

/// Per-run settings visible to every evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub seed: u64,
    pub order: BitOrder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Figure,
    Table,
    Sweep,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Figure => "figure",
            Kind::Table => "table",
            Kind::Sweep => "sweep",
        }
    }
}

pub struct Experiment {
    pub id: String,
    pub kind: Kind,
    /// What the artifact shows, in a line.
    pub summary: &'static str,
    pub grid: Grid,
    /// Columns emitted by `eval` in addition to the grid axes.
    pub params: Vec<&'static str>,
    pub outputs: Vec<&'static str>,
    pub eval: EvalFn,
}

impl Experiment {
    pub fn new(
        id: &str,
        kind: Kind,
        summary: &'static str,
        grid: Grid,
        params: &[&'static str],
        outputs: &[&'static str],
        eval: impl Fn(&Ctx, &Point) -> Result<Vec<Row>> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.into(),
            kind,
            summary,
            grid,
            params: params.to_vec(),
            outputs: outputs.to_vec(),
            eval: Box::new(eval),
        }
    }
}

pub fn all() -> Vec<Experiment> {
    vec![
        qubit::mixed_bell(),
        qubit::mixed_ghz(),
        qubit::mixed_w(),
        qudit::seesaw(),
        qudit::versus_qubit(),
        tables::bipartite(),
        tables::two_party(),
        qubit::haar_comparison(),
        optical::squeezed_equiv(),
        optical::squeezed_cat(),
        optical::ecs_general(),
        optical::ecvs_vs_ecsplus(),
        optical::ecs_qudit(),
        optical::tmsv(),
    ]
}

pub fn find(id: &str) -> Option<Experiment> {
    all().into_iter().find(|e| e.id == id)
}

pub(crate) fn test_with<'a>(
    a: impl Into<Input<'a, f64>>,
    b: impl Into<Input<'a, f64>>,
    spec: &SwapGroupSpec,
) -> Result<Dist> {
    Ok(run(Engine::Expectation, a.into(), b.into(), spec)?)
}

pub(crate) fn per_site<'a>(a: impl Into<Input<'a, f64>>, b: impl Into<Input<'a, f64>>) -> Result<Dist> {
    let (a, b) = (a.into(), b.into());
    test_with(a, b, &SwapGroupSpec::per_site(a.layout().clone()))
}

/// Two-outcome distribution for an equivalence test reported as `P(1)`.
pub(crate) fn single_control(p1: f64) -> Result<Dist> {
    Ok(ControlDistribution::from_probs(1, vec![1.0 - p1, p1])?)
}
