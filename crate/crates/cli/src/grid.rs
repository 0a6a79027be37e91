use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use anyhow::{bail, Context, Result};

use crate::UsageError;

/// One named parameter axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub key: String,
    pub values: Vec<f64>,
    pub integer: bool,
}

impl Axis {
    /// `steps` evenly spaced values; the last one is `stop` exactly.
    pub fn linspace(key: &str, start: f64, stop: f64, steps: usize) -> Self {
        let values = (0..steps)
            .map(|i| match i {
                0 => start,
                _ if i + 1 == steps => stop,
                _ => start + (stop - start) * i as f64 / (steps - 1) as f64,
            })
            .collect();
        Self { key: key.into(), values, integer: false }
    }

    pub fn ints(key: &str, values: impl IntoIterator<Item = usize>) -> Self {
        Self { key: key.into(), values: values.into_iter().map(|v| v as f64).collect(), integer: true }
    }

    pub fn fixed(key: &str, value: f64) -> Self {
        Self::linspace(key, value, value, 1)
    }
}

/// Accepts plain numbers and multiples of pi: `pi`, `pi/4`, `2pi`, `3*pi/8`.
fn number(s: &str) -> Result<f64> {
    let s = s.trim();
    let v = match s.find("pi") {
        Some(i) => {
            let head = s[..i].trim_end_matches('*');
            let k: f64 = if head.is_empty() { 1.0 } else { head.parse().with_context(|| format!("bad number {s:?}"))? };
            let div: f64 = match &s[i + 2..] {
                "" => 1.0,
                tail => tail
                    .strip_prefix('/')
                    .and_then(|d| d.parse().ok())
                    .with_context(|| format!("bad number {s:?}"))?,
            };
            k * PI / div
        }
        None => s.parse().with_context(|| format!("bad number {s:?}"))?,
    };
    if !v.is_finite() {
        bail!("non-finite value {s:?}");
    }
    Ok(v)
}

impl FromStr for Axis {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (key, range) = s.split_once('=').context("expected KEY=START:STOP:STEPS")?;
        let parts: Vec<&str> = range.split(':').collect();
        let [start, stop, steps] = parts[..] else { bail!("expected KEY=START:STOP:STEPS, got {s:?}") };
        let steps: usize = steps.trim().parse().with_context(|| format!("bad step count in {s:?}"))?;
        if steps == 0 {
            bail!("step count must be at least 1");
        }
        let key = key.trim();
        if key.is_empty() {
            bail!("empty grid key");
        }
        Ok(Axis::linspace(key, number(start)?, number(stop)?, steps))
    }
}

/// A cross product of axes; the last axis varies fastest.
#[derive(Debug, Clone, Default)]
pub struct Grid {
    axes: Vec<Axis>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self { axes }
    }

    pub fn keys(&self) -> Vec<&str> {
        self.axes.iter().map(|a| a.key.as_str()).collect()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn apply(&mut self, overrides: &[Axis]) -> Result<()> {
        for o in overrides {
            let known = self.keys().join(", ");
            let Some(slot) = self.axes.iter_mut().find(|a| a.key == o.key) else {
                return Err(UsageError(format!("unknown grid key {:?} (known: {known})", o.key)).into());
            };
            if slot.integer && o.values.iter().any(|v| v.fract() != 0.0 || *v < 0.0) {
                return Err(UsageError(format!("grid key {:?} takes non-negative integers", o.key)).into());
            }
            *slot = Axis { integer: slot.integer, ..o.clone() };
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<Point> {
        let mut out = vec![Point::default()];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.values.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.pairs.push((axis.key.clone(), v));
                        q
                    })
                })
                .collect();
        }
        out
    }
}

/// Values of every grid axis at one evaluation.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Point {
    pairs: Vec<(String, f64)>,
}

impl Point {
    pub fn get(&self, key: &str) -> f64 {
        self.pairs.iter().find(|p| p.0 == key).map(|p| p.1).unwrap_or_else(|| panic!("grid has no key {key:?}"))
    }

    pub fn count(&self, key: &str) -> usize {
        self.get(key) as usize
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.pairs.iter().map(|p| p.1)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&parts.join(", "))
    }
}
