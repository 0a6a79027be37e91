use super::*;
use crate::measures::{concentratable_from_distribution, ClassLabel};
use crate::qstates::{self, BellKind, MixedFamilyParams};
use crate::swaptest::full_entanglement_test;

fn point(m: usize, mask: usize) -> ControlDistribution<f64> {
    let mut p = vec![0.0; 1 << m];
    p[mask] = 1.0;
    ControlDistribution::from_probs(m, p).unwrap()
}

fn bell_dist() -> ControlDistribution<f64> {
    let b = qstates::bell::<f64>(BellKind::PhiPlus);
    full_entanglement_test(&b, &b).unwrap()
}

#[test]
fn degenerate_distribution() {
    let r = sample(&point(2, 0), 1000, 1).unwrap();
    assert_eq!(r.counts(), &[1000, 0, 0, 0]);
    assert!(sample(&point(2, 0), 0, 1).is_err());
    let r = sample(&point(2, 3), 17, 1).unwrap();
    assert_eq!(r.count(3), 17);
}

#[test]
fn bell_frequency_and_determinism() {
    let d = bell_dist();
    let r = sample(&d, 100_000, 7).unwrap();
    assert_eq!(r.counts().iter().sum::<u64>(), 100_000);
    let se = (0.25f64 * 0.75 / 1e5).sqrt();
    assert!((r.frequency(3) - 0.25).abs() < 3.0 * se);
    assert_eq!(r, sample(&d, 100_000, 7).unwrap());
    assert_ne!(r, sample(&d, 100_000, 8).unwrap());
}

#[test]
fn wilson_edges() {
    let (lo, hi) = wilson(0, 100, Z_95);
    assert_eq!(lo, 0.0);
    assert!(hi > 0.0 && hi < 0.05);
    let (lo, hi) = wilson(25, 100, Z_95);
    assert!(lo < 0.25 && 0.25 < hi);
    // roots of (1 + z^2/n) p^2 - (2 ph + z^2/n) p + ph^2 = 0
    let (ph, n, z2) = (0.25, 100.0, Z_95 * Z_95);
    let (a, b, c) = (1.0 + z2 / n, -(2.0 * ph + z2 / n), ph * ph);
    let disc = (b * b - 4.0 * a * c).sqrt();
    assert!((lo - (-b - disc) / (2.0 * a)).abs() < 1e-12);
    assert!((hi - (-b + disc) / (2.0 * a)).abs() < 1e-12);
}

#[test]
fn wilson_coverage() {
    let d = bell_dist();
    let mut hits = 0;
    for seed in 0..1000 {
        let r = sample(&d, 200, seed).unwrap();
        let e = estimate(&r);
        if e[3].lower <= 0.25 && 0.25 <= e[3].upper {
            hits += 1;
        }
    }
    assert!((930..=970).contains(&hits), "coverage {hits}");
}

#[test]
fn million_shots_converge() {
    let g = qstates::ghz::<f64>(3).unwrap();
    let d = full_entanglement_test(&g, &g).unwrap();
    let r = sample(&d, 1_000_000, 3).unwrap();
    for (mask, p) in d.probs().iter().enumerate() {
        assert!((r.frequency(mask) - p).abs() < 5e-3);
    }
}

fn ghz3_config(t: f64) -> ToleranceConfig<f64> {
    ToleranceConfig::for_class(t, ClassLabel::Ghz, 3).unwrap()
}

#[test]
fn monitor_never_fires_on_zero_stream() {
    let mut m = SequentialMonitor::new(ghz3_config(0.01), 3).unwrap();
    for _ in 0..500 {
        assert_eq!(m.step(0).unwrap(), MonitorState::Accepting);
    }
    assert_eq!(m.ce_estimate(), 0.0);
    assert_eq!((m.copies_used(), m.ancillas_used()), (1000, 1500));
}

#[test]
fn monitor_is_monotone() {
    let mut m = SequentialMonitor::new(ghz3_config(0.01), 3).unwrap().with_min_steps(1);
    assert_eq!(m.step(1).unwrap(), MonitorState::Violated);
    assert_eq!(m.step(0), Err(Error::MonitorViolated));
    assert_eq!(m.state(), MonitorState::Violated);
    let mut m = SequentialMonitor::new(ghz3_config(0.01), 2).unwrap();
    assert!(m.step(4).is_err());
}

#[test]
fn mixed_ghz_stream_is_discarded() {
    let p = MixedFamilyParams::new(3, 0.3, 0.0).unwrap();
    let (a, b) = p.ghz_pair().unwrap();
    let sys = p.system_sites();
    let d = full_entanglement_test(&a.marginal(&sys).unwrap(), &b.marginal(&sys).unwrap()).unwrap();
    let mut steps: Vec<u64> = (0..101)
        .map(|seed| {
            let m = monitor_stream(&d, ghz3_config(0.01), 100_000, seed).unwrap();
            assert_eq!(m.state(), MonitorState::Violated);
            m.steps()
        })
        .collect();
    steps.sort_unstable();
    // the mean count of the exact rule sets the scale
    let exact = 1.0 / ghz3_config(0.01).bound(concentratable_from_distribution(&d));
    assert!((steps[50] as f64) < 20.0 * exact);
}

#[test]
fn pure_ghz_streams_never_violate() {
    let g = qstates::ghz::<f64>(3).unwrap();
    let d = full_entanglement_test(&g, &g).unwrap();
    let fired = (0..1000)
        .filter(|&seed| monitor_stream(&d, ghz3_config(0.01), 10_000, seed).unwrap().state() == MonitorState::Violated)
        .count();
    assert!(fired as f64 <= 0.06 * 1000.0);
    assert_eq!(fired, 0);
}
