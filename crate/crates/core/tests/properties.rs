use std::f64::consts::FRAC_PI_4;

use cswap_core::hilbert::{DensityMatrix, PureState};
use cswap_core::qstates;
use cswap_core::swaptest::{bipartitions, run, Engine, Input, SwapGroupSpec};
use cswap_core::{Complex, SiteLayout};
use proptest::prelude::*;

fn layout_strategy() -> impl Strategy<Value = SiteLayout> {
    prop::collection::vec(2usize..=3, 1..=3).prop_map(|dims| SiteLayout::new(dims).unwrap())
}

fn state_on(layout: SiteLayout) -> impl Strategy<Value = PureState<f64>> {
    let n = layout.total_dim();
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n)
        .prop_filter("nonzero", |v| v.iter().map(|(a, b)| a * a + b * b).sum::<f64>() > 1e-3)
        .prop_map(move |v| {
            let amps = v.into_iter().map(|(re, im)| Complex::new(re, im)).collect::<Vec<_>>();
            PureState::renormalized(layout.clone(), amps.into()).unwrap().0
        })
}

fn pair() -> impl Strategy<Value = (PureState<f64>, PureState<f64>)> {
    layout_strategy().prop_flat_map(|l| (state_on(l.clone()), state_on(l)))
}

fn mixed_pair() -> impl Strategy<Value = (DensityMatrix<f64>, DensityMatrix<f64>)> {
    layout_strategy().prop_flat_map(|l| {
        (state_on(l.clone()), state_on(l.clone()), state_on(l.clone()), state_on(l), 0.0f64..1.0, 0.0f64..1.0)
            .prop_map(|(a, b, c, d, p, q)| {
                (
                    DensityMatrix::mixture(&[(p, &a), (1.0 - p, &b)]).unwrap(),
                    DensityMatrix::mixture(&[(q, &c), (1.0 - q, &d)]).unwrap(),
                )
            })
    })
}

fn specs(l: &SiteLayout) -> Vec<SwapGroupSpec> {
    let mut out = vec![SwapGroupSpec::single(l.clone()), SwapGroupSpec::per_site(l.clone())];
    if l.n_sites() >= 2 {
        out.extend(bipartitions(l.n_sites()).iter().map(|c| SwapGroupSpec::bipartite(l.clone(), c).unwrap()));
        out.push(SwapGroupSpec::pair(l.clone(), l.n_sites() - 1, 0).unwrap());
    }
    out
}

fn probs<'a>(a: impl Into<Input<'a, f64>>, b: impl Into<Input<'a, f64>>, s: &SwapGroupSpec) -> Vec<f64> {
    run(Engine::Expectation, a.into(), b.into(), s).unwrap().probs().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributions_are_normalized((a, b) in mixed_pair()) {
        for s in specs(a.layout()) {
            let p = probs(&a, &b, &s);
            prop_assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            prop_assert!(p.iter().all(|&x| x >= -1e-12 && x <= 1.0 + 1e-12));
        }
    }

    #[test]
    fn swapping_inputs_changes_nothing((a, b) in mixed_pair()) {
        for s in specs(a.layout()) {
            let (p, q) = (probs(&a, &b, &s), probs(&b, &a, &s));
            prop_assert!(p.iter().zip(&q).all(|(x, y)| (x - y).abs() < 1e-12));
        }
    }

    #[test]
    fn identical_pure_twins_never_fire_odd((a, _) in pair()) {
        // only specs covering every site; a partial swap sees a mixed marginal
        for s in specs(a.layout()).into_iter().filter(SwapGroupSpec::covers_all) {
            let d = run(Engine::Expectation, &a, &a, &s).unwrap();
            prop_assert!(d.odd() <= 1e-12);
        }
    }

    #[test]
    fn equivalence_law_holds((a, b) in pair()) {
        let p = probs(&a, &b, &SwapGroupSpec::single(a.layout().clone()));
        let ov = a.inner(&b).unwrap().norm_sqr();
        prop_assert!((p[1] - 0.5 * (1.0 - ov)).abs() < 1e-12);
    }

    #[test]
    fn product_states_show_no_entanglement(
        (x, y) in layout_strategy().prop_flat_map(|l| {
            let l2 = SiteLayout::new(vec![l.dims()[0]]).unwrap();
            (state_on(l2), state_on(l))
        })
    ) {
        let s = x.tensor(&y).unwrap();
        let d = run(Engine::Expectation, &s, &s, &SwapGroupSpec::bipartite(s.layout().clone(), &[0]).unwrap()).unwrap();
        prop_assert!(d.prob(0b11) < 1e-12);
        prop_assert!(d.odd() < 1e-12);
    }

    #[test]
    fn engines_agree((a, b) in mixed_pair()) {
        for s in specs(a.layout()) {
            let e = run(Engine::Expectation, &a, &b, &s).unwrap();
            let c = run(Engine::Circuit, &a, &b, &s).unwrap();
            prop_assert!(e.max_abs_diff(&c) < 1e-12);
        }
    }

    #[test]
    fn mixed_bell_odd_weight_tracks_purity(theta in 0.0..FRAC_PI_4, delta in 0.0..FRAC_PI_4) {
        let rho = qstates::mixed_bell_purified::<f64>(theta, delta).marginal(&[1, 2]).unwrap();
        let d = run(Engine::Expectation, &rho, &rho, &SwapGroupSpec::per_site(rho.layout().clone())).unwrap();
        let c = (2.0 * theta).sin();
        let gamma = 1.0 - 0.5 * c * c * (2.0 * delta).sin().powi(2);
        prop_assert!((d.prob(1) + d.prob(2) - 0.5 * (1.0 - gamma)).abs() < 1e-12);
    }

    #[test]
    fn marginals_are_states((a, _) in pair(), pick in any::<u8>()) {
        let n = a.layout().n_sites();
        let keep: Vec<usize> = (0..n).filter(|s| pick >> s & 1 == 1).collect();
        prop_assume!(!keep.is_empty());
        let rho = a.marginal(&keep).unwrap();
        let m = rho.matrix();
        let tr: Complex = m.trace();
        prop_assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
        prop_assert!((m - m.adjoint()).iter().all(|z| z.norm() < 1e-12));
        prop_assert!(rho.eigenvalues().iter().all(|&v| v > -1e-12));
        let d = rho.layout().total_dim() as f64;
        let pur = rho.purity();
        prop_assert!(pur >= 1.0 / d - 1e-12 && pur <= 1.0 + 1e-12);
        // pure global state: complementary marginals share their purity
        let rest = a.layout().complement(&keep);
        if !rest.is_empty() {
            prop_assert!((a.marginal(&rest).unwrap().purity() - pur).abs() < 1e-12);
        }
    }
}

#[test]
fn single_precision_smoke() {
    let g = qstates::ghz::<f32>(3).unwrap();
    let d = run(Engine::Expectation, &g, &g, &SwapGroupSpec::per_site(g.layout().clone())).unwrap();
    assert!((d.all_zero() - 0.625).abs() < 1e-5);
    assert!(d.odd() < 1e-5);
    let c = run(Engine::Circuit, &g, &g, &SwapGroupSpec::per_site(g.layout().clone())).unwrap();
    assert!(d.max_abs_diff(&c) < 1e-5);
}
