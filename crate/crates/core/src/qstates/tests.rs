use super::*;
use crate::hilbert::concurrence_2q;

fn close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
}

#[test]
fn bell_family() {
    let pp = bell::<f64>(BellKind::PhiPlus);
    let pm = bell::<f64>(BellKind::PhiMinus);
    close(pp.inner(&pm).unwrap().norm(), 0.0, 1e-15);
    let sm = bell::<f64>(BellKind::PsiMinus);
    close(sm.amp(1).re, std::f64::consts::FRAC_1_SQRT_2, 1e-15);
    close(sm.amp(2).re, -std::f64::consts::FRAC_1_SQRT_2, 1e-15);
    assert_eq!(ghz::<f64>(2).unwrap(), pp);
    close(w::<f64>(2).unwrap().fidelity(&bell(BellKind::PsiPlus)).unwrap(), 1.0, 1e-15);
    assert!(ghz::<f64>(1).is_err());
}

#[test]
fn w3_marginal_purity() {
    let s = w::<f64>(3).unwrap();
    close(s.marginal(&[1]).unwrap().purity(), 5.0 / 9.0, 1e-14);
}

#[test]
fn mixed_bell_purity_law() {
    for &theta in &[0.0, 0.3, std::f64::consts::FRAC_PI_4] {
        for &delta in &[0.0, 0.2, 0.7, std::f64::consts::FRAC_PI_4] {
            let s = mixed_bell_purified::<f64>(theta, delta);
            let c2 = (2.0 * theta).sin().abs();
            let g = s.marginal(&[1, 2]).unwrap().purity();
            close(g, 1.0 - 0.5 * c2 * c2 * (2.0 * delta).sin().powi(2), 1e-12);
        }
    }
    let sys = mixed_bell_purified::<f64>(0.4, 0.0).marginal(&[1, 2]).unwrap();
    close(sys.purity(), 1.0, 1e-12);
}

#[test]
fn mixed_ghz_purity_and_fidelity() {
    for n in 2..6 {
        for &d in &[0.0, 0.1, 0.5, std::f64::consts::FRAC_PI_4] {
            let a = mixed_ghz_purified::<f64>(n, d, 0.0).unwrap();
            let sys: Vec<usize> = (1..=n).collect();
            let g = a.marginal(&sys).unwrap().purity();
            close(g, 1.0 - 0.5 * (2.0 * d).sin().powi(2), 1e-10);
            let b = mixed_ghz_purified::<f64>(n, d, 0.1).unwrap();
            close(a.fidelity(&b).unwrap(), 0.1f64.cos().powi(2), 1e-12);
        }
    }
    let a = mixed_ghz_purified::<f64>(3, 0.0, 0.0).unwrap().marginal(&[1, 2, 3]).unwrap();
    close(a.overlap(&ghz::<f64>(3).unwrap().density()).unwrap(), 1.0, 1e-14);
}

#[test]
fn mixed_w_variants() {
    for n in 3..6 {
        let sys: Vec<usize> = (1..=n).collect();
        for variant in [WVariant::Literal, WVariant::Symmetrized, WVariant::CoherenceDamped] {
            let a = mixed_w_purified::<f64>(n, 0.0, 0.0, variant).unwrap();
            let m = a.marginal(&sys).unwrap();
            let target = w::<f64>(n).unwrap().density();
            let expect = if variant == WVariant::Symmetrized { None } else { Some(1.0) };
            if let Some(v) = expect {
                close(m.purity(), v, 1e-10);
                close(m.overlap(&target).unwrap(), 1.0, 1e-10);
            }
        }
        for &d in &[0.0, 0.2, 0.6] {
            for &e in &[0.1, 0.4] {
                for variant in [WVariant::Literal, WVariant::CoherenceDamped] {
                    let a = mixed_w_purified::<f64>(n, d, 0.0, variant).unwrap();
                    let b = mixed_w_purified::<f64>(n, d, e, variant).unwrap();
                    close(a.fidelity(&b).unwrap(), e.cos().powi(2), 1e-9);
                }
            }
        }
    }
}

#[test]
fn damped_w_marginal_shape() {
    let (n, d, e) = (4usize, 0.3f64, 0.2f64);
    let s = mixed_w_purified::<f64>(n, d, e, WVariant::CoherenceDamped).unwrap();
    let m = s.marginal(&[1, 2, 3, 4]).unwrap();
    let cb = d.cos() * e.cos();
    for i in 0..n {
        for j in 0..n {
            let v = m.matrix()[(1 << i, 1 << j)].re;
            close(v, if i == j { 0.25 } else { cb / 4.0 }, 1e-12);
        }
    }
    let g = mixed_w_purified::<f64>(3, 0.2, 0.0, WVariant::CoherenceDamped).unwrap();
    let p = g.marginal(&[1, 2, 3]).unwrap().purity();
    close(p, (1.0 + 2.0 * 0.2f64.cos().powi(2)) / 3.0, 1e-12);
    assert!((p - (3.0 * 0.2 / 5.0f64).cos().powi(2)).abs() < 0.02);
}

#[test]
fn seesaw_cases() {
    close(seesaw_qudit::<f64>(2, 2, 0.0).unwrap().fidelity(&bell(BellKind::PhiPlus)).unwrap(), 1.0, 1e-14);
    let q = seesaw_qudit::<f64>(3, 2, 0.0).unwrap();
    let t = 1.0 / 3f64.sqrt();
    for (i, z) in q.amplitudes().iter().enumerate() {
        close(z.re, if [0, 4, 8].contains(&i) { t } else { 0.0 }, 1e-15);
    }
    for n in 2..5 {
        close(seesaw_qudit::<f64>(2, n, 0.0).unwrap().fidelity(&ghz(n).unwrap()).unwrap(), 1.0, 1e-12);
    }
    for d in [2usize, 4, 6] {
        let a = seesaw_qudit::<f64>(d, 2, 0.0).unwrap();
        let b = seesaw_qudit::<f64>(d, 2, 0.3).unwrap();
        close(a.fidelity(&b).unwrap(), 0.3f64.cos().powi(2), 1e-14);
    }
    // odd D keeps the middle level fixed, so the overlap is ((D-1) cos d + 1)/D
    let a = seesaw_qudit::<f64>(5, 2, 0.0).unwrap();
    let b = seesaw_qudit::<f64>(5, 2, 0.3).unwrap();
    close(a.fidelity(&b).unwrap(), ((4.0 * 0.3f64.cos() + 1.0) / 5.0).powi(2), 1e-14);
}

#[test]
fn four_qubit_states() {
    let p = phi_plus_plus_4::<f64>(0.0);
    let bb = bell::<f64>(BellKind::PhiPlus).tensor(&bell(BellKind::PhiPlus)).unwrap();
    close(p.fidelity(&bb).unwrap(), 1.0, 1e-14);
    for &d in &[0.1, 0.5] {
        close(concurrence_2q(&tilted_pair::<f64>(d)).unwrap(), (2.0 * d).cos().abs(), 1e-14);
    }
    let k = PureState::<f64>::qubit_ket("00").unwrap();
    let x = chi_4(&k).unwrap();
    close(x.fidelity(&k.tensor(&bell(BellKind::PhiPlus)).unwrap()).unwrap(), 1.0, 1e-15);
    assert!(chi_4(&bell::<f64>(BellKind::PhiPlus)).is_err());
}

#[test]
fn ghz_w_mixture_ends() {
    close(ghz_w_mixture::<f64>(4, 0.0).unwrap().fidelity(&ghz(4).unwrap()).unwrap(), 1.0, 1e-15);
    close(
        ghz_w_mixture::<f64>(4, std::f64::consts::FRAC_PI_2).unwrap().fidelity(&w(4).unwrap()).unwrap(),
        1.0,
        1e-15,
    );
    assert!(ghz_w_mixture::<f64>(2, 0.1).is_err());
}

#[test]
fn haar_is_reproducible_and_normalized() {
    let mut a = HaarSampler::new(3, 7).unwrap();
    let mut b = HaarSampler::new(3, 7).unwrap();
    let mut c = HaarSampler::new(3, 8).unwrap();
    for _ in 0..50 {
        let x: PureState<f64> = a.sample();
        assert_eq!(x, b.sample());
        close(x.norm(), 1.0, 1e-12);
        assert!(x.fidelity(&c.sample()).unwrap() < 1.0);
    }
    let mut w0 = HaarSampler::for_worker(2, 7, 0).unwrap();
    let mut w1 = HaarSampler::for_worker(2, 7, 1).unwrap();
    assert_ne!(w0.sample::<f64>(), w1.sample::<f64>());
}

#[test]
fn haar_mean_marginal_purity() {
    // (dA + dB) / (dA dB + 1) for dA = dB = 2
    let mut s = HaarSampler::new(2, 202406).unwrap();
    let xs: Vec<f64> = (0..2000).map(|_| s.sample::<f64>().marginal_purity(&[0]).unwrap()).collect();
    let (mean, se) = mean_se(&xs);
    assert!((mean - 0.8).abs() < 3.0 * se, "{mean} +- {se}");
}

#[test]
fn haar_overlap_with_fixed_state() {
    let phi = PureState::<f64>::qubit_ket("010").unwrap();
    let mut s = HaarSampler::new(3, 11).unwrap();
    let xs: Vec<f64> = (0..4000).map(|_| s.sample::<f64>().fidelity(&phi).unwrap()).collect();
    let (mean, se) = mean_se(&xs);
    assert!((mean - 0.125).abs() < 3.0 * se, "{mean} +- {se}");
}

#[test]
fn nested_angles_are_normalized() {
    let mut s = HaarSampler::new(2, 3).unwrap();
    for _ in 0..20 {
        close(s.sample_uniform_angles::<f64>().norm(), 1.0, 1e-12);
    }
    let xi = [0.0; 4];
    let th = [0.0, 0.0, 0.0];
    let st = nested_angle_state::<f64>(2, &xi, &th).unwrap();
    close(st.amp(0).re, 1.0, 0.0);
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}
