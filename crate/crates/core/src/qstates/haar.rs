use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::hilbert::{CVector, PureState, SiteLayout};
use crate::num::{cplx, Real};

/// Haar-random `n`-qubit pure states from normalized complex Gaussians.
///
/// The generator is ChaCha20 keyed by `seed`; `worker` selects an
/// independent stream, so per-worker samplers never overlap.
#[derive(Debug, Clone)]
pub struct HaarSampler {
    n: usize,
    seed: u64,
    rng: ChaCha20Rng,
}

impl HaarSampler {
    pub fn new(n: usize, seed: u64) -> Result<Self> {
        Self::for_worker(n, seed, 0)
    }

    pub fn for_worker(n: usize, seed: u64, worker: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("need at least one qubit".into()));
        }
        SiteLayout::qubits(n)?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(worker);
        Ok(Self { n, seed, rng })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample<T: Real>(&mut self) -> PureState<T> {
        let layout = SiteLayout::qubits(self.n).unwrap();
        loop {
            let v = CVector::from_fn(layout.total_dim(), |_, _| {
                let re: f64 = self.rng.sample(StandardNormal);
                let im: f64 = self.rng.sample(StandardNormal);
                cplx(T::lit(re), T::lit(im))
            });
            if let Ok((s, _)) = PureState::renormalized(layout.clone(), v) {
                return s;
            }
        }
    }

    /// Uniformly drawn angles fed to [`nested_angle_state`]. Not Haar distributed.
    pub fn sample_uniform_angles<T: Real>(&mut self) -> PureState<T> {
        let d = 1usize << self.n;
        let xi: Vec<T> = (0..d).map(|_| T::lit(self.rng.random_range(0.0..std::f64::consts::TAU))).collect();
        let th: Vec<T> = (0..d - 1)
            .map(|_| T::lit(self.rng.random_range(0.0..std::f64::consts::FRAC_PI_2)))
            .collect();
        nested_angle_state(self.n, &xi, &th).unwrap()
    }
}

/// Hyperspherical parametrization: amplitude `k` is
/// `e^{i xi_k} sin(theta_0)...sin(theta_{k-1}) cos(theta_k)`, the last one
/// taking the full product of sines.
pub fn nested_angle_state<T: Real>(n: usize, xi: &[T], theta: &[T]) -> Result<PureState<T>> {
    let layout = SiteLayout::qubits(n)?;
    let d = layout.total_dim();
    if xi.len() != d || theta.len() != d - 1 {
        return Err(Error::DimensionMismatch { expected: d, found: xi.len() });
    }
    let mut tail = T::one();
    let v = CVector::from_fn(d, |k, _| {
        let r = if k + 1 < d { tail * theta[k].cos() } else { tail };
        if k + 1 < d {
            tail *= theta[k].sin();
        }
        cplx(r * xi[k].cos(), r * xi[k].sin())
    });
    PureState::new(layout, v)
}
