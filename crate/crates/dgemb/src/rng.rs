//! Deterministic seeded randomness.
//!
//! Everything random in this crate flows through [`Rng`] (a SplitMix64
//! stream) or the stateless counter mix [`gaussian_at`], so identical seeds
//! give identical results on every run and platform.

/// SplitMix64 state advance + output mix.
#[inline]
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Mix two words into one; used for splitting seeds and counter access.
#[inline]
pub fn mix(seed: u64, stream: u64) -> u64 {
    let mut s = seed ^ stream.wrapping_mul(0xa24b_aed4_963e_e407);
    splitmix64(&mut s)
}

/// Small sequential PRNG.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    /// Derive an independent child generator; `stream` tags the purpose
    /// (restart index, retry attempt, ...).
    pub fn split(&self, stream: u64) -> Rng {
        Rng {
            state: mix(self.state, stream),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        splitmix64(&mut self.state)
    }

    /// Uniform in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [lo, hi).
    pub fn range_f64(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    /// Uniform integer in [0, n).
    pub fn below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        // Rejection-free multiply-shift; bias is negligible for our n.
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }

    pub fn next_bool(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Standard normal via Marsaglia polar (no trig, stable across libm).
    pub fn next_gaussian(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * s.ln() / s).sqrt();
            }
        }
    }

    /// Uniform point in the unit ball of dimension `dim`.
    pub fn in_unit_ball(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let p: Vec<f64> = (0..dim).map(|_| self.range_f64(-1.0, 1.0)).collect();
            if p.iter().map(|x| x * x).sum::<f64>() <= 1.0 {
                return p;
            }
        }
    }

    /// Uniform direction on the unit sphere of dimension `dim`.
    pub fn unit_vector(&mut self, dim: usize) -> Vec<f64> {
        loop {
            let v: Vec<f64> = (0..dim).map(|_| self.next_gaussian()).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                return v.into_iter().map(|x| x / n).collect();
            }
        }
    }
}

/// Counter-based standard normal: a pure function of (seed, index).
///
/// Used for projection matrices so entry (i, j) can be regenerated
/// independently of evaluation order.
pub fn gaussian_at(seed: u64, index: u64) -> f64 {
    // Two independent uniforms from the counter, Box-Muller would need trig;
    // instead draw a fresh polar pair per index (sub-counter rejection).
    let mut sub = 0u64;
    loop {
        let a = mix(
            seed,
            index.wrapping_mul(2).wrapping_add(sub.wrapping_mul(0x1000)),
        );
        let b = mix(
            seed,
            index
                .wrapping_mul(2)
                .wrapping_add(1)
                .wrapping_add(sub.wrapping_mul(0x1000)),
        );
        let u = 2.0 * ((a >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) - 1.0;
        let v = 2.0 * ((b >> 11) as f64 * (1.0 / (1u64 << 53) as f64)) - 1.0;
        let s = u * u + v * v;
        if s > 0.0 && s < 1.0 {
            return u * (-2.0 * s.ln() / s).sqrt();
        }
        sub += 1;
    }
}
