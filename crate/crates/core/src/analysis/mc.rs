use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cyclic::CyclicSet;
use crate::error::{Error, Result};
use crate::spectrum::SpectrumContext;

pub const GENERATOR_NAME: &str = "ChaCha20";

/// Samples per independent stream; stream `i` covers samples
/// `i * CHUNK .. (i + 1) * CHUNK`, so results do not depend on thread count.
const CHUNK: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub rate: f64,
    pub std_error: f64,
}

impl Estimate {
    fn new(count: u64, samples: u64) -> Self {
        let p = count as f64 / samples as f64;
        Estimate { rate: p, std_error: (p * (1.0 - p) / samples as f64).sqrt() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub n: usize,
    pub samples: u64,
    pub seed: u64,
    pub generator: &'static str,
    /// Index `s` counts the samples whose transform vanishes at `s`.
    pub zero_counts: Vec<u64>,
    pub any_zero_count: u64,
    /// Samples equal to the empty set or all of Z_n; both vanish somewhere
    /// for every `n > 1`.
    pub trivial_count: u64,
    /// Samples other than those trivial ones whose transform vanishes somewhere.
    pub nontrivial_any_zero_count: u64,
    /// `C(n, n/2) / 2^n` for even `n`.
    pub exact_half_probability: Option<BigRational>,
    pub estimates: Vec<Estimate>,
    pub any_zero_estimate: Estimate,
}

fn random_set(rng: &mut ChaCha20Rng, n: usize) -> CyclicSet {
    let mut set = CyclicSet::empty(n);
    let mut word = 0u64;
    for j in 0..n {
        if j % 64 == 0 {
            word = rng.next_u64();
        }
        if word >> (j % 64) & 1 == 1 {
            set.insert(j);
        }
    }
    set
}

/// Draws `samples` uniform subsets of Z_n and counts exact transform zeros.
pub fn zero_probability_mc(n: usize, samples: u64, seed: u64) -> Result<McReport> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let streams = samples.div_ceil(CHUNK);
    let (zero_counts, [any_zero_count, trivial_count, nontrivial_any_zero_count]) = (0..streams)
        .into_par_iter()
        .map(|stream| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            rng.set_stream(stream);
            let mut ctx = SpectrumContext::new(n);
            let mut counts = vec![0u64; n];
            // any zero, trivial, nontrivial with a zero
            let mut tally = [0u64; 3];
            let todo = CHUNK.min(samples - stream * CHUNK);
            for _ in 0..todo {
                let set = random_set(&mut rng, n);
                let report = ctx.zero_set_set(&set);
                for s in report.zero_mask.iter() {
                    counts[s] += 1;
                }
                let trivial = set.is_empty() || set.len() == n;
                tally[0] += u64::from(report.has_zeros());
                tally[1] += u64::from(trivial);
                tally[2] += u64::from(!trivial && report.has_zeros());
            }
            (counts, tally)
        })
        .reduce(
            || (vec![0u64; n], [0; 3]),
            |(mut a, mut x), (b, y)| {
                a.iter_mut().zip(&b).for_each(|(p, q)| *p += q);
                x.iter_mut().zip(&y).for_each(|(p, q)| *p += q);
                (a, x)
            },
        );
    let exact_half_probability = n.is_multiple_of(2).then(|| {
        BigRational::new(binomial(BigInt::from(n), BigInt::from(n / 2)), BigInt::from(1) << n)
    });
    Ok(McReport {
        n,
        samples,
        seed,
        generator: GENERATOR_NAME,
        estimates: zero_counts.iter().map(|&c| Estimate::new(c, samples)).collect(),
        any_zero_estimate: Estimate::new(any_zero_count, samples),
        zero_counts,
        any_zero_count,
        trivial_count,
        nontrivial_any_zero_count,
        exact_half_probability,
    })
}
