//! Seeded randomness with reproducible substreams.
//!
//! Every stochastic operation in this crate draws from a [`RandomSource`],
//! which provides uniform `[0, 1)` and standard-normal reals. The concrete
//! [`SeededRng`] is a ChaCha8 generator: the same seed always yields the same
//! draw sequence, on every platform.
//!
//! Engines never share one generator across points. They derive one substream
//! per (phase, generation, point index) from a [`StreamFamily`], so the draw
//! sequence seen by each point is independent of evaluation order. This is
//! what makes parallel and sequential execution produce identical results.

use std::collections::VecDeque;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// Source of the two primitive draws used by the search operators.
///
/// Implementations must be deterministic: identical state and identical call
/// sequence must yield identical outputs.
pub trait RandomSource {
    /// Uniform real in `[0, 1)`.
    fn uniform(&mut self) -> f64;

    /// Standard normal real (mean 0, standard deviation 1).
    fn normal(&mut self) -> f64;

    /// Uniform index in `[0, n)`, consuming exactly one uniform draw.
    fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.uniform() * n as f64) as usize).min(n - 1)
    }

    /// Uniform index in `[0, n)` not contained in `excluded`, drawn by
    /// rejection. Consumes one uniform per attempt. The caller must leave at
    /// least one admissible index.
    fn index_excluding(&mut self, n: usize, excluded: &[usize]) -> usize {
        debug_assert!(excluded.len() < n);
        loop {
            let candidate = self.index(n);
            if !excluded.contains(&candidate) {
                return candidate;
            }
        }
    }
}

/// ChaCha8-backed source seeded from a 64-bit integer.
#[derive(Debug, Clone)]
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }
}

impl RandomSource for SeededRng {
    fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    fn normal(&mut self) -> f64 {
        self.inner.sample(StandardNormal)
    }
}

/// Phases that draw randomness; part of the substream derivation key.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Phase {
    Init,
    Diffusion,
    FirstUpdate,
    SecondUpdate,
    FractalInit,
    FractalDiffusion,
}

impl Phase {
    fn tag(self) -> u64 {
        match self {
            Phase::Init => 1,
            Phase::Diffusion => 2,
            Phase::FirstUpdate => 3,
            Phase::SecondUpdate => 4,
            Phase::FractalInit => 5,
            Phase::FractalDiffusion => 6,
        }
    }
}

/// Derives independent, reproducible substreams from one master seed.
///
/// `stream(phase, generation, index)` is a pure function of its arguments and
/// the master seed, so any point's stream can be reconstructed in isolation.
#[derive(Debug, Clone, Copy)]
pub struct StreamFamily {
    master_seed: u64,
}

impl StreamFamily {
    pub fn new(master_seed: u64) -> Self {
        Self { master_seed }
    }

    pub fn master_seed(&self) -> u64 {
        self.master_seed
    }

    pub fn stream(&self, phase: Phase, generation: u32, index: usize) -> SeededRng {
        let mut key = splitmix64(self.master_seed);
        key = splitmix64(key ^ phase.tag());
        key = splitmix64(key ^ u64::from(generation));
        key = splitmix64(key ^ index as u64);
        SeededRng::new(key)
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Test double that plays back pre-scripted draws.
///
/// `uniform` and `normal` pop from separate queues and panic on exhaustion,
/// so a test that mis-counts the draw protocol fails loudly. Values outside
/// the contractual ranges (such as a "uniform" of exactly 1.0) are allowed;
/// fixtures use them to probe boundary behaviour.
#[derive(Debug, Clone, Default)]
pub struct ScriptedSource {
    uniforms: VecDeque<f64>,
    normals: VecDeque<f64>,
}

impl ScriptedSource {
    pub fn new(
        uniforms: impl IntoIterator<Item = f64>,
        normals: impl IntoIterator<Item = f64>,
    ) -> Self {
        Self {
            uniforms: uniforms.into_iter().collect(),
            normals: normals.into_iter().collect(),
        }
    }

    /// Draws remaining on both queues.
    pub fn remaining(&self) -> (usize, usize) {
        (self.uniforms.len(), self.normals.len())
    }
}

impl RandomSource for ScriptedSource {
    fn uniform(&mut self) -> f64 {
        self.uniforms
            .pop_front()
            .expect("scripted uniform draws exhausted")
    }

    fn normal(&mut self) -> f64 {
        self.normals
            .pop_front()
            .expect("scripted normal draws exhausted")
    }
}
