//! Random walks driving diffusion: two Gaussian walks and a Mantegna levy
//! step sampler.
//!
//! Each function documents its exact draw protocol (what it takes from the
//! [`RandomSource`] and in which order); tests and reproducibility both
//! depend on those protocols staying fixed.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::RandomSource;

/// Valid range for the levy exponent `beta`, exclusive on both ends.
pub const LEVY_BETA_RANGE: (f64, f64) = (0.3, 1.99);

/// Parameters selecting and shaping one diffusion walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    generation: u32,
    walk_choice_prob: f64,
}

impl WalkParams {
    /// `generation` is 1-based; `walk_choice_prob` is the probability of
    /// taking the best-point-centred walk instead of the self-centred one.
    pub fn new(generation: u32, walk_choice_prob: f64) -> Result<Self> {
        if generation < 1 {
            return Err(Error::parameter("generation", "must be at least 1"));
        }
        if !(0.0..=1.0).contains(&walk_choice_prob) {
            return Err(Error::parameter(
                "walk_choice_prob",
                format!("{walk_choice_prob} is outside [0, 1]"),
            ));
        }
        Ok(Self {
            generation,
            walk_choice_prob,
        })
    }

    pub fn generation(&self) -> u32 {
        self.generation
    }

    pub fn walk_choice_prob(&self) -> f64 {
        self.walk_choice_prob
    }
}

/// Per-component walk spread `sigma[j] = |ln(g)/g * (p[j] - bp[j])|`.
///
/// Shrinks as the generation counter `g` grows, and vanishes entirely at
/// `g = 1` (ln 1 = 0), so first-generation walks centred on a point reduce to
/// that point.
pub fn diffusion_sigma(generation: u32, p: &[f64], bp: &[f64]) -> Result<Vec<f64>> {
    if generation < 1 {
        return Err(Error::parameter("generation", "must be at least 1"));
    }
    if p.len() != bp.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: bp.len(),
        });
    }
    let g = f64::from(generation);
    let factor = g.ln() / g;
    Ok(p.iter()
        .zip(bp)
        .map(|(&pi, &bpi)| (factor * (pi - bpi)).abs())
        .collect())
}

/// Walk centred on the best point:
/// `result[j] = bp[j] + sigma[j]*z_j + (eps_j*bp[j] - eps'_j*p[j])`.
///
/// Draw protocol per component, in index order: one normal `z_j`, then two
/// uniforms `eps_j`, `eps'_j`. A zero `sigma[j]` degenerates the Gaussian
/// part to exactly `bp[j]`.
pub fn gaussian_walk_first<R: RandomSource + ?Sized>(
    p: &[f64],
    bp: &[f64],
    sigma: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    if p.len() != bp.len() || p.len() != sigma.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: bp.len().min(sigma.len()),
        });
    }
    Ok(p.iter()
        .zip(bp)
        .zip(sigma)
        .map(|((&pi, &bpi), &s)| {
            let z = rng.normal();
            let eps = rng.uniform();
            let eps_prime = rng.uniform();
            bpi + s * z + (eps * bpi - eps_prime * pi)
        })
        .collect())
}

/// Walk centred on the point itself: `result[j] = p[j] + sigma[j]*z_j`.
///
/// Draw protocol per component, in index order: one normal `z_j`. A zero
/// `sigma[j]` reproduces `p[j]` exactly.
pub fn gaussian_walk_second<R: RandomSource + ?Sized>(
    p: &[f64],
    sigma: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    if p.len() != sigma.len() {
        return Err(Error::DimensionMismatch {
            expected: p.len(),
            actual: sigma.len(),
        });
    }
    Ok(p.iter()
        .zip(sigma)
        .map(|(&pi, &s)| pi + s * rng.normal())
        .collect())
}

/// Chooses and executes one diffusion walk around `p`.
///
/// Draw protocol: one uniform `w`; `w < walk_choice_prob` selects
/// [`gaussian_walk_first`] (so probability 1 always takes it and probability
/// 0 never does), then the chosen walk's own draws follow. The spread comes
/// from [`diffusion_sigma`] at the params' generation.
pub fn diffusion_walk<R: RandomSource + ?Sized>(
    p: &[f64],
    bp: &[f64],
    params: &WalkParams,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let sigma = diffusion_sigma(params.generation, p, bp)?;
    if rng.uniform() < params.walk_choice_prob {
        gaussian_walk_first(p, bp, &sigma, rng)
    } else {
        gaussian_walk_second(p, &sigma, rng)
    }
}

/// Scale of the numerator normal in Mantegna's levy step generator:
///
/// `sigma_u = [Gamma(1+beta)*sin(pi*beta/2) /
///            (Gamma((1+beta)/2)*beta*2^((beta-1)/2))]^(1/beta)`
///
/// Defined for `beta` in the open interval (0.3, 1.99); `beta = 1` gives
/// exactly 1.
pub fn mantegna_sigma_u(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let numerator = libm::tgamma(1.0 + beta) * (PI * beta / 2.0).sin();
    let denominator = libm::tgamma((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    Ok((numerator / denominator).powf(1.0 / beta))
}

/// One heavy-tailed step `u / |v|^(1/beta)` with `u ~ N(0, sigma_u^2)` and
/// `v ~ N(0, 1)` (Mantegna's algorithm).
///
/// Draw protocol: one normal for `u` (scaled by `sigma_u`), then one normal
/// for `v`. The result has no finite variance for `beta < 2`; callers clamp
/// or repair the positions they build from it, and an (astronomically rare)
/// zero `v` yields a non-finite step that bound repair resamples anyway.
pub fn levy_sample<R: RandomSource + ?Sized>(beta: f64, rng: &mut R) -> Result<f64> {
    let sigma_u = mantegna_sigma_u(beta)?;
    let u = sigma_u * rng.normal();
    let v = rng.normal();
    Ok(u / v.abs().powf(1.0 / beta))
}

fn check_beta(beta: f64) -> Result<()> {
    let (lo, hi) = LEVY_BETA_RANGE;
    if !(beta > lo && beta < hi) {
        return Err(Error::parameter(
            "beta",
            format!("{beta} is outside the open interval ({lo}, {hi})"),
        ));
    }
    Ok(())
}
