//! Standard continuous test functions with their conventional search boxes
//! and known optima.
//!
//! All functions are minimized. Exact variants implemented here:
//!
//! * `sphere(x) = sum x_i^2` on `[-5.12, 5.12]`, optimum 0 at the origin.
//! * `rosenbrock(x) = sum 100*(x_{i+1} - x_i^2)^2 + (1 - x_i)^2` on
//!   `[-5, 10]`, optimum 0 at all-ones; needs at least two dimensions.
//! * `rastrigin(x) = 10 d + sum (x_i^2 - 10 cos(2 pi x_i))` on
//!   `[-5.12, 5.12]`, optimum 0 at the origin.
//! * `ackley(x) = 20 (1 - exp(-0.2 sqrt(mean x_i^2))) +
//!   (e - exp(mean cos(2 pi x_i)))` with `a = 20`, `b = 0.2`, `c = 2 pi`,
//!   on `[-32.768, 32.768]`, optimum 0 at the origin.
//! * `griewank(x) = 1 + sum x_i^2 / 4000 - prod cos(x_i / sqrt(i))` (1-based
//!   `i`) on `[-600, 600]`, optimum 0 at the origin.
//! * `schwefel(x) = sum (418.9829 - x_i sin(sqrt |x_i|))` on `[-500, 500]`
//!   (the `418.9829 d` offset form, distributed per component), optimum
//!   `d * 1.2727566286230285e-5` at `x_i = 420.96874635998205`. The tiny
//!   positive optimum is intrinsic to the rounded offset constant.

use std::f64::consts::PI;

use crate::bounds::Bounds;
use crate::error::{Error, Result};
use crate::objective::Objective;

const SCHWEFEL_OFFSET: f64 = 418.9829;
const SCHWEFEL_X_STAR: f64 = 420.96874635998205;

/// Dimension used when listing the registry.
pub const DEFAULT_DIMENSION: usize = 2;

/// The registered benchmark functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkKind {
    Ackley,
    Griewank,
    Rastrigin,
    Rosenbrock,
    Schwefel,
    Sphere,
}

impl BenchmarkKind {
    /// Every registered kind, sorted by name.
    pub const ALL: [BenchmarkKind; 6] = [
        BenchmarkKind::Ackley,
        BenchmarkKind::Griewank,
        BenchmarkKind::Rastrigin,
        BenchmarkKind::Rosenbrock,
        BenchmarkKind::Schwefel,
        BenchmarkKind::Sphere,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchmarkKind::Ackley => "ackley",
            BenchmarkKind::Griewank => "griewank",
            BenchmarkKind::Rastrigin => "rastrigin",
            BenchmarkKind::Rosenbrock => "rosenbrock",
            BenchmarkKind::Schwefel => "schwefel",
            BenchmarkKind::Sphere => "sphere",
        }
    }

    fn parse(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|kind| kind.name() == name)
    }

    fn minimum_dimension(self) -> usize {
        match self {
            BenchmarkKind::Rosenbrock => 2,
            _ => 1,
        }
    }

    fn interval(self) -> (f64, f64) {
        match self {
            BenchmarkKind::Ackley => (-32.768, 32.768),
            BenchmarkKind::Griewank => (-600.0, 600.0),
            BenchmarkKind::Rastrigin => (-5.12, 5.12),
            BenchmarkKind::Rosenbrock => (-5.0, 10.0),
            BenchmarkKind::Schwefel => (-500.0, 500.0),
            BenchmarkKind::Sphere => (-5.12, 5.12),
        }
    }
}

/// A benchmark function instantiated at a concrete dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Benchmark {
    kind: BenchmarkKind,
    dimension: usize,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, dimension: usize) -> Result<Self> {
        let minimum = kind.minimum_dimension();
        if dimension < minimum {
            return Err(Error::parameter(
                "dimension",
                format!("{} requires at least {minimum} dimensions", kind.name()),
            ));
        }
        Ok(Self { kind, dimension })
    }

    pub fn by_name(name: &str, dimension: usize) -> Result<Self> {
        let kind = BenchmarkKind::parse(name).ok_or_else(|| Error::UnknownBenchmark {
            name: name.to_string(),
        })?;
        Self::new(kind, dimension)
    }

    pub fn kind(&self) -> BenchmarkKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Full description: bounds and the known optimum at this dimension.
    pub fn spec(&self) -> BenchmarkSpec {
        let d = self.dimension;
        let (optimum_coords, optimum_value) = match self.kind {
            BenchmarkKind::Rosenbrock => (vec![1.0; d], 0.0),
            BenchmarkKind::Schwefel => {
                let residual =
                    SCHWEFEL_OFFSET - SCHWEFEL_X_STAR * SCHWEFEL_X_STAR.abs().sqrt().sin();
                // Same summation shape as evaluation at the optimum.
                let value = (0..d).map(|_| residual).sum();
                (vec![SCHWEFEL_X_STAR; d], value)
            }
            _ => (vec![0.0; d], 0.0),
        };
        BenchmarkSpec {
            name: self.kind.name(),
            dimension: d,
            bounds: self.default_bounds(),
            known_optimum_coords: optimum_coords,
            known_optimum_value: optimum_value,
        }
    }
}

impl Objective for Benchmark {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn default_bounds(&self) -> Bounds {
        let (lo, hi) = self.kind.interval();
        Bounds::symmetric(lo, hi, self.dimension).expect("registry intervals are valid")
    }

    fn evaluate(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dimension);
        match self.kind {
            BenchmarkKind::Sphere => x.iter().map(|&v| v * v).sum(),
            BenchmarkKind::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                .sum(),
            BenchmarkKind::Rastrigin => {
                10.0 * x.len() as f64
                    + x.iter()
                        .map(|&v| v * v - 10.0 * (2.0 * PI * v).cos())
                        .sum::<f64>()
            }
            BenchmarkKind::Ackley => {
                let d = x.len() as f64;
                let mean_square = x.iter().map(|&v| v * v).sum::<f64>() / d;
                let mean_cos = x.iter().map(|&v| (2.0 * PI * v).cos()).sum::<f64>() / d;
                // Grouped so each bracket vanishes exactly at the origin,
                // where the exponentials both reduce to exp(0) and exp(1).
                20.0 * (1.0 - (-0.2 * mean_square.sqrt()).exp())
                    + ((1.0f64).exp() - mean_cos.exp())
            }
            BenchmarkKind::Griewank => {
                let sum = x.iter().map(|&v| v * v).sum::<f64>() / 4000.0;
                let product: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                1.0 + sum - product
            }
            BenchmarkKind::Schwefel => x
                .iter()
                .map(|&v| SCHWEFEL_OFFSET - v * v.abs().sqrt().sin())
                .sum(),
        }
    }
}

/// One registry entry: a function at a concrete dimension plus its known
/// optimum.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec {
    pub name: &'static str,
    pub dimension: usize,
    pub bounds: Bounds,
    pub known_optimum_coords: Vec<f64>,
    pub known_optimum_value: f64,
}

/// All registered benchmarks at the default dimension, sorted by name.
pub fn list_benchmarks() -> Vec<BenchmarkSpec> {
    BenchmarkKind::ALL
        .into_iter()
        .map(|kind| {
            Benchmark::new(kind, DEFAULT_DIMENSION)
                .expect("default dimension suits every registered function")
                .spec()
        })
        .collect()
}

/// Looks up `name` and evaluates it at `coords` (whose length fixes the
/// dimension). Errors on unknown names and dimensions the function does not
/// support.
pub fn evaluate(name: &str, coords: &[f64]) -> Result<f64> {
    let benchmark = Benchmark::by_name(name, coords.len())?;
    Ok(benchmark.evaluate(coords))
}
