//! Empirical CDFs and their comparison against analytic step CDFs.

use crate::sinr::SinrCdf;

/// Samples beyond this count are compressed to a quantile sketch unless the
/// distribution is atomic enough to store exactly.
const MAX_FULL_SAMPLES: usize = 1_000_000;
/// Size of the quantile sketch.
const SKETCH_POINTS: usize = 10_000;

/// Right-continuous empirical CDF stored as `(value, cumulative fraction)`
/// steps. Exact when built from at most a million samples (or when the
/// samples take few distinct values); otherwise a quantile sketch with
/// resolution `1 / 10_000`.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    steps: Vec<(f64, f64)>,
    samples: u64,
    sketched: bool,
}

impl EmpiricalCdf {
    pub fn from_samples(mut samples: Vec<f64>) -> Self {
        assert!(!samples.is_empty(), "empirical CDF needs samples");
        samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let n = samples.len();
        let mut steps: Vec<(f64, f64)> = Vec::new();
        let mut i = 0;
        while i < n {
            let v = samples[i];
            let mut j = i + 1;
            while j < n && samples[j] == v {
                j += 1;
            }
            steps.push((v, j as f64 / n as f64));
            i = j;
        }
        if n <= MAX_FULL_SAMPLES || steps.len() <= SKETCH_POINTS {
            return Self {
                steps,
                samples: n as u64,
                sketched: false,
            };
        }
        let mut sketch: Vec<(f64, f64)> = Vec::with_capacity(SKETCH_POINTS);
        for k in 1..=SKETCH_POINTS {
            let idx = (k * n).div_ceil(SKETCH_POINTS) - 1;
            let v = samples[idx];
            let cum = k as f64 / SKETCH_POINTS as f64;
            match sketch.last_mut() {
                Some((sv, sc)) if *sv == v => *sc = cum,
                _ => sketch.push((v, cum)),
            }
        }
        Self {
            steps: sketch,
            samples: n as u64,
            sketched: true,
        }
    }

    pub fn len(&self) -> u64 {
        self.samples
    }

    pub fn is_empty(&self) -> bool {
        self.samples == 0
    }

    pub fn is_sketched(&self) -> bool {
        self.sketched
    }

    /// `(value, cumulative fraction)` steps, ascending, ending at 1.
    pub fn steps(&self) -> &[(f64, f64)] {
        &self.steps
    }

    /// Fraction of samples at or below `x`.
    pub fn value_at(&self, x: f64) -> f64 {
        match self.steps.partition_point(|(v, _)| *v <= x).checked_sub(1) {
            Some(i) => self.steps[i].1,
            None => 0.0,
        }
    }

    /// Kolmogorov-Smirnov distance against an analytic step CDF; exact for
    /// unsketched data since both CDFs are right-continuous step functions
    /// whose difference is constant between breakpoints.
    pub fn ks_distance(&self, analytic: &SinrCdf) -> f64 {
        let mut d: f64 = 0.0;
        for (v, _) in &self.steps {
            d = d.max((self.value_at(*v) - analytic.value_at(*v)).abs());
        }
        for b in analytic.breakpoints() {
            d = d.max((self.value_at(b) - analytic.value_at(b)).abs());
        }
        d
    }
}
