//! Trial aggregation.

/// Mean and sample standard deviation of a set of trial outcomes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Summary {
    pub mean: f64,
    /// Sample standard deviation (`n - 1` denominator); 0 for fewer than two trials.
    pub stddev: f64,
    pub trials: usize,
}

impl Summary {
    /// Returns `None` for an empty sample.
    pub fn from_samples(samples: &[f64]) -> Option<Summary> {
        if samples.is_empty() {
            return None;
        }
        let n = samples.len() as f64;
        let mean = samples.iter().sum::<f64>() / n;
        let stddev = if samples.len() < 2 {
            0.0
        } else {
            let ss: f64 = samples.iter().map(|x| (x - mean) * (x - mean)).sum();
            libm::sqrt(ss / (n - 1.0))
        };
        Some(Summary {
            mean,
            stddev,
            trials: samples.len(),
        })
    }
}
