//! Piecewise-linear concave gauges `D` and the metrics `d(x, y) = D(|x - y|)`
//! on the real line.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::rational::{int_rat, rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaugeError {
    #[error("gauge nodes must start at (0, 0) and increase strictly in both coordinates")]
    NotIncreasing,
    #[error("gauge slopes must be nonincreasing")]
    NotConcave,
    #[error("negative argument")]
    Negative,
}

/// Nodes `(x_k, y_k)`; beyond the last node the final slope continues.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeCurve {
    nodes: Vec<(Rational, Rational)>,
}

impl GaugeCurve {
    pub fn new(nodes: Vec<(Rational, Rational)>) -> Result<Self, GaugeError> {
        if nodes.len() < 2 || !nodes[0].0.is_zero() || !nodes[0].1.is_zero() {
            return Err(GaugeError::NotIncreasing);
        }
        if nodes.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 <= w[0].1) {
            return Err(GaugeError::NotIncreasing);
        }
        let c = GaugeCurve { nodes };
        if c.slopes().windows(2).any(|s| s[1] > s[0]) {
            return Err(GaugeError::NotConcave);
        }
        Ok(c)
    }

    pub fn nodes(&self) -> &[(Rational, Rational)] {
        &self.nodes
    }

    pub fn slopes(&self) -> Vec<Rational> {
        self.nodes
            .windows(2)
            .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
            .collect()
    }

    /// Index `k` of the segment `[node k, node k+1]` used at `t` in the given
    /// coordinate (0 for x, 1 for y).
    fn segment(&self, t: &Rational, coord: usize) -> usize {
        let last = self.nodes.len() - 2;
        (0..=last)
            .find(|&k| {
                let hi = if coord == 0 { &self.nodes[k + 1].0 } else { &self.nodes[k + 1].1 };
                t <= hi
            })
            .unwrap_or(last)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, GaugeError> {
        if x.is_negative() {
            return Err(GaugeError::Negative);
        }
        let k = self.segment(x, 0);
        let (a, b) = (&self.nodes[k], &self.nodes[k + 1]);
        Ok(&a.1 + (x - &a.0) * (&b.1 - &a.1) / (&b.0 - &a.0))
    }

    pub fn inverse(&self, y: &Rational) -> Result<Rational, GaugeError> {
        if y.is_negative() {
            return Err(GaugeError::Negative);
        }
        let k = self.segment(y, 1);
        let (a, b) = (&self.nodes[k], &self.nodes[k + 1]);
        Ok(&a.0 + (y - &a.1) * (&b.0 - &a.0) / (&b.1 - &a.1))
    }

    /// Node ordinates and segment-midpoint ordinates, excluding 0.
    pub fn sample_ordinates(&self) -> Vec<Rational> {
        let mut out = Vec::new();
        for w in self.nodes.windows(2) {
            out.push((&w[0].1 + &w[1].1) / rat(2));
            out.push(w[1].1.clone());
        }
        out
    }
}

/// `2^(2^e)`.
fn tower(e: u32) -> Rational {
    int_rat(BigInt::one() << (1usize << e))
}

/// Nodes `(0,0), (1,1)` and `(2^{2^{n+1}}, 2^{2^n})` for `n = 1..=n_max`; all
/// lie on `y = sqrt(x)`.
pub fn standard_gauge(n_max: u32) -> GaugeCurve {
    let mut nodes = vec![(rat(0), rat(0)), (rat(1), rat(1))];
    for n in 1..=n_max.max(1) {
        nodes.push((tower(n + 1), tower(n)));
    }
    GaugeCurve::new(nodes).expect("standard gauge is concave")
}

/// The `n`-th ordinate `y_n = 2^{2^n}` of the standard gauge.
pub fn standard_node(n: u32) -> Rational {
    tower(n)
}

/// Lebesgue measure of a ball of radius `r`: `2 D^{-1}(r)`.
pub fn ball_volume(c: &GaugeCurve, r: &Rational) -> Result<Rational, GaugeError> {
    Ok(rat(2) * c.inverse(r)?)
}

pub fn doubling_ratio(c: &GaugeCurve, r: &Rational) -> Result<Rational, GaugeError> {
    Ok(ball_volume(c, &(r * rat(2)))? / ball_volume(c, r)?)
}

/// `ball_volume(y) <= 2y² + 2y²(y + 1)` at every sample.
pub fn growth_bound_check(c: &GaugeCurve, samples: &[Rational]) -> Result<bool, GaugeError> {
    for y in samples {
        let y2 = y * y;
        let bound = &y2 * rat(2) + &y2 * rat(2) * (y + rat(1));
        if ball_volume(c, y)? > bound {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Ball volume `2(e^r - 1)` for the metric `log(|x - y| + 1)`.
pub fn log_metric_volume(r: f64) -> f64 {
    2.0 * r.exp_m1()
}

/// First integer radius `r <= r_max` with `log_metric_volume(r) > C r^Q`.
pub fn polynomial_bound_failure(c: f64, q: f64, r_max: u32) -> Option<u32> {
    (1..=r_max).find(|&r| {
        let r = r as f64;
        // compare logarithms to stay in range
        (log_metric_volume(r)).ln() > c.ln() + q * r.ln()
    })
}
