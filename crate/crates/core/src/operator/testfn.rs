//! Closed-form admissible functions `u = α x^k e^{-βx} (1 + γ sin ωx)` with
//! `k ≥ 2`, so `u(0) = u'(0) = 0` and `u` decays exponentially.

use crate::{c64, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TestFunction {
    pub amplitude: c64,
    pub power: u32,
    pub decay: f64,
    pub wobble: f64,
    pub frequency: f64,
}

fn falling_factorial(k: u32, i: u32) -> f64 {
    (0..i).map(|m| (k - m) as f64).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    falling_factorial(n, k) / falling_factorial(k, k)
}

impl TestFunction {
    pub fn new(amplitude: c64, power: u32, decay: f64, wobble: f64, frequency: f64) -> Result<Self> {
        if power < 2 {
            return Err(Error::InadmissibleTestFunction(format!("power {power} < 2 breaks u'(0) = 0")));
        }
        if !(decay > 0.0) {
            return Err(Error::InadmissibleTestFunction(format!("decay {decay} must be positive")));
        }
        if amplitude.norm() == 0.0 {
            return Err(Error::InadmissibleTestFunction("zero amplitude".into()));
        }
        Ok(Self { amplitude, power, decay, wobble, frequency })
    }

    /// `x^k e^{-x}`.
    pub fn monomial_exp(power: u32) -> Self {
        Self::new(c64::new(1.0, 0.0), power, 1.0, 0.0, 1.0).expect("power >= 2")
    }

    /// `n`-th derivative, `n ≤ 4`; zero at `x = ∞`.
    pub fn derivative(&self, n: u32, x: f64) -> c64 {
        assert!(n <= 4, "derivatives up to order 4 only");
        if x.is_infinite() {
            return c64::new(0.0, 0.0);
        }
        let k = self.power;
        let (b, g, w) = (self.decay, self.wobble, self.frequency);
        let e = (-b * x).exp();
        let poly = |i: u32| if i > k { 0.0 } else { falling_factorial(k, i) * x.powi((k - i) as i32) };
        let expo = |j: u32| (-b).powi(j as i32) * e;
        let wob = |l: u32| {
            if l == 0 {
                1.0 + g * (w * x).sin()
            } else {
                g * w.powi(l as i32) * (w * x + l as f64 * std::f64::consts::FRAC_PI_2).sin()
            }
        };
        let mut total = 0.0;
        for i in 0..=n {
            for j in 0..=(n - i) {
                let l = n - i - j;
                let coeff = binomial(n, i) * binomial(n - i, j);
                total += coeff * poly(i) * expo(j) * wob(l);
            }
        }
        self.amplitude * total
    }

    pub fn value(&self, x: f64) -> c64 {
        self.derivative(0, x)
    }

    pub fn samples(&self, nodes: &[f64], order: u32) -> Vec<c64> {
        nodes.iter().map(|&x| self.derivative(order, x)).collect()
    }

    /// `|u(x_max)| ≤ 1e-6 · max |u|` (peak estimated on a fine uniform scan).
    pub fn is_admissible_on(&self, x_max: f64) -> bool {
        if x_max.is_infinite() {
            return true;
        }
        let peak = (0..=2000).map(|i| self.value(x_max * i as f64 / 2000.0).norm()).fold(0.0, f64::max);
        self.value(x_max).norm() <= 1e-6 * peak
    }
}
