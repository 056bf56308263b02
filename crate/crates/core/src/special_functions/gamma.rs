use crate::{Error, Result, C64};
use std::f64::consts::PI;

fn is_pole(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Γ(x) for real non-pole `x`, with reflection for negative arguments.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() || is_pole(x) {
        return Err(Error::Domain(format!("gamma has a pole at {x}")));
    }
    if x == x.floor() && x <= 171.0 {
        return Ok((2..x as u32).fold(1.0, |acc, k| acc * k as f64));
    }
    Ok(statrs::function::gamma::gamma(x))
}

/// ln|Γ(x)|.
pub fn ln_gamma(x: f64) -> Result<f64> {
    if !x.is_finite() || is_pole(x) {
        return Err(Error::Domain(format!("log-gamma has a pole at {x}")));
    }
    if x > 0.0 {
        Ok(statrs::function::gamma::ln_gamma(x))
    } else {
        // |Γ(x)| = π / (|sin(πx)| Γ(1-x))
        Ok(PI.ln() - (PI * x).sin().abs().ln() - statrs::function::gamma::ln_gamma(1.0 - x))
    }
}

/// 1/Γ(x), an entire function: zero at the non-positive integers.
pub fn recip_gamma(x: f64) -> f64 {
    if is_pole(x) {
        return 0.0;
    }
    if x < 0.5 {
        // 1/Γ(x) = Γ(1-x) sin(πx) / π
        let s = (PI * x).sin();
        let lg = statrs::function::gamma::ln_gamma(1.0 - x);
        s * lg.exp() / PI
    } else if x > 170.0 {
        (-statrs::function::gamma::ln_gamma(x)).exp()
    } else {
        1.0 / statrs::function::gamma::gamma(x)
    }
}

pub fn erfc(x: f64) -> f64 {
    statrs::function::erf::erfc(x)
}

/// Upper incomplete gamma Γ(a, z) for real non-integer `a` (or `a > 0`) and
/// complex `z` with positive real part.
///
/// Small |z| uses Γ(a) minus the lower series; otherwise the Legendre
/// continued fraction, evaluated with the modified Lentz scheme.
pub fn upper_incomplete_gamma(a: f64, z: C64) -> Result<C64> {
    if z.re <= 0.0 && !(z.re == 0.0 && z.im != 0.0) {
        return Err(Error::Domain(format!("incomplete gamma needs Re(z) > 0, got {z}")));
    }
    if z.norm() <= 2.0 {
        let ga = gamma_fn(a)?;
        Ok(C64::new(ga, 0.0) - lower_series(a, z)?)
    } else {
        continued_fraction(a, z)
    }
}

/// Σ_k (-1)^k z^{a+k} / (k! (a+k)), the analytic continuation of γ(a, z).
fn lower_series(a: f64, z: C64) -> Result<C64> {
    let mut sum = C64::new(0.0, 0.0);
    let mut zk = C64::new(1.0, 0.0); // (-z)^k / k!
    for k in 0..200 {
        let denom = a + k as f64;
        if denom == 0.0 {
            return Err(Error::Domain(format!("incomplete gamma series hits a pole at a = {a}")));
        }
        let term = zk / denom;
        sum += term;
        if k > 2 && term.norm() <= 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum * z.powf(a));
        }
        zk *= -z / (k as f64 + 1.0);
    }
    Err(Error::Numeric("incomplete gamma series did not converge".into()))
}

fn continued_fraction(a: f64, z: C64) -> Result<C64> {
    const TINY: f64 = 1e-300;
    let one = C64::new(1.0, 0.0);
    let mut b = z + 1.0 - a;
    let mut c = C64::new(1.0 / TINY, 0.0);
    let mut d = one / b;
    let mut h = d;
    for i in 1..2000 {
        let an = -(i as f64) * (i as f64 - a);
        b += 2.0;
        d = b + an * d;
        if d.norm() < TINY {
            d = C64::new(TINY, 0.0);
        }
        c = b + an / c;
        if c.norm() < TINY {
            c = C64::new(TINY, 0.0);
        }
        d = one / d;
        let del = d * c;
        h *= del;
        if (del - one).norm() < 1e-16 {
            return Ok((-z + a * z.ln()).exp() * h);
        }
    }
    Err(Error::Numeric(format!("incomplete gamma continued fraction failed at z = {z}")))
}
