//! Closed forms for π of regular polygons measured in their own gauge.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyKind {
    /// n = 4m
    QuarterTurn,
    /// n odd
    OddAsymmetric,
    /// n = 4m + 2
    RadonEven,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::QuarterTurn => "quarter-turn",
            FamilyKind::OddAsymmetric => "odd-asymmetric",
            FamilyKind::RadonEven => "radon-even",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiFamily {
    pub kind: FamilyKind,
    pub range_low: f64,
    pub range_high: f64,
    pub low_closed: bool,
    pub high_closed: bool,
}

impl PiFamily {
    pub fn contains(&self, x: f64) -> bool {
        self.contains_within(x, 0.0)
    }

    /// Membership with closed endpoints widened by `tol`; open endpoints
    /// stay strict.
    pub fn contains_within(&self, x: f64, tol: f64) -> bool {
        let above = if self.low_closed {
            x >= self.range_low - tol
        } else {
            x > self.range_low
        };
        let below = if self.high_closed {
            x <= self.range_high + tol
        } else {
            x < self.range_high
        };
        above && below
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PiValue {
    pub n: u32,
    pub value: f64,
}

/// Selects one of the equivalent expressions for π_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PiForm {
    Closed,
    Piecewise,
    Max,
    Beraha,
    Circle,
    Side,
}

impl PiForm {
    pub const ALL: [PiForm; 6] = [
        PiForm::Closed,
        PiForm::Piecewise,
        PiForm::Max,
        PiForm::Beraha,
        PiForm::Circle,
        PiForm::Side,
    ];

    pub fn eval(self, n: u32) -> Result<PiValue> {
        match self {
            PiForm::Closed => pi_n_closed(n),
            PiForm::Piecewise => pi_n_piecewise(n),
            PiForm::Max => pi_n_max_form(n),
            PiForm::Beraha => pi_n_beraha(n),
            PiForm::Circle => pi_n_circle(n).map(|(_, p)| p),
            PiForm::Side => pi_n_side_relation(n),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PiForm::Closed => "closed",
            PiForm::Piecewise => "piecewise",
            PiForm::Max => "max",
            PiForm::Beraha => "beraha",
            PiForm::Circle => "circle",
            PiForm::Side => "side",
        }
    }
}

impl FromStr for PiForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PiForm::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown form {s:?}")))
    }
}

fn check_n(n: u32) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "n must be at least 3, got {n}"
        )));
    }
    Ok(())
}

fn value(n: u32, value: f64) -> Result<PiValue> {
    Ok(PiValue { n, value })
}

/// Maximum over the m-th directed chord of the regular n-gon.
pub fn pi_n_max_form(n: u32) -> Result<PiValue> {
    check_n(n)?;
    let d = PI / n as f64;
    let best = (1..=n)
        .map(|m| {
            let m = m as f64;
            (3.0 * d - 2.0 * m * d).cos() - (d - 2.0 * m * d).cos()
        })
        .fold(f64::NEG_INFINITY, f64::max);
    value(n, n as f64 / (2.0 * d.cos()) * best)
}

/// Number of sides subtended by the longest unit-gauge chord: ⌊(n+5)/4⌋.
pub fn subtended_sides(n: u32) -> Result<u32> {
    check_n(n)?;
    Ok((n + 5) / 4)
}

pub fn pi_n_closed(n: u32) -> Result<PiValue> {
    check_n(n)?;
    let d = PI / n as f64;
    let k = ((n + 1) / 4) as f64;
    let bracket = (d * (2.0 * k - 1.0)).cos() - (d * (2.0 * k + 1.0)).cos();
    value(n, n as f64 / (2.0 * d.cos()) * bracket)
}

pub fn pi_n_piecewise(n: u32) -> Result<PiValue> {
    check_n(n)?;
    let nf = n as f64;
    let d = PI / nf;
    let v = match n % 4 {
        0 => nf * d.tan(),
        2 => nf * d.sin(),
        _ => nf * d.tan() * (d / 2.0).cos(),
    };
    value(n, v)
}

/// B_n = 2 + 2cos(2π/n).
pub fn beraha(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    Ok(2.0 + 2.0 * (2.0 * PI / n as f64).cos())
}

pub fn pi_n_beraha(n: u32) -> Result<PiValue> {
    check_n(n)?;
    let nf = n as f64;
    let b = beraha(n)?;
    let v = match n % 4 {
        0 => nf * ((4.0 - b) / b).sqrt(),
        2 => nf * ((4.0 - b) / 4.0).sqrt(),
        _ => nf * (beraha(2 * n)? * (4.0 - b) / (4.0 * b)).sqrt(),
    };
    value(n, v)
}

/// Returns the polygonal circle number c_n = n·sin(π/n)·cos(π/n) and π_n
/// expressed through it.
pub fn pi_n_circle(n: u32) -> Result<(f64, PiValue)> {
    check_n(n)?;
    let nf = n as f64;
    let d = PI / nf;
    let c = nf * d.sin() * d.cos();
    let cos2 = d.cos() * d.cos();
    let v = match n % 4 {
        0 => c / cos2,
        2 => c / d.cos(),
        _ => c * (d / 2.0).cos() / cos2,
    };
    Ok((c, PiValue { n, value: v }))
}

/// π_n through the side length r_n = 2sin(π/n) of the polygon inscribed in
/// the unit circle.
pub fn pi_n_side_relation(n: u32) -> Result<PiValue> {
    check_n(n)?;
    let nf = n as f64;
    let d = PI / nf;
    let r = 2.0 * d.sin();
    let v = match n % 4 {
        0 => nf * r / (2.0 * d.cos()),
        2 => nf * r / 2.0,
        _ => nf * r * (d / 2.0).cos() / (2.0 * d.cos()),
    };
    value(n, v)
}

/// Nested-radical value of π_{2^m}: 2^m·√(2 − R)/√(2 + R) with R the
/// radical nested m−2 times (R = 0 for m = 2).
///
/// 2 − R is carried as its own recurrence to avoid cancellation.
pub fn viete_pi(m: u32) -> Result<f64> {
    if !(2..=1000).contains(&m) {
        return Err(Error::InvalidParameter(format!(
            "m must be in 2..=1000, got {m}"
        )));
    }
    let mut r = 0.0_f64;
    let mut diff = 2.0_f64;
    for _ in 0..m - 2 {
        r = (2.0 + r).sqrt();
        diff /= 2.0 + r;
    }
    Ok(2f64.powi(m as i32) * diff.sqrt() / (2.0 + r).sqrt())
}

pub fn classify_family(n: u32) -> Result<PiFamily> {
    check_n(n)?;
    Ok(match n % 4 {
        0 => PiFamily {
            kind: FamilyKind::QuarterTurn,
            range_low: PI,
            range_high: 4.0,
            low_closed: false,
            high_closed: true,
        },
        2 => PiFamily {
            kind: FamilyKind::RadonEven,
            range_low: 3.0,
            range_high: PI,
            low_closed: true,
            high_closed: false,
        },
        // π_3 = 9/2 is attained.
        _ => PiFamily {
            kind: FamilyKind::OddAsymmetric,
            range_low: PI,
            range_high: 4.5,
            low_closed: false,
            high_closed: true,
        },
    })
}
