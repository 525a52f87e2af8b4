//! Minimum of `E(X ∧ c)` over nonnegative `X` with given mean and variance,
//! and by the lattice identity `(a − b)⁺ = a − (a ∧ b)` the maximum of the
//! call payoff `E(X − c)⁺` over the same set.
//!
//! The work happens on the standardized sphere: the constraint `X ≥ 0`
//! becomes `X ≥ −μ` with `μ = m/σ`, the minimum is `L_c(p* ∨ p_μ)`, and the
//! optimal two-point distribution is mapped back by `z ↦ m + σz`.

use serde::{Deserialize, Serialize};

use super::moments::{standardize, MomentSpec, Strike};
use super::two_point::{l_value, p_m, p_star, two_point_from_p, TwoPointDistribution};
use crate::error::{BoundsError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Branch {
    /// `c ≤ (m² + σ²)/(2m)`: the positivity constraint binds and the
    /// minimizer has an atom at zero.
    LowStrike,
    /// `c ≥ (m² + σ²)/(2m)`: the unconstrained minimizer is already nonnegative.
    HighStrike,
    /// `c ≤ 0`: every admissible `X` has `X ∧ c = c`.
    Degenerate,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::LowStrike => "LowStrike",
            Branch::HighStrike => "HighStrike",
            Branch::Degenerate => "Degenerate",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Infimum of `E(X ∧ c)` over mean-0, variance-1 variables bounded below by `−m_std`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardizedInf {
    pub value: f64,
    /// `p* ∨ p_m`; absent on the degenerate branch.
    pub p_opt: Option<f64>,
    pub branch: Branch,
}

impl StandardizedInf {
    /// The standardized two-point minimizer, when there is one.
    pub fn extremal(&self) -> Option<TwoPointDistribution> {
        self.p_opt
            .map(|p| two_point_from_p(p).expect("p_opt lies in (0, 1)"))
    }
}

pub fn standardized_scarf_inf(m_std: f64, c_std: f64) -> Result<StandardizedInf> {
    let pm = p_m(m_std)?;
    if !c_std.is_finite() {
        return Err(BoundsError::out_of_range("c_std", c_std, "must be finite"));
    }
    if c_std <= -m_std {
        return Ok(StandardizedInf {
            value: c_std,
            p_opt: None,
            branch: Branch::Degenerate,
        });
    }
    let (value, p_opt) = constrained_min(pm, c_std);
    // c ≤ (1 − μ²)/(2μ), rearranged so no division enters the comparison.
    let branch = if 2.0 * c_std * m_std <= 1.0 - m_std * m_std {
        Branch::LowStrike
    } else {
        Branch::HighStrike
    };
    Ok(StandardizedInf {
        value,
        p_opt: Some(p_opt),
        branch,
    })
}

fn constrained_min(pm: f64, c_std: f64) -> (f64, f64) {
    let p_opt = p_star(c_std).max(pm);
    let value = l_value(p_opt, c_std).expect("p* and p_m lie in (0, 1)");
    (value, p_opt)
}

/// Solution of the nonnegative-support problem in price units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScarfSolution {
    pub branch: Branch,
    pub p_opt: Option<f64>,
    /// `min E(X ∧ c)`.
    pub min_winsorized: f64,
    /// `max E(X − c)⁺ = m − min E(X ∧ c)`.
    pub max_call: f64,
    /// Two-point minimizer in price units; absent on the degenerate branch.
    pub extremal: Option<TwoPointDistribution>,
}

/// `(m² + σ²)/(2m)`, the strike separating the two branches.
pub fn threshold_strike(spec: MomentSpec) -> f64 {
    spec.second_moment() / (2.0 * spec.mean())
}

pub fn scarf_min(spec: MomentSpec, c: Strike) -> Result<ScarfSolution> {
    let m = spec.mean();
    if m <= 0.0 {
        return Err(BoundsError::InvalidSpec(
            "mean must be positive: no nonnegative variable has mean <= 0 and positive variance"
                .into(),
        ));
    }
    let cv = c.value();
    if cv <= 0.0 {
        return Ok(ScarfSolution {
            branch: Branch::Degenerate,
            p_opt: None,
            min_winsorized: cv,
            max_call: m - cv,
            extremal: None,
        });
    }

    let std = standardize(c, spec);
    let pm = p_m(spec.mean_std())?;
    // Bypasses the c̃ ≤ −μ gate of standardized_scarf_inf: for 0 < c ≪ m the
    // standardized strike can round onto −μ even though c > 0.
    let (value, p_opt) = constrained_min(pm, std.strike_std);
    let min_winsorized = m + spec.std_dev() * value;
    let branch = if 2.0 * cv * m <= spec.second_moment() {
        Branch::LowStrike
    } else {
        Branch::HighStrike
    };
    // p_opt ≥ p_m places the low atom at or above zero; the floor only removes rounding.
    let extremal = two_point_from_p(p_opt)?.to_raw(&spec).with_low_floor(0.0);

    Ok(ScarfSolution {
        branch,
        p_opt: Some(p_opt),
        min_winsorized,
        max_call: m - min_winsorized,
        extremal: Some(extremal),
    })
}

/// Maximum of `E(X − c)⁺` over nonnegative `X` with the given moments. Requires `c > 0`.
pub fn lo_max(spec: MomentSpec, c: Strike) -> Result<f64> {
    let sol = scarf_min(spec, c)?;
    if sol.branch == Branch::Degenerate {
        return Err(BoundsError::Degenerate(format!(
            "strike must be positive, got {}",
            c.value()
        )));
    }
    Ok(spec.mean() - sol.min_winsorized)
}

/// `−(σ + |m| + |c|)`: a lower bound on `E(X ∧ c)` over the whole sphere,
/// with or without a support constraint.
pub fn winsorized_floor(spec: MomentSpec, c: Strike) -> f64 {
    -(spec.std_dev() + spec.mean().abs() + c.value().abs())
}
