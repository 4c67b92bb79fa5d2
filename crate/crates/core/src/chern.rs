//! Discriminant inequalities for bundles on genus-one fibrations and the
//! numerical dictionary between `δ = deg R¹f_*O_Y(−D)` and `D²`.
//!
//! Every quantity is an exact integer or rational. All bounds assume
//! characteristic zero; the characteristic hypotheses of the underlying
//! inequalities are carried as flags only.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::atiyah::e_invariant;
use crate::error::{Error, Result};
use crate::Rational;

fn require_positive(name: &'static str, value: i64) -> Result<()> {
    if value < 1 {
        return Err(Error::InvalidParameter {
            name,
            value,
            requirement: "must be at least 1",
        });
    }
    Ok(())
}

/// `(n, d, g, δ, D²)` for an `n`-section `D` on a fibration over a base of
/// genus `g` with `χ(O_Y) = d`, tied together by `D² = −2δ − (n+2)d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FibrationInvariants {
    n: i64,
    d: i64,
    g: i64,
    delta: i64,
    #[serde(rename = "d2")]
    d_squared: i64,
}

/// `D² = −2δ − (n+2)d`.
pub fn d_squared_from_delta(n: i64, d: i64, delta: i64) -> i64 {
    -2 * delta - (n + 2) * d
}

impl FibrationInvariants {
    pub fn new(n: i64, d: i64, g: i64, delta: i64) -> Result<Self> {
        require_positive("n", n)?;
        require_positive("d", d)?;
        if g < 0 {
            return Err(Error::InvalidParameter {
                name: "g",
                value: g,
                requirement: "genus must be nonnegative",
            });
        }
        Ok(FibrationInvariants {
            n,
            d,
            g,
            delta,
            d_squared: d_squared_from_delta(n, d, delta),
        })
    }

    /// Recovers `δ` from `D²`; fails when `D² + (n+2)d` is odd.
    pub fn from_d_squared(n: i64, d: i64, g: i64, d_squared: i64) -> Result<Self> {
        require_positive("n", n)?;
        require_positive("d", d)?;
        let twice_delta = -d_squared - (n + 2) * d;
        if twice_delta.is_odd() {
            return Err(Error::Inconsistent(format!(
                "D^2 = {d_squared} is not congruent to nd = {} mod 2",
                n * d
            )));
        }
        FibrationInvariants::new(n, d, g, twice_delta / 2)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn g(&self) -> i64 {
        self.g
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn d_squared(&self) -> i64 {
        self.d_squared
    }

    /// `μ = δ/n = −D²/(2n) − (n+2)d/(2n)`.
    pub fn slope(&self) -> Rational {
        Rational::new(self.delta, self.n)
    }
}

/// Rank, `c₁²`, `c₂` and generic-fiber degree of a bundle on a surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantData {
    pub r: i64,
    pub c1_sq: i64,
    pub c2: i64,
    pub fiber_degree: i64,
}

impl DiscriminantData {
    /// `Δ = 2r·c₂ − (r−1)·c₁²`.
    pub fn discriminant(&self) -> i64 {
        2 * self.r * self.c2 - (self.r - 1) * self.c1_sq
    }

    /// `gcd(fiber degree, rank)`.
    pub fn e(&self) -> i64 {
        e_invariant(self.fiber_degree, self.r as u64).expect("rank is positive") as i64
    }

    pub fn report(&self) -> DiscriminantReport {
        DiscriminantReport {
            r: self.r,
            c1_sq: self.c1_sq,
            c2: self.c2,
            fiber_degree: self.fiber_degree,
            discriminant: self.discriminant(),
            e: self.e(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscriminantReport {
    pub r: i64,
    pub c1_sq: i64,
    pub c2: i64,
    pub fiber_degree: i64,
    #[serde(rename = "Delta")]
    pub discriminant: i64,
    pub e: i64,
}

pub fn discriminant(data: &DiscriminantData) -> i64 {
    data.discriminant()
}

/// Lower bound on `Δ(V)` for a rank-`r` bundle that is stable of degree
/// `n_deg` on the generic fiber: `(r² − e)d`, plus `2(e − 1)` over P¹.
pub fn cthm1_bound(r: i64, n_deg: i64, d: i64, over_p1: bool) -> Result<i64> {
    require_positive("r", r)?;
    require_positive("d", d)?;
    let e = e_invariant(n_deg, r as u64)? as i64;
    let mut bound = (r * r - e) * d;
    if over_p1 {
        bound += 2 * (e - 1);
    }
    Ok(bound)
}

/// Upper bound on `γ = deg g_*O_C` for a degree-`e` spectral cover:
/// `0` in general and `−(e − 1)` over P¹.
pub fn gamma_bound(e: i64, g: i64, over_p1: bool) -> Result<i64> {
    require_positive("e", e)?;
    if over_p1 && g != 0 {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            requirement: "base P^1 has genus 0",
        });
    }
    Ok(if over_p1 { -(e - 1) } else { 0 })
}

/// `χ(Y; End V)` computed through the Leray spectral sequence:
/// `χ(f_*End V) − χ(R¹f_*End V) = 2γ − t + ed`, with `t` the length of the
/// torsion in `R¹f_*End V`.
pub fn chi_end_via_leray(e: i64, d: i64, gamma: i64, torsion: u64) -> i64 {
    2 * gamma - torsion as i64 + e * d
}

/// `Δ(V)` recovered from the spectral data by equating the Leray value of
/// `χ(End V)` with Riemann–Roch `r²d − Δ`.
pub fn discriminant_from_spectral_data(r: i64, e: i64, d: i64, gamma: i64, torsion: u64) -> i64 {
    r * r * d - chi_end_via_leray(e, d, gamma, torsion)
}

/// Chern data of the extension `0 → O_Y(−D) → V → f^*W → 0` attached to a
/// rank-`r` subbundle `W ⊂ R¹f_*O_Y(−D)` of degree `δ_W`:
/// rank `r + 1`, fiber degree `−n`, `c₁² = D² − 2nδ_W`, `c₂ = −nδ_W`.
pub fn universal_extension(
    n: i64,
    r: i64,
    delta_w: i64,
    delta: i64,
    d: i64,
) -> Result<DiscriminantData> {
    require_positive("n", n)?;
    require_positive("d", d)?;
    if r < 1 || r >= n {
        return Err(Error::RankOutOfRange {
            r: r.max(0) as usize,
            n: n as usize,
        });
    }
    let d_squared = d_squared_from_delta(n, d, delta);
    let data = DiscriminantData {
        r: r + 1,
        c1_sq: d_squared - 2 * n * delta_w,
        c2: -n * delta_w,
        fiber_degree: -n,
    };
    assert_eq!(
        data.discriminant(),
        extension_discriminant(n, r, delta_w, delta, d),
        "Chern-class and closed-form discriminants disagree"
    );
    Ok(data)
}

/// `Δ = −2nδ_W + 2rδ + r(n+2)d`.
pub fn extension_discriminant(n: i64, r: i64, delta_w: i64, delta: i64, d: i64) -> i64 {
    -2 * n * delta_w + 2 * r * delta + r * (n + 2) * d
}

/// The subbundle slope bound obtained by applying the discriminant bound to
/// the universal extension and solving for `μ(W) − μ`.
///
/// `Δ` of the extension is affine in `X = nδ_W − rδ = nr(μ(W) − μ)`; the
/// affine coefficients are read off two evaluations of
/// [`universal_extension`], then `Δ(X) ≥ bound` is solved for `X`.
pub fn slope_gap_from_cthm1(n: i64, r: i64, d: i64, over_p1: bool) -> Result<Rational> {
    let at_zero = universal_extension(n, r, 0, 0, d)?.discriminant();
    // δ_W = 1, δ = 0 gives X = n.
    let at_n = universal_extension(n, r, 1, 0, d)?.discriminant();
    let slope = Rational::new(at_n - at_zero, n);
    let bound = cthm1_bound(r + 1, -n, d, over_p1)?;
    // slope < 0, so at_zero + slope·X ≥ bound  ⟺  X ≤ (bound − at_zero)/slope.
    debug_assert!(slope < Rational::from_integer(0));
    let x_max = (Rational::from_integer(bound - at_zero)) / slope;
    Ok(x_max / (n * r))
}

/// `D²` thresholds for an `n`-section: above `h1_bound`, `h¹(D) = 0`; above
/// `basepoint_bound`, `|D|` is base-point free.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct D2Thresholds {
    pub n: i64,
    pub d: i64,
    pub g: i64,
    pub h1_bound: i64,
    pub basepoint_bound: i64,
    /// The sharper genus-zero forms were used (even `n`, `g = 0`).
    pub refined_over_p1: bool,
    /// Characteristic the bounds must avoid, if any.
    pub excluded_characteristic: Option<i64>,
}

pub fn d2_thresholds(n: i64, d: i64, g: i64) -> Result<D2Thresholds> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n,
            requirement: "must be at least 2",
        });
    }
    require_positive("d", d)?;
    if g < 0 {
        return Err(Error::InvalidParameter {
            name: "g",
            value: g,
            requirement: "genus must be nonnegative",
        });
    }
    let (h1_bound, basepoint_bound, refined, excluded) = if n.is_odd() {
        let h1 = (2 * n - 3) * d + 4 * n * (g - 1);
        (h1, h1 + 4, false, None)
    } else if g == 0 {
        (
            (2 * n - 2) * d - 4 * n - 2,
            (2 * n - 2) * d - 4 * n + 2,
            true,
            Some(2),
        )
    } else {
        let h1 = (2 * n - 2) * d + 4 * n * (g - 1);
        (h1, h1 + 4, false, Some(2))
    };
    Ok(D2Thresholds {
        n,
        d,
        g,
        h1_bound,
        basepoint_bound,
        refined_over_p1: refined,
        excluded_characteristic: excluded,
    })
}
