//! Intersection numbers and cohomology on projective bundles over P¹.
//!
//! `P = P(O ⊕ O(−a₂) ⊕ … ⊕ O(−aₙ))` of dimension `n` has Picard group
//! spanned by `ξ = c₁(O_P(1))` and the fiber class `P`, with
//! `φ_*O_P(1) = O ⊕ O(−a₂) ⊕ … ⊕ O(−aₙ)`. The ring relations are
//!
//! ```text
//! ξⁿ = −Σ aᵢ,   ξⁿ⁻¹·P = 1,   P² = 0.
//! ```
//!
//! For `n = 2` this is the Hirzebruch surface `F_a` with `ξ = σ₀`. The
//! relation for `n ≥ 4` is the same tautological identity; only `n = 2, 3`
//! are checked against worked values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::p1bundles::{Cohomology, SplittingType};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SpaceRepr")]
pub struct ProjBundleSpace {
    drops: Vec<i64>,
}

#[derive(Deserialize)]
struct SpaceRepr {
    drops: Vec<i64>,
}

impl TryFrom<SpaceRepr> for ProjBundleSpace {
    type Error = Error;

    fn try_from(r: SpaceRepr) -> Result<Self> {
        ProjBundleSpace::new(r.drops)
    }
}

/// `x·ξ + y·P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceClass {
    pub x: i64,
    pub y: i64,
}

impl SurfaceClass {
    pub const XI: SurfaceClass = SurfaceClass { x: 1, y: 0 };
    pub const FIBER: SurfaceClass = SurfaceClass { x: 0, y: 1 };

    pub fn new(x: i64, y: i64) -> Self {
        SurfaceClass { x, y }
    }
}

impl ProjBundleSpace {
    /// Drops may be given in any order; they are sorted ascending.
    pub fn new(mut drops: Vec<i64>) -> Result<Self> {
        if drops.is_empty() {
            return Err(Error::InvalidParameter {
                name: "drops",
                value: 0,
                requirement: "need at least one drop (rank n >= 2)",
            });
        }
        if let Some(&a) = drops.iter().find(|&&a| a < 0) {
            return Err(Error::InvalidParameter {
                name: "drop",
                value: a,
                requirement: "must be nonnegative",
            });
        }
        drops.sort_unstable();
        Ok(ProjBundleSpace { drops })
    }

    /// `F_a`.
    pub fn hirzebruch(a: i64) -> Result<Self> {
        ProjBundleSpace::new(vec![a])
    }

    pub fn drops(&self) -> &[i64] {
        &self.drops
    }

    /// Rank of the bundle, which is also the dimension of `P`.
    pub fn rank(&self) -> usize {
        self.drops.len() + 1
    }

    pub fn drop_sum(&self) -> i64 {
        self.drops.iter().sum()
    }

    pub fn max_drop(&self) -> i64 {
        *self.drops.last().expect("nonempty")
    }

    /// `φ_*O_P(1)`.
    pub fn pushforward(&self) -> SplittingType {
        SplittingType::from_drops(&self.drops)
    }

    /// Intersection number of `n` divisor classes.
    pub fn intersect(&self, classes: &[SurfaceClass]) -> Result<i64> {
        if classes.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: classes.len(),
            });
        }
        // Monomials with two or more P's vanish.
        let all_xi: i64 = classes.iter().map(|c| c.x).product();
        let one_p: i64 = (0..classes.len())
            .map(|j| {
                classes[j].y
                    * classes
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .map(|(_, c)| c.x)
                        .product::<i64>()
            })
            .sum();
        Ok(-self.drop_sum() * all_xi + one_p)
    }

    /// `ω_{P/P¹} = −n·ξ − (Σ aᵢ)·P`.
    pub fn relative_dualizing(&self) -> SurfaceClass {
        SurfaceClass::new(-(self.rank() as i64), -self.drop_sum())
    }

    /// `K_P = ω_{P/P¹} − 2P`.
    pub fn canonical(&self) -> SurfaceClass {
        let w = self.relative_dualizing();
        SurfaceClass::new(w.x, w.y - 2)
    }

    /// `h⁰, h¹` of `O_P(kξ + tP)` via `φ_*O_P(k) = Sym^k(⊕ O(−aᵢ))`.
    pub fn leray_cohomology(&self, k: i64, t: i64) -> Result<Cohomology> {
        if k < 0 {
            return Err(Error::NegativeFiberDegree(k));
        }
        Ok(self.pushforward().sym_power(k as usize).cohomology(t))
    }

    /// `|ξ + tP|` is base point free iff `t ≥ max aᵢ`.
    pub fn base_locus_empty(&self, t: i64) -> bool {
        t >= self.max_drop()
    }
}

/// `Y·σ₀ = (3σ₀ + (N−3a)f)·σ₀` on `F_{b−a}`, which is `N − 3b`.
pub fn sigma0_incidence(a: i64, b: i64, n_big: i64) -> i64 {
    let f = ProjBundleSpace { drops: vec![b - a] };
    let sigma = SurfaceClass::XI;
    let y = SurfaceClass::new(3, n_big - 3 * a);
    f.intersect(&[y, sigma]).expect("two classes on a surface")
}

/// Whether `|D + tF|` has base points, as far as the criteria decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BaseLocus {
    Empty,
    Nonempty,
    Undetermined,
}

/// Numerology of a double or triple cover `Y ⊂ P` of `P¹`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverNumerology {
    /// Degree of the cover, 2 or 3.
    pub n: i64,
    pub a: i64,
    pub b: Option<i64>,
    #[serde(rename = "N")]
    pub big_n: i64,
    pub d: i64,
    /// `K_Y = (N − Σ drops − 2)·F`.
    pub canonical_coefficient: i64,
    /// `D² = D_0²`.
    pub d_squared: i64,
    /// `D·F`.
    pub fiber_degree: i64,
    /// Largest `t` with `H¹(O_Y(D + tF)) ≠ 0`.
    pub h1_threshold: i64,
    /// Largest `t` at which `|D + tF|` can have base points.
    pub basepoint_threshold: i64,
    /// The criteria certify base points for all `t ≤ basepoint_threshold`.
    pub basepoints_certified: bool,
}

impl CoverNumerology {
    /// `D_t² = D² + 2t·(D·F)`.
    pub fn d_squared_at(&self, t: i64) -> i64 {
        self.d_squared + 2 * t * self.fiber_degree
    }

    pub fn h1_nonzero(&self, t: i64) -> bool {
        t <= self.h1_threshold
    }

    pub fn base_locus(&self, t: i64) -> BaseLocus {
        if t > self.basepoint_threshold {
            BaseLocus::Empty
        } else if self.basepoints_certified {
            BaseLocus::Nonempty
        } else {
            BaseLocus::Undetermined
        }
    }

    pub fn space(&self) -> ProjBundleSpace {
        let drops = match self.b {
            Some(b) => vec![self.a, b],
            None => vec![self.a],
        };
        ProjBundleSpace::new(drops).expect("validated drops")
    }

    /// `D_t²` from the ambient ring: `Y·(ξ + tP)²` with `Y = 3ξ + NP` for
    /// triple covers, `2(σ₀ + tf)²` for double covers of `F_a`.
    pub fn d_squared_by_intersection(&self, t: i64) -> i64 {
        let space = self.space();
        let dt = SurfaceClass::new(1, t);
        if self.n == 2 {
            2 * space.intersect(&[dt, dt]).expect("surface")
        } else {
            let y = SurfaceClass::new(self.n, self.big_n);
            space.intersect(&[dt, dt, y]).expect("threefold")
        }
    }
}

fn require(ok: bool, name: &'static str, value: i64, requirement: &'static str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            requirement,
        })
    }
}

/// Double cover `Y → F_a` with `d = N − a` and `D` the pullback of `σ₀`.
pub fn double_cover(a: i64, big_n: i64) -> Result<CoverNumerology> {
    require(a >= 0, "a", a, "must be nonnegative")?;
    require(big_n > 2 * a, "N", big_n, "must satisfy N >= 2a + 1")?;
    let d = big_n - a;
    require(d >= 2, "N", big_n, "must satisfy N - a >= 2")?;
    Ok(CoverNumerology {
        n: 2,
        a,
        b: None,
        big_n,
        d,
        canonical_coefficient: big_n - a - 2,
        d_squared: -2 * a,
        fiber_degree: 2,
        h1_threshold: a - 2,
        basepoint_threshold: a - 1,
        basepoints_certified: true,
    })
}

/// Triple cover `Y ∈ |3ξ + NP|` in `P(O ⊕ O(−a) ⊕ O(−b))`, `d = N − a − b`.
pub fn triple_cover(a: i64, b: i64, big_n: i64) -> Result<CoverNumerology> {
    require(a >= 0, "a", a, "must be nonnegative")?;
    require(b >= a, "b", b, "must satisfy b >= a")?;
    require(big_n >= 3 * b, "N", big_n, "must satisfy N >= 3b")?;
    if a == b {
        require(
            big_n > 3 * b,
            "N",
            big_n,
            "must satisfy N >= 3b + 1 when a = b",
        )?;
    }
    if a == 0 && b == 0 {
        require(big_n >= 2, "N", big_n, "must satisfy N >= 2 when a = b = 0")?;
    }
    let d = big_n - a - b;
    Ok(CoverNumerology {
        n: 3,
        a,
        b: Some(b),
        big_n,
        d,
        canonical_coefficient: big_n - a - b - 2,
        d_squared: -2 * a - 2 * b + d,
        fiber_degree: 3,
        h1_threshold: b - 2,
        basepoint_threshold: b - 1,
        basepoints_certified: a < b && sigma0_incidence(a, b, big_n) > 0,
    })
}

/// A smooth rational curve on a rational elliptic surface with `D·F = n`,
/// modelled on a Hirzebruch surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalSurfaceDivisor {
    pub n: i64,
    pub hirzebruch_index: i64,
    /// `x·σ + y·F` on `F_{hirzebruch_index}`.
    pub class: SurfaceClass,
    pub linear_system: String,
    pub d_squared: i64,
    pub fiber_degree: i64,
    pub chi: i64,
    pub pushforward: SplittingType,
}

pub fn rational_surface_divisor(n: i64) -> Result<RationalSurfaceDivisor> {
    require(n >= 1, "n", n, "must be at least 1")?;
    let (index, class, linear_system) = match n {
        1 => (1, SurfaceClass::XI, "section".to_string()),
        2 => (1, SurfaceClass::FIBER, "fiber".to_string()),
        _ if n % 2 == 0 => (
            2,
            SurfaceClass::new(1, n / 2),
            format!("|s+{}F| on F_2", n / 2),
        ),
        _ => (
            1,
            SurfaceClass::new(1, (n - 1) / 2),
            format!("|s+{}F| on F_1", (n - 1) / 2),
        ),
    };
    let d_squared = ProjBundleSpace::hirzebruch(index)?.intersect(&[class, class])?;
    if d_squared != n - 2 {
        return Err(Error::Inconsistent(format!(
            "D^2 = {d_squared}, expected {}",
            n - 2
        )));
    }
    // Adjunction with K = −F: −2 = D² − D·F.
    let fiber_degree = d_squared + 2;
    // Riemann–Roch: χ = ½(D² − D·K) + 1.
    let chi = (d_squared + fiber_degree) / 2 + 1;
    Ok(RationalSurfaceDivisor {
        n,
        hirzebruch_index: index,
        class,
        linear_system,
        d_squared,
        fiber_degree,
        chi,
        pushforward: SplittingType::uniform(0, n as usize)?,
    })
}
