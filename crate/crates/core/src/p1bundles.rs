//! Split vector bundles on the projective line.
//!
//! A bundle `O(α₁) ⊕ … ⊕ O(αₙ)` is stored as its [`SplittingType`], the
//! ascending list of twists. Degree and slope are always derived from the
//! list. All bounds are exact rationals.
//!
//! Two sign conventions meet here. The bundle whose splitting type is
//! constrained by the slope inequalities is `R¹f_*O_Y(−D)`; the model
//! spaces are built from `f_*O_Y(D) = ⊕ O(−aᵢ)`. Relative duality links them
//! by `R¹f_*O_Y(−D) ≅ (f_*O_Y(D))^∨ ⊗ O(−d)`, see
//! [`SplittingType::r1_from_pushforward`] and
//! [`SplittingType::normalized_r1`].

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// Ascending twists of a direct sum of line bundles on P¹.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SplittingType(Vec<i64>);

impl TryFrom<Vec<i64>> for SplittingType {
    type Error = Error;

    fn try_from(twists: Vec<i64>) -> Result<Self> {
        SplittingType::new(twists)
    }
}

impl From<SplittingType> for Vec<i64> {
    fn from(s: SplittingType) -> Self {
        s.0
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `h⁰`, `h¹` and `χ` of a split bundle twisted by `O(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cohomology {
    pub h0: u64,
    pub h1: u64,
    pub chi: i64,
}

impl SplittingType {
    /// Builds a splitting type from twists in any order; the result is sorted.
    pub fn new(mut twists: Vec<i64>) -> Result<Self> {
        if twists.is_empty() {
            return Err(Error::EmptySplittingType);
        }
        twists.sort_unstable();
        Ok(SplittingType(twists))
    }

    /// `O(a)^n`.
    pub fn uniform(a: i64, n: usize) -> Result<Self> {
        SplittingType::new(vec![a; n])
    }

    /// `R¹f_*O_Y(−D)` from `f_*O_Y(D)` and `d = χ(O_Y)`.
    pub fn r1_from_pushforward(pushforward: &SplittingType, d: i64) -> SplittingType {
        pushforward.dual().twist(-d)
    }

    /// `f_*O_Y(D)` from `R¹f_*O_Y(−D)` and `d = χ(O_Y)`.
    pub fn pushforward_from_r1(r1: &SplittingType, d: i64) -> SplittingType {
        r1.twist(d).dual()
    }

    /// The `R¹` splitting type for the normalization
    /// `f_*O_Y(D) = O ⊕ O(−a₂) ⊕ … ⊕ O(−aₙ)`, i.e. `(−d, a₂−d, …, aₙ−d)`.
    pub fn normalized_r1(drops: &[i64], d: i64) -> SplittingType {
        let mut twists = Vec::with_capacity(drops.len() + 1);
        twists.push(-d);
        twists.extend(drops.iter().map(|a| a - d));
        twists.sort_unstable();
        SplittingType(twists)
    }

    /// The pushforward splitting type `(−aₙ, …, −a₂, 0)` of `O ⊕ O(−a₂) ⊕ …`.
    pub fn from_drops(drops: &[i64]) -> SplittingType {
        let mut twists: Vec<i64> = std::iter::once(0).chain(drops.iter().map(|a| -a)).collect();
        twists.sort_unstable();
        SplittingType(twists)
    }

    pub fn twists(&self) -> &[i64] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn slope(&self) -> Rational {
        Rational::new(self.degree(), self.rank() as i64)
    }

    pub fn min_twist(&self) -> i64 {
        self.0[0]
    }

    pub fn max_twist(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn dual(&self) -> SplittingType {
        SplittingType(self.0.iter().rev().map(|a| -a).collect())
    }

    pub fn twist(&self, t: i64) -> SplittingType {
        SplittingType(self.0.iter().map(|a| a + t).collect())
    }

    pub fn tensor(&self, other: &SplittingType) -> SplittingType {
        let mut twists: Vec<i64> = self
            .0
            .iter()
            .flat_map(|a| other.0.iter().map(move |b| a + b))
            .collect();
        twists.sort_unstable();
        SplittingType(twists)
    }

    /// Cohomology of `S ⊗ O(t)`, summand by summand.
    pub fn cohomology(&self, t: i64) -> Cohomology {
        let mut h0 = 0u64;
        let mut h1 = 0u64;
        let mut chi = 0i64;
        for &a in &self.0 {
            let m = a + t + 1;
            chi += m;
            if m > 0 {
                h0 += m as u64;
            } else {
                h1 += (-m) as u64;
            }
        }
        Cohomology { h0, h1, chi }
    }

    /// `Sym^k`: one summand `Σ mⱼαⱼ` per monomial of degree `k`.
    pub fn sym_power(&self, k: usize) -> SplittingType {
        let mut out = Vec::new();
        sym_rec(&self.0, k, 0, &mut out);
        out.sort_unstable();
        SplittingType(out)
    }

    /// `max − min ≤ 1`, i.e. `O(a)^k ⊕ O(a−1)^{n−k}` for some `a` and `k > 0`.
    pub fn is_rigid(&self) -> bool {
        self.max_twist() - self.min_twist() <= 1
    }

    pub fn is_semistable(&self) -> bool {
        self.max_twist() == self.min_twist()
    }

    fn check_sub_rank(&self, r: usize) -> Result<()> {
        let n = self.rank();
        if r == 0 || r >= n {
            return Err(Error::RankOutOfRange { r, n });
        }
        Ok(())
    }

    /// Mean of the top `r` twists minus the slope: the maximal `μ(W) − μ`
    /// over rank-`r` subbundles `W`.
    pub fn subbundle_slope_gap(&self, r: usize) -> Result<Rational> {
        self.check_sub_rank(r)?;
        let n = self.rank();
        let top: i64 = self.0[n - r..].iter().sum();
        Ok(Rational::new(top, r as i64) - self.slope())
    }

    /// Slope minus the mean of the bottom `r` twists: the maximal `μ − μ(Q)`
    /// over rank-`r` quotient bundles `Q`.
    pub fn quotient_slope_gap(&self, r: usize) -> Result<Rational> {
        self.check_sub_rank(r)?;
        let bottom: i64 = self.0[..r].iter().sum();
        Ok(self.slope() - Rational::new(bottom, r as i64))
    }
}

fn sym_rec(twists: &[i64], k: usize, acc: i64, out: &mut Vec<i64>) {
    match twists.split_first() {
        None => {
            if k == 0 {
                out.push(acc);
            }
        }
        Some((&a, rest)) => {
            if rest.is_empty() {
                out.push(acc + a * k as i64);
                return;
            }
            for m in 0..=k {
                sym_rec(rest, k - m, acc + a * m as i64, out);
            }
        }
    }
}

/// Whether a slope bound constrains subbundles or quotient bundles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sub,
    Quot,
}

/// The `e` entering the rank-`r` slope bound: `gcd(r+1, n)` for subbundles,
/// `gcd(n−r+1, n)` for quotients.
pub fn bound_e(n: usize, r: usize, side: Side) -> usize {
    match side {
        Side::Sub => (r + 1).gcd(&n),
        Side::Quot => (n - r + 1).gcd(&n),
    }
}

/// Upper bound on [`SplittingType::subbundle_slope_gap`] (side `Sub`) or
/// [`SplittingType::quotient_slope_gap`] (side `Quot`) for the `R¹` bundle of
/// an `n`-section on a fibration with `χ(O_Y) = d`:
///
/// `(r(n−r) + e − 1) d / (2nr)`, minus `(e − 1)/(nr)` over P¹.
pub fn admissibility_bound(
    n: usize,
    r: usize,
    d: i64,
    side: Side,
    over_p1: bool,
) -> Result<Rational> {
    if r == 0 || r >= n {
        return Err(Error::RankOutOfRange { r, n });
    }
    if d < 1 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            requirement: "must be at least 1",
        });
    }
    let e = bound_e(n, r, side) as i64;
    let (n, r) = (n as i64, r as i64);
    let mut bound = Rational::new((r * (n - r) + e - 1) * d, 2 * n * r);
    if over_p1 {
        bound -= Rational::new(e - 1, n * r);
    }
    Ok(bound)
}

/// The two rank-one gap inequalities and the bound they imply on `αₙ − α₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkBounds {
    /// `nαₙ − Σαᵢ`.
    pub top_gap: i64,
    /// `(n−1)d/2` for odd `n`, `nd/2 − 1` for even `n`.
    pub top_gap_limit: Rational,
    pub top_gap_ok: bool,
    /// `Σαᵢ − nα₁`.
    pub bottom_gap: i64,
    /// `(n−1)(d−1)`.
    pub bottom_gap_limit: i64,
    pub bottom_gap_ok: bool,
    /// `(top_gap_limit + bottom_gap_limit)/n`, the sharper bound on `αₙ − α₁`.
    pub total_gap_bound: Rational,
    /// `3d/2`, the coarse form of the same bound.
    pub coarse_gap_bound: Rational,
}

pub fn top_gap_limit(n: usize, d: i64) -> Rational {
    let n = n as i64;
    if n % 2 == 1 {
        Rational::new((n - 1) * d, 2)
    } else {
        Rational::new(n * d, 2) - 1
    }
}

pub fn bottom_gap_limit(n: usize, d: i64) -> i64 {
    (n as i64 - 1) * (d - 1)
}

pub fn total_gap_bound(n: usize, d: i64) -> Rational {
    (top_gap_limit(n, d) + bottom_gap_limit(n, d)) / n as i64
}

pub fn remark_bounds(s: &SplittingType, d: i64) -> Result<RemarkBounds> {
    if d < 1 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            requirement: "must be at least 1",
        });
    }
    let n = s.rank();
    let ni = n as i64;
    let top_gap = ni * s.max_twist() - s.degree();
    let bottom_gap = s.degree() - ni * s.min_twist();
    let top_limit = top_gap_limit(n, d);
    let bottom_limit = bottom_gap_limit(n, d);
    Ok(RemarkBounds {
        top_gap,
        top_gap_limit: top_limit,
        top_gap_ok: top_gap >= 0 && Rational::from_integer(top_gap) <= top_limit,
        bottom_gap,
        bottom_gap_limit: bottom_limit,
        bottom_gap_ok: bottom_gap >= 0 && bottom_gap <= bottom_limit,
        total_gap_bound: total_gap_bound(n, d),
        coarse_gap_bound: Rational::new(3 * d, 2),
    })
}

/// One failed inequality, as reported by [`admissibility_violations`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub bound: String,
    pub value: Rational,
    pub limit: Rational,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} > {}", self.bound, self.value, self.limit)
    }
}

/// Every P¹ slope inequality (both sides, all ranks) and both rank-one gap
/// inequalities that `s` fails for the given `d`. Empty means admissible.
pub fn admissibility_violations(s: &SplittingType, d: i64) -> Result<Vec<Violation>> {
    let n = s.rank();
    let mut out = Vec::new();
    for r in 1..n {
        let gap = s.subbundle_slope_gap(r)?;
        let limit = admissibility_bound(n, r, d, Side::Sub, true)?;
        if gap > limit {
            out.push(Violation {
                bound: format!("subbundle slope bound (rank {r})"),
                value: gap,
                limit,
            });
        }
        let gap = s.quotient_slope_gap(r)?;
        let limit = admissibility_bound(n, r, d, Side::Quot, true)?;
        if gap > limit {
            out.push(Violation {
                bound: format!("quotient slope bound (rank {r})"),
                value: gap,
                limit,
            });
        }
    }
    let rb = remark_bounds(s, d)?;
    if !rb.top_gap_ok {
        out.push(Violation {
            bound: "top gap bound n*a_n - deg".to_string(),
            value: rb.top_gap.into(),
            limit: rb.top_gap_limit,
        });
    }
    if !rb.bottom_gap_ok {
        out.push(Violation {
            bound: "bottom gap bound deg - n*a_1".to_string(),
            value: rb.bottom_gap.into(),
            limit: rb.bottom_gap_limit.into(),
        });
    }
    Ok(out)
}

pub fn is_admissible(s: &SplittingType, d: i64) -> Result<bool> {
    Ok(admissibility_violations(s, d)?.is_empty())
}

/// The box `[lo, hi]` every admissible twist lies in: with `c = ⌈δ/n⌉` and
/// `W = n·B` for the total gap bound `B`, `α₁ ∈ [c − W, c]` and
/// `αₙ ∈ [c, c + W]`.
pub fn search_window(n: usize, d: i64, delta: i64) -> (i64, i64) {
    let c = Integer::div_ceil(&delta, &(n as i64));
    let w = (total_gap_bound(n, d) * n as i64).ceil().to_integer();
    (c - w, c + w)
}

/// All admissible splitting types of rank `n` and degree `delta`, in
/// ascending lexicographic order.
pub fn enumerate_admissible(n: usize, d: i64, delta: i64) -> Result<Vec<SplittingType>> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n as i64,
            requirement: "must be at least 2",
        });
    }
    if d < 1 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            requirement: "must be at least 1",
        });
    }
    let mut out = Vec::new();
    for candidate in window_candidates(n, d, delta) {
        if is_admissible(&candidate, d)? {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// Every sorted tuple of rank `n` summing to `delta` inside [`search_window`].
pub fn window_candidates(n: usize, d: i64, delta: i64) -> Vec<SplittingType> {
    let (lo, hi) = search_window(n, d, delta);
    let c = Integer::div_ceil(&delta, &(n as i64));
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    for first in lo..=c {
        prefix.clear();
        prefix.push(first);
        fill_sorted(&mut prefix, n, delta - first, hi, c, &mut out);
    }
    out
}

fn fill_sorted(
    prefix: &mut Vec<i64>,
    n: usize,
    remaining: i64,
    hi: i64,
    c: i64,
    out: &mut Vec<SplittingType>,
) {
    let left = (n - prefix.len()) as i64;
    let last = *prefix.last().expect("prefix starts nonempty");
    if left == 0 {
        if remaining == 0 && last >= c {
            out.push(SplittingType(prefix.clone()));
        }
        return;
    }
    if remaining < left * last || remaining > left * hi {
        return;
    }
    for next in last..=hi {
        if next * left > remaining {
            break;
        }
        prefix.push(next);
        fill_sorted(prefix, n, remaining - next, hi, c, out);
        prefix.pop();
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
