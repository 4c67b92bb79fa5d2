//! Semistable bundles on an elliptic curve, as combinatorial data.
//!
//! A semistable bundle of rank `r` and degree `n` with `e = gcd(n, r)`
//! decomposes as `⊕_λ ⊕ᵢ V_{n₀,r₀,dᵢ;λ}`, where `(n₀, r₀) = (n/e, r/e)` and
//! `λ` runs over distinct determinants. Only the multiplicities matter for
//! `dim End`: `Hom(V_{d₁;λ₁}, V_{d₂;λ₂})` vanishes for `λ₁ ≠ λ₂` and has
//! dimension `min(d₁, d₂)` otherwise. Determinants are therefore opaque
//! block indices here.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest `e` accepted by [`verify_reg_lemma`].
pub const MAX_EXHAUSTIVE_E: u64 = 16;

/// `gcd(|n|, r)`, with `gcd(0, r) = r`.
pub fn e_invariant(n: i64, r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidParameter {
            name: "r",
            value: 0,
            requirement: "rank must be positive",
        });
    }
    Ok(n.unsigned_abs().gcd(&r))
}

/// Jordan–Hölder multiplicities, one partition per determinant.
///
/// Serializes as a list of integer lists. The canonical form sorts parts
/// descending within each block and blocks descending, so equal
/// decompositions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u64>>", into = "Vec<Vec<u64>>")]
pub struct Decomposition(Vec<Vec<u64>>);

impl TryFrom<Vec<Vec<u64>>> for Decomposition {
    type Error = Error;

    fn try_from(blocks: Vec<Vec<u64>>) -> Result<Self> {
        Decomposition::new(blocks)
    }
}

impl From<Decomposition> for Vec<Vec<u64>> {
    fn from(d: Decomposition) -> Self {
        d.0
    }
}

impl Decomposition {
    pub fn new(mut blocks: Vec<Vec<u64>>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::Parse(
                "a decomposition needs at least one block".into(),
            ));
        }
        for block in &mut blocks {
            if block.is_empty() || block.contains(&0) {
                return Err(Error::Parse(
                    "every block must be a nonempty partition with positive parts".into(),
                ));
            }
            block.sort_unstable_by(|a, b| b.cmp(a));
        }
        blocks.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Decomposition(blocks))
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.0
    }

    /// `e = Σ_λ d_λ`, the total multiplicity.
    pub fn e(&self) -> u64 {
        self.0.iter().flatten().sum()
    }

    /// `Σ_λ Σ_{i,j} min(dᵢ, dⱼ)` over ordered pairs within each block.
    pub fn end_dimension(&self) -> u64 {
        self.0
            .iter()
            .map(|block| {
                block
                    .iter()
                    .flat_map(|&x| block.iter().map(move |&y| x.min(y)))
                    .sum::<u64>()
            })
            .sum()
    }

    /// `End` is commutative exactly when each `V(λ)` is indecomposable.
    pub fn is_commutative(&self) -> bool {
        self.0.iter().all(|block| block.len() == 1)
    }
}

/// A semistable bundle: the stable building block `(n₀, r₀)` and the
/// multiplicity data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtiyahType {
    n0: i64,
    r0: u64,
    blocks: Decomposition,
}

impl AtiyahType {
    pub fn new(n0: i64, r0: u64, blocks: Decomposition) -> Result<Self> {
        if r0 == 0 {
            return Err(Error::InvalidParameter {
                name: "r0",
                value: 0,
                requirement: "rank must be positive",
            });
        }
        if n0.unsigned_abs().gcd(&r0) != 1 {
            return Err(Error::InvalidParameter {
                name: "n0",
                value: n0,
                requirement: "must be coprime to r0",
            });
        }
        Ok(AtiyahType { n0, r0, blocks })
    }

    pub fn n0(&self) -> i64 {
        self.n0
    }

    pub fn r0(&self) -> u64 {
        self.r0
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.blocks
    }

    pub fn e(&self) -> u64 {
        self.blocks.e()
    }

    pub fn rank(&self) -> u64 {
        self.e() * self.r0
    }

    pub fn degree(&self) -> i64 {
        self.e() as i64 * self.n0
    }

    pub fn end_dimension(&self) -> u64 {
        self.blocks.end_dimension()
    }

    pub fn is_commutative(&self) -> bool {
        self.blocks.is_commutative()
    }
}

/// Partitions of `n` as descending lists, parts bounded by `max_part`.
fn partitions(n: u64, max_part: u64) -> Vec<Vec<u64>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every decomposition with total multiplicity `e`: multisets of nonempty
/// partitions whose sizes add up to `e`.
pub fn all_decompositions(e: u64) -> Vec<Decomposition> {
    // Label every partition of every size 1..=e, then pick a multiset of
    // labels with nonincreasing index so each unordered set of blocks
    // appears once.
    let labelled: Vec<Vec<u64>> = (1..=e).flat_map(|k| partitions(k, k)).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    pick_blocks(&labelled, labelled.len(), e, &mut chosen, &mut out);
    out
}

fn pick_blocks(
    labelled: &[Vec<u64>],
    limit: usize,
    remaining: u64,
    chosen: &mut Vec<usize>,
    out: &mut Vec<Decomposition>,
) {
    if remaining == 0 {
        let blocks = chosen.iter().map(|&i| labelled[i].clone()).collect();
        out.push(Decomposition::new(blocks).expect("generated blocks are valid"));
        return;
    }
    for i in 0..limit {
        let size: u64 = labelled[i].iter().sum();
        if size <= remaining {
            chosen.push(i);
            pick_blocks(labelled, i + 1, remaining - size, chosen, out);
            chosen.pop();
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegLemmaReport {
    pub e: u64,
    pub n0: i64,
    pub r0: u64,
    pub types_checked: usize,
    pub commutative_types: usize,
    pub counterexamples: Vec<Decomposition>,
}

impl RegLemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `dim End ≥ e`, with equality iff `End` is commutative, over every
/// semistable type of rank `e·r₀` and degree `e·n₀`.
pub fn verify_reg_lemma(e: u64, n0: i64, r0: u64) -> Result<RegLemmaReport> {
    if e == 0 {
        return Err(Error::InvalidParameter {
            name: "e",
            value: 0,
            requirement: "must be positive",
        });
    }
    if e > MAX_EXHAUSTIVE_E {
        return Err(Error::CapExceeded {
            what: "e",
            requested: e,
            cap: MAX_EXHAUSTIVE_E,
        });
    }
    let mut report = RegLemmaReport {
        e,
        n0,
        r0,
        types_checked: 0,
        commutative_types: 0,
        counterexamples: Vec::new(),
    };
    for blocks in all_decompositions(e) {
        let t = AtiyahType::new(n0, r0, blocks)?;
        let gcd_e = e_invariant(t.degree(), t.rank())?;
        let dim = t.end_dimension();
        let commutative = t.is_commutative();
        report.types_checked += 1;
        if commutative {
            report.commutative_types += 1;
        }
        if gcd_e != e || dim < e || (dim == e) != commutative {
            report.counterexamples.push(t.blocks.clone());
        }
    }
    Ok(report)
}
