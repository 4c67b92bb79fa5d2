//! Even lattices, Pontrjagin squares modulo `2n`, and reflection orbits on
//! `Λ/nΛ`.
//!
//! The lattice of interest is `Λ(d) = (2d−2)U ⊕ d(−E8)`, of rank `12d − 4`.
//! A class `α ∈ Λ/nΛ` has Pontrjagin square `℘(α) = λ² mod 2n` for any
//! integral lift `λ`; evenness makes this independent of the lift, since
//! `(λ + nμ)² = λ² + 2n(λ·μ) + n²μ²` and `μ²` is even.

use std::collections::{BTreeMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::chern::FibrationInvariants;
use crate::error::{Error, Result};

/// Default cap on `n^rank` for [`orbit_partition`].
pub const DEFAULT_ORBIT_BUDGET: u128 = 1 << 20;

/// Cartan matrix of `E8` in Bourbaki numbering (node 2 hangs off node 4).
const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

/// Highest root of `E8` in simple-root coordinates (Bourbaki numbering).
pub const E8_HIGHEST_ROOT: [i64; 8] = [2, 3, 4, 6, 5, 4, 3, 2];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn zero(rank: usize) -> Self {
        LatticeVector(vec![0; rank])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest `a` with `self = a·λ'`; zero for the zero vector.
    pub fn content(&self) -> u64 {
        self.0.iter().fold(0u64, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }
}

/// A symmetric integer Gram matrix with even diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct EvenLattice {
    gram: Vec<Vec<i64>>,
    hyperbolic: Option<usize>,
}

impl TryFrom<Vec<Vec<i64>>> for EvenLattice {
    type Error = Error;

    fn try_from(gram: Vec<Vec<i64>>) -> Result<Self> {
        EvenLattice::from_gram(gram)
    }
}

impl From<EvenLattice> for Vec<Vec<i64>> {
    fn from(l: EvenLattice) -> Self {
        l.gram
    }
}

impl EvenLattice {
    /// Validates the Gram matrix and looks for a coordinate pair spanning an
    /// orthogonal hyperbolic summand.
    pub fn from_gram(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        for row in &gram {
            if row.len() != rank {
                return Err(Error::DimensionMismatch {
                    expected: rank,
                    found: row.len(),
                });
            }
        }
        for (i, row) in gram.iter().enumerate() {
            if let Some(j) = (i + 1..rank).find(|&j| row[j] != gram[j][i]) {
                return Err(Error::NotSymmetric { row: i, col: j });
            }
            if row[i].is_odd() {
                return Err(Error::NotEven {
                    index: i,
                    value: row[i],
                });
            }
        }
        let hyperbolic = find_hyperbolic_pair(&gram);
        Ok(EvenLattice { gram, hyperbolic })
    }

    /// `U`, with basis `ε, δ`: `ε² = δ² = 0`, `ε·δ = 1`.
    pub fn hyperbolic_plane() -> Self {
        EvenLattice::from_gram(vec![vec![0, 1], vec![1, 0]]).expect("U is even")
    }

    /// `−E8`: the negated Cartan matrix.
    pub fn negative_e8() -> Self {
        let mut gram = vec![vec![0i64; 8]; 8];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = -2;
        }
        for &(i, j) in &E8_EDGES {
            gram[i][j] = 1;
            gram[j][i] = 1;
        }
        EvenLattice::from_gram(gram).expect("-E8 is even")
    }

    pub fn direct_sum(parts: &[EvenLattice]) -> Self {
        let rank: usize = parts.iter().map(EvenLattice::rank).sum();
        let mut gram = vec![vec![0i64; rank]; rank];
        let mut offset = 0;
        for part in parts {
            for (i, row) in part.gram.iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    gram[offset + i][offset + j] = x;
                }
            }
            offset += part.rank();
        }
        EvenLattice::from_gram(gram).expect("a sum of even lattices is even")
    }

    /// `Λ(d) = (2d−2)U ⊕ d(−E8)`, hyperbolic summands first. Checks evenness
    /// and `|det| = 1`.
    pub fn lambda_d(d: i64) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidParameter {
                name: "d",
                value: d,
                requirement: "must be at least 1",
            });
        }
        let mut parts = vec![EvenLattice::hyperbolic_plane(); (2 * d - 2) as usize];
        parts.extend(std::iter::repeat_n(EvenLattice::negative_e8(), d as usize));
        let lattice = EvenLattice::direct_sum(&parts);
        if lattice.determinant().abs() != 1 {
            return Err(Error::Inconsistent("Lambda(d) must be unimodular".into()));
        }
        Ok(lattice)
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    /// Index of `ε` in the designated hyperbolic summand; `δ` is the next
    /// coordinate.
    pub fn hyperbolic_summand(&self) -> Option<usize> {
        self.hyperbolic
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> i128 {
        let n = self.rank();
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(|&x| x as i128).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                match (k + 1..n).find(|&i| m[i][k] != 0) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        sign * m[n - 1][n - 1]
    }

    fn check_dim(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                found: v.len(),
            });
        }
        Ok(())
    }

    /// `vᵀ G w`.
    pub fn inner(&self, v: &LatticeVector, w: &LatticeVector) -> Result<i64> {
        self.check_dim(&v.0)?;
        self.check_dim(&w.0)?;
        Ok(self.inner_unchecked(&v.0, &w.0))
    }

    fn inner_unchecked(&self, v: &[i64], w: &[i64]) -> i64 {
        self.gram
            .iter()
            .zip(v)
            .filter(|(_, &vi)| vi != 0)
            .map(|(row, &vi)| vi * row.iter().zip(w).map(|(g, wj)| g * wj).sum::<i64>())
            .sum()
    }

    pub fn square(&self, v: &LatticeVector) -> Result<i64> {
        self.inner(v, v)
    }

    /// Reflection in a root: `x − (2(x·v)/(v·v))·v` for `v² = ±2`.
    pub fn reflect(&self, v: &LatticeVector, x: &LatticeVector) -> Result<LatticeVector> {
        let vv = self.square(v)?;
        if vv != 2 && vv != -2 {
            return Err(Error::NotARoot { square: vv });
        }
        let c = 2 * self.inner(x, v)? / vv;
        Ok(LatticeVector(
            x.0.iter().zip(&v.0).map(|(xi, vi)| xi - c * vi).collect(),
        ))
    }

    /// `ε + (j/2)δ` in the designated hyperbolic summand: a primitive vector of
    /// square `j`.
    pub fn wall_representative(&self, j: i64) -> Result<LatticeVector> {
        if j.is_odd() {
            return Err(Error::OddSquare(j));
        }
        let at = self.hyperbolic.ok_or(Error::NoHyperbolicSummand)?;
        let mut v = LatticeVector::zero(self.rank());
        v.0[at] = 1;
        v.0[at + 1] = j / 2;
        Ok(v)
    }
}

fn find_hyperbolic_pair(gram: &[Vec<i64>]) -> Option<usize> {
    let n = gram.len();
    (0..n.saturating_sub(1)).find(|&i| {
        let j = i + 1;
        gram[i][i] == 0
            && gram[j][j] == 0
            && gram[i][j] == 1
            && (0..n).all(|k| k == i || k == j || (gram[i][k] == 0 && gram[j][k] == 0))
    })
}

/// A class in `Λ/nΛ`, coordinates reduced into `[0, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ModClass {
    n: u64,
    coords: Vec<i64>,
}

impl ModClass {
    pub fn new(n: u64, coords: &[i64]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                value: 0,
                requirement: "modulus must be positive",
            });
        }
        let m = n as i64;
        Ok(ModClass {
            n,
            coords: coords.iter().map(|c| c.rem_euclid(m)).collect(),
        })
    }

    pub fn of_vector(v: &LatticeVector, n: u64) -> Result<Self> {
        ModClass::new(n, &v.0)
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// The canonical lift with coordinates in `[0, n)`.
    pub fn lift(&self) -> LatticeVector {
        LatticeVector(self.coords.clone())
    }

    /// `gcd(coordinates, n)`: the largest `n' | n` with `α = n'α'`.
    pub fn divisibility(&self) -> u64 {
        self.coords
            .iter()
            .fold(self.n, |g, &c| g.gcd(&c.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.divisibility() == 1
    }
}

/// `℘(α) = λ² mod 2n` for any lift `λ`, as a residue in `[0, 2n)`.
pub fn pontrjagin(lattice: &EvenLattice, class: &ModClass) -> Result<i64> {
    let sq = lattice.square(&class.lift())?;
    Ok(sq.rem_euclid(2 * class.n as i64))
}

/// Where a class falls in the component classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ComponentLabel {
    /// Primitive: the component is labelled by the even residue `℘ mod 2n`.
    Classified { pontrjagin: i64 },
    /// Imprimitive classes are outside the classified range.
    OutOfClassifiedRange { divisibility: u64 },
}

pub fn classify_component(lattice: &EvenLattice, class: &ModClass) -> Result<ComponentLabel> {
    if class.is_primitive() {
        Ok(ComponentLabel::Classified {
            pontrjagin: pontrjagin(lattice, class)?,
        })
    } else {
        Ok(ComponentLabel::OutOfClassifiedRange {
            divisibility: class.divisibility(),
        })
    }
}

/// Number of components of primitive `n`-torsion data for `χ = d`: one per
/// even residue modulo `2n`, so `n`.
pub fn component_count(d: i64, n: i64) -> Result<i64> {
    if d < 2 {
        return Err(Error::InvalidParameter {
            name: "d",
            value: d,
            requirement: "must be at least 2",
        });
    }
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n,
            requirement: "must be at least 1",
        });
    }
    Ok((0..2 * n).filter(|i| i.is_even()).count() as i64)
}

/// `℘ = D² + n²d mod 2n` from raw invariants; an odd residue means the
/// inputs cannot come from a fibration.
pub fn asd_congruence_raw(n: i64, d: i64, d_squared: i64) -> Result<i64> {
    if n < 1 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: n,
            requirement: "must be at least 1",
        });
    }
    let p = (d_squared + n * n * d).rem_euclid(2 * n);
    if p.is_odd() {
        return Err(Error::Inconsistent(format!(
            "D^2 + n^2 d = {} is odd mod {}",
            d_squared + n * n * d,
            2 * n
        )));
    }
    Ok(p)
}

pub fn asd_congruence(inv: &FibrationInvariants) -> Result<i64> {
    asd_congruence_raw(inv.n(), inv.d(), inv.d_squared())
}

/// One reflection orbit in `Λ/nΛ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Orbit {
    pub id: usize,
    pub pontrjagin: i64,
    pub divisibility: u64,
    pub classes: Vec<Vec<i64>>,
}

impl Orbit {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitPartition {
    pub n: u64,
    pub root_count: usize,
    pub orbits: Vec<Orbit>,
}

impl OrbitPartition {
    /// Number of orbits at each `(divisibility, ℘)` level.
    pub fn orbits_per_level(&self) -> BTreeMap<(u64, i64), usize> {
        let mut out = BTreeMap::new();
        for o in &self.orbits {
            *out.entry((o.divisibility, o.pontrjagin)).or_insert(0) += 1;
        }
        out
    }

    /// Every level is a single orbit. `false` is inconclusive rather than a
    /// counterexample: the bounded reflections may generate a smaller group.
    pub fn single_orbit_per_level(&self) -> bool {
        self.orbits_per_level().values().all(|&c| c == 1)
    }

    /// Tab-separated rows: coordinates (comma-joined), divisibility,
    /// Pontrjagin square, orbit id.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("coords\tdivisibility\tpontrjagin\torbit\n");
        for o in &self.orbits {
            for c in &o.classes {
                let coords: Vec<String> = c.iter().map(i64::to_string).collect();
                out.push_str(&format!(
                    "{}\t{}\t{}\t{}\n",
                    coords.join(","),
                    o.divisibility,
                    o.pontrjagin,
                    o.id
                ));
            }
        }
        out
    }
}

/// Roots `v` (`v² = ±2`) with `|vᵢ| ≤ bound`, one of each `±v` pair.
pub fn bounded_roots(
    lattice: &EvenLattice,
    bound: i64,
    budget: u128,
) -> Result<Vec<LatticeVector>> {
    let rank = lattice.rank();
    let side = (2 * bound + 1) as u128;
    let size = side.checked_pow(rank as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let mut out = Vec::new();
    let mut v = vec![-bound; rank];
    loop {
        let first_nonzero = v.iter().find(|&&c| c != 0);
        if matches!(first_nonzero, Some(&c) if c > 0) {
            let sq = lattice.inner_unchecked(&v, &v);
            if sq == 2 || sq == -2 {
                out.push(LatticeVector(v.clone()));
            }
        }
        // odometer
        let mut i = 0;
        loop {
            if i == rank {
                return Ok(out);
            }
            if v[i] < bound {
                v[i] += 1;
                break;
            }
            v[i] = -bound;
            i += 1;
        }
    }
}

/// Orbits of primitive classes in `Λ/nΛ` under the group generated by
/// reflections in roots with coordinates bounded by `root_bound`.
pub fn orbit_partition(lattice: &EvenLattice, n: u64, root_bound: i64) -> Result<OrbitPartition> {
    orbit_partition_with(lattice, n, root_bound, DEFAULT_ORBIT_BUDGET, true)
}

/// As [`orbit_partition`], with an explicit budget and optionally keeping
/// imprimitive classes.
pub fn orbit_partition_with(
    lattice: &EvenLattice,
    n: u64,
    root_bound: i64,
    budget: u128,
    primitive_only: bool,
) -> Result<OrbitPartition> {
    if n == 0 {
        return Err(Error::InvalidParameter {
            name: "n",
            value: 0,
            requirement: "modulus must be positive",
        });
    }
    if root_bound < 1 {
        return Err(Error::InvalidParameter {
            name: "root_bound",
            value: root_bound,
            requirement: "must be at least 1",
        });
    }
    let rank = lattice.rank();
    let size = (n as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let roots = bounded_roots(lattice, root_bound, budget)?;
    if roots.is_empty() {
        return Err(Error::EmptyRootSet(root_bound));
    }
    let m = n as i64;
    // For each root keep (v mod n, Gv mod n, 2/v²).
    let mut gens: Vec<(Vec<i64>, Vec<i64>, i64)> = roots
        .iter()
        .map(|v| {
            let gv: Vec<i64> = lattice
                .gram
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&v.0)
                        .map(|(g, x)| g * x)
                        .sum::<i64>()
                        .rem_euclid(m)
                })
                .collect();
            let sq = lattice.inner_unchecked(&v.0, &v.0);
            let red: Vec<i64> = v.0.iter().map(|c| c.rem_euclid(m)).collect();
            (red, gv, 2 / sq)
        })
        .collect();
    gens.sort();
    gens.dedup();

    let size = size as usize;
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut c = vec![0i64; rank];
        for slot in c.iter_mut() {
            *slot = (idx % n as usize) as i64;
            idx /= n as usize;
        }
        c
    };
    let encode = |c: &[i64]| -> usize {
        c.iter()
            .rev()
            .fold(0usize, |acc, &x| acc * n as usize + x as usize)
    };

    let mut orbit_of = vec![usize::MAX; size];
    let mut orbits = Vec::new();
    for start in 0..size {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let class = ModClass::new(n, &decode(start))?;
        if primitive_only && !class.is_primitive() {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut frontier = VecDeque::from([start]);
        while let Some(cur) = frontier.pop_front() {
            let x = decode(cur);
            for (v, gv, c) in &gens {
                let dot = x.iter().zip(gv).map(|(a, b)| a * b).sum::<i64>();
                let k = c * dot;
                let y: Vec<i64> = x
                    .iter()
                    .zip(v)
                    .map(|(a, b)| (a - k * b).rem_euclid(m))
                    .collect();
                let yi = encode(&y);
                if orbit_of[yi] == usize::MAX {
                    orbit_of[yi] = id;
                    members.push(yi);
                    frontier.push_back(yi);
                }
            }
        }
        members.sort_unstable();
        orbits.push(Orbit {
            id,
            pontrjagin: pontrjagin(lattice, &class)?,
            divisibility: class.divisibility(),
            classes: members.into_iter().map(decode).collect(),
        });
    }
    Ok(OrbitPartition {
        n,
        root_count: gens.len(),
        orbits,
    })
}
