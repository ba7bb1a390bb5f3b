//! Linear codes given by a parity-check matrix, exhaustive coset analysis and
//! the complete-regularity checkers.
//!
//! Vectors of `F^n` and syndromes in `F^{n-k}` are packed into integers,
//! coordinate `i` carrying weight `Q^i`. With `Q` a power of the
//! characteristic, a packed vector is a base-`p` number and sums of vectors
//! are [`packed_add`] of their keys.

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{Pow, ToPrimitive};
use serde::Serialize;

use crate::config::Caps;
use crate::error::{Error, Result};
use crate::gf::{packed_add, prime_power, Field};
use crate::matq::MatQ;
use crate::report::bigs_as_numbers;

const UNREACHED: u32 = u32::MAX;

pub fn pack(v: &[u32], q: u64) -> u64 {
    v.iter().rev().fold(0u64, |acc, &x| acc * q + x as u64)
}

pub fn unpack(mut key: u64, q: u64, len: usize) -> Vec<u32> {
    (0..len)
        .map(|_| {
            let d = (key % q) as u32;
            key /= q;
            d
        })
        .collect()
}

pub fn weight(v: &[u32]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

fn checked_power(q: u64, e: usize) -> Option<u64> {
    q.checked_pow(e as u32)
}

fn require(what: &'static str, q: u64, e: usize, cap: u64) -> Result<u64> {
    match checked_power(q, e) {
        Some(v) if v <= cap => Ok(v),
        _ => Err(Error::cap(what, format!("{q}^{e}"), cap)),
    }
}

/// A linear code `{c in F^n : c H^T = 0}` with a full-row-rank parity-check matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    h: MatQ,
    n: usize,
    k: usize,
    /// `unit_syndromes[i * Q + g]` is the packed syndrome of `g * e_i`.
    unit_syndromes: Vec<u64>,
}

impl LinearCode {
    /// Rejects a zero or rank-deficient `h` instead of silently reducing it.
    pub fn from_parity(h: MatQ) -> Result<LinearCode> {
        if h.rows() == 0 || h.is_zero() {
            return Err(Error::Shape("parity-check matrix is zero".into()));
        }
        let rank = h.rank();
        if rank != h.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: h.rows(),
            });
        }
        let f = h.field().clone();
        let q = f.order();
        let n = h.cols();
        let mut unit_syndromes = Vec::with_capacity(n * q as usize);
        for i in 0..n {
            let col = h.col(i);
            for g in f.elements() {
                let s: Vec<u32> = col.iter().map(|&x| f.mul(g, x)).collect();
                unit_syndromes.push(pack(&s, q));
            }
        }
        Ok(LinearCode {
            n,
            k: n - h.rows(),
            h,
            unit_syndromes,
        })
    }

    pub fn field(&self) -> &Field {
        self.h.field()
    }

    pub fn parity(&self) -> &MatQ {
        &self.h
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    fn q(&self) -> u64 {
        self.field().order()
    }

    fn p(&self) -> u32 {
        self.field().characteristic()
    }

    /// `|C| = Q^k`.
    pub fn size(&self) -> BigUint {
        Pow::pow(BigUint::from(self.q()), self.k)
    }

    /// Degree of every vertex in the Hamming graph: `(Q - 1) n`.
    pub fn neighbor_count(&self) -> u64 {
        (self.q() - 1) * self.n as u64
    }

    pub fn syndrome(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let f = self.field();
        for &x in v {
            f.check(x as u64)?;
        }
        Ok((0..self.h.rows())
            .map(|i| {
                self.h
                    .row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&h, &x)| f.add(acc, f.mul(h, x)))
            })
            .collect())
    }

    pub fn syndrome_key(&self, v: &[u32]) -> Result<u64> {
        Ok(pack(&self.syndrome(v)?, self.q()))
    }

    /// Syndrome key of a packed ambient vector.
    pub fn syndrome_of_packed(&self, mut key: u64) -> u64 {
        let q = self.q();
        let mut s = 0;
        let mut i = 0;
        while key != 0 {
            let g = key % q;
            if g != 0 {
                s = packed_add(
                    self.p(),
                    s,
                    self.unit_syndromes[i * q as usize + g as usize],
                );
            }
            key /= q;
            i += 1;
        }
        s
    }

    pub fn is_codeword(&self, v: &[u32]) -> Result<bool> {
        Ok(self.syndrome(v)?.iter().all(|&x| x == 0))
    }

    pub fn unpack_syndrome(&self, key: u64) -> Vec<u32> {
        unpack(key, self.q(), self.redundancy())
    }

    /// Packed syndromes `g * h_j` of all weight-one vectors, column-major then by `g`.
    pub fn column_syndromes(&self) -> Vec<u64> {
        let q = self.q() as usize;
        (0..self.n)
            .flat_map(|j| (1..q).map(move |g| (j, g)))
            .map(|(j, g)| self.unit_syndromes[j * q + g])
            .collect()
    }

    pub fn generator_matrix(&self) -> MatQ {
        self.h.nullspace()
    }

    /// All `Q^k` codewords, in the order of their coefficient vectors.
    pub fn codewords(&self, caps: &Caps) -> Result<Vec<Vec<u32>>> {
        let total = require("codeword enumeration", self.q(), self.k, caps.codewords)?;
        let g = self.generator_matrix();
        let f = self.field();
        let q = self.q();
        Ok((0..total)
            .map(|idx| {
                let coeffs = unpack(idx, q, self.k);
                let mut c = vec![0u32; self.n];
                for (row, &a) in coeffs.iter().enumerate() {
                    if a != 0 {
                        for (j, x) in c.iter_mut().enumerate() {
                            *x = f.add(*x, f.mul(a, g.get(row, j)));
                        }
                    }
                }
                c
            })
            .collect())
    }

    /// Minimum weight of a nonzero codeword, `None` for the zero code.
    pub fn min_distance(&self, caps: &Caps) -> Result<Option<usize>> {
        Ok(self
            .codewords(caps)?
            .iter()
            .map(|c| weight(c))
            .filter(|&w| w > 0)
            .min())
    }

    fn check_coset_steps(&self, caps: &Caps) -> Result<u64> {
        let cosets = require("coset table", self.q(), self.redundancy(), caps.coset_steps)?;
        let steps = cosets as u128 * self.neighbor_count() as u128;
        if steps > caps.coset_steps as u128 {
            return Err(Error::cap("coset neighbor steps", steps, caps.coset_steps));
        }
        Ok(cosets)
    }

    /// Coset distances by breadth-first search over syndromes from zero,
    /// stepping by the syndrome of every weight-one vector.
    pub fn coset_table(&self, caps: &Caps, with_distributions: bool) -> Result<CosetTable> {
        let cosets = self.check_coset_steps(caps)?;
        let steps = self.column_syndromes();
        let p = self.p();
        let mut distance = vec![UNREACHED; cosets as usize];
        distance[0] = 0;
        let mut queue = VecDeque::from([0u64]);
        while let Some(s) = queue.pop_front() {
            let d = distance[s as usize];
            for &g in &steps {
                let t = packed_add(p, s, g) as usize;
                if distance[t] == UNREACHED {
                    distance[t] = d + 1;
                    queue.push_back(t as u64);
                }
            }
        }
        if distance.contains(&UNREACHED) {
            unreachable!("full-rank parity-check columns span the syndrome space");
        }
        let rho = *distance.iter().max().unwrap() as usize;
        let mut mu = vec![0u64; rho + 1];
        for &d in &distance {
            mu[d as usize] += 1;
        }
        let distributions = if with_distributions {
            let total = require("coset distributions", self.q(), self.n, caps.vectors)?;
            let mut dist = vec![vec![0u64; self.n + 1]; cosets as usize];
            for key in 0..total {
                let s = self.syndrome_of_packed(key);
                dist[s as usize][packed_weight(key, self.q())] += 1;
            }
            Some(dist)
        } else {
            None
        };
        Ok(CosetTable {
            q: self.q(),
            redundancy: self.redundancy(),
            distance,
            rho,
            mu,
            distributions,
        })
    }

    pub fn covering_radius(&self, caps: &Caps) -> Result<usize> {
        Ok(self.coset_table(caps, false)?.rho)
    }

    /// Coset-level complete-regularity check.
    ///
    /// For linear codes the neighbors of `x + c` are the neighbors of `x`
    /// shifted by the codeword `c`, so the counts of Definition-style
    /// neighbors depend only on the coset of `x`.
    pub fn is_completely_regular(&self, caps: &Caps) -> Result<Regularity> {
        let table = self.coset_table(caps, false)?;
        let steps = self.column_syndromes();
        let p = self.p();
        let counts: Vec<(u64, u64)> = (0..table.distance.len() as u64)
            .map(|s| {
                let l = table.distance[s as usize];
                let mut down = 0;
                let mut up = 0;
                for &g in &steps {
                    let d = table.distance[packed_add(p, s, g) as usize];
                    if d + 1 == l {
                        down += 1;
                    } else if d == l + 1 {
                        up += 1;
                    }
                }
                (down, up)
            })
            .collect();
        Ok(classify(
            self,
            &table.distance,
            &counts,
            table.rho,
            WitnessKind::Syndrome,
            1,
        ))
    }

    /// Complete regularity straight from the definition: BFS over all of `F^n`
    /// from every codeword, then per-vector neighbor counts.
    pub fn cr_vector_oracle(&self, caps: &Caps) -> Result<Regularity> {
        let total = require("vector oracle", self.q(), self.n, caps.vectors)?;
        let q = self.q();
        let mut distance = vec![UNREACHED; total as usize];
        let mut queue = VecDeque::new();
        for c in self.codewords(caps)? {
            let key = pack(&c, q);
            distance[key as usize] = 0;
            queue.push_back(key);
        }
        while let Some(v) = queue.pop_front() {
            let d = distance[v as usize];
            for_each_neighbor(v, q, self.n, |w| {
                if distance[w as usize] == UNREACHED {
                    distance[w as usize] = d + 1;
                    queue.push_back(w);
                }
            });
        }
        let rho = *distance.iter().max().unwrap() as usize;
        let counts: Vec<(u64, u64)> = (0..total)
            .map(|v| {
                let l = distance[v as usize];
                let (mut down, mut up) = (0, 0);
                for_each_neighbor(v, q, self.n, |w| {
                    let d = distance[w as usize];
                    if d + 1 == l {
                        down += 1;
                    } else if d == l + 1 {
                        up += 1;
                    }
                });
                (down, up)
            })
            .collect();
        let class_size = self.size().to_u64().expect("bounded by the vector cap");
        Ok(classify(
            self,
            &distance,
            &counts,
            rho,
            WitnessKind::Vector,
            class_size,
        ))
    }

    /// Weight distribution of the coset with the given packed syndrome, by
    /// enumerating every ambient vector.
    pub fn coset_weight_distribution(&self, syndrome: u64, caps: &Caps) -> Result<Vec<u64>> {
        let total = require("coset distribution", self.q(), self.n, caps.vectors)?;
        let mut dist = vec![0u64; self.n + 1];
        for key in 0..total {
            if self.syndrome_of_packed(key) == syndrome {
                dist[packed_weight(key, self.q())] += 1;
            }
        }
        Ok(dist)
    }
}

fn packed_weight(mut key: u64, q: u64) -> usize {
    let mut w = 0;
    while key != 0 {
        if !key.is_multiple_of(q) {
            w += 1;
        }
        key /= q;
    }
    w
}

/// Calls `f` on every vector at Hamming distance one from packed `v`.
fn for_each_neighbor(v: u64, q: u64, n: usize, mut f: impl FnMut(u64)) {
    let mut place = 1u64;
    for _ in 0..n {
        let digit = (v / place) % q;
        let cleared = v - digit * place;
        for g in 0..q {
            if g != digit {
                f(cleared + g * place);
            }
        }
        place *= q;
    }
}

/// Checks that `(down, up)` counts are constant per distance class and
/// assembles the array, or returns the smallest offending pair.
fn classify(
    code: &LinearCode,
    distance: &[u32],
    counts: &[(u64, u64)],
    rho: usize,
    kind: WitnessKind,
    class_scale: u64,
) -> Regularity {
    let mut reference: Vec<Option<(u64, (u64, u64))>> = vec![None; rho + 1];
    let mut witness: Option<IrregularityWitness> = None;
    let mut mu = vec![0u64; rho + 1];
    for (key, (&d, &cnt)) in distance.iter().zip(counts).enumerate() {
        let l = d as usize;
        mu[l] += 1;
        match reference[l] {
            None => reference[l] = Some((key as u64, cnt)),
            Some((first, expected)) if expected != cnt => {
                let better = witness
                    .as_ref()
                    .is_none_or(|w| (first, key as u64) < (w.first, w.second));
                if better {
                    witness = Some(IrregularityWitness {
                        kind,
                        distance: l,
                        first,
                        second: key as u64,
                        first_counts: expected,
                        second_counts: cnt,
                    });
                }
            }
            _ => {}
        }
    }
    if let Some(w) = witness {
        return Regularity::Irregular(w);
    }
    let b: Vec<u64> = (0..rho).map(|l| reference[l].unwrap().1 .1).collect();
    let c: Vec<u64> = (1..=rho).map(|l| reference[l].unwrap().1 .0).collect();
    let mu: Vec<u64> = mu.iter().map(|&x| x / class_scale).collect();
    Regularity::Regular(IntersectionArray::from_counts(
        code.neighbor_count(),
        &b,
        &c,
        &mu,
    ))
}

/// Coset distances keyed by packed syndrome.
#[derive(Clone, Debug, Serialize)]
pub struct CosetTable {
    q: u64,
    redundancy: usize,
    distance: Vec<u32>,
    rho: usize,
    mu: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distributions: Option<Vec<Vec<u64>>>,
}

impl CosetTable {
    pub fn len(&self) -> usize {
        self.distance.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distance.is_empty()
    }

    pub fn distance(&self, syndrome: u64) -> usize {
        self.distance[syndrome as usize] as usize
    }

    pub fn distances(&self) -> &[u32] {
        &self.distance
    }

    pub fn covering_radius(&self) -> usize {
        self.rho
    }

    /// Number of cosets at each distance `0..=rho`.
    pub fn mu(&self) -> &[u64] {
        &self.mu
    }

    pub fn distribution(&self, syndrome: u64) -> Option<&[u64]> {
        self.distributions
            .as_ref()
            .map(|d| d[syndrome as usize].as_slice())
    }

    pub fn syndromes_at(&self, l: usize) -> impl Iterator<Item = u64> + '_ {
        self.distance
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d as usize == l)
            .map(|(s, _)| s as u64)
    }

    pub fn unpack(&self, syndrome: u64) -> Vec<u32> {
        unpack(syndrome, self.q, self.redundancy)
    }
}

/// `(b_0..b_{rho-1}; c_1..c_rho)` together with `a_0..a_rho` and the coset
/// counts `mu_0..mu_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub rho: usize,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub b: Vec<BigUint>,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub c: Vec<BigUint>,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub a: Vec<BigUint>,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub mu: Vec<BigUint>,
}

impl IntersectionArray {
    pub fn from_counts(degree: u64, b: &[u64], c: &[u64], mu: &[u64]) -> Self {
        let big = |xs: &[u64]| xs.iter().map(|&x| BigUint::from(x)).collect::<Vec<_>>();
        Self::new(BigUint::from(degree), big(b), big(c), big(mu))
    }

    /// Fills in `a_i = degree - b_i - c_i` with `c_0 = b_rho = 0`.
    pub fn new(degree: BigUint, b: Vec<BigUint>, c: Vec<BigUint>, mu: Vec<BigUint>) -> Self {
        let rho = b.len();
        assert_eq!(c.len(), rho, "b and c have the same length");
        assert_eq!(mu.len(), rho + 1, "one coset count per distance");
        let zero = BigUint::default();
        let a = (0..=rho)
            .map(|i| {
                let bi = b.get(i).unwrap_or(&zero);
                let ci = if i == 0 { &zero } else { &c[i - 1] };
                &degree - bi - ci
            })
            .collect();
        IntersectionArray { rho, b, c, a, mu }
    }

    pub fn b_at(&self, i: usize) -> BigUint {
        self.b.get(i).cloned().unwrap_or_default()
    }

    pub fn c_at(&self, i: usize) -> BigUint {
        if i == 0 {
            BigUint::default()
        } else {
            self.c.get(i - 1).cloned().unwrap_or_default()
        }
    }

    /// `mu_i b_i = mu_{i+1} c_{i+1}` for every `0 <= i < rho`.
    pub fn is_balanced(&self) -> bool {
        (0..self.rho).all(|i| &self.mu[i] * self.b_at(i) == &self.mu[i + 1] * self.c_at(i + 1))
    }

    /// `a_i + b_i + c_i = degree` for every `0 <= i <= rho`.
    pub fn satisfies_sum_rule(&self, degree: &BigUint) -> bool {
        (0..=self.rho).all(|i| &self.a[i] + self.b_at(i) + self.c_at(i) == *degree)
    }

    /// Same `b` and `c` lists, ignoring `a` and `mu`.
    pub fn same_bc(&self, other: &IntersectionArray) -> bool {
        self.b == other.b && self.c == other.c
    }

    pub fn compact(&self) -> String {
        let fmt = |xs: &[BigUint]| {
            xs.iter()
                .map(BigUint::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("({}; {})", fmt(&self.b), fmt(&self.c))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessKind {
    /// `first` and `second` are packed syndromes.
    Syndrome,
    /// `first` and `second` are packed ambient vectors.
    Vector,
}

/// Two members of one distance class with different `(down, up)` neighbor counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrregularityWitness {
    pub kind: WitnessKind,
    pub distance: usize,
    pub first: u64,
    pub second: u64,
    pub first_counts: (u64, u64),
    pub second_counts: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Regularity {
    Regular(IntersectionArray),
    Irregular(IrregularityWitness),
}

impl Regularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, Regularity::Regular(_))
    }

    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            Regularity::Regular(a) => Some(a),
            Regularity::Irregular(_) => None,
        }
    }

    pub fn witness(&self) -> Option<&IrregularityWitness> {
        match self {
            Regularity::Regular(_) => None,
            Regularity::Irregular(w) => Some(w),
        }
    }
}

/// Hamming distance from `v` to the nearest of `codewords`, by brute force.
pub fn nearest_codeword_distance(v: &[u32], codewords: &[Vec<u32>]) -> usize {
    codewords
        .iter()
        .map(|c| c.iter().zip(v).filter(|(a, b)| a != b).count())
        .min()
        .unwrap_or(v.len())
}

/// Parses the plain-text parity-check format: a header line `q n rows`
/// followed by `rows` lines of `n` canonical element encodings.
pub fn parse_parity_file(text: &str) -> Result<MatQ> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty parity-check file".into()))?;
    let nums: Vec<u64> = header
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Parse(format!("bad header token {t:?}")))
        })
        .collect::<Result<_>>()?;
    let [q, n, rows] = nums[..] else {
        return Err(Error::Parse("header must be `q n rows`".into()));
    };
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::Parse(format!("q = {q} is not a prime power")))?;
    let field = crate::gf::field_make(p, &[e])?;
    let mut data = Vec::with_capacity((n * rows) as usize);
    for i in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing row {}", i + 1)))?;
        let row: Vec<u32> = line
            .split_whitespace()
            .map(|t| {
                t.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {t:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() as u64 != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        data.extend(row);
    }
    if lines.next().is_some() {
        return Err(Error::Parse(
            "trailing rows after the declared count".into(),
        ));
    }
    MatQ::new(&field, rows as usize, n as usize, data)
}

pub fn format_parity_file(h: &MatQ) -> String {
    let mut out = format!("{} {} {}\n", h.field().order(), h.cols(), h.rows());
    out.push_str(&h.to_string());
    out
}
