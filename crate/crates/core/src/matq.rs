//! Dense matrices over a finite field and the rank-counting formulas that go with them.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Pow, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::Field;

#[derive(Clone, PartialEq, Eq)]
pub struct MatQ {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl MatQ {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for &x in &data {
            field.check(x as u64)?;
        }
        Ok(MatQ {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatQ {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> MatQ {
        let mut t = MatQ::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Same entries, read in another field. Every entry must already be a
    /// valid encoding there, which holds when `field` extends `self.field()`.
    pub fn reinterpret(&self, field: &Field) -> Result<MatQ> {
        MatQ::new(field, self.rows, self.cols, self.data.clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> MatQ {
        let mut out = MatQ::zeros(&self.field, self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j));
            }
        }
        out
    }

    pub fn mul(&self, other: &MatQ) -> Result<MatQ> {
        if self.cols != other.rows || self.field != other.field {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = MatQ::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form, pivoting on the first nonzero entry in column order.
    pub fn rref(&self) -> Echelon {
        let mut r = self.clone();
        let mut t = MatQ::identity(&self.field, self.rows);
        let pivots = eliminate(&mut r, &mut t);
        Echelon {
            reduced: r,
            transform: t,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        let mut r = self.clone();
        let mut scratch = MatQ::zeros(&self.field, self.rows, 0);
        eliminate(&mut r, &mut scratch).len()
    }

    pub fn is_nonsingular(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// `P = A·M·B` with `A`, `B` nonsingular and `P` the rank-`l` unit diagonal.
    pub fn rank_normal_form(&self) -> RankNormalForm {
        let rows = self.rref();
        let cols = rows.reduced.transpose().rref();
        let a = rows.transform;
        let b = cols.transform.transpose();
        let p = a
            .mul(self)
            .and_then(|am| am.mul(&b))
            .expect("shapes agree by construction");
        RankNormalForm {
            rank: rows.pivots.len(),
            a,
            b,
            p,
        }
    }

    /// `M = U·V` with `U` the pivot columns of `M` and `V` the nonzero rows of its RREF.
    pub fn rank_factorization(&self) -> (MatQ, MatQ) {
        let e = self.rref();
        let l = e.pivots.len();
        let u = self.select_cols(&e.pivots);
        let v = MatQ::new(
            &self.field,
            l,
            self.cols,
            e.reduced.data[..l * self.cols].to_vec(),
        )
        .expect("prefix of a valid matrix");
        (u, v)
    }

    /// Basis of `{x : self · x^T = 0}`, one vector per row of the result.
    pub fn nullspace(&self) -> MatQ {
        let e = self.rref();
        let f = &self.field;
        let free: Vec<usize> = (0..self.cols).filter(|j| !e.pivots.contains(j)).collect();
        let mut basis = MatQ::zeros(f, free.len(), self.cols);
        for (b, &fj) in free.iter().enumerate() {
            basis.set(b, fj, 1);
            for (i, &pj) in e.pivots.iter().enumerate() {
                basis.set(b, pj, f.neg(e.reduced.get(i, fj)));
            }
        }
        basis
    }
}

/// Row reduction in place. Every row operation applied to `m` is mirrored on
/// `t`, so a `t` starting at the identity ends as the transform. Returns pivot columns.
fn eliminate(m: &mut MatQ, t: &mut MatQ) -> Vec<usize> {
    let f = m.field.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        if row == m.rows {
            break;
        }
        let Some(pr) = (row..m.rows).find(|&i| m.get(i, col) != 0) else {
            continue;
        };
        swap_rows(m, pr, row);
        swap_rows(t, pr, row);
        let inv = f.inv(m.get(row, col)).expect("pivot is nonzero");
        scale_row(m, row, inv);
        scale_row(t, row, inv);
        for i in 0..m.rows {
            if i != row {
                let factor = m.get(i, col);
                if factor != 0 {
                    let neg = f.neg(factor);
                    axpy_row(m, i, row, neg);
                    axpy_row(t, i, row, neg);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn swap_rows(m: &mut MatQ, a: usize, b: usize) {
    if a != b {
        for j in 0..m.cols {
            m.data.swap(a * m.cols + j, b * m.cols + j);
        }
    }
}

fn scale_row(m: &mut MatQ, i: usize, s: u32) {
    for j in 0..m.cols {
        let v = m.field.mul(m.get(i, j), s);
        m.set(i, j, v);
    }
}

/// row[dst] += s * row[src]
fn axpy_row(m: &mut MatQ, dst: usize, src: usize, s: u32) {
    for j in 0..m.cols {
        let v = m.field.add(m.get(dst, j), m.field.mul(s, m.get(src, j)));
        m.set(dst, j, v);
    }
}

#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: MatQ,
    /// Nonsingular `T` with `T·M = reduced`.
    pub transform: MatQ,
    pub pivots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RankNormalForm {
    pub rank: usize,
    pub a: MatQ,
    pub b: MatQ,
    pub p: MatQ,
}

impl fmt::Debug for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MatQ[{}x{} over GF({})]",
            self.rows,
            self.cols,
            self.field.order()
        )?;
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl fmt::Display for MatQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for MatQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

// ---- counting ----

fn big(x: u64) -> BigUint {
    BigUint::from(x)
}

/// `M_q(k, t) = (q^t - 1)(q^t - q)...(q^t - q^{k-1})`, the number of injective
/// linear maps from a `k`-dimensional space into a `t`-dimensional one.
pub fn m_q(k: u32, t: u32, q: u64) -> Result<BigUint> {
    if k < 1 || k > t {
        return Err(Error::OutOfRange(format!(
            "M_q needs 1 <= k <= t, got k={k}, t={t}"
        )));
    }
    let qt = Pow::pow(big(q), t);
    Ok((0..k).fold(BigUint::one(), |acc, i| acc * (&qt - Pow::pow(big(q), i))))
}

/// Number of `r x m` matrices over `F_q` of rank `k`; 1 for `k = 0`.
pub fn count_rank(q: u64, r: u32, m: u32, k: u32) -> Result<BigUint> {
    if k > r.min(m) {
        return Err(Error::OutOfRange(format!("rank {k} exceeds min({r}, {m})")));
    }
    if k == 0 {
        return Ok(BigUint::one());
    }
    let num = m_q(k, r, q)? * m_q(k, m, q)?;
    let den = m_q(k, k, q)?;
    debug_assert!((&num % &den).is_zero());
    Ok(num / den)
}

/// `(q^r - q^{k-1})(q^m - q^{k-1}) / (q - 1)`: rank-`k` matrices whose last
/// basis image is the only free choice. Zero at `k = min(r, m) + 1`.
pub fn count_rank_one_freedom(q: u64, r: u32, m: u32, k: u32) -> Result<BigUint> {
    if k < 1 || k > r.min(m) + 1 {
        return Err(Error::OutOfRange(format!(
            "one-freedom count needs 1 <= k <= min(r, m) + 1, got k={k}"
        )));
    }
    if q < 2 {
        return Err(Error::OutOfRange("q must be at least 2".into()));
    }
    let step = Pow::pow(big(q), k - 1);
    let num = (Pow::pow(big(q), r) - &step) * (Pow::pow(big(q), m) - &step);
    Ok(num / big(q - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCensus {
    pub q: u64,
    pub r: u32,
    pub m: u32,
    pub k: u32,
    #[serde(serialize_with = "crate::report::big_as_number")]
    pub count: BigUint,
}

/// Closed-form census for every rank `0..=min(r, m)`.
pub fn rank_census(q: u64, r: u32, m: u32) -> Vec<RankCensus> {
    (0..=r.min(m))
        .map(|k| RankCensus {
            q,
            r,
            m,
            k,
            count: count_rank(q, r, m, k).expect("k in range"),
        })
        .collect()
}

/// Census by ranking every one of the `q^{rm}` matrices over `field`.
pub fn enumerate_rank_census(field: &Field, r: usize, m: usize, cap: u64) -> Result<Vec<u64>> {
    let q = field.order();
    let total = (q as u128).checked_pow((r * m) as u32).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::cap(
            "matrix enumeration",
            format!("{q}^{}", r * m),
            cap,
        ));
    }
    let mut counts = vec![0u64; r.min(m) + 1];
    let mut data = vec![0u32; r * m];
    for mut idx in 0..total as u64 {
        for d in data.iter_mut() {
            *d = (idx % q) as u32;
            idx /= q;
        }
        let mat = MatQ::new(field, r, m, data.clone())?;
        counts[mat.rank()] += 1;
    }
    Ok(counts)
}
