//! Hamming codes over `F_q` and their lifts to `F_{q^r}`.
//!
//! `C_(m,r)` is the code over `F_{q^r}` whose parity-check matrix is the
//! `m x n` Hamming matrix over `F_q`. Its syndromes, expanded over `F_q`,
//! are `r x m` matrices; the rank of that matrix is the distance to the code,
//! which drives the decoder, the covering radius and the intersection array.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, Pow};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{pack, weight, IntersectionArray, LinearCode, Regularity};
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::gf::{prime_power, subfield_embedding, Field};
use crate::matq::{count_rank, count_rank_one_freedom, MatQ};

/// Ground field `F_q` for a prime power `q`.
pub fn ground_field(q: u64) -> Result<Field> {
    let (p, e) =
        prime_power(q).ok_or_else(|| Error::OutOfRange(format!("q = {q} is not a prime power")))?;
    crate::gf::field_make(p, &[e])
}

/// `(q^m - 1) / (q - 1)`.
pub fn hamming_length(q: u64, m: u32) -> u64 {
    (0..m).map(|i| q.pow(i)).sum()
}

/// Parity-check matrix of the `q`-ary Hamming code with `m` check rows.
///
/// `H_1 = [1]`; `H_m` is the column `(1, 0, ..., 0)` followed by one block per
/// field element `x` (in encoding order) with top row all `x` over `H_{m-1}`.
pub fn hamming_parity_matrix(ground: &Field, m: u32) -> Result<MatQ> {
    if m == 0 {
        return Err(Error::OutOfRange("m must be at least 1".into()));
    }
    let mut cols: Vec<Vec<u32>> = vec![vec![1]];
    for level in 2..=m as usize {
        let mut next = Vec::with_capacity(1 + ground.order() as usize * cols.len());
        let mut first = vec![0u32; level];
        first[0] = 1;
        next.push(first);
        for x in ground.elements() {
            for c in &cols {
                let mut col = Vec::with_capacity(level);
                col.push(x);
                col.extend_from_slice(c);
                next.push(col);
            }
        }
        cols = next;
    }
    let n = cols.len();
    let mut h = MatQ::zeros(ground, m as usize, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &x) in col.iter().enumerate() {
            h.set(i, j, x);
        }
    }
    Ok(h)
}

#[derive(Clone, Debug)]
pub struct HammingSpec {
    ground: Field,
    m: u32,
    parity: MatQ,
}

impl HammingSpec {
    pub fn new(ground: &Field, m: u32) -> Result<Self> {
        Ok(HammingSpec {
            ground: ground.clone(),
            m,
            parity: hamming_parity_matrix(ground, m)?,
        })
    }

    pub fn from_q(q: u64, m: u32) -> Result<Self> {
        Self::new(&ground_field(q)?, m)
    }

    pub fn ground(&self) -> &Field {
        &self.ground
    }

    pub fn q(&self) -> u64 {
        self.ground.order()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.parity.cols()
    }

    pub fn parity(&self) -> &MatQ {
        &self.parity
    }

    pub fn base_code(&self) -> LinearCode {
        LinearCode::from_parity(self.parity.clone()).expect("Hamming matrix has full rank")
    }
}

/// Builds the code over `F_{q^r}` with the same parity-check matrix as `base`.
pub fn lift_parity(base: &LinearCode, r: u32) -> Result<LinearCode> {
    let ambient = base.field().extend(r)?;
    LinearCode::from_parity(base.parity().reinterpret(&ambient)?)
}

/// Syndrome of a vector over `F_{q^r}` as an `r x m` matrix over `F_q`,
/// column `j` holding the coordinates of syndrome component `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SyndromeMatrix(MatQ);

impl SyndromeMatrix {
    pub fn matrix(&self) -> &MatQ {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.rank()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decoded {
    pub codeword: Vec<u32>,
    pub error: Vec<u32>,
    pub distance: usize,
}

#[derive(Clone, Debug)]
pub struct LiftedCode {
    spec: HammingSpec,
    r: u32,
    code: LinearCode,
    /// For a nonzero packed `v in F_q^m`, the `(column, scalar)` with `v = scalar * h_column`.
    projective: Vec<Option<(usize, u32)>>,
}

pub fn lift(spec: &HammingSpec, r: u32) -> Result<LiftedCode> {
    let base = spec.base_code();
    let code = lift_parity(&base, r)?;
    if code.dimension() != spec.n() - spec.m as usize {
        unreachable!("a parity-check matrix keeps its rank under field extension");
    }
    let q = spec.q();
    let g = spec.ground();
    let mut projective = vec![None; q.pow(spec.m) as usize];
    for j in 0..spec.n() {
        let col = spec.parity.col(j);
        for s in 1..q as u32 {
            let v: Vec<u32> = col.iter().map(|&x| g.mul(s, x)).collect();
            projective[pack(&v, q) as usize] = Some((j, s));
        }
    }
    Ok(LiftedCode {
        spec: spec.clone(),
        r,
        code,
        projective,
    })
}

impl LiftedCode {
    pub fn spec(&self) -> &HammingSpec {
        &self.spec
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> u32 {
        self.spec.m
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn ground(&self) -> &Field {
        self.spec.ground()
    }

    pub fn ambient(&self) -> &Field {
        self.code.field()
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    /// `(q^r)^{n-m}`.
    pub fn expected_size(&self) -> BigUint {
        Pow::pow(
            BigUint::from(self.ambient().order()),
            self.n() - self.m() as usize,
        )
    }

    pub fn covering_radius_formula(&self) -> usize {
        covering_radius_formula(self.m(), self.r) as usize
    }

    pub fn closed_form_array(&self) -> IntersectionArray {
        closed_form_array(self.spec.q(), self.m(), self.r)
    }

    fn ground_coords(&self, x: u32) -> Vec<u32> {
        if self.r == 1 {
            vec![x]
        } else {
            self.ambient().coords(x)
        }
    }

    fn ambient_from_coords(&self, c: &[u32]) -> u32 {
        if self.r == 1 {
            c[0]
        } else {
            self.ambient()
                .from_coords(c)
                .expect("r coordinates over F_q")
        }
    }

    pub fn syndrome_matrix(&self, v: &[u32]) -> Result<SyndromeMatrix> {
        let s = self.code.syndrome(v)?;
        let r = self.r as usize;
        let mut mat = MatQ::zeros(self.ground(), r, s.len());
        for (j, &x) in s.iter().enumerate() {
            for (i, c) in self.ground_coords(x).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        Ok(SyndromeMatrix(mat))
    }

    /// Distance from `v` to the code, read off as the rank of its syndrome matrix.
    pub fn rank_distance(&self, v: &[u32]) -> Result<usize> {
        Ok(self.syndrome_matrix(v)?.rank())
    }

    /// Nearest-codeword decoding through a rank factorization `S_v = U V`.
    ///
    /// Each row of `V` is a nonzero vector of `F_q^m`, hence `lambda * h_c` for a
    /// unique column `c`; putting `lambda * U[:, i]` (read as an `F_{q^r}`
    /// element) at position `c` gives an error of weight `rank(S_v)` with
    /// syndrome matrix `U V = S_v`.
    pub fn decode(&self, v: &[u32]) -> Result<Decoded> {
        let s = self.syndrome_matrix(v)?;
        let (u, vt) = s.matrix().rank_factorization();
        let g = self.ground();
        let q = self.spec.q();
        let mut error = vec![0u32; self.n()];
        for i in 0..vt.rows() {
            let (col, lambda) = self.projective[pack(vt.row(i), q) as usize]
                .expect("rows of V are nonzero and every projective point is a column");
            let coords: Vec<u32> = u.col(i).iter().map(|&x| g.mul(lambda, x)).collect();
            debug_assert_eq!(error[col], 0, "independent rows hit distinct columns");
            error[col] = self.ambient_from_coords(&coords);
        }
        let f = self.ambient();
        let codeword = v.iter().zip(&error).map(|(&a, &e)| f.sub(a, e)).collect();
        Ok(Decoded {
            codeword,
            distance: vt.rows(),
            error,
        })
    }

    /// Checks `C_r = C + aC + ... + a^{r-1}C` as sets, `a` primitive in `F_{q^r}`.
    pub fn sumset_identity(&self, caps: &Caps) -> Result<SumsetCheck> {
        let base = self.spec.base_code().codewords(caps)?;
        let combos = (base.len() as u128)
            .checked_pow(self.r)
            .unwrap_or(u128::MAX);
        if combos > caps.codewords as u128 {
            return Err(Error::cap("sumset enumeration", combos, caps.codewords));
        }
        let f = self.ambient();
        let qq = f.order();
        let alpha = f.primitive_element().value();
        let powers: Vec<u32> = (0..self.r as u64).map(|i| f.pow(alpha, i)).collect();
        let mut sumset = HashSet::with_capacity(combos as usize);
        for mut idx in 0..combos as u64 {
            let mut v = vec![0u32; self.n()];
            for &a in &powers {
                let c = &base[(idx % base.len() as u64) as usize];
                idx /= base.len() as u64;
                for (x, &ci) in v.iter_mut().zip(c) {
                    *x = f.add(*x, f.mul(a, ci));
                }
            }
            sumset.insert(pack(&v, qq));
        }
        let lifted: HashSet<u64> = self
            .code
            .codewords(caps)?
            .iter()
            .map(|c| pack(c, qq))
            .collect();
        Ok(SumsetCheck {
            equal: sumset == lifted,
            lifted_size: lifted.len(),
            sumset_size: sumset.len(),
            expected_size: self.expected_size().try_into().unwrap_or(u64::MAX),
        })
    }

    /// Minimum weight of the lift equals that of the base code, and every
    /// minimum-weight codeword of the lift is a scalar multiple of one of the base.
    pub fn min_weight_check(&self, caps: &Caps) -> Result<MinWeightVerdict> {
        let base = self.spec.base_code();
        let base_words = base.codewords(caps)?;
        let base_min = base_words
            .iter()
            .map(|c| weight(c))
            .filter(|&w| w > 0)
            .min();
        let base_min_count = base_words
            .iter()
            .filter(|c| Some(weight(c)) == base_min)
            .count();
        let words = self.code.codewords(caps)?;
        let min = words.iter().map(|c| weight(c)).filter(|&w| w > 0).min();
        let f = self.ambient();
        let q = self.spec.q();
        let mut counterexample = None;
        let mut count = 0usize;
        for c in words.iter().filter(|c| Some(weight(c)) == min) {
            count += 1;
            let beta = *c.iter().find(|&&x| x != 0).unwrap();
            let inv = f.inv(beta)?;
            let scaled: Vec<u32> = c.iter().map(|&x| f.mul(inv, x)).collect();
            let in_base = scaled.iter().all(|&x| (x as u64) < q)
                && base.is_codeword(&scaled)?
                && Some(weight(&scaled)) == base_min;
            if !in_base && counterexample.is_none() {
                counterexample = Some(c.clone());
            }
        }
        // each base word spans (Q - 1) nonzero multiples, shared by (q - 1) base words
        let expected_count = base_min_count as u64 * (f.order() - 1) / (q - 1);
        Ok(MinWeightVerdict {
            min_weight: min,
            base_min_weight: base_min,
            min_weight_count: count,
            expected_count,
            counterexample,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SumsetCheck {
    pub equal: bool,
    pub lifted_size: usize,
    pub sumset_size: usize,
    pub expected_size: u64,
}

impl SumsetCheck {
    pub fn holds(&self) -> bool {
        self.equal && self.lifted_size as u64 == self.expected_size
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinWeightVerdict {
    pub min_weight: Option<usize>,
    pub base_min_weight: Option<usize>,
    pub min_weight_count: usize,
    pub expected_count: u64,
    pub counterexample: Option<Vec<u32>>,
}

impl MinWeightVerdict {
    pub fn holds(&self) -> bool {
        self.min_weight == self.base_min_weight
            && self.counterexample.is_none()
            && self.min_weight_count as u64 == self.expected_count
    }
}

pub fn covering_radius_formula(m: u32, r: u32) -> u32 {
    m.min(r)
}

/// Intersection array of `C_(m,r)` from the closed forms
/// `b_i = (q^r - q^i)(q^m - q^i)/(q - 1)` and `c_i = q^{i-1}(q^i - 1)/(q - 1)`,
/// with `mu_i` the number of rank-`i` matrices of shape `r x m`.
pub fn closed_form_array(q: u64, m: u32, r: u32) -> IntersectionArray {
    assert!(
        q >= 2 && m >= 1 && r >= 1,
        "closed form needs q >= 2, m, r >= 1"
    );
    let rho = m.min(r);
    let qb = BigUint::from(q);
    let b = (0..rho)
        .map(|i| count_rank_one_freedom(q, r, m, i + 1).expect("i + 1 <= rho"))
        .collect();
    let c = (1..=rho)
        .map(|i| {
            Pow::pow(&qb, i - 1) * (Pow::pow(&qb, i) - BigUint::one()) / (&qb - BigUint::one())
        })
        .collect();
    let mu = (0..=rho)
        .map(|i| count_rank(q, r, m, i).expect("i <= rho"))
        .collect();
    IntersectionArray::new(lifted_degree(q, m, r), b, c, mu)
}

/// `(q^r - 1) n`, the number of neighbors of any vector of `F_{q^r}^n`.
pub fn lifted_degree(q: u64, m: u32, r: u32) -> BigUint {
    (Pow::pow(BigUint::from(q), r) - BigUint::one()) * BigUint::from(hamming_length(q, m))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryVerdict {
    pub same_bc: bool,
    pub length_mr: u64,
    pub length_rm: u64,
    pub same_a: bool,
    pub array_mr: IntersectionArray,
    pub array_rm: IntersectionArray,
}

impl SymmetryVerdict {
    pub fn holds(&self) -> bool {
        self.same_bc
    }
}

/// Compares the closed-form arrays of `C_(m,r)` and `C_(r,m)`.
pub fn rm_symmetry_check(q: u64, m: u32, r: u32) -> SymmetryVerdict {
    let array_mr = closed_form_array(q, m, r);
    let array_rm = closed_form_array(q, r, m);
    SymmetryVerdict {
        same_bc: array_mr.same_bc(&array_rm),
        length_mr: hamming_length(q, m),
        length_rm: hamming_length(q, r),
        same_a: array_mr.a == array_rm.a,
        array_mr,
        array_rm,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NestingVerdict {
    pub subset: bool,
    pub weights_preserved: bool,
    pub checked: usize,
    pub big_size: usize,
    pub small_field: String,
    pub big_field: String,
    pub witness: Option<Vec<u32>>,
}

impl NestingVerdict {
    pub fn holds(&self) -> bool {
        self.subset && self.weights_preserved
    }
}

/// Embeds every codeword of `C_(m,r)` coordinatewise into `F_{q^{sr}}` and
/// checks that it lands in `C_(m,sr)`.
pub fn nesting_check(q: u64, m: u32, r: u32, s: u32, caps: &Caps) -> Result<NestingVerdict> {
    if s == 0 || r == 0 {
        return Err(Error::ZeroDegree);
    }
    let spec = HammingSpec::from_q(q, m)?;
    let small = lift(&spec, r)?;
    let big = lift(&spec, r * s)?;
    let emb = subfield_embedding(big.ambient(), spec.ground(), r)?;
    let mut witness = None;
    let mut weights_preserved = true;
    let words = small.code().codewords(caps)?;
    let big_words: HashSet<Vec<u32>> = big.code().codewords(caps)?.into_iter().collect();
    for c in &words {
        let image: Vec<u32> = c.iter().map(|&x| emb.apply(x)).collect();
        weights_preserved &= weight(&image) == weight(c);
        let inside = big_words.contains(&image) && big.code().is_codeword(&image)?;
        if witness.is_none() && !inside {
            witness = Some(c.clone());
        }
    }
    Ok(NestingVerdict {
        subset: witness.is_none(),
        weights_preserved,
        checked: words.len(),
        big_size: big_words.len(),
        small_field: small.ambient().to_string(),
        big_field: big.ambient().to_string(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCodeSummary {
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub min_distance: usize,
    pub covering_radius: usize,
}

/// Two weight-2 cosets of a lifted non-Hamming code with different weight
/// distributions: `x` has both entries in `F_q` and lies under a base codeword
/// of weight at least 4; `x'` has the same support with one entry moved out of `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CosetPairWitness {
    pub covering_codeword: Vec<u32>,
    pub x: Vec<u32>,
    pub x_prime: Vec<u32>,
    pub syndrome_x: Vec<u32>,
    pub syndrome_x_prime: Vec<u32>,
    pub distribution_x: Vec<u64>,
    pub distribution_x_prime: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Refutation {
    pub base: BaseCodeSummary,
    pub r: u32,
    pub field: String,
    pub regularity: Regularity,
    pub witness: Option<CosetPairWitness>,
}

impl Refutation {
    /// The lift is not completely regular and the two-coset witness was found.
    pub fn holds(&self) -> bool {
        !self.regularity.is_regular() && self.witness.is_some()
    }
}

/// Lifts a nontrivial, non-perfect base code with `d >= 3` and shows the
/// result is not completely regular.
pub fn non_hamming_refutation(h_base: &MatQ, r: u32, caps: &Caps) -> Result<Refutation> {
    if r < 2 {
        return Err(Error::Hypothesis("lift degree r must be at least 2".into()));
    }
    let base = LinearCode::from_parity(h_base.clone())?;
    let (n, k) = (base.length(), base.dimension());
    if k == 0 || k + 1 >= n {
        return Err(Error::Hypothesis(format!(
            "base code [{n},{k}] is trivial (need 1 < |C| < q^(n-1))"
        )));
    }
    let d = base
        .min_distance(caps)?
        .expect("k > 0 gives nonzero codewords");
    if d < 3 {
        return Err(Error::Hypothesis(format!(
            "base code has minimum distance {d} < 3"
        )));
    }
    let rho = base.covering_radius(caps)?;
    if rho == (d - 1) / 2 {
        return Err(Error::Hypothesis(format!(
            "base code is perfect (packing radius = covering radius = {rho})"
        )));
    }
    let lifted = lift_parity(&base, r)?;
    let regularity = lifted.is_completely_regular(caps)?;

    let f = lifted.field().clone();
    let alpha = f.primitive_element().value();
    let table = lifted.coset_table(caps, true)?;
    let key = |v: &[u32]| lifted.syndrome_key(v);
    let mut witness = None;
    'search: for v in base.codewords(caps)?.iter().filter(|c| weight(c) >= 4) {
        let support: Vec<usize> = (0..n).filter(|&i| v[i] != 0).collect();
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                let mut x = vec![0u32; n];
                x[i] = v[i];
                x[j] = v[j];
                let mut x_prime = x.clone();
                x_prime[j] = f.mul(v[j], alpha);
                let (sx, sxp) = (key(&x)?, key(&x_prime)?);
                if table.distance(sx) != 2 || table.distance(sxp) != 2 {
                    continue;
                }
                let (dx, dxp) = (
                    table.distribution(sx).unwrap(),
                    table.distribution(sxp).unwrap(),
                );
                if dx != dxp {
                    witness = Some(CosetPairWitness {
                        covering_codeword: v.clone(),
                        syndrome_x: lifted.unpack_syndrome(sx),
                        syndrome_x_prime: lifted.unpack_syndrome(sxp),
                        distribution_x: dx.to_vec(),
                        distribution_x_prime: dxp.to_vec(),
                        x,
                        x_prime,
                    });
                    break 'search;
                }
            }
        }
    }
    Ok(Refutation {
        base: BaseCodeSummary {
            q: base.field().order(),
            n,
            k,
            min_distance: d,
            covering_radius: rho,
        },
        r,
        field: f.to_string(),
        regularity,
        witness,
    })
}

/// Permutes the columns of `h` and scales each by a nonzero scalar, seeded.
pub fn random_monomial_equivalent(h: &MatQ, seed: u64) -> MatQ {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = h.field();
    let mut perm: Vec<usize> = (0..h.cols()).collect();
    perm.shuffle(&mut rng);
    let scales: Vec<u32> = (0..h.cols())
        .map(|_| rng.gen_range(1..f.order() as u32))
        .collect();
    let mut out = MatQ::zeros(f, h.rows(), h.cols());
    for (j, (&src, &s)) in perm.iter().zip(&scales).enumerate() {
        for i in 0..h.rows() {
            out.set(i, j, f.mul(s, h.get(i, src)));
        }
    }
    out
}
