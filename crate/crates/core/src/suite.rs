//! The reproduction suite: every checked claim about lifted Hamming codes,
//! runnable as a whole or filtered by id.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::code::{nearest_codeword_distance, unpack, weight, IntersectionArray, LinearCode};
use crate::config::{Caps, OutputFormat};
use crate::error::{Error, Result};
use crate::graph::{build_coset_graph, classical_params, verify_distance_regular};
use crate::lifted::{
    ground_field, hamming_parity_matrix, lift, lifted_degree, nesting_check,
    non_hamming_refutation, rm_symmetry_check, HammingSpec, LiftedCode,
};
use crate::matq::{count_rank, enumerate_rank_census, MatQ};

/// `(q, m, r)` instances checked against the closed form.
pub const GRID: [(u64, u32, u32); 5] = [(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 4), (3, 2, 2)];

pub struct Criterion {
    pub id: &'static str,
    pub title: &'static str,
    pub limit: Option<Duration>,
    run: fn(&Caps) -> Result<Outcome>,
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

pub fn criteria() -> &'static [Criterion] {
    const fn secs(s: u64) -> Option<Duration> {
        Some(Duration::from_secs(s))
    }
    static ALL: [Criterion; 12] = [
        Criterion {
            id: "worked-example",
            title: "repetition code lifted to F_16 has array (45, 28; 1, 6) and 210 cosets at distance 2",
            limit: secs(5),
            run: worked_example,
        },
        Criterion {
            id: "closed-form",
            title: "measured intersection arrays equal the closed form on the grid",
            limit: secs(60),
            run: closed_form,
        },
        Criterion {
            id: "covering-radius",
            title: "covering radius equals min(r, m) on the grid",
            limit: None,
            run: covering_radius,
        },
        Criterion {
            id: "rank-distance",
            title: "rank of the syndrome matrix equals the distance to C_(3,2) over F_4",
            limit: secs(60),
            run: rank_distance,
        },
        Criterion {
            id: "rank-census",
            title: "rank counts agree with matrix enumeration and with coset counts",
            limit: None,
            run: rank_census,
        },
        Criterion {
            id: "balance",
            title: "mu_i b_i = mu_(i+1) c_(i+1) and a_i + b_i + c_i = (q^r - 1) n",
            limit: None,
            run: balance,
        },
        Criterion {
            id: "decoder",
            title: "rank-factorization decoder is exact on every ambient vector",
            limit: None,
            run: decoder,
        },
        Criterion {
            id: "non-hamming",
            title: "lifted shortened Hamming [6,3,3]_2 is not completely regular",
            limit: secs(30),
            run: non_hamming,
        },
        Criterion {
            id: "sumset",
            title: "C_r = C + aC + ... + a^(r-1)C and minimum weight 3 from base codewords",
            limit: None,
            run: sumset,
        },
        Criterion {
            id: "nesting",
            title: "embedded C_(2,2) over F_4 is a subcode of C_(2,4) over F_16",
            limit: None,
            run: nesting,
        },
        Criterion {
            id: "coset-graph",
            title: "coset graph of C_(3,2) over F_4 is distance-regular with classical parameters",
            limit: secs(5),
            run: coset_graph,
        },
        Criterion {
            id: "symmetry",
            title: "b and c lists of C_(3,2) and C_(2,3) coincide while lengths differ",
            limit: None,
            run: symmetry,
        },
    ];
    &ALL
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: &'static str,
    pub criterion: &'static str,
    pub pass: bool,
    pub detail: String,
    pub runtime_ms: u128,
    /// The run stopped on an enumeration cap.
    #[serde(skip)]
    pub capped: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub results: Vec<CriterionResult>,
    pub passed: bool,
}

impl SuiteReport {
    pub fn capped(&self) -> bool {
        self.results.iter().any(|r| r.capped)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => crate::report::to_json(self),
            OutputFormat::Csv => {
                let mut out = String::from("id,criterion,pass,detail,runtime_ms\n");
                for r in &self.results {
                    let _ = writeln!(
                        out,
                        "{},\"{}\",{},\"{}\",{}",
                        r.id,
                        r.criterion.replace('"', "\"\""),
                        r.pass,
                        r.detail.replace('"', "\"\""),
                        r.runtime_ms
                    );
                }
                out
            }
            OutputFormat::Text => {
                let mut out = String::new();
                for r in &self.results {
                    let _ = writeln!(
                        out,
                        "{:<4} {:<16} {:>7} ms  {}",
                        if r.pass { "PASS" } else { "FAIL" },
                        r.id,
                        r.runtime_ms,
                        r.detail
                    );
                }
                let passed = self.results.iter().filter(|r| r.pass).count();
                let _ = writeln!(out, "{passed}/{} criteria passed", self.results.len());
                out
            }
        }
    }
}

pub fn run_one(c: &Criterion, caps: &Caps) -> CriterionResult {
    let start = Instant::now();
    let result = (c.run)(caps);
    let elapsed = start.elapsed();
    let (mut pass, mut detail, capped) = match result {
        Ok(o) => (o.pass, o.detail, false),
        Err(e) => (false, format!("error: {e}"), e.is_cap()),
    };
    if let Some(limit) = c.limit {
        if elapsed > limit {
            pass = false;
            let _ = write!(detail, "; exceeded {} s", limit.as_secs());
        }
    }
    CriterionResult {
        id: c.id,
        criterion: c.title,
        pass,
        detail,
        runtime_ms: elapsed.as_millis(),
        capped,
    }
}

/// Runs the selected criteria (all when `only` is empty) in their fixed order.
pub fn run(only: &[String], caps: &Caps) -> Result<SuiteReport> {
    for id in only {
        if !criteria().iter().any(|c| c.id == id) {
            let known: Vec<&str> = criteria().iter().map(|c| c.id).collect();
            return Err(Error::OutOfRange(format!(
                "unknown criterion {id:?}; known: {}",
                known.join(", ")
            )));
        }
    }
    let results: Vec<CriterionResult> = criteria()
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|id| id == c.id))
        .map(|c| run_one(c, caps))
        .collect();
    Ok(SuiteReport {
        passed: results.iter().all(|r| r.pass),
        results,
    })
}

/// The `[6, 3, 3]` binary code: `H_{3,2}` without its last column.
pub fn shortened_hamming_6_3() -> MatQ {
    let h = hamming_parity_matrix(&ground_field(2).expect("2 is prime"), 3).expect("m = 3");
    h.select_cols(&[0, 1, 2, 3, 4, 5])
}

fn lifted(q: u64, m: u32, r: u32) -> Result<LiftedCode> {
    lift(&HammingSpec::from_q(q, m)?, r)
}

fn all_vectors(code: &LinearCode, caps: &Caps) -> Result<Vec<Vec<u32>>> {
    let q = code.field().order();
    let n = code.length();
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= caps.vectors)
        .ok_or_else(|| Error::cap("ambient vectors", format!("{q}^{n}"), caps.vectors))?;
    Ok((0..total).map(|k| unpack(k, q, n)).collect())
}

fn bigs(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn worked_example(caps: &Caps) -> Result<Outcome> {
    let l = lifted(2, 2, 4)?;
    let code = l.code();
    let reg = code.is_completely_regular(caps)?;
    let oracle = code.cr_vector_oracle(caps)?;
    let table = code.coset_table(caps, false)?;
    let Some(a) = reg.array() else {
        return outcome(false, "not completely regular");
    };
    let pass = code.size() == BigUint::from(16u32)
        && a.b == bigs(&[45, 28])
        && a.c == bigs(&[1, 6])
        && oracle.array() == Some(a)
        && table.len() == 256
        && table.mu().get(2) == Some(&210);
    outcome(
        pass,
        format!(
            "|C| = {}, array {}, {} cosets, {} at distance 2",
            code.size(),
            a.compact(),
            table.len(),
            table.mu().get(2).copied().unwrap_or(0)
        ),
    )
}

type Measured = ((u64, u32, u32), LiftedCode, Option<IntersectionArray>);

fn measured_grid(caps: &Caps) -> Result<Vec<Measured>> {
    GRID.iter()
        .map(|&(q, m, r)| {
            let l = lifted(q, m, r)?;
            let a = l.code().is_completely_regular(caps)?.array().cloned();
            Ok(((q, m, r), l, a))
        })
        .collect()
}

fn closed_form(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = Vec::new();
    for ((q, m, r), l, a) in measured_grid(caps)? {
        let oracle = l.code().cr_vector_oracle(caps)?;
        let ok = a.as_ref() == Some(&l.closed_form_array()) && oracle.array() == a.as_ref();
        pass &= ok;
        detail.push(format!(
            "({q},{m},{r}) {}",
            a.map_or("not CR".into(), |a| a.compact())
        ));
    }
    outcome(pass, detail.join("; "))
}

fn covering_radius(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = Vec::new();
    for (q, m, r) in GRID {
        let rho = lifted(q, m, r)?.code().covering_radius(caps)?;
        pass &= rho == m.min(r) as usize;
        detail.push(format!("({q},{m},{r}) rho = {rho}"));
    }
    outcome(pass, detail.join("; "))
}

fn rank_distance(caps: &Caps) -> Result<Outcome> {
    let l = lifted(2, 3, 2)?;
    let code = l.code();
    let codewords = code.codewords(caps)?;
    let vectors = all_vectors(code, caps)?;
    let mut mismatches = 0;
    for v in &vectors {
        if l.rank_distance(v)? != nearest_codeword_distance(v, &codewords) {
            mismatches += 1;
        }
    }
    outcome(
        mismatches == 0 && vectors.len() == 16384,
        format!(
            "{} vectors against {} codewords, {mismatches} mismatches",
            vectors.len(),
            codewords.len()
        ),
    )
}

fn rank_census(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut checked = 0;
    for q in [2u64, 3] {
        let f = ground_field(q)?;
        for r in 1..=3u32 {
            for m in 1..=3u32 {
                let counts = enumerate_rank_census(&f, r as usize, m as usize, caps.vectors)?;
                let mut total = BigUint::default();
                for (k, &n) in counts.iter().enumerate() {
                    let formula = count_rank(q, r, m, k as u32)?;
                    pass &= formula == BigUint::from(n);
                    total += formula;
                }
                pass &= counts.len() == m.min(r) as usize + 1;
                pass &= total == Pow::pow(BigUint::from(q), r * m);
                checked += 1;
            }
        }
    }
    for (q, m, r) in GRID {
        let table = lifted(q, m, r)?.code().coset_table(caps, false)?;
        for (i, &mu) in table.mu().iter().enumerate() {
            pass &= count_rank(q, r, m, i as u32)? == BigUint::from(mu);
        }
    }
    outcome(
        pass,
        format!("{checked} shapes enumerated, {} coset censuses", GRID.len()),
    )
}

fn balance(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = Vec::new();
    for ((q, m, r), _, a) in measured_grid(caps)? {
        let ok = a
            .as_ref()
            .is_some_and(|a| a.is_balanced() && a.satisfies_sum_rule(&lifted_degree(q, m, r)));
        pass &= ok;
        detail.push(format!(
            "({q},{m},{r}) {}",
            if ok { "ok" } else { "violated" }
        ));
    }
    outcome(pass, detail.join("; "))
}

fn decoder(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = Vec::new();
    for (q, m, r) in [(2, 3, 2), (2, 2, 4)] {
        let l = lifted(q, m, r)?;
        let code = l.code();
        let vectors = all_vectors(code, caps)?;
        let mut failures = 0;
        for v in &vectors {
            let d = l.decode(v)?;
            let s = l.syndrome_matrix(v)?;
            let back: Vec<u32> = d
                .codeword
                .iter()
                .zip(&d.error)
                .map(|(&c, &e)| code.field().add(c, e))
                .collect();
            let ok = code.is_codeword(&d.codeword)?
                && back == *v
                && weight(&d.error) == s.rank()
                && d.distance == s.rank()
                && l.syndrome_matrix(&d.error)? == s;
            failures += usize::from(!ok);
        }
        pass &= failures == 0;
        detail.push(format!(
            "({q},{m},{r}) {} vectors, {failures} failures",
            vectors.len()
        ));
    }
    outcome(pass, detail.join("; "))
}

fn non_hamming(caps: &Caps) -> Result<Outcome> {
    let refutation = non_hamming_refutation(&shortened_hamming_6_3(), 2, caps)?;
    let b = &refutation.base;
    let shape_ok = (b.n, b.k, b.min_distance) == (6, 3, 3);
    let witness_ok = refutation.witness.as_ref().is_some_and(|w| {
        weight(&w.x) == 2 && weight(&w.x_prime) == 2 && w.distribution_x != w.distribution_x_prime
    });
    let detail = match &refutation.witness {
        Some(w) => format!(
            "not CR; cosets of {:?} and {:?} have distributions {:?} and {:?}",
            w.x, w.x_prime, w.distribution_x, w.distribution_x_prime
        ),
        None => format!(
            "regular = {}, no witness",
            refutation.regularity.is_regular()
        ),
    };
    outcome(refutation.holds() && shape_ok && witness_ok, detail)
}

fn sumset(caps: &Caps) -> Result<Outcome> {
    let mut pass = true;
    let mut detail = Vec::new();
    for (q, m, r) in [(2, 2, 2), (2, 2, 4), (2, 3, 2)] {
        let l = lifted(q, m, r)?;
        let s = l.sumset_identity(caps)?;
        let w = l.min_weight_check(caps)?;
        let ok = s.holds() && w.holds() && w.min_weight == Some(3);
        pass &= ok;
        detail.push(format!(
            "({q},{m},{r}) |C| = {}, d = {:?}, {} weight-3 words",
            s.lifted_size, w.min_weight, w.min_weight_count
        ));
    }
    outcome(pass, detail.join("; "))
}

fn nesting(caps: &Caps) -> Result<Outcome> {
    let v = nesting_check(2, 2, 2, 2, caps)?;
    outcome(
        v.holds() && v.checked == 4 && v.big_size == 16,
        format!(
            "{} embedded codewords inside the {} codewords of the big code",
            v.checked, v.big_size
        ),
    )
}

fn coset_graph(caps: &Caps) -> Result<Outcome> {
    let l = lifted(2, 3, 2)?;
    let g = build_coset_graph(l.code(), caps)?;
    let verdict = verify_distance_regular(&g, caps)?;
    let expected = classical_params(2, 2, 3);
    let Some(p) = verdict.params() else {
        return outcome(false, format!("{verdict:?}"));
    };
    let pass = g.vertex_count() == 64
        && p.diameter == 2
        && p.b == bigs(&[21, 12])
        && p.c == bigs(&[1, 6])
        && *p == expected;
    outcome(
        pass,
        format!(
            "V = {}, diameter {}, b = {:?}, c = {:?}",
            p.vertices, p.diameter, p.b, p.c
        ),
    )
}

fn symmetry(_: &Caps) -> Result<Outcome> {
    let v = rm_symmetry_check(2, 3, 2);
    outcome(
        v.holds() && (v.length_mr, v.length_rm) == (7, 3),
        format!(
            "{} for lengths {} and {}",
            v.array_mr.compact(),
            v.length_mr,
            v.length_rm
        ),
    )
}
