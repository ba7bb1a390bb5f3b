//! End-to-end verification of one lifted Hamming code `C_(m,r)` over `F_q`.

use std::fmt::Write as _;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::code::{nearest_codeword_distance, unpack, weight, IntersectionArray, LinearCode};
use crate::config::{Caps, OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::graph::{build_coset_graph, classical_params, verify_distance_regular};
use crate::lifted::{lift, random_monomial_equivalent, HammingSpec, LiftedCode};
use crate::matq::count_rank;

/// Vectors checked by the decoder and rank-distance sweeps when the ambient
/// space is too large to enumerate.
pub const SAMPLE_SIZE: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: &'static str,
    pub status: Status,
    pub detail: String,
}

impl Claim {
    fn check(name: &'static str, ok: bool, detail: impl Into<String>) -> Claim {
        Claim {
            name,
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.into(),
        }
    }

    /// Turns a cap error into a skipped claim and propagates anything else.
    fn guarded(name: &'static str, run: impl FnOnce() -> Result<Claim>) -> Result<Claim> {
        match run() {
            Err(e) if e.is_cap() => Ok(Claim {
                name,
                status: Status::Skipped,
                detail: e.to_string(),
            }),
            other => other,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub q: u64,
    pub m: u32,
    pub r: u32,
    pub n: usize,
    pub rho: usize,
    pub field: String,
    pub closed_form: IntersectionArray,
    pub measured: Option<IntersectionArray>,
    #[serde(rename = "match")]
    pub matches: bool,
    pub claims: Vec<Claim>,
}

impl VerifyReport {
    /// No claim failed; skipped claims do not count against the report.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.status != Status::Fail)
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => crate::report::to_json(self),
            OutputFormat::Csv => {
                let mut out = String::from("claim,status,detail\n");
                for c in &self.claims {
                    let _ = writeln!(
                        out,
                        "{},{},\"{}\"",
                        c.name,
                        status_str(c.status),
                        c.detail.replace('"', "\"\"")
                    );
                }
                out
            }
            OutputFormat::Text => {
                let mut out = format!(
                    "C_({},{}) over {} : n = {}, rho = {}\nclosed form {}\n",
                    self.m,
                    self.r,
                    self.field,
                    self.n,
                    self.rho,
                    self.closed_form.compact()
                );
                if let Some(a) = &self.measured {
                    let _ = writeln!(out, "measured    {}", a.compact());
                }
                for c in &self.claims {
                    let _ = writeln!(
                        out,
                        "{:<8} {:<20} {}",
                        status_str(c.status),
                        c.name,
                        c.detail
                    );
                }
                out
            }
        }
    }
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIP",
    }
}

/// The ambient vectors swept by the per-vector claims: all of them when
/// `Q^n` fits the vector cap, otherwise a seeded sample.
fn sweep(code: &LinearCode, caps: &Caps, seed: u64) -> (Vec<Vec<u32>>, bool) {
    let q = code.field().order();
    let n = code.length();
    match q.checked_pow(n as u32).filter(|&t| t <= caps.vectors) {
        Some(total) => ((0..total).map(|k| unpack(k, q, n)).collect(), true),
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let vs = (0..SAMPLE_SIZE)
                .map(|_| (0..n).map(|_| rng.gen_range(0..q as u32)).collect())
                .collect();
            (vs, false)
        }
    }
}

pub fn verify(cfg: &RunConfig) -> Result<VerifyReport> {
    let caps = &cfg.caps;
    let spec = HammingSpec::from_q(cfg.q, cfg.m)?;
    let lifted = lift(&spec, cfg.r)?;
    if lifted.ambient().order() > caps.field_order {
        return Err(Error::cap(
            "field order",
            lifted.ambient().order(),
            caps.field_order,
        ));
    }
    let code = lifted.code();
    let closed = lifted.closed_form_array();
    let rho_formula = lifted.covering_radius_formula();
    let table = code.coset_table(caps, false)?;
    let regularity = code.is_completely_regular(caps)?;
    let measured = regularity.array().cloned();
    let mut claims = Vec::new();

    claims.push(Claim::check(
        "lift-cardinality",
        code.size() == lifted.expected_size(),
        format!(
            "|C| = {} (expected {})",
            code.size(),
            lifted.expected_size()
        ),
    ));
    claims.push(Claim::check(
        "complete-regularity",
        regularity.is_regular(),
        match &measured {
            Some(a) => format!("array {}", a.compact()),
            None => format!("witness {:?}", regularity.witness()),
        },
    ));
    claims.push(Claim::check(
        "closed-form",
        measured.as_ref() == Some(&closed),
        format!("closed form {}", closed.compact()),
    ));
    claims.push(Claim::check(
        "covering-radius",
        table.covering_radius() == rho_formula,
        format!(
            "BFS {} vs min(r,m) = {rho_formula}",
            table.covering_radius()
        ),
    ));
    let census_ok = table.mu().len() == closed.mu.len()
        && table.mu().iter().enumerate().all(|(i, &mu)| {
            count_rank(cfg.q, cfg.r, cfg.m, i as u32).is_ok_and(|c| c == BigUint::from(mu))
        });
    claims.push(Claim::check(
        "coset-census",
        census_ok,
        format!("mu = {:?}", table.mu()),
    ));
    let degree = BigUint::from(code.neighbor_count());
    claims.push(Claim::check(
        "balance",
        measured
            .as_ref()
            .is_some_and(|a| a.is_balanced() && a.satisfies_sum_rule(&degree)),
        "mu_i b_i = mu_{i+1} c_{i+1}; a_i + b_i + c_i = (Q-1) n",
    ));

    let (vectors, exhaustive) = sweep(code, caps, cfg.seed);
    let scope = if exhaustive { "all" } else { "sampled" };
    claims.push(Claim::guarded("rank-distance", || {
        rank_distance_claim(&lifted, &table, &vectors, caps, scope)
    })?);
    claims.push(decoder_claim(&lifted, &vectors, scope)?);
    claims.push(Claim::guarded("min-weight", || {
        let v = lifted.min_weight_check(caps)?;
        Ok(Claim::check(
            "min-weight",
            v.holds(),
            format!(
                "min weight {:?}, {} minimum-weight codewords",
                v.min_weight, v.min_weight_count
            ),
        ))
    })?);
    claims.push(Claim::guarded("sumset", || {
        let s = lifted.sumset_identity(caps)?;
        Ok(Claim::check(
            "sumset",
            s.holds(),
            format!("|sumset| = {}, |C| = {}", s.sumset_size, s.lifted_size),
        ))
    })?);
    claims.push(Claim::guarded("coset-graph", || {
        let g = build_coset_graph(code, caps)?;
        let verdict = verify_distance_regular(&g, caps)?;
        let expected = classical_params(cfg.q, cfg.r, cfg.m);
        Ok(Claim::check(
            "coset-graph",
            verdict.params() == Some(&expected),
            format!(
                "{} vertices, {}",
                g.vertex_count(),
                crate::report::to_json(&verdict).replace(['\n', ' '], "")
            ),
        ))
    })?);
    claims.push(Claim::guarded("column-equivalence", || {
        let h = random_monomial_equivalent(spec.parity(), cfg.seed);
        let base = LinearCode::from_parity(h)?;
        let other = crate::lifted::lift_parity(&base, cfg.r)?.is_completely_regular(caps)?;
        Ok(Claim::check(
            "column-equivalence",
            other.array() == measured.as_ref(),
            format!("seed {}", cfg.seed),
        ))
    })?);

    Ok(VerifyReport {
        q: cfg.q,
        m: cfg.m,
        r: cfg.r,
        n: lifted.n(),
        rho: table.covering_radius(),
        field: lifted.ambient().to_string(),
        matches: measured.as_ref() == Some(&closed),
        closed_form: closed,
        measured,
        claims,
    })
}

fn rank_distance_claim(
    lifted: &LiftedCode,
    table: &crate::code::CosetTable,
    vectors: &[Vec<u32>],
    caps: &Caps,
    scope: &str,
) -> Result<Claim> {
    let code = lifted.code();
    // Brute force against every codeword when that fits in the coset budget.
    let size = code.size();
    let brute = BigUint::from(vectors.len()) * &size <= BigUint::from(caps.coset_steps);
    let codewords = if brute {
        code.codewords(caps)?
    } else {
        Vec::new()
    };
    let mut mismatches = 0usize;
    for v in vectors {
        let d = lifted.rank_distance(v)?;
        let bfs = table.distance(code.syndrome_key(v)?);
        let exact = if brute {
            nearest_codeword_distance(v, &codewords)
        } else {
            bfs
        };
        if d != bfs || d != exact || d > weight(v) {
            mismatches += 1;
        }
    }
    let against = if brute { "brute force and BFS" } else { "BFS" };
    Ok(Claim::check(
        "rank-distance",
        mismatches == 0,
        format!(
            "{scope} {} vectors against {against}, {mismatches} mismatches",
            vectors.len()
        ),
    ))
}

fn decoder_claim(lifted: &LiftedCode, vectors: &[Vec<u32>], scope: &str) -> Result<Claim> {
    let code = lifted.code();
    let mut failures = 0usize;
    for v in vectors {
        let d = lifted.decode(v)?;
        let s = lifted.syndrome_matrix(v)?;
        let ok = code.is_codeword(&d.codeword)?
            && weight(&d.error) == s.rank()
            && lifted.syndrome_matrix(&d.error)? == s;
        if !ok {
            failures += 1;
        }
    }
    Ok(Claim::check(
        "decoder",
        failures == 0,
        format!("{scope} {} vectors, {failures} failures", vectors.len()),
    ))
}
