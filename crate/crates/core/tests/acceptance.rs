//! Acceptance run: one line per criterion, nonzero exit on any failure.
//!
//! Each criterion checks library output against values computed here from
//! first principles (vector-level BFS, brute-force nearest codewords, direct
//! matrix enumeration, explicit sums of subspaces).

use std::collections::{HashSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;

use liftedcodes::code::{pack, unpack, weight, LinearCode};
use liftedcodes::config::Caps;
use liftedcodes::gf::Field;
use liftedcodes::graph::{build_coset_graph, classical_params, verify_distance_regular};
use liftedcodes::lifted::{
    closed_form_array, ground_field, hamming_parity_matrix, lift, nesting_check,
    non_hamming_refutation, rm_symmetry_check, HammingSpec, LiftedCode,
};
use liftedcodes::matq::count_rank;

const GRID: [(u64, u32, u32); 5] = [(2, 2, 2), (2, 2, 3), (2, 3, 2), (2, 2, 4), (3, 2, 2)];

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lifted(q: u64, m: u32, r: u32) -> LiftedCode {
    lift(&HammingSpec::from_q(q, m).unwrap(), r).unwrap()
}

fn big(xs: &[u64]) -> Vec<BigUint> {
    xs.iter().map(|&x| BigUint::from(x)).collect()
}

fn to_u64(xs: &[BigUint]) -> Vec<u64> {
    xs.iter().map(|x| u64::try_from(x).unwrap()).collect()
}

fn neighbors(f: &Field, v: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for a in 1..f.order() as u32 {
            let mut w = v.to_vec();
            w[i] = f.add(w[i], a);
            out.push(w);
        }
    }
    out
}

/// Distance to the code of every vector of `F_Q^n`, indexed by packed key.
fn vector_distances(code: &LinearCode) -> Vec<usize> {
    let f = code.field();
    let (q, n) = (f.order(), code.length());
    let mut dist = vec![usize::MAX; q.pow(n as u32) as usize];
    let mut queue = VecDeque::new();
    for c in code.codewords(&Caps::default()).unwrap() {
        let k = pack(&c, q) as usize;
        dist[k] = 0;
        queue.push_back(k);
    }
    while let Some(k) = queue.pop_front() {
        for w in neighbors(f, &unpack(k as u64, q, n)) {
            let kw = pack(&w, q) as usize;
            if dist[kw] == usize::MAX {
                dist[kw] = dist[k] + 1;
                queue.push_back(kw);
            }
        }
    }
    dist
}

/// Intersection numbers from the vector graph: `(b, c, a, mu)` where
/// `mu_i` counts cosets at distance `i`. `None` when some distance class is
/// not uniform.
struct VectorArray {
    b: Vec<u64>,
    c: Vec<u64>,
    a: Vec<u64>,
    mu: Vec<u64>,
}

fn vector_array(code: &LinearCode) -> Option<VectorArray> {
    let f = code.field();
    let (q, n) = (f.order(), code.length());
    let dist = vector_distances(code);
    let rho = *dist.iter().max().unwrap();
    let mut counts: Vec<Option<(u64, u64, u64)>> = vec![None; rho + 1];
    let mut class = vec![0u64; rho + 1];
    for (k, &d) in dist.iter().enumerate() {
        class[d] += 1;
        let (mut b, mut c, mut a) = (0, 0, 0);
        for w in neighbors(f, &unpack(k as u64, q, n)) {
            let e = dist[pack(&w, q) as usize];
            if e == d + 1 {
                b += 1;
            } else if e + 1 == d {
                c += 1;
            } else {
                a += 1;
            }
        }
        match counts[d] {
            None => counts[d] = Some((b, c, a)),
            Some(x) if x != (b, c, a) => return None,
            _ => {}
        }
    }
    let counts: Vec<(u64, u64, u64)> = counts.into_iter().map(Option::unwrap).collect();
    let size = class[0];
    Some(VectorArray {
        b: counts[..rho].iter().map(|t| t.0).collect(),
        c: counts[1..].iter().map(|t| t.1).collect(),
        a: counts.iter().map(|t| t.2).collect(),
        mu: class.iter().map(|&x| x / size).collect(),
    })
}

/// `b_i = (q^r - q^i)(q^m - q^i)/(q - 1)`, `c_i = q^{i-1}(q^i - 1)/(q - 1)`.
fn formula_bc(q: u64, m: u32, r: u32) -> (Vec<u64>, Vec<u64>) {
    let rho = m.min(r);
    let b = (0..rho)
        .map(|i| (q.pow(r) - q.pow(i)) * (q.pow(m) - q.pow(i)) / (q - 1))
        .collect();
    let c = (1..=rho)
        .map(|i| q.pow(i - 1) * (q.pow(i) - 1) / (q - 1))
        .collect();
    (b, c)
}

fn nearest_distance(v: &[u32], words: &[Vec<u32>]) -> usize {
    words
        .iter()
        .map(|c| v.iter().zip(c).filter(|(x, y)| x != y).count())
        .min()
        .unwrap()
}

/// Rank of a matrix over a prime field, by plain elimination.
fn prime_rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pr) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pr);
        let inv = (1..p).find(|&x| x * rows[rank][col] % p == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][col] != 0 {
                let factor = rows[i][col];
                let pivot = rows[rank].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x = (*x + (p - factor) * y) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn c1_worked_example() -> Result<String, String> {
    let l = lifted(2, 2, 4);
    let code = l.code();
    let caps = Caps::default();
    ensure(code.size() == BigUint::from(16u32), || {
        format!("|C| = {}", code.size())
    })?;
    ensure(code.codewords(&caps).unwrap().len() == 16, || {
        "codeword list".into()
    })?;
    let reg = code.is_completely_regular(&caps).unwrap();
    let a = reg.array().ok_or("not completely regular")?;
    ensure(a.b == big(&[45, 28]) && a.c == big(&[1, 6]), || {
        format!("array {}", a.compact())
    })?;
    let table = code.coset_table(&caps, false).unwrap();
    ensure(table.len() == 256 && table.mu()[2] == 210, || {
        format!("mu {:?}", table.mu())
    })?;
    let oracle = vector_array(code).ok_or("vector oracle: not CR")?;
    ensure(
        oracle.b == [45, 28] && oracle.c == [1, 6] && oracle.mu[2] == 210,
        || {
            format!(
                "vector oracle b={:?} c={:?} mu={:?}",
                oracle.b, oracle.c, oracle.mu
            )
        },
    )?;
    Ok(format!(
        "16 codewords, array {}, 210 cosets at distance 2",
        a.compact()
    ))
}

fn c2_closed_form() -> Result<String, String> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for (q, m, r) in GRID {
        let l = lifted(q, m, r);
        let reg = l.code().is_completely_regular(&caps).unwrap();
        let measured = reg.array().ok_or(format!("({q},{m},{r}) not CR"))?;
        let closed = closed_form_array(q, m, r);
        ensure(*measured == closed, || {
            format!(
                "({q},{m},{r}) {} vs {}",
                measured.compact(),
                closed.compact()
            )
        })?;
        let (b, c) = formula_bc(q, m, r);
        let oracle =
            vector_array(l.code()).ok_or(format!("({q},{m},{r}) vector oracle: not CR"))?;
        ensure(
            to_u64(&measured.b) == b
                && to_u64(&measured.c) == c
                && oracle.b == b
                && oracle.c == c
                && to_u64(&measured.a) == oracle.a
                && to_u64(&measured.mu) == oracle.mu,
            || {
                format!(
                    "({q},{m},{r}) oracle b={:?} c={:?} a={:?}",
                    oracle.b, oracle.c, oracle.a
                )
            },
        )?;
        out.push(format!("({q},{m},{r}) {}", measured.compact()));
    }
    Ok(out.join(", "))
}

fn c3_covering_radius() -> Result<String, String> {
    let mut out = Vec::new();
    for (q, m, r) in GRID {
        let code = lifted(q, m, r).code().clone();
        let bfs = code.covering_radius(&Caps::default()).unwrap();
        let vectors = *vector_distances(&code).iter().max().unwrap();
        let want = m.min(r) as usize;
        ensure(bfs == want && vectors == want, || {
            format!("({q},{m},{r}) rho {bfs}/{vectors}, want {want}")
        })?;
        out.push(format!("({q},{m},{r}) {bfs}"));
    }
    Ok(out.join(", "))
}

fn c4_rank_distance() -> Result<String, String> {
    let l = lifted(2, 3, 2);
    let code = l.code();
    let words = code.codewords(&Caps::default()).unwrap();
    let q = code.field().order();
    let total = q.pow(code.length() as u32);
    ensure(total == 16384, || format!("{total} vectors"))?;
    let mut mismatches = 0;
    for k in 0..total {
        let v = unpack(k, q, code.length());
        if l.rank_distance(&v).unwrap() != nearest_distance(&v, &words) {
            mismatches += 1;
        }
    }
    ensure(mismatches == 0, || format!("{mismatches} mismatches"))?;
    Ok(format!("{total} vectors, 0 mismatches"))
}

fn c5_rank_census() -> Result<String, String> {
    for q in [2u64, 3] {
        for r in 1..=3u32 {
            for m in 1..=3u32 {
                let mut counts = vec![0u64; (r.min(m) + 1) as usize];
                let cells = (r * m) as usize;
                for idx in 0..q.pow(r * m) {
                    let flat = unpack(idx, q, cells);
                    let rows = (0..r as usize)
                        .map(|i| {
                            flat[i * m as usize..(i + 1) * m as usize]
                                .iter()
                                .map(|&x| x as u64)
                                .collect()
                        })
                        .collect();
                    counts[prime_rank(rows, q)] += 1;
                }
                let mut total = BigUint::default();
                for (k, &n) in counts.iter().enumerate() {
                    let formula = count_rank(q, r, m, k as u32).unwrap();
                    ensure(formula == BigUint::from(n), || {
                        format!("q={q} {r}x{m} rank {k}: {formula} vs {n}")
                    })?;
                    total += formula;
                }
                ensure(total == BigUint::from(q.pow(r * m)), || {
                    format!("q={q} {r}x{m} total {total}")
                })?;
            }
        }
    }
    for (q, m, r) in GRID {
        let table = lifted(q, m, r)
            .code()
            .coset_table(&Caps::default(), false)
            .unwrap();
        for (i, &mu) in table.mu().iter().enumerate() {
            ensure(
                count_rank(q, r, m, i as u32).unwrap() == BigUint::from(mu),
                || format!("({q},{m},{r}) mu_{i} = {mu}"),
            )?;
        }
        let sum: u64 = table.mu().iter().sum();
        ensure(sum == q.pow(r * m), || {
            format!("({q},{m},{r}) {sum} cosets")
        })?;
    }
    Ok("18 shapes enumerated, 5 coset censuses".into())
}

fn c6_balance() -> Result<String, String> {
    let mut checked = 0;
    for (q, m, r) in GRID {
        let l = lifted(q, m, r);
        let degree = (q.pow(r) - 1) * l.n() as u64;
        let reg = l.code().is_completely_regular(&Caps::default()).unwrap();
        let a = reg.array().ok_or(format!("({q},{m},{r}) not CR"))?;
        let (b, c, aa, mu) = (to_u64(&a.b), to_u64(&a.c), to_u64(&a.a), to_u64(&a.mu));
        for i in 0..a.rho {
            ensure(mu[i] * b[i] == mu[i + 1] * c[i], || {
                format!("({q},{m},{r}) balance at {i}")
            })?;
        }
        for i in 0..=a.rho {
            let bi = b.get(i).copied().unwrap_or(0);
            let ci = if i == 0 { 0 } else { c[i - 1] };
            ensure(aa[i] + bi + ci == degree, || {
                format!("({q},{m},{r}) sum rule at {i}")
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} instances"))
}

fn c7_decoder() -> Result<String, String> {
    let mut out = Vec::new();
    for (q, m, r) in [(2, 3, 2), (2, 2, 4)] {
        let l = lifted(q, m, r);
        let code = l.code();
        let f = code.field();
        let total = f.order().pow(code.length() as u32);
        let mut failures = 0;
        for k in 0..total {
            let v = unpack(k, f.order(), code.length());
            let d = l.decode(&v).unwrap();
            let s = l.syndrome_matrix(&v).unwrap();
            let diff = v.iter().zip(&d.codeword).filter(|(x, y)| x != y).count();
            let ok = code.is_codeword(&d.codeword).unwrap()
                && diff == s.rank()
                && weight(&d.error) == s.rank()
                && l.syndrome_matrix(&d.error).unwrap() == s;
            failures += usize::from(!ok);
        }
        ensure(failures == 0, || {
            format!("({q},{m},{r}) {failures} failures")
        })?;
        out.push(format!("({q},{m},{r}) {total} vectors"));
    }
    Ok(out.join(", ") + ", 0 failures")
}

fn coset_distribution(x: &[u32], words: &[Vec<u32>], f: &Field) -> Vec<u64> {
    let mut dist = vec![0u64; x.len() + 1];
    for c in words {
        let w = x.iter().zip(c).filter(|(&a, &b)| f.add(a, b) != 0).count();
        dist[w] += 1;
    }
    dist
}

fn c8_non_hamming() -> Result<String, String> {
    let h = hamming_parity_matrix(&ground_field(2).unwrap(), 3)
        .unwrap()
        .select_cols(&[0, 1, 2, 3, 4, 5]);
    let rf = non_hamming_refutation(&h, 2, &Caps::default()).map_err(|e| e.to_string())?;
    ensure(
        (rf.base.n, rf.base.k, rf.base.min_distance) == (6, 3, 3),
        || format!("{:?}", rf.base),
    )?;
    ensure(!rf.regularity.is_regular(), || "lift reported CR".into())?;
    let w = rf.witness.as_ref().ok_or("no witness")?;
    let lifted_code =
        LinearCode::from_parity(h.reinterpret(&ground_field(4).unwrap()).unwrap()).unwrap();
    let words = lifted_code.codewords(&Caps::default()).unwrap();
    let f = lifted_code.field();
    let (dx, dxp) = (
        coset_distribution(&w.x, &words, f),
        coset_distribution(&w.x_prime, &words, f),
    );
    ensure(weight(&w.x) == 2 && weight(&w.x_prime) == 2, || {
        "witness weights".into()
    })?;
    ensure(dx[..2] == [0, 0] && dxp[..2] == [0, 0], || {
        "witness cosets not at distance 2".into()
    })?;
    ensure(
        dx == w.distribution_x && dxp == w.distribution_x_prime,
        || "distributions disagree with brute force".into(),
    )?;
    ensure(dx != dxp, || "distributions coincide".into())?;
    // And the vector-level oracle independently finds the lift irregular.
    ensure(vector_array(&lifted_code).is_none(), || {
        "vector oracle says CR".into()
    })?;
    Ok(format!(
        "not CR; weight-2 cosets {:?} / {:?} have distributions {dx:?} / {dxp:?}",
        w.x, w.x_prime
    ))
}

fn c9_sumset() -> Result<String, String> {
    let caps = Caps::default();
    let mut out = Vec::new();
    for (q, m, r) in [(2, 2, 2), (2, 2, 4), (2, 3, 2)] {
        let l = lifted(q, m, r);
        let f = l.ambient();
        let base_words = l.spec().base_code().codewords(&caps).unwrap();
        let alpha = f.primitive_element().value();
        // C + alpha C + ... + alpha^{r-1} C, built by successive sums.
        let mut sums: HashSet<Vec<u32>> = HashSet::from([vec![0; l.n()]]);
        for j in 0..r {
            let scale = f.pow(alpha, j as u64);
            let mut next = HashSet::new();
            for s in &sums {
                for c in &base_words {
                    next.insert(
                        s.iter()
                            .zip(c)
                            .map(|(&x, &y)| f.add(x, f.mul(scale, y)))
                            .collect::<Vec<u32>>(),
                    );
                }
            }
            sums = next;
        }
        let words: HashSet<Vec<u32>> = l.code().codewords(&caps).unwrap().into_iter().collect();
        ensure(sums == words, || {
            format!(
                "({q},{m},{r}) sumset {} vs code {}",
                sums.len(),
                words.len()
            )
        })?;
        let min = words.iter().map(|w| weight(w)).filter(|&w| w > 0).min();
        ensure(min == Some(3), || {
            format!("({q},{m},{r}) min weight {min:?}")
        })?;
        let base3: Vec<&Vec<u32>> = base_words.iter().filter(|w| weight(w) == 3).collect();
        for w in words.iter().filter(|w| weight(w) == 3) {
            let multiple = base3.iter().any(|b| {
                (1..f.order() as u32)
                    .any(|s| b.iter().map(|&x| f.mul(s, x)).collect::<Vec<u32>>() == *w)
            });
            ensure(multiple, || {
                format!("({q},{m},{r}) weight-3 word {w:?} is not a multiple")
            })?;
        }
        out.push(format!("({q},{m},{r}) |C| = {}", words.len()));
        ensure(
            l.sumset_identity(&caps).unwrap().holds() && l.min_weight_check(&caps).unwrap().holds(),
            || format!("({q},{m},{r}) library verdict"),
        )?;
    }
    Ok(out.join(", ") + ", minimum weight 3")
}

fn c10_nesting() -> Result<String, String> {
    let v = nesting_check(2, 2, 2, 2, &Caps::default()).map_err(|e| e.to_string())?;
    ensure(v.holds() && v.subset && v.witness.is_none(), || {
        format!("{v:?}")
    })?;
    ensure(v.checked == 4 && v.big_size == 16, || {
        format!("checked {} of {}", v.checked, v.big_size)
    })?;
    Ok(format!(
        "all {} embedded codewords lie among the {} codewords over F_16",
        v.checked, v.big_size
    ))
}

fn c11_coset_graph() -> Result<String, String> {
    let caps = Caps::default();
    let l = lifted(2, 3, 2);
    let g = build_coset_graph(l.code(), &caps).unwrap();
    ensure(g.vertex_count() == 64, || {
        format!("V = {}", g.vertex_count())
    })?;
    let start = Instant::now();
    let verdict = verify_distance_regular(&g, &caps).unwrap();
    let bfs = start.elapsed();
    ensure(bfs < Duration::from_secs(5), || {
        format!("all-sources BFS took {bfs:?}")
    })?;
    let p = verdict.params().ok_or(format!("{verdict:?}"))?;
    ensure(
        p.diameter == 2 && p.b == big(&[21, 12]) && p.c == big(&[1, 6]),
        || format!("{p:?}"),
    )?;
    ensure(*p == classical_params(2, 2, 3), || {
        "classical parameters differ".into()
    })?;
    Ok(format!(
        "V = 64, diameter 2, b = (21, 12), c = (1, 6), BFS {} ms",
        bfs.as_millis()
    ))
}

fn c12_symmetry() -> Result<String, String> {
    let v = rm_symmetry_check(2, 3, 2);
    let (b1, c1) = formula_bc(2, 3, 2);
    let (b2, c2) = formula_bc(2, 2, 3);
    ensure(b1 == b2 && c1 == c2, || "formula lists differ".into())?;
    ensure(
        v.same_bc && to_u64(&v.array_mr.b) == b1 && to_u64(&v.array_rm.c) == c1,
        || format!("{v:?}"),
    )?;
    ensure((v.length_mr, v.length_rm) == (7, 3), || {
        format!("lengths {} / {}", v.length_mr, v.length_rm)
    })?;
    ensure(lifted(2, 3, 2).n() == 7 && lifted(2, 2, 3).n() == 3, || {
        "code lengths".into()
    })?;
    Ok(format!("b = {b1:?}, c = {c1:?} for lengths 7 and 3"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<u64>, Check); 12] = [
        ("worked-example", Some(5), c1_worked_example),
        ("closed-form", Some(60), c2_closed_form),
        ("covering-radius", None, c3_covering_radius),
        ("rank-distance", Some(60), c4_rank_distance),
        ("rank-census", None, c5_rank_census),
        ("balance", None, c6_balance),
        ("decoder", None, c7_decoder),
        ("non-hamming", Some(30), c8_non_hamming),
        ("sumset", None, c9_sumset),
        ("nesting", None, c10_nesting),
        ("coset-graph", None, c11_coset_graph),
        ("symmetry", None, c12_symmetry),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (id, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(*s) => {
                Err(format!("took {elapsed:?}, limit {s} s"))
            }
            (r, _) => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        failed += usize::from(result.is_err());
        println!(
            "{tag} {:>2} {id:<16} {:>6} ms  {detail}",
            i + 1,
            elapsed.as_millis()
        );
    }
    println!(
        "{}/{} acceptance criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
