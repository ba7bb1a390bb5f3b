//! Coset graphs of linear codes and an exhaustive distance-regularity check.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Pow;
use serde::Serialize;

use crate::code::LinearCode;
use crate::config::Caps;
use crate::error::{Error, Result};
use crate::gf::packed_add;
use crate::lifted::closed_form_array;
use crate::report::{big_as_number, bigs_as_numbers};

/// Vertices are packed syndromes; `s ~ t` when `t - s` is the syndrome of a
/// weight-one vector.
#[derive(Clone, Debug)]
pub struct CosetGraph {
    adjacency: Vec<Vec<u32>>,
    degree: usize,
}

pub fn build_coset_graph(code: &LinearCode, caps: &Caps) -> Result<CosetGraph> {
    let q = code.field().order();
    let e = code.redundancy();
    let vertices = q
        .checked_pow(e as u32)
        .filter(|&v| v as u128 * code.neighbor_count() as u128 <= caps.coset_steps as u128)
        .ok_or_else(|| Error::cap("coset graph", format!("{q}^{e} vertices"), caps.coset_steps))?;
    let p = code.field().characteristic();
    let steps = code.column_syndromes();
    let adjacency = (0..vertices)
        .map(|s| steps.iter().map(|&g| packed_add(p, s, g) as u32).collect())
        .collect();
    Ok(CosetGraph {
        adjacency,
        degree: steps.len(),
    })
}

impl CosetGraph {
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adjacency[v as usize]
    }

    /// Undirected edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self
            .adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| {
                ns.iter()
                    .filter(move |&&v| (u as u32) < v)
                    .map(move |&v| (u as u32, v))
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// No loops, no repeated neighbors, and symmetric adjacency.
    pub fn is_simple(&self) -> bool {
        self.adjacency.iter().enumerate().all(|(u, ns)| {
            let mut sorted = ns.clone();
            sorted.sort_unstable();
            sorted.dedup();
            sorted.len() == ns.len()
                && !ns.contains(&(u as u32))
                && ns
                    .iter()
                    .all(|&v| self.adjacency[v as usize].contains(&(u as u32)))
        })
    }

    pub fn distances_from(&self, root: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertex_count()];
        dist[root as usize] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u as usize];
            for &v in self.neighbors(u) {
                if dist[v as usize] == u32::MAX {
                    dist[v as usize] = d + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgParams {
    #[serde(rename = "V", serialize_with = "big_as_number")]
    pub vertices: BigUint,
    pub diameter: usize,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub b: Vec<BigUint>,
    #[serde(serialize_with = "bigs_as_numbers")]
    pub c: Vec<BigUint>,
}

/// A vertex `v` at distance `distance` from `root` whose `(c, b)` counts
/// disagree with the ones first seen at that distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DrgWitness {
    pub root: u32,
    pub vertex: u32,
    pub distance: usize,
    pub expected: (u64, u64),
    pub found: (u64, u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum DistanceRegularity {
    Regular(DrgParams),
    Irregular(DrgWitness),
    Disconnected { root: u32, unreached: u32 },
}

impl DistanceRegularity {
    pub fn params(&self) -> Option<&DrgParams> {
        match self {
            DistanceRegularity::Regular(p) => Some(p),
            _ => None,
        }
    }
}

/// BFS from every vertex; for each pair at distance `i` the number of
/// neighbors at distance `i - 1` and `i + 1` must depend on `i` only.
pub fn verify_distance_regular(g: &CosetGraph, caps: &Caps) -> Result<DistanceRegularity> {
    let v = g.vertex_count() as u128;
    let work = v * v * g.degree() as u128;
    if work > caps.coset_steps as u128 {
        return Err(Error::cap("all-sources BFS", work, caps.coset_steps));
    }
    let mut table: Vec<Option<(u64, u64)>> = vec![None; g.vertex_count()];
    for root in 0..g.vertex_count() as u32 {
        let dist = g.distances_from(root);
        if let Some(u) = dist.iter().position(|&d| d == u32::MAX) {
            return Ok(DistanceRegularity::Disconnected {
                root,
                unreached: u as u32,
            });
        }
        for (x, &d) in dist.iter().enumerate() {
            let (mut down, mut up) = (0u64, 0u64);
            for &y in g.neighbors(x as u32) {
                let e = dist[y as usize];
                if e + 1 == d {
                    down += 1;
                } else if e == d + 1 {
                    up += 1;
                }
            }
            let d = d as usize;
            match table[d] {
                None => table[d] = Some((down, up)),
                Some(expected) if expected != (down, up) => {
                    return Ok(DistanceRegularity::Irregular(DrgWitness {
                        root,
                        vertex: x as u32,
                        distance: d,
                        expected,
                        found: (down, up),
                    }));
                }
                Some(_) => {}
            }
        }
    }
    let table: Vec<(u64, u64)> = table.into_iter().map_while(|t| t).collect();
    let diameter = table.len() - 1;
    Ok(DistanceRegularity::Regular(DrgParams {
        vertices: BigUint::from(g.vertex_count()),
        diameter,
        b: table[..diameter]
            .iter()
            .map(|&(_, b)| BigUint::from(b))
            .collect(),
        c: table[1..].iter().map(|&(c, _)| BigUint::from(c)).collect(),
    }))
}

/// Bilinear-forms parameters: `q^{rm}` vertices, diameter `min(r, m)`.
pub fn classical_params(q: u64, r: u32, m: u32) -> DrgParams {
    let array = closed_form_array(q, m, r);
    DrgParams {
        vertices: Pow::pow(BigUint::from(q), r * m),
        diameter: array.rho,
        b: array.b,
        c: array.c,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Dot,
    Json,
}

impl FromStr for GraphFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(GraphFormat::Dot),
            "json" => Ok(GraphFormat::Json),
            other => Err(Error::UnsupportedFormat(other.to_string())),
        }
    }
}

pub fn export_graph(g: &CosetGraph, format: &str) -> Result<String> {
    let edges = g.edges();
    Ok(match format.parse()? {
        GraphFormat::Dot => {
            let mut out = String::from("graph coset {\n");
            for v in 0..g.vertex_count() {
                let _ = writeln!(out, "  {v};");
            }
            for (u, v) in edges {
                let _ = writeln!(out, "  {u} -- {v};");
            }
            out.push_str("}\n");
            out
        }
        GraphFormat::Json => {
            #[derive(Serialize)]
            struct Export {
                nodes: Vec<usize>,
                edges: Vec<(u32, u32)>,
            }
            serde_json::to_string(&Export {
                nodes: (0..g.vertex_count()).collect(),
                edges,
            })
            .expect("plain data")
        }
    })
}
