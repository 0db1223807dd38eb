//! Lazy witness filtrations.
//!
//! An edge between landmarks `a` and `b` enters at
//! `E(a, b) = min_i (max(D(a, i), D(b, i)) - m_i)_+`, where `m_i` is the
//! `nu`-th smallest landmark distance of witness `i`. Higher simplices are the
//! cliques of that graph and enter with their longest edge.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{distance, PointCloud};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WitnessConfig {
    pub nu: usize,
    pub r_max: f64,
    /// Largest simplex dimension built (2 for H1 work, 3 when H2 matters).
    pub max_dim: usize,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            nu: 1,
            r_max: 2.1,
            max_dim: 2,
        }
    }
}

impl WitnessConfig {
    fn validate(&self) -> Result<()> {
        if !(self.r_max > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "r_max {} must be positive",
                self.r_max
            )));
        }
        if !(1..=3).contains(&self.max_dim) {
            return Err(Error::InvalidParameter(format!(
                "max_dim {} outside 1..=3",
                self.max_dim
            )));
        }
        Ok(())
    }
}

/// Landmark-by-witness distances, row-major over landmarks.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    landmarks: usize,
    witnesses: usize,
    data: Vec<f64>,
}

impl DistanceMatrix {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let witnesses = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != witnesses) {
            return Err(Error::InvalidParameter("ragged distance matrix".into()));
        }
        Ok(Self {
            landmarks: rows.len(),
            witnesses,
            data: rows.concat(),
        })
    }

    pub fn between(landmarks: &[Vec<f64>], witnesses: &PointCloud) -> Result<Self> {
        if landmarks.is_empty() {
            return Err(Error::EmptyLandmarks);
        }
        if let Some(l) = landmarks.iter().find(|l| l.len() != witnesses.dim()) {
            return Err(Error::DimensionMismatch {
                expected: witnesses.dim(),
                found: l.len(),
            });
        }
        let mut data = Vec::with_capacity(landmarks.len() * witnesses.len());
        for l in landmarks {
            data.extend(witnesses.points().map(|w| distance(l, w)));
        }
        Ok(Self {
            landmarks: landmarks.len(),
            witnesses: witnesses.len(),
            data,
        })
    }

    pub fn landmarks(&self) -> usize {
        self.landmarks
    }

    pub fn witnesses(&self) -> usize {
        self.witnesses
    }

    pub fn get(&self, landmark: usize, witness: usize) -> f64 {
        self.data[landmark * self.witnesses + witness]
    }

    fn row(&self, landmark: usize) -> &[f64] {
        &self.data[landmark * self.witnesses..(landmark + 1) * self.witnesses]
    }
}

/// Per-witness offsets: the `nu`-th smallest landmark distance, or 0 for `nu = 0`.
pub fn witness_offsets(d: &DistanceMatrix, nu: usize) -> Result<Vec<f64>> {
    if nu == 0 {
        return Ok(vec![0.0; d.witnesses()]);
    }
    if nu > d.landmarks() {
        return Err(Error::NuTooLarge {
            nu,
            landmarks: d.landmarks(),
        });
    }
    let mut column = Vec::with_capacity(d.landmarks());
    Ok((0..d.witnesses())
        .map(|i| {
            column.clear();
            column.extend((0..d.landmarks()).map(|a| d.get(a, i)));
            *column.select_nth_unstable_by(nu - 1, f64::total_cmp).1
        })
        .collect())
}

/// Symmetric matrix of edge insertion values; the diagonal is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeValues {
    n: usize,
    data: Vec<f64>,
}

impl EdgeValues {
    /// From an explicit symmetric matrix.
    pub fn from_matrix(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("edge matrix must be square".into()));
        }
        for a in 0..n {
            for b in 0..n {
                if rows[a][b] != rows[b][a] || rows[a][b] < 0.0 || rows[a][b].is_nan() {
                    return Err(Error::InvalidParameter(
                        "edge matrix must be symmetric and nonnegative".into(),
                    ));
                }
            }
        }
        let mut data = rows.concat();
        for a in 0..n {
            data[a * n + a] = 0.0;
        }
        Ok(Self { n, data })
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, a: usize, b: usize) -> f64 {
        self.data[a * self.n + b]
    }
}

/// `E(a, b) = min_i (max(D(a, i), D(b, i)) - m_i)_+`.
pub fn edge_values(d: &DistanceMatrix, offsets: &[f64]) -> Result<EdgeValues> {
    if d.witnesses() == 0 {
        return Err(Error::EmptyWitnessSet);
    }
    if offsets.len() != d.witnesses() {
        return Err(Error::InvalidParameter(format!(
            "{} offsets for {} witnesses",
            offsets.len(),
            d.witnesses()
        )));
    }
    let n = d.landmarks();
    let mut data = vec![0.0; n * n];
    for a in 0..n {
        let ra = d.row(a);
        for b in a + 1..n {
            let rb = d.row(b);
            let best = ra
                .iter()
                .zip(rb)
                .zip(offsets)
                .map(|((x, y), m)| x.max(*y) - m)
                .fold(f64::INFINITY, f64::min)
                .max(0.0);
            data[a * n + b] = best;
            data[b * n + a] = best;
        }
    }
    Ok(EdgeValues { n, data })
}

/// A simplex on landmark positions with its filtration value.
#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    /// Strictly increasing vertex ids.
    pub vertices: Vec<usize>,
    pub value: f64,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// Faces of codimension one, in the order obtained by dropping each vertex.
    pub fn facets(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let k = if self.vertices.len() > 1 {
            self.vertices.len()
        } else {
            0
        };
        (0..k).map(move |skip| {
            self.vertices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, &v)| v)
                .collect()
        })
    }
}

fn filtration_order(a: &Simplex, b: &Simplex) -> Ordering {
    a.value
        .total_cmp(&b.value)
        .then(a.vertices.len().cmp(&b.vertices.len()))
        .then_with(|| a.vertices.cmp(&b.vertices))
}

/// Simplices in an order where every face precedes its cofaces and values
/// never decrease along face relations.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Filtration {
    simplices: Vec<Simplex>,
}

impl Filtration {
    /// Checks that `simplices` form a valid filtration in the given order.
    pub fn new(simplices: Vec<Simplex>) -> Result<Self> {
        let mut position: HashMap<&[usize], usize> = HashMap::with_capacity(simplices.len());
        for (k, s) in simplices.iter().enumerate() {
            if s.vertices.is_empty() || s.vertices.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NotAFiltration(format!(
                    "simplex {k} has unsorted or empty vertices {:?}",
                    s.vertices
                )));
            }
            if !s.value.is_finite() {
                return Err(Error::NotAFiltration(format!("simplex {k} has value {}", s.value)));
            }
            for face in s.facets() {
                match position.get(face.as_slice()) {
                    Some(&j) if simplices[j].value <= s.value => {}
                    Some(_) => {
                        return Err(Error::NotAFiltration(format!(
                            "face {face:?} enters after its coface {:?}",
                            s.vertices
                        )))
                    }
                    None => {
                        return Err(Error::NotAFiltration(format!(
                            "face {face:?} of {:?} missing or later",
                            s.vertices
                        )))
                    }
                }
            }
            if position.insert(&s.vertices, k).is_some() {
                return Err(Error::NotAFiltration(format!(
                    "duplicate simplex {:?}",
                    s.vertices
                )));
            }
        }
        drop(position);
        Ok(Self { simplices })
    }

    /// Sorts by (value, dimension, vertices) and validates.
    pub fn from_unordered(mut simplices: Vec<Simplex>) -> Result<Self> {
        simplices.sort_by(filtration_order);
        Self::new(simplices)
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.simplices.iter().map(Simplex::dim).max().unwrap_or(0)
    }

    /// Prefix of simplices with value at most `r`.
    pub fn truncated(&self, r: f64) -> Filtration {
        Filtration {
            simplices: self
                .simplices
                .iter()
                .filter(|s| s.value <= r)
                .cloned()
                .collect(),
        }
    }

    /// One simplex per line, `v1 v2 ... : value`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.simplices {
            let verts: Vec<String> = s.vertices.iter().map(usize::to_string).collect();
            let _ = writeln!(out, "{} : {}", verts.join(" "), s.value);
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut simplices = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::NotAFiltration(format!("line {}: {line:?}", n + 1));
            let (verts, value) = line.split_once(':').ok_or_else(bad)?;
            let vertices = verts
                .split_whitespace()
                .map(|v| v.parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            let value = value.trim().parse::<f64>().map_err(|_| bad())?;
            simplices.push(Simplex { vertices, value });
        }
        Self::new(simplices)
    }
}

/// Clique filtration of the edge graph capped at `r_max` (inclusive).
pub fn lazy_witness_from_edges(edges: &EdgeValues, r_max: f64, max_dim: usize) -> Filtration {
    let n = edges.len();
    let mut simplices: Vec<Simplex> = (0..n)
        .map(|v| Simplex {
            vertices: vec![v],
            value: 0.0,
        })
        .collect();
    // upper neighbors of each vertex
    let upper: Vec<Vec<usize>> = (0..n)
        .map(|a| (a + 1..n).filter(|&b| edges.get(a, b) <= r_max).collect())
        .collect();
    let adjacent = |a: usize, b: usize| edges.get(a, b) <= r_max;
    for a in 0..n {
        for (ib, &b) in upper[a].iter().enumerate() {
            let ab = edges.get(a, b);
            if max_dim >= 1 {
                simplices.push(Simplex {
                    vertices: vec![a, b],
                    value: ab,
                });
            }
            if max_dim < 2 {
                continue;
            }
            for (ic, &c) in upper[a].iter().enumerate().skip(ib + 1) {
                if !adjacent(b, c) {
                    continue;
                }
                let abc = ab.max(edges.get(a, c)).max(edges.get(b, c));
                simplices.push(Simplex {
                    vertices: vec![a, b, c],
                    value: abc,
                });
                if max_dim < 3 {
                    continue;
                }
                for &d in upper[a].iter().skip(ic + 1) {
                    if adjacent(b, d) && adjacent(c, d) {
                        let abcd = abc
                            .max(edges.get(a, d))
                            .max(edges.get(b, d))
                            .max(edges.get(c, d));
                        simplices.push(Simplex {
                            vertices: vec![a, b, c, d],
                            value: abcd,
                        });
                    }
                }
            }
        }
    }
    simplices.sort_by(filtration_order);
    Filtration { simplices }
}

/// Lazy witness filtration on `landmarks` witnessed by every point of `witnesses`.
pub fn build_lazy_witness(
    landmarks: &[Vec<f64>],
    witnesses: &PointCloud,
    cfg: &WitnessConfig,
) -> Result<Filtration> {
    cfg.validate()?;
    let d = DistanceMatrix::between(landmarks, witnesses)?;
    let offsets = witness_offsets(&d, cfg.nu)?;
    let edges = edge_values(&d, &offsets)?;
    Ok(lazy_witness_from_edges(&edges, cfg.r_max, cfg.max_dim))
}

pub fn simplex_count(f: &Filtration) -> usize {
    f.len()
}
