//! Persistence over GF(2) and the diagram summaries used by the benchmark.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::witness::Filtration;

/// One persistence pair. `death` is `f64::INFINITY` for classes that never die.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bar {
    pub dim: usize,
    pub birth: f64,
    pub death: f64,
}

impl Bar {
    pub fn lifetime(&self) -> f64 {
        self.death - self.birth
    }

    pub fn is_finite(&self) -> bool {
        self.death.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct PersistenceDiagram {
    pub bars: Vec<Bar>,
}

impl PersistenceDiagram {
    pub fn in_dim(&self, dim: usize) -> impl Iterator<Item = &Bar> + '_ {
        self.bars.iter().filter(move |b| b.dim == dim)
    }

    /// Finite lifetimes in `dim`, descending.
    pub fn finite_lifetimes(&self, dim: usize) -> Vec<f64> {
        let mut out: Vec<f64> = self
            .in_dim(dim)
            .filter(|b| b.is_finite())
            .map(Bar::lifetime)
            .collect();
        out.sort_by(|a, b| b.total_cmp(a));
        out
    }

    /// Bars sorted by (dim, birth, death) so that diagrams compare as multisets.
    pub fn canonical(&self) -> Vec<Bar> {
        let mut bars = self.bars.clone();
        bars.sort_by(|a, b| {
            a.dim
                .cmp(&b.dim)
                .then(a.birth.total_cmp(&b.birth))
                .then(a.death.total_cmp(&b.death))
        });
        bars
    }

    /// The diagram of the prefix of the filtration up to `r`: bars born after
    /// `r` vanish and bars dying after `r` become infinite.
    pub fn truncated(&self, r: f64) -> PersistenceDiagram {
        PersistenceDiagram {
            bars: self
                .bars
                .iter()
                .filter(|b| b.birth <= r)
                .map(|b| Bar {
                    death: if b.death > r { f64::INFINITY } else { b.death },
                    ..*b
                })
                .collect(),
        }
    }

    /// Lines `dim birth death`, with `inf` for infinite deaths.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for b in &self.bars {
            if b.is_finite() {
                let _ = writeln!(out, "{} {} {}", b.dim, b.birth, b.death);
            } else {
                let _ = writeln!(out, "{} {} inf", b.dim, b.birth);
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut bars = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::InvalidParameter(format!("diagram line {}: {line:?}", n + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(bad());
            }
            let dim = fields[0].parse().map_err(|_| bad())?;
            let birth = fields[1].parse().map_err(|_| bad())?;
            let death = match fields[2] {
                "inf" | "Inf" | "infinity" => f64::INFINITY,
                s => s.parse().map_err(|_| bad())?,
            };
            bars.push(Bar { dim, birth, death });
        }
        Ok(Self { bars })
    }
}

/// Symmetric difference of two ascending index lists.
fn add_columns(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Boundary columns (ascending row indices) in filtration order.
pub fn boundary_columns(f: &Filtration) -> Result<Vec<Vec<usize>>> {
    let mut index: HashMap<&[usize], usize> = HashMap::with_capacity(f.len());
    let mut columns = Vec::with_capacity(f.len());
    for (k, s) in f.simplices().iter().enumerate() {
        let mut col = Vec::with_capacity(s.vertices.len());
        for face in s.facets() {
            match index.get(face.as_slice()) {
                Some(&j) => col.push(j),
                None => {
                    return Err(Error::NotAFiltration(format!(
                        "face {face:?} of {:?} does not precede it",
                        s.vertices
                    )))
                }
            }
        }
        col.sort_unstable();
        index.insert(&s.vertices, k);
        columns.push(col);
    }
    Ok(columns)
}

/// Persistence pairs `(birth index, death index)` and unpaired indices.
///
/// Columns are reduced left to right within each dimension, top dimension
/// first, so that columns whose index is already a pivot can be skipped.
pub fn persistence_pairs(f: &Filtration) -> Result<(Vec<(usize, usize)>, Vec<usize>)> {
    let mut columns = boundary_columns(f)?;
    let n = columns.len();
    let dims: Vec<usize> = f.simplices().iter().map(|s| s.dim()).collect();
    let top = f.max_dim();
    let mut pivot_owner: Vec<Option<usize>> = vec![None; n];
    let mut cleared = vec![false; n];
    let mut pairs = Vec::new();
    for d in (1..=top).rev() {
        for j in 0..n {
            if dims[j] != d || cleared[j] {
                continue;
            }
            let mut col = std::mem::take(&mut columns[j]);
            while let Some(&low) = col.last() {
                match pivot_owner[low] {
                    Some(k) => col = add_columns(&col, &columns[k]),
                    None => break,
                }
            }
            if let Some(&low) = col.last() {
                pivot_owner[low] = Some(j);
                cleared[low] = true;
                pairs.push((low, j));
            }
            columns[j] = col;
        }
    }
    let mut paired = vec![false; n];
    for &(b, d) in &pairs {
        paired[b] = true;
        paired[d] = true;
    }
    let essential = (0..n).filter(|&i| !paired[i]).collect();
    pairs.sort_unstable();
    Ok((pairs, essential))
}

/// Persistence diagram of a filtration over GF(2); zero-length bars are dropped.
pub fn compute_persistence(f: &Filtration) -> Result<PersistenceDiagram> {
    let (pairs, essential) = persistence_pairs(f)?;
    let s = f.simplices();
    let mut bars: Vec<Bar> = pairs
        .into_iter()
        .filter(|&(b, d)| s[d].value > s[b].value)
        .map(|(b, d)| Bar {
            dim: s[b].dim(),
            birth: s[b].value,
            death: s[d].value,
        })
        .collect();
    bars.extend(essential.into_iter().map(|i| Bar {
        dim: s[i].dim(),
        birth: s[i].value,
        death: f64::INFINITY,
    }));
    Ok(PersistenceDiagram { bars })
}

/// Default lifetime threshold for counting loops.
pub const DEFAULT_LIFE_THRESHOLD: f64 = 0.25;
/// Default trim for the bottleneck comparison.
pub const DEFAULT_TRIM: f64 = 0.05;

/// Number of finite bars in `dim` whose lifetime is at least `tau_life`.
pub fn thresholded_count(d: &PersistenceDiagram, dim: usize, tau_life: f64) -> usize {
    d.in_dim(dim)
        .filter(|b| b.is_finite() && b.lifetime() >= tau_life)
        .count()
}

/// Number of finite H1 bars whose lifetime is at least `tau_life`.
pub fn thresholded_h1_count(d: &PersistenceDiagram, tau_life: f64) -> usize {
    thresholded_count(d, 1, tau_life)
}

/// The `k` largest finite lifetimes in `dim`, descending, padded with zeros.
pub fn top_lifetimes(d: &PersistenceDiagram, dim: usize, k: usize) -> Vec<f64> {
    let mut lives = d.finite_lifetimes(dim);
    lives.resize(k, 0.0);
    lives
}

/// `top1 / top2`, infinite when the second lifetime is zero.
pub fn lifetime_ratio(top1: f64, top2: f64) -> f64 {
    if top2 > 0.0 {
        top1 / top2
    } else {
        f64::INFINITY
    }
}

fn linf(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).abs().max((a.1 - b.1).abs())
}

fn half_life(a: (f64, f64)) -> f64 {
    0.5 * (a.1 - a.0)
}

/// Kuhn's augmenting-path matching; true when every left vertex is matched.
fn has_perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(
        u: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    let mut seen = vec![false; right];
    (0..adj.len()).all(|u| {
        seen.iter_mut().for_each(|s| *s = false);
        augment(u, adj, &mut seen, &mut owner)
    })
}

/// Can `a` and `b` be matched (points to points or to the diagonal) at cost `delta`?
fn matchable(a: &[(f64, f64)], b: &[(f64, f64)], delta: f64) -> bool {
    let (n, m) = (a.len(), b.len());
    // left: a then diagonal copies of b; right: b then diagonal copies of a
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n + m];
    for i in 0..n {
        for j in 0..m {
            if linf(a[i], b[j]) <= delta {
                adj[i].push(j);
            }
        }
        if half_life(a[i]) <= delta {
            adj[i].push(m + i);
        }
    }
    for j in 0..m {
        if half_life(b[j]) <= delta {
            adj[n + j].push(j);
        }
        adj[n + j].extend(m..m + n);
    }
    has_perfect_matching(&adj, n + m)
}

/// Exact bottleneck distance between finite diagrams under the sup norm.
///
/// The optimum is one of the pairwise or point-to-diagonal costs, so a binary
/// search over those candidates with a matching test is exact.
pub fn bottleneck_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let mut candidates = vec![0.0];
    candidates.extend(a.iter().chain(b).map(|&p| half_life(p)));
    for &p in a {
        candidates.extend(b.iter().map(|&q| linf(p, q)));
    }
    candidates.sort_by(f64::total_cmp);
    candidates.dedup();
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if matchable(a, b, candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo]
}

/// Finite bars in `dim` with lifetime at least `trim`, as (birth, death).
pub fn trimmed_points(d: &PersistenceDiagram, dim: usize, trim: f64) -> Vec<(f64, f64)> {
    d.in_dim(dim)
        .filter(|b| b.is_finite() && b.lifetime() >= trim)
        .map(|b| (b.birth, b.death))
        .collect()
}

/// Bottleneck distance after dropping infinite bars and bars shorter than `trim`.
pub fn bottleneck_trimmed(
    d1: &PersistenceDiagram,
    d2: &PersistenceDiagram,
    dim: usize,
    trim: f64,
) -> Result<f64> {
    if !(trim >= 0.0) {
        return Err(Error::InvalidParameter(format!("trim {trim} must be >= 0")));
    }
    Ok(bottleneck_distance(
        &trimmed_points(d1, dim, trim),
        &trimmed_points(d2, dim, trim),
    ))
}
