//! Slow, direct reference computations for the test suites.
//!
//! Nothing here shares code paths with the library routines it checks: depth
//! is enumerated over directed lines (or plane pairs in 3D, in exact integer
//! arithmetic), persistence comes from ranks of boundary submatrices, and the
//! bottleneck distance from enumerating every partial matching.

use std::collections::HashMap;

use depthmark_core::witness::Filtration;

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    robust::orient2d(
        robust::Coord { x: a[0], y: a[1] },
        robust::Coord { x: b[0], y: b[1] },
        robust::Coord { x: c[0], y: c[1] },
    )
}

/// Whether `q` lies on the open ray from `y` through `p` (given collinearity).
fn same_ray(y: [f64; 2], p: [f64; 2], q: [f64; 2]) -> bool {
    let sx = |a: [f64; 2]| (a[0] > y[0]) as i8 - (a[0] < y[0]) as i8;
    let sy = |a: [f64; 2]| (a[1] > y[1]) as i8 - (a[1] < y[1]) as i8;
    sx(p) == sx(q) && sy(p) == sy(q)
}

/// Planar halfspace depth by directed-line enumeration.
///
/// For every directed line through `y` and another point, and each side of
/// it, the closed halfplane is rotated infinitesimally either way about `y`:
/// the count is the points strictly on that side, plus the points on one of
/// the two open rays of the line, plus the points equal to `y`.
/// If every point equals `y`, the depth is their number.
pub fn planar_depth_oracle(points: &[[f64; 2]], y: [f64; 2]) -> usize {
    let at_y = points.iter().filter(|&&p| p == y).count();
    let mut best = usize::MAX;
    for &p in points.iter().filter(|&&p| p != y) {
        for side in [1.0, -1.0] {
            let mut strict = 0;
            let (mut forward, mut backward) = (0, 0);
            for &q in points.iter().filter(|&&q| q != y) {
                let o = side * orient(y, p, q);
                if o > 0.0 {
                    strict += 1;
                } else if o == 0.0 {
                    if same_ray(y, p, q) {
                        forward += 1;
                    } else {
                        backward += 1;
                    }
                }
            }
            best = best.min(at_y + strict + forward.min(backward));
        }
    }
    if best == usize::MAX {
        at_y
    } else {
        best
    }
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [i64; 3], b: [i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// Smallest open-halfplane count of `vectors` (all orthogonal to `normal`)
/// over generic in-plane directions.
fn generic_min_in_plane(vectors: &[[i64; 3]], normal: [i64; 3]) -> usize {
    let mut best = usize::MAX;
    for &b in vectors {
        let w = cross(normal, b);
        for sign in [1, -1] {
            let w = [sign * w[0], sign * w[1], sign * w[2]];
            let strict = vectors.iter().filter(|&&v| dot(v, w) > 0).count();
            let along = vectors
                .iter()
                .filter(|&&v| dot(v, w) == 0 && dot(v, b) > 0)
                .count();
            let against = vectors
                .iter()
                .filter(|&&v| dot(v, w) == 0 && dot(v, b) < 0)
                .count();
            best = best.min(strict + along.min(against));
        }
    }
    if best == usize::MAX {
        0
    } else {
        best
    }
}

/// Exact halfspace depth in R^3 for integer coordinates.
///
/// The minimum over closed halfspaces through `y` is attained at a generic
/// normal; every cell of the arrangement of planes through `y` and the data
/// has a vertex on the line through `y` spanned by a cross product of two
/// data directions, so it suffices to perturb around each such vertex.
pub fn depth_3d_oracle(points: &[[i64; 3]], y: [i64; 3]) -> usize {
    let at_y = points.iter().filter(|&&p| p == y).count();
    let v: Vec<[i64; 3]> = points
        .iter()
        .filter(|&&p| p != y)
        .map(|p| [p[0] - y[0], p[1] - y[1], p[2] - y[2]])
        .collect();
    if v.is_empty() {
        return at_y;
    }
    let mut best = usize::MAX;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            let n = cross(v[i], v[j]);
            if n == [0, 0, 0] {
                continue;
            }
            for sign in [1, -1] {
                let n = [sign * n[0], sign * n[1], sign * n[2]];
                let strict = v.iter().filter(|&&x| dot(x, n) > 0).count();
                let on: Vec<[i64; 3]> = v.iter().copied().filter(|&x| dot(x, n) == 0).collect();
                best = best.min(strict + generic_min_in_plane(&on, n));
            }
        }
    }
    if best == usize::MAX {
        // all directions collinear: one of the two rays
        let d = v[0];
        let along = v.iter().filter(|&&x| dot(x, d) > 0).count();
        best = along.min(v.len() - along);
    }
    at_y + best
}

fn gf2_rank(columns: &[Vec<usize>], rows: usize) -> usize {
    let words = rows.div_ceil(64).max(1);
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; rows];
    let mut rank = 0;
    for col in columns {
        let mut bits = vec![0u64; words];
        for &r in col {
            bits[r / 64] ^= 1 << (r % 64);
        }
        loop {
            let Some(top) = (0..words)
                .rev()
                .find(|&w| bits[w] != 0)
                .map(|w| w * 64 + 63 - bits[w].leading_zeros() as usize)
            else {
                break;
            };
            match &basis[top] {
                Some(b) => bits.iter_mut().zip(b).for_each(|(x, y)| *x ^= y),
                None => {
                    basis[top] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Persistence bars `(dim, birth, death)` (sorted) from persistent Betti
/// numbers computed as ranks of boundary submatrices.
pub fn persistence_by_ranks(f: &Filtration) -> Vec<(usize, f64, f64)> {
    let simplices = f.simplices();
    let top = f.max_dim();
    let mut values: Vec<f64> = simplices.iter().map(|s| s.value).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let k = values.len();

    // per-dimension index and value lists
    let mut by_dim: Vec<Vec<usize>> = vec![Vec::new(); top + 2];
    let mut local: HashMap<&[usize], usize> = HashMap::new();
    for (i, s) in simplices.iter().enumerate() {
        local.insert(&s.vertices, by_dim[s.dim()].len());
        by_dim[s.dim()].push(i);
    }
    let level = |i: usize| values.partition_point(|&v| v < simplices[i].value);
    // boundary of each p-simplex as local indices of (p-1)-simplices
    let boundary = |i: usize| -> Vec<usize> {
        let s = &simplices[i];
        if s.dim() == 0 {
            return Vec::new();
        }
        (0..s.vertices.len())
            .map(|skip| {
                let face: Vec<usize> = s
                    .vertices
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &v)| v)
                    .collect();
                local[face.as_slice()]
            })
            .collect()
    };

    let mut bars = Vec::new();
    for p in 0..=top {
        let cells = &by_dim[p];
        let cofaces = &by_dim[p + 1];
        let cell_level: Vec<usize> = cells.iter().map(|&i| level(i)).collect();
        let coface_level: Vec<usize> = cofaces.iter().map(|&i| level(i)).collect();
        let cell_boundaries: Vec<Vec<usize>> = cells.iter().map(|&i| boundary(i)).collect();
        let coface_boundaries: Vec<Vec<usize>> = cofaces.iter().map(|&i| boundary(i)).collect();
        let rows_below = if p == 0 { 0 } else { by_dim[p - 1].len() };

        let cycles = |s: usize| -> usize {
            let cols: Vec<Vec<usize>> = cell_boundaries
                .iter()
                .zip(&cell_level)
                .filter(|(_, &l)| l <= s)
                .map(|(b, _)| b.clone())
                .collect();
            cols.len() - gf2_rank(&cols, rows_below)
        };
        // persistent Betti number beta_p^{s,t}
        let beta = |s: usize, t: usize| -> i64 {
            let cols: Vec<Vec<usize>> = coface_boundaries
                .iter()
                .zip(&coface_level)
                .filter(|(_, &l)| l <= t)
                .map(|(b, _)| b.clone())
                .collect();
            let projected: Vec<Vec<usize>> = cols
                .iter()
                .map(|c| c.iter().copied().filter(|&r| cell_level[r] > s).collect())
                .collect();
            let boundaries_in_s =
                gf2_rank(&cols, cells.len()) - gf2_rank(&projected, cells.len());
            cycles(s) as i64 - boundaries_in_s as i64
        };
        let mut table = vec![vec![0i64; k]; k];
        for s in 0..k {
            for t in s..k {
                table[s][t] = beta(s, t);
            }
        }
        let b = |s: isize, t: usize| if s < 0 { 0 } else { table[s as usize][t] };
        for i in 0..k {
            let ii = i as isize;
            for j in i + 1..k {
                let mu = b(ii, j - 1) - b(ii - 1, j - 1) - b(ii, j) + b(ii - 1, j);
                assert!(mu >= 0, "negative multiplicity");
                for _ in 0..mu {
                    bars.push((p, values[i], values[j]));
                }
            }
            let mu = b(ii, k - 1) - b(ii - 1, k - 1);
            assert!(mu >= 0, "negative multiplicity");
            for _ in 0..mu {
                bars.push((p, values[i], f64::INFINITY));
            }
        }
    }
    bars.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.total_cmp(&b.2)));
    bars
}

/// Euler characteristic of the subcomplex with values at most `t`.
pub fn euler_characteristic(f: &Filtration, t: f64) -> i64 {
    f.simplices()
        .iter()
        .filter(|s| s.value <= t)
        .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Bottleneck distance by enumerating every partial matching.
pub fn bottleneck_exhaustive(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    fn go(i: usize, a: &[(f64, f64)], b: &[(f64, f64)], used: &mut Vec<bool>, cost: f64) -> f64 {
        if i == a.len() {
            return b
                .iter()
                .zip(used.iter())
                .filter(|(_, &u)| !u)
                .map(|(q, _)| 0.5 * (q.1 - q.0))
                .fold(cost, f64::max);
        }
        let p = a[i];
        let mut best = go(i + 1, a, b, used, cost.max(0.5 * (p.1 - p.0)));
        for j in 0..b.len() {
            if used[j] {
                continue;
            }
            let c = (p.0 - b[j].0).abs().max((p.1 - b[j].1).abs());
            if cost.max(c) >= best {
                continue;
            }
            used[j] = true;
            best = best.min(go(i + 1, a, b, used, cost.max(c)));
            used[j] = false;
        }
        best
    }
    go(0, a, b, &mut vec![false; b.len()], 0.0)
}
