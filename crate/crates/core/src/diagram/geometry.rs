//! Exact integer/rational linear algebra for cones at desk scale (n <= 4).
//!
//! Everything here is deterministic and allocation-happy; the inputs are tiny
//! (a handful of vectors with single-digit entries), so clarity wins over
//! cleverness. Intermediate products run in `i128`.

use num_integer::Integer;
use num_rational::Ratio;

pub type Rat = Ratio<i128>;

pub fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| x as i128 * y as i128)
        .sum()
}

/// Determinant of a square integer matrix given by rows, n <= 4.
pub fn det(rows: &[Vec<i64>]) -> i128 {
    let n = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == n));
    match n {
        0 => 1,
        1 => rows[0][0] as i128,
        _ => {
            let mut acc: i128 = 0;
            for (j, &a) in rows[0].iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * a as i128 * det(&minor);
            }
            acc
        }
    }
}

/// Rank of a set of integer row vectors (fraction-free elimination in i128).
pub fn rank(rows: &[Vec<i64>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for i in rank + 1..m.len() {
            if m[i][col] != 0 {
                let (a, b) = (m[rank][col], m[i][col]);
                let g = a.gcd(&b);
                let (fa, fb) = (b / g, a / g);
                for k in col..ncols {
                    m[i][k] = m[i][k] * fb - m[rank][k] * fa;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Divides by the gcd of the entries; zero vectors pass through.
pub fn primitive(mut v: Vec<i64>) -> Vec<i64> {
    let mut g: i64 = 0;
    for &x in &v {
        g = g.gcd(&x);
    }
    if g > 1 {
        for x in &mut v {
            *x /= g;
        }
    }
    v
}

/// A primitive integer generator of the 1-dimensional orthogonal complement
/// of `n - 1` row vectors in dimension `n` (the cofactor vector). Returns
/// `None` when the rows have rank below `n - 1`.
pub fn cofactor_ray(rows: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    debug_assert_eq!(rows.len(), n - 1);
    let mut ray = Vec::with_capacity(n);
    for j in 0..n {
        let minor: Vec<Vec<i64>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1i128 } else { -1 };
        let c = sign * det(&minor);
        ray.push(i64::try_from(c).expect("cofactor fits i64 at desk scale"));
    }
    if ray.iter().all(|&x| x == 0) {
        return None;
    }
    Some(primitive(ray))
}

fn subsets(count: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, count: usize, size: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == size {
            out.push(current.clone());
            return;
        }
        for i in start..count {
            current.push(i);
            rec(i + 1, count, size, current, out);
            current.pop();
        }
    }
    rec(0, count, size, &mut current, &mut out);
    out
}

/// Extreme rays of the pointed polyhedral cone `{w : a.w >= 0 for all rows a}`
/// in dimension `n`, assuming the cone is pointed (it always is here: the
/// axis inequalities `w_i >= 0` are among the constraints). Rays are primitive
/// and sorted lexicographically.
pub fn extreme_rays(constraints: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    if n == 1 {
        let ray = vec![1i64];
        if constraints.iter().all(|c| dot(c, &ray) >= 0) {
            return vec![ray];
        }
        return Vec::new();
    }
    let mut rays: Vec<Vec<i64>> = Vec::new();
    for subset in subsets(constraints.len(), n - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| constraints[i].clone()).collect();
        let Some(ray) = cofactor_ray(&rows, n) else {
            continue;
        };
        for candidate in [ray.clone(), ray.iter().map(|&x| -x).collect()] {
            if constraints.iter().all(|c| dot(c, &candidate) >= 0)
                && !rays.contains(&candidate)
            {
                rays.push(candidate);
            }
        }
    }
    rays.sort();
    rays
}

/// Facets of the full-dimensional pointed cone generated by `rays` in
/// dimension `n`: pairs of (inward primitive normal, indices of rays on the
/// facet).
pub fn cone_facets(rays: &[Vec<i64>], n: usize) -> Vec<(Vec<i64>, Vec<usize>)> {
    let mut facets: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
    for subset in subsets(rays.len(), n - 1) {
        let rows: Vec<Vec<i64>> = subset.iter().map(|&i| rays[i].clone()).collect();
        let Some(normal) = cofactor_ray(&rows, n) else {
            continue;
        };
        for candidate in [normal.clone(), normal.iter().map(|&x| -x).collect::<Vec<_>>()] {
            if rays.iter().any(|r| dot(&candidate, r) < 0) {
                continue;
            }
            if rays.iter().all(|r| dot(&candidate, r) == 0) {
                continue;
            }
            let tight: Vec<usize> = (0..rays.len())
                .filter(|&i| dot(&candidate, &rays[i]) == 0)
                .collect();
            let tight_rows: Vec<Vec<i64>> = tight.iter().map(|&i| rays[i].clone()).collect();
            if rank(&tight_rows) != n - 1 {
                continue;
            }
            if !facets.iter().any(|(f, _)| f == &candidate) {
                facets.push((candidate, tight));
            }
        }
    }
    facets.sort();
    facets
}

/// Expresses vectors lying in the span of `basis` (rank-d integer vectors) in
/// integer coordinates over that span. All coordinate vectors are scaled by
/// one common positive factor, which preserves the cone's face lattice.
fn span_coordinates(basis: &[Vec<i64>], vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = basis.len();
    let n = basis[0].len();
    // Pick d coordinate positions where the basis has full rank.
    let cols = subsets(n, d)
        .into_iter()
        .find(|cols| {
            let sub: Vec<Vec<i64>> = basis
                .iter()
                .map(|b| cols.iter().map(|&c| b[c]).collect())
                .collect();
            det(&sub) != 0
        })
        .expect("basis has rank d");
    // Solve M c = v_restricted by Cramer, scaling by |det M| to stay integer.
    // M has the basis vectors as columns.
    let m: Vec<Vec<i64>> = (0..d)
        .map(|i| (0..d).map(|j| basis[j][cols[i]]).collect())
        .collect();
    let dm = det(&m);
    let sign = if dm >= 0 { 1 } else { -1 };
    vectors
        .iter()
        .map(|v| {
            let coords: Vec<i64> = (0..d)
                .map(|j| {
                    let mut mj = m.clone();
                    for (i, row) in mj.iter_mut().enumerate() {
                        row[j] = v[cols[i]];
                    }
                    i64::try_from(sign as i128 * det(&mj)).expect("coordinate fits i64")
                })
                .collect();
            // Soundness: the vector must reconstruct exactly within the span.
            for k in 0..n {
                let mut acc: i128 = 0;
                for j in 0..d {
                    acc += coords[j] as i128 * basis[j][k] as i128;
                }
                assert_eq!(
                    acc,
                    (sign as i128 * dm) * v[k] as i128,
                    "vector not in span"
                );
            }
            coords
        })
        .collect()
}

/// Pulling triangulation of the pointed cone generated by `rays`
/// (full-dimensional in dimension `n`): returns index sets, each of which
/// generates a simplicial subcone, together covering the cone with disjoint
/// interiors.
pub fn triangulate_cone(rays: &[Vec<i64>], n: usize) -> Vec<Vec<usize>> {
    assert!(rank(rays) == n, "cone must be full-dimensional");
    if rays.len() == n {
        return vec![(0..n).collect()];
    }
    let mut simplices = Vec::new();
    let apex = 0usize;
    for (normal, tight) in cone_facets(rays, n) {
        if dot(&normal, &rays[apex]) == 0 {
            continue; // facet contains the apex
        }
        let facet_rays: Vec<Vec<i64>> = tight.iter().map(|&i| rays[i].clone()).collect();
        // Work inside the facet's span in integer coordinates.
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for r in &facet_rays {
            let mut trial = basis.clone();
            trial.push(r.clone());
            if rank(&trial) > basis.len() {
                basis = trial;
            }
        }
        debug_assert_eq!(basis.len(), n - 1);
        let coords = span_coordinates(&basis, &facet_rays);
        for sub in triangulate_cone(&coords, n - 1) {
            let mut simplex: Vec<usize> = sub.iter().map(|&i| tight[i]).collect();
            simplex.push(apex);
            simplex.sort_unstable();
            simplices.push(simplex);
        }
    }
    simplices.sort();
    simplices
}

/// One linear constraint `coeffs . w >= rhs` over rationals.
#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Constraint {
    pub fn from_integers(coeffs: &[i64], rhs: i64) -> Self {
        Self {
            coeffs: coeffs.iter().map(|&c| Rat::from_integer(c as i128)).collect(),
            rhs: Rat::from_integer(rhs as i128),
        }
    }
}

/// Fourier-Motzkin feasibility for a small rational system `A w >= b`.
/// Returns a witness when the system is feasible.
pub fn fm_witness(constraints: &[Constraint], n: usize) -> Option<Vec<Rat>> {
    // Eliminate variables from the back; keep each level's constraints so the
    // witness can be back-substituted.
    let mut levels: Vec<Vec<Constraint>> = vec![constraints.to_vec()];
    for var in (1..n).rev() {
        let current = levels.last().unwrap();
        let mut next: Vec<Constraint> = Vec::new();
        let mut lowers: Vec<Constraint> = Vec::new(); // coeff > 0: w_var >= ...
        let mut uppers: Vec<Constraint> = Vec::new(); // coeff < 0: w_var <= ...
        for c in current {
            let a = c.coeffs[var];
            if a == Rat::from_integer(0) {
                next.push(c.clone());
            } else if a > Rat::from_integer(0) {
                lowers.push(c.clone());
            } else {
                uppers.push(c.clone());
            }
        }
        for lo in &lowers {
            for up in &uppers {
                // lo: a w_var >= rhs_lo - rest_lo ; up: -a' w_var >= rhs_up - rest_up
                let a = lo.coeffs[var];
                let b = -up.coeffs[var];
                let mut coeffs = vec![Rat::from_integer(0); n];
                for (k, slot) in coeffs.iter_mut().enumerate().take(var) {
                    *slot = lo.coeffs[k] * b + up.coeffs[k] * a;
                }
                next.push(Constraint {
                    coeffs,
                    rhs: lo.rhs * b + up.rhs * a,
                });
            }
        }
        levels.push(next);
    }
    // Back-substitute: levels[n-1] constrains w_0 alone, levels[n-2] adds w_1,
    // and so on back to the original system for the last variable.
    let mut witness = vec![Rat::from_integer(0); n];
    for var in 0..n {
        let level = &levels[n - 1 - var];
        let mut lower: Option<Rat> = None;
        let mut upper: Option<Rat> = None;
        for c in level {
            let a = c.coeffs[var];
            let mut rest = c.rhs;
            for k in 0..var {
                rest -= c.coeffs[k] * witness[k];
            }
            for k in var + 1..n {
                rest -= c.coeffs[k] * witness[k];
            }
            if a == Rat::from_integer(0) {
                if rest > Rat::from_integer(0) {
                    return None; // 0 >= positive: infeasible
                }
            } else if a > Rat::from_integer(0) {
                let bound = rest / a;
                lower = Some(match lower {
                    Some(l) if l >= bound => l,
                    _ => bound,
                });
            } else {
                let bound = rest / a;
                upper = Some(match upper {
                    Some(u) if u <= bound => u,
                    _ => bound,
                });
            }
        }
        witness[var] = match (lower, upper) {
            (Some(l), Some(u)) => {
                if l > u {
                    return None;
                }
                (l + u) / Rat::from_integer(2)
            }
            (Some(l), None) => l + Rat::from_integer(1),
            (None, Some(u)) => u - Rat::from_integer(1),
            (None, None) => Rat::from_integer(1),
        };
    }
    // Re-check against the original system; elimination order guarantees this,
    // but the witness is load-bearing for corner soundness.
    for c in constraints {
        let mut acc = Rat::from_integer(0);
        for k in 0..n {
            acc += c.coeffs[k] * witness[k];
        }
        if acc < c.rhs {
            return None;
        }
    }
    Some(witness)
}

/// Is `v` a positive multiple of a coordinate axis? Returns the axis index.
pub fn axis_index(v: &[i64]) -> Option<usize> {
    let mut found = None;
    for (i, &x) in v.iter().enumerate() {
        if x > 0 {
            if found.is_some() {
                return None;
            }
            found = Some(i);
        } else if x < 0 {
            return None;
        }
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_small_matrices() {
        assert_eq!(det(&[vec![1, 2], vec![0, 1]]), 1);
        assert_eq!(det(&[vec![0, 2], vec![1, 1]]), -2);
        assert_eq!(det(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 4]]), 24);
    }

    #[test]
    fn rank_detects_dependence() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank(&[vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]]), 2);
        assert_eq!(rank(&[vec![1, 0], vec![0, 1]]), 2);
    }

    #[test]
    fn extreme_rays_of_quadrant_slice() {
        // {w >= 0, 2 w1 >= 3 w2}: rays (1,0) and (3,2).
        let rays = extreme_rays(&[vec![1, 0], vec![0, 1], vec![2, -3]], 2);
        assert_eq!(rays, vec![vec![1, 0], vec![3, 2]]);
    }

    #[test]
    fn extreme_rays_degenerate_three_dim() {
        // {w >= 0, w1 <= w2 + w3}: four extreme rays.
        let rays = extreme_rays(
            &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, 1, 1]],
            3,
        );
        assert_eq!(
            rays,
            vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn triangulation_covers_degenerate_cone() {
        let rays = vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 1], vec![1, 1, 0]];
        let tris = triangulate_cone(&rays, 3);
        assert_eq!(tris.len(), 2);
        for t in &tris {
            let sub: Vec<Vec<i64>> = t.iter().map(|&i| rays[i].clone()).collect();
            assert_ne!(det(&sub), 0);
        }
    }

    #[test]
    fn fm_finds_separating_weight() {
        // Strictly positive w with w.(1,-2) >= 1 (vertex (1,3) vs (2,1)).
        let cs = vec![
            Constraint::from_integers(&[1, 0], 1),
            Constraint::from_integers(&[0, 1], 1),
            Constraint::from_integers(&[1, -2], 1),
        ];
        let w = fm_witness(&cs, 2).unwrap();
        assert!(w[0] >= Rat::from_integer(1));
        assert!(w[0] - 2 * w[1] >= Rat::from_integer(1));
    }

    #[test]
    fn fm_rejects_infeasible() {
        let cs = vec![
            Constraint::from_integers(&[1, 0], 1),
            Constraint::from_integers(&[-1, 0], 0),
        ];
        assert!(fm_witness(&cs, 2).is_none());
    }

    #[test]
    fn axis_detection() {
        assert_eq!(axis_index(&[0, 1]), Some(1));
        assert_eq!(axis_index(&[0, 3, 0]), Some(1));
        assert_eq!(axis_index(&[1, 1]), None);
        assert_eq!(axis_index(&[0, 0]), None);
    }
}
