//! Exact vertex enumeration for bounded polyhedra `{x : A x ≤ b}` by the
//! double-description method on the homogenised cone
//! `{(x, t) : A x − b t ≤ 0, −t ≤ 0}`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::rat::Rat;

type Vector = Vec<Rat>;

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a non-zero ray so its largest absolute entry is `1`.
fn normalise(mut r: Vector) -> Vector {
    let m = r.iter().map(Rat::abs).max().unwrap_or_else(Rat::zero);
    if m.is_positive() {
        for x in &mut r {
            *x = &*x / &m;
        }
    }
    r
}

/// Inverse of a square matrix by Gauss-Jordan elimination.
fn invert(m: &[Vector]) -> Option<Vec<Vector>> {
    let n = m.len();
    let mut a: Vec<Vector> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in &mut a[col] {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Greedily picks `dim` linearly independent rows.
fn independent_rows(rows: &[Vector], dim: usize) -> Option<Vec<usize>> {
    let mut chosen = Vec::new();
    let mut basis: Vec<(usize, Vector)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (pc, b) in &basis {
            if !r[*pc].is_zero() {
                let f = &r[*pc] / &b[*pc];
                for (x, y) in r.iter_mut().zip(b) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        if let Some(pc) = r.iter().position(|x| !x.is_zero()) {
            basis.push((pc, r));
            chosen.push(i);
            if chosen.len() == dim {
                return Some(chosen);
            }
        }
    }
    None
}

struct Ray {
    v: Vector,
    zero: BTreeSet<usize>,
}

/// Vertices of the bounded polyhedron `{x ∈ ℝ^d : a_i · x ≤ b_i}`.
///
/// Fails on unbounded or lower-dimensional input (no `d + 1`
/// independent homogenised constraints).
pub fn vertices(a: &[Vector], b: &[Rat]) -> Result<Vec<Vector>> {
    if a.len() != b.len() {
        return Err(Error::InvalidArgument(
            "constraint matrix and bounds differ in length".into(),
        ));
    }
    let d = a.first().map(Vec::len).unwrap_or(0);
    if a.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidArgument("ragged constraint matrix".into()));
    }
    let n = d + 1;
    let mut h: Vec<Vector> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(-bi);
            r
        })
        .collect();
    let mut t_row = vec![Rat::zero(); n];
    t_row[d] = -Rat::one();
    h.push(t_row);

    let init = independent_rows(&h, n).ok_or_else(|| {
        Error::InvalidArgument("polyhedron is not full-dimensional or not pointed".into())
    })?;
    let hb: Vec<Vector> = init.iter().map(|&i| h[i].clone()).collect();
    let inv = invert(&hb).expect("independent rows invert");
    let mut rays: Vec<Ray> = (0..n)
        .map(|j| {
            let v: Vector = (0..n).map(|i| -&inv[i][j]).collect();
            let zero = init
                .iter()
                .copied()
                .filter(|&row| dot(&h[row], &v).is_zero())
                .collect();
            Ray {
                v: normalise(v),
                zero,
            }
        })
        .collect();
    let mut done: BTreeSet<usize> = init.iter().copied().collect();

    for (idx, row) in h.iter().enumerate() {
        if done.contains(&idx) {
            continue;
        }
        let vals: Vec<Rat> = rays.iter().map(|r| dot(row, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> =
                    rays[p].zero.intersection(&rays[q].zero).copied().collect();
                if common.len() + 2 < n {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !common.is_subset(&r.zero));
                if !adjacent {
                    continue;
                }
                let v: Vector = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(rq, rp)| &(&vals[p] * rq) - &(&vals[q] * rp))
                    .collect();
                let mut zero = common;
                zero.insert(idx);
                next.push(Ray {
                    v: normalise(v),
                    zero,
                });
            }
        }
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                next.push(r);
            } else if vals[i].is_zero() {
                let mut r = r;
                r.zero.insert(idx);
                next.push(r);
            }
        }
        rays = next;
        done.insert(idx);
    }

    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        let t = r.v[d].clone();
        if !t.is_positive() {
            return Err(Error::InvalidArgument("polyhedron is unbounded".into()));
        }
        out.push(r.v[..d].iter().map(|x| x / &t).collect::<Vector>());
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The `2^d` facets `Σ s_i x_i ≤ 1` of the unit ℓ₁ ball in `ℝ^d`.
pub fn l1_ball(d: usize) -> (Vec<Vector>, Vec<Rat>) {
    let mut a = Vec::with_capacity(1 << d);
    for mask in 0u32..(1 << d) {
        a.push(
            (0..d)
                .map(|i| {
                    if mask >> i & 1 == 1 {
                        -Rat::one()
                    } else {
                        Rat::one()
                    }
                })
                .collect(),
        );
    }
    let b = vec![Rat::one(); a.len()];
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rat {
        Rat::int(n)
    }

    #[test]
    fn cube_has_eight_corners() {
        let mut a = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut row = vec![r(0); 3];
                row[i] = r(s);
                a.push(row);
            }
        }
        let v = vertices(&a, &vec![r(1); 6]).unwrap();
        assert_eq!(v.len(), 8);
        assert!(v.iter().all(|p| p.iter().all(|x| x.abs() == r(1))));
    }

    #[test]
    fn triangle() {
        let a = vec![vec![r(-1), r(0)], vec![r(0), r(-1)], vec![r(1), r(1)]];
        let v = vertices(&a, &[r(0), r(0), r(2)]).unwrap();
        assert_eq!(
            v,
            vec![vec![r(0), r(0)], vec![r(0), r(2)], vec![r(2), r(0)]]
        );
    }

    #[test]
    fn cross_polytopes() {
        for d in 1..=5 {
            let (a, b) = l1_ball(d);
            let v = vertices(&a, &b).unwrap();
            assert_eq!(v.len(), 2 * d);
            for p in &v {
                assert_eq!(p.iter().filter(|x| !x.is_zero()).count(), 1);
                assert_eq!(p.iter().map(Rat::abs).sum::<Rat>(), r(1));
            }
        }
    }

    #[test]
    fn unbounded_is_rejected() {
        let a = vec![vec![r(-1), r(0)], vec![r(0), r(-1)]];
        assert!(vertices(&a, &[r(0), r(0)]).is_err());
    }
}
