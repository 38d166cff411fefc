//! Brute-force oracles that share nothing with the library's chip-firing
//! code: linear equivalence is decided by exact rational linear algebra on
//! the reduced Laplacian, and reducedness by trying every firing set.

#![allow(dead_code)]

use chipfire::{Divisor, Multigraph};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Inverse of the Laplacian with row and column `q` deleted.
pub struct ReducedLaplacianInverse {
    q: usize,
    inv: Vec<Vec<BigRational>>,
}

impl ReducedLaplacianInverse {
    pub fn new(graph: &Multigraph, q: usize) -> Self {
        let l = graph.laplacian();
        let idx: Vec<usize> = (0..l.len()).filter(|&i| i != q).collect();
        let m = idx.len();
        let mut a: Vec<Vec<BigRational>> = idx
            .iter()
            .map(|&i| {
                let mut row: Vec<BigRational> = idx
                    .iter()
                    .map(|&j| BigRational::from_integer(BigInt::from(l[i][j])))
                    .collect();
                row.extend((0..m).map(|k| {
                    if idx[k] == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                }));
                row
            })
            .collect();
        for col in 0..m {
            let pivot = (col..m)
                .find(|&r| !a[r][col].is_zero())
                .expect("invertible");
            a.swap(col, pivot);
            let p = a[col][col].clone();
            for x in a[col].iter_mut() {
                *x /= &p;
            }
            for r in 0..m {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..2 * m {
                        let sub = &f * &a[col][c];
                        a[r][c] -= sub;
                    }
                }
            }
        }
        let inv = a.into_iter().map(|row| row[m..].to_vec()).collect();
        ReducedLaplacianInverse { q, inv }
    }

    /// `(deg D, fractional parts of L_q^{-1} D|_{V - q})`: equal keys iff the
    /// divisors are linearly equivalent.
    pub fn class_key(&self, d: &Divisor) -> (i64, Vec<BigRational>) {
        let rest: Vec<BigInt> = d
            .coeffs()
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.q)
            .map(|(_, &a)| BigInt::from(a))
            .collect();
        let frac = self
            .inv
            .iter()
            .map(|row| {
                let x: BigRational = row
                    .iter()
                    .zip(&rest)
                    .map(|(c, a)| c * BigRational::from_integer(a.clone()))
                    .fold(BigRational::zero(), |s, t| s + t);
                &x - x.floor()
            })
            .collect();
        (d.degree(), frac)
    }

    pub fn equivalent(&self, a: &Divisor, b: &Divisor) -> bool {
        self.class_key(a) == self.class_key(b)
    }
}

/// All effective divisors of degree `deg` on `n` vertices.
pub fn effective_of_degree(n: usize, deg: i64) -> Vec<Divisor> {
    fn go(n: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Divisor>) {
        if cur.len() + 1 == n {
            cur.push(left);
            out.push(Divisor::new(cur.clone()));
            cur.pop();
            return;
        }
        for a in 0..=left {
            cur.push(a);
            go(n, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if deg >= 0 {
        go(n, deg, &mut Vec::new(), &mut out);
    }
    out
}

pub fn has_effective_rep(lap: &ReducedLaplacianInverse, d: &Divisor) -> bool {
    let key = lap.class_key(d);
    effective_of_degree(d.len(), d.degree())
        .iter()
        .any(|e| lap.class_key(e) == key)
}

/// Rank straight from the definition over every effective `E`.
pub fn rank(graph: &Multigraph, d: &Divisor) -> i64 {
    let lap = ReducedLaplacianInverse::new(graph, 0);
    let n = graph.vertex_count();
    let mut r = -1;
    while r < d.degree() {
        let next = r + 1;
        let ok = effective_of_degree(n, next)
            .iter()
            .all(|e| has_effective_rep(&lap, &(d - e)));
        if !ok {
            break;
        }
        r = next;
    }
    r
}

/// q-reduced by definition: non-negative off `q`, and firing any nonempty
/// `A` avoiding `q` drives some vertex of `A` negative.
pub fn is_q_reduced(graph: &Multigraph, d: &Divisor, q: usize) -> bool {
    let n = graph.vertex_count();
    if (0..n).any(|v| v != q && d[v] < 0) {
        return false;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != q).collect();
    for mask in 1u64..(1 << others.len()) {
        let inside = |v: usize| {
            others
                .iter()
                .position(|&o| o == v)
                .is_some_and(|i| mask >> i & 1 == 1)
        };
        let legal = others.iter().enumerate().all(|(i, &v)| {
            if mask >> i & 1 == 0 {
                return true;
            }
            let out: i64 = graph
                .neighbors(v)
                .iter()
                .filter(|&&(w, _)| !inside(w))
                .map(|&(_, m)| m as i64)
                .sum();
            d[v] >= out
        });
        if legal {
            return false;
        }
    }
    true
}

/// Every integer vector with entries in `ranges[i]`.
pub fn boxed(ranges: &[(i64, i64)]) -> Vec<Divisor> {
    let mut out = vec![Vec::new()];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (lo..=hi).map(move |a| {
                    let mut p = p.clone();
                    p.push(a);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(Divisor::new).collect()
}
