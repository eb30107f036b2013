//! Small exact linear-algebra kernels over `Q` and `Z`.
//!
//! Matrices are row-major `Vec<Vec<_>>`; everything here is sized for
//! ambient dimensions in the single digits.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of a rational covector with an integer vector.
pub fn pair(m: &[Rational], v: &[i64]) -> Rational {
    m.iter()
        .zip(v)
        .fold(Rational::zero(), |acc, (x, &y)| acc + x * Rational::from_integer(y.into()))
}

/// Reduced row echelon form; returns the reduced rows and pivot columns.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in 0..ncols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    rref(rows, ncols).1.len()
}

pub fn rank_int(rows: &[Vec<i64>], ncols: usize) -> usize {
    let q: Vec<_> = rows.iter().map(|r| to_rational(r)).collect();
    rank(&q, ncols)
}

/// Basis of `{x : rows · x = 0}`.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let (m, pivots) = rref(rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut x = vec![Rational::zero(); ncols];
            x[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -m[i][f].clone();
            }
            x
        })
        .collect()
}

/// Solves the square system `a · x = b`; `None` when `a` is singular.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, n + 1);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.iter().map(|r| r[n].clone()).collect())
}

pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let (m, pivots) = rref(&aug, 2 * n);
    if pivots.len() != n || pivots.iter().any(|&p| p >= n) {
        return None;
    }
    Some(m.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn det(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= m[c][c].clone();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[c][c];
                for j in c..n {
                    let s = &f * &m[c][j];
                    m[i][j] -= s;
                }
            }
        }
    }
    d
}

/// Integer determinant (Bareiss fraction-free elimination).
pub fn det_int(a: &[Vec<i64>]) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut m: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// gcd of all maximal (`rows.len()`-square) minors. For linearly
/// independent rows this is the index of their span in its saturation.
pub fn max_minor_gcd(rows: &[Vec<i64>], ncols: usize) -> BigInt {
    let k = rows.len();
    let mut g = BigInt::zero();
    for cols in combinations(ncols, k) {
        let sub: Vec<Vec<i64>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = g.gcd(&det_int(&sub));
    }
    g
}

/// Scales a nonzero rational vector to the primitive integer vector with the
/// same direction.
pub fn primitive_from_rational(v: &[Rational]) -> Result<Vec<i64>> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::ZeroVector);
    }
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| (x / &g).to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Column-style Hermite reduction: finds a unimodular `U` with
/// `rows · U = [H | 0]`, `H` having `rank` nonzero columns. Returns
/// `(rank, U, U⁻¹)`. The first `rank` rows of `U⁻¹` are a lattice basis of
/// the saturation of the row span; the last columns of `U` span its
/// annihilator in the dual lattice.
pub fn column_hermite(rows: &[Vec<i64>], n: usize) -> Result<(usize, Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
    };
    let mut u = ident(n);
    let mut uinv = ident(n);
    let mut p = 0usize;
    let chk = |x: Option<i128>| x.ok_or(Error::Overflow);
    for r in 0..a.len() {
        if p == n {
            break;
        }
        // smallest nonzero entry among columns p.. of row r
        while let Some(j) = (p..n).filter(|&j| a[r][j] != 0).min_by_key(|&j| a[r][j].abs()) {
            if j != p {
                for row in a.iter_mut() {
                    row.swap(j, p);
                }
                for row in u.iter_mut() {
                    row.swap(j, p);
                }
                uinv.swap(j, p);
            }
            let mut done = true;
            for j in p + 1..n {
                if a[r][j] != 0 {
                    let q = a[r][j].div_euclid(a[r][p]);
                    // col_j -= q col_p
                    for row in a.iter_mut() {
                        row[j] = chk(row[j].checked_sub(chk(q.checked_mul(row[p]))?))?;
                    }
                    for row in u.iter_mut() {
                        row[j] = chk(row[j].checked_sub(chk(q.checked_mul(row[p]))?))?;
                    }
                    // row_p of U⁻¹ += q row_j
                    for c in 0..n {
                        uinv[p][c] = chk(uinv[p][c].checked_add(chk(q.checked_mul(uinv[j][c]))?))?;
                    }
                    if a[r][j] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[r][p] != 0 {
            if a[r][p] < 0 {
                for row in a.iter_mut() {
                    row[p] = -row[p];
                }
                for row in u.iter_mut() {
                    row[p] = -row[p];
                }
                for c in 0..n {
                    uinv[p][c] = -uinv[p][c];
                }
            }
            p += 1;
        }
    }
    let conv = |m: Vec<Vec<i128>>| -> Result<Vec<Vec<i64>>> {
        m.into_iter()
            .map(|r| r.into_iter().map(|x| i64::try_from(x).map_err(|_| Error::Overflow)).collect())
            .collect()
    };
    Ok((p, conv(u)?, conv(uinv)?))
}

/// Fourier–Motzkin feasibility of a homogeneous system
/// `{ a·x > 0 (strict) , a·x ≥ 0 }` over `Q^nvars`.
pub fn homogeneous_feasible(constraints: &[(Vec<Rational>, bool)], nvars: usize) -> bool {
    let mut cur: Vec<(Vec<Rational>, bool)> = constraints.to_vec();
    for v in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for c in cur {
            if c.0[v].is_positive() {
                pos.push(c);
            } else if c.0[v].is_negative() {
                neg.push(c);
            } else {
                rest.push(c);
            }
        }
        for (p, ps) in &pos {
            for (q, qs) in &neg {
                let a = p[v].clone();
                let b = -q[v].clone();
                let comb: Vec<Rational> = p.iter().zip(q).map(|(x, y)| x * &b + y * &a).collect();
                rest.push((comb, *ps || *qs));
            }
        }
        // drop trivially satisfied rows to keep the system small
        rest.retain(|(c, s)| !(c.iter().all(|x| x.is_zero()) && !*s));
        rest.sort();
        rest.dedup();
        cur = rest;
    }
    !cur.iter().any(|(_, strict)| *strict)
}
