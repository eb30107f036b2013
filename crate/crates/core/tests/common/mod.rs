#![allow(dead_code)]

use eqtodd_core::linalg;
use eqtodd_core::{int, rat, Cone, EquivariantDivisor, Fan, InnerProduct, IntVec, PolySeries, Rational};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rays (1,0,0),(0,1,0),(0,0,1),(1,1,-1),(-1,-1,0) with maximal cones
/// 1234, 135, 145, 235, 245 (0-based in code).
pub fn example_fan() -> Fan {
    Fan::new(
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1], vec![-1, -1, 0]],
        vec![vec![0, 1, 2, 3], vec![0, 2, 4], vec![0, 3, 4], vec![1, 2, 4], vec![1, 3, 4]],
    )
    .unwrap()
}

/// The same fan with the square cone split along the diagonal 12.
pub fn example_fan_triangulated() -> Fan {
    Fan::new(
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1], vec![-1, -1, 0]],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 4], vec![0, 3, 4], vec![1, 2, 4], vec![1, 3, 4]],
    )
    .unwrap()
}

/// Rays ρ0 = (-1,-1), ρ1 = (1,0), ρ2 = (0,1).
pub fn triangle_fan() -> Fan {
    Fan::new(2, vec![vec![-1, -1], vec![1, 0], vec![0, 1]], vec![vec![1, 2], vec![0, 1], vec![0, 2]]).unwrap()
}

pub fn cone(g: &[&[i64]]) -> Cone {
    Cone::new(g[0].len(), g.iter().map(|v| v.to_vec()).collect()).unwrap()
}

pub fn series2(terms: &[(&[u32], i64, i64)], order: u32) -> PolySeries {
    PolySeries::from_terms(2, order, terms.iter().map(|(e, n, d)| (e.to_vec(), rat(*n, *d)))).unwrap()
}

pub fn rand_rat<R: Rng>(r: &mut R, span: i64) -> Rational {
    rat(r.gen_range(-span..=span), r.gen_range(1..=4))
}

/// `AᵀA + I` for a random small rational `A`.
pub fn random_gram<R: Rng>(r: &mut R, n: usize) -> InnerProduct {
    let a: Vec<Vec<Rational>> = (0..n).map(|_| (0..n).map(|_| rand_rat(r, 3)).collect()).collect();
    let g = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let s: Rational = (0..n).map(|k| &a[k][i] * &a[k][j]).sum();
                    if i == j {
                        s + int(1)
                    } else {
                        s
                    }
                })
                .collect()
        })
        .collect();
    InnerProduct::new(g).unwrap()
}

/// Rows of a random unimodular matrix.
pub fn random_unimodular<R: Rng>(r: &mut R, n: usize) -> Vec<IntVec> {
    loop {
        let mut m: Vec<IntVec> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        for _ in 0..3 * n {
            let i = r.gen_range(0..n);
            let j = r.gen_range(0..n);
            if i == j {
                continue;
            }
            let c = r.gen_range(-2..=2);
            for k in 0..n {
                m[i][k] += c * m[j][k];
            }
        }
        if r.gen_bool(0.5) {
            m.swap(0, n - 1);
        }
        if m.iter().flatten().all(|x| x.abs() <= 6) {
            return m;
        }
    }
}

/// A random smooth cone of dimension `k` in `Z^n`.
pub fn random_smooth_cone<R: Rng>(r: &mut R, n: usize, k: usize) -> Cone {
    let rows = random_unimodular(r, n);
    Cone::new(n, rows[..k].to_vec()).unwrap()
}

/// A random complete simplicial fan in `Z^2`.
pub fn random_complete_fan_2d<R: Rng>(r: &mut R) -> Fan {
    loop {
        let k = r.gen_range(3..=6);
        let mut rays: Vec<IntVec> = Vec::new();
        while rays.len() < k {
            let v = vec![r.gen_range(-3..=3), r.gen_range(-3..=3)];
            if let Ok(p) = eqtodd_core::primitive(&v) {
                if !rays.contains(&p) {
                    rays.push(p);
                }
            }
        }
        let angle = |v: &IntVec| (v[1] as f64).atan2(v[0] as f64);
        rays.sort_by(|a, b| angle(a).partial_cmp(&angle(b)).unwrap());
        let ok = (0..k).all(|i| {
            let a = &rays[i];
            let b = &rays[(i + 1) % k];
            a[0] * b[1] - a[1] * b[0] > 0
        });
        if !ok {
            continue;
        }
        let cones = (0..k).map(|i| vec![i, (i + 1) % k]).collect();
        return Fan::new(2, rays, cones).unwrap();
    }
}

/// A random Cartier divisor: exact on simplicial fans, and on the example
/// fan subject to α1 + α2 = α3 + α4.
pub fn random_divisor<R: Rng>(r: &mut R, fan: &Fan) -> EquivariantDivisor {
    let mut alpha: Vec<Rational> = (0..fan.rays().len()).map(|_| rand_rat(r, 5)).collect();
    if !fan.is_simplicial() {
        alpha[3] = &alpha[0] + &alpha[1] - &alpha[2];
    }
    EquivariantDivisor::new(fan, alpha).unwrap()
}

pub fn to_rat(v: &[i64]) -> Vec<Rational> {
    linalg::to_rational(v)
}
