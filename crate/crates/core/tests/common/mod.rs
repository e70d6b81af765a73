//! Test-only oracles and generators, deliberately independent of the
//! elimination code paths they check.

#![allow(dead_code)]

use num_traits::{One, Zero};
use rand::Rng;
use soddy_core::{rat, Matrix, Rational};

/// Leibniz expansion over all permutations.
pub fn leibniz_det(m: &Matrix<Rational>) -> Rational {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(Rational::one(), |acc, i| acc * m[(i, p[i])].clone());
        if inversions % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Twice the signed area, squared and quartered: the shoelace formula.
pub fn shoelace_area_squared(p: &[[Rational; 2]; 3]) -> Rational {
    let [a, b, c] = p;
    let twice = a[0].clone() * (b[1].clone() - c[1].clone())
        + b[0].clone() * (c[1].clone() - a[1].clone())
        + c[0].clone() * (a[1].clone() - b[1].clone());
    twice.clone() * twice / rat(4, 1)
}

/// Nonzero rational with numerator and denominator in [-10, 10] \ {0}.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    let pick = |rng: &mut dyn rand::RngCore| loop {
        let v = rng.gen_range(-10i64..=10);
        if v != 0 {
            return v;
        }
    };
    rat(pick(rng), pick(rng))
}

/// `count` nonzero radii of which at most one is negative.
pub fn random_radii(rng: &mut impl Rng, count: usize) -> Vec<Rational> {
    let mut r: Vec<Rational> = (0..count).map(|_| abs(small_rational(rng))).collect();
    if rng.gen_bool(0.5) {
        let i = rng.gen_range(0..count);
        r[i] = -r[i].clone();
    }
    r
}

pub fn abs(v: Rational) -> Rational {
    if v < Rational::zero() {
        -v
    } else {
        v
    }
}

pub fn random_points(rng: &mut impl Rng, m: usize, dim: usize) -> Vec<Vec<Rational>> {
    (0..m).map(|_| (0..dim).map(|_| rat(rng.gen_range(-20i64..=20), rng.gen_range(1i64..=7))).collect()).collect()
}

/// Content of the regular `n`-simplex with side `a`: `a^n/n! · √((n+1)/2^n)`.
pub fn regular_simplex_volume(n: u32, a: f64) -> f64 {
    let fact: f64 = (1..=n).map(f64::from).product();
    a.powi(n as i32) / fact * ((n as f64 + 1.0) / 2f64.powi(n as i32)).sqrt()
}

/// Integer tuples with `(Σk)² = nΣk²`, one per `n` in 1..=6.
pub fn base_solution(n: usize) -> Vec<i64> {
    match n {
        1 => vec![-6, 10, 15],
        2 => vec![-6, 11, 14, 15],
        3 => vec![-6, 12, 14, 14, 14],
        4 => vec![-6, 12, 13, 15, 15, 15],
        5 => vec![-5, 9, 12, 13, 13, 14, 14],
        6 => vec![-5, 9, 12, 13, 13, 14, 14, 14],
        _ => panic!("no base solution for n = {n}"),
    }
}

/// Random rational point on the cone `(Σk)² = nΣk²` with nonzero entries:
/// the second intersection of a random line through a known point.
pub fn random_solution(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let p: Vec<Rational> = base_solution(n).into_iter().map(|v| rat(v, 1)).collect();
    let nn = rat(n as i64, 1);
    loop {
        let v: Vec<Rational> = (0..n + 2).map(|_| small_rational(rng)).collect();
        let sum = |x: &[Rational]| x.iter().fold(Rational::zero(), |a, b| a + b.clone());
        let dot = |x: &[Rational], y: &[Rational]| {
            x.iter().zip(y).fold(Rational::zero(), |a, (b, c)| a + b.clone() * c.clone())
        };
        let fv = sum(&v) * sum(&v) - nn.clone() * dot(&v, &v);
        if fv.is_zero() {
            continue;
        }
        let bilinear = sum(&p) * sum(&v) - nn.clone() * dot(&p, &v);
        let t = -(rat(2, 1) * bilinear) / fv;
        let q: Vec<Rational> = p.iter().zip(&v).map(|(a, b)| a.clone() + t.clone() * b.clone()).collect();
        if q.iter().all(|x| !x.is_zero()) {
            return q;
        }
    }
}
