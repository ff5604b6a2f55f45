//! Reference computations that avoid the library's own linear algebra.
#![allow(dead_code)]

use exalg::GradedModule;
use rand::Rng;

/// Rank of a matrix over F_p by plain Gaussian elimination on `u64` rows.
pub fn naive_rank(p: u64, mut rows: Vec<Vec<u64>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| !rows[r][c].is_multiple_of(p)) else { continue };
        rows.swap(rank, piv);
        let inv = pow(rows[rank][c] % p, p - 2, p);
        for x in rows[rank].iter_mut() {
            *x = *x % p * inv % p;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][c].is_multiple_of(p) {
                let f = rows[r][c] % p;
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(&pivot) {
                    *x = (*x % p + p * p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Random matrix with roughly `density` of its entries nonzero.
pub fn random_rows(rng: &mut impl Rng, p: u64, r: usize, c: usize, density: f64) -> Vec<Vec<u64>> {
    (0..r).map(|_| (0..c).map(|_| if rng.gen_bool(density) { rng.gen_range(1..p) } else { 0 }).collect()).collect()
}

/// Degree-0 Hom by solving the whole commuting system at once: unknowns are
/// every entry of every block `F_d`, constraints `X^M_i[d] F_{d+1} = F_d X^N_i[d]`.
pub fn brute_hom_dim(m: &GradedModule, n: &GradedModule) -> usize {
    let p = m.field().p() as u64;
    let degs: Vec<i32> = m.degrees().filter(|&d| m.dim(d) > 0 && n.dim(d) > 0).collect();
    let mut offset = std::collections::HashMap::new();
    let mut unknowns = 0;
    for &d in &degs {
        offset.insert(d, unknowns);
        unknowns += m.dim(d) * n.dim(d);
    }
    if unknowns == 0 {
        return 0;
    }
    let var = |d: i32, r: usize, c: usize| offset.get(&d).map(|o| o + r * n.dim(d) + c);
    let mut eqs: Vec<Vec<u64>> = Vec::new();
    let (lo, hi) = m.degree_range().unwrap();
    for i in 0..m.n_vars() {
        for d in lo..=hi {
            let (a, b) = (m.dim(d), n.dim(d + 1));
            if a == 0 || b == 0 {
                continue;
            }
            let xm = m.action(i, d);
            let xn = n.action(i, d);
            for r in 0..a {
                for c in 0..b {
                    let mut eq = vec![0u64; unknowns];
                    for k in 0..m.dim(d + 1) {
                        if let Some(v) = var(d + 1, k, c) {
                            eq[v] = (eq[v] + xm.get(r, k) as u64) % p;
                        }
                    }
                    for k in 0..n.dim(d) {
                        if let Some(v) = var(d, r, k) {
                            eq[v] = (eq[v] + p - xn.get(k, c) as u64) % p;
                        }
                    }
                    eqs.push(eq);
                }
            }
        }
    }
    unknowns - if eqs.is_empty() { 0 } else { naive_rank(p, eqs) }
}

pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}
