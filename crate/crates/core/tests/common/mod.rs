//! Oracles shared by the integration tests. None of them go through the
//! Fincke-Pohst enumerator.

#![allow(dead_code, clippy::needless_range_loop)]

use k3bott::{DivisorClass, IntegralLattice, PolarizedLattice};
use rand::rngs::StdRng;
use rand::Rng;

/// Classes `(x, y)` of a rank-2 lattice with `v^2 = square` and
/// `dmin <= v . b <= dmax`, by solving the quadratic on each degree line.
pub fn rank2_classes(gram: &[Vec<i64>], b: &[i64], square: i64, dmin: i64, dmax: i64) -> Vec<DivisorClass> {
    let (p, q, r) = (gram[0][0] as i128, gram[0][1] as i128, gram[1][1] as i128);
    let form = |x: i128, y: i128| p * x * x + 2 * q * x * y + r * y * y;
    let bil = |x1: i128, y1: i128, x2: i128, y2: i128| p * x1 * x2 + q * (x1 * y2 + y1 * x2) + r * y1 * y2;
    // linear form v . b = g0 x + g1 y
    let g0 = p * b[0] as i128 + q * b[1] as i128;
    let g1 = q * b[0] as i128 + r * b[1] as i128;
    let (g, s, t) = ext_gcd(g0, g1);
    let (w0, w1) = (g1 / g, -g0 / g);
    let ww = form(w0, w1);
    assert!(ww < 0, "b^perp must be negative definite");
    let mut out = Vec::new();
    for k in dmin as i128..=dmax as i128 {
        if k % g != 0 {
            continue;
        }
        let (x0, y0) = (s * (k / g), t * (k / g));
        // (x0, y0) + u (w0, w1): ww u^2 + 2 pw u + (pp - square) = 0
        let pw = bil(x0, y0, w0, w1);
        let c = form(x0, y0) - square as i128;
        let disc = pw * pw - ww * c;
        if disc < 0 {
            continue;
        }
        let root = disc.isqrt();
        if root * root != disc {
            continue;
        }
        for num in [-pw + root, -pw - root] {
            if num % ww == 0 {
                let u = num / ww;
                let v = DivisorClass::new(vec![(x0 + u * w0) as i64, (y0 + u * w1) as i64]);
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    out.sort();
    out
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - a.div_euclid(b) * t)
    }
}

/// Nefness on a rank-2 K3 lattice checked against every effective
/// `(-2)`-class of degree at most `max_degree`.
pub fn nef_oracle_rank2(polarized: &PolarizedLattice, d: &DivisorClass, max_degree: i64) -> bool {
    let lattice = polarized.lattice();
    if d.is_zero() {
        return true;
    }
    if polarized.degree(d).unwrap() < 0 || lattice.self_intersection(d).unwrap() < 0 {
        return false;
    }
    rank2_classes(lattice.gram(), polarized.ample().coords(), -2, 1, max_degree)
        .iter()
        .all(|c| lattice.pairing(d, c).unwrap() >= 0)
}

/// Even hyperbolic rank-2 lattices with entries in `[-bound, bound]`, each
/// with the first vector of positive square in a small box that is a valid
/// polarization.
pub fn rank2_fixtures(bound: i64) -> Vec<PolarizedLattice> {
    let mut out = Vec::new();
    for a in (-bound..=bound).filter(|a| a % 2 == 0) {
        for c in (a..=bound).filter(|c| c % 2 == 0) {
            for b in 0..=bound {
                if b * b - a * c <= 0 {
                    continue;
                }
                let gram = vec![vec![a, b], vec![b, c]];
                let lattice = IntegralLattice::new(gram).unwrap();
                'search: for x in -3i64..=3 {
                    for y in -3i64..=3 {
                        let v = DivisorClass::new(vec![x, y]);
                        if let Ok(p) = PolarizedLattice::new(lattice.clone(), v) {
                            out.push(p);
                            break 'search;
                        }
                    }
                }
            }
        }
    }
    out
}

/// A random symmetric matrix with entries in `[-bound, bound]`, even on the
/// diagonal when `even` is set.
pub fn random_gram(rng: &mut StdRng, rank: usize, bound: i64, even: bool) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; rank]; rank];
    for i in 0..rank {
        for j in i..rank {
            let mut x = rng.gen_range(-bound..=bound);
            if i == j && even {
                x -= x.rem_euclid(2);
            }
            g[i][j] = x;
            g[j][i] = x;
        }
    }
    g
}

/// A random valid polarized K3 lattice of the given rank.
pub fn random_polarized(rng: &mut StdRng, rank: usize, bound: i64) -> PolarizedLattice {
    loop {
        let gram = random_gram(rng, rank, bound, true);
        let Ok(lattice) = IntegralLattice::new(gram) else { continue };
        if !lattice.signature().is_hyperbolic() {
            continue;
        }
        for _ in 0..20 {
            let b: Vec<i64> = (0..rank).map(|_| rng.gen_range(-4..=4)).collect();
            if let Ok(p) = PolarizedLattice::new(lattice.clone(), DivisorClass::new(b)) {
                return p;
            }
        }
    }
}
