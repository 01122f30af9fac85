//! Arithmetic modulo a fixed prime, used to rule out common factors quickly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use super::bipoly::BiPoly;
use super::field::{Field, Q};

/// `2^61 − 1`.
const P: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn sub(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn int_mod(n: &BigInt) -> u64 {
    let r = n.mod_floor(&BigInt::from(P));
    r.to_u64().expect("reduced below the modulus")
}

fn reduce(q: &Q) -> Option<u64> {
    let d = int_mod(q.denom());
    if d == 0 {
        return None;
    }
    let n = int_mod(&q.numer().abs());
    let n = if q.is_negative() { sub(0, n) } else { n };
    Some(mul(n, inv(d)))
}

/// Dense coefficients indexed `[i][j]` for `x^i y^j`.
type Grid = Vec<Vec<u64>>;

fn to_grid<F: Field>(p: &BiPoly<F>) -> Option<Grid> {
    let dx = p.degree_x()? as usize;
    let dy = p.degree_y()? as usize;
    let mut g = vec![vec![0u64; dy + 1]; dx + 1];
    for ((i, j), c) in p.terms() {
        g[*i as usize][*j as usize] = reduce(&c.to_rational()?)?;
    }
    Some(g)
}

fn transpose(g: &Grid) -> Grid {
    let cols = g.first().map_or(0, |r| r.len());
    (0..cols).map(|j| g.iter().map(|r| r[j]).collect()).collect()
}

fn eval(row: &[u64], s: u64) -> u64 {
    row.iter().rev().fold(0, |acc, &c| add(mul(acc, s), c))
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let il = inv(b[db]);
    while r.len() > db {
        let k = r.len() - 1;
        let c = mul(r[k], il);
        for (j, &bj) in b.iter().enumerate() {
            r[k - db + j] = sub(r[k - db + j], mul(c, bj));
        }
        r = trim(r);
    }
    r
}

fn gcd_degree(a: Vec<u64>, b: Vec<u64>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// No common factor of positive degree in the first grid variable.
fn coprime_in_first(a: &Grid, b: &Grid) -> bool {
    if a.len() <= 1 || b.len() <= 1 {
        return true;
    }
    let la = a.last().expect("nonempty");
    let lb = b.last().expect("nonempty");
    for s in [3u64, 5, 11, 17, 29] {
        if eval(la, s) == 0 || eval(lb, s) == 0 {
            continue;
        }
        let sa = a.iter().map(|r| eval(r, s)).collect();
        let sb = b.iter().map(|r| eval(r, s)).collect();
        return gcd_degree(sa, sb) == 0;
    }
    false
}

/// `true` only when `a` and `b` have no nonconstant common factor. A `false`
/// answer is inconclusive.
pub(crate) fn certainly_coprime<F: Field>(a: &BiPoly<F>, b: &BiPoly<F>) -> bool {
    let (Some(ga), Some(gb)) = (to_grid(a), to_grid(b)) else {
        return false;
    };
    coprime_in_first(&ga, &gb) && coprime_in_first(&transpose(&ga), &transpose(&gb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;

    fn m(c: i64, i: u32, j: u32) -> BiPoly<Q> {
        BiPoly::monomial(qi(c), i, j)
    }

    #[test]
    fn detects_coprime_and_shared() {
        let a = &m(1, 1, 0) + &m(1, 0, 1);
        let b = &m(1, 1, 0) + &m(-1, 0, 1);
        assert!(certainly_coprime(&a, &b));
        let c = &a * &b;
        assert!(!certainly_coprime(&c, &a));
        // a factor in y alone
        assert!(!certainly_coprime(&(&m(1, 1, 1) + &m(1, 0, 1)), &m(1, 0, 1)));
    }
}
