//! Heuristic gcd of integer polynomials by evaluation at a large integer and
//! balanced digit reconstruction. Every answer is checked by exact division;
//! `None` means the heuristic gave up.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::bipoly::BiPoly;
use super::field::Q;

type Uni = Vec<BigInt>;

const TRIES: usize = 6;
const MAX_BITS: u64 = 40_000;

fn trim(mut v: Uni) -> Uni {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn norm(v: &[BigInt]) -> BigInt {
    v.iter().map(|c| c.abs()).max().unwrap_or_default()
}

fn eval(v: &[BigInt], t: &BigInt) -> BigInt {
    v.iter().rev().fold(BigInt::zero(), |acc, c| acc * t + c)
}

/// Digits of `n` in base `b` with each digit in `(−b/2, b/2]`.
fn balanced_digits(n: &BigInt, b: &BigInt) -> Uni {
    let half = b / 2;
    let mut n = n.clone();
    let mut out = Vec::new();
    while !n.is_zero() {
        let mut e = n.mod_floor(b);
        if e > half {
            e -= b;
        }
        n = (n - &e) / b;
        out.push(e);
    }
    out
}

fn primitive(v: Uni) -> Uni {
    let v = trim(v);
    let c = content(&v);
    if c.is_zero() {
        return v;
    }
    let sign = if v.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let c = c * sign;
    v.into_iter().map(|x| x / &c).collect()
}

/// Exact quotient over ℤ, if any.
fn divides(a: &[BigInt], d: &[BigInt]) -> bool {
    let mut r = trim(a.to_vec());
    let dd = d.len() - 1;
    let ld = &d[dd];
    while r.len() > dd {
        let k = r.len() - 1;
        let (q, rem) = r[k].div_rem(ld);
        if !rem.is_zero() {
            return false;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k - dd + j] -= &q * dj;
        }
        r = trim(r);
    }
    r.is_empty()
}

fn next_point(p: &BigInt) -> BigInt {
    p * BigInt::from(73794) / BigInt::from(27011)
}

/// Exact gcd in ℤ\[x\] including the integer content.
fn uni(a: &[BigInt], b: &[BigInt]) -> Option<Uni> {
    let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
    if a.is_empty() {
        return Some(b);
    }
    if b.is_empty() {
        return Some(a);
    }
    let c = content(&a).gcd(&content(&b));
    let (pa, pb) = (primitive(a), primitive(b));
    if pa.len() == 1 || pb.len() == 1 {
        return Some(vec![c]);
    }
    let mut z: BigInt = norm(&pa).min(norm(&pb)) * 2 + 2;
    for _ in 0..TRIES {
        if z.bits() * (pa.len().max(pb.len()) as u64) > MAX_BITS {
            return None;
        }
        let g = eval(&pa, &z).gcd(&eval(&pb, &z));
        let cand = primitive(balanced_digits(&g, &z));
        if !cand.is_empty() && divides(&pa, &cand) && divides(&pb, &cand) {
            return Some(cand.into_iter().map(|x| x * &c).collect());
        }
        z = next_point(&z);
    }
    None
}

/// Coefficients indexed `[j][i]` for `x^i y^j`.
type Grid = Vec<Uni>;

fn to_grid(p: &BiPoly<Q>) -> Grid {
    let den = p.terms().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
    let dx = p.degree_x().unwrap_or(0) as usize;
    let dy = p.degree_y().unwrap_or(0) as usize;
    let mut g = vec![vec![BigInt::zero(); dx + 1]; dy + 1];
    for ((i, j), c) in p.terms() {
        g[*j as usize][*i as usize] = c.numer() * (&den / c.denom());
    }
    g
}

fn from_grid(g: &Grid) -> BiPoly<Q> {
    BiPoly::from_terms(g.iter().enumerate().flat_map(|(j, row)| {
        row.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| ((i as u32, j as u32), Q::from_integer(c.clone())))
    }))
}

/// Gcd of two nonzero rational bivariate polynomials, up to a constant.
pub(crate) fn gcd(a: &BiPoly<Q>, b: &BiPoly<Q>) -> Option<BiPoly<Q>> {
    let (ga, gb) = (to_grid(a), to_grid(b));
    let flat = |g: &Grid| g.iter().flatten().cloned().collect::<Vec<_>>();
    let (fa, fb) = (flat(&ga), flat(&gb));
    let mut xi: BigInt = norm(&fa).min(norm(&fb)) * 2 + 2;
    for _ in 0..TRIES {
        if xi.bits() * ((ga.len() + gb.len()) as u64) > MAX_BITS {
            return None;
        }
        let ea: Uni = (0..ga[0].len().max(1)).map(|i| eval(&column(&ga, i), &xi)).collect();
        let eb: Uni = (0..gb[0].len().max(1)).map(|i| eval(&column(&gb, i), &xi)).collect();
        if let Some(h) = uni(&ea, &eb) {
            let rows: Vec<Uni> = h.iter().map(|c| balanced_digits(c, &xi)).collect();
            let dy = rows.iter().map(|r| r.len()).max().unwrap_or(0);
            let mut grid: Grid = vec![vec![BigInt::zero(); rows.len()]; dy.max(1)];
            for (i, r) in rows.iter().enumerate() {
                for (j, c) in r.iter().enumerate() {
                    grid[j][i] = c.clone();
                }
            }
            let cand = from_grid(&grid);
            if !cand.is_zero() && a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return Some(cand);
            }
        }
        xi = next_point(&xi);
    }
    None
}

/// Coefficient of `x^i` as a polynomial in `y`.
fn column(g: &Grid, i: usize) -> Uni {
    g.iter().map(|row| row.get(i).cloned().unwrap_or_default()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::qi;

    fn m(c: i64, i: u32, j: u32) -> BiPoly<Q> {
        BiPoly::monomial(qi(c), i, j)
    }

    #[test]
    fn recovers_shared_factor() {
        let f = &(&m(1, 1, 1) + &m(3, 0, 0)) + &m(-2, 0, 2);
        let a = &(&f * &f) * &(&m(1, 1, 0) + &m(1, 0, 0));
        let b = &f * &(&m(2, 0, 1) + &m(-1, 3, 0));
        let g = gcd(&a, &b).unwrap();
        assert_eq!(g.normalize().1, f.normalize().1);
    }

    #[test]
    fn balanced_digits_round_trip() {
        let b = BigInt::from(10);
        let d = balanced_digits(&BigInt::from(-1234), &b);
        assert_eq!(eval(&d, &b), BigInt::from(-1234));
    }
}
