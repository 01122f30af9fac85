//! Univariate factorization over ℚ, with limited support over a simple extension.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::{Field, Q};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Scales to a primitive integer polynomial with positive leading coefficient.
fn integer_primitive(p: &UniPoly<Q>) -> Vec<BigInt> {
    let lcm = p.coeffs().iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.coeffs().iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
    ints.into_iter().map(|c| c / &g * &sign).collect()
}

fn positive_divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut rest = n.clone();
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > rest {
            break;
        }
        let mut e = 0;
        while (&rest % &bd).is_zero() {
            rest /= &bd;
            e += 1;
        }
        if e > 0 {
            primes.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > BigInt::one() {
        let bound = BigInt::from(TRIAL_DIVISION_LIMIT);
        if rest > &bound * &bound {
            return Err(Error::UnsupportedField(format!("coefficient {n} too large for rational-root search")));
        }
        primes.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    Ok(divs)
}

/// Distinct rational roots, in increasing order.
pub fn rational_roots(p: &UniPoly<Q>) -> Result<Vec<Q>> {
    let mut roots = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let v = p.valuation().unwrap_or(0);
    if v > 0 {
        roots.push(Q::zero());
    }
    let stripped = UniPoly::new(p.coeffs()[v..].to_vec());
    if stripped.degree().unwrap_or(0) == 0 {
        return Ok(roots);
    }
    let ints = integer_primitive(&stripped);
    let nums = positive_divisors(&ints[0])?;
    let dens = positive_divisors(ints.last().unwrap())?;
    let mut cands: Vec<Q> = Vec::new();
    for n in &nums {
        for d in &dens {
            let r = Q::new(n.clone(), d.clone());
            cands.push(r.clone());
            cands.push(-r);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        if stripped.eval(&c).is_zero() {
            roots.push(c);
        }
    }
    roots.sort();
    Ok(roots)
}

/// Factors a nonzero polynomial over ℚ into monic irreducibles with multiplicities.
///
/// Factors are ordered by multiplicity, then degree, then coefficients.
pub fn factor_rational(p: &UniPoly<Q>) -> Result<Vec<(UniPoly<Q>, usize)>> {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let mut out = Vec::new();
    for (mult, part) in p.square_free_decomposition() {
        let mut rest = part;
        for r in rational_roots(&rest)? {
            let lin = UniPoly::linear_root(r);
            rest = rest.div_exact(&lin).expect("root divides");
            out.push((lin, mult));
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            2 | 3 => out.push((rest.monic(), mult)),
            _ => {
                if certify_irreducible(&rest) {
                    out.push((rest.monic(), mult));
                } else {
                    return Err(Error::UnsupportedField(format!(
                        "cannot certify irreducibility of degree-{} factor {rest}",
                        rest.degree().unwrap_or(0)
                    )));
                }
            }
        }
    }
    sort_factors(&mut out);
    #[cfg(debug_assertions)]
    check_product(p, &out);
    Ok(out)
}

fn sort_factors<F: Field>(v: &mut [(UniPoly<F>, usize)]) {
    v.sort_by(|a, b| {
        (a.1, a.0.degree())
            .cmp(&(b.1, b.0.degree()))
            .then_with(|| a.0.to_string().cmp(&b.0.to_string()))
    });
}

#[cfg(debug_assertions)]
fn check_product<F: Field>(p: &UniPoly<F>, factors: &[(UniPoly<F>, usize)]) {
    let prod = factors.iter().fold(UniPoly::one(), |acc, (f, m)| &acc * &f.pow(*m as u32));
    assert_eq!(prod.scale(&p.leading_coeff()), *p, "factorization does not multiply back");
}

/// Factors over the coefficient field of `p`.
///
/// Over ℚ this is [`factor_rational`]. When `p` lives in a proper extension K,
/// only three cases are certified: linear pieces, powers of `t`, and
/// ℚ-irreducible factors whose degree is coprime to `[K:ℚ]`.
pub fn factor_univariate<F: Field>(p: &UniPoly<F>) -> Result<Vec<(UniPoly<F>, usize)>> {
    assert!(!p.is_zero(), "factoring the zero polynomial");
    let ext_degree = p.coeffs().iter().map(|c| c.field_degree()).max().unwrap_or(1);
    let rational: Option<Vec<Q>> = p.coeffs().iter().map(|c| c.to_rational()).collect();
    if let Some(rc) = &rational {
        let over_q = factor_rational(&UniPoly::new(rc.clone()))?;
        let mut out = Vec::new();
        for (f, m) in over_q {
            let d = f.degree().unwrap_or(0);
            if ext_degree > 1 && d > 1 && d.gcd(&ext_degree) != 1 {
                return Err(Error::UnsupportedField(format!(
                    "factor {f} of degree {d} may split over an extension of degree {ext_degree}"
                )));
            }
            out.push((f.map(|c| F::from_rational(c.clone())), m));
        }
        return Ok(out);
    }
    let mut out = Vec::new();
    for (mult, part) in p.square_free_decomposition() {
        let mut rest = part;
        if rest.valuation().unwrap_or(0) > 0 {
            let t = UniPoly::monomial(F::one(), 1);
            rest = rest.div_exact(&t).expect("t divides");
            out.push((t, mult));
        }
        match rest.degree().unwrap_or(0) {
            0 => {}
            1 => out.push((rest.monic(), mult)),
            d => {
                return Err(Error::UnsupportedField(format!(
                    "factorization of degree-{d} polynomial {rest} over a proper extension"
                )))
            }
        }
    }
    sort_factors(&mut out);
    #[cfg(debug_assertions)]
    check_product(p, &out);
    Ok(out)
}

// ---- arithmetic in F_p[t] ----

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn fp_rem(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv % p;
        if c != 0 {
            for (j, &mj) in m.iter().enumerate() {
                let idx = k - dm + j;
                r[idx] = (r[idx] + p - c * mj % p) % p;
            }
        }
        r.pop();
        r = fp_trim(r);
    }
    fp_trim(r)
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    fp_trim(out)
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|k| (a.get(k).copied().unwrap_or(0) + p - b.get(k).copied().unwrap_or(0)) % p)
            .collect(),
    )
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = fp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let inv = fp_inv(lc, p);
        a = a.iter().map(|c| c * inv % p).collect();
    }
    a
}

fn fp_div(a: &Fp, m: &Fp, p: u64) -> Fp {
    let mut r = a.clone();
    let dm = m.len() - 1;
    let inv = fp_inv(m[dm], p);
    let mut q = vec![0u64; r.len().saturating_sub(dm)];
    while r.len() > dm {
        let k = r.len() - 1;
        let c = r[k] * inv % p;
        q[k - dm] = c;
        for (j, &mj) in m.iter().enumerate() {
            let idx = k - dm + j;
            r[idx] = (r[idx] + p - c * mj % p) % p;
        }
        r.pop();
    }
    fp_trim(q)
}

fn fp_powmod(base: &Fp, mut e: u64, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = vec![1];
    let mut b = fp_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
        b = fp_rem(&fp_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(a.iter().enumerate().skip(1).map(|(k, &c)| c * (k as u64 % p) % p).collect())
}

/// Degrees of the irreducible factors of a square-free polynomial over F_p.
fn distinct_degree_pattern(f: &Fp, p: u64) -> Vec<usize> {
    let mut degrees = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1;
    while f.len() - 1 >= 2 * d {
        h = fp_powmod(&h, p, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        let dg = g.len() - 1;
        if dg > 0 {
            degrees.extend(std::iter::repeat(d).take(dg / d));
            f = fp_div(&f, &g, p);
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    if f.len() > 1 {
        degrees.push(f.len() - 1);
    }
    degrees
}

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in parts {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

const SMALL_PRIMES: [u64; 40] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179,
];

/// Certifies irreducibility over ℚ by intersecting factor-degree patterns
/// modulo small primes. `false` means "not certified", not "reducible".
pub fn certify_irreducible(p: &UniPoly<Q>) -> bool {
    let n = match p.degree() {
        Some(n) if n >= 1 => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    let ints = integer_primitive(p);
    let mut possible = vec![true; n + 1];
    let mut used = 0;
    for &pr in SMALL_PRIMES.iter() {
        let bp = BigInt::from(pr);
        let red: Fp = ints.iter().map(|c| c.mod_floor(&bp).to_u64().unwrap()).collect();
        if *red.last().unwrap() == 0 {
            continue;
        }
        let red = fp_trim(red);
        let g = fp_gcd(&red, &fp_derivative(&red, pr), pr);
        if g.len() > 1 {
            continue;
        }
        let pattern = distinct_degree_pattern(&red, pr);
        let sums = subset_sums(&pattern, n);
        for k in 0..=n {
            possible[k] = possible[k] && sums[k];
        }
        used += 1;
        if (1..n).all(|k| !possible[k]) {
            return true;
        }
        if used >= 20 {
            break;
        }
    }
    false
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`,
/// with `None` standing for ∓∞.
pub fn real_root_count(p: &UniPoly<Q>, lo: Option<&Q>, hi: Option<&Q>) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let sf = p.div_exact(&p.gcd(&p.derivative())).expect("gcd divides");
    let mut seq = vec![sf.clone(), sf.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].degree().unwrap_or(0) == 0 {
            break;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    let changes = |signs: Vec<i8>| -> usize {
        let nz: Vec<i8> = signs.into_iter().filter(|&s| s != 0).collect();
        nz.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let sign_of = |v: &Q| -> i8 {
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    };
    let at = |x: Option<&Q>, neg_inf: bool| -> usize {
        changes(
            seq.iter()
                .map(|s| match x {
                    Some(v) => sign_of(&s.eval(v)),
                    None => {
                        let lc = sign_of(&s.leading_coeff());
                        let odd = s.degree().unwrap_or(0) % 2 == 1;
                        if neg_inf && odd {
                            -lc
                        } else {
                            lc
                        }
                    }
                })
                .collect(),
        )
    };
    at(lo, true) - at(hi, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi};

    fn p(c: &[i64]) -> UniPoly<Q> {
        UniPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn two_rational_roots() {
        let f = factor_rational(&p(&[2, -3, 1])).unwrap();
        assert_eq!(f, vec![(p(&[-1, 1]), 1), (p(&[-2, 1]), 1)]);
    }

    #[test]
    fn square_of_t() {
        assert_eq!(factor_rational(&p(&[0, 0, 1])).unwrap(), vec![(p(&[0, 1]), 2)]);
    }

    #[test]
    fn sum_of_squares_irreducible() {
        // no root among ±1, so the quadratic stays whole
        assert!(rational_roots(&p(&[1, 0, 1])).unwrap().is_empty());
        assert_eq!(factor_rational(&p(&[1, 0, 1])).unwrap(), vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn rational_root_with_denominator() {
        // (2t - 3)(3t + 1) = 6t^2 - 7t - 3
        let r = rational_roots(&p(&[-3, -7, 6])).unwrap();
        assert_eq!(r, vec![q(-1, 3), q(3, 2)]);
    }

    #[test]
    fn quartic_certified() {
        // t^4 + t + 1 is irreducible mod 2 hence over ℚ; odd primes must find it too
        assert!(certify_irreducible(&p(&[1, 1, 0, 0, 1])));
        // t^4 + 1 splits modulo every prime
        assert!(!certify_irreducible(&p(&[1, 0, 0, 0, 1])));
        assert!(factor_rational(&p(&[1, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn product_of_quadratics_not_certified() {
        let f = &p(&[1, 0, 1]) * &p(&[-2, 0, 1]);
        assert!(!certify_irreducible(&f));
    }

    #[test]
    fn sturm_counts() {
        // (t-1)(t-2)(t^2+1)
        let f = &(&p(&[-1, 1]) * &p(&[-2, 1])) * &p(&[1, 0, 1]);
        assert_eq!(real_root_count(&f, None, None), 2);
        assert_eq!(real_root_count(&f, Some(&qi(0)), Some(&q(3, 2))), 1);
        assert_eq!(real_root_count(&f, Some(&qi(1)), Some(&qi(2))), 1);
        assert_eq!(real_root_count(&p(&[1, 0, 1]), None, None), 0);
    }
}
