use super::field::Field;
use super::unipoly::UniPoly;

/// Coefficient of `(t - pole)^{-1}` in the Laurent expansion of `num / den`.
///
/// Writes `den(t + pole) = t^k e(t)` with `e(0) ≠ 0` and reads off the
/// coefficient of `t^{k-1}` in the power series of `num(t + pole) / e(t)`.
pub fn residue_at<F: Field>(num: &UniPoly<F>, den: &UniPoly<F>, pole: &F) -> F {
    assert!(!den.is_zero(), "zero denominator");
    let n = num.shift(pole);
    let d = den.shift(pole);
    let k = d.valuation().unwrap_or(0);
    if k == 0 || n.is_zero() {
        return F::zero();
    }
    let e: Vec<F> = d.coeffs()[k..].to_vec();
    let order = k - 1;
    // series inverse of e up to t^order
    let e0_inv = e[0].inv();
    let mut inv = vec![F::zero(); order + 1];
    inv[0] = e0_inv.clone();
    for i in 1..=order {
        let mut acc = F::zero();
        for j in 1..=i.min(e.len() - 1) {
            acc = acc + e[j].clone() * inv[i - j].clone();
        }
        inv[i] = -(acc * e0_inv.clone());
    }
    (0..=order).fold(F::zero(), |acc, i| acc + n.coeff(i) * inv[order - i].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::{q, qi, Q};

    fn p(c: &[i64]) -> UniPoly<Q> {
        UniPoly::new(c.iter().map(|&v| qi(v)).collect())
    }

    #[test]
    fn simple_pole() {
        assert_eq!(residue_at(&p(&[1]), &p(&[0, 1]), &qi(0)), qi(1));
    }

    #[test]
    fn cusp_partial_fractions() {
        // (2 - 3v) / (6v(1 - v)) = (2 - 3v) / (6v - 6v^2)
        let num = p(&[2, -3]);
        let den = p(&[0, 6, -6]);
        assert_eq!(residue_at(&num, &den, &qi(0)), q(1, 3));
        assert_eq!(residue_at(&num, &den, &qi(1)), q(1, 6));
        assert_eq!(residue_at(&num, &den, &qi(5)), qi(0));
    }

    #[test]
    fn double_pole() {
        // (1 + 2t + 3t^2) / t^2 has residue 2
        assert_eq!(residue_at(&p(&[1, 2, 3]), &p(&[0, 0, 1]), &qi(0)), qi(2));
        // 1 / (t^2 (t - 1)) at 0: -1/t^2 - 1/t - ... so residue -1
        assert_eq!(residue_at(&p(&[1]), &p(&[0, 0, -1, 1]), &qi(0)), qi(-1));
    }
}
