//! Seeded random modification parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use folres_core::algebra::{BiPoly, Field, RatFunc};
use folres_core::triples::ModificationParams;

pub const DEFAULT_SEED: u64 = 0x5eed_f01e;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Up to three terms of degree between 1 and 3 with coefficients in `[−3, 3]`.
fn small_poly<F: Field>(rng: &mut impl Rng) -> BiPoly<F> {
    let n = rng.gen_range(0..=3);
    BiPoly::from_terms((0..n).map(|_| {
        let i = rng.gen_range(0..=2u32);
        let j = rng.gen_range(u32::from(i == 0)..=2);
        ((i, j), F::from_i64(rng.gen_range(-3..=3)))
    }))
}

/// `g = (c + p)/(c' + q)` is a unit at the origin; `h = r/(1 + s)`.
pub fn random_params<F: Field>(rng: &mut impl Rng) -> ModificationParams<F> {
    let c = BiPoly::constant(F::from_i64(rng.gen_range(1..=3)));
    let c2 = BiPoly::constant(F::from_i64(rng.gen_range(1..=3)));
    let g = RatFunc::new(&c + &small_poly(rng), &c2 + &small_poly(rng));
    let r = &BiPoly::constant(F::from_i64(rng.gen_range(-2..=2))) + &small_poly(rng);
    let h = RatFunc::new(r, &BiPoly::one() + &small_poly(rng));
    ModificationParams { g, h }
}

#[cfg(test)]
mod tests {
    use super::*;
    use folres_core::algebra::Q;

    #[test]
    fn seeds_are_reproducible() {
        let a: ModificationParams<Q> = random_params(&mut rng(7));
        let b: ModificationParams<Q> = random_params(&mut rng(7));
        assert_eq!(a, b);
        assert!(!a.g.is_zero());
    }
}
