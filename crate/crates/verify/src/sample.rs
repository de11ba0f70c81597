//! Seeded samplers. Every sample has small integer coordinates, so exact and
//! float runs see the same inputs.

use grassmann_core::lie::{cayley, su_basis};
use grassmann_core::{CMat, Cx, FiberModel, Mat, PForm, Scalar, Side};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Independent stream for one check: FNV-1a of the id mixed into the seed.
pub fn rng_for(seed: u64, id: &str) -> ChaCha8Rng {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

pub fn small<S: Scalar>(rng: &mut impl Rng) -> S {
    S::from_i64(rng.random_range(-3..=3))
}

fn nonzero_small<S: Scalar>(rng: &mut impl Rng) -> S {
    let v = rng.random_range(1..=3);
    S::from_i64(if rng.random_bool(0.5) { v } else { -v })
}

pub fn coords<S: Scalar>(rng: &mut impl Rng, len: usize) -> Vec<S> {
    loop {
        let v: Vec<S> = (0..len).map(|_| small(rng)).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn su<S: Scalar>(rng: &mut impl Rng, n: usize) -> grassmann_core::Result<CMat<S>> {
    let b = su_basis::<S>(n)?;
    Ok(b.combine(&coords(rng, b.dim())))
}

/// A sparse random 2-form on `m`, returned as a skew endomorphism.
pub fn skew<S: Scalar>(rng: &mut impl Rng, fiber: &FiberModel<S>) -> grassmann_core::Result<Mat<S>> {
    let d = fiber.dim();
    let mut terms = Vec::new();
    for i in 0..d {
        for j in i + 1..d {
            if rng.random_range(0..3) == 0 {
                terms.push(((1u32 << i) | (1u32 << j), nonzero_small(rng)));
            }
        }
    }
    if terms.is_empty() {
        terms.push((0b11, S::one()));
    }
    fiber.metric().form_to_endo(&PForm::from_terms(2, terms)?)
}

/// A random element of `E+` or `E-` from the spanning set.
pub fn e_side<S: Scalar>(rng: &mut impl Rng, fiber: &FiberModel<S>, side: Side) -> Mat<S> {
    let span = &fiber.span(side).spanning;
    let c: Vec<S> = coords(rng, span.len());
    let d = fiber.dim();
    span.iter().zip(&c).fold(Mat::zeros(d, d), |acc, (a, c)| &acc + &a.scale(c))
}

/// A dense endomorphism with small integer entries.
pub fn endo<S: Scalar>(rng: &mut impl Rng, d: usize) -> Mat<S> {
    Mat::from_fn(d, d, |_, _| small(rng))
}

/// A unitary in `S(U(n+) x U(n-))` built by Cayley transforms of the blocks.
pub fn k_element<S: Scalar>(rng: &mut impl Rng, n_plus: usize, n_minus: usize) -> grassmann_core::Result<CMat<S>> {
    let a = cayley(&su::<S>(rng, n_plus)?)?;
    let b = cayley(&su::<S>(rng, n_minus)?)?;
    let n = n_plus + n_minus;
    Ok(Mat::from_fn(n, n, |r, c| {
        if r < n_plus && c < n_plus {
            a[(r, c)].clone()
        } else if r >= n_plus && c >= n_plus {
            b[(r - n_plus, c - n_plus)].clone()
        } else {
            Cx::new(S::zero(), S::zero())
        }
    }))
}

/// A unitary with small denominators: `layers` rounds of Givens rotations
/// with Pythagorean cosines on disjoint random pairs, with quarter-turn phases.
pub fn rational_unitary<S: Scalar>(rng: &mut impl Rng, n: usize, layers: usize) -> CMat<S> {
    const TRIPLES: [(i64, i64, i64); 3] = [(3, 4, 5), (5, 12, 13), (8, 15, 17)];
    let mut u: CMat<S> = Mat::identity(n);
    for _ in 0..layers {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(rng);
        let mut g: CMat<S> = Mat::identity(n);
        for pair in order.chunks_exact(2) {
            let (a, b) = (pair[0], pair[1]);
            let (x, y, h) = TRIPLES[rng.random_range(0..TRIPLES.len())];
            let (c, s) = (S::ratio(x, h), S::ratio(y, h));
            let phase = match rng.random_range(0..4) {
                0 => Cx::new(S::one(), S::zero()),
                1 => Cx::new(S::zero(), S::one()),
                2 => Cx::new(-S::one(), S::zero()),
                _ => Cx::new(S::zero(), -S::one()),
            };
            g[(a, a)] = Cx::new(c.clone(), S::zero());
            g[(b, b)] = Cx::new(c, S::zero());
            g[(a, b)] = -(phase.conj() * Cx::new(s.clone(), S::zero()));
            g[(b, a)] = phase * Cx::new(s, S::zero());
        }
        u = g.matmul(&u);
    }
    u
}

/// An integer matrix with determinant 1: a product of elementary shears.
pub fn unimodular<S: Scalar>(rng: &mut impl Rng, d: usize) -> Mat<S> {
    let mut u: Mat<S> = Mat::identity(d);
    if d < 2 {
        return u;
    }
    for _ in 0..d {
        let r = rng.random_range(0..d);
        let mut c = rng.random_range(0..d - 1);
        if c >= r {
            c += 1;
        }
        let k = if rng.random_bool(0.5) { S::one() } else { -S::one() };
        for col in 0..d {
            let v = u[(c, col)].clone() * k.clone();
            u[(r, col)] = u[(r, col)].clone() + v;
        }
    }
    u
}

#[cfg(test)]
mod tests {
    use super::*;
    use grassmann_core::Rational;

    #[test]
    fn streams_depend_on_seed_and_id() {
        let draw = |seed, id| rng_for(seed, id).random::<u64>();
        assert_eq!(draw(0, "KJ-05"), draw(0, "KJ-05"));
        assert_ne!(draw(0, "KJ-05"), draw(1, "KJ-05"));
        assert_ne!(draw(0, "KJ-05"), draw(0, "KJ-06"));
    }

    #[test]
    fn rational_unitary_is_unitary() {
        let mut rng = rng_for(3, "unitary");
        for n in 2..=6 {
            let u = rational_unitary::<Rational>(&mut rng, n, 2);
            assert_eq!(u.conj_transpose().matmul(&u), Mat::identity(n));
        }
    }

    #[test]
    fn unimodular_has_determinant_one() {
        let mut rng = rng_for(5, "shears");
        let u = unimodular::<Rational>(&mut rng, 8);
        assert_eq!(u.determinant(), Rational::from(1));
    }
}
