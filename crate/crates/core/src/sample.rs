//! Seeded random generation of test objects. Group elements are produced as
//! words of bounded length in elementary unipotent generators, so membership
//! in the target group holds by construction; everything is deterministic
//! under a fixed `ChaCha8` seed.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::{Mat, RatMatrix};
use crate::modembed::{HBPoint, Orientation};
use crate::numfield::{FieldElement, NumberField};
use crate::rational::rat;
use crate::symplectic::{GSpElement, HBMatrix};
use crate::symrep::CocharacterWeights;
use crate::torsion::{HBTorsionPoint, TorsionPoint};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rand_int(rng: &mut ChaCha8Rng, bound: i64) -> BigRational {
    rat(rng.gen_range(-bound..=bound))
}

pub fn random_rational(rng: &mut ChaCha8Rng, num_bound: i64, den_bound: i64) -> BigRational {
    let num = rng.gen_range(-num_bound..=num_bound);
    let den = rng.gen_range(1..=den_bound);
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn random_field_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    num_bound: i64,
    den_bound: i64,
) -> FieldElement {
    let coords = (0..nf.degree())
        .map(|_| random_rational(rng, num_bound, den_bound))
        .collect();
    nf.element(coords).expect("coordinate count matches the degree")
}

/// Random element of the order: a small integral combination of the basis.
pub fn random_order_element(nf: &NumberField, rng: &mut ChaCha8Rng, bound: i64) -> FieldElement {
    let c: Vec<BigRational> = (0..nf.degree()).map(|_| rand_int(rng, bound)).collect();
    nf.from_basis_coords(&c)
}

/// Random element of the inverse different: a small integral combination of
/// the dual basis.
pub fn random_inverse_different_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> FieldElement {
    let c: Vec<BigRational> = (0..nf.degree()).map(|_| rand_int(rng, bound)).collect();
    nf.from_dual_coords(&c)
}

/// Random element of the different: a small integral combination of its
/// computed Z-basis.
pub fn random_different_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    bound: i64,
) -> FieldElement {
    let mut acc = nf.zero();
    for b in nf.different_basis() {
        acc = nf.add(&acc, &nf.scale(b, &rand_int(rng, bound)));
    }
    acc
}

/// A totally positive element: a random element shifted by a rational bound
/// on the magnitude of all its embeddings.
pub fn random_totally_positive(nf: &NumberField, rng: &mut ChaCha8Rng) -> FieldElement {
    let x = random_field_element(nf, rng, 3, 3);
    let b = nf.minpoly().root_bound();
    let mut m = BigRational::zero();
    let mut pow = BigRational::one();
    for c in x.coords() {
        m += c.abs() * &pow;
        pow *= &b;
    }
    nf.add(&x, &nf.rational(m + BigRational::one()))
}

pub fn random_hb_point(nf: &NumberField, rng: &mut ChaCha8Rng) -> HBPoint {
    let re = random_field_element(nf, rng, 3, 3);
    let im = random_totally_positive(nf, rng);
    HBPoint::new(nf, re, im, Orientation::Upper).expect("im is totally positive by construction")
}

fn random_symmetric_integral(rng: &mut ChaCha8Rng, g: usize, bound: i64) -> RatMatrix {
    let mut m = RatMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = rand_int(rng, bound);
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Word of length `word_len` in the elementary unipotents
/// `[[I, nS], [0, I]]` and `[[I, 0], [nS, I]]` with `S` symmetric integral;
/// lies in `Gamma(n)` by construction (and in `Sp(2g, Z)` for `n = 1`).
pub fn random_gamma_element(
    rng: &mut ChaCha8Rng,
    g: usize,
    n: u32,
    word_len: usize,
) -> GSpElement {
    let nq = rat(i64::from(n));
    let mut acc = GSpElement::identity(g);
    for _ in 0..word_len {
        let s = random_symmetric_integral(rng, g, 2).scalar_mul(&nq);
        let id = RatMatrix::identity(g);
        let z = RatMatrix::zeros(g, g);
        let block = if rng.gen_bool(0.5) {
            Mat::block2x2(&id, &s, &z, &id)
        } else {
            Mat::block2x2(&id, &z, &s, &id)
        };
        let el = GSpElement::new(block).expect("unipotent blocks are symplectic");
        acc = acc.mul(&el);
    }
    acc
}

fn unipotent_upper(nf: &NumberField, b: FieldElement) -> HBMatrix {
    HBMatrix::new(nf.one(), b, nf.zero(), nf.one())
}

fn unipotent_lower(nf: &NumberField, c: FieldElement) -> HBMatrix {
    HBMatrix::new(nf.one(), nf.zero(), c, nf.one())
}

/// Word in the unipotents `[[1, b], [0, 1]]` with `b` in `D^-1` and
/// `[[1, 0], [c, 1]]` with `c` in `D`; lies in `SL(D^-1 (+) O)` by
/// construction.
pub fn random_sl_lattice_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    word_len: usize,
) -> HBMatrix {
    let mut acc = HBMatrix::identity(nf);
    for _ in 0..word_len {
        let gen = if rng.gen_bool(0.5) {
            unipotent_upper(nf, random_inverse_different_element(nf, rng, 2))
        } else {
            unipotent_lower(nf, random_different_element(nf, rng, 2))
        };
        acc = acc.mul(nf, &gen);
    }
    acc
}

/// Word in the unipotents with entries in `nD^-1` and `nD`; lies in
/// `Gamma'(n)` by construction.
pub fn random_gamma_prime_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    n: u32,
    word_len: usize,
) -> HBMatrix {
    let nq = rat(i64::from(n));
    let mut acc = HBMatrix::identity(nf);
    for _ in 0..word_len {
        let gen = if rng.gen_bool(0.5) {
            unipotent_upper(
                nf,
                nf.scale(&random_inverse_different_element(nf, rng, 2), &nq),
            )
        } else {
            unipotent_lower(nf, nf.scale(&random_different_element(nf, rng, 2), &nq))
        };
        acc = acc.mul(nf, &gen);
    }
    acc
}

/// Word in unipotents with arbitrary small field entries and nonzero
/// rational diagonals: an element of `G'(Q)` (rational determinant) that is
/// generically not in any lattice subgroup.
pub fn random_g_prime_element(
    nf: &NumberField,
    rng: &mut ChaCha8Rng,
    word_len: usize,
) -> HBMatrix {
    let mut acc = HBMatrix::identity(nf);
    for _ in 0..word_len {
        let gen = match rng.gen_range(0..3u8) {
            0 => unipotent_upper(nf, random_field_element(nf, rng, 2, 2)),
            1 => unipotent_lower(nf, random_field_element(nf, rng, 2, 2)),
            _ => {
                let nz = |rng: &mut ChaCha8Rng| loop {
                    let q = random_rational(rng, 3, 2);
                    if !q.is_zero() {
                        return q;
                    }
                };
                HBMatrix::new(
                    nf.rational(nz(rng)),
                    nf.zero(),
                    nf.zero(),
                    nf.rational(nz(rng)),
                )
            }
        };
        acc = acc.mul(nf, &gen);
    }
    acc
}

pub fn random_torsion_point(rng: &mut ChaCha8Rng, n: u32, g: usize) -> TorsionPoint {
    let v = (0..2 * g)
        .map(|_| BigRational::new(BigInt::from(rng.gen_range(0..n)), BigInt::from(n)))
        .collect();
    TorsionPoint::new(v, n).expect("numerators below n give n-torsion")
}

pub fn random_hb_torsion(nf: &NumberField, rng: &mut ChaCha8Rng, n: u32) -> HBTorsionPoint {
    let nq = rat(i64::from(n));
    let xc: Vec<BigRational> = (0..nf.degree())
        .map(|_| rat(rng.gen_range(0..i64::from(n))) / &nq)
        .collect();
    let yc: Vec<BigRational> = (0..nf.degree())
        .map(|_| rat(rng.gen_range(0..i64::from(n))) / &nq)
        .collect();
    HBTorsionPoint::new(nf, nf.from_dual_coords(&xc), nf.from_basis_coords(&yc), n)
        .expect("coordinates with denominator n give n-torsion")
}

pub fn random_weights(rng: &mut ChaCha8Rng, r: usize, bound: i64) -> CocharacterWeights {
    CocharacterWeights::new((0..2 * r).map(|_| rng.gen_range(-bound..=bound)).collect())
}
