//! Seeded random generators used by the property and acceptance suites:
//! random pre-morphisms and cocycles in a hom complex, and random modules
//! assembled from simples, projectives, shifts, tensors, cones and twists.

use rand::Rng;

use crate::complex::ChainComplex;
use crate::error::Result;
use crate::field::{Field, FieldSpec, Scalar};
use crate::graded::GradedSpace;
use crate::homcx::HomComplex;
use crate::matrix::Matrix;
use crate::module::{projective, shift, simple, tensor_module, truncation, AModule};
use crate::morphism::PreMorphism;
use crate::twist::{cone_unchecked, twist};

pub fn random_scalar(f: &Field, rng: &mut impl Rng) -> Scalar {
    match f.spec() {
        FieldSpec::Prime(p) => f.from_i64(rng.gen_range(0..p) as i64),
        FieldSpec::Rational => f.from_i64(rng.gen_range(-4..=4)),
    }
}

fn random_nonzero(f: &Field, rng: &mut impl Rng) -> Scalar {
    loop {
        let s = random_scalar(f, rng);
        if !f.is_zero(&s) {
            return s;
        }
    }
}

/// A random homogeneous pre-morphism of the given degree.
pub fn random_premorphism(
    hc: &HomComplex,
    degree: i64,
    rng: &mut impl Rng,
) -> Result<PreMorphism> {
    let f = hc.field();
    let coords: Vec<Scalar> = (0..hc.complex().dim(degree))
        .map(|_| random_scalar(&f, rng))
        .collect();
    hc.premorphism_from_vector(degree, &coords)
}

/// A random cocycle of the given degree (a random combination of a kernel
/// basis of `μ¹_C`).
pub fn random_cocycle(hc: &HomComplex, degree: i64, rng: &mut impl Rng) -> Result<PreMorphism> {
    let f = hc.field();
    let kernel = hc.complex().differential(degree).nullspace();
    let mut coords = vec![f.zero(); hc.complex().dim(degree)];
    for c in 0..kernel.cols() {
        let s = random_scalar(&f, rng);
        if f.is_zero(&s) {
            continue;
        }
        for r in 0..kernel.rows() {
            let t = f.mul(kernel.get(r, c), &s);
            coords[r] = f.add(&coords[r], &t);
        }
    }
    hc.premorphism_from_vector(degree, &coords)
}

/// A random small chain complex (dims ≤ 2 per degree on a short degree
/// window, differential built to square to zero).
pub fn random_small_complex(f: Field, rng: &mut impl Rng) -> ChainComplex {
    let lo = rng.gen_range(-1..=0);
    let len: usize = rng.gen_range(1..=3);
    let mut space = GradedSpace::new();
    let mut dims = Vec::new();
    for t in 0..len {
        let d = rng.gen_range(0..=2usize);
        for i in 0..d {
            space.push(lo + t as i64, format!("z{t}_{i}")).unwrap();
        }
        dims.push(d);
    }
    // build d degree by degree inside the kernel of the previous step
    let mut mats: std::collections::BTreeMap<i64, Matrix> = std::collections::BTreeMap::new();
    let mut prev: Option<Matrix> = None;
    for t in 0..len.saturating_sub(1) {
        let rows = dims[t + 1];
        let cols = dims[t];
        let mut m = Matrix::zeros(f, rows, cols);
        match &prev {
            None => {
                for r in 0..rows {
                    for c in 0..cols {
                        m.set(r, c, random_scalar(&f, rng));
                    }
                }
            }
            Some(p) => {
                // m·p = 0: every row of m lies in the left kernel of p
                let ns = p.transpose().nullspace();
                for r in 0..rows {
                    for nc in 0..ns.cols() {
                        let s = random_scalar(&f, rng);
                        if f.is_zero(&s) {
                            continue;
                        }
                        for c in 0..cols {
                            let t2 = f.mul(ns.get(c, nc), &s);
                            let cur = f.add(m.get(r, c), &t2);
                            m.set(r, c, cur);
                        }
                    }
                }
            }
        }
        if !m.is_zero() {
            mats.insert(lo + t as i64, m.clone());
        }
        prev = Some(m);
    }
    ChainComplex::new(f, space, mats).expect("random complex squares to zero")
}

/// A random module built from constructors, depth-limited. Every produced
/// module satisfies the module equations by construction.
pub fn random_module(cat: &crate::category::DirectedCategory, rng: &mut impl Rng) -> AModule {
    random_module_depth(cat, rng, 2)
}

fn random_module_depth(
    cat: &crate::category::DirectedCategory,
    rng: &mut impl Rng,
    depth: usize,
) -> AModule {
    let m = cat.m();
    let base = |rng: &mut dyn rand::RngCore| -> AModule {
        let j = rng.gen_range(1..=m);
        if rng.gen_bool(0.5) {
            simple(cat, j).expect("in range")
        } else {
            projective(cat, j).expect("in range")
        }
    };
    if depth == 0 {
        return base(rng);
    }
    match rng.gen_range(0..6) {
        0 => base(rng),
        1 => shift(&random_module_depth(cat, rng, depth - 1), rng.gen_range(-2..=2)),
        2 => {
            let z = random_small_complex(cat.field(), rng);
            tensor_module(&z, &random_module_depth(cat, rng, depth - 1)).module
        }
        3 => {
            // cone on a random degree-0 cocycle between two building blocks
            let a = random_module_depth(cat, rng, depth - 1);
            let b = random_module_depth(cat, rng, depth - 1);
            match HomComplex::new(&a, &b) {
                Ok(hc) => {
                    let phi = random_cocycle(&hc, 0, rng).expect("coordinates fit");
                    cone_unchecked(&phi).module
                }
                Err(_) => base(rng),
            }
        }
        4 => {
            let a = random_module_depth(cat, rng, depth - 1);
            let b = random_module_depth(cat, rng, depth - 1);
            match twist(&a, &b) {
                Ok(t) => t.module().clone(),
                Err(_) => base(rng),
            }
        }
        _ => {
            let a = random_module_depth(cat, rng, depth - 1);
            let j = rng.gen_range(0..=m);
            match truncation(&a, j) {
                Ok(t) => {
                    if rng.gen_bool(0.5) {
                        t.sub
                    } else {
                        t.quotient
                    }
                }
                Err(_) => base(rng),
            }
        }
    }
}

/// Corrupt one coefficient of a module table by adding 1 (used for mutation
/// testing); returns `None` when the module stores no coefficients.
pub fn corrupt_one_coefficient(
    m: &AModule,
    rng: &mut impl Rng,
) -> Option<AModule> {
    let count = m.coefficient_count();
    if count == 0 {
        return None;
    }
    let f = m.field();
    let entry = rng.gen_range(0..count);
    // replace with value + 1 ≠ value; if that lands on zero, use a fresh
    // nonzero value instead so the entry stays present but wrong
    let keys: Vec<Scalar> = m
        .mu_table()
        .values()
        .flat_map(|v| v.iter().map(|(_, c)| c.clone()))
        .collect();
    let old = &keys[entry];
    let mut new = f.add(old, &f.one());
    if f.is_zero(&new) {
        new = random_nonzero(&f, rng);
        if new == *old {
            new = f.add(&new, &f.one());
        }
    }
    Some(m.with_replaced_coefficient(entry, new).expect("entry exists"))
}
