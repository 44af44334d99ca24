//! Cross-module property tests: functoriality of induced maps on random
//! chain maps, Künneth behavior of module tensors, braid-relation
//! certificates for mutated collections, and hom-complex identities on
//! randomly generated modules.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thimble::category::fixture;
use thimble::complex::{induced_map, ChainComplex, GradedMap};
use thimble::field::{Field, FieldSpec, Scalar};
use thimble::graded::GradedSpace;
use thimble::homcx::{hom_groups, HomComplex};
use thimble::matrix::Matrix;
use thimble::module::{projective, simple, tensor_module};
use thimble::morphism::compose;
use thimble::mutate::{apply_word, is_exceptional, mutate, BraidWord, Collection};
use thimble::sample::{random_module, random_premorphism};

fn f3() -> Field {
    Field::new(FieldSpec::prime(3).unwrap())
}

fn f5() -> Field {
    Field::new(FieldSpec::prime(5).unwrap())
}

/// A random bounded complex on degrees 0..=2 with d² = 0 (built degreewise
/// inside the kernel of the previous differential).
fn random_complex(f: Field, rng: &mut ChaCha8Rng) -> ChainComplex {
    let dims = [
        rng.gen_range(1..=3usize),
        rng.gen_range(1..=3usize),
        rng.gen_range(1..=3usize),
    ];
    let mut space = GradedSpace::new();
    for (t, &d) in dims.iter().enumerate() {
        for i in 0..d {
            space.push(t as i64, format!("c{t}_{i}")).unwrap();
        }
    }
    let mut d0 = Matrix::zeros(f, dims[1], dims[0]);
    for r in 0..dims[1] {
        for c in 0..dims[0] {
            d0.set(r, c, f.from_i64(rng.gen_range(0..3)));
        }
    }
    // rows of d1 lie in the left kernel of d0
    let left = d0.transpose().nullspace();
    let mut d1 = Matrix::zeros(f, dims[2], dims[1]);
    for r in 0..dims[2] {
        for k in 0..left.cols() {
            let s = f.from_i64(rng.gen_range(0..3));
            if f.is_zero(&s) {
                continue;
            }
            for c in 0..dims[1] {
                let t = f.mul(left.get(c, k), &s);
                let cur = f.add(d1.get(r, c), &t);
                d1.set(r, c, cur);
            }
        }
    }
    let mut d = BTreeMap::new();
    if !d0.is_zero() {
        d.insert(0, d0);
    }
    if !d1.is_zero() {
        d.insert(1, d1);
    }
    ChainComplex::new(f, space, d).expect("squares to zero")
}

/// A random chain self-map `α·id + d∘h + h∘d` for random degree-(−1) blocks.
fn random_chain_map(c: &ChainComplex, rng: &mut ChaCha8Rng) -> GradedMap {
    let f = c.field();
    let alpha = f.from_i64(rng.gen_range(0..3));
    let mut h: BTreeMap<i64, Matrix> = BTreeMap::new();
    for k in [1i64, 2] {
        let rows = c.dim(k - 1);
        let cols = c.dim(k);
        let mut m = Matrix::zeros(f, rows, cols);
        for r in 0..rows {
            for cc in 0..cols {
                m.set(r, cc, f.from_i64(rng.gen_range(0..3)));
            }
        }
        h.insert(k, m);
    }
    let mut maps = BTreeMap::new();
    for k in [0i64, 1, 2] {
        let id = Matrix::identity(f, c.dim(k)).scale(&alpha);
        let hk1 = h
            .get(&(k + 1))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(f, c.dim(k), c.dim(k + 1)));
        let dh = hk1.mul(&c.differential(k));
        let hd = if k > 0 {
            c.differential(k - 1).mul(&h[&k])
        } else {
            Matrix::zeros(f, c.dim(k), c.dim(k))
        };
        maps.insert(k, id.add(&dh).add(&hd));
    }
    GradedMap { shift: 0, maps }
}

#[test]
fn induced_map_respects_composition_over_f3() {
    let f = f3();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..40 {
        let c = random_complex(f, &mut rng);
        let g = random_chain_map(&c, &mut rng);
        let h = random_chain_map(&c, &mut rng);
        // compose: (h∘g)_k = h_k · g_k
        let mut comp = BTreeMap::new();
        for k in [0i64, 1, 2] {
            comp.insert(
                k,
                h.maps[&k].mul(&g.maps[&k]),
            );
        }
        let hg = GradedMap {
            shift: 0,
            maps: comp,
        };
        let ig = induced_map(&g, &c, &c).unwrap();
        let ih = induced_map(&h, &c, &c).unwrap();
        let ihg = induced_map(&hg, &c, &c).unwrap();
        for k in [0i64, 1, 2] {
            let composed = ih[&k].mul(&ig[&k]);
            assert_eq!(ihg[&k], composed, "degree {k}");
        }
    }
}

#[test]
fn tensor_kunneth_shape() {
    // H(Z) = K in degrees 0 and 2 → Z⊗M has the per-object cohomology of
    // M ⊕ M[−2]
    let f = f5();
    let cat = fixture("triangular(3)", f).unwrap();
    let mut space = GradedSpace::new();
    space.push(0, "x".into()).unwrap();
    space.push(2, "z".into()).unwrap();
    let z = ChainComplex::with_zero_differential(f, space);
    assert_eq!(
        z.cohomology().nonzero_dims(),
        BTreeMap::from([(0, 1), (2, 1)])
    );
    for k in 1..=3 {
        let m = projective(&cat, k).unwrap();
        let t = tensor_module(&z, &m);
        assert!(t.module.check().pass());
        for j in 1..=3 {
            let hm = m.object_cohomology(j).nonzero_dims();
            let ht = t.module.object_cohomology(j).nonzero_dims();
            let mut expected: BTreeMap<i64, usize> = BTreeMap::new();
            for (&deg, &dim) in &hm {
                *expected.entry(deg).or_insert(0) += dim;
                *expected.entry(deg + 2).or_insert(0) += dim;
            }
            let expected: BTreeMap<i64, usize> =
                expected.into_iter().filter(|(_, v)| *v > 0).collect();
            assert_eq!(ht, expected, "P{k} at Y{j}");
        }
    }
}

#[test]
fn braid_relation_certificates() {
    for name in ["triangular(3)", "triangular(4)", "A4mu3"] {
        let cat = fixture(name, f5()).unwrap();
        let m = cat.m();
        let projs = Collection::projectives(&cat).unwrap();
        for i in 1..m - 1 {
            let lhs = apply_word(&projs, &BraidWord::new(m, vec![i, i + 1, i]).unwrap()).unwrap();
            let rhs =
                apply_word(&projs, &BraidWord::new(m, vec![i + 1, i, i + 1]).unwrap()).unwrap();
            for (pos, (a, b)) in lhs.entries.iter().zip(&rhs.entries).enumerate() {
                for j in 1..=m {
                    assert_eq!(
                        a.object_cohomology(j).nonzero_dims(),
                        b.object_cohomology(j).nonzero_dims(),
                        "{name} braid i={i}, entry {pos}, object {j}"
                    );
                    let s = simple(&cat, j).unwrap();
                    assert_eq!(
                        hom_groups(a, &s).unwrap(),
                        hom_groups(b, &s).unwrap(),
                        "{name} braid i={i}, entry {pos}, pairing with S{j}"
                    );
                }
            }
        }
    }
}

#[test]
fn mutation_preserves_exceptionality() {
    for name in ["A2", "triangular(3)", "triangular(4)", "A4mu3"] {
        let cat = fixture(name, f5()).unwrap();
        for base in [
            Collection::projectives(&cat).unwrap(),
            Collection::simples_reversed(&cat).unwrap(),
        ] {
            assert!(is_exceptional(&base).unwrap().pass, "{name} base");
            for i in 1..base.len() {
                let out = mutate(&base, i).unwrap();
                assert!(
                    is_exceptional(&out).unwrap().pass,
                    "{name} mutation at {i}"
                );
            }
        }
    }
}

#[test]
fn hom_p1_matches_object_cohomology_on_random_modules() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for name in ["triangular(3)", "A4mu3"] {
        let cat = fixture(name, f5()).unwrap();
        let p1 = projective(&cat, 1).unwrap();
        for _ in 0..8 {
            let m = random_module(&cat, &mut rng);
            let dims = hom_groups(&p1, &m).unwrap();
            assert_eq!(
                dims,
                m.object_cohomology(1).nonzero_dims(),
                "hom(P1, {}) over {name}",
                m.name()
            );
        }
    }
}

#[test]
fn chain_level_signed_associativity() {
    // μ²(χ, μ²(ψ, φ)) + (−1)^{||φ||} μ²(μ²(χ, ψ), φ) = 0: the d = 3
    // A∞-relation for the dg category C (μ³_C = 0)
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for name in ["triangular(3)", "A4mu3"] {
        let cat = fixture(name, f5()).unwrap();
        let m = cat.m();
        let a = projective(&cat, m).unwrap();
        let b = projective(&cat, m - 1).unwrap();
        let c = simple(&cat, 1).unwrap();
        let d = simple(&cat, 1).unwrap();
        let hab = HomComplex::new(&a, &b).unwrap();
        let hbc = HomComplex::new(&b, &c).unwrap();
        let hcd = HomComplex::new(&c, &d).unwrap();
        let degs = |h: &HomComplex| -> Vec<i64> { h.complex().space().degrees().collect() };
        let (da, db, dc) = (degs(&hab), degs(&hbc), degs(&hcd));
        if da.is_empty() || db.is_empty() || dc.is_empty() {
            continue;
        }
        for _ in 0..50 {
            let phi = random_premorphism(&hab, da[rng.gen_range(0..da.len())], &mut rng).unwrap();
            let psi = random_premorphism(&hbc, db[rng.gen_range(0..db.len())], &mut rng).unwrap();
            let chi = random_premorphism(&hcd, dc[rng.gen_range(0..dc.len())], &mut rng).unwrap();
            let lhs = compose(&chi, &compose(&psi, &phi).unwrap()).unwrap();
            let inner = compose(&chi, &psi).unwrap();
            let sign: Scalar = phi
                .field()
                .from_i64(if (phi.degree() - 1).rem_euclid(2) == 0 { 1 } else { -1 });
            let rhs = compose(&inner, &phi).unwrap().scaled(&sign);
            assert!(
                lhs.add(&rhs).unwrap().is_zero(),
                "signed associativity fails over {name}"
            );
        }
    }
}
