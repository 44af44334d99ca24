//! Acceptance suite. One test per criterion; each prints a single
//! `criterion N ...: PASS` line on success and enforces its runtime budget.
//! All checks are exact — zero tolerance.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thimble::category::{fixture, Arg, DirectedCategory};
use thimble::field::{Field, FieldSpec};
use thimble::graded::GenId;
use thimble::homcx::{hom_groups, yoneda, yoneda_inverse, yoneda_premorphism, HomComplex};
use thimble::maslov;
use thimble::module::{
    graded_piece, projective, shift, simple, tensor_module, truncation, AModule,
};
use thimble::morphism::{compose, PreMorphism};
use thimble::mutate::projectives_to_simples;
use thimble::quasi::{
    invert, is_zero_object, iso_type_simple, whitehead_test, zero_by_hom_criterion,
};
use thimble::sample::{random_cocycle, random_module, random_premorphism, random_small_complex};
use thimble::specseq::{e1_identification, edge_map, filtered_hom, morse_e1_grid, spectral_sequence};
use thimble::twist::{cone, cone_to_quotient, twist};
use thimble::CommuteMode;

const FIXTURES: [&str; 4] = ["A2", "triangular(3)", "triangular(4)", "A4mu3"];

fn f5() -> Field {
    Field::new(FieldSpec::prime(5).unwrap())
}

fn rational() -> Field {
    Field::new(FieldSpec::rational())
}

fn budget(name: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "{name} exceeded its runtime budget: {elapsed:?} ≥ {limit:?}"
    );
}

/// Derived objects for one fixture: cones, twists, tensors, shifts,
/// truncations over the simples and projectives.
fn derived_objects(cat: &DirectedCategory, rng: &mut ChaCha8Rng) -> Vec<AModule> {
    let m = cat.m();
    let p_top = projective(cat, m).unwrap();
    let p_bot = projective(cat, 1).unwrap();
    let s_top = simple(cat, m).unwrap();
    let mut out = Vec::new();
    out.push(cone(&PreMorphism::identity(&p_top)).unwrap().module);
    out.push(cone(&PreMorphism::zero(&p_top, &s_top, 0)).unwrap().module);
    out.push(twist(&p_bot, &p_top).unwrap().module().clone());
    if m > 1 {
        out.push(twist(&projective(cat, m - 1).unwrap(), &p_top).unwrap().module().clone());
    }
    let z = random_small_complex(cat.field(), rng);
    out.push(tensor_module(&z, &p_top).module);
    out.push(shift(&p_top, 1));
    out.push(shift(&s_top, -2));
    let t = truncation(&p_top, m / 2).unwrap();
    out.push(t.sub);
    out.push(t.quotient);
    out.push(cone(&truncation(&p_top, 1).unwrap().inclusion).unwrap().module);
    out
}

#[test]
fn criterion_01_relation_suites() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    // categories stored with a single coefficient that no relation binds:
    // rescaling it yields an isomorphic, still-valid category, so detection
    // is impossible in principle; the suites pin those exceptions explicitly
    let benign_cat: BTreeMap<&str, usize> =
        BTreeMap::from([("A2", 0), ("triangular(3)", 1), ("triangular(4)", 0), ("A4mu3", 1)]);
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        assert!(cat.validate().pass(), "{name} fails validation");

        // all simples, projectives and derived objects satisfy the module
        // equations exactly
        for j in 1..=cat.m() {
            assert!(simple(&cat, j).unwrap().check().pass());
            assert!(projective(&cat, j).unwrap().check().pass());
        }
        for module in derived_objects(&cat, &mut rng) {
            assert!(
                module.check().pass(),
                "derived module {} over {name} fails",
                module.name()
            );
        }

        // category-level mutation testing: every coefficient corruption is
        // detected except the pinned benign rescalings
        let mut undetected = 0usize;
        for entry in 0..cat.coefficient_count() {
            let bad = cat
                .with_replaced_coefficient(entry, f5().from_i64(2))
                .unwrap();
            if bad.validate().pass() {
                undetected += 1;
            }
        }
        assert_eq!(
            undetected, benign_cat[name],
            "unexpected undetected category corruptions over {name}"
        );

        // shape-level corruption (wrong-degree entry) is always detected
        if let Some((&(i, j), space)) = cat.hom_entries().next() {
            let g = space.iter().next().unwrap();
            let bad = cat
                .with_injected_entry(
                    thimble::category::CatKey {
                        chain: vec![i, j],
                        inputs: vec![g],
                    },
                    vec![(g, f5().one())],
                )
                .unwrap();
            assert!(!bad.validate().pass(), "degree corruption passed over {name}");
        }

        // module-level mutation testing on the largest projective: every
        // single-coefficient corruption breaks the module equations, except
        // the unbound μ²(e₂, a) rescaling over A2
        let p = projective(&cat, cat.m()).unwrap();
        let benign_mod = if name == "A2" { 1 } else { 0 };
        let mut undetected = 0usize;
        for entry in 0..p.coefficient_count() {
            let bad = p.with_replaced_coefficient(entry, f5().from_i64(2)).unwrap();
            if bad.check().pass() {
                undetected += 1;
            }
        }
        assert_eq!(
            undetected, benign_mod,
            "unexpected undetected module corruptions for P{} over {name}",
            cat.m()
        );
    }
    budget("criterion 1", start, Duration::from_secs(5));
    println!("criterion 1 (relation suites, mutation detection): PASS");
}

#[test]
fn criterion_02_dg_axioms() {
    let start = Instant::now();
    for field in [f5(), rational()] {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for name in FIXTURES {
            let cat = fixture(name, field).unwrap();
            let m = cat.m();
            // composable triples (M, N, O)
            let triples = [
                (projective(&cat, m).unwrap(), projective(&cat, m).unwrap(), projective(&cat, m).unwrap()),
                (simple(&cat, m).unwrap(), projective(&cat, m).unwrap(), simple(&cat, 1).unwrap()),
                (projective(&cat, m).unwrap(), simple(&cat, 1).unwrap(), simple(&cat, 1).unwrap()),
            ];
            for (mm, nn, oo) in triples {
                let hom_mn = HomComplex::new(&mm, &nn).unwrap();
                let hom_no = HomComplex::new(&nn, &oo).unwrap();
                let degrees_mn: Vec<i64> = hom_mn.complex().space().degrees().collect();
                let degrees_no: Vec<i64> = hom_no.complex().space().degrees().collect();
                if degrees_mn.is_empty() {
                    continue;
                }
                for _ in 0..100 {
                    let dphi = degrees_mn[rng.gen_range(0..degrees_mn.len())];
                    let phi = random_premorphism(&hom_mn, dphi, &mut rng).unwrap();
                    // μ¹∘μ¹ = 0
                    assert!(
                        phi.differential().differential().is_zero(),
                        "μ¹∘μ¹ ≠ 0 over {name}"
                    );
                    if degrees_no.is_empty() {
                        continue;
                    }
                    let dpsi = degrees_no[rng.gen_range(0..degrees_no.len())];
                    let psi = random_premorphism(&hom_no, dpsi, &mut rng).unwrap();
                    // Leibniz: μ¹μ²(ψ,φ) + μ²(ψ, μ¹φ) + (−1)^{||φ||} μ²(μ¹ψ, φ) = 0
                    let lhs = compose(&psi, &phi).unwrap().differential();
                    let t2 = compose(&psi, &phi.differential()).unwrap();
                    let sign = phi.field().from_i64(if (dphi - 1).rem_euclid(2) == 0 { 1 } else { -1 });
                    let t3 = compose(&psi.differential(), &phi).unwrap().scaled(&sign);
                    let residual = lhs.add(&t2).unwrap().add(&t3).unwrap();
                    assert!(residual.is_zero(), "Leibniz fails over {name}");
                }
            }
        }
    }
    budget("criterion 2", start, Duration::from_secs(30));
    println!("criterion 2 (dg axioms of C over F5 and Q): PASS");
}

#[test]
fn criterion_03_yoneda() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let mut modules: Vec<AModule> = Vec::new();
        for j in 1..=cat.m() {
            modules.push(simple(&cat, j).unwrap());
            modules.push(projective(&cat, j).unwrap());
        }
        modules.push(
            twist(&projective(&cat, 1).unwrap(), &projective(&cat, cat.m()).unwrap())
                .unwrap()
                .module()
                .clone(),
        );
        for module in &modules {
            for k in 1..=cat.m() {
                let p_k = projective(&cat, k).unwrap();
                let y = yoneda(module, k, &p_k).unwrap();
                let sc = y.object_complex.cohomology();
                let dc = y.homcx.cohomology();
                assert_eq!(
                    sc.nonzero_dims(),
                    dc.nonzero_dims(),
                    "H dims differ for ({}, k={k}) over {name}",
                    module.name()
                );
                let blocks = y
                    .f1
                    .induced_on_cohomology(
                        &y.object_complex,
                        y.homcx.complex(),
                        &sc,
                        &dc,
                        CommuteMode::Strict,
                    )
                    .unwrap();
                for (deg, blk) in blocks {
                    assert!(
                        blk.is_invertible(),
                        "H(F¹) not invertible at degree {deg} for ({}, k={k}) over {name}",
                        module.name()
                    );
                }
                // quasi-inverse round trip is the identity on M(Y_k)
                for mg in module.space(k).iter() {
                    let phi = yoneda_premorphism(module, k, mg).unwrap();
                    let back = yoneda_inverse(&phi, k).unwrap();
                    assert_eq!(back, vec![(mg, f5().one())]);
                }
            }
        }
    }
    budget("criterion 3", start, Duration::from_secs(10));
    println!("criterion 3 (Yoneda quasi-isomorphism and round trip): PASS");
}

/// The shared pair set for criteria 4–6: simples, projectives, cones and
/// twists over every fixture.
fn ss_pairs(cat: &DirectedCategory) -> Vec<(AModule, AModule)> {
    let m = cat.m();
    let p1 = projective(cat, 1).unwrap();
    let pm = projective(cat, m).unwrap();
    let s1 = simple(cat, 1).unwrap();
    let sm = simple(cat, m).unwrap();
    let tw = twist(&p1, &pm).unwrap().module().clone();
    let cz = cone(&PreMorphism::zero(&pm, &s1, 0)).unwrap().module;
    vec![
        (sm.clone(), s1.clone()),
        (pm.clone(), sm.clone()),
        (pm.clone(), pm.clone()),
        (s1.clone(), pm.clone()),
        (sm.clone(), tw.clone()),
        (tw.clone(), s1.clone()),
        (cz.clone(), pm.clone()),
        (pm.clone(), cz.clone()),
    ]
}

#[test]
fn criterion_04_ss_convergence() {
    let start = Instant::now();
    let mut count = 0usize;
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        for (m0, m1) in ss_pairs(&cat) {
            let fc = filtered_hom(&m0, &m1).unwrap();
            let run = spectral_sequence(&fc, None).unwrap();
            // independent oracle: cohomology of the unfiltered hom complex
            let oracle = hom_groups(&m0, &m1).unwrap();
            assert!(run.converged, "E∞ ≠ gr H for ({}, {}) over {name}", m0.name(), m1.name());
            assert_eq!(
                run.einf_total(),
                oracle,
                "ΣE∞ ≠ Hom dims for ({}, {}) over {name}",
                m0.name(),
                m1.name()
            );
            count += 1;
        }
    }
    assert!(count >= 20, "only {count} pairs exercised");
    budget("criterion 4", start, Duration::from_secs(60));
    println!("criterion 4 (spectral sequence convergence, {count} pairs): PASS");
}

#[test]
fn criterion_05_e1_identification() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        for (m0, m1) in ss_pairs(&cat) {
            let ident = e1_identification(&m0, &m1).unwrap();
            assert!(
                ident.dims_match,
                "raw E₁ ≠ identification for ({}, {}) over {name}: raw {:?} predicted {:?}",
                m0.name(),
                m1.name(),
                ident.raw,
                ident.predicted
            );
            assert!(
                ident.witnesses_ok,
                "chain-level witnesses fail for ({}, {}) over {name}",
                m0.name(),
                m1.name()
            );
        }
    }
    budget("criterion 5", start, Duration::from_secs(60));
    println!("criterion 5 (E1 identification, slot-for-slot): PASS");
}

#[test]
fn criterion_06_edge_homomorphism() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        for (m0, m1) in ss_pairs(&cat) {
            let rep = edge_map(&m0, &m1).unwrap();
            assert!(
                rep.chain_map_ok,
                "edge chain map fails for ({}, {}) over {name}",
                m0.name(),
                m1.name()
            );
            assert!(
                rep.product_matches,
                "edge ≠ composition product for ({}, {}) over {name}",
                m0.name(),
                m1.name()
            );
        }
    }
    budget("criterion 6", start, Duration::from_secs(60));
    println!("criterion 6 (edge map = composition product after P1 = S1): PASS");
}

#[test]
fn criterion_07_lemma_suite() {
    let start = Instant::now();
    // simple recognition
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        for j in 1..=cat.m() {
            assert_eq!(iso_type_simple(&simple(&cat, j).unwrap()), Some(j));
        }
        let pm = projective(&cat, cat.m()).unwrap();
        if cat.m() > 1 {
            assert_eq!(iso_type_simple(&pm), None);
        }
        // quasi-simple instances produced by twisting
        let t = twist(&projective(&cat, 1).unwrap(), &projective(&cat, 1).unwrap()).unwrap();
        assert!(is_zero_object(t.module()));
    }
    let cat = fixture("A2", f5()).unwrap();
    let tw = twist(&projective(&cat, 1).unwrap(), &projective(&cat, 2).unwrap()).unwrap();
    assert_eq!(iso_type_simple(tw.module()), Some(2));

    // zero-object criteria agree on 50 random modules
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut zero_seen = 0usize;
    for i in 0..50 {
        let cat = fixture(if i % 2 == 0 { "triangular(3)" } else { "A4mu3" }, f5()).unwrap();
        let m = random_module(&cat, &mut rng);
        let by_acyclicity = is_zero_object(&m);
        let by_hom = zero_by_hom_criterion(&m).unwrap();
        assert_eq!(by_acyclicity, by_hom, "criteria disagree on {}", m.name());
        if by_acyclicity {
            zero_seen += 1;
        }
    }
    let _ = zero_seen;

    // Whitehead-style certification on constructed quasi-isomorphisms
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let pm = projective(&cat, cat.m()).unwrap();
        let tr = truncation(&pm, 1).unwrap();
        let c = cone(&tr.inclusion).unwrap();
        let pr = cone_to_quotient(&c, &tr.quotient);
        assert!(whitehead_test(&pr).unwrap(), "cone projection over {name}");
        // certified inverse re-verifies by substitution
        let inv = invert(&pr).unwrap().expect("quasi-iso inverts");
        inv.verify(&pr).unwrap();
        // zero maps between nonzero modules are rejected
        let z = PreMorphism::zero(&pm, &pm, 0);
        assert!(!whitehead_test(&z).unwrap());
    }
    budget("criterion 7", start, Duration::from_secs(60));
    println!("criterion 7 (simple recognition, zero tests, Whitehead): PASS");
}

#[test]
fn criterion_08_mutations() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let rep = projectives_to_simples(&cat).unwrap();
        assert!(rep.pass, "{name}: {:?}", rep.failures);
        let expected: Vec<Option<usize>> = (1..=cat.m()).rev().map(Some).collect();
        assert_eq!(rep.iso_types, expected, "{name}");
        assert!(rep.duality.pass, "{name} duality");
        // duality table is exactly (eq-style) K on the anti-diagonal
        let n = cat.m();
        for k in 1..=n {
            for pos in 1..=n {
                let dims = &rep.duality.table[&(k, pos)];
                if pos == n + 1 - k {
                    assert_eq!(dims, &BTreeMap::from([(0, 1)]));
                } else {
                    assert!(dims.is_empty());
                }
            }
        }
    }
    budget("criterion 8", start, Duration::from_secs(120));
    println!("criterion 8 (half twist carries projectives to simples): PASS");
}

#[test]
fn criterion_09_maslov_suite() {
    let start = Instant::now();
    use thimble::maslov::Rational64;
    let r = |n: i64, d: i64| Rational64::new(n, d);
    let lag = |v: Vec<Rational64>| maslov::SplitLagrangian::new(v);

    // Morse-index identity for graphs over the zero-section
    assert_eq!(
        maslov::index(&lag(vec![r(0, 1)]), &lag(vec![r(-1, 10)])).unwrap(),
        0
    );
    assert_eq!(
        maslov::index(&lag(vec![r(0, 1)]), &lag(vec![r(1, 10)])).unwrap(),
        1
    );
    // cotangent-fibre convention
    for n in 1..=8usize {
        let zero = maslov::SplitLagrangian::constant(r(0, 1), n);
        let fibre = maslov::SplitLagrangian::constant(r(-1, 2), n);
        assert_eq!(maslov::index(&zero, &fibre).unwrap(), 0);
    }
    // duality on 10⁴ random transverse pairs
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut checked = 0usize;
    while checked < 10_000 {
        let n = rng.gen_range(1..=6);
        let mk = |rng: &mut ChaCha8Rng| {
            maslov::SplitLagrangian::new(
                (0..n)
                    .map(|_| r(rng.gen_range(-30..=30), 2 * rng.gen_range(1..=7) + 1))
                    .collect(),
            )
        };
        let l0 = mk(&mut rng);
        let l1 = mk(&mut rng);
        let (Ok(i01), Ok(i10)) = (maslov::index(&l0, &l1), maslov::index(&l1, &l0)) else {
            continue;
        };
        assert_eq!(i01 + i10, n as i64);
        checked += 1;
    }
    // the two planar triangle values
    let l0 = lag(vec![r(0, 1)]);
    let steep = lag(vec![r(3, 10)]);
    let shallow = lag(vec![r(-3, 10)]);
    assert_eq!(maslov::triangle_index(&l0, &steep, &shallow).unwrap(), -1);
    assert_eq!(maslov::triangle_index(&l0, &shallow, &steep).unwrap(), 0);
    // integer-shift invariance
    for _ in 0..500 {
        let mk = |rng: &mut ChaCha8Rng| r(rng.gen_range(-20..=20), 7);
        let (a, b, c) = (mk(&mut rng), mk(&mut rng), mk(&mut rng));
        if (a - b).is_integer() || (b - c).is_integer() || (a - c).is_integer() {
            continue;
        }
        let base =
            maslov::triangle_index(&lag(vec![a]), &lag(vec![b]), &lag(vec![c])).unwrap();
        let s = Rational64::from_integer(rng.gen_range(-3..=3));
        assert_eq!(
            maslov::triangle_index(&lag(vec![a + s]), &lag(vec![b]), &lag(vec![c])).unwrap(),
            base
        );
        assert_eq!(
            maslov::triangle_index(&lag(vec![a]), &lag(vec![b + s]), &lag(vec![c])).unwrap(),
            base
        );
        assert_eq!(
            maslov::triangle_index(&lag(vec![a]), &lag(vec![b]), &lag(vec![c + s])).unwrap(),
            base
        );
    }
    // the −μ identity
    for n in 0..=10usize {
        for mu in 0..=n {
            let rep = maslov::check_minus_mu(n, mu).unwrap();
            assert_eq!(rep.total, -(mu as i64));
        }
    }
    budget("criterion 9", start, Duration::from_secs(5));
    println!("criterion 9 (Maslov index suite): PASS");
}

#[test]
fn criterion_10_morse_grid() {
    let start = Instant::now();
    let h = BTreeMap::from([(3i64, 1usize)]);
    let grid = morse_e1_grid(&[0, 3], 3, 0, &h).unwrap();
    let totals: std::collections::BTreeSet<i64> = grid
        .iter()
        .filter(|(_, &d)| d > 0)
        .map(|(&(j, k), _)| j + k)
        .collect();
    assert_eq!(totals, std::collections::BTreeSet::from([0, 3]));
    // in general: for indices (0, n), H = K in degree n, totals are {0, n}
    for n in 1..=6usize {
        let h = BTreeMap::from([(n as i64, 1usize)]);
        let grid = morse_e1_grid(&[0, n], n, 0, &h).unwrap();
        let totals: std::collections::BTreeSet<i64> = grid
            .iter()
            .filter(|(_, &d)| d > 0)
            .map(|(&(j, k), _)| j + k)
            .collect();
        assert_eq!(totals, std::collections::BTreeSet::from([0, n as i64]));
    }
    budget("criterion 10", start, Duration::from_secs(1));
    println!("criterion 10 (sphere-shaped Morse grid): PASS");
}

#[test]
fn criterion_11_cli_determinism() {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_thimble");
    let suite: Vec<Vec<&str>> = vec![
        vec!["validate", "A2"],
        vec!["validate", "triangular(3)"],
        vec!["validate", "triangular(4)", "--random-modules", "3", "--seed", "5"],
        vec!["validate", "A4mu3"],
        vec!["hom", "A2", "S2", "S1"],
        vec!["hom", "triangular(4)", "P4", "S4", "--field", "5"],
        vec!["ss", "A2", "S2", "S1", "--format", "table"],
        vec!["ss", "triangular(3)", "P3", "S2", "--format", "struct"],
        vec!["edge", "A2", "S2", "P1"],
        vec!["edge", "triangular(3)", "P3", "P3", "--format", "struct"],
        vec!["mutate", "A2", "P", "s1"],
        vec!["mutate", "A4mu3", "P", "s3", "s2", "s3", "s1", "s2", "s3", "--field", "5"],
        vec!["halftwist", "4"],
        vec!["yoneda", "A4mu3", "4", "P4"],
        vec!["twist", "A2", "P1", "P2", "--format", "struct"],
        vec!["tower", "triangular(3)", "P2"],
        vec!["maslov", "index", "0,0", "-1/2,-1/2"],
        vec!["maslov", "triangle", "0", "3/10", "-3/10"],
        vec!["maslov", "thimble", "3", "2"],
        vec!["maslov", "minus-mu", "4", "3"],
        vec!["morse-e1", "--indices", "0,3", "--n", "3", "--h", "3:1"],
    ];
    let run_suite = || -> Vec<(Option<i32>, Vec<u8>, Vec<u8>)> {
        suite
            .iter()
            .map(|args| {
                let out = std::process::Command::new(bin)
                    .args(args)
                    .output()
                    .expect("binary runs");
                (out.status.code(), out.stdout, out.stderr)
            })
            .collect()
    };
    let first = run_suite();
    let second = run_suite();
    assert_eq!(first, second, "CLI outputs are not byte-identical");
    for (i, (code, _, _)) in first.iter().enumerate() {
        assert_eq!(*code, Some(0), "suite command #{i} failed: {:?}", suite[i]);
    }
    budget("criterion 11", start, Duration::from_secs(120));
    println!("criterion 11 (byte-identical CLI runs): PASS");
}

/// Supporting exactness property promised alongside the twist triangle: for
/// every degree-0 cocycle the per-object long exact sequence of the cone has
/// ranks that add up.
#[test]
fn supporting_cone_long_exact_sequence() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let m = projective(&cat, cat.m()).unwrap();
        let n = projective(&cat, 1).unwrap();
        for (src, dst) in [(&m, &n), (&n, &m), (&m, &m)] {
            let hc = HomComplex::new(src, dst).unwrap();
            let phi = random_cocycle(&hc, 0, &mut rng).unwrap();
            let q = cone(&phi).unwrap();
            assert!(q.module.check().pass());
            let blocks = thimble::homcx::induced_h_phi1(&phi).unwrap();
            for j in 1..=cat.m() {
                let hm = src.object_cohomology(j);
                let hn = dst.object_cohomology(j);
                let hq = q.module.object_cohomology(j);
                let degs: std::collections::BTreeSet<i64> = hm
                    .nonzero_dims()
                    .keys()
                    .chain(hn.nonzero_dims().keys())
                    .chain(hq.nonzero_dims().keys())
                    .copied()
                    .collect();
                for k in degs {
                    let rank_k = blocks[j - 1].get(&k).map_or(0, |m| m.rank());
                    let rank_k1 = blocks[j - 1].get(&(k + 1)).map_or(0, |m| m.rank());
                    // H^k(Q) ≅ coker(H^k φ) ⊕ ker(H^{k+1} φ)
                    let expected = (hn.dim(k) - rank_k) + (hm.dim(k + 1) - rank_k1);
                    assert_eq!(
                        hq.dim(k),
                        expected,
                        "LES ranks at Y{j}, degree {k}, over {name}"
                    );
                }
            }
        }
    }
    budget("cone LES", start, Duration::from_secs(30));
    println!("supporting check (cone long exact sequence): PASS");
}

/// Supporting check: the graded pieces of the canonical filtration are the
/// per-object complexes tensored with the simples, slot for slot, and the
/// explicit sign rescaling is an isomorphism of modules.
#[test]
fn supporting_graded_pieces() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let m = projective(&cat, cat.m()).unwrap();
        for j in 1..=cat.m() {
            let gp = graded_piece(&m, j).unwrap();
            assert!(gp.check().pass());
            let t = tensor_module(&m.object_complex(j), &simple(&cat, j).unwrap());
            for i in 1..=cat.m() {
                assert_eq!(gp.space(i).dims(), t.module.space(i).dims());
            }
            // f(z) = (−1)^{|z|} z⊗s is a strict isomorphism
            let f = gp.field();
            let iso = PreMorphism::strict(&gp, &t.module, |obj, g| {
                if obj != j {
                    return Vec::new();
                }
                let sign = f.from_i64(if g.deg.rem_euclid(2) == 0 { 1 } else { -1 });
                // tensor basis pairs (z, e_j) preserve the z index
                vec![(GenId::new(g.deg, g.idx), sign)]
            });
            assert!(iso.is_cocycle(), "graded piece comparison over {name} at {j}");
            assert!(thimble::quasi::is_quasi_iso(&iso).unwrap());
        }
    }
    budget("graded pieces", start, Duration::from_secs(30));
    println!("supporting check (graded pieces of the canonical filtration): PASS");
}

/// Supporting check: evaluation is a cocycle and the tensor example family
/// from the module constructors behaves as documented.
#[test]
fn supporting_evaluation_and_shift() {
    let start = Instant::now();
    for name in FIXTURES {
        let cat = fixture(name, f5()).unwrap();
        let m = projective(&cat, cat.m()).unwrap();
        let s = simple(&cat, 1).unwrap();
        let ev = thimble::twist::evaluation(&m, &s).unwrap();
        assert!(ev.epsilon.is_cocycle(), "ε over {name}");
        // Hom⁰(M, shift(N, i)) dims = Hom^i(M, N) dims
        for i in [-1i64, 0, 1, 2] {
            let shifted = shift(&s, i);
            let lhs = hom_groups(&m, &shifted).unwrap();
            let rhs = hom_groups(&m, &s).unwrap();
            for (deg, d) in &rhs {
                assert_eq!(
                    lhs.get(&(deg - i)).copied().unwrap_or(0),
                    *d,
                    "shift degree bookkeeping over {name}"
                );
            }
        }
        // μ²(m, e) unitality on stored generators, via the evaluator
        for ((i, j), space) in cat.hom_entries().map(|(k, v)| (*k, v)) {
            for g in space.iter() {
                let v = cat.mu_eval(&[i, j, j], &[Arg::Gen(g), Arg::Unit]);
                assert_eq!(v, vec![(g, f5().from_i64(if g.deg % 2 == 0 { 1 } else { -1 }))]);
                let v = cat.mu_eval(&[i, i, j], &[Arg::Unit, Arg::Gen(g)]);
                assert_eq!(v, vec![(g, f5().one())]);
            }
        }
    }
    budget("evaluation/shift", start, Duration::from_secs(30));
    println!("supporting check (evaluation cocycle, shifts, unitality): PASS");
}
