//! The hom complex `hom_C(M, N)`: enumerated component slots, the assembled
//! `μ¹_C` matrix, Hom groups, and the Yoneda quasi-isomorphism
//! `M(Y_k) → hom_C(P_k, M)` with its explicit quasi-inverse.

use std::collections::{BTreeMap, HashMap};

use crate::category::{Arg, SparseVec};
use crate::complex::{ChainComplex, Cohomology, CommuteMode, GradedMap};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{GenId, GradedSpace};
use crate::matrix::Matrix;
use crate::module::{AModule, ModKey};
use crate::morphism::PreMorphism;

/// One basis slot of the hom complex: a component key of the source side
/// plus an output basis vector of `N(Y_{j₀})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Slot {
    pub key_idx: usize,
    pub out: GenId,
}

/// `hom_C(M, N)` as a chain complex with remembered slot structure.
#[derive(Debug, Clone)]
pub struct HomComplex {
    source: AModule,
    target: AModule,
    keys: Vec<ModKey>,
    key_map: HashMap<ModKey, usize>,
    slots: Vec<Slot>,
    /// complex coordinates of each slot: (degree, index within degree)
    positions: Vec<GenId>,
    slot_index: HashMap<(usize, GenId), usize>,
    complex: ChainComplex,
}

impl HomComplex {
    pub fn new(source: &AModule, target: &AModule) -> Result<Self> {
        if source.cat() != target.cat() {
            return Err(Error::input(
                "hom complex endpoints live over different categories".to_string(),
            ));
        }
        let f = source.field();
        let keys = source.enumerate_keys();
        let key_map: HashMap<ModKey, usize> = keys
            .iter()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let mut slots = Vec::new();
        let mut space = GradedSpace::new();
        let mut positions = Vec::new();
        let mut slot_index = HashMap::new();
        for (key_idx, key) in keys.iter().enumerate() {
            let out_space = target.space(key.chain[0]);
            let base: i64 = key.m_in.deg
                + key.inputs.iter().map(|g| g.deg - 1).sum::<i64>();
            for out in out_space.iter() {
                let deg = out.deg - base; // slot degree k
                let pos = space.push(deg, format!("f{}", slots.len()))?;
                slot_index.insert((key_idx, out), slots.len());
                slots.push(Slot { key_idx, out });
                positions.push(pos);
            }
        }

        let mut hc = HomComplex {
            source: source.clone(),
            target: target.clone(),
            keys,
            key_map,
            slots,
            positions,
            slot_index,
            complex: ChainComplex::with_zero_differential(f, space.clone()),
        };

        // assemble μ¹_C degree by degree from delta pre-morphisms
        let mut d: BTreeMap<i64, Matrix> = BTreeMap::new();
        for s in 0..hc.slots.len() {
            let pos = hc.positions[s];
            let phi = hc.delta_premorphism(s);
            let dphi = phi.differential();
            for (key, val) in dphi.components() {
                let key_idx = hc
                    .key_index(key)
                    .expect("differential lands on enumerated keys");
                for (out, c) in val {
                    let sidx = hc.slot_index[&(key_idx, *out)];
                    let tpos = hc.positions[sidx];
                    debug_assert_eq!(tpos.deg, pos.deg + 1);
                    let mat = d.entry(pos.deg).or_insert_with(|| {
                        Matrix::zeros(f, space.dim(pos.deg + 1), space.dim(pos.deg))
                    });
                    mat.add_assign_at(tpos.idx, pos.idx, c);
                }
            }
        }
        hc.complex = ChainComplex::new(f, space, d)?;
        Ok(hc)
    }

    pub fn source(&self) -> &AModule {
        &self.source
    }
    pub fn target(&self) -> &AModule {
        &self.target
    }
    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }
    pub fn field(&self) -> Field {
        self.source.field()
    }
    pub fn keys(&self) -> &[ModKey] {
        &self.keys
    }
    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }
    pub fn slot_count(&self) -> usize {
        self.slots.len()
    }

    pub fn key_index(&self, key: &ModKey) -> Option<usize> {
        self.key_map.get(key).copied()
    }

    /// Complex coordinates (degree, index) of a slot.
    pub fn position(&self, slot: usize) -> GenId {
        self.positions[slot]
    }

    pub fn slot_at(&self, key_idx: usize, out: GenId) -> Option<usize> {
        self.slot_index.get(&(key_idx, out)).copied()
    }

    /// The delta pre-morphism supported on one slot with coefficient 1.
    pub fn delta_premorphism(&self, slot: usize) -> PreMorphism {
        let s = &self.slots[slot];
        let key = self.keys[s.key_idx].clone();
        let pos = self.positions[slot];
        let mut comps = BTreeMap::new();
        comps.insert(key, vec![(s.out, self.field().one())]);
        PreMorphism::new(
            self.source.clone(),
            self.target.clone(),
            pos.deg,
            comps,
        )
        .expect("delta pre-morphism is well-formed")
    }

    /// Coordinates of a homogeneous pre-morphism in the degree-`deg φ` basis.
    pub fn vector_of(&self, phi: &PreMorphism) -> Result<Vec<Scalar>> {
        let f = self.field();
        let deg = phi.degree();
        let mut v = vec![f.zero(); self.complex.dim(deg)];
        for (key, val) in phi.components() {
            let key_idx = self
                .key_index(key)
                .ok_or_else(|| Error::input(format!("component key {key:?} not enumerated")))?;
            for (out, c) in val {
                let sidx = self.slot_index[&(key_idx, *out)];
                let pos = self.positions[sidx];
                if pos.deg != deg {
                    return Err(Error::input(
                        "pre-morphism is not homogeneous of its declared degree".to_string(),
                    ));
                }
                v[pos.idx] = f.add(&v[pos.idx], c);
            }
        }
        Ok(v)
    }

    /// Rebuild a pre-morphism from degree-`deg` coordinates.
    pub fn premorphism_from_vector(&self, deg: i64, coords: &[Scalar]) -> Result<PreMorphism> {
        let f = self.field();
        if coords.len() != self.complex.dim(deg) {
            return Err(Error::input(format!(
                "expected {} coordinates at degree {deg}, got {}",
                self.complex.dim(deg),
                coords.len()
            )));
        }
        let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
        for (slot, pos) in self.positions.iter().enumerate() {
            if pos.deg != deg || f.is_zero(&coords[pos.idx]) {
                continue;
            }
            let s = &self.slots[slot];
            comps
                .entry(self.keys[s.key_idx].clone())
                .or_default()
                .push((s.out, coords[pos.idx].clone()));
        }
        for v in comps.values_mut() {
            v.sort_by_key(|(g, _)| *g);
        }
        PreMorphism::new(self.source.clone(), self.target.clone(), deg, comps)
    }

    pub fn cohomology(&self) -> Cohomology {
        self.complex.cohomology()
    }

    /// Graded dims of `Hom*_C(M, N)`.
    pub fn hom_group_dims(&self) -> BTreeMap<i64, usize> {
        self.cohomology().nonzero_dims()
    }
}

/// Graded dims of `Hom*_C(M, N)` (cohomology of the hom complex).
pub fn hom_groups(m: &AModule, n: &AModule) -> Result<BTreeMap<i64, usize>> {
    Ok(HomComplex::new(m, n)?.hom_group_dims())
}

/// The Yoneda data for `(P_k, M)`: the hom complex, the chain map
/// `F¹: (M(Y_k), μ¹) → hom_C(P_k, M)` and its verification.
pub struct Yoneda {
    pub k: usize,
    pub homcx: HomComplex,
    pub object_complex: ChainComplex,
    pub f1: GradedMap,
}

/// Builds `F¹(m)(x, a_d, …, a₁) = μ_M^{d+2}(m, x, a_d, …, a₁)` for
/// `x ∈ P_k(Y_{j_d}) = hom(Y_{j_d}, Y_k)`, checks that it strictly commutes
/// with the differentials, and returns the assembled block maps.
pub fn yoneda(m: &AModule, k: usize, p_k: &AModule) -> Result<Yoneda> {
    let f = m.field();
    if k < 1 || k > m.cat().m() {
        return Err(Error::input(format!("yoneda index {k} out of range")));
    }
    let homcx = HomComplex::new(p_k, m)?;
    let object_complex = m.object_complex(k);

    let mut blocks: BTreeMap<i64, Matrix> = BTreeMap::new();
    for mg in m.space(k).iter() {
        let phi = yoneda_premorphism(m, k, mg)?;
        let coords = homcx.vector_of(&phi)?;
        let mat = blocks.entry(mg.deg).or_insert_with(|| {
            Matrix::zeros(f, homcx.complex().dim(mg.deg), m.space(k).dim(mg.deg))
        });
        for (row, c) in coords.iter().enumerate() {
            mat.add_assign_at(row, mg.idx, c);
        }
    }
    let f1 = GradedMap {
        shift: 0,
        maps: blocks,
    };

    // chain-map property, exact
    for deg in object_complex.space().degrees().collect::<Vec<_>>() {
        let lhs = homcx
            .complex()
            .differential(deg)
            .mul(&f1.block(f, &object_complex, homcx.complex(), deg));
        let rhs = f1
            .block(f, &object_complex, homcx.complex(), deg + 1)
            .mul(&object_complex.differential(deg));
        if lhs != rhs {
            return Err(Error::invariant(format!(
                "Yoneda map fails to be a chain map at degree {deg}"
            )));
        }
    }

    Ok(Yoneda {
        k,
        homcx,
        object_complex,
        f1,
    })
}

/// The pre-morphism `F¹(m): P_k → M` for a single basis vector `m`.
pub fn yoneda_premorphism(m: &AModule, k: usize, mg: GenId) -> Result<PreMorphism> {
    let p_k = crate::module::projective(m.cat(), k)?;
    let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for key in p_k.enumerate_keys() {
        let last = *key.chain.last().unwrap();
        if last > k {
            continue;
        }
        let mut chain = key.chain.clone();
        chain.push(k);
        let mut args: Vec<Arg> = key.inputs.iter().map(|g| Arg::Gen(*g)).collect();
        args.push(if last == k { Arg::Unit } else { Arg::Gen(key.m_in) });
        let v = m.mu_eval(&chain, &Arg::Gen(mg), &args);
        if !v.is_empty() {
            comps.insert(key, v);
        }
    }
    PreMorphism::new(p_k, m.clone(), mg.deg, comps)
}

/// The explicit quasi-inverse: `φ ↦ φ¹(e_k) ∈ M(Y_k)`.
pub fn yoneda_inverse(phi: &PreMorphism, k: usize) -> Result<SparseVec> {
    let src = phi.source();
    // source must be P_k: its space at Y_k is spanned by e_k in degree 0
    let ek_space = src.space(k);
    if ek_space.dims() != BTreeMap::from([(0, 1)]) || ek_space.labels(0) != [format!("e{k}")] {
        return Err(Error::input(format!(
            "yoneda_inverse: source is not the elementary projective P{k}"
        )));
    }
    Ok(phi.eval(&[k], &Arg::Gen(GenId::new(0, 0)), &[]))
}

/// Per-object blocks of `φ¹` as a graded map `(M(Y_j), μ¹) → (N(Y_j), μ¹)`,
/// for a fixed object `j`.
pub fn first_order_blocks(phi: &PreMorphism, j: usize) -> GradedMap {
    let f = phi.field();
    let src = phi.source();
    let dst = phi.target();
    let mut maps: BTreeMap<i64, Matrix> = BTreeMap::new();
    for (key, val) in phi.components() {
        if key.chain.len() != 1 || key.chain[0] != j {
            continue;
        }
        let deg = key.m_in.deg;
        let mat = maps.entry(deg).or_insert_with(|| {
            Matrix::zeros(
                f,
                dst.space(j).dim(deg + phi.degree()),
                src.space(j).dim(deg),
            )
        });
        for (out, c) in val {
            mat.add_assign_at(out.idx, key.m_in.idx, c);
        }
    }
    GradedMap {
        shift: phi.degree(),
        maps,
    }
}

/// Induced map `H(φ¹)` per object; requires `μ¹_C(φ) = 0`, whose first-order
/// part makes `φ¹` anticommute with the differentials.
pub fn induced_h_phi1(phi: &PreMorphism) -> Result<Vec<BTreeMap<i64, Matrix>>> {
    let src = phi.source();
    let dst = phi.target();
    let mut out = Vec::new();
    for j in 1..=src.cat().m() {
        let blocks = first_order_blocks(phi, j);
        let sc = src.object_complex(j);
        let dc = dst.object_complex(j);
        let h = blocks.induced_on_cohomology(
            &sc,
            &dc,
            src.object_cohomology(j),
            dst.object_cohomology(j),
            CommuteMode::Anti,
        )?;
        out.push(h);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fixture;
    use crate::field::FieldSpec;
    use crate::module::{projective, simple};

    fn q() -> Field {
        Field::new(FieldSpec::rational())
    }

    #[test]
    fn hom_s2_s1_single_slot_degree_one() {
        let cat = fixture("A2", q()).unwrap();
        let s1 = simple(&cat, 1).unwrap();
        let s2 = simple(&cat, 2).unwrap();
        let hc = HomComplex::new(&s2, &s1).unwrap();
        assert_eq!(hc.slot_count(), 1);
        assert_eq!(hc.complex().dim(1), 1);
        assert!(hc.complex().differential(1).is_zero());
        assert_eq!(hc.hom_group_dims(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn hom_s1_s2_vanishes() {
        let cat = fixture("A2", q()).unwrap();
        let s1 = simple(&cat, 1).unwrap();
        let s2 = simple(&cat, 2).unwrap();
        let hc = HomComplex::new(&s1, &s2).unwrap();
        assert_eq!(hc.slot_count(), 0);
        assert!(hom_groups(&s1, &s2).unwrap().is_empty());
    }

    #[test]
    fn hom_complex_contains_identity_cocycle() {
        let cat = fixture("triangular(3)", q()).unwrap();
        let p3 = projective(&cat, 3).unwrap();
        let hc = HomComplex::new(&p3, &p3).unwrap();
        let e = PreMorphism::identity(&p3);
        let v = hc.vector_of(&e).unwrap();
        let d0 = hc.complex().differential(0);
        assert!(d0.apply(&v).iter().all(|x| q().is_zero(x)));
        // and its class is nonzero
        let h = hc.cohomology();
        assert!(h.class_of(0, &v).iter().any(|x| !q().is_zero(x)));
    }

    #[test]
    fn hom_p1_m_is_object_complex() {
        let cat = fixture("A4mu3", q()).unwrap();
        let p1 = projective(&cat, 1).unwrap();
        let p4 = projective(&cat, 4).unwrap();
        let hc = HomComplex::new(&p1, &p4).unwrap();
        let oc = p4.object_complex(1);
        assert_eq!(hc.complex().space().dims(), oc.space().dims());
        assert_eq!(hc.cohomology().dims, oc.cohomology().dims);
    }

    #[test]
    fn mu1_squares_to_zero_on_fixture_hom_complexes() {
        let mut cats = Vec::new();
        for name in ["A2", "triangular(3)", "A4mu3"] {
            cats.push(fixture(name, q()).unwrap());
        }
        // an odd-degree dg quiver with a nonzero differential exercises the
        // sign-bearing paths: ∂x = v, y·x = z, y·v = w, ∂z = w
        let f = q();
        let mut qb = crate::category::QuiverBuilder::new(f, 3);
        qb.generator(1, 2, "x", 1).unwrap();
        qb.generator(1, 2, "v", 2).unwrap();
        qb.generator(2, 3, "y", 0).unwrap();
        qb.generator(1, 3, "z", 1).unwrap();
        qb.generator(1, 3, "w", 2).unwrap();
        qb.differential("x", &[(f.one(), "v")]).unwrap();
        qb.differential("z", &[(f.one(), "w")]).unwrap();
        qb.product("y", "x", &[(f.one(), "z")]).unwrap();
        qb.product("y", "v", &[(f.one(), "w")]).unwrap();
        let odd = qb.build().unwrap();
        assert!(odd.validate().pass());
        cats.push(odd);
        for cat in &cats {
            for a in 1..=cat.m() {
                for b in 1..=cat.m() {
                    let pa = projective(cat, a).unwrap();
                    let sb = simple(cat, b).unwrap();
                    // the constructor re-checks d∘d = 0 exactly
                    assert!(HomComplex::new(&pa, &sb).is_ok());
                    assert!(HomComplex::new(&sb, &pa).is_ok());
                    assert!(HomComplex::new(&pa, &pa).is_ok());
                }
            }
        }
    }

    #[test]
    fn yoneda_round_trip_and_quasi_iso() {
        for name in ["A2", "triangular(3)", "A4mu3"] {
            let cat = fixture(name, q()).unwrap();
            for k in 1..=cat.m() {
                for l in 1..=cat.m() {
                    let p_l = projective(&cat, l).unwrap();
                    let p_k = projective(&cat, k).unwrap();
                    let y = yoneda(&p_l, k, &p_k).unwrap();
                    // H(F¹) is an isomorphism per degree
                    let sc = y.object_complex.cohomology();
                    let dc = y.homcx.cohomology();
                    let h = y
                        .f1
                        .induced_on_cohomology(
                            &y.object_complex,
                            y.homcx.complex(),
                            &sc,
                            &dc,
                            CommuteMode::Strict,
                        )
                        .unwrap();
                    assert_eq!(
                        sc.nonzero_dims(),
                        dc.nonzero_dims(),
                        "dims for hom(P{k},P{l}) over {name}"
                    );
                    for (deg, blk) in h {
                        assert!(blk.is_invertible(), "degree {deg}, hom(P{k},P{l}) {name}");
                    }
                    // quasi-inverse round trip on every basis vector
                    for mg in p_l.space(k).iter() {
                        let phi = yoneda_premorphism(&p_l, k, mg).unwrap();
                        let back = yoneda_inverse(&phi, k).unwrap();
                        assert_eq!(back, vec![(mg, q().one())]);
                    }
                }
            }
        }
    }

    #[test]
    fn yoneda_detects_hom_dims_of_projectives() {
        // H(hom_C(P_k, P_l)) ≅ H(hom_A(Y_k, Y_l))
        let cat = fixture("triangular(4)", q()).unwrap();
        for k in 1..=4usize {
            for l in 1..=4usize {
                let p_l = projective(&cat, l).unwrap();
                let p_k = projective(&cat, k).unwrap();
                let hc = HomComplex::new(&p_k, &p_l).unwrap();
                let dims = hc.hom_group_dims();
                let expected: BTreeMap<i64, usize> = if k == l {
                    BTreeMap::from([(0, 1)])
                } else if k < l {
                    cat.hom(k, l).dims().into_iter().collect()
                } else {
                    BTreeMap::new()
                };
                assert_eq!(dims, expected, "Hom(P{k}, P{l})");
            }
        }
    }
}
