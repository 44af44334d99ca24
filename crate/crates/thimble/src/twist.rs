//! Mapping cones, the canonical evaluation map, and algebraic twists
//! `T_M(N) = Cone(hom_C(M,N) ⊗ M → N)`.

use std::collections::BTreeMap;

use crate::category::{Accum, SparseVec};
use crate::error::{Error, Result};
use crate::graded::{GenId, GradedSpace};
use crate::homcx::HomComplex;
use crate::module::{tensor_module, AModule, ModKey, TensorModule};
use crate::morphism::PreMorphism;

/// A mapping cone `Q(Y_j) = M(Y_j)[1] ⊕ N(Y_j)` with the induced structure
/// maps, plus the basis bookkeeping for both summands.
pub struct Cone {
    pub module: AModule,
    /// per object: cone id of a shifted source basis vector
    pub from_source: Vec<BTreeMap<GenId, GenId>>,
    /// per object: cone id of a target basis vector
    pub from_target: Vec<BTreeMap<GenId, GenId>>,
}

/// `Cone(φ)` for a degree-0 cocycle `φ: M → N`, with
/// `μ_Q(m ⊕ n, a⃗) = μ_M(m, a⃗) ⊕ (μ_N(n, a⃗) + φ(m, a⃗))`.
pub fn cone(phi: &PreMorphism) -> Result<Cone> {
    if phi.degree() != 0 {
        return Err(Error::precondition(
            "cone requires a degree-0 morphism".to_string(),
        ));
    }
    if !phi.is_cocycle() {
        return Err(Error::precondition(
            "cone requires μ¹_C(φ) = 0".to_string(),
        ));
    }
    Ok(cone_unchecked(phi))
}

/// Cone construction without the (expensive) cocycle re-check; callers must
/// guarantee the precondition.
pub fn cone_unchecked(phi: &PreMorphism) -> Cone {
    let m = phi.source();
    let n = phi.target();
    let f = m.field();
    let cat = m.cat().clone();
    let mobj = cat.m();

    let mut spaces = Vec::with_capacity(mobj);
    let mut from_source = vec![BTreeMap::new(); mobj];
    let mut from_target = vec![BTreeMap::new(); mobj];
    for j in 1..=mobj {
        let mut sp = GradedSpace::new();
        for g in m.space(j).iter() {
            let id = sp
                .push(g.deg - 1, format!("l({})", m.space(j).label(g)))
                .expect("fresh labels");
            from_source[j - 1].insert(g, id);
        }
        for g in n.space(j).iter() {
            let id = sp
                .push(g.deg, format!("r({})", n.space(j).label(g)))
                .expect("fresh labels");
            from_target[j - 1].insert(g, id);
        }
        spaces.push(sp);
    }

    let map_vec = |v: &SparseVec, table: &BTreeMap<GenId, GenId>| -> SparseVec {
        v.iter().map(|(g, c)| (table[g], c.clone())).collect()
    };

    let mut mu: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    // source-part inputs
    for (key, val) in m.mu_table() {
        let last = *key.chain.last().unwrap();
        let first = key.chain[0];
        let q_in = from_source[last - 1][&key.m_in];
        let out = map_vec(val, &from_source[first - 1]);
        mu.entry(ModKey {
            chain: key.chain.clone(),
            m_in: q_in,
            inputs: key.inputs.clone(),
        })
        .or_default()
        .extend(out);
    }
    for (key, val) in phi.components() {
        let last = *key.chain.last().unwrap();
        let first = key.chain[0];
        let q_in = from_source[last - 1][&key.m_in];
        let out = map_vec(val, &from_target[first - 1]);
        let e = mu
            .entry(ModKey {
                chain: key.chain.clone(),
                m_in: q_in,
                inputs: key.inputs.clone(),
            })
            .or_default();
        let mut acc = Accum::new();
        acc.add_scaled(&f, e, &f.one());
        acc.add_scaled(&f, &out, &f.one());
        *e = acc.into_sparse();
    }
    // target-part inputs
    for (key, val) in n.mu_table() {
        let last = *key.chain.last().unwrap();
        let first = key.chain[0];
        let q_in = from_target[last - 1][&key.m_in];
        mu.insert(
            ModKey {
                chain: key.chain.clone(),
                m_in: q_in,
                inputs: key.inputs.clone(),
            },
            map_vec(val, &from_target[first - 1]),
        );
    }
    mu.retain(|_, v| !v.is_empty());
    for v in mu.values_mut() {
        v.sort_by_key(|(g, _)| *g);
    }

    let module = AModule::new(
        cat,
        format!("Cone({}→{})", m.name(), n.name()),
        spaces,
        mu,
    )
    .expect("cone tables are well-formed");
    Cone {
        module,
        from_source,
        from_target,
    }
}

/// Evaluation data for a pair `(M, N)`: the hom complex `Z = hom_C(M,N)`,
/// the tensor module `Z ⊗ M`, and the canonical evaluation cocycle
/// `ε(φ ⊗ m, a⃗) = φ(m, a⃗)`.
pub struct Evaluation {
    pub homcx: HomComplex,
    pub tensor: TensorModule,
    pub epsilon: PreMorphism,
}

pub fn evaluation(m: &AModule, n: &AModule) -> Result<Evaluation> {
    let f = m.field();
    let homcx = HomComplex::new(m, n)?;
    let tensor = tensor_module(homcx.complex(), m);

    let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for (slot, pos) in (0..homcx.slot_count()).map(|s| (s, homcx.position(s))) {
        let sl = &homcx.slots()[slot];
        let key = &homcx.keys()[sl.key_idx];
        let last = *key.chain.last().unwrap();
        let tensor_in = tensor.fwd[last - 1][&(pos, key.m_in)];
        comps
            .entry(ModKey {
                chain: key.chain.clone(),
                m_in: tensor_in,
                inputs: key.inputs.clone(),
            })
            .or_default()
            .push((sl.out, f.one()));
    }
    for v in comps.values_mut() {
        v.sort_by_key(|(g, _)| *g);
    }
    let epsilon = PreMorphism::new(tensor.module.clone(), n.clone(), 0, comps)?;
    Ok(Evaluation {
        homcx,
        tensor,
        epsilon,
    })
}

/// The algebraic twist `T_M(N) = Cone(evaluation(M, N))`.
pub struct Twist {
    pub evaluation: Evaluation,
    pub cone: Cone,
}

impl Twist {
    pub fn module(&self) -> &AModule {
        &self.cone.module
    }
}

pub fn twist(m: &AModule, n: &AModule) -> Result<Twist> {
    let ev = evaluation(m, n)?;
    // ε is a cocycle for any valid pair; the checked cone re-verifies it
    // exactly and fails loudly on an invalid module input.
    let c = cone(&ev.epsilon)?;
    Ok(Twist {
        evaluation: ev,
        cone: c,
    })
}

/// Strict projection `Cone(ι) → M/M^{≤j}` used to compare the cone on a
/// truncation inclusion with the quotient.
pub fn cone_to_quotient(c: &Cone, quotient: &AModule) -> PreMorphism {
    let f = c.module.field();
    let back: Vec<BTreeMap<GenId, GenId>> = c
        .from_target
        .iter()
        .map(|t| t.iter().map(|(ng, qg)| (*qg, *ng)).collect())
        .collect();
    PreMorphism::strict(&c.module, quotient, |obj, g| {
        match back[obj - 1].get(&g) {
            // target part maps by the identity wherever the quotient keeps it
            Some(ng) if quotient.space(obj).contains(*ng) => vec![(*ng, f.one())],
            _ => Vec::new(),
        }
    })
}
