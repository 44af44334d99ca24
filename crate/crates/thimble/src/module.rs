//! Right A∞-modules over a directed category: data model, relation checker,
//! simple and projective modules, tensor with a complex, shifts, and the
//! canonical truncation filtration.

use std::collections::BTreeMap;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;

use crate::category::{sign_of, Accum, Arg, DirectedCategory, SparseVec, ValidationReport, Violation, ViolationKind};
use crate::complex::{ChainComplex, Cohomology};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::{GenId, GradedSpace};
use crate::matrix::Matrix;
use crate::morphism::PreMorphism;

/// Key of one module structure coefficient block: strictly increasing chain
/// `j₀ < ⋯ < j_d`, module input basis vector in `M(Y_{j_d})`, category inputs
/// in ascending chain order. The value is a combination in `M(Y_{j₀})`.
/// Chains of length one hold the differential `μ¹`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModKey {
    pub chain: Vec<usize>,
    pub m_in: GenId,
    pub inputs: Vec<GenId>,
}

#[derive(Debug)]
struct ModuleInner {
    cat: DirectedCategory,
    name: String,
    spaces: Vec<GradedSpace>, // index = object - 1
    mu: BTreeMap<ModKey, SparseVec>,
    object_coh: OnceLock<Vec<Cohomology>>,
}

/// An A∞-module. Cheap to clone (shared storage); immutable after
/// construction.
#[derive(Debug, Clone)]
pub struct AModule {
    inner: Arc<ModuleInner>,
}

impl AModule {
    /// Structural construction; degree consistency and the module equations
    /// are checked by [`AModule::check`].
    pub fn new(
        cat: DirectedCategory,
        name: impl Into<String>,
        spaces: Vec<GradedSpace>,
        mu: BTreeMap<ModKey, SparseVec>,
    ) -> Result<Self> {
        if spaces.len() != cat.m() {
            return Err(Error::input(format!(
                "expected {} object spaces, got {}",
                cat.m(),
                spaces.len()
            )));
        }
        let module = AModule {
            inner: Arc::new(ModuleInner {
                cat,
                name: name.into(),
                spaces,
                mu,
                object_coh: OnceLock::new(),
            }),
        };
        for key in module.inner.mu.keys() {
            module.check_key_shape(key)?;
        }
        for (key, val) in &module.inner.mu {
            let out_space = module.space(key.chain[0]);
            for (id, c) in val {
                if !out_space.contains(*id) {
                    return Err(Error::input(format!(
                        "output generator {id:?} missing from module space at Y{}",
                        key.chain[0]
                    )));
                }
                if module.field().is_zero(c) {
                    return Err(Error::input("stored zero coefficient".to_string()));
                }
            }
        }
        Ok(module)
    }

    fn check_key_shape(&self, key: &ModKey) -> Result<()> {
        let ch = &key.chain;
        if ch.is_empty() || key.inputs.len() + 1 != ch.len() {
            return Err(Error::input(format!("malformed module key {key:?}")));
        }
        if ch[0] < 1 || *ch.last().unwrap() > self.cat().m() {
            return Err(Error::input(format!("chain {ch:?} out of range")));
        }
        if !ch.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::input(format!(
                "chain {ch:?} is not strictly increasing"
            )));
        }
        if !self.space(*ch.last().unwrap()).contains(key.m_in) {
            return Err(Error::input(format!(
                "module input {:?} missing from space at Y{}",
                key.m_in,
                ch.last().unwrap()
            )));
        }
        for (t, id) in key.inputs.iter().enumerate() {
            if !self.cat().hom(ch[t], ch[t + 1]).contains(*id) {
                return Err(Error::input(format!(
                    "category input {id:?} missing from hom({},{})",
                    ch[t],
                    ch[t + 1]
                )));
            }
        }
        Ok(())
    }

    pub fn cat(&self) -> &DirectedCategory {
        &self.inner.cat
    }

    pub fn field(&self) -> Field {
        self.inner.cat.field()
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    /// The graded space `M(Y_j)`, 1-based.
    pub fn space(&self, j: usize) -> &GradedSpace {
        &self.inner.spaces[j - 1]
    }

    pub fn spaces(&self) -> &[GradedSpace] {
        &self.inner.spaces
    }

    pub fn mu_table(&self) -> &BTreeMap<ModKey, SparseVec> {
        &self.inner.mu
    }

    pub fn same_shape(&self, other: &AModule) -> bool {
        self.cat() == other.cat() && self.inner.spaces == other.inner.spaces
    }

    /// Evaluate `μ_M^{d+1}(m, a_d, …, a_1)`; `cat_args[t]` connects
    /// `chain[t] → chain[t+1]` and the module input lives over
    /// `chain.last()`. Linear in every slot; unit conventions applied on the
    /// fly (`μ² (m, e) = m`, higher maps with a unit input vanish).
    pub fn mu_eval(&self, chain: &[usize], m_arg: &Arg, cat_args: &[Arg]) -> SparseVec {
        debug_assert_eq!(chain.len(), cat_args.len() + 1);
        let f = self.field();

        if let Arg::Comb(comb) = m_arg {
            let mut acc = Accum::new();
            for (id, c) in comb {
                let v = self.mu_eval(chain, &Arg::Gen(*id), cat_args);
                acc.add_scaled(&f, &v, c);
            }
            return acc.into_sparse();
        }
        if let Some(pos) = cat_args.iter().position(|a| matches!(a, Arg::Comb(_))) {
            let Arg::Comb(comb) = &cat_args[pos] else { unreachable!() };
            let mut acc = Accum::new();
            for (id, c) in comb {
                let mut sub = cat_args.to_vec();
                sub[pos] = Arg::Gen(*id);
                let v = self.mu_eval(chain, m_arg, &sub);
                acc.add_scaled(&f, &v, c);
            }
            return acc.into_sparse();
        }

        let Arg::Gen(m_in) = m_arg else {
            panic!("module input must be a basis vector or combination")
        };
        let d = cat_args.len();
        if cat_args.iter().any(|a| matches!(a, Arg::Unit)) {
            return if d == 1 {
                vec![(*m_in, f.one())] // μ²(m, e) = m
            } else {
                Vec::new()
            };
        }
        if !chain.windows(2).all(|w| w[0] < w[1]) {
            return Vec::new();
        }
        let key = ModKey {
            chain: chain.to_vec(),
            m_in: *m_in,
            inputs: cat_args
                .iter()
                .map(|a| match a {
                    Arg::Gen(g) => *g,
                    _ => unreachable!(),
                })
                .collect(),
        };
        self.inner.mu.get(&key).cloned().unwrap_or_default()
    }

    /// All structure-map input keys with nonzero spaces, in canonical order
    /// (chain length, chain, module input, category inputs).
    pub fn enumerate_keys(&self) -> Vec<ModKey> {
        let mut out = Vec::new();
        for chain in self.cat().chains() {
            let last = *chain.last().unwrap();
            if self.space(last).is_trivial() {
                continue;
            }
            let d = chain.len() - 1;
            let homs: Vec<&GradedSpace> = (0..d)
                .map(|t| self.cat().hom(chain[t], chain[t + 1]))
                .collect();
            if homs.iter().any(|s| s.is_trivial()) {
                continue;
            }
            for m_in in self.space(last).iter() {
                if d == 0 {
                    out.push(ModKey {
                        chain: chain.clone(),
                        m_in,
                        inputs: Vec::new(),
                    });
                    continue;
                }
                for inputs in homs
                    .iter()
                    .map(|s| s.iter().collect::<Vec<_>>())
                    .multi_cartesian_product()
                {
                    out.push(ModKey {
                        chain: chain.clone(),
                        m_in,
                        inputs,
                    });
                }
            }
        }
        out
    }

    /// Residual of the A∞-module equation on one input tuple.
    pub fn equation_residual(&self, chain: &[usize], m_in: GenId, inputs: &[GenId]) -> SparseVec {
        let f = self.field();
        let d = inputs.len();
        let mut acc = Accum::new();

        // Σ_j (−1)^{||a₁||+⋯+||a_j||} μ^{j+1}(μ^{d−j+1}(m, a_d,…,a_{j+1}), a_j,…,a_1)
        for j in 0..=d {
            let prefix: i64 = inputs[..j].iter().map(|g| g.deg - 1).sum();
            let sign = sign_of(&f, prefix);
            let inner = self.mu_eval(
                &chain[j..],
                &Arg::Gen(m_in),
                &inputs[j..].iter().map(|g| Arg::Gen(*g)).collect::<Vec<_>>(),
            );
            if inner.is_empty() {
                continue;
            }
            let outer = self.mu_eval(
                &chain[..=j],
                &Arg::Comb(inner),
                &inputs[..j].iter().map(|g| Arg::Gen(*g)).collect::<Vec<_>>(),
            );
            acc.add_scaled(&f, &outer, &sign);
        }

        // Σ_{i,j} (−1)^{||a₁||+⋯+||a_j||} μ^{d−i+2}(m, …, μ_A^i(a_{j+i},…,a_{j+1}), …, a_1)
        for i in 1..=d {
            for j in 0..=(d - i) {
                let prefix: i64 = inputs[..j].iter().map(|g| g.deg - 1).sum();
                let sign = sign_of(&f, prefix);
                let b = self.cat().mu_eval(
                    &chain[j..=j + i],
                    &inputs[j..j + i]
                        .iter()
                        .map(|g| Arg::Gen(*g))
                        .collect::<Vec<_>>(),
                );
                if b.is_empty() {
                    continue;
                }
                let mut outer_chain = chain[..=j].to_vec();
                outer_chain.extend_from_slice(&chain[j + i..]);
                let mut outer_args: Vec<Arg> =
                    inputs[..j].iter().map(|g| Arg::Gen(*g)).collect();
                outer_args.push(Arg::Comb(b));
                outer_args.extend(inputs[j + i..].iter().map(|g| Arg::Gen(*g)));
                let v = self.mu_eval(&outer_chain, &Arg::Gen(m_in), &outer_args);
                acc.add_scaled(&f, &v, &sign);
            }
        }
        acc.into_sparse()
    }

    /// Full module-equation checker, plus degree consistency of every stored
    /// coefficient (`μ^{d+1}` has degree `1 − d`).
    pub fn check(&self) -> ValidationReport {
        let f = self.field();
        let mut violations = Vec::new();

        for (key, val) in &self.inner.mu {
            let d = key.inputs.len() as i64;
            let expected: i64 =
                key.m_in.deg + key.inputs.iter().map(|g| g.deg).sum::<i64>() + 1 - d;
            for (out, c) in val {
                if out.deg != expected {
                    violations.push(Violation {
                        kind: ViolationKind::DegreeMismatch,
                        chain: key.chain.clone(),
                        inputs: self.describe_key(key),
                        detail: format!(
                            "output degree {} differs from expected {expected}",
                            out.deg
                        ),
                        residual: f.format(c),
                    });
                }
            }
        }

        for key in self.enumerate_keys() {
            let res = self.equation_residual(&key.chain, key.m_in, &key.inputs);
            if !res.is_empty() {
                let out_space = self.space(key.chain[0]);
                violations.push(Violation {
                    kind: ViolationKind::RelationFailure,
                    chain: key.chain.clone(),
                    inputs: self.describe_key(&key),
                    detail: "A∞-module equation residual nonzero".to_string(),
                    residual: res
                        .iter()
                        .map(|(g, c)| format!("{}·{}", f.format(c), out_space.label(*g)))
                        .join(" + "),
                });
            }
        }

        ValidationReport { violations }
    }

    fn describe_key(&self, key: &ModKey) -> Vec<String> {
        let mut out = vec![format!(
            "m={}",
            self.space(*key.chain.last().unwrap()).label(key.m_in)
        )];
        for (t, g) in key.inputs.iter().enumerate() {
            out.push(
                self.cat()
                    .hom(key.chain[t], key.chain[t + 1])
                    .label(*g)
                    .to_string(),
            );
        }
        out
    }

    /// The chain complex `(M(Y_j), μ¹)`.
    pub fn object_complex(&self, j: usize) -> ChainComplex {
        let f = self.field();
        let space = self.space(j).clone();
        let mut d: BTreeMap<i64, Matrix> = BTreeMap::new();
        for (key, val) in &self.inner.mu {
            if key.chain.len() != 1 || key.chain[0] != j {
                continue;
            }
            let k = key.m_in.deg;
            let mat = d
                .entry(k)
                .or_insert_with(|| Matrix::zeros(f, space.dim(k + 1), space.dim(k)));
            for (out, c) in val {
                // degree-inconsistent entries are reported by check(); here
                // they would corrupt the matrix shape, so require exactness
                assert_eq!(out.deg, k + 1, "μ¹ entry of wrong degree at Y{j}");
                mat.add_assign_at(out.idx, key.m_in.idx, c);
            }
        }
        ChainComplex::new(f, space, d).expect("μ¹∘μ¹ = 0 for a valid module")
    }

    /// Per-object cohomology of `(M(Y_j), μ¹)`, cached.
    pub fn object_cohomology(&self, j: usize) -> &Cohomology {
        let all = self.inner.object_coh.get_or_init(|| {
            (1..=self.cat().m())
                .map(|i| self.object_complex(i).cohomology())
                .collect()
        });
        &all[j - 1]
    }

    /// A copy with one stored coefficient replaced, addressed by canonical
    /// table position (mutation testing).
    pub fn with_replaced_coefficient(&self, entry: usize, value: crate::field::Scalar) -> Result<Self> {
        let mut mu = self.inner.mu.clone();
        let keys: Vec<(ModKey, GenId)> = mu
            .iter()
            .flat_map(|(k, v)| v.iter().map(move |(g, _)| (k.clone(), *g)))
            .collect();
        let Some((key, out)) = keys.get(entry).cloned() else {
            return Err(Error::input(format!("no stored coefficient #{entry}")));
        };
        let v = mu.get_mut(&key).unwrap();
        if self.field().is_zero(&value) {
            v.retain(|(g, _)| *g != out);
            if v.is_empty() {
                mu.remove(&key);
            }
        } else {
            for (g, c) in v.iter_mut() {
                if *g == out {
                    *c = value.clone();
                }
            }
        }
        AModule::new(
            self.cat().clone(),
            format!("{}'", self.name()),
            self.inner.spaces.clone(),
            mu,
        )
    }

    pub fn coefficient_count(&self) -> usize {
        self.inner.mu.values().map(Vec::len).sum()
    }
}

/// The zero module.
pub fn zero_module(cat: &DirectedCategory) -> AModule {
    AModule::new(
        cat.clone(),
        "0",
        vec![GradedSpace::new(); cat.m()],
        BTreeMap::new(),
    )
    .expect("zero module is well-formed")
}

/// The simple module `S_j`: one degree-0 generator `e{j}` over `Y_j`, all
/// structure maps forced to vanish. For `j = 1` this literally coincides
/// with the elementary projective `P_1`.
pub fn simple(cat: &DirectedCategory, j: usize) -> Result<AModule> {
    if j < 1 || j > cat.m() {
        return Err(Error::input(format!("simple({j}) out of range")));
    }
    let mut spaces = vec![GradedSpace::new(); cat.m()];
    spaces[j - 1].push(0, format!("e{j}"))?;
    AModule::new(cat.clone(), format!("S{j}"), spaces, BTreeMap::new())
}

/// The elementary projective module `P_k`: `P_k(Y_j) = hom(Y_j, Y_k)` with
/// `μ_{P_k} = μ_A` (the identity `e_k` becomes an honest degree-0 basis
/// vector of `P_k(Y_k)`).
pub fn projective(cat: &DirectedCategory, k: usize) -> Result<AModule> {
    if k < 1 || k > cat.m() {
        return Err(Error::input(format!("projective({k}) out of range")));
    }
    let mut spaces = vec![GradedSpace::new(); cat.m()];
    for j in 1..k {
        spaces[j - 1] = cat.hom(j, k).clone();
    }
    spaces[k - 1].push(0, format!("e{k}"))?;

    let shell = AModule::new(
        cat.clone(),
        format!("P{k}"),
        spaces.clone(),
        BTreeMap::new(),
    )?;
    let mut mu: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for key in shell.enumerate_keys() {
        let last = *key.chain.last().unwrap();
        if last > k {
            continue;
        }
        // μ_{P_k}^{d+1}(x, a_d, …, a_1) = μ_A^{d+1}(x, a_d, …, a_1) with x
        // appended as the topmost argument of the extended chain ending at k.
        let mut chain = key.chain.clone();
        chain.push(k);
        let mut args: Vec<Arg> = key.inputs.iter().map(|g| Arg::Gen(*g)).collect();
        args.push(if last == k { Arg::Unit } else { Arg::Gen(key.m_in) });
        let v = cat.mu_eval(&chain, &args);
        if !v.is_empty() {
            mu.insert(key, v);
        }
    }
    AModule::new(cat.clone(), format!("P{k}"), spaces, mu)
}

/// Tensor product of a chain complex with a module:
/// `(Z⊗M)(Y_j) = Z ⊗ M(Y_j)` with
/// `μ¹(z⊗m) = (−1)^{||m||} δz ⊗ m + z ⊗ μ¹m` and higher maps acting on `M`
/// alone. Returned together with the pair-index bookkeeping.
pub struct TensorModule {
    pub module: AModule,
    /// per object: tensor basis id for a pair `(z, m)`
    pub fwd: Vec<BTreeMap<(GenId, GenId), GenId>>,
    /// per object: pair for a tensor basis id
    pub back: Vec<BTreeMap<GenId, (GenId, GenId)>>,
}

pub fn tensor_module(z: &ChainComplex, m: &AModule) -> TensorModule {
    let f = m.field();
    let cat = m.cat().clone();
    let mobj = cat.m();
    let mut spaces = Vec::with_capacity(mobj);
    let mut fwd = vec![BTreeMap::new(); mobj];
    let mut back = vec![BTreeMap::new(); mobj];
    for j in 1..=mobj {
        let mut sp = GradedSpace::new();
        // (z, m) lexicographic, grouped by total degree via push order:
        // iterate degrees ascending over pairs
        let mut pairs: Vec<(GenId, GenId)> = Vec::new();
        for zg in z.space().iter() {
            for mg in m.space(j).iter() {
                pairs.push((zg, mg));
            }
        }
        pairs.sort_by_key(|(zg, mg)| (zg.deg + mg.deg, *zg, *mg));
        for (zg, mg) in pairs {
            let label = format!(
                "({})*({})",
                z.space().label(zg),
                m.space(j).label(mg)
            );
            let id = sp.push(zg.deg + mg.deg, label).unwrap();
            fwd[j - 1].insert((zg, mg), id);
            back[j - 1].insert(id, (zg, mg));
        }
        spaces.push(sp);
    }

    let shell = AModule::new(cat.clone(), "tensor", spaces.clone(), BTreeMap::new())
        .expect("tensor shell");
    let mut mu: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for key in shell.enumerate_keys() {
        let last = *key.chain.last().unwrap();
        let first = key.chain[0];
        let (zg, mg) = back[last - 1][&key.m_in];
        let mut acc = Accum::new();
        if key.inputs.is_empty() {
            // (−1)^{||m||} δz ⊗ m
            let s = sign_of(&f, mg.deg - 1);
            let dz = z.differential(zg.deg);
            for r in 0..dz.rows() {
                let c = dz.get(r, zg.idx);
                if f.is_zero(c) {
                    continue;
                }
                let t = fwd[last - 1][&(GenId::new(zg.deg + 1, r), mg)];
                acc.add(&f, t, &f.mul(c, &s));
            }
            // z ⊗ μ¹ m
            for (out, c) in m.mu_eval(&key.chain, &Arg::Gen(mg), &[]) {
                let t = fwd[first - 1][&(zg, out)];
                acc.add(&f, t, &c);
            }
        } else {
            let args: Vec<Arg> = key.inputs.iter().map(|g| Arg::Gen(*g)).collect();
            for (out, c) in m.mu_eval(&key.chain, &Arg::Gen(mg), &args) {
                let t = fwd[first - 1][&(zg, out)];
                acc.add(&f, t, &c);
            }
        }
        if !acc.is_zero() {
            mu.insert(key, acc.into_sparse());
        }
    }
    let module = AModule::new(cat, format!("Z⊗{}", m.name()), spaces, mu)
        .expect("tensor module well-formed");
    TensorModule { module, fwd, back }
}

/// Shift `M[k]`: tensor with `K` concentrated in degree `−k` (zero
/// differential), so every sign convention is inherited from the tensor.
pub fn shift(m: &AModule, k: i64) -> AModule {
    let z = ChainComplex::point(m.field(), -k, "s");
    let t = tensor_module(&z, m);
    t.module
}

/// Canonical truncation at `j`: the submodule supported on objects `≤ j`,
/// the quotient supported on objects `> j`, and the strict
/// inclusion/projection cocycles.
pub struct Truncation {
    pub sub: AModule,
    pub quotient: AModule,
    pub inclusion: PreMorphism,
    pub projection: PreMorphism,
}

pub fn truncation(m: &AModule, j: usize) -> Result<Truncation> {
    if j > m.cat().m() {
        return Err(Error::input(format!(
            "truncation index {j} exceeds object count {}",
            m.cat().m()
        )));
    }
    let cat = m.cat().clone();
    let mut sub_spaces = vec![GradedSpace::new(); cat.m()];
    let mut quot_spaces = vec![GradedSpace::new(); cat.m()];
    for i in 1..=cat.m() {
        if i <= j {
            sub_spaces[i - 1] = m.space(i).clone();
        } else {
            quot_spaces[i - 1] = m.space(i).clone();
        }
    }
    let sub_mu: BTreeMap<ModKey, SparseVec> = m
        .mu_table()
        .iter()
        .filter(|(k, _)| *k.chain.last().unwrap() <= j)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let quot_mu: BTreeMap<ModKey, SparseVec> = m
        .mu_table()
        .iter()
        .filter(|(k, _)| k.chain[0] > j)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    let sub = AModule::new(
        cat.clone(),
        format!("{}≤{j}", m.name()),
        sub_spaces,
        sub_mu,
    )?;
    let quotient = AModule::new(
        cat.clone(),
        format!("{}/≤{j}", m.name()),
        quot_spaces,
        quot_mu,
    )?;
    let inclusion = PreMorphism::strict(&sub, m, |obj, g| {
        if obj <= j {
            vec![(g, m.field().one())]
        } else {
            Vec::new()
        }
    });
    let projection = PreMorphism::strict(m, &quotient, |obj, g| {
        if obj > j {
            vec![(g, m.field().one())]
        } else {
            Vec::new()
        }
    });
    Ok(Truncation {
        sub,
        quotient,
        inclusion,
        projection,
    })
}

/// The graded piece `M^{≤j}/M^{≤j−1}`: the spaces of `M(Y_j)` with only the
/// differential kept. Slot-for-slot this is `M(Y_j) ⊗ S_j` (the explicit
/// comparison isomorphism rescales degree-`d` slots by `(−1)^d`).
pub fn graded_piece(m: &AModule, j: usize) -> Result<AModule> {
    if j < 1 || j > m.cat().m() {
        return Err(Error::input(format!("graded piece index {j} out of range")));
    }
    let cat = m.cat().clone();
    let mut spaces = vec![GradedSpace::new(); cat.m()];
    spaces[j - 1] = m.space(j).clone();
    let mu: BTreeMap<ModKey, SparseVec> = m
        .mu_table()
        .iter()
        .filter(|(k, _)| k.chain.len() == 1 && k.chain[0] == j)
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();
    AModule::new(cat, format!("gr{j}({})", m.name()), spaces, mu)
}
