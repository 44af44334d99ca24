//! Pre-morphisms of A∞-modules and the dg-structure of the module category:
//! the differential `μ¹_C` and the composition `μ²_C`, with the sign
//! conventions
//!
//! ```text
//! μ¹_C(φ)(m, a_d,…,a₁) = Σ_j (−1)^{||a_{j+1}||+⋯+||a_d||+|m|} μ_N(φ(m, a_d,…,a_{j+1}), a_j,…,a₁)
//!                      + Σ_j (−1)^{…} φ(μ_M(m, a_d,…,a_{j+1}), a_j,…,a₁)
//!                      + Σ_{i,j} (−1)^{…} φ(m, a_d,…, μ_A^i(a_{j+i},…,a_{j+1}), …, a₁)
//! μ²_C(ψ,φ)(m, a_d,…,a₁) = Σ_j (−1)^{…} ψ(φ(m, a_d,…,a_{j+1}), a_j,…,a₁)
//! ```
//!
//! where `||a|| = |a| − 1` and `|m|` is unreduced. The strict unit of this
//! dg-category is `e_M` with `e_M¹(m) = (−1)^{|m|} m`; it satisfies
//! `μ²(φ, e) = φ` and `μ²(e, φ) = (−1)^{|φ|} φ`.

use std::collections::BTreeMap;

use crate::category::{sign_of, Accum, Arg, SparseVec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::graded::GenId;
use crate::module::{AModule, ModKey};

/// A homogeneous pre-morphism `φ ∈ hom_C^k(M, N)`: chain-indexed component
/// family with outputs in `N(Y_{j₀})`, vanishing whenever a category input is
/// an identity (so only strictly increasing chains are stored).
#[derive(Debug, Clone)]
pub struct PreMorphism {
    source: AModule,
    target: AModule,
    degree: i64,
    comps: BTreeMap<ModKey, SparseVec>,
}

impl PreMorphism {
    pub fn new(
        source: AModule,
        target: AModule,
        degree: i64,
        comps: BTreeMap<ModKey, SparseVec>,
    ) -> Result<Self> {
        if source.cat() != target.cat() {
            return Err(Error::input(
                "pre-morphism endpoints live over different categories".to_string(),
            ));
        }
        let f = source.field();
        for (key, val) in &comps {
            if !source.space(*key.chain.last().unwrap()).contains(key.m_in) {
                return Err(Error::input(format!(
                    "component key {key:?} does not match the source module"
                )));
            }
            let out_space = target.space(key.chain[0]);
            let d = key.inputs.len() as i64;
            let expected =
                key.m_in.deg + key.inputs.iter().map(|g| g.deg).sum::<i64>() + degree - d;
            for (out, c) in val {
                if !out_space.contains(*out) {
                    return Err(Error::input(format!(
                        "component output {out:?} missing from target at Y{}",
                        key.chain[0]
                    )));
                }
                if out.deg != expected {
                    return Err(Error::input(format!(
                        "component at {key:?} is not homogeneous of degree {degree}"
                    )));
                }
                if f.is_zero(c) {
                    return Err(Error::input("stored zero coefficient".to_string()));
                }
            }
        }
        Ok(PreMorphism {
            source,
            target,
            degree,
            comps,
        })
    }

    pub fn zero(source: &AModule, target: &AModule, degree: i64) -> Self {
        PreMorphism {
            source: source.clone(),
            target: target.clone(),
            degree,
            comps: BTreeMap::new(),
        }
    }

    /// The strict identity cocycle `e_M`, `e¹(m) = (−1)^{|m|} m`.
    pub fn identity(m: &AModule) -> Self {
        let f = m.field();
        Self::strict(m, m, |_, g| vec![(g, f.one())])
    }

    /// Strict morphism from per-object degree-0 blocks: the only component is
    /// `φ¹(m) = (−1)^{|m|} f(m)`. This is a cocycle exactly when `f` commutes
    /// with every structure map.
    pub fn strict(
        source: &AModule,
        target: &AModule,
        block: impl Fn(usize, GenId) -> SparseVec,
    ) -> Self {
        let f = source.field();
        let mut comps = BTreeMap::new();
        for j in 1..=source.cat().m() {
            for g in source.space(j).iter() {
                let v = block(j, g);
                if v.is_empty() {
                    continue;
                }
                let s = sign_of(&f, g.deg);
                let signed: SparseVec = v.into_iter().map(|(o, c)| (o, f.mul(&c, &s))).collect();
                comps.insert(
                    ModKey {
                        chain: vec![j],
                        m_in: g,
                        inputs: Vec::new(),
                    },
                    signed,
                );
            }
        }
        PreMorphism {
            source: source.clone(),
            target: target.clone(),
            degree: 0,
            comps,
        }
    }

    pub fn source(&self) -> &AModule {
        &self.source
    }
    pub fn target(&self) -> &AModule {
        &self.target
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
    pub fn components(&self) -> &BTreeMap<ModKey, SparseVec> {
        &self.comps
    }
    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// Evaluate one component; any identity among the category inputs gives
    /// zero, and module/category combination arguments expand linearly.
    pub fn eval(&self, chain: &[usize], m_arg: &Arg, cat_args: &[Arg]) -> SparseVec {
        let f = self.field();
        if let Arg::Comb(comb) = m_arg {
            let mut acc = Accum::new();
            for (id, c) in comb {
                let v = self.eval(chain, &Arg::Gen(*id), cat_args);
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
                let v = self.eval(chain, m_arg, &sub);
                acc.add_scaled(&f, &v, c);
            }
            return acc.into_sparse();
        }
        if cat_args.iter().any(|a| matches!(a, Arg::Unit)) {
            return Vec::new();
        }
        let Arg::Gen(m_in) = m_arg else {
            panic!("module argument must be a generator or combination")
        };
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
        self.comps.get(&key).cloned().unwrap_or_default()
    }

    /// Scale by a field element.
    pub fn scaled(&self, s: &crate::field::Scalar) -> Self {
        let f = self.field();
        if f.is_zero(s) {
            return Self::zero(&self.source, &self.target, self.degree);
        }
        let comps = self
            .comps
            .iter()
            .map(|(k, v)| {
                (
                    k.clone(),
                    v.iter().map(|(g, c)| (*g, f.mul(c, s))).collect(),
                )
            })
            .collect();
        PreMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps,
        }
    }

    pub fn add(&self, other: &PreMorphism) -> Result<PreMorphism> {
        if self.degree != other.degree {
            return Err(Error::input("adding pre-morphisms of different degrees"));
        }
        let f = self.field();
        let mut acc: BTreeMap<ModKey, Accum> = BTreeMap::new();
        for (k, v) in self.comps.iter().chain(other.comps.iter()) {
            let e = acc.entry(k.clone()).or_default();
            e.add_scaled(&f, v, &f.one());
        }
        let comps = acc
            .into_iter()
            .filter_map(|(k, a)| {
                let v = a.into_sparse();
                (!v.is_empty()).then_some((k, v))
            })
            .collect();
        Ok(PreMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            degree: self.degree,
            comps,
        })
    }

    pub fn sub(&self, other: &PreMorphism) -> Result<PreMorphism> {
        let f = self.field();
        self.add(&other.scaled(&f.from_i64(-1)))
    }

    /// The hom-complex differential `μ¹_C(φ)`, a pre-morphism of degree
    /// `deg φ + 1`.
    pub fn differential(&self) -> PreMorphism {
        let f = self.field();
        let m = &self.source;
        let n = &self.target;
        let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();

        for key in m.enumerate_keys() {
            let d = key.inputs.len();
            let chain = &key.chain;
            let mut acc = Accum::new();

            // suffix sign (−1)^{||a_{j+1}||+⋯+||a_d|| + |m|}
            let tau = |j: usize| -> crate::field::Scalar {
                let s: i64 = key.inputs[j..].iter().map(|g| g.deg - 1).sum::<i64>()
                    + key.m_in.deg;
                sign_of(&f, s)
            };

            for j in 0..=d {
                let sign = tau(j);
                let head_args: Vec<Arg> =
                    key.inputs[..j].iter().map(|g| Arg::Gen(*g)).collect();
                let tail_args: Vec<Arg> =
                    key.inputs[j..].iter().map(|g| Arg::Gen(*g)).collect();

                // μ_N^{j+1}(φ^{d−j+1}(m, a_d,…,a_{j+1}), a_j,…,a₁)
                let x = self.eval(&chain[j..], &Arg::Gen(key.m_in), &tail_args);
                if !x.is_empty() {
                    let v = n.mu_eval(&chain[..=j], &Arg::Comb(x), &head_args);
                    acc.add_scaled(&f, &v, &sign);
                }
                // φ^{j+1}(μ_M^{d−j+1}(m, a_d,…,a_{j+1}), a_j,…,a₁)
                let w = m.mu_eval(&chain[j..], &Arg::Gen(key.m_in), &tail_args);
                if !w.is_empty() {
                    let v = self.eval(&chain[..=j], &Arg::Comb(w), &head_args);
                    acc.add_scaled(&f, &v, &sign);
                }
            }

            // φ^{d−i+2}(m, a_d,…, μ_A^i(a_{j+i},…,a_{j+1}), …, a₁)
            for i in 1..=d {
                for j in 0..=(d - i) {
                    let sign = tau(j);
                    let b = m.cat().mu_eval(
                        &chain[j..=j + i],
                        &key.inputs[j..j + i]
                            .iter()
                            .map(|g| Arg::Gen(*g))
                            .collect::<Vec<_>>(),
                    );
                    if b.is_empty() {
                        continue;
                    }
                    let mut new_chain = chain[..=j].to_vec();
                    new_chain.extend_from_slice(&chain[j + i..]);
                    let mut new_args: Vec<Arg> =
                        key.inputs[..j].iter().map(|g| Arg::Gen(*g)).collect();
                    new_args.push(Arg::Comb(b));
                    new_args.extend(key.inputs[j + i..].iter().map(|g| Arg::Gen(*g)));
                    let v = self.eval(&new_chain, &Arg::Gen(key.m_in), &new_args);
                    acc.add_scaled(&f, &v, &sign);
                }
            }

            if !acc.is_zero() {
                comps.insert(key, acc.into_sparse());
            }
        }

        PreMorphism {
            source: m.clone(),
            target: n.clone(),
            degree: self.degree + 1,
            comps,
        }
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }
}

/// Composition `μ²_C(ψ, φ)`; requires `target(φ) = source(ψ)` (up to shared
/// storage or equal shape). Degrees add.
pub fn compose(psi: &PreMorphism, phi: &PreMorphism) -> Result<PreMorphism> {
    if !phi.target().same_shape(psi.source()) {
        return Err(Error::input(
            "compose: target of φ does not match source of ψ".to_string(),
        ));
    }
    let f = phi.field();
    let m = phi.source().clone();
    let n = psi.target().clone();
    let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();

    for key in m.enumerate_keys() {
        let d = key.inputs.len();
        let chain = &key.chain;
        let mut acc = Accum::new();
        for j in 0..=d {
            let s: i64 =
                key.inputs[j..].iter().map(|g| g.deg - 1).sum::<i64>() + key.m_in.deg;
            let sign = sign_of(&f, s);
            let tail_args: Vec<Arg> = key.inputs[j..].iter().map(|g| Arg::Gen(*g)).collect();
            let x = phi.eval(&chain[j..], &Arg::Gen(key.m_in), &tail_args);
            if x.is_empty() {
                continue;
            }
            let head_args: Vec<Arg> = key.inputs[..j].iter().map(|g| Arg::Gen(*g)).collect();
            let v = psi.eval(&chain[..=j], &Arg::Comb(x), &head_args);
            acc.add_scaled(&f, &v, &sign);
        }
        if !acc.is_zero() {
            comps.insert(key, acc.into_sparse());
        }
    }

    PreMorphism::new(m, n, psi.degree() + phi.degree(), comps)
}
