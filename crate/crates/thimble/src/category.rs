//! Strictly unital directed A∞-categories with finitely many ordered objects.
//!
//! Objects are indexed `1..=m`. Morphism spaces exist only for `i < j`; the
//! diagonal is spanned by an implicit identity `e_i` which is never stored —
//! all structure-table chains strictly increase and the unit conventions
//! (`μ²(a, e) = a`, `μ²(e, a) = (−1)^{|a|} a`, higher maps with a unit input
//! vanish) are applied on the fly during evaluation.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::{GenId, GradedSpace};

/// Sparse linear combination of basis vectors of a single graded space,
/// sorted by [`GenId`], zero coefficients dropped.
pub type SparseVec = Vec<(GenId, Scalar)>;

/// Accumulates sparse combinations.
#[derive(Debug, Clone, Default)]
pub struct Accum {
    map: BTreeMap<GenId, Scalar>,
}

impl Accum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, field: &Field, id: GenId, coeff: &Scalar) {
        if field.is_zero(coeff) {
            return;
        }
        let entry = self.map.entry(id).or_insert_with(|| field.zero());
        *entry = field.add(entry, coeff);
        if field.is_zero(entry) {
            self.map.remove(&id);
        }
    }

    pub fn add_scaled(&mut self, field: &Field, v: &SparseVec, scale: &Scalar) {
        for (id, c) in v {
            let t = field.mul(c, scale);
            self.add(field, *id, &t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    pub fn into_sparse(self) -> SparseVec {
        self.map.into_iter().collect()
    }
}

/// Sign `(−1)^n` as a scalar.
pub(crate) fn sign_of(field: &Field, n: i64) -> Scalar {
    field.from_i64(if n.rem_euclid(2) == 0 { 1 } else { -1 })
}

/// An argument of a structure-map evaluation: a basis morphism, an implicit
/// identity, or a linear combination inside one hom space.
#[derive(Debug, Clone)]
pub enum Arg {
    Gen(GenId),
    Unit,
    Comb(SparseVec),
}

/// Key of one A∞ structure coefficient block: the strictly increasing object
/// chain `j₀ < ⋯ < j_d` plus the input basis labels `(a₁, …, a_d)` in
/// ascending chain order (`a_t ∈ hom(Y_{j_{t−1}}, Y_{j_t})`). Evaluation is
/// `μ^d(a_d, …, a_1)`; the value is a combination in `hom(Y_{j₀}, Y_{j_d})`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CatKey {
    pub chain: Vec<usize>,
    pub inputs: Vec<GenId>,
}

#[derive(Debug)]
struct CatInner {
    field: Field,
    m: usize,
    homs: BTreeMap<(usize, usize), GradedSpace>,
    mu: BTreeMap<CatKey, SparseVec>,
}

/// A directed A∞-category. Cheap to clone (shared storage).
#[derive(Debug, Clone)]
pub struct DirectedCategory {
    inner: Arc<CatInner>,
}

impl PartialEq for DirectedCategory {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.field == other.inner.field
                && self.inner.m == other.inner.m
                && self.inner.homs == other.inner.homs
                && self.inner.mu == other.inner.mu)
    }
}

impl DirectedCategory {
    /// Structural construction: object indices in range, chains strictly
    /// increasing, generator ids resolve, coefficients nonzero and in the
    /// declared field. Degree consistency and the A∞-relations are the
    /// business of [`DirectedCategory::validate`].
    pub fn new(
        field: Field,
        m: usize,
        homs: BTreeMap<(usize, usize), GradedSpace>,
        mu: BTreeMap<CatKey, SparseVec>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::input("a category needs at least one object"));
        }
        for &(i, j) in homs.keys() {
            if !(1 <= i && i < j && j <= m) {
                return Err(Error::input(format!(
                    "hom({i},{j}) violates directedness (need 1 ≤ i < j ≤ {m})"
                )));
            }
        }
        let cat = DirectedCategory {
            inner: Arc::new(CatInner { field, m, homs, mu }),
        };
        for (key, val) in &cat.inner.mu {
            cat.check_key_shape(key)?;
            let out_space = cat.hom(key.chain[0], *key.chain.last().unwrap());
            for (id, c) in val {
                if !out_space.contains(*id) {
                    return Err(Error::input(format!(
                        "output generator {id:?} missing from hom({},{})",
                        key.chain[0],
                        key.chain.last().unwrap()
                    )));
                }
                if field.is_zero(c) {
                    return Err(Error::input("stored zero coefficient".to_string()));
                }
                // field membership
                match (field.spec(), c) {
                    (crate::field::FieldSpec::Prime(_), Scalar::Fp(_)) => {}
                    (crate::field::FieldSpec::Rational, Scalar::Rat(_)) => {}
                    _ => return Err(Error::input("coefficient in wrong field".to_string())),
                }
            }
        }
        Ok(cat)
    }

    fn check_key_shape(&self, key: &CatKey) -> Result<()> {
        let ch = &key.chain;
        if ch.len() < 2 || key.inputs.len() + 1 != ch.len() {
            return Err(Error::input(format!("malformed key {key:?}")));
        }
        if ch[0] < 1 || *ch.last().unwrap() > self.m() {
            return Err(Error::input(format!("chain {ch:?} out of range")));
        }
        if !ch.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::input(format!(
                "chain {ch:?} is not strictly increasing (units are never stored)"
            )));
        }
        for (t, id) in key.inputs.iter().enumerate() {
            if !self.hom(ch[t], ch[t + 1]).contains(*id) {
                return Err(Error::input(format!(
                    "input generator {id:?} missing from hom({},{})",
                    ch[t],
                    ch[t + 1]
                )));
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.inner.field
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    pub fn objects(&self) -> impl Iterator<Item = usize> {
        1..=self.m()
    }

    /// The hom space for `i < j` (empty space if none was declared).
    pub fn hom(&self, i: usize, j: usize) -> &GradedSpace {
        match self.inner.homs.get(&(i, j)) {
            Some(s) => s,
            None => empty_space(),
        }
    }

    pub fn hom_entries(&self) -> impl Iterator<Item = (&(usize, usize), &GradedSpace)> {
        self.inner.homs.iter()
    }

    pub fn mu_table(&self) -> &BTreeMap<CatKey, SparseVec> {
        &self.inner.mu
    }

    /// Evaluate `μ^d(a_d, …, a_1)` where `args[t] = a_{t+1}` connects
    /// `chain[t] → chain[t+1]`. Chains may repeat an object exactly where the
    /// corresponding argument is a unit. Linear in every slot.
    pub fn mu_eval(&self, chain: &[usize], args: &[Arg]) -> SparseVec {
        debug_assert_eq!(chain.len(), args.len() + 1);
        let f = self.field();
        // expand the first combination argument, if any
        if let Some(pos) = args
            .iter()
            .position(|a| matches!(a, Arg::Comb(_)))
        {
            let Arg::Comb(comb) = &args[pos] else { unreachable!() };
            let mut acc = Accum::new();
            for (id, c) in comb {
                let mut sub = args.to_vec();
                sub[pos] = Arg::Gen(*id);
                let v = self.mu_eval(chain, &sub);
                acc.add_scaled(&f, &v, c);
            }
            return acc.into_sparse();
        }

        let d = args.len();
        let units = args.iter().filter(|a| matches!(a, Arg::Unit)).count();
        if units > 0 {
            return match d {
                1 => Vec::new(), // μ¹(e) = 0
                2 => {
                    match (&args[0], &args[1]) {
                        // μ²(a₂, e) = a₂
                        (Arg::Unit, Arg::Gen(a2)) => vec![(*a2, f.one())],
                        // μ²(e, a₁) = (−1)^{|a₁|} a₁
                        (Arg::Gen(a1), Arg::Unit) => vec![(*a1, sign_of(&f, a1.deg))],
                        _ => panic!("μ²(e, e) has no stored-basis output"),
                    }
                }
                _ => Vec::new(), // strict unitality kills higher maps
            };
        }

        // strict generators only
        if !chain.windows(2).all(|w| w[0] < w[1]) {
            return Vec::new();
        }
        let inputs: Vec<GenId> = args
            .iter()
            .map(|a| match a {
                Arg::Gen(g) => *g,
                _ => unreachable!(),
            })
            .collect();
        let key = CatKey {
            chain: chain.to_vec(),
            inputs,
        };
        self.inner.mu.get(&key).cloned().unwrap_or_default()
    }

    /// All strictly increasing object chains, ordered by length then
    /// lexicographically.
    pub fn chains(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for len in 1..=self.m() {
            for c in (1..=self.m()).combinations(len) {
                out.push(c);
            }
        }
        out
    }

    /// Relation checker: degree consistency of every stored coefficient plus
    /// the full A∞-relations over every strictly increasing chain. Strict
    /// unitality is structural here (units are never stored; the evaluator
    /// applies the pinned unit conventions), so it cannot fail for a value of
    /// this type and is not re-checked.
    pub fn validate(&self) -> ValidationReport {
        let f = self.field();
        let mut violations = Vec::new();

        // (a) degree consistency: |out| = Σ|inputs| + 2 − d
        for (key, val) in &self.inner.mu {
            let d = key.inputs.len() as i64;
            let expected: i64 = key.inputs.iter().map(|g| g.deg).sum::<i64>() + 2 - d;
            for (out, c) in val {
                if out.deg != expected {
                    violations.push(Violation {
                        kind: ViolationKind::DegreeMismatch,
                        chain: key.chain.clone(),
                        inputs: self.describe_inputs(key),
                        detail: format!(
                            "output {} has degree {}, expected {}",
                            self.hom(key.chain[0], *key.chain.last().unwrap()).label(*out),
                            out.deg,
                            expected
                        ),
                        residual: f.format(c),
                    });
                }
            }
        }

        // (c) A∞-relations on every strict chain and basis tuple
        for chain in self.chains() {
            if chain.len() < 2 {
                continue;
            }
            let d = chain.len() - 1;
            let spaces: Vec<&GradedSpace> = (0..d)
                .map(|t| self.hom(chain[t], chain[t + 1]))
                .collect();
            if spaces.iter().any(|s| s.is_trivial()) {
                continue;
            }
            for inputs in spaces
                .iter()
                .map(|s| s.iter().collect::<Vec<_>>())
                .multi_cartesian_product()
            {
                let res = self.relation_residual(&chain, &inputs);
                if !res.is_empty() {
                    let out_space = self.hom(chain[0], *chain.last().unwrap());
                    let desc = res
                        .iter()
                        .map(|(g, c)| format!("{}·{}", f.format(c), out_space.label(*g)))
                        .join(" + ");
                    violations.push(Violation {
                        kind: ViolationKind::RelationFailure,
                        chain: chain.clone(),
                        inputs: inputs
                            .iter()
                            .enumerate()
                            .map(|(t, g)| spaces[t].label(*g).to_string())
                            .collect(),
                        detail: "A∞-relation residual nonzero".to_string(),
                        residual: desc,
                    });
                }
            }
        }

        ValidationReport { violations }
    }

    /// Residual of the A∞-relation
    /// `Σ_{i,j} (−1)^{||a₁||+⋯+||a_j||} μ(a_d,…,a_{j+i+1}, μ^i(a_{j+i},…,a_{j+1}), a_j,…,a_1)`
    /// on one basis tuple (inputs in ascending chain order).
    pub fn relation_residual(&self, chain: &[usize], inputs: &[GenId]) -> SparseVec {
        let f = self.field();
        let d = inputs.len();
        let mut acc = Accum::new();
        for i in 1..=d {
            for j in 0..=(d - i) {
                let prefix: i64 = inputs[..j].iter().map(|g| g.deg - 1).sum();
                let sign = sign_of(&f, prefix);
                let inner = self.mu_eval(
                    &chain[j..=j + i],
                    &inputs[j..j + i]
                        .iter()
                        .map(|g| Arg::Gen(*g))
                        .collect::<Vec<_>>(),
                );
                if inner.is_empty() {
                    continue;
                }
                // outer chain: j₀..j_j, j_{j+i}, ..., j_d
                let mut outer_chain = chain[..=j].to_vec();
                outer_chain.extend_from_slice(&chain[j + i..]);
                let mut outer_args: Vec<Arg> =
                    inputs[..j].iter().map(|g| Arg::Gen(*g)).collect();
                outer_args.push(Arg::Comb(inner));
                outer_args.extend(inputs[j + i..].iter().map(|g| Arg::Gen(*g)));
                let v = self.mu_eval(&outer_chain, &outer_args);
                acc.add_scaled(&f, &v, &sign);
            }
        }
        acc.into_sparse()
    }

    fn describe_inputs(&self, key: &CatKey) -> Vec<String> {
        key.inputs
            .iter()
            .enumerate()
            .map(|(t, g)| {
                self.hom(key.chain[t], key.chain[t + 1])
                    .label(*g)
                    .to_string()
            })
            .collect()
    }

    /// A copy with one stored coefficient replaced (used by mutation tests).
    /// The entry is addressed by its position in the canonical table order.
    pub fn with_replaced_coefficient(&self, entry: usize, value: Scalar) -> Result<Self> {
        let mut mu = self.inner.mu.clone();
        let keys: Vec<(CatKey, GenId)> = mu
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
        DirectedCategory::new(self.field(), self.m(), self.inner.homs.clone(), mu)
    }

    /// Number of stored coefficients.
    pub fn coefficient_count(&self) -> usize {
        self.inner.mu.values().map(Vec::len).sum()
    }

    /// A copy with one extra raw table entry (shape errors are allowed to
    /// pass construction only if the ids resolve; degree errors are caught by
    /// `validate`).
    pub fn with_injected_entry(&self, key: CatKey, value: SparseVec) -> Result<Self> {
        let mut mu = self.inner.mu.clone();
        mu.insert(key, value);
        DirectedCategory::new(self.field(), self.m(), self.inner.homs.clone(), mu)
    }
}

fn empty_space() -> &'static GradedSpace {
    use std::sync::OnceLock;
    static EMPTY: OnceLock<GradedSpace> = OnceLock::new();
    EMPTY.get_or_init(GradedSpace::new)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    DegreeMismatch,
    RelationFailure,
}

#[derive(Debug, Clone)]
pub struct Violation {
    pub kind: ViolationKind,
    pub chain: Vec<usize>,
    pub inputs: Vec<String>,
    pub detail: String,
    pub residual: String,
}

/// Outcome of a relation check; passes exactly when no violation was found.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass() {
            write!(f, "pass")
        } else {
            writeln!(f, "FAIL ({} violations)", self.violations.len())?;
            for v in &self.violations {
                writeln!(
                    f,
                    "  [{:?}] chain {:?} inputs {:?}: {} (residual {})",
                    v.kind, v.chain, v.inputs, v.detail, v.residual
                )?;
            }
            Ok(())
        }
    }
}

/// Builder for dg-categories presented by a graded quiver: a differential
/// and an associative product on the generators. Emits `μ¹ = ∂`,
/// `μ²(a₂, a₁) = (−1)^{|a₁|} a₂·a₁`, and no higher structure maps.
pub struct QuiverBuilder {
    field: Field,
    m: usize,
    homs: BTreeMap<(usize, usize), GradedSpace>,
    gen_pair: BTreeMap<String, (usize, usize)>,
    differential: BTreeMap<String, Vec<(Scalar, String)>>,
    products: BTreeMap<(String, String), Vec<(Scalar, String)>>,
}

impl QuiverBuilder {
    pub fn new(field: Field, m: usize) -> Self {
        QuiverBuilder {
            field,
            m,
            homs: BTreeMap::new(),
            gen_pair: BTreeMap::new(),
            differential: BTreeMap::new(),
            products: BTreeMap::new(),
        }
    }

    pub fn generator(&mut self, i: usize, j: usize, name: &str, degree: i64) -> Result<()> {
        if !(1 <= i && i < j && j <= self.m) {
            return Err(Error::input(format!(
                "generator {name} needs 1 ≤ {i} < {j} ≤ {}",
                self.m
            )));
        }
        if self.gen_pair.contains_key(name) {
            return Err(Error::input(format!("duplicate generator name {name}")));
        }
        self.homs
            .entry((i, j))
            .or_default()
            .push(degree, name.to_string())?;
        self.gen_pair.insert(name.to_string(), (i, j));
        Ok(())
    }

    /// `∂(name) = Σ coeff · gen` (all terms inside the same hom space).
    pub fn differential(&mut self, name: &str, value: &[(Scalar, &str)]) -> Result<()> {
        self.differential.insert(
            name.to_string(),
            value.iter().map(|(c, g)| (c.clone(), g.to_string())).collect(),
        );
        Ok(())
    }

    /// Algebra product `a₂ · a₁` for composable generators
    /// (`a₁: Y_i → Y_j`, `a₂: Y_j → Y_k`).
    pub fn product(&mut self, a2: &str, a1: &str, value: &[(Scalar, &str)]) -> Result<()> {
        self.products.insert(
            (a2.to_string(), a1.to_string()),
            value.iter().map(|(c, g)| (c.clone(), g.to_string())).collect(),
        );
        Ok(())
    }

    fn resolve(&self, name: &str) -> Result<((usize, usize), GenId)> {
        let pair = *self
            .gen_pair
            .get(name)
            .ok_or_else(|| Error::input(format!("unknown generator {name}")))?;
        let id = self.homs[&pair].find(name).expect("registered");
        Ok((pair, id))
    }

    fn comb(&self, terms: &[(Scalar, String)], expect_pair: (usize, usize)) -> Result<SparseVec> {
        let f = self.field;
        let mut acc = Accum::new();
        for (c, name) in terms {
            let (pair, id) = self.resolve(name)?;
            if pair != expect_pair {
                return Err(Error::input(format!(
                    "term {name} lives in hom{pair:?}, expected hom{expect_pair:?}"
                )));
            }
            acc.add(&f, id, c);
        }
        Ok(acc.into_sparse())
    }

    /// Algebra product of basis elements as a combination, empty if undeclared.
    fn alg_product(&self, a2: &str, a1: &str) -> Vec<(Scalar, String)> {
        self.products
            .get(&(a2.to_string(), a1.to_string()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn build(self) -> Result<DirectedCategory> {
        let f = self.field;

        // preconditions on the presentation itself
        self.check_degrees()?;
        self.check_d_squared()?;
        self.check_associativity()?;
        self.check_leibniz()?;

        let mut mu: BTreeMap<CatKey, SparseVec> = BTreeMap::new();
        // μ¹ = ∂
        for (name, terms) in &self.differential {
            let (pair, id) = self.resolve(name)?;
            let v = self.comb(terms, pair)?;
            if !v.is_empty() {
                mu.insert(
                    CatKey {
                        chain: vec![pair.0, pair.1],
                        inputs: vec![id],
                    },
                    v,
                );
            }
        }
        // μ²(a₂, a₁) = (−1)^{|a₁|} a₂·a₁
        for ((a2, a1), terms) in &self.products {
            let (p2, id2) = self.resolve(a2)?;
            let (p1, id1) = self.resolve(a1)?;
            if p1.1 != p2.0 {
                return Err(Error::input(format!(
                    "product {a2}·{a1} is not composable"
                )));
            }
            let target = (p1.0, p2.1);
            let v = self.comb(terms, target)?;
            let signed: SparseVec = v
                .into_iter()
                .map(|(g, c)| (g, f.mul(&c, &sign_of(&f, id1.deg))))
                .collect();
            if !signed.is_empty() {
                mu.insert(
                    CatKey {
                        chain: vec![p1.0, p1.1, p2.1],
                        inputs: vec![id1, id2],
                    },
                    signed,
                );
            }
        }
        DirectedCategory::new(f, self.m, self.homs, mu)
    }

    fn check_degrees(&self) -> Result<()> {
        for (name, terms) in &self.differential {
            let (_, id) = self.resolve(name)?;
            for (_, g) in terms {
                let (_, gid) = self.resolve(g)?;
                if gid.deg != id.deg + 1 {
                    return Err(Error::input(format!(
                        "∂{name} has a term of degree {} (expected {})",
                        gid.deg,
                        id.deg + 1
                    )));
                }
            }
        }
        for ((a2, a1), terms) in &self.products {
            let (_, i2) = self.resolve(a2)?;
            let (_, i1) = self.resolve(a1)?;
            for (_, g) in terms {
                let (_, gid) = self.resolve(g)?;
                if gid.deg != i1.deg + i2.deg {
                    return Err(Error::input(format!(
                        "product {a2}·{a1} does not respect degrees"
                    )));
                }
            }
        }
        Ok(())
    }

    /// ∂² = 0 on generators.
    fn check_d_squared(&self) -> Result<()> {
        let f = self.field;
        for (name, terms) in &self.differential {
            let mut acc: BTreeMap<String, Scalar> = BTreeMap::new();
            for (c, g) in terms {
                for (c2, g2) in self.differential.get(g).map(Vec::as_slice).unwrap_or(&[]) {
                    let t = f.mul(c, c2);
                    let e = acc.entry(g2.clone()).or_insert_with(|| f.zero());
                    *e = f.add(e, &t);
                }
            }
            if acc.values().any(|v| !f.is_zero(v)) {
                return Err(Error::input(format!("∂²({name}) ≠ 0")));
            }
        }
        Ok(())
    }

    /// (a₃·a₂)·a₁ = a₃·(a₂·a₁) on all composable basis triples.
    fn check_associativity(&self) -> Result<()> {
        let f = self.field;
        let names: Vec<&str> = self.gen_pair.keys().map(String::as_str).collect();
        for &a3 in &names {
            for &a2 in &names {
                for &a1 in &names {
                    let p1 = self.gen_pair[a1];
                    let p2 = self.gen_pair[a2];
                    let p3 = self.gen_pair[a3];
                    if p1.1 != p2.0 || p2.1 != p3.0 {
                        continue;
                    }
                    let mut lhs: BTreeMap<String, Scalar> = BTreeMap::new();
                    for (c, g) in self.alg_product(a3, a2) {
                        for (c2, g2) in self.alg_product(&g, a1) {
                            let t = f.mul(&c, &c2);
                            let e = lhs.entry(g2).or_insert_with(|| f.zero());
                            *e = f.add(e, &t);
                        }
                    }
                    for (c, g) in self.alg_product(a2, a1) {
                        for (c2, g2) in self.alg_product(a3, &g) {
                            let t = f.neg(&f.mul(&c, &c2));
                            let e = lhs.entry(g2).or_insert_with(|| f.zero());
                            *e = f.add(e, &t);
                        }
                    }
                    if lhs.values().any(|v| !f.is_zero(v)) {
                        return Err(Error::input(format!(
                            "product not associative on ({a3}, {a2}, {a1})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// ∂(a₂·a₁) = a₂·∂a₁ + (−1)^{|a₁|} (∂a₂)·a₁ — the compatibility the
    /// emitted μ-tables need to satisfy the d = 2 relation.
    fn check_leibniz(&self) -> Result<()> {
        let f = self.field;
        let names: Vec<&str> = self.gen_pair.keys().map(String::as_str).collect();
        for &a2 in &names {
            for &a1 in &names {
                let p1 = self.gen_pair[a1];
                let p2 = self.gen_pair[a2];
                if p1.1 != p2.0 {
                    continue;
                }
                let (_, i1) = self.resolve(a1)?;
                let mut acc: BTreeMap<String, Scalar> = BTreeMap::new();
                let add = |acc: &mut BTreeMap<String, Scalar>, c: &Scalar, g: &str| {
                    let e = acc.entry(g.to_string()).or_insert_with(|| f.zero());
                    *e = f.add(e, c);
                };
                for (c, g) in self.alg_product(a2, a1) {
                    for (c2, g2) in self.differential.get(&g).map(Vec::as_slice).unwrap_or(&[]) {
                        add(&mut acc, &f.mul(&c, c2), g2);
                    }
                }
                for (c, g) in self.differential.get(a1).map(Vec::as_slice).unwrap_or(&[]) {
                    for (c2, g2) in self.alg_product(a2, g) {
                        add(&mut acc, &f.neg(&f.mul(c, &c2)), &g2);
                    }
                }
                let s = sign_of(&f, i1.deg + 1);
                for (c, g) in self.differential.get(a2).map(Vec::as_slice).unwrap_or(&[]) {
                    for (c2, g2) in self.alg_product(g, a1) {
                        add(&mut acc, &f.mul(&s, &f.mul(c, &c2)), &g2);
                    }
                }
                if acc.values().any(|v| !f.is_zero(v)) {
                    return Err(Error::input(format!(
                        "differential and product are incompatible on ({a2}, {a1})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Built-in fixture categories.
///
/// * `"A2"` — two objects, one degree-0 generator `a`.
/// * `"triangular(m)"` — one degree-0 generator `a{i}{j}` per `i < j`, with
///   `μ²(a{j}{k}, a{i}{j}) = a{i}{k}`.
/// * `"A4mu3"` — four objects, degree-0 generators `a12, a23, a34`, one
///   degree-(−1) generator `c14`, and the single component
///   `μ³(a34, a23, a12) = c14`.
pub fn fixture(name: &str, field: Field) -> Result<DirectedCategory> {
    if name == "A2" {
        let mut q = QuiverBuilder::new(field, 2);
        q.generator(1, 2, "a", 0)?;
        return q.build();
    }
    if let Some(rest) = name.strip_prefix("triangular(") {
        let Some(num) = rest.strip_suffix(')') else {
            return Err(Error::input(format!("unknown fixture {name:?}")));
        };
        let m: usize = num
            .parse()
            .map_err(|_| Error::input(format!("bad object count in {name:?}")))?;
        if m < 1 || m > 9 {
            return Err(Error::input("triangular(m) supports 1 ≤ m ≤ 9".to_string()));
        }
        let mut q = QuiverBuilder::new(field, m);
        for i in 1..=m {
            for j in i + 1..=m {
                q.generator(i, j, &format!("a{i}{j}"), 0)?;
            }
        }
        let one = field.one();
        for i in 1..=m {
            for j in i + 1..=m {
                for k in j + 1..=m {
                    q.product(
                        &format!("a{j}{k}"),
                        &format!("a{i}{j}"),
                        &[(one.clone(), &format!("a{i}{k}"))],
                    )?;
                }
            }
        }
        return q.build();
    }
    if name == "A4mu3" {
        let mut homs: BTreeMap<(usize, usize), GradedSpace> = BTreeMap::new();
        let mut push = |i: usize, j: usize, name: &str, deg: i64| -> GenId {
            homs.entry((i, j))
                .or_default()
                .push(deg, name.to_string())
                .unwrap()
        };
        let a12 = push(1, 2, "a12", 0);
        let a23 = push(2, 3, "a23", 0);
        let a34 = push(3, 4, "a34", 0);
        let c14 = push(1, 4, "c14", -1);
        let mut mu = BTreeMap::new();
        mu.insert(
            CatKey {
                chain: vec![1, 2, 3, 4],
                inputs: vec![a12, a23, a34],
            },
            vec![(c14, field.one())],
        );
        return DirectedCategory::new(field, 4, homs, mu);
    }
    Err(Error::input(format!("unknown fixture {name:?}")))
}
