//! The interchange document format: canonical, diff-friendly JSON for
//! categories, modules, morphisms, collections and jobs.
//!
//! Serialization is canonical: object keys follow the struct declaration
//! order, arrays are emitted in the library's deterministic enumeration
//! order, and coefficients are decimal integers or `p/q` rationals. Parsing
//! a serialized document reproduces the value, and re-serializing a parsed
//! document is byte-identical.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use thimble::category::{fixture, CatKey, DirectedCategory, SparseVec};
use thimble::error::{Error, Result};
use thimble::field::{Field, FieldSpec};
use thimble::graded::{GenId, GradedSpace};
use thimble::module::{projective, simple, AModule, ModKey};
use thimble::morphism::PreMorphism;
use thimble::mutate::Collection;

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Category(CategoryDoc),
    Module(ModuleDoc),
    Morphism(MorphismDoc),
    Collection(CollectionDoc),
    Job(JobDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CategoryDoc {
    pub format: u32,
    /// `"q"` for the rationals or a decimal odd prime (`"2"` only with the
    /// explicit override flag)
    pub field: String,
    pub objects: Vec<String>,
    pub hom: Vec<HomDoc>,
    pub mu: Vec<CatMuDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct HomDoc {
    pub from: usize,
    pub to: usize,
    pub generators: Vec<GenDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GenDoc {
    pub name: String,
    pub degree: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CatMuDoc {
    pub chain: Vec<usize>,
    /// input generator names in ascending chain order `(a₁, …, a_d)`;
    /// evaluation is `μ(a_d, …, a₁)` with arguments reversed
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModuleDoc {
    pub format: u32,
    /// category reference: fixture name or file path
    pub over: String,
    pub spaces: Vec<SpaceDoc>,
    pub mu: Vec<ModMuDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct SpaceDoc {
    pub object: usize,
    pub generators: Vec<GenDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ModMuDoc {
    pub chain: Vec<usize>,
    pub m_in: String,
    pub inputs: Vec<String>,
    pub output: String,
    pub coeff: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MorphismDoc {
    pub format: u32,
    pub over: String,
    /// module references (`S<j>`, `P<k>`, or file paths)
    pub source: String,
    pub target: String,
    pub degree: i64,
    pub components: Vec<ModMuDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct CollectionDoc {
    pub format: u32,
    pub over: String,
    pub entries: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct JobDoc {
    pub format: u32,
    pub command: Vec<String>,
}

/// Canonical serialization (pretty JSON, two-space indent, trailing newline).
pub fn serialize(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

pub fn parse_document(text: &str) -> Result<Document> {
    let doc: Document = serde_json::from_str(text)
        .map_err(|e| Error::input(format!("document parse error: {e}")))?;
    let version = match &doc {
        Document::Category(d) => d.format,
        Document::Module(d) => d.format,
        Document::Morphism(d) => d.format,
        Document::Collection(d) => d.format,
        Document::Job(d) => d.format,
    };
    if version != FORMAT_VERSION {
        return Err(Error::input(format!(
            "unsupported format version {version} (expected {FORMAT_VERSION})"
        )));
    }
    Ok(doc)
}

pub fn parse_field(s: &str, allow_char2: bool) -> Result<Field> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("q") || s.eq_ignore_ascii_case("rational") {
        return Ok(Field::new(FieldSpec::rational()));
    }
    let p: u64 = s
        .parse()
        .map_err(|_| Error::input(format!("bad field {s:?} (use q or an odd prime)")))?;
    let spec = if allow_char2 {
        FieldSpec::prime_allow_char2(p)?
    } else {
        FieldSpec::prime(p)?
    };
    Ok(Field::new(spec))
}

pub fn field_name(f: Field) -> String {
    match f.spec() {
        FieldSpec::Rational => "q".to_string(),
        FieldSpec::Prime(p) => format!("{p}"),
    }
}

fn gen_docs(space: &GradedSpace) -> Vec<GenDoc> {
    space
        .iter()
        .map(|g| GenDoc {
            name: space.label(g).to_string(),
            degree: g.deg,
        })
        .collect()
}

fn space_from_docs(gens: &[GenDoc]) -> Result<GradedSpace> {
    GradedSpace::from_labels(gens.iter().map(|g| (g.degree, g.name.clone())))
}

/// Serialize a category (field is written in canonical form).
pub fn category_to_doc(cat: &DirectedCategory) -> CategoryDoc {
    let field = cat.field();
    let mut hom = Vec::new();
    for (&(i, j), space) in cat.hom_entries() {
        if space.is_trivial() {
            continue;
        }
        hom.push(HomDoc {
            from: i,
            to: j,
            generators: gen_docs(space),
        });
    }
    let mut mu = Vec::new();
    for (key, val) in cat.mu_table() {
        for (out, c) in val {
            mu.push(CatMuDoc {
                chain: key.chain.clone(),
                inputs: key
                    .inputs
                    .iter()
                    .enumerate()
                    .map(|(t, g)| cat.hom(key.chain[t], key.chain[t + 1]).label(*g).to_string())
                    .collect(),
                output: cat
                    .hom(key.chain[0], *key.chain.last().unwrap())
                    .label(*out)
                    .to_string(),
                coeff: field.format(c),
            });
        }
    }
    CategoryDoc {
        format: FORMAT_VERSION,
        field: field_name(field),
        objects: (1..=cat.m()).map(|i| format!("Y{i}")).collect(),
        hom,
        mu,
    }
}

pub fn category_from_doc(doc: &CategoryDoc, allow_char2: bool) -> Result<DirectedCategory> {
    let field = parse_field(&doc.field, allow_char2)?;
    let m = doc.objects.len();
    let mut homs: BTreeMap<(usize, usize), GradedSpace> = BTreeMap::new();
    for h in &doc.hom {
        if homs.contains_key(&(h.from, h.to)) {
            return Err(Error::input(format!(
                "duplicate hom block ({}, {})",
                h.from, h.to
            )));
        }
        homs.insert((h.from, h.to), space_from_docs(&h.generators)?);
    }
    let resolve = |i: usize, j: usize, name: &str| -> Result<GenId> {
        homs.get(&(i, j))
            .and_then(|s| s.find(name))
            .ok_or_else(|| {
                Error::input(format!("unresolved generator {name:?} in hom({i},{j})"))
            })
    };
    let mut mu: BTreeMap<CatKey, SparseVec> = BTreeMap::new();
    for e in &doc.mu {
        if e.inputs.len() + 1 != e.chain.len() {
            return Err(Error::input(format!("malformed mu entry on chain {:?}", e.chain)));
        }
        let inputs = e
            .inputs
            .iter()
            .enumerate()
            .map(|(t, n)| resolve(e.chain[t], e.chain[t + 1], n))
            .collect::<Result<Vec<_>>>()?;
        let out = resolve(e.chain[0], *e.chain.last().unwrap(), &e.output)?;
        let coeff = field.parse(&e.coeff)?;
        if field.is_zero(&coeff) {
            return Err(Error::input("zero coefficient in document".to_string()));
        }
        let key = CatKey {
            chain: e.chain.clone(),
            inputs,
        };
        let entry = mu.entry(key).or_default();
        if entry.iter().any(|(g, _)| *g == out) {
            return Err(Error::input("duplicate mu entry".to_string()));
        }
        entry.push((out, coeff));
    }
    for v in mu.values_mut() {
        v.sort_by_key(|(g, _)| *g);
    }
    DirectedCategory::new(field, m, homs, mu)
}

pub fn module_to_doc(module: &AModule, over: &str) -> ModuleDoc {
    let field = module.field();
    let mut spaces = Vec::new();
    for j in 1..=module.cat().m() {
        let sp = module.space(j);
        if sp.is_trivial() {
            continue;
        }
        spaces.push(SpaceDoc {
            object: j,
            generators: gen_docs(sp),
        });
    }
    let mut mu = Vec::new();
    for (key, val) in module.mu_table() {
        let last = *key.chain.last().unwrap();
        for (out, c) in val {
            mu.push(ModMuDoc {
                chain: key.chain.clone(),
                m_in: module.space(last).label(key.m_in).to_string(),
                inputs: key
                    .inputs
                    .iter()
                    .enumerate()
                    .map(|(t, g)| {
                        module
                            .cat()
                            .hom(key.chain[t], key.chain[t + 1])
                            .label(*g)
                            .to_string()
                    })
                    .collect(),
                output: module.space(key.chain[0]).label(*out).to_string(),
                coeff: field.format(c),
            });
        }
    }
    ModuleDoc {
        format: FORMAT_VERSION,
        over: over.to_string(),
        spaces,
        mu,
    }
}

pub fn module_from_doc(doc: &ModuleDoc, cat: &DirectedCategory, name: &str) -> Result<AModule> {
    let field = cat.field();
    let mut spaces = vec![GradedSpace::new(); cat.m()];
    for s in &doc.spaces {
        if s.object < 1 || s.object > cat.m() {
            return Err(Error::input(format!("space object {} out of range", s.object)));
        }
        spaces[s.object - 1] = space_from_docs(&s.generators)?;
    }
    let resolve_m = |obj: usize, name: &str| -> Result<GenId> {
        spaces[obj - 1]
            .find(name)
            .ok_or_else(|| Error::input(format!("unresolved module generator {name:?} at Y{obj}")))
    };
    let mut mu: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for e in &doc.mu {
        if e.inputs.len() + 1 != e.chain.len() {
            return Err(Error::input(format!("malformed mu entry on chain {:?}", e.chain)));
        }
        let last = *e.chain.last().unwrap();
        let m_in = resolve_m(last, &e.m_in)?;
        let inputs = e
            .inputs
            .iter()
            .enumerate()
            .map(|(t, n)| {
                cat.hom(e.chain[t], e.chain[t + 1]).find(n).ok_or_else(|| {
                    Error::input(format!(
                        "unresolved generator {n:?} in hom({},{})",
                        e.chain[t],
                        e.chain[t + 1]
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let out = resolve_m(e.chain[0], &e.output)?;
        let coeff = field.parse(&e.coeff)?;
        if field.is_zero(&coeff) {
            return Err(Error::input("zero coefficient in document".to_string()));
        }
        let key = ModKey {
            chain: e.chain.clone(),
            m_in,
            inputs,
        };
        let entry = mu.entry(key).or_default();
        if entry.iter().any(|(g, _)| *g == out) {
            return Err(Error::input("duplicate mu entry".to_string()));
        }
        entry.push((out, coeff));
    }
    for v in mu.values_mut() {
        v.sort_by_key(|(g, _)| *g);
    }
    AModule::new(cat.clone(), name, spaces, mu)
}

pub fn morphism_to_doc(
    phi: &PreMorphism,
    over: &str,
    source: &str,
    target: &str,
) -> MorphismDoc {
    let field = phi.field();
    let src = phi.source();
    let tgt = phi.target();
    let mut components = Vec::new();
    for (key, val) in phi.components() {
        let last = *key.chain.last().unwrap();
        for (out, c) in val {
            components.push(ModMuDoc {
                chain: key.chain.clone(),
                m_in: src.space(last).label(key.m_in).to_string(),
                inputs: key
                    .inputs
                    .iter()
                    .enumerate()
                    .map(|(t, g)| {
                        src.cat()
                            .hom(key.chain[t], key.chain[t + 1])
                            .label(*g)
                            .to_string()
                    })
                    .collect(),
                output: tgt.space(key.chain[0]).label(*out).to_string(),
                coeff: field.format(c),
            });
        }
    }
    MorphismDoc {
        format: FORMAT_VERSION,
        over: over.to_string(),
        source: source.to_string(),
        target: target.to_string(),
        degree: phi.degree(),
        components,
    }
}

/// Resolve a category reference: a fixture name or a path to a category
/// document.
pub fn resolve_category(reference: &str, field: Field, allow_char2: bool) -> Result<DirectedCategory> {
    if let Ok(cat) = fixture(reference, field) {
        return Ok(cat);
    }
    if Path::new(reference).exists() {
        let text = std::fs::read_to_string(reference)
            .map_err(|e| Error::input(format!("cannot read {reference}: {e}")))?;
        match parse_document(&text)? {
            Document::Category(doc) => return category_from_doc(&doc, allow_char2),
            _ => {
                return Err(Error::input(format!(
                    "{reference} is not a category document"
                )))
            }
        }
    }
    Err(Error::input(format!(
        "unknown category {reference:?} (not a fixture, not a file)"
    )))
}

/// Resolve a module reference over a category: `S<j>`, `P<k>`, or a path to
/// a module document (whose `over` must agree with the given category).
pub fn resolve_module(
    reference: &str,
    cat: &DirectedCategory,
    allow_char2: bool,
) -> Result<AModule> {
    if let Some(j) = reference.strip_prefix('S').and_then(|t| t.parse::<usize>().ok()) {
        return simple(cat, j);
    }
    if let Some(k) = reference.strip_prefix('P').and_then(|t| t.parse::<usize>().ok()) {
        return projective(cat, k);
    }
    if Path::new(reference).exists() {
        let text = std::fs::read_to_string(reference)
            .map_err(|e| Error::input(format!("cannot read {reference}: {e}")))?;
        match parse_document(&text)? {
            Document::Module(doc) => {
                let declared = resolve_category(&doc.over, cat.field(), allow_char2)?;
                if &declared != cat {
                    return Err(Error::input(format!(
                        "module {reference} is declared over {}, which differs from the \
                         requested category",
                        doc.over
                    )));
                }
                return module_from_doc(&doc, cat, reference);
            }
            _ => {
                return Err(Error::input(format!(
                    "{reference} is not a module document"
                )))
            }
        }
    }
    Err(Error::input(format!(
        "unknown module {reference:?} (use S<j>, P<k>, or a module document path)"
    )))
}

/// Resolve a collection reference: `P` (projectives), `S` (simples in
/// reversed order), a comma-separated list of module references, or a path
/// to a collection document.
pub fn resolve_collection(
    reference: &str,
    cat: &DirectedCategory,
    allow_char2: bool,
) -> Result<Collection> {
    match reference {
        "P" => return Collection::projectives(cat),
        "S" => return Collection::simples_reversed(cat),
        _ => {}
    }
    if Path::new(reference).exists() {
        let text = std::fs::read_to_string(reference)
            .map_err(|e| Error::input(format!("cannot read {reference}: {e}")))?;
        match parse_document(&text)? {
            Document::Collection(doc) => {
                let entries = doc
                    .entries
                    .iter()
                    .map(|e| resolve_module(e, cat, allow_char2))
                    .collect::<Result<Vec<_>>>()?;
                return Collection::new(entries);
            }
            _ => {
                return Err(Error::input(format!(
                    "{reference} is not a collection document"
                )))
            }
        }
    }
    let entries = reference
        .split(',')
        .map(|e| resolve_module(e.trim(), cat, allow_char2))
        .collect::<Result<Vec<_>>>()?;
    Collection::new(entries)
}
