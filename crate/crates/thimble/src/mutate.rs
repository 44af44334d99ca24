//! Exceptional collections, elementary mutations by twisting, positive braid
//! words, the half twist, and duality certification.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::homcx::hom_groups;
use crate::module::{projective, AModule};
use crate::quasi::iso_type_simple;
use crate::twist::twist;

/// An ordered list of modules over one category.
#[derive(Clone)]
pub struct Collection {
    pub entries: Vec<AModule>,
}

impl Collection {
    pub fn new(entries: Vec<AModule>) -> Result<Self> {
        if let Some((first, rest)) = entries.split_first() {
            if rest.iter().any(|m| m.cat() != first.cat()) {
                return Err(Error::input(
                    "collection entries live over different categories".to_string(),
                ));
            }
        }
        Ok(Collection { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(P₁, …, P_m)`.
    pub fn projectives(cat: &crate::category::DirectedCategory) -> Result<Self> {
        let entries = (1..=cat.m())
            .map(|k| projective(cat, k))
            .collect::<Result<Vec<_>>>()?;
        Collection::new(entries)
    }

    /// `(S_m, …, S₁)`.
    pub fn simples_reversed(cat: &crate::category::DirectedCategory) -> Result<Self> {
        let entries = (1..=cat.m())
            .rev()
            .map(|j| crate::module::simple(cat, j))
            .collect::<Result<Vec<_>>>()?;
        Collection::new(entries)
    }
}

/// A positive braid word on `strands` strands (generators `σ_i`,
/// `1 ≤ i < strands`). Inverse letters are out of scope and rejected at
/// parse time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BraidWord {
    pub strands: usize,
    pub letters: Vec<usize>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<usize>) -> Result<Self> {
        for &i in &letters {
            if i < 1 || i >= strands {
                return Err(Error::input(format!(
                    "letter s{i} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Parse a space-separated word like `"s2 s1 s2"`. A leading `-` or a
    /// `^-1` suffix marks an inverse letter, which is unsupported.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            if tok.starts_with('-') || tok.ends_with("^-1") {
                return Err(Error::unsupported(
                    "inverse braid letters are not implemented (positive words only)"
                        .to_string(),
                ));
            }
            let digits = tok
                .strip_prefix('s')
                .or_else(|| tok.strip_prefix("σ"))
                .unwrap_or(tok);
            let i: usize = digits
                .parse()
                .map_err(|_| Error::input(format!("bad braid letter {tok:?}")))?;
            letters.push(i);
        }
        BraidWord::new(strands, letters)
    }

    pub fn to_text(&self) -> String {
        self.letters
            .iter()
            .map(|i| format!("s{i}"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The half twist `Δ^{1/2} = σ_{m−1}(σ_{m−2}σ_{m−1})⋯(σ₁σ₂⋯σ_{m−1})`,
/// of length `m(m−1)/2`.
pub fn half_twist(m: usize) -> Result<BraidWord> {
    if m < 1 {
        return Err(Error::input("need at least one strand".to_string()));
    }
    let mut letters = Vec::new();
    for start in (1..m).rev() {
        for i in start..m {
            letters.push(i);
        }
    }
    BraidWord::new(m, letters)
}

/// Report of an exceptionality check: the full Hom-dimension table plus the
/// verdict.
pub struct ExceptionalReport {
    /// graded dims of `Hom*(C_p, C_q)` indexed by 1-based list positions
    pub table: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// A collection `(C₁, …, C_n)` is exceptional when `Hom*(C_p, C_q) = 0` for
/// `p > q` (no morphisms from later entries to earlier ones) and
/// `Hom*(C_p, C_p) = K` in degree 0.
pub fn is_exceptional(coll: &Collection) -> Result<ExceptionalReport> {
    let n = coll.len();
    let mut table = BTreeMap::new();
    let mut failures = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            let dims = hom_groups(&coll.entries[p - 1], &coll.entries[q - 1])?;
            if p > q && !dims.is_empty() {
                failures.push(format!(
                    "Hom*(C{p}, C{q}) ≠ 0 in forbidden position: {dims:?}"
                ));
            }
            if p == q && dims != BTreeMap::from([(0, 1)]) {
                failures.push(format!("Hom*(C{p}, C{p}) = {dims:?}, expected K in degree 0"));
            }
            table.insert((p, q), dims);
        }
    }
    Ok(ExceptionalReport {
        table,
        pass: failures.is_empty(),
        failures,
    })
}

/// Elementary mutation `σ_i`: replaces `(…, M_i, M_{i+1}, …)` by
/// `(…, T_{M_i}(M_{i+1}), M_i, …)` (1-based `i < len`).
pub fn mutate(coll: &Collection, i: usize) -> Result<Collection> {
    if i < 1 || i >= coll.len() {
        return Err(Error::input(format!(
            "mutation index {i} out of range for a collection of length {}",
            coll.len()
        )));
    }
    let twisting = &coll.entries[i - 1];
    let moved = &coll.entries[i];
    let t = twist(twisting, moved)?;
    let mut entries = coll.entries.clone();
    entries[i - 1] = t.module().clone();
    entries[i] = twisting.clone();
    Collection::new(entries)
}

/// Apply a positive braid word left to right.
pub fn apply_word(coll: &Collection, word: &BraidWord) -> Result<Collection> {
    if word.strands != coll.len() {
        return Err(Error::input(format!(
            "word on {} strands applied to a collection of length {}",
            word.strands,
            coll.len()
        )));
    }
    let mut cur = coll.clone();
    for &i in &word.letters {
        cur = mutate(&cur, i)?;
    }
    Ok(cur)
}

/// Pairing table for a duality check of `collA = (M₁^!, …, M_n^!)` against
/// `collB = (M_n, …, M₁)` (note the reversed listing of the second
/// collection): dual exactly when `Hom*(M_k^!, M_j) = K` in degree 0 for
/// `j = k` and `0` otherwise, i.e. `K` on the anti-diagonal in positions.
pub struct DualityReport {
    pub table: BTreeMap<(usize, usize), BTreeMap<i64, usize>>,
    pub pass: bool,
    pub failures: Vec<String>,
}

pub fn duality_check(coll_a: &Collection, coll_b: &Collection) -> Result<DualityReport> {
    if coll_a.len() != coll_b.len() {
        return Err(Error::input("duality check needs equal lengths".to_string()));
    }
    let n = coll_a.len();
    let mut table = BTreeMap::new();
    let mut failures = Vec::new();
    for k in 1..=n {
        for pos in 1..=n {
            let dims = hom_groups(&coll_a.entries[k - 1], &coll_b.entries[pos - 1])?;
            let expect_unit = pos == n + 1 - k;
            let ok = if expect_unit {
                dims == BTreeMap::from([(0, 1)])
            } else {
                dims.is_empty()
            };
            if !ok {
                failures.push(format!(
                    "Hom*(A{k}, B{pos}) = {dims:?}, expected {}",
                    if expect_unit { "K in degree 0" } else { "0" }
                ));
            }
            table.insert((k, pos), dims);
        }
    }
    Ok(DualityReport {
        table,
        pass: failures.is_empty(),
        failures,
    })
}

/// Outcome of carrying the projective collection to the simples via the
/// half twist.
pub struct HalfTwistReport {
    pub word: BraidWord,
    pub result: Collection,
    /// simple-type certificate per position (position p should be `S_{m+1−p}`)
    pub iso_types: Vec<Option<usize>>,
    pub duality: DualityReport,
    pub pass: bool,
    pub failures: Vec<String>,
}

/// Apply `Δ^{1/2}` to `(P₁,…,P_m)` and certify that position `p` of the
/// result is isomorphic to `S_{m+1−p}` (simple-recognition route) and that
/// the result is dual to the untouched projectives.
pub fn projectives_to_simples(cat: &crate::category::DirectedCategory) -> Result<HalfTwistReport> {
    let m = cat.m();
    let projectives = Collection::projectives(cat)?;
    let word = half_twist(m)?;
    let result = apply_word(&projectives, &word)?;

    let mut failures = Vec::new();
    let mut iso_types = Vec::with_capacity(m);
    for (pos, entry) in result.entries.iter().enumerate() {
        let expected = m - pos; // position p (1-based) holds S_{m+1-p}
        let got = iso_type_simple(entry);
        if got != Some(expected) {
            failures.push(format!(
                "position {} certifies as {:?}, expected S{}",
                pos + 1,
                got,
                expected
            ));
        }
        iso_types.push(got);
    }
    let duality = duality_check(&projectives, &result)?;
    if !duality.pass {
        failures.push("duality pairing against the projectives failed".to_string());
    }
    let pass = failures.is_empty();
    Ok(HalfTwistReport {
        word,
        result,
        iso_types,
        duality,
        pass,
        failures,
    })
}
