//! Absolute Maslov indices for graded linear Lagrangians in split models.
//!
//! A graded line in one `ℂ` factor is recorded by a rational phase lift `ã`
//! (the line is `e^{iπã}·ℝ`). The pinned index convention is
//! `i(L̃₀, L̃₁) = Σ_i ⌈ã₁,i − ã₀,i⌉`, which simultaneously satisfies the
//! Morse-index identity for graphs over the zero-section, Poincaré duality
//! `i + i' = n`, the vanishing convention for the cotangent-fibre pair
//! (fibre lift `−1/2`), the two planar triangle values `{0, −1}`, and the
//! `−μ` identity for thimble triples.

pub use num_rational::Rational64;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Rational phase lifts of a split graded linear Lagrangian, one per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitLagrangian {
    pub lifts: Vec<Rational64>,
}

impl SplitLagrangian {
    pub fn new(lifts: Vec<Rational64>) -> Self {
        SplitLagrangian { lifts }
    }

    pub fn constant(value: Rational64, n: usize) -> Self {
        SplitLagrangian {
            lifts: vec![value; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.lifts.len()
    }
}

fn ceil(q: Rational64) -> i64 {
    q.ceil().to_integer()
}

/// Absolute Maslov index `Σ_i ⌈ã₁,i − ã₀,i⌉` of a transverse pair.
pub fn index(l0: &SplitLagrangian, l1: &SplitLagrangian) -> Result<i64> {
    if l0.dim() != l1.dim() {
        return Err(Error::input(format!(
            "dimension mismatch: {} vs {}",
            l0.dim(),
            l1.dim()
        )));
    }
    let mut total = 0i64;
    for (i, (a0, a1)) in l0.lifts.iter().zip(&l1.lifts).enumerate() {
        let d = a1 - a0;
        if d.is_integer() {
            return Err(Error::precondition(format!(
                "factor {i} is non-transverse: lift difference {d} is an integer"
            )));
        }
        total += ceil(d);
    }
    Ok(total)
}

/// Index of the constant triangle operator:
/// `i(L₀,L₂) − i(L₀,L₁) − i(L₁,L₂)` for a pairwise transverse triple.
pub fn triangle_index(
    l0: &SplitLagrangian,
    l1: &SplitLagrangian,
    l2: &SplitLagrangian,
) -> Result<i64> {
    Ok(index(l0, l2)? - index(l0, l1)? - index(l1, l2)?)
}

/// The split local model around a nondegenerate real critical point of Morse
/// index `μ`: the two thimbles and the real locus.
#[derive(Debug, Clone)]
pub struct ThimbleModel {
    pub n: usize,
    pub mu: usize,
    /// lifts `(1/4 ×μ, −1/4 ×(n−μ))`
    pub delta: SplitLagrangian,
    /// lifts `(−1/4 ×μ, 1/4 ×(n−μ))`
    pub delta_dual: SplitLagrangian,
    /// the real locus, lift `0` in every factor
    pub real_locus: SplitLagrangian,
}

pub fn thimble_model(n: usize, mu: usize) -> Result<ThimbleModel> {
    if mu > n {
        return Err(Error::input(format!("need 0 ≤ μ ≤ n, got μ={mu}, n={n}")));
    }
    let quarter = Rational64::new(1, 4);
    let mut delta = Vec::with_capacity(n);
    let mut dual = Vec::with_capacity(n);
    for i in 0..n {
        if i < mu {
            delta.push(quarter);
            dual.push(-quarter);
        } else {
            delta.push(-quarter);
            dual.push(quarter);
        }
    }
    Ok(ThimbleModel {
        n,
        mu,
        delta: SplitLagrangian::new(delta),
        delta_dual: SplitLagrangian::new(dual),
        real_locus: SplitLagrangian::constant(Rational64::from_integer(0), n),
    })
}

/// Per-factor breakdown of the thimble triangle index; the total equals `−μ`.
pub struct MinusMuReport {
    pub total: i64,
    pub per_factor: Vec<i64>,
}

/// `triangle_index(Δ^!, X_ℝ, Δ)` on the split model: the first `μ` factors
/// contribute `−1` each, the rest contribute `0`.
pub fn check_minus_mu(n: usize, mu: usize) -> Result<MinusMuReport> {
    let model = thimble_model(n, mu)?;
    let mut per_factor = Vec::with_capacity(n);
    for i in 0..n {
        let slice = |l: &SplitLagrangian| SplitLagrangian::new(vec![l.lifts[i]]);
        per_factor.push(triangle_index(
            &slice(&model.delta_dual),
            &slice(&model.real_locus),
            &slice(&model.delta),
        )?);
    }
    let total = triangle_index(&model.delta_dual, &model.real_locus, &model.delta)?;
    debug_assert_eq!(total, per_factor.iter().sum::<i64>());
    Ok(MinusMuReport { total, per_factor })
}

/// Parse a rational literal `p`, `-p`, or `p/q`.
pub fn parse_lift(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i64> {
        t.parse()
            .map_err(|_| Error::input(format!("bad rational literal {s:?}")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den == 0 {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            Ok(Rational64::new(num, den))
        }
        None => Ok(Rational64::from_integer(parse_int(s)?)),
    }
}

/// Canonical text form of a lift.
pub fn format_lift(q: Rational64) -> String {
    if q.denom().abs() == 1 {
        format!("{}", q.numer() * q.denom().signum())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
