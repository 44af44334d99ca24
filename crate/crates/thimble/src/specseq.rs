//! The spectral sequence of the canonical filtration on a hom complex:
//! filtered complexes, exact `Z_r/B_r` page computation with representative
//! tracking, convergence verification against the unfiltered cohomology, the
//! starting-page identification, the right-sided edge homomorphism, and the
//! Morse-indexed display grid.
//!
//! Column indexing: column `j` corresponds to object `Y_{m+1−j}`, so the
//! deepest filtration step (output object `Y₁`) is the rightmost column
//! `j = m`.

use std::collections::BTreeMap;

use crate::category::{sign_of, SparseVec};
use crate::complex::{tensor_complexes, ChainComplex, CommuteMode, GradedMap};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::graded::GenId;
use crate::homcx::HomComplex;
use crate::matrix::Matrix;
use crate::module::{projective, simple, AModule, ModKey};
use crate::morphism::{compose, PreMorphism};

/// A bounded filtered cochain complex: the total hom complex together with a
/// column number per basis slot. `F^j` is spanned by the slots with column
/// `≥ j`; `F¹` is everything and `F^{m+1} = 0`.
pub struct FilteredComplex {
    pub m: usize,
    pub homcx: HomComplex,
    /// per degree: column of each basis position
    pub cols: BTreeMap<i64, Vec<usize>>,
}

impl FilteredComplex {
    pub fn total(&self) -> &ChainComplex {
        self.homcx.complex()
    }

    fn positions_with(&self, deg: i64, pred: impl Fn(usize) -> bool) -> Vec<usize> {
        match self.cols.get(&deg) {
            Some(v) => v
                .iter()
                .enumerate()
                .filter(|(_, &c)| pred(c))
                .map(|(i, _)| i)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Selection matrix whose columns are the standard basis vectors of
    /// `F^j` at degree `deg`.
    fn f_basis(&self, j: i64, deg: i64) -> Matrix {
        let f = self.homcx.field();
        let n = self.total().dim(deg);
        let pos = self.positions_with(deg, |c| (c as i64) >= j);
        let mut m = Matrix::zeros(f, n, pos.len());
        for (col, &p) in pos.iter().enumerate() {
            m.set(p, col, f.one());
        }
        m
    }

    /// Verify every differential entry is filtration-non-decreasing.
    pub fn check_closed(&self) -> Result<()> {
        let f = self.homcx.field();
        for (&deg, cols) in &self.cols {
            let d = self.total().differential(deg);
            let next = self.cols.get(&(deg + 1));
            for r in 0..d.rows() {
                for c in 0..d.cols() {
                    if f.is_zero(d.get(r, c)) {
                        continue;
                    }
                    let col_src = cols[c];
                    let col_dst = next.map(|v| v[r]).unwrap_or(0);
                    if col_dst < col_src {
                        return Err(Error::invariant(format!(
                            "filtration not closed under μ¹_C at degree {deg}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The filtration of `hom_C(M₀, M₁)` induced by the canonical decreasing
/// filtration of `M₁`: `F^j = hom_C(M₀, M₁^{≤ m+1−j})`, realized as the
/// slots whose output object is `Y_{≤ m+1−j}`.
pub fn filtered_hom(m0: &AModule, m1: &AModule) -> Result<FilteredComplex> {
    if m0.cat() != m1.cat() {
        return Err(Error::input(
            "filtered hom complex needs a shared category".to_string(),
        ));
    }
    let m = m0.cat().m();
    let homcx = HomComplex::new(m0, m1)?;
    let mut cols: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for deg in homcx.complex().space().degrees().collect::<Vec<_>>() {
        cols.insert(deg, vec![0; homcx.complex().dim(deg)]);
    }
    for s in 0..homcx.slot_count() {
        let pos = homcx.position(s);
        let out_obj = homcx.keys()[homcx.slots()[s].key_idx].chain[0];
        cols.get_mut(&pos.deg).unwrap()[pos.idx] = m + 1 - out_obj;
    }
    let fc = FilteredComplex { m, homcx, cols };
    fc.check_closed()?;
    Ok(fc)
}

/// One page of the spectral sequence, with explicit representatives.
pub struct Page {
    pub r: usize,
    pub dims: BTreeMap<(usize, i64), usize>,
    /// ambient-coordinate representatives of each entry
    pub reps: BTreeMap<(usize, i64), Matrix>,
    /// ambient-coordinate boundary subspace of each entry
    pub bounds: BTreeMap<(usize, i64), Matrix>,
    /// `d_r : (j,k) → (j+r, k−r+1)` in the representative coordinates
    pub d: BTreeMap<(usize, i64), Matrix>,
}

/// A computed spectral sequence run.
pub struct SSRun {
    pub m: usize,
    pub pages: Vec<Page>,
    pub einf: BTreeMap<(usize, i64), usize>,
    /// dims of the filtration quotients of `H(total)`, same indexing
    pub grh: BTreeMap<(usize, i64), usize>,
    /// graded dims of `H(total)` (the independent convergence oracle)
    pub hom_dims: BTreeMap<i64, usize>,
    pub converged: bool,
}

impl SSRun {
    /// Σ over columns of `E_∞` dims at one total degree.
    pub fn einf_total(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for (&(j, k), &d) in &self.einf {
            if d > 0 {
                *out.entry(j as i64 + k).or_insert(0) += d;
            }
        }
        out
    }

    pub fn page(&self, r: usize) -> Option<&Page> {
        self.pages.get(r - 1)
    }
}

fn nonzero_map(m: &BTreeMap<(usize, i64), usize>) -> BTreeMap<(usize, i64), usize> {
    m.iter()
        .filter(|(_, &v)| v > 0)
        .map(|(&k, &v)| (k, v))
        .collect()
}

/// Exact page-by-page computation. Pages `1..=max(1, m)` are produced; all
/// differentials vanish from page `m` on, so the last page is `E_∞`.
pub fn spectral_sequence(fc: &FilteredComplex, max_page: Option<usize>) -> Result<SSRun> {
    let f = fc.homcx.field();
    let m = fc.m;
    let total = fc.total().clone();
    let degrees: Vec<i64> = total.space().degrees().collect();
    let r_max = max_page.unwrap_or_else(|| m.max(1));
    if r_max < 1 {
        return Err(Error::input("max page must be at least 1".to_string()));
    }

    // Z_r^{j,n} = {x ∈ F^j C^n : dx ∈ F^{j+r} C^{n+1}}, as ambient columns.
    let z_space = |r: i64, j: i64, n: i64| -> Matrix {
        let basis = fc.f_basis(j, n);
        if basis.cols() == 0 {
            return basis;
        }
        let d = total.differential(n);
        let img = d.mul(&basis);
        // rows outside F^{j+r} must vanish
        let out_rows = fc.positions_with(n + 1, |c| (c as i64) < j + r);
        if out_rows.is_empty() {
            return basis;
        }
        let mut sub = Matrix::zeros(f, out_rows.len(), basis.cols());
        for (ri, &row) in out_rows.iter().enumerate() {
            for c in 0..basis.cols() {
                sub.set(ri, c, img.get(row, c).clone());
            }
        }
        basis.mul(&sub.nullspace())
    };

    let mut pages: Vec<Page> = Vec::new();
    for r in 1..=r_max {
        let ri = r as i64;
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        let mut bounds = BTreeMap::new();
        for &n in &degrees {
            for j in 1..=m {
                let ji = j as i64;
                let z = z_space(ri, ji, n);
                // B_r = Z_{r−1}^{j+1,n} + d Z_{r−1}^{j−r+1, n−1}
                let z_up = z_space(ri - 1, ji + 1, n);
                let z_back = z_space(ri - 1, ji - ri + 1, n - 1);
                let d_back = total.differential(n - 1).mul(&z_back);
                let b = z_up.hstack(&d_back);
                // B ⊆ Z: select an independent basis of B, then complete to Z
                let b_basis = b.column_space_basis();
                let rank_b = b_basis.cols();
                let new_cols = Matrix::extend_basis(&b_basis, &z);
                let e_reps = z.select_columns(&new_cols);
                let dim = e_reps.cols();
                debug_assert_eq!(z.rank(), rank_b + dim, "B_r ⊄ Z_r at ({j},{n})");
                let k = n - ji;
                dims.insert((j, k), dim);
                reps.insert((j, k), e_reps);
                bounds.insert((j, k), b_basis);
            }
        }

        // d_r matrices
        let mut d_mats = BTreeMap::new();
        for (&(j, k), rmat) in &reps {
            let n = j as i64 + k;
            let tgt = (j + r, k - ri + 1);
            let tgt_dim = dims.get(&tgt).copied().unwrap_or(0);
            if rmat.cols() == 0 {
                d_mats.insert((j, k), Matrix::zeros(f, tgt_dim, 0));
                continue;
            }
            let img = total.differential(n).mul(rmat);
            if tgt_dim == 0 && img.is_zero() {
                d_mats.insert((j, k), Matrix::zeros(f, 0, rmat.cols()));
                continue;
            }
            let (tr, tb) = match (reps.get(&tgt), bounds.get(&tgt)) {
                (Some(a), Some(b)) => (a.clone(), b.clone()),
                _ => (
                    Matrix::zeros(f, img.rows(), 0),
                    Matrix::zeros(f, img.rows(), 0),
                ),
            };
            let span = tr.hstack(&tb);
            let sol = span.solve_matrix(&img)?.ok_or_else(|| {
                Error::invariant(format!(
                    "d_{r} image at ({j},{k}) escapes Z_{r} of the target"
                ))
            })?;
            let mut dmat = Matrix::zeros(f, tr.cols(), rmat.cols());
            for row in 0..tr.cols() {
                for c in 0..rmat.cols() {
                    dmat.set(row, c, sol.get(row, c).clone());
                }
            }
            d_mats.insert((j, k), dmat);
        }

        // d_r ∘ d_r = 0
        for (&(j, k), dm) in &d_mats {
            let tgt = (j + r, k - ri + 1);
            if let Some(next) = d_mats.get(&tgt) {
                if dm.cols() > 0 && next.rows() > 0 && !next.mul(dm).is_zero() {
                    return Err(Error::invariant(format!(
                        "d_{r} ∘ d_{r} ≠ 0 out of ({j},{k})"
                    )));
                }
            }
        }

        pages.push(Page {
            r,
            dims,
            reps,
            bounds,
            d: d_mats,
        });
    }

    // E_{r+1} = H(E_r, d_r) dimensionwise
    for w in pages.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let ri = cur.r as i64;
        for (&(j, k), &dim_next) in &next.dims {
            let dim_cur = cur.dims.get(&(j, k)).copied().unwrap_or(0);
            let rank_out = cur.d.get(&(j, k)).map_or(0, Matrix::rank);
            let from = (j.wrapping_sub(cur.r), k + ri - 1);
            let rank_in = if j > cur.r {
                cur.d.get(&from).map_or(0, Matrix::rank)
            } else {
                0
            };
            if dim_next != dim_cur - rank_out - rank_in {
                return Err(Error::invariant(format!(
                    "E_{}({j},{k}) ≠ H(E_{}, d_{}) there",
                    next.r, cur.r, cur.r
                )));
            }
        }
    }

    // E_∞ and gr H
    let einf = nonzero_map(&pages.last().expect("at least one page").dims);
    let coh = total.cohomology();
    let hom_dims = coh.nonzero_dims();
    let mut grh = BTreeMap::new();
    for &n in &degrees {
        // dim F^j H^n for j = 1..m+1
        let mut fdim = Vec::with_capacity(m + 2);
        for j in 1..=(m + 1) {
            let basis = fc.f_basis(j as i64, n);
            let d = total.differential(n);
            let kernel_cols = d.mul(&basis).nullspace();
            let zj = basis.mul(&kernel_cols);
            let classes = coh.projection(n).mul(&zj);
            fdim.push(classes.rank());
        }
        for j in 1..=m {
            let g = fdim[j - 1] - fdim[j];
            if g > 0 {
                grh.insert((j, n - j as i64), g);
            }
        }
    }
    let converged = einf == grh;
    Ok(SSRun {
        m,
        pages,
        einf,
        grh,
        hom_dims,
        converged,
    })
}

/// The starting-page identification
/// `E₁^{jk} ≅ (H*(M₁(Y_{m+1−j})) ⊗ Hom*_C(M₀, S_{m+1−j}))^{j+k}`,
/// with chain-level witness cocycles checked against the raw page.
pub struct E1Identification {
    pub predicted: BTreeMap<(usize, i64), usize>,
    pub raw: BTreeMap<(usize, i64), usize>,
    /// per column `j`: `H*(M₁(Y_{m+1−j}))` dims and `Hom*(M₀, S_{m+1−j})` dims
    pub factors: BTreeMap<usize, (BTreeMap<i64, usize>, BTreeMap<i64, usize>)>,
    pub dims_match: bool,
    pub witnesses_ok: bool,
}

pub fn e1_identification(m0: &AModule, m1: &AModule) -> Result<E1Identification> {
    let f = m0.field();
    let m = m0.cat().m();
    let fc = filtered_hom(m0, m1)?;
    let run = spectral_sequence(&fc, Some(1))?;
    let page1 = run.page(1).expect("page 1 computed");
    let raw = nonzero_map(&page1.dims);

    let mut predicted = BTreeMap::new();
    let mut factors = BTreeMap::new();
    let mut witnesses_ok = true;
    for j in 1..=m {
        let r = m + 1 - j;
        let h_obj = m1.object_cohomology(r).nonzero_dims();
        let s_r = simple(m0.cat(), r)?;
        let hom_s = HomComplex::new(m0, &s_r)?;
        let hom_s_coh = hom_s.cohomology();
        let hom_dims = hom_s_coh.nonzero_dims();
        for (&u, &du) in &h_obj {
            for (&v, &dv) in &hom_dims {
                let n = u + v;
                *predicted.entry((j, n - j as i64)).or_insert(0) += du * dv;
            }
        }
        factors.insert(j, (h_obj.clone(), hom_dims.clone()));

        // chain-level witnesses: z ⊗ φ with z a cocycle representative of
        // H(M₁(Y_r)) and φ one of Hom*(M₀, S_r); classes must span E₁^{j,*}
        let obj_coh = m1.object_cohomology(r);
        let mut by_entry: BTreeMap<(usize, i64), Vec<Vec<Scalar>>> = BTreeMap::new();
        for (&u, &du) in &h_obj {
            let zreps = obj_coh.representatives(u);
            for (&v, &dv) in &hom_dims {
                let phireps = hom_s_coh.representatives(v);
                for zc in 0..du {
                    for pc in 0..dv {
                        let phi = hom_s.premorphism_from_vector(v, &phireps.column(pc))?;
                        let w = witness_premorphism(m1, r, u, &zreps.column(zc), &phi)?;
                        let wv = fc.homcx.vector_of(&w)?;
                        // supported in F^j
                        for (pos, val) in wv.iter().enumerate() {
                            if !f.is_zero(val) {
                                assert_eq!(fc.cols[&(u + v)][pos] , j, "witness leaves its column");
                            }
                        }
                        // μ¹_C w ∈ F^{j+1}
                        let dw = w.differential();
                        let dwv = fc.homcx.vector_of(&dw)?;
                        for (pos, val) in dwv.iter().enumerate() {
                            if !f.is_zero(val) && (fc.cols[&(u + v + 1)][pos] as i64) < (j as i64 + 1)
                            {
                                witnesses_ok = false;
                            }
                        }
                        by_entry.entry((j, u + v - j as i64)).or_default().push(wv);
                    }
                }
            }
        }
        // classes independent and spanning: the square matrix of E₁
        // coordinates of the witnesses must be invertible
        for ((jj, k), vecs) in by_entry {
            let dim = page1.dims.get(&(jj, k)).copied().unwrap_or(0);
            if dim != vecs.len() {
                witnesses_ok = false;
                continue;
            }
            if dim == 0 {
                continue;
            }
            let reps = &page1.reps[&(jj, k)];
            let bounds = &page1.bounds[&(jj, k)];
            let span = reps.hstack(bounds);
            let mut classes = Matrix::zeros(f, dim, vecs.len());
            for (c, wv) in vecs.iter().enumerate() {
                match span.solve(wv)? {
                    Some(sol) => {
                        for row in 0..dim {
                            classes.set(row, c, sol[row].clone());
                        }
                    }
                    None => {
                        witnesses_ok = false;
                    }
                }
            }
            if !classes.is_invertible() {
                witnesses_ok = false;
            }
        }
    }

    let dims_match = nonzero_map(&predicted) == raw;
    Ok(E1Identification {
        predicted: nonzero_map(&predicted),
        raw,
        factors,
        dims_match,
        witnesses_ok,
    })
}

/// The witness pre-morphism `m₀-chain ↦ φ(…)·z`, supported on output object
/// `Y_r`, for a cocycle `z ∈ M₁(Y_r)^u` (coordinates) and a cocycle
/// `φ: M₀ → S_r`.
fn witness_premorphism(
    m1: &AModule,
    _r: usize,
    u: i64,
    z: &[Scalar],
    phi: &PreMorphism,
) -> Result<PreMorphism> {
    let f = m1.field();
    let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for (key, val) in phi.components() {
        // φ outputs in S_r(Y_r) = K, a single basis vector
        let scalar = &val[0].1;
        let mut out: SparseVec = Vec::new();
        for (idx, c) in z.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            out.push((GenId::new(u, idx), f.mul(c, scalar)));
        }
        if !out.is_empty() {
            comps.insert(key.clone(), out);
        }
    }
    PreMorphism::new(
        phi.source().clone(),
        m1.clone(),
        u + phi.degree(),
        comps,
    )
}

/// The edge homomorphism data: the chain map
/// `hom_C(P₁, M₁) ⊗ hom_C(M₀, S₁) → hom_C(M₀, M₁)`, its induced map on
/// cohomology, and the comparison with the composition product after the
/// literal identification `P₁ = S₁`.
pub struct EdgeReport {
    /// per degree, the chain map in tensor-basis coordinates
    pub chain_map: BTreeMap<i64, Matrix>,
    pub chain_map_ok: bool,
    /// induced blocks `H^n(source) → H^n(target)`
    pub h_edge: BTreeMap<i64, Matrix>,
    /// the composition pairing on the same basis classes
    pub h_product: BTreeMap<i64, Matrix>,
    /// chain-level comparison `edge(ψ⊗φ) = (−1)^{|φ|} μ²_C(ψ, φ)` held
    pub product_matches: bool,
    /// recorded identification: Künneth basis `[ψ]⊗[φ]` with the sign
    /// `(−1)^{deg φ}` absorbed into the comparison
    pub sign_note: &'static str,
    /// dims of the image of the cohomology-level edge map per degree
    pub image_dims: BTreeMap<i64, usize>,
}

pub fn edge_map(m0: &AModule, m1: &AModule) -> Result<EdgeReport> {
    let f = m0.field();
    let cat = m0.cat();
    let p1 = projective(cat, 1)?;
    let s1 = simple(cat, 1)?;
    let hom_a = HomComplex::new(&p1, m1)?; // ≅ (M₁(Y₁), μ¹)
    let hom_b = HomComplex::new(m0, &s1)?;
    let hom_t = HomComplex::new(m0, m1)?;
    let tensor = tensor_complexes(hom_a.complex(), hom_b.complex());

    // the chain map on tensor basis vectors
    let mut chain_map: BTreeMap<i64, Matrix> = BTreeMap::new();
    let degrees: Vec<i64> = tensor.complex.space().degrees().collect();
    for &n in &degrees {
        chain_map.insert(
            n,
            Matrix::zeros(f, hom_t.complex().dim(n), tensor.complex.dim(n)),
        );
    }
    for (pair_idx, &(ga, gb)) in tensor.pairs.iter().enumerate() {
        let tid = pair_position(&tensor, pair_idx);
        // A-slot `ga`: out vector in M₁(Y₁); B-slot `gb`: a component key
        let a_slot = slot_of_position(&hom_a, ga);
        let b_slot = slot_of_position(&hom_b, gb);
        let out = hom_a.slots()[a_slot].out;
        let key = &hom_b.keys()[hom_b.slots()[b_slot].key_idx];
        let t_key_idx = hom_t
            .key_index(key)
            .expect("hom(M₀, S₁) keys are hom(M₀, M₁) keys");
        if let Some(t_slot) = hom_t.slot_at(t_key_idx, out) {
            let pos = hom_t.position(t_slot);
            let mat = chain_map.get_mut(&tid.deg).expect("degree present");
            mat.add_assign_at(pos.idx, tid.idx, &f.one());
        }
    }

    // chain-map property
    let mut chain_map_ok = true;
    for &n in &degrees {
        let lhs = hom_t
            .complex()
            .differential(n)
            .mul(chain_map.get(&n).expect("present"));
        let empty = Matrix::zeros(f, hom_t.complex().dim(n + 1), tensor.complex.dim(n + 1));
        let e_next = chain_map.get(&(n + 1)).unwrap_or(&empty);
        let rhs = e_next.mul(&tensor.complex.differential(n));
        if lhs != rhs {
            chain_map_ok = false;
        }
    }

    // induced map on cohomology
    let gm = GradedMap {
        shift: 0,
        maps: chain_map.clone(),
    };
    let t_coh = tensor.complex.cohomology();
    let h_coh = hom_t.cohomology();
    let h_edge = gm.induced_on_cohomology(
        &tensor.complex,
        hom_t.complex(),
        &t_coh,
        &h_coh,
        CommuteMode::Strict,
    )?;
    let image_dims: BTreeMap<i64, usize> = h_edge
        .iter()
        .filter(|(_, m)| m.rank() > 0)
        .map(|(&k, m)| (k, m.rank()))
        .collect();

    // product comparison on Künneth classes [ψ]⊗[φ]
    let a_coh = hom_a.cohomology();
    let b_coh = hom_b.cohomology();
    let mut product_matches = true;
    let mut h_edge_classes: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut h_product: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut class_basis_count: BTreeMap<i64, usize> = BTreeMap::new();
    for (&u, &du) in &a_coh.nonzero_dims() {
        for (&v, &dv) in &b_coh.nonzero_dims() {
            *class_basis_count.entry(u + v).or_insert(0) += du * dv;
        }
    }
    for (&n, &count) in &class_basis_count {
        h_edge_classes.insert(n, Matrix::zeros(f, h_coh.dim(n), count));
        h_product.insert(n, Matrix::zeros(f, h_coh.dim(n), count));
    }
    let mut col_counter: BTreeMap<i64, usize> = BTreeMap::new();
    for (&u, &du) in &a_coh.nonzero_dims() {
        for (&v, &dv) in &b_coh.nonzero_dims() {
            let n = u + v;
            for ac in 0..du {
                for bc in 0..dv {
                    let psi =
                        hom_a.premorphism_from_vector(u, &a_coh.representatives(u).column(ac))?;
                    let phi =
                        hom_b.premorphism_from_vector(v, &b_coh.representatives(v).column(bc))?;
                    // edge image of the cocycle ψ⊗φ at chain level
                    let eta = edge_of_pair(&hom_t, m1, &psi, &phi)?;
                    let eta_v = hom_t.vector_of(&eta)?;
                    // composition after the literal identification P₁ = S₁
                    let phi_p1 = PreMorphism::new(
                        m0.clone(),
                        p1.clone(),
                        v,
                        phi.components().clone(),
                    )?;
                    let mu2 = compose(&psi, &phi_p1)?;
                    let mu2_v = hom_t.vector_of(&mu2)?;
                    // chain-level identity edge(ψ⊗φ) = (−1)^v μ²(ψ, φ)
                    let scaled: Vec<Scalar> = mu2_v
                        .iter()
                        .map(|c| f.mul(c, &sign_of(&f, v)))
                        .collect();
                    if eta_v != scaled {
                        product_matches = false;
                    }
                    let col = {
                        let c = col_counter.entry(n).or_insert(0);
                        let cur = *c;
                        *c += 1;
                        cur
                    };
                    let ec = h_coh.class_of(n, &eta_v);
                    let pc = h_coh.class_of(n, &scaled);
                    for (row, val) in ec.iter().enumerate() {
                        h_edge_classes.get_mut(&n).unwrap().set(row, col, val.clone());
                    }
                    for (row, val) in pc.iter().enumerate() {
                        h_product.get_mut(&n).unwrap().set(row, col, val.clone());
                    }
                }
            }
        }
    }
    for (n, em) in &h_edge_classes {
        if h_product.get(n).map(|pm| pm != em).unwrap_or(true) {
            product_matches = false;
        }
    }

    Ok(EdgeReport {
        chain_map,
        chain_map_ok,
        h_edge,
        h_product,
        product_matches,
        sign_note: "edge(ψ⊗φ) = (−1)^{deg φ} μ²_C(ψ, φ) in the recorded bases",
        image_dims,
    })
}

/// `edge(ψ ⊗ φ)`: the pre-morphism with components
/// `ψ¹(e₁) · φ(m, a_d, …, a₁)` on the chains with output object `Y₁`.
fn edge_of_pair(
    hom_t: &HomComplex,
    m1: &AModule,
    psi: &PreMorphism,
    phi: &PreMorphism,
) -> Result<PreMorphism> {
    let f = m1.field();
    let psi_e1 = psi.eval(&[1], &crate::category::Arg::Gen(GenId::new(0, 0)), &[]);
    let mut comps: BTreeMap<ModKey, SparseVec> = BTreeMap::new();
    for (key, val) in phi.components() {
        let scalar = &val[0].1;
        let out: SparseVec = psi_e1
            .iter()
            .map(|(g, c)| (*g, f.mul(c, scalar)))
            .collect();
        if !out.is_empty() {
            comps.insert(key.clone(), out);
        }
    }
    PreMorphism::new(
        hom_t.source().clone(),
        hom_t.target().clone(),
        psi.degree() + phi.degree(),
        comps,
    )
}

fn pair_position(t: &crate::complex::TensorComplex, pair_idx: usize) -> GenId {
    let (ga, gb) = t.pairs[pair_idx];
    // pairs were pushed grouped by degree in order, so reconstruct the id by
    // counting earlier pairs of the same degree
    let deg = ga.deg + gb.deg;
    let idx = t
        .pairs
        .iter()
        .take(pair_idx)
        .filter(|(a, b)| a.deg + b.deg == deg)
        .count();
    GenId::new(deg, idx)
}

fn slot_of_position(h: &HomComplex, pos: GenId) -> usize {
    (0..h.slot_count())
        .find(|&s| h.position(s) == pos)
        .expect("position addresses a slot")
}

/// The purely arithmetic display grid: entry `(j, k)` has dimension
/// `dim H^{j+k+n−μ(y_{j−r})}` for `r < j ≤ r+s`, zero elsewhere.
pub fn morse_e1_grid(
    indices: &[usize],
    n: usize,
    r: usize,
    h: &BTreeMap<i64, usize>,
) -> Result<BTreeMap<(i64, i64), usize>> {
    if indices.is_empty() {
        return Err(Error::input("empty Morse index list".to_string()));
    }
    if indices.iter().any(|&mu| mu > n) {
        return Err(Error::input("Morse index exceeds the dimension".to_string()));
    }
    let mut out = BTreeMap::new();
    for (pos, &mu) in indices.iter().enumerate() {
        let j = (r + pos + 1) as i64;
        for (&deg, &dim) in h {
            if dim == 0 {
                continue;
            }
            // deg = j + k + n − μ  ⇒  k = deg − j − n + μ
            let k = deg - j - n as i64 + mu as i64;
            *out.entry((j, k)).or_insert(0) += dim;
        }
    }
    Ok(out)
}
