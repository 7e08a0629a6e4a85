//! Class-level diagonals and the cup, cap and cohomology cross products
//! built from them.
//!
//! The algebraic diagonal of a class is its image under the simplexwise
//! diagonal into X×X, pulled back through the Künneth isomorphism into
//! tensor coordinates over a pair of leg perversities. Products are then
//! plain contractions of those coordinates. Cochain classes throughout are
//! coordinate vectors in the dual of a homology basis.
//!
//! Every sign in this module, next to the site that applies it; d̄x = Σ y⊗z,
//! bars denote degree:
//!
//!   cup          (α⌣β)(x) = Σ (−1)^{|β||y|} α(y)β(z)            cup
//!   cap          α⌢x      = Σ (−1)^{|α||y|} α(z)·y              cap
//!   cross        (α×β)(u×w) = (−1)^{|β||u|} α(u)β(w)            cohomology_cross
//!   transpose    τ(y⊗z)   = (−1)^{|y||z|} z⊗y                   check_cocommutativity
//!   coboundary   (δα)(x)  = −(−1)^{|α|} α(∂x)                   check_coboundary_cap
//!   factor swap  (y⊗z)⊗(u⊗w) ↦ (−1)^{|z||u|} (y⊗u)⊗(z⊗w)        factored_diagonal, check_cross_cap

use crate::complex::{product, FilteredComplex, Product, Strata, Subcomplex};
use crate::error::{Error, Result};
use crate::field::{Coeffs, Echelon, Field, SVec, SparseMatrix};
use crate::ichain::{Chain, Homology, IChainComplex};
use crate::kunneth::{product_pair_subcomplex, KunnethBasis, TensorLayout};
use crate::perversity::{diagonal_condition, kunneth_perversity, Perversity, ProductStrata};
use std::collections::HashMap;

const NONE: u32 = u32::MAX;

/// A space crossed with itself, with the stratum bookkeeping every diagonal
/// over it shares.
pub struct SelfProduct {
    pub prod: Product,
    pub strata: Strata,
    pub pairs: ProductStrata,
}

impl SelfProduct {
    pub fn new(x: &FilteredComplex, xs: &Strata) -> Result<Self> {
        let prod = product(x, x);
        let strata = prod.complex.strata();
        let pairs = prod.strata_pairs(&strata, xs, xs)?;
        Ok(SelfProduct { prod, strata, pairs })
    }
}

/// Simplexwise diagonal X → X×X. A simplex goes to the staircase cell on
/// its doubled vertices; terms inside the singular set are dropped on both
/// sides, so this commutes with the quotient boundary.
pub fn diagonal_chain<F: Field>(
    x: &FilteredComplex,
    prod: &Product,
    xi: &Chain<F>,
) -> Result<Chain<F>> {
    let d = xi.degree;
    let mut entries = Vec::with_capacity(xi.entries().len());
    for (k, c) in xi.entries() {
        if !x.is_live(d, *k) {
            continue;
        }
        let verts: Vec<u32> =
            x.simplex(d, *k).iter().map(|v| prod.pair_vertex(*v, *v)).collect();
        let (dd, kk) = prod.complex.index_of(&verts).ok_or_else(|| {
            Error::InvalidComplex(format!(
                "diagonal cell of {} is missing from the product",
                x.labels_of(d, *k)
            ))
        })?;
        debug_assert_eq!(dd, d);
        entries.push((kk, c.clone()));
    }
    Ok(Chain::from_entries(d, entries))
}

/// Stratumwise condition D r̄ ≥ D p̄ + D q̄ under which the diagonal maps the
/// r̄ complex into the (p̄, q̄) product complex; the error names the stratum
/// where it first fails.
pub fn require_diagonal_condition(
    r: &Perversity,
    p: &Perversity,
    q: &Perversity,
) -> Result<()> {
    if diagonal_condition(r, p, q)? {
        return Ok(());
    }
    let table = r.table();
    for i in 0..table.len() {
        let c = table.key(i).codim as i64 - 2;
        let (dr, dp, dq) = (c - r.value(i), c - p.value(i), c - q.value(i));
        if dr < dp + dq {
            return Err(Error::PerversityCondition {
                stratum: table.key(i).name.clone(),
                detail: format!(
                    "complement {dr} of the target is below the leg complements {dp} + {dq}"
                ),
            });
        }
    }
    unreachable!("diagonal_condition failed but every stratum passes");
}

/// The diagonal of one space at one perversity triple, degree by degree:
/// a matrix from the source homology basis to tensor coordinates over the
/// two leg bases.
pub struct AlgebraicDiagonal<F: Field> {
    pub space: String,
    pub r_label: String,
    pub p_label: String,
    pub q_label: String,
    /// source homology dimensions, degrees 0..=max_degree
    pub source_dims: Vec<usize>,
    /// first-leg homology dimensions over the whole ladder
    pub p_dims: Vec<usize>,
    /// second-leg homology dimensions over the whole ladder
    pub q_dims: Vec<usize>,
    pub layouts: Vec<TensorLayout>,
    pub matrices: Vec<SparseMatrix<F>>,
}

impl<F: Field> AlgebraicDiagonal<F> {
    pub fn max_degree(&self) -> usize {
        self.matrices.len().saturating_sub(1)
    }

    /// Tensor coordinates of the diagonal of a class.
    pub fn apply(&self, degree: usize, coords: &[F]) -> Result<Vec<F>> {
        let m = self.matrices.get(degree).ok_or_else(|| {
            Error::Degree(format!(
                "diagonal of {} only computed through degree {}",
                self.space,
                self.max_degree()
            ))
        })?;
        if coords.len() != m.cols() {
            return Err(Error::DimensionMismatch(format!(
                "{} coordinates against {} source classes in degree {degree}",
                coords.len(),
                m.cols()
            )));
        }
        Ok(dense(&m.mul_vec(&to_svec(coords)), m.rows()))
    }

    /// Diagonal of the k-th basis class of a degree.
    pub fn column(&self, degree: usize, k: usize) -> Vec<F> {
        let m = &self.matrices[degree];
        let mut out = vec![F::zero(); m.rows()];
        for (r, c) in matrix_column(m, k as u32) {
            out[r] = c;
        }
        out
    }
}

/// Diagonals over X×X for several source perversities at once, sharing the
/// Künneth solve in each degree. Legs may be taken relative to subcomplexes
/// `a` (first leg) and `b` (second leg); the source is then relative to
/// their union, and the product complex to A×X ∪ X×B.
pub fn algebraic_diagonals<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    sp: &SelfProduct,
    rs: &[&Perversity],
    p: &Perversity,
    q: &Perversity,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    max_degree: usize,
) -> Result<Vec<AlgebraicDiagonal<F>>> {
    for r in rs {
        require_diagonal_condition(r, p, q)?;
    }
    let union_rel = match (a, b) {
        (Some(sa), Some(sb)) => Some(sa.union(sb)),
        _ => None,
    };
    let rel = union_rel.as_ref().or(a).or(b);
    let icp_leg = IChainComplex::new_unrestricted_rel(x, xs, p.clone(), coeffs.clone(), a)?;
    let icq_leg = IChainComplex::new_unrestricted_rel(x, xs, q.clone(), coeffs.clone(), b)?;
    let hp = icp_leg.homology_all()?;
    let hq = icq_leg.homology_all()?;
    let p_dims: Vec<usize> = hp.iter().map(|h| h.dim()).collect();
    let q_dims: Vec<usize> = hq.iter().map(|h| h.dim()).collect();
    let big_q = kunneth_perversity(p, q, &sp.strata.table, &sp.pairs)?;
    let k_pair = product_pair_subcomplex(&sp.prod, a, b);
    let icprod = IChainComplex::new_unrestricted_rel(
        &sp.prod.complex,
        &sp.strata,
        big_q,
        coeffs.clone(),
        k_pair.as_ref(),
    )?;
    let top = max_degree.min(x.dim());
    let mut sources = Vec::with_capacity(rs.len());
    for r in rs {
        let ic =
            IChainComplex::new_unrestricted_rel(x, xs, (*r).clone(), coeffs.clone(), rel)?;
        let hs: Vec<Homology<F>> = (0..=top).map(|d| ic.homology(d)).collect::<Result<_>>()?;
        sources.push(hs);
    }
    let mut outs: Vec<AlgebraicDiagonal<F>> = rs
        .iter()
        .map(|r| AlgebraicDiagonal {
            space: x.name().to_string(),
            r_label: r.label(),
            p_label: p.label(),
            q_label: q.label(),
            source_dims: Vec::with_capacity(top + 1),
            p_dims: p_dims.clone(),
            q_dims: q_dims.clone(),
            layouts: Vec::with_capacity(top + 1),
            matrices: Vec::with_capacity(top + 1),
        })
        .collect();
    for d in 0..=top {
        let kb = KunnethBasis::new(x, x, &sp.prod, &icprod, &hp, &hq, d)?;
        for (which, hs) in sources.iter().enumerate() {
            let h = &hs[d];
            let mut trips = Vec::new();
            for k in 0..h.dim() {
                let dia = diagonal_chain(x, &sp.prod, h.rep(k))?;
                icprod.require_allowable(&dia)?;
                for (row, c) in kb.solve(&dia)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        trips.push((row as u32, k as u32, c));
                    }
                }
            }
            let out = &mut outs[which];
            out.source_dims.push(h.dim());
            out.layouts.push(kb.layout.clone());
            out.matrices.push(SparseMatrix::new(kb.layout.total, h.dim(), trips)?);
        }
    }
    Ok(outs)
}

pub fn algebraic_diagonal<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    sp: &SelfProduct,
    r: &Perversity,
    p: &Perversity,
    q: &Perversity,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    max_degree: usize,
) -> Result<AlgebraicDiagonal<F>> {
    Ok(algebraic_diagonals(x, xs, sp, &[r], p, q, a, b, coeffs, max_degree)?
        .pop()
        .expect("one diagonal per source perversity"))
}

/// Diagonal of a single cycle, solved only in the cycle's own degree; the
/// lower matrices are left without columns. Cap and cup against the cycle
/// read nothing but the top matrix, so this carries every duality pairing
/// at a fraction of the full ladder cost.
pub fn cycle_diagonal<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    sp: &SelfProduct,
    r: &Perversity,
    p: &Perversity,
    q: &Perversity,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    z: &Chain<F>,
) -> Result<AlgebraicDiagonal<F>> {
    require_diagonal_condition(r, p, q)?;
    let icp_leg = IChainComplex::new_unrestricted_rel(x, xs, p.clone(), coeffs.clone(), a)?;
    let icq_leg = IChainComplex::new_unrestricted_rel(x, xs, q.clone(), coeffs.clone(), b)?;
    let hp = icp_leg.homology_all()?;
    let hq = icq_leg.homology_all()?;
    let p_dims: Vec<usize> = hp.iter().map(|h| h.dim()).collect();
    let q_dims: Vec<usize> = hq.iter().map(|h| h.dim()).collect();
    let big_q = kunneth_perversity(p, q, &sp.strata.table, &sp.pairs)?;
    let k_pair = product_pair_subcomplex(&sp.prod, a, b);
    let icprod = IChainComplex::new_unrestricted_rel(
        &sp.prod.complex,
        &sp.strata,
        big_q,
        coeffs.clone(),
        k_pair.as_ref(),
    )?;
    let kb = KunnethBasis::new(x, x, &sp.prod, &icprod, &hp, &hq, z.degree)?;
    let dia = diagonal_chain(x, &sp.prod, z)?;
    icprod.require_allowable(&dia)?;
    let t = kb.solve(&dia)?;
    single_column(
        x.name(),
        r.label(),
        p.label(),
        q.label(),
        &p_dims,
        &q_dims,
        kb.layout.clone(),
        t,
    )
}

/// Front/back counterpart of `cycle_diagonal` for trivially filtered
/// spaces, skipping the product complex entirely.
pub fn cycle_diagonal_aw<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    z: &Chain<F>,
) -> Result<AlgebraicDiagonal<F>> {
    if !x.is_trivially_filtered() {
        return Err(Error::InvalidComplex(format!(
            "front/back diagonal needs a trivial filtration, {} has singular strata",
            x.name()
        )));
    }
    let triv = Perversity::zero(&xs.table);
    let ica = IChainComplex::new_unrestricted_rel(x, xs, triv.clone(), coeffs.clone(), a)?;
    let icb = IChainComplex::new_unrestricted_rel(x, xs, triv.clone(), coeffs.clone(), b)?;
    let ha = ica.homology_all()?;
    let hb = icb.homology_all()?;
    let p_dims: Vec<usize> = ha.iter().map(|h| h.dim()).collect();
    let q_dims: Vec<usize> = hb.iter().map(|h| h.dim()).collect();
    let la = TensorLeg::new(x, a);
    let lb = TensorLeg::new(x, b);
    let solver = TensorSolver::new(x, &la, &lb, &ha, &hb, z.degree, coeffs)?;
    let t = solver.solve(&front_back_tensor(x, &la, &lb, z))?;
    single_column(
        x.name(),
        triv.label(),
        triv.label(),
        triv.label(),
        &p_dims,
        &q_dims,
        solver.hlay,
        t,
    )
}

fn single_column<F: Field>(
    space: &str,
    r_label: String,
    p_label: String,
    q_label: String,
    p_dims: &[usize],
    q_dims: &[usize],
    layout: TensorLayout,
    t: Vec<F>,
) -> Result<AlgebraicDiagonal<F>> {
    let n = layout.degree;
    let mut layouts = Vec::with_capacity(n + 1);
    let mut matrices = Vec::with_capacity(n + 1);
    for d in 0..n {
        let lay = TensorLayout::new(d, p_dims, q_dims);
        matrices.push(SparseMatrix::new(lay.total, 0, Vec::new())?);
        layouts.push(lay);
    }
    let trips: Vec<(u32, u32, F)> = t
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(r, c)| (r as u32, 0u32, c))
        .collect();
    matrices.push(SparseMatrix::new(layout.total, 1, trips)?);
    layouts.push(layout);
    let mut source_dims = vec![0; n];
    source_dims.push(1);
    Ok(AlgebraicDiagonal {
        space: space.to_string(),
        r_label,
        p_label,
        q_label,
        source_dims,
        p_dims: p_dims.to_vec(),
        q_dims: q_dims.to_vec(),
        layouts,
        matrices,
    })
}

/// One leg of a tensor chain complex: the simplices of each degree with a
/// relative subcomplex removed.
struct TensorLeg {
    cols: Vec<Vec<u32>>,
    pos: Vec<Vec<u32>>,
}

impl TensorLeg {
    fn new(x: &FilteredComplex, drop: Option<&Subcomplex>) -> Self {
        let mut cols = Vec::with_capacity(x.max_dim() + 1);
        let mut pos = Vec::with_capacity(x.max_dim() + 1);
        for d in 0..=x.max_dim() {
            let mut cs = Vec::new();
            let mut ps = vec![NONE; x.count(d)];
            for k in 0..x.count(d) {
                if drop.map_or(false, |s| s.contains(d, k as u32)) {
                    continue;
                }
                ps[k] = cs.len() as u32;
                cs.push(k as u32);
            }
            cols.push(cs);
            pos.push(ps);
        }
        TensorLeg { cols, pos }
    }

    fn dims(&self) -> Vec<usize> {
        self.cols.iter().map(|c| c.len()).collect()
    }
}

/// Expresses cycles of the two-sided quotient tensor complex
/// (C(X)/A) ⊗ (C(X)/B) in cross classes of the leg homology bases, modulo
/// tensor boundaries. Same echelon scheme as the chain-level class solver.
struct TensorSolver<F: Field> {
    layout: TensorLayout,
    hlay: TensorLayout,
    nrows: usize,
    ech: Echelon<F>,
}

impl<F: Field> TensorSolver<F> {
    fn new(
        x: &FilteredComplex,
        la: &TensorLeg,
        lb: &TensorLeg,
        ha: &[Homology<F>],
        hb: &[Homology<F>],
        degree: usize,
        coeffs: &Coeffs<F>,
    ) -> Result<Self> {
        let da = la.dims();
        let db = lb.dims();
        let layout = TensorLayout::new(degree, &da, &db);
        let adims: Vec<usize> = ha.iter().map(|h| h.dim()).collect();
        let bdims: Vec<usize> = hb.iter().map(|h| h.dim()).collect();
        let hlay = TensorLayout::new(degree, &adims, &bdims);
        let nrows = layout.total;
        let mut ech = Echelon::new(nrows + hlay.total);
        // boundary columns: ∂(σ⊗τ) = ∂σ⊗τ + (−1)^{|σ|} σ⊗∂τ on the basis one
        // degree up, with dropped faces omitted
        let up = TensorLayout::new(degree + 1, &da, &db);
        for bl in &up.blocks {
            let (i, j) = (bl.x_degree, bl.y_degree);
            for a_i in 0..bl.x_dim {
                let sa = la.cols[i][a_i];
                for b_i in 0..bl.y_dim {
                    let sb = lb.cols[j][b_i];
                    let mut entries: Vec<(u32, F)> = Vec::new();
                    if i > 0 {
                        for (t, f) in x.facets(i, sa).into_iter().enumerate() {
                            let fp = la.pos[i - 1][f as usize];
                            if fp == NONE {
                                continue;
                            }
                            if let Some(row) = layout.index(i - 1, fp as usize, b_i) {
                                let s = if t % 2 == 0 { 1 } else { -1 };
                                entries.push((row as u32, coeffs.of_int(s)));
                            }
                        }
                    }
                    if j > 0 {
                        let flip = if i % 2 == 0 { 1 } else { -1 };
                        for (t, f) in x.facets(j, sb).into_iter().enumerate() {
                            let fq = lb.pos[j - 1][f as usize];
                            if fq == NONE {
                                continue;
                            }
                            if let Some(row) = layout.index(i, a_i, fq as usize) {
                                let s = if t % 2 == 0 { flip } else { -flip };
                                entries.push((row as u32, coeffs.of_int(s)));
                            }
                        }
                    }
                    ech.insert_forward(SVec::from_pairs(entries));
                }
            }
        }
        // class columns: rep ⊗ rep with a tail marker past the chain rows
        for bl in &hlay.blocks {
            for a_c in 0..bl.x_dim {
                let ra = ha[bl.x_degree].rep(a_c);
                for b_c in 0..bl.y_dim {
                    let rb = hb[bl.y_degree].rep(b_c);
                    let mut entries: Vec<(u32, F)> = Vec::new();
                    for (ka, ca) in ra.entries() {
                        let pa = la.pos[bl.x_degree][*ka as usize];
                        if pa == NONE {
                            continue;
                        }
                        for (kb, cb) in rb.entries() {
                            let pb = lb.pos[bl.y_degree][*kb as usize];
                            if pb == NONE {
                                continue;
                            }
                            let row = layout
                                .index(bl.x_degree, pa as usize, pb as usize)
                                .expect("kept positions lie inside the layout");
                            entries.push((row as u32, ca.clone() * cb.clone()));
                        }
                    }
                    let tail = nrows + bl.offset + a_c * bl.y_dim + b_c;
                    entries.push((tail as u32, coeffs.of_int(1)));
                    match ech.insert_forward(SVec::from_pairs(entries)) {
                        Some(r) if (ech.leads()[r] as usize) < nrows => {}
                        _ => {
                            return Err(Error::KunnethFailure {
                                degree,
                                detail: "cross class depends on earlier classes in the tensor complex"
                                    .into(),
                            })
                        }
                    }
                }
            }
        }
        Ok(TensorSolver { layout, hlay, nrows, ech })
    }

    fn solve(&self, t: &HashMap<(usize, u32, u32), F>) -> Result<Vec<F>> {
        let mut entries: Vec<(u32, F)> = Vec::new();
        for ((i, a, b), c) in t {
            if c.is_zero() {
                continue;
            }
            let row = self.layout.index(*i, *a as usize, *b as usize).ok_or_else(|| {
                Error::Degree(format!(
                    "tensor term of bidegree ({i},{}) outside the layout",
                    self.layout.degree - i
                ))
            })?;
            entries.push((row as u32, c.clone()));
        }
        let r = self.ech.reduce(SVec::from_pairs(entries));
        let mut coords = vec![F::zero(); self.hlay.total];
        for (i, c) in r.iter() {
            if (*i as usize) < self.nrows {
                return Err(Error::KunnethFailure {
                    degree: self.layout.degree,
                    detail: "tensor cycle lies outside the span of the cross classes".into(),
                });
            }
            coords[*i as usize - self.nrows] = -c.clone();
        }
        Ok(coords)
    }
}

/// Front/back splitting of the simplexwise diagonal, σ ↦ Σ_i σ(0..i) ⊗
/// σ(i..d), applied to a chain. Terms landing in a dropped leg vanish.
/// No signs.
fn front_back_tensor<F: Field>(
    x: &FilteredComplex,
    la: &TensorLeg,
    lb: &TensorLeg,
    z: &Chain<F>,
) -> HashMap<(usize, u32, u32), F> {
    let d = z.degree;
    let mut acc: HashMap<(usize, u32, u32), F> = HashMap::new();
    for (k, c) in z.entries() {
        let verts = x.simplex(d, *k);
        for i in 0..=d {
            let (_, ka) = x.index_of(&verts[..=i]).expect("front face exists");
            let (_, kb) = x.index_of(&verts[i..]).expect("back face exists");
            let pa = la.pos[i][ka as usize];
            let pb = lb.pos[d - i][kb as usize];
            if pa == NONE || pb == NONE {
                continue;
            }
            let key = (i, pa, pb);
            match acc.get_mut(&key) {
                Some(e) => *e = e.clone() + c.clone(),
                None => {
                    acc.insert(key, c.clone());
                }
            }
        }
    }
    acc
}

/// Diagonal of a trivially filtered space by front/back splitting, without
/// building X×X. The front/back map is a strict one-sided inverse of the
/// shuffle product, so this agrees with the Künneth route entrywise. Legs
/// may be relative; the source is then relative to the union.
pub fn algebraic_diagonal_aw<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    max_degree: usize,
) -> Result<AlgebraicDiagonal<F>> {
    if !x.is_trivially_filtered() {
        return Err(Error::InvalidComplex(format!(
            "front/back diagonal needs a trivial filtration, {} has singular strata",
            x.name()
        )));
    }
    let triv = Perversity::zero(&xs.table);
    let union_rel = match (a, b) {
        (Some(sa), Some(sb)) => Some(sa.union(sb)),
        _ => None,
    };
    let rel = union_rel.as_ref().or(a).or(b);
    let ic = IChainComplex::new_unrestricted_rel(x, xs, triv.clone(), coeffs.clone(), rel)?;
    let ica = IChainComplex::new_unrestricted_rel(x, xs, triv.clone(), coeffs.clone(), a)?;
    let icb = IChainComplex::new_unrestricted_rel(x, xs, triv.clone(), coeffs.clone(), b)?;
    let ha = ica.homology_all()?;
    let hb = icb.homology_all()?;
    let la = TensorLeg::new(x, a);
    let lb = TensorLeg::new(x, b);
    let top = max_degree.min(x.dim());
    let mut out = AlgebraicDiagonal {
        space: x.name().to_string(),
        r_label: triv.label(),
        p_label: triv.label(),
        q_label: triv.label(),
        source_dims: Vec::with_capacity(top + 1),
        p_dims: ha.iter().map(|h| h.dim()).collect(),
        q_dims: hb.iter().map(|h| h.dim()).collect(),
        layouts: Vec::with_capacity(top + 1),
        matrices: Vec::with_capacity(top + 1),
    };
    for d in 0..=top {
        let h = ic.homology(d)?;
        let solver = TensorSolver::new(x, &la, &lb, &ha, &hb, d, coeffs)?;
        let mut trips = Vec::new();
        for k in 0..h.dim() {
            let t = front_back_tensor(x, &la, &lb, h.rep(k));
            for (row, c) in solver.solve(&t)?.into_iter().enumerate() {
                if !c.is_zero() {
                    trips.push((row as u32, k as u32, c));
                }
            }
        }
        out.source_dims.push(h.dim());
        out.matrices.push(SparseMatrix::new(solver.hlay.total, h.dim(), trips)?);
        out.layouts.push(solver.hlay);
    }
    Ok(out)
}

fn convolve(a: &[usize], b: &[usize], top: usize) -> Vec<usize> {
    (0..=top)
        .map(|d| {
            (0..=d)
                .map(|i| a.get(i).copied().unwrap_or(0) * b.get(d - i).copied().unwrap_or(0))
                .sum()
        })
        .collect()
}

fn matrix_column<F: Field>(m: &SparseMatrix<F>, col: u32) -> Vec<(usize, F)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        if let Some(v) = m.row(r).get(col) {
            out.push((r, v.clone()));
        }
    }
    out
}

fn join_label(a: &str, b: &str) -> String {
    if a == b {
        a.to_string()
    } else {
        format!("{a}|{b}")
    }
}

/// Diagonal of a product M×X assembled from factor diagonals:
/// d̄(m×x) = Σ (−1)^{|m''||x'|} (m'×x') ⊗ (m''×x''). Source and leg
/// coordinates are all cross-basis tensor layouts over the factor bases.
/// Both factors must be computed through their full dimension.
pub fn factored_diagonal<F: Field>(
    dm: &AlgebraicDiagonal<F>,
    dx: &AlgebraicDiagonal<F>,
    max_degree: usize,
) -> Result<AlgebraicDiagonal<F>> {
    if max_degree > dm.max_degree() + dx.max_degree() {
        return Err(Error::Degree(format!(
            "factor diagonals reach degree {}, the product needs {max_degree}",
            dm.max_degree() + dx.max_degree()
        )));
    }
    let source_dims = convolve(&dm.source_dims, &dx.source_dims, max_degree);
    let p_dims = convolve(&dm.p_dims, &dx.p_dims, max_degree);
    let q_dims = convolve(&dm.q_dims, &dx.q_dims, max_degree);
    let p_cross: Vec<TensorLayout> =
        (0..=max_degree).map(|t| TensorLayout::new(t, &dm.p_dims, &dx.p_dims)).collect();
    let q_cross: Vec<TensorLayout> =
        (0..=max_degree).map(|t| TensorLayout::new(t, &dm.q_dims, &dx.q_dims)).collect();
    let mut layouts = Vec::with_capacity(max_degree + 1);
    let mut matrices = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let src_lay = TensorLayout::new(d, &dm.source_dims, &dx.source_dims);
        let out_lay = TensorLayout::new(d, &p_dims, &q_dims);
        let mut trips = Vec::new();
        for sb in &src_lay.blocks {
            let (md, xd) = (sb.x_degree, sb.y_degree);
            for am in 0..sb.x_dim {
                let mcol = matrix_column(&dm.matrices[md], am as u32);
                for bx in 0..sb.y_dim {
                    let xcol = matrix_column(&dx.matrices[xd], bx as u32);
                    let col = sb.offset + am * sb.y_dim + bx;
                    for (mrow, mc) in &mcol {
                        let (i1, ma, mb) = dm.layouts[md].split(*mrow);
                        let i2 = md - i1;
                        for (xrow, xc) in &xcol {
                            let (j1, xa, xb) = dx.layouts[xd].split(*xrow);
                            let j2 = xd - j1;
                            let leg1 = p_cross[i1 + j1]
                                .index(i1, ma, xa)
                                .expect("factor classes index the cross layout");
                            let leg2 = q_cross[i2 + j2]
                                .index(i2, mb, xb)
                                .expect("factor classes index the cross layout");
                            let row = out_lay
                                .index(i1 + j1, leg1, leg2)
                                .expect("leg degrees sum to the source degree");
                            let v = mc.clone() * xc.clone();
                            let v = if (i2 * j1) % 2 == 1 { -v } else { v };
                            trips.push((row as u32, col as u32, v));
                        }
                    }
                }
            }
        }
        layouts.push(out_lay);
        let rows = layouts[d].total;
        matrices.push(SparseMatrix::new(rows, src_lay.total, trips)?);
    }
    Ok(AlgebraicDiagonal {
        space: format!("prod:{}:{}", dm.space, dx.space),
        r_label: join_label(&dm.r_label, &dx.r_label),
        p_label: join_label(&dm.p_label, &dx.p_label),
        q_label: join_label(&dm.q_label, &dx.q_label),
        source_dims,
        p_dims,
        q_dims,
        layouts,
        matrices,
    })
}

fn expect_len(what: &str, got: usize, want: usize) -> Result<()> {
    if got != want {
        return Err(Error::DimensionMismatch(format!(
            "{what}: {got} coordinates for {want} classes"
        )));
    }
    Ok(())
}

/// Cup product of α (first-leg dual, degree `ai`) and β (second-leg dual,
/// degree `bi`) as a functional on the source basis in degree ai+bi. The
/// Koszul sign collapses to (−1)^{|α||β|} on the matching block.
pub fn cup<F: Field>(
    d: &AlgebraicDiagonal<F>,
    ai: usize,
    alpha: &[F],
    bi: usize,
    beta: &[F],
) -> Result<Vec<F>> {
    let deg = ai + bi;
    let m = d.matrices.get(deg).ok_or_else(|| {
        Error::Degree(format!(
            "cup in degree {deg} but the diagonal stops at {}",
            d.max_degree()
        ))
    })?;
    expect_len("cup first factor", alpha.len(), d.p_dims.get(ai).copied().unwrap_or(0))?;
    expect_len("cup second factor", beta.len(), d.q_dims.get(bi).copied().unwrap_or(0))?;
    let lay = &d.layouts[deg];
    let mut out = vec![F::zero(); m.cols()];
    if let Some(bl) = lay.blocks.iter().find(|b| b.x_degree == ai) {
        let neg = (ai * bi) % 2 == 1;
        for a in 0..bl.x_dim {
            if alpha[a].is_zero() {
                continue;
            }
            for b in 0..bl.y_dim {
                if beta[b].is_zero() {
                    continue;
                }
                let w = alpha[a].clone() * beta[b].clone();
                let w = if neg { -w } else { w };
                let row = bl.offset + a * bl.y_dim + b;
                for (col, c) in m.row(row).iter() {
                    out[*col as usize] = out[*col as usize].clone() + w.clone() * c.clone();
                }
            }
        }
    }
    Ok(out)
}

/// Cap product α⌢x: the second leg of the diagonal of x contracted against
/// α, leaving first-leg coordinates in degree |x|−|α|.
pub fn cap<F: Field>(
    d: &AlgebraicDiagonal<F>,
    ai: usize,
    alpha: &[F],
    xj: usize,
    x: &[F],
) -> Result<Vec<F>> {
    if ai > xj {
        return Err(Error::Degree(format!(
            "cap of a degree {ai} class against homology degree {xj}"
        )));
    }
    expect_len("cap cochain", alpha.len(), d.q_dims.get(ai).copied().unwrap_or(0))?;
    let t = d.apply(xj, x)?;
    let lay = &d.layouts[xj];
    let yd = xj - ai;
    let mut out = vec![F::zero(); d.p_dims.get(yd).copied().unwrap_or(0)];
    if let Some(bl) = lay.blocks.iter().find(|b| b.x_degree == yd) {
        let neg = (ai * yd) % 2 == 1;
        for a in 0..bl.x_dim {
            for b in 0..bl.y_dim {
                let v = t[bl.offset + a * bl.y_dim + b].clone() * alpha[b].clone();
                out[a] = if neg { out[a].clone() - v } else { out[a].clone() + v };
            }
        }
    }
    Ok(out)
}

/// Cross product of cochain classes of two spaces, as a functional in cross
/// coordinates over the given factor ladders.
pub fn cohomology_cross<F: Field>(
    am: usize,
    alpha: &[F],
    m_dims: &[usize],
    bx: usize,
    beta: &[F],
    x_dims: &[usize],
) -> Result<Vec<F>> {
    expect_len("cross first factor", alpha.len(), m_dims.get(am).copied().unwrap_or(0))?;
    expect_len("cross second factor", beta.len(), x_dims.get(bx).copied().unwrap_or(0))?;
    let lay = TensorLayout::new(am + bx, m_dims, x_dims);
    let mut out = vec![F::zero(); lay.total];
    if let Some(bl) = lay.blocks.iter().find(|b| b.x_degree == am) {
        let neg = (am * bx) % 2 == 1;
        for a in 0..bl.x_dim {
            for b in 0..bl.y_dim {
                let v = alpha[a].clone() * beta[b].clone();
                out[bl.offset + a * bl.y_dim + b] = if neg { -v } else { v };
            }
        }
    }
    Ok(out)
}

/// Dual pairing of coordinate vectors.
pub fn evaluate<F: Field>(alpha: &[F], x: &[F]) -> F {
    assert_eq!(alpha.len(), x.len(), "pairing of mismatched coordinate vectors");
    alpha.iter().zip(x).fold(F::zero(), |s, (a, b)| s + a.clone() * b.clone())
}

/// Functional composed with the map the matrix represents: the transpose
/// action on dual coordinates.
pub fn pullback<F: Field>(m: &SparseMatrix<F>, alpha: &[F]) -> Result<Vec<F>> {
    expect_len("pullback", alpha.len(), m.rows())?;
    let mut out = vec![F::zero(); m.cols()];
    for (r, a) in alpha.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (c, v) in m.row(r).iter() {
            out[*c as usize] = out[*c as usize].clone() + a.clone() * v.clone();
        }
    }
    Ok(out)
}

/// Class coordinates pushed through the matrix of an induced map.
pub fn push_coords<F: Field>(m: &SparseMatrix<F>, x: &[F]) -> Result<Vec<F>> {
    expect_len("induced map", x.len(), m.cols())?;
    Ok(dense(&m.mul_vec(&to_svec(x)), m.rows()))
}

/// Standard basis vector, as a class or a dual functional.
pub fn unit_vector<F: Field>(len: usize, k: usize) -> Vec<F> {
    let mut v = vec![F::zero(); len];
    v[k] = F::one();
    v
}

fn to_svec<F: Field>(v: &[F]) -> SVec<F> {
    SVec::from_pairs(
        v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())),
    )
}

fn dense<F: Field>(v: &SVec<F>, len: usize) -> Vec<F> {
    let mut out = vec![F::zero(); len];
    for (i, c) in v.iter() {
        out[*i as usize] = c.clone();
    }
    out
}

pub(crate) fn neg_vec<F: Field>(v: &[F]) -> Vec<F> {
    v.iter().map(|c| -c.clone()).collect()
}

pub(crate) fn vec_eq<F: Field>(a: &[F], b: &[F]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x == y)
}

fn fmt_vec<F: Field>(v: &[F]) -> String {
    let s: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", s.join(", "))
}

/// The augmentation as a functional on H_0, after checking it descends to
/// the quotient complex: the dropped boundary of every allowable edge must
/// still have coefficient sum zero.
pub fn augmentation_functional<F: Field>(
    ic: &IChainComplex<F>,
    h0: &Homology<F>,
) -> Result<Vec<F>> {
    if ic.is_relative() {
        return Err(Error::InvalidComplex(
            "augmentation of a relative complex".into(),
        ));
    }
    if h0.degree != 0 {
        return Err(Error::Degree(format!(
            "augmentation functional on homology of degree {}",
            h0.degree
        )));
    }
    let one = ic.coeffs().of_int(1);
    for k in ic.allowable_simplices(1) {
        let bd = ic.boundary_chain(&Chain::unit(1, *k, one.clone()));
        if !ic.augmentation(&bd)?.is_zero() {
            return Err(Error::InvalidComplex(format!(
                "augmentation does not descend at this perversity: edge {} keeps one endpoint",
                ic.complex().labels_of(1, *k)
            )));
        }
    }
    (0..h0.dim()).map(|k| ic.augmentation(h0.rep(k))).collect()
}

/// Outcome of one identity check; a failure carries a counterexample.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl AxiomReport {
    pub(crate) fn pass(name: &str) -> Self {
        AxiomReport { name: name.into(), ok: true, detail: "holds on every basis tuple".into() }
    }

    pub(crate) fn fail(name: &str, detail: String) -> Self {
        AxiomReport { name: name.into(), ok: false, detail }
    }
}

pub(crate) fn verdict(name: &str, outcome: Result<Option<String>>) -> AxiomReport {
    match outcome {
        Ok(None) => AxiomReport::pass(name),
        Ok(Some(cert)) => AxiomReport::fail(name, cert),
        Err(e) => AxiomReport::fail(name, e.to_string()),
    }
}

type Triple = (usize, usize, usize, usize, usize);

fn add_term<F: Field>(m: &mut HashMap<Triple, F>, k: Triple, v: F) {
    match m.get_mut(&k) {
        Some(e) => *e = e.clone() + v,
        None => {
            m.insert(k, v);
        }
    }
}

fn first_diff<F: Field>(
    lhs: &HashMap<Triple, F>,
    rhs: &HashMap<Triple, F>,
) -> Option<(Triple, F, F)> {
    let mut keys: Vec<Triple> = lhs.keys().chain(rhs.keys()).cloned().collect();
    keys.sort_unstable();
    keys.dedup();
    for k in keys {
        let a = lhs.get(&k).cloned().unwrap_or_else(F::zero);
        let b = rhs.get(&k).cloned().unwrap_or_else(F::zero);
        if a != b {
            return Some((k, a, b));
        }
    }
    None
}

/// (d̄ ⊗ 1) d̄ = (1 ⊗ d̄) d̄ through a square of perversities: the left side
/// expands the first leg, the right side the second. Both triple tensors
/// are compared componentwise.
pub fn check_coassociativity<F: Field>(
    d_s_ur: &AlgebraicDiagonal<F>,
    d_u_pq: &AlgebraicDiagonal<F>,
    d_s_pv: &AlgebraicDiagonal<F>,
    d_v_qr: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "coassociativity";
    let run = || -> Result<Option<String>> {
        let top = d_s_ur.max_degree().min(d_s_pv.max_degree());
        if d_s_ur.source_dims[..=top] != d_s_pv.source_dims[..=top] {
            return Ok(Some("the two source ladders disagree".into()));
        }
        for dd in 0..=top {
            for k in 0..d_s_ur.source_dims[dd] {
                let mut lhs: HashMap<Triple, F> = HashMap::new();
                let t = d_s_ur.column(dd, k);
                for bl in &d_s_ur.layouts[dd].blocks {
                    if bl.x_degree > d_u_pq.max_degree() {
                        return Ok(Some(format!(
                            "inner diagonal stops below degree {}",
                            bl.x_degree
                        )));
                    }
                    for a in 0..bl.x_dim {
                        let t2 = d_u_pq.column(bl.x_degree, a);
                        for b in 0..bl.y_dim {
                            let c0 = t[bl.offset + a * bl.y_dim + b].clone();
                            if c0.is_zero() {
                                continue;
                            }
                            for bl2 in &d_u_pq.layouts[bl.x_degree].blocks {
                                for a2 in 0..bl2.x_dim {
                                    for b2 in 0..bl2.y_dim {
                                        let c1 =
                                            t2[bl2.offset + a2 * bl2.y_dim + b2].clone();
                                        if c1.is_zero() {
                                            continue;
                                        }
                                        add_term(
                                            &mut lhs,
                                            (bl2.x_degree, a2, bl2.y_degree, b2, b),
                                            c0.clone() * c1,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
                let mut rhs: HashMap<Triple, F> = HashMap::new();
                let t = d_s_pv.column(dd, k);
                for bl in &d_s_pv.layouts[dd].blocks {
                    if bl.y_degree > d_v_qr.max_degree() {
                        return Ok(Some(format!(
                            "inner diagonal stops below degree {}",
                            bl.y_degree
                        )));
                    }
                    for b in 0..bl.y_dim {
                        let t2 = d_v_qr.column(bl.y_degree, b);
                        for a in 0..bl.x_dim {
                            let c0 = t[bl.offset + a * bl.y_dim + b].clone();
                            if c0.is_zero() {
                                continue;
                            }
                            for bl2 in &d_v_qr.layouts[bl.y_degree].blocks {
                                for a2 in 0..bl2.x_dim {
                                    for b2 in 0..bl2.y_dim {
                                        let c1 =
                                            t2[bl2.offset + a2 * bl2.y_dim + b2].clone();
                                        if c1.is_zero() {
                                            continue;
                                        }
                                        add_term(
                                            &mut rhs,
                                            (bl.x_degree, a, bl2.x_degree, a2, b2),
                                            c0.clone() * c1,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
                if let Some(((i, a, j, b, c), l, r)) = first_diff(&lhs, &rhs) {
                    return Ok(Some(format!(
                        "source degree {dd} class {k}: component ({i},#{a})⊗({j},#{b})⊗(#{c}) is {l} on the left, {r} on the right"
                    )));
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// τ ∘ d̄ for swapped legs equals d̄, with τ(y⊗z) = (−1)^{|y||z|} z⊗y.
pub fn check_cocommutativity<F: Field>(
    d_pq: &AlgebraicDiagonal<F>,
    d_qp: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "cocommutativity";
    let run = || -> Result<Option<String>> {
        let top = d_pq.max_degree().min(d_qp.max_degree());
        if d_pq.source_dims[..=top] != d_qp.source_dims[..=top] {
            return Ok(Some("the two source ladders disagree".into()));
        }
        for i in 0..=top {
            if d_pq.p_dims.get(i).copied().unwrap_or(0) != d_qp.q_dims.get(i).copied().unwrap_or(0)
                || d_pq.q_dims.get(i).copied().unwrap_or(0)
                    != d_qp.p_dims.get(i).copied().unwrap_or(0)
            {
                return Ok(Some(format!("leg ladders are not swaps of each other at degree {i}")));
            }
        }
        for dd in 0..=top {
            for k in 0..d_pq.source_dims[dd] {
                let t1 = d_pq.column(dd, k);
                let t2 = d_qp.column(dd, k);
                for bl in &d_pq.layouts[dd].blocks {
                    for a in 0..bl.x_dim {
                        for b in 0..bl.y_dim {
                            let v1 = t1[bl.offset + a * bl.y_dim + b].clone();
                            let v2 = d_qp.layouts[dd]
                                .index(bl.y_degree, b, a)
                                .map(|i| t2[i].clone())
                                .unwrap_or_else(F::zero);
                            let want = if (bl.x_degree * bl.y_degree) % 2 == 1 { -v2 } else { v2 };
                            if v1 != want {
                                return Ok(Some(format!(
                                    "degree {dd} class {k}, block ({},{}) entry ({a},{b}): {v1} against transposed {want}",
                                    bl.x_degree, bl.y_degree
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// (ε ⊗ 1) d̄ = identity for a diagonal whose second leg is the source
/// perversity and whose first leg admits the augmentation ε.
pub fn check_counit<F: Field>(d: &AlgebraicDiagonal<F>, eps: &[F]) -> AxiomReport {
    let name = "counit";
    let run = || -> Result<Option<String>> {
        if eps.len() != d.p_dims.first().copied().unwrap_or(0) {
            return Ok(Some(format!(
                "augmentation has {} coordinates, the first leg {} classes in degree 0",
                eps.len(),
                d.p_dims.first().copied().unwrap_or(0)
            )));
        }
        for dd in 0..=d.max_degree() {
            let sd = d.source_dims[dd];
            if d.q_dims.get(dd).copied().unwrap_or(0) != sd {
                return Ok(Some(format!(
                    "second leg does not match the source ladder in degree {dd}"
                )));
            }
            for k in 0..sd {
                let t = d.column(dd, k);
                let mut got = vec![F::zero(); sd];
                if let Some(bl) = d.layouts[dd].blocks.iter().find(|b| b.x_degree == 0) {
                    for a in 0..bl.x_dim {
                        if eps[a].is_zero() {
                            continue;
                        }
                        for b in 0..bl.y_dim {
                            got[b] = got[b].clone()
                                + eps[a].clone() * t[bl.offset + a * bl.y_dim + b].clone();
                        }
                    }
                }
                if !vec_eq(&got, &unit_vector(sd, k)) {
                    return Ok(Some(format!(
                        "degree {dd} class {k}: (ε⊗1)d̄ gives {}",
                        fmt_vec(&got)
                    )));
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// α⌣β = (−1)^{|α||β|} β⌣α across the two leg orders.
pub fn check_cup_commutativity<F: Field>(
    d_pq: &AlgebraicDiagonal<F>,
    d_qp: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "cup commutativity";
    let run = || -> Result<Option<String>> {
        let top = d_pq.max_degree().min(d_qp.max_degree());
        for ai in 0..=top {
            for bi in 0..=top - ai {
                let pa = d_pq.p_dims.get(ai).copied().unwrap_or(0);
                let qb = d_pq.q_dims.get(bi).copied().unwrap_or(0);
                for a in 0..pa {
                    for b in 0..qb {
                        let lhs =
                            cup(d_pq, ai, &unit_vector(pa, a), bi, &unit_vector(qb, b))?;
                        let r0 =
                            cup(d_qp, bi, &unit_vector(qb, b), ai, &unit_vector(pa, a))?;
                        let rhs = if (ai * bi) % 2 == 1 { neg_vec(&r0) } else { r0 };
                        if !vec_eq(&lhs, &rhs) {
                            return Ok(Some(format!(
                                "α = #{a} in degree {ai}, β = #{b} in degree {bi}: α⌣β = {} but ±β⌣α = {}",
                                fmt_vec(&lhs),
                                fmt_vec(&rhs)
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// (α⌣β)⌣γ = α⌣(β⌣γ) through the same square of diagonals used for
/// coassociativity.
pub fn check_cup_associativity<F: Field>(
    d_s_ur: &AlgebraicDiagonal<F>,
    d_u_pq: &AlgebraicDiagonal<F>,
    d_s_pv: &AlgebraicDiagonal<F>,
    d_v_qr: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "cup associativity";
    let run = || -> Result<Option<String>> {
        let top = d_s_ur.max_degree().min(d_s_pv.max_degree());
        for ai in 0..=top {
            for bi in 0..=top - ai {
                for ci in 0..=top - ai - bi {
                    let pa = d_u_pq.p_dims.get(ai).copied().unwrap_or(0);
                    let qb = d_u_pq.q_dims.get(bi).copied().unwrap_or(0);
                    let rc = d_s_ur.q_dims.get(ci).copied().unwrap_or(0);
                    for a in 0..pa {
                        for b in 0..qb {
                            let ab = cup(
                                d_u_pq,
                                ai,
                                &unit_vector(pa, a),
                                bi,
                                &unit_vector(qb, b),
                            )?;
                            for c in 0..rc {
                                let lhs =
                                    cup(d_s_ur, ai + bi, &ab, ci, &unit_vector(rc, c))?;
                                let bc = cup(
                                    d_v_qr,
                                    bi,
                                    &unit_vector(qb, b),
                                    ci,
                                    &unit_vector(rc, c),
                                )?;
                                let rhs =
                                    cup(d_s_pv, ai, &unit_vector(pa, a), bi + ci, &bc)?;
                                if !vec_eq(&lhs, &rhs) {
                                    return Ok(Some(format!(
                                        "degrees ({ai},{bi},{ci}) classes (#{a},#{b},#{c}): (α⌣β)⌣γ = {} but α⌣(β⌣γ) = {}",
                                        fmt_vec(&lhs),
                                        fmt_vec(&rhs)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// (α⌣β)⌢x = α⌢(β⌢x). The cup is taken through `d_v_pq`; the two cap
/// routes run through `d_r_uv` and `d_r_wq` then `d_w_up`.
pub fn check_cup_cap<F: Field>(
    d_r_uv: &AlgebraicDiagonal<F>,
    d_v_pq: &AlgebraicDiagonal<F>,
    d_r_wq: &AlgebraicDiagonal<F>,
    d_w_up: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "cup against cap";
    let run = || -> Result<Option<String>> {
        let top = d_r_uv
            .max_degree()
            .min(d_v_pq.max_degree())
            .min(d_r_wq.max_degree())
            .min(d_w_up.max_degree());
        if d_r_uv.source_dims[..=top] != d_r_wq.source_dims[..=top] {
            return Ok(Some("the two source ladders disagree".into()));
        }
        for xk in 0..=top {
            let sd = d_r_uv.source_dims[xk];
            for x in 0..sd {
                let ex = unit_vector(sd, x);
                for i in 0..=xk {
                    for j in 0..=xk - i {
                        let pa = d_v_pq.p_dims.get(i).copied().unwrap_or(0);
                        let qb = d_v_pq.q_dims.get(j).copied().unwrap_or(0);
                        for a in 0..pa {
                            for b in 0..qb {
                                let ab = cup(
                                    d_v_pq,
                                    i,
                                    &unit_vector(pa, a),
                                    j,
                                    &unit_vector(qb, b),
                                )?;
                                let lhs = cap(d_r_uv, i + j, &ab, xk, &ex)?;
                                let bx =
                                    cap(d_r_wq, j, &unit_vector(qb, b), xk, &ex)?;
                                let rhs =
                                    cap(d_w_up, i, &unit_vector(pa, a), xk - j, &bx)?;
                                if !vec_eq(&lhs, &rhs) {
                                    return Ok(Some(format!(
                                        "x = #{x} in degree {xk}, α = #{a} in degree {i}, β = #{b} in degree {j}: (α⌣β)⌢x = {} but α⌢(β⌢x) = {}",
                                        fmt_vec(&lhs),
                                        fmt_vec(&rhs)
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// ε(α⌢x) = α(x) for a diagonal whose legs are (augmentable, source).
pub fn check_cap_evaluation<F: Field>(d: &AlgebraicDiagonal<F>, eps: &[F]) -> AxiomReport {
    let name = "cap evaluation";
    let run = || -> Result<Option<String>> {
        if eps.len() != d.p_dims.first().copied().unwrap_or(0) {
            return Ok(Some("augmentation does not match the first leg".into()));
        }
        for i in 0..=d.max_degree() {
            let sd = d.source_dims[i];
            let qd = d.q_dims.get(i).copied().unwrap_or(0);
            if sd != qd {
                return Ok(Some(format!(
                    "second leg does not match the source ladder in degree {i}"
                )));
            }
            for b in 0..qd {
                for k in 0..sd {
                    let y = cap(d, i, &unit_vector(qd, b), i, &unit_vector(sd, k))?;
                    let got = evaluate(eps, &y);
                    let want = if b == k { F::one() } else { F::zero() };
                    if got != want {
                        return Ok(Some(format!(
                            "degree {i}: ε(α_{b}⌢x_{k}) = {got}, pairing expects {want}"
                        )));
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// α⌢i_*(x) = i_*((i^*α)⌢x) for an inclusion with induced matrices `i_r`
/// (source ladder), `i_p` (first leg) and `i_q` (second leg) per degree.
pub fn check_cap_naturality<F: Field>(
    dx: &AlgebraicDiagonal<F>,
    dsub: &AlgebraicDiagonal<F>,
    i_r: &[SparseMatrix<F>],
    i_p: &[SparseMatrix<F>],
    i_q: &[SparseMatrix<F>],
) -> AxiomReport {
    let name = "cap naturality";
    let run = || -> Result<Option<String>> {
        let top = dx
            .max_degree()
            .min(dsub.max_degree())
            .min(i_r.len().saturating_sub(1))
            .min(i_p.len().saturating_sub(1))
            .min(i_q.len().saturating_sub(1));
        for xj in 0..=top {
            let sd = dsub.source_dims[xj];
            for x in 0..sd {
                let ex = unit_vector(sd, x);
                let ix = push_coords(&i_r[xj], &ex)?;
                for ai in 0..=xj {
                    let qd = dx.q_dims.get(ai).copied().unwrap_or(0);
                    for al in 0..qd {
                        let ea = unit_vector(qd, al);
                        let lhs = cap(dx, ai, &ea, xj, &ix)?;
                        let pulled = pullback(&i_q[ai], &ea)?;
                        let small = cap(dsub, ai, &pulled, xj, &ex)?;
                        let rhs = push_coords(&i_p[xj - ai], &small)?;
                        if !vec_eq(&lhs, &rhs) {
                            return Ok(Some(format!(
                                "x = #{x} in degree {xj}, α = #{al} in degree {ai}: α⌢i_*x = {} but i_*((i^*α)⌢x) = {}",
                                fmt_vec(&lhs),
                                fmt_vec(&rhs)
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// ∂(α⌢x) = (−1)^{|α|} (i^*α)⌢∂x on a pair: `dxa` has legs (relative,
/// absolute), `da` lives on the subcomplex, `del_p` and `del_r` are the
/// connecting maps of the two ladders, `i_q` the inclusion on the cochain
/// ladder.
pub fn check_cap_boundary<F: Field>(
    dxa: &AlgebraicDiagonal<F>,
    da: &AlgebraicDiagonal<F>,
    del_p: &[SparseMatrix<F>],
    del_r: &[SparseMatrix<F>],
    i_q: &[SparseMatrix<F>],
) -> AxiomReport {
    let name = "cap against the connecting map";
    let run = || -> Result<Option<String>> {
        let top = dxa
            .max_degree()
            .min(del_p.len().saturating_sub(1))
            .min(del_r.len().saturating_sub(1))
            .min(da.max_degree() + 1)
            .min(i_q.len());
        for xj in 1..=top {
            let sd = dxa.source_dims[xj];
            for x in 0..sd {
                let ex = unit_vector(sd, x);
                let dxx = push_coords(&del_r[xj], &ex)?;
                for ai in 0..xj {
                    let qd = dxa.q_dims.get(ai).copied().unwrap_or(0);
                    for al in 0..qd {
                        let ea = unit_vector(qd, al);
                        let capped = cap(dxa, ai, &ea, xj, &ex)?;
                        let lhs = push_coords(&del_p[xj - ai], &capped)?;
                        let pulled = pullback(&i_q[ai], &ea)?;
                        let rhs0 = cap(da, ai, &pulled, xj - 1, &dxx)?;
                        let rhs = if ai % 2 == 1 { neg_vec(&rhs0) } else { rhs0 };
                        if !vec_eq(&lhs, &rhs) {
                            return Ok(Some(format!(
                                "x = #{x} in degree {xj}, α = #{al} in degree {ai}: ∂(α⌢x) = {} but ±(i^*α)⌢∂x = {}",
                                fmt_vec(&lhs),
                                fmt_vec(&rhs)
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// δ(α)⌢x = −(−1)^{|α|} i_*(α⌢∂x) on a pair: `dxa2` has legs (absolute,
/// relative), α lives on the subcomplex, δα = −(−1)^{|α|} α∘∂ is the
/// cohomology connecting class, `i_p` the inclusion on the output ladder.
pub fn check_coboundary_cap<F: Field>(
    dxa2: &AlgebraicDiagonal<F>,
    da: &AlgebraicDiagonal<F>,
    del_q: &[SparseMatrix<F>],
    del_r: &[SparseMatrix<F>],
    i_p: &[SparseMatrix<F>],
) -> AxiomReport {
    let name = "coboundary against cap";
    let run = || -> Result<Option<String>> {
        let top = dxa2
            .max_degree()
            .min(del_q.len().saturating_sub(1))
            .min(del_r.len().saturating_sub(1))
            .min(da.max_degree() + 1)
            .min(i_p.len());
        for xj in 1..=top {
            let sd = dxa2.source_dims[xj];
            for x in 0..sd {
                let ex = unit_vector(sd, x);
                let dxx = push_coords(&del_r[xj], &ex)?;
                for ak in 0..xj {
                    let am = da.q_dims.get(ak).copied().unwrap_or(0);
                    for al in 0..am {
                        let ea = unit_vector(am, al);
                        let mut dal = pullback(&del_q[ak + 1], &ea)?;
                        if ak % 2 == 0 {
                            dal = neg_vec(&dal);
                        }
                        let lhs = cap(dxa2, ak + 1, &dal, xj, &ex)?;
                        let inner = cap(da, ak, &ea, xj - 1, &dxx)?;
                        let rhs0 = push_coords(&i_p[xj - 1 - ak], &inner)?;
                        let rhs = if ak % 2 == 0 { neg_vec(&rhs0) } else { rhs0 };
                        if !vec_eq(&lhs, &rhs) {
                            return Ok(Some(format!(
                                "x = #{x} in degree {xj}, α = #{al} in degree {ak}: δ(α)⌢x = {} but −±i_*(α⌢∂x) = {}",
                                fmt_vec(&lhs),
                                fmt_vec(&rhs)
                            )));
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}

/// (α×β)⌢(x×y) = (−1)^{|β||x|} (α⌢x)×(β⌢y) for a product diagonal in
/// cross coordinates, against the factor diagonals it was assembled from.
pub fn check_cross_cap<F: Field>(
    dm: &AlgebraicDiagonal<F>,
    dx: &AlgebraicDiagonal<F>,
    dprod: &AlgebraicDiagonal<F>,
) -> AxiomReport {
    let name = "cross against cap";
    let run = || -> Result<Option<String>> {
        for dd in 0..=dprod.max_degree() {
            let slay = TensorLayout::new(dd, &dm.source_dims, &dx.source_dims);
            if slay.total != dprod.source_dims[dd] {
                return Ok(Some(format!(
                    "product source in degree {dd} is not the cross of the factor sources"
                )));
            }
            for sbl in &slay.blocks {
                let (xm, xx) = (sbl.x_degree, sbl.y_degree);
                for a0 in 0..sbl.x_dim {
                    for b0 in 0..sbl.y_dim {
                        let xi = unit_vector(slay.total, sbl.offset + a0 * sbl.y_dim + b0);
                        for am in 0..=dd {
                            for bx in 0..=dd - am {
                                let ma = dm.q_dims.get(am).copied().unwrap_or(0);
                                let xb = dx.q_dims.get(bx).copied().unwrap_or(0);
                                for al in 0..ma {
                                    for be in 0..xb {
                                        let gamma = cohomology_cross(
                                            am,
                                            &unit_vector(ma, al),
                                            &dm.q_dims,
                                            bx,
                                            &unit_vector(xb, be),
                                            &dx.q_dims,
                                        )?;
                                        let lhs = cap(dprod, am + bx, &gamma, dd, &xi)?;
                                        let out_lay = TensorLayout::new(
                                            dd - am - bx,
                                            &dm.p_dims,
                                            &dx.p_dims,
                                        );
                                        let mut rhs = vec![F::zero(); out_lay.total];
                                        if am <= xm && bx <= xx {
                                            let u = cap(
                                                dm,
                                                am,
                                                &unit_vector(ma, al),
                                                xm,
                                                &unit_vector(sbl.x_dim, a0),
                                            )?;
                                            let w = cap(
                                                dx,
                                                bx,
                                                &unit_vector(xb, be),
                                                xx,
                                                &unit_vector(sbl.y_dim, b0),
                                            )?;
                                            let neg = (bx * xm) % 2 == 1;
                                            if let Some(obl) = out_lay
                                                .blocks
                                                .iter()
                                                .find(|b| b.x_degree == xm - am)
                                            {
                                                for (ia, uv) in u.iter().enumerate() {
                                                    if uv.is_zero() {
                                                        continue;
                                                    }
                                                    for (ib, wv) in w.iter().enumerate() {
                                                        let v = uv.clone() * wv.clone();
                                                        rhs[obl.offset
                                                            + ia * obl.y_dim
                                                            + ib] =
                                                            if neg { -v } else { v };
                                                    }
                                                }
                                            }
                                        }
                                        if !vec_eq(&lhs, &rhs) {
                                            return Ok(Some(format!(
                                                "x×y at bidegree ({xm},{xx}) classes (#{a0},#{b0}), α degree {am} #{al}, β degree {bx} #{be}: product cap {} against factored {}",
                                                fmt_vec(&lhs),
                                                fmt_vec(&rhs)
                                            )));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(None)
    };
    verdict(name, run())
}
