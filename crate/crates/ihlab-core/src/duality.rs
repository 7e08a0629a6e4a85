//! Duality as explicit matrices: cap against the fundamental class,
//! checked degree by degree for full rank. Covers Poincaré duality on
//! closed spaces, the two Lefschetz maps on spaces with boundary, the
//! cup-product intersection pairing, and a Mayer–Vietoris ladder whose
//! columns are the duality maps of a collared cover.
//!
//! Everything here contracts the one tensor that matters, the diagonal of
//! the fundamental class, so only the top-degree Künneth solve is paid.

use crate::complex::{FilteredComplex, Strata, Subcomplex, Vertex};
use crate::diagprod::{
    cap, cup, cycle_diagonal, cycle_diagonal_aw, evaluate, neg_vec, pullback, push_coords,
    unit_vector, vec_eq, SelfProduct,
};
use crate::error::{Error, Result};
use crate::field::{Coeffs, Field, SparseMatrix};
use crate::fundamental::{fundamental_class, orient_over};
use crate::ichain::{dropped_boundary, induced_matrix, push_chain, Chain, IChainComplex};
use crate::perversity::Perversity;
use crate::spaces::Cover;

/// Cap against the fundamental class, one matrix per cohomology degree i:
/// coordinates of (−1)^{i·n} α ⌢ Γ in the degree n−i homology basis at the
/// dual perversity. `rel_in` marks the input cohomology as relative to the
/// boundary, `rel_out` the output homology; one of each gives the two
/// Lefschetz variants, neither gives Poincaré duality.
pub struct DualityMap<F: Field> {
    pub space: String,
    pub p_label: String,
    pub q_label: String,
    pub n: usize,
    pub rel_in: bool,
    pub rel_out: bool,
    /// input dimensions dim I_p̄H^i, i = 0..=n
    pub cohom_dims: Vec<usize>,
    /// output dimensions dim I^q̄H_j, j = 0..=n
    pub hom_dims: Vec<usize>,
    /// index i: the matrix I_p̄H^i → I^q̄H_{n−i}
    pub matrices: Vec<SparseMatrix<F>>,
}

impl<F: Field> DualityMap<F> {
    /// Image of a degree-i cohomology coordinate vector.
    pub fn apply(&self, i: usize, alpha: &[F]) -> Result<Vec<F>> {
        let m = self.matrices.get(i).ok_or_else(|| {
            Error::Degree(format!("duality map of {} has no degree {i}", self.space))
        })?;
        push_coords(m, alpha)
    }

    pub fn iso_in(&self, i: usize) -> bool {
        let m = &self.matrices[i];
        m.rows() == m.cols() && m.rank() == m.rows()
    }

    pub fn report(&self) -> DualityReport {
        let lines: Vec<DegreeLine> = (0..=self.n)
            .map(|i| {
                let m = &self.matrices[i];
                DegreeLine {
                    degree: i,
                    cohom_dim: m.cols(),
                    hom_dim: m.rows(),
                    rank: m.rank(),
                    iso: self.iso_in(i),
                }
            })
            .collect();
        DualityReport {
            space: self.space.clone(),
            p_label: self.p_label.clone(),
            q_label: self.q_label.clone(),
            rel_in: self.rel_in,
            rel_out: self.rel_out,
            ok: lines.iter().all(|l| l.iso),
            lines,
        }
    }
}

#[derive(Debug, Clone)]
pub struct DegreeLine {
    pub degree: usize,
    pub cohom_dim: usize,
    pub hom_dim: usize,
    pub rank: usize,
    pub iso: bool,
}

#[derive(Debug, Clone)]
pub struct DualityReport {
    pub space: String,
    pub p_label: String,
    pub q_label: String,
    pub rel_in: bool,
    pub rel_out: bool,
    pub lines: Vec<DegreeLine>,
    pub ok: bool,
}

/// The shared core: the diagonal of Γ with the output perversity on the
/// first leg and the input on the second, contracted against each unit
/// functional. Trivially filtered spaces take the front/back route and
/// never build their square.
fn cap_duality<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    sp: Option<&SelfProduct>,
    p: &Perversity,
    q: &Perversity,
    rel_out: Option<&Subcomplex>,
    rel_in: Option<&Subcomplex>,
    coeffs: &Coeffs<F>,
    gamma: &Chain<F>,
) -> Result<DualityMap<F>> {
    let n = x.dim();
    let d = match sp {
        Some(sp) => {
            let zero = Perversity::zero(&xs.table);
            cycle_diagonal(x, xs, sp, &zero, q, p, rel_out, rel_in, coeffs, gamma)?
        }
        None => cycle_diagonal_aw(x, xs, rel_out, rel_in, coeffs, gamma)?,
    };
    let one = vec![coeffs.of_int(1)];
    let mut matrices = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let cd = d.q_dims.get(i).copied().unwrap_or(0);
        let rows = d.p_dims.get(n - i).copied().unwrap_or(0);
        let neg = (i * n) % 2 == 1;
        let mut trips = Vec::new();
        for k in 0..cd {
            let v = cap(&d, i, &unit_vector(cd, k), n, &one)?;
            for (r, c) in v.into_iter().enumerate() {
                if !c.is_zero() {
                    trips.push((r as u32, k as u32, if neg { -c } else { c }));
                }
            }
        }
        matrices.push(SparseMatrix::new(rows, cd, trips)?);
    }
    Ok(DualityMap {
        space: x.name().to_string(),
        p_label: p.label(),
        q_label: q.label(),
        n,
        rel_in: rel_in.is_some(),
        rel_out: rel_out.is_some(),
        cohom_dims: (0..=n).map(|i| d.q_dims.get(i).copied().unwrap_or(0)).collect(),
        hom_dims: (0..=n).map(|j| d.p_dims.get(j).copied().unwrap_or(0)).collect(),
        matrices,
    })
}

/// Poincaré duality I_p̄H^i ≅ I^q̄H_{n−i} at the dual pair q̄ = t̄ − p̄ on a
/// closed oriented space. Every matrix must come out square of full rank.
pub fn verify_duality<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    p: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<DualityMap<F>> {
    if x.has_boundary() {
        return Err(Error::InvalidComplex(format!(
            "{} has a boundary, duality there takes the Lefschetz form",
            x.name()
        )));
    }
    let o = orient_over(x, coeffs)?;
    let gamma = fundamental_class(x, xs, &o, coeffs, false)?;
    let q = p.dual();
    if x.is_trivially_filtered() {
        return cap_duality(x, xs, None, p, &q, None, None, coeffs, &gamma.cycle);
    }
    let sp = SelfProduct::new(x, xs)?;
    cap_duality(x, xs, Some(&sp), p, &q, None, None, coeffs, &gamma.cycle)
}

/// The two Lefschetz duality maps of a compact oriented space with
/// boundary, both capped against the relative fundamental class: relative
/// cohomology to absolute homology, then absolute cohomology to relative
/// homology.
pub fn lefschetz_matrices<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    p: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<(DualityMap<F>, DualityMap<F>)> {
    if !x.has_boundary() {
        return Err(Error::InvalidComplex(format!(
            "{} is closed, duality there has one absolute form",
            x.name()
        )));
    }
    let bd = x.boundary_subcomplex();
    let o = orient_over(x, coeffs)?;
    let gamma = fundamental_class(x, xs, &o, coeffs, true)?;
    let q = p.dual();
    let sp = if x.is_trivially_filtered() { None } else { Some(SelfProduct::new(x, xs)?) };
    let rel_to_abs =
        cap_duality(x, xs, sp.as_ref(), p, &q, None, Some(&bd), coeffs, &gamma.cycle)?;
    let abs_to_rel =
        cap_duality(x, xs, sp.as_ref(), p, &q, Some(&bd), None, coeffs, &gamma.cycle)?;
    Ok((rel_to_abs, abs_to_rel))
}

/// The pairing I_p̄H^i ⊗ I_q̄H^{n−i} → F evaluating the cup product on the
/// fundamental class, q̄ dual to p̄. Rows index the p̄ factor; full rank
/// means nondegenerate.
pub fn cup_pairing<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    p: &Perversity,
    i: usize,
    coeffs: &Coeffs<F>,
) -> Result<SparseMatrix<F>> {
    if x.has_boundary() {
        return Err(Error::InvalidComplex(format!(
            "{} has a boundary, the pairing needs a closed space",
            x.name()
        )));
    }
    let n = x.dim();
    if i > n {
        return Err(Error::Degree(format!("pairing degree {i} on a dimension {n} space")));
    }
    let o = orient_over(x, coeffs)?;
    let gamma = fundamental_class(x, xs, &o, coeffs, false)?;
    let q = p.dual();
    let d = if x.is_trivially_filtered() {
        cycle_diagonal_aw(x, xs, None, None, coeffs, &gamma.cycle)?
    } else {
        let sp = SelfProduct::new(x, xs)?;
        let zero = Perversity::zero(&xs.table);
        cycle_diagonal(x, xs, &sp, &zero, p, &q, None, None, coeffs, &gamma.cycle)?
    };
    let j = n - i;
    let rows = d.p_dims.get(i).copied().unwrap_or(0);
    let cols = d.q_dims.get(j).copied().unwrap_or(0);
    let one = vec![coeffs.of_int(1)];
    let mut trips = Vec::new();
    for a in 0..rows {
        let ea = unit_vector(rows, a);
        for b in 0..cols {
            let v = evaluate(&cup(&d, i, &ea, j, &unit_vector(cols, b))?, &one);
            if !v.is_zero() {
                trips.push((a as u32, b as u32, v));
            }
        }
    }
    SparseMatrix::new(rows, cols, trips)
}

/// One square of the Mayer–Vietoris duality ladder. The recorded sign
/// makes the two routes agree on every basis class of the degree; `None`
/// when both routes vanish identically.
#[derive(Debug, Clone)]
pub struct MvSquare {
    pub name: String,
    pub degree: usize,
    pub sign: Option<i8>,
    pub ok: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct MvLadderReport {
    pub space: String,
    pub p_label: String,
    pub q_label: String,
    pub squares: Vec<MvSquare>,
    pub ok: bool,
}

fn square_sign<F: Field>(
    pairs: &[(Vec<F>, Vec<F>)],
) -> std::result::Result<Option<i8>, String> {
    let mut sign: Option<i8> = None;
    for (k, (lhs, rhs)) in pairs.iter().enumerate() {
        if lhs.iter().all(|c| c.is_zero()) && rhs.iter().all(|c| c.is_zero()) {
            continue;
        }
        let here = if vec_eq(lhs, rhs) {
            1
        } else if vec_eq(lhs, &neg_vec(rhs)) {
            -1
        } else {
            return Err(format!("class {k}: the two routes differ beyond a sign"));
        };
        match sign {
            None => sign = Some(here),
            Some(s) if s == here => {}
            Some(s) => {
                return Err(format!("class {k}: sign {here} against {s} earlier in the degree"))
            }
        }
    }
    Ok(sign)
}

fn square<F: Field>(name: &str, degree: usize, pairs: &[(Vec<F>, Vec<F>)]) -> MvSquare {
    match square_sign(pairs) {
        Ok(sign) => MvSquare {
            name: name.to_string(),
            degree,
            sign,
            ok: true,
            detail: String::new(),
        },
        Err(detail) => MvSquare { name: name.to_string(), degree, sign: None, ok: false, detail },
    }
}

/// A chain carried into a labeled subspace-as-own-complex, dropping the
/// terms that leave it: the chain map onto the quotient by the frontier.
fn restrict_chain<F: Field>(
    src: &FilteredComplex,
    dst: &FilteredComplex,
    z: &Chain<F>,
) -> Result<Chain<F>> {
    let keep: Vec<(u32, F)> = z
        .entries()
        .iter()
        .filter(|(k, _)| {
            src.simplex(z.degree, *k)
                .iter()
                .all(|v| dst.vertex_index(src.vertex_label(*v)).is_some())
        })
        .cloned()
        .collect();
    push_chain(src, dst, |l| l.to_string(), &Chain::from_entries(z.degree, keep))
}

/// Tests whether a simplex of `src` is present in `dst` under the label
/// embedding.
fn lands_in(src: &FilteredComplex, dst: &FilteredComplex, d: usize, k: u32) -> bool {
    let verts: Option<Vec<Vertex>> =
        src.simplex(d, k).iter().map(|w| dst.vertex_index(src.vertex_label(*w))).collect();
    match verts {
        Some(mut t) => {
            t.sort_unstable();
            dst.index_of(&t).is_some()
        }
        None => false,
    }
}

/// Terms of a chain in the overlap supported on the side of its frontier
/// that faces the piece `u`: simplices with a coface inside `u` that
/// leaves the overlap. In a collared cover the frontier splits cleanly
/// into a `u`-facing and a `v`-facing side.
fn facing_part<F: Field>(a: &FilteredComplex, u: &FilteredComplex, z: &Chain<F>) -> Chain<F> {
    let d = z.degree;
    let mut cofaces: Vec<&[Vertex]> = Vec::new();
    if d + 1 <= u.max_dim() {
        for k in 0..u.count(d + 1) {
            let s = u.simplex(d + 1, k as u32);
            if s.iter().any(|w| a.vertex_index(u.vertex_label(*w)).is_none()) {
                cofaces.push(s);
            }
        }
    }
    let entries: Vec<(u32, F)> = z
        .entries()
        .iter()
        .filter(|(k, _)| {
            let t: Option<Vec<Vertex>> = a
                .simplex(d, *k)
                .iter()
                .map(|w| u.vertex_index(a.vertex_label(*w)))
                .collect();
            match t {
                Some(t) => cofaces.iter().any(|c| t.iter().all(|w| c.contains(w))),
                None => false,
            }
        })
        .cloned()
        .collect();
    Chain::from_entries(d, entries)
}

/// Collapsed ladder of a cover whose second piece is empty: the first
/// piece is the whole space and both rows reduce to identity maps.
fn degenerate_ladder<F: Field>(
    cov: &Cover,
    p: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<MvLadderReport> {
    let (x, u, a) = (&cov.x, &cov.u, &cov.a);
    if a.total_simplices() != 0 {
        return Err(Error::InvalidComplex("empty piece with a nonempty overlap".into()));
    }
    let n = x.dim();
    let xs = x.strata();
    let us = u.strata();
    let px = p.clone();
    let pu = p.restricted_to(&us.table)?;
    let (qx, qu) = (px.dual(), pu.dual());
    let gx = fundamental_class(x, &xs, &orient_over(x, coeffs)?, coeffs, false)?;
    let gu = fundamental_class(u, &us, &orient_over(u, coeffs)?, coeffs, false)?;
    let spx = SelfProduct::new(x, &xs)?;
    let dx = cap_duality(x, &xs, Some(&spx), &px, &qx, None, None, coeffs, &gx.cycle)?;
    let spu = SelfProduct::new(u, &us)?;
    let du = cap_duality(u, &us, Some(&spu), &pu, &qu, None, None, coeffs, &gu.cycle)?;
    let ic_x_p = IChainComplex::new(x, &xs, px.clone(), coeffs.clone(), None)?;
    let ic_u_p = IChainComplex::new(u, &us, pu.clone(), coeffs.clone(), None)?;
    let ic_x_q = IChainComplex::new(x, &xs, qx.clone(), coeffs.clone(), None)?;
    let ic_u_q = IChainComplex::new(u, &us, qu.clone(), coeffs.clone(), None)?;
    let h_x_p = ic_x_p.homology_all()?;
    let h_u_p = ic_u_p.homology_all()?;
    let h_x_q = ic_x_q.homology_all()?;
    let h_u_q = ic_u_q.homology_all()?;
    let id = |l: &str| l.to_string();
    let mut squares = Vec::new();
    for i in 0..=n {
        let r_xu = induced_matrix(&h_x_p[i], &ic_u_p, &h_u_p[i], |z| restrict_chain(x, u, z))?;
        let i_ux =
            induced_matrix(&h_u_q[n - i], &ic_x_q, &h_x_q[n - i], |z| push_chain(u, x, id, z))?;
        let pairs: Vec<(Vec<F>, Vec<F>)> = (0..h_u_p[i].dim())
            .map(|k| {
                let alpha = unit_vector::<F>(h_u_p[i].dim(), k);
                Ok((
                    dx.apply(i, &pullback(&r_xu, &alpha)?)?,
                    push_coords(&i_ux, &du.apply(i, &alpha)?)?,
                ))
            })
            .collect::<Result<_>>()?;
        squares.push(square("first piece into the whole", i, &pairs));
    }
    let ok = squares.iter().all(|s| s.ok);
    Ok(MvLadderReport {
        space: x.name().to_string(),
        p_label: px.label(),
        q_label: qx.label(),
        squares,
        ok,
    })
}

/// The Mayer–Vietoris duality ladder of a collared cover, at p̄ against its
/// dual. Top row: relative cohomology of the pieces over their free
/// frontiers with extension-by-zero maps, the compact-supports sequence.
/// Bottom row: the homology sequence of the cover. Columns cap against the
/// fundamental classes. Every square must commute up to one sign per
/// degree, and the signs are recorded.
pub fn mayer_vietoris_duality_check<F: Field>(
    cov: &Cover,
    p: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<MvLadderReport> {
    let (x, u, v, a) = (&cov.x, &cov.u, &cov.v, &cov.a);
    let n = x.dim();
    let xs = x.strata();
    if v.total_simplices() == 0 {
        return degenerate_ladder(cov, p, coeffs);
    }
    for d in 0..=x.max_dim() {
        for k in 0..x.count(d) {
            if !lands_in(x, u, d, k as u32) && !lands_in(x, v, d, k as u32) {
                return Err(Error::InvalidComplex(format!(
                    "cover of {} does not span: a {d}-simplex lies in neither piece",
                    x.name()
                )));
            }
        }
    }
    let us = u.strata();
    let vs = v.strata();
    let os = a.strata();
    let px = p.clone();
    let pu = p.restricted_to(&us.table)?;
    let pv = p.restricted_to(&vs.table)?;
    let pa = p.restricted_to(&os.table)?;
    let (qx, qu, qv, qa) = (px.dual(), pu.dual(), pv.dual(), pa.dual());
    let bu = u.boundary_subcomplex();
    let bv = v.boundary_subcomplex();
    let ba = a.boundary_subcomplex();

    // duality columns; the piece squares are built one at a time so their
    // product complexes are freed before the next
    let gx = fundamental_class(x, &xs, &orient_over(x, coeffs)?, coeffs, false)?;
    let gu = fundamental_class(u, &us, &orient_over(u, coeffs)?, coeffs, true)?;
    let gv = fundamental_class(v, &vs, &orient_over(v, coeffs)?, coeffs, true)?;
    let ga = fundamental_class(a, &os, &orient_over(a, coeffs)?, coeffs, true)?;
    let ((dx, du), (dv, da)) = rayon::join(
        || {
            rayon::join(
                || -> Result<DualityMap<F>> {
                    let sp = SelfProduct::new(x, &xs)?;
                    cap_duality(x, &xs, Some(&sp), &px, &qx, None, None, coeffs, &gx.cycle)
                },
                || -> Result<DualityMap<F>> {
                    let sp = SelfProduct::new(u, &us)?;
                    cap_duality(u, &us, Some(&sp), &pu, &qu, None, Some(&bu), coeffs, &gu.cycle)
                },
            )
        },
        || {
            rayon::join(
                || -> Result<DualityMap<F>> {
                    let sp = SelfProduct::new(v, &vs)?;
                    cap_duality(v, &vs, Some(&sp), &pv, &qv, None, Some(&bv), coeffs, &gv.cycle)
                },
                || cap_duality(a, &os, None, &pa, &qa, None, Some(&ba), coeffs, &ga.cycle),
            )
        },
    );
    let (dx, du, dv, da) = (dx?, du?, dv?, da?);

    // row ladders over the same bases the duality maps use
    let ic_x_p = IChainComplex::new(x, &xs, px.clone(), coeffs.clone(), None)?;
    let ic_u_p = IChainComplex::new_unrestricted_rel(u, &us, pu.clone(), coeffs.clone(), Some(&bu))?;
    let ic_v_p = IChainComplex::new_unrestricted_rel(v, &vs, pv.clone(), coeffs.clone(), Some(&bv))?;
    let ic_a_p = IChainComplex::new_unrestricted_rel(a, &os, pa.clone(), coeffs.clone(), Some(&ba))?;
    let ic_x_q = IChainComplex::new(x, &xs, qx.clone(), coeffs.clone(), None)?;
    let ic_u_q = IChainComplex::new(u, &us, qu.clone(), coeffs.clone(), None)?;
    let ic_v_q = IChainComplex::new(v, &vs, qv.clone(), coeffs.clone(), None)?;
    let ic_a_q = IChainComplex::new(a, &os, qa.clone(), coeffs.clone(), None)?;
    let h_x_p = ic_x_p.homology_all()?;
    let h_u_p = ic_u_p.homology_all()?;
    let h_v_p = ic_v_p.homology_all()?;
    let h_a_p = ic_a_p.homology_all()?;
    let h_x_q = ic_x_q.homology_all()?;
    let h_u_q = ic_u_q.homology_all()?;
    let h_v_q = ic_v_q.homology_all()?;
    let h_a_q = ic_a_q.homology_all()?;
    for i in 0..=n {
        debug_assert_eq!(h_x_p[i].dim(), dx.cohom_dims[i]);
        debug_assert_eq!(h_u_p[i].dim(), du.cohom_dims[i]);
        debug_assert_eq!(h_a_p[i].dim(), da.cohom_dims[i]);
        debug_assert_eq!(h_x_q[i].dim(), dx.hom_dims[i]);
        debug_assert_eq!(h_a_q[i].dim(), da.hom_dims[i]);
    }

    let id = |l: &str| l.to_string();
    let mut r_au = Vec::with_capacity(n + 1);
    let mut r_av = Vec::with_capacity(n + 1);
    let mut r_xu = Vec::with_capacity(n + 1);
    let mut r_xv = Vec::with_capacity(n + 1);
    let mut i_au = Vec::with_capacity(n + 1);
    let mut i_av = Vec::with_capacity(n + 1);
    let mut i_ux = Vec::with_capacity(n + 1);
    let mut i_vx = Vec::with_capacity(n + 1);
    for i in 0..=n {
        r_au.push(induced_matrix(&h_u_p[i], &ic_a_p, &h_a_p[i], |z| restrict_chain(u, a, z))?);
        r_av.push(induced_matrix(&h_v_p[i], &ic_a_p, &h_a_p[i], |z| restrict_chain(v, a, z))?);
        r_xu.push(induced_matrix(&h_x_p[i], &ic_u_p, &h_u_p[i], |z| restrict_chain(x, u, z))?);
        r_xv.push(induced_matrix(&h_x_p[i], &ic_v_p, &h_v_p[i], |z| restrict_chain(x, v, z))?);
        i_au.push(induced_matrix(&h_a_q[i], &ic_u_q, &h_u_q[i], |z| push_chain(a, u, id, z))?);
        i_av.push(induced_matrix(&h_a_q[i], &ic_v_q, &h_v_q[i], |z| push_chain(a, v, id, z))?);
        i_ux.push(induced_matrix(&h_u_q[i], &ic_x_q, &h_x_q[i], |z| push_chain(u, x, id, z))?);
        i_vx.push(induced_matrix(&h_v_q[i], &ic_x_q, &h_x_q[i], |z| push_chain(v, x, id, z))?);
    }
    // top connecting: a relative cycle of the collar lifts into the first
    // piece, and the part of its boundary facing that piece is a cycle of x
    let mut t_conn = vec![SparseMatrix::new(0, h_a_p[0].dim(), Vec::new())?];
    for i in 1..=n {
        t_conn.push(induced_matrix(&h_a_p[i], &ic_x_p, &h_x_p[i - 1], |z| {
            push_chain(a, x, id, &facing_part(a, u, &dropped_boundary(a, z)))
        })?);
    }
    // bottom connecting: split a cycle of x at the cover, the boundary of
    // the half outside v lands in the collar
    let mut d_mv = vec![SparseMatrix::new(0, h_x_q[0].dim(), Vec::new())?];
    for j in 1..=n {
        d_mv.push(induced_matrix(&h_x_q[j], &ic_a_q, &h_a_q[j - 1], |z| {
            let zu: Vec<(u32, F)> = z
                .entries()
                .iter()
                .filter(|(k, _)| !lands_in(x, v, z.degree, *k))
                .cloned()
                .collect();
            let bd = dropped_boundary(x, &Chain::from_entries(z.degree, zu));
            push_chain(x, a, id, &bd)
        })?);
    }

    let mut squares = Vec::new();
    for i in 0..=n {
        let mut push4 = |name: &str,
                         dim: usize,
                         lhs: &dyn Fn(&[F]) -> Result<Vec<F>>,
                         rhs: &dyn Fn(&[F]) -> Result<Vec<F>>|
         -> Result<()> {
            let pairs: Vec<(Vec<F>, Vec<F>)> = (0..dim)
                .map(|k| {
                    let alpha = unit_vector::<F>(dim, k);
                    Ok((lhs(&alpha)?, rhs(&alpha)?))
                })
                .collect::<Result<_>>()?;
            squares.push(square(name, i, &pairs));
            Ok(())
        };
        push4(
            "overlap into the first piece",
            h_a_p[i].dim(),
            &|alpha| du.apply(i, &pullback(&r_au[i], alpha)?),
            &|alpha| push_coords(&i_au[n - i], &da.apply(i, alpha)?),
        )?;
        push4(
            "overlap into the second piece",
            h_a_p[i].dim(),
            &|alpha| dv.apply(i, &pullback(&r_av[i], alpha)?),
            &|alpha| push_coords(&i_av[n - i], &da.apply(i, alpha)?),
        )?;
        push4(
            "first piece into the whole",
            h_u_p[i].dim(),
            &|alpha| dx.apply(i, &pullback(&r_xu[i], alpha)?),
            &|alpha| push_coords(&i_ux[n - i], &du.apply(i, alpha)?),
        )?;
        push4(
            "second piece into the whole",
            h_v_p[i].dim(),
            &|alpha| dx.apply(i, &pullback(&r_xv[i], alpha)?),
            &|alpha| push_coords(&i_vx[n - i], &dv.apply(i, alpha)?),
        )?;
        if i < n {
            push4(
                "connecting",
                h_x_p[i].dim(),
                &|alpha| da.apply(i + 1, &pullback(&t_conn[i + 1], alpha)?),
                &|alpha| push_coords(&d_mv[n - i], &dx.apply(i, alpha)?),
            )?;
        }
    }
    let ok = squares.iter().all(|s| s.ok);
    Ok(MvLadderReport { space: x.name().to_string(), p_label: px.label(), q_label: qx.label(), squares, ok })
}
