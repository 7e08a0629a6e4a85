//! Orientations and fundamental cycles. The regular part of a compact
//! pseudomanifold is oriented simplex by simplex; the signed sum of top
//! simplices is then a 0̄-allowable cycle (relative to the boundary when one
//! is present) whose class generates the top intersection homology. Local
//! restrictions, the regular-stratum decomposition of the top group, the
//! boundary of a relative class and products of classes are checked here.

use crate::complex::{product, FilteredComplex, Strata, Subcomplex, Vertex};
use crate::diagprod::AxiomReport;
use crate::error::{Error, Result};
use crate::field::{Coeffs, Field, SparseMatrix};
use crate::ichain::{dropped_boundary, push_chain, Chain, IChainComplex};
use crate::kunneth::cross_chain;
use crate::perversity::Perversity;
use std::collections::VecDeque;

/// Signs of the live top simplices relative to their sorted vertex order;
/// dead top simplices stay 0. The lexicographically least simplex of each
/// component is +1.
pub struct Orientation {
    pub signs: Vec<i8>,
    pub components: usize,
}

fn coface_table(x: &FilteredComplex, n: usize) -> Result<Vec<Vec<(u32, usize)>>> {
    let mut cof: Vec<Vec<(u32, usize)>> = vec![Vec::new(); x.count(n - 1)];
    for k in 0..x.count(n) {
        if !x.is_live(n, k as u32) {
            continue;
        }
        for (j, f) in x.facets(n, k as u32).into_iter().enumerate() {
            if x.is_live(n - 1, f) {
                cof[f as usize].push((k as u32, j));
            }
        }
    }
    for (f, cs) in cof.iter().enumerate() {
        if cs.is_empty() {
            continue;
        }
        let want = if x.is_boundary_marked(n - 1, f as u32) { 1 } else { 2 };
        if cs.len() != want {
            return Err(Error::InvalidComplex(format!(
                "face {} has {} live cofaces, a pseudomanifold needs {want}",
                x.labels_of(n - 1, f as u32),
                cs.len()
            )));
        }
    }
    Ok(cof)
}

fn flip_cycle(
    x: &FilteredComplex,
    n: usize,
    parent: &[Option<(u32, u32)>],
    a: u32,
    b: u32,
    via: u32,
) -> Vec<String> {
    let path = |start: u32| {
        let mut out = vec![start];
        let mut k = start;
        while let Some((p, _)) = parent[k as usize] {
            out.push(p);
            k = p;
        }
        out
    };
    let pa = path(a);
    let pb = path(b);
    let (mut ia, mut ib) = (pa.len(), pb.len());
    while ia > 0 && ib > 0 && pa[ia - 1] == pb[ib - 1] {
        ia -= 1;
        ib -= 1;
    }
    let mut cyc: Vec<String> = Vec::new();
    for k in &pa[..ia] {
        cyc.push(x.labels_of(n, *k));
    }
    cyc.push(x.labels_of(n, pa[ia]));
    for k in pb[..ib].iter().rev() {
        cyc.push(x.labels_of(n, *k));
    }
    cyc.push(format!("closes across {}", x.labels_of(n - 1, via)));
    cyc
}

fn propagate(x: &FilteredComplex, strict: bool) -> Result<Orientation> {
    let n = x.dim();
    if x.max_dim() < n {
        return Err(Error::InvalidComplex(format!(
            "{} has no simplices of its dimension {n}",
            x.name()
        )));
    }
    let nt = x.count(n);
    let mut signs = vec![0i8; nt];
    let mut components = 0;
    if n == 0 {
        for k in 0..nt {
            if x.is_live(0, k as u32) {
                signs[k] = 1;
                components += 1;
            }
        }
        return Ok(Orientation { signs, components });
    }
    let cof = coface_table(x, n)?;
    let mut parent: Vec<Option<(u32, u32)>> = vec![None; nt];
    for seed in 0..nt {
        if !x.is_live(n, seed as u32) || signs[seed] != 0 {
            continue;
        }
        components += 1;
        signs[seed] = 1;
        let mut queue = VecDeque::from([seed as u32]);
        while let Some(k) = queue.pop_front() {
            for (j, f) in x.facets(n, k).into_iter().enumerate() {
                if !x.is_live(n - 1, f) || x.is_boundary_marked(n - 1, f) {
                    continue;
                }
                for (k2, j2) in &cof[f as usize] {
                    if *k2 == k {
                        continue;
                    }
                    let flip = if (j + j2) % 2 == 0 { -1 } else { 1 };
                    let req = signs[k as usize] * flip;
                    if signs[*k2 as usize] == 0 {
                        signs[*k2 as usize] = req;
                        parent[*k2 as usize] = Some((k, f));
                        queue.push_back(*k2);
                    } else if strict && signs[*k2 as usize] != req {
                        return Err(Error::NotOrientable(flip_cycle(
                            x, n, &parent, k, *k2, f,
                        )));
                    }
                }
            }
        }
    }
    Ok(Orientation { signs, components })
}

/// Orientation by greedy propagation across shared live faces. Faces inside
/// the singular set never constrain the propagation; faces on the boundary
/// have a single coface and constrain nothing.
pub fn orient(x: &FilteredComplex) -> Result<Orientation> {
    propagate(x, true)
}

/// Over characteristic two every pseudomanifold is oriented by the all-ones
/// assignment; otherwise same as `orient`.
pub fn orient_over<F: Field>(x: &FilteredComplex, coeffs: &Coeffs<F>) -> Result<Orientation> {
    if coeffs.one.field_tag() == Some(2) {
        let mut o = propagate(x, false)?;
        for s in o.signs.iter_mut() {
            if *s != 0 {
                *s = 1;
            }
        }
        return Ok(o);
    }
    propagate(x, true)
}

/// The signed sum of live top simplices with its class coordinates in the
/// top intersection homology at the zero perversity.
pub struct FundamentalClass<F: Field> {
    pub cycle: Chain<F>,
    pub coords: Vec<F>,
    pub group_dim: usize,
    pub relative: bool,
}

pub fn fundamental_class<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    o: &Orientation,
    coeffs: &Coeffs<F>,
    relative_to_boundary: bool,
) -> Result<FundamentalClass<F>> {
    if x.has_boundary() && !relative_to_boundary {
        return Err(Error::InvalidComplex(format!(
            "{} has a boundary, the fundamental class lives in the relative group",
            x.name()
        )));
    }
    if relative_to_boundary && !x.has_boundary() {
        return Err(Error::InvalidComplex(format!("{} has no boundary", x.name())));
    }
    let n = x.dim();
    let mut entries = Vec::new();
    for k in 0..x.count(n) {
        let live = x.is_live(n, k as u32);
        if live != (o.signs[k] != 0) {
            return Err(Error::InvalidComplex(format!(
                "orientation does not cover {}",
                x.labels_of(n, k as u32)
            )));
        }
        if live {
            entries.push((k as u32, coeffs.of_int(o.signs[k] as i64)));
        }
    }
    let cycle = Chain::from_entries(n, entries);
    let zero = Perversity::zero(&xs.table);
    let rel = if relative_to_boundary { Some(x.boundary_subcomplex()) } else { None };
    let ic = IChainComplex::new_unrestricted_rel(x, xs, zero, coeffs.clone(), rel.as_ref())?;
    let h = ic.homology(n)?;
    let coords = ic.class_of(&h, &cycle)?;
    if coords.iter().all(|c| c.is_zero()) {
        return Err(Error::InvalidComplex(format!(
            "the fundamental cycle of {} bounds",
            x.name()
        )));
    }
    Ok(FundamentalClass { cycle, coords, group_dim: h.dim(), relative: relative_to_boundary })
}

/// Restriction of a class to the local group at a vertex, the top homology
/// of the pair (X, X − star v).
pub struct LocalClassReport<F: Field> {
    pub vertex: String,
    pub group_dim: usize,
    pub image: Vec<F>,
    pub ok: bool,
}

pub fn local_class_check<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    gamma: &FundamentalClass<F>,
    v: Vertex,
    coeffs: &Coeffs<F>,
) -> Result<LocalClassReport<F>> {
    let del = Subcomplex::deleted_star(x, v);
    let zero = Perversity::zero(&xs.table);
    let ic = IChainComplex::new_unrestricted_rel(x, xs, zero, coeffs.clone(), Some(&del))?;
    let h = ic.homology(x.dim())?;
    let image = ic.class_of(&h, &gamma.cycle)?;
    let ok = image.iter().any(|c| !c.is_zero());
    Ok(LocalClassReport { vertex: x.vertex_label(v).to_string(), group_dim: h.dim(), image, ok })
}

/// Top homology split over the closures of the regular strata: each closure
/// carries its own group, and pushing those classes into X must hit a basis.
pub struct DecompositionReport {
    pub sheets: Vec<String>,
    pub sheet_dims: Vec<usize>,
    pub top_dim: usize,
    pub sum_is_iso: bool,
    pub vanishes_above: bool,
}

pub fn regular_stratum_decomposition<F: Field>(
    x: &FilteredComplex,
    xs: &Strata,
    coeffs: &Coeffs<F>,
) -> Result<DecompositionReport> {
    let n = x.dim();
    let zero = Perversity::zero(&xs.table);
    let ic = IChainComplex::new_unrestricted_rel(x, xs, zero, coeffs.clone(), None)?;
    let h = ic.homology(n)?;
    let mut vanishes_above = true;
    for d in n + 1..=x.max_dim() {
        if ic.homology(d)?.dim() != 0 {
            vanishes_above = false;
        }
    }
    let mut sheets = Vec::new();
    let mut sheet_dims = Vec::new();
    let mut trips = Vec::new();
    let mut col = 0u32;
    for (i, info) in xs.full.iter().enumerate() {
        if info.codim != 0 {
            continue;
        }
        let mut seeds = Vec::new();
        for d in 0..=x.max_dim() {
            for k in 0..x.count(d) {
                if xs.of_simplex[d][k] == i as u32 {
                    seeds.push((d, k as u32));
                }
            }
        }
        let sub = Subcomplex::closure_of(x, &seeds);
        let z = x.induced(&sub, &format!("sheet{}:{}", sheets.len(), x.name()))?;
        let zs = z.strata();
        let icz = IChainComplex::new_unrestricted_rel(
            &z,
            &zs,
            Perversity::zero(&zs.table),
            coeffs.clone(),
            None,
        )?;
        let hz = icz.homology(n)?;
        sheets.push(info.name.clone());
        sheet_dims.push(hz.dim());
        for c in 0..hz.dim() {
            let pushed = push_chain(&z, x, |l| l.to_string(), hz.rep(c))?;
            for (r, v) in ic.class_of(&h, &pushed)?.into_iter().enumerate() {
                if !v.is_zero() {
                    trips.push((r as u32, col, v));
                }
            }
            col += 1;
        }
    }
    let m = SparseMatrix::new(h.dim(), col as usize, trips)?;
    let sum_is_iso = h.dim() == col as usize && m.rank() == h.dim();
    Ok(DecompositionReport {
        sheets,
        sheet_dims,
        top_dim: h.dim(),
        sum_is_iso,
        vanishes_above,
    })
}

/// The connecting image of a relative fundamental class: its boundary chain
/// transferred to the boundary complex, with class coordinates there.
pub fn boundary_of_fundamental<F: Field>(
    x: &FilteredComplex,
    gamma: &FundamentalClass<F>,
    coeffs: &Coeffs<F>,
) -> Result<(FilteredComplex, Chain<F>, Vec<F>)> {
    if !gamma.relative {
        return Err(Error::InvalidComplex(
            "the class is not relative to a boundary".into(),
        ));
    }
    let bc = x.boundary_complex()?;
    let bd = dropped_boundary(x, &gamma.cycle);
    let t = push_chain(x, &bc, |l| l.to_string(), &bd)?;
    let bcs = bc.strata();
    let icb = IChainComplex::new_unrestricted_rel(
        &bc,
        &bcs,
        Perversity::zero(&bcs.table),
        coeffs.clone(),
        None,
    )?;
    let hb = icb.homology(bc.dim())?;
    let coords = icb.class_of(&hb, &t)?;
    Ok((bc, t, coords))
}

/// Cross product of two fundamental cycles against the fundamental cycle of
/// the product: equal up to one global sign on a connected product.
pub fn product_of_classes_check<F: Field>(
    m: &FilteredComplex,
    x: &FilteredComplex,
    coeffs: &Coeffs<F>,
) -> Result<AxiomReport> {
    let name = "product of fundamental classes";
    let ms = m.strata();
    let xs = x.strata();
    let om = orient_over(m, coeffs)?;
    let ox = orient_over(x, coeffs)?;
    let gm = fundamental_class(m, &ms, &om, coeffs, false)?;
    let gx = fundamental_class(x, &xs, &ox, coeffs, false)?;
    let pr = product(m, x);
    let pc = &pr.complex;
    let pcs = pc.strata();
    let op = orient_over(pc, coeffs)?;
    let gp = fundamental_class(pc, &pcs, &op, coeffs, false)?;
    let cross = cross_chain(m, x, &pr, &gm.cycle, &gx.cycle)?;
    if cross.entries().len() != gp.cycle.entries().len() {
        return Ok(AxiomReport::fail(
            name,
            format!(
                "cross cycle touches {} top cells, the product has {}",
                cross.entries().len(),
                gp.cycle.entries().len()
            ),
        ));
    }
    let mut sign: Option<bool> = None;
    for ((k1, c1), (k2, c2)) in cross.entries().iter().zip(gp.cycle.entries()) {
        if k1 != k2 {
            return Ok(AxiomReport::fail(
                name,
                format!("cross cycle misses the top cell {}", pc.labels_of(pc.dim(), *k2)),
            ));
        }
        let here = *c1 == *c2;
        if !here && *c1 != -c2.clone() {
            return Ok(AxiomReport::fail(
                name,
                format!("coefficient {c1} at {} is not ±1", pc.labels_of(pc.dim(), *k1)),
            ));
        }
        match sign {
            None => sign = Some(here),
            Some(s) if s != here => {
                return Ok(AxiomReport::fail(
                    name,
                    format!(
                        "sign flips at {} against the rest of the cycle",
                        pc.labels_of(pc.dim(), *k1)
                    ),
                ))
            }
            _ => {}
        }
    }
    let s = if sign.unwrap_or(true) { "+1" } else { "-1" };
    Ok(AxiomReport {
        name: name.into(),
        ok: true,
        detail: format!("cross cycle equals the product cycle with global sign {s}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces;
    use num_rational::BigRational;
    use num_traits::Zero;

    type Q = BigRational;

    fn rational() -> Coeffs<Q> {
        Coeffs::rational()
    }

    #[test]
    fn orientations_of_surfaces() {
        let t = spaces::torus7();
        let o = orient(&t).unwrap();
        assert_eq!(o.components, 1);
        assert_eq!(o.signs.len(), 14);
        assert!(o.signs.iter().all(|s| *s == 1 || *s == -1));
        assert_eq!(o.signs[0], 1);
        let s2 = spaces::sphere(2);
        assert_eq!(orient(&s2).unwrap().components, 1);
        let st = spaces::suspended_torus();
        assert_eq!(orient(&st).unwrap().components, 1);
        let k = spaces::klein();
        match orient(&k) {
            Err(Error::NotOrientable(cyc)) => {
                assert!(cyc.len() >= 2, "certificate names the flip cycle")
            }
            other => panic!("klein bottle oriented: {:?}", other.map(|o| o.components)),
        }
        let o2 = orient_over(&k, &Coeffs::prime(2).unwrap()).unwrap();
        assert!(o2.signs.iter().all(|s| *s == 1));
    }

    #[test]
    fn torus_fundamental_class_generates() {
        let t = spaces::torus7();
        let ts = t.strata();
        let coeffs = rational();
        let o = orient(&t).unwrap();
        let g = fundamental_class(&t, &ts, &o, &coeffs, false).unwrap();
        assert_eq!(g.group_dim, 1);
        assert_eq!(g.cycle.entries().len(), 14);
        let one = coeffs.of_int(1);
        assert!(g.coords == vec![one.clone()] || g.coords == vec![-one.clone()]);
        assert!(dropped_boundary(&t, &g.cycle).is_zero());
    }

    #[test]
    fn suspended_torus_class_and_top_vanishing() {
        let st = spaces::suspended_torus();
        let sts = st.strata();
        let coeffs = rational();
        let o = orient(&st).unwrap();
        let g = fundamental_class(&st, &sts, &o, &coeffs, false).unwrap();
        assert_eq!(g.group_dim, 1);
        assert!(!g.coords[0].is_zero());
        let rep = regular_stratum_decomposition(&st, &sts, &coeffs).unwrap();
        assert!(rep.vanishes_above);
        assert_eq!(rep.sheet_dims, vec![1]);
        assert!(rep.sum_is_iso);
    }

    #[test]
    fn cone_class_is_relative() {
        let x = spaces::torus7().cone().unwrap();
        let xs = x.strata();
        let coeffs = rational();
        let o = orient(&x).unwrap();
        assert!(fundamental_class(&x, &xs, &o, &coeffs, false).is_err());
        let g = fundamental_class(&x, &xs, &o, &coeffs, true).unwrap();
        assert_eq!(g.group_dim, 1);
        let one = coeffs.of_int(1);
        assert!(g.coords == vec![one.clone()] || g.coords == vec![-one]);
    }

    #[test]
    fn local_classes_at_regular_and_singular_points() {
        let coeffs = rational();
        let t = spaces::torus7();
        let ts = t.strata();
        let o = orient(&t).unwrap();
        let g = fundamental_class(&t, &ts, &o, &coeffs, false).unwrap();
        let rep = local_class_check(&t, &ts, &g, 0, &coeffs).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.group_dim, 1);
        let st = spaces::suspended_torus();
        let sts = st.strata();
        let ost = orient(&st).unwrap();
        let gst = fundamental_class(&st, &sts, &ost, &coeffs, false).unwrap();
        let apex = st.vertex_index("n").unwrap();
        let rep = local_class_check(&st, &sts, &gst, apex, &coeffs).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.group_dim, 1);
        // at a non-normal point the local group splits over the sheets
        let w2 = spaces::two_spheres();
        let ws = w2.strata();
        let ow = orient(&w2).unwrap();
        let gw = fundamental_class(&w2, &ws, &ow, &coeffs, false).unwrap();
        let glue = w2.vertex_index("w").unwrap();
        let rep = local_class_check(&w2, &ws, &gw, glue, &coeffs).unwrap();
        assert!(rep.ok);
        assert_eq!(rep.group_dim, 2);
        assert!(rep.image.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn decomposition_splits_the_top_group() {
        let coeffs = rational();
        let w2 = spaces::two_spheres();
        let ws = w2.strata();
        let rep = regular_stratum_decomposition(&w2, &ws, &coeffs).unwrap();
        assert_eq!(rep.sheet_dims, vec![1, 1]);
        assert_eq!(rep.top_dim, 2);
        assert!(rep.sum_is_iso);
        assert!(rep.vanishes_above);
        let two = spaces::torus7().disjoint_union(&spaces::torus7()).unwrap();
        let tws = two.strata();
        let o = orient(&two).unwrap();
        assert_eq!(o.components, 2);
        let g = fundamental_class(&two, &tws, &o, &coeffs, false).unwrap();
        assert_eq!(g.group_dim, 2);
        let rep = regular_stratum_decomposition(&two, &tws, &coeffs).unwrap();
        assert_eq!(rep.sheet_dims, vec![1, 1]);
        assert!(rep.sum_is_iso);
    }

    #[test]
    fn uniqueness_from_local_restrictions() {
        let w2 = spaces::two_spheres();
        let ws = w2.strata();
        let picks = ["a1", "b1"].map(|l| w2.vertex_index(l).unwrap());
        // over the rationals: restriction to the chosen local groups is
        // injective on the top homology
        let coeffs = rational();
        let zero = Perversity::zero(&ws.table);
        let ic =
            IChainComplex::new_unrestricted_rel(&w2, &ws, zero.clone(), coeffs.clone(), None)
                .unwrap();
        let h = ic.homology(2).unwrap();
        let mut trips = Vec::new();
        let mut row0 = 0;
        for v in picks {
            let del = Subcomplex::deleted_star(&w2, v);
            let icl = IChainComplex::new_unrestricted_rel(
                &w2,
                &ws,
                zero.clone(),
                coeffs.clone(),
                Some(&del),
            )
            .unwrap();
            let hl = icl.homology(2).unwrap();
            for k in 0..h.dim() {
                for (r, c) in icl.class_of(&hl, h.rep(k)).unwrap().into_iter().enumerate() {
                    if !c.is_zero() {
                        trips.push(((row0 + r) as u32, k as u32, c));
                    }
                }
            }
            row0 += hl.dim();
        }
        let m = SparseMatrix::new(row0, h.dim(), trips).unwrap();
        assert_eq!(m.rank(), h.dim());
        // over GF(2): among all four classes only the fundamental one
        // matches its local restrictions everywhere
        let c2 = Coeffs::prime(2).unwrap();
        let o2 = orient_over(&w2, &c2).unwrap();
        let g2 = fundamental_class(&w2, &ws, &o2, &c2, false).unwrap();
        let ic2 =
            IChainComplex::new_unrestricted_rel(&w2, &ws, zero.clone(), c2.clone(), None)
                .unwrap();
        let h2 = ic2.homology(2).unwrap();
        assert_eq!(h2.dim(), 2);
        let mut matches = 0;
        for mask in 0..4u32 {
            let mut z = Chain::zero(2);
            for b in 0..2 {
                if (mask >> b) & 1 == 1 {
                    z = z.add_scaled(h2.rep(b), &c2.of_int(1));
                }
            }
            let mut agrees = true;
            for v in picks {
                let del = Subcomplex::deleted_star(&w2, v);
                let icl = IChainComplex::new_unrestricted_rel(
                    &w2,
                    &ws,
                    zero.clone(),
                    c2.clone(),
                    Some(&del),
                )
                .unwrap();
                let hl = icl.homology(2).unwrap();
                if icl.class_of(&hl, &z).unwrap() != icl.class_of(&hl, &g2.cycle).unwrap() {
                    agrees = false;
                }
            }
            if agrees {
                matches += 1;
            }
        }
        assert_eq!(matches, 1, "only the fundamental class restricts correctly");
    }

    #[test]
    fn boundary_of_the_cone_class_is_the_base() {
        let x = spaces::torus7().cone().unwrap();
        let xs = x.strata();
        let coeffs = rational();
        let o = orient(&x).unwrap();
        let g = fundamental_class(&x, &xs, &o, &coeffs, true).unwrap();
        let (bc, t, coords) = boundary_of_fundamental(&x, &g, &coeffs).unwrap();
        assert_eq!(t.entries().len(), bc.count(2));
        let one = coeffs.of_int(1);
        assert!(t.entries().iter().all(|(_, c)| *c == one || *c == -one.clone()));
        let bcs = bc.strata();
        let ob = orient(&bc).unwrap();
        let gb = fundamental_class(&bc, &bcs, &ob, &coeffs, false).unwrap();
        assert!(coords == gb.coords || coords == gb.coords.iter().map(|c| -c.clone()).collect::<Vec<_>>());
    }

    #[test]
    fn boundary_of_the_cylinder_class_is_the_signed_ends() {
        let t = spaces::torus7();
        let pr = product(&t, &spaces::interval(1));
        let pc = &pr.complex;
        let pcs = pc.strata();
        let coeffs = rational();
        let o = orient(pc).unwrap();
        let g = fundamental_class(pc, &pcs, &o, &coeffs, true).unwrap();
        let (bc, tr, _) = boundary_of_fundamental(pc, &g, &coeffs).unwrap();
        assert_eq!(tr.entries().len(), 28, "both torus ends appear");
        // relative to one fixed torus orientation the two ends carry
        // opposite signs
        let ot = orient(&t).unwrap();
        let mut end_sign = [0i8; 2];
        for (k, c) in tr.entries() {
            let verts = bc.simplex(2, *k);
            let mut tv = Vec::new();
            let mut end = None;
            for v in verts {
                let lbl = bc.vertex_label(*v);
                let inner = &lbl[1..lbl.len() - 1];
                let (a, b) = inner.split_once(',').unwrap();
                tv.push(t.vertex_index(a).unwrap());
                let e: usize = b.parse().unwrap();
                assert!(end.is_none() || end == Some(e));
                end = Some(e);
            }
            tv.sort_unstable();
            let (_, tk) = t.index_of(&tv).unwrap();
            let base = ot.signs[tk as usize] as i64;
            let here = if *c == coeffs.of_int(base) {
                1
            } else {
                assert_eq!(*c, coeffs.of_int(-base));
                -1
            };
            let e = end.unwrap();
            if end_sign[e] == 0 {
                end_sign[e] = here;
            } else {
                assert_eq!(end_sign[e], here, "sign constant across the end {e}");
            }
        }
        assert_eq!(end_sign[0], -end_sign[1], "the two ends are oppositely oriented");
    }

    #[test]
    fn products_of_classes() {
        let coeffs = rational();
        let r1 = product_of_classes_check(&spaces::point(), &spaces::circle3(), &coeffs)
            .unwrap();
        assert!(r1.ok, "{}", r1.detail);
        let r2 = product_of_classes_check(&spaces::circle3(), &spaces::circle3(), &coeffs)
            .unwrap();
        assert!(r2.ok, "{}", r2.detail);
        let r3 =
            product_of_classes_check(&spaces::circle3(), &spaces::suspended_torus(), &coeffs)
                .unwrap();
        assert!(r3.ok, "{}", r3.detail);
    }
}
