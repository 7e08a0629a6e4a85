//! Intersection chain complexes and their homology.
//!
//! Simplices inside the singular set carry the zero group: they are
//! excluded from all bases and boundary terms landing on them are dropped.
//! The chain group in degree i is A_i = {ξ allowable : ∂ξ allowable}. A
//! relative subcomplex K is quotiented out before the boundary-allowability
//! condition, so the relative complex is the image of A_*(X) in the span of
//! live simplices outside K.

use crate::complex::{FilteredComplex, Strata, Subcomplex};
use crate::error::{Error, Result};
use crate::field::{Coeffs, Echelon, Field, Quotient, SVec, SparseMatrix, Subspace};
use crate::perversity::Perversity;
use std::collections::HashMap;

const NONE: u32 = u32::MAX;

/// Simplicial chain; coordinates index simplices of its degree in the
/// parent complex.
#[derive(Clone, Debug, PartialEq)]
pub struct Chain<F: Field> {
    pub degree: usize,
    v: SVec<F>,
}

impl<F: Field> Chain<F> {
    pub fn new(degree: usize, v: SVec<F>) -> Self {
        Chain { degree, v }
    }

    pub fn zero(degree: usize) -> Self {
        Chain { degree, v: SVec::new() }
    }

    pub fn unit(degree: usize, k: u32, one: F) -> Self {
        Chain { degree, v: SVec::unit(k, one) }
    }

    pub fn from_entries(degree: usize, entries: Vec<(u32, F)>) -> Self {
        Chain { degree, v: SVec::from_pairs(entries) }
    }

    pub fn vector(&self) -> &SVec<F> {
        &self.v
    }

    pub fn entries(&self) -> &[(u32, F)] {
        self.v.entries()
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_empty()
    }

    pub fn coeff(&self, k: u32) -> F {
        self.v.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn scale(&self, c: &F) -> Self {
        Chain { degree: self.degree, v: self.v.scale(c) }
    }

    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        assert_eq!(self.degree, other.degree, "degree mismatch");
        Chain { degree: self.degree, v: self.v.add_scaled(&other.v, c) }
    }
}

/// Chain built from vertex-label simplices with integer coefficients.
pub fn chain_of<F: Field>(
    x: &FilteredComplex,
    coeffs: &Coeffs<F>,
    degree: usize,
    terms: &[(&[&str], i64)],
) -> Result<Chain<F>> {
    let mut entries = Vec::new();
    for (labels, c) in terms {
        let mut verts = Vec::with_capacity(labels.len());
        for l in *labels {
            verts.push(
                x.vertex_index(l)
                    .ok_or_else(|| Error::InvalidComplex(format!("no vertex {l}")))?,
            );
        }
        verts.sort_unstable();
        let (d, k) = x
            .index_of(&verts)
            .ok_or_else(|| Error::InvalidComplex(format!("no simplex {labels:?}")))?;
        if d != degree {
            return Err(Error::Degree(format!("simplex {labels:?} has dimension {d}")));
        }
        entries.push((k, coeffs.of_int(*c)));
    }
    Ok(Chain::from_entries(degree, entries))
}

/// Pushes a chain through a simplicial map given on vertex labels.
/// Degenerate images vanish; otherwise the image simplex is sorted and the
/// permutation sign applied. Every image simplex must exist in `dst`.
pub fn push_chain<F: Field>(
    src: &FilteredComplex,
    dst: &FilteredComplex,
    vmap: impl Fn(&str) -> String,
    chain: &Chain<F>,
) -> Result<Chain<F>> {
    let mut cache: HashMap<u32, u32> = HashMap::new();
    let mut acc: HashMap<u32, F> = HashMap::new();
    for (k, c) in chain.entries() {
        let s = src.simplex(chain.degree, *k);
        let mut img = Vec::with_capacity(s.len());
        for v in s {
            let w = match cache.get(v) {
                Some(w) => *w,
                None => {
                    let label = vmap(src.vertex_label(*v));
                    let w = dst.vertex_index(&label).ok_or_else(|| {
                        Error::InvalidComplex(format!("image vertex {label} missing"))
                    })?;
                    cache.insert(*v, w);
                    w
                }
            };
            img.push(w);
        }
        // insertion sort counting inversions
        let mut sign = 1i64;
        let mut degenerate = false;
        for i in 1..img.len() {
            let mut j = i;
            while j > 0 && img[j - 1] >= img[j] {
                if img[j - 1] == img[j] {
                    degenerate = true;
                    break;
                }
                img.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
            if degenerate {
                break;
            }
        }
        if degenerate {
            continue;
        }
        let (d2, k2) = dst.index_of(&img).ok_or_else(|| {
            Error::InvalidComplex(format!(
               "image simplex {} is not in {}",
                img.iter().map(|v| dst.vertex_label(*v)).collect::<Vec<_>>().join("-"),
                dst.name()
            ))
        })?;
        debug_assert_eq!(d2, chain.degree);
        let term = if sign == 1 { c.clone() } else { -c.clone() };
        match acc.get_mut(&k2) {
            Some(e) => *e = e.clone() + term,
            None => {
                acc.insert(k2, term);
            }
        }
    }
    Ok(Chain::from_entries(chain.degree, acc.into_iter().collect()))
}

/// One degree of intersection homology: dimension, a class-coordinate
/// solver, and representative cycles whose classes are the unit vectors.
pub struct Homology<F: Field> {
    pub degree: usize,
    dim: usize,
    dim_cycles: usize,
    dim_boundaries: usize,
    /// simplex ids carrying the quotient coordinates (allowable, not in K)
    cols: Vec<u32>,
    col_of: Vec<u32>,
    kn: u32,
    quotient: Quotient<F>,
    reps: Vec<Chain<F>>,
}

impl<F: Field> Homology<F> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn dim_cycles(&self) -> usize {
        self.dim_cycles
    }

    pub fn dim_boundaries(&self) -> usize {
        self.dim_boundaries
    }

    /// Representative of the k-th basis class.
    pub fn rep(&self, k: usize) -> &Chain<F> {
        &self.reps[k]
    }

    pub fn reps(&self) -> &[Chain<F>] {
        &self.reps
    }

    /// Simplex ids carrying the quotient coordinates.
    pub fn quotient_simplices(&self) -> &[u32] {
        &self.cols
    }

    fn project(&self, chain: &Chain<F>) -> SVec<F> {
        chain.vector().map_support(|k| {
            let c = self.col_of[k as usize];
            if c == NONE || c < self.kn {
                None
            } else {
                Some(c - self.kn)
            }
        })
    }
}

/// Boundary in the quotient by singular-set simplices: terms on simplices
/// with filtration below the top are dropped. Squares to zero on live
/// chains because dead simplices are closed under faces up to filtration.
pub fn dropped_boundary<F: Field>(x: &FilteredComplex, c: &Chain<F>) -> Chain<F> {
    if c.degree == 0 {
        return Chain::zero(0);
    }
    let d = c.degree;
    let mut acc: HashMap<u32, F> = HashMap::new();
    for (k, coef) in c.entries() {
        for (j, f) in x.facets(d, *k).into_iter().enumerate() {
            if !x.is_live(d - 1, f) {
                continue;
            }
            let term = if j % 2 == 0 { coef.clone() } else { -coef.clone() };
            match acc.get_mut(&f) {
                Some(e) => *e = e.clone() + term,
                None => {
                    acc.insert(f, term);
                }
            }
        }
    }
    Chain::from_entries(d - 1, acc.into_iter().collect())
}

/// The intersection chain complex of a filtered complex at a perversity,
/// optionally relative to a full subcomplex.
pub struct IChainComplex<'a, F: Field> {
    complex: &'a FilteredComplex,
    strata: &'a Strata,
    perversity: Perversity,
    coeffs: Coeffs<F>,
    rel: Option<&'a Subcomplex>,
    live: Vec<Vec<u32>>,
    live_pos: Vec<Vec<u32>>,
    allow: Vec<Vec<u32>>,
    allow_pos: Vec<Vec<u32>>,
    in_k: Vec<Vec<bool>>,
}

impl<'a, F: Field> IChainComplex<'a, F> {
    pub fn new(
        complex: &'a FilteredComplex,
        strata: &'a Strata,
        perversity: Perversity,
        coeffs: Coeffs<F>,
        rel: Option<&'a Subcomplex>,
    ) -> Result<Self> {
        Self::build(complex, strata, perversity, coeffs, rel, true)
    }

    /// Like `new`, but the relative subcomplex only has to be closed, not
    /// full. Pair subcomplexes of products (A×Y ∪ X×B) are generally not
    /// full even when A and B are.
    pub fn new_unrestricted_rel(
        complex: &'a FilteredComplex,
        strata: &'a Strata,
        perversity: Perversity,
        coeffs: Coeffs<F>,
        rel: Option<&'a Subcomplex>,
    ) -> Result<Self> {
        Self::build(complex, strata, perversity, coeffs, rel, false)
    }

    fn build(
        complex: &'a FilteredComplex,
        strata: &'a Strata,
        perversity: Perversity,
        coeffs: Coeffs<F>,
        rel: Option<&'a Subcomplex>,
        require_full: bool,
    ) -> Result<Self> {
        if perversity.table() != &strata.table {
            return Err(Error::UnknownPerversity(format!(
                "perversity is defined on {} strata, complex {} has {}",
                perversity.table().len(),
                complex.name(),
                strata.table.len()
            )));
        }
        if let Some(k) = rel {
            if !k.is_closed(complex) {
                return Err(Error::InvalidComplex(
                    "relative subcomplex is not closed under faces".into(),
                ));
            }
            // fullness: a simplex with all vertices in K lies in K
            if require_full {
                for d in 0..=complex.max_dim() {
                    for s in 0..complex.count(d) {
                        if !k.contains(d, s as u32)
                            && complex.simplex(d, s as u32).iter().all(|v| {
                                complex
                                    .index_of(&[*v])
                                    .map(|(dv, kv)| k.contains(dv, kv))
                                    .unwrap_or(false)
                            })
                        {
                            return Err(Error::InvalidComplex(format!(
                                "relative subcomplex is not full at {}",
                                complex.labels_of(d, s as u32)
                            )));
                        }
                    }
                }
            }
        }
        let n = complex.dim();
        let depth = n.max(complex.max_dim());
        let mut live = Vec::with_capacity(depth + 1);
        let mut live_pos = Vec::with_capacity(depth + 1);
        let mut allow = Vec::with_capacity(depth + 1);
        let mut allow_pos = Vec::with_capacity(depth + 1);
        let mut in_k = Vec::with_capacity(depth + 1);
        for d in 0..=depth {
            let cnt = complex.count(d);
            let mut lv = Vec::new();
            let mut lp = vec![NONE; cnt];
            let mut al = Vec::new();
            let mut ap = vec![NONE; cnt];
            let mut ik = Vec::new();
            for k in 0..cnt {
                if !complex.is_live(d, k as u32) {
                    continue;
                }
                lp[k] = lv.len() as u32;
                lv.push(k as u32);
                if strata.simplex_allowable(d, k as u32, &perversity) {
                    ap[k] = al.len() as u32;
                    al.push(k as u32);
                    ik.push(rel.map_or(false, |s| s.contains(d, k as u32)));
                }
            }
            live.push(lv);
            live_pos.push(lp);
            allow.push(al);
            allow_pos.push(ap);
            in_k.push(ik);
        }
        let ic = IChainComplex {
            complex,
            strata,
            perversity,
            coeffs,
            rel,
            live,
            live_pos,
            allow,
            allow_pos,
            in_k,
        };
        ic.assert_boundary_squares_to_zero();
        Ok(ic)
    }

    /// ∂∘∂ = 0 on the quotient by singular-set simplices, checked with
    /// integer coefficients. Exhaustive on small complexes, strided above.
    fn assert_boundary_squares_to_zero(&self) {
        let stride = if self.complex.total_simplices() <= 50_000 { 1 } else { 13 };
        for d in 2..self.allow.len() {
            for (pos, k) in self.allow[d].iter().enumerate() {
                if pos % stride != 0 {
                    continue;
                }
                let mut acc: HashMap<u32, i64> = HashMap::new();
                for (j, f) in self.complex.facets(d, *k).into_iter().enumerate() {
                    if !self.complex.is_live(d - 1, f) {
                        continue;
                    }
                    let s1 = if j % 2 == 0 { 1 } else { -1 };
                    for (j2, f2) in self.complex.facets(d - 1, f).into_iter().enumerate() {
                        if !self.complex.is_live(d - 2, f2) {
                            continue;
                        }
                        let s2 = if j2 % 2 == 0 { s1 } else { -s1 };
                        *acc.entry(f2).or_insert(0) += s2;
                    }
                }
                assert!(
                    acc.values().all(|v| *v == 0),
                    "boundary does not square to zero at {}",
                    self.complex.labels_of(d, *k)
                );
            }
        }
    }

    pub fn complex(&self) -> &FilteredComplex {
        self.complex
    }

    pub fn strata(&self) -> &Strata {
        self.strata
    }

    pub fn perversity(&self) -> &Perversity {
        &self.perversity
    }

    pub fn coeffs(&self) -> &Coeffs<F> {
        &self.coeffs
    }

    pub fn is_relative(&self) -> bool {
        self.rel.is_some()
    }

    pub fn dim(&self) -> usize {
        self.complex.dim()
    }

    /// Allowable simplex ids in a degree, ascending.
    pub fn allowable_simplices(&self, d: usize) -> &[u32] {
        self.allow.get(d).map_or(&[], |v| &v[..])
    }

    pub fn live_simplices(&self, d: usize) -> &[u32] {
        self.live.get(d).map_or(&[], |v| &v[..])
    }

    pub fn is_allowable(&self, d: usize, k: u32) -> bool {
        self.allow_pos
            .get(d)
            .map_or(false, |v| v.get(k as usize).map_or(false, |p| *p != NONE))
    }

    pub fn is_allowable_chain(&self, c: &Chain<F>) -> bool {
        c.entries().iter().all(|(k, _)| self.is_allowable(c.degree, *k))
    }

    /// Boundary with singular-set targets dropped. This is the differential
    /// of the quotient complex, so it squares to zero on all live chains.
    pub fn boundary_chain(&self, c: &Chain<F>) -> Chain<F> {
        dropped_boundary(self.complex, c)
    }

    /// ξ and ∂ξ allowable.
    pub fn in_complex(&self, c: &Chain<F>) -> bool {
        self.is_allowable_chain(c) && self.is_allowable_chain(&self.boundary_chain(c))
    }

    /// Cycle in the absolute or relative sense: allowable, with boundary
    /// zero or supported on allowable K-simplices.
    pub fn is_cycle(&self, c: &Chain<F>) -> bool {
        if !self.is_allowable_chain(c) {
            return false;
        }
        let bd = self.boundary_chain(c);
        if c.degree == 0 {
            return true;
        }
        bd.entries().iter().all(|(k, _)| {
            self.is_allowable(c.degree - 1, *k)
                && self.rel.map_or(false, |s| s.contains(c.degree - 1, *k))
                || bd.is_zero()
        })
    }

    fn explain_not_allowable(&self, d: usize, k: u32) -> Error {
        for (z, maxdim) in &self.strata.profiles[d][k as usize] {
            let key = self.strata.table.key(*z as usize);
            let bound = d as i64 - key.codim as i64 + self.perversity.value(*z as usize);
            if (*maxdim as i64) > bound {
                return Error::NotAllowable {
                    simplex: self.complex.labels_of(d, k),
                    face: format!("of dimension {maxdim}"),
                    stratum: key.name.clone(),
                    detail: format!("face dimension {maxdim} exceeds {bound}"),
                };
            }
        }
        Error::NotAllowable {
            simplex: self.complex.labels_of(d, k),
            face: "itself".into(),
            stratum: "(singular set)".into(),
            detail: "simplex lies inside the singular set".into(),
        }
    }

    /// Errors with the offending simplex, face and stratum if any entry of
    /// the chain is not allowable.
    pub fn require_allowable(&self, c: &Chain<F>) -> Result<()> {
        for (k, _) in c.entries() {
            if !self.is_allowable(c.degree, *k) {
                return Err(self.explain_not_allowable(c.degree, *k));
            }
        }
        Ok(())
    }

    /// Sum of coefficients of a 0-chain.
    pub fn augmentation(&self, c: &Chain<F>) -> Result<F> {
        if c.degree != 0 {
            return Err(Error::Degree(format!(
                "augmentation of a degree {} chain",
                c.degree
            )));
        }
        let mut s = F::zero();
        for (_, coef) in c.entries() {
            s = s + coef.clone();
        }
        Ok(s)
    }

    fn k_filter(&self, d: usize, k: u32) -> bool {
        // killed rows for the relative cycle condition
        self.rel.map_or(false, |s| s.contains(d, k)) && self.is_allowable(d, k)
    }

    /// Intersection homology in one degree with representatives.
    pub fn homology(&self, d: usize) -> Result<Homology<F>> {
        self.homology_inner(d, true)
    }

    /// Dimension only; skips representative extraction.
    pub fn betti(&self, d: usize) -> usize {
        self.homology_inner(d, false).map(|h| h.dim).unwrap_or(0)
    }

    pub fn betti_table(&self) -> Vec<usize> {
        (0..=self.dim()).map(|d| self.betti(d)).collect()
    }

    pub fn homology_all(&self) -> Result<Vec<Homology<F>>> {
        (0..=self.dim()).map(|d| self.homology(d)).collect()
    }

    fn homology_inner(&self, d: usize, want_reps: bool) -> Result<Homology<F>> {
        let cnt = if d < self.allow.len() { self.complex.count(d) } else { 0 };
        let empty: Vec<u32> = Vec::new();
        let allow = if d < self.allow.len() { &self.allow[d] } else { &empty };
        // column order: K block first, then the quotient coordinates
        let mut kcols: Vec<u32> = Vec::new();
        let mut fcols: Vec<u32> = Vec::new();
        for (pos, k) in allow.iter().enumerate() {
            if self.in_k[d][pos] {
                kcols.push(*k);
            } else {
                fcols.push(*k);
            }
        }
        let kn = kcols.len() as u32;
        let ncols = allow.len();
        let mut col_of = vec![NONE; cnt];
        for (i, k) in kcols.iter().enumerate() {
            col_of[*k as usize] = i as u32;
        }
        for (i, k) in fcols.iter().enumerate() {
            col_of[*k as usize] = kn + i as u32;
        }
        // cycle side: row echelon of the boundary matrix, rows = live
        // (d−1)-simplices not killed by K
        let mut ech_z = Echelon::new(ncols);
        if d >= 1 && d < self.allow.len() {
            let nrows = self.live[d - 1].len();
            let mut buckets: Vec<Vec<(u32, F)>> = vec![Vec::new(); nrows];
            for k in allow {
                let col = col_of[*k as usize];
                for (j, f) in self.complex.facets(d, *k).into_iter().enumerate() {
                    let rp = self.live_pos[d - 1][f as usize];
                    if rp == NONE || self.k_filter(d - 1, f) {
                        continue;
                    }
                    let c = if j % 2 == 0 {
                        self.coeffs.of_int(1)
                    } else {
                        self.coeffs.of_int(-1)
                    };
                    buckets[rp as usize].push((col, c));
                }
            }
            for b in buckets {
                if !b.is_empty() {
                    ech_z.insert_forward(SVec::from_pairs(b));
                }
            }
        }
        let rank_total = ech_z.dim();
        let r_k = ech_z.leads().iter().filter(|l| **l < kn).count();
        let dim_cycles = fcols.len() - (rank_total - r_k);
        // boundary side: column echelon of the next boundary matrix with
        // rows reordered [non-allowable live | allowable]; rows leading in
        // the allowable block span im ∂ ∩ span(allowable)
        let mut pi_boundaries: Vec<SVec<F>> = Vec::new();
        if d + 1 < self.allow.len() && !self.allow[d + 1].is_empty() {
            let nlive = self.live[d].len();
            let nallow = self.allow[d].len();
            let na = nlive - nallow;
            // remap live position -> [0..na) non-allowable, [na..) allowable
            let mut remap = vec![0u32; nlive];
            let mut next_na = 0u32;
            for (lp, k) in self.live[d].iter().enumerate() {
                let ap = self.allow_pos[d][*k as usize];
                remap[lp] = if ap == NONE {
                    let r = next_na;
                    next_na += 1;
                    r
                } else {
                    na as u32 + ap
                };
            }
            // allowable position -> quotient coordinate (or drop for K)
            let mut pi_of_allow = vec![NONE; nallow];
            for (i, k) in fcols.iter().enumerate() {
                pi_of_allow[self.allow_pos[d][*k as usize] as usize] = i as u32;
            }
            let mut ech_b = Echelon::new(nlive);
            for k in &self.allow[d + 1] {
                let mut entries = Vec::new();
                for (j, f) in self.complex.facets(d + 1, *k).into_iter().enumerate() {
                    let lp = self.live_pos[d][f as usize];
                    if lp == NONE {
                        continue;
                    }
                    let c = if j % 2 == 0 {
                        self.coeffs.of_int(1)
                    } else {
                        self.coeffs.of_int(-1)
                    };
                    entries.push((remap[lp as usize], c));
                }
                ech_b.insert_forward(SVec::from_pairs(entries));
            }
            for (r, lead) in ech_b.leads().iter().enumerate() {
                if (*lead as usize) < na {
                    continue;
                }
                let v = ech_b.rows()[r].map_support(|c| {
                    let ap = c - na as u32;
                    let p = pi_of_allow[ap as usize];
                    if p == NONE {
                        None
                    } else {
                        Some(p)
                    }
                });
                if !v.is_empty() {
                    pi_boundaries.push(v);
                }
            }
        }
        let boundaries = Subspace::from_vectors(fcols.len(), pi_boundaries);
        let dim_boundaries = boundaries.dim();
        if dim_cycles < dim_boundaries {
            return Err(Error::Other(format!(
                "cycle space smaller than boundary space in degree {d}"
            )));
        }
        let dim = dim_cycles - dim_boundaries;
        if !want_reps || dim == 0 {
            let quotient = Quotient::from_parts(boundaries, Subspace::zero(fcols.len()));
            return Ok(Homology {
                degree: d,
                dim,
                dim_cycles,
                dim_boundaries,
                cols: fcols,
                col_of,
                kn,
                quotient,
                reps: Vec::new(),
            });
        }
        // representatives: scan kernel vectors of the cycle matrix lazily
        ech_z.finalize_reduced();
        let mut accepted_chains: Vec<Chain<F>> = Vec::new();
        let mut residues: Vec<SVec<F>> = Vec::new();
        let mut ech_reps = Echelon::new(fcols.len());
        let col_simplex = |c: u32| -> u32 {
            if c < kn {
                kcols[c as usize]
            } else {
                fcols[(c - kn) as usize]
            }
        };
        for j in 0..ncols as u32 {
            if accepted_chains.len() == dim {
                break;
            }
            if ech_z.row_for_lead(j).is_some() {
                continue;
            }
            // kernel vector with 1 at the free column j
            let mut entries = vec![(j, self.coeffs.of_int(1))];
            for (r, lead) in ech_z.leads().iter().enumerate() {
                if let Some(c) = ech_z.rows()[r].get(j) {
                    entries.push((*lead, -c.clone()));
                }
            }
            let kv = SVec::from_pairs(entries);
            let pi: SVec<F> = kv.map_support(|c| if c >= kn { Some(c - kn) } else { None });
            let resid = ech_reps.reduce(boundaries.reduce(pi));
            if resid.is_empty() {
                continue;
            }
            ech_reps.insert_forward(resid.clone());
            residues.push(resid);
            accepted_chains.push(Chain::from_entries(
                d,
                kv.iter().map(|(c, coef)| (col_simplex(*c), coef.clone())).collect(),
            ));
        }
        if accepted_chains.len() != dim {
            return Err(Error::Other(format!(
                "representative scan found {} of {} classes in degree {d}",
                accepted_chains.len(),
                dim
            )));
        }
        let reps_sub = Subspace::from_vectors(fcols.len(), residues);
        let quotient = Quotient::from_parts(boundaries, reps_sub);
        // align representatives with the quotient's coordinates
        let mut h = Homology {
            degree: d,
            dim,
            dim_cycles,
            dim_boundaries,
            cols: fcols,
            col_of,
            kn,
            quotient,
            reps: Vec::new(),
        };
        let mut t_cols: Vec<Vec<F>> = Vec::with_capacity(dim);
        for ch in &accepted_chains {
            t_cols.push(h.quotient.coords(&h.project(ch))?);
        }
        let mut trips = Vec::new();
        for (j, col) in t_cols.iter().enumerate() {
            for (i, c) in col.iter().enumerate() {
                if !c.is_zero() {
                    trips.push((i as u32, j as u32, c.clone()));
                }
            }
        }
        let t = SparseMatrix::new(dim, dim, trips)?;
        for k in 0..dim {
            let e_k = SVec::unit(k as u32, self.coeffs.of_int(1));
            let sol = t
                .solve(&e_k)?
                .ok_or_else(|| Error::Other("class matrix is singular".into()))?;
            let mut rep = Chain::zero(d);
            for (j, c) in sol.iter() {
                rep = rep.add_scaled(&accepted_chains[*j as usize], c);
            }
            h.reps.push(rep);
        }
        Ok(h)
    }

    /// Coordinates of a cycle's class in the homology basis; zero exactly
    /// on (relative) boundaries.
    pub fn class_of(&self, h: &Homology<F>, z: &Chain<F>) -> Result<Vec<F>> {
        if z.degree != h.degree {
            return Err(Error::Degree(format!(
                "chain degree {} against homology degree {}",
                z.degree, h.degree
            )));
        }
        for (k, _) in z.entries() {
            if !self.is_allowable(z.degree, *k) {
                return Err(self.explain_not_allowable(z.degree, *k));
            }
        }
        let bd = self.boundary_chain(z);
        if z.degree > 0 {
            for (k, _) in bd.entries() {
                if !self.k_filter(z.degree - 1, *k) {
                    return Err(Error::NotACycle(format!(
                        "boundary has support at {}",
                        self.complex.labels_of(z.degree - 1, *k)
                    )));
                }
            }
        }
        h.quotient.coords(&h.project(z))
    }

    /// Solver expressing cycles in a fixed list of basis classes, modulo
    /// boundaries (and K in the relative case). Verifies the basis classes
    /// are independent; does not verify they span.
    pub fn class_solver(&self, d: usize, basis: &[Chain<F>]) -> Result<ClassSolver<F>> {
        let nrows = self.live.get(d).map_or(0, |v| v.len());
        let m = basis.len();
        let mut ech = Echelon::new(nrows + m);
        if d + 1 < self.allow.len() {
            for k in &self.allow[d + 1] {
                let mut entries = Vec::new();
                for (j, f) in self.complex.facets(d + 1, *k).into_iter().enumerate() {
                    let lp = self.live_pos[d][f as usize];
                    if lp == NONE {
                        continue;
                    }
                    let c = if j % 2 == 0 {
                        self.coeffs.of_int(1)
                    } else {
                        self.coeffs.of_int(-1)
                    };
                    entries.push((lp, c));
                }
                ech.insert_forward(SVec::from_pairs(entries));
            }
        }
        if self.rel.is_some() && d < self.allow.len() {
            for (pos, k) in self.allow[d].iter().enumerate() {
                if self.in_k[d][pos] {
                    let lp = self.live_pos[d][*k as usize];
                    ech.insert_forward(SVec::unit(lp, self.coeffs.of_int(1)));
                }
            }
        }
        for (t, b) in basis.iter().enumerate() {
            if b.degree != d {
                return Err(Error::Degree(format!(
                    "basis chain degree {} in a degree {} solver",
                    b.degree, d
                )));
            }
            for (k, _) in b.entries() {
                if !self.is_allowable(d, *k) {
                    return Err(self.explain_not_allowable(d, *k));
                }
            }
            if !self.is_cycle(b) {
                return Err(Error::NotACycle(format!("solver basis chain {t} in degree {d}")));
            }
            let mut entries: Vec<(u32, F)> = b
                .entries()
                .iter()
                .map(|(k, c)| (self.live_pos[d][*k as usize], c.clone()))
                .collect();
            entries.push((nrows as u32 + t as u32, self.coeffs.of_int(1)));
            match ech.insert_forward(SVec::from_pairs(entries)) {
                Some(r) if (ech.leads()[r] as usize) < nrows => {}
                _ => {
                    return Err(Error::KunnethFailure {
                        degree: d,
                        detail: format!("basis class {t} depends on earlier classes"),
                    })
                }
            }
        }
        Ok(ClassSolver {
            degree: d,
            nrows: nrows as u32,
            m,
            ech,
            live_pos: self.live_pos.get(d).cloned().unwrap_or_default(),
        })
    }
}

/// Expresses cycles as combinations of fixed basis classes modulo
/// boundaries, without materializing a homology basis of the ambient
/// complex.
pub struct ClassSolver<F: Field> {
    degree: usize,
    nrows: u32,
    m: usize,
    ech: Echelon<F>,
    live_pos: Vec<u32>,
}

impl<F: Field> ClassSolver<F> {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis_len(&self) -> usize {
        self.m
    }

    /// Coefficients of z over the basis classes.
    pub fn solve(&self, z: &Chain<F>) -> Result<Vec<F>> {
        if z.degree != self.degree {
            return Err(Error::Degree(format!(
                "chain degree {} in a degree {} solver",
                z.degree, self.degree
            )));
        }
        for (k, _) in z.entries() {
            if self.live_pos[*k as usize] == NONE {
                return Err(Error::NotACycle(format!(
                    "chain meets the singular set at index {k}"
                )));
            }
        }
        let v: SVec<F> = SVec::from_pairs(
            z.entries().iter().map(|(k, c)| (self.live_pos[*k as usize], c.clone())),
        );
        let r = self.ech.reduce(v);
        let mut coords = vec![F::zero(); self.m];
        for (i, c) in r.iter() {
            if *i < self.nrows {
                return Err(Error::KunnethFailure {
                    degree: self.degree,
                    detail: "cycle lies outside the span of the basis classes".into(),
                });
            }
            coords[(*i - self.nrows) as usize] = -c.clone();
        }
        Ok(coords)
    }
}

/// Explicit chain-group bases and the dual complex with the coboundary
/// sign (δα)(x) = −(−1)^{|α|} α(∂x).
pub struct CochainComplex<F: Field> {
    pub chain_dims: Vec<usize>,
    pub cohomology_dims: Vec<usize>,
    bases: Vec<Subspace<F>>,
    /// delta[i]: functionals on A_i -> functionals on A_{i+1}, in the dual
    /// bases of `bases`
    pub delta: Vec<SparseMatrix<F>>,
}

impl<F: Field> CochainComplex<F> {
    pub fn new(ic: &IChainComplex<F>) -> Result<Self> {
        let n = ic.dim();
        let coeffs = ic.coeffs();
        // A_d = kernel of (non-allowable components of ∂)
        let mut bases: Vec<Subspace<F>> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let allow = ic.allowable_simplices(d).to_vec();
            if allow.is_empty() {
                bases.push(Subspace::zero(0));
                continue;
            }
            if d == 0 {
                bases.push(Subspace::from_vectors(
                    allow.len(),
                    (0..allow.len()).map(|i| SVec::unit(i as u32, coeffs.of_int(1))),
                ));
                continue;
            }
            // rows: live non-allowable (d−1)-simplices
            let bad: Vec<u32> = ic
                .live_simplices(d - 1)
                .iter()
                .filter(|k| !ic.is_allowable(d - 1, **k))
                .cloned()
                .collect();
            let mut bad_pos = HashMap::new();
            for (i, k) in bad.iter().enumerate() {
                bad_pos.insert(*k, i as u32);
            }
            let mut trips = Vec::new();
            for (col, k) in allow.iter().enumerate() {
                for (j, f) in ic.complex().facets(d, *k).into_iter().enumerate() {
                    if !ic.complex().is_live(d - 1, f) {
                        continue;
                    }
                    if let Some(r) = bad_pos.get(&f) {
                        trips.push((*r, col as u32, coeffs.of_int(if j % 2 == 0 { 1 } else { -1 })));
                    }
                }
            }
            let nmat = SparseMatrix::new(bad.len(), allow.len(), trips)?;
            bases.push(nmat.kernel_basis());
        }
        let chain_dims: Vec<usize> = bases.iter().map(|b| b.dim()).collect();
        // boundary matrices on the A bases, then dualize with the sign
        let mut delta: Vec<SparseMatrix<F>> = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let rows = chain_dims.get(d + 1).cloned().unwrap_or(0);
            let cols = chain_dims[d];
            if rows == 0 || cols == 0 {
                delta.push(SparseMatrix::zero(rows, cols));
                continue;
            }
            // D: A_{d+1} -> A_d, then δ_d = −(−1)^d D^T
            let mut trips = Vec::new();
            let allow_next = ic.allowable_simplices(d + 1);
            for (j, a) in bases[d + 1].basis().iter().enumerate() {
                let chain = Chain::from_entries(
                    d + 1,
                    a.iter().map(|(i, c)| (allow_next[*i as usize], c.clone())).collect(),
                );
                let bd = ic.boundary_chain(&chain);
                let bd_allow: SVec<F> = bd.vector().map_support(|k| {
                    let p = ic.allow_pos[d][k as usize];
                    if p == NONE {
                        None
                    } else {
                        Some(p)
                    }
                });
                if bd_allow.len() != bd.entries().len() {
                    return Err(Error::NotAllowable {
                        simplex: format!("boundary of A_{} basis vector {j}", d + 1),
                        face: "a boundary term".into(),
                        stratum: "(allowability)".into(),
                        detail: "boundary left the allowable span".into(),
                    });
                }
                let coords = bases[d].coords(&bd_allow).ok_or_else(|| {
                    Error::Other(format!("∂A_{} is not inside A_{}", d + 1, d))
                })?;
                let sign = coeffs.of_int(if d % 2 == 0 { -1 } else { 1 });
                for (i, c) in coords.into_iter().enumerate() {
                    if !c.is_zero() {
                        trips.push((j as u32, i as u32, c * sign.clone()));
                    }
                }
            }
            delta.push(SparseMatrix::new(rows, cols, trips)?);
        }
        let mut cohomology_dims = Vec::with_capacity(n + 1);
        for d in 0..=n {
            let ker = chain_dims[d] - delta[d].rank();
            let im_prev = if d == 0 { 0 } else { delta[d - 1].rank() };
            cohomology_dims.push(ker - im_prev);
        }
        Ok(CochainComplex { chain_dims, cohomology_dims, bases, delta })
    }

    /// Evaluates a functional (coordinates in the dual basis of A_d) on a
    /// chain lying in A_d.
    pub fn eval(&self, ic: &IChainComplex<F>, d: usize, functional: &[F], chain: &Chain<F>) -> Result<F> {
        let allow_pos = &ic.allow_pos[d];
        let v: SVec<F> = chain.vector().map_support(|k| {
            let p = allow_pos[k as usize];
            if p == NONE {
                None
            } else {
                Some(p)
            }
        });
        if v.len() != chain.entries().len() {
            return Err(Error::NotAllowable {
                simplex: "(chain)".into(),
                face: "a support term".into(),
                stratum: "(allowability)".into(),
                detail: "chain has non-allowable support".into(),
            });
        }
        let coords = self.bases[d]
            .coords(&v)
            .ok_or_else(|| Error::Other(format!("chain is not in A_{d}")))?;
        let mut s = F::zero();
        for (c, f) in coords.iter().zip(functional) {
            s = s + c.clone() * f.clone();
        }
        Ok(s)
    }
}

/// Matrix of a homology map realized by a chain-level map; columns are
/// indexed by the source basis, rows by the target basis.
pub fn induced_matrix<F: Field>(
    hsrc: &Homology<F>,
    dst: &IChainComplex<F>,
    hdst: &Homology<F>,
    mut f: impl FnMut(&Chain<F>) -> Result<Chain<F>>,
) -> Result<SparseMatrix<F>> {
    let mut trips = Vec::new();
    for k in 0..hsrc.dim() {
        let image = f(hsrc.rep(k))?;
        for (r, c) in dst.class_of(hdst, &image)?.into_iter().enumerate() {
            if !c.is_zero() {
                trips.push((r as u32, k as u32, c));
            }
        }
    }
    SparseMatrix::new(hdst.dim(), hsrc.dim(), trips)
}

/// Connecting homomorphism of a pair (X,K) into K modeled as its own
/// complex: the boundary of a relative representative lies in K and is
/// carried over by vertex labels. Rows are indexed by `hsub`, columns by
/// `hrel` one degree up.
pub fn connecting_matrix<F: Field>(
    icx: &IChainComplex<F>,
    hrel: &Homology<F>,
    icsub: &IChainComplex<F>,
    hsub: &Homology<F>,
) -> Result<SparseMatrix<F>> {
    induced_matrix(hrel, icsub, hsub, |z| {
        let bd = icx.boundary_chain(z);
        push_chain(icx.complex(), icsub.complex(), |l| l.to_string(), &bd)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Coeffs;
    use crate::perversity::Perversity;
    use crate::spaces;
    use num_rational::BigRational;
    use num_traits::Zero;
    use std::collections::BTreeMap;

    type Q = BigRational;

    fn rational() -> Coeffs<Q> {
        Coeffs::rational()
    }

    /// Ordinary simplicial homology over the full chain complex, ignoring
    /// filtration: independent oracle via rank-nullity.
    fn ordinary_betti(x: &FilteredComplex, coeffs: &Coeffs<Q>) -> Vec<usize> {
        let n = x.max_dim();
        let mut ranks = vec![0usize; n + 2];
        for d in 1..=n {
            let mut trips = Vec::new();
            for k in 0..x.count(d) {
                for (j, f) in x.facets(d, k as u32).into_iter().enumerate() {
                    trips.push((f, k as u32, coeffs.of_int(if j % 2 == 0 { 1 } else { -1 })));
                }
            }
            let m = SparseMatrix::new(x.count(d - 1), x.count(d), trips).unwrap();
            ranks[d] = m.rank();
        }
        (0..=n).map(|d| x.count(d) - ranks[d] - ranks[d + 1]).collect()
    }

    fn betti<F: Field>(
        x: &FilteredComplex,
        p: &Perversity,
        coeffs: &Coeffs<F>,
    ) -> Vec<usize> {
        let strata = x.strata();
        let ic = IChainComplex::new(x, &strata, p.clone(), coeffs.clone(), None).unwrap();
        ic.betti_table()
    }

    fn apex_perversity(x: &FilteredComplex, v: i64) -> Perversity {
        let strata = x.strata();
        let map: BTreeMap<String, i64> =
            strata.table.iter().map(|k| (k.name.clone(), v)).collect();
        Perversity::from_strata_map(&strata.table, &map).unwrap()
    }

    #[test]
    fn trivial_filtration_matches_ordinary_homology() {
        let coeffs = rational();
        for x in [spaces::torus7(), spaces::sphere(2), spaces::circle3()] {
            let strata = x.strata();
            let p = Perversity::zero(&strata.table);
            assert_eq!(betti(&x, &p, &coeffs), ordinary_betti(&x, &coeffs), "{}", x.name());
        }
        // Klein bottle over GF(2) gains a class in degrees 1 and 2
        let k = spaces::klein();
        assert_eq!(ordinary_betti(&k, &coeffs), vec![1, 1, 0]);
        let strata = k.strata();
        let p = Perversity::zero(&strata.table);
        let f2 = Coeffs::prime(2).unwrap();
        assert_eq!(betti(&k, &p, &f2), vec![1, 2, 1]);
    }

    #[test]
    fn allowability_arithmetic_at_suspension_points() {
        let st = spaces::suspended_torus();
        let strata = st.strata();
        let coeffs = rational();
        let apex = st.vertex_index("n").unwrap();
        let other = st.vertex_index("0").unwrap();
        let (d, e) = st.index_of(&[apex.min(other), apex.max(other)]).unwrap();
        for (v, want) in [(0, false), (2, true)] {
            let p = apex_perversity(&st, v);
            let ic = IChainComplex::new(&st, &strata, p, coeffs.clone(), None).unwrap();
            assert_eq!(ic.is_allowable(d, e), want, "apex value {v}");
        }
        // every simplex of a trivially filtered complex is allowable
        let t = spaces::torus7();
        let ts = t.strata();
        let ic =
            IChainComplex::new(&t, &ts, Perversity::zero(&ts.table), coeffs, None).unwrap();
        for d in 0..=2 {
            assert_eq!(ic.allowable_simplices(d).len(), t.count(d));
        }
    }

    #[test]
    fn suspended_torus_tables() {
        let st = spaces::suspended_torus();
        let coeffs = rational();
        let strata = st.strata();
        let zero = Perversity::zero(&strata.table);
        let top = Perversity::top(&strata.table);
        assert_eq!(betti(&st, &zero, &coeffs), vec![1, 2, 0, 1]);
        assert_eq!(betti(&st, &top, &coeffs), vec![1, 0, 2, 1]);
        assert_eq!(betti(&st, &apex_perversity(&st, -1), &coeffs), vec![1, 2, 1, 0]);
        assert_eq!(betti(&st, &apex_perversity(&st, 2), &coeffs), vec![0, 1, 2, 1]);
    }

    #[test]
    fn circle_with_two_singular_points_tables() {
        let sp = spaces::circle_two_points();
        let coeffs = rational();
        let strata = sp.strata();
        assert_eq!(betti(&sp, &Perversity::zero(&strata.table), &coeffs), vec![0, 2]);
        // p(poles) = −1 kills all edges
        assert_eq!(betti(&sp, &apex_perversity(&sp, -1), &coeffs), vec![2, 0]);
    }

    #[test]
    fn cone_formula_absolute_and_relative() {
        let coeffs = rational();
        for l in [spaces::circle3(), spaces::circle_two_points()] {
            let c = l.cone().unwrap();
            let n = c.dim() as i64;
            let cs = c.strata();
            let ls = l.strata();
            for apex_v in [-1i64, 0, 1, 2] {
                let mut map: BTreeMap<String, i64> = BTreeMap::new();
                for key in cs.table.iter() {
                    map.insert(key.name.clone(), if key.name == "c" { apex_v } else { 0 });
                }
                let pc = Perversity::from_strata_map(&cs.table, &map).unwrap();
                let pl = pc.restricted_to(&ls.table).unwrap();
                let icl =
                    IChainComplex::new(&l, &ls, pl, coeffs.clone(), None).unwrap();
                let hl = icl.betti_table();
                let icc =
                    IChainComplex::new(&c, &cs, pc.clone(), coeffs.clone(), None).unwrap();
                let hc = icc.betti_table();
                for i in 0..=c.dim() {
                    let want = if (i as i64) < n - 1 - apex_v {
                        *hl.get(i).unwrap_or(&0)
                    } else {
                        0
                    };
                    assert_eq!(hc[i], want, "{} apex {apex_v} degree {i}", c.name());
                }
                // relative to the base: shifted groups at/above n − p(apex)
                let base = c.boundary_subcomplex();
                let icr =
                    IChainComplex::new(&c, &cs, pc, coeffs.clone(), Some(&base)).unwrap();
                let hr = icr.betti_table();
                for i in 0..=c.dim() {
                    let want = if (i as i64) >= n - apex_v && i >= 1 {
                        *hl.get(i - 1).unwrap_or(&0)
                    } else {
                        0
                    };
                    assert_eq!(hr[i], want, "{} rel apex {apex_v} degree {i}", c.name());
                }
            }
        }
    }

    #[test]
    fn long_exact_sequence_of_the_cone_pair() {
        let coeffs = rational();
        let l = spaces::circle3();
        let c = l.cone().unwrap();
        let cs = c.strata();
        let ls = l.strata();
        let pc = apex_perversity(&c, 0);
        let pl = pc.restricted_to(&ls.table).unwrap();
        let icl = IChainComplex::new(&l, &ls, pl, coeffs.clone(), None).unwrap();
        let icc = IChainComplex::new(&c, &cs, pc.clone(), coeffs.clone(), None).unwrap();
        let base = c.boundary_subcomplex();
        let icr = IChainComplex::new(&c, &cs, pc, coeffs.clone(), Some(&base)).unwrap();
        let hl: Vec<_> = (0..=1).map(|d| icl.homology(d).unwrap()).collect();
        let hc: Vec<_> = (0..=2).map(|d| icc.homology(d).unwrap()).collect();
        let hr: Vec<_> = (0..=2).map(|d| icr.homology(d).unwrap()).collect();
        // ranks of the three maps per degree
        let mut rank_f = vec![0usize; 3]; // H(L) -> H(cL)
        let mut rank_g = vec![0usize; 3]; // H(cL) -> H(cL, L)
        let mut rank_d = vec![0usize; 3]; // H(cL, L) -> H_{i−1}(L)
        for i in 0..=2 {
            if i <= 1 && hl[i].dim() > 0 {
                let rows: Vec<SVec<Q>> = (0..hl[i].dim())
                    .map(|k| {
                        let img = push_chain(&l, &c, |s| s.to_string(), hl[i].rep(k)).unwrap();
                        SVec::from_pairs(
                            icc.class_of(&hc[i], &img)
                                .unwrap()
                                .into_iter()
                                .enumerate()
                                .map(|(j, v)| (j as u32, v)),
                        )
                    })
                    .collect();
                rank_f[i] = Subspace::from_vectors(hc[i].dim(), rows).dim();
            }
            if hc[i].dim() > 0 {
                let rows: Vec<SVec<Q>> = (0..hc[i].dim())
                    .map(|k| {
                        SVec::from_pairs(
                            icr.class_of(&hr[i], hc[i].rep(k))
                                .unwrap()
                                .into_iter()
                                .enumerate()
                                .map(|(j, v)| (j as u32, v)),
                        )
                    })
                    .collect();
                rank_g[i] = Subspace::from_vectors(hr[i].dim(), rows).dim();
            }
            if i >= 1 && hr[i].dim() > 0 {
                let rows: Vec<SVec<Q>> = (0..hr[i].dim())
                    .map(|k| {
                        let bd = icc.boundary_chain(hr[i].rep(k));
                        let bd_l = push_chain(&c, &l, |s| s.to_string(), &bd).unwrap();
                        SVec::from_pairs(
                            icl.class_of(&hl[i - 1], &bd_l)
                                .unwrap()
                                .into_iter()
                                .enumerate()
                                .map(|(j, v)| (j as u32, v)),
                        )
                    })
                    .collect();
                rank_d[i] = Subspace::from_vectors(hl[i - 1].dim(), rows).dim();
            }
        }
        for i in 0..=2 {
            if i <= 1 {
                assert_eq!(rank_f[i] + rank_g[i], hc[i].dim(), "exactness at H_{i}(cL)");
            }
            assert_eq!(rank_g[i] + rank_d[i], hr[i].dim(), "exactness at H_{i}(cL,L)");
            if i >= 1 {
                assert_eq!(
                    rank_d[i] + rank_f[i - 1],
                    hl[i - 1].dim(),
                    "exactness at H_{}(L)",
                    i - 1
                );
            }
        }
    }

    #[test]
    fn monotone_perversities_grow_the_complex() {
        let st = spaces::suspended_torus();
        let strata = st.strata();
        let coeffs = rational();
        let values = [-1i64, 0, 1, 2];
        for w in values.windows(2) {
            let lo = IChainComplex::new(
                &st,
                &strata,
                apex_perversity(&st, w[0]),
                coeffs.clone(),
                None,
            )
            .unwrap();
            let hi = IChainComplex::new(
                &st,
                &strata,
                apex_perversity(&st, w[1]),
                coeffs.clone(),
                None,
            )
            .unwrap();
            for d in 0..=3 {
                for k in lo.allowable_simplices(d) {
                    assert!(hi.is_allowable(d, *k));
                }
            }
        }
    }

    #[test]
    fn class_of_representatives_and_boundaries() {
        let t = spaces::torus7();
        let strata = t.strata();
        let coeffs = rational();
        let ic = IChainComplex::new(
            &t,
            &strata,
            Perversity::zero(&strata.table),
            coeffs.clone(),
            None,
        )
        .unwrap();
        let h1 = ic.homology(1).unwrap();
        assert_eq!(h1.dim(), 2);
        for k in 0..2 {
            let coords = ic.class_of(&h1, h1.rep(k)).unwrap();
            for (j, c) in coords.iter().enumerate() {
                assert_eq!(*c == coeffs.of_int(1), j == k);
                assert!(j == k || c.is_zero());
            }
        }
        // boundary of any 2-simplex maps to zero
        let w = Chain::unit(2, 0, coeffs.of_int(1));
        let coords = ic.class_of(&h1, &ic.boundary_chain(&w)).unwrap();
        assert!(coords.iter().all(|c| c.is_zero()));
        // a non-cycle is rejected
        let e = Chain::unit(1, 0, coeffs.of_int(1));
        assert!(matches!(ic.class_of(&h1, &e), Err(Error::NotACycle(_))));
    }

    #[test]
    fn homotopy_invariance_for_the_product_with_an_interval() {
        let coeffs = rational();
        let sp = spaces::circle_two_points();
        let prod = crate::complex::product(&sp, &spaces::interval(1));
        let xi = &prod.complex;
        let sps = sp.strata();
        let xis = xi.strata();
        let pairs = prod.strata_pairs(&xis, &sps, &spaces::interval(1).strata()).unwrap();
        // lift p̄ through the projection: product strata inherit the circle
        // factor's values
        let p_sp = Perversity::zero(&sps.table);
        let mut map: BTreeMap<String, i64> = BTreeMap::new();
        for (t, key) in xis.table.iter().enumerate() {
            let (zx, _) = pairs[t];
            map.insert(key.name.clone(), p_sp.value(zx.unwrap()));
        }
        let p_xi = Perversity::from_strata_map(&xis.table, &map).unwrap();
        let ic_sp = IChainComplex::new(&sp, &sps, p_sp, coeffs.clone(), None).unwrap();
        let ic_xi = IChainComplex::new(xi, &xis, p_xi, coeffs.clone(), None).unwrap();
        let mut want = ic_sp.betti_table();
        want.resize(xi.dim() + 1, 0);
        assert_eq!(want, ic_xi.betti_table());
        for d in 0..=1 {
            let h_sp = ic_sp.homology(d).unwrap();
            let h_xi = ic_xi.homology(d).unwrap();
            let rows: Vec<SVec<Q>> = (0..h_sp.dim())
                .map(|k| {
                    let img =
                        push_chain(&sp, xi, |s| format!("({s},0)"), h_sp.rep(k)).unwrap();
                    SVec::from_pairs(
                        ic_xi
                            .class_of(&h_xi, &img)
                            .unwrap()
                            .into_iter()
                            .enumerate()
                            .map(|(j, v)| (j as u32, v)),
                    )
                })
                .collect();
            assert_eq!(
                Subspace::from_vectors(h_xi.dim(), rows).dim(),
                h_xi.dim(),
                "inclusion at an endpoint is an isomorphism in degree {d}"
            );
        }
    }

    #[test]
    fn augmentation_values() {
        let sp = spaces::circle_two_points();
        let strata = sp.strata();
        let coeffs = rational();
        let ic = IChainComplex::new(
            &sp,
            &strata,
            Perversity::zero(&strata.table),
            coeffs.clone(),
            None,
        )
        .unwrap();
        let v = chain_of(&sp, &coeffs, 0, &[(&["0"], 3)]).unwrap();
        assert_eq!(ic.augmentation(&v).unwrap(), coeffs.of_int(3));
        // an edge into a pole loses the pole endpoint
        let e = chain_of(&sp, &coeffs, 1, &[(&["n", "0"], 1)]).unwrap();
        let bd = ic.boundary_chain(&e);
        assert_eq!(bd.entries().len(), 1);
        assert_eq!(
            ic.augmentation(&bd).unwrap().clone() * ic.augmentation(&bd).unwrap(),
            coeffs.of_int(1)
        );
        // H_0 vanishes, so the augmentation is trivially well-defined there
        assert_eq!(ic.betti(0), 0);
        assert!(ic.augmentation(&e).is_err());
    }

    #[test]
    fn class_solver_expresses_classes() {
        let t = spaces::torus7();
        let strata = t.strata();
        let coeffs = rational();
        let ic = IChainComplex::new(
            &t,
            &strata,
            Perversity::zero(&strata.table),
            coeffs.clone(),
            None,
        )
        .unwrap();
        let h1 = ic.homology(1).unwrap();
        let basis: Vec<Chain<Q>> = h1.reps().to_vec();
        let solver = ic.class_solver(1, &basis).unwrap();
        let w = Chain::unit(2, 5, coeffs.of_int(1));
        let z = basis[0]
            .add_scaled(&basis[1], &coeffs.of_int(2))
            .add_scaled(&ic.boundary_chain(&w), &coeffs.of_int(1));
        assert_eq!(solver.solve(&z).unwrap(), vec![coeffs.of_int(1), coeffs.of_int(2)]);
        // a class outside the span is refused
        let partial = ic.class_solver(1, &basis[..1].to_vec()).unwrap();
        assert!(partial.solve(&basis[1]).is_err());
        // duplicate basis classes are refused
        assert!(ic.class_solver(1, &[basis[0].clone(), basis[0].clone()]).is_err());
    }

    #[test]
    fn cochain_complex_dualizes_homology() {
        let coeffs = rational();
        for (x, apex) in [
            (spaces::torus7(), None),
            (spaces::circle_two_points(), Some(0)),
            (spaces::suspended_torus(), Some(1)),
        ] {
            let strata = x.strata();
            let p = match apex {
                None => Perversity::zero(&strata.table),
                Some(v) => apex_perversity(&x, v),
            };
            let ic = IChainComplex::new(&x, &strata, p, coeffs.clone(), None).unwrap();
            let cc = CochainComplex::new(&ic).unwrap();
            assert_eq!(cc.cohomology_dims, ic.betti_table(), "{}", x.name());
            for d in 0..x.dim() {
                if cc.delta[d].cols() > 0 && d + 1 <= x.dim() && cc.delta[d + 1].rows() > 0 {
                    let dd = cc.delta[d + 1].mul(&cc.delta[d]).unwrap();
                    assert_eq!(dd.nnz(), 0, "δδ ≠ 0 at degree {d} on {}", x.name());
                }
            }
            // dual-basis evaluation is the Kronecker pairing
            for d in 0..=x.dim() {
                for j in 0..cc.chain_dims[d].min(3) {
                    let mut functional = vec![coeffs.of_int(0); cc.chain_dims[d]];
                    functional[j] = coeffs.of_int(1);
                    let allow = ic.allowable_simplices(d);
                    let basis_vec = cc.bases[d].basis()[j].clone();
                    let chain = Chain::from_entries(
                        d,
                        basis_vec
                            .iter()
                            .map(|(i, c)| (allow[*i as usize], c.clone()))
                            .collect(),
                    );
                    let val = cc.eval(&ic, d, &functional, &chain).unwrap();
                    assert_eq!(val, coeffs.of_int(1));
                }
            }
        }
    }

    #[test]
    fn boundary_squares_to_zero_with_singular_drops() {
        let st = spaces::suspended_torus();
        let strata = st.strata();
        let coeffs = rational();
        let ic = IChainComplex::new(
            &st,
            &strata,
            Perversity::top(&strata.table),
            coeffs.clone(),
            None,
        )
        .unwrap();
        for k in 0..st.count(3) {
            let c = Chain::unit(3, k as u32, coeffs.of_int(1));
            assert!(ic.boundary_chain(&ic.boundary_chain(&c)).is_zero());
        }
    }

    #[test]
    fn relative_complex_requires_a_closed_full_subcomplex() {
        let st = spaces::suspended_torus();
        let strata = st.strata();
        let coeffs = rational();
        let p = Perversity::zero(&strata.table);
        let v0 = st.index_of(&[st.vertex_index("0").unwrap()]).unwrap();
        let v1 = st.index_of(&[st.vertex_index("1").unwrap()]).unwrap();
        let e01 = st
            .index_of(&[st.vertex_index("0").unwrap(), st.vertex_index("1").unwrap()])
            .unwrap();
        let blank: Vec<Vec<bool>> =
            (0..=st.max_dim()).map(|d| vec![false; st.count(d)]).collect();
        // both endpoints of an edge without the edge: not full
        let mut member = blank.clone();
        member[v0.0][v0.1 as usize] = true;
        member[v1.0][v1.1 as usize] = true;
        let not_full = Subcomplex::from_member(member);
        assert!(IChainComplex::new(&st, &strata, p.clone(), coeffs.clone(), Some(&not_full))
            .is_err());
        // an edge without its endpoints: not closed
        let mut member = blank;
        member[e01.0][e01.1 as usize] = true;
        let not_closed = Subcomplex::from_member(member);
        assert!(IChainComplex::new(&st, &strata, p, coeffs, Some(&not_closed)).is_err());
    }
}
