//! Filtered finite simplicial complexes and their constructors.
//!
//! A complex carries a formal dimension n and a filtration value per simplex
//! (the least i with the simplex inside the i-skeleton of the filtration).
//! Simplices with filtration n are "live"; everything else sits inside the
//! singular set. Constructors produce deterministic vertex and simplex
//! orders so downstream bases are reproducible.

use crate::error::{Error, Result};
use crate::perversity::{StratumKey, StratumTable};
use std::collections::{BTreeMap, HashMap};

pub type Vertex = u32;

#[derive(Clone, Debug)]
pub struct FilteredComplex {
    name: String,
    n: usize,
    vertex_labels: Vec<String>,
    // simplices[d] is lexicographically sorted; tuples are sorted vertex ids
    simplices: Vec<Vec<Vec<Vertex>>>,
    filt: Vec<Vec<usize>>,
    boundary: Vec<Vec<bool>>,
    index: Vec<HashMap<Vec<Vertex>, u32>>,
    has_boundary: bool,
}

/// Accumulates simplices with optional explicit filtration and boundary
/// marks, then closes under faces. Face filtration is inherited as the
/// minimum over cofaces unless given explicitly; simplices with no coface
/// and no explicit value default to n (trivial filtration).
pub struct ComplexBuilder {
    name: String,
    n: usize,
    labels: Vec<String>,
    by_label: HashMap<String, Vertex>,
    entries: BTreeMap<Vec<Vertex>, (Option<usize>, bool)>,
}

impl ComplexBuilder {
    pub fn new(name: &str, n: usize) -> Self {
        ComplexBuilder {
            name: name.to_string(),
            n,
            labels: Vec::new(),
            by_label: HashMap::new(),
            entries: BTreeMap::new(),
        }
    }

    pub fn vertex(&mut self, label: &str) -> Vertex {
        if let Some(v) = self.by_label.get(label) {
            return *v;
        }
        let v = self.labels.len() as Vertex;
        self.labels.push(label.to_string());
        self.by_label.insert(label.to_string(), v);
        v
    }

    pub fn add(&mut self, labels: &[&str], filt: Option<usize>, boundary: bool) {
        let mut verts: Vec<Vertex> = labels.iter().map(|l| self.vertex(l)).collect();
        verts.sort_unstable();
        verts.dedup();
        assert_eq!(verts.len(), labels.len(), "repeated vertex in simplex {labels:?}");
        let e = self.entries.entry(verts).or_insert((None, false));
        if filt.is_some() {
            e.0 = filt;
        }
        e.1 |= boundary;
    }

    pub fn simplex(&mut self, labels: &[&str]) {
        self.add(labels, None, false);
    }

    pub fn simplex_at(&mut self, labels: &[&str], filt: usize) {
        self.add(labels, Some(filt), false);
    }

    pub fn build(self) -> Result<FilteredComplex> {
        let ComplexBuilder { name, n, labels, by_label: _, entries } = self;
        // close under faces; propagate boundary marks downward
        let mut all: BTreeMap<Vec<Vertex>, (Option<usize>, bool)> = entries;
        let mut queue: Vec<Vec<Vertex>> = all.keys().cloned().collect();
        while let Some(s) = queue.pop() {
            if s.len() <= 1 {
                continue;
            }
            let b = all[&s].1;
            for j in 0..s.len() {
                let mut f = s.clone();
                f.remove(j);
                match all.get_mut(&f) {
                    Some(e) => e.1 |= b,
                    None => {
                        all.insert(f.clone(), (None, b));
                        queue.push(f);
                    }
                }
            }
        }
        // boundary marks may have been added after faces were first visited
        let mut changed = true;
        while changed {
            changed = false;
            let keys: Vec<Vec<Vertex>> = all.keys().cloned().collect();
            for s in keys {
                if s.len() <= 1 || !all[&s].1 {
                    continue;
                }
                for j in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(j);
                    let e = all.get_mut(&f).unwrap();
                    if !e.1 {
                        e.1 = true;
                        changed = true;
                    }
                }
            }
        }
        let max_dim = all.keys().map(|s| s.len() - 1).max().unwrap_or(0);
        let mut simplices: Vec<Vec<Vec<Vertex>>> = vec![Vec::new(); max_dim + 1];
        for s in all.keys() {
            simplices[s.len() - 1].push(s.clone());
        }
        for dim in &mut simplices {
            dim.sort();
        }
        // resolve filtration top-down: explicit wins, else min over cofaces
        let mut filt_map: BTreeMap<Vec<Vertex>, usize> = BTreeMap::new();
        for d in (0..=max_dim).rev() {
            for s in &simplices[d] {
                if let (Some(f), _) = all[s] {
                    filt_map.insert(s.clone(), f);
                } else {
                    filt_map.entry(s.clone()).or_insert(n);
                }
                let f = filt_map[s];
                if d > 0 {
                    for j in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(j);
                        if all[&face].0.is_none() {
                            let e = filt_map.entry(face).or_insert(f);
                            if f < *e {
                                *e = f;
                            }
                        }
                    }
                }
            }
        }
        let mut filt = Vec::with_capacity(max_dim + 1);
        let mut boundary = Vec::with_capacity(max_dim + 1);
        let mut index = Vec::with_capacity(max_dim + 1);
        let mut has_boundary = false;
        for dim in &simplices {
            let mut fs = Vec::with_capacity(dim.len());
            let mut bs = Vec::with_capacity(dim.len());
            let mut ix = HashMap::with_capacity(dim.len());
            for (k, s) in dim.iter().enumerate() {
                fs.push(filt_map[s]);
                bs.push(all[s].1);
                has_boundary |= all[s].1;
                ix.insert(s.clone(), k as u32);
            }
            filt.push(fs);
            boundary.push(bs);
            index.push(ix);
        }
        Ok(FilteredComplex {
            name,
            n,
            vertex_labels: labels,
            simplices,
            filt,
            boundary,
            index,
            has_boundary,
        })
    }
}

/// Membership mask for a subcomplex, aligned with the parent's simplex order.
#[derive(Clone, Debug, PartialEq)]
pub struct Subcomplex {
    member: Vec<Vec<bool>>,
}

impl Subcomplex {
    pub fn empty(x: &FilteredComplex) -> Self {
        Subcomplex { member: (0..=x.max_dim()).map(|d| vec![false; x.count(d)]).collect() }
    }

    /// Raw membership mask, one Vec per dimension in complex order.
    pub fn from_member(member: Vec<Vec<bool>>) -> Self {
        Subcomplex { member }
    }

    /// Smallest closed subcomplex containing the seed simplices.
    pub fn closure_of(x: &FilteredComplex, seeds: &[(usize, u32)]) -> Self {
        let mut member: Vec<Vec<bool>> =
            (0..=x.max_dim()).map(|d| vec![false; x.count(d)]).collect();
        for (d, k) in seeds {
            member[*d][*k as usize] = true;
        }
        for d in (1..member.len()).rev() {
            for k in 0..member[d].len() {
                if member[d][k] {
                    for f in x.facets(d, k as u32) {
                        member[d - 1][f as usize] = true;
                    }
                }
            }
        }
        Subcomplex { member }
    }

    /// Full subcomplex on the vertices satisfying the predicate.
    pub fn full_on_vertices(x: &FilteredComplex, keep: impl Fn(Vertex) -> bool) -> Self {
        let mut member = Vec::with_capacity(x.max_dim() + 1);
        for d in 0..=x.max_dim() {
            member.push(
                (0..x.count(d))
                    .map(|k| x.simplex(d, k as u32).iter().all(|v| keep(*v)))
                    .collect(),
            );
        }
        Subcomplex { member }
    }

    /// All simplices except those containing the vertex (stand-in for the
    /// complement of an open star).
    pub fn deleted_star(x: &FilteredComplex, v: Vertex) -> Self {
        Subcomplex::full_on_vertices(x, |u| u != v)
    }

    pub fn boundary_of(x: &FilteredComplex) -> Self {
        Subcomplex {
            member: (0..=x.max_dim()).map(|d| x.boundary[d].clone()).collect(),
        }
    }

    pub fn union(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x || *y).collect())
                .collect(),
        }
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        Subcomplex {
            member: self
                .member
                .iter()
                .zip(&other.member)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| *x && *y).collect())
                .collect(),
        }
    }

    pub fn contains(&self, d: usize, k: u32) -> bool {
        self.member[d][k as usize]
    }

    pub fn count(&self, d: usize) -> usize {
        self.member.get(d).map_or(0, |m| m.iter().filter(|b| **b).count())
    }

    pub fn is_empty(&self) -> bool {
        self.member.iter().all(|m| m.iter().all(|b| !*b))
    }

    /// Closed under faces within the parent.
    pub fn is_closed(&self, x: &FilteredComplex) -> bool {
        for d in 1..=x.max_dim() {
            for k in 0..x.count(d) {
                if self.member[d][k] {
                    for f in x.facets(d, k as u32) {
                        if !self.member[d - 1][f as usize] {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// Spans the whole parent together with `other`.
    pub fn covers_with(&self, other: &Subcomplex, x: &FilteredComplex) -> bool {
        for d in 0..=x.max_dim() {
            for k in 0..x.count(d) {
                if !self.member[d][k] && !other.member[d][k] {
                    return false;
                }
            }
        }
        true
    }
}

/// One stratum: connected component of (filt = level) open simplices.
#[derive(Clone, Debug)]
pub struct StratumInfo {
    pub name: String,
    pub filt: usize,
    pub codim: usize,
    /// Lexicographically least simplex in the stratum.
    pub rep: (usize, u32),
}

/// Strata of a complex, per-simplex assignment, and per-simplex allowability
/// profiles (for each singular stratum met by a face, the maximal face
/// dimension meeting it).
#[derive(Clone, Debug)]
pub struct Strata {
    pub table: StratumTable,
    pub full: Vec<StratumInfo>,
    /// full-stratum index per simplex, aligned with complex order
    pub of_simplex: Vec<Vec<u32>>,
    /// full index -> index into `table` for singular strata
    pub singular_of_full: Vec<Option<usize>>,
    /// per dim, per simplex: sorted (table index, max face dim) pairs
    pub profiles: Vec<Vec<Vec<(u32, u8)>>>,
}

impl Strata {
    /// Checks dim τ <= dim σ − codim Z + p(Z) for every singular stratum Z
    /// met by a face τ of σ.
    pub fn simplex_allowable(
        &self,
        d: usize,
        k: u32,
        p: &crate::perversity::Perversity,
    ) -> bool {
        self.profiles[d][k as usize].iter().all(|(z, maxdim)| {
            let codim = self.table.key(*z as usize).codim as i64;
            (*maxdim as i64) <= d as i64 - codim + p.value(*z as usize)
        })
    }

    pub fn singular_index(&self, d: usize, k: u32) -> Option<usize> {
        self.singular_of_full[self.of_simplex[d][k as usize] as usize]
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n as u32).collect() }
    }
    fn find(&mut self, i: u32) -> u32 {
        let mut i = i;
        while self.parent[i as usize] != i {
            self.parent[i as usize] = self.parent[self.parent[i as usize] as usize];
            i = self.parent[i as usize];
        }
        i
    }
    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root so representatives stay lex-least
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi as usize] = lo;
        }
    }
}

impl FilteredComplex {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    /// Formal dimension n.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_labels.len()
    }

    pub fn vertex_label(&self, v: Vertex) -> &str {
        &self.vertex_labels[v as usize]
    }

    pub fn vertex_index(&self, label: &str) -> Option<Vertex> {
        self.vertex_labels.iter().position(|l| l == label).map(|i| i as Vertex)
    }

    /// Largest dimension with any simplex present.
    pub fn max_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn count(&self, d: usize) -> usize {
        self.simplices.get(d).map_or(0, |v| v.len())
    }

    pub fn total_simplices(&self) -> usize {
        self.simplices.iter().map(|v| v.len()).sum()
    }

    pub fn simplex(&self, d: usize, k: u32) -> &[Vertex] {
        &self.simplices[d][k as usize]
    }

    pub fn filt(&self, d: usize, k: u32) -> usize {
        self.filt[d][k as usize]
    }

    pub fn is_live(&self, d: usize, k: u32) -> bool {
        self.filt[d][k as usize] == self.n
    }

    pub fn is_boundary_marked(&self, d: usize, k: u32) -> bool {
        self.boundary[d][k as usize]
    }

    pub fn has_boundary(&self) -> bool {
        self.has_boundary
    }

    pub fn index_of(&self, verts: &[Vertex]) -> Option<(usize, u32)> {
        let d = verts.len().checked_sub(1)?;
        self.index.get(d)?.get(verts).map(|k| (d, *k))
    }

    pub fn is_trivially_filtered(&self) -> bool {
        self.filt.iter().flatten().all(|f| *f == self.n)
    }

    /// Facet indices in dimension d−1; position j omits the j-th vertex, so
    /// the boundary coefficient at position j is (−1)^j.
    pub fn facets(&self, d: usize, k: u32) -> Vec<u32> {
        let s = self.simplex(d, k);
        let mut out = Vec::with_capacity(s.len());
        let mut f = Vec::with_capacity(d);
        for j in 0..s.len() {
            f.clear();
            f.extend(s.iter().take(j).chain(s.iter().skip(j + 1)));
            out.push(*self.index[d - 1].get(&f[..]).expect("closure violated"));
        }
        out
    }

    pub fn labels_of(&self, d: usize, k: u32) -> String {
        self.simplex(d, k)
            .iter()
            .map(|v| self.vertex_label(*v))
            .collect::<Vec<_>>()
            .join("-")
    }

    /// Structural violations; empty means the complex is accepted as a model
    /// of a (boundary-)stratified pseudomanifold. Local cone-like structure
    /// and full collars are not combinatorially checkable and are not
    /// examined here; library constructors produce them by construction.
    pub fn validate(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let n = self.n;
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let f = self.filt[d][k];
                if d > f {
                    bad.push(format!(
                        "simplex {} has dimension {} above its filtration {}",
                        self.labels_of(d, k as u32),
                        d,
                        f
                    ));
                }
                if f > n {
                    bad.push(format!(
                        "simplex {} has filtration {} above the formal dimension {}",
                        self.labels_of(d, k as u32),
                        f,
                        n
                    ));
                }
                if d > 0 {
                    for fk in self.facets(d, k as u32) {
                        if self.filt[d - 1][fk as usize] > f {
                            bad.push(format!(
                                "filtration increases from {} to its face {}",
                                self.labels_of(d, k as u32),
                                self.labels_of(d - 1, fk)
                            ));
                        }
                        if self.boundary[d][k] && !self.boundary[d - 1][fk as usize] {
                            bad.push(format!(
                                "boundary subcomplex not closed at {}",
                                self.labels_of(d - 1, fk)
                            ));
                        }
                    }
                }
            }
        }
        // coface counts
        let mut cofaces: Vec<Vec<u32>> =
            (0..=self.max_dim()).map(|d| vec![0; self.count(d)]).collect();
        for d in 1..=self.max_dim() {
            for k in 0..self.count(d) {
                for fk in self.facets(d, k as u32) {
                    cofaces[d - 1][fk as usize] += 1;
                }
            }
        }
        // maximal simplices are n-dimensional with filtration n
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let maximal = d == self.max_dim() || cofaces[d][k] == 0;
                if maximal && (d != n || self.filt[d][k] != n) {
                    bad.push(format!(
                        "maximal simplex {} is not a live {}-simplex",
                        self.labels_of(d, k as u32),
                        n
                    ));
                }
            }
        }
        // live (n−1)-simplices: two live n-cofaces, or one if boundary-marked
        if n >= 1 && self.max_dim() >= n - 1 {
            for k in 0..self.count(n - 1) {
                if self.filt[n - 1][k] != n {
                    continue;
                }
                let c = cofaces[n - 1][k];
                let want = if self.boundary[n - 1][k] { 1 } else { 2 };
                if c != want {
                    bad.push(format!(
                        "live face {} has {} top cofaces, expected {}",
                        self.labels_of(n - 1, k as u32),
                        c,
                        want
                    ));
                }
            }
        }
        if self.max_dim() >= n {
            for k in 0..self.count(n) {
                if self.boundary[n][k] {
                    bad.push(format!(
                        "top simplex {} marked as boundary",
                        self.labels_of(n, k as u32)
                    ));
                }
            }
        }
        // density: every simplex under some live top simplex
        let mut dense: Vec<Vec<bool>> =
            (0..=self.max_dim()).map(|d| vec![false; self.count(d)]).collect();
        if self.max_dim() == n {
            for k in 0..self.count(n) {
                dense[n][k] = true;
            }
        }
        for d in (1..=self.max_dim()).rev() {
            for k in 0..self.count(d) {
                if dense[d][k] {
                    for fk in self.facets(d, k as u32) {
                        dense[d - 1][fk as usize] = true;
                    }
                }
            }
        }
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                if !dense[d][k] {
                    bad.push(format!(
                        "simplex {} is not a face of any live top simplex",
                        self.labels_of(d, k as u32)
                    ));
                }
            }
        }
        if self.has_boundary {
            // every boundary simplex's star must meet the interior
            let mut sees_interior: Vec<Vec<bool>> = (0..=self.max_dim())
                .map(|d| (0..self.count(d)).map(|k| !self.boundary[d][k]).collect())
                .collect();
            for d in (1..=self.max_dim()).rev() {
                for k in 0..self.count(d) {
                    if sees_interior[d][k] {
                        for fk in self.facets(d, k as u32) {
                            sees_interior[d - 1][fk as usize] = true;
                        }
                    }
                }
            }
            for d in 0..=self.max_dim() {
                for k in 0..self.count(d) {
                    if !sees_interior[d][k] {
                        bad.push(format!(
                            "boundary simplex {} has no interior coface",
                            self.labels_of(d, k as u32)
                        ));
                    }
                }
            }
            match self.boundary_complex() {
                Ok(b) => {
                    for v in b.validate() {
                        bad.push(format!("boundary: {v}"));
                    }
                }
                Err(e) => bad.push(format!("boundary: {e}")),
            }
        }
        bad
    }

    /// Strata as connected components per filtration level, with stable
    /// names (vertex labels of the least member simplex joined by "-").
    pub fn strata(&self) -> Strata {
        // global simplex numbering for union-find, in (dim, index) order
        let mut offset = vec![0usize; self.max_dim() + 2];
        for d in 0..=self.max_dim() {
            offset[d + 1] = offset[d] + self.count(d);
        }
        let total = offset[self.max_dim() + 1];
        let mut uf = UnionFind::new(total);
        for d in 1..=self.max_dim() {
            for k in 0..self.count(d) {
                let f = self.filt[d][k];
                for fk in self.facets(d, k as u32) {
                    if self.filt[d - 1][fk as usize] == f {
                        uf.union((offset[d] + k) as u32, (offset[d - 1] + fk as usize) as u32);
                    }
                }
            }
        }
        // collect strata in first-seen (lex) order
        let mut root_to_stratum: HashMap<u32, u32> = HashMap::new();
        let mut full: Vec<StratumInfo> = Vec::new();
        let mut of_simplex: Vec<Vec<u32>> = Vec::new();
        for d in 0..=self.max_dim() {
            let mut row = Vec::with_capacity(self.count(d));
            for k in 0..self.count(d) {
                let root = uf.find((offset[d] + k) as u32);
                let id = *root_to_stratum.entry(root).or_insert_with(|| {
                    let id = full.len() as u32;
                    full.push(StratumInfo {
                        name: self.labels_of(d, k as u32),
                        filt: self.filt[d][k],
                        codim: self.n - self.filt[d][k],
                        rep: (d, k as u32),
                    });
                    id
                });
                row.push(id);
            }
            of_simplex.push(row);
        }
        let mut keys: Vec<StratumKey> = Vec::new();
        let mut singular_of_full = vec![None; full.len()];
        for info in full.iter() {
            if info.codim > 0 {
                keys.push(StratumKey { name: info.name.clone(), codim: info.codim });
            }
        }
        let table = StratumTable::new(keys).expect("stratum names are unique by construction");
        for (i, info) in full.iter().enumerate() {
            if info.codim > 0 {
                singular_of_full[i] = table.index_of(&info.name);
            }
        }
        // allowability profiles: max face dimension per singular stratum
        let mut profiles: Vec<Vec<Vec<(u32, u8)>>> = Vec::with_capacity(self.max_dim() + 1);
        for d in 0..=self.max_dim() {
            let mut row: Vec<Vec<(u32, u8)>> = Vec::with_capacity(self.count(d));
            for k in 0..self.count(d) {
                let mut prof: Vec<(u32, u8)> = Vec::new();
                if d > 0 {
                    for fk in self.facets(d, k as u32) {
                        for (z, m) in &profiles[d - 1][fk as usize] {
                            match prof.iter_mut().find(|(z2, _)| z2 == z) {
                                Some((_, m2)) => {
                                    if *m > *m2 {
                                        *m2 = *m;
                                    }
                                }
                                None => prof.push((*z, *m)),
                            }
                        }
                    }
                }
                if let Some(z) = singular_of_full[of_simplex[d][k] as usize] {
                    match prof.iter_mut().find(|(z2, _)| *z2 as usize == z) {
                        Some((_, m2)) => {
                            if d as u8 > *m2 {
                                *m2 = d as u8;
                            }
                        }
                        None => prof.push((z as u32, d as u8)),
                    }
                }
                prof.sort_unstable();
                row.push(prof);
            }
            profiles.push(row);
        }
        Strata { table, full, of_simplex, singular_of_full, profiles }
    }

    fn fresh_label(&self, base: &str) -> String {
        let mut label = base.to_string();
        while self.vertex_labels.contains(&label) {
            label.push('\'');
        }
        label
    }

    /// Compact cone: apex at filtration 0, every other filtration shifted up
    /// by one; the base copy is the boundary.
    pub fn cone(&self) -> Result<FilteredComplex> {
        if self.has_boundary {
            return Err(Error::InvalidComplex(
                "cone of a complex with boundary is not supported".into(),
            ));
        }
        if self.total_simplices() == 0 {
            // cone of the empty complex is a point
            let mut b = ComplexBuilder::new(&format!("cone:{}", self.name), 0);
            b.add(&["c"], Some(0), false);
            return b.build();
        }
        let apex = self.fresh_label("c");
        let mut b = ComplexBuilder::new(&format!("cone:{}", self.name), self.n + 1);
        b.vertex(&apex);
        for v in &self.vertex_labels {
            b.vertex(v);
        }
        b.add(&[&apex], Some(0), false);
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let labels: Vec<&str> =
                    self.simplex(d, k as u32).iter().map(|v| self.vertex_label(*v)).collect();
                b.add(&labels, Some(self.filt(d, k as u32) + 1), true);
                let mut joined: Vec<&str> = vec![&apex];
                joined.extend(&labels);
                b.add(&joined, Some(self.filt(d, k as u32) + 1), false);
            }
        }
        b.build()
    }

    /// Double cone with apexes at filtration 0.
    pub fn suspension(&self) -> Result<FilteredComplex> {
        if self.has_boundary {
            return Err(Error::InvalidComplex(
                "suspension of a complex with boundary is not supported".into(),
            ));
        }
        let north = self.fresh_label("n");
        let south = self.fresh_label("s");
        let mut b = ComplexBuilder::new(&format!("susp:{}", self.name), self.n + 1);
        for v in &self.vertex_labels {
            b.vertex(v);
        }
        b.add(&[&north], Some(0), false);
        b.add(&[&south], Some(0), false);
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let labels: Vec<&str> =
                    self.simplex(d, k as u32).iter().map(|v| self.vertex_label(*v)).collect();
                let f = self.filt(d, k as u32) + 1;
                b.add(&labels, Some(f), false);
                for apex in [&north, &south] {
                    let mut joined: Vec<&str> = vec![apex];
                    joined.extend(&labels);
                    b.add(&joined, Some(f), false);
                }
            }
        }
        b.build()
    }

    /// Vertex link with the inherited filtration filt(τ) = filt(v·τ) − 1.
    pub fn link(&self, v: Vertex) -> Result<FilteredComplex> {
        if v as usize >= self.vertex_count() {
            return Err(Error::InvalidComplex(format!("vertex {v} out of range")));
        }
        if self.has_boundary {
            return Err(Error::InvalidComplex(
                "link in a complex with boundary is not supported".into(),
            ));
        }
        let mut b = ComplexBuilder::new(
            &format!("link:{}:{}", self.name, self.vertex_label(v)),
            self.n.saturating_sub(1),
        );
        let mut any = false;
        for d in 1..=self.max_dim() {
            for k in 0..self.count(d) {
                let s = self.simplex(d, k as u32);
                if !s.contains(&v) {
                    continue;
                }
                any = true;
                let labels: Vec<&str> =
                    s.iter().filter(|u| **u != v).map(|u| self.vertex_label(*u)).collect();
                b.add(&labels, Some(self.filt(d, k as u32).saturating_sub(1)), false);
            }
        }
        if !any && self.index_of(&[v]).is_none() {
            return Err(Error::InvalidComplex(format!("vertex {v} not in the complex")));
        }
        b.build()
    }

    /// Barycentric subdivision: one vertex per simplex, simplices are chains
    /// of proper faces; filtration of a chain is that of its largest member.
    pub fn barycentric_subdivide(&self) -> FilteredComplex {
        let bar_label = |d: usize, k: u32| -> String {
            if d == 0 {
                self.vertex_label(self.simplex(0, k)[0]).to_string()
            } else {
                let inner = self
                    .simplex(d, k)
                    .iter()
                    .map(|v| self.vertex_label(*v))
                    .collect::<Vec<_>>()
                    .join("|");
                format!("[{inner}]")
            }
        };
        let mut b = ComplexBuilder::new(&format!("sd:{}", self.name), self.n);
        // fix vertex order: barycenters in (dim, index) order
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                b.vertex(&bar_label(d, k as u32));
            }
        }
        // enumerate all face chains by descending extension from the top
        fn emit(
            x: &FilteredComplex,
            b: &mut ComplexBuilder,
            chain: &mut Vec<(usize, u32)>,
            bar_label: &dyn Fn(usize, u32) -> String,
        ) {
            let labels: Vec<String> =
                chain.iter().map(|(d, k)| bar_label(*d, *k)).collect();
            let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
            let (td, tk) = *chain.last().unwrap();
            b.add(&refs, Some(x.filt(td, tk)), x.is_boundary_marked(td, tk));
            let (fd, fk) = chain[0];
            if fd == 0 {
                return;
            }
            // proper faces of the first element, every dimension
            let s = x.simplex(fd, fk).to_vec();
            for mask in 1u32..(1 << s.len()) - 1 {
                let face: Vec<Vertex> = (0..s.len())
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| s[j])
                    .collect();
                let (d2, k2) = x.index_of(&face).expect("closure");
                chain.insert(0, (d2, k2));
                emit(x, b, chain, bar_label);
                chain.remove(0);
            }
        }
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let mut chain = vec![(d, k as u32)];
                // only extend downward from the top element; emit handles it
                emit(self, &mut b, &mut chain, &bar_label);
            }
        }
        let mut out = b.build().expect("subdivision is well formed");
        out.set_name(&format!("sd:{}", self.name));
        out
    }

    pub fn subdivide_times(&self, times: usize) -> FilteredComplex {
        let mut x = self.clone();
        for _ in 0..times {
            x = x.barycentric_subdivide();
        }
        x
    }

    /// Disjoint union; both parts keep their filtrations. Formal dimensions
    /// must agree for the result to remain a pseudomanifold model.
    pub fn disjoint_union(&self, other: &FilteredComplex) -> Result<FilteredComplex> {
        if self.n != other.n {
            return Err(Error::InvalidComplex(format!(
                "disjoint union of dimensions {} and {}",
                self.n, other.n
            )));
        }
        let mut b =
            ComplexBuilder::new(&format!("union:{}:{}", self.name, other.name), self.n);
        for (prefix, x) in [("a:", self), ("b:", other)] {
            for v in &x.vertex_labels {
                b.vertex(&format!("{prefix}{v}"));
            }
            for d in 0..=x.max_dim() {
                for k in 0..x.count(d) {
                    let labels: Vec<String> = x
                        .simplex(d, k as u32)
                        .iter()
                        .map(|v| format!("{prefix}{}", x.vertex_label(*v)))
                        .collect();
                    let refs: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
                    b.add(&refs, Some(x.filt(d, k as u32)), x.is_boundary_marked(d, k as u32));
                }
            }
        }
        b.build()
    }

    pub fn boundary_subcomplex(&self) -> Subcomplex {
        Subcomplex::boundary_of(self)
    }

    /// The boundary as a standalone complex of dimension n−1, with
    /// filtration capped at n−1.
    pub fn boundary_complex(&self) -> Result<FilteredComplex> {
        if !self.has_boundary {
            return Err(Error::InvalidComplex("complex has no boundary".into()));
        }
        let bn = self.n - 1;
        let mut b = ComplexBuilder::new(&format!("bd:{}", self.name), bn);
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                if !self.boundary[d][k] {
                    continue;
                }
                let labels: Vec<&str> =
                    self.simplex(d, k as u32).iter().map(|v| self.vertex_label(*v)).collect();
                b.add(&labels, Some(self.filt(d, k as u32).min(bn)), false);
            }
        }
        b.build()
    }

    /// A closed subcomplex as a standalone complex of the same formal
    /// dimension, keeping labels, filtration values and boundary marks.
    pub fn induced(&self, sub: &Subcomplex, name: &str) -> Result<FilteredComplex> {
        if !sub.is_closed(self) {
            return Err(Error::InvalidComplex(format!(
                "induced complex of a set not closed under faces in {}",
                self.name
            )));
        }
        let mut b = ComplexBuilder::new(name, self.n);
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                if !sub.contains(d, k as u32) {
                    continue;
                }
                let labels: Vec<&str> =
                    self.simplex(d, k as u32).iter().map(|v| self.vertex_label(*v)).collect();
                b.add(&labels, Some(self.filt(d, k as u32)), self.is_boundary_marked(d, k as u32));
            }
        }
        b.build()
    }

    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Value};
        let mut simplices = Vec::with_capacity(self.total_simplices());
        for d in 0..=self.max_dim() {
            for k in 0..self.count(d) {
                let verts: Vec<Value> = self
                    .simplex(d, k as u32)
                    .iter()
                    .map(|v| Value::String(self.vertex_label(*v).to_string()))
                    .collect();
                let mut o = serde_json::Map::new();
                o.insert("verts".into(), Value::Array(verts));
                o.insert("filt".into(), json!(self.filt(d, k as u32)));
                if self.boundary[d][k] {
                    o.insert("boundary".into(), Value::Bool(true));
                }
                simplices.push(Value::Object(o));
            }
        }
        json!({
            "name": self.name,
            "n": self.n,
            "vertices": self.vertex_labels,
            "simplices": simplices,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<FilteredComplex> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Json("complex JSON must be an object".into()))?;
        let n = obj
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Json("missing or bad \"n\"".into()))? as usize;
        let name = obj.get("name").and_then(|x| x.as_str()).unwrap_or("");
        let mut b = ComplexBuilder::new(name, n);
        if let Some(verts) = obj.get("vertices") {
            for lv in verts
                .as_array()
                .ok_or_else(|| Error::Json("\"vertices\" must be an array".into()))?
            {
                let l = lv
                    .as_str()
                    .ok_or_else(|| Error::Json("vertex labels must be strings".into()))?;
                b.vertex(l);
            }
        }
        let simplices = obj
            .get("simplices")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Json("missing \"simplices\" array".into()))?;
        for s in simplices {
            let so = s
                .as_object()
                .ok_or_else(|| Error::Json("each simplex must be an object".into()))?;
            let verts = so
                .get("verts")
                .and_then(|x| x.as_array())
                .ok_or_else(|| Error::Json("simplex missing \"verts\"".into()))?;
            let labels: Vec<&str> = verts
                .iter()
                .map(|lv| {
                    lv.as_str().ok_or_else(|| Error::Json("vertex labels must be strings".into()))
                })
                .collect::<Result<_>>()?;
            let filt = match so.get("filt") {
                None => None,
                Some(f) => Some(
                    f.as_u64().ok_or_else(|| Error::Json("\"filt\" must be an integer".into()))?
                        as usize,
                ),
            };
            let boundary = so.get("boundary").and_then(|x| x.as_bool()).unwrap_or(false);
            b.add(&labels, filt, boundary);
        }
        b.build()
    }

    /// Equality of everything except the name.
    pub fn structure_eq(&self, other: &FilteredComplex) -> bool {
        self.n == other.n
            && self.vertex_labels == other.vertex_labels
            && self.simplices == other.simplices
            && self.filt == other.filt
            && self.boundary == other.boundary
    }
}

/// Staircase product triangulation with projection metadata.
pub struct Product {
    pub complex: FilteredComplex,
    /// per dim, per simplex: (x dim, x index, y dim, y index) of the exact
    /// projections
    proj: Vec<Vec<[u32; 4]>>,
    ny: u32,
}

impl Product {
    /// Vertex of the product from factor vertices; the order is x-major.
    pub fn pair_vertex(&self, xv: Vertex, yv: Vertex) -> Vertex {
        xv * self.ny + yv
    }

    pub fn split_vertex(&self, v: Vertex) -> (Vertex, Vertex) {
        (v / self.ny, v % self.ny)
    }

    pub fn proj(&self, d: usize, k: u32) -> (usize, u32, usize, u32) {
        let p = self.proj[d][k as usize];
        (p[0] as usize, p[1], p[2] as usize, p[3])
    }

    /// For each singular stratum of the product (in its table order), the
    /// factor strata indices; None marks a regular factor.
    pub fn strata_pairs(
        &self,
        prod_strata: &Strata,
        x_strata: &Strata,
        y_strata: &Strata,
    ) -> Result<crate::perversity::ProductStrata> {
        let mut pairs = vec![(None, None); prod_strata.table.len()];
        let mut seen = vec![false; prod_strata.table.len()];
        for (full_idx, info) in prod_strata.full.iter().enumerate() {
            let Some(t) = prod_strata.singular_of_full[full_idx] else { continue };
            let (d, k) = info.rep;
            let (xd, xk, yd, yk) = self.proj(d, k);
            let zx = x_strata.singular_index(xd, xk);
            let zy = y_strata.singular_index(yd, yk);
            if zx.is_none() && zy.is_none() {
                return Err(Error::InvalidComplex(format!(
                    "product stratum {} projects to two regular strata",
                    info.name
                )));
            }
            pairs[t] = (zx, zy);
            seen[t] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::InvalidComplex("product stratum without factors".into()));
        }
        Ok(pairs)
    }
}

/// Staircase triangulation of |X|×|Y|: simplices are strictly increasing
/// chains of vertex pairs whose projections are simplices of the factors.
/// The filtration of a chain is the sum of the filtrations of its exact
/// projections; a chain is boundary iff either projection is.
pub fn product(x: &FilteredComplex, y: &FilteredComplex) -> Product {
    let nx = x.vertex_count() as u32;
    let ny = y.vertex_count() as u32;
    let n = x.dim() + y.dim();
    let name = format!("prod:{}:{}", x.name(), y.name());
    let mut labels = Vec::with_capacity((nx * ny) as usize);
    for xv in 0..nx {
        for yv in 0..ny {
            labels.push(format!("({},{})", x.vertex_label(xv), y.vertex_label(yv)));
        }
    }
    // collect raw simplices per dimension, then sort and index
    let max_dim = x.max_dim() + y.max_dim();
    let mut raw: Vec<Vec<(Vec<Vertex>, usize, bool, [u32; 4])>> =
        (0..=max_dim).map(|_| Vec::new()).collect();
    let mut path: Vec<(usize, usize)> = Vec::new();
    for xd in 0..=x.max_dim() {
        for xk in 0..x.count(xd) {
            let sx = x.simplex(xd, xk as u32).to_vec();
            let fx = x.filt(xd, xk as u32);
            let bx = x.is_boundary_marked(xd, xk as u32);
            for yd in 0..=y.max_dim() {
                for yk in 0..y.count(yd) {
                    let sy = y.simplex(yd, yk as u32);
                    let f = fx + y.filt(yd, yk as u32);
                    let b = bx || y.is_boundary_marked(yd, yk as u32);
                    let meta = [xd as u32, xk as u32, yd as u32, yk as u32];
                    // staircase paths from (0,0) to (xd,yd), steps +x, +y, both
                    path.clear();
                    path.push((0, 0));
                    loop {
                        let &(i, j) = path.last().unwrap();
                        if i == xd && j == yd {
                            let verts: Vec<Vertex> =
                                path.iter().map(|&(a, b2)| sx[a] * ny + sy[b2]).collect();
                            raw[verts.len() - 1].push((verts, f, b, meta));
                            // backtrack to the last position with an untried step
                            loop {
                                let last = path.pop().unwrap();
                                let Some(&(pi, pj)) = path.last() else { break };
                                // step order: +x, +y, diagonal
                                let next = match (last.0 - pi, last.1 - pj) {
                                    (1, 0) if pj < yd => Some((pi, pj + 1)),
                                    (1, 0) | (0, 1) if pi < xd && pj < yd => {
                                        Some((pi + 1, pj + 1))
                                    }
                                    _ => None,
                                };
                                if let Some(nx2) = next {
                                    path.push(nx2);
                                    break;
                                }
                            }
                            if path.is_empty() {
                                break;
                            }
                        } else if i < xd {
                            path.push((i + 1, j));
                        } else {
                            path.push((i, j + 1));
                        }
                    }
                }
            }
        }
    }
    let mut simplices = Vec::with_capacity(max_dim + 1);
    let mut filt = Vec::with_capacity(max_dim + 1);
    let mut bnd = Vec::with_capacity(max_dim + 1);
    let mut index = Vec::with_capacity(max_dim + 1);
    let mut proj = Vec::with_capacity(max_dim + 1);
    let mut has_boundary = false;
    for mut dim_entries in raw {
        dim_entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut svec = Vec::with_capacity(dim_entries.len());
        let mut fvec = Vec::with_capacity(dim_entries.len());
        let mut bvec = Vec::with_capacity(dim_entries.len());
        let mut pvec = Vec::with_capacity(dim_entries.len());
        let mut ix = HashMap::with_capacity(dim_entries.len());
        for (k, (verts, f, b, meta)) in dim_entries.into_iter().enumerate() {
            ix.insert(verts.clone(), k as u32);
            svec.push(verts);
            fvec.push(f);
            bvec.push(b);
            has_boundary |= b;
            pvec.push(meta);
        }
        simplices.push(svec);
        filt.push(fvec);
        bnd.push(bvec);
        index.push(ix);
        proj.push(pvec);
    }
    let complex = FilteredComplex {
        name,
        n,
        vertex_labels: labels,
        simplices,
        filt,
        boundary: bnd,
        index,
        has_boundary,
    };
    Product { complex, proj, ny }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces;

    #[test]
    fn closure_and_filtration_inheritance() {
        let mut b = ComplexBuilder::new("tri", 2);
        b.simplex(&["a", "b", "c"]);
        b.add(&["a"], Some(0), false);
        let x = b.build().unwrap();
        assert_eq!(x.count(0), 3);
        assert_eq!(x.count(1), 3);
        assert_eq!(x.count(2), 1);
        // faces inherit filt 2 from the triangle; the explicit vertex wins
        let a = x.vertex_index("a").unwrap();
        let (d, k) = x.index_of(&[a]).unwrap();
        assert_eq!(x.filt(d, k), 0);
        let bvert = x.vertex_index("b").unwrap();
        let (d, k) = x.index_of(&[bvert]).unwrap();
        assert_eq!(x.filt(d, k), 2);
    }

    #[test]
    fn validate_accepts_torus_and_rejects_mutations() {
        let t = spaces::torus7();
        assert!(t.validate().is_empty(), "{:?}", t.validate());
        // delete one triangle: three live edges lose a coface
        let mut b = ComplexBuilder::new("holey", 2);
        for k in 1..t.count(2) {
            let labels: Vec<&str> =
                t.simplex(2, k as u32).iter().map(|v| t.vertex_label(*v)).collect();
            b.simplex(&labels);
        }
        let holey = b.build().unwrap();
        let report = holey.validate();
        assert_eq!(report.iter().filter(|m| m.contains("top cofaces")).count(), 3);
    }

    #[test]
    fn validate_rejects_increasing_filtration() {
        let mut b = ComplexBuilder::new("bad", 1);
        b.add(&["a", "b"], Some(0), false);
        b.add(&["a"], Some(1), false);
        b.add(&["b"], Some(0), false);
        let x = b.build().unwrap();
        assert!(x.validate().iter().any(|m| m.contains("filtration increases")));
    }

    #[test]
    fn cone_counts_and_boundary() {
        let c = spaces::circle3().cone().unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.count(0), 4);
        assert_eq!(c.count(1), 6);
        assert_eq!(c.count(2), 3);
        let apex = c.vertex_index("c").unwrap();
        let (d, k) = c.index_of(&[apex]).unwrap();
        assert_eq!(c.filt(d, k), 0);
        assert!(c.has_boundary());
        assert!(c.validate().is_empty(), "{:?}", c.validate());
        // boundary complex is the original circle, trivially filtered
        let bd = c.boundary_complex().unwrap();
        assert!(bd.structure_eq(&spaces::circle3()));
        // cone of the empty complex is a point
        let pt = ComplexBuilder::new("empty", 0).build().unwrap().cone().unwrap();
        assert_eq!(pt.dim(), 0);
        assert_eq!(pt.total_simplices(), 1);
        assert!(pt.validate().is_empty());
    }

    #[test]
    fn suspension_is_a_double_cone() {
        let s = spaces::circle3().suspension().unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.count(0), 5);
        assert_eq!(s.count(1), 9);
        assert_eq!(s.count(2), 6);
        assert!(s.validate().is_empty());
        let strata = s.strata();
        assert_eq!(strata.table.len(), 2);
        assert_eq!(strata.table.key(0).codim, 2);
        let st = spaces::suspended_torus();
        assert_eq!(st.count(0), 9);
        assert!(st.validate().is_empty());
        let strata = st.strata();
        assert_eq!(strata.table.len(), 2);
        assert!(strata.table.iter().all(|k| k.codim == 3));
        assert_eq!(strata.table.key(0).name, "n");
        assert_eq!(strata.table.key(1).name, "s");
    }

    #[test]
    fn link_recovers_cone_base() {
        let t = spaces::torus7();
        let c = t.cone().unwrap();
        // cone cannot be linked while it has a boundary marker; strip it by
        // treating the suspension instead, whose apex link is the torus
        let st = spaces::suspended_torus();
        let apex = st.vertex_index("n").unwrap();
        let l = st.link(apex).unwrap();
        assert!(l.structure_eq(&t), "link of suspension apex is the torus");
        assert!(c.validate().is_empty());
        // ordinary vertex of the torus: link is a circle
        let v0 = t.vertex_index("0").unwrap();
        let lk = t.link(v0).unwrap();
        assert_eq!(lk.dim(), 1);
        assert!(lk.validate().is_empty());
        assert_eq!(lk.count(0), lk.count(1));
    }

    #[test]
    fn strata_of_library_spaces() {
        assert_eq!(spaces::torus7().strata().table.len(), 0);
        let sp = spaces::circle_two_points();
        let strata = sp.strata();
        assert_eq!(strata.table.len(), 2);
        assert!(strata.table.iter().all(|k| k.codim == 1));
        // four strata total: two arcs (regular) and two points
        assert_eq!(strata.full.len(), 4);
    }

    #[test]
    fn product_counts_and_filtration() {
        let mut b = ComplexBuilder::new("edge", 1);
        b.simplex(&["a", "b"]);
        let e = b.build().unwrap();
        let p = product(&e, &e);
        assert_eq!(p.complex.count(0), 4);
        assert_eq!(p.complex.count(1), 5);
        assert_eq!(p.complex.count(2), 2);

        let c = spaces::circle3();
        let tt = product(&c, &c);
        assert_eq!(tt.complex.count(0), 9);
        assert_eq!(tt.complex.count(1), 27);
        assert_eq!(tt.complex.count(2), 18);
        assert!(tt.complex.validate().is_empty());
        assert!(tt.complex.is_trivially_filtered());

        // filtration adds across factors
        let st = spaces::suspended_torus();
        let pc = product(&st, &c);
        assert_eq!(pc.complex.dim(), 4);
        assert!(pc.complex.validate().is_empty());
        let apex = st.vertex_index("n").unwrap();
        let v0 = c.vertex_index("0").unwrap();
        let pv = pc.pair_vertex(apex, v0);
        let (d, k) = pc.complex.index_of(&[pv]).unwrap();
        assert_eq!(pc.complex.filt(d, k), 0 + 1);
        // strata pairs: singular strata are (apex) x (regular circle)
        let ps = pc.complex.strata();
        let pairs = pc
            .strata_pairs(&ps, &st.strata(), &c.strata())
            .unwrap();
        assert_eq!(pairs.len(), 2);
        assert!(pairs.iter().all(|(zx, zy)| zx.is_some() && zy.is_none()));
        // codimension is additive
        for key in ps.table.iter() {
            assert_eq!(key.codim, 3);
        }
    }

    #[test]
    fn product_strata_match_factor_products() {
        let sp = spaces::circle_two_points();
        let p = product(&sp, &sp);
        let ps = p.complex.strata();
        // (2 points + 2 arcs)^2: 4 point-point (codim 2), 8 point-arc (codim 1)
        let pairs = p.strata_pairs(&ps, &sp.strata(), &sp.strata()).unwrap();
        assert_eq!(ps.table.len(), 12);
        let both = pairs.iter().filter(|(a, b)| a.is_some() && b.is_some()).count();
        assert_eq!(both, 4);
        for (k, key) in ps.table.iter().enumerate() {
            let expect = match pairs[k] {
                (Some(_), Some(_)) => 2,
                _ => 1,
            };
            assert_eq!(key.codim, expect);
        }
        assert!(p.complex.validate().is_empty());
    }

    #[test]
    fn subdivision_counts() {
        let mut b = ComplexBuilder::new("tri", 2);
        b.simplex(&["a", "b", "c"]);
        b.add(&["a", "b"], None, true);
        b.add(&["b", "c"], None, true);
        b.add(&["a", "c"], None, true);
        let tri = b.build().unwrap();
        assert!(tri.validate().is_empty(), "{:?}", tri.validate());
        let sd = tri.barycentric_subdivide();
        assert_eq!(sd.count(2), 6);
        assert_eq!(sd.count(0), tri.total_simplices());
        assert!(sd.validate().is_empty(), "{:?}", sd.validate());
        assert_eq!(sd.boundary_subcomplex().count(1), 6);
        // filtration carries to barycenters
        let st = spaces::suspended_torus();
        let sd = st.barycentric_subdivide();
        assert_eq!(sd.count(0), st.total_simplices());
        assert!(sd.validate().is_empty());
        let apex_bar = sd.vertex_index("n").unwrap();
        let (d, k) = sd.index_of(&[apex_bar]).unwrap();
        assert_eq!(sd.filt(d, k), 0);
        assert_eq!(sd.strata().table.len(), 2);
    }

    #[test]
    fn json_round_trip() {
        let st = spaces::suspended_torus();
        let j = st.to_json();
        let back = FilteredComplex::from_json(&j).unwrap();
        assert!(back.structure_eq(&st));
        assert_eq!(back.name(), st.name());
        // canonical output is stable
        assert_eq!(serde_json::to_string(&j).unwrap(), serde_json::to_string(&back.to_json()).unwrap());
    }

    #[test]
    fn deleted_star_is_closed_and_misses_the_star() {
        let st = spaces::suspended_torus();
        let apex = st.vertex_index("n").unwrap();
        let del = Subcomplex::deleted_star(&st, apex);
        assert!(del.is_closed(&st));
        let (d, k) = st.index_of(&[apex]).unwrap();
        assert!(!del.contains(d, k));
        // the south cone survives
        let s = st.vertex_index("s").unwrap();
        let (d, k) = st.index_of(&[s]).unwrap();
        assert!(del.contains(d, k));
    }

    #[test]
    fn disjoint_union_keeps_structure() {
        let t = spaces::torus7();
        let u = t.disjoint_union(&t).unwrap();
        assert_eq!(u.count(2), 2 * t.count(2));
        assert!(u.validate().is_empty());
        assert_eq!(u.strata().full.len(), 2);
        assert!(t.disjoint_union(&spaces::circle3()).is_err());
    }

    #[test]
    fn boundary_validation_flags_unmarked_holes() {
        // torus times interval validates; dropping the marks does not
        let ti = product(&spaces::torus7(), &spaces::interval(1));
        assert!(ti.complex.has_boundary());
        assert!(ti.complex.validate().is_empty(), "{:?}", ti.complex.validate());
        let bd = ti.complex.boundary_complex().unwrap();
        assert_eq!(bd.dim(), 2);
        assert!(bd.validate().is_empty());
        assert_eq!(bd.strata().full.len(), 2);
    }
}
