//! Exact scalars and sparse linear algebra.
//!
//! Everything downstream (chain complexes, products, duality maps) reduces to
//! the four operations here: rank, kernel, solve, and quotient coordinates.
//! Elimination pivots are chosen leftmost column first, then lowest row
//! index, so every basis this module hands out is deterministic.

use crate::error::{Error, Result};
use num_traits::{One, Zero};
use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar belonging to an exact field. Implemented by `Rational` and [`GfP`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    /// Identifies the concrete field a value belongs to. `None` means the
    /// value is a field-agnostic constant (rationals always, or a prime-field
    /// element that has not met a modulus yet).
    fn field_tag(&self) -> Option<u32>;
}

impl Field for num_rational::BigRational {
    fn field_tag(&self) -> Option<u32> {
        None
    }
}

/// Prime-field element with a runtime modulus.
///
/// The modulus 0 marks a constant produced by `zero()`/`one()` before it has
/// met a concrete field; such values unify with any modulus on first contact.
/// Bound values keep the invariant `0 <= v < m`.
#[derive(Clone, Copy, Debug)]
pub struct GfP {
    v: i64,
    m: u32,
}

fn is_prime_u32(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl GfP {
    /// Element of GF(p). `p` must be prime and below 2^31.
    pub fn new(v: i64, p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime_u32(p) {
            return Err(Error::BadModulus(p as i64));
        }
        Ok(GfP { v: v.rem_euclid(p as i64), m: p })
    }

    /// Field-agnostic integer constant.
    pub fn unbound(v: i64) -> Self {
        GfP { v, m: 0 }
    }

    pub fn modulus(&self) -> Option<u32> {
        if self.m == 0 {
            None
        } else {
            Some(self.m)
        }
    }

    pub fn value(&self) -> i64 {
        self.v
    }

    fn unify(a: &GfP, b: &GfP) -> u32 {
        match (a.m, b.m) {
            (0, m) | (m, 0) => m,
            (m1, m2) => {
                assert_eq!(m1, m2, "prime-field arithmetic across moduli {m1} and {m2}");
                m1
            }
        }
    }

    fn reduced(v: i64, m: u32) -> GfP {
        if m == 0 {
            GfP { v, m }
        } else {
            GfP { v: v.rem_euclid(m as i64), m }
        }
    }

    fn inverse_mod(v: i64, m: i64) -> i64 {
        // extended euclid; v is nonzero mod m, m prime
        let (mut r0, mut r1) = (m, v.rem_euclid(m));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        assert_eq!(r0, 1, "no inverse: {v} mod {m}");
        t0.rem_euclid(m)
    }
}

impl PartialEq for GfP {
    fn eq(&self, other: &Self) -> bool {
        match (self.m, other.m) {
            (0, 0) => self.v == other.v,
            (0, m) => self.v.rem_euclid(m as i64) == other.v,
            (m, 0) => self.v == other.v.rem_euclid(m as i64),
            (m1, m2) => m1 == m2 && self.v == other.v,
        }
    }
}

impl Display for GfP {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Zero for GfP {
    fn zero() -> Self {
        GfP::unbound(0)
    }
    fn is_zero(&self) -> bool {
        if self.m == 0 {
            self.v == 0
        } else {
            self.v.rem_euclid(self.m as i64) == 0
        }
    }
}

impl One for GfP {
    fn one() -> Self {
        GfP::unbound(1)
    }
}

impl Add for GfP {
    type Output = GfP;
    fn add(self, rhs: Self) -> Self {
        let m = GfP::unify(&self, &rhs);
        GfP::reduced(self.v + rhs.v, m)
    }
}

impl Sub for GfP {
    type Output = GfP;
    fn sub(self, rhs: Self) -> Self {
        let m = GfP::unify(&self, &rhs);
        GfP::reduced(self.v - rhs.v, m)
    }
}

impl Mul for GfP {
    type Output = GfP;
    fn mul(self, rhs: Self) -> Self {
        let m = GfP::unify(&self, &rhs);
        let (a, b) = if m == 0 {
            (self.v, rhs.v)
        } else {
            (self.v.rem_euclid(m as i64), rhs.v.rem_euclid(m as i64))
        };
        GfP::reduced(a * b, m)
    }
}

impl Div for GfP {
    type Output = GfP;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in GF(p)");
        let m = GfP::unify(&self, &rhs);
        if m == 0 {
            // only unit constants can divide before a modulus is known
            match rhs.v {
                1 => self,
                -1 => -self,
                v => panic!("division by unbound constant {v}"),
            }
        } else {
            let inv = GfP::inverse_mod(rhs.v, m as i64);
            GfP::reduced(self.v.rem_euclid(m as i64) * inv, m)
        }
    }
}

impl Neg for GfP {
    type Output = GfP;
    fn neg(self) -> Self {
        GfP::reduced(-self.v, self.m)
    }
}

impl Field for GfP {
    fn field_tag(&self) -> Option<u32> {
        self.modulus()
    }
}

/// Carries the concrete field a computation runs in; `one` is a bound 1.
#[derive(Clone, Debug)]
pub struct Coeffs<F: Field> {
    pub one: F,
}

impl Coeffs<num_rational::BigRational> {
    pub fn rational() -> Self {
        Coeffs { one: num_rational::BigRational::one() }
    }
}

impl Coeffs<GfP> {
    pub fn prime(p: u32) -> Result<Self> {
        Ok(Coeffs { one: GfP::new(1, p)? })
    }
}

impl<F: Field> Coeffs<F> {
    pub fn of_int(&self, n: i64) -> F {
        let mut acc = F::zero();
        let unit = if n < 0 { -self.one.clone() } else { self.one.clone() };
        for _ in 0..n.unsigned_abs() {
            acc = acc + unit.clone();
        }
        acc
    }

    /// Short printable field name for reports.
    pub fn describe(&self) -> String {
        match self.one.field_tag() {
            None => "Q".to_string(),
            Some(p) => format!("GF({p})"),
        }
    }
}

/// Sparse vector: sorted by index, no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SVec<F> {
    entries: Vec<(u32, F)>,
}

impl<F: Field> Default for SVec<F> {
    fn default() -> Self {
        SVec::new()
    }
}

impl<F: Field> SVec<F> {
    pub fn new() -> Self {
        SVec { entries: Vec::new() }
    }

    pub fn unit(i: u32, c: F) -> Self {
        if c.is_zero() {
            SVec::new()
        } else {
            SVec { entries: vec![(i, c)] }
        }
    }

    /// Builds from arbitrary (index, value) pairs: duplicates are summed and
    /// zeros dropped, so the result is independent of insertion order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, F)>) -> Self {
        let mut v: Vec<(u32, F)> = pairs.into_iter().collect();
        v.sort_by_key(|e| e.0);
        let mut out: Vec<(u32, F)> = Vec::with_capacity(v.len());
        for (i, c) in v {
            match out.last_mut() {
                Some((j, acc)) if *j == i => {
                    *acc = acc.clone() + c;
                }
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        SVec { entries: out }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &(u32, F)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(u32, F)] {
        &self.entries
    }

    pub fn get(&self, i: u32) -> Option<&F> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<(u32, &F)> {
        self.entries.first().map(|(i, c)| (*i, c))
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return SVec::new();
        }
        SVec { entries: self.entries.iter().map(|(i, v)| (*i, v.clone() * c.clone())).collect() }
    }

    /// self + c * other, merged in one pass.
    pub fn add_scaled(&self, other: &Self, c: &F) -> Self {
        if c.is_zero() || other.is_empty() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                let val = other.entries[b].1.clone() * c.clone();
                if !val.is_zero() {
                    out.push((ib, val));
                }
                b += 1;
            } else {
                let val = self.entries[a].1.clone() + other.entries[b].1.clone() * c.clone();
                if !val.is_zero() {
                    out.push((ia, val));
                }
                a += 1;
                b += 1;
            }
        }
        out.extend_from_slice(&self.entries[a..]);
        for (i, v) in &other.entries[b..] {
            let val = v.clone() * c.clone();
            if !val.is_zero() {
                out.push((*i, val));
            }
        }
        SVec { entries: out }
    }

    pub fn dot(&self, other: &Self) -> F {
        let mut acc = F::zero();
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = acc + self.entries[a].1.clone() * other.entries[b].1.clone();
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Keeps entries whose index satisfies the predicate.
    pub fn filter_support(&self, keep: impl Fn(u32) -> bool) -> Self {
        SVec { entries: self.entries.iter().filter(|(i, _)| keep(*i)).cloned().collect() }
    }

    /// Applies an index map; entries mapped to None are dropped. The map may
    /// permute or collide indices; collisions are summed.
    pub fn map_support(&self, f: impl Fn(u32) -> Option<u32>) -> Self {
        SVec::from_pairs(
            self.entries.iter().filter_map(|(i, c)| f(*i).map(|j| (j, c.clone()))),
        )
    }

    pub fn into_pairs(self) -> Vec<(u32, F)> {
        self.entries
    }
}

/// Sparse matrix with validated, canonical entries.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    row_data: Vec<SVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    /// Builds from triplets. Duplicate positions are summed, zeros dropped;
    /// the result does not depend on triplet order. Rejects out-of-range
    /// indices and entries from different fields.
    pub fn new(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (u32, u32, F)>,
    ) -> Result<Self> {
        let mut per_row: Vec<Vec<(u32, F)>> = vec![Vec::new(); rows];
        let mut tag: Option<u32> = None;
        for (r, c, v) in triplets {
            if r as usize >= rows || c as usize >= cols {
                return Err(Error::IndexOutOfBounds { row: r, col: c, rows, cols });
            }
            if let Some(t) = v.field_tag() {
                match tag {
                    None => tag = Some(t),
                    Some(t0) if t0 != t => {
                        return Err(Error::FieldMismatch(format!(
                            "entry at ({r},{c}) has modulus {t}, matrix has {t0}"
                        )))
                    }
                    _ => {}
                }
            }
            per_row[r as usize].push((c, v));
        }
        let row_data = per_row.into_iter().map(SVec::from_pairs).collect();
        Ok(SparseMatrix { rows, cols, row_data })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, row_data: vec![SVec::new(); rows] }
    }

    pub fn identity(n: usize, coeffs: &Coeffs<F>) -> Self {
        let mut m = SparseMatrix::zero(n, n);
        for i in 0..n {
            m.row_data[i] = SVec::unit(i as u32, coeffs.one.clone());
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<SVec<F>>) -> Self {
        SparseMatrix { rows: rows.len(), cols, row_data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SVec<F> {
        &self.row_data[r]
    }

    pub fn nnz(&self) -> usize {
        self.row_data.iter().map(|r| r.len()).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> F {
        self.row_data[r].get(c as u32).cloned().unwrap_or_else(F::zero)
    }

    /// Sorted (row, col, value) triplets.
    pub fn entries(&self) -> Vec<(u32, u32, F)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (r, row) in self.row_data.iter().enumerate() {
            for (c, v) in row.iter() {
                out.push((r as u32, *c, v.clone()));
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut per_row: Vec<Vec<(u32, F)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.row_data.iter().enumerate() {
            for (c, v) in row.iter() {
                per_row[*c as usize].push((r as u32, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            row_data: per_row.into_iter().map(SVec::from_pairs).collect(),
        }
    }

    /// y = M x with x indexed by columns.
    pub fn mul_vec(&self, x: &SVec<F>) -> SVec<F> {
        let mut out = Vec::new();
        for (r, row) in self.row_data.iter().enumerate() {
            let v = row.dot(x);
            if !v.is_zero() {
                out.push((r as u32, v));
            }
        }
        SVec { entries: out }
    }

    /// M N, both sparse.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut rows = Vec::with_capacity(self.rows);
        for row in &self.row_data {
            let mut acc = SVec::new();
            for (c, v) in row.iter() {
                acc = acc.add_scaled(&other.row_data[*c as usize], v);
            }
            rows.push(acc);
        }
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, row_data: rows })
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.cols);
        for row in &self.row_data {
            ech.insert_forward(row.clone());
        }
        ech.dim()
    }

    /// Basis of the null space {x : Mx = 0}, as a reduced-echelon subspace.
    pub fn kernel_basis(&self) -> Subspace<F> {
        let mut ech = Echelon::new(self.cols);
        for row in &self.row_data {
            ech.insert_forward(row.clone());
        }
        ech.finalize_reduced();
        let leads = ech.leads().to_vec();
        let mut is_pivot = vec![false; self.cols];
        for &p in &leads {
            is_pivot[p as usize] = true;
        }
        // column view of the reduced rows, to read corrections per free column
        let mut col_entries: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.cols];
        for (k, row) in ech.rows().iter().enumerate() {
            for (c, v) in row.iter() {
                if *c != leads[k] {
                    col_entries[*c as usize].push((k, v.clone()));
                }
            }
        }
        let mut basis = Vec::new();
        let mut free_cols = Vec::new();
        for j in 0..self.cols {
            if is_pivot[j] {
                continue;
            }
            let mut pairs = vec![(j as u32, F::one())];
            for (k, v) in &col_entries[j] {
                pairs.push((leads[*k], -v.clone()));
            }
            basis.push(SVec::from_pairs(pairs));
            free_cols.push(j as u32);
        }
        // one vector per free column, coefficient 1 there, zero at the other
        // free columns: already mutually reduced with the free columns as pivots
        Subspace { ambient: self.cols, basis, pivots: free_cols }
    }

    /// Solves M x = b. Returns Ok(None) when inconsistent; the returned
    /// solution sets all free variables to zero.
    pub fn solve(&self, b: &SVec<F>) -> Result<Option<SVec<F>>> {
        if let Some((i, _)) = b.entries.last() {
            if *i as usize >= self.rows {
                return Err(Error::DimensionMismatch(format!(
                    "rhs index {} outside {} rows",
                    i, self.rows
                )));
            }
        }
        let n = self.cols as u32;
        let mut ech = Echelon::new(self.cols + 1);
        for (r, row) in self.row_data.iter().enumerate() {
            let mut v = row.clone();
            if let Some(c) = b.get(r as u32) {
                v = v.add_scaled(&SVec::unit(n, F::one()), c);
            }
            ech.insert_forward(v);
        }
        ech.finalize_reduced();
        let mut x = Vec::new();
        for (k, &p) in ech.leads().iter().enumerate() {
            if p == n {
                return Ok(None);
            }
            if let Some(c) = ech.rows()[k].get(n) {
                x.push((p, c.clone()));
            }
        }
        Ok(Some(SVec::from_pairs(x)))
    }
}

/// Incremental echelon basis. Rows keep unique leading columns with
/// coefficient 1; inserting the rows of a matrix top to bottom reproduces
/// elimination with the leftmost-column, lowest-row pivot rule.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    ambient: usize,
    rows: Vec<SVec<F>>,
    lead: Vec<u32>,
    // lead_of[col] = row index + 1, 0 = none
    lead_of: Vec<u32>,
    reduced: bool,
}

impl<F: Field> Echelon<F> {
    pub fn new(ambient: usize) -> Self {
        Echelon { ambient, rows: Vec::new(), lead: Vec::new(), lead_of: vec![0; ambient], reduced: false }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec<F>] {
        &self.rows
    }

    /// Leading columns in insertion order.
    pub fn leads(&self) -> &[u32] {
        &self.lead
    }

    /// Leading columns sorted ascending.
    pub fn pivots(&self) -> Vec<u32> {
        let mut p = self.lead.clone();
        p.sort_unstable();
        p
    }

    pub fn row_for_lead(&self, col: u32) -> Option<usize> {
        match self.lead_of[col as usize] {
            0 => None,
            k => Some((k - 1) as usize),
        }
    }

    /// Normal form of v modulo the current span (triangular reduction).
    pub fn reduce(&self, mut v: SVec<F>) -> SVec<F> {
        let mut cursor = 0usize;
        loop {
            let hit = v.entries[cursor..]
                .iter()
                .position(|(i, _)| self.lead_of[*i as usize] != 0)
                .map(|off| cursor + off);
            let Some(at) = hit else { return v };
            cursor = at;
            let (col, coeff) = (v.entries[at].0, v.entries[at].1.clone());
            let row = &self.rows[(self.lead_of[col as usize] - 1) as usize];
            v = v.add_scaled(row, &-coeff);
            // entries before `cursor` are untouched: the row leads at `col`
        }
    }

    /// Inserts v reduced against existing rows only (no back-reduction).
    /// Returns the new row's index, or None if v lies in the span.
    pub fn insert_forward(&mut self, v: SVec<F>) -> Option<usize> {
        let v = self.reduce(v);
        let (col, c0) = match v.leading() {
            None => return None,
            Some((col, c)) => (col, c.clone()),
        };
        let v = v.scale(&(F::one() / c0));
        let k = self.rows.len();
        self.rows.push(v);
        self.lead.push(col);
        self.lead_of[col as usize] = (k + 1) as u32;
        self.reduced = false;
        Some(k)
    }

    /// Inserts v and keeps the basis fully reduced (zeros above pivots).
    pub fn insert(&mut self, v: SVec<F>) -> Option<usize> {
        let k = self.insert_forward(v)?;
        let col = self.lead[k];
        let newrow = self.rows[k].clone();
        for j in 0..k {
            if let Some(c) = self.rows[j].get(col) {
                let c = c.clone();
                self.rows[j] = self.rows[j].add_scaled(&newrow, &-c);
            }
        }
        Some(k)
    }

    /// One backward pass making every row vanish at all other pivots.
    pub fn finalize_reduced(&mut self) {
        if self.reduced {
            return;
        }
        // order rows by descending lead; reduce earlier rows against later
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| std::cmp::Reverse(self.lead[k]));
        for (pos, &k) in order.iter().enumerate() {
            let mut row = std::mem::take(&mut self.rows[k]);
            // reduce against rows with larger lead, which are already final
            for &k2 in &order[..pos] {
                if let Some(c) = row.get(self.lead[k2]) {
                    let c = c.clone();
                    row = row.add_scaled(&self.rows[k2], &-c);
                }
            }
            self.rows[k] = row;
        }
        self.reduced = true;
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    /// Converts into a Subspace (sorted pivots, fully reduced rows).
    pub fn into_subspace(mut self) -> Subspace<F> {
        self.finalize_reduced();
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&k| self.lead[k]);
        let pivots: Vec<u32> = order.iter().map(|&k| self.lead[k]).collect();
        let basis: Vec<SVec<F>> = order.iter().map(|&k| self.rows[k].clone()).collect();
        Subspace { ambient: self.ambient, basis, pivots }
    }
}

/// Subspace given by a reduced-echelon basis with recorded pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F> {
    ambient: usize,
    basis: Vec<SVec<F>>,
    pivots: Vec<u32>,
}

impl<F: Field> Subspace<F> {
    pub fn from_vectors(ambient: usize, vecs: impl IntoIterator<Item = SVec<F>>) -> Self {
        let mut ech = Echelon::new(ambient);
        for v in vecs {
            ech.insert_forward(v);
        }
        ech.into_subspace()
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SVec<F>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[u32] {
        &self.pivots
    }

    pub fn to_echelon(&self) -> Echelon<F> {
        let mut ech = Echelon::new(self.ambient);
        for row in &self.basis {
            ech.insert_forward(row.clone());
        }
        ech.reduced = true;
        ech
    }

    pub fn contains(&self, v: &SVec<F>) -> bool {
        self.reduce(v.clone()).is_empty()
    }

    pub fn is_subspace_of(&self, other: &Subspace<F>) -> bool {
        self.basis.iter().all(|v| other.contains(v))
    }

    /// Normal form of v modulo this subspace.
    pub fn reduce(&self, mut v: SVec<F>) -> SVec<F> {
        // rows are fully reduced: each pivot hit is resolved by one row
        let mut k = 0usize;
        while k < self.basis.len() {
            let p = self.pivots[k];
            if let Some(c) = v.get(p) {
                let c = c.clone();
                v = v.add_scaled(&self.basis[k], &-c);
            }
            k += 1;
        }
        v
    }

    /// Coordinates of v in the echelon basis; None when v is outside.
    pub fn coords(&self, v: &SVec<F>) -> Option<Vec<F>> {
        let coords: Vec<F> =
            self.pivots.iter().map(|p| v.get(*p).cloned().unwrap_or_else(F::zero)).collect();
        let mut residue = v.clone();
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                residue = residue.add_scaled(&self.basis[k], &-c.clone());
            }
        }
        if residue.is_empty() {
            Some(coords)
        } else {
            None
        }
    }

    /// Coordinates of v in a canonical basis of (self / boundaries).
    /// Precondition: boundaries is a subspace of self and v lies in self.
    pub fn quotient_coords(&self, boundaries: &Subspace<F>, v: &SVec<F>) -> Result<Vec<F>> {
        let q = Quotient::new(self, boundaries.clone())?;
        q.coords(v)
    }
}

/// Canonical basis of a quotient cycles/boundaries with coordinate lookup.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    boundaries: Subspace<F>,
    reps: Subspace<F>,
}

impl<F: Field> Quotient<F> {
    pub fn new(cycles: &Subspace<F>, boundaries: Subspace<F>) -> Result<Self> {
        if !boundaries.is_subspace_of(cycles) {
            return Err(Error::DimensionMismatch(
                "boundaries are not contained in cycles".to_string(),
            ));
        }
        let mut ech = Echelon::new(cycles.ambient_dim());
        for v in cycles.basis() {
            ech.insert_forward(boundaries.reduce(v.clone()));
        }
        Ok(Quotient { boundaries, reps: ech.into_subspace() })
    }

    /// Builds directly from precomputed pieces; callers guarantee that reps
    /// are boundary-reduced and independent.
    pub fn from_parts(boundaries: Subspace<F>, reps: Subspace<F>) -> Self {
        Quotient { boundaries, reps }
    }

    pub fn dim(&self) -> usize {
        self.reps.dim()
    }

    pub fn boundaries(&self) -> &Subspace<F> {
        &self.boundaries
    }

    /// Representative cycle for coordinate k.
    pub fn rep(&self, k: usize) -> &SVec<F> {
        &self.reps.basis()[k]
    }

    pub fn reps(&self) -> &Subspace<F> {
        &self.reps
    }

    /// Class coordinates of v. Linear; zero exactly on boundaries.
    pub fn coords(&self, v: &SVec<F>) -> Result<Vec<F>> {
        let nf = self.boundaries.reduce(v.clone());
        let coords: Vec<F> = self
            .reps
            .pivots()
            .iter()
            .map(|p| nf.get(*p).cloned().unwrap_or_else(F::zero))
            .collect();
        let mut residue = nf;
        for (k, c) in coords.iter().enumerate() {
            if !c.is_zero() {
                residue = residue.add_scaled(&self.reps.basis()[k], &-c.clone());
            }
        }
        if residue.is_empty() {
            Ok(coords)
        } else {
            Err(Error::NotACycle(format!(
                "vector is outside the cycle space spanned by boundaries and representatives \
                 (residue support size {})",
                residue.len()
            )))
        }
    }
}
