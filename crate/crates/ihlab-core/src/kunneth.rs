//! Chain-level cross product (Eilenberg-Zilber shuffles) and the Künneth
//! isomorphism on intersection homology, absolute and relative, with its
//! inverse realized as an exact linear solve.

use crate::complex::{product, FilteredComplex, Product, Subcomplex};
use crate::error::{Error, Result};
use crate::field::{Coeffs, Field, SVec, SparseMatrix};
use crate::ichain::{Chain, ClassSolver, Homology, IChainComplex};
use crate::perversity::{kunneth_perversity, Perversity};
use std::collections::HashMap;

/// One bidegree block of a tensor-coordinate layout.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBlock {
    pub x_degree: usize,
    pub y_degree: usize,
    pub x_dim: usize,
    pub y_dim: usize,
    pub offset: usize,
}

/// Coordinates of ⊕_{i+j=k} H_i(X) ⊗ H_j(Y): blocks in ascending X-degree,
/// within a block the X index varies slowest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLayout {
    pub degree: usize,
    pub blocks: Vec<TensorBlock>,
    pub total: usize,
}

impl TensorLayout {
    pub fn new(degree: usize, x_dims: &[usize], y_dims: &[usize]) -> Self {
        let mut blocks = Vec::new();
        let mut total = 0;
        for i in 0..=degree {
            let j = degree - i;
            let xd = x_dims.get(i).copied().unwrap_or(0);
            let yd = y_dims.get(j).copied().unwrap_or(0);
            if xd == 0 || yd == 0 {
                continue;
            }
            blocks.push(TensorBlock {
                x_degree: i,
                y_degree: j,
                x_dim: xd,
                y_dim: yd,
                offset: total,
            });
            total += xd * yd;
        }
        TensorLayout { degree, blocks, total }
    }

    pub fn index(&self, x_degree: usize, a: usize, b: usize) -> Option<usize> {
        self.blocks
            .iter()
            .find(|bl| bl.x_degree == x_degree)
            .map(|bl| bl.offset + a * bl.y_dim + b)
    }

    /// (x_degree, x index, y index) of a flat coordinate.
    pub fn split(&self, idx: usize) -> (usize, usize, usize) {
        for bl in &self.blocks {
            if idx >= bl.offset && idx < bl.offset + bl.x_dim * bl.y_dim {
                let r = idx - bl.offset;
                return (bl.x_degree, r / bl.y_dim, r % bl.y_dim);
            }
        }
        panic!("tensor coordinate {idx} outside layout of size {}", self.total);
    }
}

/// Advances an ascending k-subset of {0..n−1} to its lexicographic
/// successor; false when exhausted.
fn next_combination(pos: &mut [usize], n: usize) -> bool {
    let k = pos.len();
    let mut l = k;
    while l > 0 {
        l -= 1;
        if pos[l] < n - k + l {
            pos[l] += 1;
            for r in l + 1..k {
                pos[r] = pos[r - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Shuffle product of two chains, landing in the staircase triangulation of
/// the product. The (i,j)-shuffles are the monotone vertex paths through
/// the σ×τ grid using every row and column; the sign counts the
/// transpositions needed to sort the steps.
pub fn cross_chain<F: Field>(
    x: &FilteredComplex,
    y: &FilteredComplex,
    prod: &Product,
    xi: &Chain<F>,
    eta: &Chain<F>,
) -> Result<Chain<F>> {
    let i = xi.degree;
    let j = eta.degree;
    let d = i + j;
    let mut acc: HashMap<u32, F> = HashMap::new();
    let mut verts = vec![0u32; d + 1];
    let mut in_x = vec![false; d];
    for (sk, sc) in xi.entries() {
        // singular-set simplices carry the zero group on both sides
        if !x.is_live(i, *sk) {
            continue;
        }
        let sv = x.simplex(i, *sk);
        for (tk, tc) in eta.entries() {
            if !y.is_live(j, *tk) {
                continue;
            }
            let tv = y.simplex(j, *tk);
            let coef = sc.clone() * tc.clone();
            // positions of the +x steps among the d moves, lexicographic
            let mut pos: Vec<usize> = (0..i).collect();
            loop {
                let mut inv = 0usize;
                in_x.iter_mut().for_each(|b| *b = false);
                for (r, p) in pos.iter().enumerate() {
                    inv += p - r;
                    in_x[*p] = true;
                }
                let mut xa = 0usize;
                let mut yb = 0usize;
                verts[0] = prod.pair_vertex(sv[0], tv[0]);
                for (s, step_x) in in_x.iter().enumerate() {
                    if *step_x {
                        xa += 1;
                    } else {
                        yb += 1;
                    }
                    verts[s + 1] = prod.pair_vertex(sv[xa], tv[yb]);
                }
                let (dd, kk) = prod
                    .complex
                    .index_of(&verts)
                    .ok_or_else(|| Error::InvalidComplex("shuffle cell missing".into()))?;
                debug_assert_eq!(dd, d);
                let term = if inv % 2 == 0 { coef.clone() } else { -coef.clone() };
                match acc.get_mut(&kk) {
                    Some(e) => *e = e.clone() + term,
                    None => {
                        acc.insert(kk, term);
                    }
                }
                if !next_combination(&mut pos, d) {
                    break;
                }
            }
        }
    }
    Ok(Chain::from_entries(d, acc.into_iter().collect()))
}

/// A×Y ∪ X×B inside the staircase product. Closed whenever A and B are,
/// but usually not full.
pub fn product_pair_subcomplex(
    prod: &Product,
    a: Option<&Subcomplex>,
    b: Option<&Subcomplex>,
) -> Option<Subcomplex> {
    if a.is_none() && b.is_none() {
        return None;
    }
    let x = &prod.complex;
    let mut member = Vec::with_capacity(x.max_dim() + 1);
    for d in 0..=x.max_dim() {
        member.push(
            (0..x.count(d))
                .map(|k| {
                    let (xd, xk, yd, yk) = prod.proj(d, k as u32);
                    a.map_or(false, |s| s.contains(xd, xk))
                        || b.map_or(false, |s| s.contains(yd, yk))
                })
                .collect(),
        );
    }
    Some(Subcomplex::from_member(member))
}

/// Künneth basis of one degree of the product: cross products of factor
/// representatives in tensor-layout order, backed by a class solver.
pub struct KunnethBasis<F: Field> {
    pub layout: TensorLayout,
    pub chains: Vec<Chain<F>>,
    solver: ClassSolver<F>,
}

impl<F: Field> KunnethBasis<F> {
    pub fn new(
        x: &FilteredComplex,
        y: &FilteredComplex,
        prod: &Product,
        icp: &IChainComplex<F>,
        hx: &[Homology<F>],
        hy: &[Homology<F>],
        degree: usize,
    ) -> Result<Self> {
        let x_dims: Vec<usize> = hx.iter().map(|h| h.dim()).collect();
        let y_dims: Vec<usize> = hy.iter().map(|h| h.dim()).collect();
        let layout = TensorLayout::new(degree, &x_dims, &y_dims);
        let mut chains = Vec::with_capacity(layout.total);
        for bl in &layout.blocks {
            for a in 0..bl.x_dim {
                for b in 0..bl.y_dim {
                    chains.push(cross_chain(
                        x,
                        y,
                        prod,
                        hx[bl.x_degree].rep(a),
                        hy[bl.y_degree].rep(b),
                    )?);
                }
            }
        }
        let solver = icp.class_solver(degree, &chains)?;
        Ok(KunnethBasis { layout, chains, solver })
    }

    /// Tensor coordinates of a product cycle's class.
    pub fn solve(&self, z: &Chain<F>) -> Result<Vec<F>> {
        self.solver.solve(z)
    }
}

/// The cross-product map in one degree, as a matrix from tensor coordinates
/// to a homology basis of the product.
pub struct CrossProductMatrix<F: Field> {
    pub degree: usize,
    pub layout: TensorLayout,
    pub matrix: SparseMatrix<F>,
}

/// Columns are classes of cross products of factor representatives,
/// expressed in the product homology basis.
pub fn kunneth_matrix<F: Field>(
    x: &FilteredComplex,
    y: &FilteredComplex,
    prod: &Product,
    icp: &IChainComplex<F>,
    hp: &Homology<F>,
    hx: &[Homology<F>],
    hy: &[Homology<F>],
    degree: usize,
) -> Result<CrossProductMatrix<F>> {
    let x_dims: Vec<usize> = hx.iter().map(|h| h.dim()).collect();
    let y_dims: Vec<usize> = hy.iter().map(|h| h.dim()).collect();
    let layout = TensorLayout::new(degree, &x_dims, &y_dims);
    let mut trips = Vec::new();
    for bl in &layout.blocks {
        for a in 0..bl.x_dim {
            for b in 0..bl.y_dim {
                let cross =
                    cross_chain(x, y, prod, hx[bl.x_degree].rep(a), hy[bl.y_degree].rep(b))?;
                let col = bl.offset + a * bl.y_dim + b;
                for (r, c) in icp.class_of(hp, &cross)?.into_iter().enumerate() {
                    if !c.is_zero() {
                        trips.push((r as u32, col as u32, c));
                    }
                }
            }
        }
    }
    let matrix = SparseMatrix::new(hp.dim(), layout.total, trips)?;
    Ok(CrossProductMatrix { degree, layout, matrix })
}

impl<F: Field> CrossProductMatrix<F> {
    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols()
            && self.matrix.rank() == self.matrix.rows()
    }

    /// Tensor coordinates of a product class; the inverse of the Künneth
    /// isomorphism as a linear solve.
    pub fn invert(&self, z: &[F]) -> Result<Vec<F>> {
        if self.matrix.rows() != self.matrix.cols() {
            return Err(Error::KunnethFailure {
                degree: self.degree,
                detail: format!(
                    "{}x{} cross-product matrix is not square",
                    self.matrix.rows(),
                    self.matrix.cols()
                ),
            });
        }
        let b = SVec::from_pairs(
            z.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i as u32, c.clone())),
        );
        match self.matrix.solve(&b)? {
            None => Err(Error::KunnethFailure {
                degree: self.degree,
                detail: "cross-product matrix is singular".into(),
            }),
            Some(t) => {
                let mut out = vec![F::zero(); self.matrix.cols()];
                for (i, c) in t.iter() {
                    out[*i as usize] = c.clone();
                }
                Ok(out)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct KunnethDegreeReport {
    pub degree: usize,
    pub tensor_dim: usize,
    pub product_dim: usize,
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct KunnethReport {
    pub x_name: String,
    pub y_name: String,
    pub product_perversity: Perversity,
    pub degrees: Vec<KunnethDegreeReport>,
}

impl KunnethReport {
    pub fn all_iso(&self) -> bool {
        self.degrees.iter().all(|d| d.iso)
    }
}

/// Rank-checks the relative Künneth map of (X,A) × (Y,B) in every degree:
/// cross products of relative factor classes against the product group
/// relative to A×Y ∪ X×B. Empty subcomplexes give the absolute statement.
pub fn relative_kunneth_check<F: Field>(
    x: &FilteredComplex,
    a: Option<&Subcomplex>,
    p: &Perversity,
    y: &FilteredComplex,
    b: Option<&Subcomplex>,
    q: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<KunnethReport> {
    let prod = product(x, y);
    let xs = x.strata();
    let ys = y.strata();
    let ps = prod.complex.strata();
    let pairs = prod.strata_pairs(&ps, &xs, &ys)?;
    let big_q = kunneth_perversity(p, q, &ps.table, &pairs)?;
    let icx = IChainComplex::new(x, &xs, p.clone(), coeffs.clone(), a)?;
    let icy = IChainComplex::new(y, &ys, q.clone(), coeffs.clone(), b)?;
    let k_prod = product_pair_subcomplex(&prod, a, b);
    let icp = IChainComplex::new_unrestricted_rel(
        &prod.complex,
        &ps,
        big_q,
        coeffs.clone(),
        k_prod.as_ref(),
    )?;
    let hx = icx.homology_all()?;
    let hy = icy.homology_all()?;
    let mut degrees = Vec::new();
    for k in 0..=prod.complex.dim() {
        let basis = KunnethBasis::new(x, y, &prod, &icp, &hx, &hy, k);
        let product_dim = icp.betti(k);
        let (tensor_dim, iso) = match basis {
            Ok(kb) => (kb.layout.total, kb.layout.total == product_dim),
            Err(Error::KunnethFailure { .. }) => {
                let x_dims: Vec<usize> = hx.iter().map(|h| h.dim()).collect();
                let y_dims: Vec<usize> = hy.iter().map(|h| h.dim()).collect();
                (TensorLayout::new(k, &x_dims, &y_dims).total, false)
            }
            Err(e) => return Err(e),
        };
        degrees.push(KunnethDegreeReport { degree: k, tensor_dim, product_dim, iso });
    }
    Ok(KunnethReport {
        x_name: x.name().to_string(),
        y_name: y.name().to_string(),
        product_perversity: icp.perversity().clone(),
        degrees,
    })
}

/// Absolute Künneth rank check.
pub fn kunneth_check<F: Field>(
    x: &FilteredComplex,
    p: &Perversity,
    y: &FilteredComplex,
    q: &Perversity,
    coeffs: &Coeffs<F>,
) -> Result<KunnethReport> {
    relative_kunneth_check(x, None, p, y, None, q, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ichain::{chain_of, dropped_boundary, push_chain};
    use crate::spaces;
    use num_traits::Zero;

    type Q = num_rational::BigRational;

    fn rational() -> Coeffs<Q> {
        Coeffs::rational()
    }

    fn zero_p(x: &FilteredComplex) -> Perversity {
        Perversity::zero(&x.strata().table)
    }

    fn apex_p(x: &FilteredComplex, v: i64) -> Perversity {
        let strata = x.strata();
        let map: std::collections::BTreeMap<String, i64> =
            strata.table.iter().map(|k| (k.name.clone(), v)).collect();
        Perversity::from_strata_map(&strata.table, &map).unwrap()
    }

    #[test]
    fn edge_cross_edge_is_the_two_shuffles() {
        let coeffs = rational();
        let mut bx = crate::complex::ComplexBuilder::new("x", 1);
        bx.simplex(&["a", "b"]);
        let x = bx.build().unwrap();
        let mut by = crate::complex::ComplexBuilder::new("y", 1);
        by.simplex(&["c", "d"]);
        let y = by.build().unwrap();
        let prod = product(&x, &y);
        let xi = chain_of(&x, &coeffs, 1, &[(&["a", "b"], 1)]).unwrap();
        let eta = chain_of(&y, &coeffs, 1, &[(&["c", "d"], 1)]).unwrap();
        let w = cross_chain(&x, &y, &prod, &xi, &eta).unwrap();
        assert_eq!(w.entries().len(), 2);
        let plus = prod
            .complex
            .index_of(&[
                prod.pair_vertex(0, 0),
                prod.pair_vertex(1, 0),
                prod.pair_vertex(1, 1),
            ])
            .unwrap();
        let minus = prod
            .complex
            .index_of(&[
                prod.pair_vertex(0, 0),
                prod.pair_vertex(0, 1),
                prod.pair_vertex(1, 1),
            ])
            .unwrap();
        assert_eq!(w.coeff(plus.1), coeffs.of_int(1));
        assert_eq!(w.coeff(minus.1), coeffs.of_int(-1));
        // vertices multiply coefficients
        let v = cross_chain(
            &x,
            &y,
            &prod,
            &chain_of(&x, &coeffs, 0, &[(&["a"], 2)]).unwrap(),
            &chain_of(&y, &coeffs, 0, &[(&["c"], 3)]).unwrap(),
        )
        .unwrap();
        assert_eq!(v.entries().len(), 1);
        assert_eq!(v.coeff(prod.pair_vertex(0, 0)), coeffs.of_int(6));
    }

    #[test]
    fn leibniz_identity_exhaustive_on_basis_simplices() {
        let coeffs = rational();
        for (x, y) in [
            (spaces::circle3(), spaces::circle_two_points()),
            (spaces::torus7(), spaces::circle_two_points()),
        ] {
            let prod = product(&x, &y);
            for i in 0..=x.max_dim() {
                for j in 0..=y.max_dim() {
                    if i + j > 3 {
                        continue;
                    }
                    for sk in 0..x.count(i) {
                        for tk in 0..y.count(j) {
                            let xi = Chain::unit(i, sk as u32, coeffs.of_int(1));
                            let eta = Chain::unit(j, tk as u32, coeffs.of_int(1));
                            let lhs = dropped_boundary(
                                &prod.complex,
                                &cross_chain(&x, &y, &prod, &xi, &eta).unwrap(),
                            );
                            let mut rhs = if i > 0 {
                                cross_chain(&x, &y, &prod, &dropped_boundary(&x, &xi), &eta)
                                    .unwrap()
                            } else {
                                Chain::zero(j.max(1) - 1 + i)
                            };
                            if j > 0 {
                                let sgn = coeffs.of_int(if i % 2 == 0 { 1 } else { -1 });
                                rhs = rhs.add_scaled(
                                    &cross_chain(&x, &y, &prod, &xi, &dropped_boundary(&y, &eta))
                                        .unwrap(),
                                    &sgn,
                                );
                            }
                            if i + j == 0 {
                                assert!(lhs.is_zero());
                            } else {
                                assert_eq!(lhs, rhs, "{i},{sk} x {j},{tk}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_product_is_associative_on_triples() {
        let coeffs = rational();
        let x = spaces::circle3();
        let y = spaces::circle_two_points();
        let z = spaces::interval(1);
        let xy = product(&x, &y);
        let xy_z = product(&xy.complex, &z);
        let yz = product(&y, &z);
        let x_yz = product(&x, &yz.complex);
        for (i, j, k) in [(1, 0, 1), (1, 1, 0), (0, 1, 1), (1, 1, 1)] {
            for sk in 0..x.count(i) {
                for tk in 0..y.count(j) {
                    for uk in 0..z.count(k) {
                        let xi = Chain::<Q>::unit(i, sk as u32, coeffs.of_int(1));
                        let eta = Chain::unit(j, tk as u32, coeffs.of_int(1));
                        let zeta = Chain::unit(k, uk as u32, coeffs.of_int(1));
                        let left = cross_chain(
                            &xy.complex,
                            &z,
                            &xy_z,
                            &cross_chain(&x, &y, &xy, &xi, &eta).unwrap(),
                            &zeta,
                        )
                        .unwrap();
                        let right = cross_chain(
                            &x,
                            &yz.complex,
                            &x_yz,
                            &xi,
                            &cross_chain(&y, &z, &yz, &eta, &zeta).unwrap(),
                        )
                        .unwrap();
                        // both triple products have the same vertex grid;
                        // compare through vertex tuples
                        assert_eq!(left.entries().len(), right.entries().len());
                        for (kk, c) in left.entries() {
                            let verts = xy_z.complex.simplex(left.degree, *kk);
                            let (dd, rk) = x_yz.complex.index_of(verts).unwrap();
                            assert_eq!(dd, right.degree);
                            assert_eq!(right.coeff(rk), *c, "triple {i}{j}{k}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cross_commutes_with_inclusions() {
        let coeffs = rational();
        let l = spaces::circle3();
        let c = l.cone().unwrap();
        let y = spaces::circle_two_points();
        let small = product(&l, &y);
        let big = product(&c, &y);
        let xi = chain_of(&l, &coeffs, 1, &[(&["0", "1"], 1), (&["1", "2"], -2)]).unwrap();
        let eta = chain_of(&y, &coeffs, 1, &[(&["n", "0"], 1)]).unwrap();
        let crossed_then_pushed = push_chain(
            &small.complex,
            &big.complex,
            |s| s.to_string(),
            &cross_chain(&l, &y, &small, &xi, &eta).unwrap(),
        )
        .unwrap();
        let pushed_then_crossed = cross_chain(
            &c,
            &y,
            &big,
            &push_chain(&l, &c, |s| s.to_string(), &xi).unwrap(),
            &eta,
        )
        .unwrap();
        assert_eq!(crossed_then_pushed, pushed_then_crossed);
    }

    #[test]
    fn kunneth_matrix_against_a_point_is_the_identity() {
        let coeffs = rational();
        let x = spaces::torus7();
        let y = spaces::point();
        let prod = product(&x, &y);
        let xs = x.strata();
        let ys = y.strata();
        let ps = prod.complex.strata();
        let icx = IChainComplex::new(&x, &xs, zero_p(&x), coeffs.clone(), None).unwrap();
        let icy = IChainComplex::new(&y, &ys, zero_p(&y), coeffs.clone(), None).unwrap();
        let icp = IChainComplex::new(
            &prod.complex,
            &ps,
            Perversity::zero(&ps.table),
            coeffs.clone(),
            None,
        )
        .unwrap();
        let hx = icx.homology_all().unwrap();
        let hy = icy.homology_all().unwrap();
        for d in 0..=2 {
            let hp = icp.homology(d).unwrap();
            let m = kunneth_matrix(&x, &y, &prod, &icp, &hp, &hx, &hy, d).unwrap();
            assert!(m.is_invertible());
            assert_eq!(m.matrix.rows(), hx[d].dim());
            // the matrix maps e_a ⊗ [pt] to some basis of the product;
            // inverting recovers unit vectors
            for a in 0..hx[d].dim() {
                let col: Vec<Q> = (0..m.matrix.rows())
                    .map(|r| m.matrix.get(r, a))
                    .collect();
                let t = m.invert(&col).unwrap();
                for (idx, v) in t.iter().enumerate() {
                    assert_eq!(*v == coeffs.of_int(1), idx == a);
                }
            }
        }
    }

    #[test]
    fn kunneth_dims_are_convolutions() {
        let coeffs = rational();
        // trivial circle times the suspended torus at an apex value of −1:
        // (1,1) * (1,2,1,0) = (1,3,3,1,0)
        let x = spaces::circle3();
        let y = spaces::suspended_torus();
        let report =
            kunneth_check(&x, &zero_p(&x), &y, &apex_p(&y, -1), &coeffs).unwrap();
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.product_dim).collect();
        assert_eq!(dims, vec![1, 3, 3, 1, 0]);
        assert!(report.all_iso());
        // both factors singular in codimension one: (0,2) * (0,2)
        let s = spaces::circle_two_points();
        let report2 =
            kunneth_check(&s, &zero_p(&s), &s, &zero_p(&s), &coeffs).unwrap();
        let dims2: Vec<usize> = report2.degrees.iter().map(|d| d.product_dim).collect();
        assert_eq!(dims2, vec![0, 0, 4]);
        assert!(report2.all_iso());
    }

    #[test]
    fn kunneth_invert_round_trips() {
        let coeffs = rational();
        let x = spaces::circle3();
        let y = spaces::circle_two_points();
        let prod = product(&x, &y);
        let xs = x.strata();
        let ys = y.strata();
        let ps = prod.complex.strata();
        let pairs = prod.strata_pairs(&ps, &xs, &ys).unwrap();
        let p = zero_p(&x);
        let q = zero_p(&y);
        let big_q = kunneth_perversity(&p, &q, &ps.table, &pairs).unwrap();
        let icx = IChainComplex::new(&x, &xs, p, coeffs.clone(), None).unwrap();
        let icy = IChainComplex::new(&y, &ys, q, coeffs.clone(), None).unwrap();
        let icp =
            IChainComplex::new(&prod.complex, &ps, big_q, coeffs.clone(), None).unwrap();
        let hx = icx.homology_all().unwrap();
        let hy = icy.homology_all().unwrap();
        let d = 2;
        let hp = icp.homology(d).unwrap();
        let m = kunneth_matrix(&x, &y, &prod, &icp, &hp, &hx, &hy, d).unwrap();
        assert!(m.is_invertible());
        assert_eq!(m.layout.total, 2);
        for col in 0..m.layout.total {
            let z: Vec<Q> = (0..m.matrix.rows()).map(|r| m.matrix.get(r, col)).collect();
            let t = m.invert(&z).unwrap();
            for (idx, v) in t.iter().enumerate() {
                assert_eq!(*v == coeffs.of_int(1), idx == col);
            }
        }
        let zeros = m.invert(&vec![coeffs.of_int(0); m.matrix.rows()]).unwrap();
        assert!(zeros.iter().all(|v| v.is_zero()));
        // the solver-backed basis agrees with the matrix route
        let kb = KunnethBasis::new(&x, &y, &prod, &icp, &hx, &hy, d).unwrap();
        for (idx, ch) in kb.chains.iter().enumerate() {
            let t = kb.solve(ch).unwrap();
            for (i2, v) in t.iter().enumerate() {
                assert_eq!(*v == coeffs.of_int(1), i2 == idx);
            }
        }
    }

    #[test]
    fn relative_kunneth_on_cone_pairs() {
        let coeffs = rational();
        // (cone S¹, S¹) × (point, ∅): relative cone formula dims (0,0,1)
        let c = spaces::circle3().cone().unwrap();
        let a = c.boundary_subcomplex();
        let pt = spaces::point();
        let report = relative_kunneth_check(
            &c,
            Some(&a),
            &apex_p(&c, 0),
            &pt,
            None,
            &zero_p(&pt),
            &coeffs,
        )
        .unwrap();
        assert!(report.all_iso());
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.product_dim).collect();
        assert_eq!(dims, vec![0, 0, 1]);
        // (cone T², T²) × (circle3, ∅): (0,0,0,1) * (1,1)
        let ct = spaces::torus7().cone().unwrap();
        let at = ct.boundary_subcomplex();
        let y = spaces::circle3();
        let report2 = relative_kunneth_check(
            &ct,
            Some(&at),
            &apex_p(&ct, 0),
            &y,
            None,
            &zero_p(&y),
            &coeffs,
        )
        .unwrap();
        assert!(report2.all_iso());
        let dims2: Vec<usize> = report2.degrees.iter().map(|d| d.product_dim).collect();
        assert_eq!(dims2, vec![0, 0, 0, 1, 1]);
    }

    #[test]
    fn relative_kunneth_with_two_relative_factors() {
        let coeffs = rational();
        let c = spaces::circle3().cone().unwrap();
        let a = c.boundary_subcomplex();
        let report = relative_kunneth_check(
            &c,
            Some(&a),
            &apex_p(&c, 0),
            &c,
            Some(&a),
            &apex_p(&c, 0),
            &coeffs,
        )
        .unwrap();
        assert!(report.all_iso(), "degrees: {:?}", report.degrees);
        // one nonzero relative class on each side, in degree 2 each
        let dims: Vec<usize> = report.degrees.iter().map(|d| d.product_dim).collect();
        assert_eq!(dims, vec![0, 0, 0, 0, 1]);
    }
}
