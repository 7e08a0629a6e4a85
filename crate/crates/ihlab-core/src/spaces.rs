//! Built-in model spaces.
//!
//! Every space validates; filtrations are trivial unless the space has
//! genuine singularities. Names accepted by `by_name` compose: cone:,
//! susp:, prod:<a>:<b>, union:<a>:<b>.

use crate::complex::{product, ComplexBuilder, FilteredComplex};
use crate::error::{Error, Result};

/// Triangle boundary: the 3-vertex circle.
pub fn circle3() -> FilteredComplex {
    let mut b = ComplexBuilder::new("circle3", 1);
    b.simplex(&["0", "1"]);
    b.simplex(&["1", "2"]);
    b.simplex(&["0", "2"]);
    b.build().unwrap()
}

/// The 7-vertex torus: triangles in the two orbits {i,i+1,i+3} and
/// {i,i+2,i+3} mod 7.
pub fn torus7() -> FilteredComplex {
    let mut b = ComplexBuilder::new("circle7-torus", 2);
    let lab = |i: u32| (i % 7).to_string();
    for i in 0..7u32 {
        for off in [[0, 1, 3], [0, 2, 3]] {
            let t: Vec<String> = off.iter().map(|o| lab(i + o)).collect();
            let refs: Vec<&str> = t.iter().map(|s| s.as_str()).collect();
            b.simplex(&refs);
        }
    }
    b.build().unwrap()
}

/// Boundary of the (n+1)-simplex.
pub fn sphere(n: usize) -> FilteredComplex {
    let mut b = ComplexBuilder::new(&format!("sphere({n})"), n);
    let labels: Vec<String> = (0..=n + 1).map(|i| i.to_string()).collect();
    for omit in 0..=n + 1 {
        let face: Vec<&str> = labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != omit)
            .map(|(_, l)| l.as_str())
            .collect();
        b.simplex(&face);
    }
    b.build().unwrap()
}

/// Suspension of the 7-vertex torus; apexes n, s at filtration 0.
pub fn suspended_torus() -> FilteredComplex {
    let mut st = torus7().suspension().unwrap();
    st.set_name("suspended-torus");
    st
}

/// Suspension of two points: a 4-vertex circle whose poles n, s sit at
/// filtration 0.
pub fn circle_two_points() -> FilteredComplex {
    let mut sp = sphere(0).suspension().unwrap();
    sp.set_name("circle-two-points");
    sp
}

/// Path with `m` edges, endpoints marked as boundary.
pub fn interval(m: usize) -> FilteredComplex {
    assert!(m >= 1);
    let mut b = ComplexBuilder::new("interval", 1);
    for i in 0..m {
        b.simplex(&[&i.to_string(), &(i + 1).to_string()]);
    }
    b.add(&["0"], None, true);
    b.add(&[&m.to_string()], None, true);
    b.build().unwrap()
}

/// Two 2-spheres glued at a single vertex, the glue point at filtration 0.
pub fn two_spheres() -> FilteredComplex {
    let mut b = ComplexBuilder::new("two-spheres", 2);
    for side in ["a", "b"] {
        let v: Vec<String> =
            (1..=3).map(|i| format!("{side}{i}")).chain(["w".to_string()]).collect();
        for omit in 0..4 {
            let face: Vec<&str> = v
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != omit)
                .map(|(_, l)| l.as_str())
                .collect();
            b.simplex(&face);
        }
    }
    b.add(&["w"], Some(0), false);
    b.build().unwrap()
}

/// 9-vertex Klein bottle: 3x3 grid with a plain wrap in one direction and a
/// reflected wrap in the other.
pub fn klein() -> FilteredComplex {
    let mut b = ComplexBuilder::new("klein", 2);
    let lab = |x: usize, y: usize| -> String {
        let (x, y) = if y == 3 { (x, 0) } else { (x, y) };
        let (x, y) = if x == 3 { (0, (3 - y) % 3) } else { (x, y) };
        format!("{x},{y}")
    };
    for x in 0..3 {
        for y in 0..3 {
            let c00 = lab(x, y);
            let c10 = lab(x + 1, y);
            let c01 = lab(x, y + 1);
            let c11 = lab(x + 1, y + 1);
            b.simplex(&[&c00, &c10, &c11]);
            b.simplex(&[&c00, &c01, &c11]);
        }
    }
    b.build().unwrap()
}

pub fn point() -> FilteredComplex {
    let mut b = ComplexBuilder::new("point", 0);
    b.simplex(&["p"]);
    b.build().unwrap()
}

/// A space with two closed pieces that overlap in a collar, standing in
/// for an open cover in Mayer–Vietoris arguments. Each piece carries
/// boundary marks on its free frontier and embeds into `x` by vertex
/// labels.
pub struct Cover {
    pub x: FilteredComplex,
    pub u: FilteredComplex,
    pub v: FilteredComplex,
    /// the overlap u ∩ v
    pub a: FilteredComplex,
}

/// The suspended torus rebuilt with an equatorial collar: a torus×interval
/// band with cones glued on both rings. The cover is north cone plus band,
/// band plus south cone, overlapping in the band.
pub fn suspended_torus_cover() -> Cover {
    let t = torus7();
    let band = product(&t, &interval(1));
    let bc = &band.complex;
    let cells: Vec<Vec<String>> = (0..bc.count(3))
        .map(|k| {
            bc.simplex(3, k as u32).iter().map(|v| bc.vertex_label(*v).to_string()).collect()
        })
        .collect();
    // ring triangles by interval endpoint; the cones attach here
    let ring = |e: usize| -> Vec<Vec<String>> {
        (0..t.count(2))
            .map(|k| {
                t.simplex(2, k as u32)
                    .iter()
                    .map(|v| format!("({},{e})", t.vertex_label(*v)))
                    .collect()
            })
            .collect()
    };
    let (ring0, ring1) = (ring(0), ring(1));
    let assemble = |name: &str, north: bool, south: bool| -> FilteredComplex {
        let mut b = ComplexBuilder::new(name, 3);
        for c in &cells {
            let refs: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
            b.add(&refs, None, false);
        }
        if north {
            b.add(&["n"], Some(0), false);
            for tri in &ring1 {
                let mut refs = vec!["n"];
                refs.extend(tri.iter().map(|s| s.as_str()));
                b.add(&refs, None, false);
            }
        } else {
            // the top ring is the free frontier
            for tri in &ring1 {
                let refs: Vec<&str> = tri.iter().map(|s| s.as_str()).collect();
                b.add(&refs, None, true);
            }
        }
        if south {
            b.add(&["s"], Some(0), false);
            for tri in &ring0 {
                let mut refs = vec!["s"];
                refs.extend(tri.iter().map(|s| s.as_str()));
                b.add(&refs, None, false);
            }
        } else {
            for tri in &ring0 {
                let refs: Vec<&str> = tri.iter().map(|s| s.as_str()).collect();
                b.add(&refs, None, true);
            }
        }
        b.build().unwrap()
    };
    Cover {
        x: assemble("st-collared", true, true),
        u: assemble("st-collared-north", true, false),
        v: assemble("st-collared-south", false, true),
        a: band.complex,
    }
}

/// The torus as circle3 × hexagon, covered by two annuli of four bands
/// each. They overlap in two disjoint bands, one collar per side.
pub fn torus_annuli_cover() -> Cover {
    let mut hex = ComplexBuilder::new("circle6", 1);
    for i in 0..6u32 {
        hex.simplex(&[&i.to_string(), &((i + 1) % 6).to_string()]);
    }
    let hex = hex.build().unwrap();
    let torus = product(&circle3(), &hex).complex;
    let row = |lab: &str| -> usize {
        lab.trim_end_matches(')').rsplit(',').next().unwrap().parse().unwrap()
    };
    let cells: Vec<Vec<String>> = (0..torus.count(2))
        .map(|k| {
            torus.simplex(2, k as u32).iter().map(|v| torus.vertex_label(*v).to_string()).collect()
        })
        .collect();
    let assemble = |name: &str, rows: &[usize], rims: &[usize]| -> FilteredComplex {
        let mut b = ComplexBuilder::new(name, 2);
        for c in &cells {
            if c.iter().all(|l| rows.contains(&row(l))) {
                let refs: Vec<&str> = c.iter().map(|s| s.as_str()).collect();
                b.add(&refs, None, false);
            }
        }
        for r in rims {
            for e in [["0", "1"], ["1", "2"], ["0", "2"]] {
                let lab: Vec<String> = e.iter().map(|c| format!("({c},{r})")).collect();
                let refs: Vec<&str> = lab.iter().map(|s| s.as_str()).collect();
                b.add(&refs, None, true);
            }
        }
        b.build().unwrap()
    };
    Cover {
        x: assemble("torus-annuli", &[0, 1, 2, 3, 4, 5], &[]),
        u: assemble("torus-annuli-u", &[0, 1, 2, 3, 4], &[0, 4]),
        v: assemble("torus-annuli-v", &[3, 4, 5, 0, 1], &[3, 1]),
        a: assemble("torus-annuli-overlap", &[0, 1, 3, 4], &[0, 1, 3, 4]),
    }
}

/// Names resolvable by `by_name`, for help output.
pub const LIBRARY: &[&str] = &[
    "circle3",
    "circle7-torus",
    "sphere(0)",
    "sphere(1)",
    "sphere(2)",
    "suspended-torus",
    "circle-two-points",
    "interval",
    "two-spheres",
    "klein",
    "point",
    "st-collared",
    "cone:<space>",
    "susp:<space>",
    "prod:<a>:<b>",
    "union:<a>:<b>",
];

/// Resolves a space name, including composed cone/susp/prod/union forms.
pub fn by_name(name: &str) -> Result<FilteredComplex> {
    let unknown = || Error::UnknownSpace(name.to_string());
    match name {
        "circle3" | "circle" => return Ok(circle3()),
        "circle7-torus" | "torus7" | "torus" => return Ok(torus7()),
        "suspended-torus" | "st" => return Ok(suspended_torus()),
        "circle-two-points" | "sprime" => return Ok(circle_two_points()),
        "interval" => return Ok(interval(1)),
        "two-spheres" | "wedge" => return Ok(two_spheres()),
        "klein" => return Ok(klein()),
        "point" => return Ok(point()),
        "st-collared" => return Ok(suspended_torus_cover().x),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix("sphere") {
        let digits = rest
            .trim_start_matches(['(', ':'])
            .trim_end_matches(')');
        if let Ok(k) = digits.parse::<usize>() {
            if k <= 6 {
                return Ok(sphere(k));
            }
        }
        return Err(unknown());
    }
    if let Some(rest) = name.strip_prefix("cone:") {
        return by_name(rest)?.cone();
    }
    if let Some(rest) = name.strip_prefix("susp:") {
        return by_name(rest)?.suspension();
    }
    for (prefix, union) in [("prod:", false), ("union:", true)] {
        if let Some(rest) = name.strip_prefix(prefix) {
            // first split where both halves resolve
            for (i, _) in rest.match_indices(':') {
                let (a, b) = (&rest[..i], &rest[i + 1..]);
                let (Ok(xa), Ok(xb)) = (by_name(a), by_name(b)) else { continue };
                return if union {
                    xa.disjoint_union(&xb)
                } else {
                    Ok(product(&xa, &xb).complex)
                };
            }
            return Err(unknown());
        }
    }
    Err(unknown())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_library_space_validates() {
        for name in [
            "circle3",
            "circle7-torus",
            "sphere(0)",
            "sphere(2)",
            "suspended-torus",
            "circle-two-points",
            "interval",
            "two-spheres",
            "klein",
            "point",
            "st-collared",
        ] {
            let x = by_name(name).unwrap();
            assert!(x.validate().is_empty(), "{name}: {:?}", x.validate());
        }
    }

    #[test]
    fn collared_cover_pieces_fit_together() {
        let c = suspended_torus_cover();
        for y in [&c.x, &c.u, &c.v, &c.a] {
            assert!(y.validate().is_empty(), "{}: {:?}", y.name(), y.validate());
        }
        assert!(!c.x.has_boundary());
        assert!(c.u.has_boundary() && c.v.has_boundary() && c.a.has_boundary());
        // every top cell of x is a top cell of u or of v, overlap is a
        assert_eq!(c.u.count(3) + c.v.count(3) - c.a.count(3), c.x.count(3));
        assert_eq!(c.x.strata().full.iter().filter(|s| s.codim == 3).count(), 2);
        assert!(c.a.is_trivially_filtered());
    }

    #[test]
    fn annuli_cover_pieces_fit_together() {
        let c = torus_annuli_cover();
        for y in [&c.x, &c.u, &c.v, &c.a] {
            assert!(y.validate().is_empty(), "{}: {:?}", y.name(), y.validate());
            assert!(y.is_trivially_filtered());
        }
        assert!(!c.x.has_boundary());
        assert_eq!(c.x.count(0), 18);
        assert_eq!(c.x.count(2), 36);
        assert_eq!(c.u.count(2), 24);
        assert_eq!(c.v.count(2), 24);
        assert_eq!(c.a.count(2), 12);
        assert_eq!(c.u.count(2) + c.v.count(2) - c.a.count(2), c.x.count(2));
        // rims: two circles bound each annulus, four bound the overlap
        assert_eq!(c.u.boundary_subcomplex().count(0), 6);
        assert_eq!(c.a.boundary_subcomplex().count(0), 12);
    }

    #[test]
    fn torus7_is_the_minimal_torus() {
        let t = torus7();
        assert_eq!(t.count(0), 7);
        assert_eq!(t.count(1), 21);
        assert_eq!(t.count(2), 14);
        assert!(t.is_trivially_filtered());
    }

    #[test]
    fn klein_has_torus_counts() {
        let k = klein();
        assert_eq!(k.count(0), 9);
        assert_eq!(k.count(1), 27);
        assert_eq!(k.count(2), 18);
    }

    #[test]
    fn composed_names_resolve() {
        let c = by_name("cone:circle7-torus").unwrap();
        assert_eq!(c.dim(), 3);
        assert!(c.has_boundary());
        let p = by_name("prod:circle3:circle-two-points").unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.validate().is_empty());
        let u = by_name("union:circle7-torus:circle7-torus").unwrap();
        assert_eq!(u.count(2), 28);
        assert!(by_name("prod:circle3").is_err());
        assert!(by_name("nope").is_err());
        assert_eq!(by_name("sphere(2)").unwrap().count(2), 4);
        assert_eq!(by_name("sphere:2").unwrap().count(2), 4);
        let st = by_name("susp:circle7-torus").unwrap();
        assert!(st.structure_eq(&suspended_torus()));
    }

    #[test]
    fn two_spheres_meet_only_at_the_glue_vertex() {
        let w = two_spheres();
        assert_eq!(w.count(0), 7);
        assert_eq!(w.count(2), 8);
        let strata = w.strata();
        assert_eq!(strata.table.len(), 1);
        assert_eq!(strata.table.key(0).codim, 2);
        assert_eq!(strata.table.key(0).name, "w");
        // two regular sheets
        assert_eq!(strata.full.len(), 3);
    }
}
