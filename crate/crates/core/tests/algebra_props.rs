mod common;

use std::sync::Arc;

use proptest::prelude::*;
use sr_chroma::{build_complex, AlgebraElement, Family, Graph, JoinComplex, Monomial, SrRing};

/// Monomials of degree `d` with support exactly `face`: compositions of `d`
/// into the face's degrees with every part positive.
fn exact_support_count(degrees: &[u32], d: u32) -> u64 {
    let mut ways = vec![0u64; d as usize + 1];
    ways[0] = 1;
    for &deg in degrees {
        let mut next = vec![0u64; d as usize + 1];
        for (t, &w) in ways.iter().enumerate() {
            let mut s = t as u32 + deg;
            while s <= d {
                next[s as usize] += w;
                s += deg;
            }
        }
        ways = next;
    }
    ways[d as usize]
}

/// `dim SR(K)_d` as a sum over explicitly listed faces.
fn hilbert_by_faces(k: &JoinComplex, d: u32) -> u64 {
    let simplex = k.simplex_generator_count();
    let g = k.graph();
    let mut graph_faces: Vec<Vec<usize>> = vec![vec![]];
    graph_faces.extend((0..g.vertex_count()).map(|v| vec![k.vertex_generator(v)]));
    graph_faces.extend(g.edges().iter().map(|&(u, v)| vec![k.vertex_generator(u), k.vertex_generator(v)]));
    let mut total = 0;
    for base in 0u64..1 << simplex {
        for extra in &graph_faces {
            let mut face: Vec<usize> = (0..simplex).filter(|i| base >> i & 1 == 1).collect();
            face.extend(extra);
            let degrees: Vec<u32> = face.iter().map(|&x| k.degree(x)).collect();
            total += exact_support_count(&degrees, d);
        }
    }
    total
}

#[test]
fn hilbert_function_matches_face_count() {
    let cases = [
        (Family::A { s: vec![1, 1] }, Graph::complete(3)),
        (Family::B { n: 2 }, Graph::cycle(4)),
        (Family::Ap { p: 3, s: vec![2, 1] }, Graph::path(3)),
        (Family::Bp { p: 5, r: vec![1, 1] }, Graph::empty(2)),
        (Family::A { s: vec![1, 0, 1] }, Graph::cycle(5)),
    ];
    for (family, g) in cases {
        let k = build_complex(&family, &g).unwrap();
        let ring = SrRing::new(k.clone(), 3).unwrap();
        for d in 0..=28 {
            assert_eq!(ring.basis(d).len() as u64, hilbert_by_faces(&k, d), "{family} degree {d}");
        }
    }
}

#[test]
fn basis_is_sorted_and_standard() {
    let k = build_complex(&Family::B { n: 2 }, &Graph::path(3)).unwrap();
    let ring = SrRing::new(k, 3).unwrap();
    for d in (0..=24).step_by(2) {
        let basis = ring.basis(d);
        assert!(basis.windows(2).all(|w| w[0] < w[1]));
        assert!(basis.iter().all(|m| m.degree() == d && ring.is_standard(m)));
    }
}

fn rings() -> Vec<Arc<SrRing>> {
    vec![
        SrRing::new(build_complex(&Family::A { s: vec![1, 1] }, &Graph::cycle(4)).unwrap(), 3).unwrap(),
        SrRing::new(build_complex(&Family::B { n: 2 }, &Graph::path(3)).unwrap(), 3).unwrap(),
        SrRing::new(build_complex(&Family::Bp { p: 5, r: vec![1, 1] }, &Graph::complete(3)).unwrap(), 5).unwrap(),
    ]
}

fn element(ring: &Arc<SrRing>, degree_index: usize, picks: &[u32]) -> AlgebraElement {
    let degrees: Vec<u32> = (1..=8).map(|d| 2 * d).filter(|&d| !ring.basis(d).is_empty()).collect();
    let basis = ring.basis(degrees[degree_index % degrees.len()]);
    let p = ring.prime();
    let terms = basis.into_iter().zip(picks.iter().cycle()).map(|(m, &c)| (m, c % p));
    AlgebraElement::from_terms(ring, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn ring_laws(
        which in 0usize..3,
        da in 0usize..8, db in 0usize..8, dc in 0usize..8,
        ca in proptest::collection::vec(0u32..7, 1..6),
        cb in proptest::collection::vec(0u32..7, 1..6),
        cc in proptest::collection::vec(0u32..7, 1..6),
    ) {
        let ring = &rings()[which];
        let (a, b, c) = (element(ring, da, &ca), element(ring, db, &cb), element(ring, dc, &cc));
        let ab = a.mul(&b).unwrap();
        prop_assert_eq!(ab.mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(&ab, &b.mul(&a).unwrap());
        if !ab.is_zero() {
            prop_assert_eq!(ab.degree(), Some(a.degree().unwrap() + b.degree().unwrap()));
        }
        // Distributivity, when the summands share a degree.
        if b.degree() == c.degree() || b.is_zero() || c.is_zero() {
            let left = a.mul(&b.add(&c).unwrap()).unwrap();
            prop_assert_eq!(left, ab.add(&a.mul(&c).unwrap()).unwrap());
        }
        prop_assert_eq!(AlgebraElement::parse(ring, &ab.to_text()).unwrap(), ab);
    }

    #[test]
    fn monomials_parse_back(which in 0usize..3, d in 0usize..8, i in 0usize..50) {
        let ring = &rings()[which];
        let degrees: Vec<u32> = (1..=8).map(|d| 2 * d).filter(|&d| !ring.basis(d).is_empty()).collect();
        let basis = ring.basis(degrees[d % degrees.len()]);
        let m = &basis[i % basis.len()];
        prop_assert_eq!(&Monomial::parse(ring.complex(), &m.display(ring.complex())).unwrap(), m);
    }

    #[test]
    fn complexes_parse_back(n in 0usize..6, bits in any::<u16>(), which in 0usize..4) {
        let g = common::all_graphs(n).nth(bits as usize % (1 << (n * n.saturating_sub(1) / 2))).unwrap();
        let family = [
            Family::A { s: vec![2, 0, 1] },
            Family::Ap { p: 3, s: vec![1, 2] },
            Family::Bp { p: 5, r: vec![2, 1] },
            Family::B { n: 3 },
        ][which].clone();
        let k = build_complex(&family, &g).unwrap();
        let back = JoinComplex::parse(&k.to_text()).unwrap();
        prop_assert_eq!(back.to_text(), k.to_text());
        prop_assert_eq!(back.generators(), k.generators());
    }
}
