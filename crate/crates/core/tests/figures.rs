//! `E_n` against the fifteen-generator picture, arrow by arrow.

use std::collections::BTreeSet;

use iotacx::chain::{BaseRing, Map, U};
use iotacx::involutive::{a0_subcomplex, tensor_iota_k, IotaComplex};
use iotacx::knots::{box_complex, en_complex, staircase, StaircaseSpec};

const LABELS: [(&str, &str); 15] = [
    ("a", "v|s-1"),
    ("b", "v|r0"),
    ("c", "v|s1"),
    ("d", "z0|r0"),
    ("e", "z0|s-1"),
    ("f", "z0|s1"),
    ("g", "z-1|r0"),
    ("h", "z-1|s1"),
    ("i", "z-1|s-1"),
    ("j", "w|r0"),
    ("k", "w|s1"),
    ("l", "w|s-1"),
    ("m", "z1|r0"),
    ("n", "z1|s1"),
    ("p", "z1|s-1"),
];

type Arrows = BTreeSet<(&'static str, &'static str, u32)>;

fn label(name: &str) -> &'static str {
    LABELS.iter().find(|(_, g)| *g == name).unwrap_or_else(|| panic!("unlabelled generator {name}")).0
}

fn arrows(c: &IotaComplex, m: &Map<U>) -> Arrows {
    m.entries()
        .flat_map(|(s, t, p)| {
            let (s, t) = (label(c.complex().name(s)), label(c.complex().name(t)));
            p.terms().map(move |u| (s, t, u.0)).collect::<Vec<_>>()
        })
        .collect()
}

fn expected_d(n: u32) -> Arrows {
    [
        ("b", "a", 0),
        ("b", "c", 0),
        ("d", "e", 0),
        ("d", "f", 0),
        ("d", "g", 0),
        ("d", "m", 0),
        ("g", "i", 0),
        ("g", "h", 1),
        ("g", "j", n),
        ("m", "n", 0),
        ("m", "p", 1),
        ("m", "j", n),
        ("e", "i", 0),
        ("e", "p", 1),
        ("f", "n", 0),
        ("f", "h", 1),
        ("i", "l", n),
        ("n", "k", n),
        ("h", "k", n - 1),
        ("p", "l", n - 1),
        ("j", "l", 0),
        ("j", "k", 0),
    ]
    .into_iter()
    .collect()
}

fn expected_iota(n: u32) -> Arrows {
    [
        ("a", "c", 0),
        ("a", "k", n - 1),
        ("b", "b", 0),
        ("b", "j", n - 1),
        ("c", "a", 0),
        ("c", "l", n - 1),
        ("d", "d", 0),
        ("d", "b", 0),
        ("d", "p", 0),
        ("e", "c", 0),
        ("e", "f", 0),
        ("f", "a", 0),
        ("f", "e", 0),
        ("g", "m", 0),
        ("h", "p", 0),
        ("i", "n", 0),
        ("j", "j", 0),
        ("k", "l", 0),
        ("l", "k", 0),
        ("m", "g", 0),
        ("m", "l", n - 1),
        ("n", "i", 0),
        ("p", "h", 0),
    ]
    .into_iter()
    .collect()
}

#[test]
fn differential_matches_picture() {
    for n in [3, 5, 7] {
        let e = en_complex(n).unwrap();
        assert_eq!(arrows(&e, e.complex().d()), expected_d(n), "n = {n}");
    }
}

#[test]
fn involution_matches_list() {
    for n in [3, 5, 7] {
        let e = en_complex(n).unwrap();
        assert_eq!(arrows(&e, e.iota()), expected_iota(n), "n = {n}");
    }
}

#[test]
fn gradings_follow_the_arrows() {
    let e = en_complex(3).unwrap();
    let c = e.complex();
    for (s, t, u) in expected_d(3) {
        let gi = |l: &str| c.gr(c.index_of(LABELS.iter().find(|(x, _)| *x == l).unwrap().1).unwrap());
        assert_eq!(gi(t) + U::mono_grading(iotacx::ring::UTerm(u)), gi(s) - 1, "{s} -> {t}");
    }
}

#[test]
fn rebuilt_from_parts() {
    let t = staircase(&StaircaseSpec::new(vec![1, 1]).unwrap());
    for n in [3, 5] {
        let direct = a0_subcomplex(&tensor_iota_k(&box_complex(n).unwrap(), &t)).unwrap();
        let e = en_complex(n).unwrap();
        let names = e.complex().generators().iter().map(|g| g.name.clone()).collect();
        assert_eq!(direct.renamed(names).unwrap(), e);
    }
}
