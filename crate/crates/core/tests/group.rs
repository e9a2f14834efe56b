use iotacx::equivalence::{Sign, StandardParams};
use iotacx::group::{param_negate, sf_member, simplified_sum_params, SignedCnTerm};

/// All term lists of length ≤ `len` over `ns` and both signs.
fn term_lists(ns: &[u32], len: usize) -> Vec<Vec<SignedCnTerm>> {
    let atoms: Vec<SignedCnTerm> =
        ns.iter().flat_map(|&n| [Sign::Plus, Sign::Minus].map(|s| SignedCnTerm::new(s, n).unwrap())).collect();
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..len {
        frontier = frontier
            .iter()
            .flat_map(|v: &Vec<SignedCnTerm>| {
                atoms.iter().map(move |&a| {
                    let mut w = v.clone();
                    w.push(a);
                    w
                })
            })
            .collect();
        out.extend(frontier.iter().cloned());
    }
    out
}

/// Reads the `±C(n)` blocks back off concatenated parameters.
fn decompose(p: &StandardParams) -> Vec<SignedCnTerm> {
    p.steps()
        .chunks(2)
        .map(|blk| match blk {
            [(Sign::Plus, -1), (Sign::Plus, b)] => SignedCnTerm::new(Sign::Plus, (-b) as u32).unwrap(),
            [(Sign::Minus, 1), (Sign::Minus, b)] => SignedCnTerm::new(Sign::Minus, *b as u32).unwrap(),
            other => panic!("not a C(n) block: {other:?}"),
        })
        .collect()
}

#[test]
fn negation_preserves_sf_on_the_span() {
    for terms in term_lists(&[2, 3, 4], 2) {
        let p = simplified_sum_params(&terms).unwrap();
        assert!(p.len() <= 4);
        assert_eq!(sf_member(&p), sf_member(&param_negate(&p)), "{p}");
    }
}

#[test]
fn negation_is_the_sum_inverse() {
    for terms in term_lists(&[2, 3, 5], 3) {
        let neg: Vec<SignedCnTerm> = terms.iter().map(|t| SignedCnTerm::new(t.sign.negate(), t.n).unwrap()).collect();
        assert_eq!(param_negate(&simplified_sum_params(&terms).unwrap()), simplified_sum_params(&neg).unwrap());
        let mut both = terms.clone();
        both.extend(neg);
        assert!(simplified_sum_params(&both).unwrap().is_empty());
    }
}

#[test]
fn sum_rule_is_idempotent() {
    for terms in term_lists(&[2, 3, 4], 3) {
        let p = simplified_sum_params(&terms).unwrap();
        assert_eq!(simplified_sum_params(&decompose(&p)).unwrap(), p);
    }
}

#[test]
fn single_terms_are_never_sf() {
    for n in 2..10 {
        for s in [Sign::Plus, Sign::Minus] {
            let p = simplified_sum_params(&[SignedCnTerm::new(s, n).unwrap()]).unwrap();
            assert!(!sf_member(&p), "{p}");
        }
    }
}
