use curalg::charring::{char_dual, char_mul, CharRecord, GradedCharacter, Window};
use curalg::orders::{covering_leq, lex_leq, psi_distance, psi_face_check, psi_leq, LamPoint, PsiFace};
use curalg::rootdata::{CartanType, RootSystem, Weight};
use proptest::prelude::*;
use std::collections::BTreeSet;

fn a2_point() -> impl Strategy<Value = LamPoint> {
    (0i64..4, 0i64..4, -2i64..3).prop_map(|(a, b, g)| LamPoint::new(Weight(vec![a, b]), g))
}

fn a1_point() -> impl Strategy<Value = LamPoint> {
    (0i64..7, -3i64..4).prop_map(|(a, g)| LamPoint::new(Weight(vec![a]), g))
}

/// Reachability by single coverings through dominant weights only.
fn dominant_path_leq(rs: &RootSystem, p: &LamPoint, q: &LamPoint) -> bool {
    let k = q.grade - p.grade;
    if k < 0 {
        return false;
    }
    let mut steps = vec![Weight::zero(rs.rank)];
    for r in &rs.pos_root_weights {
        steps.push(r.clone());
        steps.push(r.neg());
    }
    let mut layer = BTreeSet::from([p.weight.clone()]);
    for _ in 0..k {
        layer = layer.iter().flat_map(|w| steps.iter().map(move |s| w.add(s))).filter(|w| w.is_dominant()).collect();
    }
    layer.contains(&q.weight)
}

fn small_char(rank: usize) -> impl Strategy<Value = GradedCharacter> {
    prop::collection::vec((prop::collection::vec(-3i64..4, rank), -2i64..3, -2i64..3), 0..5).prop_map(move |terms| {
        let mut ch = GradedCharacter::zero(Window::ALL);
        for (w, g, m) in terms {
            ch.add_term(Weight(w), g, m);
        }
        ch
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn lex_is_a_partial_order(p in a2_point(), q in a2_point(), x in a2_point()) {
        let rs = RootSystem::new(CartanType::A2);
        prop_assert!(lex_leq(&rs, &p, &p));
        if lex_leq(&rs, &p, &q) && lex_leq(&rs, &q, &p) { prop_assert_eq!(&p, &q); }
        if lex_leq(&rs, &p, &q) && lex_leq(&rs, &q, &x) { prop_assert!(lex_leq(&rs, &p, &x)); }
    }

    #[test]
    fn covering_is_a_partial_order(p in a2_point(), q in a2_point(), x in a2_point()) {
        let rs = RootSystem::new(CartanType::A2);
        prop_assert!(covering_leq(&rs, &p, &p));
        if covering_leq(&rs, &p, &q) && covering_leq(&rs, &q, &p) { prop_assert_eq!(&p, &q); }
        if covering_leq(&rs, &p, &q) && covering_leq(&rs, &q, &x) { prop_assert!(covering_leq(&rs, &p, &x)); }
    }

    #[test]
    fn covering_matches_dominant_paths_a2(p in a2_point(), q in a2_point()) {
        let rs = RootSystem::new(CartanType::A2);
        prop_assert_eq!(covering_leq(&rs, &p, &q), dominant_path_leq(&rs, &p, &q));
    }

    #[test]
    fn covering_matches_dominant_paths_a1(p in a1_point(), q in a1_point()) {
        let rs = RootSystem::new(CartanType::A1);
        prop_assert_eq!(covering_leq(&rs, &p, &q), dominant_path_leq(&rs, &p, &q));
    }

    #[test]
    fn covering_never_lowers_grade(p in a1_point(), q in a1_point()) {
        let rs = RootSystem::new(CartanType::A1);
        if covering_leq(&rs, &p, &q) { prop_assert!(p.grade <= q.grade); }
    }

    #[test]
    fn psi_distance_is_additive(a in 0i64..4, b in 0i64..4, c in 0i64..4, d in 0i64..4, e in 0i64..4, f in 0i64..4) {
        let rs = RootSystem::new(CartanType::A2);
        let face = PsiFace::adjoint(&rs, vec![rs.simple_root(0)]).unwrap();
        prop_assert!(psi_face_check(&face).holds);
        let (x, y, z) = (Weight(vec![a, b]), Weight(vec![c, d]), Weight(vec![e, f]));
        let dist = |u: &Weight, v: &Weight| psi_distance(u, v, &face).unwrap();
        if let (Some(m), Some(n)) = (dist(&x, &y), dist(&y, &z)) {
            prop_assert_eq!(dist(&x, &z), Some(m + n));
        }
    }

    #[test]
    fn psi_order_refines_covering(p in a2_point(), q in a2_point()) {
        let rs = RootSystem::new(CartanType::A2);
        let face = PsiFace::adjoint(&rs, vec![rs.simple_root(1)]).unwrap();
        if psi_leq(&p, &q, &face).unwrap() { prop_assert!(covering_leq(&rs, &p, &q)); }
    }

    #[test]
    fn character_ring_laws(x in small_char(1), y in small_char(1), z in small_char(1)) {
        let all = Window::ALL;
        prop_assert_eq!(char_mul(&x, &y, all).terms, char_mul(&y, &x, all).terms);
        prop_assert_eq!(
            char_mul(&char_mul(&x, &y, all), &z, all).terms,
            char_mul(&x, &char_mul(&y, &z, all), all).terms
        );
        prop_assert_eq!(char_dual(&char_dual(&x)).terms, x.terms.clone());
        prop_assert_eq!(char_dual(&char_mul(&x, &y, all)).terms, char_mul(&char_dual(&x), &char_dual(&y), all).terms);
        prop_assert_eq!(x.add(&y).sub(&y).terms, x.terms.clone());
    }

    #[test]
    fn character_record_round_trip(x in small_char(2)) {
        let rec = x.to_record();
        let text = serde_json::to_string(&rec).unwrap();
        let back: CharRecord = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(GradedCharacter::from_record(&back).terms, x.terms);
    }

    #[test]
    fn weyl_characters_are_invariant(a in 0i64..4, b in 0i64..3, c2 in any::<bool>()) {
        let rs = RootSystem::new(if c2 { CartanType::C2 } else { CartanType::A2 });
        let lam = Weight(vec![a, b]);
        let ch = rs.weyl_character(&lam);
        for (w, m) in &ch {
            for i in 0..rs.rank {
                prop_assert_eq!(ch.get(&rs.reflect(w, i)), Some(m));
            }
            prop_assert!(rs.hull_membership(w, &lam));
        }
        let total: i64 = ch.values().sum();
        prop_assert_eq!(Some(total), curalg::linalg::to_i64(&rs.weyl_dimension(&lam)));
    }
}

#[test]
fn dominant_enumeration_is_compatible() {
    for kind in [CartanType::A1, CartanType::A2, CartanType::A3, CartanType::C2] {
        let rs = RootSystem::new(kind);
        let ws = rs.enumerate_dominant(15);
        let distinct: BTreeSet<&Weight> = ws.iter().collect();
        assert_eq!(distinct.len(), ws.len());
        for i in 0..ws.len() {
            assert_eq!(rs.enumeration_index(&ws[i]), i);
            for j in i + 1..ws.len() {
                assert!(!rs.dominance_lt(&ws[j], &ws[i]), "{} before {}", ws[i], ws[j]);
            }
        }
    }
}
