use exact_cone::games::{anti_dual, exactness, is_balanced_game, is_totally_balanced, Game};
use exact_cone::ratlin::Rat;
use exact_cone::semibal::{
    analyze, coefficient_vector, conjugate, integer_form, is_min_semi_balanced, is_semi_balanced,
};
use exact_cone::setcore::{Coalition, Permutation, PlayerSet, SetSystem};
use proptest::prelude::*;

/// A non-trivial system on `n` players with up to `max_len` members.
fn system(n: usize, max_len: usize) -> impl Strategy<Value = SetSystem> {
    let full = (1u32 << n) - 1;
    prop::collection::btree_set(1..full, 1..=max_len).prop_map(move |masks| {
        let masks: Vec<u32> = masks.into_iter().collect();
        SetSystem::from_masks(PlayerSet::new(n).unwrap(), &masks).unwrap()
    })
}

fn any_system() -> impl Strategy<Value = SetSystem> {
    (2usize..=4).prop_flat_map(|n| system(n, 6))
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

/// Minimality straight from the definition: semi-balanced and no proper
/// non-empty subsystem is.
fn minimal_by_definition(s: &SetSystem) -> bool {
    if !is_semi_balanced(s) {
        return false;
    }
    let k = s.len();
    (1..(1u32 << k) - 1).all(|pick| {
        let sub: Vec<Coalition> = (0..k)
            .filter(|&i| pick >> i & 1 == 1)
            .map(|i| s.sets()[i])
            .collect();
        !is_semi_balanced(&SetSystem::new(s.ground().clone(), sub).unwrap())
    })
}

fn game(n: usize) -> impl Strategy<Value = Game> {
    prop::collection::vec(-6i64..=6, 1usize << n).prop_map(move |mut v| {
        v[0] = 0;
        let values = v.into_iter().map(Rat::from_integer).collect();
        Game::new(PlayerSet::new(n).unwrap(), values).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn minimality_certificate_matches_definition(s in any_system()) {
        prop_assert_eq!(is_min_semi_balanced(&s), minimal_by_definition(&s));
    }

    #[test]
    fn complement_preserves_minimality_and_conjugates_theta(s in any_system()) {
        let star = s.complement_system();
        prop_assert_eq!(star.complement_system(), s.clone());
        prop_assert_eq!(is_min_semi_balanced(&s), is_min_semi_balanced(&star));
        if is_min_semi_balanced(&s) {
            let t = coefficient_vector(&s).unwrap();
            prop_assert_eq!(coefficient_vector(&star).unwrap(), conjugate(&t));
        }
    }

    #[test]
    fn minimal_reports_are_consistent(s in any_system()) {
        let r = analyze(&s);
        if r.is_minimal {
            let n = s.n();
            prop_assert!(s.len() <= n);
            let theta = r.theta.clone().unwrap();
            prop_assert!(theta.satisfies_zero_sums());
            prop_assert!(theta.is_normalized());
            prop_assert_eq!(integer_form(&s).unwrap().to_theta(s.ground()), theta);
            if !r.is_balanced {
                prop_assert!(s.len() >= 3);
                prop_assert_eq!(r.exceptional_sets.len(), 1);
                prop_assert_eq!(r.exceptional, Some(r.exceptional_sets[0]));
            }
        } else {
            prop_assert!(r.theta.is_none() && r.klass.is_none());
        }
    }

    #[test]
    fn relabeling_preserves_type_and_analysis(
        (s, p) in (2usize..=4).prop_flat_map(|n| (system(n, 6), permutation(n)))
    ) {
        let img = s.permuted(&p);
        let (ct, _) = s.canonicalize().unwrap();
        let (ci, _) = img.canonicalize().unwrap();
        prop_assert_eq!(&ct, &ci);
        prop_assert_eq!(ct.orbit_size, s.orbit().unwrap().len());
        let (a, b) = (analyze(&s), analyze(&img));
        prop_assert_eq!(a.is_semi_balanced, b.is_semi_balanced);
        prop_assert_eq!(a.is_balanced, b.is_balanced);
        prop_assert_eq!(a.is_minimal, b.is_minimal);
        prop_assert_eq!(a.klass, b.klass);
    }

    #[test]
    fn game_hierarchy(m in (2usize..=4).prop_flat_map(game)) {
        let ad = anti_dual(&m);
        prop_assert_eq!(anti_dual(&ad), m.clone());
        let exact = exactness(&m).is_exact();
        prop_assert_eq!(exact, exactness(&ad).is_exact());
        let tb = is_totally_balanced(&m);
        if exact {
            prop_assert!(tb);
        }
        if tb {
            prop_assert!(is_balanced_game(&m));
        }
    }
}
