use exact_cone::enumerate::{enumerate_min_balanced, purely_from_balanced};
use exact_cone::ratlin::{affinely_independent, linearly_independent, Rat};
use exact_cone::semibal::{
    analyze, coefficient_vector, exceptional_sets, integer_form, is_balanced, is_min_semi_balanced,
    is_semi_balanced, solve_unique_affine, CoefficientVector, SystemClass,
};
use exact_cone::setcore::{Coalition, PlayerSet, SetSystem};
use num_bigint::BigUint;

fn ground(n: usize) -> PlayerSet {
    PlayerSet::new(n).unwrap()
}

fn sys(n: usize, text: &str) -> SetSystem {
    ground(n).parse_system(text).unwrap()
}

fn c(n: usize, text: &str) -> Coalition {
    ground(n).parse_coalition(text).unwrap()
}

fn q(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

fn assert_theta(theta: &CoefficientVector, expected: &[(&str, Rat)]) {
    let g = theta.ground();
    let mut want = CoefficientVector::zero(g.clone());
    for (name, v) in expected {
        want.set(g.parse_coalition(name).unwrap(), v.clone());
    }
    assert_eq!(theta, &want);
}

#[test]
fn union_of_semi_balanced_systems_need_not_be_semi_balanced() {
    let s = sys(4, "{a,b,ab}");
    let t = sys(4, "{c,bc,acd}");
    assert!(is_semi_balanced(&s));
    assert!(is_semi_balanced(&t));
    let mut sets = s.sets().to_vec();
    sets.extend_from_slice(t.sets());
    let d = SetSystem::new(ground(4), sets).unwrap();
    assert!(!is_semi_balanced(&d));
}

#[test]
fn affinely_but_not_linearly_independent() {
    let s = sys(4, "{a,b,ab,abc,abd}");
    assert!(is_semi_balanced(&s));
    let vs = s.incidence_vectors();
    assert!(!linearly_independent(&vs));
    assert!(affinely_independent(&vs));
    assert!(!is_min_semi_balanced(&s));
    assert!(is_semi_balanced(&sys(4, "{a,b,ab}")));
    assert!(is_semi_balanced(&sys(4, "{ab,abc,abd}")));
}

#[test]
fn unique_affine_combination_with_a_zero_coefficient() {
    let d = sys(3, "{a,b,bc}");
    let comb = solve_unique_affine(&d).unwrap();
    assert_eq!(comb.coeffs, vec![q(1, 2), Rat::zero(), q(1, 2)]);
    assert_eq!(comb.r, q(1, 2));
    assert!(!is_semi_balanced(&d));
    assert!(is_balanced(&sys(3, "{a,bc}")));
}

#[test]
fn unique_affine_combination_that_is_not_semi_conic() {
    let s = sys(5, "{ab,ac,ad,abc,abce}");
    let comb = solve_unique_affine(&s).unwrap();
    let ints: Vec<Rat> = [-1, -1, 1, 1, 1]
        .into_iter()
        .map(Rat::from_integer)
        .collect();
    assert_eq!(comb.coeffs, ints);
    assert_eq!(comb.r, Rat::one());
    assert!(!comb.is_semi_conic_nonzero());
    assert!(!is_semi_balanced(&s));
}

#[test]
fn coefficient_set_of_a_balanced_system_is_not_convex() {
    let b = sys(4, "{a,b,c,d,ab,cd}");
    assert!(is_balanced(&b));
    assert_eq!(exceptional_sets(&b), vec![c(4, "ab"), c(4, "cd")]);
    let report = analyze(&b);
    assert!(!report.is_minimal);
    assert!(report.theta.is_none());

    let t1 = coefficient_vector(&sys(4, "{a,b,ab}")).unwrap();
    let t2 = coefficient_vector(&sys(4, "{c,d,cd}")).unwrap();
    let one = Rat::one();
    assert_theta(
        &t1,
        &[
            ("a", -&one),
            ("b", -&one),
            ("ab", one.clone()),
            ("0", one.clone()),
        ],
    );
    assert_theta(
        &t2,
        &[
            ("c", -&one),
            ("d", -&one),
            ("cd", one.clone()),
            ("0", one.clone()),
        ],
    );
    let mid = t1.combine(&q(1, 2), &t2, &q(1, 2)).unwrap();
    // λ_S = −θ(S) on members: two positive θ entries mean two negative λ.
    let negative_lambdas = b
        .sets()
        .iter()
        .filter(|&&s| mid.get(s).is_positive())
        .count();
    assert_eq!(negative_lambdas, 2);
}

#[test]
fn min_balanced_theta_is_a_mixture_of_others() {
    let third = q(1, 3);
    let half = q(1, 2);
    let one = Rat::one();
    let tb = coefficient_vector(&sys(3, "{a,b,c}")).unwrap();
    assert_theta(
        &tb,
        &[
            ("N", third.clone()),
            ("a", -&third),
            ("b", -&third),
            ("c", -&third),
            ("0", q(2, 3)),
        ],
    );
    let tc = coefficient_vector(&sys(3, "{c,ab}")).unwrap();
    assert_theta(
        &tc,
        &[
            ("N", half.clone()),
            ("0", half.clone()),
            ("c", -&half),
            ("ab", -&half),
        ],
    );
    let td = coefficient_vector(&sys(3, "{a,b,ab}")).unwrap();
    assert_theta(
        &td,
        &[
            ("ab", one.clone()),
            ("0", one.clone()),
            ("a", -&one),
            ("b", -&one),
        ],
    );
    assert_eq!(tc.combine(&q(2, 3), &td, &q(1, 3)).unwrap(), tb);
    let tb2 = coefficient_vector(&sys(3, "{a,bc}")).unwrap();
    assert_theta(
        &tb2,
        &[
            ("N", half.clone()),
            ("0", half.clone()),
            ("a", -&half),
            ("bc", -&half),
        ],
    );
}

#[test]
fn fourth_class() {
    let s = sys(4, "{a,ab,bc,abd}");
    assert!(linearly_independent(&s.incidence_vectors()));
    let r = analyze(&s);
    assert!(r.is_semi_balanced && r.is_minimal && !r.is_balanced);
    assert_eq!(r.klass, Some(SystemClass::FourthType));
    assert_eq!(r.exceptional, Some(c(4, "ab")));
    // 1·a − 1·ab + 1·bc + 1·abd = χ_N, scaled to Σλ = 1
    let comb = r.combination.unwrap();
    assert_eq!(comb.coeffs, vec![q(1, 2), q(-1, 2), q(1, 2), q(1, 2)]);
    assert_eq!(comb.r, q(1, 2));
}

#[test]
fn pictogram_integer_form() {
    let s = sys(5, "{ab,ac,bc,abd,abe}");
    assert!(is_min_semi_balanced(&s));
    let f = integer_form(&s).unwrap();
    let big = |v: u32| BigUint::from(v);
    assert_eq!(
        f.alpha,
        vec![
            (c(5, "ac"), big(1)),
            (c(5, "bc"), big(1)),
            (c(5, "abd"), big(2)),
            (c(5, "abe"), big(2)),
        ]
    );
    assert_eq!(f.alpha_exceptional, Some((c(5, "ab"), big(3))));
    assert_eq!(f.alpha_empty, big(1));
    assert_eq!(f.alpha_n, big(2));
    assert_eq!(f.to_theta(s.ground()), coefficient_vector(&s).unwrap());
}

#[test]
fn transition_from_balanced_to_purely() {
    let b = sys(4, "{ab,ac,bc,d}");
    assert!(enumerate_min_balanced(&ground(4)).unwrap().contains(&b));
    let comb = solve_unique_affine(&b).unwrap();
    // ½ab + ½ac + ½bc + 1d = χ_N, scaled to Σλ = 1; d sorts first
    assert_eq!(comb.coeffs, vec![q(2, 5), q(1, 5), q(1, 5), q(1, 5)]);
    assert_eq!(comb.r, q(2, 5));

    let s = purely_from_balanced(&b, c(4, "d")).unwrap();
    assert_eq!(s, sys(4, "{ab,ac,bc,abc}"));
    assert_eq!(analyze(&s).exceptional, Some(c(4, "abc")));

    // Z, ∅ and N lose two columns each; Y gains two.
    let fb = integer_form(&b).unwrap();
    let fs = integer_form(&s).unwrap();
    let two = BigUint::from(2u32);
    assert_eq!(fb.alpha[0], (c(4, "d"), two.clone()));
    assert_eq!(fs.alpha_exceptional, Some((c(4, "abc"), two.clone())));
    assert_eq!(&fb.alpha_empty - &fs.alpha_empty, two);
    assert_eq!(&fb.alpha_n - &fs.alpha_n, two);
    assert_eq!(fb.alpha[1..], fs.alpha[..]);
}
