use polylift::logic::{monk_subst, naive_subst, parse_formula, transpose_vars, Formula};
use polylift::relalg::{Context, Relation};
use polylift::terms::{parse_term, print_term, Term};
use polylift::transform::{decompose_mixed, GeneratorWord, Transformation};
use proptest::prelude::*;

fn transformation(dim: usize) -> impl Strategy<Value = Transformation> {
    proptest::collection::vec(0..dim, dim).prop_map(|v| Transformation::new(v).unwrap())
}

fn relation(ctx: Context) -> impl Strategy<Value = Relation> {
    proptest::collection::vec(any::<bool>(), ctx.size())
        .prop_map(move |bits| Relation::from_indices(ctx, (0..bits.len()).filter(|&k| bits[k])).unwrap())
}

fn term(dim: usize) -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        (0..3usize).prop_map(Term::var),
        Just(Term::Zero),
        Just(Term::One),
    ];
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            inner.clone().prop_map(Term::compl),
            (0..dim, inner.clone()).prop_map(|(i, a)| Term::cyl(i, a)),
            (0..dim, 0..dim, inner.clone()).prop_map(|(i, j, a)| Term::subst(i, j, a)),
            (0..dim, 0..dim, inner.clone()).prop_map(|(i, j, a)| Term::transp(i, j, a)),
            (transformation(dim), inner).prop_map(|(s, a)| Term::subst_sigma(s, a)),
        ]
    })
}

fn formula(dim: usize) -> impl Strategy<Value = Formula> {
    let leaf = (0..2usize, proptest::collection::vec(0..dim, dim))
        .prop_map(|(k, args)| Formula::atom(k, args));
    leaf.prop_recursive(4, 24, 2, move |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (0..dim, inner).prop_map(|(i, a)| Formula::exists(i, a)),
        ]
    })
}

proptest! {
    #[test]
    fn mixed_words_round_trip(sigma in transformation(5)) {
        let w = decompose_mixed(&sigma);
        prop_assert_eq!(w.evaluate(5).unwrap(), sigma.clone());
        prop_assert!(w.len() <= 8);
        let reparsed: GeneratorWord = w.to_string().parse().unwrap();
        prop_assert_eq!(reparsed, w);
    }

    #[test]
    fn composition_is_associative(a in transformation(4), b in transformation(4), c in transformation(4)) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn subst_sigma_is_contravariant(
        s in transformation(3),
        t in transformation(3),
        r in relation(Context::new(3, 3).unwrap()),
    ) {
        let composed = r.subst_sigma(&s.compose(&t).unwrap()).unwrap();
        let stepwise = r.subst_sigma(&t).unwrap().subst_sigma(&s).unwrap();
        prop_assert_eq!(composed, stepwise);
    }

    #[test]
    fn operators_are_additive(
        x in relation(Context::new(3, 3).unwrap()),
        y in relation(Context::new(3, 3).unwrap()),
        i in 0..3usize,
        j in 0..3usize,
    ) {
        let join = x.join(&y).unwrap();
        prop_assert_eq!(join.cyl(i).unwrap(), x.cyl(i).unwrap().join(&y.cyl(i).unwrap()).unwrap());
        prop_assert_eq!(join.subst(i, j).unwrap(), x.subst(i, j).unwrap().join(&y.subst(i, j).unwrap()).unwrap());
        prop_assert_eq!(x.complement().transp(i, j).unwrap(), x.transp(i, j).unwrap().complement());
        prop_assert!(x.is_subset(&x.cyl(i).unwrap()));
    }

    #[test]
    fn relation_text_round_trips(x in relation(Context::new(2, 3).unwrap())) {
        prop_assert_eq!(x.to_text().parse::<Relation>().unwrap(), x.clone());
        let tuples = format!("alpha=2 base=3 {x}");
        prop_assert_eq!(tuples.parse::<Relation>().unwrap(), x);
    }

    #[test]
    fn terms_round_trip(t in term(3)) {
        prop_assert_eq!(parse_term(&print_term(&t)).unwrap(), t);
    }

    #[test]
    fn formulas_round_trip(f in formula(3)) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn transpose_is_an_involution(f in formula(3), i in 0..3usize, j in 0..3usize) {
        prop_assert_eq!(transpose_vars(i, j, &transpose_vars(i, j, &f)), f);
    }

    #[test]
    fn substitutions_agree_without_binders_of_the_target(f in formula(3)) {
        fn binds(f: &Formula, v: usize) -> bool {
            match f {
                Formula::Atom { .. } => false,
                Formula::Not(a) => binds(a, v),
                Formula::And(a, b) => binds(a, v) || binds(b, v),
                Formula::Exists(k, a) => *k == v || binds(a, v),
            }
        }
        if !binds(&f, 0) && !binds(&f, 1) {
            prop_assert_eq!(monk_subst(0, 1, &f), naive_subst(0, 1, &f));
        }
    }
}
