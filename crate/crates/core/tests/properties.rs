use graphgeo::complex::{euler_of_graph, f_vector, Chain, Form};
use graphgeo::geometry::{curvature, inductive_dimension};
use graphgeo::graph::generators::{random_contractible, random_er, random_tree};
use graphgeo::morse::{ph_check, VertexFunction};
use graphgeo::spectral::{betti_rank_oracle, rooted_forest_count, spanning_tree_count, OperatorBundle};
use graphgeo::symmetry::{automorphisms, fixed_simplices};
use graphgeo::{Graph, SimplicialStructure};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

fn graph() -> impl Strategy<Value = Graph> {
    (3usize..10, 0.2f64..0.8, any::<u64>()).prop_map(|(n, p, seed)| random_er(n, p, seed).unwrap())
}

fn int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn curvature_sums_to_euler(g in graph()) {
        prop_assert_eq!(curvature(&g).total(), int(euler_of_graph(&g)));
    }

    #[test]
    fn curvature_invariant_under_relabeling(g in graph(), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        let mut r = graphgeo::graph::generators::rng(seed);
        rand::seq::SliceRandom::shuffle(perm.as_mut_slice(), &mut r);
        let h = g.permuted(&perm);
        let (kg, kh) = (curvature(&g).values, curvature(&h).values);
        for x in 0..g.n() {
            prop_assert_eq!(&kg[x], &kh[perm[x]]);
        }
    }

    #[test]
    fn index_sum_is_euler(g in graph(), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..g.n()).collect();
        let mut r = graphgeo::graph::generators::rng(seed);
        rand::seq::SliceRandom::shuffle(order.as_mut_slice(), &mut r);
        let (sum, chi) = ph_check(&g, &VertexFunction::from_order(&order)).unwrap();
        prop_assert_eq!(sum, chi);
    }

    #[test]
    fn two_routes_to_betti(g in graph()) {
        let s = SimplicialStructure::new(&g).unwrap();
        let b = OperatorBundle::new(&s).unwrap();
        let oracle = betti_rank_oracle(&s);
        prop_assert_eq!(&b.betti_hodge().betti, &oracle);
        let alt: i64 = oracle.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(alt, s.euler_characteristic());
        prop_assert!((b.supertrace_heat(0.7) - alt as f64).abs() < 1e-8);
    }

    #[test]
    fn stokes_pairing(g in graph(), coeffs in prop::collection::vec(-4i64..=4, 64), k in 0usize..2) {
        let s = SimplicialStructure::new(&g).unwrap();
        prop_assume!(s.dims() > k + 1);
        let chain = Chain { degree: k + 1, coeffs: (0..s.count(k + 1)).map(|i| coeffs[i % 64]).collect() };
        let form: Form = s.form(k, (0..s.count(k)).map(|i| int(coeffs[(i * 7 + 3) % 64])).collect()).unwrap();
        let (a, b) = s.stokes_pairing(&chain, &form).unwrap();
        prop_assert_eq!(a, b);
        let ddf = s.exterior(&s.exterior(&form));
        prop_assert!(ddf.coeffs.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn leibniz_rule(g in graph(), a in prop::collection::vec(-3i64..=3, 64), b in prop::collection::vec(-3i64..=3, 64)) {
        let s = SimplicialStructure::new(&g).unwrap();
        prop_assume!(s.dims() >= 3);
        let f: Form = s.form(1, (0..s.count(1)).map(|i| int(a[i % 64])).collect()).unwrap();
        let h: Form = s.form(0, (0..s.count(0)).map(|i| int(b[i % 64])).collect()).unwrap();
        // d(f ∪ h) = df ∪ h - f ∪ dh for a 1-form f
        let lhs = s.exterior(&s.cup(&f, &h));
        let r1 = s.cup(&s.exterior(&f), &h);
        let r2 = s.cup(&f, &s.exterior(&h));
        for i in 0..lhs.coeffs.len() {
            prop_assert_eq!(&lhs.coeffs[i], &(&r1.coeffs[i] - &r2.coeffs[i]));
        }
    }

    #[test]
    fn trees_have_one_spanning_tree(n in 2usize..14, seed in any::<u64>()) {
        let t = random_tree(n, seed);
        prop_assert_eq!(spanning_tree_count(&t).count, BigInt::from(1));
        prop_assert_eq!(euler_of_graph(&t), 1);
        prop_assert_eq!(inductive_dimension(&t).graph, int(1));
    }

    #[test]
    fn forests_dominate_trees(g in graph()) {
        prop_assume!(g.is_connected());
        let trees = spanning_tree_count(&g).count;
        prop_assert!(rooted_forest_count(&g) >= trees * BigInt::from(g.n()));
    }

    #[test]
    fn contractible_graphs_fix_a_simplex(n in 4usize..9, seed in any::<u64>()) {
        let g = random_contractible(n, seed);
        prop_assert_eq!(f_vector(&g).iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum::<i64>(), 1);
        let s = SimplicialStructure::new(&g).unwrap();
        for t in automorphisms(&g).unwrap() {
            prop_assert!(!fixed_simplices(&s, &t).is_empty());
        }
    }
}
