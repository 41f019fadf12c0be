mod common;

use common::*;
use mdd_core::approx::{kreg_lower_bound, mdd_max_logn};
use mdd_core::cubic::{build_domination_gadget, normalize_dominating_set};
use mdd_core::exact::{brute_force_optimum, kregular_feasible_witness, OracleConfig};
use mdd_core::harness::{random_regular, random_set_system};
use mdd_core::io::{parse_instance, parse_set_system, write_instance, write_set_system};
use mdd_core::reductions::{setcover_to_mddmax_bip, setcover_to_mddmin_bip};
use mdd_core::{
    induced_subgraph, is_feasible, is_feasible_set, DeletionSet, Error, Graph, Instance, Objective, Weight,
};
use num_rational::Ratio;
use proptest::prelude::*;

fn arb_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
        })
    })
}

fn arb_objective() -> impl Strategy<Value = Objective> {
    prop_oneof![Just(Objective::Min), Just(Objective::Max)]
}

/// Random instance with weights in `1..=5`, occasionally infinite.
fn arb_instance(max_n: usize) -> impl Strategy<Value = Instance> {
    (arb_graph(1, max_n), arb_objective()).prop_flat_map(|(g, obj)| {
        let n = g.n();
        (
            Just(g),
            0..n,
            Just(obj),
            proptest::collection::vec(prop_oneof![9 => (1u64..=5).prop_map(Weight::Finite), 1 => Just(Weight::Infinite)], n),
        )
            .prop_map(|(g, p, obj, w)| Instance::new(g, p, obj).unwrap().with_weights(w).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn deleting_everything_else_is_feasible(inst in arb_instance(10)) {
        prop_assert!(is_feasible(&inst, &inst.delete_all()));
        prop_assert!(is_feasible(&inst.dualize(), &inst.delete_all()));
    }

    #[test]
    fn feasibility_matches_reference(inst in arb_instance(10), mask in any::<u32>()) {
        let adj = Adj::of(inst.graph());
        let s = mask & adj.full() & !(1 << inst.p());
        let max = inst.objective() == Objective::Max;
        prop_assert_eq!(is_feasible_set(&inst, &members(s)), feasible(&adj, inst.p(), s, max));
    }

    #[test]
    fn induced_subgraph_keeps_exactly_inner_edges(g in arb_graph(1, 10), mask in any::<u16>()) {
        let keep: Vec<usize> = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let sub = induced_subgraph(&g, keep.iter().copied()).unwrap();
        prop_assert_eq!(sub.graph.n(), keep.len());
        for i in 0..keep.len() {
            for j in 0..keep.len() {
                if i != j {
                    prop_assert_eq!(sub.graph.has_edge(i, j), g.has_edge(sub.to_original(i), sub.to_original(j)));
                }
            }
        }
    }

    #[test]
    fn oracle_matches_reference(inst in arb_instance(8)) {
        let s = brute_force_optimum(&inst, &OracleConfig::default()).unwrap();
        prop_assert!(is_feasible(&inst, &s));
        prop_assert_eq!(s.total_weight().finite(), mdd_opt_of(&inst));
    }

    #[test]
    fn oracle_respects_duality(inst in arb_instance(8)) {
        let a = brute_force_optimum(&inst, &OracleConfig::default()).unwrap();
        let b = brute_force_optimum(&inst.dualize(), &OracleConfig::default()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn logn_is_feasible_and_no_better_than_optimal(inst in arb_instance(9)) {
        let inst = Instance::new(inst.graph().clone(), inst.p(), Objective::Max)
            .unwrap()
            .with_weights(inst.weights().to_vec())
            .unwrap();
        match mdd_max_logn(&inst, 6) {
            Ok(out) => {
                prop_assert!(is_feasible(&inst, &out.solution));
                let opt = brute_force_optimum(&inst, &OracleConfig::default()).unwrap();
                prop_assert!(out.solution.total_weight() >= opt.total_weight());
            }
            Err(Error::Budget { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn regular_witness_is_small_and_feasible(n in 4usize..=14, k in 1usize..=5, seed in any::<u64>(), p_pick in any::<usize>()) {
        prop_assume!(k < n && n * k % 2 == 0);
        let g = random_regular(n, k, seed).unwrap();
        prop_assert_eq!(g.regular_degree(), Some(k));
        let inst = Instance::new(g, p_pick % n, Objective::Min).unwrap();
        let w = kregular_feasible_witness(&inst).unwrap();
        prop_assert!(is_feasible(&inst, &w));
        prop_assert!(w.len() < 2 * k);
    }

    #[test]
    fn lower_bound_dominates_simple_bound(n in 1u64..200, k in 1u64..20, f in 0u64..20) {
        prop_assume!(f <= k);
        let lb = kreg_lower_bound(n, k, f).unwrap();
        prop_assert!(lb >= Ratio::new(n - 1, k + 1));
    }

    #[test]
    fn normalization_keeps_domination(n in prop::sample::select(vec![6usize, 8, 10, 12]), seed in any::<u64>(), extra in any::<u64>()) {
        let g = random_regular(n, 3, seed).unwrap();
        let inst = Instance::new(g, 0, Objective::Max).unwrap();
        let Ok(gadget) = build_domination_gadget(&inst) else { return Ok(()) };
        let m = gadget.gprime.n();
        // Every proxy plus a random sprinkle of other vertices.
        let mut d: Vec<usize> = gadget.proxies();
        d.extend((0..m.min(64)).filter(|&v| extra >> v & 1 == 1));
        d.sort_unstable();
        d.dedup();
        prop_assume!(gadget.gprime.is_dominating(&d));
        let out = normalize_dominating_set(&gadget, &d).unwrap();
        prop_assert!(gadget.gprime.is_dominating(&out));
        prop_assert!(out.len() <= d.len());
        prop_assert!(out.iter().all(|&v| !gadget.is_proxy(v)));
        let s = DeletionSet::new(&inst, gadget.to_instance(&out).unwrap()).unwrap();
        prop_assert!(is_feasible(&inst, &s));
    }

    #[test]
    fn set_cover_reductions_round_trip(r in 1usize..=4, t in 1usize..=6, q in 0.1f64..0.9, seed in any::<u64>()) {
        let sys = random_set_system(r, t, q, seed).unwrap();
        let all: Vec<usize> = (0..t).collect();
        let art = setcover_to_mddmin_bip(&sys).unwrap();
        prop_assert!(is_bipartite(art.instance.graph()));
        let s = art.forward(&all).unwrap();
        let back = art.backward(&s).unwrap();
        prop_assert!(sys.is_cover(&back) && back.len() <= s.len());
        if let Ok(art) = setcover_to_mddmax_bip(&sys) {
            prop_assert!(is_bipartite(art.instance.graph()));
            let p = art.instance.p();
            prop_assert_eq!(art.instance.graph().degree(p), t);
            let s = art.forward(&all).unwrap();
            prop_assert!(sys.is_cover(&art.backward(&s).unwrap()));
        }
    }

    #[test]
    fn instance_files_round_trip(inst in arb_instance(12)) {
        let text = write_instance(&inst);
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(write_instance(&back), text);
    }

    #[test]
    fn set_system_files_round_trip(r in 1usize..=6, t in 1usize..=6, q in 0.0f64..1.0, seed in any::<u64>()) {
        let sys = random_set_system(r, t, q, seed).unwrap();
        let text = write_set_system(&sys);
        prop_assert_eq!(write_set_system(&parse_set_system(&text).unwrap()), text);
    }
}
