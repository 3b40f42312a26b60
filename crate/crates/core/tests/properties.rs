use fairext_core::dp::{solve_dp_with, DpConfig, Representative};
use fairext_core::fairness::{items_value, satisfies};
use fairext_core::ilp::{solve_ilp, IlpModel, IlpStatus, Relation};
use fairext_core::relaxed::{extend_to_ef1_with, Ef1Engine};
use fairext_core::{
    bundle_value, compute_types, is_ef1, is_efx, is_envy_free, solve_bruteforce, Allocation, Answer, Instance, Notion,
    OracleBudget, Query,
};
use proptest::prelude::*;

fn matrix(n: usize, m: usize, v: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(0..=v, m), n)
}

/// A complete allocation over a random matrix.
fn allocated() -> impl Strategy<Value = (Instance, Allocation)> {
    (1usize..=4, 0usize..=6).prop_flat_map(|(n, m)| {
        (matrix(n, m, 5), prop::collection::vec(0..n, m)).prop_map(move |(values, owners)| {
            let inst = Instance::from_matrix(values, vec![None; m], Query::Efae).unwrap();
            (inst, Allocation::new(owners))
        })
    })
}

/// A partial allocation with the given query.
fn partial(query: fn(usize) -> Query, n_max: usize, m_max: usize, v: i64) -> impl Strategy<Value = Instance> {
    (1usize..=n_max, 0usize..=m_max).prop_flat_map(move |(n, m)| {
        (matrix(n, m, v), prop::collection::vec(prop::option::of(0..n), m))
            .prop_map(move |(values, assigned)| Instance::from_matrix(values, assigned, query(n)).unwrap())
    })
}

/// Direct transcription of the definitions, quantifying over items.
fn naive(inst: &Instance, alloc: &Allocation, notion: Notion) -> bool {
    let n = inst.n();
    let bundles = alloc.bundles(n);
    (0..n).all(|i| {
        let own = items_value(inst, i, &bundles[i]).unwrap();
        (0..n).filter(|&j| j != i).all(|j| {
            let b = &bundles[j];
            let without = |skip: usize| -> i64 {
                b.iter()
                    .enumerate()
                    .filter(|&(p, _)| p != skip)
                    .map(|(_, &a)| inst.value(i, a))
                    .sum()
            };
            match notion {
                Notion::Ef => own >= items_value(inst, i, b).unwrap(),
                Notion::Ef1 => b.is_empty() || (0..b.len()).any(|p| own >= without(p)),
                Notion::Efx => (0..b.len()).all(|p| own >= without(p)),
            }
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn notion_hierarchy((inst, alloc) in allocated()) {
        if is_envy_free(&inst, &alloc) {
            prop_assert!(is_efx(&inst, &alloc));
        }
        if is_efx(&inst, &alloc) {
            prop_assert!(is_ef1(&inst, &alloc));
        }
    }

    #[test]
    fn checkers_match_definitions((inst, alloc) in allocated()) {
        for notion in [Notion::Ef, Notion::Ef1, Notion::Efx] {
            prop_assert_eq!(satisfies(&inst, &alloc, notion), naive(&inst, &alloc, notion));
        }
    }

    #[test]
    fn bundle_value_is_additive((inst, alloc) in allocated(), evaluator in 0usize..4) {
        let i = evaluator % inst.n();
        let total: i64 = (0..inst.m()).map(|a| inst.value(i, a)).sum();
        let parts: i64 = (0..inst.n()).map(|j| bundle_value(&inst, i, &alloc, j).unwrap()).sum();
        prop_assert_eq!(total, parts);
    }

    #[test]
    fn types_partition_rows_and_columns(inst in partial(|_| Query::Efae, 5, 6, 2)) {
        let t = compute_types(&inst);
        prop_assert!(t.n_types() <= inst.n() && t.m_types() <= inst.m());
        for x in 0..inst.n() {
            for y in 0..inst.n() {
                prop_assert_eq!(t.agent_type_of[x] == t.agent_type_of[y], inst.row(x) == inst.row(y));
            }
        }
        for a in 0..inst.m() {
            for b in 0..inst.m() {
                let same = (0..inst.n()).all(|x| inst.value(x, a) == inst.value(x, b));
                prop_assert_eq!(t.item_type_of[a] == t.item_type_of[b], same);
            }
        }
        // Ids follow first occurrence.
        let mut next = 0;
        for &ty in &t.agent_type_of {
            prop_assert!(ty <= next);
            if ty == next {
                next += 1;
            }
        }
    }

    #[test]
    fn dp_representative_choice_is_irrelevant(
        inst in partial(|n| Query::Fefae { p: n.min(2) }, 4, 6, 3)
    ) {
        let first = solve_dp_with(&inst, &DpConfig::default()).unwrap().0;
        let last_cfg = DpConfig { representative: Representative::Last, ..DpConfig::default() };
        let last = solve_dp_with(&inst, &last_cfg).unwrap().0;
        prop_assert_eq!(first.answer, last.answer);
        if let Some(w) = &last.witness {
            prop_assert!(is_envy_free(&inst, w));
        }
    }

    #[test]
    fn dp_item_order_is_irrelevant(
        inst in partial(|n| Query::Refae { recipients: (0..n.min(2)).collect() }, 4, 6, 3),
        rotate in 0usize..6,
    ) {
        let m = inst.m();
        let perm: Vec<usize> = (0..m).map(|a| (a + rotate) % m.max(1)).collect();
        let values: Vec<Vec<i64>> = inst.values().iter().map(|row| perm.iter().map(|&a| row[a]).collect()).collect();
        let assigned: Vec<Option<usize>> = perm.iter().map(|&a| inst.assigned()[a]).collect();
        let permuted = Instance::from_matrix(values, assigned, inst.query().clone()).unwrap();
        let a = solve_dp_with(&inst, &DpConfig::default()).unwrap().0.answer;
        let b = solve_dp_with(&permuted, &DpConfig::default()).unwrap().0.answer;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ilp_matches_box_enumeration(
        bounds in prop::collection::vec(0i64..=4, 1..=4),
        rows in prop::collection::vec(
            (prop::collection::vec(-3i64..=3, 4), any::<bool>(), -6i64..=8),
            0..=3,
        ),
    ) {
        let mut model = IlpModel::new();
        let nv = bounds.len();
        for (i, &ub) in bounds.iter().enumerate() {
            model.add_var(format!("x{i}"), 0, ub).unwrap();
        }
        for (c, (coefs, eq, rhs)) in rows.iter().enumerate() {
            let relation = if *eq { Relation::Eq } else { Relation::Ge };
            model
                .add_constraint(format!("c{c}"), coefs.iter().take(nv).copied().enumerate(), relation, *rhs)
                .unwrap();
        }
        let mut exists = false;
        let mut x = vec![0i64; nv];
        'outer: loop {
            if model.is_satisfied(&x) {
                exists = true;
                break;
            }
            for d in (0..nv).rev() {
                if x[d] < bounds[d] {
                    x[d] += 1;
                    continue 'outer;
                }
                x[d] = 0;
            }
            break;
        }
        let verdict = solve_ilp(&model, 1_000_000);
        match verdict.status {
            IlpStatus::Feasible(sol) => {
                prop_assert!(exists);
                prop_assert!(model.is_satisfied(&sol));
            }
            IlpStatus::Infeasible => prop_assert!(!exists),
            IlpStatus::NodeLimit => prop_assert!(false, "node limit on a tiny box"),
        }
    }

    #[test]
    fn ef1_extension_chained_inequality(inst in partial(|_| Query::Efae, 5, 8, 6)) {
        let (sub, gamma) = inst.restrict_to_given();
        prop_assume!(is_envy_free(&sub, &gamma));
        for engine in [Ef1Engine::RoundRobin, Ef1Engine::EnvyCycle] {
            let alloc = extend_to_ef1_with(&inst, engine).unwrap();
            prop_assert!(is_ef1(&inst, &alloc));
            prop_assert!(alloc.extends(&inst));
            let n = inst.n();
            let open = inst.open_items();
            let pi: Vec<Vec<usize>> = (0..n)
                .map(|j| open.iter().copied().filter(|&a| alloc.owner(a) == j).collect())
                .collect();
            for i in 0..n {
                for (j, pj) in pi.iter().enumerate() {
                    if i == j || pj.is_empty() {
                        continue;
                    }
                    let own = bundle_value(&inst, i, &alloc, i).unwrap();
                    let given_j = bundle_value(&sub, i, &gamma, j).unwrap();
                    let pi_j = items_value(&inst, i, pj).unwrap();
                    let top = pj.iter().map(|&a| inst.value(i, a)).max().unwrap();
                    prop_assert!(own >= given_j + pi_j - top);
                }
            }
        }
    }

    #[test]
    fn oracle_witness_is_lexicographically_first(inst in partial(|_| Query::Efae, 3, 4, 2)) {
        let out = solve_bruteforce(&inst, OracleBudget::default());
        if out.answer == Answer::Yes {
            let w = out.witness.unwrap();
            let open = inst.open_items();
            let key = |a: &Allocation| open.iter().map(|&t| a.owner(t)).collect::<Vec<_>>();
            // No envy-free extension sorts before the reported one.
            let mut digits = vec![0usize; open.len()];
            loop {
                let pairs: Vec<(usize, usize)> = open.iter().copied().zip(digits.iter().copied()).collect();
                let cand = Allocation::extend(&inst, &pairs).unwrap();
                if key(&cand) >= key(&w) {
                    break;
                }
                prop_assert!(!is_envy_free(&inst, &cand));
                let mut d = open.len();
                loop {
                    if d == 0 {
                        break;
                    }
                    d -= 1;
                    digits[d] += 1;
                    if digits[d] < inst.n() {
                        break;
                    }
                    digits[d] = 0;
                }
            }
        }
    }
}
