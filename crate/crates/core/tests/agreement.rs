//! Every engine against the brute-force enumerator.

mod common;

use common::{all_instances, efae, random_instance, recipients_variant};
use fairext_core::dp::{solve_dp_with, DpConfig};
use fairext_core::fpt::solve_fpt_k_nt;
use fairext_core::ilp::{build_ilp, solve_recipients_ilp, IlpOptions};
use fairext_core::{is_envy_free, solve_bruteforce, Answer, Instance, OracleBudget, Query};

fn oracle(inst: &Instance) -> Answer {
    solve_bruteforce(inst, OracleBudget::default()).answer
}

#[test]
fn fpt_exhaustive_two_agents() {
    let mut count = 0;
    for m in 0..=3 {
        all_instances(2, m, 2, |inst| {
            let out = solve_fpt_k_nt(&inst).unwrap();
            assert_eq!(out.answer, oracle(&inst), "{inst:?}");
            if let Some(w) = &out.witness {
                assert!(is_envy_free(&inst, w) && w.extends(&inst));
            }
            count += 1;
        });
    }
    assert!(count > 20_000);
}

#[test]
fn fpt_random() {
    let mut tally = Tally::default();
    for case in 0..1_000 {
        let inst = random_instance(1, case, 6, 8, 6, 8, 4, efae);
        if inst.k() > 4 {
            continue;
        }
        let out = solve_fpt_k_nt(&inst).unwrap();
        assert_eq!(out.answer, oracle(&inst), "case {case}: {inst:?}");
        if let Some(w) = &out.witness {
            assert!(is_envy_free(&inst, w) && w.extends(&inst));
        }
        tally.add(out.answer);
    }
    tally.check();
}

#[test]
fn dp_random() {
    let mut tally = Tally::default();
    for case in 0..600 {
        let inst = random_instance(2, case, 5, 7, 3, 7, 3, recipients_variant(2));
        let (out, trace) = solve_dp_with(&inst, &DpConfig::default()).unwrap();
        assert_eq!(out.answer, oracle(&inst), "case {case}: {inst:?}");
        assert!(trace.max_layer as f64 <= trace.state_bound());
        if let Some(w) = &out.witness {
            assert!(is_envy_free(&inst, w) && w.extends(&inst) && w.respects_query(&inst));
        }
        tally.add(out.answer);
    }
    tally.check();
}

#[test]
fn ilp_random() {
    let mut tally = Tally::default();
    for case in 0..600 {
        let inst = random_instance(3, case, 5, 7, 5, 3, 6, recipients_variant(3));
        let out = solve_recipients_ilp(&inst, &IlpOptions::default()).unwrap();
        let truth = solve_bruteforce(&inst, OracleBudget::default());
        assert_eq!(out.answer, truth.answer, "case {case}: {inst:?}");
        if let Some(w) = &out.witness {
            assert!(is_envy_free(&inst, w) && w.extends(&inst) && w.respects_query(&inst));
        }
        // The oracle's witness, read back as type counts, satisfies the model
        // built for its receivers.
        if let Some(w) = &truth.witness {
            let recipients = match inst.query() {
                Query::Refae { recipients } => recipients.clone(),
                _ => w.receivers(&inst),
            };
            let enc = build_ilp(&inst, &recipients, &IlpOptions::default()).unwrap();
            let x = enc.aggregate(w).expect("witness respects recipients");
            assert!(enc.model.is_satisfied(&x), "case {case}");
        }
        tally.add(out.answer);
    }
    tally.check();
}

/// Guards against a sweep that only ever sees one answer.
#[derive(Default)]
struct Tally {
    yes: usize,
    no: usize,
}

impl Tally {
    fn add(&mut self, a: Answer) {
        match a {
            Answer::Yes => self.yes += 1,
            Answer::No => self.no += 1,
            Answer::ResourceLimit => panic!("resource limit in a small sweep"),
        }
    }

    fn check(&self) {
        eprintln!("yes = {}, no = {}", self.yes, self.no);
        let total = self.yes + self.no;
        assert!(
            self.yes * 10 >= total && self.no * 10 >= total,
            "lopsided sweep: {} yes, {} no",
            self.yes,
            self.no
        );
    }
}
