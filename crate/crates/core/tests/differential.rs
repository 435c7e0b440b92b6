mod common;

use std::time::Instant;

use kedl_core::oracle::{find_model, Bounds, Target};
use kedl_core::semantics::FunctionalityMode;
use kedl_core::syntax::{KnowledgeBase, Sort};
use kedl_core::tableau::Tableau;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn tableau_agrees_with_oracle() {
    let mut rng = StdRng::seed_from_u64(7);
    let kb = KnowledgeBase::default();
    let start = Instant::now();
    let (mut sat, mut unsat) = (0, 0);
    let n: usize = std::env::var("DIFF_N").ok().and_then(|v| v.parse().ok()).unwrap_or(200);
    let depth: usize = std::env::var("DIFF_D").ok().and_then(|v| v.parse().ok()).unwrap_or(3);
    for k in 0..n {
        let sort = if rng.gen_bool(0.5) {
            Sort::Object
        } else {
            Sort::Attribute
        };
        let e = common::nnf_concept(&mut rng, sort, depth);
        for mode in [FunctionalityMode::AtMostOne, FunctionalityMode::ExactlyOne] {
            let t0 = Instant::now();
            let t = Tableau::new(&kb).with_mode(mode).is_satisfiable_as(&e, sort).unwrap();
            let t1 = Instant::now();
            let o = find_model(Target::ConceptAs(&e, sort), Bounds::new(3, 3).with_mode(mode));
            let t2 = Instant::now();
            if (t2 - t1).as_millis() > 200 || (t1 - t0).as_millis() > 200 {
                eprintln!("slow #{k} {mode}: tableau {:?} oracle {:?}: {e}", t1 - t0, t2 - t1);
            }
            if t.is_satisfiable() {
                sat += 1
            } else {
                unsat += 1
            }
            assert!(
                !(o.is_model() && !t.is_satisfiable()),
                "#{k} {mode}: oracle model, tableau unsat: {e}"
            );
        }
    }
    eprintln!("sat {sat} unsat {unsat} in {:?}", start.elapsed());
}
