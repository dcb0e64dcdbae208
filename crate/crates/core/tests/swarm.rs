use platoon_access::mopso::{
    run, select_optimum, Objective, ParetoArchive, Swarm, SwarmConfig,
};
use platoon_access::params::lane_pair;
use platoon_access::{LaneScenario, NetworkParams};
use proptest::prelude::*;

fn small(seed: u64) -> SwarmConfig {
    SwarmConfig {
        population: 24,
        iterations: 15,
        seed,
        ..SwarmConfig::default()
    }
}

fn check_archive(archive: &ParetoArchive, objective: &Objective) -> Result<(), TestCaseError> {
    prop_assert!(archive.is_mutually_non_dominated());
    let mut seen = std::collections::HashSet::new();
    for m in archive.members() {
        prop_assert!(seen.insert(m.windows.clone()), "duplicate {:?}", m.windows);
        prop_assert_eq!(&objective.evaluate(&m.position).unwrap(), &m.objective);
    }
    prop_assert_eq!(archive.grid_indices().len(), archive.len());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn archive_stays_clean_every_step(seed in any::<u64>(), vbar in 22.0f64..27.5, frac in 0.5f64..=1.0) {
        let p = NetworkParams::default();
        let lanes = lane_pair(vbar, 4.0, frac);
        let obj = Objective::new(&lanes, &p).unwrap();
        let mut swarm = Swarm::new(obj.clone(), small(seed)).unwrap();
        check_archive(swarm.archive(), &obj)?;
        for _ in 0..small(seed).iterations {
            swarm.step().unwrap();
            check_archive(swarm.archive(), &obj)?;
            for q in swarm.particles() {
                for (x, v) in q.position.iter().zip(&q.velocity) {
                    prop_assert!((64.0..=256.0).contains(x));
                    prop_assert!((-1.5..=1.5).contains(v));
                }
            }
        }
    }
}

fn brute_force(lanes: &[LaneScenario], p: &NetworkParams, bound: f64) -> (Vec<u32>, f64) {
    let obj = Objective::new(lanes, p).unwrap();
    let mut best = (Vec::new(), f64::INFINITY);
    for a in p.window_lb..=p.window_ub {
        for b in p.window_lb..=p.window_ub {
            let f = obj.at_windows(&[a, b]).unwrap();
            if f[0] <= bound && f[1] <= bound && f[2] < best.1 {
                best = (vec![a, b], f[2]);
            }
        }
    }
    best
}

#[test]
fn default_run_is_close_to_exhaustive_search() {
    let p = NetworkParams::default();
    let lanes = [LaneScenario::new(26.5, 1.0), LaneScenario::new(22.5, 1.0)];
    let cfg = SwarmConfig::default();
    let (_, best_age) = brute_force(&lanes, &p, cfg.k_bound);
    let res = run(&lanes, &p, &cfg).unwrap();
    assert!(res.objective[2] <= best_age * 1.01, "{:?} vs {best_age}", res.objective);
    assert!(res.objective[..2].iter().all(|&f| f <= cfg.k_bound));
    assert_eq!(select_optimum(&res.archive, cfg.k_bound).unwrap().objective, res.objective);
}
