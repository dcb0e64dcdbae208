use platoon_access::dcf::{collision_probability, min_window_lower_bound, WindowAssignment};
use platoon_access::sim::{run_snapshot, run_traversal, SimConfig};
use platoon_access::{LaneScenario, NetworkParams};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn slot_accounting_is_exact(
        w1 in 2u32..200, w2 in 2u32..200, n1 in 0usize..5, n2 in 1usize..5, tx in 1u64..200, seed in any::<u64>(),
    ) {
        let p = NetworkParams::default();
        let mut cfg = SimConfig::snapshot(WindowAssignment(vec![w1, w2]), vec![n1, n2], &p, 200_000, seed);
        cfg.tx_slots = tx;
        let r = run_snapshot(&cfg).unwrap();
        prop_assert_eq!(r.idle_slots + tx * (r.success_events + r.collision_events), r.total_slots);
        prop_assert!(r.total_slots >= cfg.duration_slots);
        prop_assert!(r.total_slots < cfg.duration_slots + tx);
        let collided: u64 = r.per_vehicle_collision_count.iter().sum();
        prop_assert!(collided >= 2 * r.collision_events);
    }
}

#[test]
fn collisions_stay_below_the_cap_at_the_lower_bound() {
    let p = NetworkParams::default();
    let counts = vec![4usize, 4];
    let w = min_window_lower_bound(&counts, p.collision_cap, p.window_ub).unwrap();
    assert!(collision_probability(0, &[w, w], &counts).unwrap() <= p.collision_cap);
    let cfg = SimConfig::snapshot(WindowAssignment(vec![w, w]), counts, &p, 2_000_000, 17);
    let r = run_snapshot(&cfg).unwrap();
    assert!(r.collision_fraction <= p.collision_cap, "{}", r.collision_fraction);
}

#[test]
fn symmetric_lanes_get_equal_shares() {
    let p = NetworkParams::default();
    let lanes = vec![LaneScenario::new(25.0, 1.0), LaneScenario::new(25.0, 1.0)];
    let cfg = SimConfig::traversal(WindowAssignment(vec![128, 128]), lanes, &p, 10_000_000, 2);
    let r = run_traversal(&cfg).unwrap();
    let diff = (r.lane_mean_packets[0] - r.lane_mean_packets[1]).abs();
    let sigma = r.lane_packets_std_error.iter().map(|s| s * s).sum::<f64>().sqrt();
    assert!(diff <= 3.0 * sigma, "{:?} ± {:?}", r.lane_mean_packets, r.lane_packets_std_error);
}

#[test]
fn tau_matches_window_under_frozen_counters() {
    let p = NetworkParams::default();
    let windows = vec![90u32, 180];
    let cfg = SimConfig::snapshot(WindowAssignment(windows.clone()), vec![3, 3], &p, 2_000_000, 5);
    let r = run_snapshot(&cfg).unwrap();
    for (lane, w) in windows.iter().enumerate() {
        let expect = 2.0 / (*w as f64 + 1.0);
        assert!((r.empirical_tau[lane] - expect).abs() <= 3.0 * r.tau_std_error[lane]);
    }
}
