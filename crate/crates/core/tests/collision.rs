use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use platoon_access::dcf::{collision_probability, min_window_lower_bound};
use proptest::prelude::*;

fn tau(w: u32) -> BigRational {
    BigRational::new(2.into(), (w + 1).into())
}

/// Sums the probability of every joint transmit/idle outcome of the other
/// vehicles in which at least one of them transmits.
fn enumerate(lane: usize, windows: &[u32], counts: &[usize]) -> BigRational {
    let mut others = Vec::new();
    for (j, (&w, &n)) in windows.iter().zip(counts).enumerate() {
        let k = if j == lane { n - 1 } else { n };
        others.extend(std::iter::repeat_n(tau(w), k));
    }
    let mut busy = BigRational::zero();
    for mask in 0u32..(1 << others.len()) {
        if mask == 0 {
            continue;
        }
        let mut p = BigRational::one();
        for (b, t) in others.iter().enumerate() {
            p *= if mask >> b & 1 == 1 { t.clone() } else { BigRational::one() - t };
        }
        busy += p;
    }
    busy
}

fn closed_form(lane: usize, windows: &[u32], counts: &[usize]) -> BigRational {
    let mut idle = BigRational::one();
    for (j, (&w, &n)) in windows.iter().zip(counts).enumerate() {
        let k = if j == lane { n - 1 } else { n };
        for _ in 0..k {
            idle *= BigRational::one() - tau(w);
        }
    }
    BigRational::one() - idle
}

#[test]
fn closed_form_equals_enumeration_up_to_ten_vehicles() {
    let windows = [3u32, 16, 64];
    for a in 0..=4usize {
        for b in 0..=3usize {
            for c in 0..=3usize {
                let counts = [a, b, c];
                if a + b + c == 0 || a + b + c > 10 {
                    continue;
                }
                for lane in (0..3).filter(|&l| counts[l] > 0) {
                    let exact = enumerate(lane, &windows, &counts);
                    assert_eq!(exact, closed_form(lane, &windows, &counts), "{counts:?} lane {lane}");
                    let float = collision_probability(lane, &windows, &counts).unwrap();
                    let expect = exact.to_f64().unwrap();
                    assert!((float - expect).abs() <= 1e-15 * expect.max(1e-300), "{float} vs {expect}");
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn lower_bound_is_the_smallest_admissible(n1 in 0usize..6, n2 in 1usize..6, cap in 0.05f64..0.6) {
        let counts = [n1, n2];
        let ub = 256;
        let at = |w: u32| (0..2)
            .filter(|&l| counts[l] > 0)
            .map(|l| collision_probability(l, &[w, w], &counts).unwrap())
            .fold(0.0, f64::max);
        match min_window_lower_bound(&counts, cap, ub) {
            Ok(w) => {
                prop_assert!(at(w) <= cap);
                prop_assert!(w == 2 || at(w - 1) > cap);
            }
            Err(_) => prop_assert!(at(ub) > cap),
        }
    }

    #[test]
    fn collisions_fall_as_windows_grow(w in 2u32..300, n in 2usize..12) {
        let lo = collision_probability(0, &[w], &[n]).unwrap();
        let hi = collision_probability(0, &[w + 1], &[n]).unwrap();
        prop_assert!(hi < lo);
    }
}
