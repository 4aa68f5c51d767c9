//! Dense-grid agreement checks between the closed-form module outputs and
//! the explicit matrix constructions they summarize. These are coarser than
//! the acceptance criteria in tolerance philosophy: every comparison here is
//! between two ways of building the *same* object, so the budget is pure
//! round-off (1e-12), not method error.

use std::f64::consts::FRAC_PI_4;

use horizon_core::{
    acceleration_parameter, apply_one_sided, bloch_to_density, density_to_bloch, make_channel,
    noisy_reduced_state, reduced_state, reduced_state_numeric, ChannelKind, HawkingFrame, Sector,
    ThermalSpec,
};

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

#[test]
fn closed_reduced_states_match_the_dilation_route() {
    let ps = grid(0.0, 1.0, 21);
    let angles = grid(0.0, FRAC_PI_4, 21);
    let mut worst: f64 = 0.0;
    for &p in &ps {
        for &ra in &angles {
            for &rb in &angles {
                let frame = HawkingFrame::new(ra, rb).unwrap();
                for sector in Sector::ALL {
                    let closed = bloch_to_density(&reduced_state(sector, p, &frame).unwrap())
                        .unwrap();
                    let numeric = reduced_state_numeric(sector, p, &frame).unwrap();
                    let delta = closed.matrix().max_abs_diff(numeric.matrix());
                    worst = worst.max(delta);
                    assert!(
                        delta <= 1e-12,
                        "entrywise gap {delta:.3e} for {sector} at p={p}, ra={ra}, rb={rb}"
                    );
                }
            }
        }
    }
    println!("worst closed-vs-dilation entry gap: {worst:.3e}");
}

#[test]
fn noisy_closed_forms_match_the_kraus_route() {
    let ps = grid(0.0, 1.0, 5);
    let angles = grid(0.0, FRAC_PI_4, 5);
    let ks = grid(0.0, 1.0, 11);
    let mut worst: f64 = 0.0;
    for kind in ChannelKind::ALL {
        for &p in &ps {
            for &ra in &angles {
                for &rb in &angles {
                    let frame = HawkingFrame::new(ra, rb).unwrap();
                    for sector in Sector::ALL {
                        let clean = reduced_state_numeric(sector, p, &frame).unwrap();
                        for &k in &ks {
                            let closed = bloch_to_density(
                                &noisy_reduced_state(kind, sector, p, &frame, k).unwrap(),
                            )
                            .unwrap();
                            let channel = make_channel(kind, k).unwrap();
                            let kraus = apply_one_sided(&clean, &channel).unwrap();
                            let delta = closed.matrix().max_abs_diff(kraus.matrix());
                            worst = worst.max(delta);
                            assert!(
                                delta <= 1e-12,
                                "entrywise gap {delta:.3e} for {kind:?} {sector} \
                                 at p={p}, ra={ra}, rb={rb}, k={k}"
                            );
                        }
                    }
                }
            }
        }
    }
    println!("worst closed-vs-kraus entry gap: {worst:.3e}");
}

#[test]
fn channel_completeness_holds_on_a_fine_grid() {
    for kind in ChannelKind::ALL {
        for k in grid(0.0, 1.0, 101) {
            let defect = make_channel(kind, k).unwrap().completeness_defect();
            assert!(
                defect <= 1e-15,
                "ΣE†E − I defect {defect:.3e} for {kind:?} at k={k}"
            );
        }
    }
}

#[test]
fn kraus_route_preserves_the_x_pattern() {
    // One-sided noise must keep the marginal inside the X family: the
    // cross-shaped zero pattern survives, so the Bloch read-back both
    // succeeds and reproduces the matrix exactly.
    let frame = HawkingFrame::new(0.31, 0.64).unwrap();
    for kind in ChannelKind::ALL {
        for sector in Sector::ALL {
            for k in grid(0.0, 1.0, 11) {
                for p in grid(0.0, 1.0, 5) {
                    let clean = reduced_state_numeric(sector, p, &frame).unwrap();
                    let noisy = apply_one_sided(&clean, &make_channel(kind, k).unwrap()).unwrap();
                    let params = density_to_bloch(&noisy)
                        .expect("one-sided noise left the X family");
                    let rebuilt = bloch_to_density(&params).unwrap();
                    let delta = rebuilt.matrix().max_abs_diff(noisy.matrix());
                    assert!(delta <= 1e-13, "roundtrip gap {delta:.3e}");
                }
            }
        }
    }
}

#[test]
fn thermal_frames_agree_with_direct_angles() {
    // Building a frame from (ω, T) pairs must land on the same angles as
    // feeding the map T ↦ arcsin[(e^{ω/T}+1)^{-1/2}] through the plain
    // constructor.
    for omega in [0.5, 1.0, 2.0] {
        for t in [1e-6, 0.1, 1.0, 42.0, 1e9, f64::INFINITY] {
            let spec_a = ThermalSpec::with_temperature(omega, t).unwrap();
            let spec_b = ThermalSpec::with_temperature(omega, 2.0 * t).unwrap();
            let frame = HawkingFrame::from_thermal(&spec_a, &spec_b);
            let direct = HawkingFrame::new(
                acceleration_parameter(&spec_a),
                acceleration_parameter(&spec_b),
            )
            .unwrap();
            assert_eq!(frame.ra(), direct.ra());
            assert_eq!(frame.rb(), direct.rb());
        }
    }
}
