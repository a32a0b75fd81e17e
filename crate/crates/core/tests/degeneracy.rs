//! Cross-check: with the minimum gain at zero and a single shared, constant
//! generation temperature forced across members, the perpetual-orbit step
//! reproduces the classic step member by member (the orbit machinery only
//! redistributes temperatures, which are pinned here).

use pocsa_core::benchmarks::Benchmark;
use pocsa_core::csa::{csa_step, member_streams, CouplingState};
use pocsa_core::ensemble::initialize_ensemble;
use pocsa_core::orbit::OrbitState;
use pocsa_core::pocsa::{po_csa_step, PoCsaState};
use pocsa_core::rng::RngStream;

#[test]
fn po_csa_with_zero_gain_and_pinned_temperature_matches_csa() {
    let f = Benchmark::new(1, 3, None).unwrap();
    let m = 3;
    let seed = 314;
    let t_shared = 1.5;

    let mut master_a = RngStream::new(seed, 0);
    let mut streams_a = member_streams(seed, m);
    let mut ensemble_a = initialize_ensemble(&f, m, &mut master_a).unwrap();
    let mut coupling_a = CouplingState::new(&ensemble_a.energies(), 1.0, 0.05).unwrap();

    let mut master_b = RngStream::new(seed, 0);
    let mut streams_b = member_streams(seed, m);
    let ensemble_b = initialize_ensemble(&f, m, &mut master_b).unwrap();
    let coupling_b = CouplingState::new(&ensemble_b.energies(), 1.0, 0.05).unwrap();
    let orbit = OrbitState::with_values(
        vec![t_shared; m],
        vec![1; m],
        ensemble_b.best_index(),
        10.0,
        0.05,
        0.05,
    )
    .unwrap();
    let mut state = PoCsaState {
        ensemble: ensemble_b,
        coupling: coupling_b,
        orbit,
        delta: 0.0,
    };

    assert_eq!(ensemble_a.energies(), state.ensemble.energies());

    for iteration in 0..100 {
        csa_step(&mut ensemble_a, &mut coupling_a, t_shared, &mut streams_a, &f).unwrap();
        state.orbit.set_values(&vec![t_shared; m]);
        po_csa_step(&mut state, &mut streams_b, &f).unwrap();

        let a = ensemble_a.energies();
        let b = state.ensemble.energies();
        for i in 0..m {
            assert!(
                (a[i] - b[i]).abs() <= 1e-12 * (1.0 + a[i].abs()),
                "member {i} diverged at iteration {iteration}: {} vs {}",
                a[i],
                b[i]
            );
        }
        assert_eq!(
            ensemble_a.best_snapshot().energy,
            state.ensemble.best_snapshot().energy
        );
        assert_eq!(coupling_a.t_ac(), state.coupling.t_ac());
    }
}
