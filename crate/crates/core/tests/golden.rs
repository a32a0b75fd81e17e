//! Golden-run regressions: short seeded campaigns whose outcomes were
//! recorded once and cross-checked against the straight-line reimplementation
//! in the acceptance suite. Any drift in stream discipline, acceptance order,
//! or the update sequence shows up here as a bit-level diff.

use pocsa_core::benchmarks::Benchmark;
use pocsa_core::csa::{run_csa, CsaConfig};
use pocsa_core::pocsa::{run_po_csa, PoCsaParams};
use pocsa_core::run::TraceLevel;

#[test]
fn csa_hundred_iterations_replays_the_recorded_history() {
    let f = Benchmark::new(1, 5, None).unwrap();
    let config = CsaConfig {
        m: 5,
        budget_per_optimizer: 101, // init + 100 iterations
        t_gen_0: 10.0,
        t_ac_0: 1.0,
        alpha: 0.05,
    };
    let run = run_csa(&f, &config, 20240715, TraceLevel::Off).unwrap();
    assert_eq!(run.iterations, 100);
    assert_eq!(run.eval_count, 505);
    assert_eq!(run.best_energy_history.len(), 101);
    assert_eq!(run.best_energy_history[0].to_bits(), 0x40C04505C1130B57);
    assert_eq!(run.best_energy_history[50].to_bits(), 0x40973D2CFB18F07E);
    assert_eq!(run.final_best.energy.to_bits(), 0x4088F8F3900AADAB);
}

#[test]
fn po_csa_hundred_iterations_replays_the_recorded_history() {
    let f = Benchmark::new(1, 5, None).unwrap();
    let run = run_po_csa(&f, 5, 101, &PoCsaParams::default(), 20240715, TraceLevel::Off).unwrap();
    assert_eq!(run.iterations, 100);
    assert_eq!(run.eval_count, 505);
    assert_eq!(run.best_energy_history[0].to_bits(), 0x40C04505C1130B57);
    assert_eq!(run.best_energy_history[50].to_bits(), 0x40A0DF6FB2354CE0);
    assert_eq!(run.final_best.energy.to_bits(), 0x404CE666B36A504B);
    assert_eq!(run.t_gen_0.to_bits(), 0x4055BBA35722E8E5);
}
