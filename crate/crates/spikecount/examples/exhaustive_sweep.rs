//! Check the counters against every possible input, and replay a failure.
//!
//! For input lengths this small, exhaustive beats clever: `exhaustive_verify`
//! enumerates all 2^T spike trains, runs the network on each, and compares
//! the decoded answer (and every output bit) against a plain software oracle
//! at every step of the settled window. A cost guard refuses T beyond the
//! configured bound so nobody launches 2^30 runs by accident.
//!
//! The second half plants a wrong bias, catches the resulting
//! counterexample, and replays it by hand to show the report is literal:
//! same input, same time, same neuron, same wrong bit.
//!
//! Run with: `cargo run --example exhaustive_sweep`

use std::error::Error;

use spikecount::constructions::{build_fcsc, decode_fcsc};
use spikecount::exact::rat;
use spikecount::verify::{
    exhaustive_verify, sweep_fcsc, CheckValue, TaskKind, VerifyConfig, VerifyError,
};
use spikecount::run;

fn main() -> Result<(), Box<dyn Error>> {
    let config = VerifyConfig::default();

    for t in [4, 8, 10] {
        println!("{}", exhaustive_verify(TaskKind::Fcsc, t, 2, &config)?);
        println!("{}", exhaustive_verify(TaskKind::Tsc, t, 2, &config)?);
    }

    // The guard in action: T=30 is over the default bound of 12.
    match exhaustive_verify(TaskKind::Fcsc, 30, 2, &config) {
        Err(VerifyError::BoundExceeded { requested, max }) => {
            println!("refused: T={requested} exceeds the bound T<={max} (override via VerifyConfig)")
        }
        other => panic!("expected the cost guard to refuse, got {other:?}"),
    }

    // Now fault injection: raise the answer bit y0's bias from 1/10 to 1/2
    // and sweep again. The copy step still lands (z0 feeds a full unit), but
    // when a later input spike arrives the hold margin is 4 - 2 - 3/2 = 1/2
    // exactly — no longer strictly above the bias — and the latched bit dies.
    println!();
    let (mut net, layout) = build_fcsc(3)?;
    net.set_bias("y0", rat(1, 2))?;
    let report = sweep_fcsc(&net, &layout, 3, 2)?;
    println!("{report}");
    let cex = report.counterexample.as_ref().expect("the fault must be caught");

    // Replay the counterexample verbatim: same input, same time, and the
    // decode disagrees exactly as reported. The named neuron is the first
    // answer bit that differs from the oracle's value.
    let trace = run(&net, &cex.input, cex.time)?;
    let state = trace.at(cex.time).unwrap();
    let replayed = CheckValue::Count(decode_fcsc(state, &layout));
    println!(
        "replayed by hand: input={} decodes to {replayed} at t={} (report: expected {}, observed {}; first wrong bit {})",
        cex.input, cex.time, cex.expected, cex.observed, cex.neuron
    );
    assert_eq!(replayed, cex.observed);
    let neuron = net.id_by_label(&cex.neuron)?;
    assert!(!state.get(neuron), "y0 should have stayed dark in the broken net");
    Ok(())
}
