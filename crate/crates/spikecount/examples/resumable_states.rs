//! Start the total counter from an injected state and watch it resume.
//!
//! The total-spikes counter's big claim is not just "it counts": it is that
//! any *clean* state — ring one-hot on `X mod 4`, digits spelling
//! `floor(X/4)`, carries dark — behaves exactly like the state the network
//! would have reached by really delivering `X` spikes. This example builds
//! such states by hand with `run_from`, fires a few more spikes, and checks
//! the decode reads `X + burst`.
//!
//! It also shows why the carry neurons must be dark: a carry lit at the
//! wrong moment clears a digit on the next spike and the count silently
//! drops. The clean-state checker rejects exactly those states.
//!
//! Run with: `cargo run --example resumable_states`

use std::error::Error;

use spikecount::constructions::{build_tsc, decode_tsc};
use spikecount::verify::check_clean_state;
use spikecount::{run_from, FiringState, InputSequence};

fn main() -> Result<(), Box<dyn Error>> {
    let (net, layout) = build_tsc(14)?;

    println!("resuming from hand-built parked states (ring + digits, carries dark):");
    for (start_value, burst) in [(0u64, 3u32), (5, 4), (8, 1), (11, 3)] {
        // Park the ring one-hot on start_value mod 4 and spell the higher
        // bits into the digits.
        let mut state = FiringState::blank(&net, 0);
        if start_value > 0 {
            state.set(layout.f[(start_value % 4) as usize], true);
        }
        for (k, &z) in layout.z.iter().enumerate() {
            state.set(z, (start_value >> (k + 2)) & 1 == 1);
        }
        assert!(check_clean_state(&state, start_value, &layout));

        let input = InputSequence::from_bits(vec![true; burst as usize]);
        let steps = burst + 2;
        let trace = run_from(&net, state, &input, steps)?;
        let decoded = decode_tsc(trace.last(), &layout)?;
        println!("  start at {start_value}, fire {burst} more -> decodes {decoded}");
        assert_eq!(decoded, start_value + u64::from(burst));
    }

    // The cautionary tale: the state definition leaves carries free at most
    // values, but resuming only works when they are dark. Plant value 4
    // (ring on f0, digit z2 lit) with the carry in2 wrongly lit, deliver one
    // spike, and the carry clears z2: the counter reads 1, not 5.
    println!();
    let mut state = FiringState::blank(&net, 0);
    state.set(layout.f[0], true);
    state.set(layout.z[0], true);
    state.set(layout.carry[0], true);
    let trace = run_from(&net, state, &InputSequence::parse("1")?, 3)?;
    let decoded = decode_tsc(trace.last(), &layout)?;
    println!("value 4 with carry in2 wrongly lit, one more spike -> decodes {decoded} (not 5!)");
    assert_eq!(decoded, 1);
    println!("a lit carry eats its digit on the next spike; clean states keep carries dark.");
    Ok(())
}
