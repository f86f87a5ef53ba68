//! Count every spike across bursts and pauses, in logarithmic space.
//!
//! `build_tsc(T)` composes the mod-4 ring with higher binary digits
//! `z2..zn`: the ring holds the count mod 4 and each wrap of the ring
//! (3 → 0) carries into the digits, which store floor(count / 4) in binary.
//! Between bursts everything parks: the ring sits one-hot, the digits hold,
//! and `decode_tsc` reads the exact total. A new burst picks up where the
//! old one left off — the counter is resumable.
//!
//! Run with: `cargo run --example total_count`

use std::error::Error;

use spikecount::constructions::{build_tsc, decode_tsc};
use spikecount::verify::{oracle_total_spikes, tsc_convergence_time};
use spikecount::{run, InputSequence};

fn main() -> Result<(), Box<dyn Error>> {
    let t = 14;
    let (net, layout) = build_tsc(t)?;
    println!(
        "total-spikes counter for inputs up to length {t}: ring + {} digits, {} non-input neurons",
        layout.z.len(),
        net.non_input_count()
    );
    println!();

    // Three bursts: 5 spikes, pause, 4 spikes, pause, 2 spikes. Total 11.
    let input = InputSequence::parse("11111001111011")?;
    let horizon = input.len() as u32 + 2;
    let trace = run(&net, &input, horizon)?;

    let x = net.input_id()?;
    let mut seen = 0u64;
    println!(" t | x | ring f0..f3 | digits z4..z2 | spikes so far | decoded");
    println!("---+---+-------------+---------------+---------------+--------");
    for time in 0..=horizon {
        let state = trace.at(time).expect("within horizon");
        if state.get(x) {
            seen += 1;
        }
        let ring: Vec<String> =
            layout.f.iter().map(|&id| (state.get(id) as u8).to_string()).collect();
        let digits: Vec<String> =
            layout.z.iter().rev().map(|&id| (state.get(id) as u8).to_string()).collect();
        let decoded = match decode_tsc(state, &layout) {
            Ok(v) => format!("{v}"),
            Err(_) => "(in motion)".to_string(),
        };
        println!(
            "{time:>2} | {} | {}     | {}         | {seen:>13} | {decoded}",
            state.get(x) as u8,
            ring.join(" "),
            digits.join(" ")
        );
    }

    let total = oracle_total_spikes(&input);
    let settled = tsc_convergence_time(&input);
    let answer = decode_tsc(trace.last(), &layout)?;
    println!();
    println!("{total} spikes total; the parked counter decodes to {answer}.");
    assert_eq!(answer, total);

    // From two steps after the last spike the state is clean and frozen.
    for time in settled..=horizon {
        assert_eq!(decode_tsc(trace.at(time).unwrap(), &layout)?, total);
    }
    println!("Settled from t={settled}: every later state decodes to {total}.");
    Ok(())
}
