//! The mod-4 ring: a one-hot residue that survives arbitrary pauses.
//!
//! Four neurons `f0..f3` hold the total spike count modulo 4 as a one-hot
//! code. Each input spike advances the hot position by one; when the input
//! pauses, the hot neuron's self-excitation parks it in place indefinitely.
//! This is the piece that lets the total-spikes counter resume after gaps —
//! unlike the run-length digits, the ring never forgets.
//!
//! Mid-burst the code is briefly *two*-hot (the old position hands over to
//! the new one); it collapses back to one-hot a step after the burst ends.
//!
//! Run with: `cargo run --example mod4_bursts`

use std::error::Error;

use spikecount::constructions::{build_mod4, decode_one_hot};
use spikecount::{run, InputSequence, NeuronId};

fn main() -> Result<(), Box<dyn Error>> {
    let net = build_mod4();
    let ring: Vec<NeuronId> =
        (0..4).map(|i| net.id_by_label(&format!("f{i}"))).collect::<Result<_, _>>()?;

    // Three bursts with pauses: 2 spikes, 3 spikes, 1 spike (total 6).
    let input = InputSequence::parse("110011100001")?;
    let horizon = input.len() as u32 + 2;
    let trace = run(&net, &input, horizon)?;

    let x = net.input_id()?;
    let mut total = 0u64;
    println!(" t | x | f0 f1 f2 f3 | residue");
    println!("---+---+-------------+--------");
    for time in 0..=horizon {
        let state = trace.at(time).expect("within horizon");
        if state.get(x) {
            total += 1;
        }
        let bits: Vec<String> =
            ring.iter().map(|&id| (state.get(id) as u8).to_string()).collect();
        let lit = ring.iter().filter(|&&id| state.get(id)).count();
        let residue = match decode_one_hot(state, &ring) {
            Ok(r) => r.to_string(),
            Err(_) if lit == 0 => "(dark)".to_string(),
            Err(_) => "(in motion)".to_string(),
        };
        println!("{time:>2} | {} | {}  | {residue}", state.get(x) as u8, bits.join("  "));
    }

    // Two steps after the final spike the ring is parked one-hot on the
    // total count mod 4 — here 6 mod 4 = 2 — and stays there.
    let parked = decode_one_hot(trace.last(), &ring)?;
    println!();
    println!("{total} spikes were delivered; the parked ring reads {parked} (= {total} mod 4).");
    assert_eq!(parked, total % 4);
    Ok(())
}
