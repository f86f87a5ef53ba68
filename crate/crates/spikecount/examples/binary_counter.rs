//! Watch the run-length counter tick through binary like an odometer.
//!
//! `build_fcsc_counter(n)` wires digits `z0..zn` and carry helpers
//! `in_1..in_n` so that, while the input fires every step, the digit vector
//! at time `t` reads `t mod 2^(n+1)` in binary. Each digit `z_i` needs to
//! know when all lower digits are lit (time to flip up) and each carry
//! `in_i` fires exactly then, resetting `z_i`'s excitation on the step its
//! lower digits roll over.
//!
//! Run with: `cargo run --example binary_counter`

use std::error::Error;

use spikecount::constructions::{build_fcsc_counter, decode_binary};
use spikecount::{run, InputSequence, NeuronId};

fn main() -> Result<(), Box<dyn Error>> {
    let n = 3;
    let net = build_fcsc_counter(n)?;

    let digits: Vec<NeuronId> =
        (0..=n).map(|i| net.id_by_label(&format!("z{i}"))).collect::<Result<_, _>>()?;
    let carries: Vec<NeuronId> =
        (1..=n).map(|i| net.id_by_label(&format!("in{i}"))).collect::<Result<_, _>>()?;

    // Drive long enough to watch one full wrap of the 4-digit odometer.
    let horizon = 2u32.pow(n + 1) + 2;
    let input = InputSequence::from_bits(vec![true; horizon as usize]);
    let trace = run(&net, &input, horizon)?;

    println!(" t | z3 z2 z1 z0 | value | carries lit");
    println!("---+-------------+-------+------------");
    for t in 0..=horizon {
        let state = trace.at(t).expect("within horizon");
        let value = decode_binary(state, &digits);
        let bits: Vec<String> =
            digits.iter().rev().map(|&id| (state.get(id) as u8).to_string()).collect();
        let lit: Vec<&str> =
            carries.iter().filter(|&&id| state.get(id)).map(|&id| net.label(id)).collect();
        println!(
            "{t:>2} | {}  | {value:>5} | {}",
            bits.join("  "),
            if lit.is_empty() { "-".to_string() } else { lit.join(" ") }
        );
        assert_eq!(value, u64::from(t) % 2u64.pow(n + 1), "odometer reads t mod 16");
    }

    println!();
    println!("Every step adds one: the digit vector is t mod 16 exactly. A carry");
    println!("in_i mirrors \"z1..zi were all lit one step ago\", so it lights on");
    println!("the final step before z1..zi roll over and on the rollover step");
    println!("itself — the two moments where z_i must not follow its own");
    println!("self-excitation.");
    Ok(())
}
