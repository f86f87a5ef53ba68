//! The smallest interesting network: two synapses that track the parity of a
//! spike run.
//!
//! Neuron `z0` receives the input with weight 1 and inhibits itself with
//! weight −1 against a bias of 1/2. While the input fires on consecutive
//! steps, `z0` alternates: at time `t` it reads (number of spikes so far)
//! mod 2. The moment the input pauses, the potential drops below the bias
//! and the bit dies — this pair remembers parity only while it is driven,
//! which is exactly the job of the lowest digit inside the run-length
//! counter (see the `binary_counter` example for the digits above it).
//!
//! Run with: `cargo run --example parity`

use std::error::Error;

use spikecount::constructions::build_mod2_base;
use spikecount::{run, InputSequence};

fn main() -> Result<(), Box<dyn Error>> {
    let net = build_mod2_base();
    let x = net.input_id()?;
    let z0 = net.id_by_label("z0")?;

    // Five consecutive spikes, then silence.
    let input = InputSequence::parse("1111100")?;
    let trace = run(&net, &input, input.len() as u32)?;

    println!("t | x z0 | spikes before t | their parity");
    println!("--+------+-----------------+-------------");
    let mut seen = 0u64;
    for t in 0..=input.len() as u32 {
        let state = trace.at(t).expect("within horizon");
        println!(
            "{t} | {} {}  | {seen:>15} | {}",
            state.get(x) as u8,
            state.get(z0) as u8,
            seen % 2
        );
        if state.get(x) {
            seen += 1;
        }
    }

    // While the run is alive (t = 1..=5 here), z0 reports the parity of the
    // spikes delivered strictly before t. Afterwards it falls dark.
    for t in 1..=5u32 {
        let lit = trace.at(t).unwrap().get(z0);
        assert_eq!(lit as u32, t % 2, "z0 should alternate inside the run");
    }
    assert!(!trace.at(6).unwrap().get(z0), "one quiet step kills the bit");
    assert!(!trace.at(7).unwrap().get(z0));

    println!();
    println!("Inside the run z0 alternates 1,0,1,0,... — the count mod 2, one");
    println!("step delayed. One quiet input step later it is dark for good.");
    Ok(())
}
