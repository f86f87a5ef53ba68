//! Build a network by hand: neurons, synapses, validation, simulation.
//!
//! Nothing in the engine is specific to the shipped counters. This example
//! wires a three-neuron gate stage from scratch — `and` fires when the
//! input and a feedback bit were both high, `or` when either was — then
//! shows what `validate` catches when the wiring breaks the model's rules
//! (here: a synapse into the input neuron, which must stay externally
//! driven).
//!
//! Thresholds are strict: a neuron fires iff its summed weights *exceed*
//! the bias, compared in exact rational arithmetic. Picking biases like 3/2
//! therefore implements "at least 2 of my unit inputs".
//!
//! Run with: `cargo run --example custom_network`

use std::error::Error;

use spikecount::exact::{int, rat};
use spikecount::{run, InputSequence, Network, Role};

fn main() -> Result<(), Box<dyn Error>> {
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    // `echo` repeats the input one step later; together x and echo mark a
    // two-spike window.
    let echo = net.add_neuron("echo", Role::Hidden, rat(1, 2));
    let and = net.add_neuron("and", Role::Output, rat(3, 2));
    let or = net.add_neuron("or", Role::Output, rat(1, 2));

    net.connect(x, echo, int(1));
    net.connect(x, and, int(1));
    net.connect(echo, and, int(1));
    net.connect(x, or, int(1));
    net.connect(echo, or, int(1));

    let report = net.validate();
    assert!(report.is_valid(), "{report}");

    let input = InputSequence::parse("110100")?;
    let trace = run(&net, &input, input.len() as u32)?;

    println!(" t | x | echo and or");
    println!("---+---+------------");
    for t in 0..=input.len() as u32 {
        let state = trace.at(t).expect("within horizon");
        println!(
            "{t:>2} | {} | {}    {}   {}",
            state.get(x) as u8,
            state.get(echo) as u8,
            state.get(and) as u8,
            state.get(or) as u8
        );
    }
    println!();
    println!("`and` fires only at t=2, the one step where both x and echo were");
    println!("high a step earlier; `or` fires after any spike in the window.");

    // Now break the rules on purpose: input neurons accept no synapses.
    net.connect(or, x, int(1));
    let report = net.validate();
    assert!(!report.is_valid());
    println!();
    println!("after wiring or -> x, validate() reports:");
    for issue in &report.issues {
        println!("  - {issue}");
    }
    Ok(())
}
