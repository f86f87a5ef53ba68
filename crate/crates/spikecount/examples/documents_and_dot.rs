//! Save a network to JSON, load it back, and render it for Graphviz.
//!
//! Documents store weights and biases as exact decimal strings ("-1.5",
//! "0.1"), so a round trip changes nothing — the loaded network steps
//! identically, bit for bit. The writer is deterministic: same network,
//! same bytes, which keeps documents diff-friendly under version control.
//!
//! `export_dot` emits the same graph in Graphviz format; pipe it through
//! `dot -Tsvg` to see the wiring (input as a diamond, outputs as double
//! circles, weights on the edges).
//!
//! Run with: `cargo run --example documents_and_dot`

use std::error::Error;

use spikecount::constructions::build_mod4;
use spikecount::document::{read_network, write_network};
use spikecount::dot::export_dot;
use spikecount::{run, InputSequence};

fn main() -> Result<(), Box<dyn Error>> {
    let net = build_mod4();

    // Write, read back, write again: identical text, identical behavior.
    let text = write_network(&net, None)?;
    let (reloaded, layout) = read_network(&text)?;
    assert_eq!(text, write_network(&reloaded, None)?);
    assert!(layout.is_none(), "we attached no layout block");

    let input = InputSequence::parse("110111")?;
    let horizon = input.len() as u32 + 2;
    let before = run(&net, &input, horizon)?;
    let after = run(&reloaded, &input, horizon)?;
    assert_eq!(before, after, "the reloaded network steps identically");
    println!("round trip ok: {} bytes of JSON, traces identical", text.len());

    println!();
    println!("--- document (first lines) ---");
    for line in text.lines().take(14) {
        println!("{line}");
    }
    println!("...");

    println!();
    println!("--- graphviz ---");
    print!("{}", export_dot(&net)?);
    Ok(())
}
