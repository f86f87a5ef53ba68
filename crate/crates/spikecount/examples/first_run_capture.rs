//! Count the first run of consecutive spikes, then hold the answer forever.
//!
//! `build_fcsc(T)` pairs the binary run-length counter with a capture block:
//! answer bits `y0..yn` and a latch `s`. While the first run is in progress
//! the counter digits track its length; on the first quiet step the capture
//! bits copy the digits and `s` locks them in. Whatever the input does
//! afterwards — more runs, stray spikes — the answer neurons never move
//! again, because a lit `s` feeds every `y_i` exactly the excitation it
//! needs to hold, and an input spike inhibits any fresh copy.
//!
//! Run with: `cargo run --example first_run_capture`

use std::error::Error;

use spikecount::constructions::{build_fcsc, decode_fcsc};
use spikecount::verify::oracle_first_run_length;
use spikecount::{run, InputSequence};

fn main() -> Result<(), Box<dyn Error>> {
    let t = 10;
    let (net, layout) = build_fcsc(t)?;
    println!(
        "first-run counter for inputs up to length {t}: {} digits, {} non-input neurons",
        layout.n + 1,
        net.non_input_count()
    );
    println!();

    // A first run of 4, a pause, then a second run the network must ignore.
    let input = InputSequence::parse("0111101100")?;
    let horizon = input.len() as u32 + 2;
    let trace = run(&net, &input, horizon)?;

    let x = net.input_id()?;
    println!(" t | x | y4 y3 y2 y1 y0 | s | decoded");
    println!("---+---+----------------+---+--------");
    for time in 0..=horizon {
        let state = trace.at(time).expect("within horizon");
        let bits: Vec<String> =
            layout.y.iter().rev().map(|&id| (state.get(id) as u8).to_string()).collect();
        println!(
            "{time:>2} | {} | {}  | {} | {}",
            state.get(x) as u8,
            bits.join("  "),
            state.get(layout.s) as u8,
            decode_fcsc(state, &layout)
        );
    }

    let answer = decode_fcsc(trace.last(), &layout);
    let expected = oracle_first_run_length(&input);
    println!();
    println!("input {:?}: first run of consecutive spikes has length {expected}", "0111101100");
    println!("network answer after settling: {answer}");
    assert_eq!(answer, expected);

    // The latch really is permanent: the run ends at t=4, the copy lands at
    // t=6, and every later state decodes to the same value.
    for time in 6..=horizon {
        assert_eq!(decode_fcsc(trace.at(time).unwrap(), &layout), expected);
    }
    println!("…and it stays {expected} from t=6 onwards, spikes or no spikes.");
    Ok(())
}
