//! Prove each neuron's weights implement its intended boolean rule.
//!
//! Every neuron in the two counters was wired to realize a specific boolean
//! function of its predecessors — "fire iff the input is high, my carry is
//! dark, and either all lower digits are lit or I already was", and so on.
//! The catalogs in `verify::rules` state those functions explicitly, and
//! `check_firing_rule` settles each one by brute force: load every
//! predecessor assignment into a fresh state, run one engine step, compare.
//!
//! For most neurons the rule holds on the full boolean cube. Two targets
//! (`s` and the total counter's digits) only promise their rule on
//! assignments their network can actually reach, so impossible assignments
//! are skipped and counted.
//!
//! The second half breaks a weight on purpose to show what a refutation
//! looks like.
//!
//! Run with: `cargo run --example firing_rules`

use std::error::Error;

use spikecount::constructions::{build_fcsc, build_tsc};
use spikecount::exact::int;
use spikecount::verify::{
    capture_rules, check_firing_rule, counter_rules, mod4_rules, tsc_rules,
};

fn main() -> Result<(), Box<dyn Error>> {
    let (fcsc, fcsc_layout) = build_fcsc(8)?;
    let (tsc, tsc_layout) = build_tsc(8)?;

    println!("== first-run counter, T=8 ==");
    let mut rules = counter_rules(fcsc_layout.n);
    rules.extend(capture_rules(fcsc_layout.n));
    for rule in &rules {
        println!("{}", check_firing_rule(&fcsc, rule)?);
    }

    println!();
    println!("== total counter, T=8 ==");
    let mut rules = mod4_rules();
    rules.extend(tsc_rules(tsc_layout.n));
    for rule in &rules {
        println!("{}", check_firing_rule(&tsc, rule)?);
    }

    // Now sabotage one synapse: the ring's wrap assist f3 -> f1 carries the
    // gentle weight -7/10 so that a lit f0 (+3/10 assist) can still push f1
    // over its bias mid-wrap. Hardening it to -3 kills that path.
    println!();
    println!("== same ring with f3 -> f1 hardened to -3 ==");
    let mut broken = build_tsc(8)?.0;
    broken.set_weight("f3", "f1", int(-3))?;
    let mut refuted = 0;
    for rule in &mod4_rules() {
        let report = check_firing_rule(&broken, rule)?;
        if !report.passed() {
            refuted += 1;
        }
        println!("{report}");
    }
    assert!(refuted > 0, "the broken wrap must be caught");
    println!();
    println!("{refuted} rule(s) refuted — each failure names the exact predecessor");
    println!("assignment on which one engine step contradicts the stated rule.");
    Ok(())
}
