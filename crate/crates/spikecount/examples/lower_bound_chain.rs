//! Why instant answers cost T neurons and delayed answers cost log T.
//!
//! A network solves counting *at time 0* if its decoded output equals the
//! running count at every step of the all-ones input — no settling delay.
//! The unary chain `c1..cT` does this: each spike lights the next neuron,
//! so after `t` spikes exactly `c1..ct` are lit. But the certificate that
//! proves it working also proves it big: the lit-output sets form a strictly
//! growing chain `S_0 ⊊ S_1 ⊊ … ⊊ S_T`, and `T` strict growth steps need at
//! least `T` distinct output neurons.
//!
//! The binary counters dodge the bound by not being time-0 solvers — they
//! take one or two settling steps — and in exchange fit the same horizons
//! into O(log T) neurons.
//!
//! Run with: `cargo run --example lower_bound_chain`

use std::error::Error;

use spikecount::constructions::{
    build_fcsc, build_tsc, build_unary_time0_counter, decode_fcsc, decode_tsc, decode_unary,
};
use spikecount::verify::time0_chain_certificate;

fn main() -> Result<(), Box<dyn Error>> {
    let t = 6;

    // The unary chain is a time-0 solver, and the probe extracts the chain.
    let unary = build_unary_time0_counter(t)?;
    let outputs = unary.output_ids();
    let decode = |state: &spikecount::FiringState| Some(decode_unary(state, &outputs));
    let outcome = time0_chain_certificate(&unary, &outputs, &decode, t)?;
    println!("unary chain, T={t}: {outcome}");
    assert!(outcome.is_solver());

    // The two binary counters fail the same probe — each needs settling
    // time — which is exactly what exempts them from the T-output bound.
    let (fcsc, fcsc_layout) = build_fcsc(t)?;
    let outputs = fcsc_layout.y.clone();
    let decode = |state: &spikecount::FiringState| Some(decode_fcsc(state, &fcsc_layout));
    let outcome = time0_chain_certificate(&fcsc, &outputs, &decode, t)?;
    println!("first-run counter, T={t}: {outcome}");
    assert!(!outcome.is_solver());

    let (tsc, tsc_layout) = build_tsc(t)?;
    let mut outputs = tsc_layout.f.to_vec();
    outputs.extend(tsc_layout.z.iter().copied());
    let decode = |state: &spikecount::FiringState| decode_tsc(state, &tsc_layout).ok();
    let outcome = time0_chain_certificate(&tsc, &outputs, &decode, t)?;
    println!("total counter, T={t}: {outcome}");
    assert!(!outcome.is_solver());

    // The payoff for giving up instant answers, in neurons:
    println!();
    println!("     T | unary outputs | first-run size | total size");
    println!("-------+---------------+----------------+-----------");
    for t in [8u32, 64, 1024, 16384] {
        let unary = build_unary_time0_counter(t)?;
        let (fcsc, _) = build_fcsc(t)?;
        let (tsc, _) = build_tsc(t)?;
        println!(
            "{t:>6} | {:>13} | {:>14} | {:>10}",
            unary.non_input_count(),
            fcsc.non_input_count(),
            tsc.non_input_count()
        );
    }
    println!();
    println!("The unary row grows linearly because it must; the others grow with");
    println!("the number of binary digits needed for the horizon.");
    Ok(())
}
