//! Deterministic threshold spiking networks that count spikes, plus
//! exhaustive verifiers for them.
//!
//! The model ([`engine`]) is a finite digraph of memoryless threshold
//! neurons stepping in lockstep: a neuron fires exactly when last step's
//! weighted spikes exceed its bias, with all arithmetic exact rational. One
//! designated input neuron is driven from outside with a finite 0/1 train.
//!
//! On top of that sit two families of counting networks ([`constructions`]):
//!
//! * **first-run counters** — latch the length of the *first* maximal run of
//!   consecutive input spikes, in binary, a settling step after the run ends;
//! * **total counters** — track the number of input spikes seen so far, as a
//!   mod-4 ring plus binary high digits, readable one quiet step after any
//!   pause and correct across resumed bursts.
//!
//! Both use `O(log T)` neurons for inputs up to length `T`. A unary chain
//! fixture answers *at every step* with no settling delay, at the cost of
//! `T` output neurons — the strict-chain certificate in [`verify::chain`]
//! shows that cost is forced, and the compact counters genuinely cannot do
//! it, so the settling step is the price of logarithmic size.
//!
//! The [`verify`] module checks all of this by brute force: every input up
//! to a length bound, every firing rule over its whole predecessor cube (or
//! a validated reachable envelope), every parked state, every resumed burst.
//! [`document`] round-trips networks as JSON with exact decimal scalars,
//! [`dot`] renders them for Graphviz, and [`cli`] wraps the lot in a small
//! command-line tool.
//!
//! # Quick start
//!
//! ```
//! use spikecount::constructions::{build_fcsc, decode_fcsc};
//! use spikecount::{run, InputSequence};
//!
//! // A first-run counter for inputs up to 8 ticks long.
//! let (net, layout) = build_fcsc(8)?;
//!
//! // The first maximal run of 1s in this train has length 4.
//! let input = InputSequence::parse("0111101")?;
//! let trace = run(&net, &input, 10)?;
//! assert_eq!(decode_fcsc(trace.last(), &layout), 4);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod cli;
pub mod constructions;
pub mod document;
pub mod dot;
pub mod engine;
pub mod exact;
pub mod verify;

pub use engine::{run, run_from, FiringState, InputSequence, Network, NeuronId, Role, Trace};
pub use exact::{int, rat, Rational};
