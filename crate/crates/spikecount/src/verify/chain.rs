//! Time-0 solving and the output-count lower bound.
//!
//! A network solves a counting task *at time 0* if, under the all-ones input
//! of length `T`, its decoded output already equals the running count `t` at
//! every `t ∈ {1..T}` — no settling delay at all. Such networks are
//! necessarily large: the sets `S_t` of lit output neurons must be pairwise
//! distinct (the decoder maps them to distinct values) and, for monotone
//! accumulator designs, form a strictly growing chain
//! `S_0 ⊊ S_1 ⊊ … ⊊ S_T`, which by pigeonhole forces at least `T` output
//! neurons. [`time0_chain_certificate`] either exhibits that chain or
//! reports the first time the time-0 contract fails.

use std::fmt;

use crate::engine::{run, EngineError, FiringState, InputSequence, Network, NeuronId};

/// The lit-output sets `S_0..S_T` extracted from an all-ones run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainCertificate {
    /// `sets[t]` is the set of output neurons lit at time `t`, ascending ids.
    pub sets: Vec<Vec<NeuronId>>,
    /// Whether each set is a strict subset of the next.
    pub strict: bool,
}

impl ChainCertificate {
    /// `|outputs| ≥ T` by pigeonhole, available only when the chain is
    /// strict: `T+1` strictly growing subsets need `T` distinct elements.
    pub fn implied_output_lower_bound(&self) -> Option<usize> {
        self.strict.then(|| self.sets.len() - 1)
    }

    /// Whether sorted sets form a strictly growing chain.
    pub fn strictly_increasing(sets: &[Vec<NeuronId>]) -> bool {
        sets.windows(2).all(|w| {
            let (a, b) = (&w[0], &w[1]);
            a.len() < b.len() && a.iter().all(|id| b.binary_search(id).is_ok())
        })
    }
}

impl fmt::Display for ChainCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .sets
            .iter()
            .map(|set| {
                let ids: Vec<String> = set.iter().map(|id| id.to_string()).collect();
                format!("{{{}}}", ids.join(","))
            })
            .collect();
        write!(f, "{}", rendered.join(if self.strict { " ⊊ " } else { " , " }))
    }
}

/// What the all-ones probe found.
#[derive(Debug, Clone)]
pub enum TimeZeroOutcome {
    /// The decoded output tracked `t` exactly; here is the chain.
    Solver(ChainCertificate),
    /// The decode missed `t` for the first time at `time`.
    NotTimeZero { time: u32, expected: u64, decoded: Option<u64> },
}

impl TimeZeroOutcome {
    pub fn is_solver(&self) -> bool {
        matches!(self, TimeZeroOutcome::Solver(_))
    }
}

impl fmt::Display for TimeZeroOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeZeroOutcome::Solver(cert) => {
                write!(f, "time-0 solver; chain {cert}")?;
                if let Some(bound) = cert.implied_output_lower_bound() {
                    write!(f, " (strict: at least {bound} output neurons)")?;
                }
                Ok(())
            }
            TimeZeroOutcome::NotTimeZero { time, expected, decoded } => match decoded {
                Some(value) => write!(
                    f,
                    "not a time-0 solver: at t={time} the decode reads {value}, not {expected}"
                ),
                None => write!(
                    f,
                    "not a time-0 solver: at t={time} the output is not decodable (expected {expected})"
                ),
            },
        }
    }
}

/// Probes the network with the all-ones input of length `t`, checking the
/// decoded output against the running count at every step; on success,
/// extracts the lit-output chain. `decode` returns `None` for states the
/// decoder rejects.
pub fn time0_chain_certificate(
    net: &Network,
    outputs: &[NeuronId],
    decode: &dyn Fn(&FiringState) -> Option<u64>,
    t: u32,
) -> Result<TimeZeroOutcome, EngineError> {
    let input = InputSequence::from_bits(vec![true; t as usize]);
    let trace = run(net, &input, t)?;

    for time in 1..=t {
        let state = trace.at(time).expect("horizon covers t");
        let decoded = decode(state);
        if decoded != Some(time as u64) {
            return Ok(TimeZeroOutcome::NotTimeZero { time, expected: time as u64, decoded });
        }
    }

    let mut sets = Vec::with_capacity(t as usize + 1);
    for time in 0..=t {
        let state = trace.at(time).expect("horizon covers t");
        let mut lit: Vec<NeuronId> = outputs.iter().copied().filter(|&id| state.get(id)).collect();
        lit.sort();
        sets.push(lit);
    }
    let strict = ChainCertificate::strictly_increasing(&sets);
    Ok(TimeZeroOutcome::Solver(ChainCertificate { sets, strict }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        build_fcsc, build_tsc, build_unary_time0_counter, decode_fcsc, decode_tsc, decode_unary,
    };

    #[test]
    fn unary_chain_certifies_with_a_strict_chain() {
        let net = build_unary_time0_counter(4).unwrap();
        let outputs = net.output_ids();
        let decode = |state: &FiringState| Some(decode_unary(state, &outputs));
        let outcome = time0_chain_certificate(&net, &outputs, &decode, 4).unwrap();

        let TimeZeroOutcome::Solver(cert) = outcome else {
            panic!("the unary chain solves at time 0");
        };
        assert!(cert.strict);
        assert_eq!(cert.implied_output_lower_bound(), Some(4));
        assert_eq!(cert.sets.len(), 5);
        assert_eq!(cert.sets[0], vec![]);
        // S_t is exactly the first t chain neurons (ids 1..=t).
        for (t, set) in cert.sets.iter().enumerate() {
            assert_eq!(set.len(), t);
        }
    }

    #[test]
    fn fcsc_fails_the_probe_immediately() {
        let (net, layout) = build_fcsc(4).unwrap();
        let decode = |state: &FiringState| Some(decode_fcsc(state, &layout));
        let outcome = time0_chain_certificate(&net, &layout.y, &decode, 4).unwrap();
        match outcome {
            TimeZeroOutcome::NotTimeZero { time, expected, decoded } => {
                assert_eq!(time, 1);
                assert_eq!(expected, 1);
                assert_eq!(decoded, Some(0), "the answer block is still dark at t=1");
            }
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn tsc_fails_the_probe_at_the_first_two_hot_step() {
        let (net, layout) = build_tsc(4).unwrap();
        let decode = |state: &FiringState| decode_tsc(state, &layout).ok();
        let outputs = net.output_ids();
        let outcome = time0_chain_certificate(&net, &outputs, &decode, 4).unwrap();
        match outcome {
            TimeZeroOutcome::NotTimeZero { time, decoded, .. } => {
                assert_eq!(time, 2, "t=1 decodes to 1; the moving pair breaks t=2");
                assert_eq!(decoded, None);
            }
            other => panic!("unexpected: {other}"),
        }
    }

    #[test]
    fn the_degenerate_one_step_tsc_is_a_time0_solver() {
        // At T=1 there is nothing to settle: one spike lights f1 at t=1.
        // The probe is honest about this corner; the separation between the
        // counters and the unary chain starts at T=2.
        let (net, layout) = build_tsc(1).unwrap();
        let decode = |state: &FiringState| decode_tsc(state, &layout).ok();
        let outcome = time0_chain_certificate(&net, &net.output_ids(), &decode, 1).unwrap();
        assert!(outcome.is_solver());
    }

    #[test]
    fn strictness_checker_matches_the_definition() {
        let chain = vec![vec![], vec![NeuronId(1)], vec![NeuronId(1), NeuronId(2)]];
        assert!(ChainCertificate::strictly_increasing(&chain));

        let stalls = vec![vec![NeuronId(1)], vec![NeuronId(1)]];
        assert!(!ChainCertificate::strictly_increasing(&stalls));

        let swaps = vec![vec![NeuronId(1)], vec![NeuronId(2), NeuronId(3)]];
        assert!(!ChainCertificate::strictly_increasing(&swaps), "growth must be containment");
    }
}
