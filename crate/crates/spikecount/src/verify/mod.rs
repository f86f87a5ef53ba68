//! Verification: exhaustive input sweeps, firing-rule enumeration, clean
//! states, reachability envelopes, and the time-0 probe.
//!
//! Desk-scale exhaustiveness is the point: for the input lengths the
//! acceptance suite cares about (`T ≤ 12` by default) every one of the `2^T`
//! spike trains is simulated and decoded against an oracle computed straight
//! from the bits. Failures come back as replayable [`Counterexample`]s.

pub mod chain;
pub mod oracle;
pub mod rules;
mod sweeps;

pub use chain::{time0_chain_certificate, ChainCertificate, TimeZeroOutcome};
pub use oracle::{oracle_first_run_length, oracle_total_spikes};
pub use rules::{
    capture_rules, check_firing_rule, check_firing_rule_in, counter_rules, mod4_rules, tsc_rules,
    FiringRule, RuleDomain, RuleReport,
};
pub use sweeps::{
    check_capture_freeze, check_counter_binary, check_mod4_bursts, check_tsc_resumability,
};

use std::fmt;

use thiserror::Error;

use crate::constructions::{
    build_fcsc, build_tsc, decode_fcsc, decode_tsc, BuildError, FcscLayout, TscLayout,
};
use crate::engine::{run, EngineError, FiringState, InputSequence};

/// Which counting task a verification run targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskKind {
    Fcsc,
    Tsc,
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TaskKind::Fcsc => "fcsc",
            TaskKind::Tsc => "tsc",
        })
    }
}

/// Knobs for the exhaustive sweeps.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Largest `T` the exhaustive sweep will accept (it enumerates `2^T`
    /// inputs, so this is a cost guard, not a correctness bound).
    pub max_exhaustive_t: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_exhaustive_t: 12 }
    }
}

/// Why a verification run could not even start.
#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(
        "T={requested} would enumerate 2^{requested} inputs, above the configured bound T<={max}; \
         raise the bound explicitly if you mean it"
    )]
    BoundExceeded { requested: u32, max: u32 },
    #[error("settle must be at least 1 (got {got}); the claims need at least one quiet readout step")]
    SettleTooSmall { got: u32 },
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// A value observed or expected at a counterexample site.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckValue {
    /// A single neuron's firing bit.
    Bit(bool),
    /// A decoded count.
    Count(u64),
    /// The output block was not in a decodable configuration.
    NotClean,
}

impl fmt::Display for CheckValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckValue::Bit(true) => f.write_str("fired"),
            CheckValue::Bit(false) => f.write_str("silent"),
            CheckValue::Count(c) => write!(f, "{c}"),
            CheckValue::NotClean => f.write_str("not clean"),
        }
    }
}

/// A replayable failure: feed `input` to the same network and look at
/// `neuron` at `time`.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub input: InputSequence,
    pub time: u32,
    pub neuron: String,
    pub expected: CheckValue,
    pub observed: CheckValue,
    /// Extra scenario detail for sweeps that start from injected states.
    pub context: Option<String>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "input={} t={} neuron={}: expected {}, observed {}",
            self.input, self.time, self.neuron, self.expected, self.observed
        )?;
        if let Some(context) = &self.context {
            write!(f, " ({context})")?;
        }
        Ok(())
    }
}

/// Outcome of one named check: how much was covered and the earliest
/// counterexample if any.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub name: String,
    /// Scenarios examined (inputs, or injected start states × bursts).
    pub cases: u64,
    /// Individual assertions evaluated.
    pub checks: u64,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "[PASS] {}: {} cases, {} checks", self.name, self.cases, self.checks),
            Some(cex) => write!(f, "[FAIL] {} (after {} cases): {cex}", self.name, self.cases),
        }
    }
}

/// All `2^t` spike trains of length `t`, in lexicographic order (so the
/// earliest counterexample is found first and reruns are reproducible).
pub fn lex_inputs(t: u32) -> Vec<InputSequence> {
    (0..1u64 << t)
        .map(|mask| {
            InputSequence::from_bits((0..t).map(|j| mask >> (t - 1 - j) & 1 == 1).collect())
        })
        .collect()
}

/// First time from which the first-run answer must be latched: one step
/// after the first run of 1s ends (0 for a silent input — the answer block
/// then just stays dark).
pub fn fcsc_convergence_time(input: &InputSequence) -> u32 {
    let bits = input.bits();
    match bits.iter().position(|&b| b) {
        None => 0,
        Some(first) => {
            let run = bits[first..].iter().take_while(|&&b| b).count();
            (first + run) as u32 + 1
        }
    }
}

/// First time from which the total count must be parked clean: one quiet
/// step after the last spike (0 for a silent input).
pub fn tsc_convergence_time(input: &InputSequence) -> u32 {
    match input.bits().iter().rposition(|&b| b) {
        None => 0,
        Some(last) => last as u32 + 2,
    }
}

/// Builds the network for `kind` at horizon `t` and sweeps every input of
/// length `t`, checking the decoded output against the oracle at every step
/// from its convergence time through `t + 1 + settle`.
pub fn exhaustive_verify(
    kind: TaskKind,
    t: u32,
    settle: u32,
    config: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if t > config.max_exhaustive_t {
        return Err(VerifyError::BoundExceeded { requested: t, max: config.max_exhaustive_t });
    }
    if settle < 1 {
        return Err(VerifyError::SettleTooSmall { got: settle });
    }
    match kind {
        TaskKind::Fcsc => {
            let (net, layout) = build_fcsc(t)?;
            sweep_fcsc(&net, &layout, t, settle)
        }
        TaskKind::Tsc => {
            let (net, layout) = build_tsc(t)?;
            sweep_tsc(&net, &layout, t, settle)
        }
    }
}

/// The FCSC half of [`exhaustive_verify`], on a caller-supplied network (so
/// deliberately broken variants can be swept too).
pub fn sweep_fcsc(
    net: &crate::engine::Network,
    layout: &FcscLayout,
    t: u32,
    settle: u32,
) -> Result<VerificationReport, VerifyError> {
    let horizon = t + 1 + settle;
    let name = format!("fcsc T={t} settle={settle} exhaustive");
    let mut cases = 0u64;
    let mut checks = 0u64;

    for input in lex_inputs(t) {
        cases += 1;
        let trace = run(net, &input, horizon)?;
        let expected = oracle_first_run_length(&input);
        for time in fcsc_convergence_time(&input)..=horizon {
            let state = trace.at(time).expect("horizon covers the window");
            let got = decode_fcsc(state, layout);
            checks += 1;
            if got != expected {
                let neuron = (0..=layout.n as usize)
                    .find(|&i| state.get(layout.y[i]) != (expected >> i & 1 == 1))
                    .map(|i| format!("y{i}"))
                    .unwrap_or_else(|| "y".into());
                return Ok(VerificationReport {
                    name,
                    cases,
                    checks,
                    counterexample: Some(Counterexample {
                        input,
                        time,
                        neuron,
                        expected: CheckValue::Count(expected),
                        observed: CheckValue::Count(got),
                        context: None,
                    }),
                });
            }
        }
    }
    Ok(VerificationReport { name, cases, checks, counterexample: None })
}

/// The TSC half of [`exhaustive_verify`], on a caller-supplied network.
pub fn sweep_tsc(
    net: &crate::engine::Network,
    layout: &TscLayout,
    t: u32,
    settle: u32,
) -> Result<VerificationReport, VerifyError> {
    let horizon = t + 1 + settle;
    let name = format!("tsc T={t} settle={settle} exhaustive");
    let mut cases = 0u64;
    let mut checks = 0u64;

    for input in lex_inputs(t) {
        cases += 1;
        let trace = run(net, &input, horizon)?;
        let expected = oracle_total_spikes(&input);
        for time in tsc_convergence_time(&input)..=horizon {
            let state = trace.at(time).expect("horizon covers the window");
            checks += 1;
            let (neuron, observed) = match decode_tsc(state, layout) {
                Ok(got) if got == expected => continue,
                Ok(got) => {
                    let neuron = layout
                        .z
                        .iter()
                        .enumerate()
                        .find(|(k, &zi)| state.get(zi) != (expected >> (k + 2) & 1 == 1))
                        .map(|(k, _)| format!("z{}", k + 2))
                        .unwrap_or_else(|| format!("f{}", expected % 4));
                    (neuron, CheckValue::Count(got))
                }
                Err(_) => ("f".to_string(), CheckValue::NotClean),
            };
            return Ok(VerificationReport {
                name,
                cases,
                checks,
                counterexample: Some(Counterexample {
                    input,
                    time,
                    neuron,
                    expected: CheckValue::Count(expected),
                    observed,
                    context: None,
                }),
            });
        }
    }
    Ok(VerificationReport { name, cases, checks, counterexample: None })
}

/// Whether `state` is a clean parked representation of `value`:
/// the ring is one-hot at `value mod 4` (all-dark allowed only for 0), each
/// digit `z_i` is bit `i` of `value`, and every carry whose digit block reads
/// all-ones (`value ≡ 2^(i+1)−1`) is dark.
pub fn check_clean_state(state: &FiringState, value: u64, layout: &TscLayout) -> bool {
    if value >> (layout.n + 1) != 0 {
        return false; // too big for the digits this network has
    }

    let lit: Vec<usize> = (0..4).filter(|&r| state.get(layout.f[r])).collect();
    let ring_ok = match lit.as_slice() {
        [] => value == 0,
        [r] => *r as u64 == value % 4,
        _ => false,
    };
    if !ring_ok {
        return false;
    }

    for (k, &zi) in layout.z.iter().enumerate() {
        if state.get(zi) != (value >> (k + 2) & 1 == 1) {
            return false;
        }
    }

    for (k, &ini) in layout.carry.iter().enumerate() {
        let modulus = 1u64 << (k + 2 + 1);
        if value % modulus == modulus - 1 && state.get(ini) {
            return false;
        }
    }
    true
}

/// Checks that the total counter is parked clean at *every* pause, not just
/// after the input ends: for every input of length `t` and every quiet step
/// `τ` (input silent at `τ`, horizon `t + 1 + settle`), the state at `τ + 1`
/// must be a clean representation of the number of spikes seen so far.
pub fn check_parked_clean(
    t: u32,
    settle: u32,
    config: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if t > config.max_exhaustive_t {
        return Err(VerifyError::BoundExceeded { requested: t, max: config.max_exhaustive_t });
    }
    if settle < 1 {
        return Err(VerifyError::SettleTooSmall { got: settle });
    }
    let (net, layout) = build_tsc(t)?;
    let horizon = t + 1 + settle;
    let name = format!("tsc parked states T={t} settle={settle}");
    let mut cases = 0u64;
    let mut checks = 0u64;

    for input in lex_inputs(t) {
        cases += 1;
        let trace = run(&net, &input, horizon)?;
        let mut seen = 0u64;
        for tau in 0..horizon {
            if input.bit(tau) {
                seen += 1;
                continue;
            }
            let state = trace.at(tau + 1).expect("horizon covers the window");
            checks += 1;
            if !check_clean_state(state, seen, &layout) {
                let observed = match decode_tsc(state, &layout) {
                    Ok(got) => CheckValue::Count(got),
                    Err(_) => CheckValue::NotClean,
                };
                return Ok(VerificationReport {
                    name,
                    cases,
                    checks,
                    counterexample: Some(Counterexample {
                        input,
                        time: tau + 1,
                        neuron: "state".into(),
                        expected: CheckValue::Count(seen),
                        observed,
                        context: Some(format!("one step after the quiet step at t={tau}")),
                    }),
                });
            }
        }
    }
    Ok(VerificationReport { name, cases, checks, counterexample: None })
}

/// Validates the two reachability envelopes the firing-rule checks lean on,
/// over every state of every length-`t` input:
/// FCSC — a lit answer bit implies a lit latch; TSC — a digit and its carry
/// lit together implies the ring holds the wrap pair f0+f3.
pub fn check_reachable_envelopes(
    kind: TaskKind,
    t: u32,
    config: &VerifyConfig,
) -> Result<VerificationReport, VerifyError> {
    if t > config.max_exhaustive_t {
        return Err(VerifyError::BoundExceeded { requested: t, max: config.max_exhaustive_t });
    }
    let horizon = t + 3;
    let name = format!("{kind} reachability envelope T={t}");
    let mut cases = 0u64;
    let mut checks = 0u64;

    match kind {
        TaskKind::Fcsc => {
            let (net, layout) = build_fcsc(t)?;
            for input in lex_inputs(t) {
                cases += 1;
                let trace = run(&net, &input, horizon)?;
                for state in trace.states() {
                    checks += 1;
                    let any_y = layout.y.iter().any(|&y| state.get(y));
                    if any_y && !state.get(layout.s) {
                        return Ok(VerificationReport {
                            name,
                            cases,
                            checks,
                            counterexample: Some(Counterexample {
                                input,
                                time: state.time(),
                                neuron: "s".into(),
                                expected: CheckValue::Bit(true),
                                observed: CheckValue::Bit(false),
                                context: Some("an answer bit is lit before the latch".into()),
                            }),
                        });
                    }
                }
            }
        }
        TaskKind::Tsc => {
            let (net, layout) = build_tsc(t)?;
            for input in lex_inputs(t) {
                cases += 1;
                let trace = run(&net, &input, horizon)?;
                for state in trace.states() {
                    for (k, (&zi, &ini)) in layout.z.iter().zip(&layout.carry).enumerate() {
                        checks += 1;
                        let wrap = state.get(layout.f[0]) && state.get(layout.f[3]);
                        if state.get(zi) && state.get(ini) && !wrap {
                            return Ok(VerificationReport {
                                name,
                                cases,
                                checks,
                                counterexample: Some(Counterexample {
                                    input,
                                    time: state.time(),
                                    neuron: format!("in{}", k + 2),
                                    expected: CheckValue::Bit(false),
                                    observed: CheckValue::Bit(true),
                                    context: Some("digit and carry lit outside the ring wrap".into()),
                                }),
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(VerificationReport { name, cases, checks, counterexample: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::resolve_fcsc_layout;
    use crate::engine::FiringState;
    use crate::exact::rat;

    fn seq(text: &str) -> InputSequence {
        InputSequence::parse(text).unwrap()
    }

    #[test]
    fn convergence_times_follow_the_input_shape() {
        assert_eq!(fcsc_convergence_time(&seq("0111100")), 6);
        assert_eq!(fcsc_convergence_time(&seq("1")), 2);
        assert_eq!(fcsc_convergence_time(&seq("0000")), 0);
        assert_eq!(fcsc_convergence_time(&seq("1011")), 2, "only the first run matters");

        assert_eq!(tsc_convergence_time(&seq("101101")), 7);
        assert_eq!(tsc_convergence_time(&seq("1")), 2);
        assert_eq!(tsc_convergence_time(&seq("000")), 0);
    }

    #[test]
    fn lex_inputs_enumerates_in_order() {
        let inputs = lex_inputs(2);
        let rendered: Vec<String> = inputs.iter().map(|i| i.to_string()).collect();
        assert_eq!(rendered, vec!["00", "01", "10", "11"]);
        assert_eq!(lex_inputs(5).len(), 32);
    }

    #[test]
    fn small_exhaustive_sweeps_pass() {
        let config = VerifyConfig::default();
        let fcsc = exhaustive_verify(TaskKind::Fcsc, 4, 2, &config).unwrap();
        assert!(fcsc.passed(), "{fcsc}");
        assert_eq!(fcsc.cases, 16);
        let tsc = exhaustive_verify(TaskKind::Tsc, 4, 2, &config).unwrap();
        assert!(tsc.passed(), "{tsc}");
    }

    #[test]
    fn the_bound_guard_refuses_oversized_sweeps() {
        let config = VerifyConfig::default();
        let err = exhaustive_verify(TaskKind::Fcsc, 30, 2, &config).unwrap_err();
        assert!(matches!(err, VerifyError::BoundExceeded { requested: 30, max: 12 }));
        let err = exhaustive_verify(TaskKind::Tsc, 4, 0, &config).unwrap_err();
        assert!(matches!(err, VerifyError::SettleTooSmall { got: 0 }));

        // An explicitly raised bound is honored.
        let raised = VerifyConfig { max_exhaustive_t: 13 };
        assert!(exhaustive_verify(TaskKind::Fcsc, 13, 1, &raised).unwrap().passed());
    }

    #[test]
    fn a_shaved_capture_bias_fails_the_sweep_with_a_replayable_counterexample() {
        let (mut net, layout) = build_fcsc(3).unwrap();
        for i in 0..=layout.n {
            net.set_bias(&format!("y{i}"), rat(1, 2)).unwrap();
        }
        let report = sweep_fcsc(&net, &layout, 3, 2).unwrap();
        let cex = report.counterexample.expect("bias 0.5 breaks re-arrival inputs");

        // Replaying the input reproduces the mismatch at the reported site.
        let trace = run(&net, &cex.input, 3 + 1 + 2).unwrap();
        let layout2 = resolve_fcsc_layout(&net, layout.n).unwrap();
        let got = decode_fcsc(trace.at(cex.time).unwrap(), &layout2);
        assert_eq!(CheckValue::Count(got), cex.observed);
        assert_ne!(cex.observed, cex.expected);
    }

    #[test]
    fn clean_state_checker_matches_the_definition() {
        let (net, layout) = build_tsc(12).unwrap(); // n = 4
        let mut state = FiringState::blank(&net, 0);

        // f1 + z2 lit is exactly 5.
        state.set(layout.f[1], true);
        state.set(layout.z[0], true);
        assert!(check_clean_state(&state, 5, &layout));
        assert!(!check_clean_state(&state, 1, &layout), "z2 must be dark for 1");
        assert!(!check_clean_state(&state, 9, &layout), "9 needs z3, not z2");

        // Two ring neurons lit is never clean.
        state.set(layout.f[2], true);
        assert!(!check_clean_state(&state, 5, &layout));
        state.set(layout.f[2], false);

        // A carry lit while its digit block reads all-ones breaks cleanness.
        let mut seven = FiringState::blank(&net, 0);
        seven.set(layout.f[3], true);
        seven.set(layout.z[0], true); // 7 = f3 + z2
        assert!(check_clean_state(&seven, 7, &layout));
        seven.set(layout.carry[0], true); // in2, and 7 mod 8 = 7
        assert!(!check_clean_state(&seven, 7, &layout));
        // ...but a carry the definition leaves free is tolerated.
        let mut loose = FiringState::blank(&net, 0);
        loose.set(layout.f[3], true);
        loose.set(layout.z[0], true);
        loose.set(layout.carry[1], true); // in3; 7 mod 16 = 7, unconstrained
        assert!(check_clean_state(&loose, 7, &layout));

        // The all-dark state reads as 0 and nothing else.
        let dark = FiringState::blank(&net, 0);
        assert!(check_clean_state(&dark, 0, &layout));
        assert!(!check_clean_state(&dark, 4, &layout));

        // Values beyond the digits can never be clean.
        assert!(!check_clean_state(&dark, 40, &layout));
    }

    #[test]
    fn the_total_counter_is_parked_clean_at_every_pause() {
        let report = check_parked_clean(6, 2, &VerifyConfig::default()).unwrap();
        assert!(report.passed(), "{report}");
        assert_eq!(report.cases, 64);
    }

    #[test]
    fn envelopes_hold_on_reachable_states_at_small_horizons() {
        let config = VerifyConfig::default();
        let fcsc = check_reachable_envelopes(TaskKind::Fcsc, 6, &config).unwrap();
        assert!(fcsc.passed(), "{fcsc}");
        let tsc = check_reachable_envelopes(TaskKind::Tsc, 6, &config).unwrap();
        assert!(tsc.passed(), "{tsc}");
    }
}
