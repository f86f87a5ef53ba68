//! The synchronous threshold network model and its simulator.
//!
//! A network is a finite weighted digraph of threshold neurons. Time is
//! discrete. At every step each non-input neuron `z` recomputes
//!
//! ```text
//! z(t) = 1  iff  Σ w(y→z) · y(t−1)  >  bias(z)
//! ```
//!
//! summed over its predecessors, with a *strict* comparison: a potential
//! exactly equal to the bias does not fire. Neurons are memoryless — any
//! persistence is wired explicitly through self-loops. The single input
//! neuron is driven externally and has no incoming synapses; at time 0 every
//! non-input neuron is silent.
//!
//! All arithmetic is exact ([`Rational`]); simulation is deterministic and a
//! [`Network`] is immutable during a run, so traces are reproducible
//! bit-for-bit and networks can be shared freely across threads.

use std::fmt;

use thiserror::Error;

use crate::exact::{int, Rational};

/// Dense index of a neuron within its network (`0..neuron_count`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NeuronId(pub u32);

impl NeuronId {
    /// The id as a `Vec` index.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for NeuronId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// What a neuron is for. Exactly one neuron per network is the input; output
/// neurons carry the decoded answer; hidden neurons are internal machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Input,
    Output,
    Hidden,
}

impl Role {
    /// Stable lowercase name used by the document format.
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Input => "input",
            Role::Output => "output",
            Role::Hidden => "hidden",
        }
    }

    /// Inverse of [`Role::as_str`].
    pub fn from_name(text: &str) -> Option<Role> {
        match text {
            "input" => Some(Role::Input),
            "output" => Some(Role::Output),
            "hidden" => Some(Role::Hidden),
            _ => None,
        }
    }
}

/// One threshold neuron.
#[derive(Debug, Clone, PartialEq)]
pub struct Neuron {
    pub id: NeuronId,
    pub label: String,
    pub role: Role,
    /// Firing threshold; unused (and conventionally 0) for the input neuron.
    pub bias: Rational,
}

/// One weighted directed edge. At most one synapse may exist per ordered pair.
#[derive(Debug, Clone, PartialEq)]
pub struct Synapse {
    pub src: NeuronId,
    pub dst: NeuronId,
    pub weight: Rational,
}

/// An immutable-once-built threshold network.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Network {
    neurons: Vec<Neuron>,
    synapses: Vec<Synapse>,
}

/// Structural problems found by [`Network::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationIssue {
    /// A synapse endpoint does not name an existing neuron.
    DanglingSynapse { src: NeuronId, dst: NeuronId },
    /// More than one synapse for the same ordered pair.
    DuplicateSynapse { src: NeuronId, dst: NeuronId },
    /// No neuron has the input role.
    NoInputNeuron,
    /// More than one neuron has the input role.
    MultipleInputNeurons { labels: Vec<String> },
    /// A synapse ends at the input neuron, which is externally driven.
    SynapseIntoInput { src: NeuronId, dst: NeuronId },
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::DanglingSynapse { src, dst } => {
                write!(f, "synapse {src}->{dst} references a missing neuron")
            }
            ValidationIssue::DuplicateSynapse { src, dst } => {
                write!(f, "duplicate synapse {src}->{dst}")
            }
            ValidationIssue::NoInputNeuron => write!(f, "network has no input neuron"),
            ValidationIssue::MultipleInputNeurons { labels } => {
                write!(f, "network has multiple input neurons: {}", labels.join(", "))
            }
            ValidationIssue::SynapseIntoInput { src, dst } => {
                write!(f, "synapse {src}->{dst} ends at the externally driven input")
            }
        }
    }
}

/// Everything [`Network::validate`] found, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub issues: Vec<ValidationIssue>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.issues.is_empty() {
            write!(f, "ok")
        } else {
            let lines: Vec<String> = self.issues.iter().map(|i| i.to_string()).collect();
            write!(f, "{}", lines.join("; "))
        }
    }
}

/// Errors raised by the simulator and by structural lookups.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("firing state covers {state} neurons but the network has {network}")]
    StateSizeMismatch { state: usize, network: usize },
    #[error("network has no input neuron")]
    NoInputNeuron,
    #[error("network has {count} input neurons; exactly one is required")]
    MultipleInputNeurons { count: usize },
    #[error("horizon {horizon} is shorter than the input ({input_len} bits)")]
    HorizonTooShort { horizon: u32, input_len: usize },
    #[error("no neuron is labeled {0:?}")]
    UnknownLabel(String),
    #[error("no synapse {src:?}->{dst:?} to modify")]
    UnknownSynapse { src: String, dst: String },
    #[error("invalid input bit {character:?} at position {position} (expected '0' or '1')")]
    InvalidBit { position: usize, character: char },
}

impl Network {
    pub fn new() -> Network {
        Network::default()
    }

    /// Appends a neuron, assigning the next dense id.
    pub fn add_neuron(&mut self, label: impl Into<String>, role: Role, bias: Rational) -> NeuronId {
        let id = NeuronId(self.neurons.len() as u32);
        self.neurons.push(Neuron { id, label: label.into(), role, bias });
        id
    }

    /// Appends a synapse. Duplicates are caught by [`Network::validate`].
    pub fn connect(&mut self, src: NeuronId, dst: NeuronId, weight: Rational) {
        self.synapses.push(Synapse { src, dst, weight });
    }

    pub fn neurons(&self) -> &[Neuron] {
        &self.neurons
    }

    pub fn synapses(&self) -> &[Synapse] {
        &self.synapses
    }

    pub fn neuron_count(&self) -> usize {
        self.neurons.len()
    }

    /// Neurons excluding the externally driven input — the count the size
    /// formulas of the shipped constructions are stated over.
    pub fn non_input_count(&self) -> usize {
        self.neurons.iter().filter(|n| n.role != Role::Input).count()
    }

    /// The unique input neuron, or an error if the invariant is broken.
    pub fn input_id(&self) -> Result<NeuronId, EngineError> {
        let mut inputs = self.neurons.iter().filter(|n| n.role == Role::Input);
        let first = inputs.next().ok_or(EngineError::NoInputNeuron)?;
        if inputs.next().is_some() {
            let count = self.neurons.iter().filter(|n| n.role == Role::Input).count();
            return Err(EngineError::MultipleInputNeurons { count });
        }
        Ok(first.id)
    }

    pub fn neuron(&self, id: NeuronId) -> &Neuron {
        &self.neurons[id.index()]
    }

    pub fn label(&self, id: NeuronId) -> &str {
        &self.neurons[id.index()].label
    }

    pub fn neuron_by_label(&self, label: &str) -> Option<&Neuron> {
        self.neurons.iter().find(|n| n.label == label)
    }

    pub fn id_by_label(&self, label: &str) -> Result<NeuronId, EngineError> {
        self.neuron_by_label(label)
            .map(|n| n.id)
            .ok_or_else(|| EngineError::UnknownLabel(label.to_string()))
    }

    /// Ids of all output-role neurons, in id order.
    pub fn output_ids(&self) -> Vec<NeuronId> {
        self.neurons.iter().filter(|n| n.role == Role::Output).map(|n| n.id).collect()
    }

    /// The weight on `src -> dst`, if that synapse exists.
    pub fn weight(&self, src: NeuronId, dst: NeuronId) -> Option<&Rational> {
        self.synapses.iter().find(|s| s.src == src && s.dst == dst).map(|s| &s.weight)
    }

    /// `(src, weight)` for every synapse into `dst`.
    pub fn incoming(&self, dst: NeuronId) -> Vec<(NeuronId, Rational)> {
        self.synapses.iter().filter(|s| s.dst == dst).map(|s| (s.src, s.weight)).collect()
    }

    /// Replaces the bias of the neuron labeled `label` (used to probe how
    /// sensitive a construction is to its exact constants).
    pub fn set_bias(&mut self, label: &str, bias: Rational) -> Result<(), EngineError> {
        let id = self.id_by_label(label)?;
        self.neurons[id.index()].bias = bias;
        Ok(())
    }

    /// Replaces the weight of an existing synapse, addressed by labels.
    pub fn set_weight(&mut self, src: &str, dst: &str, weight: Rational) -> Result<(), EngineError> {
        let src_id = self.id_by_label(src)?;
        let dst_id = self.id_by_label(dst)?;
        let syn = self
            .synapses
            .iter_mut()
            .find(|s| s.src == src_id && s.dst == dst_id)
            .ok_or_else(|| EngineError::UnknownSynapse { src: src.to_string(), dst: dst.to_string() })?;
        syn.weight = weight;
        Ok(())
    }

    /// Structural audit: dangling or duplicate synapses, input-role problems,
    /// synapses into the input.
    pub fn validate(&self) -> ValidationReport {
        let mut issues = Vec::new();
        let count = self.neurons.len() as u32;

        let input_labels: Vec<String> = self
            .neurons
            .iter()
            .filter(|n| n.role == Role::Input)
            .map(|n| n.label.clone())
            .collect();
        match input_labels.len() {
            0 => issues.push(ValidationIssue::NoInputNeuron),
            1 => {}
            _ => issues.push(ValidationIssue::MultipleInputNeurons { labels: input_labels.clone() }),
        }
        let input_id = self.neurons.iter().find(|n| n.role == Role::Input).map(|n| n.id);

        let mut seen = std::collections::HashSet::new();
        for syn in &self.synapses {
            if syn.src.0 >= count || syn.dst.0 >= count {
                issues.push(ValidationIssue::DanglingSynapse { src: syn.src, dst: syn.dst });
                continue;
            }
            if !seen.insert((syn.src, syn.dst)) {
                issues.push(ValidationIssue::DuplicateSynapse { src: syn.src, dst: syn.dst });
            }
            if Some(syn.dst) == input_id {
                issues.push(ValidationIssue::SynapseIntoInput { src: syn.src, dst: syn.dst });
            }
        }

        ValidationReport { issues }
    }
}

/// Which neurons fired at one time step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiringState {
    fired: Vec<bool>,
    time: u32,
}

impl FiringState {
    /// The canonical time-0 state: every non-input neuron silent, the input
    /// carrying its externally supplied bit.
    pub fn zero(net: &Network, input_bit: bool) -> Result<FiringState, EngineError> {
        let mut state = FiringState::blank(net, 0);
        let input = net.input_id()?;
        state.set(input, input_bit);
        Ok(state)
    }

    /// An all-silent state at an arbitrary time, for building start states by
    /// hand (e.g. resuming from a known stored value).
    pub fn blank(net: &Network, time: u32) -> FiringState {
        FiringState { fired: vec![false; net.neuron_count()], time }
    }

    pub fn get(&self, id: NeuronId) -> bool {
        self.fired[id.index()]
    }

    pub fn set(&mut self, id: NeuronId, fired: bool) {
        self.fired[id.index()] = fired;
    }

    pub fn time(&self) -> u32 {
        self.time
    }

    pub fn len(&self) -> usize {
        self.fired.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fired.is_empty()
    }

    /// Ids of the neurons that fired, ascending.
    pub fn fired_ids(&self) -> Vec<NeuronId> {
        self.fired
            .iter()
            .enumerate()
            .filter(|(_, &f)| f)
            .map(|(i, _)| NeuronId(i as u32))
            .collect()
    }
}

/// An external spike train. Bit `t` drives the input neuron at time `t`;
/// times past the end are silent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSequence {
    bits: Vec<bool>,
}

impl InputSequence {
    pub fn from_bits(bits: Vec<bool>) -> InputSequence {
        InputSequence { bits }
    }

    /// Parses a `0`/`1` string such as `"0111100"`.
    pub fn parse(text: &str) -> Result<InputSequence, EngineError> {
        let mut bits = Vec::with_capacity(text.len());
        for (position, character) in text.chars().enumerate() {
            match character {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return Err(EngineError::InvalidBit { position, character }),
            }
        }
        Ok(InputSequence { bits })
    }

    /// The bit at time `t` (0 past the end).
    pub fn bit(&self, t: u32) -> bool {
        self.bits.get(t as usize).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }
}

impl fmt::Display for InputSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// The firing states of one run, at consecutive times.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    states: Vec<FiringState>,
}

impl Trace {
    pub fn states(&self) -> &[FiringState] {
        &self.states
    }

    /// The state at absolute time `t`, if the trace covers it.
    pub fn at(&self, t: u32) -> Option<&FiringState> {
        let first = self.states.first()?.time();
        let offset = t.checked_sub(first)? as usize;
        self.states.get(offset)
    }

    pub fn last(&self) -> &FiringState {
        self.states.last().expect("a trace always holds at least its start state")
    }

    /// Whether neuron `id` fired at time `t` (false outside the trace).
    pub fn fired(&self, id: NeuronId, t: u32) -> bool {
        self.at(t).map(|s| s.get(id)).unwrap_or(false)
    }
}

/// One synchronous update: spends `prev` (the state at time t) and the input
/// bit for time t+1, and produces the state at time t+1.
pub fn step(net: &Network, prev: &FiringState, input_bit: bool) -> Result<FiringState, EngineError> {
    if prev.len() != net.neuron_count() {
        return Err(EngineError::StateSizeMismatch { state: prev.len(), network: net.neuron_count() });
    }
    let input = net.input_id()?;

    let mut potential = vec![int(0); net.neuron_count()];
    for syn in net.synapses() {
        if prev.get(syn.src) {
            potential[syn.dst.index()] += syn.weight;
        }
    }

    let mut next = FiringState::blank(net, prev.time() + 1);
    for neuron in net.neurons() {
        let fires = if neuron.id == input {
            input_bit
        } else {
            // Strict threshold: potential == bias stays silent.
            potential[neuron.id.index()] > neuron.bias
        };
        next.set(neuron.id, fires);
    }
    Ok(next)
}

/// Runs from the canonical zero state for `horizon` steps, driving the input
/// from `input` (silent past its end). The trace holds states for times
/// `0..=horizon`; `horizon` must cover the whole input.
pub fn run(net: &Network, input: &InputSequence, horizon: u32) -> Result<Trace, EngineError> {
    if (horizon as usize) < input.len() {
        return Err(EngineError::HorizonTooShort { horizon, input_len: input.len() });
    }
    let start = FiringState::zero(net, input.bit(0))?;
    run_from(net, start, input, horizon)
}

/// Runs `steps` updates starting from an arbitrary state. `input.bit(k)`
/// drives the input neuron at time `start.time() + k`; bit 0 overwrites the
/// input entry of the start state so the two cannot disagree.
pub fn run_from(
    net: &Network,
    mut start: FiringState,
    input: &InputSequence,
    steps: u32,
) -> Result<Trace, EngineError> {
    if start.len() != net.neuron_count() {
        return Err(EngineError::StateSizeMismatch { state: start.len(), network: net.neuron_count() });
    }
    let input_id = net.input_id()?;
    start.set(input_id, input.bit(0));

    let mut states = Vec::with_capacity(steps as usize + 1);
    states.push(start);
    for k in 1..=steps {
        let next = step(net, states.last().expect("non-empty"), input.bit(k))?;
        states.push(next);
    }
    Ok(Trace { states })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// Hand-built parity flip-flop: `z0` fires iff the time so far is odd
    /// while the input is held high. Independent of the construction module.
    fn parity_net() -> Network {
        let mut net = Network::new();
        let x = net.add_neuron("x", Role::Input, int(0));
        let z0 = net.add_neuron("z0", Role::Output, rat(1, 2));
        net.connect(x, z0, int(1));
        net.connect(z0, z0, int(-1));
        net
    }

    #[test]
    fn step_applies_the_threshold_rule() {
        let net = parity_net();
        let z0 = net.id_by_label("z0").unwrap();

        // x alone: potential 1 > 0.5, fires.
        let s0 = FiringState::zero(&net, true).unwrap();
        let s1 = step(&net, &s0, true).unwrap();
        assert!(s1.get(z0));
        assert_eq!(s1.time(), 1);

        // x and z0 together: potential 0 < 0.5, silent.
        let s2 = step(&net, &s1, false).unwrap();
        assert!(!s2.get(z0));
    }

    #[test]
    fn all_silent_maps_to_all_silent() {
        let net = parity_net();
        let s0 = FiringState::zero(&net, false).unwrap();
        let s1 = step(&net, &s0, false).unwrap();
        assert_eq!(s1.fired_ids(), vec![]);
    }

    #[test]
    fn threshold_is_strict_at_equality() {
        // Potential exactly equal to the bias must not fire.
        let mut net = Network::new();
        let x = net.add_neuron("x", Role::Input, int(0));
        let a = net.add_neuron("a", Role::Output, int(1));
        net.connect(x, a, int(1));

        let s0 = FiringState::zero(&net, true).unwrap();
        let s1 = step(&net, &s0, false).unwrap();
        assert!(!s1.get(a), "potential 1 against bias 1 must stay silent");
    }

    #[test]
    fn run_produces_the_parity_trace() {
        let net = parity_net();
        let z0 = net.id_by_label("z0").unwrap();
        let input = InputSequence::parse("1111").unwrap();
        let trace = run(&net, &input, 5).unwrap();

        let got: Vec<bool> = (0..=4).map(|t| trace.fired(z0, t)).collect();
        assert_eq!(got, vec![false, true, false, true, false]);
        // Input exhausted at t=4, so the flip-flop stays down afterwards.
        assert!(!trace.fired(z0, 5));
        assert_eq!(trace.states().len(), 6);
    }

    #[test]
    fn run_rejects_horizons_shorter_than_the_input() {
        let net = parity_net();
        let input = InputSequence::parse("1111").unwrap();
        assert_eq!(
            run(&net, &input, 3).unwrap_err(),
            EngineError::HorizonTooShort { horizon: 3, input_len: 4 }
        );
    }

    #[test]
    fn run_is_deterministic() {
        let net = parity_net();
        let input = InputSequence::parse("1011").unwrap();
        let a = run(&net, &input, 8).unwrap();
        let b = run(&net, &input, 8).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn run_from_resumes_at_a_crafted_state() {
        let net = parity_net();
        let z0 = net.id_by_label("z0").unwrap();
        let mut start = FiringState::blank(&net, 7);
        start.set(z0, true);

        let trace = run_from(&net, start, &InputSequence::parse("0").unwrap(), 2).unwrap();
        assert!(trace.fired(z0, 7));
        assert!(!trace.fired(z0, 8), "self-inhibition clears z0");
        assert_eq!(trace.last().time(), 9);
    }

    #[test]
    fn input_sequence_parses_and_rejects() {
        let input = InputSequence::parse("0110").unwrap();
        assert_eq!(input.to_string(), "0110");
        assert!(!input.bit(0));
        assert!(input.bit(1));
        assert!(!input.bit(99), "past the end is silent");
        assert_eq!(
            InputSequence::parse("01a1").unwrap_err(),
            EngineError::InvalidBit { position: 2, character: 'a' }
        );
    }

    #[test]
    fn validate_flags_structural_problems() {
        let mut net = Network::new();
        let x = net.add_neuron("x", Role::Input, int(0));
        let a = net.add_neuron("a", Role::Hidden, int(0));
        net.connect(a, NeuronId(9), int(1)); // dangling
        net.connect(x, a, int(1));
        net.connect(x, a, int(2)); // duplicate pair
        net.connect(a, x, int(1)); // into the input

        let report = net.validate();
        assert!(!report.is_valid());
        assert!(report.issues.contains(&ValidationIssue::DanglingSynapse { src: a, dst: NeuronId(9) }));
        assert!(report.issues.contains(&ValidationIssue::DuplicateSynapse { src: x, dst: a }));
        assert!(report.issues.contains(&ValidationIssue::SynapseIntoInput { src: a, dst: x }));
    }

    #[test]
    fn validate_requires_exactly_one_input() {
        let mut net = Network::new();
        net.add_neuron("a", Role::Hidden, int(0));
        assert!(net.validate().issues.contains(&ValidationIssue::NoInputNeuron));
        assert_eq!(net.input_id().unwrap_err(), EngineError::NoInputNeuron);

        let mut two = Network::new();
        two.add_neuron("x1", Role::Input, int(0));
        two.add_neuron("x2", Role::Input, int(0));
        assert!(matches!(two.input_id().unwrap_err(), EngineError::MultipleInputNeurons { count: 2 }));
        assert!(!two.validate().is_valid());
    }

    #[test]
    fn a_valid_network_reports_clean() {
        let report = parity_net().validate();
        assert!(report.is_valid());
        assert_eq!(report.to_string(), "ok");
    }

    #[test]
    fn set_weight_and_set_bias_address_by_label() {
        let mut net = parity_net();
        net.set_bias("z0", int(5)).unwrap();
        net.set_weight("x", "z0", int(3)).unwrap();
        let z0 = net.id_by_label("z0").unwrap();
        assert_eq!(net.neuron(z0).bias, int(5));
        let x = net.id_by_label("x").unwrap();
        assert_eq!(net.weight(x, z0), Some(&int(3)));

        assert!(matches!(net.set_bias("nope", int(0)), Err(EngineError::UnknownLabel(_))));
        assert!(matches!(
            net.set_weight("z0", "x", int(0)),
            Err(EngineError::UnknownSynapse { .. })
        ));
    }

    #[test]
    fn step_rejects_mismatched_states() {
        let net = parity_net();
        let other = Network::new();
        let foreign = FiringState::blank(&other, 0);
        assert_eq!(
            step(&net, &foreign, false).unwrap_err(),
            EngineError::StateSizeMismatch { state: 0, network: 2 }
        );
    }
}
