//! Per-neuron firing rules and their exhaustive enumeration.
//!
//! Each construction comes with a closed-form rule for when each neuron
//! fires as a Boolean function of its predecessors' previous states. These
//! rules are the inductive steps of every correctness argument, so they are
//! checked by brute force: enumerate every assignment of the predecessors,
//! run one engine step, and compare against the rule.
//!
//! Two rules — the capture latch `s` and the total-counter digits `z_i` —
//! are *not* true on the full Boolean cube: assignments that no run can ever
//! produce (an answer bit lit before the latch, or a digit's carry lit
//! outside a ring wrap) push their potentials over threshold. Those two carry
//! a *reachability envelope* describing the states runs can actually reach;
//! [`RuleDomain::Reachable`] (the default) skips assignments outside it,
//! [`RuleDomain::FullCube`] checks everything and exhibits the boundary
//! counterexamples. The envelopes themselves are validated empirically over
//! every reachable state by [`crate::verify::check_reachable_envelopes`].

use std::fmt;

use thiserror::Error;

use crate::engine::{step, EngineError, FiringState, Network, NeuronId};

/// One firing rule, named by construction block and digit index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FiringRule {
    /// Binary-counter digit `z_i` (`1 ≤ i ≤ n`): fires iff the input is high,
    /// its carry is dark, and either all lower digits are lit or it already
    /// was.
    CounterZ { i: u32 },
    /// Binary-counter carry `in_i`: fires iff digits `z_1..z_i` are all lit.
    CounterIn { i: u32 },
    /// Capture bit `y_i`: fires iff it already was, or the input and latch
    /// are dark while `z_i` is lit (the copy step).
    CaptureY { i: u32 },
    /// Capture latch `s`: fires iff it already was, or the input is dark
    /// while some digit or answer bit is lit.
    CaptureS,
    /// Mod-4 ring position `f_i`: fires iff its successor is dark and either
    /// it already was or the input advances its predecessor onto it
    /// (`f_1` additionally wakes from a fully dark ring).
    ModFourF { i: u32 },
    /// Total-counter digit `z_i` (`i ≥ 2`): fires iff its carry is dark and
    /// either it already was or the ring wraps (f3 lit, f0 dark, input high)
    /// with all lower digits lit.
    TscZ { i: u32 },
    /// Total-counter carry `in_i`: fires iff `z_i` is lit and the ring wraps
    /// with all lower digits lit.
    TscIn { i: u32 },
}

/// Which assignments [`check_firing_rule_in`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleDomain {
    /// Skip assignments outside the rule's reachability envelope (default).
    Reachable,
    /// Enumerate every assignment of the predecessors.
    FullCube,
}

/// One row of predecessor values, by label.
#[derive(Debug, Clone)]
pub struct Assignment {
    pairs: Vec<(String, bool)>,
}

impl Assignment {
    fn get(&self, label: &str) -> bool {
        self.pairs
            .iter()
            .find(|(l, _)| l == label)
            .map(|&(_, v)| v)
            .unwrap_or_else(|| panic!("rule consulted {label:?}, which is not a listed predecessor"))
    }

    pub fn pairs(&self) -> &[(String, bool)] {
        &self.pairs
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.pairs.iter().map(|(l, v)| format!("{l}={}", if *v { 1 } else { 0 })).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Problems setting up an enumeration.
#[derive(Debug, Error)]
pub enum RuleError {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error("synapse {src} -> {target} exists but {src} is not a listed predecessor of the {rule} rule")]
    UnlistedPredecessor { rule: String, target: String, src: String },
}

/// Result of enumerating one rule.
#[derive(Debug, Clone)]
pub struct RuleReport {
    pub rule: String,
    pub target: String,
    pub domain: RuleDomain,
    /// Assignments actually checked.
    pub cases: u64,
    /// Assignments outside the reachability envelope (0 on the full cube).
    pub skipped: u64,
    pub counterexample: Option<RuleCounterexample>,
}

impl RuleReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for RuleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(
                f,
                "[PASS] rule {} ({} assignments checked, {} outside the envelope skipped)",
                self.rule, self.cases, self.skipped
            ),
            Some(cex) => write!(f, "[FAIL] rule {}: {cex}", self.rule),
        }
    }
}

/// A predecessor assignment on which simulation and rule disagree.
#[derive(Debug, Clone)]
pub struct RuleCounterexample {
    pub assignment: Assignment,
    /// What the rule says the target should do.
    pub expected: bool,
    /// What one engine step actually did.
    pub observed: bool,
}

impl fmt::Display for RuleCounterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "at [{}]: rule says {}, network {}",
            self.assignment,
            if self.expected { "fire" } else { "stay silent" },
            if self.observed { "fired" } else { "stayed silent" },
        )
    }
}

/// Collects `prefix0, prefix1, ...` labels while they exist (`start` up).
fn indexed_labels(net: &Network, prefix: &str, start: u32) -> Vec<String> {
    let mut labels = Vec::new();
    let mut i = start;
    while net.neuron_by_label(&format!("{prefix}{i}")).is_some() {
        labels.push(format!("{prefix}{i}"));
        i += 1;
    }
    labels
}

impl FiringRule {
    /// Stable name, e.g. `counter-z3` or `capture-s`.
    pub fn id(&self) -> String {
        match self {
            FiringRule::CounterZ { i } => format!("counter-z{i}"),
            FiringRule::CounterIn { i } => format!("counter-in{i}"),
            FiringRule::CaptureY { i } => format!("capture-y{i}"),
            FiringRule::CaptureS => "capture-s".into(),
            FiringRule::ModFourF { i } => format!("mod4-f{i}"),
            FiringRule::TscZ { i } => format!("tsc-z{i}"),
            FiringRule::TscIn { i } => format!("tsc-in{i}"),
        }
    }

    /// Label of the neuron the rule describes.
    pub fn target(&self) -> String {
        match self {
            FiringRule::CounterZ { i } | FiringRule::TscZ { i } => format!("z{i}"),
            FiringRule::CounterIn { i } | FiringRule::TscIn { i } => format!("in{i}"),
            FiringRule::CaptureY { i } => format!("y{i}"),
            FiringRule::CaptureS => "s".into(),
            FiringRule::ModFourF { i } => format!("f{i}"),
        }
    }

    /// Labels whose previous values the rule may consult. Must cover every
    /// in-neighbor of the target in the network being checked.
    pub fn predecessor_labels(&self, net: &Network) -> Vec<String> {
        let mut labels = vec!["x".to_string()];
        match self {
            FiringRule::CounterZ { i } => {
                labels.extend((0..=*i).map(|j| format!("z{j}")));
                labels.push(format!("in{i}"));
            }
            FiringRule::CounterIn { i } => {
                labels = (1..=*i).map(|j| format!("z{j}")).collect();
            }
            FiringRule::CaptureY { i } => {
                labels.extend([format!("z{i}"), format!("y{i}"), "s".into()]);
            }
            FiringRule::CaptureS => {
                labels.extend(indexed_labels(net, "z", 0));
                labels.extend(indexed_labels(net, "y", 0));
                labels.push("s".into());
            }
            FiringRule::ModFourF { .. } => {
                labels.extend((0..4).map(|r| format!("f{r}")));
            }
            FiringRule::TscZ { i } => {
                labels.extend(["f0".into(), "f3".into()]);
                labels.extend((2..=*i).map(|j| format!("z{j}")));
                labels.push(format!("in{i}"));
            }
            FiringRule::TscIn { i } => {
                labels.extend(["f0".into(), "f3".into()]);
                labels.extend((2..=*i).map(|j| format!("z{j}")));
            }
        }
        labels
    }

    /// The rule itself: should the target fire given these previous values?
    pub fn expected(&self, a: &Assignment) -> bool {
        match self {
            FiringRule::CounterZ { i } => {
                let all_below = (0..*i).all(|j| a.get(&format!("z{j}")));
                a.get("x") && !a.get(&format!("in{i}")) && (all_below || a.get(&format!("z{i}")))
            }
            FiringRule::CounterIn { i } => (1..=*i).all(|j| a.get(&format!("z{j}"))),
            FiringRule::CaptureY { i } => {
                a.get(&format!("y{i}"))
                    || (!a.get("x") && !a.get("s") && a.get(&format!("z{i}")))
            }
            FiringRule::CaptureS => {
                let any_digit = indexed(a, "z").any(|v| v) || indexed(a, "y").any(|v| v);
                a.get("s") || (any_digit && !a.get("x"))
            }
            FiringRule::ModFourF { i: 1 } => {
                !a.get("f2")
                    && ((a.get("x") && !a.get("f3")) || a.get("f1") || (a.get("x") && a.get("f0")))
            }
            FiringRule::ModFourF { i } => {
                let next = format!("f{}", (i + 1) % 4);
                let prev = format!("f{}", (i + 3) % 4);
                !a.get(&next) && ((a.get("x") && a.get(&prev)) || a.get(&format!("f{i}")))
            }
            FiringRule::TscZ { i } => {
                let wrap = a.get("f3") && !a.get("f0") && a.get("x") && (2..*i).all(|j| a.get(&format!("z{j}")));
                !a.get(&format!("in{i}")) && (wrap || a.get(&format!("z{i}")))
            }
            FiringRule::TscIn { i } => {
                a.get(&format!("z{i}"))
                    && a.get("f3")
                    && !a.get("f0")
                    && a.get("x")
                    && (2..*i).all(|j| a.get(&format!("z{j}")))
            }
        }
    }

    /// Reachability envelope: true if composed runs can reach this
    /// assignment. Identity for every rule except the two documented ones.
    pub fn envelope(&self, a: &Assignment) -> bool {
        match self {
            // An answer bit only ever lights strictly after the latch.
            FiringRule::CaptureS => !(indexed(a, "y").any(|v| v) && !a.get("s")),
            // A digit and its carry are lit together only during the one step
            // where the ring holds the wrap pair f3+f0.
            FiringRule::TscZ { i } => {
                !(a.get(&format!("z{i}"))
                    && a.get(&format!("in{i}"))
                    && !(a.get("f0") && a.get("f3")))
            }
            _ => true,
        }
    }

    /// Human-readable statement of the envelope, if the rule has one.
    pub fn envelope_note(&self) -> Option<&'static str> {
        match self {
            FiringRule::CaptureS => Some("a lit y implies a lit s"),
            FiringRule::TscZ { .. } => Some("z_i and in_i both lit implies f0 and f3 both lit"),
            _ => None,
        }
    }
}

/// Values of all `prefix0, prefix1, ...` predecessors in an assignment.
fn indexed<'a>(a: &'a Assignment, prefix: &'a str) -> impl Iterator<Item = bool> + 'a {
    a.pairs.iter().filter(move |(l, _)| {
        l.strip_prefix(prefix).map(|rest| rest.bytes().all(|b| b.is_ascii_digit()) && !rest.is_empty())
            == Some(true)
    }).map(|&(_, v)| v)
}

/// Enumerates the rule over its reachability envelope.
pub fn check_firing_rule(net: &Network, rule: &FiringRule) -> Result<RuleReport, RuleError> {
    check_firing_rule_in(net, rule, RuleDomain::Reachable)
}

/// Enumerates the rule over the chosen domain: every assignment of the
/// predecessors is loaded into a fresh state, one engine step runs, and the
/// target's behavior is compared with the rule.
pub fn check_firing_rule_in(
    net: &Network,
    rule: &FiringRule,
    domain: RuleDomain,
) -> Result<RuleReport, RuleError> {
    let labels = rule.predecessor_labels(net);
    let ids: Vec<NeuronId> =
        labels.iter().map(|l| net.id_by_label(l)).collect::<Result<_, _>>()?;
    let target = net.id_by_label(&rule.target())?;

    // The enumeration is only meaningful if it controls *every* synapse into
    // the target; anything unlisted would contribute silently.
    for (src, _) in net.incoming(target) {
        if !ids.contains(&src) {
            return Err(RuleError::UnlistedPredecessor {
                rule: rule.id(),
                target: rule.target(),
                src: net.label(src).to_string(),
            });
        }
    }

    let mut cases = 0u64;
    let mut skipped = 0u64;
    let mut counterexample = None;
    for mask in 0u64..(1 << ids.len()) {
        let pairs: Vec<(String, bool)> =
            labels.iter().cloned().zip((0..ids.len()).map(|b| mask >> b & 1 == 1)).collect();
        let assignment = Assignment { pairs };
        if domain == RuleDomain::Reachable && !rule.envelope(&assignment) {
            skipped += 1;
            continue;
        }

        let mut prev = FiringState::blank(net, 0);
        for (&id, &(_, value)) in ids.iter().zip(assignment.pairs.iter()) {
            prev.set(id, value);
        }
        // The input bit fed to `step` drives the *next* value of x, which the
        // rule never consults; the assignment's x drives the previous state.
        let next = step(net, &prev, false)?;

        let observed = next.get(target);
        let expected = rule.expected(&assignment);
        cases += 1;
        if observed != expected && counterexample.is_none() {
            counterexample = Some(RuleCounterexample { assignment, expected, observed });
        }
    }

    Ok(RuleReport { rule: rule.id(), target: rule.target(), domain, cases, skipped, counterexample })
}

/// All binary-counter rules for `n` digits.
pub fn counter_rules(n: u32) -> Vec<FiringRule> {
    let mut rules = Vec::new();
    for i in 1..=n {
        rules.push(FiringRule::CounterZ { i });
        rules.push(FiringRule::CounterIn { i });
    }
    rules
}

/// All capture-stage rules for `n` digits.
pub fn capture_rules(n: u32) -> Vec<FiringRule> {
    let mut rules: Vec<FiringRule> = (0..=n).map(|i| FiringRule::CaptureY { i }).collect();
    rules.push(FiringRule::CaptureS);
    rules
}

/// The four mod-4 ring rules.
pub fn mod4_rules() -> Vec<FiringRule> {
    (0..4).map(|i| FiringRule::ModFourF { i }).collect()
}

/// All total-counter digit rules for `n ≥ 2` digits.
pub fn tsc_rules(n: u32) -> Vec<FiringRule> {
    let mut rules = Vec::new();
    for i in 2..=n {
        rules.push(FiringRule::TscZ { i });
        rules.push(FiringRule::TscIn { i });
    }
    rules
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_fcsc, build_fcsc_counter, build_mod4, build_tsc};
    use crate::exact::{int, rat};

    #[test]
    fn counter_rules_hold_on_the_full_cube() {
        let net = build_fcsc_counter(4).unwrap();
        for rule in counter_rules(4) {
            let report = check_firing_rule_in(&net, &rule, RuleDomain::FullCube).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.skipped, 0);
        }
    }

    #[test]
    fn capture_y_rules_hold_on_the_full_cube() {
        let (net, _) = build_fcsc(8).unwrap();
        for i in 0..=4 {
            let report =
                check_firing_rule_in(&net, &FiringRule::CaptureY { i }, RuleDomain::FullCube).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.cases, 16);
        }
    }

    #[test]
    fn capture_latch_rule_holds_inside_its_envelope() {
        let (net, _) = build_fcsc(8).unwrap(); // n = 4: 12 predecessors
        let report = check_firing_rule(&net, &FiringRule::CaptureS).unwrap();
        assert!(report.passed(), "{report}");
        assert!(report.skipped > 0, "the envelope must exclude something");
        assert_eq!(report.cases + report.skipped, 1 << 12);
    }

    #[test]
    fn capture_latch_rule_breaks_on_the_full_cube() {
        // With the latch dark, enough simultaneously lit digit/answer bits
        // push s over threshold even while the input is high — a pattern no
        // run reaches (answer bits light only after the latch).
        let (net, _) = build_fcsc(4).unwrap(); // n = 2
        let report = check_firing_rule_in(&net, &FiringRule::CaptureS, RuleDomain::FullCube).unwrap();
        let cex = report.counterexample.expect("the full cube contains boundary assignments");
        assert!(!cex.expected && cex.observed);
        assert!(!cex.assignment.get("s"));
        assert!(cex.assignment.get("x"));
    }

    #[test]
    fn mod4_rules_hold_on_the_full_cube() {
        let net = build_mod4();
        for rule in mod4_rules() {
            let report = check_firing_rule_in(&net, &rule, RuleDomain::FullCube).unwrap();
            assert!(report.passed(), "{report}");
            assert_eq!(report.cases, 32);
        }
    }

    #[test]
    fn tsc_rules_hold_inside_their_envelopes() {
        let (net, _) = build_tsc(8).unwrap(); // n = 4
        for rule in tsc_rules(4) {
            let report = check_firing_rule(&net, &rule).unwrap();
            assert!(report.passed(), "{report}");
        }
    }

    #[test]
    fn tsc_digit_rule_breaks_on_the_full_cube() {
        // A digit with its carry lit outside the ring-wrap step self-sustains
        // past the carry's inhibition — but runs only co-light them during
        // the wrap (f0 and f3 both lit), where the rule holds.
        let (net, _) = build_tsc(8).unwrap();
        let report = check_firing_rule_in(&net, &FiringRule::TscZ { i: 3 }, RuleDomain::FullCube).unwrap();
        let cex = report.counterexample.expect("the full cube contains boundary assignments");
        assert!(cex.assignment.get("z3") && cex.assignment.get("in3"));
        assert!(!(cex.assignment.get("f0") && cex.assignment.get("f3")));
    }

    #[test]
    fn shaving_the_capture_bias_is_caught() {
        // Raising b_y from 0.1 to 0.5 makes the tie case (y and s lit, input
        // high, digit dark: potential exactly 0.5) stop firing.
        let (mut net, _) = build_fcsc(4).unwrap();
        for i in 0..=2 {
            net.set_bias(&format!("y{i}"), rat(1, 2)).unwrap();
        }
        let report = check_firing_rule(&net, &FiringRule::CaptureY { i: 1 }).unwrap();
        let cex = report.counterexample.expect("bias 0.5 must be detected");
        assert!(cex.expected && !cex.observed);
        assert!(cex.assignment.get("y1") && cex.assignment.get("x") && cex.assignment.get("s"));
        assert!(!cex.assignment.get("z1"));
    }

    #[test]
    fn coarsening_the_ring_wrap_weight_is_caught() {
        // f3 -> f1 must be a gentle -0.7: the -3 used elsewhere in the ring
        // kills the advance onto f1 during the 3 -> 0 wrap.
        let mut net = build_mod4();
        net.set_weight("f3", "f1", int(-3)).unwrap();
        let report = check_firing_rule(&net, &FiringRule::ModFourF { i: 1 }).unwrap();
        let cex = report.counterexample.expect("weight -3 must be detected");
        assert!(cex.expected && !cex.observed);

        // The documented witness assignment is among the violations.
        let rule = FiringRule::ModFourF { i: 1 };
        let witness = Assignment {
            pairs: vec![
                ("x".into(), true),
                ("f0".into(), true),
                ("f1".into(), false),
                ("f2".into(), false),
                ("f3".into(), true),
            ],
        };
        assert!(rule.expected(&witness), "the rule demands fire on the witness");
        let mut prev = FiringState::blank(&net, 0);
        for (label, value) in witness.pairs() {
            prev.set(net.id_by_label(label).unwrap(), *value);
        }
        let next = step(&net, &prev, false).unwrap();
        assert!(!next.get(net.id_by_label("f1").unwrap()), "the broken ring misses the wrap");
    }

    #[test]
    fn dropping_the_wake_correction_is_caught() {
        // Zeroing f0 -> f1 (= removing the +0.3 correction) breaks the same
        // wrap case the -0.7 exists for.
        let mut net = build_mod4();
        net.set_weight("f0", "f1", int(0)).unwrap();
        let report = check_firing_rule(&net, &FiringRule::ModFourF { i: 1 }).unwrap();
        assert!(!report.passed());
    }

    #[test]
    fn enumeration_rejects_uncovered_predecessors() {
        // On a sabotaged network with an extra synapse into the target, the
        // enumerator refuses rather than reporting garbage.
        let (mut net, layout) = build_fcsc(4).unwrap();
        let s = layout.s;
        let z2 = layout.z[2];
        net.connect(s, z2, int(1));
        let err = check_firing_rule(&net, &FiringRule::CounterZ { i: 2 }).unwrap_err();
        assert!(matches!(err, RuleError::UnlistedPredecessor { .. }));
    }

    #[test]
    fn rules_name_themselves_stably() {
        assert_eq!(FiringRule::CounterZ { i: 3 }.id(), "counter-z3");
        assert_eq!(FiringRule::CaptureS.id(), "capture-s");
        assert_eq!(FiringRule::CaptureS.target(), "s");
        assert_eq!(FiringRule::ModFourF { i: 2 }.id(), "mod4-f2");
        assert_eq!(FiringRule::TscIn { i: 4 }.target(), "in4");
        assert!(FiringRule::CaptureS.envelope_note().is_some());
        assert!(FiringRule::CounterZ { i: 1 }.envelope_note().is_none());
    }
}
