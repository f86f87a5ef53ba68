//! Builders for the spike-counting networks, their layouts, and decoders.
//!
//! Two counting problems are solved by fixed-weight networks driven by a
//! single input line `x`:
//!
//! * **FCSC** (first-consecutive-spikes counting): after the first maximal
//!   run of 1s in the input ends, the `y` block holds that run's length in
//!   binary, forever. Built from a binary counter (`z`/`in`) plus a capture
//!   stage (`y`, latch `s`).
//! * **TSC** (total-spikes counting): the network maintains the total number
//!   of 1s seen so far, readable whenever the input has been quiet for one
//!   step: a mod-4 ring (`f0..f3`) holds the low two bits and a binary
//!   counter (`z2..zn`) the high bits.
//!
//! Weight tables are exact rationals and deliberately tight — several proofs
//! of correctness hinge on potentials landing strictly above or exactly *on*
//! a bias — so do not "clean up" constants like `0.1` or `-0.7`: the
//! firing-rule checks in [`crate::verify`] fail loudly if they drift.
//!
//! `n = ⌈log2(T+1)⌉` binary digits suffice for counts up to `T`
//! ([`digits_for_horizon`]).

use thiserror::Error;

use crate::engine::{FiringState, Network, NeuronId, Role};
use crate::exact::{int, rat, Rational};

/// Errors from the builders and layout resolvers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("the horizon T must be at least 1 (got {0})")]
    HorizonTooSmall(u32),
    #[error("the counter needs at least 1 binary digit (got n = {0})")]
    DigitsTooSmall(u32),
    #[error("network is missing the expected neuron {label:?}")]
    MissingNeuron { label: String },
}

/// Raised when an output block is not in a decodable (one-hot) configuration.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a clean state: {hot} neurons of a one-hot block are lit")]
pub struct NotCleanError {
    pub hot: usize,
}

/// Smallest `n` with `2^n ≥ t+1`: binary digits needed to count up to `t`.
pub fn digits_for_horizon(t: u32) -> u32 {
    let mut n = 0;
    while (1u64 << n) < t as u64 + 1 {
        n += 1;
    }
    n
}

/// Neuron ids of a built FCSC network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FcscLayout {
    pub n: u32,
    pub x: NeuronId,
    /// Counter digits `z0..zn` (place value `2^i`).
    pub z: Vec<NeuronId>,
    /// Carry detectors `in1..inn` (`carry[i-1]` is `in_i`).
    pub carry: Vec<NeuronId>,
    /// Captured answer `y0..yn` (place value `2^i`).
    pub y: Vec<NeuronId>,
    /// The capture latch.
    pub s: NeuronId,
}

/// Neuron ids of a built TSC network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TscLayout {
    pub n: u32,
    pub x: NeuronId,
    /// Mod-4 ring; `f[r]` holds "count ≡ r (mod 4)".
    pub f: [NeuronId; 4],
    /// High counter digits `z2..zn` (`z[i-2]` has place value `2^i`).
    pub z: Vec<NeuronId>,
    /// Carry detectors `in2..inn` (`carry[i-2]` is `in_i`).
    pub carry: Vec<NeuronId>,
}

/// The 2-neuron parity base: `z0` fires at time `t+1` iff the number of
/// input spikes seen so far is odd (while the input is held high, `z0`
/// alternates 0,1,0,1,…).
pub fn build_mod2_base() -> Network {
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    let z0 = net.add_neuron("z0", Role::Output, rat(1, 2));
    net.connect(x, z0, int(1));
    net.connect(z0, z0, int(-1));
    net
}

/// Wires the binary counter over an existing input: digits `z0..zn` count
/// consecutive input spikes, carry detectors `in1..inn` clear each digit at
/// its rollover. Returns `(z, carry)` ids.
fn add_counter(net: &mut Network, x: NeuronId, n: u32, z_role: Role) -> (Vec<NeuronId>, Vec<NeuronId>) {
    let mut z = Vec::with_capacity(n as usize + 1);
    z.push(net.add_neuron("z0", z_role, rat(1, 2)));
    for i in 1..=n as i64 {
        z.push(net.add_neuron(format!("z{i}"), z_role, rat(4 * i + 1, 2))); // 2i + 0.5
    }
    let mut carry = Vec::with_capacity(n as usize);
    for i in 1..=n as i64 {
        carry.push(net.add_neuron(format!("in{i}"), Role::Hidden, rat(2 * i - 1, 2))); // i - 0.5
    }

    net.connect(x, z[0], int(1));
    net.connect(z[0], z[0], int(-1));
    for i in 1..=n as usize {
        let zi = z[i];
        let ini = carry[i - 1];
        net.connect(x, zi, int(i as i64 + 1));
        for &zj in &z[..i] {
            net.connect(zj, zi, int(1));
        }
        for &zk in &z[1..=i] {
            net.connect(zk, ini, int(1));
        }
        net.connect(ini, zi, int(-(i as i64 + 1)));
        net.connect(zi, zi, int(i as i64));
    }
    (z, carry)
}

/// A standalone binary counter with `n+1` digits: while the input is held
/// high, `z_i` at time `t` is bit `i` of `t` (counts up to `2^(n+1)-1`, then
/// rolls over). Digits are the outputs.
pub fn build_fcsc_counter(n: u32) -> Result<Network, BuildError> {
    if n < 1 {
        return Err(BuildError::DigitsTooSmall(n));
    }
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    add_counter(&mut net, x, n, Role::Output);
    Ok(net)
}

/// The full first-run counter for inputs of length up to `t`: once the first
/// maximal run of 1s ends, the `y` block latches its length in binary and
/// never changes again.
pub fn build_fcsc(t: u32) -> Result<(Network, FcscLayout), BuildError> {
    if t < 1 {
        return Err(BuildError::HorizonTooSmall(t));
    }
    let n = digits_for_horizon(t);
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    let (z, carry) = add_counter(&mut net, x, n, Role::Hidden);

    // Capture stage: y_i copies z_i on the first quiet step after a spike,
    // then self-sustains; the latch s turns on at the same moment and keeps
    // every y from ever copying again.
    let mut y = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        y.push(net.add_neuron(format!("y{i}"), Role::Output, rat(1, 10)));
    }
    let s = net.add_neuron("s", Role::Hidden, rat(1, 2));

    for i in 0..=n as usize {
        net.connect(x, y[i], int(-2));
        net.connect(y[i], y[i], int(4));
        net.connect(z[i], y[i], int(1));
        net.connect(z[i], s, int(1));
        net.connect(y[i], s, int(1));
        net.connect(s, y[i], rat(-3, 2));
    }
    net.connect(x, s, int(-(n as i64 + 1)));
    net.connect(s, s, int(n as i64 + 2));

    Ok((net, FcscLayout { n, x, z, carry, y, s }))
}

/// Wires the mod-4 ring over an existing input. While the input is high the
/// lit pair advances around the ring; on a quiet step it collapses to the
/// one neuron holding the count mod 4.
fn add_mod4(net: &mut Network, x: NeuronId, f_role: Role) -> [NeuronId; 4] {
    let f = [
        net.add_neuron("f0", f_role, rat(3, 2)),
        net.add_neuron("f1", f_role, rat(1, 2)),
        net.add_neuron("f2", f_role, rat(3, 2)),
        net.add_neuron("f3", f_role, rat(3, 2)),
    ];
    for &fi in &f {
        net.connect(x, fi, int(1));
        net.connect(fi, fi, int(2));
    }
    // Each ring position inhibits its predecessor (f_{j+1} -| f_j) and feeds
    // its successor; the wrap-around pair gets asymmetric corrections so f1
    // advances from f0 but not from a decaying f3.
    for j in 0..3 {
        net.connect(f[j + 1], f[j], int(-3));
    }
    net.connect(f[1], f[2], int(1));
    net.connect(f[2], f[3], int(1));
    net.connect(f[3], f[0], int(1));
    net.connect(f[0], f[3], int(-3));
    net.connect(f[3], f[1], rat(-7, 10));
    net.connect(f[0], f[1], rat(3, 10));
    f
}

/// The 5-neuron mod-4 spike counter on its own.
pub fn build_mod4() -> Network {
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    add_mod4(&mut net, x, Role::Output);
    net
}

/// The total-spikes counter for inputs of length up to `t`: one quiet step
/// after any prefix of the input, the mod-4 ring plus the `z` digits hold the
/// total number of spikes seen, and counting resumes correctly when spikes
/// return.
pub fn build_tsc(t: u32) -> Result<(Network, TscLayout), BuildError> {
    if t < 1 {
        return Err(BuildError::HorizonTooSmall(t));
    }
    let n = digits_for_horizon(t);
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    let f = add_mod4(&mut net, x, Role::Output);

    // High digits: z_i flips when the ring wraps 3 -> 0 (seen as f3 lit,
    // f0 dark, input high) and all lower digits are set; in_i detects the
    // same wrap one step before z_i must clear.
    let mut z = Vec::new();
    let mut carry = Vec::new();
    for i in 2..=n as i64 {
        z.push(net.add_neuron(format!("z{i}"), Role::Output, rat(2 * i + 3, 2))); // i + 1.5
    }
    for i in 2..=n as i64 {
        carry.push(net.add_neuron(format!("in{i}"), Role::Hidden, rat(2 * i + 5, 2))); // i + 2.5
    }

    for i in 2..=n as usize {
        let zi = z[i - 2];
        let ini = carry[i - 2];
        net.connect(f[3], zi, int(3));
        net.connect(f[0], zi, int(-1));
        net.connect(x, zi, int(1));
        net.connect(f[3], ini, int(3));
        net.connect(f[0], ini, int(-1));
        net.connect(x, ini, int(1));
        for j in 2..i {
            net.connect(z[j - 2], zi, int(1));
            net.connect(z[j - 2], ini, int(1));
        }
        net.connect(ini, zi, int(-(i as i64 + 3)));
        net.connect(zi, ini, int(1));
        net.connect(zi, zi, int(i as i64 + 3));
    }

    Ok((net, TscLayout { n, x, f, z, carry }))
}

/// The unary chain used to exhibit a genuine time-0 counter: `c_k` lights at
/// time `k` under an all-ones input and stays lit, so the lit prefix *is* the
/// count with no settling delay — at the cost of one output neuron per tick.
pub fn build_unary_time0_counter(t: u32) -> Result<Network, BuildError> {
    if t < 1 {
        return Err(BuildError::HorizonTooSmall(t));
    }
    let mut net = Network::new();
    let x = net.add_neuron("x", Role::Input, int(0));
    let mut chain = Vec::with_capacity(t as usize);
    chain.push(net.add_neuron("c1", Role::Output, rat(1, 2)));
    for k in 2..=t {
        chain.push(net.add_neuron(format!("c{k}"), Role::Output, rat(3, 2)));
    }
    for (index, &ck) in chain.iter().enumerate() {
        net.connect(x, ck, int(1));
        net.connect(ck, ck, int(2));
        if index > 0 {
            net.connect(chain[index - 1], ck, int(1));
        }
    }
    Ok(net)
}

/// Reads the binary value of a digit block (`ids[k]` has place value `2^k`).
pub fn decode_binary(state: &FiringState, ids: &[NeuronId]) -> u64 {
    ids.iter()
        .enumerate()
        .filter(|(_, &id)| state.get(id))
        .map(|(k, _)| 1u64 << k)
        .sum()
}

/// Reads a one-hot block: the index of the single lit neuron (0 if none are
/// lit, an error if several are).
pub fn decode_one_hot(state: &FiringState, ids: &[NeuronId]) -> Result<u64, NotCleanError> {
    let lit: Vec<u64> = ids
        .iter()
        .enumerate()
        .filter(|(_, &id)| state.get(id))
        .map(|(k, _)| k as u64)
        .collect();
    match lit.len() {
        0 => Ok(0),
        1 => Ok(lit[0]),
        hot => Err(NotCleanError { hot }),
    }
}

/// Counts the lit neurons of a unary block.
pub fn decode_unary(state: &FiringState, ids: &[NeuronId]) -> u64 {
    ids.iter().filter(|&&id| state.get(id)).count() as u64
}

/// The value held by an FCSC network's `y` block (0 until capture happens).
pub fn decode_fcsc(state: &FiringState, layout: &FcscLayout) -> u64 {
    decode_binary(state, &layout.y)
}

/// The value held by a TSC network: high bits from the `z` digits, low two
/// bits from the mod-4 ring. An all-dark ring reads as residue 0 (the state
/// before any spike); two lit ring neurons mean the count is still settling.
pub fn decode_tsc(state: &FiringState, layout: &TscLayout) -> Result<u64, NotCleanError> {
    let residue = decode_one_hot(state, &layout.f)?;
    let mut value = residue;
    for (k, &zi) in layout.z.iter().enumerate() {
        if state.get(zi) {
            value += 1u64 << (k + 2);
        }
    }
    Ok(value)
}

/// Recovers an [`FcscLayout`] from a deserialized network by its canonical
/// labels.
pub fn resolve_fcsc_layout(net: &Network, n: u32) -> Result<FcscLayout, BuildError> {
    let find = |label: String| {
        net.neuron_by_label(&label).map(|neuron| neuron.id).ok_or(BuildError::MissingNeuron { label })
    };
    Ok(FcscLayout {
        n,
        x: find("x".into())?,
        z: (0..=n).map(|i| find(format!("z{i}"))).collect::<Result<_, _>>()?,
        carry: (1..=n).map(|i| find(format!("in{i}"))).collect::<Result<_, _>>()?,
        y: (0..=n).map(|i| find(format!("y{i}"))).collect::<Result<_, _>>()?,
        s: find("s".into())?,
    })
}

/// Recovers a [`TscLayout`] from a deserialized network by its canonical
/// labels.
pub fn resolve_tsc_layout(net: &Network, n: u32) -> Result<TscLayout, BuildError> {
    let find = |label: String| {
        net.neuron_by_label(&label).map(|neuron| neuron.id).ok_or(BuildError::MissingNeuron { label })
    };
    Ok(TscLayout {
        n,
        x: find("x".into())?,
        f: [find("f0".into())?, find("f1".into())?, find("f2".into())?, find("f3".into())?],
        z: (2..=n).map(|i| find(format!("z{i}"))).collect::<Result<_, _>>()?,
        carry: (2..=n).map(|i| find(format!("in{i}"))).collect::<Result<_, _>>()?,
    })
}

/// The weight on `src -> dst`, looked up by label (testing convenience).
pub fn weight_between(net: &Network, src: &str, dst: &str) -> Option<Rational> {
    let src = net.neuron_by_label(src)?.id;
    let dst = net.neuron_by_label(dst)?.id;
    net.weight(src, dst).copied()
}
