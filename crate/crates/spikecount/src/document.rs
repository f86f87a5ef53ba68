//! On-disk formats: the versioned network document and the trace stream.
//!
//! A network document is a single JSON object
//!
//! ```json
//! {
//!   "version": 1,
//!   "layout": { "kind": "fcsc", "t": 8, "n": 4, "output_labels": ["y0", "..."] },
//!   "neurons": [ { "id": 0, "label": "x", "role": "input", "bias": "0" } ],
//!   "synapses": [ { "src": 0, "dst": 1, "weight": "1" } ]
//! }
//! ```
//!
//! with weights and biases as exact decimal strings (see [`crate::exact`]),
//! so a round trip is bit-exact. `layout` is optional; builders attach it so
//! a consumer can decode the network's output without recognizing its shape.
//! Parsing is strict: unknown fields, unknown versions, non-dense ids,
//! dangling synapses, and other structural faults are all rejected.
//!
//! A trace is streamed as JSON lines, one object `{"t": 3, "fired": ["x","z0"]}`
//! per time step, with labels in id order.

use std::io::Write;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{format_decimal, parse_decimal, DecimalError};
use crate::engine::{Network, NeuronId, Role, Trace};

/// The one document version this build reads and writes.
pub const FORMAT_VERSION: u32 = 1;

/// Problems reading or writing documents.
#[derive(Debug, Error)]
pub enum DocError {
    #[error("document is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {found} (this build reads version {FORMAT_VERSION})")]
    UnsupportedVersion { found: u32 },
    #[error("neuron {id}: {source}")]
    BadNeuronScalar { id: u32, source: DecimalError },
    #[error("synapse {src}->{dst}: {source}")]
    BadSynapseScalar { src: u32, dst: u32, source: DecimalError },
    #[error("neuron {id} has unknown role {role:?}")]
    BadRole { id: u32, role: String },
    #[error("neuron ids must be exactly 0..{expected}, in order; found {found} at position {position}")]
    NonDenseIds { expected: usize, position: usize, found: u32 },
    #[error("document describes an invalid network: {0}")]
    InvalidNetwork(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Decoder metadata carried alongside a built network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LayoutDoc {
    /// Which builder produced the network (`mod2`, `mod4`, `fcsc-counter`,
    /// `fcsc`, `tsc`, `unary-fixture`).
    pub kind: String,
    /// The horizon parameter T, for builders that take one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    /// The digit parameter n, where applicable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    /// Labels of the output block, in place-value order.
    pub output_labels: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NeuronDoc {
    id: u32,
    label: String,
    role: String,
    bias: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SynapseDoc {
    src: u32,
    dst: u32,
    weight: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetworkDoc {
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<LayoutDoc>,
    neurons: Vec<NeuronDoc>,
    synapses: Vec<SynapseDoc>,
}

/// Renders a network (and optional layout) as a pretty-printed document.
/// The caller is expected to pass a validated network; scalars that have no
/// finite decimal form are the only write-time failure.
pub fn write_network(net: &Network, layout: Option<&LayoutDoc>) -> Result<String, DocError> {
    let neurons = net
        .neurons()
        .iter()
        .map(|n| {
            Ok(NeuronDoc {
                id: n.id.0,
                label: n.label.clone(),
                role: n.role.as_str().to_string(),
                bias: format_decimal(&n.bias)
                    .map_err(|source| DocError::BadNeuronScalar { id: n.id.0, source })?,
            })
        })
        .collect::<Result<Vec<_>, DocError>>()?;
    let synapses = net
        .synapses()
        .iter()
        .map(|s| {
            Ok(SynapseDoc {
                src: s.src.0,
                dst: s.dst.0,
                weight: format_decimal(&s.weight).map_err(|source| DocError::BadSynapseScalar {
                    src: s.src.0,
                    dst: s.dst.0,
                    source,
                })?,
            })
        })
        .collect::<Result<Vec<_>, DocError>>()?;

    let doc = NetworkDoc { version: FORMAT_VERSION, layout: layout.cloned(), neurons, synapses };
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(text)
}

/// Parses a document back into a network and its optional layout, rejecting
/// anything structurally unsound.
pub fn read_network(text: &str) -> Result<(Network, Option<LayoutDoc>), DocError> {
    let doc: NetworkDoc = serde_json::from_str(text)?;
    if doc.version != FORMAT_VERSION {
        return Err(DocError::UnsupportedVersion { found: doc.version });
    }

    let mut net = Network::new();
    for (position, neuron) in doc.neurons.iter().enumerate() {
        if neuron.id as usize != position {
            return Err(DocError::NonDenseIds {
                expected: doc.neurons.len(),
                position,
                found: neuron.id,
            });
        }
        let role = Role::from_name(&neuron.role)
            .ok_or_else(|| DocError::BadRole { id: neuron.id, role: neuron.role.clone() })?;
        let bias = parse_decimal(&neuron.bias)
            .map_err(|source| DocError::BadNeuronScalar { id: neuron.id, source })?;
        net.add_neuron(neuron.label.clone(), role, bias);
    }
    for synapse in &doc.synapses {
        let weight = parse_decimal(&synapse.weight).map_err(|source| DocError::BadSynapseScalar {
            src: synapse.src,
            dst: synapse.dst,
            source,
        })?;
        net.connect(NeuronId(synapse.src), NeuronId(synapse.dst), weight);
    }

    let report = net.validate();
    if !report.is_valid() {
        return Err(DocError::InvalidNetwork(report.to_string()));
    }
    Ok((net, doc.layout))
}

#[derive(Debug, Serialize, Deserialize)]
struct TraceLine {
    t: u32,
    fired: Vec<String>,
}

/// Streams a trace as JSON lines, labels in id order, one line per step.
pub fn write_trace(net: &Network, trace: &Trace, mut out: impl Write) -> Result<(), DocError> {
    for state in trace.states() {
        let fired = state.fired_ids().iter().map(|&id| net.label(id).to_string()).collect();
        let line = TraceLine { t: state.time(), fired };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}
