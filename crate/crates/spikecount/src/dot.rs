//! Graphviz export. The rendering is deterministic — neurons in id order,
//! synapses in insertion order — so the same network always yields the same
//! bytes and exports can be diffed or checked into golden tests.

use crate::engine::{Network, Role};
use crate::exact::{format_decimal, DecimalError};

fn escape(text: &str) -> String {
    text.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders the network as a `dot` digraph, left to right: the input neuron
/// as a diamond, outputs as double circles, hidden neurons as plain circles,
/// every edge labelled with its exact decimal weight.
pub fn export_dot(net: &Network) -> Result<String, DecimalError> {
    let mut out = String::from("digraph network {\n  rankdir=LR;\n");
    for neuron in net.neurons() {
        let shape = match neuron.role {
            Role::Input => "diamond",
            Role::Output => "doublecircle",
            Role::Hidden => "circle",
        };
        let label = match neuron.role {
            Role::Input => escape(&neuron.label),
            _ => format!("{}\\nbias {}", escape(&neuron.label), format_decimal(&neuron.bias)?),
        };
        out.push_str(&format!("  n{} [shape={shape}, label=\"{label}\"];\n", neuron.id));
    }
    out.push('\n');
    for synapse in net.synapses() {
        out.push_str(&format!(
            "  n{} -> n{} [label=\"{}\"];\n",
            synapse.src,
            synapse.dst,
            format_decimal(&synapse.weight)?
        ));
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_mod2_base, build_mod4};
    use crate::engine::Network;
    use crate::exact::{int, rat};

    #[test]
    fn the_parity_base_renders_to_the_expected_bytes() {
        let text = export_dot(&build_mod2_base()).unwrap();
        assert_eq!(
            text,
            "digraph network {\n\
             \x20 rankdir=LR;\n\
             \x20 n0 [shape=diamond, label=\"x\"];\n\
             \x20 n1 [shape=doublecircle, label=\"z0\\nbias 0.5\"];\n\
             \n\
             \x20 n0 -> n1 [label=\"1\"];\n\
             \x20 n1 -> n1 [label=\"-1\"];\n\
             }\n"
        );
    }

    #[test]
    fn every_synapse_becomes_exactly_one_edge_line() {
        let net = build_mod4();
        let text = export_dot(&net).unwrap();
        let edges = text.lines().filter(|l| l.contains(" -> ")).count();
        assert_eq!(edges, net.synapses().len());
        assert_eq!(edges, 17);
    }

    #[test]
    fn rendering_is_deterministic() {
        let net = build_mod4();
        assert_eq!(export_dot(&net).unwrap(), export_dot(&net).unwrap());
    }

    #[test]
    fn quotes_and_backslashes_in_labels_are_escaped() {
        let mut net = Network::new();
        let x = net.add_neuron("x", Role::Input, int(0));
        let odd = net.add_neuron(r#"say "hi"\now"#, Role::Output, rat(1, 2));
        net.connect(x, odd, int(1));
        let text = export_dot(&net).unwrap();
        assert!(text.contains(r#"label="say \"hi\"\\now\nbias 0.5""#), "{text}");
    }
}
