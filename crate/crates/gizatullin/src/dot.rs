//! Graphviz rendering of extended divisors.

use std::fmt::Write;

use crate::extdiv::ExtendedDivisor;

/// Chain vertices `c<i>` in order, then feathers `f<i>_<l>` with their tail
/// vertices. With `atoms`, each feather bridge carries its matching atom as
/// an external label.
pub fn export_dot(div: &ExtendedDivisor, atoms: bool) -> String {
    let mut out = String::new();
    out.push_str("graph extended_divisor {\n");
    out.push_str("  rankdir=LR;\n  node [shape=circle, fontsize=10];\n");
    let weights = div.chain().weights();
    for (i, w) in weights.iter().enumerate() {
        let _ = writeln!(out, "  c{i} [label=\"C_{i} ({w})\"];");
    }
    for i in 1..weights.len() {
        let _ = writeln!(out, "  c{} -- c{i};", i - 1);
    }
    for (label, f) in div.labelled() {
        let (i, l) = (label.component, label.index);
        let id = format!("f{i}_{l}");
        let xlabel = if atoms {
            format!(", xlabel=\"atom {label}\"")
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "  {id} [shape=box, label=\"F_{i},{l} ({}) @ {}\"{xlabel}];",
            f.bridge, f.point
        );
        let _ = writeln!(out, "  c{i} -- {id};");
        let mut prev = id.clone();
        for (k, w) in f.tail.iter().enumerate() {
            let tid = format!("{id}_t{}", k + 1);
            let _ = writeln!(out, "  {tid} [shape=box, label=\"({w})\"];");
            let _ = writeln!(out, "  {prev} -- {tid};");
            prev = tid;
        }
    }
    out.push_str("}\n");
    out
}
