use std::fmt::Write;

use super::{label_string, ExchangeMatrix};
use crate::semifield::TropicalElement;

/// Graphviz text for a skew-symmetric matrix; `B_ij > 0` gives `B_ij` parallel edges `i -> j`.
///
/// Frozen vertices, one per generator occurring in `coefficients`, are drawn as boxes with
/// `e` edges from the frozen vertex to `i` when the generator has exponent `e > 0` in `y_i`.
pub fn quiver_dot(b: &ExchangeMatrix, coefficients: Option<&[TropicalElement]>) -> String {
    let mut out = String::from("digraph quiver {\n");
    let names: Vec<String> = b.labels().iter().map(label_string).collect();
    for name in &names {
        let _ = writeln!(out, "  \"{name}\";");
    }
    for i in 0..b.size() {
        for j in 0..b.size() {
            for _ in 0..b.get(i, j).max(0) {
                let _ = writeln!(out, "  \"{}\" -> \"{}\";", names[i], names[j]);
            }
        }
    }
    if let Some(ys) = coefficients {
        let mut frozen: Vec<String> = ys
            .iter()
            .flat_map(|y| y.generators().map(|(g, _)| g.to_string()))
            .collect();
        frozen.sort();
        frozen.dedup();
        for g in &frozen {
            let _ = writeln!(out, "  \"{g}\" [shape=box];");
        }
        for (i, y) in ys.iter().enumerate() {
            for (g, e) in y.generators() {
                for _ in 0..e.abs() {
                    if e > 0 {
                        let _ = writeln!(out, "  \"{g}\" -> \"{}\";", names[i]);
                    } else {
                        let _ = writeln!(out, "  \"{}\" -> \"{g}\";", names[i]);
                    }
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
