//! Hasse diagrams of finite partial orders, emitted as DOT.

/// Cover pairs `(x, y)` with `x < y` and nothing strictly between, in
/// lexicographic order.
pub fn cover_relation(n: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let lt = |a: usize, b: usize| a != b && leq(a, b);
    let mut covers = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if lt(x, y) && !(0..n).any(|z| lt(x, z) && lt(z, y)) {
                covers.push((x, y));
            }
        }
    }
    covers
}

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text for a Hasse diagram, smaller elements at the bottom.
pub fn hasse_dot(graph_name: &str, labels: &[String], leq: impl Fn(usize, usize) -> bool) -> String {
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=box];\n", escape(graph_name));
    for (i, label) in labels.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", escape(label)));
    }
    for (x, y) in cover_relation(labels.len(), leq) {
        out.push_str(&format!("  n{x} -> n{y};\n"));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_covers_skip_shortcuts() {
        assert_eq!(cover_relation(3, |a, b| a <= b), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn diamond() {
        // subsets of {0,1} as masks
        let covers = cover_relation(4, |a, b| a & !b == 0);
        assert_eq!(covers, vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn dot_is_deterministic() {
        let labels: Vec<String> = vec!["1".into(), "0".into()];
        let dot = hasse_dot("I", &labels, |a, b| a <= b);
        assert_eq!(dot, "digraph \"I\" {\n  rankdir=BT;\n  node [shape=box];\n  n0 [label=\"1\"];\n  n1 [label=\"0\"];\n  n0 -> n1;\n}\n");
    }
}
