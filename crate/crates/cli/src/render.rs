//! Node-grid drawings. Glued branches share nodes, so every node is drawn
//! once, and a branch ends at its first canonical node.

use std::fmt::Write;

use arf_core::NodeGrid;

fn label(vector: &[u32]) -> String {
    if vector.len() == 1 {
        return vector[0].to_string();
    }
    let parts: Vec<String> = vector.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

fn visible(grid: &NodeGrid) -> Vec<bool> {
    let nodes = grid.nodes();
    let mut shown = vec![false; nodes.len()];
    // Parents precede their children.
    for (i, node) in nodes.iter().enumerate() {
        shown[i] = match node.parent {
            None => true,
            Some(p) => shown[p] && !nodes[p].is_canonical(),
        };
    }
    shown
}

/// Graphviz digraph with edges from each node to its children.
pub fn dot(grid: &NodeGrid) -> String {
    let shown = visible(grid);
    let mut out = String::from("digraph tree {\n    node [shape=ellipse];\n");
    for (i, node) in grid.nodes().iter().enumerate().filter(|(i, _)| shown[*i]) {
        writeln!(out, "    n{i} [label=\"{}\"];", label(&node.vector)).unwrap();
    }
    for (i, node) in grid.nodes().iter().enumerate().filter(|(i, _)| shown[*i]) {
        if let Some(p) = node.parent {
            writeln!(out, "    n{p} -> n{i};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Indented text drawing, root first.
pub fn ascii(grid: &NodeGrid) -> String {
    let shown = visible(grid);
    let mut out = String::new();
    for (i, node) in grid.nodes().iter().enumerate() {
        if node.parent.is_none() {
            writeln!(out, "{}", label(&node.vector)).unwrap();
            draw_children(grid, &shown, i, "", &mut out);
        }
    }
    out
}

fn draw_children(grid: &NodeGrid, shown: &[bool], index: usize, prefix: &str, out: &mut String) {
    let children: Vec<usize> = grid.children(index).filter(|&c| shown[c]).collect();
    for (k, &child) in children.iter().enumerate() {
        let last = k + 1 == children.len();
        let (branch, indent) = if last { ("└── ", "    ") } else { ("├── ", "│   ") };
        writeln!(out, "{prefix}{branch}{}", label(&grid.nodes()[child].vector)).unwrap();
        draw_children(grid, shown, child, &format!("{prefix}{indent}"), out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use arf_core::{validate_sequence, validate_tree};

    fn grid(seqs: &[&[u32]], gluing: &[u32]) -> NodeGrid {
        validate_tree(
            seqs.iter().map(|v| validate_sequence(v).unwrap()).collect(),
            gluing.to_vec(),
        )
        .unwrap()
        .node_grid()
    }

    #[test]
    fn glued_pair() {
        let g = grid(&[&[1], &[2]], &[2]);
        assert_eq!(ascii(&g), "(1,2)\n└── (1,1)\n    ├── (1,0)\n    └── (0,1)\n");
        let d = dot(&g);
        assert!(d.contains("n0 [label=\"(1,2)\"]"));
        assert!(d.contains("n0 -> n1;"));
        assert!(d.contains("n1 -> n2;") && d.contains("n1 -> n3;"));
    }

    #[test]
    fn single_branch_chain() {
        let g = grid(&[&[2, 2]], &[]);
        assert_eq!(ascii(&g), "2\n└── 2\n    └── 1\n");
    }
}
