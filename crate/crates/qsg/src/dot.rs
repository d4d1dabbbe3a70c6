//! Graphviz output.

use std::collections::BTreeSet;
use std::fmt::Write;

use qsg_core::construct::SgPresentation;
use qsg_core::{BoundQuiver, Quiver, SkewedGentleTriple};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

struct Graph<'a> {
    name: &'a str,
    relations: Vec<String>,
    nodes: Vec<(String, bool)>,
    edges: Vec<(String, String, String)>,
}

impl Graph<'_> {
    fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph {} {{", quote(self.name)).unwrap();
        if !self.relations.is_empty() {
            out.push_str("  /* relations:\n");
            for r in &self.relations {
                writeln!(out, "     {r}").unwrap();
            }
            out.push_str("  */\n");
        }
        for (n, double) in &self.nodes {
            if *double {
                writeln!(out, "  {} [shape=doublecircle];", quote(n)).unwrap();
            } else {
                writeln!(out, "  {};", quote(n)).unwrap();
            }
        }
        for (s, t, label) in &self.edges {
            writeln!(out, "  {} -> {} [label={}];", quote(s), quote(t), quote(label)).unwrap();
        }
        out.push_str("}\n");
        out
    }
}

pub fn quiver_to_dot(name: &str, q: &Quiver, special: &BTreeSet<String>) -> String {
    pair_graph(name, q, special, Vec::new()).render()
}

fn pair_graph<'a>(name: &'a str, q: &Quiver, special: &BTreeSet<String>, relations: Vec<String>) -> Graph<'a> {
    Graph {
        name,
        relations,
        nodes: q.vertices().iter().map(|v| (v.clone(), special.contains(v))).collect(),
        edges: q
            .arrows()
            .map(|a| (a.source.clone(), a.target.clone(), a.name.clone()))
            .collect(),
    }
}

pub fn pair_to_dot(name: &str, bq: &BoundQuiver, special: &BTreeSet<String>) -> String {
    let rels = bq.relations().iter().map(|(o, i)| format!("{o}*{i}")).collect();
    pair_graph(name, bq.quiver(), special, rels).render()
}

pub fn triple_to_dot(t: &SkewedGentleTriple) -> String {
    pair_to_dot(t.name(), t.pair(), t.special())
}

/// Split vertices are drawn double; comm relations read `plus = minus`.
pub fn sg_to_dot(name: &str, p: &SgPresentation) -> String {
    let mut relations: Vec<String> = p
        .zero_relations
        .iter()
        .map(|(o, i)| format!("{}*{}", o.name(), i.name()))
        .collect();
    relations.extend(p.comm_relations.iter().map(|c| {
        format!(
            "{}*{} = {}*{}",
            c.through_plus.0.name(),
            c.through_plus.1.name(),
            c.through_minus.0.name(),
            c.through_minus.1.name()
        )
    }));
    Graph {
        name,
        relations,
        nodes: p.vertices.iter().map(|v| (v.name(), v.sign.is_some())).collect(),
        edges: p
            .arrows
            .iter()
            .map(|a| (a.source.name(), a.target.name(), a.name()))
            .collect(),
    }
    .render()
}
