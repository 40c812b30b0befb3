//! Brauer trees: plane trees with an exceptional vertex and multiplicity.
//!
//! Triangulations give Brauer trees via `psi`, and flips of arcs match Kauer
//! moves of edges. Edge labels survive mutation, which is what lets mutation
//! sequences be transported between the two pictures.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::disc::{wrap, Arc, Triangulation};
use crate::error::{Error, Result};
use crate::Sign;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub label: usize,
    pub ends: [usize; 2],
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BrauerTree {
    pub m: usize,
    pub exceptional: usize,
    pub vertices: Vec<usize>,
    pub edges: Vec<Edge>,
    /// Cyclic order of incident edge labels around each vertex.
    pub cyclic: BTreeMap<usize, Vec<usize>>,
}

impl BrauerTree {
    pub fn validate(&self) -> Result<()> {
        let bad = |why: String| Err(Error::InvalidTree(why));
        if self.m == 0 {
            return bad("multiplicity must be at least 1".into());
        }
        let verts: BTreeSet<usize> = self.vertices.iter().copied().collect();
        if verts.len() != self.vertices.len() || !verts.contains(&self.exceptional) {
            return bad("vertex labels must be distinct and include the exceptional vertex".into());
        }
        if self.edges.len() + 1 != self.vertices.len() {
            return bad(format!("{} edges on {} vertices", self.edges.len(), self.vertices.len()));
        }
        let labels: BTreeSet<usize> = self.edges.iter().map(|e| e.label).collect();
        if labels.len() != self.edges.len() {
            return bad("duplicate edge labels".into());
        }
        for e in &self.edges {
            if e.ends[0] == e.ends[1] || !verts.contains(&e.ends[0]) || !verts.contains(&e.ends[1]) {
                return bad(format!("edge {} has bad ends {:?}", e.label, e.ends));
            }
        }
        for v in &self.vertices {
            let mut around: Vec<usize> = self.cyclic.get(v).cloned().unwrap_or_default();
            around.sort();
            let mut incident: Vec<usize> = self.incident(*v).into_iter().map(|e| e.label).collect();
            incident.sort();
            if around != incident {
                return bad(format!("cyclic order at {v} does not list its incident edges"));
            }
        }
        if self.cyclic.keys().any(|k| !verts.contains(k)) {
            return bad("cyclic order given for an unknown vertex".into());
        }
        // connectivity
        let mut seen = BTreeSet::from([self.exceptional]);
        let mut stack = vec![self.exceptional];
        while let Some(v) = stack.pop() {
            for e in self.incident(v) {
                let w = e.other(v);
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        if seen.len() != self.vertices.len() {
            return bad("graph is not connected".into());
        }
        Ok(())
    }

    pub fn incident(&self, v: usize) -> Vec<Edge> {
        self.edges.iter().copied().filter(|e| e.ends.contains(&v)).collect()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.cyclic.get(&v).map_or(0, Vec::len)
    }

    pub fn edge(&self, label: usize) -> Result<Edge> {
        self.edges
            .iter()
            .copied()
            .find(|e| e.label == label)
            .ok_or(Error::UnknownEdge(label))
    }

    /// A star with `e` edges labelled `1..=e` around an exceptional center `0`.
    pub fn star(e: usize, m: usize) -> BrauerTree {
        let edges: Vec<Edge> = (1..=e).map(|i| Edge { label: i, ends: [0, i] }).collect();
        let mut cyclic = BTreeMap::new();
        cyclic.insert(0, (1..=e).collect());
        for i in 1..=e {
            cyclic.insert(i, vec![i]);
        }
        BrauerTree {
            m,
            exceptional: 0,
            vertices: (0..=e).collect(),
            edges,
            cyclic,
        }
    }

    pub fn is_star(&self) -> bool {
        self.valency(self.exceptional) == self.edges.len()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tree serializes")
    }

    pub fn from_json(s: &str) -> Result<BrauerTree> {
        let t: BrauerTree = serde_json::from_str(s)?;
        t.validate()?;
        Ok(t)
    }

    /// Graphviz rendering; edges are listed around each vertex in cyclic order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph brauer {\n");
        for v in &self.vertices {
            let order: Vec<String> = self.cyclic[v].iter().map(|l| l.to_string()).collect();
            let shape = if *v == self.exceptional { "doublecircle" } else { "circle" };
            let _ = writeln!(
                out,
                "  v{v} [shape={shape}, label=\"v{v}\", xlabel=\"[{}]\"];",
                order.join(" ")
            );
        }
        for e in &self.edges {
            let _ = writeln!(out, "  v{} -- v{} [label=\"{}\"];", e.ends[0], e.ends[1], e.label);
        }
        if self.m > 1 {
            let _ = writeln!(out, "  label=\"multiplicity {}\";", self.m);
        }
        out.push_str("}\n");
        out
    }

    fn cyclic_step(&self, v: usize, label: usize, forward: bool) -> usize {
        let order = &self.cyclic[&v];
        let pos = order.iter().position(|&l| l == label).expect("edge listed at its endpoint");
        let k = order.len();
        if forward {
            order[(pos + 1) % k]
        } else {
            order[(pos + k - 1) % k]
        }
    }
}

/// Edge label of each arc: its 1-based position in the sorted arc list.
pub fn arc_label(x: &Triangulation, a: &Arc) -> Result<usize> {
    x.arcs
        .iter()
        .position(|b| b == a)
        .map(|p| p + 1)
        .ok_or_else(|| Error::ArcNotPresent(a.to_string()))
}

/// The Brauer tree of a triangulation (vertices `0..=e`, exceptional `0`).
pub fn psi(x: &Triangulation, sign: Sign, m: usize) -> Result<BrauerTree> {
    if m == 0 {
        return Err(Error::InvalidTree("multiplicity must be at least 1".into()));
    }
    let e = x.e;
    let mut edges = Vec::with_capacity(e);
    for (idx, a) in x.arcs.iter().enumerate() {
        let ends = match (*a, sign) {
            (Arc::Projective { terminal }, _) => [0, terminal],
            (Arc::Inner { initial, .. }, Sign::Minus) => [initial, wrap(a.terminal(e) as i64 - 1, e)],
            (Arc::Inner { initial, .. }, Sign::Plus) => [a.terminal(e), wrap(initial as i64 + 1, e)],
        };
        edges.push(Edge { label: idx + 1, ends });
    }
    let mut cyclic = BTreeMap::new();
    for v in 0..=e {
        let mut around: Vec<(usize, usize)> = edges
            .iter()
            .filter(|ed| ed.ends.contains(&v))
            .map(|ed| {
                let w = ed.other(v);
                let key = if w == 0 { v } else { w };
                (key, ed.label)
            })
            .collect();
        around.sort();
        cyclic.insert(v, around.into_iter().map(|p| p.1).collect());
    }
    let tree = BrauerTree {
        m,
        exceptional: 0,
        vertices: (0..=e).collect(),
        edges,
        cyclic,
    };
    tree.validate()
        .map_err(|err| Error::Internal(format!("psi of {x} is not a Brauer tree: {err}")))?;
    Ok(tree)
}

/// Kauer move at an edge. The minus move slides both ends of the edge
/// backwards along the cyclic orders (to the far ends of the preceding
/// edges), the plus move forwards; they are mutually inverse.
pub fn kauer_mutate(g: &BrauerTree, label: usize, sign: Sign) -> Result<BrauerTree> {
    let edge = g.edge(label)?;
    let forward = sign == Sign::Plus;
    let mut out = g.clone();
    for v in edge.ends {
        out.cyclic.get_mut(&v).unwrap().retain(|&l| l != label);
    }
    let mut new_ends = [0; 2];
    for (slot, &u) in edge.ends.iter().enumerate() {
        if g.valency(u) == 1 {
            new_ends[slot] = u;
            out.cyclic.get_mut(&u).unwrap().push(label);
            continue;
        }
        let neighbour = g.cyclic_step(u, label, forward);
        let w = g.edge(neighbour)?.other(u);
        new_ends[slot] = w;
        let order = out.cyclic.get_mut(&w).unwrap();
        let pos = order.iter().position(|&l| l == neighbour).unwrap();
        // the new edge sits on the side of the neighbour facing the old edge
        if forward {
            order.insert(pos + 1, label);
        } else {
            order.insert(pos, label);
        }
    }
    for e in out.edges.iter_mut() {
        if e.label == label {
            e.ends = new_ends;
        }
    }
    out.validate()
        .map_err(|err| Error::Internal(format!("Kauer move at {label} broke the tree: {err}")))?;
    Ok(out)
}

/// Canonical string of the plane tree hanging below `v`, entered via `parent`.
fn encode(g: &BrauerTree, v: usize, parent: Option<usize>, rotation: usize) -> String {
    let order = &g.cyclic[&v];
    let start = match parent {
        Some(p) => order.iter().position(|&l| l == p).unwrap() + 1,
        None => rotation,
    };
    let mut s = String::from("(");
    for k in 0..order.len() {
        let l = order[(start + k) % order.len()];
        if Some(l) == parent {
            continue;
        }
        let w = g.edge(l).unwrap().other(v);
        s.push_str(&encode(g, w, Some(l), 0));
    }
    s.push(')');
    s
}

/// Canonical form up to relabelling, rooted at the exceptional vertex.
pub fn canonical_form(g: &BrauerTree) -> (usize, String) {
    let r = g.exceptional;
    let k = g.valency(r).max(1);
    let best = (0..k).map(|rot| encode(g, r, None, rot)).min().unwrap();
    (g.m, best)
}

/// Isomorphism preserving incidence, cyclic orders, exceptional vertex and
/// multiplicity.
pub fn brauer_iso(g: &BrauerTree, h: &BrauerTree) -> bool {
    g.edges.len() == h.edges.len() && canonical_form(g) == canonical_form(h)
}

/// Labels of plus moves that take `g` to the star, each raising the
/// exceptional valency by one. Replaying minus moves at these labels in
/// reverse order from that star rebuilds `g`.
pub fn star_mutation_sequence(g: &BrauerTree) -> Result<Vec<usize>> {
    let mut cur = g.clone();
    let mut seq = Vec::new();
    while !cur.is_star() {
        let exc = cur.exceptional;
        let before = cur.valency(exc);
        let mut labels: Vec<usize> = cur
            .edges
            .iter()
            .filter(|e| !e.ends.contains(&exc))
            .map(|e| e.label)
            .collect();
        labels.sort();
        let step = labels.into_iter().find_map(|l| {
            let next = kauer_mutate(&cur, l, Sign::Plus).ok()?;
            (next.valency(exc) == before + 1).then_some((l, next))
        });
        let Some((l, next)) = step else {
            return Err(Error::Internal(format!("no edge raises the exceptional valency of {}", cur.to_json())));
        };
        seq.push(l);
        cur = next;
    }
    Ok(seq)
}

/// Runs [`star_mutation_sequence`] and also returns the star it reaches.
pub fn star_and_sequence(g: &BrauerTree) -> Result<(BrauerTree, Vec<usize>)> {
    let seq = star_mutation_sequence(g)?;
    let mut cur = g.clone();
    for &l in &seq {
        cur = kauer_mutate(&cur, l, Sign::Plus)?;
    }
    Ok((cur, seq))
}

/// Removes a leaf edge whose outer vertex is not exceptional.
pub fn prune_leaf(g: &BrauerTree, label: usize) -> Result<BrauerTree> {
    let e = g.edge(label)?;
    let leaf = e
        .ends
        .iter()
        .copied()
        .find(|&v| g.valency(v) == 1 && v != g.exceptional)
        .ok_or(Error::NotPrunableLeaf(label))?;
    let mut out = g.clone();
    out.edges.retain(|x| x.label != label);
    out.vertices.retain(|&v| v != leaf);
    out.cyclic.remove(&leaf);
    let other = e.other(leaf);
    out.cyclic.get_mut(&other).unwrap().retain(|&l| l != label);
    Ok(out)
}
