//! Planar 4-valent graph builder used to assemble diagrams.
//!
//! Crossings have four slots listed counterclockwise; slots `s` and
//! `(s + 2) % 4` belong to the same strand. Junctions are 2-valent pass-through
//! vertices that disappear when the builder is finished; they exist so that
//! tangles can be wired together without knowing the far end in advance, and
//! so orientation hints can be attached to a strand.

use crate::diagram::Diagram;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Port {
    pub node: usize,
    pub slot: u8,
}

pub(crate) fn port(node: usize, slot: u8) -> Port {
    Port { node, slot }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum UnderPair {
    /// Slots 0 and 2 carry the under strand.
    Even,
    /// Slots 1 and 3 carry the under strand.
    Odd,
}

#[derive(Debug, Clone)]
enum Kind {
    Crossing(UnderPair),
    Junction,
}

#[derive(Debug, Clone)]
struct Node {
    kind: Kind,
    links: Vec<Option<Port>>,
}

impl Node {
    fn arity(&self) -> u8 {
        self.links.len() as u8
    }
}

#[derive(Debug, Default, Clone)]
pub(crate) struct Builder {
    nodes: Vec<Node>,
    /// (junction, slot the strand enters through), in priority order.
    hints: Vec<(usize, u8)>,
}

impl Builder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn crossing(&mut self, under: UnderPair) -> usize {
        self.nodes.push(Node {
            kind: Kind::Crossing(under),
            links: vec![None; 4],
        });
        self.nodes.len() - 1
    }

    pub fn junction(&mut self) -> usize {
        self.nodes.push(Node {
            kind: Kind::Junction,
            links: vec![None; 2],
        });
        self.nodes.len() - 1
    }

    /// Orients the strand through junction `j` so that it enters via slot 0.
    /// Earlier hints take precedence over later ones on the same component;
    /// hinted components are numbered first, in hint order.
    pub fn hint(&mut self, j: usize) {
        self.hints.push((j, 0));
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        debug_assert!(
            self.nodes[a.node].links[a.slot as usize].is_none(),
            "port {a:?} reused"
        );
        debug_assert!(
            self.nodes[b.node].links[b.slot as usize].is_none(),
            "port {b:?} reused"
        );
        self.nodes[a.node].links[a.slot as usize] = Some(b);
        self.nodes[b.node].links[b.slot as usize] = Some(a);
    }

    fn opposite(&self, p: Port) -> Port {
        let n = self.nodes[p.node].arity();
        Port {
            node: p.node,
            slot: (p.slot + n / 2) % n,
        }
    }

    fn is_crossing(&self, node: usize) -> bool {
        matches!(self.nodes[node].kind, Kind::Crossing(_))
    }

    fn next(&self, p: Port) -> Port {
        self.nodes[p.node].links[p.slot as usize].expect("builder port left unconnected")
    }

    /// Number of crossings added so far (crossings keep their insertion order
    /// in the finished diagram).
    pub fn crossing_index(&self, node: usize) -> usize {
        self.nodes[..node]
            .iter()
            .filter(|n| matches!(n.kind, Kind::Crossing(_)))
            .count()
    }

    /// Walks backwards from a strand position until the previous crossing
    /// exit is found. Returns `None` for crossingless loops.
    fn previous_crossing_exit(&self, entering: Port) -> Option<Port> {
        let mut p = entering;
        let start = p;
        loop {
            // `p` is where we enter a node; the port we came from is its link.
            let from = self.next(p);
            if self.is_crossing(from.node) {
                return Some(from);
            }
            p = self.opposite(from);
            if p == start {
                return None;
            }
        }
    }

    pub fn finish(self) -> Diagram {
        let crossing_ids: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.is_crossing(i))
            .collect();
        let mut index_of = vec![usize::MAX; self.nodes.len()];
        for (k, &id) in crossing_ids.iter().enumerate() {
            index_of[id] = k;
        }
        let nc = crossing_ids.len();
        let mut label = vec![[0u32; 4]; nc];
        let mut incoming = vec![[false; 4]; nc];
        let mut seen = vec![[false; 4]; nc];
        let mut junction_seen = vec![false; self.nodes.len()];

        // Starting exits for each component, in numbering order.
        let mut starts: Vec<Port> = Vec::new();
        let mut free_loops = 0usize;
        let mut claimed = vec![false; self.nodes.len() * 4];
        let claim_component = |b: &Builder, start: Port, claimed: &mut Vec<bool>| {
            let mut p = start;
            loop {
                claimed[p.node * 4 + p.slot as usize] = true;
                let q = b.next(p);
                claimed[q.node * 4 + q.slot as usize] = true;
                p = b.opposite(q);
                if p == start {
                    break;
                }
            }
        };
        for &(j, enter) in &self.hints {
            let entering = Port {
                node: j,
                slot: enter,
            };
            if claimed[j * 4 + enter as usize] {
                continue;
            }
            match self.previous_crossing_exit(entering) {
                Some(exit) => {
                    starts.push(exit);
                    claim_component(&self, exit, &mut claimed);
                }
                None => {
                    free_loops += 1;
                    claim_component(&self, self.opposite(entering), &mut claimed);
                }
            }
        }
        for &id in &crossing_ids {
            for s in 0..4u8 {
                if !claimed[id * 4 + s as usize] {
                    let exit = Port { node: id, slot: s };
                    starts.push(exit);
                    claim_component(&self, exit, &mut claimed);
                }
            }
        }
        for (id, node) in self.nodes.iter().enumerate() {
            if matches!(node.kind, Kind::Junction) && !claimed[id * 4] && !claimed[id * 4 + 1] {
                free_loops += 1;
                claim_component(&self, Port { node: id, slot: 1 }, &mut claimed);
            }
        }

        let mut next_label = 1u32;
        let mut ranges = Vec::new();
        for &start in &starts {
            let lo = next_label;
            let mut exit = start;
            loop {
                // Follow the edge leaving `exit` to the next crossing.
                let mut p = self.next(exit);
                while !self.is_crossing(p.node) {
                    junction_seen[p.node] = true;
                    p = self.next(self.opposite(p));
                }
                let (a, b) = (index_of[exit.node], index_of[p.node]);
                label[a][exit.slot as usize] = next_label;
                seen[a][exit.slot as usize] = true;
                label[b][p.slot as usize] = next_label;
                seen[b][p.slot as usize] = true;
                incoming[b][p.slot as usize] = true;
                exit = self.opposite(p);
                if exit == start {
                    break;
                }
                next_label += 1;
            }
            ranges.push((lo, next_label));
            next_label += 1;
        }
        debug_assert!(seen.iter().all(|s| s.iter().all(|&x| x)));

        let mut tuples = Vec::with_capacity(nc);
        let mut signs = Vec::with_capacity(nc);
        for (k, &id) in crossing_ids.iter().enumerate() {
            let under = match self.nodes[id].kind {
                Kind::Crossing(u) => u,
                Kind::Junction => unreachable!(),
            };
            let pair = match under {
                UnderPair::Even => [0usize, 2],
                UnderPair::Odd => [1, 3],
            };
            let u = if incoming[k][pair[0]] {
                pair[0]
            } else {
                pair[1]
            };
            let t = [
                label[k][u],
                label[k][(u + 1) % 4],
                label[k][(u + 2) % 4],
                label[k][(u + 3) % 4],
            ];
            // Over strand entering at tuple position 3 means it runs 3 -> 1.
            signs.push(if incoming[k][(u + 3) % 4] { 1 } else { -1 });
            tuples.push(t);
        }
        Diagram::from_parts(tuples, ranges, signs, free_loops)
    }
}
