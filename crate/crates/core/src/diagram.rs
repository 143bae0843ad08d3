//! Oriented link diagrams stored as PD codes.
//!
//! Convention: each crossing `X[a,b,c,d]` lists its four edge labels
//! counterclockwise, starting at the incoming under-strand, so the under
//! strand runs `a -> c`. Labels increase along the orientation of each
//! component and wrap around at the end of the component's label interval.
//! The over strand runs `d -> b` or `b -> d`; the crossing is positive when it
//! runs `d -> b` (right-handed crossing). Crossingless components are written
//! `Loop[k]`.
//!
//! Planarity of the code is not checked; only the degree-2 edge condition and
//! the orientation convention are validated.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::planar::{port, Builder, Port, UnderPair};
use crate::satellite::DoubleProvenance;

#[derive(Debug, Clone)]
pub struct Diagram {
    crossings: Vec<[u32; 4]>,
    /// Inclusive label intervals of the components that have crossings.
    ranges: Vec<(u32, u32)>,
    signs: Vec<i8>,
    free_loops: usize,
    provenance: Option<Box<DoubleProvenance>>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
            && self.ranges == other.ranges
            && self.signs == other.signs
            && self.free_loops == other.free_loops
    }
}

impl Eq for Diagram {}

/// Where an edge starts and ends: `(crossing index, tuple position)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct EdgeEnds {
    pub tail: (usize, usize),
    pub head: (usize, usize),
}

impl Diagram {
    pub(crate) fn from_parts(
        crossings: Vec<[u32; 4]>,
        ranges: Vec<(u32, u32)>,
        signs: Vec<i8>,
        free_loops: usize,
    ) -> Self {
        Diagram {
            crossings,
            ranges,
            signs,
            free_loops,
            provenance: None,
        }
    }

    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self::unlink(1)
    }

    /// The crossingless `n`-component unlink.
    pub fn unlink(n: usize) -> Self {
        Diagram::from_parts(Vec::new(), Vec::new(), Vec::new(), n)
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn n_components(&self) -> usize {
        self.ranges.len() + self.free_loops
    }

    /// Label intervals of components with crossings; crossingless loops
    /// follow them in component numbering.
    pub fn component_ranges(&self) -> &[(u32, u32)] {
        &self.ranges
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn provenance(&self) -> Option<&DoubleProvenance> {
        self.provenance.as_deref()
    }

    pub(crate) fn with_provenance(mut self, p: DoubleProvenance) -> Self {
        self.provenance = Some(Box::new(p));
        self
    }

    pub fn is_knot(&self) -> bool {
        self.n_components() == 1
    }

    pub(crate) fn require_knot(&self) -> Result<()> {
        if self.is_knot() {
            Ok(())
        } else {
            Err(Error::MultiComponent(self.n_components()))
        }
    }

    /// Component index owning an edge label.
    pub fn component_of(&self, label: u32) -> usize {
        self.ranges
            .iter()
            .position(|&(lo, hi)| lo <= label && label <= hi)
            .expect("label outside every component range")
    }

    pub(crate) fn succ(&self, label: u32) -> u32 {
        let (lo, hi) = self.ranges[self.component_of(label)];
        if label == hi {
            lo
        } else {
            label + 1
        }
    }

    /// True when the edge at tuple position `pos` of crossing `k` enters it.
    pub(crate) fn is_incoming(&self, k: usize, pos: usize) -> bool {
        match pos {
            0 => true,
            2 => false,
            3 => self.signs[k] > 0,
            1 => self.signs[k] < 0,
            _ => unreachable!(),
        }
    }

    pub(crate) fn edge_ends(&self) -> BTreeMap<u32, EdgeEnds> {
        let mut tails = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (k, t) in self.crossings.iter().enumerate() {
            for (pos, &label) in t.iter().enumerate() {
                if self.is_incoming(k, pos) {
                    heads.insert(label, (k, pos));
                } else {
                    tails.insert(label, (k, pos));
                }
            }
        }
        tails
            .into_iter()
            .map(|(l, tail)| {
                (
                    l,
                    EdgeEnds {
                        tail,
                        head: heads[&l],
                    },
                )
            })
            .collect()
    }

    /// Copies the diagram into a builder, leaving the edges in `skip`
    /// unconnected. Crossing `k` becomes node `base + k`, with tuple
    /// positions as slots.
    pub(crate) fn add_to_builder(&self, b: &mut Builder, skip: &[u32]) -> usize {
        let base = b.crossing(UnderPair::Even);
        for _ in 1..self.crossings.len() {
            b.crossing(UnderPair::Even);
        }
        for (l, e) in self.edge_ends() {
            if skip.contains(&l) {
                continue;
            }
            b.connect(
                port(base + e.tail.0, e.tail.1 as u8),
                port(base + e.head.0, e.head.1 as u8),
            );
        }
        base
    }

    pub(crate) fn builder_port(base: usize, at: (usize, usize)) -> Port {
        port(base + at.0, at.1 as u8)
    }
}

/// Parses a PD code such as `"X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]"`.
/// Labels are renumbered to `1..=2c` preserving their order.
pub fn parse_pd(text: &str) -> Result<Diagram> {
    let mut tuples: Vec<[i64; 4]> = Vec::new();
    let mut loops = 0usize;
    let mut rest = text.trim();
    if let Some(inner) = rest.strip_prefix("PD[").and_then(|r| r.strip_suffix(']')) {
        rest = inner;
    }
    let bytes = rest.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let head_start = i;
        while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
            i += 1;
        }
        let head = &rest[head_start..i];
        if i >= bytes.len() || bytes[i] != b'[' {
            return Err(Error::MalformedTuple(
                rest[head_start..].chars().take(24).collect(),
            ));
        }
        let close = rest[i..]
            .find(']')
            .map(|o| o + i)
            .ok_or_else(|| Error::MalformedTuple(rest[head_start..].to_string()))?;
        let body = &rest[i + 1..close];
        let token = &rest[head_start..=close];
        let nums: Vec<i64> = body
            .split(',')
            .map(|s| s.trim())
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<i64>()
                    .map_err(|_| Error::MalformedTuple(token.to_string()))
            })
            .collect::<Result<_>>()?;
        match head {
            "Loop" => {
                if nums.len() > 1 {
                    return Err(Error::MalformedTuple(token.to_string()));
                }
                loops += 1;
            }
            "X" | "" => {
                let arr: [i64; 4] = nums
                    .try_into()
                    .map_err(|_| Error::MalformedTuple(token.to_string()))?;
                tuples.push(arr);
            }
            _ => return Err(Error::MalformedTuple(token.to_string())),
        }
        i = close + 1;
    }
    if tuples.is_empty() && loops == 0 {
        return Err(Error::EmptyInput);
    }
    from_raw_tuples(&tuples, loops)
}

fn from_raw_tuples(raw: &[[i64; 4]], free_loops: usize) -> Result<Diagram> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for t in raw {
        for &l in t {
            *counts.entry(l).or_default() += 1;
        }
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c != 2) {
        return Err(Error::LabelCount { label, count });
    }
    let renumber: BTreeMap<i64, u32> = counts
        .keys()
        .enumerate()
        .map(|(i, &l)| (l, i as u32 + 1))
        .collect();
    let crossings: Vec<[u32; 4]> = raw.iter().map(|t| t.map(|l| renumber[&l])).collect();
    let n_labels = counts.len();

    // Components: labels joined through each crossing strand.
    let mut parent: Vec<usize> = (0..=n_labels).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let n = p[y];
            p[y] = r;
            y = n;
        }
        r
    }
    for t in &crossings {
        for (a, b) in [(t[0], t[2]), (t[1], t[3])] {
            let (ra, rb) = (find(&mut parent, a as usize), find(&mut parent, b as usize));
            parent[ra] = rb;
        }
    }
    let mut groups: BTreeMap<usize, (u32, u32, usize)> = BTreeMap::new();
    for l in 1..=n_labels as u32 {
        let r = find(&mut parent, l as usize);
        let g = groups.entry(r).or_insert((l, l, 0));
        g.0 = g.0.min(l);
        g.1 = g.1.max(l);
        g.2 += 1;
    }
    let mut ranges: Vec<(u32, u32)> = Vec::new();
    for &(lo, hi, n) in groups.values() {
        if (hi - lo + 1) as usize != n {
            return Err(Error::InconsistentOrientation(format!(
                "component labels {lo}..{hi} are not contiguous"
            )));
        }
        ranges.push((lo, hi));
    }
    ranges.sort();

    let mut d = Diagram::from_parts(crossings, ranges, vec![0; raw.len()], free_loops);
    d.signs = infer_signs(&d)?;
    Ok(d)
}

/// Works out which way each over strand runs from the label successor
/// relation, propagating through the one-head/one-tail edge constraint where
/// a short component makes the successor test ambiguous.
fn infer_signs(d: &Diagram) -> Result<Vec<i8>> {
    let n = d.crossings.len();
    let mut sign = vec![0i8; n];
    for (k, t) in d.crossings.iter().enumerate() {
        if d.succ(t[0]) != t[2] {
            return Err(Error::InconsistentOrientation(format!(
                "under strand {} -> {} at crossing {}",
                t[0],
                t[2],
                k + 1
            )));
        }
        let fwd = d.succ(t[3]) == t[1];
        let back = d.succ(t[1]) == t[3];
        sign[k] = match (fwd, back) {
            (true, false) => 1,
            (false, true) => -1,
            (true, true) => 0,
            (false, false) => {
                return Err(Error::InconsistentOrientation(format!(
                    "over strand {} / {} at crossing {}",
                    t[1],
                    t[3],
                    k + 1
                )))
            }
        };
    }
    // Each label occurs as exactly one head. Under positions are fixed; use
    // them and the resolved crossings to settle ambiguous ones.
    loop {
        let mut progressed = false;
        let mut heads: BTreeMap<u32, usize> = BTreeMap::new();
        for (k, t) in d.crossings.iter().enumerate() {
            *heads.entry(t[0]).or_default() += 1;
            match sign[k] {
                1 => *heads.entry(t[3]).or_default() += 1,
                -1 => *heads.entry(t[1]).or_default() += 1,
                _ => {}
            }
        }
        for (k, t) in d.crossings.iter().enumerate() {
            if sign[k] != 0 {
                continue;
            }
            if heads.get(&t[3]).copied().unwrap_or(0) > 0 {
                sign[k] = -1;
                progressed = true;
            } else if heads.get(&t[1]).copied().unwrap_or(0) > 0 {
                sign[k] = 1;
                progressed = true;
            }
            if progressed {
                break;
            }
        }
        if !progressed {
            match sign.iter().position(|&s| s == 0) {
                Some(k) => sign[k] = 1,
                None => break,
            }
        }
    }
    let mut heads: BTreeMap<u32, usize> = BTreeMap::new();
    for (k, t) in d.crossings.iter().enumerate() {
        *heads.entry(t[0]).or_default() += 1;
        *heads
            .entry(if sign[k] > 0 { t[3] } else { t[1] })
            .or_default() += 1;
    }
    if let Some((l, _)) = heads.iter().find(|(_, &c)| c != 1) {
        return Err(Error::InconsistentOrientation(format!(
            "edge {l} has two heads"
        )));
    }
    Ok(sign)
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.crossings {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "X[{},{},{},{}]", t[0], t[1], t[2], t[3])?;
        }
        let base = 2 * self.crossings.len();
        for i in 0..self.free_loops {
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "Loop[{}]", base + i + 1)?;
        }
        Ok(())
    }
}

/// Canonical PD text for a diagram.
pub fn serialize_pd(d: &Diagram) -> String {
    d.to_string()
}

/// Sum of crossing signs. A property of the diagram, not of the knot type.
pub fn writhe(d: &Diagram) -> Result<i64> {
    d.require_knot()?;
    Ok(d.signs.iter().map(|&s| s as i64).sum())
}

/// Changes every crossing (over and under strands swap).
pub fn mirror(d: &Diagram) -> Diagram {
    let crossings = d
        .crossings
        .iter()
        .zip(&d.signs)
        .map(|(t, &s)| {
            if s > 0 {
                [t[3], t[0], t[1], t[2]]
            } else {
                [t[1], t[2], t[3], t[0]]
            }
        })
        .collect();
    let signs = d.signs.iter().map(|s| -s).collect();
    Diagram::from_parts(crossings, d.ranges.clone(), signs, d.free_loops)
}

/// Half the signed count of crossings between two distinct components.
pub fn linking_number(d: &Diagram, a: usize, b: usize) -> Result<i64> {
    let count = d.n_components();
    for index in [a, b] {
        if index >= count {
            return Err(Error::BadComponentIndex { index, count });
        }
    }
    if a == b {
        return Err(Error::BadComponentIndex { index: b, count });
    }
    let mut total = 0i64;
    for (t, &s) in d.crossings.iter().zip(&d.signs) {
        let (u, o) = (d.component_of(t[0]), d.component_of(t[1]));
        if (u == a && o == b) || (u == b && o == a) {
            total += s as i64;
        }
    }
    debug_assert!(total % 2 == 0, "odd inter-component crossing count");
    Ok(total / 2)
}

/// Connected sum, spliced at edge 1 of each summand.
pub fn connected_sum(d1: &Diagram, d2: &Diagram) -> Result<Diagram> {
    d1.require_knot()?;
    d2.require_knot()?;
    if d1.crossings.is_empty() {
        return Ok(d2.stripped());
    }
    if d2.crossings.is_empty() {
        return Ok(d1.stripped());
    }
    let mut b = Builder::new();
    let base1 = d1.add_to_builder(&mut b, &[1]);
    let base2 = d2.add_to_builder(&mut b, &[1]);
    let e1 = d1.edge_ends()[&1];
    let e2 = d2.edge_ends()[&1];
    let j = b.junction();
    b.hint(j);
    b.connect(Diagram::builder_port(base1, e1.tail), port(j, 0));
    b.connect(port(j, 1), Diagram::builder_port(base2, e2.head));
    b.connect(
        Diagram::builder_port(base2, e2.tail),
        Diagram::builder_port(base1, e1.head),
    );
    Ok(b.finish())
}

impl Diagram {
    /// The same diagram without provenance metadata.
    pub fn stripped(&self) -> Diagram {
        Diagram {
            provenance: None,
            ..self.clone()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const RIGHT_TREFOIL: &str = "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]";
    const LEFT_TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const HOPF: &str = "X[4,1,3,2] X[2,3,1,4]";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(RIGHT_TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.component_ranges(), &[(1, 6)]);
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_pd("").unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_pd("   ").unwrap_err(), Error::EmptyInput);
        assert_eq!(parse_pd("X[1,2,3]").unwrap_err().name(), "MalformedTuple");
        assert_eq!(
            parse_pd("X[1,2,3,4,5]").unwrap_err().name(),
            "MalformedTuple"
        );
        assert_eq!(
            parse_pd("X[1,4,2,5] junk").unwrap_err().name(),
            "MalformedTuple"
        );
        assert_eq!(
            parse_pd("X[1,4,2,5] X[3,6,4,1]").unwrap_err().name(),
            "LabelCount"
        );
    }

    #[test]
    fn labels_are_renumbered() {
        let shifted = "X[10,40,20,50] X[30,60,40,10] X[50,20,60,30]";
        assert_eq!(parse_pd(shifted).unwrap(), parse_pd(LEFT_TREFOIL).unwrap());
    }

    #[test]
    fn writhe_values() {
        assert_eq!(writhe(&parse_pd(RIGHT_TREFOIL).unwrap()).unwrap(), 3);
        assert_eq!(writhe(&parse_pd(LEFT_TREFOIL).unwrap()).unwrap(), -3);
        assert_eq!(writhe(&parse_pd(FIGURE_EIGHT).unwrap()).unwrap(), 0);
        assert_eq!(writhe(&Diagram::unknot()).unwrap(), 0);
        assert_eq!(
            writhe(&parse_pd(HOPF).unwrap()).unwrap_err(),
            Error::MultiComponent(2)
        );
    }

    #[test]
    fn mirror_swaps_handedness() {
        let r = parse_pd(RIGHT_TREFOIL).unwrap();
        let l = mirror(&r);
        assert_eq!(writhe(&l).unwrap(), -3);
        assert_eq!(l, parse_pd(&l.to_string()).unwrap());
        assert_eq!(mirror(&parse_pd(LEFT_TREFOIL).unwrap()), r);
        let e = parse_pd(FIGURE_EIGHT).unwrap();
        assert_eq!(mirror(&mirror(&e)), e);
        assert_eq!(mirror(&Diagram::unknot()), Diagram::unknot());
    }

    #[test]
    fn hopf_link() {
        let h = parse_pd(HOPF).unwrap();
        assert_eq!(h.n_components(), 2);
        let lk = linking_number(&h, 0, 1).unwrap();
        assert_eq!(lk.abs(), 1);
        assert_eq!(linking_number(&mirror(&h), 0, 1).unwrap(), -lk);
        assert_eq!(linking_number(&h, 1, 0).unwrap(), lk);
        assert_eq!(linking_number(&Diagram::unlink(2), 0, 1).unwrap(), 0);
        assert_eq!(
            linking_number(&h, 0, 2).unwrap_err().name(),
            "BadComponentIndex"
        );
        assert_eq!(
            linking_number(&h, 1, 1).unwrap_err().name(),
            "BadComponentIndex"
        );
    }

    #[test]
    fn unknot_round_trip() {
        let u = parse_pd("Loop[1]").unwrap();
        assert_eq!(u, Diagram::unknot());
        assert_eq!(u.to_string(), "Loop[1]");
    }

    #[test]
    fn connected_sum_writhe_adds() {
        let r = parse_pd(RIGHT_TREFOIL).unwrap();
        let s = connected_sum(&r, &r).unwrap();
        assert_eq!(s.crossing_count(), 6);
        assert_eq!(s.n_components(), 1);
        assert_eq!(writhe(&s).unwrap(), 6);
        let e = parse_pd(FIGURE_EIGHT).unwrap();
        let s = connected_sum(&r, &mirror(&e)).unwrap();
        assert_eq!(writhe(&s).unwrap(), 3);
        assert_eq!(
            connected_sum(&Diagram::unknot(), &Diagram::unknot()).unwrap(),
            Diagram::unknot()
        );
        assert_eq!(connected_sum(&r, &Diagram::unknot()).unwrap(), r);
        assert_eq!(
            connected_sum(&r, &parse_pd(HOPF).unwrap())
                .unwrap_err()
                .name(),
            "MultiComponent"
        );
    }

    #[test]
    fn malformed_orientation_is_rejected() {
        // under strand 1 -> 3 skips a label
        assert_eq!(
            parse_pd("X[1,4,3,5] X[2,6,4,1] X[5,2,6,3]")
                .unwrap_err()
                .name(),
            "InconsistentOrientation"
        );
    }
}
