//! Whitehead doubles, twist knots and the `K_l` family.
//!
//! A double is drawn as the blackboard 2-parallel of the companion with a
//! tangle spliced into the parallel pair on edge 1 of the companion. Reading
//! along the companion's orientation the tangle holds, in order: an optional
//! axis belt (used only for the twisted Whitehead link), the compensating
//! full twists, and the clasp.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::diagram::{connected_sum, parse_pd, writhe, Diagram};
use crate::error::{Error, Result};
use crate::planar::{port, Builder, Port, UnderPair};

/// Provenance carried by every doubled diagram, serialized as the JSON
/// sidecar of a doubled PD file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DoubleProvenance {
    pub companion_pd: String,
    pub companion_hash: String,
    pub companion_writhe: i64,
    pub tau: i64,
    pub clasp_sign: i8,
    /// Signed number of compensating full twists (`tau - writhe`).
    pub full_twists: i64,
    /// 0-based indices of the two clasp crossings in the PD list.
    pub clasp_crossings: [usize; 2],
    /// 0-based indices of the twist-box crossings in the PD list.
    pub twist_crossings: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TangleBox {
    Belt,
    Twists(i64),
    Clasp(i8),
}

/// Crossings and hint junctions created for the tangle, in builder node ids.
#[derive(Default)]
struct TangleNodes {
    clasp: Vec<usize>,
    twists: Vec<usize>,
    belt_junction: Option<usize>,
}

fn add_box(
    b: &mut Builder,
    kind: TangleBox,
    cur: (Port, Port),
    nodes: &mut TangleNodes,
) -> (Port, Port) {
    let (l, r) = cur;
    match kind {
        TangleBox::Twists(f) => {
            // Half-twist crossing slots, counterclockwise: SE, NE, NW, SW.
            // With both strands running upward the crossing is positive when
            // the SE-NW strand passes under.
            let under = if f > 0 {
                UnderPair::Even
            } else {
                UnderPair::Odd
            };
            let (mut l, mut r) = (l, r);
            for _ in 0..2 * f.unsigned_abs() {
                let c = b.crossing(under);
                nodes.twists.push(c);
                b.connect(l, port(c, 3));
                b.connect(r, port(c, 0));
                l = port(c, 2);
                r = port(c, 1);
            }
            (l, r)
        }
        TangleBox::Clasp(sign) => {
            // Cap through X1 then X2 (west to east); cup dips down through X1
            // and rises through X2. Slots: S, E, N, W.
            // The positive clasp is the one whose twist knots have
            // Alexander polynomial j t^2 + (1 - 2j) t + j.
            let (cap_over_first, cap_under_first) = (UnderPair::Even, UnderPair::Odd);
            let (u1, u2) = if sign > 0 {
                (cap_under_first, cap_over_first)
            } else {
                (cap_over_first, cap_under_first)
            };
            let x1 = b.crossing(u1);
            let x2 = b.crossing(u2);
            nodes.clasp.extend([x1, x2]);
            b.connect(l, port(x1, 3));
            b.connect(port(x1, 1), port(x2, 3));
            b.connect(port(x2, 1), r);
            b.connect(port(x1, 0), port(x2, 0));
            (port(x1, 2), port(x2, 2))
        }
        TangleBox::Belt => {
            // Axis circle around the pair: under both strands below, over both
            // above. Slots: S, E, N, W with the pattern strands vertical.
            let ll = b.crossing(UnderPair::Odd);
            let lr = b.crossing(UnderPair::Odd);
            let ul = b.crossing(UnderPair::Even);
            let ur = b.crossing(UnderPair::Even);
            b.connect(l, port(ll, 0));
            b.connect(port(ll, 2), port(ul, 0));
            b.connect(r, port(lr, 0));
            b.connect(port(lr, 2), port(ur, 0));
            b.connect(port(ll, 1), port(lr, 3));
            b.connect(port(ul, 1), port(ur, 3));
            b.connect(port(lr, 1), port(ur, 1));
            let j = b.junction();
            nodes.belt_junction = Some(j);
            b.connect(port(ll, 3), port(j, 0));
            b.connect(port(j, 1), port(ul, 3));
            (port(ul, 2), port(ur, 2))
        }
    }
}

struct Doubled {
    builder: Builder,
    nodes: TangleNodes,
}

/// Builds the 2-parallel of a knot diagram with `boxes` spliced into edge 1.
/// The two parallel copies are hinted to run along the companion's
/// orientation (left copy first).
fn parallel_with_tangle(d: &Diagram, boxes: &[TangleBox]) -> Doubled {
    let mut b = Builder::new();
    let jl = b.junction();
    let jr = b.junction();
    b.hint(jl);
    b.hint(jr);

    let ends = d.edge_ends();
    let mut copy_ports: Vec<[[Port; 2]; 4]> = Vec::new();
    for (k, _) in d.crossings().iter().enumerate() {
        // Grid crossings: (x, y) = (W,S), (E,S), (W,N), (E,N); slots S,E,N,W.
        let ws = b.crossing(UnderPair::Even);
        let es = b.crossing(UnderPair::Even);
        let wn = b.crossing(UnderPair::Even);
        let en = b.crossing(UnderPair::Even);
        b.connect(port(ws, 2), port(wn, 0));
        b.connect(port(es, 2), port(en, 0));
        b.connect(port(ws, 1), port(es, 3));
        b.connect(port(wn, 1), port(en, 3));
        // Left/right copies seen along each strand's direction of travel.
        let positive = d.signs()[k] > 0;
        let (east_l, east_r) = if positive {
            (port(en, 1), port(es, 1))
        } else {
            (port(es, 1), port(en, 1))
        };
        let (west_l, west_r) = if positive {
            (port(wn, 3), port(ws, 3))
        } else {
            (port(ws, 3), port(wn, 3))
        };
        copy_ports.push([
            [port(ws, 0), port(es, 0)],
            [east_l, east_r],
            [port(wn, 2), port(en, 2)],
            [west_l, west_r],
        ]);
    }
    let mut nodes = TangleNodes::default();
    let mut cur = (port(jl, 1), port(jr, 1));
    for &bx in boxes {
        cur = add_box(&mut b, bx, cur, &mut nodes);
    }
    if d.crossings().is_empty() {
        b.connect(cur.0, port(jl, 0));
        b.connect(cur.1, port(jr, 0));
    } else {
        for (label, e) in &ends {
            let tail = copy_ports[e.tail.0][e.tail.1];
            let head = copy_ports[e.head.0][e.head.1];
            if *label == 1 {
                b.connect(tail[0], port(jl, 0));
                b.connect(tail[1], port(jr, 0));
                b.connect(cur.0, head[0]);
                b.connect(cur.1, head[1]);
            } else {
                b.connect(tail[0], head[0]);
                b.connect(tail[1], head[1]);
            }
        }
    }
    if let Some(j) = nodes.belt_junction {
        b.hint(j);
    }
    Doubled { builder: b, nodes }
}

fn companion_hash(pd: &str) -> String {
    hex::encode(Sha256::digest(pd.as_bytes()))
}

fn check_clasp(clasp_sign: i8) -> Result<()> {
    if clasp_sign == 1 || clasp_sign == -1 {
        Ok(())
    } else {
        Err(Error::BadClaspSign(clasp_sign as i64))
    }
}

/// `tau`-twisted Whitehead double: blackboard double with `tau - writhe(d)`
/// compensating full twists so the twisting number is exactly `tau`.
pub fn whitehead_double(d: &Diagram, tau: i64, clasp_sign: i8) -> Result<Diagram> {
    let w = writhe(d)?;
    check_clasp(clasp_sign)?;
    let f = tau - w;
    let mut boxes = Vec::new();
    if f != 0 {
        boxes.push(TangleBox::Twists(f));
    }
    boxes.push(TangleBox::Clasp(clasp_sign));
    let doubled = parallel_with_tangle(d, &boxes);
    let b = &doubled.builder;
    let clasp = [
        b.crossing_index(doubled.nodes.clasp[0]),
        b.crossing_index(doubled.nodes.clasp[1]),
    ];
    let twist_crossings = doubled
        .nodes
        .twists
        .iter()
        .map(|&n| b.crossing_index(n))
        .collect();
    let companion_pd = d.stripped().to_string();
    let provenance = DoubleProvenance {
        companion_hash: companion_hash(&companion_pd),
        companion_pd,
        companion_writhe: w,
        tau,
        clasp_sign,
        full_twists: f,
        clasp_crossings: clasp,
        twist_crossings,
    };
    Ok(doubled.builder.finish().with_provenance(provenance))
}

/// 2-parallel in the blackboard framing plus a clasp; twisting number is the
/// writhe of `d`.
pub fn blackboard_double(d: &Diagram, clasp_sign: i8) -> Result<Diagram> {
    let w = writhe(d)?;
    whitehead_double(d, w, clasp_sign)
}

/// Twist knot with `j` full twists: the `j`-twisted double of the unknot.
pub fn twist_knot(j: i64) -> Diagram {
    whitehead_double(&Diagram::unknot(), j, 1).expect("unknot is a knot")
}

/// Applies `whitehead_double` once per entry of `taus`, innermost first.
pub fn iterated_double(d: &Diagram, taus: &[i64], clasp_sign: i8) -> Result<Diagram> {
    d.require_knot()?;
    if taus.is_empty() {
        return Err(Error::EmptyTauList);
    }
    let mut cur = d.clone();
    for &tau in taus {
        cur = whitehead_double(&cur, tau, clasp_sign)?;
    }
    Ok(cur)
}

/// Levels above which doubling a companion with at least three crossings
/// gets expensive for the Alexander computation.
pub const DESK_SCALE_LEVELS: usize = 3;

/// True when `iterated_double` with these inputs exceeds the desk-scale guard.
pub fn exceeds_desk_scale(d: &Diagram, levels: usize) -> bool {
    levels > DESK_SCALE_LEVELS && d.crossing_count() >= 3
}

/// Unclasps a doubled diagram into the two-component boundary of the ribbon.
/// Both components run along the companion's orientation, so their linking
/// number is the twisting number.
pub fn unclasp_link(doubled: &Diagram) -> Result<Diagram> {
    let p = doubled.provenance().ok_or(Error::NoClaspMetadata)?;
    let companion = parse_pd(&p.companion_pd)?;
    let mut boxes = Vec::new();
    if p.full_twists != 0 {
        boxes.push(TangleBox::Twists(p.full_twists));
    }
    Ok(parallel_with_tangle(&companion, &boxes).builder.finish())
}

/// Re-attaches a provenance sidecar to a doubled diagram read back from PD
/// text. The double is rebuilt from the recorded companion and must match
/// `d` exactly.
pub fn attach_provenance(d: &Diagram, p: DoubleProvenance) -> Result<Diagram> {
    if companion_hash(&p.companion_pd) != p.companion_hash {
        return Err(Error::NoClaspMetadata);
    }
    let rebuilt = whitehead_double(&parse_pd(&p.companion_pd)?, p.tau, p.clasp_sign)?;
    if rebuilt != *d || rebuilt.provenance() != Some(&p) {
        return Err(Error::NoClaspMetadata);
    }
    Ok(rebuilt)
}

/// Twisted Whitehead link: the `m/2`-twist knot pattern (component 0)
/// together with the axis of the solid torus it lives in (component 1).
pub fn twisted_whitehead_link(m: i64) -> Result<Diagram> {
    if m % 2 != 0 {
        return Err(Error::OddTwist(m));
    }
    let mut boxes = vec![TangleBox::Belt];
    if m != 0 {
        boxes.push(TangleBox::Twists(m / 2));
    }
    boxes.push(TangleBox::Clasp(1));
    let doubled = parallel_with_tangle(&Diagram::unknot(), &boxes);
    Ok(doubled.builder.finish())
}

/// One doubling level of the `K_l` family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    pub m: i64,
    pub companion_writhe: i64,
    pub tau: i64,
    pub crossings: usize,
}

#[derive(Debug, Clone)]
pub struct KFamily {
    pub diagram: Diagram,
    pub tau: i64,
    pub levels: Vec<LevelRecord>,
}

/// `K_1 = TW_{m/2} # K`, `K_l = WD_tau(K_{l-1}) # K` with
/// `tau = m/2 + writhe(K)`.
pub fn k_family(k: &Diagram, m: i64, l: usize) -> Result<KFamily> {
    if m % 2 != 0 {
        return Err(Error::OddTwist(m));
    }
    let w = writhe(k)?;
    if l == 0 {
        return Err(Error::BadL(0));
    }
    let tau = m / 2 + w;
    let mut cur = connected_sum(&twist_knot(m / 2), k)?;
    let mut levels = vec![LevelRecord {
        level: 1,
        m,
        companion_writhe: w,
        tau: m / 2,
        crossings: cur.crossing_count(),
    }];
    for level in 2..=l {
        let doubled = whitehead_double(&cur, tau, 1)?;
        cur = connected_sum(&doubled, k)?;
        levels.push(LevelRecord {
            level,
            m,
            companion_writhe: w,
            tau,
            crossings: cur.crossing_count(),
        });
    }
    Ok(KFamily {
        diagram: cur,
        tau,
        levels,
    })
}
