//! Finitely presented groups with peripheral systems: Wirtinger presentations,
//! Tietze simplification, abelianization, amalgamation and the layer quotients
//! of the direct-limit manifolds.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::diagram::{writhe, Diagram};
use crate::error::{Error, Result};
use crate::matrix::smith_normal_form;
use crate::satellite::twisted_whitehead_link;

/// A word in the generators: `k > 0` is generator `k - 1`, `-k` its inverse.
pub type Word = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Peripheral {
    pub meridian: Word,
    pub longitude: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    #[serde(default)]
    pub peripheral: Vec<Peripheral>,
}

pub fn invert(w: &[i64]) -> Word {
    w.iter().rev().map(|&x| -x).collect()
}

pub fn free_reduce(w: &[i64]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

pub fn cyclic_reduce(w: &[i64]) -> Word {
    let mut w = free_reduce(w);
    let mut lo = 0;
    let mut hi = w.len();
    while hi - lo >= 2 && w[lo] == -w[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    w.truncate(hi);
    w.drain(..lo);
    w
}

fn power(g: i64, e: i64) -> Word {
    let s = if e >= 0 { g } else { -g };
    vec![s; e.unsigned_abs() as usize]
}

fn shift_word(w: &[i64], by: i64) -> Word {
    w.iter()
        .map(|&x| if x > 0 { x + by } else { x - by })
        .collect()
}

/// Canonical key of a relator up to cyclic rotation and inversion.
fn relator_key(w: &[i64]) -> Word {
    let rotations = |v: &[i64]| -> Word {
        (0..v.len().max(1))
            .map(|i| v[i..].iter().chain(&v[..i]).copied().collect::<Word>())
            .min()
            .unwrap_or_default()
    };
    rotations(w).min(rotations(&invert(w)))
}

impl GroupPresentation {
    /// Validated constructor.
    pub fn new(
        generators: Vec<String>,
        relators: Vec<Word>,
        peripheral: Vec<Peripheral>,
    ) -> Result<Self> {
        let p = GroupPresentation {
            generators,
            relators,
            peripheral,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.generators.len() as i64;
        let words = self.relators.iter().chain(
            self.peripheral
                .iter()
                .flat_map(|p| [&p.meridian, &p.longitude]),
        );
        for w in words {
            check_word(w, n)?;
        }
        Ok(())
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: GroupPresentation =
            serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
        p.validate()?;
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("presentation serializes")
    }

    pub fn format_word(&self, w: &[i64]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let mut out = String::new();
        let mut i = 0;
        while i < w.len() {
            let mut j = i;
            while j < w.len() && w[j] == w[i] {
                j += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            let name = &self.generators[(w[i].unsigned_abs() - 1) as usize];
            let e = (j - i) as i64 * w[i].signum();
            if e == 1 {
                out.push_str(name);
            } else {
                out.push_str(&format!("{name}^{e}"));
            }
            i = j;
        }
        out
    }
}

fn check_word(w: &[i64], n: i64) -> Result<()> {
    match w.iter().find(|&&x| x == 0 || x.abs() > n) {
        Some(&x) => Err(Error::UnknownWordSymbol(x)),
        None => Ok(()),
    }
}

impl fmt::Display for GroupPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "⟨{} | {}⟩", self.generators.join(", "), rels.join(", "))
    }
}

fn union_find_root(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Wirtinger presentation of a link diagram with one peripheral system per
/// component (components with crossings first, then crossingless loops).
pub fn wirtinger_link(d: &Diagram) -> GroupPresentation {
    let c = d.crossing_count();
    let nl = 2 * c;
    // Labels along an over-strand belong to the same arc.
    let mut parent: Vec<usize> = (0..=nl).collect();
    for t in d.crossings() {
        let (a, b) = (
            union_find_root(&mut parent, t[1] as usize),
            union_find_root(&mut parent, t[3] as usize),
        );
        parent[a.max(b)] = a.min(b);
    }
    let mut arc_of_root: BTreeMap<usize, i64> = BTreeMap::new();
    let mut arc = vec![0i64; nl + 1];
    for (l, a) in arc.iter_mut().enumerate().skip(1) {
        let r = union_find_root(&mut parent, l);
        let next = arc_of_root.len() as i64 + 1;
        *a = *arc_of_root.entry(r).or_insert(next);
    }
    let n_arcs = arc_of_root.len();
    let mut generators: Vec<String> = (1..=n_arcs + d.free_loops())
        .map(|i| format!("x{i}"))
        .collect();
    if generators.len() == 1 {
        generators[0] = "x".into();
    }

    let mut relators = Vec::with_capacity(c);
    // Incoming under-edge label -> (over arc, sign).
    let mut under_at: BTreeMap<u32, (i64, i64)> = BTreeMap::new();
    for (k, t) in d.crossings().iter().enumerate() {
        let o = arc[t[1] as usize];
        let e = d.signs()[k] as i64;
        relators.push(vec![e * o, arc[t[0] as usize], -e * o, -arc[t[2] as usize]]);
        under_at.insert(t[0], (o, e));
    }

    let mut peripheral = Vec::new();
    for &(lo, hi) in d.component_ranges() {
        let mer = arc[lo as usize];
        let own: BTreeSet<i64> = (lo..=hi).map(|l| arc[l as usize]).collect();
        let mut w: Word = Vec::new();
        for l in lo..=hi {
            if let Some(&(o, e)) = under_at.get(&l) {
                w.insert(0, e * o);
            }
        }
        let self_exp: i64 = w
            .iter()
            .filter(|x| own.contains(&x.abs()))
            .map(|x| x.signum())
            .sum();
        w.extend(power(mer, -self_exp));
        peripheral.push(Peripheral {
            meridian: vec![mer],
            longitude: free_reduce(&w),
        });
    }
    for i in 0..d.free_loops() {
        peripheral.push(Peripheral {
            meridian: vec![(n_arcs + i + 1) as i64],
            longitude: Vec::new(),
        });
    }
    GroupPresentation {
        generators,
        relators,
        peripheral,
    }
}

/// Wirtinger presentation of a knot diagram.
pub fn wirtinger(d: &Diagram) -> Result<GroupPresentation> {
    d.require_knot()?;
    Ok(wirtinger_link(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TietzeOutcome {
    pub presentation: GroupPresentation,
    pub steps: usize,
    pub budget_exhausted: bool,
}

/// Greedy Tietze simplification: reduce and deduplicate relators, then
/// repeatedly eliminate the lowest-index generator occurring exactly once in
/// some relator (using the shortest such relator), at most `budget` times.
pub fn tietze_simplify(p: &GroupPresentation, budget: usize) -> TietzeOutcome {
    let mut gens = p.generators.clone();
    let mut rels = p.relators.clone();
    let mut per = p.peripheral.clone();
    let mut steps = 0;
    let mut exhausted = false;
    loop {
        let mut seen = BTreeSet::new();
        rels = rels
            .iter()
            .map(|r| cyclic_reduce(r))
            .filter(|r| !r.is_empty() && seen.insert(relator_key(r)))
            .collect();
        for pp in per.iter_mut() {
            pp.meridian = free_reduce(&pp.meridian);
            pp.longitude = free_reduce(&pp.longitude);
        }

        let mut choice: Option<(usize, usize)> = None;
        'gens: for g in 1..=gens.len() as i64 {
            let mut best: Option<usize> = None;
            for (ri, r) in rels.iter().enumerate() {
                if r.iter().filter(|x| x.abs() == g).count() == 1
                    && best.is_none_or(|b| r.len() < rels[b].len())
                {
                    best = Some(ri);
                }
            }
            if let Some(ri) = best {
                choice = Some((g as usize, ri));
                break 'gens;
            }
        }
        let Some((g, ri)) = choice else { break };
        if steps == budget {
            exhausted = true;
            break;
        }
        let r = rels.remove(ri);
        let g = g as i64;
        let pos = r.iter().position(|x| x.abs() == g).unwrap();
        // r rotated = g^e v, so g^e = v^-1.
        let v: Word = r[pos + 1..].iter().chain(&r[..pos]).copied().collect();
        let image = if r[pos] > 0 { invert(&v) } else { v };
        // `image` is written in the old numbering.
        let renum = |w: &[i64]| -> Word {
            w.iter()
                .map(|&x| if x.abs() > g { x - x.signum() } else { x })
                .collect()
        };
        let image_new = renum(&image);
        let subst_new = |w: &[i64]| -> Word {
            let mut out = Vec::with_capacity(w.len());
            for &x in w {
                if x == g {
                    out.extend(&image_new);
                } else if x == -g {
                    out.extend(invert(&image_new));
                } else if x.abs() > g {
                    out.push(x - x.signum());
                } else {
                    out.push(x);
                }
            }
            free_reduce(&out)
        };
        rels = rels.iter().map(|w| subst_new(w)).collect();
        for pp in per.iter_mut() {
            pp.meridian = subst_new(&pp.meridian);
            pp.longitude = subst_new(&pp.longitude);
        }
        gens.remove((g - 1) as usize);
        steps += 1;
    }
    TietzeOutcome {
        presentation: GroupPresentation {
            generators: gens,
            relators: rels,
            peripheral: per,
        },
        steps,
        budget_exhausted: exhausted,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Abelianization {
    pub free_rank: usize,
    #[serde(serialize_with = "ser_bigints")]
    pub torsion: Vec<BigInt>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_i64() {
            Some(i) => seq.serialize_element(&i)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl Abelianization {
    pub fn is_infinite_cyclic(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

fn exponent_matrix(p: &GroupPresentation) -> Vec<Vec<BigInt>> {
    p.relators
        .iter()
        .map(|r| {
            let mut row = vec![BigInt::zero(); p.generators.len()];
            for &x in r {
                row[(x.unsigned_abs() - 1) as usize] += x.signum();
            }
            row
        })
        .collect()
}

pub fn abelianization(p: &GroupPresentation) -> Abelianization {
    let s = smith_normal_form(exponent_matrix(p), p.generators.len());
    Abelianization {
        free_rank: p.generators.len() - s.rank(),
        torsion: s.diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
    }
}

/// The surjection onto `Z = <t>` for a group with infinite cyclic
/// abelianization, as the exponent of `t` for each generator. Oriented so the
/// first peripheral meridian maps to `t`.
pub fn abelianization_map(p: &GroupPresentation) -> Result<Vec<i64>> {
    let ab = abelianization(p);
    if !ab.is_infinite_cyclic() {
        return Err(Error::NotInfiniteCyclicH1 {
            free_rank: ab.free_rank,
            torsion: ab.torsion.iter().map(|t| t.to_string()).collect(),
        });
    }
    let s = smith_normal_form(exponent_matrix(p), p.generators.len());
    let col = s.rank();
    let mut images: Vec<i64> = (0..p.generators.len())
        .map(|j| {
            s.v[j][col]
                .to_i64()
                .expect("abelianization image fits in i64")
        })
        .collect();
    let orient = match p.peripheral.first() {
        Some(pp) => pp
            .meridian
            .iter()
            .map(|&x| x.signum() * images[(x.unsigned_abs() - 1) as usize])
            .sum(),
        None => images.iter().copied().find(|&e| e != 0).unwrap_or(1),
    };
    if orient < 0 {
        for e in images.iter_mut() {
            *e = -*e;
        }
    }
    Ok(images)
}

/// Free product of `p1` and `p2` with one relator `u v^-1` per gluing pair.
/// Generators of `p2` are renumbered after those of `p1`; peripheral systems
/// of both factors are kept in order.
pub fn amalgamated_product(
    p1: &GroupPresentation,
    p2: &GroupPresentation,
    gluing: &[(Word, Word)],
) -> Result<GroupPresentation> {
    p1.validate()?;
    p2.validate()?;
    let n1 = p1.generators.len() as i64;
    let n2 = p2.generators.len() as i64;
    for (u, v) in gluing {
        check_word(u, n1)?;
        check_word(v, n2)?;
    }
    let names1: BTreeSet<&String> = p1.generators.iter().collect();
    let mut generators = p1.generators.clone();
    for g in &p2.generators {
        generators.push(if names1.contains(g) {
            format!("{g}'")
        } else {
            g.clone()
        });
    }
    let mut relators = p1.relators.clone();
    relators.extend(p2.relators.iter().map(|r| shift_word(r, n1)));
    for (u, v) in gluing {
        let mut r = u.clone();
        r.extend(invert(&shift_word(v, n1)));
        relators.push(free_reduce(&r));
    }
    let mut peripheral = p1.peripheral.clone();
    peripheral.extend(p2.peripheral.iter().map(|pp| Peripheral {
        meridian: shift_word(&pp.meridian, n1),
        longitude: shift_word(&pp.longitude, n1),
    }));
    Ok(GroupPresentation {
        generators,
        relators,
        peripheral,
    })
}

/// Sign relating the Dehn-twist framing of the layer gluing to the writhe of
/// the summand diagram.
const FRAMING_SIGN: i64 = 1;

/// Budget used to shrink each intermediate layer presentation.
const LAYER_TIETZE_BUDGET: usize = 10_000;

/// The complement of `P # K` inside the solid torus, where `P` is the
/// pattern of the Whitehead link with `m` half-twists. Peripheral systems:
/// `[inner cusp (the knot), outer cusp (the axis)]`.
fn layer_group(k: &GroupPresentation, wl: &GroupPresentation) -> Result<GroupPresentation> {
    let pat = &wl.peripheral[0];
    let axis = &wl.peripheral[1];
    let kp = &k.peripheral[0];
    let mut g = amalgamated_product(wl, k, &[(pat.meridian.clone(), kp.meridian.clone())])?;
    let n1 = wl.generators.len() as i64;
    let mut lon = pat.longitude.clone();
    lon.extend(shift_word(&kp.longitude, n1));
    g.peripheral = vec![
        Peripheral {
            meridian: pat.meridian.clone(),
            longitude: free_reduce(&lon),
        },
        axis.clone(),
    ];
    Ok(g)
}

/// Presentation of `pi_1(S^3 - K_l)` assembled from `l` layer groups (each
/// the Whitehead-link group with `m` half-twists amalgamated with the group
/// of `k`), glued cusp to cusp with framing `writhe(k)`, and capped by
/// killing the outermost axis meridian. The peripheral system of the result
/// is that of `K_l`.
pub fn layer_quotient(k: &Diagram, m: i64, l: usize) -> Result<GroupPresentation> {
    k.require_knot()?;
    if m % 2 != 0 {
        return Err(Error::OddTwist(m));
    }
    if l == 0 {
        return Err(Error::BadL(0));
    }
    let f = FRAMING_SIGN * writhe(k)?;
    let kg = wirtinger(k)?;
    let wl = wirtinger_link(&twisted_whitehead_link(m)?);
    let layer = layer_group(&kg, &wl)?;

    // Build from the outside in: `acc` is the complement of K_j, whose
    // peripheral system is the inner cusp of the newest layer.
    let cap = GroupPresentation {
        generators: vec!["c".into()],
        relators: Vec::new(),
        peripheral: Vec::new(),
    };
    let outer = &layer.peripheral[1];
    let mut acc = amalgamated_product(
        &layer,
        &cap,
        &[
            (outer.meridian.clone(), vec![]),
            (outer.longitude.clone(), vec![1]),
        ],
    )?;
    acc.peripheral.truncate(1);
    acc = tietze_simplify(&acc, LAYER_TIETZE_BUDGET).presentation;

    for _ in 1..l {
        let inner = acc.peripheral[0].clone();
        let mut framed = inner.longitude.clone();
        framed.extend(power_word(&inner.meridian, f));
        let outer = &layer.peripheral[1];
        let mut next = amalgamated_product(
            &layer,
            &acc,
            &[
                (outer.meridian.clone(), framed),
                (outer.longitude.clone(), inner.meridian.clone()),
            ],
        )?;
        next.peripheral.truncate(1);
        acc = tietze_simplify(&next, LAYER_TIETZE_BUDGET).presentation;
    }
    let names = (1..=acc.generators.len())
        .map(|i| format!("g{i}"))
        .collect();
    acc.generators = names;
    Ok(acc)
}

fn power_word(w: &[i64], e: i64) -> Word {
    let base = if e >= 0 { w.to_vec() } else { invert(w) };
    let mut out = Vec::new();
    for _ in 0..e.unsigned_abs() {
        out.extend(&base);
    }
    out
}

/// Greatest common divisor of the images, used to test surjectivity.
pub fn images_gcd(images: &[i64]) -> i64 {
    images.iter().fold(0i64, |g, &e| g.gcd(&e.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_pd;
    use crate::satellite::{twist_knot, whitehead_double};

    const TREFOIL: &str = "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]";

    #[test]
    fn trefoil_wirtinger_shape() {
        let p = wirtinger(&parse_pd(TREFOIL).unwrap()).unwrap();
        assert_eq!(p.generators.len(), 3);
        assert_eq!(p.relators.len(), 3);
        assert!(p.relators.iter().all(|r| r.len() == 4));
        assert!(abelianization(&p).is_infinite_cyclic());
        let lon = &p.peripheral[0].longitude;
        assert_eq!(lon.iter().map(|x| x.signum()).sum::<i64>(), 0);
    }

    #[test]
    fn unknot_group() {
        let p = wirtinger(&Diagram::unknot()).unwrap();
        assert_eq!(p.to_string(), "⟨x | ⟩");
        assert!(p.peripheral[0].longitude.is_empty());
    }

    #[test]
    fn reductions() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert_eq!(relator_key(&[2, 1]), relator_key(&[-1, -2]));
    }

    #[test]
    fn tietze_small_cases() {
        let p =
            GroupPresentation::new(vec!["x".into(), "y".into()], vec![vec![2]], vec![]).unwrap();
        let out = tietze_simplify(&p, 10);
        assert_eq!(out.presentation.to_string(), "⟨x | ⟩");
        let tre = wirtinger(&parse_pd(TREFOIL).unwrap()).unwrap();
        let out = tietze_simplify(&tre, 100);
        assert_eq!(out.presentation.generators.len(), 2);
        assert!(!out.budget_exhausted);
        let out = tietze_simplify(&tre, 0);
        assert_eq!(out.presentation.generators.len(), 3);
        assert!(out.budget_exhausted);
    }

    #[test]
    fn abelianization_examples() {
        let p = GroupPresentation::new(
            vec!["x".into(), "y".into()],
            vec![vec![1, 1], vec![2, 2, 2]],
            vec![],
        )
        .unwrap();
        let ab = abelianization(&p);
        assert_eq!(ab.free_rank, 0);
        assert_eq!(ab.torsion, vec![BigInt::from(6)]);
        let wl = wirtinger_link(&twisted_whitehead_link(0).unwrap());
        assert_eq!(
            abelianization(&wl),
            Abelianization {
                free_rank: 2,
                torsion: vec![]
            }
        );
    }

    #[test]
    fn unknown_symbols_are_rejected() {
        let p = GroupPresentation::new(vec!["x".into()], vec![vec![2]], vec![]);
        assert_eq!(p.unwrap_err(), Error::UnknownWordSymbol(2));
        let x = GroupPresentation::new(vec!["x".into()], vec![], vec![]).unwrap();
        assert_eq!(
            amalgamated_product(&x, &x, &[(vec![1], vec![-3])]).unwrap_err(),
            Error::UnknownWordSymbol(-3)
        );
    }

    #[test]
    fn amalgam_of_trefoil_and_whitehead_link() {
        let tre = wirtinger(&parse_pd(TREFOIL).unwrap()).unwrap();
        let wl = wirtinger_link(&twisted_whitehead_link(0).unwrap());
        let axis = &wl.peripheral[1];
        let kp = &tre.peripheral[0];
        let along = |a: &Word, b: &Word, c: &Word, d: &Word| {
            amalgamated_product(&wl, &tre, &[(a.clone(), b.clone()), (c.clone(), d.clone())])
                .unwrap()
        };
        let parallel = along(&axis.meridian, &kp.meridian, &axis.longitude, &kp.longitude);
        assert_eq!(
            abelianization(&parallel),
            Abelianization {
                free_rank: 2,
                torsion: vec![]
            }
        );
        let satellite = along(&axis.meridian, &kp.longitude, &axis.longitude, &kp.meridian);
        assert!(abelianization(&satellite).is_infinite_cyclic());
        let free = amalgamated_product(&tre, &tre, &[]).unwrap();
        assert_eq!(free.generators.len(), 6);
        assert_eq!(abelianization(&free).free_rank, 2);
    }

    #[test]
    fn abelianization_map_of_knot_groups() {
        for d in [
            parse_pd(TREFOIL).unwrap(),
            twist_knot(-2),
            whitehead_double(&parse_pd(TREFOIL).unwrap(), 1, 1).unwrap(),
        ] {
            let p = wirtinger(&d).unwrap();
            let map = abelianization_map(&p).unwrap();
            assert!(map.iter().all(|&e| e == 1), "{map:?}");
        }
    }
}
