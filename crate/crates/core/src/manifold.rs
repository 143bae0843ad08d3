//! Symbolic model of the contractible open manifolds `W(K, m)` and their
//! variants with `L*` layers, with the invariant-based classifier and the
//! nonembeddability report.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::alexander::alexander_from_diagram;
use crate::certify::kl_bound;
use crate::diagram::{parse_pd, writhe, Diagram};
use crate::error::{Error, Result};
use crate::poly::{divides, twist_quadratic, LaurentPoly};
use crate::satellite::k_family;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Layer {
    /// A copy of `L_l`: Whitehead pattern with `m` half-twists summed with `K`.
    #[serde(rename = "L")]
    L,
    /// The bare Whitehead-link layer.
    #[serde(rename = "L*")]
    LStar,
}

impl Layer {
    pub fn symbol(self) -> &'static str {
        match self {
            Layer::L => "L",
            Layer::LStar => "L*",
        }
    }

    pub fn parse(s: &str) -> Option<Layer> {
        match s {
            "L" => Some(Layer::L),
            "L*" => Some(Layer::LStar),
            _ => None,
        }
    }
}

/// Eventually periodic layer word `prefix tail tail tail ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerWord {
    pub prefix: Vec<Layer>,
    pub tail: Vec<Layer>,
}

impl LayerWord {
    pub fn bing() -> Self {
        LayerWord {
            prefix: Vec::new(),
            tail: vec![Layer::L],
        }
    }

    pub fn sternfeld() -> Self {
        LayerWord {
            prefix: Vec::new(),
            tail: vec![Layer::L, Layer::LStar],
        }
    }

    /// The `i`-th layer (0-based) of the infinite word.
    pub fn at(&self, i: usize) -> Layer {
        if i < self.prefix.len() {
            self.prefix[i]
        } else {
            self.tail[(i - self.prefix.len()) % self.tail.len()]
        }
    }

    /// Shortest (prefix, tail) describing the same infinite word.
    pub fn canonical(&self) -> LayerWord {
        let n = self.tail.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (0..n).all(|i| self.tail[i] == self.tail[i % p]))
            .unwrap_or(n);
        let mut prefix = self.prefix.clone();
        let mut tail = self.tail[..period].to_vec();
        while prefix.last().is_some_and(|x| Some(x) == tail.last()) {
            prefix.pop();
            tail.rotate_right(1);
        }
        LayerWord { prefix, tail }
    }

    /// Compact text such as `T0* + L + (L + L*)^inf`.
    pub fn describe(&self) -> String {
        let mut s = String::from("T0*");
        for x in &self.prefix {
            let _ = write!(s, " + {}", x.symbol());
        }
        let tail: Vec<&str> = self.tail.iter().map(|x| x.symbol()).collect();
        let _ = write!(s, " + ({})^inf", tail.join(" + "));
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "PascalCase")]
pub enum Warning {
    /// The companion has trivial Alexander polynomial, so it may be unknotted.
    TriviallyUnknottedCompanion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldSpec {
    pub companion: Diagram,
    pub m: i64,
    pub word: LayerWord,
    pub tau: i64,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    pd: String,
    m: i64,
    word: LayerWord,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    tau: Option<i64>,
}

impl Serialize for ManifoldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecJson {
            pd: self.companion.to_string(),
            m: self.m,
            word: self.word.clone(),
            tau: Some(self.tau),
        }
        .serialize(s)
    }
}

impl ManifoldSpec {
    /// Reads `{pd, m, word}` and rebuilds the spec (the `tau` field, if
    /// present, is recomputed rather than trusted).
    pub fn from_json(text: &str) -> Result<(ManifoldSpec, Vec<Warning>)> {
        let raw: SpecJson =
            serde_json::from_str(text).map_err(|e| Error::BadJson(e.to_string()))?;
        build_w(&parse_pd(&raw.pd)?, raw.m, raw.word)
    }
}

/// Validates `W(K, m)` with the given layer word and derives
/// `tau = m/2 + writhe(K)`.
pub fn build_w(k: &Diagram, m: i64, word: LayerWord) -> Result<(ManifoldSpec, Vec<Warning>)> {
    if m % 2 != 0 {
        return Err(Error::OddTwist(m));
    }
    if word.tail.is_empty() {
        return Err(Error::EmptyTail);
    }
    let tau = m / 2 + writhe(k)?;
    let mut warnings = Vec::new();
    if alexander_from_diagram(k)?.is_unit() {
        warnings.push(Warning::TriviallyUnknottedCompanion);
    }
    Ok((
        ManifoldSpec {
            companion: k.clone(),
            m,
            word,
            tau,
        },
        warnings,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Distinct,
    IndistinguishableByInvariants,
    InconclusiveTauZero,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Distinct => "distinct",
            Verdict::IndistinguishableByInvariants => "indistinguishable-by-invariants",
            Verdict::InconclusiveTauZero => "inconclusive-tau-zero",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub reason: String,
    pub alexander: [LaurentPoly; 2],
    pub tau: [i64; 2],
    pub m: [i64; 2],
}

/// Compares two specs by computable invariants only: the companion's
/// Alexander polynomial and the twisting number seen through the
/// divisibility of twist quadratics.
pub fn classify(a: &ManifoldSpec, b: &ManifoldSpec) -> Result<Classification> {
    if a.word.canonical() != b.word.canonical() {
        return Err(Error::WordShapeMismatch);
    }
    let da = alexander_from_diagram(&a.companion)?;
    let db = alexander_from_diagram(&b.companion)?;
    let (verdict, reason) = if !da.eq_up_to_units(&db) {
        (
            Verdict::Distinct,
            format!("companion Alexander polynomials differ: {da} vs {db}"),
        )
    } else if a.tau == 0 || b.tau == 0 {
        (
            Verdict::InconclusiveTauZero,
            "a twisting number is 0, so its twist quadratic is a unit and divisibility carries no information".into(),
        )
    } else {
        let (qa, qb) = (twist_quadratic(a.tau), twist_quadratic(b.tau));
        if divides(&qa, &qb)? && divides(&qb, &qa)? {
            (
                Verdict::IndistinguishableByInvariants,
                format!(
                    "equal companion Alexander polynomials and equal twisting numbers (tau = {})",
                    a.tau
                ),
            )
        } else {
            (
                Verdict::Distinct,
                format!(
                    "twist quadratics {qa} and {qb} do not divide each other (tau = {} vs {})",
                    a.tau, b.tau
                ),
            )
        }
    };
    Ok(Classification {
        verdict,
        reason,
        alexander: [da, db],
        tau: [a.tau, b.tau],
        m: [a.m, b.m],
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectionStep {
    pub l: usize,
    pub target: String,
    pub rank_lower_bound: u64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TauAudit {
    pub m: i64,
    pub companion_writhe: i64,
    pub tau: i64,
    pub levels_checked: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub l: usize,
    pub crossings: usize,
    pub alexander: LaurentPoly,
    pub expected: LaurentPoly,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonembedReport {
    pub spec: ManifoldSpec,
    pub word: String,
    pub chain: Vec<SurjectionStep>,
    pub bounds: Vec<u64>,
    pub strictly_increasing: bool,
    pub tau_audit: TauAudit,
    pub witnesses: Vec<Witness>,
    pub contradiction: String,
    pub verdict: String,
}

/// Builds the certificate that `W` embeds in no compact, locally connected,
/// locally 1-connected metric 3-space: `pi_1(W - T0*)` surjects onto the
/// group of the `l`-layer knot for every `l`, whose rank is at least `l + 1`.
pub fn nonembed_report(spec: &ManifoldSpec, l_max: i64) -> Result<NonembedReport> {
    if l_max < 2 {
        return Err(Error::BadLMax(l_max));
    }
    let l_max = l_max as usize;
    let mut chain = Vec::with_capacity(l_max);
    for l in 1..=l_max {
        let kb = kl_bound(l as i64)?;
        let layers: Vec<&str> = (0..l).map(|i| spec.word.at(i).symbol()).collect();
        chain.push(SurjectionStep {
            l,
            target: format!(
                "pi1(W - T0*) ->> pi1(S^3 - K_{l}), K_{l} from layers {}",
                layers.join(" + ")
            ),
            rank_lower_bound: kb.bound,
            provenance: kb.provenance,
        });
    }
    let bounds: Vec<u64> = chain.iter().map(|s| s.rank_lower_bound).collect();
    let strictly_increasing = bounds.windows(2).all(|w| w[0] < w[1]);

    let w = writhe(&spec.companion)?;
    // Witnesses follow the family K_l, which models consecutive L layers.
    let pure_l = (0..2).take_while(|&i| spec.word.at(i) == Layer::L).count();
    let fam = k_family(&spec.companion, spec.m, pure_l.max(1))?;
    let levels_ok = fam
        .levels
        .iter()
        .skip(1)
        .all(|lv| lv.tau == spec.m / 2 + lv.companion_writhe);
    let tau_audit = TauAudit {
        m: spec.m,
        companion_writhe: w,
        tau: spec.tau,
        levels_checked: fam.levels.len(),
        holds: spec.tau == spec.m / 2 + w && fam.tau == spec.tau && levels_ok,
    };
    let mut witnesses = Vec::new();
    if pure_l >= 1 {
        let dk = alexander_from_diagram(&spec.companion)?;
        let k1 = k_family(&spec.companion, spec.m, 1)?;
        let e1 = (&twist_quadratic(spec.m / 2) * &dk).normalized();
        let a1 = alexander_from_diagram(&k1.diagram)?;
        witnesses.push(Witness {
            l: 1,
            crossings: k1.diagram.crossing_count(),
            matches: a1 == e1,
            alexander: a1,
            expected: e1,
        });
        if pure_l >= 2 {
            let e2 = (&twist_quadratic(spec.tau) * &dk).normalized();
            let a2 = alexander_from_diagram(&fam.diagram)?;
            witnesses.push(Witness {
                l: 2,
                crossings: fam.diagram.crossing_count(),
                matches: a2 == e2,
                alexander: a2,
                expected: e2,
            });
        }
    }
    let contradiction = format!(
        "Suppose W embeds in a compact, locally connected, locally 1-connected metric 3-space X. \
         Lemma: pi1(X) is finitely generated. The same holds for pi1(X - Int T0*), which \
         surjects onto pi1(W - T0*) and hence onto pi1(S^3 - K_l) for every l. A group generated by r \
         elements surjects only onto groups of rank <= r, but r(K_l) >= l + 1 is unbounded ({}, ...). \
         No finite r exists, so W embeds in no such space.",
        bounds.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(", ")
    );
    Ok(NonembedReport {
        spec: spec.clone(),
        word: spec.word.describe(),
        chain,
        bounds,
        strictly_increasing,
        tau_audit,
        witnesses,
        contradiction,
        verdict:
            "nonembeddable in any compact, locally connected, locally 1-connected metric 3-space"
                .into(),
    })
}

impl NonembedReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "Nonembeddability certificate");
        let _ = writeln!(
            s,
            "manifold: W(K, m) with K = {}, m = {}, word {}",
            self.spec.companion, self.spec.m, self.word
        );
        let _ = writeln!(
            s,
            "tau audit: tau = m/2 + writhe(K) = {}/2 + {} = {} ({})",
            self.tau_audit.m,
            self.tau_audit.companion_writhe,
            self.tau_audit.tau,
            if self.tau_audit.holds {
                "holds"
            } else {
                "FAILS"
            }
        );
        let _ = writeln!(s, "surjection chain:");
        for step in &self.chain {
            let _ = writeln!(
                s,
                "  l = {}: {}; rank >= {}",
                step.l, step.target, step.rank_lower_bound
            );
        }
        let b: Vec<String> = self.bounds.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            s,
            "bounds: [{}] strictly increasing: {}",
            b.join(", "),
            self.strictly_increasing
        );
        for w in &self.witnesses {
            let _ = writeln!(
                s,
                "witness: Delta(K_{}) = {} ({} crossings; expected {}, {})",
                w.l,
                w.alexander,
                w.crossings,
                w.expected,
                if w.matches { "match" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(s, "contradiction: {}", self.contradiction);
        let _ = writeln!(s, "verdict: {}", self.verdict);
        s
    }
}
