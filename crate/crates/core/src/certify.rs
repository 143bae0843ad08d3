//! Rank and tunnel-number certificates for iterated Whitehead doubles.
//!
//! Nothing here is computed from geometry. Companion hyperbolicity and
//! tunnel numbers are declared metadata; the certificate is arithmetic on
//! the JSJ layer count that follows from them.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Declared facts about a companion knot. Unknown fields are `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionMeta {
    #[serde(default)]
    pub nontrivial: Option<bool>,
    #[serde(default)]
    pub is_hyperbolic: Option<bool>,
    #[serde(default)]
    pub jsj_hyperbolic_pieces: Option<u32>,
    #[serde(default)]
    pub tunnel_number: Option<u32>,
}

impl CompanionMeta {
    fn is_trivial(&self) -> bool {
        self.nontrivial == Some(false) || self.tunnel_number == Some(0)
    }

    fn check(&self) -> Result<()> {
        if self.tunnel_number == Some(0) && self.nontrivial == Some(true) {
            return Err(Error::InconsistentMeta(
                "tunnel number 0 for a nontrivial knot".into(),
            ));
        }
        if self.is_trivial()
            && (self.is_hyperbolic == Some(true)
                || self.jsj_hyperbolic_pieces.is_some_and(|h| h > 0))
        {
            return Err(Error::InconsistentMeta(
                "the unknot has no hyperbolic pieces".into(),
            ));
        }
        if self.is_hyperbolic == Some(true) && self.jsj_hyperbolic_pieces.is_some_and(|h| h != 1) {
            return Err(Error::InconsistentMeta(
                "a hyperbolic exterior is a single JSJ piece".into(),
            ));
        }
        Ok(())
    }

    /// Hyperbolic JSJ pieces of the companion exterior, counted conservatively.
    fn hyperbolic_pieces(&self) -> u32 {
        match (self.is_hyperbolic, self.jsj_hyperbolic_pieces) {
            (Some(true), _) => 1,
            (_, Some(h)) => h,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Piece {
    /// Complement of the Whitehead pattern between two consecutive tori.
    HyperbolicWhiteheadComplement { level: usize },
    /// Exterior of the companion.
    CompanionExterior { hyperbolic_pieces: u32, known: bool },
    /// Exterior of a trivial companion (a solid torus).
    TrivialCompanion,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerStructure {
    pub n: usize,
    pub layers: Vec<Piece>,
}

impl LayerStructure {
    pub fn hyperbolic_count(&self) -> u32 {
        self.layers
            .iter()
            .map(|p| match p {
                Piece::HyperbolicWhiteheadComplement { .. } => 1,
                Piece::CompanionExterior {
                    hyperbolic_pieces, ..
                } => *hyperbolic_pieces,
                Piece::TrivialCompanion => 0,
            })
            .sum()
    }

    fn trivial_companion(&self) -> bool {
        self.layers
            .iter()
            .any(|p| matches!(p, Piece::TrivialCompanion))
    }
}

/// JSJ bookkeeping for the `n`-fold double: `n` Whitehead-complement pieces
/// bounded by the nested tori, then the companion exterior.
pub fn layer_structure(meta: &CompanionMeta, n: i64) -> Result<LayerStructure> {
    if n < 1 {
        return Err(Error::BadN(n));
    }
    meta.check()?;
    let n = n as usize;
    let mut layers: Vec<Piece> = (1..=n)
        .map(|level| Piece::HyperbolicWhiteheadComplement { level })
        .collect();
    layers.push(if meta.is_trivial() {
        Piece::TrivialCompanion
    } else {
        Piece::CompanionExterior {
            hyperbolic_pieces: meta.hyperbolic_pieces(),
            known: meta.is_hyperbolic.is_some() || meta.jsj_hyperbolic_pieces.is_some(),
        }
    });
    Ok(LayerStructure { n, layers })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TunnelBounds {
    pub lower: u64,
    pub upper: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankCertificate {
    pub n: usize,
    pub lower: u64,
    pub upper: Option<u64>,
    pub exact: Option<u64>,
    pub tunnel: TunnelBounds,
    pub provenance: Vec<String>,
}

impl RankCertificate {
    pub fn tunnel_lower(&self) -> u64 {
        self.tunnel.lower
    }

    pub fn tunnel_upper(&self) -> Option<u64> {
        self.tunnel.upper
    }
}

pub fn rank_certificate(ls: &LayerStructure, meta: &CompanionMeta) -> Result<RankCertificate> {
    meta.check()?;
    let n = ls.n as u64;
    let mut prov = Vec::new();
    let lower = if ls.trivial_companion() {
        prov.push(
            "lower: trivial bound 1; the companion is the unknot, so the doubled knots need not be \
             nontrivial and the JSJ rank bound does not apply"
                .to_string(),
        );
        1
    } else {
        let h = ls.hyperbolic_count() as u64;
        prov.push(format!(
            "lower: rank >= (hyperbolic JSJ pieces) + 1 = {h} + 1, from {n} Whitehead-pattern complements \
             (the nested tori are incompressible and each difference is hyperbolic) plus {} from the \
             companion exterior; Dehn filling and Weidmann's bound on rank via JSJ pieces",
            h - n
        ));
        h + 1
    };
    let t = meta.tunnel_number.map(u64::from);
    let upper = t.map(|t| {
        prov.push(format!(
            "upper: rank <= tunnel number + 1 <= n + 1 + t(K) = {} (adding n tunnels, one per doubling level)",
            n + 1 + t
        ));
        n + 1 + t
    });
    let tunnel_lower = if ls.trivial_companion() { 0 } else { n };
    prov.push(if ls.trivial_companion() {
        "tunnel lower: trivial bound 0 for a trivial companion".to_string()
    } else {
        format!("tunnel lower: tunnel number >= rank - 1 >= {n}")
    });
    let tunnel_upper = t.map(|t| {
        prov.push(format!(
            "tunnel upper: t(WD^n(K)) <= t(K) + n + 1 = {}",
            t + n + 1
        ));
        t + n + 1
    });
    let exact = (meta.is_hyperbolic == Some(true) && t == Some(1)).then(|| {
        prov.push(format!(
            "exact: hyperbolic tunnel-one companion, so lower = upper and Heegaard genus = rank = n + 2 = {}",
            n + 2
        ));
        n + 2
    });
    if let Some(u) = upper {
        if lower > u {
            return Err(Error::InconsistentMeta(format!(
                "certified lower bound {lower} exceeds the tunnel-number upper bound {u}"
            )));
        }
    }
    Ok(RankCertificate {
        n: ls.n,
        lower,
        upper,
        exact,
        tunnel: TunnelBounds {
            lower: tunnel_lower,
            upper: tunnel_upper,
        },
        provenance: prov,
    })
}

/// Certificate for `WD^n(K)`; `n = 0` is the knot itself with the trivial
/// bound 1.
pub fn certify_rank(meta: &CompanionMeta, n: i64) -> Result<RankCertificate> {
    meta.check()?;
    if n == 0 {
        let upper = meta.tunnel_number.map(|t| u64::from(t) + 1);
        let mut provenance = vec!["lower: trivial bound 1 (n = 0, WD^0(K) = K)".to_string()];
        if let Some(u) = upper {
            provenance.push(format!("upper: rank <= t(K) + 1 = {u}"));
        }
        return Ok(RankCertificate {
            n: 0,
            lower: 1,
            upper,
            exact: None,
            tunnel: TunnelBounds {
                lower: 0,
                upper: meta.tunnel_number.map(u64::from),
            },
            provenance,
        });
    }
    let ls = layer_structure(meta, n)?;
    rank_certificate(&ls, meta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioRow {
    pub n: usize,
    pub lower: BigRational,
    pub upper: BigRational,
}

impl RatioRow {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }
}

impl Serialize for RatioRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use num_traits::ToPrimitive;
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RatioRow", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("lower", &self.lower.to_string())?;
        st.serialize_field("upper", &self.upper.to_string())?;
        st.serialize_field("width", &self.width().to_string())?;
        st.serialize_field("lower_approx", &self.lower.to_f64())?;
        st.serialize_field("upper_approx", &self.upper.to_f64())?;
        st.serialize_field("width_approx", &self.width().to_f64())?;
        st.end()
    }
}

/// Rows `n = 0..=n_max` of `(lower / (n + 1), upper / (n + 1))` in exact
/// rationals.
pub fn ratio_table(meta: &CompanionMeta, n_max: usize) -> Result<Vec<RatioRow>> {
    if meta.tunnel_number.is_none() {
        return Err(Error::InconsistentMeta(
            "ratio table needs a declared tunnel number".into(),
        ));
    }
    (0..=n_max)
        .map(|n| {
            let c = certify_rank(meta, n as i64)?;
            let d = BigInt::from(n + 1);
            Ok(RatioRow {
                n,
                lower: BigRational::new(BigInt::from(c.lower), d.clone()),
                upper: BigRational::new(
                    BigInt::from(c.upper.expect("tunnel number is declared")),
                    d,
                ),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlBound {
    pub l: usize,
    pub bound: u64,
    pub provenance: String,
}

/// Rank lower bound `l + 1` for the `l`-th knot of the family.
pub fn kl_bound(l: i64) -> Result<KlBound> {
    if l < 1 {
        return Err(Error::BadL(l));
    }
    Ok(KlBound {
        l: l as usize,
        bound: l as u64 + 1,
        provenance: format!(
            "r(K_{l}) >= {}: K_{l} carries {} Whitehead doubling layer(s) over the nontrivial knot \
             K_1 = TW_(m/2) # K with r(K_1) >= 2, and each layer raises the rank bound by one",
            l + 1,
            l - 1
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn meta(h: Option<bool>, t: Option<u32>) -> CompanionMeta {
        CompanionMeta {
            nontrivial: Some(true),
            is_hyperbolic: h,
            jsj_hyperbolic_pieces: None,
            tunnel_number: t,
        }
    }

    #[test]
    fn spec_examples() {
        let c = certify_rank(&meta(Some(false), Some(1)), 5).unwrap();
        assert_eq!((c.lower, c.upper, c.exact), (6, Some(7), None));
        let c = certify_rank(&meta(Some(true), Some(1)), 5).unwrap();
        assert_eq!((c.lower, c.upper, c.exact), (7, Some(7), Some(7)));
        let c = certify_rank(&meta(None, None), 1).unwrap();
        assert_eq!((c.lower, c.upper, c.tunnel.lower), (2, None, 1));
    }

    #[test]
    fn layer_counts() {
        assert_eq!(
            layer_structure(&meta(None, None), 3)
                .unwrap()
                .hyperbolic_count(),
            3
        );
        assert_eq!(
            layer_structure(&meta(Some(true), None), 3)
                .unwrap()
                .hyperbolic_count(),
            4
        );
        let two = CompanionMeta {
            jsj_hyperbolic_pieces: Some(2),
            ..Default::default()
        };
        assert_eq!(layer_structure(&two, 1).unwrap().hyperbolic_count(), 3);
        assert_eq!(layer_structure(&two, 0).unwrap_err(), Error::BadN(0));
    }

    #[test]
    fn inconsistent_metadata() {
        let bad = CompanionMeta {
            nontrivial: Some(true),
            tunnel_number: Some(0),
            ..Default::default()
        };
        assert_eq!(
            certify_rank(&bad, 2).unwrap_err().name(),
            "InconsistentMeta"
        );
        let bad = CompanionMeta {
            is_hyperbolic: Some(true),
            jsj_hyperbolic_pieces: Some(3),
            ..Default::default()
        };
        assert_eq!(
            certify_rank(&bad, 2).unwrap_err().name(),
            "InconsistentMeta"
        );
        let bad = CompanionMeta {
            jsj_hyperbolic_pieces: Some(2),
            tunnel_number: Some(1),
            ..Default::default()
        };
        assert_eq!(
            certify_rank(&bad, 2).unwrap_err().name(),
            "InconsistentMeta"
        );
    }

    #[test]
    fn ratio_rows() {
        let rows = ratio_table(&meta(None, Some(1)), 99).unwrap();
        let r9 = &rows[9];
        assert_eq!(r9.lower, BigRational::from_integer(1.into()));
        assert_eq!(r9.upper, BigRational::new(11.into(), 10.into()));
        assert_eq!(rows[99].upper, BigRational::new(101.into(), 100.into()));
        assert_eq!(rows[0].lower, BigRational::from_integer(1.into()));
        assert!(ratio_table(&meta(None, None), 3).is_err());
    }

    #[test]
    fn kl_bounds() {
        assert_eq!(kl_bound(1).unwrap().bound, 2);
        assert_eq!(kl_bound(10).unwrap().bound, 11);
        assert_eq!(kl_bound(0).unwrap_err(), Error::BadL(0));
    }
}
