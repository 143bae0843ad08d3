//! Input loading shared by the subcommands.

use std::fmt;
use std::io::Read;
use std::path::Path;

use clap::Args;
use satknot::{
    attach_provenance, corpus_knot, parse_pd, CompanionMeta, Diagram, DoubleProvenance, Error,
    GroupPresentation, Layer, LayerWord,
};
use serde_json::Value;

/// Failure of a subcommand: either a domain error (exit 1) or a problem with
/// the invocation itself (exit 2).
pub enum Failure {
    Domain(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Domain(e) => write!(f, "{}: {e}", e.name()),
            Failure::Usage(m) => f.write_str(m),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Args, Debug, Clone, Default)]
pub struct DiagramInput {
    /// PD file to read (`-` for stdin).
    #[arg(long, value_name = "PATH")]
    pub pd: Option<String>,
    /// PD code given inline, e.g. "X[4,2,5,1] X[6,4,1,3] X[2,6,3,5]".
    #[arg(long, value_name = "PD")]
    pub pd_text: Option<String>,
    /// Name of a bundled corpus knot (see `corpus-list`).
    #[arg(long, value_name = "NAME")]
    pub knot: Option<String>,
}

pub fn read_source(path: &str) -> CliResult<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {path}: {e}")))
    }
}

fn json_value(text: &str) -> CliResult<Value> {
    serde_json::from_str(text).map_err(|e| Failure::Domain(Error::BadJson(e.to_string())))
}

/// Parses PD text, or a JSON document with a `pd` field and an optional
/// `provenance` sidecar (as written by `double --out json`).
pub fn diagram_from_text(text: &str) -> CliResult<Diagram> {
    if !text.trim_start().starts_with('{') {
        return Ok(parse_pd(text)?);
    }
    let v = json_value(text)?;
    let pd = v
        .get("pd")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::Domain(Error::BadJson("missing string field \"pd\"".into())))?;
    let d = parse_pd(pd)?;
    match v.get("provenance") {
        Some(p) if !p.is_null() => {
            let prov: DoubleProvenance = serde_json::from_value(p.clone())
                .map_err(|e| Failure::Domain(Error::BadJson(e.to_string())))?;
            Ok(attach_provenance(&d, prov)?)
        }
        _ => Ok(d),
    }
}

impl DiagramInput {
    pub fn given(&self) -> bool {
        self.pd.is_some() || self.pd_text.is_some() || self.knot.is_some()
    }

    pub fn load(&self) -> CliResult<Diagram> {
        let n = [
            self.pd.is_some(),
            self.pd_text.is_some(),
            self.knot.is_some(),
        ]
        .iter()
        .filter(|&&x| x)
        .count();
        if n != 1 {
            return Err(Failure::Usage(
                "give exactly one of --pd, --pd-text, --knot".into(),
            ));
        }
        if let Some(name) = &self.knot {
            return Ok(corpus_knot(name)?.diagram);
        }
        if let Some(text) = &self.pd_text {
            return diagram_from_text(text);
        }
        diagram_from_text(&read_source(self.pd.as_deref().unwrap())?)
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct MetaInput {
    /// Companion metadata JSON file.
    #[arg(long, value_name = "PATH")]
    pub meta: Option<String>,
    /// Declared hyperbolicity of the companion exterior.
    #[arg(long)]
    pub hyperbolic: Option<bool>,
    /// Declared number of hyperbolic JSJ pieces of the companion exterior.
    #[arg(long)]
    pub jsj_pieces: Option<u32>,
    /// Declared tunnel number of the companion.
    #[arg(long)]
    pub tunnel: Option<u32>,
    /// Declared nontriviality of the companion.
    #[arg(long)]
    pub nontrivial: Option<bool>,
}

impl MetaInput {
    /// Metadata from the corpus entry (if any), then a metadata file, then
    /// individual flags, later sources overriding earlier ones.
    pub fn load(&self, knot: Option<&str>) -> CliResult<CompanionMeta> {
        let mut m = match knot {
            Some(name) => corpus_knot(name)?.meta,
            None => CompanionMeta::default(),
        };
        if let Some(path) = &self.meta {
            m = serde_json::from_str(&read_source(path)?)
                .map_err(|e| Failure::Domain(Error::BadJson(e.to_string())))?;
        }
        if self.hyperbolic.is_some() {
            m.is_hyperbolic = self.hyperbolic;
        }
        if self.jsj_pieces.is_some() {
            m.jsj_hyperbolic_pieces = self.jsj_pieces;
        }
        if self.tunnel.is_some() {
            m.tunnel_number = self.tunnel;
        }
        if self.nontrivial.is_some() {
            m.nontrivial = self.nontrivial;
        }
        Ok(m)
    }
}

pub fn load_group(path: &str) -> CliResult<GroupPresentation> {
    let text = read_source(path)?;
    let v = json_value(&text)?;
    // Accept either a bare presentation or an object holding one.
    let inner = v.get("presentation").cloned().unwrap_or(v);
    Ok(GroupPresentation::from_json(&inner.to_string())?)
}

pub fn parse_layers(s: &str) -> CliResult<Vec<Layer>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| {
            Layer::parse(x)
                .ok_or_else(|| Failure::Usage(format!("unknown layer symbol {x:?} (use L or L*)")))
        })
        .collect()
}

pub fn layer_word(preset: Option<&str>, prefix: &str, tail: Option<&str>) -> CliResult<LayerWord> {
    match preset {
        Some("bing") => Ok(LayerWord::bing()),
        Some("sternfeld") => Ok(LayerWord::sternfeld()),
        Some(other) => Err(Failure::Usage(format!(
            "unknown preset {other:?} (use bing or sternfeld)"
        ))),
        None => Ok(LayerWord {
            prefix: parse_layers(prefix)?,
            tail: parse_layers(tail.unwrap_or("L"))?,
        }),
    }
}

/// Word syntax for `--glue`: signed 1-based generator indices separated by
/// commas or spaces; an empty side is the identity.
pub fn parse_word(s: &str) -> CliResult<Vec<i64>> {
    s.split([',', ' '])
        .filter(|x| !x.is_empty())
        .map(|x| {
            x.parse::<i64>()
                .map_err(|_| Failure::Usage(format!("bad word letter {x:?}")))
        })
        .collect()
}

pub fn exists(path: &str) -> bool {
    Path::new(path).exists()
}
