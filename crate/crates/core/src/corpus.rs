//! Bundled small-knot corpus with declared companion metadata.

use serde::{Deserialize, Serialize};

use crate::certify::CompanionMeta;
use crate::diagram::{parse_pd, Diagram};
use crate::error::{Error, Result};

macro_rules! entry {
    ($name:literal) => {
        (
            $name,
            include_str!(concat!("../../../corpus/", $name, ".pd")),
            include_str!(concat!("../../../corpus/", $name, ".meta.json")),
        )
    };
}

const RAW: [(&str, &str, &str); 7] = [
    entry!("unknot"),
    entry!("3_1"),
    entry!("4_1"),
    entry!("5_1"),
    entry!("5_2"),
    entry!("6_1"),
    entry!("7_4"),
];

#[derive(Debug, Clone, Serialize, Deserialize)]
struct MetaFile {
    name: String,
    source: String,
    #[serde(flatten)]
    meta: CompanionMeta,
}

#[derive(Debug, Clone)]
pub struct CorpusKnot {
    pub name: &'static str,
    pub diagram: Diagram,
    pub meta: CompanionMeta,
    pub source: String,
}

pub fn corpus_names() -> Vec<&'static str> {
    RAW.iter().map(|r| r.0).collect()
}

pub fn corpus_knot(name: &str) -> Result<CorpusKnot> {
    let &(name, pd, meta) = RAW
        .iter()
        .find(|r| r.0 == name)
        .ok_or_else(|| Error::UnknownKnot(name.to_string()))?;
    let file: MetaFile = serde_json::from_str(meta).map_err(|e| Error::BadJson(e.to_string()))?;
    Ok(CorpusKnot {
        name,
        diagram: parse_pd(pd)?,
        meta: file.meta,
        source: file.source,
    })
}

pub fn corpus() -> Vec<CorpusKnot> {
    corpus_names()
        .into_iter()
        .map(|n| corpus_knot(n).expect("bundled corpus is valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        let all = corpus();
        assert_eq!(all.len(), 7);
        assert!(all.iter().all(|k| k.diagram.is_knot()));
        assert_eq!(corpus_knot("3_1").unwrap().meta.tunnel_number, Some(1));
        assert_eq!(corpus_knot("8_19").unwrap_err().name(), "UnknownKnot");
    }
}
