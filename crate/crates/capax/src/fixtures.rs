//! Certificates shipped with the crate, in their on-disk JSON form.

use capax_core::graph::VertexLabel;
use capax_core::independence::is_independent_set;
use capax_core::Graph;
use serde::Deserialize;

use crate::{Error, Result};

pub const INDEPENDENT_SET_G: &str = include_str!("../fixtures/independent_set_g.json");
pub const INDEPENDENT_SET_PRODUCT_PAIRS: &str =
    include_str!("../fixtures/independent_set_product_pairs.json");
pub const INDEPENDENT_SET_PRODUCT: &str = include_str!("../fixtures/independent_set_product.json");
pub const CERTIFICATE_TRANSCRIPTION: &str =
    include_str!("../fixtures/certificate_transcription.json");

/// Reads an independent-set certificate: a JSON array of vertex indices.
pub fn parse_vertex_set(text: &str) -> Result<Vec<usize>> {
    Ok(serde_json::from_str(text)?)
}

pub fn vertex_set_to_json(vertices: &[usize]) -> String {
    serde_json::to_string(vertices).expect("plain integer array")
}

/// Size-4 independent set of the 32-vertex distance-{1,2} graph.
pub fn independent_set_g() -> Vec<usize> {
    parse_vertex_set(INDEPENDENT_SET_G).expect("bundled fixture parses")
}

/// The 20 label pairs `(g, h)` of the product independent set.
pub fn product_pairs() -> Result<Vec<(VertexLabel, VertexLabel)>> {
    let raw: Vec<(String, String)> = serde_json::from_str(INDEPENDENT_SET_PRODUCT_PAIRS)?;
    raw.iter()
        .map(|(a, b)| Ok((parse_label(a)?, parse_label(b)?)))
        .collect()
}

fn parse_label(s: &str) -> Result<VertexLabel> {
    let bits = s
        .chars()
        .map(|c| match c {
            '0' => Ok(0u8),
            '1' => Ok(1u8),
            other => Err(Error::Usage(format!("bad bit {other:?} in label {s:?}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexLabel::from_bits(&bits)?)
}

/// Product indices `g·|V(H)| + h` of label pairs.
pub fn pairs_to_product_indices(
    pairs: &[(VertexLabel, VertexLabel)],
    right_order: usize,
) -> Vec<usize> {
    pairs
        .iter()
        .map(|(g, h)| g.value() as usize * right_order + h.value() as usize)
        .collect()
}

/// The product independent set, mapped from the label-pair fixture.
pub fn independent_set_product() -> Vec<usize> {
    let pairs = product_pairs().expect("bundled fixture parses");
    pairs_to_product_indices(&pairs, 32)
}

#[derive(Clone, Debug, Deserialize)]
pub struct Erratum {
    /// 1-based row.
    pub row: usize,
    /// 1-based column.
    pub col: usize,
    pub printed: i64,
    pub resolved: i64,
    pub reason: String,
}

/// Entry-by-entry transcription of the printed 32×32 certificate matrix,
/// together with the entries whose printed value was corrected.
#[derive(Clone, Debug, Deserialize)]
pub struct Transcription {
    pub matrix: Vec<Vec<i64>>,
    pub errata: Vec<Erratum>,
}

impl Transcription {
    pub fn bundled() -> Self {
        serde_json::from_str(CERTIFICATE_TRANSCRIPTION).expect("bundled fixture parses")
    }

    pub fn corrected(&self) -> Vec<Vec<i64>> {
        let mut m = self.matrix.clone();
        for e in &self.errata {
            m[e.row - 1][e.col - 1] = e.resolved;
        }
        m
    }
}

/// Checks a vertex-set certificate against `g`, naming the first conflict.
pub fn check_independent(g: &Graph, set: &[usize]) -> Result<bool> {
    Ok(is_independent_set(g, set)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use capax_core::graph::{hamming_graph, strong_product};

    #[test]
    fn small_set_fixture() {
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let s = independent_set_g();
        assert_eq!(s, vec![18, 14, 1, 29]);
        assert!(check_independent(&g, &s).unwrap());
    }

    #[test]
    fn product_fixture_forms_agree() {
        let from_pairs = independent_set_product();
        let direct = parse_vertex_set(INDEPENDENT_SET_PRODUCT).unwrap();
        assert_eq!(from_pairs, direct);
        assert_eq!(from_pairs.len(), 20);
        // first pair ((1,1,0,0,0),(1,1,1,1,1)) = (24, 31)
        assert_eq!(from_pairs[0], 24 * 32 + 31);
        let g = hamming_graph(5, &[1, 2]).unwrap();
        let p = strong_product(&g, &g).unwrap();
        assert!(check_independent(&p, &from_pairs).unwrap());
    }

    #[test]
    fn transcription_shape() {
        let t = Transcription::bundled();
        assert_eq!(t.matrix.len(), 32);
        assert!(t.matrix.iter().all(|r| r.len() == 32));
        assert_eq!(t.errata.len(), 1);
        let c = t.corrected();
        for i in 0..32 {
            for j in 0..32 {
                assert_eq!(c[i][j], c[j][i]);
            }
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!(parse_label("10010").unwrap().value(), 18);
        assert!(parse_label("10a10").is_err());
    }
}
