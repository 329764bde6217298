use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RegularGraph;

/// A total-order key; equal codes mean isomorphic objects.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn from_hex(text: &str) -> Option<Self> {
        if text.len() % 2 != 0 {
            return None;
        }
        (0..text.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(text.get(i..i + 2)?, 16).ok())
            .collect::<Option<Vec<u8>>>()
            .map(CanonicalCode)
    }
}

impl fmt::Debug for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalCode({})", self.to_hex())
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for CanonicalCode {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        CanonicalCode::from_hex(&text).ok_or_else(|| serde::de::Error::custom("invalid hex code"))
    }
}

/// Canonical code of a multigraph.
///
/// The code is `[n, row_0, row_1, ...]` where `row_k = [loops(k), m(k,0), .., m(k,k-1)]`
/// in the new vertex order; the canonical code is the lexicographic minimum over
/// all vertex orders. Local dart positions do not enter the code.
pub fn canonical_form(g: &RegularGraph) -> CanonicalCode {
    canonical_matrix_code(&g.multiplicity_matrix())
}

pub(crate) fn canonical_matrix_code(m: &[Vec<u8>]) -> CanonicalCode {
    let n = m.len();
    let mut search =
        Search { m, order: Vec::with_capacity(n), used: vec![false; n], prefix: vec![n as u8], best: None };
    search.descend();
    CanonicalCode(search.best.expect("at least one ordering"))
}

/// Rebuilds the multiplicity matrix stored in a graph code.
pub(crate) fn matrix_from_code(code: &CanonicalCode) -> Vec<Vec<u8>> {
    let bytes = code.as_bytes();
    let n = bytes[0] as usize;
    let mut m = vec![vec![0u8; n]; n];
    let mut at = 1;
    for k in 0..n {
        m[k][k] = bytes[at];
        at += 1;
        for j in 0..k {
            m[k][j] = bytes[at];
            m[j][k] = bytes[at];
            at += 1;
        }
    }
    m
}

struct Search<'a> {
    m: &'a [Vec<u8>],
    order: Vec<usize>,
    used: Vec<bool>,
    prefix: Vec<u8>,
    best: Option<Vec<u8>>,
}

impl Search<'_> {
    fn descend(&mut self) {
        let n = self.m.len();
        if self.order.len() == n {
            if self.best.as_ref().map_or(true, |best| self.prefix < *best) {
                self.best = Some(self.prefix.clone());
            }
            return;
        }
        for u in 0..n {
            if self.used[u] {
                continue;
            }
            let start = self.prefix.len();
            self.prefix.push(self.m[u][u]);
            for &w in &self.order {
                self.prefix.push(self.m[u][w]);
            }
            let pruned = self.best.as_ref().is_some_and(|best| self.prefix.as_slice() > &best[..self.prefix.len()]);
            if !pruned {
                self.used[u] = true;
                self.order.push(u);
                self.descend();
                self.order.pop();
                self.used[u] = false;
            }
            self.prefix.truncate(start);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k5() -> RegularGraph {
        let mut m = vec![vec![1u8; 5]; 5];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 0;
        }
        RegularGraph::from_multiplicities(&m).unwrap()
    }

    fn doubled_cycle(n: usize) -> RegularGraph {
        let mut m = vec![vec![0u8; n]; n];
        for i in 0..n {
            m[i][(i + 1) % n] = 2;
            m[(i + 1) % n][i] = 2;
        }
        RegularGraph::from_multiplicities(&m).unwrap()
    }

    #[test]
    fn k5_relabelings_share_a_code() {
        let g = k5();
        let relabeled =
            g.relabel(&[3, 0, 4, 1, 2], &[[1, 0, 3, 2], [0, 1, 2, 3], [3, 2, 1, 0], [2, 0, 1, 3], [0, 2, 3, 1]]);
        assert_ne!(g, relabeled);
        assert_eq!(canonical_form(&g), canonical_form(&relabeled));
    }

    #[test]
    fn k5_differs_from_doubled_c5() {
        assert_ne!(canonical_form(&k5()), canonical_form(&doubled_cycle(5)));
    }

    #[test]
    fn code_decodes_to_an_isomorphic_matrix() {
        let g = doubled_cycle(4);
        let code = canonical_form(&g);
        let rebuilt = RegularGraph::from_multiplicities(&matrix_from_code(&code)).unwrap();
        assert_eq!(canonical_form(&rebuilt), code);
    }

    #[test]
    fn hex_round_trip() {
        let code = CanonicalCode(vec![0, 7, 255, 16]);
        assert_eq!(code.to_hex(), "0007ff10");
        assert_eq!(CanonicalCode::from_hex("0007ff10"), Some(code));
        assert_eq!(CanonicalCode::from_hex("0g"), None);
    }
}
