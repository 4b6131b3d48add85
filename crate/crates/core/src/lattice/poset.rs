use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// A finite strict partial order on labelled elements. The relation is
/// transitively closed on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinPoset {
    elements: Vec<String>,
    lt: Vec<Vec<bool>>,
}

/// On-disk poset format: `{"elements": [...], "lt": [[a, b], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PosetDoc {
    pub elements: Vec<Value>,
    #[serde(default)]
    pub lt: Vec<(Value, Value)>,
}

fn scalar_label(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Bool(b) => Ok(b.to_string()),
        other => Err(Error::InvalidInput(format!("poset element must be a scalar, got {other}"))),
    }
}

impl FinPoset {
    /// Builds the poset from `a < b` pairs given as element indices.
    pub fn new(elements: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = elements.len();
        let mut seen = std::collections::BTreeSet::new();
        for e in &elements {
            if !seen.insert(e) {
                return Err(Error::InvalidInput(format!("duplicate poset element {e:?}")));
            }
        }
        let mut lt = vec![vec![false; n]; n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidInput(format!("pair ({a}, {b}) out of range")));
            }
            lt[a][b] = true;
        }
        // Warshall closure.
        for k in 0..n {
            for i in 0..n {
                if lt[i][k] {
                    for j in 0..n {
                        if lt[k][j] {
                            lt[i][j] = true;
                        }
                    }
                }
            }
        }
        if (0..n).any(|i| lt[i][i]) {
            return Err(Error::InvalidInput("order relation contains a cycle".into()));
        }
        Ok(FinPoset { elements, lt })
    }

    /// The discrete order on `n` points labelled `p0, p1, ...`.
    pub fn antichain(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("p{i}")).collect(), &[]).expect("antichain is valid")
    }

    /// The total order `p0 < p1 < ... < p(n-1)`.
    pub fn chain(n: usize) -> Self {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new((0..n).map(|i| format!("p{i}")).collect(), &pairs).expect("chain is valid")
    }

    pub fn from_doc(doc: &PosetDoc) -> Result<Self> {
        let elements = doc.elements.iter().map(scalar_label).collect::<Result<Vec<_>>>()?;
        let index = |v: &Value| -> Result<usize> {
            let label = scalar_label(v)?;
            elements
                .iter()
                .position(|e| *e == label)
                .ok_or_else(|| Error::InvalidInput(format!("unknown poset element {label:?}")))
        };
        let pairs = doc
            .lt
            .iter()
            .map(|(a, b)| Ok((index(a)?, index(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(elements, &pairs)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PosetDoc =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Self::from_doc(&doc)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a][b]
    }

    /// Same order with elements renamed through `perm` (element `i` moves
    /// to position `perm[i]`).
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.len();
        assert_eq!(perm.len(), n);
        let mut elements = vec![String::new(); n];
        for i in 0..n {
            elements[perm[i]] = self.elements[i].clone();
        }
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.lt[i][j] {
                    pairs.push((perm[i], perm[j]));
                }
            }
        }
        Self::new(elements, &pairs).expect("relabelling preserves validity")
    }

    /// Is `set` (a bitmask over element indices) closed downwards?
    pub fn is_down_closed(&self, set: u64) -> bool {
        (0..self.len()).filter(|&x| set >> x & 1 == 1).all(|x| {
            (0..self.len()).all(|y| !self.lt[y][x] || set >> y & 1 == 1)
        })
    }
}
