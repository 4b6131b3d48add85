use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::fin::FinLattice;
use crate::error::{Error, Result};

/// Whether a report enumerates every composition series or only exhibits
/// some of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Exactness {
    Exact,
    Witnessed,
}

/// A count that is either known exactly or bounded on one side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Exact(usize),
    AtMost(usize),
    AtLeast(usize),
}

impl Bound {
    pub fn value(self) -> usize {
        match self {
            Bound::Exact(v) | Bound::AtMost(v) | Bound::AtLeast(v) => v,
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(v) => write!(f, "{v}"),
            Bound::AtMost(v) => write!(f, "<= {v}"),
            Bound::AtLeast(v) => write!(f, ">= {v}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum JdProperty {
    Holds,
    Fails,
    Unknown,
}

/// Where a claim comes from: recomputed here, or taken from the literature.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Provenance {
    Verified,
    Asserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub statement: String,
    pub provenance: Provenance,
    pub citation: String,
}

/// Length, ultimate length, length spectrum and Jordan–Dedekind data of a
/// triangulated category, with the claims backing them.
///
/// For exact reports every field is exact. For witnessed reports the
/// spectrum lists lengths of exhibited composition series, so `length` is
/// an upper bound and `ultimate_length`, `jd_index` are lower bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthReport {
    pub exactness: Exactness,
    pub length: Bound,
    pub ultimate_length: Bound,
    pub spectrum: BTreeSet<usize>,
    pub jd_index: Bound,
    pub jd_property: JdProperty,
    pub claims: Vec<Claim>,
}

impl LengthReport {
    /// Report from the complete set of composition-series lengths.
    pub fn exact(spectrum: BTreeSet<usize>) -> Self {
        assert!(!spectrum.is_empty(), "a finite lattice has at least one maximal chain");
        let lo = *spectrum.first().expect("nonempty");
        let hi = *spectrum.last().expect("nonempty");
        LengthReport {
            exactness: Exactness::Exact,
            length: Bound::Exact(lo),
            ultimate_length: Bound::Exact(hi),
            jd_index: Bound::Exact(hi - lo),
            jd_property: if lo == hi { JdProperty::Holds } else { JdProperty::Fails },
            spectrum,
            claims: Vec::new(),
        }
    }

    /// Report from lengths of exhibited composition series.
    pub fn witnessed(spectrum: BTreeSet<usize>) -> Self {
        assert!(!spectrum.is_empty(), "witnessed report needs at least one chain");
        let lo = *spectrum.first().expect("nonempty");
        let hi = *spectrum.last().expect("nonempty");
        LengthReport {
            exactness: Exactness::Witnessed,
            length: Bound::AtMost(lo),
            ultimate_length: Bound::AtLeast(hi),
            jd_index: Bound::AtLeast(hi - lo),
            jd_property: if lo == hi { JdProperty::Unknown } else { JdProperty::Fails },
            spectrum,
            claims: Vec::new(),
        }
    }

    /// Exact report of a finite lattice, read off its maximal chains.
    pub fn of_lattice(lattice: &FinLattice) -> Self {
        Self::exact(lattice.chain_lengths())
    }

    pub fn verified(mut self, statement: impl Into<String>, citation: impl Into<String>) -> Self {
        self.push_verified(statement, citation);
        self
    }

    pub fn asserted(mut self, statement: impl Into<String>, citation: impl Into<String>) -> Self {
        self.push_asserted(statement, citation);
        self
    }

    pub fn push_verified(&mut self, statement: impl Into<String>, citation: impl Into<String>) {
        self.claims.push(Claim {
            statement: statement.into(),
            provenance: Provenance::Verified,
            citation: citation.into(),
        });
    }

    pub fn push_asserted(&mut self, statement: impl Into<String>, citation: impl Into<String>) {
        self.claims.push(Claim {
            statement: statement.into(),
            provenance: Provenance::Asserted,
            citation: citation.into(),
        });
    }

    pub fn verified_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.provenance == Provenance::Verified)
    }

    pub fn asserted_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.provenance == Provenance::Asserted)
    }

    /// Checks the internal consistency of the numbers.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Inconsistency(format!("length report: {m}")));
        let (Some(&lo), Some(&hi)) = (self.spectrum.first(), self.spectrum.last()) else {
            return bad("empty spectrum");
        };
        if self.length.value() != lo || self.ultimate_length.value() != hi {
            return bad("length/ultimate length disagree with the spectrum");
        }
        if self.jd_index.value() != hi - lo {
            return bad("jd index is not ultimate length minus length");
        }
        let fails = lo != hi;
        match (self.exactness, self.jd_property) {
            (_, JdProperty::Fails) if !fails => bad("FAILS with a single length"),
            (_, JdProperty::Holds | JdProperty::Unknown) if fails => {
                bad("two lengths but JD not FAILS")
            }
            (Exactness::Witnessed, JdProperty::Holds) => bad("witnessed report cannot prove JD"),
            (Exactness::Exact, JdProperty::Unknown) => bad("exact report must decide JD"),
            _ => Ok(()),
        }?;
        if self.claims.iter().any(|c| c.provenance == Provenance::Asserted && c.citation.is_empty())
        {
            return bad("asserted claim without citation");
        }
        Ok(())
    }

    /// Plain-text rendering.
    pub fn to_text(&self) -> String {
        let spectrum: Vec<String> = self.spectrum.iter().map(ToString::to_string).collect();
        let mut s = String::new();
        s.push_str(&format!("exactness:       {:?}\n", self.exactness).to_uppercase());
        s.push_str(&format!("length:          {}\n", self.length));
        s.push_str(&format!("ultimate length: {}\n", self.ultimate_length));
        let sep = if self.exactness == Exactness::Exact { "=" } else { "⊇" };
        s.push_str(&format!("spectrum:        {sep} {{{}}}\n", spectrum.join(", ")));
        s.push_str(&format!("jd index:        {}\n", self.jd_index));
        s.push_str(&format!("jd property:     {:?}\n", self.jd_property).to_uppercase());
        for c in &self.claims {
            let tag = match c.provenance {
                Provenance::Verified => "VERIFIED",
                Provenance::Asserted => "ASSERTED",
            };
            s.push_str(&format!("  [{tag}] {} ({})\n", c.statement, c.citation));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_single_length_holds() {
        let r = LengthReport::exact(BTreeSet::from([3]));
        assert_eq!(r.jd_property, JdProperty::Holds);
        assert_eq!(r.jd_index, Bound::Exact(0));
        r.validate().unwrap();
    }

    #[test]
    fn witnessed_two_lengths_fails() {
        let r = LengthReport::witnessed(BTreeSet::from([4, 5]));
        assert_eq!(r.jd_property, JdProperty::Fails);
        assert_eq!(r.length, Bound::AtMost(4));
        assert_eq!(r.ultimate_length, Bound::AtLeast(5));
        assert_eq!(r.jd_index, Bound::AtLeast(1));
        r.validate().unwrap();
    }

    #[test]
    fn witnessed_single_length_is_unknown() {
        let r = LengthReport::witnessed(BTreeSet::from([3]));
        assert_eq!(r.jd_property, JdProperty::Unknown);
    }

    #[test]
    fn validate_catches_tampering() {
        let mut r = LengthReport::exact(BTreeSet::from([2, 3]));
        r.jd_property = JdProperty::Holds;
        assert!(r.validate().is_err());
        let r = LengthReport::exact(BTreeSet::from([2])).asserted("x", "");
        assert!(r.validate().is_err());
    }

    #[test]
    fn serializes_with_upper_case_tags() {
        let r = LengthReport::exact(BTreeSet::from([2])).verified("a", "b");
        let j = serde_json::to_string(&r).unwrap();
        assert!(j.contains("\"EXACT\"") && j.contains("\"HOLDS\"") && j.contains("\"VERIFIED\""));
    }
}
