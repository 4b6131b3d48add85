//! Finite lattices of thick subcategories.
//!
//! A composition series of a triangulated category with a finite lattice of
//! thick subcategories is a maximal chain of covering steps, so length,
//! ultimate length, length spectrum and the Jordan–Dedekind index are all
//! read off the Hasse diagram.

mod fin;
mod poset;
mod report;

pub use fin::{FinLattice, LatticeDoc, NodeLabel};
pub(crate) use fin::Bits;
pub use poset::{FinPoset, PosetDoc};
pub use report::{Bound, Claim, Exactness, JdProperty, LengthReport, Provenance};

use crate::error::{Error, Result};

/// Default cap on poset size for down-set enumeration.
pub const DEFAULT_MAX_POSET: usize = 12;

/// Lattice of down-closed subsets of a finite poset, i.e. the
/// specialization-closed subsets of the corresponding finite T0 space.
pub fn downset_lattice(poset: &FinPoset, max_elements: usize) -> Result<FinLattice> {
    let n = poset.len();
    if n > max_elements {
        return Err(Error::TooLarge { what: format!("poset with {n} elements"), limit: max_elements });
    }
    if n > 40 {
        return Err(Error::TooLarge { what: format!("poset with {n} elements"), limit: 40 });
    }
    let mut masks = Vec::new();
    let mut index = std::collections::HashMap::new();
    for set in 0u64..(1u64 << n) {
        if poset.is_down_closed(set) {
            index.insert(set, masks.len());
            masks.push(set);
        }
    }
    let labels = masks
        .iter()
        .map(|&m| {
            NodeLabel::Downset(
                (0..n).filter(|&x| m >> x & 1 == 1).map(|x| poset.elements()[x].clone()).collect(),
            )
        })
        .collect();
    let mut edges = Vec::new();
    for (i, &m) in masks.iter().enumerate() {
        for x in 0..n {
            if m >> x & 1 == 0 {
                if let Some(&j) = index.get(&(m | 1 << x)) {
                    edges.push((i, j));
                }
            }
        }
    }
    FinLattice::from_covers(labels, &edges)
}

/// Exact length report of a finite lattice.
pub fn length_report(lattice: &FinLattice) -> LengthReport {
    LengthReport::of_lattice(lattice)
}

/// What a ring report is about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingKind {
    /// Perfect complexes over a noetherian ring with finite spectrum; the
    /// poset is Spec R under specialization.
    Perf,
    /// Singularity category of a hypersurface-type zero scheme with the
    /// given number of singular points.
    SingularityPoints(usize),
}

/// Length report for `Perf R` (thick subcategories are specialization-closed
/// subsets of Spec R) or for a singularity category (specialization-closed
/// subsets of the singular locus).
pub fn ring_length_report(spec_poset: Option<&FinPoset>, kind: RingKind) -> Result<LengthReport> {
    match kind {
        RingKind::Perf => {
            let poset = spec_poset
                .ok_or_else(|| Error::InvalidInput("Perf report needs the prime spectrum".into()))?;
            let lattice = downset_lattice(poset, DEFAULT_MAX_POSET)?;
            let n = poset.len();
            let report = LengthReport::of_lattice(&lattice)
                .verified(
                    format!(
                        "every maximal chain of specialization-closed subsets of Spec R has length #Spec R = {n}"
                    ),
                    "down-set lattice enumeration",
                )
                .asserted(
                    "thick subcategories of Perf R correspond to specialization-closed subsets of Spec R",
                    "Neeman's classification of thick subcategories of Perf R for noetherian R",
                );
            Ok(report)
        }
        RingKind::SingularityPoints(points) => {
            if points == 0 {
                return Err(Error::Parameter(
                    "a singularity category with no singular points is zero".into(),
                ));
            }
            let lattice = downset_lattice(&FinPoset::antichain(points), DEFAULT_MAX_POSET.max(points))?;
            let report = LengthReport::of_lattice(&lattice)
                .verified(
                    format!("every maximal chain of subsets of a {points}-point singular locus has length {points}"),
                    "down-set lattice enumeration",
                )
                .asserted(
                    "thick subcategories of the singularity category correspond to specialization-closed subsets of Sing(Z)",
                    "Takahashi and Stevenson: support classification for hypersurface singularity categories",
                );
            Ok(report)
        }
    }
}

/// Companion data for `R = k[x]/(x^2)`: `Perf R` has length 1 and
/// `D^b(R)` has length 2.
pub fn dual_numbers_report() -> Result<LengthReport> {
    let perf = ring_length_report(Some(&FinPoset::antichain(1)), RingKind::Perf)?;
    debug_assert_eq!(perf.spectrum, [1].into());
    let mut report = LengthReport::exact([2].into());
    report.push_verified(
        "Perf(k[x]/(x^2)) has length 1 (Spec is a single point)",
        "down-set lattice enumeration",
    );
    report.push_asserted(
        "D^b(k[x]/(x^2)) has length 2: Perf R is simple, D^sg(R) is simple, and D^b(R) is not simple",
        "artinian hypersurface: Perf R and the singularity category are both simple",
    );
    Ok(report)
}
