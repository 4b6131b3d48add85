use std::collections::BTreeSet;

use jdlength::hereditary::{
    ext1_dim, hom_dim, is_exceptional_sequence, verify_jd_theorem, DynkinCategory, DynkinType,
    Quiver, QuiverRep,
};
use jdlength::linalg::FieldKind;

mod common;
use common::{catalan, tits_roots};

const Q: FieldKind = FieldKind::Rational;

fn dynkin(s: &str) -> Quiver {
    Quiver::dynkin(s.parse().unwrap()).unwrap()
}

fn orientations() -> Vec<(Quiver, u64)> {
    vec![
        (Quiver::new(3, vec![(1, 0), (1, 2)]).unwrap(), 3),
        (Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap(), 3),
        (Quiver::new(4, vec![(1, 0), (1, 2), (3, 2)]).unwrap(), 4),
    ]
}

#[test]
fn indecomposables_match_tits_roots() {
    for s in ["A1", "A2", "A3", "A4", "D4", "D5"] {
        let q = dynkin(s);
        let cat = DynkinCategory::new(&q, Q, 0).unwrap();
        let dims: BTreeSet<Vec<usize>> =
            cat.indecomposables().iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims, tits_roots(&q, 2), "{s}");
    }
    for (q, _) in orientations() {
        let cat = DynkinCategory::new(&q, Q, 0).unwrap();
        let dims: BTreeSet<Vec<usize>> =
            cat.indecomposables().iter().map(|m| m.dims().to_vec()).collect();
        assert_eq!(dims, tits_roots(&q, 1));
    }
}

#[test]
fn a2_bricks_by_brute_force() {
    // All representations with dims ≤ (2, 2) and 0/1 entries; the bricks
    // among them have exactly the dimension vectors of the indecomposables.
    let q = Quiver::new(2, vec![(0, 1)]).unwrap();
    let mut found = BTreeSet::new();
    for d0 in 0..=2usize {
        for d1 in 0..=2usize {
            let entries = d0 * d1;
            for code in 0..(1u32 << entries) {
                let rows: Vec<Vec<i64>> = (0..d1)
                    .map(|i| (0..d0).map(|j| (code >> (i * d0 + j) & 1) as i64).collect())
                    .collect();
                let m = QuiverRep::from_i64(&q, Q, vec![d0, d1], &[rows]).unwrap();
                if !m.is_zero() && hom_dim(&q, &m, &m) == 1 {
                    found.insert(vec![d0, d1]);
                }
            }
        }
    }
    assert_eq!(found, BTreeSet::from([vec![1, 0], vec![0, 1], vec![1, 1]]));
}

#[test]
fn euler_identity_and_rigidity() {
    for s in ["A3", "D4"] {
        let q = dynkin(s);
        let cat = DynkinCategory::new(&q, Q, 0).unwrap();
        let ind = cat.indecomposables();
        for (i, m) in ind.iter().enumerate() {
            assert_eq!(cat.ext(i, i), 0, "rigid");
            assert_eq!(cat.hom(i, i), 1, "brick");
            for (j, n) in ind.iter().enumerate() {
                let h = hom_dim(&q, m, n) as i64;
                let e = ext1_dim(&q, m, n).unwrap() as i64;
                assert_eq!(h - e, q.euler_form(m.dims(), n.dims()));
                assert_eq!(cat.hom(i, j) as i64, h);
            }
        }
    }
}

#[test]
fn semibrick_counts_match_noncrossing_partitions() {
    for n in 1..=4usize {
        let cat = DynkinCategory::new(&dynkin(&format!("A{n}")), Q, 0).unwrap();
        assert_eq!(cat.semibricks().len() as u64, catalan(n as u64 + 1), "A{n}");
    }
    let d4 = DynkinCategory::new(&dynkin("D4"), Q, 0).unwrap();
    assert_eq!(d4.semibricks().len(), 50);
    for (q, n) in orientations() {
        let cat = DynkinCategory::new(&q, Q, 0).unwrap();
        assert_eq!(cat.semibricks().len() as u64, catalan(n + 1));
    }
}

#[test]
fn chain_counts_match_kreweras() {
    for n in 1..=4u32 {
        let cat = DynkinCategory::new(&dynkin(&format!("A{n}")), Q, 0).unwrap();
        let tl = cat.thick_lattice().unwrap();
        assert!(tl.lattice.is_lattice());
        assert_eq!(tl.lattice.chain_count(), (n as u128 + 1).pow(n - 1), "A{n}");
        assert_eq!(tl.lattice.chain_lengths(), BTreeSet::from([n as usize]));
    }
    for (q, n) in orientations() {
        let cat = DynkinCategory::new(&q, Q, 0).unwrap();
        let tl = cat.thick_lattice().unwrap();
        assert_eq!(tl.lattice.chain_count(), (n as u128 + 1).pow(n as u32 - 1));
    }
}

#[test]
fn wide_members_is_monotone() {
    let cat = DynkinCategory::new(&dynkin("A3"), Q, 3).unwrap();
    let sbs = cat.semibricks();
    let members: Vec<_> = sbs.iter().map(|s| cat.wide_members(s)).collect();
    for (s, ms) in sbs.iter().zip(&members) {
        for (t, mt) in sbs.iter().zip(&members) {
            let s_in_t: BTreeSet<usize> = s.iter().copied().collect();
            if s_in_t.is_subset(mt) {
                assert!(ms.is_subset(mt), "{s:?} ⊆ Filt({t:?})");
            }
        }
        assert!(s.iter().all(|b| ms.contains(b)));
    }
}

#[test]
fn members_do_not_depend_on_the_seed() {
    let q = dynkin("D4");
    let a = DynkinCategory::new(&q, Q, 1).unwrap();
    let b = DynkinCategory::new(&q, Q, 99).unwrap();
    for s in a.semibricks() {
        assert_eq!(a.wide_members(&s), b.wide_members(&s));
    }
}

#[test]
fn exceptional_sequences_on_explicit_reps() {
    let q = Quiver::new(2, vec![(0, 1)]).unwrap();
    let s0 = QuiverRep::simple(&q, Q, 0);
    let s1 = QuiverRep::simple(&q, Q, 1);
    assert!(is_exceptional_sequence(&q, &[s0.clone(), s1.clone()]).unwrap());
    assert!(!is_exceptional_sequence(&q, &[s1.clone(), s0.clone()]).unwrap());
    assert!(!is_exceptional_sequence(&q, &[s0.clone(), s0]).unwrap());
    // Simples in topological order: S_i then S_j with no arrow j → i.
    let a3 = dynkin("A3");
    let simples: Vec<_> = (0..3).map(|v| QuiverRep::simple(&a3, Q, v)).collect();
    assert!(is_exceptional_sequence(&a3, &simples).unwrap());
}

#[test]
fn exceptional_census_matches_chain_count() {
    for (s, count) in [("A1", 1), ("A2", 3), ("A3", 16)] {
        let cat = DynkinCategory::new(&dynkin(s), Q, 0).unwrap();
        let tl = cat.thick_lattice().unwrap();
        let seqs = cat.full_exceptional_sequences(&tl);
        assert_eq!(seqs.len(), count, "{s}");
        assert_eq!(tl.lattice.chain_count(), count as u128);
    }
}

#[test]
fn d4_jd_theorem() {
    let cat = DynkinCategory::new(&Quiver::dynkin(DynkinType::D(4)).unwrap(), Q, 0).unwrap();
    let jd = verify_jd_theorem(&cat).unwrap();
    assert_eq!(jd.indecomposables, 12);
    assert_eq!(jd.thick_subcategories, 50);
    assert_eq!(jd.chains, 162);
    assert_eq!(jd.exceptional_chains, 162);
    assert_eq!(jd.report.spectrum, BTreeSet::from([4]));
    jd.report.validate().unwrap();
}

#[test]
fn prime_field_lattice_matches() {
    let q = dynkin("A3");
    let a = DynkinCategory::new(&q, Q, 0).unwrap().thick_lattice().unwrap();
    let b = DynkinCategory::new(&q, FieldKind::prime(32003).unwrap(), 0)
        .unwrap()
        .thick_lattice()
        .unwrap();
    assert_eq!(a.members, b.members);
}
