//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit on failure.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use jdlength::algebra::{
    b_d, default_window, detect_sphere_like, family_length_report, graded_kronecker, hom_complex_dims,
    is_exceptional_complexes, kplus_check, kronecker_pair_profile, lambda_rnm, minimal_projective_resolution, a_p,
    FDModule, Family, ProjComplex, SphereLikeProfile,
};
use jdlength::hereditary::{verify_jd_theorem, DynkinCategory, Quiver};
use jdlength::lattice::{
    downset_lattice, dual_numbers_report, ring_length_report, Bound, FinLattice, FinPoset, JdProperty, LengthReport,
    Provenance, RingKind,
};
use jdlength::linalg::FieldKind;
use jdlength::toric::{
    cohomology, ext_line_bundles, hille_sequence, random_fan, riemann_roch, self_intersections, toric_length_report,
    Preset, TorusDivisor,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod common;
use common::{catalan, dims, kreweras, linear_extensions, minkowski, posets_up_to_iso, random_posets, small_lattices, tits_roots};

const Q: FieldKind = FieldKind::Rational;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn poset_spcl() -> Outcome {
    let mut corpus: Vec<FinPoset> = (1..=5).flat_map(posets_up_to_iso).collect();
    let exhaustive = corpus.len();
    ensure(exhaustive == 1 + 2 + 5 + 16 + 63, || format!("corpus has {exhaustive} classes, expected 87"))?;
    corpus.extend(random_posets(50, 10, 2024));
    for p in &corpus {
        let l = downset_lattice(p, 12).map_err(err)?;
        let r = LengthReport::of_lattice(&l);
        let n = p.len();
        ensure(r.spectrum == BTreeSet::from([n]), || format!("spectrum {:?} for {n} elements", r.spectrum))?;
        ensure(l.chain_count() == linear_extensions(p), || "chain count differs from linear extensions".into())?;
    }
    Ok(format!("{exhaustive} posets up to iso + 50 random, every spectrum = {{#elements}}"))
}

fn rings() -> Outcome {
    for n in 1..=6 {
        let r = ring_length_report(Some(&FinPoset::antichain(n)), RingKind::Perf).map_err(err)?;
        ensure(r.length == Bound::Exact(n) && r.spectrum == BTreeSet::from([n]), || format!("artinian n = {n}"))?;
    }
    let d = dual_numbers_report().map_err(err)?;
    ensure(d.length == Bound::Exact(2), || format!("dual numbers length {:?}", d.length))?;
    Ok("artinian ℓ(Perf) = n for n ≤ 6; ℓ(D^b(k[x]/x²)) = 2".into())
}

fn dynkin_jd() -> Outcome {
    let mut notes = Vec::new();
    for (name, n) in [("A2", 2u64), ("A3", 3)] {
        let q = Quiver::dynkin(name.parse().map_err(err)?).map_err(err)?;
        let jd = verify_jd_theorem(&DynkinCategory::new(&q, Q, 0).map_err(err)?).map_err(err)?;
        let roots = tits_roots(&q, 3).len();
        let expect = (roots, catalan(n + 1) as usize, kreweras(n) as usize);
        let got = (jd.indecomposables, jd.thick_subcategories, jd.chains);
        ensure(got == expect, || format!("{name}: (indec, thick, chains) = {got:?}, oracle {expect:?}"))?;
        ensure(jd.report.spectrum == BTreeSet::from([n as usize]), || format!("{name} spectrum"))?;
        ensure(jd.exceptional_chains == jd.chains, || format!("{name}: unmatched chains"))?;
        notes.push(format!("{name} {got:?}"));
    }
    let d4 = Quiver::dynkin("D4".parse().map_err(err)?).map_err(err)?;
    let jd = verify_jd_theorem(&DynkinCategory::new(&d4, Q, 0).map_err(err)?).map_err(err)?;
    ensure(jd.indecomposables == 12 && tits_roots(&d4, 3).len() == 12, || "D4 indecomposables".into())?;
    ensure(jd.report.spectrum == BTreeSet::from([4]), || format!("D4 spectrum {:?}", jd.report.spectrum))?;
    ensure(jd.exceptional_chains == jd.chains, || "D4: unmatched chains".into())?;
    notes.push(format!("D4 ({}, {}, {})", jd.indecomposables, jd.thick_subcategories, jd.chains));
    Ok(notes.join("; "))
}

fn exceptional_census() -> Outcome {
    let mut out = Vec::new();
    for (name, count) in [("A2", 3usize), ("A3", 16)] {
        let q = Quiver::dynkin(name.parse().map_err(err)?).map_err(err)?;
        let cat = DynkinCategory::new(&q, Q, 0).map_err(err)?;
        let tl = cat.thick_lattice().map_err(err)?;
        let seqs = cat.full_exceptional_sequences(&tl).len();
        let chains = tl.lattice.chain_count() as usize;
        ensure(seqs == count && chains == count, || format!("{name}: {seqs} sequences, {chains} chains"))?;
        out.push(format!("{name}: {seqs}"));
    }
    Ok(out.join(", "))
}

fn simple_profile(alg: &jdlength::algebra::MonomialAlgebra, v: usize) -> Result<Option<SphereLikeProfile>, String> {
    let res = minimal_projective_resolution(alg, &FDModule::simple(alg, Q, v), 12).map_err(err)?;
    ensure(res.complete, || "resolution incomplete".into())?;
    detect_sphere_like(alg, &res.complex, default_window(alg, &res.complex, &res.complex)).map_err(err)
}

fn algebra_families() -> Outcome {
    for (d, n) in [(2, 1), (3, 2)] {
        let (_, pres) = b_d(d, Q).map_err(err)?;
        let p = simple_profile(&pres.algebra, 1)?;
        ensure(p == Some(SphereLikeProfile { n, d: 2 }), || format!("B{d}: S profile {p:?}"))?;
    }
    let lam = lambda_rnm(2, 3, 0).map_err(err)?;
    let p = simple_profile(&lam.algebra, lam.vertex(1))?;
    ensure(p == Some(SphereLikeProfile { n: 1, d: 3 }), || format!("Λ(2,3,0) S_1 profile {p:?}"))?;
    let sq = lambda_rnm(2, 2, 0).map_err(err)?;
    let q = sq.q_complex(Q).map_err(err)?;
    let qd = hom_complex_dims(&sq.algebra, &q, &q, default_window(&sq.algebra, &q, &q)).map_err(err)?;
    ensure(qd == dims(&[(0, 1), (-1, 1)]), || format!("Λ(2,2,0) Q profile {qd:?}"))?;
    for (r, n, m) in [(1, 2, 0), (2, 3, 0), (2, 3, 1), (2, 4, 1)] {
        let lam = lambda_rnm(r, n, m).map_err(err)?;
        let seq: Vec<ProjComplex> =
            (-(m as i64)..(n - r) as i64).map(|i| lam.simple_complex(i, Q)).collect::<Result<_, _>>().map_err(err)?;
        ensure(is_exceptional_complexes(&lam.algebra, &seq).map_err(err)?, || format!("Λ({r},{n},{m}) simples"))?;
    }
    let mut reports = vec![(Family::Lambda { r: 1, n: 2, m: 0 }, BTreeSet::from([2, 3]))];
    reports.extend((2..=4).map(|d| (Family::Kronecker { d }, BTreeSet::from([2, 3]))));
    for (fam, want) in reports {
        let r = family_length_report(fam, Q).map_err(err)?;
        r.validate().map_err(err)?;
        ensure(r.spectrum.is_superset(&want), || format!("{fam}: spectrum {:?}", r.spectrum))?;
        ensure(r.jd_property == JdProperty::Fails, || format!("{fam}: jd {:?}", r.jd_property))?;
        let ver = r.claims.iter().filter(|c| c.provenance == Provenance::Verified).count();
        let asr = r.claims.iter().filter(|c| c.provenance == Provenance::Asserted).count();
        ensure(ver > 0 && asr > 0, || format!("{fam}: {ver} verified / {asr} asserted"))?;
        ensure(r.claims.iter().all(|c| !c.citation.is_empty()), || format!("{fam}: claim without citation"))?;
    }
    Ok("B2 (1,2), B3 (2,2), Λ(2,3,0) (1,3), Q (1,-1), 4 exceptional sequences, 4 family reports".into())
}

fn graded_kronecker_case() -> Outcome {
    for m in [2, 3] {
        for q in [1, 2] {
            let p = kronecker_pair_profile(&graded_kronecker(m, q).map_err(err)?, Q).map_err(err)?;
            ensure(p == dims(&[(0, 1), (q, m - 1)]), || format!("Kr^{m}_{q}: {p:?}"))?;
        }
    }
    for q in 1..=3 {
        let p = kplus_check(q, Q).map_err(err)?;
        ensure(p == Some(SphereLikeProfile { n: 1, d: 1 + q }), || format!("K+ q = {q}: {p:?}"))?;
    }
    for p in 1..=2 {
        let a = a_p(p).map_err(err)?;
        let free = ProjComplex::projective(&a, Q, 0).map_err(err)?;
        let d = hom_complex_dims(&a, &free, &free, default_window(&a, &free, &free)).map_err(err)?;
        ensure(d == dims(&[(0, 1), (-p, 1)]), || format!("A_{p}: {d:?}"))?;
    }
    Ok("Kr^m_q for {2,3}×{1,2}, K+ for q ≤ 3, A_p for p ≤ 2".into())
}

fn toric() -> Outcome {
    let f2 = Preset::Hirzebruch(2).fan();
    let sq = self_intersections(&f2).map_err(err)?;
    ensure(sq == vec![0, -2, 0, 2], || format!("F2 self-intersections {sq:?}"))?;
    let e = ext_line_bundles(&f2, &TorusDivisor::zero(4), &TorusDivisor::prime(4, 1)).map_err(err)?;
    ensure(e == BTreeMap::from([(0, 1), (1, 1)]), || format!("Ext(O, O(E)) = {e:?}"))?;
    let r = toric_length_report(&f2, Q).map_err(err)?;
    ensure(r.report.spectrum.is_superset(&BTreeSet::from([4, 5])), || format!("F2 spectrum {:?}", r.report.spectrum))?;
    ensure(r.report.jd_property == JdProperty::Fails, || "F2 jd".into())?;
    let p2 = Preset::P2.fan();
    let h = hille_sequence(&p2).map_err(err)?;
    let homs: Vec<u64> = (0..2)
        .map(|i| ext_line_bundles(&p2, &h[i], &h[i + 1]).map(|m| m.get(&0).copied().unwrap_or(0)))
        .collect::<Result<_, _>>()
        .map_err(err)?;
    ensure(homs == vec![3, 3], || format!("P2 consecutive Hom dims {homs:?}"))?;
    let f1 = toric_length_report(&Preset::Hirzebruch(1).fan(), Q).map_err(err)?;
    ensure(f1.geometry.blocks.is_empty(), || "F1 should have r = 0".into())?;
    let f3 = toric_length_report(&Preset::Hirzebruch(3).fan(), Q).map_err(err)?;
    ensure(f3.geometry.blocks.len() == 1, || "F3 should have r = 1".into())?;
    ensure(f3.geometry.blocks[0].ext == BTreeMap::from([(0, 1), (1, 2)]), || "F3 block profile".into())?;
    Ok("F2 (0,-2,0,2), Ext {0:1,1:1}, spectrum ⊇ {4,5}; P2 Hom (3,3); F1 r = 0; F3 r = 1 {0:1,1:2}".into())
}

fn conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let (mut fans, mut divisors) = (0, 0);
    for seed in 0..12u64 {
        let f = random_fan(rng.gen_range(3..=9), seed);
        let n = f.len();
        fans += 1;
        for _ in 0..10 {
            let d = TorusDivisor((0..n).map(|_| rng.gen_range(-4..=4)).collect());
            let h = cohomology(&f, &d).map_err(err)?;
            let rr = riemann_roch(&f, &d).map_err(err)?;
            ensure(h.euler() == rr, || format!("χ = {} but RR = {rr} for {:?} on {:?}", h.euler(), d.0, f.rays()))?;
            let dual = cohomology(&f, &TorusDivisor::canonical(n).sub(&d)).map_err(err)?;
            ensure(h.h2 == dual.h0, || format!("Serre duality fails for {:?}", d.0))?;
            divisors += 1;
        }
    }
    Ok(format!("{fans} fans, {divisors} divisors: χ = RR and h²(D) = h⁰(K−D)"))
}

fn lattice_algebra() -> Outcome {
    let corpus = small_lattices();
    let mut pairs = 0;
    for (na, a) in &corpus {
        for (nb, b) in &corpus {
            let s = FinLattice::direct_sum(&[a.clone(), b.clone()]);
            let want = minkowski(&a.chain_lengths(), &b.chain_lengths());
            ensure(s.chain_lengths() == want, || format!("{na} ⊕ {nb}"))?;
            pairs += 1;
        }
    }
    Ok(format!("{} lattices, {pairs} ordered pairs", corpus.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("poset/spcl", poset_spcl, Duration::from_secs(30)),
        ("rings", rings, Duration::from_secs(1)),
        ("dynkin jd", dynkin_jd, Duration::from_secs(300)),
        ("exceptional census", exceptional_census, Duration::from_secs(60)),
        ("algebra families", algebra_families, Duration::from_secs(60)),
        ("graded kronecker", graded_kronecker_case, Duration::from_secs(10)),
        ("toric", toric, Duration::from_secs(30)),
        ("conservation", conservation, Duration::from_secs(120)),
        ("lattice algebra", lattice_algebra, Duration::from_secs(60)),
    ];
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        let el = t.elapsed();
        let line = match outcome {
            Ok(msg) if el <= *budget => format!("PASS criterion {} [{name}] {msg} ({:.2?})", i + 1, el),
            Ok(msg) => format!("FAIL criterion {} [{name}] over budget {:.2?} > {:?}: {msg}", i + 1, el, budget),
            Err(e) => format!("FAIL criterion {} [{name}] {e} ({:.2?})", i + 1, el),
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("{line}");
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
