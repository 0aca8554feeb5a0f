//! Acceptance suite: every criterion is one test that prints a PASS line.
//! All comparisons are exact; brute-force enumeration is the ground truth
//! for every closed form and construction.

use hermlock_core::counting::{self, LengthClass};
use hermlock_core::error::Error;
use hermlock_core::group::{self, IdealPower};
use hermlock_core::hermitian::{HermitianSpace, Kind};
use hermlock_core::linalg::Mat;
use hermlock_core::oracle::{self, OracleBudget};
use hermlock_core::ring::{Family, FixedElement, Ring, RingSpec, Subset};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;

fn ring(family: Family, p: u64, f: u32, e: u32) -> Ring {
    Ring::make(RingSpec::new(family, p, f, e)).unwrap()
}

fn order_grid() -> Vec<RingSpec> {
    vec![
        RingSpec::new(Family::Orthogonal, 3, 1, 1),
        RingSpec::new(Family::Orthogonal, 3, 1, 2),
        RingSpec::new(Family::Ramified, 3, 1, 2),
        RingSpec::new(Family::Ramified, 3, 1, 3),
        RingSpec::new(Family::Unramified, 3, 1, 1),
        RingSpec::new(Family::Skew, 3, 1, 2),
    ]
}

fn kinds_for(ring: &Ring) -> Vec<Kind> {
    if ring.norm_surjective() {
        vec![Kind::I]
    } else {
        vec![Kind::I, Kind::II]
    }
}

/// All column vectors of A^m in index order.
fn all_vectors(r: &Ring, m: usize) -> Vec<Mat> {
    let card = r.card_u64().unwrap();
    let total = card.pow(m as u32);
    (0..total)
        .map(|mut idx| {
            Mat::from_fn(r, m, 1, |_, _| {
                let el = r.element_from_index(idx % card);
                idx /= card;
                el
            })
        })
        .collect()
}

/// Primitive vectors grouped by exact length value.
fn fibers(space: &HermitianSpace) -> BTreeMap<Vec<u64>, Vec<Mat>> {
    let mut out: BTreeMap<Vec<u64>, Vec<Mat>> = BTreeMap::new();
    for v in all_vectors(space.ring(), space.rank()) {
        if space.is_primitive(&v) {
            let key = space.length(&v).unwrap().as_el().coeffs().to_vec();
            out.entry(key).or_default().push(v);
        }
    }
    out
}

#[test]
fn acceptance_01_orders_match_brute_force() {
    let budget = OracleBudget::default();
    for spec in order_grid() {
        let r = Ring::make(spec).unwrap();
        for kind in kinds_for(&r) {
            for m in 1..=2usize {
                let space = HermitianSpace::standard(&r, m, kind).unwrap();
                let formula = counting::unitary_order(&spec, m as u32, kind).unwrap();
                let group = oracle::enumerate_group(&space, &budget).unwrap();
                assert_eq!(
                    formula,
                    BigUint::from(group.len()),
                    "order mismatch at {} m={} kind={}",
                    spec,
                    m,
                    kind
                );
            }
        }
    }
    // rank 3 over Z/9 through the constrained search
    let spec = RingSpec::new(Family::Orthogonal, 3, 1, 2);
    let r = Ring::make(spec).unwrap();
    let space = HermitianSpace::standard(&r, 3, Kind::I).unwrap();
    let group = oracle::enumerate_group(&space, &budget).unwrap();
    assert_eq!(group.len(), 1296);
    assert_eq!(counting::unitary_order(&spec, 3, Kind::I).unwrap(), BigUint::from(1296u32));
    println!("ACCEPTANCE 01 order formulas vs brute force: PASS");
}

#[test]
fn acceptance_02_specializations_agree() {
    let mut checked = 0;
    for spec in order_grid() {
        for m in 1..=5u32 {
            for kind in [Kind::I, Kind::II] {
                let general = counting::unitary_order(&spec, m, kind).unwrap();
                if let Some(special) = counting::unitary_order_specialized(&spec, m, kind) {
                    assert_eq!(general, special, "specialized form differs at {} m={} kind={}", spec, m, kind);
                    checked += 1;
                }
                // the B = A/r^l quotient closed form is the ramified family at e = l
                if spec.family == Family::Ramified {
                    let viaq = counting::ramified_quotient_order(spec.p, spec.f, spec.e, m, kind).unwrap();
                    assert_eq!(general, viaq);
                }
            }
        }
    }
    assert!(checked >= 50);
    println!("ACCEPTANCE 02 specialization consistency: PASS");
}

#[test]
fn acceptance_03_epimorphism_surjective_and_lift_section() {
    let budget = OracleBudget::default();
    for family in [Family::Orthogonal, Family::Ramified] {
        let r = ring(family, 3, 1, 2);
        let space = HermitianSpace::standard(&r, 2, Kind::I).unwrap();
        let group = oracle::enumerate_group(&space, &budget).unwrap();
        let reduced_space = space.reduce(1).unwrap();
        let reduced_group = oracle::enumerate_group(&reduced_space, &budget).unwrap();
        let image: std::collections::BTreeSet<Vec<u64>> = group
            .iter()
            .map(|g| oracle::mat_key(g.reduce(IdealPower(1)).unwrap().mat()))
            .collect();
        assert_eq!(image.len(), reduced_group.len(), "reduce not surjective over {}", r);
        for gbar in &reduced_group {
            let g = group::lift(&space, gbar).unwrap();
            assert_eq!(g.reduce(IdealPower(1)).unwrap().mat(), gbar.mat());
        }
    }
    println!("ACCEPTANCE 03 epimorphism surjectivity and lift section: PASS");
}

#[test]
fn acceptance_04_kernel_counts() {
    let budget = OracleBudget::default();
    let expected = [(Family::Orthogonal, 3usize), (Family::Ramified, 27usize)];
    for (family, want) in expected {
        let r = ring(family, 3, 1, 2);
        let space = HermitianSpace::standard(&r, 2, Kind::I).unwrap();
        // closed form |i|^{m(m-1)/2} |k|^m from the enumerated subsets
        let ideal: Vec<_> = r
            .enumerate(Subset::All)
            .unwrap()
            .into_iter()
            .filter(|a| r.valuation(a) >= 1)
            .collect();
        let kk = ideal.iter().filter(|a| r.is_zero(r.trace(a).as_el())).count();
        let formula = ideal.len() * kk * kk;
        let kernel = group::kernel_enumerate(&space, IdealPower(1), 1_000_000).unwrap();
        assert_eq!(kernel.len(), want);
        assert_eq!(formula, want);
        // direct filter of the full group
        let group_all = oracle::enumerate_group(&space, &budget).unwrap();
        let reduced_ring = r.quotient(1).unwrap();
        let id = Mat::identity(&reduced_ring, 2);
        let filtered = group_all
            .iter()
            .filter(|g| *g.reduce(IdealPower(1)).unwrap().mat() == id)
            .count();
        assert_eq!(filtered, want);
    }
    println!("ACCEPTANCE 04 kernel counts: PASS");
}

#[test]
fn acceptance_05_witt_transitivity_exhaustive() {
    // rank 2: both standard forms over Z/9 and over F_3[rho]/(rho^2)
    let mut instances = Vec::new();
    for family in [Family::Orthogonal, Family::Ramified] {
        let r = ring(family, 3, 1, 2);
        for kind in [Kind::I, Kind::II] {
            instances.push(HermitianSpace::standard(&r, 2, kind).unwrap());
        }
    }
    // rank 3 over F_3 with Gram diag(1, -1, 1)
    let f3 = ring(Family::Orthogonal, 3, 1, 1);
    instances.push(HermitianSpace::new(Mat::from_i64(&f3, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]])).unwrap());

    let mut total_pairs = 0u64;
    for space in &instances {
        for fiber in fibers(space).values() {
            let pairs: u64 = fiber
                .par_iter()
                .map(|v| {
                    let mut count = 0u64;
                    for w in fiber {
                        let g = group::transitivity_witness(space, v, w).unwrap();
                        assert_eq!(g.apply(v).unwrap(), *w);
                        assert!(group::is_unitary(space, g.mat()).unwrap());
                        count += 1;
                    }
                    count
                })
                .sum();
            total_pairs += pairs;
        }
    }
    println!("ACCEPTANCE 05 Witt transitivity on {} ordered pairs: PASS", total_pairs);
}

#[test]
fn acceptance_06_length_fiber_closed_forms() {
    let budget = OracleBudget::default();
    for spec in order_grid() {
        let r = Ring::make(spec).unwrap();
        for kind in kinds_for(&r) {
            let space = HermitianSpace::standard(&r, 2, kind).unwrap();
            let fibers = oracle::length_fibers(&space, &budget).unwrap();
            let c = r.constants();
            let total: u64 = fibers.values().sum();
            let expected_total = &c.card_ring * &c.card_ring - &c.card_radical * &c.card_radical;
            assert_eq!(BigUint::from(total), expected_total, "sum rule fails at {} kind={}", spec, kind);
            for s in r.enumerate(Subset::Fixed).unwrap() {
                let f = FixedElement::try_new(&r, s.clone()).unwrap();
                let class = LengthClass::of(&r, &f).unwrap();
                let formula = counting::primitive_count(&spec, 2, kind, class).unwrap();
                let actual = fibers.get(s.coeffs()).copied().unwrap_or(0);
                assert_eq!(formula, BigUint::from(actual), "d(s) mismatch at {} kind={} s={}", spec, kind, s);
            }
        }
    }
    println!("ACCEPTANCE 06 d(s) closed forms and sum rule: PASS");
}

#[test]
fn acceptance_07_stabilizer_orders_rank3() {
    let budget = OracleBudget::default();
    for spec in [RingSpec::new(Family::Orthogonal, 3, 1, 1), RingSpec::new(Family::Orthogonal, 3, 1, 2)] {
        let r = Ring::make(spec).unwrap();
        let space = HermitianSpace::standard(&r, 3, Kind::I).unwrap();
        let group_all = oracle::enumerate_group(&space, &budget).unwrap();
        let c = r.constants();
        let expected = c.card_norm_one.clone() * &c.card_ring * &c.card_ring / &c.card_fixed;
        let mut seen = 0;
        for (key, fiber) in fibers(&space) {
            let val = r.from_coeffs(key).unwrap();
            if r.is_unit(&val) {
                continue;
            }
            // stabilizers of several vectors in the same non-unit fiber
            for v in fiber.iter().take(3) {
                let (_, stab) = oracle::orbit_and_stabilizer(v, &group_all).unwrap();
                assert_eq!(
                    BigUint::from(stab.len()),
                    expected,
                    "stabilizer order at {} length {}",
                    spec,
                    val
                );
                seen += 1;
            }
        }
        assert!(seen > 0, "no non-unit lengths found over {}", spec);
        assert_eq!(
            expected,
            counting::stabilizer_order(&spec, 3, Kind::I, LengthClass::NonUnit).unwrap()
        );
    }
    println!("ACCEPTANCE 07 stabilizer orders at rank 3: PASS");
}

#[test]
fn acceptance_08_stabilizer_completion_random_rows() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4845524d);
    for spec in [RingSpec::new(Family::Ramified, 3, 1, 4), RingSpec::new(Family::Orthogonal, 3, 1, 3)] {
        let r = Ring::make(spec).unwrap();
        let card = r.card_u64().unwrap();
        // non-unit fixed elements for the corner r
        let corners: Vec<_> = r
            .enumerate(Subset::Fixed)
            .unwrap()
            .into_iter()
            .filter(|a| r.is_radical(a))
            .collect();
        let eps = r.epsilon();
        for m in [3usize, 4] {
            for _ in 0..100 {
                let corner = FixedElement::try_new(&r, corners[rng.gen_range(0..corners.len())].clone()).unwrap();
                let diag: Vec<FixedElement> = (0..m - 2)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            FixedElement::try_new(&r, r.one()).unwrap()
                        } else {
                            eps.clone()
                        }
                    })
                    .collect();
                let space = group::normal_form_space(&r, &corner, &diag).unwrap();
                let c = Mat::from_fn(&r, 1, m - 2, |_, _| r.element_from_index(rng.gen_range(0..card)));
                // the constructor inside asserts exact unitarity
                let g = group::stabilizer_completion(&space, &c).unwrap();
                assert_eq!(g.mat().col(0), space.basis_vector(0), "completion must fix e1");
                for j in 0..m - 2 {
                    assert_eq!(g.mat().at(0, 2 + j), c.at(0, j), "prescribed row C must appear");
                }
            }
        }
        // solve_quadratic: exact residual within <= e iterations on random data
        for _ in 0..200 {
            let corner = FixedElement::try_new(&r, corners[rng.gen_range(0..corners.len())].clone()).unwrap();
            let t = loop {
                let cand = r.element_from_index(rng.gen_range(0..card));
                if r.is_fixed(&cand) {
                    break FixedElement::try_new(&r, cand).unwrap();
                }
            };
            let a = group::solve_quadratic(&r, &corner, &t).unwrap();
            let residual = r.sub(
                &r.sub(&r.mul(corner.as_el(), &r.mul(&r.conj(&a), &a)), r.trace(&a).as_el()),
                t.as_el(),
            );
            assert!(r.is_zero(&residual));
        }
    }
    println!("ACCEPTANCE 08 stabilizer completions for random rows: PASS");
}

#[test]
fn acceptance_09_weil_degrees() {
    // reachability, integrality, degree >= 1 across the whole grid
    for q in [3u64, 5] {
        for l in 1..=3u32 {
            for m in 2..=6u32 {
                for kind in [Kind::I, Kind::II] {
                    for class in [LengthClass::UnitSquare, LengthClass::UnitNonSquare, LengthClass::NonUnit] {
                        match counting::weil_degree(q, l, m, kind, class) {
                            Ok(d) => {
                                assert!(d.degree >= BigUint::from(1u32));
                                assert_eq!(&d.degree * &d.c, d.index);
                            }
                            Err(Error::InvalidCase(_)) => {
                                assert!(m == 2 && kind == Kind::II && class == LengthClass::NonUnit);
                            }
                            Err(e) => panic!("unexpected error {e:?}"),
                        }
                    }
                }
            }
        }
    }
    // the general-rank formulas collapse to the direct rank-2 counts
    for q in [3u64, 5] {
        for l in 1..=3u32 {
            let f = l.div_ceil(2);
            let qb = BigUint::from(q);
            let base = qb.pow(2 * l - f - 1);
            let unit_i = counting::weil_degree(q, l, 2, Kind::I, LengthClass::UnitSquare).unwrap();
            assert_eq!(unit_i.index, &base * (&qb - 1u32));
            let unit_ii = counting::weil_degree(q, l, 2, Kind::II, LengthClass::UnitSquare).unwrap();
            assert_eq!(unit_ii.index, &base * (&qb + 1u32));
            let nonunit = counting::weil_degree(q, l, 2, Kind::I, LengthClass::NonUnit).unwrap();
            assert_eq!(nonunit.index, BigUint::from(2u32) * &base * (&qb - 1u32));
        }
    }
    // l = 1, q = 3: the index equals the enumerated index [O_m(3) : S_u]
    let budget = OracleBudget::default();
    let f3 = ring(Family::Orthogonal, 3, 1, 1);
    for m in [2usize, 3] {
        for kind in [Kind::I, Kind::II] {
            let space = HermitianSpace::standard(&f3, m, kind).unwrap();
            let group_all = oracle::enumerate_group(&space, &budget).unwrap();
            for (key, fiber) in fibers(&space) {
                let val = f3.from_coeffs(key).unwrap();
                let class = LengthClass::of(&f3, &FixedElement::try_new(&f3, val).unwrap()).unwrap();
                let d = counting::weil_degree(3, 1, m as u32, kind, class).unwrap();
                // orbit = fiber by transitivity, so the index is the fiber size
                assert_eq!(d.index, BigUint::from(fiber.len()), "index mismatch m={} kind={} class={}", m, kind, class);
                let (orbit, stab) = oracle::orbit_and_stabilizer(&fiber[0], &group_all).unwrap();
                assert_eq!(orbit as usize, fiber.len());
                assert_eq!(orbit as usize * stab.len(), group_all.len());
            }
        }
    }
    println!("ACCEPTANCE 09 Weil degrees: PASS");
}

#[test]
fn acceptance_10_self_identities() {
    for p in [3u64, 5, 7] {
        for f in [1u32, 2] {
            for e in 1..=4u32 {
                for family in [Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew] {
                    let spec = RingSpec::new(family, p, f, e);
                    if spec.validate().is_err() {
                        continue;
                    }
                    assert!(counting::identity_check(&spec), "curious identity fails at {}", spec);
                    for m in 1..=5u32 {
                        for kind in [Kind::I, Kind::II] {
                            assert_eq!(
                                counting::unitary_order(&spec, m, kind).unwrap(),
                                counting::unitary_order_alt(&spec, m, kind).unwrap(),
                                "displayed expressions differ at {} m={} kind={}",
                                spec,
                                m,
                                kind
                            );
                        }
                    }
                    if !StructuredSurjective::check(&spec) {
                        assert!(
                            counting::m2_order(&spec, Kind::II).unwrap() > counting::m2_order(&spec, Kind::I).unwrap(),
                            "non-isotropic |U2| is not larger at {}",
                            spec
                        );
                    }
                }
            }
        }
    }
    println!("ACCEPTANCE 10 self-identities: PASS");
}

struct StructuredSurjective;
impl StructuredSurjective {
    fn check(spec: &RingSpec) -> bool {
        hermlock_core::StructConstants::for_spec(spec).norm_surjective
    }
}
