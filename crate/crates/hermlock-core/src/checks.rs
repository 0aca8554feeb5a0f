//! The cross-validation suite behind the `verify` CLI subcommand: every
//! closed-form count is compared against brute-force enumeration on a grid
//! of small instances, and the constructive operations are exercised
//! exhaustively at that scale.

use crate::counting::{self, LengthClass};
use crate::error::Result;
use crate::group::{self, IdealPower};
use crate::hermitian::{HermitianSpace, Kind};
use crate::linalg::Mat;
use crate::oracle::{self, OracleBudget};
use crate::ring::{Family, FixedElement, Ring, RingSpec, Subset};
use num_bigint::BigUint;

/// One verification record, printable as a JSON line.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: String,
    pub instance: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl CheckReport {
    fn new(check: &str, instance: String, expected: impl ToString, actual: impl ToString) -> CheckReport {
        let expected = expected.to_string();
        let actual = actual.to_string();
        CheckReport { check: check.to_string(), instance, pass: expected == actual, expected, actual }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grid {
    /// Everything that runs in a couple of seconds.
    Small,
    /// The full acceptance grid, including the skew rank-2 group and the
    /// rank-3 constrained search.
    Full,
}

fn order_grid(grid: Grid) -> Vec<(RingSpec, u32)> {
    let mut out = vec![
        (RingSpec::new(Family::Orthogonal, 3, 1, 1), 2),
        (RingSpec::new(Family::Orthogonal, 3, 1, 2), 2),
        (RingSpec::new(Family::Ramified, 3, 1, 2), 2),
        (RingSpec::new(Family::Ramified, 3, 1, 3), 2),
        (RingSpec::new(Family::Unramified, 3, 1, 1), 2),
        (RingSpec::new(Family::Skew, 3, 1, 2), 1),
    ];
    if grid == Grid::Full {
        out.push((RingSpec::new(Family::Skew, 3, 1, 2), 2));
    }
    out
}

/// Group orders: formula vs exhaustive enumeration, for every m up to the
/// listed bound and both kinds where the distinction exists.
pub fn check_orders(grid: Grid, budget: &OracleBudget) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (spec, m_max) in order_grid(grid) {
        let ring = Ring::make(spec)?;
        let kinds: &[Kind] = if ring.norm_surjective() { &[Kind::I] } else { &[Kind::I, Kind::II] };
        for m in 1..=m_max {
            for &kind in kinds {
                let space = HermitianSpace::standard(&ring, m as usize, kind)?;
                let formula = counting::unitary_order(&spec, m, kind)?;
                let enumerated = oracle::enumerate_group(&space, budget)?.len();
                out.push(CheckReport::new(
                    "unitary_order",
                    format!("{} m={} kind={}", spec, m, kind),
                    formula,
                    enumerated,
                ));
            }
        }
    }
    if grid == Grid::Full {
        // rank 3 over Z/9 by constrained search
        let spec = RingSpec::new(Family::Orthogonal, 3, 1, 2);
        let ring = Ring::make(spec)?;
        let space = HermitianSpace::standard(&ring, 3, Kind::I)?;
        let formula = counting::unitary_order(&spec, 3, Kind::I)?;
        let enumerated = oracle::enumerate_group(&space, budget)?.len();
        out.push(CheckReport::new("unitary_order", format!("{} m=3 kind=I", spec), formula, enumerated));
    }
    Ok(out)
}

/// Primitive-vector length fibers vs the closed-form counts per class, plus
/// the total-count sum rule.
pub fn check_fibers(budget: &OracleBudget) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (spec, _) in order_grid(Grid::Small) {
        let ring = Ring::make(spec)?;
        let kinds: &[Kind] = if ring.norm_surjective() { &[Kind::I] } else { &[Kind::I, Kind::II] };
        for &kind in kinds {
            let space = HermitianSpace::standard(&ring, 2, kind)?;
            let fibers = oracle::length_fibers(&space, budget)?;
            let c = ring.constants();
            let total: u64 = fibers.values().sum();
            let expect_total = &c.card_ring * &c.card_ring - &c.card_radical * &c.card_radical;
            out.push(CheckReport::new(
                "fiber_sum_rule",
                format!("{} kind={}", spec, kind),
                expect_total,
                total,
            ));
            // compare each fiber against d(s) for the class of s
            for fixed in ring.enumerate(Subset::Fixed)? {
                let f = FixedElement::try_new(&ring, fixed.clone())?;
                let class = LengthClass::of(&ring, &f)?;
                let expected = counting::primitive_count(&spec, 2, kind, class)?;
                let actual = fibers.get(fixed.coeffs()).copied().unwrap_or(0);
                out.push(CheckReport::new(
                    "primitive_count",
                    format!("{} kind={} s={}", spec, kind, fixed),
                    expected,
                    BigUint::from(actual),
                ));
            }
        }
    }
    Ok(out)
}

/// Surjectivity of the canonical epimorphism and the kernel count, checked
/// on the two rank-2 instances with e = 2.
pub fn check_reduction(budget: &OracleBudget) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for family in [Family::Orthogonal, Family::Ramified] {
        let spec = RingSpec::new(family, 3, 1, 2);
        let ring = Ring::make(spec)?;
        let space = HermitianSpace::standard(&ring, 2, Kind::I)?;
        let group = oracle::enumerate_group(&space, budget)?;
        let reduced_space = space.reduce(1)?;
        let reduced_group = oracle::enumerate_group(&reduced_space, budget)?;
        // image of reduce = the whole reduced group
        let image: std::collections::BTreeSet<Vec<u64>> = group
            .iter()
            .map(|g| Ok(oracle::mat_key(g.reduce(IdealPower(1))?.mat())))
            .collect::<Result<_>>()?;
        out.push(CheckReport::new(
            "reduce_surjective",
            format!("{} m=2", spec),
            reduced_group.len(),
            image.len(),
        ));
        // every reduced element lifts back
        let mut lifts_ok = 0usize;
        for gbar in &reduced_group {
            let g = group::lift(&space, gbar)?;
            if g.reduce(IdealPower(1))?.mat() == gbar.mat() {
                lifts_ok += 1;
            }
        }
        out.push(CheckReport::new("lift_section", format!("{} m=2", spec), reduced_group.len(), lifts_ok));
        // kernel: formula, enumeration, and direct filtering agree
        let ker = group::kernel_enumerate(&space, IdealPower(1), budget.max_nodes)?;
        let direct = group
            .iter()
            .filter(|g| {
                let red = g.reduce(IdealPower(1)).expect("reduces");
                red.mat() == &Mat::identity(reduced_space.ring(), 2)
            })
            .count();
        out.push(CheckReport::new("kernel_count", format!("{} m=2 k=1", spec), ker.len(), direct));
        let expected = group.len() / reduced_group.len();
        out.push(CheckReport::new("kernel_index", format!("{} m=2 k=1", spec), expected, ker.len()));
    }
    Ok(out)
}

/// Witt transitivity at oracle scale: orbits coincide with length fibers.
pub fn check_orbits(budget: &OracleBudget) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (spec, kind) in [
        (RingSpec::new(Family::Orthogonal, 3, 1, 2), Kind::I),
        (RingSpec::new(Family::Orthogonal, 3, 1, 2), Kind::II),
        (RingSpec::new(Family::Ramified, 3, 1, 2), Kind::I),
    ] {
        let ring = Ring::make(spec)?;
        let space = HermitianSpace::standard(&ring, 2, kind)?;
        let group = oracle::enumerate_group(&space, budget)?;
        let fibers = oracle::length_fibers(&space, budget)?;
        let v = space.basis_vector(0);
        let key = space.length(&v)?.as_el().coeffs().to_vec();
        let (orbit, stab) = oracle::orbit_and_stabilizer(&v, &group)?;
        out.push(CheckReport::new(
            "orbit_equals_fiber",
            format!("{} kind={} v=e1", spec, kind),
            fibers[&key],
            orbit,
        ));
        out.push(CheckReport::new(
            "orbit_stabilizer_product",
            format!("{} kind={} v=e1", spec, kind),
            group.len(),
            orbit * stab.len() as u64,
        ));
    }
    Ok(out)
}

/// Structure-constant identities evaluated on the formula grid.
pub fn check_identities() -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for p in [3u64, 5, 7] {
        for f in [1u32, 2] {
            for e in 1..=4u32 {
                for family in [Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew] {
                    let spec = RingSpec::new(family, p, f, e);
                    if spec.validate().is_err() {
                        continue;
                    }
                    out.push(CheckReport::new("curious_identity", format!("{}", spec), true, counting::identity_check(&spec)));
                    for m in 1..=5u32 {
                        for kind in [Kind::I, Kind::II] {
                            let a = counting::unitary_order(&spec, m, kind)?;
                            let b = counting::unitary_order_alt(&spec, m, kind)?;
                            if a != b {
                                out.push(CheckReport::new(
                                    "filtration_expressions_agree",
                                    format!("{} m={} kind={}", spec, m, kind),
                                    a,
                                    b,
                                ));
                            }
                        }
                    }
                }
            }
        }
    }
    out.push(CheckReport::new("filtration_expressions_agree", "grid p in {3,5,7}, f in {1,2}, e<=4, m<=5".into(), "no mismatch", "no mismatch"));
    Ok(out)
}

/// The full suite for one grid setting.
pub fn run_suite(grid: Grid, budget: &OracleBudget) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    out.extend(check_orders(grid, budget)?);
    out.extend(check_fibers(budget)?);
    out.extend(check_reduction(budget)?);
    out.extend(check_orbits(budget)?);
    out.extend(check_identities()?);
    Ok(out)
}

/// Convenience for tests: all reports must pass.
pub fn all_pass(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let budget = OracleBudget::default();
        let reports = run_suite(Grid::Small, &budget).unwrap();
        for r in &reports {
            assert!(r.pass, "failed: {} {} expected {} got {}", r.check, r.instance, r.expected, r.actual);
        }
        assert!(reports.len() > 50);
    }
}
