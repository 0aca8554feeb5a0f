//! Brute-force ground truth on tiny instances: full unitary-group
//! enumeration, primitive-vector length fibers, and orbit/stabilizer data.
//!
//! The group search is column-constrained: column j ranges only over the
//! vectors v with h(c_i, v) = G_ij for the columns already chosen and
//! h(v, v) = G_jj. Any matrix assembled this way satisfies g*′Gg = G by
//! construction, and conversely. Iteration order is deterministic so
//! failures reproduce bit-exactly.

use crate::error::{Error, Result};
use crate::group::UnitaryElement;
use crate::hermitian::HermitianSpace;
use crate::linalg::Mat;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

/// Search limits enforced before enumeration begins.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    /// Constraint evaluations allowed during the column search.
    pub max_nodes: u64,
    /// Largest |A| accepted.
    pub max_ring: u64,
    /// Largest rank accepted.
    pub max_rank: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_nodes: 100_000_000, max_ring: 81, max_rank: 3 }
    }
}

impl OracleBudget {
    fn admit(&self, space: &HermitianSpace) -> Result<u64> {
        let card = space
            .ring()
            .constants()
            .card_ring
            .to_u64()
            .filter(|&c| c <= self.max_ring)
            .ok_or_else(|| Error::BudgetExceeded(format!("|A| exceeds oracle limit {}", self.max_ring)))?;
        if space.rank() > self.max_rank {
            return Err(Error::BudgetExceeded(format!("rank exceeds oracle limit {}", self.max_rank)));
        }
        card.checked_pow(space.rank() as u32)
            .ok_or_else(|| Error::BudgetExceeded("vector space too large".into()))
    }
}

/// All column vectors of A^m with their lengths precomputed.
fn vector_pool(space: &HermitianSpace, budget: &OracleBudget) -> Result<Vec<(Mat, Vec<u64>)>> {
    let total = budget.admit(space)?;
    let ring = space.ring();
    let card = ring.card_u64().expect("admitted");
    let m = space.rank();
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut digits = idx;
        let v = Mat::from_fn(ring, m, 1, |_, _| {
            let el = ring.element_from_index(digits % card);
            digits /= card;
            el
        });
        let len = space.length(&v)?.as_el().coeffs().to_vec();
        out.push((v, len));
    }
    Ok(out)
}

/// Exactly the set {g : g*′Gg = G}, as a vector in deterministic order.
pub fn enumerate_group(space: &HermitianSpace, budget: &OracleBudget) -> Result<Vec<UnitaryElement>> {
    let pool = vector_pool(space, budget)?;
    let mut nodes: u64 = 0;
    let mut out: Vec<UnitaryElement> = Vec::new();
    // rows of constraints for the already chosen columns: c_i*′ G
    let mut chosen: Vec<Mat> = Vec::new();
    let mut rows: Vec<Mat> = Vec::new();
    fn place(
        space: &HermitianSpace,
        pool: &[(Mat, Vec<u64>)],
        chosen: &mut Vec<Mat>,
        rows: &mut Vec<Mat>,
        out: &mut Vec<UnitaryElement>,
        nodes: &mut u64,
        budget: &OracleBudget,
    ) -> Result<()> {
        let ring = space.ring();
        let m = space.rank();
        let j = chosen.len();
        if j == m {
            let mut g = chosen[0].clone();
            for c in &chosen[1..] {
                g = g.hcat(c)?;
            }
            out.push(UnitaryElement::new(space.clone(), g)?);
            return Ok(());
        }
        let want_len = space.gram().at(j, j).coeffs().to_vec();
        'cand: for (v, len) in pool {
            *nodes += 1;
            if *nodes > budget.max_nodes {
                return Err(Error::BudgetExceeded(format!("oracle node budget {} exhausted", budget.max_nodes)));
            }
            if *len != want_len {
                continue;
            }
            for (i, row) in rows.iter().enumerate() {
                *nodes += 1;
                let mut acc = ring.zero();
                for k in 0..m {
                    acc = ring.add(&acc, &ring.mul(row.at(0, k), v.at(k, 0)));
                }
                if acc != *space.gram().at(i, j) {
                    continue 'cand;
                }
            }
            chosen.push(v.clone());
            rows.push(v.conj_transpose().matmul(space.gram())?);
            place(space, pool, chosen, rows, out, nodes, budget)?;
            chosen.pop();
            rows.pop();
        }
        Ok(())
    }
    place(space, &pool, &mut chosen, &mut rows, &mut out, &mut nodes, budget)?;
    Ok(out)
}

/// Count of primitive vectors per exact length value, keyed by the
/// canonical coefficients of the length.
pub fn length_fibers(space: &HermitianSpace, budget: &OracleBudget) -> Result<BTreeMap<Vec<u64>, u64>> {
    let pool = vector_pool(space, budget)?;
    let mut fibers = BTreeMap::new();
    for (v, len) in &pool {
        if space.is_primitive(v) {
            *fibers.entry(len.clone()).or_insert(0) += 1;
        }
    }
    Ok(fibers)
}

/// Orbit size of v under the full group, together with the stabilizer
/// elements. |orbit|·|stab| = |U| by orbit-stabilizer.
pub fn orbit_and_stabilizer(v: &Mat, group: &[UnitaryElement]) -> Result<(u64, Vec<UnitaryElement>)> {
    let mut orbit = std::collections::BTreeSet::new();
    let mut stab = Vec::new();
    for g in group {
        let gv = g.apply(v)?;
        if gv == *v {
            stab.push(g.clone());
        }
        let key: Vec<u64> = gv.entries().iter().flat_map(|e| e.coeffs().to_vec()).collect();
        orbit.insert(key);
    }
    Ok((orbit.len() as u64, stab))
}

/// Closure/identity/inverse sanity of an enumerated set (sampled closure
/// when the full product table would be large).
pub fn check_group_axioms(group: &[UnitaryElement]) -> Result<bool> {
    if group.is_empty() {
        return Ok(false);
    }
    let space = group[0].space().clone();
    let id = Mat::identity(space.ring(), space.rank());
    let keys: std::collections::BTreeSet<Vec<u64>> = group.iter().map(|g| mat_key(g.mat())).collect();
    if !keys.contains(&mat_key(&id)) {
        return Ok(false);
    }
    let step = (group.len() / 64).max(1);
    for (i, g) in group.iter().enumerate().step_by(step) {
        if !keys.contains(&mat_key(&g.inverse().mat().clone())) {
            return Ok(false);
        }
        for (j, h) in group.iter().enumerate().step_by(step) {
            let _ = (i, j);
            let prod = g.compose(h)?;
            if !keys.contains(&mat_key(prod.mat())) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn mat_key(m: &Mat) -> Vec<u64> {
    m.entries().iter().flat_map(|e| e.coeffs().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hermitian::Kind;
    use crate::ring::{Family, Ring, RingSpec};

    fn ring(family: Family, p: u64, f: u32, e: u32) -> Ring {
        Ring::make(RingSpec::new(family, p, f, e)).unwrap()
    }

    fn space(r: &Ring, rows: &[&[i64]]) -> HermitianSpace {
        HermitianSpace::new(Mat::from_i64(r, rows)).unwrap()
    }

    #[test]
    fn group_sizes_over_f3() {
        let f3 = ring(Family::Orthogonal, 3, 1, 1);
        let budget = OracleBudget::default();
        let g1 = enumerate_group(&space(&f3, &[&[1, 0], &[0, -1]]), &budget).unwrap();
        assert_eq!(g1.len(), 4);
        assert!(check_group_axioms(&g1).unwrap());
        let g2 = enumerate_group(&space(&f3, &[&[1, 0], &[0, -2]]), &budget).unwrap();
        assert_eq!(g2.len(), 8);
        assert!(check_group_axioms(&g2).unwrap());
    }

    #[test]
    fn group_size_over_ramified() {
        let rr = ring(Family::Ramified, 3, 1, 2);
        let budget = OracleBudget::default();
        let g = enumerate_group(&space(&rr, &[&[1, 0], &[0, -1]]), &budget).unwrap();
        assert_eq!(g.len(), 108);
        assert!(check_group_axioms(&g).unwrap());
    }

    #[test]
    fn fibers_over_f3() {
        let f3 = ring(Family::Orthogonal, 3, 1, 1);
        let budget = OracleBudget::default();
        let fibers = length_fibers(&space(&f3, &[&[1, 0], &[0, -1]]), &budget).unwrap();
        let get = |k: i64| fibers.get(&vec![k.rem_euclid(3) as u64]).copied().unwrap_or(0);
        assert_eq!((get(0), get(1), get(2)), (4, 2, 2));

        // non-isotropic form has empty fiber at 0
        let fibers = length_fibers(&space(&f3, &[&[1, 0], &[0, -2]]), &budget).unwrap();
        assert_eq!(fibers.get(&vec![0]).copied().unwrap_or(0), 0);
    }

    #[test]
    fn fibers_over_ramified() {
        let rr = ring(Family::Ramified, 3, 1, 2);
        let budget = OracleBudget::default();
        let fibers = length_fibers(&space(&rr, &[&[1, 0], &[0, -1]]), &budget).unwrap();
        // all non-unit lengths: only 0 is in 𝔪 here; d(0) = |A*||N| = 36
        assert_eq!(fibers.get(&vec![0, 0]).copied().unwrap(), 36);
        let total: u64 = fibers.values().sum();
        assert_eq!(total, 9 * 9 - 3 * 3);
    }

    #[test]
    fn orbit_stabilizer_over_f3() {
        let f3 = ring(Family::Orthogonal, 3, 1, 1);
        let budget = OracleBudget::default();
        let s = space(&f3, &[&[1, 0], &[0, -1]]);
        let group = enumerate_group(&s, &budget).unwrap();
        let (orbit, stab) = orbit_and_stabilizer(&s.basis_vector(0), &group).unwrap();
        assert_eq!((orbit, stab.len()), (2, 2));
        let iso = s.basis_vector(0).add(&s.basis_vector(1)).unwrap();
        let (orbit, stab) = orbit_and_stabilizer(&iso, &group).unwrap();
        assert_eq!((orbit, stab.len()), (4, 1));
    }

    #[test]
    fn orbits_equal_length_fibers() {
        let z9 = ring(Family::Orthogonal, 3, 1, 2);
        let budget = OracleBudget::default();
        for kind in [Kind::I, Kind::II] {
            let s = HermitianSpace::standard(&z9, 2, kind).unwrap();
            let group = enumerate_group(&s, &budget).unwrap();
            let fibers = length_fibers(&s, &budget).unwrap();
            // orbit of e₁ must be the whole fiber of its length
            let v = s.basis_vector(0);
            let key = s.length(&v).unwrap().as_el().coeffs().to_vec();
            let (orbit, stab) = orbit_and_stabilizer(&v, &group).unwrap();
            assert_eq!(orbit, fibers[&key]);
            assert_eq!(orbit * stab.len() as u64, group.len() as u64);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let z9 = ring(Family::Orthogonal, 3, 1, 2);
        let s = HermitianSpace::standard(&z9, 2, Kind::I).unwrap();
        let budget = OracleBudget { max_nodes: 10, ..Default::default() };
        assert!(matches!(enumerate_group(&s, &budget), Err(Error::BudgetExceeded(_))));
        let budget = OracleBudget { max_ring: 3, ..Default::default() };
        assert!(matches!(enumerate_group(&s, &budget), Err(Error::BudgetExceeded(_))));
    }
}
