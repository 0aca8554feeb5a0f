//! Closed-form evaluation of group orders, primitive-vector counts,
//! stabilizer orders, and Weil character degrees, in exact big-integer
//! arithmetic.
//!
//! The general order path runs through the radical filtration:
//! |U_m(A)| = |𝔯|^{m(m-1)/2}·|𝔰|^m·|U_m(A/𝔯)|, with the residue group an
//! orthogonal group O_m(q) (identity residue involution) or a unitary group
//! U_m(q²). The specialized closed forms for the four families are kept as
//! independent cross-checks, as are the rank-2 counts.

use crate::error::{Error, Result};
use crate::hermitian::Kind;
use crate::ring::{Family, FixedElement, Ring, RingSpec, StructConstants};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Classification of a length value t = h(u, u) for counting purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthClass {
    UnitSquare,
    UnitNonSquare,
    NonUnit,
}

impl LengthClass {
    pub fn is_unit(self) -> bool {
        !matches!(self, LengthClass::NonUnit)
    }

    /// Classify a concrete length value in its ring.
    pub fn of(ring: &Ring, t: &FixedElement) -> Result<LengthClass> {
        if ring.is_radical(t.as_el()) {
            Ok(LengthClass::NonUnit)
        } else if ring.is_square_unit(t)? {
            Ok(LengthClass::UnitSquare)
        } else {
            Ok(LengthClass::UnitNonSquare)
        }
    }
}

impl std::fmt::Display for LengthClass {
    fn fmt(&self, out: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LengthClass::UnitSquare => write!(out, "square"),
            LengthClass::UnitNonSquare => write!(out, "nonsquare"),
            LengthClass::NonUnit => write!(out, "nonunit"),
        }
    }
}

impl std::str::FromStr for LengthClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<LengthClass> {
        match s {
            "square" | "unit" => Ok(LengthClass::UnitSquare),
            "nonsquare" => Ok(LengthClass::UnitNonSquare),
            "nonunit" => Ok(LengthClass::NonUnit),
            _ => Err(Error::BadInput(format!(
                "unknown length class '{}', expected square|nonsquare|nonunit",
                s
            ))),
        }
    }
}

/// |O_m(q)| for the form of the given kind, built recursively from
/// |O₁(q)| = 2 and the one-step index ratios. For odd m the two kinds give
/// the same group order.
pub fn field_orthogonal_order(m: u32, q: &BigUint, kind: Kind) -> BigUint {
    if m == 0 {
        return BigUint::one();
    }
    if m == 1 {
        return BigUint::from(2u32);
    }
    if m % 2 == 0 {
        // |O_{2r}^κ| / |O_{2r-1}| = q^{r-1}(q^r ∓ 1), minus for kind I
        let r = m / 2;
        let ratio = match kind {
            Kind::I => q.pow(r - 1) * (q.pow(r) - BigUint::one()),
            Kind::II => q.pow(r - 1) * (q.pow(r) + BigUint::one()),
        };
        ratio * field_orthogonal_order(m - 1, q, Kind::I)
    } else {
        // |O_{2r+1}| / |O_{2r}^κ| = q^r(q^r ± 1), plus against kind I
        let r = (m - 1) / 2;
        let via_i = q.pow(r) * (q.pow(r) + BigUint::one()) * field_orthogonal_order(m - 1, q, Kind::I);
        debug_assert_eq!(
            via_i,
            q.pow(r) * (q.pow(r) - BigUint::one()) * field_orthogonal_order(m - 1, q, Kind::II)
        );
        via_i
    }
}

/// |U_m(q²)| = q^{m(m-1)/2}·∏_{i=1}^m (q^i - (-1)^i).
pub fn field_unitary_order(m: u32, q: &BigUint) -> BigUint {
    let mut out = q.pow(m * (m - 1) / 2);
    for i in 1..=m {
        let term = if i % 2 == 0 {
            q.pow(i) - BigUint::one()
        } else {
            q.pow(i) + BigUint::one()
        };
        out *= term;
    }
    out
}

/// |U_m(A)| through the radical filtration (the general path).
pub fn unitary_order(spec: &RingSpec, m: u32, kind: Kind) -> Result<BigUint> {
    spec.validate()?;
    if m == 0 {
        return Ok(BigUint::one());
    }
    let c = StructConstants::for_spec(spec);
    let residue = match spec.family {
        Family::Orthogonal | Family::Ramified => field_orthogonal_order(m, &c.q, kind),
        Family::Unramified | Family::Skew => field_unitary_order(m, &c.q),
    };
    Ok(c.card_radical.pow(m * (m - 1) / 2) * c.card_trace_zero.pow(m) * residue)
}

/// The second displayed expression of the filtration formula:
/// |𝔯|^{m(m+1)/2}·|U_m(A/𝔯)| / |𝔪|^m. Must agree with `unitary_order`.
pub fn unitary_order_alt(spec: &RingSpec, m: u32, kind: Kind) -> Result<BigUint> {
    spec.validate()?;
    if m == 0 {
        return Ok(BigUint::one());
    }
    let c = StructConstants::for_spec(spec);
    let residue = match spec.family {
        Family::Orthogonal | Family::Ramified => field_orthogonal_order(m, &c.q, kind),
        Family::Unramified | Family::Skew => field_unitary_order(m, &c.q),
    };
    let num = c.card_radical.pow(m * (m + 1) / 2) * residue;
    let den = c.card_fixed_radical.pow(m);
    let (quo, rem) = num.div_rem(&den);
    debug_assert!(rem == BigUint::from(0u32));
    Ok(quo)
}

/// Specialized closed forms per family (independent of the general path):
/// orthogonal q^{m(m-1)(e-1)/2}|O_m(q)|; unramified q^{m²(e-1)}|U_m(q²)|;
/// ramified q^{(m²(e-1)+m)/2}|O_m(q)| for even e and q^{m²(e-1)/2}|O_m(q)|
/// for odd e. No closed form is published for the skew family.
pub fn unitary_order_specialized(spec: &RingSpec, m: u32, kind: Kind) -> Option<BigUint> {
    let q = BigUint::from(spec.p).pow(spec.f);
    let e = spec.e;
    match spec.family {
        Family::Orthogonal => Some(q.pow(m * (m - 1) * (e - 1) / 2) * field_orthogonal_order(m, &q, kind)),
        Family::Unramified => Some(q.pow(m * m * (e - 1)) * field_unitary_order(m, &q)),
        Family::Ramified => {
            let exp = if e % 2 == 0 { (m * m * (e - 1) + m) / 2 } else { m * m * (e - 1) / 2 };
            Some(q.pow(exp) * field_orthogonal_order(m, &q, kind))
        }
        Family::Skew => None,
    }
}

/// |U_m(B)| for B = A/𝔯^ℓ with A the ramified ring of length 2ℓ: the same
/// ring with involution as the ramified family at e = ℓ.
pub fn ramified_quotient_order(p: u64, f: u32, l: u32, m: u32, kind: Kind) -> Result<BigUint> {
    let spec = RingSpec::new(Family::Ramified, p, f, l);
    unitary_order(&spec, m, kind)
}

/// Rank-1 order: |U| = |N|.
pub fn norm_one_order(spec: &RingSpec) -> BigUint {
    StructConstants::for_spec(spec).card_norm_one
}

/// Rank-2 order by the direct counts: |A*||A||N| / |R| in the isotropic
/// case, (|A|² - |𝔯|²)|N| / |R*| in the non-isotropic case.
pub fn m2_order(spec: &RingSpec, kind: Kind) -> Result<BigUint> {
    let c = StructConstants::for_spec(spec);
    let isotropic = c.norm_surjective || kind == Kind::I;
    let (num, den) = if isotropic {
        (&c.card_units * &c.card_ring * &c.card_norm_one, c.card_fixed.clone())
    } else {
        (
            (&c.card_ring * &c.card_ring - &c.card_radical * &c.card_radical) * &c.card_norm_one,
            c.card_fixed_units.clone(),
        )
    };
    let (quo, rem) = num.div_rem(&den);
    if rem != BigUint::from(0u32) {
        return Err(Error::InvalidQuery("rank-2 order formula is not integral".into()));
    }
    Ok(quo)
}

/// Is -1 a square in F_q? Exactly when q ≡ 1 (mod 4).
pub fn minus_one_is_square(q_mod_4: u64) -> bool {
    q_mod_4 % 4 == 1
}

/// Kind of the restriction b of the form to the complement of a unit-length
/// vector, for odd ambient rank: the four listed case combinations give
/// kind I, everything else kind II.
pub fn restricted_kind(h_kind: Kind, t_square: bool, q_mod_4: u64) -> Kind {
    let minus_one_square = minus_one_is_square(q_mod_4);
    let kind_i = match h_kind {
        Kind::I => (minus_one_square && t_square) || (!minus_one_square && !t_square),
        Kind::II => (!minus_one_square && t_square) || (minus_one_square && !t_square),
    };
    if kind_i {
        Kind::I
    } else {
        Kind::II
    }
}

/// d(s): the number of primitive vectors of length s. Rank 1 and 2 use the
/// direct counts; higher rank uses the index interpretation
/// d(s) = |U_m| / |S_u|.
pub fn primitive_count(spec: &RingSpec, m: u32, kind: Kind, class: LengthClass) -> Result<BigUint> {
    let c = StructConstants::for_spec(spec);
    let kind = if c.norm_surjective { Kind::I } else { kind };
    let zero = BigUint::from(0u32);
    match m {
        0 => Err(Error::InvalidQuery("rank must be >= 1".into())),
        1 => {
            // Λ is one square class of R* (or all of R* when the norm is
            // surjective): kind I types end in -1, kind II in -ε
            if class == LengthClass::NonUnit {
                return Ok(zero);
            }
            if c.norm_surjective {
                return Ok(c.card_norm_one);
            }
            let minus_one_square = minus_one_is_square(q_mod_4_of(&c));
            let type_is_square = match kind {
                Kind::I => minus_one_square,
                Kind::II => !minus_one_square,
            };
            let class_is_square = class == LengthClass::UnitSquare;
            if type_is_square == class_is_square {
                Ok(c.card_norm_one)
            } else {
                Ok(zero)
            }
        }
        2 => {
            let isotropic = c.norm_surjective || kind == Kind::I;
            if class == LengthClass::NonUnit {
                if !isotropic {
                    return Ok(zero);
                }
                return Ok(&c.card_units * &c.card_norm_one);
            }
            let total_prim = &c.card_ring * &c.card_ring - &c.card_radical * &c.card_radical;
            let num = if isotropic {
                total_prim - &c.card_units * &c.card_norm_one * &c.card_fixed_radical
            } else {
                total_prim
            };
            let (quo, rem) = num.div_rem(&c.card_fixed_units);
            debug_assert!(rem == zero);
            Ok(quo)
        }
        _ => {
            let u = unitary_order(spec, m, kind)?;
            let s = stabilizer_order(spec, m, kind, class)?;
            let (quo, rem) = u.div_rem(&s);
            if rem != zero {
                return Err(Error::InvalidQuery("stabilizer order does not divide the group order".into()));
            }
            Ok(quo)
        }
    }
}

fn q_mod_4_of(c: &StructConstants) -> u64 {
    use num_traits::ToPrimitive;
    (&c.q % BigUint::from(4u32)).to_u64().unwrap_or(3)
}

/// d(s) for an exact length value: classify s in its ring, then count.
pub fn primitive_count_exact(ring: &Ring, m: u32, kind: Kind, s: &FixedElement) -> Result<BigUint> {
    let class = LengthClass::of(ring, s)?;
    primitive_count(ring.spec(), m, kind, class)
}

/// |S_u| for a primitive vector u whose length falls in the given class.
/// Unit length: the unitary group of the rank-(m-1) restriction, whose kind
/// is `restricted_kind` when that matters. Non-unit length:
/// |U_{m-2}|·|A|^{m-1}/|R|, independent of the particular length.
pub fn stabilizer_order(spec: &RingSpec, m: u32, kind: Kind, class: LengthClass) -> Result<BigUint> {
    let c = StructConstants::for_spec(spec);
    let kind = if c.norm_surjective { Kind::I } else { kind };
    match class {
        LengthClass::UnitSquare | LengthClass::UnitNonSquare => {
            let sub_kind = if c.norm_surjective {
                Kind::I
            } else {
                restricted_kind(kind, class == LengthClass::UnitSquare, q_mod_4_of(&c))
            };
            unitary_order(spec, m - 1, sub_kind)
        }
        LengthClass::NonUnit => {
            if m < 2 {
                return Err(Error::NoSuchVector);
            }
            if m == 2 && !c.norm_surjective && kind == Kind::II {
                return Err(Error::NoSuchVector);
            }
            let sub = unitary_order(spec, m - 2, kind)?;
            let num = sub * c.card_ring.pow(m - 1);
            let (quo, rem) = num.div_rem(&c.card_fixed);
            debug_assert!(rem == BigUint::from(0u32));
            Ok(quo)
        }
    }
}

/// One Weil-degree record: the index [U_m(B) : S_u], the constant
/// c = 2q^{ℓ-f}, and their exact quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeilDegree {
    pub q: u64,
    pub l: u32,
    pub m: u32,
    pub kind: Kind,
    pub class: LengthClass,
    pub index: BigUint,
    pub c: BigUint,
    pub degree: BigUint,
    pub case: String,
}

/// Degree of an irreducible constituent of the top layer of the Weil module
/// of U_m over the ramified ring of length 2ℓ: [U_m(B) : S_u] / 2q^{ℓ-f}
/// with B = A/𝔯^ℓ and f = ⌈ℓ/2⌉. Everything depends only on q, ℓ, m, the
/// kind of the form, and the length class of the stabilized vector.
pub fn weil_degree(q: u64, l: u32, m: u32, kind: Kind, class: LengthClass) -> Result<WeilDegree> {
    if q < 3 || q % 2 == 0 {
        return Err(Error::InvalidQuery("q must be an odd prime power >= 3".into()));
    }
    if l < 1 {
        return Err(Error::InvalidQuery("l must be >= 1".into()));
    }
    if m < 2 {
        return Err(Error::InvalidQuery("degrees are 1 for m = 1; need m >= 2".into()));
    }
    let f = l.div_ceil(2);
    let qb = BigUint::from(q);
    let one = BigUint::one();
    let (index, case) = if class.is_unit() {
        if m % 2 == 1 {
            let r = (m - 1) / 2;
            let b = restricted_kind(kind, class == LengthClass::UnitSquare, q % 4);
            // q^{ml - m + r - f + 1}, grouped to stay unsigned
            let exp = (m * l + r + 1) - (m + f);
            let factor = if b == Kind::I { qb.pow(r) + &one } else { qb.pow(r) - &one };
            (qb.pow(exp) * factor, format!("t unit, m odd, b kind {}", b))
        } else {
            let r = m / 2;
            // q^{ml - m + r - f}
            let exp = (m * l + r) - (m + f);
            let factor = if kind == Kind::I { qb.pow(r) - &one } else { qb.pow(r) + &one };
            (qb.pow(exp) * factor, format!("t unit, m even, h kind {}", kind))
        }
    } else {
        if m == 2 && kind == Kind::II {
            return Err(Error::InvalidCase("non-unit lengths occur at m = 2 only for kind I".into()));
        }
        // q^{ml - m - l + f} for odd l, one more power of q for even l
        let exp = if l % 2 == 1 { (m * l + f) - (m + l) } else { (m * l + f + 1) - (m + l) };
        if m % 2 == 1 {
            (
                qb.pow(exp) * (qb.pow(m - 1) - &one),
                format!("t in m, l {}, m odd", if l % 2 == 1 { "odd" } else { "even" }),
            )
        } else {
            let r = m / 2;
            let factor = if kind == Kind::I {
                (qb.pow(r) - &one) * (qb.pow(r - 1) + &one)
            } else {
                (qb.pow(r) + &one) * (qb.pow(r - 1) - &one)
            };
            (
                qb.pow(exp) * factor,
                format!("t in m, l {}, m even, h kind {}", if l % 2 == 1 { "odd" } else { "even" }, kind),
            )
        }
    };
    let c = BigUint::from(2u32) * qb.pow(l - f);
    let (degree, rem) = index.div_rem(&c);
    if rem != BigUint::from(0u32) {
        return Err(Error::InvalidCase(format!(
            "constant c = {} does not divide the index {} at (q={}, l={}, m={}, {}, {})",
            c, index, q, l, m, kind, class
        )));
    }
    if degree < one {
        return Err(Error::InvalidCase("degree must be >= 1".into()));
    }
    Ok(WeilDegree { q, l, m, kind, class, index, c, degree, case })
}

/// The identity (|A| + |𝔯| - |N||𝔪|) / |R*| = |A| / |R|, checked exactly
/// from the structure constants.
pub fn identity_check(spec: &RingSpec) -> bool {
    let c = StructConstants::for_spec(spec);
    let lhs = (&c.card_ring + &c.card_radical - &c.card_norm_one * &c.card_fixed_radical) * &c.card_fixed;
    let rhs = &c.card_ring * &c.card_fixed_units;
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn field_orders() {
        let q3 = big(3);
        assert_eq!(field_orthogonal_order(1, &q3, Kind::I), big(2));
        assert_eq!(field_orthogonal_order(2, &q3, Kind::I), big(4));
        assert_eq!(field_orthogonal_order(2, &q3, Kind::II), big(8));
        assert_eq!(field_orthogonal_order(3, &q3, Kind::I), big(48));
        assert_eq!(field_orthogonal_order(3, &q3, Kind::II), big(48));
        assert_eq!(field_unitary_order(1, &q3), big(4));
        assert_eq!(field_unitary_order(2, &q3), big(96));
    }

    #[test]
    fn order_examples() {
        let z9 = RingSpec::new(Family::Orthogonal, 3, 1, 2);
        assert_eq!(unitary_order(&z9, 2, Kind::I).unwrap(), big(12));
        assert_eq!(unitary_order(&z9, 3, Kind::I).unwrap(), big(1296));

        let ram = RingSpec::new(Family::Ramified, 3, 1, 2);
        assert_eq!(unitary_order(&ram, 2, Kind::I).unwrap(), big(108));

        let skew = RingSpec::new(Family::Skew, 3, 1, 2);
        assert_eq!(unitary_order(&skew, 2, Kind::I).unwrap(), big(69984));
    }

    #[test]
    fn specialized_forms_agree_with_general() {
        let specs = [
            RingSpec::new(Family::Orthogonal, 3, 1, 1),
            RingSpec::new(Family::Orthogonal, 3, 1, 4),
            RingSpec::new(Family::Orthogonal, 5, 2, 3),
            RingSpec::new(Family::Ramified, 3, 1, 2),
            RingSpec::new(Family::Ramified, 3, 1, 5),
            RingSpec::new(Family::Ramified, 7, 1, 4),
            RingSpec::new(Family::Unramified, 3, 1, 3),
            RingSpec::new(Family::Unramified, 5, 1, 2),
        ];
        for spec in specs {
            for m in 1..=5 {
                for kind in [Kind::I, Kind::II] {
                    let general = unitary_order(&spec, m, kind).unwrap();
                    let special = unitary_order_specialized(&spec, m, kind).unwrap();
                    assert_eq!(general, special, "mismatch at {:?} m={} kind={}", spec, m, kind);
                    let alt = unitary_order_alt(&spec, m, kind).unwrap();
                    assert_eq!(general, alt);
                }
            }
        }
    }

    #[test]
    fn ramified_quotient_is_ramified_at_l() {
        for l in 1..=4 {
            for m in 1..=4 {
                for kind in [Kind::I, Kind::II] {
                    let direct = ramified_quotient_order(3, 1, l, m, kind).unwrap();
                    let spec = RingSpec::new(Family::Ramified, 3, 1, l);
                    assert_eq!(direct, unitary_order(&spec, m, kind).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_one_and_two_orders() {
        let z9 = RingSpec::new(Family::Orthogonal, 3, 1, 2);
        assert_eq!(norm_one_order(&z9), big(2));
        let ram = RingSpec::new(Family::Ramified, 3, 1, 2);
        assert_eq!(m2_order(&ram, Kind::I).unwrap(), big(108)); // 6·9·6/3
        assert_eq!(m2_order(&ram, Kind::II).unwrap(), big(216)); // (81-9)·6/2
        // the direct rank-2 count agrees with the filtration path
        for spec in [
            z9,
            ram,
            RingSpec::new(Family::Unramified, 3, 1, 2),
            RingSpec::new(Family::Skew, 3, 1, 3),
            RingSpec::new(Family::Ramified, 5, 1, 3),
        ] {
            for kind in [Kind::I, Kind::II] {
                assert_eq!(m2_order(&spec, kind).unwrap(), unitary_order(&spec, 2, kind).unwrap());
            }
        }
    }

    #[test]
    fn nonisotropic_rank2_group_is_larger() {
        for spec in [
            RingSpec::new(Family::Orthogonal, 3, 1, 2),
            RingSpec::new(Family::Ramified, 3, 1, 3),
            RingSpec::new(Family::Orthogonal, 7, 1, 2),
        ] {
            assert!(m2_order(&spec, Kind::II).unwrap() > m2_order(&spec, Kind::I).unwrap());
        }
    }

    #[test]
    fn primitive_count_examples() {
        let ram = RingSpec::new(Family::Ramified, 3, 1, 2);
        // d(s ∈ 𝔪) = |A*|·|N| = 6·6
        assert_eq!(primitive_count(&ram, 2, Kind::I, LengthClass::NonUnit).unwrap(), big(36));
        // per unit class: (|A|² - |𝔯|² - 36·|𝔪|)/|R*| = (81-9-36)/2
        assert_eq!(primitive_count(&ram, 2, Kind::I, LengthClass::UnitSquare).unwrap(), big(18));
        // kind II excludes non-units entirely
        assert_eq!(primitive_count(&ram, 2, Kind::II, LengthClass::NonUnit).unwrap(), big(0));

        let z9 = RingSpec::new(Family::Orthogonal, 3, 1, 2);
        assert_eq!(primitive_count(&z9, 2, Kind::I, LengthClass::NonUnit).unwrap(), big(12));

        // exact-value entry point classifies and delegates
        let r = Ring::make(z9).unwrap();
        let three = FixedElement::try_new(&r, r.from_i64(3)).unwrap();
        assert_eq!(primitive_count_exact(&r, 2, Kind::I, &three).unwrap(), big(12));
        let two = FixedElement::try_new(&r, r.from_i64(2)).unwrap();
        assert_eq!(
            primitive_count_exact(&r, 2, Kind::II, &two).unwrap(),
            primitive_count(&z9, 2, Kind::II, LengthClass::UnitNonSquare).unwrap()
        );
    }

    #[test]
    fn stabilizer_examples() {
        // m=2 non-unit: |S_u| = |A|/|R|
        let ram = RingSpec::new(Family::Ramified, 3, 1, 2);
        assert_eq!(stabilizer_order(&ram, 2, Kind::I, LengthClass::NonUnit).unwrap(), big(3));
        // index = 108/3 = 36 = d(0)
        assert_eq!(
            unitary_order(&ram, 2, Kind::I).unwrap() / stabilizer_order(&ram, 2, Kind::I, LengthClass::NonUnit).unwrap(),
            primitive_count(&ram, 2, Kind::I, LengthClass::NonUnit).unwrap()
        );
        assert_eq!(stabilizer_order(&ram, 2, Kind::II, LengthClass::NonUnit).unwrap_err(), Error::NoSuchVector);

        // m=3 over Z/9, unit square length: |O₂| of the restricted kind
        let z9 = RingSpec::new(Family::Orthogonal, 3, 1, 2);
        let s = stabilizer_order(&z9, 3, Kind::I, LengthClass::UnitSquare).unwrap();
        let b = restricted_kind(Kind::I, true, 3);
        assert_eq!(s, unitary_order(&z9, 2, b).unwrap());
    }

    #[test]
    fn restricted_kind_cases() {
        // q = 5: -1 is a square
        assert_eq!(restricted_kind(Kind::I, true, 5), Kind::I); // case (a)
        assert_eq!(restricted_kind(Kind::II, false, 5), Kind::I); // case (d)
        // q = 3: -1 is not a square
        assert_eq!(restricted_kind(Kind::I, true, 3), Kind::II);
        assert_eq!(restricted_kind(Kind::I, false, 3), Kind::I); // case (b)
        assert_eq!(restricted_kind(Kind::II, true, 3), Kind::I); // case (c)
        assert_eq!(restricted_kind(Kind::II, false, 3), Kind::II);
    }

    #[test]
    fn weil_degree_examples() {
        let d = weil_degree(3, 1, 2, Kind::I, LengthClass::UnitSquare).unwrap();
        assert_eq!((d.index, d.c, d.degree), (big(2), big(2), big(1)));

        let d = weil_degree(3, 1, 2, Kind::I, LengthClass::NonUnit).unwrap();
        assert_eq!((d.index, d.c, d.degree), (big(4), big(2), big(2)));

        let d = weil_degree(3, 1, 2, Kind::II, LengthClass::UnitSquare).unwrap();
        assert_eq!(d.index, big(4)); // q^{2l-f-1}(q+1) = 3⁰·4
        assert_eq!(d.degree, big(2));

        assert!(matches!(weil_degree(3, 1, 2, Kind::II, LengthClass::NonUnit), Err(Error::InvalidCase(_))));
        assert!(matches!(weil_degree(3, 1, 1, Kind::I, LengthClass::UnitSquare), Err(Error::InvalidQuery(_))));
    }

    /// The general-rank index formulas collapse at m = 2 to the direct
    /// rank-2 counts: q^{2l-f-1}(q∓1) for units, 2q^{2l-f-1}(q-1) for
    /// non-units.
    #[test]
    fn weil_degree_m2_closed_forms() {
        for q in [3u64, 5, 7, 9] {
            for l in 1..=4u32 {
                let f = l.div_ceil(2);
                let qb = big(q);
                let base = qb.pow(2 * l - f - 1);
                let got = weil_degree(q, l, 2, Kind::I, LengthClass::UnitSquare).unwrap();
                assert_eq!(got.index, &base * (qb.clone() - 1u32));
                let got = weil_degree(q, l, 2, Kind::II, LengthClass::UnitNonSquare).unwrap();
                assert_eq!(got.index, &base * (qb.clone() + 1u32));
                let got = weil_degree(q, l, 2, Kind::I, LengthClass::NonUnit).unwrap();
                assert_eq!(got.index, big(2) * &base * (qb.clone() - 1u32));
            }
        }
    }

    /// Every reachable case in the acceptance grid divides exactly and has
    /// degree >= 1 (checked inside `weil_degree`).
    #[test]
    fn weil_degree_grid_is_integral() {
        for q in [3u64, 5] {
            for l in 1..=3u32 {
                for m in 2..=6u32 {
                    for kind in [Kind::I, Kind::II] {
                        for class in [LengthClass::UnitSquare, LengthClass::UnitNonSquare, LengthClass::NonUnit] {
                            match weil_degree(q, l, m, kind, class) {
                                Ok(d) => {
                                    assert!(d.degree >= BigUint::one());
                                    assert_eq!(d.degree.clone() * d.c.clone(), d.index);
                                }
                                Err(Error::InvalidCase(_)) => {
                                    // the one excluded corner: m=2, kind II, non-unit
                                    assert!(m == 2 && kind == Kind::II && class == LengthClass::NonUnit);
                                }
                                Err(e) => panic!("unexpected error {:?}", e),
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn curious_identity_on_grid() {
        for p in [3u64, 5, 7] {
            for f in [1u32, 2] {
                for e in 1..=4u32 {
                    for family in [Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew] {
                        let spec = RingSpec::new(family, p, f, e);
                        if spec.validate().is_err() {
                            continue;
                        }
                        assert!(identity_check(&spec), "identity fails at {:?}", spec);
                    }
                }
            }
        }
    }

    #[test]
    fn filtration_internal_consistency() {
        // |𝔰| = |𝔯|/|𝔪| makes the two displayed expressions agree
        for family in [Family::Orthogonal, Family::Ramified, Family::Unramified, Family::Skew] {
            for e in 1..=4 {
                let spec = RingSpec::new(family, 3, 1, e);
                let c = StructConstants::for_spec(&spec);
                assert_eq!(&c.card_trace_zero * &c.card_fixed_radical, c.card_radical);
            }
        }
    }
}
