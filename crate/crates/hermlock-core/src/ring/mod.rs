//! Finite local rings with involution.
//!
//! Four concrete families, all with odd residue characteristic p and
//! q = p^f:
//!
//! * `Orthogonal`  — A = GR(p^e, f), identity involution, radical pA.
//! * `Ramified`    — A = GR(p^e, f)[ρ]/(ρ² - p) truncated at ρ^e = 0,
//!   written a₀ + a₁ρ with a₀ mod p^⌈e/2⌉ and a₁ mod p^⌊e/2⌋;
//!   involution ρ ↦ -ρ, radical ρA.
//! * `Unramified`  — A = GR(p^e, f)[τ], τ² = ν with ν a lifted non-square;
//!   involution τ ↦ -τ, radical pA.
//! * `Skew`        — A = S/(tⁿ) for the skew polynomial ring S over F_{q²}
//!   with ta = a^q t; involution a₀ + a₁t + a₂t² + ... ↦
//!   a₀^q - a₁t + a₂^q t² + ...; radical tA. Non-commutative for n ≥ 2.
//!
//! Elements are canonical coefficient vectors (one u64 per slot, slot
//! moduli fixed by the family); equality is coefficient-wise. The fixed
//! ring R of the involution is central in all four families.

mod galois;

pub(crate) use galois::Coeffs;

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Default cap on the number of ring elements `enumerate` will visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Orthogonal,
    Ramified,
    Unramified,
    Skew,
}

impl Family {
    fn tag(self) -> &'static str {
        match self {
            Family::Orthogonal => "orth",
            Family::Ramified => "ram",
            Family::Unramified => "unram",
            Family::Skew => "skew",
        }
    }
}

/// Construction data for one ring: family, odd prime p, residue degree f
/// (q = p^f) and the nilpotency degree e of the radical (the truncation
/// order n for the skew family).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    pub family: Family,
    pub p: u64,
    pub f: u32,
    pub e: u32,
}

impl RingSpec {
    pub fn new(family: Family, p: u64, f: u32, e: u32) -> Self {
        RingSpec { family, p, f, e }
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 3 || self.p % 2 == 0 {
            return Err(Error::InvalidSpec(format!("p = {} must be an odd prime", self.p)));
        }
        if !is_prime(self.p) {
            return Err(Error::InvalidSpec(format!("p = {} is not prime", self.p)));
        }
        if self.f < 1 {
            return Err(Error::InvalidSpec("f must be >= 1".into()));
        }
        if self.e < 1 {
            return Err(Error::InvalidSpec("e must be >= 1".into()));
        }
        // q and the slot moduli must fit comfortably in u64
        let bits = (self.p as f64).log2();
        let worst = match self.family {
            Family::Orthogonal | Family::Unramified => bits * (self.f as f64) * (self.e as f64),
            Family::Ramified => bits * (self.f as f64) * (self.e as f64),
            Family::Skew => bits * 2.0 * self.f as f64,
        };
        if worst > 62.0 || bits * self.f as f64 * self.e as f64 > 62.0 {
            return Err(Error::InvalidSpec("ring too large for u64 coefficients".into()));
        }
        Ok(())
    }

    /// Spec of the quotient A/𝔯^k: the same family with e = k.
    pub fn reduced(&self, k: u32) -> RingSpec {
        RingSpec { e: k, ..*self }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ek = if self.family == Family::Skew { "n" } else { "e" };
        write!(out, "{}:p={},f={},{}={}", self.family.tag(), self.p, self.f, ek, self.e)
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<RingSpec> {
        parse_spec(s)
    }
}

fn parse_spec(s: &str) -> Result<RingSpec> {
    let err = |pos: usize, expected: &str| Error::ParseSpec { pos, expected: expected.to_string() };
    let colon = s.find(':').ok_or_else(|| err(s.len(), "':' after family tag"))?;
    let family = match &s[..colon] {
        "orth" => Family::Orthogonal,
        "ram" => Family::Ramified,
        "unram" => Family::Unramified,
        "skew" => Family::Skew,
        _ => return Err(err(0, "one of orth|ram|unram|skew")),
    };
    let ek_key = if family == Family::Skew { "n" } else { "e" };
    let mut p = None;
    let mut f = None;
    let mut e = None;
    let mut pos = colon + 1;
    for part in s[colon + 1..].split(',') {
        let eq = part.find('=').ok_or_else(|| err(pos + part.len(), "'=' in key=value"))?;
        let key = &part[..eq];
        let val: u64 = part[eq + 1..]
            .parse()
            .map_err(|_| err(pos + eq + 1, "an unsigned integer"))?;
        match key {
            "p" => p = Some(val),
            "f" => f = Some(val),
            k if k == ek_key => e = Some(val),
            _ => return Err(err(pos, if family == Family::Skew { "one of p|f|n" } else { "one of p|f|e" })),
        }
        pos += part.len() + 1;
    }
    let p = p.ok_or_else(|| err(s.len(), "p=<prime>"))?;
    let f = f.ok_or_else(|| err(s.len(), "f=<degree>"))? as u32;
    let e = e.ok_or_else(|| err(s.len(), &format!("{}=<power>", ek_key)))? as u32;
    let spec = RingSpec::new(family, p, f, e);
    spec.validate()?;
    Ok(spec)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Cardinality data and structural flags of a ring, all exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructConstants {
    pub card_ring: BigUint,          // |A|
    pub card_units: BigUint,         // |A*|
    pub card_radical: BigUint,       // |𝔯|
    pub card_fixed: BigUint,         // |R|
    pub card_fixed_units: BigUint,   // |R*|
    pub card_fixed_radical: BigUint, // |𝔪|
    pub card_trace_zero: BigUint,    // |𝔰| = kernel of the trace 𝔯 → 𝔪
    pub card_norm_one: BigUint,      // |N| = kernel of the norm A* → R*
    pub q: BigUint,
    pub e: u32,
    pub norm_surjective: bool,
}

impl StructConstants {
    /// Closed-form constants; no element arithmetic required.
    pub fn for_spec(spec: &RingSpec) -> StructConstants {
        let q = BigUint::from(spec.p).pow(spec.f);
        let e = spec.e;
        let (card_ring, card_radical, card_fixed, card_fixed_radical, surj) = match spec.family {
            Family::Orthogonal => (q.pow(e), q.pow(e - 1), q.pow(e), q.pow(e - 1), false),
            Family::Ramified => {
                let ce = e.div_ceil(2);
                (q.pow(e), q.pow(e - 1), q.pow(ce), q.pow(ce - 1), false)
            }
            Family::Unramified => (q.pow(2 * e), q.pow(2 * (e - 1)), q.pow(e), q.pow(e - 1), true),
            Family::Skew => {
                let cn = e.div_ceil(2);
                (q.pow(2 * e), q.pow(2 * (e - 1)), q.pow(cn), q.pow(cn - 1), true)
            }
        };
        let card_units = &card_ring - &card_radical;
        let card_fixed_units = &card_fixed - &card_fixed_radical;
        let card_trace_zero = &card_radical / &card_fixed_radical;
        let card_norm_one = if surj {
            &card_units / &card_fixed_units
        } else {
            BigUint::from(2u32) * &card_units / &card_fixed_units
        };
        StructConstants {
            card_ring,
            card_units,
            card_radical,
            card_fixed,
            card_fixed_units,
            card_fixed_radical,
            card_trace_zero,
            card_norm_one,
            q,
            e,
            norm_surjective: surj,
        }
    }
}

#[derive(Debug)]
struct RingData {
    spec: RingSpec,
    q: u64,
    /// Low coefficients of the lifted monic irreducible of degree f.
    poly: Vec<u64>,
    /// Per-slot modulus of the canonical coefficient vector.
    slots: Vec<u64>,
    consts: StructConstants,
    /// ν for the unramified/skew quadratic extension (empty otherwise).
    nu: Vec<u64>,
    two_inv: OnceLock<Coeffs>,
    epsilon: OnceLock<Coeffs>,
    fq_squares: OnceLock<HashSet<Coeffs>>,
    residue_reps: OnceLock<Vec<Element>>,
    fixed_residue_reps: OnceLock<Vec<Element>>,
    norm_solutions: OnceLock<HashMap<Coeffs, Element>>,
}

/// Handle to a constructed ring. Cheap to clone and safe to share.
#[derive(Clone)]
pub struct Ring {
    data: Arc<RingData>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "Ring({})", self.data.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.data.spec)
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.data.spec == other.data.spec
    }
}
impl Eq for Ring {}

/// A ring element in canonical coefficient form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    spec: RingSpec,
    coeffs: Coeffs,
}

impl Element {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }
}

impl fmt::Display for Element {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(out, "{}", self.coeffs[0])
        } else {
            let strs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            write!(out, "[{}]", strs.join(","))
        }
    }
}

/// An element of the fixed ring R ⊆ Z(A).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FixedElement(Element);

impl FixedElement {
    pub fn try_new(ring: &Ring, el: Element) -> Result<FixedElement> {
        if !ring.is_fixed(&el) {
            return Err(Error::PreconditionViolated("element is not fixed by the involution".into()));
        }
        Ok(FixedElement(el))
    }
    pub(crate) fn unchecked(el: Element) -> FixedElement {
        FixedElement(el)
    }
    pub fn as_el(&self) -> &Element {
        &self.0
    }
    pub fn into_el(self) -> Element {
        self.0
    }
}

impl fmt::Display for FixedElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(out)
    }
}

/// Distinguished subsets of a ring for `enumerate`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subset {
    All,
    Units,
    Radical,
    Fixed,
    TraceZeroRadical,
    NormOne,
}

impl Ring {
    /// Construct a ring from its spec, validating the invariants.
    pub fn make(spec: RingSpec) -> Result<Ring> {
        spec.validate()?;
        let p = spec.p;
        let f = spec.f;
        let e = spec.e;
        let q = p.pow(f);
        let poly = galois::least_irreducible(p, f);
        let fl = f as usize;
        let slots: Vec<u64> = match spec.family {
            Family::Orthogonal => vec![p.pow(e); fl],
            Family::Ramified => {
                let ce = e.div_ceil(2);
                let fe = e / 2;
                let mut s = vec![p.pow(ce); fl];
                s.extend(vec![p.pow(fe); fl]);
                s
            }
            Family::Unramified => vec![p.pow(e); 2 * fl],
            Family::Skew => vec![p; 2 * fl * e as usize],
        };
        let consts = StructConstants::for_spec(&spec);
        let nu = match spec.family {
            Family::Unramified | Family::Skew => least_nonsquare_fq(p, f, &poly),
            _ => Vec::new(),
        };
        Ok(Ring {
            data: Arc::new(RingData {
                spec,
                q,
                poly,
                slots,
                consts,
                nu,
                two_inv: OnceLock::new(),
                epsilon: OnceLock::new(),
                fq_squares: OnceLock::new(),
                residue_reps: OnceLock::new(),
                fixed_residue_reps: OnceLock::new(),
                norm_solutions: OnceLock::new(),
            }),
        })
    }

    pub fn spec(&self) -> &RingSpec {
        &self.data.spec
    }
    pub fn constants(&self) -> &StructConstants {
        &self.data.consts
    }
    pub fn q(&self) -> u64 {
        self.data.q
    }
    pub fn e(&self) -> u32 {
        self.data.spec.e
    }
    pub fn is_commutative(&self) -> bool {
        self.data.spec.family != Family::Skew || self.data.spec.e == 1
    }
    pub fn norm_surjective(&self) -> bool {
        self.data.consts.norm_surjective
    }

    fn check(&self, a: &Element) {
        assert_eq!(a.spec, self.data.spec, "RingMismatch: element from {} used in {}", a.spec, self.data.spec);
    }

    fn wrap(&self, coeffs: Coeffs) -> Element {
        Element { spec: self.data.spec, coeffs }
    }

    fn wrap_vec(&self, coeffs: Vec<u64>) -> Element {
        Element { spec: self.data.spec, coeffs: Coeffs::from_vec(coeffs) }
    }

    pub fn zero(&self) -> Element {
        self.wrap(smallvec::smallvec![0; self.data.slots.len()])
    }

    pub fn one(&self) -> Element {
        self.from_i64(1)
    }

    /// Image of an integer under Z → A.
    pub fn from_i64(&self, k: i64) -> Element {
        let m = self.data.slots[0] as i128;
        let v = ((k as i128 % m) + m) % m;
        let mut c: Coeffs = smallvec::smallvec![0; self.data.slots.len()];
        c[0] = v as u64;
        self.wrap(c)
    }

    /// Canonical element from raw coefficients (validates slot ranges).
    pub fn from_coeffs(&self, coeffs: Vec<u64>) -> Result<Element> {
        if coeffs.len() != self.data.slots.len() {
            return Err(Error::BadInput(format!(
                "expected {} coefficients for {}, got {}",
                self.data.slots.len(),
                self.data.spec,
                coeffs.len()
            )));
        }
        for (i, (&c, &m)) in coeffs.iter().zip(&self.data.slots).enumerate() {
            if c >= m {
                return Err(Error::BadInput(format!("coefficient {} out of range: {} >= {}", i, c, m)));
            }
        }
        Ok(self.wrap_vec(coeffs))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        self.check(a);
        self.check(b);
        let c: Coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .zip(&self.data.slots)
            .map(|((&x, &y), &m)| ((x as u128 + y as u128) % m as u128) as u64)
            .collect();
        self.wrap(c)
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Element) -> Element {
        self.check(a);
        let c: Coeffs = a
            .coeffs
            .iter()
            .zip(&self.data.slots)
            .map(|(&x, &m)| if x == 0 { 0 } else { m - x })
            .collect();
        self.wrap(c)
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        self.check(a);
        self.check(b);
        let f = self.data.spec.f as usize;
        let poly = &self.data.poly;
        let coeffs = match self.data.spec.family {
            Family::Orthogonal => {
                let m = self.data.slots[0];
                galois::mul(&a.coeffs, &b.coeffs, m, poly)
            }
            Family::Ramified => {
                let mce = self.data.slots[0];
                let mfe = self.data.slots[f];
                let (a0, a1) = a.coeffs.split_at(f);
                let (b0, b1) = b.coeffs.split_at(f);
                // c0 = a0 b0 + p * a1 b1  (mod p^⌈e/2⌉)
                let mut c0 = galois::mul(a0, b0, mce, poly);
                if mfe > 1 {
                    let cross = galois::mul(a1, b1, mce, poly);
                    let cross = galois::scale(&cross, self.data.spec.p, mce);
                    c0 = galois::add(&c0, &cross, mce);
                }
                // c1 = a0 b1 + a1 b0  (mod p^⌊e/2⌋)
                let mut out = c0;
                if mfe > 1 {
                    let a0r = galois::reduce_mod(a0, mfe);
                    let b0r = galois::reduce_mod(b0, mfe);
                    let t1 = galois::mul(&a0r, b1, mfe, poly);
                    let t2 = galois::mul(a1, &b0r, mfe, poly);
                    out.extend(galois::add(&t1, &t2, mfe));
                } else {
                    out.extend(std::iter::repeat(0).take(f));
                }
                out
            }
            Family::Unramified => {
                let m = self.data.slots[0];
                let (a0, a1) = a.coeffs.split_at(f);
                let (b0, b1) = b.coeffs.split_at(f);
                let mut c0 = galois::mul(a0, b0, m, poly);
                let t = galois::mul(a1, b1, m, poly);
                let t = galois::mul(&t, &self.data.nu, m, poly);
                c0 = galois::add(&c0, &t, m);
                let mut c1 = galois::mul(a0, b1, m, poly);
                c1 = galois::add(&c1, &galois::mul(a1, b0, m, poly), m);
                c0.extend(c1);
                c0
            }
            Family::Skew => {
                let n = self.data.spec.e as usize;
                let w = 2 * f; // block width: one F_{q²} element
                let p = self.data.spec.p;
                let mut out: Coeffs = smallvec::smallvec![0u64; w * n];
                for i in 0..n {
                    let ai = &a.coeffs[i * w..(i + 1) * w];
                    if galois::is_zero(ai) {
                        continue;
                    }
                    for j in 0..n - i {
                        let bj = &b.coeffs[j * w..(j + 1) * w];
                        if galois::is_zero(bj) {
                            continue;
                        }
                        // t^i · b = Frob^i(b) · t^i, Frob = conjugation τ ↦ -τ
                        let bj_tw: Coeffs = if i % 2 == 1 { self.fq2_conj(bj) } else { Coeffs::from_slice(bj) };
                        let prod = self.fq2_mul(ai, &bj_tw);
                        let dst = &mut out[(i + j) * w..(i + j + 1) * w];
                        for (d, v) in dst.iter_mut().zip(&prod) {
                            *d = ((*d as u128 + *v as u128) % p as u128) as u64;
                        }
                    }
                }
                out
            }
        };
        self.wrap(coeffs)
    }

    /// F_{q²} = F_q[τ]/(τ² - ν) product at modulus p.
    fn fq2_mul(&self, a: &[u64], b: &[u64]) -> Coeffs {
        let f = self.data.spec.f as usize;
        let p = self.data.spec.p;
        let poly = &self.data.poly;
        let (a0, a1) = a.split_at(f);
        let (b0, b1) = b.split_at(f);
        let mut c0 = galois::mul(a0, b0, p, poly);
        let t = galois::mul(a1, b1, p, poly);
        let t = galois::mul(&t, &self.data.nu, p, poly);
        c0 = galois::add(&c0, &t, p);
        let mut c1 = galois::mul(a0, b1, p, poly);
        c1 = galois::add(&c1, &galois::mul(a1, b0, p, poly), p);
        c0.extend(c1);
        c0
    }

    fn fq2_conj(&self, a: &[u64]) -> Coeffs {
        let f = self.data.spec.f as usize;
        let p = self.data.spec.p;
        let (a0, a1) = a.split_at(f);
        let mut c = Coeffs::from_slice(a0);
        c.extend(galois::neg(a1, p));
        c
    }

    /// The involution of the ring.
    pub fn conj(&self, a: &Element) -> Element {
        self.check(a);
        let f = self.data.spec.f as usize;
        let coeffs = match self.data.spec.family {
            Family::Orthogonal => a.coeffs.clone(),
            Family::Ramified => {
                let mfe = self.data.slots[f];
                let (a0, a1) = a.coeffs.split_at(f);
                let mut c = Coeffs::from_slice(a0);
                c.extend(galois::neg(a1, mfe));
                c
            }
            Family::Unramified => {
                let m = self.data.slots[0];
                let (a0, a1) = a.coeffs.split_at(f);
                let mut c = Coeffs::from_slice(a0);
                c.extend(galois::neg(a1, m));
                c
            }
            Family::Skew => {
                let n = self.data.spec.e as usize;
                let w = 2 * f;
                let p = self.data.spec.p;
                let mut out = Coeffs::with_capacity(w * n);
                for i in 0..n {
                    let ai = &a.coeffs[i * w..(i + 1) * w];
                    if i % 2 == 0 {
                        out.extend(self.fq2_conj(ai));
                    } else {
                        out.extend(galois::neg(ai, p));
                    }
                }
                out
            }
        };
        self.wrap(coeffs)
    }

    pub fn is_zero(&self, a: &Element) -> bool {
        self.check(a);
        galois::is_zero(&a.coeffs)
    }

    pub fn is_fixed(&self, a: &Element) -> bool {
        self.conj(a) == *a
    }

    /// Radical membership. Locality makes this the complement of the units.
    pub fn is_radical(&self, a: &Element) -> bool {
        self.check(a);
        let f = self.data.spec.f as usize;
        let p = self.data.spec.p;
        match self.data.spec.family {
            Family::Orthogonal | Family::Unramified => a.coeffs.iter().all(|&c| c % p == 0),
            Family::Ramified => a.coeffs[..f].iter().all(|&c| c % p == 0),
            Family::Skew => galois::is_zero(&a.coeffs[..2 * f]),
        }
    }

    pub fn is_unit(&self, a: &Element) -> bool {
        !self.is_radical(a)
    }

    /// Largest k with a ∈ 𝔯^k; valuation(0) = e by convention.
    pub fn valuation(&self, a: &Element) -> u32 {
        self.check(a);
        let f = self.data.spec.f as usize;
        let p = self.data.spec.p;
        let e = self.data.spec.e;
        match self.data.spec.family {
            Family::Orthogonal => galois::p_valuation(&a.coeffs, p, e),
            Family::Unramified => galois::p_valuation(&a.coeffs, p, e).min(e),
            Family::Ramified => {
                let ce = e.div_ceil(2);
                let fe = e / 2;
                let v0 = galois::p_valuation(&a.coeffs[..f], p, ce);
                let v1 = galois::p_valuation(&a.coeffs[f..], p, fe);
                (2 * v0).min(2 * v1 + 1).min(e)
            }
            Family::Skew => {
                let w = 2 * f;
                for i in 0..e as usize {
                    if !galois::is_zero(&a.coeffs[i * w..(i + 1) * w]) {
                        return i as u32;
                    }
                }
                e
            }
        }
    }

    /// Exact inverse of a unit. `NotAUnit` on radical input.
    pub fn inv(&self, a: &Element) -> Result<Element> {
        if self.is_radical(a) {
            return Err(Error::NotAUnit);
        }
        // Residue-field inverse by Fermat, then Newton to full precision.
        let qbar = match self.data.spec.family {
            Family::Orthogonal | Family::Ramified => self.data.q,
            Family::Unramified | Family::Skew => self.data.q * self.data.q,
        };
        let mut x = self.pow(a, qbar - 2);
        let two = self.from_i64(2);
        for _ in 0..=self.data.spec.e.ilog2() + 1 {
            let ax = self.mul(a, &x);
            if ax == self.one() {
                break;
            }
            x = self.mul(&x, &self.sub(&two, &ax));
        }
        debug_assert_eq!(self.mul(a, &x), self.one());
        debug_assert_eq!(self.mul(&x, a), self.one());
        Ok(x)
    }

    pub fn pow(&self, a: &Element, mut n: u64) -> Element {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    /// trace(a) = a + a*, an element of R.
    pub fn trace(&self, a: &Element) -> FixedElement {
        FixedElement::unchecked(self.add(a, &self.conj(a)))
    }

    /// norm(a) = a·a*, an element of R.
    pub fn norm(&self, a: &Element) -> FixedElement {
        FixedElement::unchecked(self.mul(a, &self.conj(a)))
    }

    /// d with d + d* = 1; here d = 1/2 since p is odd.
    pub fn half(&self) -> FixedElement {
        let c = self
            .data
            .two_inv
            .get_or_init(|| self.inv(&self.from_i64(2)).expect("2 is a unit").coeffs);
        FixedElement::unchecked(self.wrap(c.clone()))
    }

    // ----- residue-field machinery -----

    /// Canonical lifts of the residue division ring A/𝔯, in enumeration order.
    pub fn residue_reps(&self) -> &[Element] {
        self.data.residue_reps.get_or_init(|| {
            let f = self.data.spec.f as usize;
            let p = self.data.spec.p;
            let free = match self.data.spec.family {
                Family::Orthogonal | Family::Ramified => f,
                Family::Unramified | Family::Skew => 2 * f,
            };
            let total = p.pow(free as u32);
            let mut out = Vec::with_capacity(total as usize);
            for idx in 0..total {
                let mut c: Coeffs = smallvec::smallvec![0u64; self.data.slots.len()];
                let mut n = idx;
                for slot in c.iter_mut().take(free) {
                    *slot = n % p;
                    n /= p;
                }
                out.push(self.wrap(c));
            }
            out
        })
    }

    /// Canonical lifts of F_q = R/𝔪 inside R, in enumeration order.
    pub fn fixed_residue_reps(&self) -> &[Element] {
        self.data.fixed_residue_reps.get_or_init(|| {
            let f = self.data.spec.f as usize;
            let p = self.data.spec.p;
            let mut out = Vec::with_capacity(self.data.q as usize);
            for idx in 0..self.data.q {
                let mut c: Coeffs = smallvec::smallvec![0u64; self.data.slots.len()];
                let mut n = idx;
                for slot in c.iter_mut().take(f) {
                    *slot = n % p;
                    n /= p;
                }
                out.push(self.wrap(c));
            }
            out
        })
    }

    /// Residue coordinates of a fixed element in F_q (length-f vector mod p).
    fn fq_residue_key(&self, a: &Element) -> Coeffs {
        let f = self.data.spec.f as usize;
        let p = self.data.spec.p;
        a.coeffs[..f].iter().map(|&c| c % p).collect()
    }

    fn fq_square_keys(&self) -> &HashSet<Coeffs> {
        self.data.fq_squares.get_or_init(|| {
            let mut set = HashSet::new();
            for x in self.fixed_residue_reps() {
                if self.is_zero(x) {
                    continue;
                }
                let sq = self.mul(x, x);
                set.insert(self.fq_residue_key(&sq));
            }
            set
        })
    }

    /// Is the unit r a square in R*? Decided on residues: 1 + 𝔪 ⊆ R*².
    pub fn is_square_unit(&self, r: &FixedElement) -> Result<bool> {
        if self.is_radical(r.as_el()) {
            return Err(Error::NotAUnit);
        }
        Ok(self.fq_square_keys().contains(&self.fq_residue_key(r.as_el())))
    }

    /// The cached non-square unit ε of R: lift of the least non-square
    /// residue of F_q in enumeration order.
    pub fn epsilon(&self) -> FixedElement {
        let c = self.data.epsilon.get_or_init(|| {
            for x in self.fixed_residue_reps() {
                if self.is_zero(x) {
                    continue;
                }
                if !self.fq_square_keys().contains(&self.fq_residue_key(x)) {
                    return x.coeffs.clone();
                }
            }
            unreachable!("F_q with q odd has non-squares")
        });
        FixedElement::unchecked(self.wrap(c.clone()))
    }

    /// Square root in 1 + 𝔪 by Newton iteration from x₀ = 1.
    pub fn sqrt_one_plus_m(&self, u: &FixedElement) -> Result<FixedElement> {
        let diff = self.sub(u.as_el(), &self.one());
        if !self.is_radical(&diff) {
            return Err(Error::NotInOnePlusM);
        }
        let mut x = self.one();
        let half = self.half();
        for _ in 0..=self.data.spec.e {
            let err = self.sub(&self.mul(&x, &x), u.as_el());
            if galois::is_zero(&err.coeffs) {
                return Ok(FixedElement::unchecked(x));
            }
            // x ← x - (x² - u) / (2x)
            let step = self.mul(&self.mul(&err, &half.0), &self.inv(&x)?);
            x = self.sub(&x, &step);
        }
        // Newton doubles the precision each round, so e rounds suffice.
        unreachable!("sqrt_one_plus_m failed to converge");
    }

    /// Square root of a square unit of R: residue search then one Hensel
    /// correction through `sqrt_one_plus_m`.
    pub fn sqrt_unit(&self, r: &FixedElement) -> Result<FixedElement> {
        if self.is_radical(r.as_el()) {
            return Err(Error::NotAUnit);
        }
        for x in self.fixed_residue_reps() {
            if self.is_zero(x) {
                continue;
            }
            let d = self.sub(&self.mul(x, x), r.as_el());
            if self.is_radical(&d) {
                let u = FixedElement::unchecked(self.mul(r.as_el(), &self.inv(&self.mul(x, x))?));
                let corr = self.sqrt_one_plus_m(&u)?;
                return Ok(FixedElement::unchecked(self.mul(x, corr.as_el())));
            }
        }
        Err(Error::NotASquare)
    }

    /// Find a ∈ A* with a·a* = r. Residue search over A/𝔯, then absorb the
    /// 1 + 𝔪 discrepancy with a central square root. Solutions for the whole
    /// of R* are tabulated once per ring when R is small.
    pub fn solve_norm_equation(&self, r: &FixedElement) -> Result<Element> {
        if self.is_radical(r.as_el()) {
            return Err(Error::NotAUnit);
        }
        if self.data.consts.card_fixed.to_u64().is_some_and(|n| n <= 4096) {
            let table = self.data.norm_solutions.get_or_init(|| {
                let mut map = HashMap::new();
                let card = self.data.consts.card_fixed.to_u64().unwrap();
                // R sits in the enumeration of A only implicitly; scan all
                // fixed elements through their index in a small loop
                let mut seen = 0u64;
                let total = self.card_u64().unwrap_or(u64::MAX);
                let mut idx = 0u64;
                while seen < card && idx < total {
                    let a = self.element_from_index(idx);
                    idx += 1;
                    if !self.is_fixed(&a) {
                        continue;
                    }
                    seen += 1;
                    if self.is_radical(&a) {
                        continue;
                    }
                    if let Ok(sol) = self.solve_norm_uncached(&a) {
                        map.insert(a.coeffs.clone(), sol);
                    }
                }
                map
            });
            return match table.get(&r.as_el().coeffs) {
                Some(sol) => Ok(sol.clone()),
                None => Err(Error::NotANorm),
            };
        }
        self.solve_norm_uncached(r.as_el())
    }

    fn solve_norm_uncached(&self, r: &Element) -> Result<Element> {
        for cand in self.residue_reps() {
            if self.is_radical(cand) {
                continue;
            }
            let n = self.norm(cand);
            let d = self.sub(n.as_el(), r);
            if self.is_radical(&d) {
                let u = FixedElement::unchecked(self.mul(r, &self.inv(n.as_el())?));
                let x = self.sqrt_one_plus_m(&u)?;
                let a = self.mul(cand, x.as_el());
                debug_assert_eq!(*self.norm(&a).as_el(), *r);
                return Ok(a);
            }
        }
        Err(Error::NotANorm)
    }

    // ----- enumeration -----

    pub fn card_u64(&self) -> Option<u64> {
        self.data.consts.card_ring.to_u64()
    }

    pub fn element_from_index(&self, mut idx: u64) -> Element {
        let mut c = Coeffs::with_capacity(self.data.slots.len());
        for &m in &self.data.slots {
            c.push(idx % m);
            idx /= m;
        }
        self.wrap(c)
    }

    pub fn enumerate(&self, subset: Subset) -> Result<Vec<Element>> {
        self.enumerate_budgeted(subset, DEFAULT_ENUM_BUDGET)
    }

    /// Every element of the subset exactly once, in deterministic order.
    pub fn enumerate_budgeted(&self, subset: Subset, budget: u64) -> Result<Vec<Element>> {
        let card = self
            .card_u64()
            .filter(|&c| c <= budget)
            .ok_or_else(|| Error::BudgetExceeded(format!("|A| for {} exceeds budget {}", self.data.spec, budget)))?;
        let one = self.one();
        let mut out = Vec::new();
        for idx in 0..card {
            let a = self.element_from_index(idx);
            let keep = match subset {
                Subset::All => true,
                Subset::Units => self.is_unit(&a),
                Subset::Radical => self.is_radical(&a),
                Subset::Fixed => self.is_fixed(&a),
                Subset::TraceZeroRadical => self.is_radical(&a) && self.is_zero(self.trace(&a).as_el()),
                Subset::NormOne => self.is_unit(&a) && *self.norm(&a).as_el() == one,
            };
            if keep {
                out.push(a);
            }
        }
        Ok(out)
    }

    // ----- reduction and lifting along A → A/𝔯^k -----

    /// The quotient ring A/𝔯^k.
    pub fn quotient(&self, k: u32) -> Result<Ring> {
        if k < 1 || k > self.data.spec.e {
            return Err(Error::InvalidQuery(format!("ideal power {} out of range 1..={}", k, self.data.spec.e)));
        }
        Ring::make(self.data.spec.reduced(k))
    }

    /// Canonical projection of an element into A/𝔯^k.
    pub fn reduce_element(&self, a: &Element, target: &Ring) -> Element {
        self.check(a);
        let t = target.data.spec;
        assert!(
            t.family == self.data.spec.family && t.p == self.data.spec.p && t.f == self.data.spec.f && t.e <= self.data.spec.e,
            "RingMismatch: {} is not a quotient of {}",
            target.data.spec,
            self.data.spec
        );
        let f = t.f as usize;
        let coeffs: Coeffs = match t.family {
            Family::Orthogonal | Family::Unramified => galois::reduce_mod(&a.coeffs, target.data.slots[0]),
            Family::Ramified => {
                let mut c = galois::reduce_mod(&a.coeffs[..f], target.data.slots[0]);
                c.extend(galois::reduce_mod(&a.coeffs[f..2 * f], target.data.slots[f]));
                c
            }
            Family::Skew => Coeffs::from_slice(&a.coeffs[..2 * f * t.e as usize]),
        };
        target.wrap(coeffs)
    }

    /// Canonical lift of an element of a quotient back into this ring:
    /// the coefficient-wise inclusion of canonical representatives.
    pub fn lift_element(&self, a: &Element, source: &Ring) -> Element {
        source.check(a);
        let s = source.data.spec;
        assert!(
            s.family == self.data.spec.family && s.p == self.data.spec.p && s.f == self.data.spec.f && s.e <= self.data.spec.e,
            "RingMismatch: {} is not a quotient of {}",
            source.data.spec,
            self.data.spec
        );
        let coeffs: Coeffs = match s.family {
            Family::Orthogonal | Family::Unramified | Family::Ramified => a.coeffs.clone(),
            Family::Skew => {
                let mut c = a.coeffs.clone();
                c.resize(self.data.slots.len(), 0);
                c
            }
        };
        self.wrap(coeffs)
    }
}

/// F_q coefficients (< p) of the least non-square of F_q in enumeration order.
fn least_nonsquare_fq(p: u64, f: u32, poly: &[u64]) -> Vec<u64> {
    let q = p.pow(f);
    let fl = f as usize;
    let decode = |idx: u64| {
        let mut c = Vec::with_capacity(fl);
        let mut n = idx;
        for _ in 0..fl {
            c.push(n % p);
            n /= p;
        }
        c
    };
    let mut squares: HashSet<Vec<u64>> = HashSet::new();
    for idx in 1..q {
        let x = decode(idx);
        squares.insert(galois::mul(&x, &x, p, poly).to_vec());
    }
    for idx in 1..q {
        let x = decode(idx);
        if !squares.contains(&x) {
            return x;
        }
    }
    unreachable!("non-squares exist in F_q for odd q")
}

impl Ring {
    /// Cross-check helper: cardinalities recomputed by exhaustive
    /// enumeration. Only valid within the enumeration budget.
    pub fn constants_by_enumeration(&self, budget: u64) -> Result<StructConstants> {
        let all = self.enumerate_budgeted(Subset::All, budget)?;
        let units = all.iter().filter(|a| self.is_unit(a)).count();
        let radical = all.iter().filter(|a| self.is_radical(a)).count();
        let fixed: Vec<_> = all.iter().filter(|a| self.is_fixed(a)).collect();
        let fixed_radical = fixed.iter().filter(|a| self.is_radical(a)).count();
        let trace_zero = all
            .iter()
            .filter(|a| self.is_radical(a) && self.is_zero(self.trace(a).as_el()))
            .count();
        let one = self.one();
        let norm_one = all
            .iter()
            .filter(|a| self.is_unit(a) && *self.norm(a).as_el() == one)
            .count();
        // Norm image decides surjectivity.
        let mut image = HashSet::new();
        for a in &all {
            if self.is_unit(a) {
                image.insert(self.norm(a).as_el().clone());
            }
        }
        let fixed_units = fixed.len() - fixed_radical;
        Ok(StructConstants {
            card_ring: BigUint::from(all.len()),
            card_units: BigUint::from(units),
            card_radical: BigUint::from(radical),
            card_fixed: BigUint::from(fixed.len()),
            card_fixed_units: BigUint::from(fixed_units),
            card_fixed_radical: BigUint::from(fixed_radical),
            card_trace_zero: BigUint::from(trace_zero),
            card_norm_one: BigUint::from(norm_one),
            q: BigUint::from(self.data.q),
            e: self.data.spec.e,
            norm_surjective: image.len() == fixed_units,
        })
    }
}
