//! Constructive unitary-group machinery.
//!
//! Everything here returns matrices that satisfy g*′Gg = G *exactly*; the
//! [`UnitaryElement`] constructor asserts it. The main constructions:
//!
//! * `transitivity_witness` — g with gv = w for primitive v, w of equal
//!   length (weak Witt extension).
//! * `reduce` / `lift` — the canonical epimorphism U_m(A) → U_m(A/𝔯^k) and
//!   an explicit section of it, built by induction on the rank with
//!   `correction_step` repairing lifted Gram data.
//! * `kernel_enumerate` — the kernel of the epimorphism when the ideal
//!   squares to zero, parametrized by a linear matrix equation.
//! * `stabilizer_completion` / `solve_quadratic` — completing a prescribed
//!   top row to a stabilizer element of a primitive vector of non-unit
//!   length, in the normal-form basis with Gram [[r,1,0],[1,0,0],[0,0,D]].

use crate::error::{Error, Result};
use crate::hermitian::HermitianSpace;
use crate::linalg::Mat;
use crate::ring::{Element, FixedElement, Ring, Subset};
use std::fmt;

/// An element of the unitary group of a space, kept with its space handle.
#[derive(Clone, PartialEq)]
pub struct UnitaryElement {
    space: HermitianSpace,
    mat: Mat,
}

impl fmt::Debug for UnitaryElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "UnitaryElement({:?})", self.mat)
    }
}

/// A power 𝔦 = 𝔯^k of the radical, 1 ≤ k ≤ e. Automatically *-invariant in
/// all four families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealPower(pub u32);

impl UnitaryElement {
    pub fn new(space: HermitianSpace, mat: Mat) -> Result<UnitaryElement> {
        if mat.rows() != space.rank() || mat.cols() != space.rank() {
            return Err(Error::DimensionMismatch("unitary element must be m×m".into()));
        }
        if mat.ring() != space.ring() {
            return Err(Error::RingMismatch);
        }
        if !is_unitary(&space, &mat)? {
            return Err(Error::NotUnitaryInput);
        }
        Ok(UnitaryElement { space, mat })
    }

    pub fn identity(space: HermitianSpace) -> UnitaryElement {
        let mat = Mat::identity(space.ring(), space.rank());
        UnitaryElement { space, mat }
    }

    pub fn space(&self) -> &HermitianSpace {
        &self.space
    }
    pub fn mat(&self) -> &Mat {
        &self.mat
    }

    pub fn apply(&self, v: &Mat) -> Result<Mat> {
        self.mat.matmul(v)
    }

    pub fn compose(&self, other: &UnitaryElement) -> Result<UnitaryElement> {
        if self.space != other.space {
            return Err(Error::RingMismatch);
        }
        Ok(UnitaryElement { space: self.space.clone(), mat: self.mat.matmul(&other.mat)? })
    }

    pub fn inverse(&self) -> UnitaryElement {
        UnitaryElement { space: self.space.clone(), mat: self.mat.invert().expect("unitary is invertible") }
    }

    /// Image under the canonical epimorphism U_m(A) → U_m(A/𝔯^k).
    pub fn reduce(&self, k: IdealPower) -> Result<UnitaryElement> {
        let space = self.space.reduce(k.0)?;
        let target = space.ring().clone();
        UnitaryElement::new(space, self.mat.reduced(&target))
    }
}

/// Does g preserve the form: g*′ G g = G, exactly?
pub fn is_unitary(space: &HermitianSpace, g: &Mat) -> Result<bool> {
    if g.rows() != space.rank() || g.cols() != space.rank() {
        return Err(Error::DimensionMismatch("is_unitary expects an m×m matrix".into()));
    }
    if g.ring() != space.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(g.conj_transpose().matmul(space.gram())?.matmul(g)? == *space.gram())
}

/// g ∈ U with g·v = w, for primitive v, w of equal length.
///
/// Unit length: split off vA and wA and map the complements onto each other
/// by a congruence witness. Non-unit length: extend each vector to a pair
/// with Gram [[r, 1], [1, 0]] and glue the complement identification.
pub fn transitivity_witness(space: &HermitianSpace, v: &Mat, w: &Mat) -> Result<UnitaryElement> {
    let ring = space.ring();
    if !space.is_primitive(v) || !space.is_primitive(w) {
        return Err(Error::NotPrimitive);
    }
    let r = space.length(v)?;
    if r != space.length(w)? {
        return Err(Error::LengthMismatch);
    }
    let (basis_v, basis_w) = if ring.is_unit(r.as_el()) {
        (v.clone(), w.clone())
    } else {
        let zv = isotropic_partner(space, v)?;
        let zw = isotropic_partner(space, w)?;
        (v.hcat(&zv)?, w.hcat(&zw)?)
    };
    let comp_v = space.perp_basis(&basis_v)?;
    let comp_w = space.perp_basis(&basis_w)?;
    let (full_v, full_w) = if comp_v.cols() == 0 {
        (basis_v, basis_w)
    } else {
        let sub_v = space.restricted(&comp_v)?;
        let sub_w = space.restricted(&comp_w)?;
        // X with X*′ C_w X = C_v, so that comp_w·X has the Gram of comp_v
        let x = sub_w.equivalence_witness(&sub_v)?;
        (basis_v.hcat(&comp_v)?, basis_w.hcat(&comp_w.matmul(&x)?)?)
    };
    // both full bases carry the same Gram, so mapping one onto the other
    // preserves h
    let g = full_w.matmul(&full_v.invert()?)?;
    debug_assert_eq!(g.matmul(v).unwrap(), *w);
    UnitaryElement::new(space.clone(), g)
}

/// For a primitive v of non-unit length r, a vector z with
/// Gram(v, z) = [[r, 1], [1, 0]].
///
/// Take u with h(v, u) = 1 and s = h(u, u), and look for z = u(1-rβ) + vβ:
/// the pairing h(v, z) = 1 holds identically, and h(z, z) = 0 collapses to
/// rβ*β - (β + β*) = s(1 - sr)^{-1}, the balanced quadratic.
fn isotropic_partner(space: &HermitianSpace, v: &Mat) -> Result<Mat> {
    let ring = space.ring();
    let r = space.length(v)?;
    let u = space.dual_partner(v, &ring.one())?;
    let s = space.length(&u)?;
    let one_minus_sr = ring.sub(&ring.one(), &ring.mul(s.as_el(), r.as_el()));
    let target = FixedElement::unchecked(ring.mul(s.as_el(), &ring.inv(&one_minus_sr)?));
    let beta = solve_quadratic(ring, &r, &target)?;
    let alpha = ring.sub(&ring.one(), &ring.mul(r.as_el(), &beta));
    let mut z = u;
    z.scale_col_right(0, &alpha);
    let mut vb = v.clone();
    vb.scale_col_right(0, &beta);
    let z = z.add(&vb)?;
    debug_assert_eq!(space.eval_form(v, &z)?, ring.one());
    debug_assert!(ring.is_zero(space.length(&z)?.as_el()));
    Ok(z)
}

/// Given an orthogonal basis (columns of `u_cols`, Gram diag(D)) and lifted
/// images `v_cols` satisfying the Gram relations mod 𝔯 (all pairs) and mod
/// 𝔦 = 𝔯^k (first vector against all), find w ∈ 𝔦V with
/// h(v₁+w, v_i+w) = h(u₁, u_i) exactly. The discrepancy ideal squares every
/// round, so ⌈log₂ e⌉ + 1 rounds suffice.
pub fn correction_step(space: &HermitianSpace, u_cols: &Mat, v_cols: &Mat, k: IdealPower) -> Result<Mat> {
    let ring = space.ring();
    let m = space.rank();
    if u_cols.cols() != m || v_cols.cols() != m {
        return Err(Error::DimensionMismatch("correction_step expects m columns".into()));
    }
    let e = ring.e();
    for i in 0..m {
        for j in 0..m {
            let hu = space.eval_form(&u_cols.col(i), &u_cols.col(j))?;
            let hv = space.eval_form(&v_cols.col(i), &v_cols.col(j))?;
            let diff = ring.sub(&hu, &hv);
            if !ring.is_zero(&diff) && !ring.is_radical(&diff) {
                return Err(Error::PreconditionViolated(format!(
                    "h(v_{i}, v_{j}) does not match h(u_{i}, u_{j}) mod the radical"
                )));
            }
            if i == 0 && ring.valuation(&diff) < k.0 {
                return Err(Error::PreconditionViolated(format!(
                    "h(v_1, v_{j}) does not match h(u_1, u_{j}) mod the ideal"
                )));
            }
        }
    }
    let half = ring.half();
    let mut w_total = Mat::zero(ring, m, 1);
    let mut cur = v_cols.clone();
    let mut level = k.0;
    for _ in 0..=e.ilog2() + 2 {
        let mut diffs = Vec::with_capacity(m);
        let mut all_zero = true;
        for i in 0..m {
            let hu = space.eval_form(&u_cols.col(0), &u_cols.col(i))?;
            let hv = space.eval_form(&cur.col(0), &cur.col(i))?;
            let a = ring.sub(&hu, &hv);
            all_zero &= ring.is_zero(&a);
            diffs.push(a);
        }
        if all_zero {
            return Ok(w_total);
        }
        debug_assert!(diffs.iter().all(|a| ring.valuation(a) >= level.min(e)));
        // solve h(w, v₁) = a₁/2 and h(w, v_i) = a_i - a₁/2 through the
        // invertible Gram matrix of the current columns
        let a1_half = ring.mul(&diffs[0], half.as_el());
        let mut row = Mat::zero(ring, 1, m);
        *row.at_mut(0, 0) = a1_half.clone();
        for i in 1..m {
            *row.at_mut(0, i) = ring.sub(&diffs[i], &a1_half);
        }
        // w*′ G [v₁..v_m] = row  ⇒  w*′ = row · (G·V)^{-1}
        let gv = space.gram().matmul(&cur)?;
        let w = row.matmul(&gv.invert()?)?.conj_transpose();
        for i in 0..m {
            let col = cur.col(i).add(&w)?;
            for rr in 0..m {
                *cur.at_mut(rr, i) = col.at(rr, 0).clone();
            }
        }
        w_total = w_total.add(&w)?;
        level = (2 * level).min(e);
    }
    Err(Error::PreconditionViolated("correction step failed to converge".into()))
}

/// Lift ḡ ∈ U_m(A/𝔯^k) through the canonical epimorphism: returns g over the
/// ring of `space` with reduce(g, k) = ḡ. Induction on the rank; rank one is
/// a norm adjustment by a central square root.
pub fn lift(space: &HermitianSpace, gbar: &UnitaryElement) -> Result<UnitaryElement> {
    let ring = space.ring();
    let small = gbar.space().ring();
    let spec = ring.spec();
    let sspec = small.spec();
    if sspec.family != spec.family || sspec.p != spec.p || sspec.f != spec.f || sspec.e > spec.e {
        return Err(Error::NotUnitaryInput);
    }
    let k = IdealPower(sspec.e);
    if *gbar.space() != space.reduce(k.0)? {
        return Err(Error::NotUnitaryInput);
    }
    let g = lift_rec(space, gbar, k)?;
    let out = UnitaryElement::new(space.clone(), g)?;
    debug_assert_eq!(out.reduce(k).unwrap().mat(), gbar.mat());
    Ok(out)
}

fn lift_rec(space: &HermitianSpace, gbar: &UnitaryElement, k: IdealPower) -> Result<Mat> {
    let ring = space.ring();
    let small = gbar.space().ring();
    let m = space.rank();
    if m == 1 {
        // z̄z̄* = 1; lift z and divide by the square root of zz* ∈ 1 + 𝔪
        let z = ring.lift_element(gbar.mat().at(0, 0), small);
        let n = ring.norm(&z);
        let x = ring.sqrt_one_plus_m(&n)?;
        let g = ring.mul(&z, &ring.inv(x.as_el())?);
        return Mat::new(ring.clone(), 1, 1, vec![g]);
    }
    let (p, _d) = space.orthogonalize_raw();
    // images of the reduced orthogonal basis under ḡ, lifted coefficientwise
    let vbar = gbar.mat().matmul(&p.reduced(small))?;
    let v_lift = vbar.lifted(ring);
    let w = correction_step(space, &p, &v_lift, k)?;
    let mut v_corr = v_lift.clone();
    for i in 0..m {
        let col = v_lift.col(i).add(&w)?;
        for rr in 0..m {
            *v_corr.at_mut(rr, i) = col.at(rr, 0).clone();
        }
    }
    let v1 = v_corr.col(0);
    // witness k ∈ U with k·u₁ = v₁ (lengths agree exactly after correction)
    let kwit = transitivity_witness(space, &p.col(0), &v1)?;
    // complement bases: u₂..u_m and the corrected v₂..v_m
    let b0 = p.select_cols(&(1..m).collect::<Vec<_>>());
    let b1 = v_corr.select_cols(&(1..m).collect::<Vec<_>>());
    let c0 = b0.conj_transpose().matmul(space.gram())?.matmul(&b0)?;
    let c1 = b1.conj_transpose().matmul(space.gram())?.matmul(&b1)?;
    // coordinates of k(u_i) in the basis b1 of v₁^⊥
    let k_cols = kwit.mat().matmul(&b0)?;
    let k0 = c1.invert()?.matmul(&b1.conj_transpose())?.matmul(space.gram())?.matmul(&k_cols)?;
    // the defect k̄₀^{-1}·f₀ is unitary for the reduced complement; lift it
    let sub = HermitianSpace::new(c0)?;
    let sub_small = sub.reduce(k.0)?;
    let defect = k0.reduced(small).invert()?;
    let defect_el = UnitaryElement::new(sub_small, defect)?;
    let g1 = lift_rec(&sub, &defect_el, k)?;
    // g sends u₁ ↦ v₁ and u_i ↦ b1·(k0·g1)·e_i
    let image = v1.hcat(&b1.matmul(&k0)?.matmul(&g1)?)?;
    let src = p.col(0).hcat(&b0)?;
    image.matmul(&src.invert()?)
}

/// All elements of the kernel of U(A) → U(A/𝔯^k), for 𝔦 = 𝔯^k with 𝔦² = 0:
/// the matrices 1 + M with M*′X + XM = 0 in an orthogonal basis. The count
/// is |𝔦|^{m(m-1)/2}·|𝔨|^m with 𝔨 = {a ∈ 𝔦 : a + a* = 0}.
pub fn kernel_enumerate(space: &HermitianSpace, k: IdealPower, budget: u64) -> Result<Vec<UnitaryElement>> {
    let ring = space.ring();
    let m = space.rank();
    let e = ring.e();
    if 2 * k.0 < e {
        return Err(Error::IdealNotSquareZero);
    }
    let all = ring.enumerate_budgeted(Subset::All, budget)?;
    let ideal: Vec<Element> = all.iter().filter(|a| ring.valuation(a) >= k.0).cloned().collect();
    let kk: Vec<Element> = ideal.iter().filter(|a| ring.is_zero(ring.trace(a).as_el())).cloned().collect();
    let pairs = (m * (m - 1) / 2) as u32;
    let total = (ideal.len() as u64)
        .checked_pow(pairs)
        .and_then(|t| t.checked_mul((kk.len() as u64).checked_pow(m as u32)?))
        .ok_or_else(|| Error::BudgetExceeded("kernel size overflows".into()))?;
    if total > budget {
        return Err(Error::BudgetExceeded(format!("kernel has {} elements, budget {}", total, budget)));
    }
    let (p, d) = space.orthogonalize_raw();
    let p_inv = p.invert()?;
    // free slots: strict upper triangle over 𝔦, diagonal over 𝔨;
    // M_{ji} = -conj(M_{ij})·D_i·D_j^{-1} is then forced
    let mut slots: Vec<(usize, usize, &Vec<Element>)> = Vec::new();
    for i in 0..m {
        slots.push((i, i, &kk));
        for j in i + 1..m {
            slots.push((i, j, &ideal));
        }
    }
    let mut counters = vec![0usize; slots.len()];
    let mut out = Vec::with_capacity(total as usize);
    loop {
        let mut mat = Mat::zero(ring, m, m);
        for (slot, &(i, j, choices)) in counters.iter().zip(&slots) {
            let val = choices[*slot].clone();
            if i == j {
                *mat.at_mut(i, i) = val;
            } else {
                let mirrored = ring.neg(&ring.mul(
                    &ring.mul(&ring.conj(&val), d[i].as_el()),
                    &ring.inv(d[j].as_el())?,
                ));
                *mat.at_mut(i, j) = val;
                *mat.at_mut(j, i) = mirrored;
            }
        }
        let g = p.matmul(&Mat::identity(ring, m).add(&mat)?)?.matmul(&p_inv)?;
        out.push(UnitaryElement::new(space.clone(), g)?);
        // mixed-radix increment over the free slots
        let mut pos = 0;
        loop {
            if pos == counters.len() {
                return Ok(out);
            }
            counters[pos] += 1;
            if counters[pos] < slots[pos].2.len() {
                break;
            }
            counters[pos] = 0;
            pos += 1;
        }
    }
}

/// a ∈ A with r·a*a - (a + a*) = t, for r ∈ 𝔪 and t ∈ R. Iteration
/// a ← a + f(a)/2 from a₀ = -t/2 gains a factor r in f per round, so at
/// most e rounds are needed.
pub fn solve_quadratic(ring: &Ring, r: &FixedElement, t: &FixedElement) -> Result<Element> {
    if !ring.is_radical(r.as_el()) {
        return Err(Error::RNotInRadical);
    }
    let half = ring.half();
    let f = |a: &Element| -> Element {
        let raa = ring.mul(r.as_el(), &ring.mul(&ring.conj(a), a));
        ring.sub(&ring.sub(&raa, ring.trace(a).as_el()), t.as_el())
    };
    let mut a = ring.neg(&ring.mul(t.as_el(), half.as_el()));
    for _ in 0..=ring.e() {
        let fa = f(&a);
        if ring.is_zero(&fa) {
            return Ok(a);
        }
        a = ring.add(&a, &ring.mul(&fa, half.as_el()));
    }
    Err(Error::PreconditionViolated("quadratic iteration failed to converge".into()))
}

/// Validate the normal-form Gram [[r,1,0],[1,0,0],[0,0,D]]: returns
/// (r, diagonal entries of D).
fn normal_form_parts(space: &HermitianSpace) -> Result<(FixedElement, Vec<FixedElement>)> {
    let ring = space.ring();
    let m = space.rank();
    if m <= 2 {
        return Err(Error::BadNormalForm("need rank m > 2".into()));
    }
    let g = space.gram();
    let r = g.at(0, 0).clone();
    if !ring.is_fixed(&r) || !ring.is_radical(&r) {
        return Err(Error::BadNormalForm("corner entry must lie in 𝔪".into()));
    }
    if *g.at(0, 1) != ring.one() || *g.at(1, 0) != ring.one() || !ring.is_zero(g.at(1, 1)) {
        return Err(Error::BadNormalForm("top-left block must be [[r,1],[1,0]]".into()));
    }
    let mut d = Vec::with_capacity(m - 2);
    for i in 2..m {
        for j in 0..2 {
            if !ring.is_zero(g.at(i, j)) || !ring.is_zero(g.at(j, i)) {
                return Err(Error::BadNormalForm("pair block must be orthogonal to the rest".into()));
            }
        }
        for j in 2..m {
            if i != j && !ring.is_zero(g.at(i, j)) {
                return Err(Error::BadNormalForm("bottom-right block must be diagonal".into()));
            }
        }
        let di = g.at(i, i).clone();
        if !ring.is_unit(&di) || !ring.is_fixed(&di) {
            return Err(Error::BadNormalForm("diagonal entries must be fixed units".into()));
        }
        d.push(FixedElement::unchecked(di));
    }
    Ok((FixedElement::unchecked(r), d))
}

/// The space with Gram [[r,1,0],[1,0,0],[0,0,diag]] that
/// `stabilizer_completion` operates on.
pub fn normal_form_space(ring: &Ring, r: &FixedElement, diag: &[FixedElement]) -> Result<HermitianSpace> {
    let m = diag.len() + 2;
    let mut g = Mat::zero(ring, m, m);
    *g.at_mut(0, 0) = r.as_el().clone();
    *g.at_mut(0, 1) = ring.one();
    *g.at_mut(1, 0) = ring.one();
    for (i, di) in diag.iter().enumerate() {
        *g.at_mut(i + 2, i + 2) = di.as_el().clone();
    }
    HermitianSpace::new(g)
}

/// Complete a prescribed row C ∈ A^{m-2} to an element
/// G(C, Y, a, X) = [[1, a, C], [0, 1-ra, -rC], [0, X, Y]] of the stabilizer
/// of u = e₁. Y is solved column by column from Y*′DY = D + rC*′C, a from
/// the balanced quadratic, X from Y*′DX = C*′(ar - 1).
pub fn stabilizer_completion(space: &HermitianSpace, c: &Mat) -> Result<UnitaryElement> {
    let ring = space.ring();
    let m = space.rank();
    let (r, d) = normal_form_parts(space)?;
    let n = m - 2;
    if c.rows() != 1 || c.cols() != n {
        return Err(Error::DimensionMismatch(format!("C must be 1×{}", n)));
    }
    if c.ring() != ring {
        return Err(Error::RingMismatch);
    }
    // T = r·C*′C, hermitian with diagonal in 𝔪
    let t = c.conj_transpose().matmul(c)?.scale_left(r.as_el());
    // Y upper triangular: unit diagonal from central square roots,
    // off-diagonal entries in 𝔯
    let mut y = Mat::zero(ring, n, n);
    for j in 0..n {
        for i in 0..j {
            // Σ_{k<=i} Y_{ki}* D_k Y_{kj} = T_{ij}
            let mut acc = t.at(i, j).clone();
            for kk in 0..i {
                let term = ring.mul(&ring.mul(&ring.conj(y.at(kk, i)), d[kk].as_el()), y.at(kk, j));
                acc = ring.sub(&acc, &term);
            }
            let yii_inv = ring.inv(&ring.conj(y.at(i, i)))?;
            let val = ring.mul(&ring.inv(d[i].as_el())?, &ring.mul(&yii_inv, &acc));
            *y.at_mut(i, j) = val;
        }
        // D_j Y_jj* Y_jj = D_j + T_jj - Σ_{k<j} Y_{kj}* D_k Y_{kj}
        let mut acc = t.at(j, j).clone();
        for kk in 0..j {
            let term = ring.mul(&ring.mul(&ring.conj(y.at(kk, j)), d[kk].as_el()), y.at(kk, j));
            acc = ring.sub(&acc, &term);
        }
        let val = ring.add(&ring.one(), &ring.mul(&ring.inv(d[j].as_el())?, &acc));
        let yjj = ring.sqrt_one_plus_m(&FixedElement::unchecked(val))?;
        *y.at_mut(j, j) = yjj.into_el();
    }
    // k = C (D + rC*′C)^{-1} C*′ ∈ R; solve ra*a - (a+a*) = k(1-rk)^{-1}
    let d_mat = Mat::diag(ring, &d.iter().map(|x| x.as_el().clone()).collect::<Vec<_>>());
    let core = d_mat.add(&t)?.invert()?;
    let k_scalar = c.matmul(&core)?.matmul(&c.conj_transpose())?.at(0, 0).clone();
    debug_assert!(ring.is_fixed(&k_scalar));
    let one_minus_rk = ring.sub(&ring.one(), &ring.mul(r.as_el(), &k_scalar));
    let t_target = FixedElement::unchecked(ring.mul(&k_scalar, &ring.inv(&one_minus_rk)?));
    let a = solve_quadratic(ring, &r, &t_target)?;
    // X from Y*′DX = C*′(ar - 1)
    let ar_minus_1 = ring.sub(&ring.mul(&a, r.as_el()), &ring.one());
    let mut rhs = c.conj_transpose();
    for i in 0..n {
        let v = ring.mul(rhs.at(i, 0), &ar_minus_1);
        rhs.set(i, 0, v);
    }
    let x = y.conj_transpose().matmul(&d_mat)?.invert()?.matmul(&rhs)?;
    // assemble G(C, Y, a, X)
    let mut g = Mat::zero(ring, m, m);
    *g.at_mut(0, 0) = ring.one();
    *g.at_mut(0, 1) = a.clone();
    *g.at_mut(1, 1) = ring.sub(&ring.one(), &ring.mul(r.as_el(), &a));
    for j in 0..n {
        *g.at_mut(0, 2 + j) = c.at(0, j).clone();
        *g.at_mut(1, 2 + j) = ring.neg(&ring.mul(r.as_el(), c.at(0, j)));
        *g.at_mut(2 + j, 1) = x.at(j, 0).clone();
        for i in 0..n {
            *g.at_mut(2 + i, 2 + j) = y.at(i, j).clone();
        }
    }
    let out = UnitaryElement::new(space.clone(), g)?;
    debug_assert_eq!(out.mat().col(0), space.basis_vector(0));
    Ok(out)
}
