//! Hermitian spaces (V, h) of finite rank over a local ring with involution.
//!
//! A space is a rank together with an invertible Gram matrix G = G*′; h is
//! evaluated as h(u, v) = u*′ G v, linear in the second slot. The module
//! provides orthogonal bases normalized to the standard types, kind
//! classification by discriminant class, congruence witnesses, and explicit
//! primitive vectors of prescribed length.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::ring::{Element, FixedElement, Ring};
use std::fmt;

/// The two equivalence classes of non-degenerate forms when the norm map is
/// not surjective. Every form over a norm-surjective ring is of both kinds;
/// such forms canonicalize to `I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    I,
    II,
}

impl fmt::Display for Kind {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::I => write!(out, "I"),
            Kind::II => write!(out, "II"),
        }
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Kind> {
        match s {
            "I" | "i" | "1" => Ok(Kind::I),
            "II" | "ii" | "2" => Ok(Kind::II),
            _ => Err(Error::BadInput(format!("unknown kind '{}', expected I or II", s))),
        }
    }
}

#[derive(Clone, PartialEq)]
pub struct HermitianSpace {
    ring: Ring,
    m: usize,
    gram: Mat,
    gram_inv: Mat,
}

impl fmt::Debug for HermitianSpace {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "HermitianSpace(m={}, ring={}, gram={:?})", self.m, self.ring, self.gram)
    }
}

impl HermitianSpace {
    /// Build a space from its Gram matrix, checking hermitian symmetry and
    /// non-degeneracy (the inverse Gram matrix is kept as the certificate).
    pub fn new(gram: Mat) -> Result<HermitianSpace> {
        if !gram.is_square() {
            return Err(Error::DimensionMismatch("Gram matrix must be square".into()));
        }
        if gram.rows() == 0 {
            return Err(Error::DimensionMismatch("rank must be >= 1".into()));
        }
        if gram.conj_transpose() != gram {
            return Err(Error::NotHermitian);
        }
        let gram_inv = gram.invert().map_err(|_| Error::Degenerate)?;
        let ring = gram.ring().clone();
        let m = gram.rows();
        Ok(HermitianSpace { ring, m, gram, gram_inv })
    }

    /// diag(1, -1, ..., 1, -1) / diag(1, -1, ..., 1, -1, -1) for kind I, the
    /// same with the last entry multiplied by ε for kind II.
    pub fn standard(ring: &Ring, m: usize, kind: Kind) -> Result<HermitianSpace> {
        if m == 0 {
            return Err(Error::DimensionMismatch("rank must be >= 1".into()));
        }
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            entries.push(if i % 2 == 0 { ring.one() } else { ring.from_i64(-1) });
        }
        if m % 2 == 1 && m > 1 {
            entries[m - 1] = ring.from_i64(-1);
        }
        if kind == Kind::II {
            let eps = ring.epsilon();
            entries[m - 1] = ring.mul(&entries[m - 1], eps.as_el());
        }
        HermitianSpace::new(Mat::diag(ring, &entries))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }
    pub fn rank(&self) -> usize {
        self.m
    }
    pub fn gram(&self) -> &Mat {
        &self.gram
    }
    pub fn gram_inv(&self) -> &Mat {
        &self.gram_inv
    }

    /// h(u, v) = u*′ G v.
    pub fn eval_form(&self, u: &Mat, v: &Mat) -> Result<Element> {
        if u.rows() != self.m || u.cols() != 1 || v.rows() != self.m || v.cols() != 1 {
            return Err(Error::DimensionMismatch("eval_form expects m×1 column vectors".into()));
        }
        let prod = u.conj_transpose().matmul(&self.gram)?.matmul(v)?;
        Ok(prod.at(0, 0).clone())
    }

    /// h(v, v), always an element of the fixed ring.
    pub fn length(&self, v: &Mat) -> Result<FixedElement> {
        Ok(FixedElement::unchecked(self.eval_form(v, v)?))
    }

    /// v is primitive iff some coordinate is a unit.
    pub fn is_primitive(&self, v: &Mat) -> bool {
        (0..self.m).any(|i| self.ring.is_unit(v.at(i, 0)))
    }

    pub fn basis_vector(&self, i: usize) -> Mat {
        let mut v = Mat::zero(&self.ring, self.m, 1);
        *v.at_mut(i, 0) = self.ring.one();
        v
    }

    /// A primitive vector of unit length. Searches e_i, then e_i + e_j·λ
    /// with λ over lifted residue representatives; existence is guaranteed
    /// for non-degenerate forms over these rings.
    pub fn find_unit_vector(&self) -> Mat {
        let ring = &self.ring;
        for i in 0..self.m {
            if ring.is_unit(self.gram.at(i, i)) {
                return self.basis_vector(i);
            }
        }
        let reps = ring.residue_reps();
        for i in 0..self.m {
            for j in 0..self.m {
                if i == j {
                    continue;
                }
                for lam in reps {
                    let mut v = self.basis_vector(i);
                    *v.at_mut(j, 0) = lam.clone();
                    if ring.is_unit(&self.eval_form(&v, &v).expect("dims fixed")) {
                        return v;
                    }
                }
            }
        }
        unreachable!("non-degenerate form with no unit vector in the search family");
    }

    /// Orthogonal basis with unit lengths: P invertible with P*′GP = diag(D),
    /// every D_i in R*. No type normalization.
    pub fn orthogonalize_raw(&self) -> (Mat, Vec<FixedElement>) {
        let ring = &self.ring;
        let mut chosen: Vec<Mat> = Vec::with_capacity(self.m);
        let mut lengths = Vec::with_capacity(self.m);
        // columns spanning the perp of the vectors chosen so far
        let mut comp = Mat::identity(ring, self.m);
        while chosen.len() < self.m {
            let sub = self.restricted(&comp).expect("complement of a non-degenerate space is non-degenerate");
            let u_local = sub.find_unit_vector();
            let u = comp.matmul(&u_local).unwrap();
            let d = self.length(&u).unwrap();
            let d_inv = ring.inv(d.as_el()).expect("unit length");
            // Gram-Schmidt the remaining complement columns against u,
            // dropping one where u_local has a unit coordinate
            let drop = (0..sub.rank()).find(|&i| ring.is_unit(u_local.at(i, 0))).expect("primitive");
            let mut cols: Vec<Mat> = Vec::new();
            for j in 0..sub.rank() {
                if j == drop {
                    continue;
                }
                let z = comp.col(j);
                let h = self.eval_form(&u, &z).unwrap();
                // z - u·(h(u,z)/h(u,u)): the denominator is central so the
                // side of the division is immaterial
                let mut corr = u.clone();
                corr.scale_col_right(0, &ring.mul(&d_inv, &h));
                cols.push(z.sub(&corr).unwrap());
            }
            chosen.push(u);
            lengths.push(d);
            comp = match cols.split_first() {
                None => Mat::zero(ring, self.m, 0),
                Some((first, rest)) => {
                    let mut c = first.clone();
                    for col in rest {
                        c = c.hcat(col).unwrap();
                    }
                    c
                }
            };
        }
        let mut p = chosen[0].clone();
        for col in &chosen[1..] {
            p = p.hcat(col).unwrap();
        }
        debug_assert!(self.congruence_is_diagonal(&p, &lengths));
        (p, lengths)
    }

    fn congruence_is_diagonal(&self, p: &Mat, d: &[FixedElement]) -> bool {
        let g = p.conj_transpose().matmul(&self.gram).unwrap().matmul(p).unwrap();
        for i in 0..self.m {
            for j in 0..self.m {
                let want = if i == j { d[i].as_el().clone() } else { self.ring.zero() };
                if *g.at(i, j) != want {
                    return false;
                }
            }
        }
        true
    }

    /// Orthogonalize and normalize to the standard type of the form:
    /// D = (1, ..., 1) or (1, ..., 1, ε). Returns (P, D) with P*′GP = diag(D).
    pub fn orthogonalize(&self) -> (Mat, Vec<FixedElement>) {
        let ring = &self.ring;
        if self.m == 1 {
            let d = FixedElement::unchecked(self.gram.at(0, 0).clone());
            let (target, scaled) = if ring.norm_surjective() || ring.is_square_unit(&d).unwrap() {
                (ring.one(), ring.inv(d.as_el()).unwrap())
            } else {
                let eps = ring.epsilon();
                (eps.as_el().clone(), ring.mul(eps.as_el(), &ring.inv(d.as_el()).unwrap()))
            };
            // a with a·a* = target/d, so the rescaled basis has target length
            let a = ring
                .solve_norm_equation(&FixedElement::unchecked(scaled))
                .expect("square class was adjusted to be a norm");
            let mut p = Mat::identity(ring, 1);
            p.scale_col_right(0, &a);
            return (p, vec![FixedElement::unchecked(target)]);
        }
        // split off a primitive vector of length 1 and recurse
        let v = self
            .represent_length(&FixedElement::unchecked(ring.one()))
            .expect("length 1 is representable at rank >= 2");
        let comp = self.perp_basis(&v).expect("unit vector splits off");
        let sub = self.restricted(&comp).unwrap();
        let (p_sub, mut d_sub) = sub.orthogonalize();
        let p = v.hcat(&comp.matmul(&p_sub).unwrap()).unwrap();
        let mut d = vec![FixedElement::unchecked(ring.one())];
        d.append(&mut d_sub);
        debug_assert!(self.congruence_is_diagonal(&p, &d));
        (p, d)
    }

    /// Kind by discriminant class: compare ∏D_i against the standard kind-I
    /// type product modulo Q(A*).
    pub fn classify_kind(&self) -> Kind {
        let ring = &self.ring;
        if ring.norm_surjective() {
            return Kind::I;
        }
        let (_, d) = self.orthogonalize_raw();
        let mut disc = ring.one();
        for di in &d {
            disc = ring.mul(&disc, di.as_el());
        }
        let std_i = HermitianSpace::standard(ring, self.m, Kind::I).unwrap();
        let mut std_disc = ring.one();
        for i in 0..self.m {
            std_disc = ring.mul(&std_disc, std_i.gram.at(i, i));
        }
        // disc·std_disc^{-1} ∈ R*² ⟺ kind I
        let ratio = FixedElement::unchecked(ring.mul(&disc, &ring.inv(&std_disc).unwrap()));
        if ring.is_square_unit(&ratio).unwrap() {
            Kind::I
        } else {
            Kind::II
        }
    }

    /// P with P*′ G₁ P = G₂ when the kinds agree, `NotEquivalent` otherwise.
    pub fn equivalence_witness(&self, other: &HermitianSpace) -> Result<Mat> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        if self.m != other.m {
            return Err(Error::DimensionMismatch("equivalence needs equal ranks".into()));
        }
        let (p1, d1) = self.orthogonalize();
        let (p2, d2) = other.orthogonalize();
        if d1 != d2 {
            return Err(Error::NotEquivalent);
        }
        let p = p1.matmul(&p2.invert()?)?;
        debug_assert_eq!(
            p.conj_transpose().matmul(&self.gram).unwrap().matmul(&p).unwrap(),
            other.gram
        );
        Ok(p)
    }

    /// Is there a primitive vector of length 0?
    pub fn is_isotropic(&self) -> bool {
        match self.m {
            1 => false,
            2 => self.ring.norm_surjective() || self.classify_kind() == Kind::I,
            _ => true,
        }
    }

    /// A primitive v with h(v, v) = r exactly, or `NotRepresentable` when the
    /// value set Λ excludes r.
    pub fn represent_length(&self, r: &FixedElement) -> Result<Mat> {
        let ring = &self.ring;
        if self.m == 1 {
            // Λ is the square class of the single type entry (all of R* when
            // the norm is surjective); no non-unit length is primitive
            if ring.is_radical(r.as_el()) {
                return Err(Error::NotRepresentable);
            }
            let d = FixedElement::unchecked(self.gram.at(0, 0).clone());
            let target = FixedElement::unchecked(ring.mul(r.as_el(), &ring.inv(d.as_el()).unwrap()));
            let a = ring.solve_norm_equation(&target).map_err(|_| Error::NotRepresentable)?;
            let mut v = self.basis_vector(0);
            v.scale_col_right(0, &a);
            return Ok(v);
        }
        if ring.is_unit(r.as_el()) {
            // rank >= 2 represents every unit: solve on the first two
            // orthogonal basis vectors
            let (p, d) = self.orthogonalize_raw();
            let (t1, t2) = solve_binary_diagonal(ring, &d[0], &d[1], r)?;
            let mut v = p.col(0);
            v.scale_col_right(0, &t1);
            let mut w = p.col(1);
            w.scale_col_right(0, &t2);
            let v = v.add(&w)?;
            debug_assert_eq!(self.length(&v).unwrap().as_el(), r.as_el());
            debug_assert!(self.is_primitive(&v));
            return Ok(v);
        }
        // non-unit length: requires isotropy
        if !self.is_isotropic() {
            return Err(Error::NotRepresentable);
        }
        let u = self.find_isotropic_primitive();
        // w with h(u, w) = d, then v = u·s + w with s = r - h(w, w)
        let w = self.dual_partner(&u, self.ring.half().as_el())?;
        let s = ring.sub(r.as_el(), self.length(&w)?.as_el());
        let mut v = u.clone();
        v.scale_col_right(0, &s);
        let v = v.add(&w)?;
        debug_assert_eq!(self.length(&v).unwrap().as_el(), r.as_el());
        debug_assert!(self.is_primitive(&v));
        Ok(v)
    }

    /// A primitive isotropic vector; caller guarantees `is_isotropic`.
    fn find_isotropic_primitive(&self) -> Mat {
        let ring = &self.ring;
        let (p, d) = self.orthogonalize_raw();
        if self.m >= 3 {
            // solve d₀t₁² + d₁t₂² = -d₂ on the first two coordinates and add
            // the third basis vector
            let target = FixedElement::unchecked(ring.neg(d[2].as_el()));
            let (t1, t2) = solve_binary_diagonal(ring, &d[0], &d[1], &target).expect("units are representable");
            let mut v = p.col(0);
            v.scale_col_right(0, &t1);
            let mut w = p.col(1);
            w.scale_col_right(0, &t2);
            let v = v.add(&w).unwrap().add(&p.col(2)).unwrap();
            debug_assert!(ring.is_zero(self.length(&v).unwrap().as_el()));
            return v;
        }
        // m = 2
        let ratio = FixedElement::unchecked(ring.neg(&ring.mul(d[0].as_el(), &ring.inv(d[1].as_el()).unwrap())));
        let second = if ring.norm_surjective() {
            // h(u₁ + u₂x, same) = d₀ + d₁·N(x) = 0
            ring.solve_norm_equation(&ratio).expect("norm map surjective")
        } else {
            // kind I: -d₀/d₁ is a square in R*
            ring.sqrt_unit(&ratio).expect("kind I plane").into_el()
        };
        let mut w = p.col(1);
        w.scale_col_right(0, &second);
        let v = p.col(0).add(&w).unwrap();
        debug_assert!(ring.is_zero(self.length(&v).unwrap().as_el()));
        v
    }

    /// w with h(u, w) = c for primitive u: the row u*′G is unimodular, so a
    /// single scaled standard basis vector works.
    pub(crate) fn dual_partner(&self, u: &Mat, c: &Element) -> Result<Mat> {
        let ring = &self.ring;
        let row = u.conj_transpose().matmul(&self.gram)?;
        let j = (0..self.m).find(|&j| ring.is_unit(row.at(0, j))).ok_or(Error::NotPrimitive)?;
        let mut w = self.basis_vector(j);
        *w.at_mut(j, 0) = ring.mul(&ring.inv(row.at(0, j))?, c);
        debug_assert_eq!(self.eval_form(u, &w)?, *c);
        Ok(w)
    }

    /// Basis of the orthogonal complement of the span of `cols`, valid when
    /// the restriction of h to `cols` is non-degenerate.
    pub(crate) fn perp_basis(&self, cols: &Mat) -> Result<Mat> {
        let k = cols.cols();
        let sub_gram = cols.conj_transpose().matmul(&self.gram)?.matmul(cols)?;
        let sub_inv = sub_gram.invert().map_err(|_| Error::Degenerate)?;
        // π = I - B (B*′GB)^{-1} B*′G kills the span of B and fixes its perp
        let proj = Mat::identity(&self.ring, self.m)
            .sub(&cols.matmul(&sub_inv)?.matmul(&cols.conj_transpose())?.matmul(&self.gram)?)?;
        let pivots = proj.residue_pivot_cols();
        if pivots.len() != self.m - k {
            return Err(Error::Degenerate);
        }
        Ok(proj.select_cols(&pivots))
    }

    /// The restriction of h to the span of `cols` as a new space.
    pub(crate) fn restricted(&self, cols: &Mat) -> Result<HermitianSpace> {
        HermitianSpace::new(cols.conj_transpose().matmul(&self.gram)?.matmul(cols)?)
    }

    /// Entry-wise reduction to the quotient space over A/𝔯^k.
    pub fn reduce(&self, k: u32) -> Result<HermitianSpace> {
        let target = self.ring.quotient(k)?;
        HermitianSpace::new(self.gram.reduced(&target))
    }
}

/// t₁, t₂ ∈ R with d₁t₁² + d₂t₂² = r (r, d_i units), at least one t_i a
/// unit: residue search over F_q × F_q, then one Hensel correction through a
/// central square root.
fn solve_binary_diagonal(
    ring: &Ring,
    d1: &FixedElement,
    d2: &FixedElement,
    r: &FixedElement,
) -> Result<(Element, Element)> {
    let reps = ring.fixed_residue_reps();
    for t1 in reps {
        for t2 in reps {
            if ring.is_radical(t1) && ring.is_radical(t2) {
                continue;
            }
            let val = ring.add(
                &ring.mul(d1.as_el(), &ring.mul(t1, t1)),
                &ring.mul(d2.as_el(), &ring.mul(t2, t2)),
            );
            let diff = ring.sub(&val, r.as_el());
            if !ring.is_radical(&diff) {
                continue;
            }
            // correct the unit slot so that d_u t_u² = r - d_f t_f² exactly
            let (unit_first, tu, tf, du, df) = if ring.is_unit(t1) {
                (true, t1, t2, d1, d2)
            } else {
                (false, t2, t1, d2, d1)
            };
            let rest = ring.mul(df.as_el(), &ring.mul(tf, tf));
            let target = ring.sub(r.as_el(), &rest);
            let cur = ring.mul(du.as_el(), &ring.mul(tu, tu));
            let u = FixedElement::unchecked(ring.mul(&target, &ring.inv(&cur)?));
            let corr = ring.sqrt_one_plus_m(&u)?;
            let tu = ring.mul(tu, corr.as_el());
            let (t1, t2) = if unit_first { (tu, tf.clone()) } else { (tf.clone(), tu) };
            debug_assert_eq!(
                ring.add(&ring.mul(d1.as_el(), &ring.mul(&t1, &t1)), &ring.mul(d2.as_el(), &ring.mul(&t2, &t2))),
                *r.as_el()
            );
            return Ok((t1, t2));
        }
    }
    Err(Error::NotRepresentable)
}
