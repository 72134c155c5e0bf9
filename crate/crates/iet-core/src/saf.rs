//! The SAF (scissors congruence) invariant in wedge coordinates, membership
//! tests for the subgroup of periodic products and for the subgroup it
//! generates together with rotations, and the rotation factorization.
//!
//! For an exchange with lengths l_k and translations g_k the invariant is
//! the tensor sum of l_k against g_k over the rationals. Bijectivity makes
//! the symmetric part vanish identically, so the invariant is stored as an
//! antisymmetric rational matrix over the basis: entry (i, j) is the
//! coefficient of e_i wedge e_j.

use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::iet::Iet;
use crate::linalg::{self, AntisymDecomposition, QMatrix};
use crate::scalar::{BasisContext, Rational, Scalar, Sign};

/// An element of the wedge square of the reals over the rationals, in
/// coordinates over a basis context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeElement {
    ctx: Arc<BasisContext>,
    mat: QMatrix,
}

impl WedgeElement {
    pub fn zero(ctx: &Arc<BasisContext>) -> WedgeElement {
        WedgeElement { ctx: ctx.clone(), mat: QMatrix::zeros(ctx.size(), ctx.size()) }
    }

    pub fn from_matrix(ctx: &Arc<BasisContext>, mat: QMatrix) -> Result<WedgeElement> {
        if mat.rows() != ctx.size() || mat.cols() != ctx.size() {
            return Err(Error::DimensionMismatch);
        }
        if !mat.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(WedgeElement { ctx: ctx.clone(), mat })
    }

    pub fn context(&self) -> &Arc<BasisContext> {
        &self.ctx
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn coefficient(&self, i: usize, j: usize) -> &Rational {
        self.mat.get(i, j)
    }

    /// Nonzero upper-triangle entries (i, j, coefficient) with i < j, in
    /// lexicographic order, 0-based.
    pub fn upper_entries(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.mat.rows() {
            for j in i + 1..self.mat.cols() {
                if !self.mat.get(i, j).is_zero() {
                    out.push((i, j, self.mat.get(i, j).clone()));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &WedgeElement) -> Result<WedgeElement> {
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch);
        }
        Ok(WedgeElement { ctx: self.ctx.clone(), mat: self.mat.add(&other.mat)? })
    }

    pub fn sub(&self, other: &WedgeElement) -> Result<WedgeElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WedgeElement {
        WedgeElement { ctx: self.ctx.clone(), mat: self.mat.neg() }
    }

    pub fn scale(&self, q: &Rational) -> WedgeElement {
        WedgeElement { ctx: self.ctx.clone(), mat: self.mat.scale(q) }
    }

    /// Re-embed into an extending context by zero-padding the matrix.
    pub fn embed(&self, new_ctx: &Arc<BasisContext>) -> Result<WedgeElement> {
        if !self.ctx.is_prefix_of(new_ctx) {
            return Err(Error::ContextMismatch);
        }
        let n = new_ctx.size();
        let mut mat = QMatrix::zeros(n, n);
        for i in 0..self.mat.rows() {
            for j in 0..self.mat.cols() {
                *mat.get_mut(i, j) = self.mat.get(i, j).clone();
            }
        }
        Ok(WedgeElement { ctx: new_ctx.clone(), mat })
    }

    /// Decompose as a single wedge of two scalars when possible (rank of the
    /// coefficient matrix at most 2).
    pub fn decompose(&self) -> Result<WedgeDecomposition> {
        match linalg::antisym_decompose(&self.mat)? {
            AntisymDecomposition::Decomposable { u, v } => {
                Ok(WedgeDecomposition::Decomposable {
                    u: Scalar::new(&self.ctx, u)?,
                    v: Scalar::new(&self.ctx, v)?,
                })
            }
            AntisymDecomposition::NotDecomposable => Ok(WedgeDecomposition::NotDecomposable),
        }
    }
}

/// Decomposition of a wedge element as u wedge v.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WedgeDecomposition {
    Decomposable { u: Scalar, v: Scalar },
    NotDecomposable,
}

/// Wedge product of two scalars: coefficient (i, j) is u_i v_j - u_j v_i.
pub fn wedge(u: &Scalar, v: &Scalar) -> Result<WedgeElement> {
    if !u.same_context(v) {
        return Err(Error::ContextMismatch);
    }
    let ctx = u.context().clone();
    let n = ctx.size();
    let mut mat = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            *mat.get_mut(i, j) =
                &u.coords()[i] * &v.coords()[j] - &u.coords()[j] * &v.coords()[i];
        }
    }
    Ok(WedgeElement { ctx, mat })
}

/// The SAF invariant of an exchange: the tensor sum of lengths against
/// translation constants, antisymmetrized. The symmetric part vanishes
/// identically for any bijective exchange and is asserted away.
pub fn saf(f: &Iet) -> WedgeElement {
    let ctx = f.context().clone();
    let n = ctx.size();
    let mut tensor = QMatrix::zeros(n, n);
    for (len, gamma) in f.lengths().iter().zip(f.gammas()) {
        for i in 0..n {
            for j in 0..n {
                let term = &len.coords()[i] * &gamma.coords()[j];
                *tensor.get_mut(i, j) = tensor.get(i, j) + term;
            }
        }
    }
    debug_assert!(
        tensor.is_antisymmetric(),
        "length/translation tensor of a bijection is antisymmetric"
    );
    let half = Rational::new(BigInt::from(1), BigInt::from(2));
    let antisym = tensor.add(&tensor.transpose().neg()).expect("same shape").scale(&half);
    WedgeElement { ctx, mat: antisym }
}

/// Closed form for the SAF invariant of the 3-interval reversal with outer
/// lengths l1, l3 on a domain of length x: x wedge (l3 - l1) - l1 wedge l3.
pub fn saf_3iet_closed_form(l1: &Scalar, l3: &Scalar, x_len: &Scalar) -> Result<WedgeElement> {
    let middle = x_len.sub(l1)?.sub(l3)?;
    for len in [l1, l3, &middle] {
        if len.sign()? != Sign::Positive {
            return Err(Error::NonPositiveLength);
        }
    }
    wedge(x_len, &l3.sub(l1)?)?.sub(&wedge(l1, l3)?)
}

/// Coefficient matrix of `w` rewritten over a basis whose first vector is
/// `s`, together with the change-of-basis matrix. This normalization is the
/// single transform shared by the K(|X|) test, the membership report, and
/// the rotation construction.
fn k_normal_form(w: &WedgeElement, s: &Scalar) -> Result<(QMatrix, QMatrix)> {
    if !Arc::ptr_eq(s.context(), &w.ctx) && *s.context() != w.ctx {
        return Err(Error::ContextMismatch);
    }
    if s.is_zero() {
        return Err(Error::ZeroScalar);
    }
    let t = linalg::complete_basis_with_first(s.coords())?;
    let p = change_of_basis(&w.mat, &t)?;
    Ok((p, t))
}

/// Rewrite an antisymmetric coefficient matrix under the change of basis
/// with new basis vectors in the columns of `t`: congruence by the inverse.
pub fn change_of_basis(p: &QMatrix, t: &QMatrix) -> Result<QMatrix> {
    let s = t
        .inverse()
        .ok_or(Error::Inconsistent { reason: "change of basis is singular" })?;
    s.mul(p)?.mul(&s.transpose())
}

/// Does `w` lie in K(s) = {s wedge v}? After moving `s` to the first basis
/// position, exactly the first row and column may be nonzero.
pub fn in_k_of(w: &WedgeElement, s: &Scalar) -> Result<bool> {
    let (p, _) = k_normal_form(w, s)?;
    Ok(surviving_obstruction(&p).is_empty())
}

/// Entries (i, j, coefficient), 1-based with 2 <= i < j, that survive the
/// normalization; nonempty exactly when the element is outside K(s).
fn surviving_obstruction(p: &QMatrix) -> Vec<(usize, usize, Rational)> {
    let mut out = Vec::new();
    for i in 1..p.rows() {
        for j in i + 1..p.cols() {
            if !p.get(i, j).is_zero() {
                out.push((i + 1, j + 1, p.get(i, j).clone()));
            }
        }
    }
    out
}

/// Membership in the kernel subgroup (products of periodic exchanges):
/// exactly the vanishing of the SAF invariant.
pub fn member_gper(f: &Iet) -> bool {
    saf(f).is_zero()
}

/// Classification of an exchange against the two subgroups, with witness
/// data: the invariant, surviving obstruction coefficients when outside,
/// and optionally the rotation factorization when inside.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub in_gper: bool,
    pub in_g1: bool,
    pub saf: WedgeElement,
    /// Coefficients (i, j, p_ij), 1-based over the normalized basis with
    /// the domain length first, for 2 <= i < j. Empty iff in_g1.
    pub obstruction: Vec<(usize, usize, Rational)>,
    pub factorization: Option<Factorization>,
}

/// Witness for membership: f = rotation after periodic_before
/// = periodic_after after rotation, with both periodic parts SAF-zero.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub rotation: Iet,
    pub periodic_before: Iet,
    pub periodic_after: Iet,
}

pub fn member_g1(f: &Iet) -> Result<MembershipReport> {
    classify(f, false)
}

pub fn member_g1_with_factorization(f: &Iet) -> Result<MembershipReport> {
    classify(f, true)
}

fn classify(f: &Iet, want_factorization: bool) -> Result<MembershipReport> {
    let w = saf(f);
    let in_gper = w.is_zero();
    let (p, _) = k_normal_form(&w, f.total())?;
    let obstruction = surviving_obstruction(&p);
    let in_g1 = obstruction.is_empty();
    let factorization = if in_g1 && want_factorization {
        Some(factor_through_rotation(f)?)
    } else {
        None
    };
    Ok(MembershipReport { in_gper, in_g1, saf: w, obstruction, factorization })
}

/// Build a rotation on [left, left + x_len) whose SAF invariant equals
/// `target`, which must lie in K(x_len). The witness real t with
/// target = x_len wedge t is read off the normalized coordinates; the unique
/// integer multiple of the domain length bringing t into (0, |X|) fixes the
/// interval lengths, and the orientation is settled by direct comparison.
pub fn rotation_with_saf(left: &Scalar, x_len: &Scalar, target: &WedgeElement) -> Result<Iet> {
    if !left.same_context(x_len) {
        return Err(Error::ContextMismatch);
    }
    if x_len.sign()? != Sign::Positive {
        return Err(Error::NonPositiveLength);
    }
    if target.is_zero() {
        return Iet::identity(left.clone(), x_len.clone());
    }
    let (p, t_mat) = k_normal_form(target, x_len)?;
    if !surviving_obstruction(&p).is_empty() {
        return Err(Error::NotInKX);
    }
    // target = x_len wedge t with t = sum over j >= 1 of p_0j * (new basis
    // vector j); convert back to original coordinates through t_mat.
    let n = p.rows();
    let mut new_coords = QMatrix::zeros(n, 1);
    for j in 1..n {
        *new_coords.get_mut(j, 0) = p.get(0, j).clone();
    }
    let old_coords = t_mat.mul(&new_coords)?;
    let t = Scalar::new(left.context(), old_coords.column(0))?;

    let first_len = shift_into_domain(&t, x_len)?;
    let second_len = x_len.sub(&first_len)?;
    let candidate = Iet::rotation(left.clone(), first_len.clone(), second_len.clone())?;
    if saf(&candidate) == *target {
        return Ok(candidate);
    }
    let flipped = Iet::rotation(left.clone(), second_len, first_len)?;
    if saf(&flipped) == *target {
        return Ok(flipped);
    }
    Err(Error::Inconsistent { reason: "no rotation orientation matches the target" })
}

/// The unique value r*x + t lying strictly between 0 and x, for integer r.
/// Exists because t here is never an integer multiple of x (that would make
/// the target wedge zero).
fn shift_into_domain(t: &Scalar, x: &Scalar) -> Result<Scalar> {
    let cap = x.context().sign_cap_bits();
    let mut bits: u32 = 128;
    let (rat_lo, rat_hi) = loop {
        let (t_lo, t_hi) = t.enclosure(bits);
        let (x_lo, x_hi) = x.enclosure(bits);
        if x_lo.is_positive() {
            let mut corners = [
                &t_lo / &x_lo,
                &t_lo / &x_hi,
                &t_hi / &x_lo,
                &t_hi / &x_hi,
            ];
            corners.sort();
            let lo = corners[0].clone();
            let hi = corners[3].clone();
            if &hi - &lo < Rational::from_integer(BigInt::from(1)) {
                break (lo, hi);
            }
        }
        if bits >= cap {
            return Err(Error::AmbiguousSign { cap_bits: cap });
        }
        bits = bits.saturating_mul(2).min(cap);
    };
    // 0 < r*x + t < x means r lies in the open unit interval (-t/x, 1 - t/x).
    let r_from = (-rat_hi).ceil().to_integer();
    let r_to = (Rational::from_integer(BigInt::from(1)) - rat_lo).floor().to_integer();
    let mut r = r_from;
    while r <= r_to {
        let shifted = x.scale(&Rational::from_integer(r.clone())).add(t)?;
        if shifted.sign()? == Sign::Positive && x.sub(&shifted)?.sign()? == Sign::Positive {
            return Ok(shifted);
        }
        r += 1;
    }
    Err(Error::Inconsistent { reason: "no integer shift brings t into the domain" })
}

/// Factor f through a rotation carrying its entire SAF invariant:
/// f = rotation after periodic_before = periodic_after after rotation, and
/// both cofactors have SAF zero. Requires membership in G1.
pub fn factor_through_rotation(f: &Iet) -> Result<Factorization> {
    let w = saf(f);
    let (p, _) = k_normal_form(&w, f.total())?;
    if !surviving_obstruction(&p).is_empty() {
        return Err(Error::NotInG1);
    }
    let rotation = rotation_with_saf(f.left(), f.total(), &w)?;
    let rot_inv = rotation.inverse();
    let periodic_before = rot_inv.compose(f)?;
    let periodic_after = f.compose(&rot_inv)?;
    if rotation.compose(&periodic_before)? != *f || periodic_after.compose(&rotation)? != *f {
        return Err(Error::Inconsistent { reason: "factorization does not recompose" });
    }
    if !saf(&periodic_before).is_zero() || !saf(&periodic_after).is_zero() {
        return Err(Error::Inconsistent { reason: "cofactors carry nonzero invariant" });
    }
    Ok(Factorization { rotation, periodic_before, periodic_after })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, ExternalReal};
    use alloc::vec;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn quad2() -> Arc<BasisContext> {
        BasisContext::quadratic(2).unwrap()
    }

    fn surd(d: u64) -> ExternalReal {
        ExternalReal::Quadratic { a: q("0"), b: q("1"), d }
    }

    fn sc(ctx: &Arc<BasisContext>, coords: &[&str]) -> Scalar {
        Scalar::new(ctx, coords.iter().map(|s| q(s)).collect()).unwrap()
    }

    fn sqrt2_rotation() -> Iet {
        let ctx = quad2();
        Iet::rotation(Scalar::zero(&ctx), sc(&ctx, &["2", "-1"]), sc(&ctx, &["-1", "1"]))
            .unwrap()
    }

    fn quadratic_reversal() -> Iet {
        let ctx = quad2();
        Iet::new(
            Scalar::zero(&ctx),
            vec![
                sc(&ctx, &["-1", "1"]),
                sc(&ctx, &["1/2", "0"]),
                sc(&ctx, &["3/2", "-1"]),
            ],
            vec![2, 1, 0],
        )
        .unwrap()
    }

    fn rank3_reversal() -> Iet {
        let ctx = quad2().adjoin(&surd(3)).unwrap();
        Iet::new(
            Scalar::zero(&ctx),
            vec![
                sc(&ctx, &["-1/2", "1/2", "0"]),
                sc(&ctx, &["-1/2", "0", "1/2"]),
                sc(&ctx, &["2", "-1/2", "-1/2"]),
            ],
            vec![2, 1, 0],
        )
        .unwrap()
    }

    #[test]
    fn wedge_of_equal_scalars_vanishes() {
        let ctx = quad2();
        let u = sc(&ctx, &["-1", "1"]);
        assert!(wedge(&u, &u).unwrap().is_zero());
    }

    #[test]
    fn wedge_of_basis_pair() {
        let ctx = quad2();
        let w = wedge(&Scalar::one(&ctx), &Scalar::basis_element(&ctx, 1)).unwrap();
        assert_eq!(*w.coefficient(0, 1), q("1"));
        assert_eq!(*w.coefficient(1, 0), q("-1"));
    }

    #[test]
    fn wedge_coordinates() {
        let ctx = quad2();
        let w = wedge(&sc(&ctx, &["-1", "1"]), &sc(&ctx, &["3/2", "-1"])).unwrap();
        assert_eq!(*w.coefficient(0, 1), q("-1/2"));
    }

    #[test]
    fn wedge_is_bilinear() {
        let ctx = quad2();
        let u = sc(&ctx, &["2", "-3"]);
        let u2 = sc(&ctx, &["1/2", "5"]);
        let v = sc(&ctx, &["-1", "7/3"]);
        let lhs = wedge(&u.scale(&q("4/3")).add(&u2).unwrap(), &v).unwrap();
        let rhs = wedge(&u, &v)
            .unwrap()
            .scale(&q("4/3"))
            .add(&wedge(&u2, &v).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn saf_of_identity_and_rational_data_vanishes() {
        let ctx = BasisContext::rational();
        let id = Iet::identity(Scalar::zero(&ctx), Scalar::one(&ctx)).unwrap();
        assert!(saf(&id).is_zero());
        let f = Iet::new(
            Scalar::zero(&ctx),
            vec![
                Scalar::from_rational(&ctx, q("1/2")),
                Scalar::from_rational(&ctx, q("1/3")),
                Scalar::from_rational(&ctx, q("1/6")),
            ],
            vec![2, 1, 0],
        )
        .unwrap();
        assert!(saf(&f).is_zero());
        assert!(member_gper(&f));
    }

    #[test]
    fn saf_of_quadratic_reversal() {
        let w = saf(&quadratic_reversal());
        assert_eq!(*w.coefficient(0, 1), q("-3/2"));
        assert_eq!(w.upper_entries().len(), 1);
    }

    #[test]
    fn closed_form_matches_definition() {
        let ctx = quad2();
        let f = quadratic_reversal();
        let w = saf_3iet_closed_form(
            &sc(&ctx, &["-1", "1"]),
            &sc(&ctx, &["3/2", "-1"]),
            &Scalar::one(&ctx),
        )
        .unwrap();
        assert_eq!(w, saf(&f));
        assert_eq!(*w.coefficient(0, 1), q("-3/2"));
    }

    #[test]
    fn closed_form_examples() {
        let ctx = BasisContext::rational();
        let w = saf_3iet_closed_form(
            &Scalar::from_rational(&ctx, q("1/4")),
            &Scalar::from_rational(&ctx, q("1/4")),
            &Scalar::one(&ctx),
        )
        .unwrap();
        assert!(w.is_zero());

        let ctx = quad2();
        let w = saf_3iet_closed_form(
            &sc(&ctx, &["1/4", "0"]),
            &sc(&ctx, &["0", "1/4"]),
            &Scalar::one(&ctx),
        )
        .unwrap();
        assert_eq!(*w.coefficient(0, 1), q("3/16"));
    }

    #[test]
    fn saf_is_a_homomorphism_on_samples() {
        let f = sqrt2_rotation();
        let g = quadratic_reversal();
        let fg = f.compose(&g).unwrap();
        assert_eq!(saf(&fg), saf(&f).add(&saf(&g)).unwrap());
        assert_eq!(saf(&f.inverse()), saf(&f).neg());
    }

    #[test]
    fn k_membership_examples() {
        let ctx = quad2();
        let zero = WedgeElement::zero(&ctx);
        assert!(in_k_of(&zero, &Scalar::one(&ctx)).unwrap());
        let w = wedge(&Scalar::one(&ctx), &Scalar::basis_element(&ctx, 1)).unwrap();
        assert!(in_k_of(&w, &Scalar::one(&ctx)).unwrap());
        assert_eq!(in_k_of(&w, &Scalar::zero(&ctx)).unwrap_err(), Error::ZeroScalar);
    }

    #[test]
    fn k_membership_rejects_rank_four() {
        let ctx = BasisContext::rational()
            .adjoin(&surd(2))
            .unwrap()
            .adjoin(&surd(3))
            .unwrap()
            .adjoin(&surd(5))
            .unwrap();
        let w12 =
            wedge(&Scalar::basis_element(&ctx, 0), &Scalar::basis_element(&ctx, 1)).unwrap();
        let w34 =
            wedge(&Scalar::basis_element(&ctx, 2), &Scalar::basis_element(&ctx, 3)).unwrap();
        let w = w12.add(&w34).unwrap();
        assert!(!in_k_of(&w, &Scalar::basis_element(&ctx, 0)).unwrap());
        assert_eq!(w.decompose().unwrap(), WedgeDecomposition::NotDecomposable);
    }

    #[test]
    fn membership_of_rotations_and_reversals() {
        let rot = sqrt2_rotation();
        assert!(!member_gper(&rot));
        assert!(member_g1(&rot).unwrap().in_g1);

        let rank2 = quadratic_reversal();
        assert!(member_g1(&rank2).unwrap().in_g1);

        let rank3 = rank3_reversal();
        let report = member_g1(&rank3).unwrap();
        assert!(!report.in_g1);
        assert!(!report.in_gper);
        assert!(!report.obstruction.is_empty());
    }

    #[test]
    fn gper_implies_g1() {
        let ctx = BasisContext::rational();
        let f = Iet::new(
            Scalar::zero(&ctx),
            vec![
                Scalar::from_rational(&ctx, q("2/5")),
                Scalar::from_rational(&ctx, q("1/5")),
                Scalar::from_rational(&ctx, q("2/5")),
            ],
            vec![2, 1, 0],
        )
        .unwrap();
        let report = member_g1(&f).unwrap();
        assert!(report.in_gper);
        assert!(report.in_g1);
    }

    #[test]
    fn rotation_with_zero_target_is_identity() {
        let ctx = quad2();
        let g = rotation_with_saf(
            &Scalar::zero(&ctx),
            &Scalar::one(&ctx),
            &WedgeElement::zero(&ctx),
        )
        .unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn rotation_realizing_unit_wedge() {
        let ctx = quad2();
        let target = wedge(&Scalar::one(&ctx), &Scalar::basis_element(&ctx, 1)).unwrap();
        let g = rotation_with_saf(&Scalar::zero(&ctx), &Scalar::one(&ctx), &target).unwrap();
        assert_eq!(saf(&g), target);
        // Lengths are {sqrt2 - 1, 2 - sqrt2}; the orientation with invariant
        // +1 wedge sqrt2 puts 2 - sqrt2 first.
        assert_eq!(g.lengths()[0], sc(&ctx, &["2", "-1"]));
        assert_eq!(g.lengths()[1], sc(&ctx, &["-1", "1"]));
    }

    #[test]
    fn rotation_realizing_scaled_wedge() {
        let ctx = quad2();
        let target = wedge(&Scalar::one(&ctx), &Scalar::basis_element(&ctx, 1))
            .unwrap()
            .scale(&q("5/2"));
        let g = rotation_with_saf(&Scalar::zero(&ctx), &Scalar::one(&ctx), &target).unwrap();
        assert_eq!(saf(&g), target);
        // One of the two intervals has length 5*sqrt2/2 - 3.
        let expected = sc(&ctx, &["-3", "5/2"]);
        assert!(g.lengths().contains(&expected));
    }

    #[test]
    fn rotation_rejects_target_outside_k() {
        let ctx = quad2().adjoin(&surd(3)).unwrap();
        let target = wedge(
            &Scalar::basis_element(&ctx, 1),
            &Scalar::basis_element(&ctx, 2),
        )
        .unwrap();
        let err =
            rotation_with_saf(&Scalar::zero(&ctx), &Scalar::one(&ctx), &target).unwrap_err();
        assert_eq!(err, Error::NotInKX);
    }

    #[test]
    fn factorization_of_identity() {
        let ctx = quad2();
        let id = Iet::identity(Scalar::zero(&ctx), Scalar::one(&ctx)).unwrap();
        let fact = factor_through_rotation(&id).unwrap();
        assert!(fact.rotation.is_identity());
        assert!(fact.periodic_before.is_identity());
        assert!(fact.periodic_after.is_identity());
    }

    #[test]
    fn factorization_of_irrational_rotation() {
        let f = sqrt2_rotation();
        let fact = factor_through_rotation(&f).unwrap();
        assert_eq!(saf(&fact.rotation), saf(&f));
        assert!(saf(&fact.periodic_before).is_zero());
        assert!(saf(&fact.periodic_after).is_zero());
        assert_eq!(fact.rotation.compose(&fact.periodic_before).unwrap(), f);
        assert_eq!(fact.periodic_after.compose(&fact.rotation).unwrap(), f);
    }

    #[test]
    fn factorization_of_rank2_reversal() {
        let f = quadratic_reversal();
        let fact = factor_through_rotation(&f).unwrap();
        assert_eq!(fact.rotation.compose(&fact.periodic_before).unwrap(), f);
        assert_eq!(fact.periodic_after.compose(&fact.rotation).unwrap(), f);
        assert!(saf(&fact.periodic_before).is_zero());
        assert!(saf(&fact.periodic_after).is_zero());
    }

    #[test]
    fn factorization_refuses_outside_g1() {
        assert_eq!(
            factor_through_rotation(&rank3_reversal()).unwrap_err(),
            Error::NotInG1
        );
    }

    #[test]
    fn membership_report_carries_factorization() {
        let f = quadratic_reversal();
        let report = member_g1_with_factorization(&f).unwrap();
        let fact = report.factorization.expect("member of G1");
        assert_eq!(fact.rotation.compose(&fact.periodic_before).unwrap(), f);
    }

    #[test]
    fn conjugation_preserves_membership() {
        let f = quadratic_reversal();
        let ctx = f.context().clone();
        let conj = f
            .conjugate_affine(&sc(&ctx, &["1", "0"]), &sc(&ctx, &["0", "1"]))
            .unwrap();
        assert_eq!(member_g1(&f).unwrap().in_g1, member_g1(&conj).unwrap().in_g1);
        assert_eq!(member_gper(&f), member_gper(&conj));

        let g = rank3_reversal();
        let ctx = g.context().clone();
        let conj = g
            .conjugate_affine(
                &Scalar::from_rational(&ctx, q("-2")),
                &Scalar::from_rational(&ctx, q("7/3")),
            )
            .unwrap();
        assert!(!member_g1(&conj).unwrap().in_g1);
    }
}
