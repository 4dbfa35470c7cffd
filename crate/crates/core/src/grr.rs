//! Bernoulli polynomials, the degree-1 Chern character of pushforwards of
//! representation bundles, and the Koszul divisor class.
//!
//! Classes here live on the locus of covers of irreducible curves, so only
//! `delta_0`-type boundary labels appear. The node pushforward is normalized
//! by `j_*(1) = delta / r` on a stratum with stabilizer of order `r`; with
//! this convention the trivial representation returns Mumford's
//! `lambda = kappa1/12 + pi^* delta_0 / 12`.
//!
//! Ranks of the bundles `E_{j,b}` assume `h^1 = 0`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::characters::{eigen_multiplicities, Representation};
use crate::divisor::{BasisLabel, DivisorClass};
use crate::error::{Error, Result};
use crate::group::{Builtin, FiniteGroup, InvSymClassId};
use crate::rational::{binom, binom_q, q, qb, qi, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernoulliPoly {
    pub d: u32,
    /// `coeffs[k]` multiplies `x^k`.
    pub coeffs: Vec<Q>,
}

impl BernoulliPoly {
    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }
}

/// `B_n = B_n(0)`, from `sum_{k<=m} C(m+1, k) B_k = 0`.
pub fn bernoulli_numbers(n: u32) -> Vec<Q> {
    let mut b = vec![Q::one()];
    for m in 1..=n as i64 {
        let s: Q = (0..m).map(|k| binom_q(m + 1, k) * &b[k as usize]).sum();
        b.push(-s / qi(m + 1));
    }
    b
}

/// `B_d(x) = sum_k C(d, k) B_k x^(d-k)`.
pub fn bernoulli_poly(d: u32) -> BernoulliPoly {
    let b = bernoulli_numbers(d);
    let mut coeffs = vec![Q::zero(); d as usize + 1];
    for k in 0..=d as usize {
        coeffs[d as usize - k] = binom_q(d as i64, k as i64) * &b[k];
    }
    BernoulliPoly { d, coeffs }
}

fn node_label(g: &FiniteGroup, u: InvSymClassId) -> BasisLabel {
    let name = g.invsym_name(u);
    if g.builtin_kind() == Some(Builtin::S3) {
        match name {
            "c2" => return BasisLabel::Delta0C2,
            "c3" => return BasisLabel::Delta0C3,
            _ => {}
        }
    }
    if u.0 == 0 {
        BasisLabel::DeltaPrime(0)
    } else {
        BasisLabel::Fine(format!("Delta_{{0,{name}}}"))
    }
}

/// `ch_d(R u_* W)` for `d = 1`:
/// `w B_2/2 kappa1 + 1/2 sum_branches r^2 sum_k w(k) B_2(k/r)/2 j_*(1)`.
///
/// On `S3` the strata land on `delta_0'`, `delta_0_c2`, `delta_0_c3`; other
/// groups get one fine label per node class up to inversion.
pub fn ch1_pushforward(genus: u32, g: &FiniteGroup, rep: &Representation, d: u32) -> Result<DivisorClass> {
    if d != 1 {
        return Err(Error::UnsupportedDegree(d));
    }
    let b2 = bernoulli_poly(2);
    let half = q(1, 2);
    let mut out =
        DivisorClass::from_terms(genus, [(BasisLabel::Kappa1, qi(rep.dim as i64) * b2.eval(&Q::zero()) * &half)]);
    for u in 0..g.num_invsym_classes() {
        let u = InvSymClassId(u);
        let c = g.invsym_fiber(u)[0];
        // the two branches at a node carry [h] and [h^-1]
        let mut per_node = Q::zero();
        for branch in [c, g.inverse_class(c)] {
            let h = g.class_members(branch)[0];
            let m = eigen_multiplicities(g, rep, h)?;
            let r = qi(m.r as i64);
            let s: Q = m.w.iter().enumerate().map(|(k, &wk)| qi(wk as i64) * b2.eval(&(qi(k as i64) / &r))).sum();
            // r^2 * s / 2, times j_*(1) = delta / r, times the 1/2 in front
            per_node += &r * s * &half * &half;
        }
        out.add_term(node_label(g, u), &per_node);
    }
    Ok(out)
}

/// `ch_1` of the pushforward twisted by `omega^b`: each rank adds
/// `C(b, 2) kappa1`.
pub fn ch1_twisted(genus: u32, g: &FiniteGroup, rep: &Representation, b: u32) -> Result<DivisorClass> {
    let mut out = ch1_pushforward(genus, g, rep, 1)?;
    out.add_term(BasisLabel::Kappa1, &(qi(rep.dim as i64) * binom_q(b as i64, 2)));
    Ok(out)
}

/// The Hodge class as `ch_1` of the trivial representation.
pub fn hodge_class(genus: u32, g: &FiniteGroup) -> Result<DivisorClass> {
    let n = g.exponent();
    let trivial = Representation {
        name: "I".into(),
        dim: 1,
        character: vec![crate::cyclotomic::CyclotomicNumber::from_int(n, 1); g.num_classes()],
    };
    ch1_pushforward(genus, g, &trivial, 1)
}

fn check_i(i: u32, min: u32) -> Result<()> {
    if i < min {
        return Err(Error::IndexOutOfRange { index: i as i64, range: format!("i >= {min}") });
    }
    Ok(())
}

/// `c_1(E_{0,b}) = 2 lambda + 2 C(b,2) kappa1 - delta_0^T/4 - 2 delta_0^N/3`
/// on genus `2i + 1`, `kappa1` kept.
pub fn c1_e0b(i: u32, b: u32) -> Result<DivisorClass> {
    if b == 0 {
        return Err(Error::IndexOutOfRange { index: 0, range: "b >= 1".into() });
    }
    use BasisLabel::*;
    Ok(DivisorClass::from_terms(
        2 * i + 1,
        [(Lambda, qi(2)), (Kappa1, qi(2) * binom_q(b as i64, 2)), (Delta0C2, q(-1, 4)), (Delta0C3, q(-2, 3))],
    ))
}

/// `chi(wedge^j M_omega (x) omega^b (x) R)`, `g = 2i + 1`:
/// `2 C(g-2, j-1)(2-2g) + C(g-1, j)[2b(2g-2) + 2(1-g)]`.
pub fn rank_e(i: u32, j: u32, b: u32) -> Result<BigInt> {
    let g = 2 * i as i64 + 1;
    if j as i64 > g - 1 {
        return Err(Error::IndexOutOfRange { index: j as i64, range: format!("0..={}", g - 1) });
    }
    let (j, b) = (j as i64, b as i64);
    Ok(BigInt::from(2) * binom(g - 2, j - 1) * (2 - 2 * g) + binom(g - 1, j) * (2 * b * (2 * g - 2) + 2 * (1 - g)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KoszulClass {
    pub i: u32,
    /// `rk(E_{i-1,2})`, a positive overall factor.
    #[serde(with = "crate::rational::serde_bigint")]
    pub prefactor: BigInt,
    /// The class divided by the prefactor.
    pub class: DivisorClass,
    /// The class divided by `prefactor * 2 C(2i-2, i-1)`.
    pub normalized: DivisorClass,
}

/// The alternating sum over the Koszul filtration, before `kappa1`
/// elimination, per unit prefactor.
pub fn koszul_sum(i: u32) -> Result<DivisorClass> {
    check_i(i, 2)?;
    let g = 2 * i as i64 + 1;
    let mut acc = DivisorClass::zero(g as u32);
    for b in 0..=i {
        let sign = if b % 2 == 0 { -Q::one() } else { Q::one() };
        let c1 = c1_e0b(i, b + 1)?.scale(&binom_q(g, (i - b) as i64));
        let lam = qb(rank_e(i, 0, b + 1)? * binom(g - 1, i as i64 - b as i64 - 1));
        let term = c1.plus(&DivisorClass::from_terms(g as u32, [(BasisLabel::Lambda, lam)]))?;
        acc = acc.add_scaled(&term, &sign)?;
    }
    Ok(acc)
}

/// `2(3i+1)/i lambda - delta_0' - (6i+1)/(4i) delta_0^T - (5i+2)/(3i) delta_0^N`.
pub fn koszul_normalized_closed_form(i: u32) -> DivisorClass {
    use BasisLabel::*;
    let i_ = i as i64;
    DivisorClass::from_terms(
        2 * i + 1,
        [
            (Lambda, q(2 * (3 * i_ + 1), i_)),
            (DeltaPrime(0), qi(-1)),
            (Delta0C2, -q(6 * i_ + 1, 4 * i_)),
            (Delta0C3, -q(5 * i_ + 2, 3 * i_)),
        ],
    )
}

pub fn koszul_class(i: u32) -> Result<KoszulClass> {
    let class = koszul_sum(i)?.kappa1_substitution();
    let scale = qi(2) * binom_q(2 * i as i64 - 2, i as i64 - 1);
    let closed = koszul_normalized_closed_form(i);
    if class != closed.scale(&scale) {
        return Err(Error::ClosedFormMismatch(format!(
            "i = {i}: {} vs {} times {}",
            serde_json::to_string(&class).unwrap(),
            scale,
            serde_json::to_string(&closed).unwrap()
        )));
    }
    Ok(KoszulClass { i, prefactor: rank_e(i, i - 1, 2)?, class, normalized: closed })
}

/// `6(i+2)/(i+1) lambda - delta_0' - 2 delta_0^T - 3 delta_0^N`, up to a
/// positive scalar.
pub fn pullback_brill_noether(i: u32) -> Result<DivisorClass> {
    check_i(i, 1)?;
    use BasisLabel::*;
    let i_ = i as i64;
    Ok(DivisorClass::from_terms(
        2 * i + 1,
        [(Lambda, q(6 * (i_ + 2), i_ + 1)), (DeltaPrime(0), qi(-1)), (Delta0C2, qi(-2)), (Delta0C3, qi(-3))],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::irreducible_by_name;
    use BasisLabel::*;

    #[test]
    fn bernoulli() {
        assert_eq!(bernoulli_poly(0).coeffs, vec![qi(1)]);
        assert_eq!(bernoulli_poly(1).coeffs, vec![q(-1, 2), qi(1)]);
        assert_eq!(bernoulli_poly(2).coeffs, vec![q(1, 6), qi(-1), qi(1)]);
        assert_eq!(bernoulli_poly(2).eval(&q(1, 2)), q(-1, 12));
        let b = bernoulli_numbers(8);
        assert_eq!(b[4], q(-1, 30));
        assert_eq!(b[8], q(-1, 30));
        assert_eq!(b[7], qi(0));
    }

    #[test]
    fn hodge_is_mumford() {
        let g = FiniteGroup::s3();
        let h = hodge_class(7, &g).unwrap();
        let want = DivisorClass::from_terms(
            7,
            [(Kappa1, q(1, 12)), (DeltaPrime(0), q(1, 12)), (Delta0C2, q(2, 12)), (Delta0C3, q(3, 12))],
        );
        assert_eq!(h, want);
        let triv = hodge_class(7, &FiniteGroup::trivial()).unwrap();
        assert_eq!(triv.coeff(&DeltaPrime(0)), q(1, 12));
    }

    #[test]
    fn rep_r_node_terms() {
        let g = FiniteGroup::s3();
        let r = irreducible_by_name(&g, "R").unwrap();
        let ch = ch1_pushforward(13, &g, &r, 1).unwrap();
        let diff = ch.minus(&hodge_class(13, &g).unwrap().scale(&qi(2))).unwrap();
        assert_eq!(diff.coeff(&Delta0C2), q(-1, 4));
        assert_eq!(diff.coeff(&Delta0C3), q(-2, 3));
        assert_eq!(diff.coeff(&DeltaPrime(0)), qi(0));
        assert_eq!(diff.coeff(&Kappa1), qi(0));
        assert!(matches!(ch1_pushforward(13, &g, &r, 2), Err(Error::UnsupportedDegree(2))));
    }

    #[test]
    fn other_groups_get_fine_labels() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let chi = irreducible_by_name(&g, "chi1").unwrap();
        let ch = ch1_pushforward(5, &g, &chi, 1).unwrap();
        assert!(ch.terms().any(|(l, _)| matches!(l, Fine(_))));
    }

    #[test]
    fn c1_values() {
        assert_eq!(c1_e0b(6, 1).unwrap().coeff(&Kappa1), qi(0));
        assert_eq!(c1_e0b(6, 2).unwrap().coeff(&Kappa1), qi(2));
        assert_eq!(c1_e0b(6, 3).unwrap().coeff(&Kappa1), qi(6));
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_e(1, 0, 1).unwrap(), BigInt::from(4));
        for i in 1..=8u32 {
            let g = 2 * i as i64 + 1;
            for b in 0..=5u32 {
                let want = BigInt::from(2 * (2 * b as i64 + 1) * (g - 1));
                assert_eq!(rank_e(i, 0, b + 1).unwrap(), want);
            }
            assert_eq!(rank_e(i, i - 1, 2).unwrap(), BigInt::from(4 * i) * binom(g, i as i64));
        }
    }

    #[test]
    fn koszul_at_two() {
        let k = koszul_class(2).unwrap();
        let want = DivisorClass::from_terms(
            5,
            [(Lambda, qi(28)), (DeltaPrime(0), qi(-4)), (Delta0C2, q(-13, 2)), (Delta0C3, qi(-8))],
        );
        assert_eq!(k.class, want);
        assert_eq!(k.normalized.coeff(&Lambda), qi(7));
        assert_eq!(k.normalized.coeff(&Delta0C3), qi(-2));
        assert!(koszul_class(1).is_err());
    }

    #[test]
    fn brill_noether() {
        let bn = pullback_brill_noether(6).unwrap();
        assert_eq!(bn.coeff(&Lambda), q(48, 7));
        assert_eq!(bn.coeff(&Delta0C3), qi(-3));
    }
}
