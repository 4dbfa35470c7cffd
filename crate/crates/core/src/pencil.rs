//! Test pencils and the lower bounds they force on boundary coefficients of
//! effective divisors `a lambda - b_0' delta_0' - ...`.
//!
//! `A_{i,c3}` numbers are per unit of its (unknown) degree `d`; only the sum
//! of its three `delta_0` numbers is known.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::Serialize;

use crate::divisor::BasisLabel;
use crate::error::{Error, Result};
use crate::rational::{q, qb, qi, to_pq, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Pencil {
    #[serde(rename = "B_i")]
    B,
    #[serde(rename = "A_i_TN")]
    ATN,
    #[serde(rename = "A_i_c3")]
    AC3,
}

impl Pencil {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "b" | "b_i" => Ok(Self::B),
            "a_tn" | "a_i_tn" | "tn" => Ok(Self::ATN),
            "a_c3" | "a_i_c3" | "c3" => Ok(Self::AC3),
            _ => Err(Error::InvalidArgument(format!("unknown pencil {s:?} (B_i, A_i_TN, A_i_c3)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PencilIntersection {
    pub pencil: Pencil,
    pub i: u32,
    pub numbers: BTreeMap<BasisLabel, Q>,
    /// Intersection with `delta_0' + delta_0_c2 + delta_0_c3` when only the
    /// sum is known.
    pub delta0_total: Option<Q>,
    /// Set for `i = 10`, where the pencil argument needs curves off the K3 locus.
    pub k3_caveat: bool,
}

impl PencilIntersection {
    pub fn number(&self, l: &BasisLabel) -> Q {
        self.numbers.get(l).cloned().unwrap_or_default()
    }
}

impl Serialize for PencilIntersection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            pencil: Pencil,
            i: u32,
            numbers: BTreeMap<String, String>,
            #[serde(skip_serializing_if = "Option::is_none")]
            delta0_total: Option<String>,
            k3_caveat: bool,
            #[serde(skip_serializing_if = "Option::is_none")]
            per_unit: Option<&'a str>,
        }
        Repr {
            pencil: self.pencil,
            i: self.i,
            numbers: self.numbers.iter().map(|(l, x)| (l.key(), to_pq(x))).collect(),
            delta0_total: self.delta0_total.as_ref().map(to_pq),
            k3_caveat: self.k3_caveat,
            per_unit: (self.pencil == Pencil::AC3).then_some("d"),
        }
        .serialize(s)
    }
}

fn p2(e: u32) -> Q {
    qb(BigInt::from(1) << e)
}

fn check_i(i: u32) -> Result<()> {
    if i == 0 {
        return Err(Error::IndexOutOfRange { index: 0, range: "i >= 1".into() });
    }
    Ok(())
}

pub fn pencil_numbers(pencil: Pencil, i: u32) -> Result<PencilIntersection> {
    use BasisLabel::*;
    check_i(i)?;
    let n = qi(6 * i as i64 + 18);
    let ip1 = qi(i as i64 + 1);
    let mut numbers = BTreeMap::new();
    let mut delta0_total = None;
    match pencil {
        Pencil::B => {
            numbers.insert(Lambda, ip1);
            numbers.insert(DeltaBase(0), n);
            numbers.insert(DeltaBase(i), qi(-1));
        }
        Pencil::ATN => {
            let m = p2(2 * i) - qi(1);
            let half = p2(2 * i - 1);
            numbers.insert(Lambda, &m * &ip1);
            numbers.insert(DeltaPrime(0), (&half + qi(1)) * &n);
            numbers.insert(Delta0C2, (&half - qi(2)) * &n);
            numbers.insert(Delta0C3, qi(0));
            numbers.insert(DeltaPrime(i), -m);
            numbers.insert(DeltaIC3(i), qi(0));
        }
        Pencil::AC3 => {
            numbers.insert(Lambda, ip1);
            numbers.insert(DeltaIC3(i), qi(-1));
            numbers.insert(DeltaPrime(i), qi(0));
            delta0_total = Some(n);
        }
    }
    Ok(PencilIntersection { pencil, i, numbers, delta0_total, k3_caveat: i == 10 })
}

fn check_bounds(a: &Q, b0p: Option<&Q>, b0c2: Option<&Q>) -> Result<()> {
    if *a > qi(13) {
        return Err(Error::InvalidArgument(format!("a = {} exceeds 13", to_pq(a))));
    }
    if b0p.is_some_and(|b| *b < qi(2)) || b0c2.is_some_and(|b| *b < qi(3)) {
        return Err(Error::InvalidArgument("need b0' >= 2 and b0c2 >= 3".into()));
    }
    Ok(())
}

/// `[(2^(2i-1)+1) b0' + (2^(2i-1)-2) b0c2] (6i+18) / (2^(2i)-1) - (i+1) a`,
/// from `A_i_TN . D >= 0`.
pub fn min_b_prime(i: u32, a: &Q, b0p: &Q, b0c2: &Q) -> Result<Q> {
    check_i(i)?;
    check_bounds(a, Some(b0p), Some(b0c2))?;
    let half = p2(2 * i - 1);
    let n = qi(6 * i as i64 + 18);
    let m = p2(2 * i) - qi(1);
    Ok(((&half + qi(1)) * b0p + (&half - qi(2)) * b0c2) * n / m - qi(i as i64 + 1) * a)
}

/// `(5/2)(6i+18) - (i+1) a`, from `A_{i,c3} . D >= 0` together with the
/// assumed inequality `A.(delta_0_c2 + delta_0_c3) >= A.delta_0'`.
pub fn min_b_c3(i: u32, a: &Q) -> Result<Q> {
    check_i(i)?;
    check_bounds(a, None, None)?;
    Ok(q(5, 2) * qi(6 * i as i64 + 18) - qi(i as i64 + 1) * a)
}

/// Inequality taken as an input of [`min_b_c3`].
pub const C3_PENCIL_ASSUMPTION: &str = "A_{i,c3} . (delta_0_c2 + delta_0_c3) >= A_{i,c3} . delta_0'";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PencilCheck {
    pub i: u32,
    #[serde(with = "crate::rational::serde_pq")]
    pub bound_b_prime: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub bound_b_c3: Q,
    /// `bound_b_prime >= 3` and `bound_b_c3 > 7`.
    pub passes: bool,
    pub k3_caveat: bool,
    pub assumptions: Vec<String>,
}

pub fn pencil_check(i: u32, a: &Q, b0p: &Q, b0c2: &Q) -> Result<PencilCheck> {
    let bp = min_b_prime(i, a, b0p, b0c2)?;
    let bc = min_b_c3(i, a)?;
    Ok(PencilCheck {
        i,
        passes: bp >= qi(3) && bc > qi(7),
        bound_b_prime: bp,
        bound_b_c3: bc,
        k3_caveat: i == 10,
        assumptions: vec![C3_PENCIL_ASSUMPTION.to_string()],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisLabel::*;

    #[test]
    fn b_pencil() {
        let p = pencil_numbers(Pencil::B, 2).unwrap();
        assert_eq!(p.number(&Lambda), qi(3));
        assert_eq!(p.number(&DeltaBase(0)), qi(30));
        assert_eq!(p.number(&DeltaBase(2)), qi(-1));
    }

    #[test]
    fn tn_pencil_at_one() {
        let p = pencil_numbers(Pencil::ATN, 1).unwrap();
        assert_eq!(p.number(&Lambda), qi(6));
        assert_eq!(p.number(&DeltaPrime(0)), qi(72));
        assert_eq!(p.number(&Delta0C2), qi(0));
        assert_eq!(p.number(&DeltaPrime(1)), qi(-3));
    }

    #[test]
    fn c3_pencil() {
        let p = pencil_numbers(Pencil::AC3, 4).unwrap();
        assert_eq!(p.number(&DeltaIC3(4)), qi(-1));
        assert_eq!(p.delta0_total, Some(qi(42)));
        assert!(pencil_numbers(Pencil::AC3, 0).is_err());
        assert!(pencil_numbers(Pencil::B, 10).unwrap().k3_caveat);
    }

    #[test]
    fn bounds() {
        assert_eq!(min_b_prime(1, &qi(13), &qi(2), &qi(3)).unwrap(), qi(22));
        assert_eq!(min_b_prime(1, &qi(0), &qi(2), &qi(3)).unwrap(), qi(48));
        assert_eq!(min_b_c3(1, &qi(13)).unwrap(), qi(34));
        assert_eq!(min_b_c3(3, &qi(0)).unwrap(), qi(90));
        assert!(min_b_prime(1, &qi(14), &qi(2), &qi(3)).is_err());
        assert!(min_b_prime(1, &qi(13), &qi(1), &qi(3)).is_err());
    }

    #[test]
    fn monotone_in_a() {
        let lo = min_b_prime(3, &qi(5), &qi(2), &qi(3)).unwrap();
        let hi = min_b_prime(3, &qi(6), &qi(2), &qi(3)).unwrap();
        assert!(hi < lo);
    }
}
