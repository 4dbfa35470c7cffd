//! Rational divisor classes on the moduli of `S3`-covers and on `M_g`.
//!
//! `delta_0_c2` and `delta_0_c3` double as `delta_0^T` and `delta_0^N`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{parse_pq, q, qi, to_pq, Q};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisLabel {
    Lambda,
    Kappa1,
    /// `delta_i` on `M_g`.
    DeltaBase(u32),
    /// `delta_i'`: covers with trivial node type over `Delta_i`.
    DeltaPrime(u32),
    Delta0C2,
    Delta0C3,
    /// `delta_{i,c3}^{S3,S3}`.
    DeltaIC3(u32),
    /// A single boundary label by name, e.g. `Delta_0^{S3,T}`.
    Fine(String),
}

impl BasisLabel {
    pub fn key(&self) -> String {
        match self {
            Self::Lambda => "lambda".into(),
            Self::Kappa1 => "kappa1".into(),
            Self::DeltaBase(i) => format!("delta_base_{i}"),
            Self::DeltaPrime(i) => format!("delta_prime_{i}"),
            Self::Delta0C2 => "delta_0_c2".into(),
            Self::Delta0C3 => "delta_0_c3".into(),
            Self::DeltaIC3(i) => format!("delta_c3_{i}"),
            Self::Fine(name) => format!("fine:{name}"),
        }
    }

    pub fn from_key(s: &str) -> Result<Self> {
        let num = |rest: &str| rest.parse::<u32>().map_err(|_| Error::Parse(format!("bad basis label {s:?}")));
        Ok(match s {
            "lambda" => Self::Lambda,
            "kappa1" => Self::Kappa1,
            "delta_0_c2" | "delta_0_T" => Self::Delta0C2,
            "delta_0_c3" | "delta_0_N" => Self::Delta0C3,
            _ => {
                if let Some(r) = s.strip_prefix("delta_base_") {
                    Self::DeltaBase(num(r)?)
                } else if let Some(r) = s.strip_prefix("delta_prime_") {
                    Self::DeltaPrime(num(r)?)
                } else if let Some(r) = s.strip_prefix("delta_c3_") {
                    Self::DeltaIC3(num(r)?)
                } else if let Some(r) = s.strip_prefix("fine:") {
                    Self::Fine(r.to_string())
                } else {
                    return Err(Error::Parse(format!("unknown basis label {s:?}")));
                }
            }
        })
    }

    /// Coarse label a fine boundary label aggregates onto, for `S3` names
    /// as produced by the boundary catalog.
    pub fn coarse(&self) -> Option<BasisLabel> {
        let Self::Fine(name) = self else { return Some(self.clone()) };
        let rest = name.strip_prefix("Delta_")?;
        let (head, sup) = rest.split_once('^')?;
        let (i, node) = match head.strip_prefix('{').and_then(|h| h.strip_suffix('}')) {
            Some(inner) => {
                let (i, node) = inner.split_once(',')?;
                (i.parse::<u32>().ok()?, node)
            }
            None => (head.parse::<u32>().ok()?, "1"),
        };
        let pair = sup.strip_prefix('{')?.strip_suffix('}')?;
        match (i, node) {
            (_, "1") => Some(Self::DeltaPrime(i)),
            (0, "c2") => Some(Self::Delta0C2),
            (0, "c3") => Some(Self::Delta0C3),
            (i, "c3") if pair == "S3,S3" => Some(Self::DeltaIC3(i)),
            _ => None,
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    pub genus: u32,
    coeffs: BTreeMap<BasisLabel, Q>,
}

impl DivisorClass {
    pub fn zero(genus: u32) -> Self {
        Self { genus, coeffs: BTreeMap::new() }
    }

    pub fn from_terms(genus: u32, terms: impl IntoIterator<Item = (BasisLabel, Q)>) -> Self {
        let mut c = Self::zero(genus);
        for (l, x) in terms {
            c.add_term(l, &x);
        }
        c
    }

    pub fn coeff(&self, l: &BasisLabel) -> Q {
        self.coeffs.get(l).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisLabel, &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, l: BasisLabel, x: &Q) {
        let e = self.coeffs.entry(l.clone()).or_insert_with(Q::zero);
        *e += x;
        if e.is_zero() {
            self.coeffs.remove(&l);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch { left: self.genus, right: other.genus });
        }
        Ok(())
    }

    /// `self + x * other`.
    pub fn add_scaled(&self, other: &Self, x: &Q) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), &(c * x));
        }
        Ok(out)
    }

    pub fn plus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &Q::one())
    }

    pub fn minus(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, &-Q::one())
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self::zero(self.genus).add_scaled(self, x).unwrap()
    }

    /// Sums fine labels onto their coarse labels; unknown fine labels stay.
    pub fn coarsen(&self) -> Self {
        let mut out = Self::zero(self.genus);
        for (l, c) in &self.coeffs {
            out.add_term(l.coarse().unwrap_or_else(|| l.clone()), c);
        }
        out
    }

    /// Replaces `kappa1` with `12 lambda - delta_0' - 2 delta_0_c2 - 3 delta_0_c3`.
    pub fn kappa1_substitution(&self) -> Self {
        let k = self.coeff(&BasisLabel::Kappa1);
        let mut out = self.clone();
        out.coeffs.remove(&BasisLabel::Kappa1);
        out.add_scaled(&kappa1_pullback(self.genus), &k).unwrap()
    }

    /// Pullback from `M_g`: `lambda` and `kappa1` map to themselves, each
    /// `delta_base_i` to [`pullback_delta`].
    pub fn pullback(&self) -> Result<Self> {
        let mut out = Self::zero(self.genus);
        for (l, c) in &self.coeffs {
            match l {
                BasisLabel::DeltaBase(i) => {
                    out = out.add_scaled(&pullback_delta(*i, self.genus)?, c)?;
                }
                BasisLabel::Lambda | BasisLabel::Kappa1 => out.add_term(l.clone(), c),
                other => return Err(Error::InvalidArgument(format!("{other} is not a class on M_g"))),
            }
        }
        Ok(out)
    }

    /// `{"genus": g, "coeffs": {"lambda": "13/1", ...}}` with sorted keys.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            genus: u32,
            coeffs: BTreeMap<String, String>,
        }
        Repr { genus: self.genus, coeffs: self.coeffs.iter().map(|(l, c)| (l.key(), to_pq(c))).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            genus: u32,
            coeffs: BTreeMap<String, String>,
        }
        let r = Repr::deserialize(d)?;
        let mut c = DivisorClass::zero(r.genus);
        for (k, v) in r.coeffs {
            let l = BasisLabel::from_key(&k).map_err(de::Error::custom)?;
            let x = parse_pq(&v).map_err(de::Error::custom)?;
            c.add_term(l, &x);
        }
        Ok(c)
    }
}

fn check_index(i: u32, g: u32) -> Result<()> {
    if i > g / 2 {
        return Err(Error::IndexOutOfRange { index: i as i64, range: format!("0..={}", g / 2) });
    }
    Ok(())
}

/// `pi^* delta_0 = delta_0' + 2 delta_0_c2 + 3 delta_0_c3`,
/// `pi^* delta_i = delta_i' + 3 delta_{i,c3}` for `i >= 1`.
pub fn pullback_delta(i: u32, g: u32) -> Result<DivisorClass> {
    check_index(i, g)?;
    Ok(if i == 0 {
        DivisorClass::from_terms(
            g,
            [(BasisLabel::DeltaPrime(0), qi(1)), (BasisLabel::Delta0C2, qi(2)), (BasisLabel::Delta0C3, qi(3))],
        )
    } else {
        DivisorClass::from_terms(g, [(BasisLabel::DeltaPrime(i), qi(1)), (BasisLabel::DeltaIC3(i), qi(3))])
    })
}

pub fn pullback_lambda(g: u32) -> DivisorClass {
    DivisorClass::from_terms(g, [(BasisLabel::Lambda, qi(1))])
}

/// `12 lambda - pi^* delta_0`.
pub fn kappa1_pullback(g: u32) -> DivisorClass {
    let d0 = pullback_delta(0, g).unwrap();
    pullback_lambda(g).scale(&qi(12)).minus(&d0).unwrap()
}

/// `delta_0_c2 + 2 delta_0_c3 + 2 sum_{i>=1} delta_{i,c3}`.
pub fn ramification_divisor(g: u32) -> DivisorClass {
    let mut r = DivisorClass::from_terms(g, [(BasisLabel::Delta0C2, qi(1)), (BasisLabel::Delta0C3, qi(2))]);
    for i in 1..=g / 2 {
        r.add_term(BasisLabel::DeltaIC3(i), &qi(2));
    }
    r
}

/// `13 lambda - 2 delta_0 - 3 delta_1 - 2 sum_{i>=2} delta_i` on `M_g`.
pub fn canonical_class_mg(g: u32) -> DivisorClass {
    let mut k = DivisorClass::from_terms(g, [(BasisLabel::Lambda, qi(13)), (BasisLabel::DeltaBase(0), qi(-2))]);
    for i in 1..=g / 2 {
        k.add_term(BasisLabel::DeltaBase(i), &qi(if i == 1 { -3 } else { -2 }));
    }
    k
}

/// The closed form of `K`, written out coefficient by coefficient.
pub fn canonical_class_closed_form(g: u32) -> DivisorClass {
    use BasisLabel::*;
    let mut k = DivisorClass::from_terms(
        g,
        [(Lambda, qi(13)), (DeltaPrime(0), qi(-2)), (Delta0C2, qi(-3)), (Delta0C3, qi(-4))],
    );
    for i in 1..=g / 2 {
        let (p, c3) = if i == 1 { (-3, -7) } else { (-2, -4) };
        k.add_term(DeltaPrime(i), &qi(p));
        k.add_term(DeltaIC3(i), &qi(c3));
    }
    k
}

/// `K = pi^* K_{M_g} + R`, checked against the closed form.
pub fn canonical_class(g: u32) -> Result<DivisorClass> {
    if g < 2 {
        return Err(Error::InvalidArgument(format!("canonical class needs genus >= 2, got {g}")));
    }
    let k = canonical_class_mg(g).pullback()?.plus(&ramification_divisor(g))?;
    let closed = canonical_class_closed_form(g);
    if k != closed {
        return Err(Error::InternalMismatch(format!(
            "Hurwitz derivation {} differs from closed form {}",
            serde_json::to_string(&k).unwrap(),
            serde_json::to_string(&closed).unwrap()
        )));
    }
    Ok(k)
}

/// `13/2 lambda - delta_0' - 3/2 delta_0^T - 2 delta_0^N`: the `delta_0`
/// part of `K / 2`.
pub fn scaled_canonical_target(g: u32) -> DivisorClass {
    use BasisLabel::*;
    DivisorClass::from_terms(g, [(Lambda, q(13, 2)), (DeltaPrime(0), qi(-1)), (Delta0C2, q(-3, 2)), (Delta0C3, qi(-2))])
}

#[cfg(test)]
mod tests {
    use super::*;
    use BasisLabel::*;

    #[test]
    fn pullbacks() {
        let d0 = pullback_delta(0, 13).unwrap();
        assert_eq!(d0.coeff(&DeltaPrime(0)), qi(1));
        assert_eq!(d0.coeff(&Delta0C2), qi(2));
        assert_eq!(d0.coeff(&Delta0C3), qi(3));
        let d2 = pullback_delta(2, 13).unwrap();
        assert_eq!(d2.terms().count(), 2);
        assert_eq!(d2.coeff(&DeltaIC3(2)), qi(3));
        assert!(matches!(pullback_delta(7, 13), Err(Error::IndexOutOfRange { .. })));
        assert_eq!(pullback_lambda(13).coeff(&Lambda), qi(1));
    }

    #[test]
    fn ramification() {
        let r = ramification_divisor(4);
        let want = DivisorClass::from_terms(
            4,
            [(Delta0C2, qi(1)), (Delta0C3, qi(2)), (DeltaIC3(1), qi(2)), (DeltaIC3(2), qi(2))],
        );
        assert_eq!(r, want);
        assert_eq!(ramification_divisor(5).terms().filter(|(l, _)| matches!(l, DeltaIC3(_))).count(), 2);
    }

    #[test]
    fn canonical() {
        let k = canonical_class(13).unwrap();
        assert_eq!(k.coeff(&Lambda), qi(13));
        assert_eq!(k.coeff(&Delta0C3), qi(-4));
        assert_eq!(k.coeff(&DeltaIC3(1)), qi(-7));
        assert_eq!(k.coeff(&DeltaIC3(6)), qi(-4));
        assert!(canonical_class(1).is_err());
    }

    #[test]
    fn kappa_substitution() {
        let k = DivisorClass::from_terms(5, [(Kappa1, qi(1))]).kappa1_substitution();
        let want = DivisorClass::from_terms(
            5,
            [(Lambda, qi(12)), (DeltaPrime(0), qi(-1)), (Delta0C2, qi(-2)), (Delta0C3, qi(-3))],
        );
        assert_eq!(k, want);
        assert_eq!(want.kappa1_substitution(), want);
        let half = DivisorClass::from_terms(5, [(Kappa1, q(1, 2))]).kappa1_substitution();
        assert_eq!(half, want.scale(&q(1, 2)));
    }

    #[test]
    fn genus_mismatch() {
        let a = pullback_lambda(3);
        let b = pullback_lambda(5);
        assert_eq!(a.plus(&b), Err(Error::GenusMismatch { left: 3, right: 5 }));
    }

    #[test]
    fn fine_labels_coarsen() {
        let names = [
            "Delta_0^{1,1}",
            "Delta_0^{S3,T}",
            "Delta_{0,c2}^{T,T}",
            "Delta_{0,c2}^{S3,S3}",
            "Delta_{0,c3}^{N,N}",
            "Delta_{0,c3}^{S3,S3}",
            "Delta_2^{T,N}",
            "Delta_{2,c3}^{S3,S3}",
        ];
        let c = DivisorClass::from_terms(13, names.iter().map(|n| (Fine(n.to_string()), qi(1))));
        let want = DivisorClass::from_terms(
            13,
            [
                (DeltaPrime(0), qi(2)),
                (Delta0C2, qi(2)),
                (Delta0C3, qi(2)),
                (DeltaPrime(2), qi(1)),
                (DeltaIC3(2), qi(1)),
            ],
        );
        assert_eq!(c.coarsen(), want);
    }

    #[test]
    fn json_shape() {
        let k = canonical_class(4).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        assert!(s.starts_with(r#"{"genus":4,"coeffs":{"delta_0_c2":"-3/1","delta_0_c3":"-4/1","#));
        let back: DivisorClass = serde_json::from_str(&s).unwrap();
        assert_eq!(back, k);
        assert!(BasisLabel::from_key("delta_prime_x").is_err());
    }
}
