//! Slope decomposition of the canonical class and the general-type verdict.
//!
//! On the `delta_0` part of `K/2` we solve
//! `target = s Z + (1-s) D + gamma lambda + E`, with `Z` the normalized Koszul
//! class, `D` the Brill-Noether pullback and `E` a residual boundary class
//! that must be effective.

use serde::Serialize;

use crate::divisor::{scaled_canonical_target, BasisLabel, DivisorClass};
use crate::error::{Error, Result};
use crate::grr::{koszul_normalized_closed_form, pullback_brill_noether};
use crate::pencil::{pencil_check, PencilCheck};
use crate::rational::{is_nonneg, q, qi, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    GeneralType,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeSolution {
    pub i: u32,
    #[serde(with = "crate::rational::serde_pq")]
    pub s_max: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub gamma_max: Q,
    pub verdict: Verdict,
    /// `target - s Z - (1-s) D - gamma lambda` at `s = s_max`.
    pub effective_e: DivisorClass,
}

/// `gamma(s) = (i-11)/(2(i+1)) + s (4i-2)/(i(i+1))`.
pub fn gamma(i: u32, s: &Q) -> Q {
    let i = i as i64;
    q(i - 11, 2 * (i + 1)) + s * q(4 * i - 2, i * (i + 1))
}

/// `target - s Z - (1-s) D - gamma(s) lambda`.
pub fn residual(i: u32, s: &Q) -> Result<DivisorClass> {
    let g = 2 * i + 1;
    let z = koszul_normalized_closed_form(i);
    let d = pullback_brill_noether(i)?;
    let lam = DivisorClass::from_terms(g, [(BasisLabel::Lambda, gamma(i, s))]);
    scaled_canonical_target(g).add_scaled(&z, &-s.clone())?.add_scaled(&d, &-(qi(1) - s))?.minus(&lam)
}

pub fn solve_slope(i: u32) -> Result<SlopeSolution> {
    if i < 2 {
        return Err(Error::IndexOutOfRange { index: i as i64, range: "i >= 2".into() });
    }
    let i_ = i as i64;
    // delta_0^T residual 1/2 + s (1-2i)/(4i) and delta_0^N residual
    // 1 + s (2-4i)/(3i) must stay >= 0
    let t_bound = q(2 * i_, 2 * i_ - 1);
    let n_bound = q(3 * i_, 4 * i_ - 2);
    let s_max = [t_bound, n_bound, qi(1)].into_iter().min().unwrap();
    let gamma_max = gamma(i, &s_max);
    let effective_e = residual(i, &s_max)?;
    let effective = effective_e.terms().all(|(_, c)| is_nonneg(c));
    let verdict = if gamma_max > qi(0) && effective { Verdict::GeneralType } else { Verdict::Inconclusive };
    Ok(SlopeSolution { i, s_max, gamma_max, verdict, effective_e })
}

pub const ASSUMPTIONS: [&str; 4] = [
    "lambda is big on the moduli space of connected S3-covers",
    "pluricanonical forms extend over the resolution of the coarse moduli space",
    "boundary coefficients away from delta_0 satisfy the pencil bounds",
    "at i = 10 the test pencils avoid the K3 locus",
];

pub const NORMALIZATION_NOTE: &str = "target is K/2 on the delta_0 part: 13/2, 1, 3/2, 2 against 13, 2, 3, 4 in K";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    #[serde(with = "crate::rational::serde_pq")]
    pub koszul_weight: Q,
    #[serde(with = "crate::rational::serde_pq")]
    pub brill_noether_weight: Q,
    pub koszul: DivisorClass,
    pub brill_noether: DivisorClass,
    pub effective_e: DivisorClass,
    pub target: DivisorClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub genus: u32,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_pq")]
    pub s_max: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_pq")]
    pub gamma_max: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub decomposition: Option<Decomposition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pencil_bounds: Option<PencilCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub assumptions: Vec<String>,
    pub normalization_note: String,
}

mod opt_pq {
    use serde::Serializer;

    use crate::rational::{to_pq, Q};

    pub fn serialize<S: Serializer>(x: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&to_pq(x)),
            None => s.serialize_none(),
        }
    }
}

pub fn verdict(g: u32) -> Result<VerdictReport> {
    let mut report = VerdictReport {
        genus: g,
        verdict: Verdict::Inconclusive,
        i: None,
        s_max: None,
        gamma_max: None,
        decomposition: None,
        pencil_bounds: None,
        reason: None,
        assumptions: ASSUMPTIONS.iter().map(|s| s.to_string()).collect(),
        normalization_note: NORMALIZATION_NOTE.into(),
    };
    if g.is_multiple_of(2) {
        report.reason = Some("even genus: no Koszul divisor of this shape".into());
        return Ok(report);
    }
    let i = (g - 1) / 2;
    report.i = Some(i);
    if i < 2 {
        report.reason = Some("genus below 5: no Koszul divisor".into());
        return Ok(report);
    }
    let sol = solve_slope(i)?;
    let pencil = pencil_check(i, &qi(13), &qi(2), &qi(3))?;
    report.verdict = if pencil.passes { sol.verdict } else { Verdict::Inconclusive };
    report.reason = match (sol.verdict, pencil.passes) {
        (Verdict::GeneralType, true) => None,
        (_, false) => Some("pencil bounds fail".into()),
        _ => Some(format!("gamma_max = {} is not positive", crate::rational::to_pq(&sol.gamma_max))),
    };
    report.decomposition = Some(Decomposition {
        koszul_weight: sol.s_max.clone(),
        brill_noether_weight: qi(1) - &sol.s_max,
        koszul: koszul_normalized_closed_form(i),
        brill_noether: pullback_brill_noether(i)?,
        effective_e: sol.effective_e,
        target: scaled_canonical_target(g),
    });
    report.s_max = Some(sol.s_max);
    report.gamma_max = Some(sol.gamma_max);
    report.pencil_bounds = Some(pencil);
    Ok(report)
}
