//! Covers of a one-pointed elliptic curve, the action of its extra
//! automorphisms, and the branch data of the `N`-component of the `S3`
//! moduli over `M_{1,1}`.
//!
//! `pi_1(E)` is free abelian on `a, b`, so a cover is a commuting pair
//! `(x, y) = (phi(a), phi(b))` up to simultaneous conjugation. An
//! automorphism `alpha` lifts to the cover iff `phi o alpha` is conjugate to
//! `phi`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, SubgroupClassId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticCoverClass {
    /// Lexicographically least pair of the conjugation orbit.
    pub pair: (Elem, Elem),
    pub image: SubgroupClassId,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AutAction {
    /// `a -> b, b -> a^-1`.
    Order4,
    /// `a -> b, b -> b a^-1`.
    Order6,
}

impl AutAction {
    pub fn from_order(n: u32) -> Result<Self> {
        match n {
            4 => Ok(Self::Order4),
            6 => Ok(Self::Order6),
            _ => Err(Error::InvalidArgument(format!("automorphism order must be 4 or 6, got {n}"))),
        }
    }

    pub fn order(self) -> usize {
        match self {
            Self::Order4 => 4,
            Self::Order6 => 6,
        }
    }

    /// The pulled back pair `(phi(alpha(a)), phi(alpha(b)))`.
    pub fn apply(self, g: &FiniteGroup, (x, y): (Elem, Elem)) -> (Elem, Elem) {
        match self {
            Self::Order4 => (y, g.inv(x)),
            Self::Order6 => (y, g.mul(y, g.inv(x))),
        }
    }
}

pub fn canonical_pair(g: &FiniteGroup, (x, y): (Elem, Elem)) -> (Elem, Elem) {
    (0..g.order()).map(|h| (g.conj(h, x), g.conj(h, y))).min().unwrap()
}

fn pair_label(g: &FiniteGroup, (x, y): (Elem, Elem)) -> String {
    format!("a->{}; b->{}", g.name(x), g.name(y))
}

fn all_classes(g: &FiniteGroup, image: Option<SubgroupClassId>) -> Vec<EllipticCoverClass> {
    let mut out = Vec::new();
    for x in 0..g.order() {
        for y in 0..g.order() {
            if g.mul(x, y) != g.mul(y, x) || canonical_pair(g, (x, y)) != (x, y) {
                continue;
            }
            let h = g.subgroup(g.join(g.join(g.trivial_subgroup(), x), y)).class;
            if image.is_none_or(|want| want == h) {
                out.push(EllipticCoverClass { pair: (x, y), image: h, label: pair_label(g, (x, y)) });
            }
        }
    }
    out
}

/// Conjugation classes of commuting pairs generating a subgroup in `h`,
/// sorted by representative.
pub fn classes_with_image(g: &FiniteGroup, h: SubgroupClassId) -> Vec<EllipticCoverClass> {
    all_classes(g, Some(h))
}

/// Every cover class of a one-pointed elliptic curve.
pub fn all_cover_classes(g: &FiniteGroup) -> Vec<EllipticCoverClass> {
    all_classes(g, None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutOrbits {
    pub action: AutAction,
    /// Orbits as indices into the input list, each sorted, ordered by least index.
    pub orbits: Vec<Vec<usize>>,
    /// `fixed[k]`: the automorphism lifts to cover `k`.
    pub fixed: Vec<bool>,
}

impl AutOrbits {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.orbits.iter().map(Vec::len).collect();
        s.sort_unstable();
        s
    }
}

/// Orbits of the induced permutation on a list of classes closed under the
/// action.
pub fn aut_orbits(g: &FiniteGroup, classes: &[EllipticCoverClass], action: AutAction) -> Result<AutOrbits> {
    let perm: Vec<usize> = classes
        .iter()
        .map(|c| {
            let img = canonical_pair(g, action.apply(g, c.pair));
            classes.iter().position(|d| d.pair == img).ok_or_else(|| {
                Error::InternalMismatch(format!("{} maps {} outside the given classes", action.order(), c.label))
            })
        })
        .collect::<Result<_>>()?;
    let mut seen = vec![false; classes.len()];
    let mut orbits = Vec::new();
    for start in 0..classes.len() {
        if seen[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            orbit.push(k);
            k = perm[k];
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let fixed = (0..classes.len()).map(|k| perm[k] == k).collect();
    Ok(AutOrbits { action, orbits, fixed })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasePoint {
    E4,
    E6,
    E0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberPoint {
    pub label: String,
    pub ramification: u32,
    /// Quotient type of the local picture, `"identity"` when unramified.
    pub local_picture: String,
    /// Cover classes over this point (empty over the nodal curve).
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchDatum {
    pub base_point: BasePoint,
    pub fiber: Vec<FiberPoint>,
}

impl BranchDatum {
    pub fn degree(&self) -> u32 {
        self.fiber.iter().map(|p| p.ramification).sum()
    }

    pub fn ramification(&self) -> u32 {
        self.fiber.iter().map(|p| p.ramification - 1).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BranchReport {
    pub degree: u32,
    pub data: Vec<BranchDatum>,
}

/// Branch data of the `N`-component of `S3`-covers over `M_{1,1}`.
///
/// Over `E4` and `E6` the fibers are the orbits of the automorphism action
/// on the four `N`-classes, with ramification equal to the orbit length
/// (the elliptic involution acts trivially). Over the nodal curve the
/// ordinal `3` stabilizer forces `t = t'^3` at one preimage; the other is
/// unramified.
pub fn branch_data_rn() -> Result<BranchReport> {
    let g = FiniteGroup::s3();
    let n = g.resolve_subgroup_class("N")?;
    let classes = classes_with_image(&g, n);
    let degree = classes.len() as u32;
    let names = |orbit: &[usize]| orbit.iter().map(|&k| classes[k].label.clone()).collect::<Vec<_>>();

    let mut data = Vec::new();
    for (base, action, tag) in [(BasePoint::E4, AutAction::Order4, "E4"), (BasePoint::E6, AutAction::Order6, "E6")] {
        let orbits = aut_orbits(&g, &classes, action)?;
        let mut pts: Vec<&Vec<usize>> = orbits.orbits.iter().collect();
        // ramified points first
        pts.sort_by_key(|o| (std::cmp::Reverse(o.len()), o[0]));
        let fiber = pts
            .iter()
            .enumerate()
            .map(|(k, o)| {
                let e = o.len() as u32;
                FiberPoint {
                    label: format!("[{tag}{}]", "'".repeat(k + 1)),
                    ramification: e,
                    local_picture: if e == 1 { "identity".into() } else { format!("(1/{e},1/{e})") },
                    classes: names(o),
                }
            })
            .collect();
        data.push(BranchDatum { base_point: base, fiber });
    }
    data.push(BranchDatum {
        base_point: BasePoint::E0,
        fiber: vec![
            FiberPoint { label: "[E0']".into(), ramification: 3, local_picture: "(1,1/3)".into(), classes: Vec::new() },
            FiberPoint {
                label: "[E0'']".into(),
                ramification: 1,
                local_picture: "identity".into(),
                classes: Vec::new(),
            },
        ],
    });
    Ok(BranchReport { degree, data })
}

/// `2g - 2 = d (2h - 2) + sum (e - 1)`.
pub fn genus_by_riemann_hurwitz(degree: u32, base_genus: u32, branch: &[BranchDatum]) -> Result<u32> {
    if degree == 0 {
        return Err(Error::InconsistentProfile("degree must be positive".into()));
    }
    if let Some(b) = branch.iter().find(|b| b.degree() != degree) {
        return Err(Error::InconsistentProfile(format!(
            "fiber over {:?} has total ramification {}, expected degree {degree}",
            b.base_point,
            b.degree()
        )));
    }
    let r: i64 = branch.iter().map(|b| b.ramification() as i64).sum();
    let two_g_minus_2 = degree as i64 * (2 * base_genus as i64 - 2) + r;
    if two_g_minus_2 % 2 != 0 || two_g_minus_2 < -2 {
        return Err(Error::InconsistentProfile(format!("2g - 2 = {two_g_minus_2}")));
    }
    Ok((two_g_minus_2 / 2 + 1) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_n() -> (FiniteGroup, Vec<EllipticCoverClass>) {
        let g = FiniteGroup::s3();
        let n = g.resolve_subgroup_class("N").unwrap();
        let c = classes_with_image(&g, n);
        (g, c)
    }

    #[test]
    fn n_classes_match_table() {
        let (_, c) = s3_n();
        let pairs: Vec<_> = c.iter().map(|x| x.pair).collect();
        // rows (i), (iv), (ii), (iii) in representative order
        assert_eq!(pairs, vec![(0, 4), (4, 0), (4, 4), (4, 5)]);
        assert_eq!(c[0].label, "a->1; b->(123)");
    }

    #[test]
    fn trivial_and_full_images() {
        let g = FiniteGroup::s3();
        let t = classes_with_image(&g, g.trivial_class());
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].pair, (0, 0));
        // commuting pairs never generate a non-abelian group
        assert!(classes_with_image(&g, g.full_class()).is_empty());
    }

    #[test]
    fn order_six_orbits() {
        let (g, c) = s3_n();
        let o = aut_orbits(&g, &c, AutAction::Order6).unwrap();
        assert_eq!(o.orbit_sizes(), vec![1, 3]);
        assert_eq!(o.fixed, vec![false, false, false, true]);
    }

    #[test]
    fn order_four_orbits() {
        let (g, c) = s3_n();
        let o = aut_orbits(&g, &c, AutAction::Order4).unwrap();
        // (i)<->(iv), (ii)<->(iii)
        assert_eq!(o.orbits, vec![vec![0, 1], vec![2, 3]]);
        assert!(o.fixed.iter().all(|f| !f));
    }

    #[test]
    fn actions_have_claimed_order() {
        let g = FiniteGroup::s3();
        for act in [AutAction::Order4, AutAction::Order6] {
            for cls in all_cover_classes(&g) {
                let mut p = cls.pair;
                for _ in 0..act.order() {
                    p = act.apply(&g, p);
                }
                assert_eq!(canonical_pair(&g, p), cls.pair);
            }
        }
    }

    #[test]
    fn branch_data() {
        let r = branch_data_rn().unwrap();
        assert_eq!(r.degree, 4);
        let total: u32 = r.data.iter().map(BranchDatum::ramification).sum();
        assert_eq!(total, 6);
        let sizes: Vec<usize> = r.data.iter().map(|b| b.fiber.len()).collect();
        assert_eq!(sizes, vec![2, 2, 2]);
        assert_eq!(r.data[1].fiber[0].label, "[E6']");
        assert_eq!(r.data[1].fiber[0].ramification, 3);
        assert_eq!(r.data[1].fiber[0].local_picture, "(1/3,1/3)");
        assert_eq!(r.data[0].fiber[1].local_picture, "(1/2,1/2)");
        assert_eq!(genus_by_riemann_hurwitz(r.degree, 0, &r.data).unwrap(), 0);
    }

    #[test]
    fn riemann_hurwitz_small_cases() {
        assert_eq!(genus_by_riemann_hurwitz(1, 0, &[]).unwrap(), 0);
        assert_eq!(genus_by_riemann_hurwitz(2, 1, &[]).unwrap(), 1);
        let bad = BranchDatum {
            base_point: BasePoint::E4,
            fiber: vec![FiberPoint {
                label: "x".into(),
                ramification: 2,
                local_picture: "identity".into(),
                classes: vec![],
            }],
        };
        assert!(matches!(genus_by_riemann_hurwitz(3, 0, &[bad]), Err(Error::InconsistentProfile(_))));
    }
}
