//! Boundary divisors of the moduli of admissible `G`-covers, with
//! constructive non-emptiness verdicts.
//!
//! A type `i` label `(H1, H2, [h])` is realized by a one-marked genus `i`
//! cover with image in `H1` and mark `[h]`, a one-marked genus `g - i` cover
//! with image in `H2` and mark `[h^-1]`, and a conjugator `x` aligning the
//! two local indices: `x c' x^-1 = c^-1`.
//!
//! A type `0` label is realized by a two-marked genus `g - 1` cover of the
//! normalization with image in `H2` and marks `c1 in [h]`, `c2 in [h^-1]`,
//! and a gluing factor `t` with `t c1 t^-1 = c2^-1` such that
//! `<image, t>` lies in `H1`. When `c2 = c1^-1` this says `t` commutes with
//! the local index.
//!
//! Verdicts come from an exhaustive dynamic program over
//! `(product, subgroup)` states, so they hold at the stated genus without
//! any cutoff. Every non-empty verdict carries a replayable tuple.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{members, ConjClassId, Elem, FiniteGroup, InvSymClassId, Mask, SubgroupClassId, SubgroupIdx};
use crate::monodromy::{HandleSearch, MonodromyWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryKind {
    TypeI,
    Type0,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BoundaryWitness {
    TypeI { left: MonodromyWitness, right: MonodromyWitness, conjugator: Elem },
    Type0 { normalization: MonodromyWitness, gluing: Elem },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryLabel {
    pub name: String,
    pub kind: BoundaryKind,
    /// Absent for type 0.
    pub i: Option<u32>,
    pub h1: SubgroupClassId,
    pub h2: SubgroupClassId,
    /// A [`ConjClassId`] for type `i`, an [`InvSymClassId`] for type 0.
    pub node_type: usize,
    pub node_name: String,
    pub nonempty: bool,
    pub witness: Option<BoundaryWitness>,
    /// Number of search states exhausted for an empty verdict.
    pub exhausted_states: Option<usize>,
    /// Commutator criterion for type 0 labels, reported only.
    pub commutator_condition: Option<bool>,
}

impl BoundaryLabel {
    /// True when the commutator criterion contradicts the constructive verdict.
    pub fn diagnostic_disagrees(&self) -> bool {
        self.commutator_condition.is_some_and(|c| c != self.nonempty)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    pub genus: u32,
    pub group: String,
    pub component: Option<String>,
    pub labels: Vec<BoundaryLabel>,
}

impl Catalog {
    pub fn find(&self, name: &str) -> Option<&BoundaryLabel> {
        self.labels.iter().find(|l| l.name == name)
    }

    pub fn nonempty(&self) -> impl Iterator<Item = &BoundaryLabel> {
        self.labels.iter().filter(|l| l.nonempty)
    }
}

pub fn label_name(i: Option<u32>, node: &str, h1: &str, h2: &str) -> String {
    let idx = i.unwrap_or(0);
    if node == "1" {
        format!("Delta_{idx}^{{{h1},{h2}}}")
    } else {
        format!("Delta_{{{idx},{node}}}^{{{h1},{h2}}}")
    }
}

fn conj_mask(g: &FiniteGroup, x: Elem, m: Mask) -> Mask {
    members(m).into_iter().fold(0, |acc, y| acc | 1 << g.conj(x, y))
}

fn class_of_mask(g: &FiniteGroup, m: Mask) -> SubgroupClassId {
    let s = g.subgroup_of_mask(g.closure(m)).expect("closure is a subgroup");
    g.subgroup(s).class
}

/// One-marked covers of genus `k`: distinct `(image, mark)` with the handle
/// state they come from.
#[derive(Debug, Clone, Copy)]
struct OneMarked {
    sub: SubgroupIdx,
    mark: Elem,
    origin: (Elem, SubgroupIdx),
}

fn one_marked(g: &FiniteGroup, search: &HandleSearch, k: u32) -> Vec<OneMarked> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (p, s) in search.states_at(k) {
        let c = g.inv(p);
        let sub = g.join(s, c);
        if seen.insert((sub, c)) {
            out.push(OneMarked { sub, mark: c, origin: (p, s) });
        }
    }
    out
}

/// Two-marked covers of the normalization: `(image, c1, c2)` with origin.
#[derive(Debug, Clone, Copy)]
struct TwoMarked {
    sub: SubgroupIdx,
    c1: Elem,
    c2: Elem,
    origin: (Elem, SubgroupIdx),
}

fn two_marked(g: &FiniteGroup, search: &HandleSearch, k: u32) -> Vec<TwoMarked> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for (p, s) in search.states_at(k) {
        for c1 in 0..g.order() {
            let c2 = g.inv(g.mul(p, c1));
            let sub = g.join(g.join(s, c1), c2);
            if seen.insert((sub, c1, c2)) {
                out.push(TwoMarked { sub, c1, c2, origin: (p, s) });
            }
        }
    }
    out
}

struct Tables {
    search: HandleSearch,
    one: Vec<Vec<OneMarked>>,
    two: Vec<TwoMarked>,
}

fn witness_one(g: &FiniteGroup, t: &Tables, k: u32, e: &OneMarked) -> MonodromyWitness {
    let handles = t.search.handles_at(k, e.origin.0, e.origin.1).expect("reachable state");
    let w = MonodromyWitness { handles, marks: vec![e.mark] };
    debug_assert_eq!(w.relation(g), 0);
    w
}

/// Commutator criterion: some `h in [h]` lies in `[H2, H2]` for some `H2`
/// in class `h2`.
pub fn commutator_necessary_condition(g: &FiniteGroup, node: ConjClassId, h2: SubgroupClassId) -> bool {
    let cm = g.class_mask(node);
    g.subgroup_class(h2).members.iter().any(|&s| g.subgroup(g.subgroup(s).commutator).mask & cm != 0)
}

fn type_i_label(
    g: &FiniteGroup,
    t: &Tables,
    genus: u32,
    i: u32,
    node: ConjClassId,
    h1: SubgroupClassId,
    h2: SubgroupClassId,
    restrict: Option<SubgroupClassId>,
) -> BoundaryLabel {
    let inv_node = g.inverse_class(node);
    let left: Vec<&OneMarked> =
        t.one[i as usize].iter().filter(|e| g.class_of(e.mark) == node && g.subgroup(e.sub).class == h1).collect();
    let right: Vec<&OneMarked> = t.one[(genus - i) as usize]
        .iter()
        .filter(|e| g.class_of(e.mark) == inv_node && g.subgroup(e.sub).class == h2)
        .collect();
    let mut found = None;
    let mut tried = 0;
    'outer: for l in &left {
        for r in &right {
            for x in 0..g.order() {
                tried += 1;
                if g.conj(x, r.mark) != g.inv(l.mark) {
                    continue;
                }
                let ok = restrict.is_none_or(|k| {
                    let total = g.subgroup(l.sub).mask | conj_mask(g, x, g.subgroup(r.sub).mask);
                    class_of_mask(g, total) == k
                });
                if ok {
                    found = Some(BoundaryWitness::TypeI {
                        left: witness_one(g, t, i, l),
                        right: witness_one(g, t, genus - i, r),
                        conjugator: x,
                    });
                    break 'outer;
                }
            }
        }
    }
    let node_name = g.class_name(node).to_string();
    BoundaryLabel {
        name: label_name(Some(i), &node_name, g.subgroup_class_name(h1), g.subgroup_class_name(h2)),
        kind: BoundaryKind::TypeI,
        i: Some(i),
        h1,
        h2,
        node_type: node.0,
        node_name,
        nonempty: found.is_some(),
        exhausted_states: if found.is_none() { Some(tried) } else { None },
        witness: found,
        commutator_condition: None,
    }
}

fn type_0_label(
    g: &FiniteGroup,
    t: &Tables,
    genus: u32,
    node: InvSymClassId,
    h1: SubgroupClassId,
    h2: SubgroupClassId,
    restrict: Option<SubgroupClassId>,
) -> BoundaryLabel {
    let c = g.invsym_fiber(node)[0];
    let inv_c = g.inverse_class(c);
    let mut found = None;
    let mut tried = 0;
    if restrict.is_none_or(|k| k == h1) {
        'outer: for e in &t.two {
            if g.class_of(e.c1) != c || g.class_of(e.c2) != inv_c || g.subgroup(e.sub).class != h2 {
                continue;
            }
            for x in 0..g.order() {
                tried += 1;
                if g.conj(x, e.c1) != g.inv(e.c2) {
                    continue;
                }
                if g.subgroup(g.join(e.sub, x)).class == h1 {
                    let handles = t.search.handles_at(genus - 1, e.origin.0, e.origin.1).expect("reachable state");
                    found = Some(BoundaryWitness::Type0 {
                        normalization: MonodromyWitness { handles, marks: vec![e.c1, e.c2] },
                        gluing: x,
                    });
                    break 'outer;
                }
            }
        }
    }
    let node_name = g.invsym_name(node).to_string();
    BoundaryLabel {
        name: label_name(None, &node_name, g.subgroup_class_name(h1), g.subgroup_class_name(h2)),
        kind: BoundaryKind::Type0,
        i: None,
        h1,
        h2,
        node_type: node.0,
        node_name,
        nonempty: found.is_some(),
        exhausted_states: if found.is_none() { Some(tried) } else { None },
        witness: found,
        commutator_condition: Some(commutator_necessary_condition(g, c, h2)),
    }
}

/// All type `i` labels (`1 <= i <= g/2`, every node class, every ordered
/// pair of subgroup classes) and all type 0 labels (`H2 <= H1`, node classes
/// up to inversion), each with a verdict.
///
/// With `restrict_to_component = Some(K)`, a label counts as non-empty only
/// if some realizing cover has total image in class `K`.
pub fn catalog(g: &FiniteGroup, genus: u32, restrict_to_component: Option<SubgroupClassId>) -> Result<Catalog> {
    if genus < 2 {
        return Err(Error::InvalidArgument(format!("boundary catalog needs genus >= 2, got {genus}")));
    }
    if let Some(k) = restrict_to_component {
        if k.0 >= g.subgroup_classes().len() {
            return Err(Error::IndexOutOfRange {
                index: k.0 as i64,
                range: format!("0..{} subgroup classes", g.subgroup_classes().len()),
            });
        }
    }
    let search = HandleSearch::run(g, genus - 1);
    let one = (0..genus).map(|k| one_marked(g, &search, k)).collect();
    let two = two_marked(g, &search, genus - 1);
    let t = Tables { search, one, two };
    let nh = g.subgroup_classes().len();

    enum Job {
        I(u32, ConjClassId, SubgroupClassId, SubgroupClassId),
        Zero(InvSymClassId, SubgroupClassId, SubgroupClassId),
    }
    let mut jobs = Vec::new();
    for i in 1..=genus / 2 {
        for c in 0..g.num_classes() {
            for h1 in 0..nh {
                for h2 in 0..nh {
                    jobs.push(Job::I(i, ConjClassId(c), SubgroupClassId(h1), SubgroupClassId(h2)));
                }
            }
        }
    }
    for u in 0..g.num_invsym_classes() {
        for h1 in 0..nh {
            for h2 in 0..nh {
                let (h1, h2) = (SubgroupClassId(h1), SubgroupClassId(h2));
                if g.class_leq(h2, h1) {
                    jobs.push(Job::Zero(InvSymClassId(u), h1, h2));
                }
            }
        }
    }
    let labels = jobs
        .par_iter()
        .map(|job| match *job {
            Job::I(i, c, h1, h2) => type_i_label(g, &t, genus, i, c, h1, h2, restrict_to_component),
            Job::Zero(u, h1, h2) => type_0_label(g, &t, genus, u, h1, h2, restrict_to_component),
        })
        .collect();
    Ok(Catalog {
        genus,
        group: g.label().to_string(),
        component: restrict_to_component.map(|k| g.subgroup_class_name(k).to_string()),
        labels,
    })
}

/// Replays a witness against its label.
pub fn verify_witness(
    g: &FiniteGroup,
    genus: u32,
    label: &BoundaryLabel,
    restrict_to_component: Option<SubgroupClassId>,
) -> bool {
    let Some(w) = &label.witness else { return false };
    match (w, label.kind, label.i) {
        (BoundaryWitness::TypeI { left, right, conjugator }, BoundaryKind::TypeI, Some(i)) => {
            let node = ConjClassId(label.node_type);
            let x = *conjugator;
            let (Some(&c), Some(&c_)) = (left.marks.first(), right.marks.first()) else {
                return false;
            };
            let total = g.subgroup(left.image(g)).mask | conj_mask(g, x, g.subgroup(right.image(g)).mask);
            left.handles.len() as u32 == i
                && right.handles.len() as u32 == genus - i
                && left.verify(g, &[node], Some(label.h1))
                && right.verify(g, &[g.inverse_class(node)], Some(label.h2))
                && g.conj(x, c_) == g.inv(c)
                && restrict_to_component.is_none_or(|k| class_of_mask(g, total) == k)
        }
        (BoundaryWitness::Type0 { normalization, gluing }, BoundaryKind::Type0, None) => {
            let c = g.invsym_fiber(InvSymClassId(label.node_type))[0];
            let [c1, c2] = normalization.marks[..] else { return false };
            normalization.handles.len() as u32 == genus - 1
                && normalization.verify(g, &[c, g.inverse_class(c)], Some(label.h2))
                && g.conj(*gluing, c1) == g.inv(c2)
                && g.subgroup(g.join(normalization.image(g), *gluing)).class == label.h1
                && restrict_to_component.is_none_or(|k| k == label.h1)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(c: &Catalog, kind: BoundaryKind) -> Vec<String> {
        let mut v: Vec<String> =
            c.nonempty().filter(|l| l.kind == kind && l.i.is_none_or(|i| i == 1)).map(|l| l.name.clone()).collect();
        v.sort();
        v
    }

    #[test]
    fn trivial_group_gives_classical_labels() {
        let g = FiniteGroup::trivial();
        let c = catalog(&g, 4, None).unwrap();
        let all: Vec<&str> = c.labels.iter().map(|l| l.name.as_str()).collect();
        assert_eq!(all, vec!["Delta_1^{1,1}", "Delta_2^{1,1}", "Delta_0^{1,1}"]);
        assert!(c.labels.iter().all(|l| l.nonempty));
    }

    #[test]
    fn s3_nontrivial_nodes() {
        let g = FiniteGroup::s3();
        let c = catalog(&g, 5, None).unwrap();
        let twisted: Vec<&str> = c
            .nonempty()
            .filter(|l| l.kind == BoundaryKind::TypeI && l.node_name != "1")
            .map(|l| l.name.as_str())
            .collect();
        assert_eq!(twisted, vec!["Delta_{1,c3}^{S3,S3}", "Delta_{2,c3}^{S3,S3}"]);
        assert!(!c.find("Delta_{0,c2}^{S3,T}").unwrap().nonempty);
        assert!(!c.find("Delta_{0,c3}^{S3,N}").unwrap().nonempty);
        assert!(c.find("Delta_{0,c2}^{S3,S3}").unwrap().nonempty);
        assert!(!c.find("Delta_0^{S3,1}").unwrap().nonempty);
    }

    #[test]
    fn s3_type_zero_list() {
        let g = FiniteGroup::s3();
        let c = catalog(&g, 3, None).unwrap();
        let mut want = vec![
            "Delta_0^{1,1}",
            "Delta_0^{T,1}",
            "Delta_0^{N,1}",
            "Delta_0^{T,T}",
            "Delta_0^{S3,T}",
            "Delta_0^{N,N}",
            "Delta_0^{S3,N}",
            "Delta_0^{S3,S3}",
            "Delta_{0,c2}^{T,T}",
            "Delta_{0,c2}^{S3,S3}",
            "Delta_{0,c3}^{N,N}",
            "Delta_{0,c3}^{S3,S3}",
        ];
        want.sort();
        assert_eq!(names(&c, BoundaryKind::Type0), want);
    }

    #[test]
    fn witnesses_replay() {
        let g = FiniteGroup::s3();
        let c = catalog(&g, 4, None).unwrap();
        for l in c.nonempty() {
            assert!(verify_witness(&g, 4, l, None), "{}", l.name);
        }
        for l in c.labels.iter().filter(|l| !l.nonempty) {
            assert!(l.exhausted_states.is_some());
        }
    }

    #[test]
    fn commutator_diagnostic() {
        let g = FiniteGroup::s3();
        let s3 = g.full_class();
        let cls = |s: &str| g.resolve_conj_class(s).unwrap();
        assert!(commutator_necessary_condition(&g, cls("1"), g.trivial_class()));
        assert!(commutator_necessary_condition(&g, cls("c3"), s3));
        assert!(!commutator_necessary_condition(&g, cls("c2"), s3));
        let c = catalog(&g, 3, None).unwrap();
        assert!(c.find("Delta_{0,c2}^{S3,S3}").unwrap().diagnostic_disagrees());
    }

    #[test]
    fn component_restriction() {
        let g = FiniteGroup::s3();
        let t = g.resolve_subgroup_class("T").unwrap();
        let c = catalog(&g, 3, Some(t)).unwrap();
        // two T-covers glue to a T-cover when the transpositions agree
        assert!(c.find("Delta_1^{T,T}").unwrap().nonempty);
        assert!(!c.find("Delta_1^{N,1}").unwrap().nonempty);
        for l in c.nonempty() {
            assert!(verify_witness(&g, 3, l, Some(t)), "{}", l.name);
        }
    }

    #[test]
    fn rejects_small_genus() {
        assert!(catalog(&FiniteGroup::s3(), 1, None).is_err());
    }
}
