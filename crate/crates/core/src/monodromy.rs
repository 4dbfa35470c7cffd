//! Counting homomorphisms from surface groups with prescribed local
//! monodromy.
//!
//! A cover of a genus `g` curve with `n` marks is a tuple
//! `(a_1, b_1, ..., a_g, b_g, c_1, ..., c_n)` with
//! `[a_1,b_1] ... [a_g,b_g] c_1 ... c_n = 1`, evaluated left to right, and
//! `c_i` in the prescribed conjugacy class. Four independent paths compute
//! the same numbers:
//!
//! * [`count_homs_brute`] enumerates tuples (parallel over the first entry);
//! * [`count_homs_frobenius`] uses the character formula;
//! * [`count_with_image_class`] runs Moebius inversion over the subgroup
//!   lattice on top of the character formula;
//! * [`count_transfer`] is a dynamic program over `(product, generated
//!   subgroup)` states, polynomial in the genus.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characters::subgroup_character_table;
use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{members, ConjClassId, Elem, FiniteGroup, Mask, SubgroupClassId, SubgroupIdx};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCountQuery {
    pub genus: u32,
    pub marks: Vec<ConjClassId>,
    /// Restrict to tuples generating a subgroup in this class.
    pub image: Option<SubgroupClassId>,
    /// Count orbits under simultaneous conjugation.
    pub up_to_conjugation: bool,
}

impl CoverCountQuery {
    pub fn new(genus: u32) -> Self {
        Self { genus, marks: Vec::new(), image: None, up_to_conjugation: false }
    }

    pub fn marks(mut self, marks: Vec<ConjClassId>) -> Self {
        self.marks = marks;
        self
    }

    pub fn image(mut self, h: SubgroupClassId) -> Self {
        self.image = Some(h);
        self
    }

    pub fn up_to_conjugation(mut self, yes: bool) -> Self {
        self.up_to_conjugation = yes;
        self
    }

    fn validate(&self, g: &FiniteGroup) -> Result<()> {
        if let Some(c) = self.marks.iter().find(|c| c.0 >= g.num_classes()) {
            return Err(Error::IndexOutOfRange {
                index: c.0 as i64,
                range: format!("0..{} conjugacy classes", g.num_classes()),
            });
        }
        if let Some(h) = self.image {
            if h.0 >= g.subgroup_classes().len() {
                return Err(Error::IndexOutOfRange {
                    index: h.0 as i64,
                    range: format!("0..{} subgroup classes", g.subgroup_classes().len()),
                });
            }
            if h == g.trivial_class() && self.marks.iter().any(|c| c.0 != 0) {
                return Err(Error::InvalidArgument("trivial image class requires trivial mark types".into()));
            }
        }
        Ok(())
    }

    /// `|G|^(2g + n)`, the size of the brute-force search space.
    pub fn search_size(&self, g: &FiniteGroup) -> u128 {
        let e = 2 * self.genus + self.marks.len() as u32;
        (g.order() as u128).checked_pow(e).unwrap_or(u128::MAX)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    BruteForce,
    Frobenius,
    Moebius,
    Transfer,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCountResult {
    #[serde(with = "crate::rational::serde_count")]
    pub count: BigUint,
    pub method: Method,
}

fn conj_weight(g: &FiniteGroup, s: SubgroupIdx, up_to_conj: bool) -> u128 {
    if up_to_conj {
        g.subgroup(s).centralizer_order as u128
    } else {
        1
    }
}

/// Divides a Burnside sum by `|G|` when counting orbits.
fn finish_count(g: &FiniteGroup, total: BigUint, up_to_conj: bool) -> Result<BigUint> {
    if !up_to_conj {
        return Ok(total);
    }
    let n = BigUint::from(g.order());
    if (&total % &n).is_zero() {
        Ok(total / n)
    } else {
        Err(Error::NonIntegralCount(format!("Burnside sum {total} not divisible by {n}")))
    }
}

struct Brute<'a> {
    g: &'a FiniteGroup,
    genus: usize,
    marks: Vec<Vec<Elem>>,
    image: Option<SubgroupClassId>,
    up_to_conj: bool,
}

impl Brute<'_> {
    fn leaf(&self, prod: Elem, sub: SubgroupIdx) -> u128 {
        if prod != 0 {
            return 0;
        }
        if let Some(h) = self.image {
            if self.g.subgroup(sub).class != h {
                return 0;
            }
        }
        conj_weight(self.g, sub, self.up_to_conj)
    }

    fn handles(&self, k: usize, prod: Elem, sub: SubgroupIdx) -> u128 {
        if k == self.genus {
            return self.mark(0, prod, sub);
        }
        let g = self.g;
        let mut acc = 0;
        for a in 0..g.order() {
            let sa = g.join(sub, a);
            for b in 0..g.order() {
                acc += self.handles(k + 1, g.mul(prod, g.commutator(a, b)), g.join(sa, b));
            }
        }
        acc
    }

    fn mark(&self, j: usize, prod: Elem, sub: SubgroupIdx) -> u128 {
        if j == self.marks.len() {
            return self.leaf(prod, sub);
        }
        self.marks[j].iter().map(|&x| self.mark(j + 1, self.g.mul(prod, x), self.g.join(sub, x))).sum()
    }

    fn run(&self) -> u128 {
        let g = self.g;
        let triv = g.trivial_subgroup();
        if self.genus > 0 {
            (0..g.order())
                .into_par_iter()
                .map(|a| {
                    let sa = g.join(triv, a);
                    (0..g.order()).map(|b| self.handles(1, g.commutator(a, b), g.join(sa, b))).sum::<u128>()
                })
                .sum()
        } else if let Some(first) = self.marks.first() {
            first.par_iter().map(|&x| self.mark(1, x, g.join(triv, x))).sum()
        } else {
            self.leaf(0, triv)
        }
    }
}

/// Exhaustive enumeration, refused when `|G|^(2g+n)` exceeds `cutoff`.
pub fn count_homs_brute(g: &FiniteGroup, q: &CoverCountQuery, cutoff: u64) -> Result<CoverCountResult> {
    q.validate(g)?;
    let required = q.search_size(g);
    if required > cutoff as u128 {
        return Err(Error::SearchTooLarge { required, cutoff });
    }
    let brute = Brute {
        g,
        genus: q.genus as usize,
        marks: q.marks.iter().map(|&c| g.class_members(c).to_vec()).collect(),
        image: q.image,
        up_to_conj: q.up_to_conjugation,
    };
    let total = BigUint::from(brute.run());
    Ok(CoverCountResult { count: finish_count(g, total, q.up_to_conjugation)?, method: Method::BruteForce })
}

/// `|Hom(pi, K)|` with `c_i` ranging over `mark_sets[i]` (each a union of
/// `K`-classes): `|K|^(2g-1) sum_chi prod_i (sum_{x in S_i} chi(x)) / chi(1)^(n+2g-2)`.
pub fn frobenius_total(g: &FiniteGroup, k: Mask, genus: u32, mark_sets: &[Mask]) -> Result<Q> {
    let table = subgroup_character_table(g, k)?;
    let n = table.conductor;
    let e = mark_sets.len() as i64 + 2 * genus as i64 - 2;
    let mut sum = CyclotomicNumber::zero(n);
    for (chi, &dim) in table.chars.iter().zip(&table.dims) {
        let mut term = CyclotomicNumber::from_int(n, 1);
        for &s in mark_sets {
            let mut inner = CyclotomicNumber::zero(n);
            for x in members(s) {
                let c = table
                    .class_of(x)
                    .ok_or_else(|| Error::InternalMismatch(format!("mark element {x} outside subgroup")))?;
                inner = &inner + &chi[c];
            }
            term = &term * &inner;
        }
        sum = &sum + &term.scale(&qpow(dim as i64, -e));
    }
    let sum = sum.rational().ok_or_else(|| Error::NonIntegralCount("character sum is not rational".into()))?;
    Ok(sum * qpow(table.order as i64, 2 * genus as i64 - 1))
}

fn qpow(base: i64, e: i64) -> Q {
    let p = Q::from_integer(BigInt::from(base).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        p
    } else {
        p.recip()
    }
}

fn to_count(x: &Q, what: &str) -> Result<BigUint> {
    if !x.is_integer() || x.is_negative() {
        return Err(Error::NonIntegralCount(format!("{what} = {x}")));
    }
    Ok(x.to_integer().to_biguint().unwrap())
}

/// Character formula over the whole group. Image and conjugation
/// restrictions belong to [`count_with_image_class`].
pub fn count_homs_frobenius(g: &FiniteGroup, q: &CoverCountQuery) -> Result<CoverCountResult> {
    q.validate(g)?;
    if q.image.is_some() || q.up_to_conjugation {
        return Err(Error::InvalidArgument(
            "the character formula counts all homomorphisms; use the moebius method for image or conjugation restrictions".into(),
        ));
    }
    let sets: Vec<Mask> = q.marks.iter().map(|&c| g.class_mask(c)).collect();
    let total = frobenius_total(g, g.all_mask(), q.genus, &sets)?;
    Ok(CoverCountResult { count: to_count(&total, "frobenius count")?, method: Method::Frobenius })
}

/// Number of homomorphisms with image exactly `K`, for every subgroup `K`.
pub fn exact_image_counts(g: &FiniteGroup, genus: u32, marks: &[ConjClassId]) -> Result<Vec<BigUint>> {
    let subs = g.subgroups();
    let mut order: Vec<SubgroupIdx> = (0..subs.len()).collect();
    order.sort_by_key(|&s| (subs[s].order, s));
    let mut exact: Vec<Q> = vec![Q::zero(); subs.len()];
    for &k in &order {
        let km = subs[k].mask;
        let sets: Vec<Mask> = marks.iter().map(|&c| g.class_mask(c) & km).collect();
        let mut x = if sets.contains(&0) { Q::zero() } else { frobenius_total(g, km, genus, &sets)? };
        for (l, sl) in subs.iter().enumerate() {
            if l != k && sl.mask & !km == 0 {
                x -= &exact[l];
            }
        }
        exact[k] = x;
    }
    exact.iter().enumerate().map(|(k, x)| to_count(x, &format!("exact count for subgroup {k}"))).collect()
}

/// Moebius inversion: homomorphisms whose image lies in the class `q.image`
/// (or anywhere), optionally counted up to conjugation.
pub fn count_with_image_class(g: &FiniteGroup, q: &CoverCountQuery) -> Result<CoverCountResult> {
    q.validate(g)?;
    let exact = exact_image_counts(g, q.genus, &q.marks)?;
    let mut total = BigUint::zero();
    for (k, x) in exact.iter().enumerate() {
        if q.image.is_none_or(|h| g.subgroup(k).class == h) {
            total += x * BigUint::from(conj_weight(g, k, q.up_to_conjugation));
        }
    }
    Ok(CoverCountResult { count: finish_count(g, total, q.up_to_conjugation)?, method: Method::Moebius })
}

/// One handle `(a, b)` moves `(p, S)` to `(p [a,b], <S, a, b>)`.
#[derive(Debug, Clone, Copy)]
struct HandleMove {
    comm: Elem,
    target: SubgroupIdx,
    a: Elem,
    b: Elem,
    mult: u64,
}

/// Handle moves from each subgroup, grouped by `(commutator, target)`, with
/// the lexicographically least `(a, b)` kept as representative.
fn handle_moves(g: &FiniteGroup) -> Vec<Vec<HandleMove>> {
    let nsub = g.subgroups().len();
    (0..nsub)
        .map(|s| {
            let mut moves: Vec<HandleMove> = Vec::new();
            let mut index = std::collections::HashMap::new();
            for a in 0..g.order() {
                let sa = g.join(s, a);
                for b in 0..g.order() {
                    let key = (g.commutator(a, b), g.join(sa, b));
                    match index.get(&key) {
                        Some(&i) => {
                            let m: &mut HandleMove = &mut moves[i];
                            m.mult += 1;
                        }
                        None => {
                            index.insert(key, moves.len());
                            moves.push(HandleMove { comm: key.0, target: key.1, a, b, mult: 1 });
                        }
                    }
                }
            }
            moves
        })
        .collect()
}

/// Exact count by dynamic programming over `(product, subgroup)` states.
pub fn count_transfer(g: &FiniteGroup, q: &CoverCountQuery) -> Result<CoverCountResult> {
    q.validate(g)?;
    let nsub = g.subgroups().len();
    let idx = |p: Elem, s: SubgroupIdx| p * nsub + s;
    let moves = handle_moves(g);
    let mut counts = vec![BigUint::zero(); g.order() * nsub];
    counts[idx(0, g.trivial_subgroup())] = BigUint::one();
    for _ in 0..q.genus {
        let mut next = vec![BigUint::zero(); counts.len()];
        for p in 0..g.order() {
            for s in 0..nsub {
                let c = &counts[idx(p, s)];
                if c.is_zero() {
                    continue;
                }
                for m in &moves[s] {
                    next[idx(g.mul(p, m.comm), m.target)] += c * m.mult;
                }
            }
        }
        counts = next;
    }
    for &cls in &q.marks {
        let mut next = vec![BigUint::zero(); counts.len()];
        for p in 0..g.order() {
            for s in 0..nsub {
                let c = &counts[idx(p, s)];
                if c.is_zero() {
                    continue;
                }
                for &x in g.class_members(cls) {
                    next[idx(g.mul(p, x), g.join(s, x))] += c;
                }
            }
        }
        counts = next;
    }
    let mut total = BigUint::zero();
    for s in 0..nsub {
        if q.image.is_none_or(|h| g.subgroup(s).class == h) {
            total += &counts[idx(0, s)] * BigUint::from(conj_weight(g, s, q.up_to_conjugation));
        }
    }
    Ok(CoverCountResult { count: finish_count(g, total, q.up_to_conjugation)?, method: Method::Transfer })
}

/// Brute force when within `cutoff`, otherwise Moebius when character
/// tables exist, otherwise the transfer program.
pub fn count_auto(g: &FiniteGroup, q: &CoverCountQuery, cutoff: u64) -> Result<CoverCountResult> {
    match count_homs_brute(g, q, cutoff) {
        Err(Error::SearchTooLarge { .. }) => match count_with_image_class(g, q) {
            Err(Error::UnsupportedGroup(_)) => count_transfer(g, q),
            r => r,
        },
        r => r,
    }
}

/// Reachable `(product, subgroup)` states after `k` handles, each with one
/// back-pointer so that a witness tuple can be replayed.
#[derive(Debug, Clone)]
pub struct HandleSearch {
    order: usize,
    nsub: usize,
    /// `layers[k][state]`: predecessor state and handle, `None` if unreachable.
    layers: Vec<Vec<Option<(usize, Elem, Elem)>>>,
}

impl HandleSearch {
    pub fn run(g: &FiniteGroup, genus: u32) -> Self {
        let nsub = g.subgroups().len();
        let size = g.order() * nsub;
        let moves = handle_moves(g);
        let start = g.trivial_subgroup();
        let mut first = vec![None; size];
        first[start] = Some((start, 0, 0));
        let mut layers = vec![first];
        for _ in 0..genus {
            let prev = layers.last().unwrap();
            let mut next = vec![None; size];
            for (st, reached) in prev.iter().enumerate() {
                if reached.is_none() {
                    continue;
                }
                let (p, s) = (st / nsub, st % nsub);
                for m in &moves[s] {
                    let t = g.mul(p, m.comm) * nsub + m.target;
                    if next[t].is_none() {
                        next[t] = Some((st, m.a, m.b));
                    }
                }
            }
            layers.push(next);
        }
        Self { order: g.order(), nsub, layers }
    }

    pub fn genus(&self) -> u32 {
        (self.layers.len() - 1) as u32
    }

    /// Reachable `(product of commutators, generated subgroup)` pairs after
    /// all handles.
    pub fn states(&self) -> Vec<(Elem, SubgroupIdx)> {
        self.states_at(self.genus())
    }

    /// Reachable states after the first `k` handles.
    pub fn states_at(&self, k: u32) -> Vec<(Elem, SubgroupIdx)> {
        let layer = &self.layers[k as usize];
        (0..self.order * self.nsub)
            .filter(|&st| layer[st].is_some())
            .map(|st| (st / self.nsub, st % self.nsub))
            .collect()
    }

    /// Handles `(a_1, b_1), ..., (a_g, b_g)` realizing a reachable state.
    pub fn handles(&self, prod: Elem, sub: SubgroupIdx) -> Option<Vec<(Elem, Elem)>> {
        self.handles_at(self.genus(), prod, sub)
    }

    pub fn handles_at(&self, k: u32, prod: Elem, sub: SubgroupIdx) -> Option<Vec<(Elem, Elem)>> {
        let mut st = prod * self.nsub + sub;
        let mut out = Vec::with_capacity(k as usize);
        for layer in (1..=k as usize).rev() {
            let (prev, a, b) = self.layers.get(layer)?[st]?;
            out.push((a, b));
            st = prev;
        }
        self.layers[0][st]?;
        out.reverse();
        Some(out)
    }
}

/// A replayable monodromy tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyWitness {
    pub handles: Vec<(Elem, Elem)>,
    pub marks: Vec<Elem>,
}

impl MonodromyWitness {
    /// `[a_1,b_1] ... [a_g,b_g] c_1 ... c_n`, left to right.
    pub fn relation(&self, g: &FiniteGroup) -> Elem {
        let p = self.handles.iter().fold(0, |p, &(a, b)| g.mul(p, g.commutator(a, b)));
        self.marks.iter().fold(p, |p, &x| g.mul(p, x))
    }

    pub fn image(&self, g: &FiniteGroup) -> SubgroupIdx {
        let s = self.handles.iter().fold(g.trivial_subgroup(), |s, &(a, b)| g.join(g.join(s, a), b));
        self.marks.iter().fold(s, |s, &x| g.join(s, x))
    }

    pub fn flatten(&self) -> Vec<Elem> {
        self.handles.iter().flat_map(|&(a, b)| [a, b]).chain(self.marks.iter().copied()).collect()
    }

    /// Checks the relation, the mark classes and the image class.
    pub fn verify(&self, g: &FiniteGroup, marks: &[ConjClassId], image: Option<SubgroupClassId>) -> bool {
        self.relation(g) == 0
            && self.marks.len() == marks.len()
            && self.marks.iter().zip(marks).all(|(&x, &c)| g.class_of(x) == c)
            && image.is_none_or(|h| g.subgroup(self.image(g)).class == h)
    }
}

/// Search for a genus-`genus` tuple with the given mark classes whose image
/// lies in class `image`; `None` proves there is none.
pub fn find_witness(
    g: &FiniteGroup,
    search: &HandleSearch,
    marks: &[ConjClassId],
    image: Option<SubgroupClassId>,
) -> Option<MonodromyWitness> {
    let nsub = g.subgroups().len();
    // (product, subgroup) -> (handle state it came from, marks so far)
    type Entry = ((Elem, SubgroupIdx), Vec<Elem>);
    let mut frontier: Vec<Option<Entry>> = vec![None; g.order() * nsub];
    for (p, s) in search.states() {
        frontier[p * nsub + s] = Some(((p, s), Vec::new()));
    }
    let (last, init) = match marks.split_last() {
        Some((l, i)) => (Some(*l), i),
        None => (None, &[][..]),
    };
    // all marks but the last are free; the last one is forced by the relation
    for &c in init {
        let mut next: Vec<Option<Entry>> = vec![None; frontier.len()];
        for (st, entry) in frontier.iter().enumerate() {
            let Some((origin, xs)) = entry else { continue };
            let (p, s) = (st / nsub, st % nsub);
            for &x in g.class_members(c) {
                next[g.mul(p, x) * nsub + g.join(s, x)].get_or_insert_with(|| {
                    let mut v = xs.clone();
                    v.push(x);
                    (*origin, v)
                });
            }
        }
        frontier = next;
    }
    for (st, entry) in frontier.iter().enumerate() {
        let Some((origin, xs)) = entry else { continue };
        let (p, s) = (st / nsub, st % nsub);
        let (s, xs) = match last {
            Some(c) => {
                let x = g.inv(p);
                if g.class_of(x) != c {
                    continue;
                }
                let mut v = xs.clone();
                v.push(x);
                (g.join(s, x), v)
            }
            None if p == 0 => (s, xs.clone()),
            None => continue,
        };
        if image.is_none_or(|h| g.subgroup(s).class == h) {
            let handles = search.handles(origin.0, origin.1)?;
            let w = MonodromyWitness { handles, marks: xs };
            debug_assert!(w.verify(g, marks, image));
            return Some(w);
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GluingFactors {
    pub node_class: ConjClassId,
    pub representative: Elem,
    /// Elements commuting with the representative.
    pub elements: Vec<Elem>,
    pub count: usize,
    /// Conjugacy classes of the centralizer, i.e. gluings up to conjugation.
    pub orbits: usize,
}

/// Gluing factors at a node whose local index lies in `node_class`.
pub fn gluing_factors(g: &FiniteGroup, node_class: ConjClassId) -> Result<GluingFactors> {
    if node_class.0 >= g.num_classes() {
        return Err(Error::IndexOutOfRange { index: node_class.0 as i64, range: format!("0..{}", g.num_classes()) });
    }
    let w = g.class_members(node_class)[0];
    let elements = g.centralizer(w);
    let cm = g.centralizer_mask(w);
    let mut seen: Mask = 0;
    let mut orbits = 0;
    for &x in &elements {
        if seen >> x & 1 == 1 {
            continue;
        }
        orbits += 1;
        for &y in &elements {
            seen |= 1 << g.conj(y, x);
        }
    }
    debug_assert!(seen == cm);
    Ok(GluingFactors { node_class, representative: w, count: elements.len(), elements, orbits })
}

#[cfg(test)]
mod tests {
    use super::*;

    const CUT: u64 = 100_000_000;

    fn s3() -> FiniteGroup {
        FiniteGroup::s3()
    }

    fn n(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn commuting_pairs_in_s3() {
        let g = s3();
        let q = CoverCountQuery::new(1);
        assert_eq!(count_homs_brute(&g, &q, CUT).unwrap().count, n(18));
        assert_eq!(count_homs_frobenius(&g, &q).unwrap().count, n(18));
        assert_eq!(count_transfer(&g, &q).unwrap().count, n(18));
    }

    #[test]
    fn empty_relation() {
        for name in ["trivial", "mu2", "S3"] {
            let g = FiniteGroup::builtin(name).unwrap();
            let q = CoverCountQuery::new(0);
            assert_eq!(count_homs_brute(&g, &q, CUT).unwrap().count, n(1));
            assert_eq!(count_homs_frobenius(&g, &q).unwrap().count, n(1));
        }
    }

    #[test]
    fn surjections_onto_mu2() {
        let g = FiniteGroup::cyclic(2).unwrap();
        for i in 1..=3u32 {
            let q = CoverCountQuery::new(i).image(g.full_class());
            let want = n((1 << (2 * i)) - 1);
            assert_eq!(count_homs_brute(&g, &q, CUT).unwrap().count, want);
            assert_eq!(count_with_image_class(&g, &q).unwrap().count, want);
        }
    }

    #[test]
    fn frobenius_values() {
        let mu3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!(count_homs_frobenius(&mu3, &CoverCountQuery::new(2)).unwrap().count, n(81));
        // |S3|^3 (1 + 1 + 1/4)
        let q = CoverCountQuery::new(2);
        assert_eq!(count_homs_frobenius(&s3(), &q).unwrap().count, n(486));
        assert_eq!(count_homs_brute(&s3(), &q, CUT).unwrap().count, n(486));
    }

    #[test]
    fn frobenius_rejects_restrictions() {
        let q = CoverCountQuery::new(1).up_to_conjugation(true);
        assert!(matches!(count_homs_frobenius(&s3(), &q), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn image_classes_up_to_conjugation() {
        let g = s3();
        let t = g.resolve_subgroup_class("T").unwrap();
        let nn = g.resolve_subgroup_class("N").unwrap();
        let triv = CoverCountQuery::new(3).image(g.trivial_class()).up_to_conjugation(true);
        assert_eq!(count_with_image_class(&g, &triv).unwrap().count, n(1));
        for (h, want) in [(nn, 4), (t, 3), (g.full_class(), 0)] {
            let q = CoverCountQuery::new(1).image(h).up_to_conjugation(true);
            assert_eq!(count_with_image_class(&g, &q).unwrap().count, n(want));
            assert_eq!(count_homs_brute(&g, &q, CUT).unwrap().count, n(want));
            assert_eq!(count_transfer(&g, &q).unwrap().count, n(want));
        }
    }

    #[test]
    fn trivial_image_needs_trivial_marks() {
        let g = s3();
        let c2 = g.resolve_conj_class("c2").unwrap();
        let q = CoverCountQuery::new(1).marks(vec![c2]).image(g.trivial_class());
        assert!(matches!(count_transfer(&g, &q), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cutoff_is_enforced() {
        let q = CoverCountQuery::new(6);
        match count_homs_brute(&s3(), &q, 1000) {
            Err(Error::SearchTooLarge { required, cutoff }) => {
                assert_eq!(required, 6u128.pow(12));
                assert_eq!(cutoff, 1000);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(count_auto(&s3(), &q, 1000).unwrap().method, Method::Moebius);
    }

    #[test]
    fn transfer_matches_moebius_at_large_genus() {
        let g = s3();
        let c3 = g.resolve_conj_class("c3").unwrap();
        let q = CoverCountQuery::new(12).marks(vec![c3, c3]).image(g.full_class()).up_to_conjugation(true);
        assert_eq!(count_transfer(&g, &q).unwrap().count, count_with_image_class(&g, &q).unwrap().count);
    }

    #[test]
    fn gluing() {
        let g = s3();
        let f = |c: &str| gluing_factors(&g, g.resolve_conj_class(c).unwrap()).unwrap();
        assert_eq!(f("1").count, 6);
        assert_eq!(f("1").orbits, 3);
        assert_eq!(f("c2").count, 2);
        assert_eq!(f("c3").count, 3);
        assert_eq!(f("c3").elements, vec![0, 4, 5]);
    }

    #[test]
    fn witnesses_replay() {
        let g = s3();
        let c3 = g.resolve_conj_class("c3").unwrap();
        let search = HandleSearch::run(&g, 2);
        let w = find_witness(&g, &search, &[c3], Some(g.full_class())).unwrap();
        assert!(w.verify(&g, &[c3], Some(g.full_class())));
        assert_eq!(w.flatten().len(), 5);
        // commuting pairs never generate S3
        let one = HandleSearch::run(&g, 1);
        assert!(find_witness(&g, &one, &[], Some(g.full_class())).is_none());
        let c2 = g.resolve_conj_class("c2").unwrap();
        // a single transposition cannot be a product of commutators
        assert!(find_witness(&g, &search, &[c2], None).is_none());
    }
}
