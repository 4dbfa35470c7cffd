//! Finite groups given by Cayley tables, with every piece of conjugation data
//! derived eagerly at construction.
//!
//! Elements are indices `0..order` with `0` the identity. Subsets are stored as
//! `u64` bitmasks, so orders above 64 are rejected.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Elem = usize;
pub type Mask = u64;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ConjClassId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvSymClassId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupClassId(pub usize);

/// Index into [`FiniteGroup::subgroups`].
pub type SubgroupIdx = usize;

/// Groups shipped with known character tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Builtin {
    Trivial,
    Cyclic(usize),
    S3,
}

#[derive(Debug, Clone)]
pub struct Subgroup {
    pub mask: Mask,
    pub order: usize,
    pub class: SubgroupClassId,
    /// Index of the commutator subgroup.
    pub commutator: SubgroupIdx,
    /// Order of the centralizer of the whole subgroup in `G`.
    pub centralizer_order: usize,
}

#[derive(Debug, Clone)]
pub struct SubgroupClass {
    /// Lexicographically least member set among the conjugates.
    pub representative: Mask,
    pub members: Vec<SubgroupIdx>,
    pub order: usize,
    pub name: String,
}

#[derive(Debug, Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    names: Vec<String>,
    builtin: Option<Builtin>,
    label: String,
    inverse: Vec<Elem>,
    elem_order: Vec<usize>,
    exponent: usize,
    classes: Vec<Vec<Elem>>,
    class_of: Vec<ConjClassId>,
    class_names: Vec<String>,
    invsym_of: Vec<InvSymClassId>,
    invsym_classes: Vec<Vec<ConjClassId>>,
    centralizers: Vec<Mask>,
    subgroups: Vec<Subgroup>,
    subgroup_index: HashMap<Mask, SubgroupIdx>,
    subgroup_classes: Vec<SubgroupClass>,
    join: Vec<SubgroupIdx>,
}

pub fn mask_of(elems: impl IntoIterator<Item = Elem>) -> Mask {
    elems.into_iter().fold(0, |m, x| m | (1u64 << x))
}

pub fn members(mask: Mask) -> Vec<Elem> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

impl FiniteGroup {
    /// Validates a Cayley table and derives classes, centralizers and the
    /// subgroup lattice.
    pub fn from_table(rows: Vec<Vec<Elem>>) -> Result<Self> {
        Self::build(rows, None, None, None)
    }

    pub fn from_table_named(rows: Vec<Vec<Elem>>, names: Vec<String>) -> Result<Self> {
        Self::build(rows, Some(names), None, None)
    }

    fn build(
        rows: Vec<Vec<Elem>>,
        names: Option<Vec<String>>,
        builtin: Option<Builtin>,
        label: Option<String>,
    ) -> Result<Self> {
        let n = rows.len();
        let not_group = |reason: &str, witness: Vec<usize>| Error::NotAGroup { reason: reason.to_string(), witness };
        if n == 0 {
            return Err(not_group("empty table", vec![]));
        }
        if n > MAX_ORDER {
            return Err(Error::InvalidArgument(format!("order {n} exceeds the supported maximum {MAX_ORDER}")));
        }
        let mut table = Vec::with_capacity(n * n);
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(not_group("table is not square", vec![x]));
            }
            for (y, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(not_group("entry out of range", vec![x, y]));
                }
                table.push(v);
            }
        }
        let mul = |x: Elem, y: Elem| table[x * n + y];
        for x in 0..n {
            if mul(0, x) != x || mul(x, 0) != x {
                return Err(not_group("index 0 is not a two-sided identity", vec![0, x]));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mul(x, y);
                for z in 0..n {
                    if mul(xy, z) != mul(x, mul(y, z)) {
                        return Err(not_group("associativity fails", vec![x, y, z]));
                    }
                }
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mul(x, y) == 0 && mul(y, x) == 0) {
                Some(y) => inverse[x] = y,
                None => return Err(not_group("element has no two-sided inverse", vec![x])),
            }
        }

        let names = match names {
            Some(v) if v.len() == n => v,
            Some(v) => return Err(Error::Parse(format!("expected {n} element names, got {}", v.len()))),
            None => (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect(),
        };

        let mut g = FiniteGroup {
            order: n,
            table,
            names,
            builtin,
            label: label.unwrap_or_else(|| format!("table of order {n}")),
            inverse,
            elem_order: vec![],
            exponent: 1,
            classes: vec![],
            class_of: vec![],
            class_names: vec![],
            invsym_of: vec![],
            invsym_classes: vec![],
            centralizers: vec![],
            subgroups: vec![],
            subgroup_index: HashMap::new(),
            subgroup_classes: vec![],
            join: vec![],
        };
        g.derive_element_data();
        g.derive_subgroups();
        g.assign_names();
        Ok(g)
    }

    fn derive_element_data(&mut self) {
        let n = self.order;
        self.elem_order = (0..n)
            .map(|x| {
                let (mut k, mut p) = (1, x);
                while p != 0 {
                    p = self.mul(p, x);
                    k += 1;
                }
                k
            })
            .collect();
        self.exponent = self.elem_order.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));

        // Classes in order of their least member, which is the first unseen index.
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<Elem>> = vec![];
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let set: BTreeSet<Elem> = (0..n).map(|y| self.conj(y, x)).collect();
            for &m in &set {
                class_of[m] = id;
            }
            classes.push(set.into_iter().collect());
        }
        self.class_of = class_of.into_iter().map(ConjClassId).collect();

        let mut invsym_of = vec![usize::MAX; classes.len()];
        let mut invsym_classes = vec![];
        for (c, cls) in classes.iter().enumerate() {
            if invsym_of[c] != usize::MAX {
                continue;
            }
            let inv_c = self.class_of[self.inverse[cls[0]]].0;
            let id = invsym_classes.len();
            invsym_of[c] = id;
            invsym_of[inv_c] = id;
            let mut fiber = vec![ConjClassId(c)];
            if inv_c != c {
                fiber.push(ConjClassId(inv_c));
            }
            invsym_classes.push(fiber);
        }
        self.invsym_of = invsym_of.into_iter().map(InvSymClassId).collect();
        self.invsym_classes = invsym_classes;
        self.classes = classes;

        self.centralizers = (0..n).map(|x| mask_of((0..n).filter(|&y| self.mul(x, y) == self.mul(y, x)))).collect();
    }

    fn derive_subgroups(&mut self) {
        let n = self.order;
        let trivial = 1u64;
        let mut seen: BTreeSet<Mask> = BTreeSet::new();
        let mut queue = VecDeque::from([trivial]);
        seen.insert(trivial);
        while let Some(s) = queue.pop_front() {
            for x in 0..n {
                if s >> x & 1 == 1 {
                    continue;
                }
                let t = self.closure(s | (1 << x));
                if seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        let mut masks: Vec<Mask> = seen.into_iter().collect();
        masks.sort_by(|a, b| (a.count_ones(), members(*a)).cmp(&(b.count_ones(), members(*b))));
        self.subgroup_index = masks.iter().enumerate().map(|(i, &m)| (m, i)).collect();

        // Conjugacy classes of subgroups, ordered by (order, representative).
        let mut class_of = vec![usize::MAX; masks.len()];
        let mut classes: Vec<SubgroupClass> = vec![];
        let mut class_keys: Vec<(usize, Vec<Elem>)> = vec![];
        let mut raw: Vec<Vec<SubgroupIdx>> = vec![];
        for (i, &m) in masks.iter().enumerate() {
            if class_of[i] != usize::MAX {
                continue;
            }
            let conjugates: BTreeSet<SubgroupIdx> =
                (0..n).map(|y| self.subgroup_index[&self.conj_mask(y, m)]).collect();
            let id = raw.len();
            for &c in &conjugates {
                class_of[c] = id;
            }
            raw.push(conjugates.into_iter().collect());
        }
        for members_idx in &raw {
            let rep = members_idx.iter().map(|&s| masks[s]).min_by(|a, b| members(*a).cmp(&members(*b))).unwrap();
            class_keys.push((rep.count_ones() as usize, members(rep)));
            classes.push(SubgroupClass {
                representative: rep,
                members: members_idx.clone(),
                order: rep.count_ones() as usize,
                name: String::new(),
            });
        }
        let mut perm: Vec<usize> = (0..classes.len()).collect();
        perm.sort_by(|&a, &b| class_keys[a].cmp(&class_keys[b]));
        let mut new_id = vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            new_id[old] = new;
        }
        let sorted: Vec<SubgroupClass> = perm.iter().map(|&old| classes[old].clone()).collect();

        self.subgroups = masks
            .iter()
            .enumerate()
            .map(|(i, &m)| Subgroup {
                mask: m,
                order: m.count_ones() as usize,
                class: SubgroupClassId(new_id[class_of[i]]),
                commutator: 0,
                centralizer_order: 0,
            })
            .collect();
        self.subgroup_classes = sorted;

        for i in 0..masks.len() {
            let m = masks[i];
            let elems = members(m);
            let mut comm = 1u64;
            for &a in &elems {
                for &b in &elems {
                    comm |= 1 << self.commutator(a, b);
                }
            }
            let comm = self.closure(comm);
            self.subgroups[i].commutator = self.subgroup_index[&comm];
            let cent = elems.iter().fold(self.all_mask(), |acc, &x| acc & self.centralizers[x]);
            self.subgroups[i].centralizer_order = cent.count_ones() as usize;
        }

        let ns = masks.len();
        self.join = vec![0; ns * n];
        for (i, &m) in masks.iter().enumerate() {
            for x in 0..n {
                self.join[i * n + x] =
                    if m >> x & 1 == 1 { i } else { self.subgroup_index[&self.closure(m | (1 << x))] };
            }
        }
    }

    fn assign_names(&mut self) {
        let builtin_sub_names: Option<Vec<&str>> = match self.builtin {
            Some(Builtin::S3) => Some(vec!["1", "T", "N", "S3"]),
            _ => None,
        };
        for (i, c) in self.subgroup_classes.iter_mut().enumerate() {
            c.name = match (&builtin_sub_names, self.builtin) {
                (Some(v), _) => v[i].to_string(),
                (None, Some(Builtin::Cyclic(_))) | (None, Some(Builtin::Trivial)) => {
                    if c.order == 1 {
                        "1".into()
                    } else {
                        format!("mu{}", c.order)
                    }
                }
                _ => {
                    if c.order == 1 {
                        "1".into()
                    } else if c.order == self.order {
                        "G".into()
                    } else {
                        format!("H{i}")
                    }
                }
            };
        }
        self.class_names = match self.builtin {
            Some(Builtin::S3) => vec!["1".into(), "c2".into(), "c3".into()],
            Some(_) => self.classes.iter().map(|c| self.names[c[0]].clone()).collect(),
            None => (0..self.classes.len()).map(|i| if i == 0 { "1".into() } else { format!("C{i}") }).collect(),
        };
    }

    // ---- built-ins ----

    pub fn trivial() -> Self {
        Self::build(vec![vec![0]], Some(vec!["1".into()]), Some(Builtin::Trivial), Some("trivial".into()))
            .expect("trivial table")
    }

    /// The cyclic group `mu_n`, element `k` standing for `z^k`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::InvalidArgument(format!("cyclic order {n} unsupported")));
        }
        if n == 1 {
            return Ok(Self::trivial());
        }
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let names = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            })
            .collect();
        Self::build(rows, Some(names), Some(Builtin::Cyclic(n)), Some(format!("mu{n}")))
    }

    /// `S3` with elements ordered `1,(12),(13),(23),(123),(132)`; the product
    /// `x*y` is the composition "apply `y`, then `x`".
    pub fn s3() -> Self {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2], // 1
            [1, 0, 2], // (12)
            [2, 1, 0], // (13)
            [0, 2, 1], // (23)
            [1, 2, 0], // (123): 1->2->3->1
            [2, 0, 1], // (132)
        ];
        let idx = |p: [usize; 3]| PERMS.iter().position(|q| *q == p).unwrap();
        let rows = (0..6)
            .map(|x| {
                (0..6)
                    .map(|y| {
                        let (px, py) = (PERMS[x], PERMS[y]);
                        idx([px[py[0]], px[py[1]], px[py[2]]])
                    })
                    .collect()
            })
            .collect();
        let names = ["1", "(12)", "(13)", "(23)", "(123)", "(132)"].iter().map(|s| s.to_string()).collect();
        Self::build(rows, Some(names), Some(Builtin::S3), Some("S3".into())).expect("S3 table")
    }

    /// Built-in lookup: `trivial`, `mu2`, `mu3`, `mu4`, `mu6`, `S3` (any `muN`
    /// is accepted).
    pub fn builtin(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        match lower.as_str() {
            "s3" => Ok(Self::s3()),
            "trivial" | "1" | "mu1" => Ok(Self::trivial()),
            _ => {
                let digits =
                    lower.strip_prefix("mu").or_else(|| lower.strip_prefix('c')).or_else(|| lower.strip_prefix('z'));
                match digits.and_then(|d| d.parse::<usize>().ok()) {
                    Some(k) => Self::cyclic(k),
                    None => Err(Error::InvalidArgument(format!("unknown built-in group {name:?}"))),
                }
            }
        }
    }

    /// Cayley-table text: first line the order `n`, then `n` rows of `n`
    /// indices, then optional `idx name` lines.
    pub fn parse_cayley(text: &str) -> Result<Self> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let n: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty Cayley file".into()))?
            .parse()
            .map_err(|_| Error::Parse("first line must be the group order".into()))?;
        let mut rows = Vec::with_capacity(n);
        for r in 0..n {
            let line = lines.next().ok_or_else(|| Error::Parse(format!("missing table row {r}")))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse(format!("bad entry in row {r}")))?;
            rows.push(row);
        }
        let mut names: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("g{i}") }).collect();
        for line in lines {
            let (idx, name) =
                line.split_once(char::is_whitespace).ok_or_else(|| Error::Parse(format!("bad name line {line:?}")))?;
            let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad name index {idx:?}")))?;
            if idx >= n {
                return Err(Error::Parse(format!("name index {idx} out of range")));
            }
            names[idx] = name.trim().to_string();
        }
        Self::build(rows, Some(names), None, None)
    }

    // ---- element arithmetic ----

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn builtin_kind(&self) -> Option<Builtin> {
        self.builtin
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        self.table[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: Elem) -> Elem {
        self.inverse[x]
    }

    /// `y x y^-1`.
    #[inline]
    pub fn conj(&self, y: Elem, x: Elem) -> Elem {
        self.mul(self.mul(y, x), self.inverse[y])
    }

    /// `[a,b] = a b a^-1 b^-1`.
    #[inline]
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(a, b), self.mul(self.inverse[a], self.inverse[b]))
    }

    pub fn pow(&self, x: Elem, k: usize) -> Elem {
        (0..k % self.elem_order[x]).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn element_order(&self, x: Elem) -> usize {
        self.elem_order[x]
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn name(&self, x: Elem) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        self.classes.len() == self.order
    }

    pub fn all_mask(&self) -> Mask {
        if self.order == 64 {
            u64::MAX
        } else {
            (1u64 << self.order) - 1
        }
    }

    fn conj_mask(&self, y: Elem, m: Mask) -> Mask {
        mask_of(members(m).into_iter().map(|x| self.conj(y, x)))
    }

    /// Smallest subgroup containing `m`.
    pub fn closure(&self, m: Mask) -> Mask {
        let mut s = m | 1;
        loop {
            let elems = members(s);
            let mut t = s;
            for &a in &elems {
                for &b in &elems {
                    t |= 1 << self.mul(a, b);
                }
            }
            if t == s {
                return s;
            }
            s = t;
        }
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        m & 1 == 1 && self.closure(m) == m
    }

    // ---- conjugacy classes ----

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_members(&self, c: ConjClassId) -> &[Elem] {
        &self.classes[c.0]
    }

    pub fn class_of(&self, x: Elem) -> ConjClassId {
        self.class_of[x]
    }

    pub fn class_name(&self, c: ConjClassId) -> &str {
        &self.class_names[c.0]
    }

    pub fn class_mask(&self, c: ConjClassId) -> Mask {
        mask_of(self.classes[c.0].iter().copied())
    }

    /// The class `[[h^-1]]`.
    pub fn inverse_class(&self, c: ConjClassId) -> ConjClassId {
        self.class_of[self.inverse[self.classes[c.0][0]]]
    }

    pub fn invsym_of(&self, c: ConjClassId) -> InvSymClassId {
        self.invsym_of[c.0]
    }

    pub fn num_invsym_classes(&self) -> usize {
        self.invsym_classes.len()
    }

    pub fn invsym_fiber(&self, u: InvSymClassId) -> &[ConjClassId] {
        &self.invsym_classes[u.0]
    }

    pub fn invsym_name(&self, u: InvSymClassId) -> &str {
        self.class_name(self.invsym_classes[u.0][0])
    }

    pub fn centralizer(&self, x: Elem) -> Vec<Elem> {
        members(self.centralizers[x])
    }

    pub fn centralizer_mask(&self, x: Elem) -> Mask {
        self.centralizers[x]
    }

    // ---- subgroups ----

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, s: SubgroupIdx) -> &Subgroup {
        &self.subgroups[s]
    }

    pub fn subgroup_of_mask(&self, m: Mask) -> Option<SubgroupIdx> {
        self.subgroup_index.get(&m).copied()
    }

    pub fn trivial_subgroup(&self) -> SubgroupIdx {
        0
    }

    pub fn full_subgroup(&self) -> SubgroupIdx {
        self.subgroups.len() - 1
    }

    /// Index of `<S, x>`.
    #[inline]
    pub fn join(&self, s: SubgroupIdx, x: Elem) -> SubgroupIdx {
        self.join[s * self.order + x]
    }

    pub fn subgroup_classes(&self) -> &[SubgroupClass] {
        &self.subgroup_classes
    }

    pub fn subgroup_class(&self, h: SubgroupClassId) -> &SubgroupClass {
        &self.subgroup_classes[h.0]
    }

    pub fn trivial_class(&self) -> SubgroupClassId {
        SubgroupClassId(0)
    }

    pub fn full_class(&self) -> SubgroupClassId {
        SubgroupClassId(self.subgroup_classes.len() - 1)
    }

    /// `H2 <= H1` up to conjugation: some member of `h2` sits inside some
    /// member of `h1`.
    pub fn class_leq(&self, h2: SubgroupClassId, h1: SubgroupClassId) -> bool {
        let r2 = self.subgroup_classes[h2.0].representative;
        self.subgroup_classes[h1.0].members.iter().any(|&s| r2 & !self.subgroups[s].mask == 0)
    }

    /// Class of the subgroup `elems` (which must be closed), or of the
    /// subgroup it generates when `generate` is set.
    pub fn subgroup_class_of(&self, elems: &[Elem], generate: bool) -> Result<SubgroupClassId> {
        if let Some(&bad) = elems.iter().find(|&&x| x >= self.order) {
            return Err(Error::IndexOutOfRange { index: bad as i64, range: format!("0..{}", self.order) });
        }
        let m = mask_of(elems.iter().copied());
        let m = if generate {
            self.closure(m)
        } else if self.is_closed(m) {
            m
        } else {
            return Err(Error::NotASubgroup { elems: elems.to_vec() });
        };
        Ok(self.subgroups[self.subgroup_index[&m]].class)
    }

    /// Commutator subgroup of a subgroup given by its elements.
    pub fn commutator_subgroup(&self, h: &[Elem]) -> Result<Vec<Elem>> {
        let m = mask_of(h.iter().copied());
        let s = self.subgroup_index.get(&m).ok_or_else(|| Error::NotASubgroup { elems: h.to_vec() })?;
        Ok(members(self.subgroups[self.subgroups[*s].commutator].mask))
    }

    pub fn subgroup_class_name(&self, h: SubgroupClassId) -> &str {
        &self.subgroup_classes[h.0].name
    }

    // ---- name resolution ----

    /// Conjugacy class by class name, element name, `C<id>` or numeric id.
    pub fn resolve_conj_class(&self, s: &str) -> Result<ConjClassId> {
        let s = s.trim();
        if let Some(i) = self.class_names.iter().position(|n| n == s) {
            return Ok(ConjClassId(i));
        }
        if let Some(x) = self.names.iter().position(|n| n == s) {
            return Ok(self.class_of[x]);
        }
        let id = s.strip_prefix('C').or_else(|| s.strip_prefix('c')).unwrap_or(s);
        match id.parse::<usize>() {
            Ok(i) if i < self.classes.len() => Ok(ConjClassId(i)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown conjugacy class {s:?} (known: {})",
                self.class_names.join(", ")
            ))),
        }
    }

    /// Subgroup class by name, `full`/`G`, `trivial`, `H<id>` or numeric id.
    pub fn resolve_subgroup_class(&self, s: &str) -> Result<SubgroupClassId> {
        let s = s.trim();
        if let Some(i) = self.subgroup_classes.iter().position(|c| c.name == s) {
            return Ok(SubgroupClassId(i));
        }
        match s.to_ascii_lowercase().as_str() {
            "full" | "g" => return Ok(self.full_class()),
            "trivial" | "1" => return Ok(self.trivial_class()),
            _ => {}
        }
        let id = s.strip_prefix('H').unwrap_or(s);
        match id.parse::<usize>() {
            Ok(i) if i < self.subgroup_classes.len() => Ok(SubgroupClassId(i)),
            _ => Err(Error::InvalidArgument(format!(
                "unknown subgroup class {s:?} (known: {})",
                self.subgroup_classes.iter().map(|c| c.name.as_str()).collect::<Vec<_>>().join(", ")
            ))),
        }
    }

    pub fn resolve_element(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        if let Some(x) = self.names.iter().position(|n| n == s) {
            return Ok(x);
        }
        match s.parse::<usize>() {
            Ok(x) if x < self.order => Ok(x),
            _ => Err(Error::InvalidArgument(format!("unknown element {s:?}"))),
        }
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_group() {
        let g = FiniteGroup::from_table(vec![vec![0]]).unwrap();
        assert_eq!(g.num_classes(), 1);
        assert_eq!(g.subgroup_classes().len(), 1);
        assert_eq!(g.subgroups().len(), 1);
    }

    #[test]
    fn s3_structure() {
        let g = FiniteGroup::s3();
        let sizes: Vec<usize> = (0..g.num_classes()).map(|c| g.class_members(ConjClassId(c)).len()).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        assert_eq!(g.subgroups().len(), 6);
        assert_eq!(g.subgroup_classes().len(), 4);
        let orders: Vec<usize> = g.subgroup_classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(g.name(g.mul(4, 4)), "(132)");
        assert_eq!(g.num_invsym_classes(), 3);
    }

    #[test]
    fn mu4_structure() {
        let g = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(g.num_classes(), 4);
        assert!((0..4).all(|c| g.class_members(ConjClassId(c)).len() == 1));
        assert_eq!(g.subgroup_classes().len(), 3);
        // z and z^3 are mutually inverse, z^2 is its own inverse
        assert_eq!(g.num_invsym_classes(), 3);
    }

    #[test]
    fn centralizers_in_s3() {
        let g = FiniteGroup::s3();
        assert_eq!(g.centralizer(0), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(g.centralizer(1), vec![0, 1]);
        assert_eq!(g.centralizer(4), vec![0, 4, 5]);
    }

    #[test]
    fn subgroup_classes_in_s3() {
        let g = FiniteGroup::s3();
        let t = g.resolve_subgroup_class("T").unwrap();
        let n = g.resolve_subgroup_class("N").unwrap();
        let full = g.resolve_subgroup_class("S3").unwrap();
        assert_eq!(g.subgroup_class_of(&[0], false).unwrap(), g.trivial_class());
        assert_eq!(g.subgroup_class_of(&[0, 1], false).unwrap(), t);
        assert_eq!(g.subgroup_class_of(&[0, 3], false).unwrap(), t);
        assert_eq!(g.subgroup_class_of(&[1, 4], true).unwrap(), full);
        assert_eq!(g.subgroup_class_of(&[4], true).unwrap(), n);
        assert!(matches!(g.subgroup_class_of(&[0, 1, 4], false), Err(Error::NotASubgroup { .. })));
        assert!(g.class_leq(t, full));
        assert!(!g.class_leq(t, n));
        assert!(g.class_leq(g.trivial_class(), n));
    }

    #[test]
    fn commutators() {
        let g = FiniteGroup::s3();
        assert_eq!(g.commutator_subgroup(&[0, 1, 2, 3, 4, 5]).unwrap(), vec![0, 4, 5]);
        assert_eq!(g.commutator_subgroup(&[0, 4, 5]).unwrap(), vec![0]);
        assert_eq!(g.commutator_subgroup(&[0]).unwrap(), vec![0]);
        let m6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(m6.commutator_subgroup(&[0, 1, 2, 3, 4, 5]).unwrap(), vec![0]);
    }

    #[test]
    fn rejects_non_groups() {
        // identity fails
        let e = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap_err();
        assert!(matches!(e, Error::NotAGroup { .. }));
        // no inverse for 1 in this monoid
        let e = FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(e, Error::NotAGroup { .. }));
        // non-associative loop of order 5
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_table(rows).unwrap_err() {
            Error::NotAGroup { witness, .. } => assert_eq!(witness.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]]).is_err());
    }

    #[test]
    fn cayley_file_roundtrip() {
        let text = "3\n0 1 2\n1 2 0\n2 0 1\n1 r\n2 r2\n";
        let g = FiniteGroup::parse_cayley(text).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.name(1), "r");
        assert_eq!(g.resolve_element("r2").unwrap(), 2);
        assert!(FiniteGroup::parse_cayley("2\n0 1\n").is_err());
    }

    #[test]
    fn builtin_names() {
        for name in ["trivial", "mu2", "mu3", "mu4", "mu6", "S3"] {
            FiniteGroup::builtin(name).unwrap();
        }
        assert!(FiniteGroup::builtin("A5").is_err());
    }
}
