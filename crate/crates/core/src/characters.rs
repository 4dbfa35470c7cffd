//! Character tables of the built-in groups, eigenvalue multiplicities at
//! cyclic stabilizers and the age / junior arithmetic.
//!
//! The privileged primitive root is `xi_r = exp(2 pi i / r)`; every age value
//! depends on this choice.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CyclotomicNumber;
use crate::error::{Error, Result};
use crate::group::{members, ConjClassId, Elem, FiniteGroup, Mask};
use crate::rational::{qi, Q};

/// A character of `G`, with values in `Q(zeta_e)`, `e` the exponent of `G`.
#[derive(Debug, Clone, PartialEq)]
pub struct Representation {
    pub name: String,
    pub dim: usize,
    /// Value on each conjugacy class, indexed by [`ConjClassId`].
    pub character: Vec<CyclotomicNumber>,
}

impl Representation {
    pub fn value(&self, g: &FiniteGroup, x: Elem) -> &CyclotomicNumber {
        &self.character[g.class_of(x).0]
    }
}

/// Character table of a subgroup `K <= G` with respect to `K`-conjugacy.
#[derive(Debug, Clone)]
pub struct SubgroupCharacterTable {
    pub conductor: usize,
    pub order: usize,
    /// `K`-conjugacy classes as element lists of `G`.
    pub classes: Vec<Vec<Elem>>,
    pub dims: Vec<usize>,
    /// `chars[chi][class]`.
    pub chars: Vec<Vec<CyclotomicNumber>>,
}

impl SubgroupCharacterTable {
    pub fn class_of(&self, x: Elem) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&x))
    }
}

/// Character table for a subgroup that is cyclic or isomorphic to `S3`.
pub fn subgroup_character_table(g: &FiniteGroup, k: Mask) -> Result<SubgroupCharacterTable> {
    let elems = members(k);
    let m = elems.len();
    let n = g.exponent();
    if let Some(&gen) = elems.iter().find(|&&x| g.element_order(x) == m) {
        // cyclic: gen^a has character chi_j(gen^a) = zeta_m^(j a)
        let mut powers = vec![0; m];
        let mut x = 0;
        for p in powers.iter_mut() {
            *p = x;
            x = g.mul(x, gen);
        }
        let classes: Vec<Vec<Elem>> = powers.iter().map(|&x| vec![x]).collect();
        let chars =
            (0..m).map(|j| (0..m).map(|a| CyclotomicNumber::zeta_pow(m, (j * a) as i64).lift(n)).collect()).collect();
        return Ok(SubgroupCharacterTable { conductor: n, order: m, classes, dims: vec![1; m], chars });
    }
    let abelian = elems.iter().all(|&a| elems.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if m == 6 && !abelian {
        let by_order = |o: usize| -> Vec<Elem> { elems.iter().copied().filter(|&x| g.element_order(x) == o).collect() };
        let classes = vec![vec![0], by_order(2), by_order(3)];
        let c = |v: i64| CyclotomicNumber::from_int(n, v);
        let chars = vec![vec![c(1), c(1), c(1)], vec![c(1), c(-1), c(1)], vec![c(2), c(0), c(-1)]];
        return Ok(SubgroupCharacterTable { conductor: n, order: 6, classes, dims: vec![1, 1, 2], chars });
    }
    Err(Error::UnsupportedGroup(format!("subgroup {:?} of {} is neither cyclic nor S3", elems, g.label())))
}

/// Complete list of irreducible characters: `zeta_n^(jk)` for `mu_n`,
/// `I, eps, R` for `S3`.
pub fn irreducibles(g: &FiniteGroup) -> Result<Vec<Representation>> {
    let table = subgroup_character_table(g, g.all_mask())?;
    let s3_like = table.order == 6 && table.classes.len() == 3;
    let names: Vec<String> = if s3_like {
        vec!["I".into(), "eps".into(), "R".into()]
    } else if table.order == 1 {
        vec!["I".into()]
    } else {
        (0..table.order).map(|j| format!("chi{j}")).collect()
    };
    Ok(table
        .chars
        .iter()
        .zip(&table.dims)
        .zip(names)
        .map(|((vals, &dim), name)| {
            let mut character = vec![CyclotomicNumber::zero(table.conductor); g.num_classes()];
            for (cls, v) in table.classes.iter().zip(vals) {
                for &x in cls {
                    character[g.class_of(x).0] = v.clone();
                }
            }
            Representation { name, dim, character }
        })
        .collect())
}

pub fn irreducible_by_name(g: &FiniteGroup, name: &str) -> Result<Representation> {
    let irr = irreducibles(g)?;
    irr.iter().find(|r| r.name.eq_ignore_ascii_case(name)).cloned().ok_or_else(|| {
        Error::InvalidArgument(format!(
            "unknown representation {name:?} (known: {})",
            irr.iter().map(|r| r.name.as_str()).collect::<Vec<_>>().join(", ")
        ))
    })
}

/// `<chi_a, chi_b> = 1/|G| sum_x chi_a(x) conj(chi_b(x))`.
pub fn inner_product(g: &FiniteGroup, a: &Representation, b: &Representation) -> CyclotomicNumber {
    let n = a.character[0].conductor();
    let mut acc = CyclotomicNumber::zero(n);
    for c in 0..g.num_classes() {
        let size = qi(g.class_members(ConjClassId(c)).len() as i64);
        acc = &acc + &(&a.character[c] * &b.character[c].conj()).scale(&size);
    }
    acc.scale(&(Q::from_integer(BigInt::from(1)) / qi(g.order() as i64)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenMultiplicities {
    pub r: usize,
    /// `w[k]` is the multiplicity of `xi_r^k`.
    pub w: Vec<u32>,
}

impl EigenMultiplicities {
    pub fn dim(&self) -> u32 {
        self.w.iter().sum()
    }

    /// Number of eigenvalues different from 1, with multiplicity.
    pub fn nontrivial_count(&self) -> u32 {
        self.w.iter().skip(1).sum()
    }

    pub fn is_quasireflection(&self) -> bool {
        self.nontrivial_count() == 1
    }
}

/// `w[k] = 1/r sum_j xi_r^(-kj) chi(h^j)`, `r` the order of `h`.
pub fn eigen_multiplicities(g: &FiniteGroup, rep: &Representation, h: Elem) -> Result<EigenMultiplicities> {
    if h >= g.order() {
        return Err(Error::IndexOutOfRange { index: h as i64, range: format!("0..{}", g.order()) });
    }
    let r = g.element_order(h);
    let n = rep.character[0].conductor();
    let step = (n / r) as i64;
    let mut w = Vec::with_capacity(r);
    for k in 0..r as i64 {
        let mut acc = CyclotomicNumber::zero(n);
        for j in 0..r as i64 {
            let root = CyclotomicNumber::zeta_pow(n, -k * j * step);
            acc = &acc + &(&root * rep.value(g, g.pow(h, j as usize)));
        }
        let val = acc
            .rational()
            .map(|x| x / qi(r as i64))
            .ok_or_else(|| Error::NonIntegralMultiplicity(format!("w[{k}] is not rational")))?;
        if !val.is_integer() || val.is_negative() {
            return Err(Error::NonIntegralMultiplicity(format!("w[{k}] = {val}")));
        }
        w.push(val.to_integer().to_u32().unwrap());
    }
    Ok(EigenMultiplicities { r, w })
}

/// `sum_k k w[k] / r`.
pub fn age(mult: &EigenMultiplicities) -> Q {
    let num: i64 = mult.w.iter().enumerate().map(|(k, &m)| k as i64 * m as i64).sum();
    Q::new(BigInt::from(num), BigInt::from(mult.r as i64))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JuniorVerdict {
    pub junior: bool,
    /// Index into the input list and the age of the witnessing element.
    pub witness: Option<(usize, String)>,
}

/// Junior iff some entry acting non-trivially has age `< 1`. Callers remove
/// quasireflections first (see [`EigenMultiplicities::is_quasireflection`]).
pub fn junior_check(elements: &[EigenMultiplicities]) -> JuniorVerdict {
    let one = qi(1);
    for (i, m) in elements.iter().enumerate() {
        if m.nontrivial_count() == 0 {
            continue;
        }
        let a = age(m);
        if a < one {
            return JuniorVerdict { junior: true, witness: Some((i, crate::rational::to_pq(&a))) };
        }
    }
    JuniorVerdict { junior: false, witness: None }
}

/// Sum of `dim^2` over irreducibles, for sanity checks.
pub fn sum_dim_squares(irr: &[Representation]) -> usize {
    irr.iter().map(|r| r.dim * r.dim).sum()
}

pub fn is_zero_character(rep: &Representation) -> bool {
    rep.character.iter().all(|v| v.is_zero())
}
