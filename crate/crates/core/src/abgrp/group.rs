//! Finitely generated abelian groups in invariant factor normal form.
//!
//! A group is `Z^rank + Z/d1 + ... + Z/dk` with `2 <= d1 | d2 | ... | dk`.
//! Elements are coordinate vectors against the canonical generators, free
//! generators first, each torsion coordinate reduced into `0..d`.

use crate::matrix::IntMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgAbGroup {
    rank: usize,
    torsion: Vec<BigUint>,
}

impl FgAbGroup {
    pub fn zero() -> Self {
        FgAbGroup { rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup { rank, torsion: Vec::new() }
    }

    /// The cyclic group `Z/n` for `n >= 1`; `Z/1` is the zero group.
    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1, "cyclic order must be positive");
        if n == 1 {
            FgAbGroup::zero()
        } else {
            FgAbGroup { rank: 0, torsion: vec![BigUint::from(n)] }
        }
    }

    /// Assembles the direct sum of cyclic pieces into normal form.
    /// An order of `None` stands for a free `Z` summand; `Some(1)` is dropped.
    pub fn from_orders<I: IntoIterator<Item = Option<BigUint>>>(orders: I) -> Self {
        let mut rank = 0;
        let mut buckets: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for o in orders {
            match o {
                None => rank += 1,
                Some(n) => {
                    assert!(!n.is_zero(), "order zero is expressed as None");
                    for (p, e) in factorize(&n) {
                        buckets.entry(p).or_default().push(e);
                    }
                }
            }
        }
        let depth = buckets.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigUint::one(); depth];
        for (p, mut exps) in buckets {
            exps.sort_unstable();
            // Largest exponents feed the largest invariant factor.
            for (slot, e) in exps.iter().rev().enumerate() {
                let idx = depth - 1 - slot;
                torsion[idx] *= p.pow(*e);
            }
        }
        torsion.retain(|d| !d.is_one());
        FgAbGroup { rank, torsion }
    }

    pub fn new(rank: usize, torsion: Vec<BigUint>) -> Self {
        let g = FgAbGroup { rank, torsion };
        assert!(g.is_normal_form(), "invariant factors must form a divisibility chain");
        g
    }

    fn is_normal_form(&self) -> bool {
        let two = BigUint::from(2u32);
        self.torsion.iter().all(|d| *d >= two)
            && self
                .torsion
                .windows(2)
                .all(|w| (&w[1] % &w[0]).is_zero())
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn torsion(&self) -> &[BigUint] {
        &self.torsion
    }

    pub fn num_gens(&self) -> usize {
        self.rank + self.torsion.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn order(&self) -> Option<BigUint> {
        if self.rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    /// Order of the `i`-th canonical generator; `None` for free generators.
    pub fn gen_order(&self, i: usize) -> Option<&BigUint> {
        if i < self.rank {
            None
        } else {
            Some(&self.torsion[i - self.rank])
        }
    }

    /// Relation matrix: one column `d * e_i` per torsion generator.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.num_gens();
        let k = self.torsion.len();
        IntMatrix::from_fn(n, k, |i, j| {
            if i == self.rank + j {
                BigInt::from(self.torsion[j].clone())
            } else {
                BigInt::zero()
            }
        })
    }

    /// Reduces a raw coordinate vector to the canonical representative.
    pub fn reduce(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.num_gens(), "coordinate length");
        coords
            .iter()
            .enumerate()
            .map(|(i, c)| match self.gen_order(i) {
                None => c.clone(),
                Some(d) => c.mod_floor(&BigInt::from(d.clone())),
            })
            .collect()
    }

    pub fn zero_element(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.num_gens()]
    }

    pub fn gen_element(&self, i: usize) -> Vec<BigInt> {
        let mut e = self.zero_element();
        e[i] = BigInt::one();
        e
    }

    pub fn elem_is_zero(&self, coords: &[BigInt]) -> bool {
        self.reduce(coords).iter().all(Zero::is_zero)
    }

    pub fn elem_add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>())
    }

    pub fn elem_scale(&self, c: &BigInt, a: &[BigInt]) -> Vec<BigInt> {
        self.reduce(&a.iter().map(|x| c * x).collect::<Vec<_>>())
    }

    /// Additive order of an element; `None` when infinite.
    pub fn elem_order(&self, coords: &[BigInt]) -> Option<BigUint> {
        let coords = self.reduce(coords);
        if coords[..self.rank].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut ord = BigUint::one();
        for (j, d) in self.torsion.iter().enumerate() {
            let c = coords[self.rank + j].to_biguint().expect("reduced coordinate");
            if c.is_zero() {
                continue;
            }
            let o = d / c.gcd(d);
            ord = ord.lcm(&o);
        }
        Some(ord)
    }

    /// Iterates all elements of a finite group.
    pub fn elements(&self) -> impl Iterator<Item = Vec<BigInt>> + '_ {
        assert!(self.is_finite(), "cannot enumerate an infinite group");
        let radices: Vec<u64> = self
            .torsion
            .iter()
            .map(|d| d.to_u64().expect("enumeration requires small orders"))
            .collect();
        let total: u64 = radices.iter().product();
        (0..total).map(move |mut n| {
            let mut coords = Vec::with_capacity(radices.len());
            for r in &radices {
                coords.push(BigInt::from(n % r));
                n /= r;
            }
            coords
        })
    }

    /// Direct sum in normal form.
    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        FgAbGroup::from_orders(
            std::iter::repeat(None)
                .take(self.rank + other.rank)
                .chain(self.torsion.iter().cloned().map(Some))
                .chain(other.torsion.iter().cloned().map(Some)),
        )
    }

    /// Primary decomposition view: for each prime, the ascending exponent list.
    pub fn primary_decomposition(&self) -> BTreeMap<BigUint, Vec<u32>> {
        let mut out: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for d in &self.torsion {
            for (p, e) in factorize(d) {
                out.entry(p).or_default().push(e);
            }
        }
        for exps in out.values_mut() {
            exps.sort_unstable();
        }
        out
    }
}

/// Trial-division factorization. Orders in this crate stay small.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut p = BigUint::from(2u32);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Cokernel presentation of `Z^rows / col-span(rel)` in normal form, with
/// the projection from ambient coordinates and a lift back.
pub struct Presentation {
    pub group: FgAbGroup,
    /// `num_gens x ambient_rows`; maps ambient vectors to canonical coordinates.
    pub proj: IntMatrix,
    /// `ambient_rows x num_gens`; representatives of the canonical generators.
    pub lift: IntMatrix,
}

pub fn presented_group(rel: &IntMatrix) -> Presentation {
    let snf = rel.smith_normal_form();
    let rows = rel.rows();
    let n = rows.min(rel.cols());
    // Ambient row i carries the cyclic factor Z/d_ii (0 = free, 1 = dropped).
    let mut free_rows = Vec::new();
    let mut torsion_rows = Vec::new();
    for i in 0..rows {
        let d = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if d.is_zero() {
            free_rows.push(i);
        } else if !d.is_one() {
            torsion_rows.push((i, d.to_biguint().expect("snf diagonal nonnegative")));
        }
    }
    let torsion: Vec<BigUint> = torsion_rows.iter().map(|(_, d)| d.clone()).collect();
    let group = FgAbGroup::new(free_rows.len(), torsion);
    let selected: Vec<usize> = free_rows
        .iter()
        .copied()
        .chain(torsion_rows.iter().map(|(i, _)| *i))
        .collect();
    let proj_raw = snf.u.submatrix_rows(&selected);
    let proj = IntMatrix::from_fn(group.num_gens(), rows, |i, j| match group.gen_order(i) {
        None => proj_raw[(i, j)].clone(),
        Some(d) => proj_raw[(i, j)].mod_floor(&BigInt::from(d.clone())),
    });
    let lift = snf.u_inv.submatrix_cols(&selected);
    Presentation { group, proj, lift }
}

/// Canonical form of the group presented by `m` (generators = rows,
/// relations = columns).
pub fn cokernel_group(m: &IntMatrix) -> FgAbGroup {
    presented_group(m).group
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, thiserror::Error)]
#[error("cannot parse abelian group from {0:?}")]
pub struct GroupParseError(pub String);

impl FromStr for FgAbGroup {
    type Err = GroupParseError;

    /// Parses the `Display` format: `0`, `Z`, `Z^2 + Z/4 + Z/12`, ...
    fn from_str(s: &str) -> Result<Self, GroupParseError> {
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(FgAbGroup::zero());
        }
        let mut rank = 0usize;
        let mut orders = Vec::new();
        for part in trimmed.split('+') {
            let part = part.trim();
            if part == "Z" {
                rank += 1;
            } else if let Some(r) = part.strip_prefix("Z^") {
                rank += r
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| GroupParseError(s.to_string()))?;
            } else if let Some(d) = part.strip_prefix("Z/") {
                let d = d
                    .trim()
                    .parse::<BigUint>()
                    .map_err(|_| GroupParseError(s.to_string()))?;
                if d.is_zero() {
                    return Err(GroupParseError(s.to_string()));
                }
                orders.push(Some(d));
            } else {
                return Err(GroupParseError(s.to_string()));
            }
        }
        Ok(FgAbGroup::from_orders(
            std::iter::repeat(None).take(rank).chain(orders),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cokernel_examples() {
        // Free group on one generator.
        let g = cokernel_group(&IntMatrix::from_rows_i64(&[vec![0]]));
        assert_eq!(g, FgAbGroup::free(1));
        // d1 = gcd(2,2,0,2) = 2, d1*d2 = |det| = 4.
        let g = cokernel_group(&IntMatrix::from_rows_i64(&[vec![2, 2], vec![0, 2]]));
        assert_eq!(g, FgAbGroup::new(0, vec![2u32.into(), 2u32.into()]));
        let g = cokernel_group(&IntMatrix::from_rows_i64(&[vec![6]]));
        assert_eq!(g, FgAbGroup::cyclic(6));
    }

    #[test]
    fn presentation_proj_lift_consistency() {
        let rel = IntMatrix::from_rows_i64(&[vec![2, 0], vec![2, 4], vec![0, 0]]);
        let pres = presented_group(&rel);
        // proj . lift = identity on canonical coordinates.
        let pl = pres.proj.mul(&pres.lift);
        let id = IntMatrix::identity(pres.group.num_gens());
        for i in 0..pl.rows() {
            for j in 0..pl.cols() {
                let diff = &pl[(i, j)] - &id[(i, j)];
                match pres.group.gen_order(i) {
                    None => assert!(diff.is_zero()),
                    Some(d) => assert!((&diff % BigInt::from(d.clone())).is_zero()),
                }
            }
        }
        // Relations project to zero.
        let pr = pres.proj.mul(&rel);
        for i in 0..pr.rows() {
            for j in 0..pr.cols() {
                match pres.group.gen_order(i) {
                    None => assert!(pr[(i, j)].is_zero()),
                    Some(d) => assert!((&pr[(i, j)] % BigInt::from(d.clone())).is_zero()),
                }
            }
        }
    }

    #[test]
    fn normal_form_assembly() {
        // Z/2 + Z/3 + Z/4 = Z/2 + Z/12.
        let g = FgAbGroup::from_orders(vec![
            Some(BigUint::from(2u32)),
            Some(BigUint::from(3u32)),
            Some(BigUint::from(4u32)),
        ]);
        assert_eq!(g, FgAbGroup::new(0, vec![2u32.into(), 12u32.into()]));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "Z", "Z^2 + Z/2 + Z/12", "Z/5"] {
            let g: FgAbGroup = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
    }

    #[test]
    fn element_orders() {
        let g: FgAbGroup = "Z/2 + Z/12".parse().unwrap();
        assert_eq!(
            g.elem_order(&[BigInt::from(1), BigInt::from(2)]),
            Some(BigUint::from(6u32))
        );
        let z: FgAbGroup = "Z".parse().unwrap();
        assert_eq!(z.elem_order(&[BigInt::from(3)]), None);
        assert_eq!(z.elem_order(&[BigInt::zero()]), Some(BigUint::one()));
    }

    #[test]
    fn elements_count() {
        let g: FgAbGroup = "Z/2 + Z/6".parse().unwrap();
        assert_eq!(g.elements().count(), 12);
    }
}
