//! Hom and Ext spaces of the heart, computed blockwise through the derived
//! equivalence with mod-Z:
//!
//! `Hom(x1, x2)  = Hom(f1, f2) + Hom(t1, t2) + Ext^1(t1, f2)`
//! `Ext^1(x1,x2) = Ext^1(f1, f2) + Hom(f1, t2) + Ext^1(t1, t2)`
//! `Ext^2(x1,x2) = Ext^1(f1, t2)`, which vanishes by coprimality.

use super::{HeartError, HeartMorphism, HeartObject};
use crate::abgrp::{ext_group, hom_group, ExtElement, ExtGroup, FgAbGroup, GroupHom, HomGroup};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

/// `Hom(x1, x2)` with its three labeled blocks, canonical generators lifted
/// to actual morphisms.
pub struct HomSpace {
    pub group: FgAbGroup,
    pub hom_ff: HomGroup,
    pub hom_tt: HomGroup,
    pub ext_tf: ExtGroup,
    pub gens: Vec<HeartMorphism>,
    source: HeartObject,
    target: HeartObject,
}

impl HomSpace {
    /// All morphisms in a finite hom space.
    pub fn enumerate(&self) -> Result<Vec<HeartMorphism>, HeartError> {
        if !self.group.is_finite() {
            return Err(HeartError::InfiniteHomSpace);
        }
        let mut out = vec![HeartMorphism::zero(&self.source, &self.target).expect("same q")];
        for (k, g) in self.gens.iter().enumerate() {
            let order = self
                .group
                .gen_order(k)
                .expect("finite group")
                .to_u64()
                .expect("enumeration needs small orders");
            let mut next = Vec::with_capacity(out.len() * order as usize);
            for m in &out {
                for c in 0..order {
                    next.push(m.add(&g.scale(&BigInt::from(c))).expect("same endpoints"));
                }
            }
            out = next;
        }
        Ok(out)
    }
}

pub fn hom_space(x1: &HeartObject, x2: &HeartObject) -> Result<HomSpace, HeartError> {
    if x1.q() != x2.q() {
        return Err(HeartError::PrimeSetMismatch);
    }
    let hom_ff = hom_group(x1.f(), x2.f());
    let hom_tt = hom_group(x1.t(), x2.t());
    let ext_tf = ext_group(x1.t(), x2.f());

    // Reassemble the three blocks into one canonical group, lifting each
    // canonical generator to a morphism.
    let mut pieces: Vec<(Option<BigUint>, HeartMorphism)> = Vec::new();
    let as_morphism_a = |h: &GroupHom| {
        HeartMorphism::new(
            x1.clone(),
            x2.clone(),
            h.clone(),
            GroupHom::zero(x1.t(), x2.t()),
            ExtElement::zero(x1.t(), x2.f()),
        )
        .expect("block endpoints")
    };
    let as_morphism_b = |h: &GroupHom| {
        HeartMorphism::new(
            x1.clone(),
            x2.clone(),
            GroupHom::zero(x1.f(), x2.f()),
            h.clone(),
            ExtElement::zero(x1.t(), x2.f()),
        )
        .expect("block endpoints")
    };
    let as_morphism_e = |e: &ExtElement| {
        HeartMorphism::new(
            x1.clone(),
            x2.clone(),
            GroupHom::zero(x1.f(), x2.f()),
            GroupHom::zero(x1.t(), x2.t()),
            e.clone(),
        )
        .expect("block endpoints")
    };
    for (k, h) in hom_ff.gens.iter().enumerate() {
        pieces.push((hom_ff.group.gen_order(k).cloned(), as_morphism_a(h)));
    }
    for (k, h) in hom_tt.gens.iter().enumerate() {
        pieces.push((hom_tt.group.gen_order(k).cloned(), as_morphism_b(h)));
    }
    for (k, e) in ext_tf.gens.iter().enumerate() {
        pieces.push((ext_tf.group.gen_order(k).cloned(), as_morphism_e(e)));
    }
    let zero = HeartMorphism::zero(x1, x2).expect("same q");
    let (group, gens) = crate::abgrp::assemble_cyclic(
        pieces,
        |a, b| a.add(b).expect("same endpoints"),
        |c, m| m.scale(c),
        || zero.clone(),
    );
    Ok(HomSpace {
        group,
        hom_ff,
        hom_tt,
        ext_tf,
        gens,
        source: x1.clone(),
        target: x2.clone(),
    })
}

/// `Ext^1(x1, x2)` with labeled blocks.
pub struct Ext1Space {
    pub group: FgAbGroup,
    pub ext_ff: FgAbGroup,
    pub hom_ft: FgAbGroup,
    pub ext_tt: FgAbGroup,
}

pub fn ext1_space(x1: &HeartObject, x2: &HeartObject) -> Result<Ext1Space, HeartError> {
    if x1.q() != x2.q() {
        return Err(HeartError::PrimeSetMismatch);
    }
    let ext_ff = ext_group(x1.f(), x2.f()).group;
    let hom_ft = hom_group(x1.f(), x2.t()).group;
    let ext_tt = ext_group(x1.t(), x2.t()).group;
    let group = ext_ff.direct_sum(&hom_ft).direct_sum(&ext_tt);
    Ok(Ext1Space { group, ext_ff, hom_ft, ext_tt })
}

/// The coprimality facts proving that the only candidate block of `Ext^2`
/// vanishes: the torsion of `f1` avoids the primes of `Q`, the order of
/// `t2` is supported on them.
pub struct CoprimalityCertificate {
    /// `(d, e, gcd(d, e))` over torsion invariant factors `d` of `f1` and
    /// `e` of `t2`.
    pub gcds: Vec<(BigUint, BigUint, BigUint)>,
}

impl CoprimalityCertificate {
    pub fn holds(&self) -> bool {
        self.gcds.iter().all(|(_, _, g)| g.is_one())
    }
}

/// `Ext^2(x1, x2)`: always zero, returned with the block that could have
/// been nonzero and the certificate that kills it.
pub struct Ext2Space {
    pub group: FgAbGroup,
    pub candidate_block: FgAbGroup,
    pub certificate: CoprimalityCertificate,
}

pub fn ext2_space(x1: &HeartObject, x2: &HeartObject) -> Result<Ext2Space, HeartError> {
    if x1.q() != x2.q() {
        return Err(HeartError::PrimeSetMismatch);
    }
    let candidate_block = ext_group(x1.f(), x2.t()).group;
    let mut gcds = Vec::new();
    for d in x1.f().torsion() {
        for e in x2.t().torsion() {
            gcds.push((d.clone(), e.clone(), d.gcd(e)));
        }
    }
    Ok(Ext2Space {
        group: candidate_block.clone(),
        candidate_block,
        certificate: CoprimalityCertificate { gcds },
    })
}
