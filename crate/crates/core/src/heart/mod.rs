//! The tilted heart of `(X_Q, Y_Q)`: a fully computable abelian category.
//!
//! Objects live in the derived category of mod-Z, concentrated in degrees
//! -1 and 0 with degree -1 homology in `Y_Q` and degree 0 homology in
//! `X_Q`. Because the base is hereditary, the induced torsion pair on the
//! heart splits, so every object decomposes as `f[1] + t` and is stored as
//! the pair `(f, t)`. A morphism is a triple `(a, b, e)` with
//! `a : f1 -> f2`, `b : t1 -> t2` and `e` a class in `Ext^1(t1, f2)`;
//! this is the closed form of the left-fraction calculus over Z.

mod cone;
mod spaces;
mod tilting;

pub use cone::{canonical_ses, cokernel, embed_into_tilt, is_ses, kernel, HeartSes};
pub use spaces::{ext1_space, ext2_space, hom_space, CoprimalityCertificate, Ext1Space, Ext2Space, HomSpace};
pub use tilting::{verify_tilting_object, ConditionReport, TiltingReport};

use crate::abgrp::{ExtElement, FgAbGroup, GroupHom};
use crate::torsion::{PrimeSet, TorsionPairZ};
use num_bigint::BigInt;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HeartError {
    #[error("degree -1 part {0} is not in the torsion-free class Y_Q")]
    NotTorsionFree(String),
    #[error("degree 0 part {0} is not in the torsion class X_Q")]
    NotTorsion(String),
    #[error("prime sets differ")]
    PrimeSetMismatch,
    #[error("endpoint mismatch: {0}")]
    Endpoints(String),
    #[error("hom space is infinite; cannot enumerate")]
    InfiniteHomSpace,
}

/// An object `f[1] + t` of the tilted heart.
#[derive(Clone, PartialEq, Eq)]
pub struct HeartObject {
    q: PrimeSet,
    f: FgAbGroup,
    t: FgAbGroup,
}

impl HeartObject {
    pub fn new(q: PrimeSet, f: FgAbGroup, t: FgAbGroup) -> Result<Self, HeartError> {
        let pair = TorsionPairZ::new(q.clone());
        if !pair.in_torsion_free_class(&f) {
            return Err(HeartError::NotTorsionFree(f.to_string()));
        }
        if !pair.in_torsion_class(&t) {
            return Err(HeartError::NotTorsion(t.to_string()));
        }
        Ok(HeartObject { q, f, t })
    }

    /// The tilting object `Z[1]`.
    pub fn tilting(q: PrimeSet) -> Self {
        HeartObject { q, f: FgAbGroup::free(1), t: FgAbGroup::zero() }
    }

    pub fn zero(q: PrimeSet) -> Self {
        HeartObject { q, f: FgAbGroup::zero(), t: FgAbGroup::zero() }
    }

    pub fn q(&self) -> &PrimeSet {
        &self.q
    }

    pub fn f(&self) -> &FgAbGroup {
        &self.f
    }

    pub fn t(&self) -> &FgAbGroup {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_zero() && self.t.is_zero()
    }

    pub fn direct_sum(&self, other: &HeartObject) -> Result<HeartObject, HeartError> {
        if self.q != other.q {
            return Err(HeartError::PrimeSetMismatch);
        }
        Ok(HeartObject {
            q: self.q.clone(),
            f: self.f.direct_sum(&other.f),
            t: self.t.direct_sum(&other.t),
        })
    }
}

impl fmt::Display for HeartObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.t)
    }
}

impl fmt::Debug for HeartObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f, self.t)
    }
}

/// A morphism `(a, b, e)` between heart objects.
#[derive(Clone, PartialEq, Eq)]
pub struct HeartMorphism {
    source: HeartObject,
    target: HeartObject,
    a: GroupHom,
    b: GroupHom,
    e: ExtElement,
}

impl HeartMorphism {
    pub fn new(
        source: HeartObject,
        target: HeartObject,
        a: GroupHom,
        b: GroupHom,
        e: ExtElement,
    ) -> Result<Self, HeartError> {
        if source.q != target.q {
            return Err(HeartError::PrimeSetMismatch);
        }
        let ok = a.source() == &source.f
            && a.target() == &target.f
            && b.source() == &source.t
            && b.target() == &target.t
            && e.t() == &source.t
            && e.f() == &target.f;
        if !ok {
            return Err(HeartError::Endpoints(format!(
                "components do not match {source} -> {target}"
            )));
        }
        Ok(HeartMorphism { source, target, a, b, e })
    }

    pub fn identity(x: &HeartObject) -> Self {
        HeartMorphism {
            source: x.clone(),
            target: x.clone(),
            a: GroupHom::identity(&x.f),
            b: GroupHom::identity(&x.t),
            e: ExtElement::zero(&x.t, &x.f),
        }
    }

    pub fn zero(source: &HeartObject, target: &HeartObject) -> Result<Self, HeartError> {
        if source.q != target.q {
            return Err(HeartError::PrimeSetMismatch);
        }
        Ok(HeartMorphism {
            source: source.clone(),
            target: target.clone(),
            a: GroupHom::zero(&source.f, &target.f),
            b: GroupHom::zero(&source.t, &target.t),
            e: ExtElement::zero(&source.t, &target.f),
        })
    }

    /// Multiplication by an integer as an endomorphism.
    pub fn mul_by(x: &HeartObject, n: &BigInt) -> Self {
        HeartMorphism {
            source: x.clone(),
            target: x.clone(),
            a: GroupHom::mul_by(&x.f, n),
            b: GroupHom::mul_by(&x.t, n),
            e: ExtElement::zero(&x.t, &x.f),
        }
    }

    pub fn source(&self) -> &HeartObject {
        &self.source
    }

    pub fn target(&self) -> &HeartObject {
        &self.target
    }

    pub fn a(&self) -> &GroupHom {
        &self.a
    }

    pub fn b(&self) -> &GroupHom {
        &self.b
    }

    pub fn e(&self) -> &ExtElement {
        &self.e
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.e.is_zero()
    }

    pub fn add(&self, other: &HeartMorphism) -> Result<HeartMorphism, HeartError> {
        if self.source != other.source || self.target != other.target {
            return Err(HeartError::Endpoints("add: mismatched endpoints".into()));
        }
        Ok(HeartMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            a: self.a.add(&other.a).expect("validated"),
            b: self.b.add(&other.b).expect("validated"),
            e: self.e.add(&other.e).expect("validated"),
        })
    }

    pub fn neg(&self) -> HeartMorphism {
        HeartMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            a: self.a.neg(),
            b: self.b.neg(),
            e: self.e.neg(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> HeartMorphism {
        HeartMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            a: self.a.scale(c),
            b: self.b.scale(c),
            e: self.e.scale(c),
        }
    }

    /// `self . inner`: the Ext component is
    /// `pushout(e_inner, a_self) + pullback(e_self, b_inner)`; the would-be
    /// `Ext * Ext` term lands in `Ext^2 = 0`.
    pub fn compose(&self, inner: &HeartMorphism) -> Result<HeartMorphism, HeartError> {
        if inner.target != self.source {
            return Err(HeartError::Endpoints(format!(
                "compose: inner target {} != outer source {}",
                inner.target, self.source
            )));
        }
        let a = self.a.compose(&inner.a).expect("validated");
        let b = self.b.compose(&inner.b).expect("validated");
        let e = inner
            .e
            .pushout(&self.a)
            .expect("validated")
            .add(&self.e.pullback(&inner.b).expect("validated"))
            .expect("validated");
        Ok(HeartMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            a,
            b,
            e,
        })
    }
}

impl fmt::Debug for HeartMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "HeartMorphism {} -> {} [a: {} | b: {} | e: {:?}]",
            self.source,
            self.target,
            self.a.matrix(),
            self.b.matrix(),
            self.e
        )
    }
}
