//! Tilting object verification: projective dimension at most one, no
//! self-extensions, joint vanishing of Hom and Ext detects zero, and
//! finite generation over the endomorphism ring.

use super::spaces::{ext1_space, ext2_space, hom_space};
use super::{HeartError, HeartObject};
use crate::abgrp::FgAbGroup;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Per-condition outcome with witness-level evidence.
pub struct ConditionReport {
    pub passed: bool,
    pub evidence: Vec<String>,
}

pub struct TiltingReport {
    /// pd <= 1: `Ext^2(t0, w) = 0` for all witnesses, with the structural
    /// coprimality certificate.
    pub cond1: ConditionReport,
    /// No self-extensions: `Ext^1(t0, t0) = 0`.
    pub cond2: ConditionReport,
    /// `Hom(t0, w) = 0 = Ext^1(t0, w)` implies `w = 0`, over the witnesses.
    pub cond3: ConditionReport,
    /// Hom and Ext finitely generated over `End(t0)`; certified
    /// structurally when `End(t0) = Z` generated by the identity.
    pub cond4: ConditionReport,
    pub end_group: FgAbGroup,
}

impl TiltingReport {
    pub fn passed(&self) -> bool {
        self.cond1.passed && self.cond2.passed && self.cond3.passed && self.cond4.passed
    }
}

pub fn verify_tilting_object(
    t0: &HeartObject,
    witnesses: &[HeartObject],
) -> Result<TiltingReport, HeartError> {
    let mut cond1 = ConditionReport { passed: true, evidence: Vec::new() };
    for w in witnesses {
        let e2 = ext2_space(t0, w)?;
        let ok = e2.group.is_zero() && e2.certificate.holds();
        cond1.passed &= ok;
        cond1.evidence.push(format!(
            "Ext^2({t0}, {w}) = {} [coprimality certificate: {}]",
            e2.group,
            if e2.certificate.holds() { "holds" } else { "fails" }
        ));
    }

    let self_ext = ext1_space(t0, t0)?;
    let cond2 = ConditionReport {
        passed: self_ext.group.is_zero(),
        evidence: vec![format!("Ext^1({t0}, {t0}) = {}", self_ext.group)],
    };

    let mut cond3 = ConditionReport { passed: true, evidence: Vec::new() };
    for w in witnesses {
        let hom = hom_space(t0, w)?.group;
        let ext = ext1_space(t0, w)?.group;
        let both_vanish = hom.is_zero() && ext.is_zero();
        let ok = !both_vanish || w.is_zero();
        cond3.passed &= ok;
        cond3.evidence.push(format!(
            "witness {w}: Hom = {hom}, Ext^1 = {ext}{}",
            if ok { "" } else { "  <- nonzero witness annihilated by both" }
        ));
    }

    // End(t0) = Z generated by the identity means every Hom/Ext group is a
    // finitely generated module over it through the Z-structure.
    let end = hom_space(t0, t0)?;
    let end_is_z = end.group == FgAbGroup::free(1);
    let id_generates = if end_is_z && !end.gens.is_empty() {
        identity_coordinate_gcd_is_one(t0, &end)?
    } else {
        false
    };
    let cond4 = ConditionReport {
        passed: end_is_z && id_generates,
        evidence: vec![format!(
            "End(t0) = {}{}",
            end.group,
            if end_is_z && id_generates {
                "; generated by the identity, so Hom and Ext^1 are finitely generated End-modules"
            } else {
                "; structural certificate requires End = Z generated by the identity"
            }
        )],
    };

    Ok(TiltingReport { cond1, cond2, cond3, cond4, end_group: end.group })
}

/// Expresses the identity in the canonical generators of `End(t0)` and
/// checks that its coordinates are unimodular.
fn identity_coordinate_gcd_is_one(
    t0: &HeartObject,
    end: &super::spaces::HomSpace,
) -> Result<bool, HeartError> {
    let id = super::HeartMorphism::identity(t0);
    // End = Z here, so the identity is c * gen for a single generator; the
    // generator difference must vanish for c = +-1.
    let gen = &end.gens[0];
    for c in [BigInt::from(1), BigInt::from(-1)] {
        if gen.scale(&c) == id {
            return Ok(true);
        }
    }
    // General unimodularity probe over small coefficients.
    for c in -4i64..=4 {
        if gen.scale(&BigInt::from(c)) == id {
            return Ok(BigInt::from(c).gcd(&BigInt::zero()).is_one());
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heart::HeartObject;
    use crate::torsion::PrimeSet;

    fn obj(q: &PrimeSet, f: &str, t: &str) -> HeartObject {
        HeartObject::new(q.clone(), f.parse().unwrap(), t.parse().unwrap()).unwrap()
    }

    /// Witness family covering all block shapes.
    fn witnesses(q: &PrimeSet) -> Vec<HeartObject> {
        vec![
            HeartObject::zero(q.clone()),
            obj(q, "Z", "0"),
            obj(q, "Z/3", "0"),
            obj(q, "0", "Z/2"),
            obj(q, "0", "Z/8"),
            obj(q, "Z + Z/3", "Z/4"),
            obj(q, "Z^2", "Z/2 + Z/4"),
        ]
    }

    #[test]
    fn tilting_object_passes_all_conditions() {
        let q = PrimeSet::new([2]).unwrap();
        let t = HeartObject::tilting(q.clone());
        let report = verify_tilting_object(&t, &witnesses(&q)).unwrap();
        assert!(report.cond1.passed, "{:?}", report.cond1.evidence);
        assert!(report.cond2.passed, "{:?}", report.cond2.evidence);
        assert!(report.cond3.passed, "{:?}", report.cond3.evidence);
        assert!(report.cond4.passed, "{:?}", report.cond4.evidence);
        assert_eq!(report.end_group, FgAbGroup::free(1));
    }

    #[test]
    fn pure_torsion_object_fails_condition_three() {
        // t0 = (0, Z/2) with q = {2,3}: the witness (0, Z/3) has vanishing
        // Hom and Ext against t0 but is nonzero.
        let q = PrimeSet::new([2, 3]).unwrap();
        let t0 = obj(&q, "0", "Z/2");
        let w = vec![
            HeartObject::zero(q.clone()),
            obj(&q, "Z", "0"),
            obj(&q, "0", "Z/2"),
            obj(&q, "0", "Z/3"),
            obj(&q, "Z + Z/5", "Z/6"),
        ];
        let report = verify_tilting_object(&t0, &w).unwrap();
        assert!(!report.cond3.passed);
    }

    #[test]
    fn zero_object_fails_condition_three() {
        let q = PrimeSet::new([2]).unwrap();
        let t0 = HeartObject::zero(q.clone());
        let report = verify_tilting_object(&t0, &witnesses(&q)).unwrap();
        assert!(!report.cond3.passed);
    }
}
