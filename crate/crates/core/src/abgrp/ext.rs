//! Classes in `Ext^1(T, F)` in cyclic block coordinates.
//!
//! Against the square free presentation `0 -> Z^k -> Z^k -> tors(T) -> 0`
//! with diagonal `d_1, ..., d_k`, a class is a tuple of elements of
//! `F / d_i F`, one per torsion invariant factor of `T`. The free part of
//! `T` contributes nothing. [`realize_extension`] anchors the semantics:
//! the class `(c_i)` presents the middle term as
//! `(F + free lifts x_i) / (d_i x_i - c_i)`.

use super::group::{presented_group, FgAbGroup};
use super::hom::{assemble_cyclic, GroupHom, HomError};
use crate::matrix::IntMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq)]
pub struct ExtElement {
    t: FgAbGroup,
    f: FgAbGroup,
    /// One vector over the generators of `f` per torsion generator of `t`,
    /// reduced modulo `d_i * f`.
    coords: Vec<Vec<BigInt>>,
}

impl ExtElement {
    pub fn new(t: FgAbGroup, f: FgAbGroup, coords: Vec<Vec<BigInt>>) -> Self {
        assert_eq!(coords.len(), t.torsion().len(), "one coordinate per torsion generator");
        let coords = coords
            .iter()
            .enumerate()
            .map(|(i, c)| reduce_mod_scaled(&f, &t.torsion()[i], c))
            .collect();
        ExtElement { t, f, coords }
    }

    pub fn zero(t: &FgAbGroup, f: &FgAbGroup) -> Self {
        let coords = vec![f.zero_element(); t.torsion().len()];
        ExtElement { t: t.clone(), f: f.clone(), coords }
    }

    pub fn t(&self) -> &FgAbGroup {
        &self.t
    }

    pub fn f(&self) -> &FgAbGroup {
        &self.f
    }

    pub fn coords(&self) -> &[Vec<BigInt>] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.iter().all(Zero::is_zero))
    }

    /// Baer sum; endpoints must agree.
    pub fn add(&self, other: &ExtElement) -> Result<ExtElement, HomError> {
        if self.t != other.t || self.f != other.f {
            return Err(HomError::Endpoints("ext add: mismatched endpoints".into()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(ExtElement::new(self.t.clone(), self.f.clone(), coords))
    }

    pub fn neg(&self) -> ExtElement {
        let coords = self
            .coords
            .iter()
            .map(|c| c.iter().map(|x| -x.clone()).collect())
            .collect();
        ExtElement::new(self.t.clone(), self.f.clone(), coords)
    }

    pub fn scale(&self, c: &BigInt) -> ExtElement {
        let coords = self
            .coords
            .iter()
            .map(|v| v.iter().map(|x| c * x).collect())
            .collect();
        ExtElement::new(self.t.clone(), self.f.clone(), coords)
    }

    /// Covariant action: applies `a : f -> f'` coordinate-wise.
    pub fn pushout(&self, a: &GroupHom) -> Result<ExtElement, HomError> {
        if *a.source() != self.f {
            return Err(HomError::Endpoints("pushout: map must start at the kernel term".into()));
        }
        let coords = self.coords.iter().map(|c| a.apply(c)).collect();
        Ok(ExtElement::new(self.t.clone(), a.target().clone(), coords))
    }

    /// Contravariant action along `b : t' -> t`. With `b` written as
    /// `b(y'_m) = sum_i B[i][m] y_i` on torsion generators, the class pulls
    /// back to `c'_m = sum_i (d'_m B[i][m] / d_i) c_i`; the integrality of the
    /// coefficients is exactly the well-definedness of `b`. Pinned against
    /// the fiber product oracle in the tests.
    pub fn pullback(&self, b: &GroupHom) -> Result<ExtElement, HomError> {
        if *b.target() != self.t {
            return Err(HomError::Endpoints("pullback: map must end at the quotient term".into()));
        }
        let t_new = b.source().clone();
        let mut coords = Vec::with_capacity(t_new.torsion().len());
        for (m, d_new) in t_new.torsion().iter().enumerate() {
            let col = m + t_new.rank();
            let d_new_int = BigInt::from(d_new.clone());
            let mut acc = self.f.zero_element();
            for (i, d_old) in self.t.torsion().iter().enumerate() {
                let row = i + self.t.rank();
                let num = &d_new_int * &b.matrix()[(row, col)];
                let (q, r) = num.div_rem(&BigInt::from(d_old.clone()));
                assert!(r.is_zero(), "pullback coefficient must be integral for a well-defined map");
                if q.is_zero() {
                    continue;
                }
                for (k, c) in self.coords[i].iter().enumerate() {
                    acc[k] += &q * c;
                }
            }
            coords.push(acc);
        }
        Ok(ExtElement::new(t_new, self.f.clone(), coords))
    }
}

fn reduce_mod_scaled(f: &FgAbGroup, d: &BigUint, coords: &[BigInt]) -> Vec<BigInt> {
    // Reduce an element of f modulo d*f: free coordinates mod d, torsion
    // coordinate j mod gcd(d, e_j).
    assert_eq!(coords.len(), f.num_gens());
    let d_int = BigInt::from(d.clone());
    coords
        .iter()
        .enumerate()
        .map(|(j, c)| match f.gen_order(j) {
            None => c.mod_floor(&d_int),
            Some(e) => {
                let g = BigInt::from(d.gcd(e));
                c.mod_floor(&g)
            }
        })
        .collect()
}

impl fmt::Debug for ExtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ext({}, {})[", self.t, self.f)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = c.iter().map(BigInt::to_string).collect();
            write!(f, "{}", parts.join(","))?;
        }
        write!(f, "]")
    }
}

/// `Ext^1(t, f)` in normal form together with generator classes and the
/// coordinate system (the `(t, f)` block layout of [`ExtElement`]).
pub struct ExtGroup {
    pub group: FgAbGroup,
    pub t: FgAbGroup,
    pub f: FgAbGroup,
    pub gens: Vec<ExtElement>,
}

pub fn ext_group(t: &FgAbGroup, f: &FgAbGroup) -> ExtGroup {
    // Ext^1(t, f) = sum_i f / d_i f over the torsion invariant factors of t.
    let mut pieces: Vec<(Option<BigUint>, ExtElement)> = Vec::new();
    for (i, d) in t.torsion().iter().enumerate() {
        for j in 0..f.num_gens() {
            let (order, coeff) = match f.gen_order(j) {
                None => (d.clone(), BigInt::one()),
                Some(e) => {
                    let g = d.gcd(e);
                    if g.is_one() {
                        continue;
                    }
                    (g.clone(), BigInt::from(e / &g))
                }
            };
            let mut coords = vec![f.zero_element(); t.torsion().len()];
            coords[i][j] = coeff;
            pieces.push((Some(order), ExtElement::new(t.clone(), f.clone(), coords)));
        }
    }
    let (group, gens) = assemble_cyclic(
        pieces,
        |x, y| x.add(y).expect("piece endpoints agree"),
        |c, x| x.scale(c),
        || ExtElement::zero(t, f),
    );
    ExtGroup { group, t: t.clone(), f: f.clone(), gens }
}

/// A short exact sequence `0 -> f -> middle -> t -> 0`.
pub struct Realization {
    pub middle: FgAbGroup,
    pub incl: GroupHom,
    pub proj: GroupHom,
}

/// Builds the extension with connecting class `e`.
pub fn realize_extension(e: &ExtElement) -> Realization {
    let f = e.f();
    let t = e.t();
    let kf = f.num_gens();
    let kt = t.torsion().len();
    let ambient = kf + kt + t.rank();
    // Relations: those of f, then d_i * x_i - c_i per lift generator.
    let rel = IntMatrix::from_fn(ambient, f.torsion().len() + kt, |i, j| {
        if j < f.torsion().len() {
            if i == f.rank() + j {
                BigInt::from(f.torsion()[j].clone())
            } else {
                BigInt::zero()
            }
        } else {
            let lift = j - f.torsion().len();
            if i < kf {
                -e.coords()[lift][i].clone()
            } else if i == kf + lift {
                BigInt::from(t.torsion()[lift].clone())
            } else {
                BigInt::zero()
            }
        }
    });
    let pres = presented_group(&rel);
    let incl_ambient = IntMatrix::from_fn(ambient, kf, |i, j| {
        if i == j {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let incl = GroupHom::new_unchecked(f.clone(), pres.group.clone(), pres.proj.mul(&incl_ambient));
    // Ambient projection to t: x_i -> torsion generator i, trailing free
    // lifts -> free generators, f -> 0.
    let ambient_to_t = IntMatrix::from_fn(t.num_gens(), ambient, |i, j| {
        let hit = if i < t.rank() {
            j == kf + kt + i
        } else {
            j == kf + (i - t.rank())
        };
        if hit {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let proj = GroupHom::new_unchecked(pres.group.clone(), t.clone(), ambient_to_t.mul(&pres.lift));
    Realization { middle: pres.group, incl, proj }
}

/// Reads the connecting class back off a short exact sequence
/// `0 -> f -> middle -> t -> 0`. Independent oracle for the coordinate
/// conventions of [`ExtElement`].
pub fn extension_class(r: &Realization) -> ExtElement {
    let t = r.proj.target().clone();
    let f = r.incl.source().clone();
    let mut coords = Vec::with_capacity(t.torsion().len());
    for (i, d) in t.torsion().iter().enumerate() {
        let lift = r
            .proj
            .preimage(&t.gen_element(t.rank() + i))
            .expect("projection of a short exact sequence is onto");
        let scaled = r.middle.elem_scale(&BigInt::from(d.clone()), &lift);
        let c = r
            .incl
            .preimage(&scaled)
            .expect("d * lift lies in the kernel of the projection");
        coords.push(c);
    }
    ExtElement::new(t, f, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::hom::{hom_kernel_cokernel_image, sum_with_maps};

    fn grp(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn ext_group_examples() {
        assert_eq!(ext_group(&grp("Z/6"), &grp("Z/4")).group, grp("Z/2"));
        assert_eq!(ext_group(&grp("Z"), &grp("Z + Z/12")).group, FgAbGroup::zero());
        assert_eq!(ext_group(&grp("Z/5"), &grp("Z")).group, grp("Z/5"));
    }

    #[test]
    fn realize_zero_class_splits() {
        let t = grp("Z + Z/4");
        let f = grp("Z/6");
        let r = realize_extension(&ExtElement::zero(&t, &f));
        assert_eq!(r.middle, f.direct_sum(&t));
        assert!(r.incl.is_mono());
        assert!(r.proj.is_epi());
        assert!(extension_class(&r).is_zero());
    }

    #[test]
    fn realize_examples() {
        // Nonzero class in Ext^1(Z/5, Z) realizes as Z with index 5 image.
        let e = ExtElement::new(grp("Z/5"), grp("Z"), vec![vec![BigInt::one()]]);
        let r = realize_extension(&e);
        assert_eq!(r.middle, grp("Z"));
        let parts = hom_kernel_cokernel_image(&r.incl);
        assert_eq!(parts.cokernel, grp("Z/5"));
        assert_eq!(extension_class(&r), e);

        // Class 1 in Ext^1(Z/5, Z/5) gives Z/25.
        let e = ExtElement::new(grp("Z/5"), grp("Z/5"), vec![vec![BigInt::one()]]);
        let r = realize_extension(&e);
        assert_eq!(r.middle, grp("Z/25"));
        assert_eq!(extension_class(&r), e);
    }

    #[test]
    fn distinct_classes_distinct_middles() {
        // Over (Z/2, Z/2): class 0 gives Z/2+Z/2, class 1 gives Z/4.
        let zero = ExtElement::zero(&grp("Z/2"), &grp("Z/2"));
        let one = ExtElement::new(grp("Z/2"), grp("Z/2"), vec![vec![BigInt::one()]]);
        assert_eq!(realize_extension(&zero).middle, grp("Z/2 + Z/2"));
        assert_eq!(realize_extension(&one).middle, grp("Z/4"));
    }

    #[test]
    fn exactness_of_realization() {
        let e = ExtElement::new(
            grp("Z/4 + Z/8"),
            grp("Z + Z/6"),
            vec![
                vec![BigInt::from(3), BigInt::from(1)],
                vec![BigInt::from(1), BigInt::from(5)],
            ],
        );
        let r = realize_extension(&e);
        assert!(r.incl.is_mono());
        assert!(r.proj.is_epi());
        // image(incl) = kernel(proj): both inclusions compose to zero with
        // the other side's structural map.
        assert!(r.proj.compose(&r.incl).unwrap().is_zero());
        let (_, coker_proj) = r.incl.cokernel();
        let (_, ker_incl) = r.proj.kernel();
        assert!(coker_proj.compose(&ker_incl).unwrap().is_zero());
        assert_eq!(extension_class(&r), e);
    }

    /// Pushout oracle: realize, push the middle term out along `a`, and read
    /// the class back off.
    fn pushout_via_realization(e: &ExtElement, a: &GroupHom) -> ExtElement {
        let r = realize_extension(e);
        let sum = sum_with_maps(&[&r.middle, a.target()]);
        // Quotient by the antidiagonal copy of f.
        let anti = sum.incls[0]
            .compose(&r.incl)
            .unwrap()
            .add(&sum.incls[1].compose(a).unwrap().neg())
            .unwrap();
        let (pushed, proj_to_pushed) = anti.cokernel();
        let incl = proj_to_pushed.compose(&sum.incls[1]).unwrap();
        // Induced projection to t kills the f' summand.
        let to_t = r.proj.compose(&sum.projs[0]).unwrap();
        let proj = to_t.factor_through_epi_for_test(&proj_to_pushed);
        extension_class(&Realization { middle: pushed, incl, proj })
    }

    impl GroupHom {
        /// Test-only division by an epimorphism via generator lifts.
        fn factor_through_epi_for_test(&self, epi: &GroupHom) -> GroupHom {
            assert_eq!(epi.source(), self.source());
            let target = epi.target().clone();
            let cols: Vec<Vec<BigInt>> = (0..target.num_gens())
                .map(|k| {
                    let lift = epi.preimage(&target.gen_element(k)).expect("epi");
                    self.apply(&lift)
                })
                .collect();
            let m = IntMatrix::from_fn(self.target().num_gens(), target.num_gens(), |i, j| {
                cols[j][i].clone()
            });
            GroupHom::new(target, self.target().clone(), m).expect("induced map well defined")
        }
    }

    #[test]
    fn pushout_matches_oracle() {
        // Nonzero class in Ext^1(Z/5, Z) pushed along Z -> Z/5 is nonzero.
        let e = ExtElement::new(grp("Z/5"), grp("Z"), vec![vec![BigInt::one()]]);
        let red = GroupHom::new(grp("Z"), grp("Z/5"), IntMatrix::from_rows_i64(&[vec![1]])).unwrap();
        let pushed = e.pushout(&red).unwrap();
        assert!(!pushed.is_zero());
        assert_eq!(pushed, pushout_via_realization(&e, &red));
        // Middle terms distinguish the classes: Z vs Z/25.
        assert_eq!(realize_extension(&pushed).middle, grp("Z/25"));

        let e2 = ExtElement::new(
            grp("Z/4"),
            grp("Z + Z/2"),
            vec![vec![BigInt::one(), BigInt::one()]],
        );
        let a = GroupHom::new(
            grp("Z + Z/2"),
            grp("Z/8"),
            IntMatrix::from_rows_i64(&[vec![3, 4]]),
        )
        .unwrap();
        assert_eq!(e2.pushout(&a).unwrap(), pushout_via_realization(&e2, &a));
    }

    #[test]
    fn pushout_along_zero_is_zero() {
        let e = ExtElement::new(grp("Z/6"), grp("Z/4"), vec![vec![BigInt::one()]]);
        let z = GroupHom::zero(&grp("Z/4"), &grp("Z/8"));
        assert!(e.pushout(&z).unwrap().is_zero());
    }

    /// Pullback oracle: fiber product of the realization with `b`.
    fn pullback_via_realization(e: &ExtElement, b: &GroupHom) -> ExtElement {
        let r = realize_extension(e);
        let sum = sum_with_maps(&[&r.middle, b.source()]);
        let diff = r
            .proj
            .compose(&sum.projs[0])
            .unwrap()
            .add(&b.compose(&sum.projs[1]).unwrap().neg())
            .unwrap();
        let (fiber, incl_fiber) = diff.kernel();
        let incl = sum.incls[0]
            .compose(&r.incl)
            .unwrap()
            .factor_through_mono(&incl_fiber);
        let proj = sum.projs[1].compose(&incl_fiber).unwrap();
        extension_class(&Realization { middle: fiber, incl, proj })
    }

    #[test]
    fn pullback_matches_oracle() {
        let e = ExtElement::new(grp("Z/4"), grp("Z/2"), vec![vec![BigInt::one()]]);
        // Z/2 -> Z/4, 1 -> 2.
        let b = GroupHom::new(grp("Z/2"), grp("Z/4"), IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        let pulled = e.pullback(&b).unwrap();
        assert_eq!(pulled, pullback_via_realization(&e, &b));

        let e2 = ExtElement::new(
            grp("Z/2 + Z/8"),
            grp("Z + Z/4"),
            vec![
                vec![BigInt::from(1), BigInt::from(0)],
                vec![BigInt::from(2), BigInt::from(3)],
            ],
        );
        let b2 = GroupHom::new(
            grp("Z/4"),
            grp("Z/2 + Z/8"),
            IntMatrix::from_rows_i64(&[vec![1], vec![2]]),
        )
        .unwrap();
        assert_eq!(e2.pullback(&b2).unwrap(), pullback_via_realization(&e2, &b2));
    }

    #[test]
    fn pullback_along_identity() {
        let e = ExtElement::new(grp("Z/6"), grp("Z/4"), vec![vec![BigInt::one()]]);
        let id = GroupHom::identity(&grp("Z/6"));
        assert_eq!(e.pullback(&id).unwrap(), e);
    }
}
