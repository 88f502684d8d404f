//! Homomorphisms of finitely generated abelian groups, stored as matrices
//! against canonical generators with entries reduced modulo the target
//! generator orders.

use super::group::{presented_group, FgAbGroup};
use crate::matrix::IntMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum HomError {
    #[error("matrix does not define a homomorphism: column {col} violates the order of generator {col} of the source")]
    IllDefined { col: usize },
    #[error("matrix has shape {got_rows}x{got_cols}, expected {want_rows}x{want_cols}")]
    Shape {
        got_rows: usize,
        got_cols: usize,
        want_rows: usize,
        want_cols: usize,
    },
    #[error("endpoint mismatch: {0}")]
    Endpoints(String),
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Validates well-definedness: for a source generator of order `d`, the
    /// image column must be annihilated by `d` in the target.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Result<Self, HomError> {
        if matrix.rows() != target.num_gens() || matrix.cols() != source.num_gens() {
            return Err(HomError::Shape {
                got_rows: matrix.rows(),
                got_cols: matrix.cols(),
                want_rows: target.num_gens(),
                want_cols: source.num_gens(),
            });
        }
        for j in 0..source.num_gens() {
            if let Some(d) = source.gen_order(j) {
                let d = BigInt::from(d.clone());
                for i in 0..target.num_gens() {
                    let v = &d * &matrix[(i, j)];
                    let ok = match target.gen_order(i) {
                        None => v.is_zero(),
                        Some(e) => (&v % BigInt::from(e.clone())).is_zero(),
                    };
                    if !ok {
                        return Err(HomError::IllDefined { col: j });
                    }
                }
            }
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    /// Skips the well-definedness check; the matrix is still reduced.
    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: IntMatrix) -> Self {
        let matrix = reduce_matrix(&target, matrix);
        GroupHom { source, target, matrix }
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        GroupHom::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.num_gens()))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        GroupHom::new_unchecked(
            source.clone(),
            target.clone(),
            IntMatrix::zeros(target.num_gens(), source.num_gens()),
        )
    }

    /// Multiplication by `n` as an endomorphism.
    pub fn mul_by(g: &FgAbGroup, n: &BigInt) -> Self {
        GroupHom::new_unchecked(g.clone(), g.clone(), IntMatrix::identity(g.num_gens()).scale(n))
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn apply(&self, coords: &[BigInt]) -> Vec<BigInt> {
        self.target.reduce(&self.matrix.mul_vec(coords))
    }

    /// `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &GroupHom) -> Result<GroupHom, HomError> {
        if inner.target != self.source {
            return Err(HomError::Endpoints(format!(
                "compose: inner target {} != outer source {}",
                inner.target, self.source
            )));
        }
        Ok(GroupHom::new_unchecked(
            inner.source.clone(),
            self.target.clone(),
            self.matrix.mul(&inner.matrix),
        ))
    }

    pub fn add(&self, other: &GroupHom) -> Result<GroupHom, HomError> {
        if self.source != other.source || self.target != other.target {
            return Err(HomError::Endpoints("add: mismatched endpoints".into()));
        }
        Ok(GroupHom::new_unchecked(
            self.source.clone(),
            self.target.clone(),
            self.matrix.add(&other.matrix),
        ))
    }

    pub fn neg(&self) -> GroupHom {
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &BigInt) -> GroupHom {
        GroupHom::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// Some preimage of `y`, reduced in the source, or `None` if `y` is not
    /// in the image.
    pub fn preimage(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let aug = self.matrix.hstack(&self.target.relation_matrix());
        let sol = aug.solve(y)?;
        Some(self.source.reduce(&sol[..self.source.num_gens()]))
    }

    /// Kernel subgroup with its inclusion.
    pub fn kernel(&self) -> (FgAbGroup, GroupHom) {
        let aug = self.matrix.hstack(&self.target.relation_matrix());
        let nullity = aug.kernel_basis();
        let x_part = nullity.submatrix_rows(&(0..self.source.num_gens()).collect::<Vec<_>>());
        // Basis of the solution lattice in the source's ambient Z^n.
        let basis = x_part.column_space_basis();
        let rels = basis
            .solve_matrix(&self.source.relation_matrix())
            .expect("source relations lie in the kernel lattice");
        let pres = presented_group(&rels);
        let incl_matrix = basis.mul(&pres.lift);
        let incl = GroupHom::new_unchecked(pres.group.clone(), self.source.clone(), incl_matrix);
        (pres.group, incl)
    }

    /// Image subgroup of the target with its inclusion.
    pub fn image(&self) -> (FgAbGroup, GroupHom) {
        let combined = self.matrix.hstack(&self.target.relation_matrix());
        let basis = combined.column_space_basis();
        let rels = basis
            .solve_matrix(&self.target.relation_matrix())
            .expect("target relations lie in the image lattice");
        let pres = presented_group(&rels);
        let incl_matrix = basis.mul(&pres.lift);
        let incl = GroupHom::new_unchecked(pres.group.clone(), self.target.clone(), incl_matrix);
        (pres.group, incl)
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> (FgAbGroup, GroupHom) {
        let combined = self.matrix.hstack(&self.target.relation_matrix());
        let pres = presented_group(&combined);
        let proj = GroupHom::new_unchecked(self.target.clone(), pres.group.clone(), pres.proj);
        (pres.group, proj)
    }

    pub fn is_mono(&self) -> bool {
        self.kernel().0.is_zero()
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel().0.is_zero()
    }

    /// Factors `self = mono . result` through an injective `mono` whose image
    /// contains the image of `self`. Panics if the factorization fails.
    pub fn factor_through_mono(&self, mono: &GroupHom) -> GroupHom {
        assert_eq!(mono.target, self.target, "factor_through_mono endpoints");
        let cols: Vec<Vec<BigInt>> = (0..self.source.num_gens())
            .map(|j| {
                mono.preimage(&self.target.reduce(&self.matrix.col(j)))
                    .expect("image must lie in the mono's image")
            })
            .collect();
        let m = IntMatrix::from_fn(mono.source.num_gens(), self.source.num_gens(), |i, j| {
            cols[j][i].clone()
        });
        GroupHom::new_unchecked(self.source.clone(), mono.source.clone(), m)
    }
}

fn reduce_matrix(target: &FgAbGroup, m: IntMatrix) -> IntMatrix {
    IntMatrix::from_fn(m.rows(), m.cols(), |i, j| match target.gen_order(i) {
        None => m[(i, j)].clone(),
        Some(d) => m[(i, j)].mod_floor(&BigInt::from(d.clone())),
    })
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self.matrix, self.source, self.target)
    }
}

/// Exact sequence data `0 -> ker -> source -> target -> coker -> 0`
/// around a homomorphism, with `im = source/ker` included in the target.
pub struct KernelImageCokernel {
    pub kernel: FgAbGroup,
    pub kernel_incl: GroupHom,
    pub image: FgAbGroup,
    pub image_incl: GroupHom,
    pub cokernel: FgAbGroup,
    pub cokernel_proj: GroupHom,
}

pub fn hom_kernel_cokernel_image(h: &GroupHom) -> KernelImageCokernel {
    let (kernel, kernel_incl) = h.kernel();
    let (image, image_incl) = h.image();
    let (cokernel, cokernel_proj) = h.cokernel();
    KernelImageCokernel {
        kernel,
        kernel_incl,
        image,
        image_incl,
        cokernel,
        cokernel_proj,
    }
}

/// Direct sum of several groups in normal form, together with the canonical
/// inclusions and projections of the summands.
pub struct SumWithMaps {
    pub group: FgAbGroup,
    pub incls: Vec<GroupHom>,
    pub projs: Vec<GroupHom>,
}

pub fn sum_with_maps(parts: &[&FgAbGroup]) -> SumWithMaps {
    let mut rel = IntMatrix::zeros(0, 0);
    for p in parts {
        rel = rel.block_diag(&p.relation_matrix());
    }
    let pres = presented_group(&rel);
    let mut incls = Vec::new();
    let mut projs = Vec::new();
    let mut offset = 0;
    let ambient = rel.rows();
    for p in parts {
        let n = p.num_gens();
        let incl_ambient = IntMatrix::from_fn(ambient, n, |i, j| {
            if i == offset + j {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        });
        let proj_ambient = incl_ambient.transpose();
        incls.push(GroupHom::new_unchecked(
            (*p).clone(),
            pres.group.clone(),
            pres.proj.mul(&incl_ambient),
        ));
        projs.push(GroupHom::new_unchecked(
            pres.group.clone(),
            (*p).clone(),
            proj_ambient.mul(&pres.lift),
        ));
        offset += n;
    }
    SumWithMaps { group: pres.group, incls, projs }
}

/// `Hom(a, b)` in normal form with generator homomorphisms realizing the
/// canonical decomposition.
pub struct HomGroup {
    pub group: FgAbGroup,
    pub gens: Vec<GroupHom>,
}

pub fn hom_group(a: &FgAbGroup, b: &FgAbGroup) -> HomGroup {
    // Cyclic block pieces: Hom(Z, C) = C, Hom(Z/m, Z) = 0,
    // Hom(Z/m, Z/n) = Z/gcd(m, n).
    let mut pieces: Vec<(Option<BigUint>, GroupHom)> = Vec::new();
    for j in 0..a.num_gens() {
        for i in 0..b.num_gens() {
            let (order, coeff) = match (a.gen_order(j), b.gen_order(i)) {
                (None, None) => (None, BigInt::one()),
                (None, Some(e)) => (Some(e.clone()), BigInt::one()),
                (Some(_), None) => continue,
                (Some(d), Some(e)) => {
                    let g = d.gcd(e);
                    if g.is_one() {
                        continue;
                    }
                    (Some(g.clone()), BigInt::from(e / &g))
                }
            };
            let mut m = IntMatrix::zeros(b.num_gens(), a.num_gens());
            m[(i, j)] = coeff;
            pieces.push((order, GroupHom::new_unchecked(a.clone(), b.clone(), m)));
        }
    }
    let (group, gens) = assemble_cyclic(
        pieces,
        |x, y| x.add(y).expect("piece endpoints agree"),
        |c, x| x.scale(c),
        || GroupHom::zero(a, b),
    );
    HomGroup { group, gens }
}

/// Recombines cyclic pieces `(order, generator)` into invariant factor form,
/// returning generators for the canonical decomposition as linear
/// combinations of the piece generators.
pub(crate) fn assemble_cyclic<T: Clone>(
    pieces: Vec<(Option<BigUint>, T)>,
    add: impl Fn(&T, &T) -> T,
    scale: impl Fn(&BigInt, &T) -> T,
    zero: impl Fn() -> T,
) -> (FgAbGroup, Vec<T>) {
    let rel = IntMatrix::from_fn(
        pieces.len(),
        pieces.iter().filter(|(o, _)| o.is_some()).count(),
        |_, _| BigInt::zero(),
    );
    // Relation matrix: one column d_i * e_i per torsion piece.
    let mut rel = rel;
    let mut col = 0;
    for (i, (o, _)) in pieces.iter().enumerate() {
        if let Some(d) = o {
            rel[(i, col)] = BigInt::from(d.clone());
            col += 1;
        }
    }
    let pres = presented_group(&rel);
    let gens = (0..pres.group.num_gens())
        .map(|k| {
            let mut acc = zero();
            for (i, (_, t)) in pieces.iter().enumerate() {
                let c = &pres.lift[(i, k)];
                if !c.is_zero() {
                    acc = add(&acc, &scale(c, t));
                }
            }
            acc
        })
        .collect();
    (pres.group, gens)
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BruteForceError {
    #[error("brute force enumeration requires finite groups")]
    InfiniteGroup,
    #[error("group order {order} exceeds the enumeration bound {bound}")]
    BoundExceeded { order: BigUint, bound: u64 },
}

pub const DEFAULT_BRUTE_FORCE_BOUND: u64 = 10_000;

/// Exhaustively counts homomorphisms `a -> b` by enumerating candidate
/// generator images and checking the order constraints. Test oracle for
/// [`hom_group`]; deliberately avoids the gcd block formula.
pub fn brute_force_hom_count(
    a: &FgAbGroup,
    b: &FgAbGroup,
    bound: Option<u64>,
) -> Result<BigUint, BruteForceError> {
    let bound = bound.unwrap_or(DEFAULT_BRUTE_FORCE_BOUND);
    for g in [a, b] {
        let order = g.order().ok_or(BruteForceError::InfiniteGroup)?;
        if order > BigUint::from(bound) {
            return Err(BruteForceError::BoundExceeded { order, bound });
        }
    }
    let mut count = BigUint::one();
    for j in 0..a.num_gens() {
        let d = BigInt::from(a.gen_order(j).expect("finite group").clone());
        let mut annihilated = 0u64;
        for x in b.elements() {
            if b.elem_is_zero(&b.elem_scale(&d, &x)) {
                annihilated += 1;
            }
        }
        count *= BigUint::from(annihilated);
    }
    Ok(count)
}

/// Ext^n over Z vanishes for n >= 2; the hereditary base is what makes the
/// closed forms in the heart module valid.
pub fn higher_ext_group(_t: &FgAbGroup, _f: &FgAbGroup) -> FgAbGroup {
    FgAbGroup::zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn grp(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    #[test]
    fn hom_group_examples() {
        assert_eq!(hom_group(&grp("Z/6"), &grp("Z/4")).group, grp("Z/2"));
        let m = grp("Z + Z/12");
        assert_eq!(hom_group(&grp("Z"), &m).group, m);
        assert_eq!(hom_group(&grp("Z/5"), &grp("Z")).group, FgAbGroup::zero());
    }

    #[test]
    fn hom_group_gens_realize_decomposition() {
        let a = grp("Z/6 + Z/12");
        let b = grp("Z/4 + Z/8");
        let hg = hom_group(&a, &b);
        assert_eq!(hg.gens.len(), hg.group.num_gens());
        for (k, h) in hg.gens.iter().enumerate() {
            let d = hg.group.gen_order(k).unwrap();
            assert!(h.scale(&BigInt::from(d.clone())).is_zero());
            // No proper divisor of the invariant factor kills the generator.
            for (p, _) in crate::abgrp::factorize(d) {
                let q = BigInt::from(d / &p);
                assert!(!h.scale(&q).is_zero(), "generator order is exactly {d}");
            }
        }
    }

    #[test]
    fn kernel_image_cokernel_examples() {
        let z = grp("Z");
        let double = GroupHom::mul_by(&z, &BigInt::from(2));
        let parts = hom_kernel_cokernel_image(&double);
        assert!(parts.kernel.is_zero());
        assert_eq!(parts.image, z);
        assert_eq!(parts.cokernel, grp("Z/2"));

        let z4 = grp("Z/4");
        let double = GroupHom::mul_by(&z4, &BigInt::from(2));
        let parts = hom_kernel_cokernel_image(&double);
        assert_eq!(parts.kernel, grp("Z/2"));
        assert_eq!(parts.image, grp("Z/2"));
        assert_eq!(parts.cokernel, grp("Z/2"));
        // Structure maps compose correctly: incl is mono, proj is epi.
        assert!(parts.kernel_incl.is_mono());
        assert!(parts.cokernel_proj.is_epi());

        let m = grp("Z + Z/12");
        let n = grp("Z/5");
        let zero = GroupHom::zero(&m, &n);
        let parts = hom_kernel_cokernel_image(&zero);
        assert_eq!(parts.kernel, m);
        assert!(parts.image.is_zero());
        assert_eq!(parts.cokernel, n);
    }

    #[test]
    fn preimage_and_factor() {
        let z = grp("Z");
        let z2 = grp("Z/2");
        let red = GroupHom::new(z.clone(), z2.clone(), IntMatrix::from_rows_i64(&[vec![1]])).unwrap();
        let pre = red.preimage(&[BigInt::from(1)]).unwrap();
        assert_eq!(red.apply(&pre), vec![BigInt::from(1)]);
        assert!(GroupHom::mul_by(&z2, &BigInt::from(2)).is_zero());
    }

    #[test]
    fn ill_defined_matrix_rejected() {
        // Z/2 -> Z cannot send the generator to 1.
        let err = GroupHom::new(grp("Z/2"), grp("Z"), IntMatrix::from_rows_i64(&[vec![1]]));
        assert_eq!(err.unwrap_err(), HomError::IllDefined { col: 0 });
    }

    #[test]
    fn brute_force_matches_gcd() {
        for m in 2u64..=12 {
            for n in 2u64..=12 {
                let count = brute_force_hom_count(&FgAbGroup::cyclic(m), &FgAbGroup::cyclic(n), None)
                    .unwrap()
                    .to_u64()
                    .unwrap();
                assert_eq!(count, m.gcd(&n), "Hom(Z/{m}, Z/{n})");
            }
        }
        // Zero object admits exactly the zero map.
        assert_eq!(
            brute_force_hom_count(&FgAbGroup::zero(), &grp("Z/6"), None).unwrap(),
            BigUint::one()
        );
        assert_eq!(
            brute_force_hom_count(&grp("Z"), &grp("Z/2"), None).unwrap_err(),
            BruteForceError::InfiniteGroup
        );
    }

    #[test]
    fn sum_with_maps_roundtrip() {
        let a = grp("Z/4");
        let b = grp("Z + Z/6");
        let sum = sum_with_maps(&[&a, &b]);
        assert_eq!(sum.group, a.direct_sum(&b));
        for (incl, proj) in sum.incls.iter().zip(&sum.projs) {
            let round = proj.compose(incl).unwrap();
            assert_eq!(round, GroupHom::identity(incl.source()));
        }
        // Cross projections vanish.
        let cross = sum.projs[0].compose(&sum.incls[1]).unwrap();
        assert!(cross.is_zero());
    }
}
