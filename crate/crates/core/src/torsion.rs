//! Prime-set torsion pairs `(X_Q, Y_Q)` in mod-Z.
//!
//! For a finite set of primes `Q`, the torsion class `X_Q` consists of the
//! finite groups whose orders have prime factors only in `Q`, and `Y_Q` of
//! the groups whose torsion part has no prime factor in `Q`. A finite
//! explicit set suffices: any computation on finitely many finitely
//! generated groups only interrogates finitely many primes.

use crate::abgrp::{ext_group, FgAbGroup, GroupHom};
use crate::matrix::IntMatrix;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("{0} is not prime")]
pub struct NotPrime(pub u64);

/// A finite explicit set of primes, serialized as a sorted list.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<u64>", into = "Vec<u64>")]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self, NotPrime> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(NotPrime(p));
            }
            set.insert(p);
        }
        Ok(PrimeSet { primes: set })
    }

    pub fn empty() -> Self {
        PrimeSet { primes: BTreeSet::new() }
    }

    /// All primes up to and including `n`.
    pub fn primes_up_to(n: u64) -> Self {
        PrimeSet {
            primes: (2..=n).filter(|&p| is_prime(p)).collect(),
        }
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// Splits `n = a * b` with `a` supported on this prime set and `b`
    /// coprime to it.
    pub fn split_order(&self, n: &BigUint) -> (BigUint, BigUint) {
        let mut a = BigUint::one();
        let mut b = n.clone();
        for p in &self.primes {
            let p = BigUint::from(*p);
            while (&b % &p).is_zero() {
                b /= &p;
                a *= &p;
            }
        }
        (a, b)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl fmt::Debug for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

impl From<PrimeSet> for Vec<u64> {
    fn from(q: PrimeSet) -> Vec<u64> {
        q.primes.into_iter().collect()
    }
}

impl TryFrom<Vec<u64>> for PrimeSet {
    type Error = NotPrime;
    fn try_from(v: Vec<u64>) -> Result<Self, NotPrime> {
        PrimeSet::new(v)
    }
}

/// The torsion pair `(X_Q, Y_Q)` determined by a prime set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionPairZ {
    q: PrimeSet,
}

/// The canonical short exact sequence `0 -> t -> m -> f -> 0` with
/// `t` in `X_Q` and `f` in `Y_Q`.
pub struct CanonicalSes {
    pub t: FgAbGroup,
    pub incl: GroupHom,
    pub f: FgAbGroup,
    pub proj: GroupHom,
}

/// Splitness certificate for one ordered pair of sample groups: the Ext
/// group `Ext^1(f-part of A, t-part of B)` together with the coprimality
/// facts forcing it to vanish.
pub struct SplitCertificate {
    pub f_part: FgAbGroup,
    pub t_part: FgAbGroup,
    pub ext: FgAbGroup,
    /// `(d, e, gcd(d, e))` for each torsion invariant factor `d` of the
    /// f-part and `e` of the t-part.
    pub gcds: Vec<(BigUint, BigUint, BigUint)>,
}

impl SplitCertificate {
    pub fn holds(&self) -> bool {
        self.ext.is_zero() && self.gcds.iter().all(|(_, _, g)| g.is_one())
    }
}

impl TorsionPairZ {
    pub fn new(q: PrimeSet) -> Self {
        TorsionPairZ { q }
    }

    pub fn q(&self) -> &PrimeSet {
        &self.q
    }

    /// Is `m` in the torsion class `X_Q`?
    pub fn in_torsion_class(&self, m: &FgAbGroup) -> bool {
        m.rank() == 0
            && m.torsion().iter().all(|d| {
                let (_, coprime) = self.q.split_order(d);
                coprime.is_one()
            })
    }

    /// Is `m` in the torsion-free class `Y_Q`?
    pub fn in_torsion_free_class(&self, m: &FgAbGroup) -> bool {
        m.torsion().iter().all(|d| {
            let (q_part, _) = self.q.split_order(d);
            q_part.is_one()
        })
    }

    /// The largest subgroup of `m` lying in `X_Q` (the Q-primary part),
    /// with its inclusion.
    pub fn torsion_part(&self, m: &FgAbGroup) -> (FgAbGroup, GroupHom) {
        let mut orders = Vec::new();
        for d in m.torsion() {
            let (a, _) = self.q.split_order(d);
            if !a.is_one() {
                orders.push(a);
            }
        }
        // Divisibility passes to primary parts, so this is already canonical.
        let t = FgAbGroup::new(0, orders);
        let mut matrix = IntMatrix::zeros(m.num_gens(), t.num_gens());
        let mut col = 0;
        for (j, d) in m.torsion().iter().enumerate() {
            let (a, b) = self.q.split_order(d);
            if !a.is_one() {
                matrix[(m.rank() + j, col)] = BigInt::from(b);
                col += 1;
            }
        }
        let incl = GroupHom::new(t.clone(), m.clone(), matrix).expect("Q-part inclusion");
        (t, incl)
    }

    /// Canonical short exact sequence `0 -> t -> m -> f -> 0`.
    pub fn canonical_ses(&self, m: &FgAbGroup) -> CanonicalSes {
        let (t, incl) = self.torsion_part(m);
        let mut f_orders: Vec<Option<BigUint>> = std::iter::repeat(None).take(m.rank()).collect();
        let mut quotient_order = Vec::new();
        for d in m.torsion() {
            let (_, b) = self.q.split_order(d);
            quotient_order.push(b.clone());
            if !b.is_one() {
                f_orders.push(Some(b));
            }
        }
        let f = FgAbGroup::from_orders(f_orders);
        // The coprime parts inherit the divisibility chain, so the quotient
        // coordinates line up generator by generator.
        let mut matrix = IntMatrix::zeros(f.num_gens(), m.num_gens());
        for i in 0..m.rank() {
            matrix[(i, i)] = BigInt::one();
        }
        let mut row = f.rank();
        for (j, b) in quotient_order.iter().enumerate() {
            if !b.is_one() {
                matrix[(row, m.rank() + j)] = BigInt::one();
                row += 1;
            }
        }
        let proj = GroupHom::new(m.clone(), f.clone(), matrix).expect("Q-free quotient");
        CanonicalSes { t, incl, f, proj }
    }

    /// Verifies splitness on a sample of ordered pairs: for each `(a, b)`,
    /// `Ext^1(f-part of a, t-part of b)` vanishes, with the gcd argument as
    /// certificate. Over Z this holds for every prime set.
    pub fn is_split(&self, sample: &[(FgAbGroup, FgAbGroup)]) -> (bool, Vec<SplitCertificate>) {
        let mut certs = Vec::with_capacity(sample.len());
        for (a, b) in sample {
            let f_part = self.canonical_ses(a).f;
            let (t_part, _) = self.torsion_part(b);
            let ext = ext_group(&f_part, &t_part).group;
            let mut gcds = Vec::new();
            for d in f_part.torsion() {
                for e in t_part.torsion() {
                    gcds.push((d.clone(), e.clone(), d.gcd(e)));
                }
            }
            certs.push(SplitCertificate { f_part, t_part, ext, gcds });
        }
        (certs.iter().all(SplitCertificate::holds), certs)
    }

    /// `Y_Q` is cotilting since the ring itself is torsion-free; returns the
    /// witness `Z` together with the membership verdict.
    pub fn is_cotilting(&self) -> (bool, FgAbGroup) {
        let witness = FgAbGroup::free(1);
        (self.in_torsion_free_class(&witness), witness)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abgrp::{hom_group, hom_kernel_cokernel_image};

    fn grp(s: &str) -> FgAbGroup {
        s.parse().unwrap()
    }

    fn pair(primes: &[u64]) -> TorsionPairZ {
        TorsionPairZ::new(PrimeSet::new(primes.iter().copied()).unwrap())
    }

    /// Brute force oracle: the multiset of element orders of the Q-power
    /// torsion elements determines the primary part.
    fn q_element_orders(q: &PrimeSet, m: &FgAbGroup) -> Vec<BigUint> {
        assert!(m.is_finite());
        let mut orders: Vec<BigUint> = m
            .elements()
            .map(|x| m.elem_order(&x).unwrap())
            .filter(|o| q.split_order(o).1.is_one())
            .collect();
        orders.sort();
        orders
    }

    #[test]
    fn torsion_part_examples() {
        let tp = pair(&[2]);
        let m = grp("Z + Z/12");
        let (t, incl) = tp.torsion_part(&m);
        assert_eq!(t, grp("Z/4"));
        assert!(incl.is_mono());

        // Brute force: elements of 2-power order in Z/12 form the Z/4 copy.
        let finite = grp("Z/12");
        let (t, _) = tp.torsion_part(&finite);
        let mut expected: Vec<BigUint> = t.elements().map(|x| t.elem_order(&x).unwrap()).collect();
        expected.sort();
        assert_eq!(q_element_orders(tp.q(), &finite), expected);

        let (t, _) = pair(&[]).torsion_part(&m);
        assert!(t.is_zero());
        let (t, _) = pair(&[2, 3]).torsion_part(&grp("Z/12"));
        assert_eq!(t, grp("Z/12"));
    }

    #[test]
    fn canonical_ses_examples() {
        let tp = pair(&[2]);
        let ses = tp.canonical_ses(&grp("Z + Z/12"));
        assert_eq!(ses.t, grp("Z/4"));
        assert_eq!(ses.f, grp("Z + Z/3"));
        assert!(tp.in_torsion_class(&ses.t));
        assert!(tp.in_torsion_free_class(&ses.f));
        // Exactness.
        assert!(ses.incl.is_mono());
        assert!(ses.proj.is_epi());
        assert!(ses.proj.compose(&ses.incl).unwrap().is_zero());
        let (_, coker_of_incl) = ses.incl.cokernel();
        let (_, ker_of_proj) = ses.proj.kernel();
        assert!(coker_of_incl.compose(&ker_of_proj).unwrap().is_zero());

        let ses = pair(&[]).canonical_ses(&grp("Z + Z/12"));
        assert!(ses.t.is_zero());
        assert_eq!(ses.f, grp("Z + Z/12"));

        let ses = pair(&[2, 3]).canonical_ses(&grp("Z^2 + Z/12"));
        assert_eq!(ses.t, grp("Z/12"));
        assert_eq!(ses.f, grp("Z^2"));
    }

    #[test]
    fn split_examples() {
        let tp = pair(&[2]);
        let pool = [grp("Z"), grp("Z/3"), grp("Z/4"), grp("Z + Z/12")];
        let mut sample = Vec::new();
        for a in &pool {
            for b in &pool {
                sample.push((a.clone(), b.clone()));
            }
        }
        let (ok, certs) = tp.is_split(&sample);
        assert!(ok);
        assert!(certs.iter().all(|c| c.ext.is_zero()));

        let (ok, _) = pair(&[]).is_split(&sample);
        assert!(ok);
    }

    #[test]
    fn cotilting_examples() {
        for primes in [&[][..], &[2][..], &[2, 3, 5, 7, 11, 13][..]] {
            let (ok, witness) = pair(primes).is_cotilting();
            assert!(ok);
            assert_eq!(witness, grp("Z"));
        }
    }

    #[test]
    fn idempotence_and_orthogonality() {
        let tp = pair(&[2, 5]);
        let m = grp("Z + Z/6 + Z/60");
        let (t, _) = tp.torsion_part(&m);
        let (tt, _) = tp.torsion_part(&t);
        assert_eq!(t, tt);
        let ses = tp.canonical_ses(&m);
        let (tf, _) = tp.torsion_part(&ses.f);
        assert!(tf.is_zero());
        // Hom orthogonality X_Q -> Y_Q.
        assert!(hom_group(&ses.t, &ses.f).group.is_zero());
    }

    #[test]
    fn functoriality_of_torsion_part() {
        let tp = pair(&[2]);
        let m = grp("Z/12");
        let n = grp("Z/8");
        let h = GroupHom::new(m.clone(), n.clone(), IntMatrix::from_rows_i64(&[vec![2]])).unwrap();
        let (tm, incl_m) = tp.torsion_part(&m);
        let (_, incl_n) = tp.torsion_part(&n);
        // h restricted to Q-parts factors through the Q-part of the target.
        let restricted = h.compose(&incl_m).unwrap();
        let factored = restricted.factor_through_mono(&incl_n);
        assert_eq!(incl_n.compose(&factored).unwrap(), restricted);
        assert_eq!(*factored.source(), tm);
    }

    #[test]
    fn ses_kernel_is_torsion_part() {
        let tp = pair(&[3]);
        let m = grp("Z/9 + Z/18");
        let ses = tp.canonical_ses(&m);
        let parts = hom_kernel_cokernel_image(&ses.proj);
        assert_eq!(parts.kernel, ses.t);
    }

    #[test]
    fn prime_set_validation() {
        assert!(PrimeSet::new([4]).is_err());
        assert!(PrimeSet::new([2, 3, 13]).is_ok());
        assert_eq!(
            PrimeSet::primes_up_to(13).iter().collect::<Vec<_>>(),
            vec![2, 3, 5, 7, 11, 13]
        );
    }
}
