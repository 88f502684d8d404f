//! Exact homological computations with finitely generated abelian groups:
//! torsion pairs in mod-Z, the tilted hearts they produce, an almost
//! hereditary detector for finite Hom-quiver fixtures, and a complete
//! model of a non-artinian almost hereditary triangular matrix ring.

pub mod abgrp;
pub mod ahdetect;
pub mod exring73;
pub mod heart;
pub mod matrix;
pub mod selftest;
pub mod torsion;
