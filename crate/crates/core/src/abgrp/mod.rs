//! Exact arithmetic of finitely generated abelian groups: normal forms,
//! Hom and Ext groups, kernels and cokernels, extension realization, and
//! brute force oracles.

mod ext;
mod group;
mod hom;

pub use ext::{ext_group, extension_class, realize_extension, ExtElement, ExtGroup, Realization};
pub use group::{cokernel_group, factorize, presented_group, FgAbGroup, GroupParseError, Presentation};
pub use hom::{
    brute_force_hom_count, higher_ext_group, hom_group, hom_kernel_cokernel_image, sum_with_maps,
    BruteForceError, GroupHom, HomError, HomGroup, KernelImageCokernel, SumWithMaps,
    DEFAULT_BRUTE_FORCE_BOUND,
};

pub(crate) use hom::assemble_cyclic;

