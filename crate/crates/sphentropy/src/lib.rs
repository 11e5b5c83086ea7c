//! Spherical-harmonic analysis of fields sampled on the sphere, with an
//! entropy-based rule for picking the reconstruction order.
//!
//! The pieces, bottom to top:
//!
//! * [`legendre`] — Legendre polynomials and associated functions by a
//!   direct Rodrigues-derived route and by degree recurrences, plus the
//!   recurrence scalars (`a_l`/`b_l` filter, normalization-ratio
//!   `alpha/beta/gamma`) the rest of the crate reuses.
//! * [`basis`] — complex spherical harmonics, pointwise or as a full
//!   pyramid per point (the recursive ladder), or as a nodes-by-harmonics
//!   matrix.
//! * [`grid`] — Gauss-Legendre and equiangular sampling grids with
//!   quadrature weights summing to the sphere area.
//! * [`transform`] — analysis (field to coefficients), synthesis
//!   (coefficients to field at a truncation order), surface reconstruction,
//!   residual norms.
//! * [`entropy`] — level energies, the spherical-harmonics entropy SHE(J),
//!   and automatic order selection with stabilization/flowchart stopping
//!   rules.
//! * [`shapes`] — reproducible synthetic test shapes.
//! * [`io`] — CSV/JSON readers and writers for fields, coefficient
//!   pyramids, spectra, SHE curves and selection reports.
//!
//! Conventions: complex basis with the Condon-Shortley phase carried by
//! both the normalization constant and the associated Legendre function
//! (their product is sign-free for `m >= 0`), canonical l-major coefficient
//! ordering with `m` ascending from `-l` to `l`, and 64-bit floats
//! throughout the public API. Degrees through `l = 64` are supported by
//! both evaluation routes.

mod dd;
pub mod error;

pub mod basis;
pub mod entropy;
pub mod grid;
pub mod io;
pub mod legendre;
pub mod shapes;
pub mod transform;

pub use basis::{
    basis_matrix, basis_matrix_with_budget, evaluate_basis, normalization_constant, sh_direct,
    sh_recursive_ladder, BasisEvaluation, BasisMatrix, SphericalPoint, Strategy,
};
pub use entropy::{
    detail_energy, level_spectrum, select_order, she, she_curve, LevelSpectrum, LogBase,
    OrderSelectionReport, SelectionCriterion, SheCurve, SheOptions,
};
pub use error::{Error, Result};
pub use grid::{equiangular_grid, gauss_grid, GridKind, SphereGrid};
pub use legendre::{
    assoc_legendre_direct, assoc_legendre_recursive, bi_filter, legendre,
    recurrence_coefficients, BiFilter, DegreeOrder, RecurrenceCoefficients,
};
pub use shapes::{generate, ShapeKind, ShapeSpec};
pub use transform::{
    analyze, coefficient_count, real_ab_coefficients, reconstruct_surface, residual_norm,
    synthesize, CoefficientPyramid, SampledSphericalField,
};
