//! Jet differentials, Wronskians and Nevanlinna functions for holomorphic
//! curves, with exact rational kernels for the algebra and double precision
//! quadrature for the analytic side.

pub mod bounds;
pub mod expr;
pub mod geometry;
pub mod germ;
pub mod jet;
pub mod linalg;
pub mod nevanlinna;
pub mod poly;
pub mod quadrature;
pub mod scalar;
pub mod wronskian;

pub use bounds::{
    decompose_degree, jet_parameters, key_inequality, main_theorem_bound, threshold_vs_stated_bound,
    twist_ratio_limit, BoundsError, Decomposition, JetParameters, ThresholdReport, TwistReport,
};
pub use expr::{parse_poly, parse_qcomplex, parse_rational_function, ParseError};
pub use geometry::{
    area_form_density, default_eps_grid, gauss_map, holomorphy_residual, jet_norm_circle_integral,
    proof_integral_convergence, verify_conformality, yau_integral_divergence, AreaNorm,
    GaussMapCurve, GeometryError, HModel, JetNormSample, ProofIntegralReport, Verdict,
    WeierstrassSurface, YauReport, INCOMPLETE_METRIC_CAVEAT,
};
pub use germ::{evaluate, jet_of, parse_germ, Germ};
pub use jet::{
    JetCoordinate, JetError, JetKind, JetMonomial, JetPolynomial, JetSpace, JetVector,
    Trivialization, Weight,
};
pub use nevanlinna::{
    divisor_of_pullback, fmt_defect, fmt_defect_constant, ldl_product_ratio, ldl_ratio,
    order_function, proximity_function, transcendence_ratio, CircleCurve, DiscDivisor,
    DiscFunction, FmtSample, GermCurve, Hypersurface, NevanlinnaError, ProjectiveCurve, Truncation,
};
pub use poly::{FloatPoly, Poly, RationalFunction};
pub use quadrature::{QuadError, QuadResult, TrapezoidOptions};
pub use scalar::{QComplex, Scalar};
pub use wronskian::{
    build_wronskian, check_general_position, local_log_form, recover_fujimoto_weight,
    HyperplaneArrangement, LocalLogForm, WronskianDifferential, WronskianError,
};
