#pragma once

#include "blowcurv/finite_diff.hpp"
#include "blowcurv/metric_models.hpp"

namespace blowcurv {

struct CurvatureResult {
  /// Chern curvature components R(xi_j, xi_k-bar, xi_l, xi_m-bar) in the
  /// chart coordinate frame at the evaluation point.
  Rank4Tensor tensor;
  /// Metric at the evaluation point (exact model value, no stencil error).
  ComplexMatrix metric_at_point;
  /// Max componentwise change when the whole computation reruns at step/2.
  double est_error = 0.0;
};

/// Full curvature tensor of a Kahler metric model by central finite
/// differences of the metric components, using the coordinate formula
///
///   R_{jk-bar lm-bar} = -d^2 g_{jk-bar} / dz_l dz-bar_m
///                       + sum_{p,q} g^{pq-bar} (d g_{jq-bar} / dz_l)
///                                              (d g_{pk-bar} / dz-bar_m),
///
/// with signs calibrated so the Fubini-Study metric has holomorphic
/// sectional curvature +2. Holomorphic derivatives are Wirtinger
/// combinations of real-coordinate stencils; the metric components are
/// real-analytic but not holomorphic, so complex-step differentiation does
/// not apply.
///
/// Throws std::domain_error when the stencil would leave the model's chart
/// domain and std::runtime_error when the metric fails positive definiteness
/// at a stencil point.
CurvatureResult chern_curvature(const MetricModel& model, const Direction& z,
                                const DiffScheme& scheme = {});

/// H(v) = R(v, v-bar, v, v-bar) / |v|^4 in the metric at the point. The
/// contraction must be real up to noise; a residual imaginary part above
/// 1e-8 (relative) throws, since it indicates an engine defect.
double holomorphic_sectional_curvature(const CurvatureResult& r,
                                       const Direction& v);

enum class FrameKind { cholesky, eigenvectors };

/// Columns form a g-orthonormal frame: v_i^T g conj(v_j) = delta_{ij}.
/// For diag(t, ..., t, 1) the Cholesky frame is (xi_j / sqrt(t), xi_n).
ComplexMatrix orthonormal_frame(const ComplexMatrix& g, FrameKind kind);

/// r(a, b-bar) = sum_j R(a, b-bar, v_j, v_j-bar) over a g-orthonormal frame.
/// The trace is frame-independent; the kind parameter exists so tests can
/// confirm that.
Complex ricci_tensor(const CurvatureResult& r, const Direction& a,
                     const Direction& b, FrameKind kind = FrameKind::cholesky);

/// Trace of the Ricci tensor over a g-orthonormal frame.
double scalar_curvature(const CurvatureResult& r,
                        FrameKind kind = FrameKind::cholesky);

/// Second fundamental form of the blowup chart inside the ambient product
/// space at the chart origin. Directions are frame coefficients; the result
/// lists the components of sigma(a, g) on the normal frame (e_1, ..., e_{n-1}).
/// The ambient connection coefficients are measured numerically from the
/// product metric (they vanish at the origin, which the measurement confirms
/// rather than assumes).
Eigen::VectorXcd second_fundamental_form(int n, double t, double c,
                                         const Direction& a,
                                         const Direction& g,
                                         const DiffScheme& scheme = {});

/// Precomputes the ambient data once so all n^2 frame pairs share it.
class SigmaOperator {
 public:
  SigmaOperator(int n, double t, double c, const DiffScheme& scheme = {});

  Eigen::VectorXcd operator()(const Direction& a, const Direction& g) const;

 private:
  int n_;
  DiffScheme scheme_;
  Eigen::MatrixXcd jacobian0_;              // chart Jacobian at w = 0
  std::vector<Eigen::MatrixXcd> gamma_;     // gamma_[b](c,a) = Gamma^a_{bc}(0)
};

/// Verifies the Gauss equation at the chart origin: the curvature of the
/// induced metric must equal base pullback + t * Fubini-Study pullback minus
/// the sigma inner-product term, componentwise.
struct GaussCheckReport {
  double max_abs_error = 0.0;
  double induced_est_error = 0.0;
};

GaussCheckReport gauss_check(int n, double t, double c,
                             const DiffScheme& scheme = {});

}  // namespace blowcurv
