#pragma once

#include <functional>
#include <limits>
#include <map>
#include <string>

#include "blowcurv/complex_tensor.hpp"

namespace blowcurv {

/// A local Kahler metric given by its component matrix as a function of chart
/// coordinates. Models are immutable after construction and eval is pure, so
/// concurrent evaluation is safe.
struct MetricModel {
  int dim = 0;
  std::string name;
  std::map<std::string, double> params;
  std::function<ComplexMatrix(const Direction&)> eval;

  /// Largest |z| a finite-difference stencil may reach. Chart-local models
  /// use 0.5 to stay away from chart boundaries.
  double domain_radius = std::numeric_limits<double>::infinity();
};

/// Evaluate the model and verify positive definiteness, throwing a
/// std::runtime_error that names the offending point on failure.
ComplexMatrix evaluate_checked(const MetricModel& model, const Direction& z);

/// tau(a, b-bar) = <a, b-bar> - a_n conj(b_n): the standard inner product
/// pulled back through the projection onto the first n-1 coordinates.
/// Semipositive, with tau(a, a-bar) = 0 exactly when a is proportional to e_n.
Complex tau(const Direction& a, const Direction& b);

/// The same form with explicit dimension, exposing the frame components
/// tau_{jk} = delta_{jk} for j,k < n-1 (0-based) and 0 otherwise.
struct TauForm {
  int n = 0;

  Complex operator()(const Direction& a, const Direction& b) const;
  double entry(int j, int k) const;
};

/// Base-metric family in normal coordinates centered at the blown-up point:
/// Kahler potential |x|^2 - (c/4)|x_n|^4, i.e. the identity except for
/// g_{nn-bar}(x) = 1 - c|x_n|^2. First derivatives vanish at 0 and the
/// holomorphic sectional curvature in the e_n direction at 0 equals c; every
/// other curvature component vanishes there.
MetricModel base_metric(int n, double c);

/// Fubini-Study metric on the affine chart of m-dimensional projective space,
/// potential log(1 + |y|^2). Identity at y = 0, constant holomorphic
/// sectional curvature 2.
MetricModel fubini_study(int m);

/// Chart of the blowup of C^n at 0 near a point of the exceptional divisor:
/// w = (y_1, ..., y_{n-1}, s) maps to the ambient pair (x, y) with
/// x = (y_1 s, ..., y_{n-1} s, s). The image satisfies x_j y_k = x_k y_j
/// (with y_n = 1) identically.
Eigen::VectorXcd chart_embedding(const Eigen::VectorXcd& w);

/// Holomorphic Jacobian of chart_embedding, (2n-1) x n. Its columns at w = 0
/// are the frame fields: column j < n-1 is the pure y_j direction and column
/// n-1 is e_n.
Eigen::MatrixXcd chart_jacobian(const Eigen::VectorXcd& w);

/// Ambient product metric base(x) (+) t * FS(y) on C^{2n-1}.
MetricModel product_metric(const MetricModel& base, double t);

/// Restriction of the ambient product metric to the blowup chart:
/// g(w) = J^T G(x(w), y(w)) conj(J) with J = chart_jacobian(w). At w = 0 this
/// is exactly diag(t, ..., t, 1) in the chart frame.
MetricModel induced_blowup_metric(const MetricModel& base, double t);

struct BlowupChart {
  int n = 0;
  double t = 0.0;
  double c = 0.0;  // base holomorphic sectional curvature in the e_n direction
  MetricModel induced;
};

/// Blowup chart over the standard base family. Throws std::invalid_argument
/// for n < 2 or non-positive t.
BlowupChart blowup_metric(int n, double t, double c);

}  // namespace blowcurv
