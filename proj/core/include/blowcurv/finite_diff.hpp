#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <vector>

#include "blowcurv/complex_tensor.hpp"

namespace blowcurv {

/// Finite-difference configuration. step is the grid spacing on the
/// underlying real coordinates, order the central-stencil order (2 or 4),
/// richardson enables one extrapolation pass against step/2.
struct DiffScheme {
  double step = 2e-2;
  int order = 4;
  bool richardson = true;
};

/// Throws std::invalid_argument unless step is in [1e-4, 1e-1] and order
/// is 2 or 4.
void validate_scheme(const DiffScheme& s);

/// Matrix-valued map over real coordinates with exact-point memoization.
/// Stencil nodes recur across derivative pairs, stencil orders and step
/// halvings, so caching by the bit pattern of the coordinates is reliable
/// and cuts evaluations severalfold.
class CachedMatrixFn {
 public:
  using Fn = std::function<ComplexMatrix(const Eigen::VectorXd&)>;

  explicit CachedMatrixFn(Fn fn) : fn_(std::move(fn)) {}

  const ComplexMatrix& operator()(const Eigen::VectorXd& u);
  std::size_t evaluations() const { return evaluations_; }

 private:
  Fn fn_;
  std::map<std::vector<double>, ComplexMatrix> cache_;
  std::size_t evaluations_ = 0;
};

/// Value, gradient and full (symmetric) Hessian of a matrix-valued map of d
/// real variables, by central differences of the given order at uniform
/// step h. Mixed derivatives compose two first-derivative stencils.
struct MatrixJet {
  ComplexMatrix value;
  std::vector<ComplexMatrix> grad;
  std::vector<std::vector<ComplexMatrix>> hess;
};

MatrixJet matrix_jet(CachedMatrixFn& f, const Eigen::VectorXd& u0, double h,
                     int order);

/// Gradient only (used where second derivatives are not needed).
std::vector<ComplexMatrix> matrix_gradient(CachedMatrixFn& f,
                                           const Eigen::VectorXd& u0, double h,
                                           int order);

}  // namespace blowcurv
