#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace blowcurv {

using Complex = std::complex<double>;

/// Hermitian metric components in a coordinate frame. Entry (j,k) is the
/// pairing of the j-th holomorphic with the k-th antiholomorphic basis field,
/// so a metric matrix satisfies g = g^H and is positive definite.
using ComplexMatrix = Eigen::MatrixXcd;

/// Coefficient vector of a tangent vector in the working frame.
using Direction = Eigen::VectorXcd;

/// Dense rank-4 tensor holding curvature components R(xi_j, xi_k-bar, xi_l,
/// xi_m-bar). Dimensions stay small (n <= 8 in every supported scenario), so
/// the n^4 storage is trivial and no sparsity is attempted.
class Rank4Tensor {
 public:
  explicit Rank4Tensor(int n);

  int dim() const { return n_; }

  Complex& operator()(int j, int k, int l, int m) {
    return entries_[index(j, k, l, m)];
  }
  const Complex& operator()(int j, int k, int l, int m) const {
    return entries_[index(j, k, l, m)];
  }

  const std::vector<Complex>& flat() const { return entries_; }
  std::vector<Complex>& flat() { return entries_; }

  Rank4Tensor& operator+=(const Rank4Tensor& other);
  Rank4Tensor& operator*=(double s);

 private:
  std::size_t index(int j, int k, int l, int m) const;

  int n_;
  std::vector<Complex> entries_;
};

/// a*x + b*y, componentwise. Dimensions must agree.
Rank4Tensor tensor_combination(double a, const Rank4Tensor& x, double b,
                               const Rank4Tensor& y);

double max_abs(const Rank4Tensor& t);
double max_abs_diff(const Rank4Tensor& x, const Rank4Tensor& y);

/// Multilinear evaluation sum_{j,k,l,m} a_j conj(b_k) c_l conj(d_m) T(j,k,l,m).
/// Throws std::invalid_argument on dimension mismatch.
Complex contract4(const Rank4Tensor& t, const Direction& a, const Direction& b,
                  const Direction& c, const Direction& d);

/// Maximum absolute violation of each Kahler curvature symmetry. The checks
/// report rather than throw so callers can log diagnostics.
struct SymmetryReport {
  double pair_first = 0.0;   // T(j,k,l,m) vs T(l,k,j,m)
  double pair_second = 0.0;  // T(j,k,l,m) vs T(j,m,l,k)
  double conjugate = 0.0;    // T(j,k,l,m) vs conj(T(k,j,m,l))

  double worst() const;
  bool pass(double tol) const { return worst() <= tol; }
};

SymmetryReport check_kahler_symmetries(const Rank4Tensor& t);

bool is_hermitian(const ComplexMatrix& m, double tol = 1e-10);

/// Inverse of a Hermitian positive definite matrix via its eigendecomposition.
/// Throws std::runtime_error naming the offending eigenvalue when the matrix
/// is singular or not positive definite, std::invalid_argument when it is not
/// Hermitian to begin with.
ComplexMatrix hermitian_inverse(const ComplexMatrix& m);

/// h(a, b-bar) = sum_{j,k} a_j conj(b_k) g(j,k).
Complex metric_pairing(const ComplexMatrix& g, const Direction& a,
                       const Direction& b);

/// Squared length of v in the metric g; real up to rounding by Hermiticity.
double metric_norm_sq(const ComplexMatrix& g, const Direction& v);

}  // namespace blowcurv
