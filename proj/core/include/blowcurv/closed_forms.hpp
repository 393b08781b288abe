#pragma once

#include "blowcurv/complex_tensor.hpp"

namespace blowcurv {

/// Parameters of the blowup metric h_t = mu*h + t*b at a point of the
/// exceptional divisor: dimension n >= 2, scale t > 0 of the Fubini-Study
/// summand, and c, the base holomorphic sectional curvature in the e_n
/// direction at the blown-up point (|e_n| = 1 in normal coordinates).
struct BlowupParams {
  int n = 2;
  double t = 0.1;
  double c = 0.0;
};

/// Throws std::invalid_argument for n < 2 or t <= 0.
void validate(const BlowupParams& p);

namespace closed_form {

/// Curvature tensor of h_t at the chart origin, in the frame (xi_1,...,xi_n):
///
///   R(j,k,l,m) = c d_jn d_kn d_ln d_mn
///              + t (tau_jk tau_lm + tau_jm tau_lk)
///              - d_jn d_kn tau_lm - d_jn d_mn tau_lk
///              - d_ln d_kn tau_jm - d_ln d_mn tau_jk,
///
/// where d is the Kronecker delta against the last index and tau_jk is the
/// identity on the first n-1 slots.
Rank4Tensor curvature_tensor(const BlowupParams& p);

/// Holomorphic sectional curvature of h_t at the origin in direction a:
///
///   H(a) = (c |a_n|^4 + 2t tau(a,a)^2 - 4 |a_n|^2 tau(a,a))
///          / (t tau(a,a) + |a_n|^2)^2.
///
/// Invariant under complex rescaling of a; throws on the zero direction.
double hsc(const BlowupParams& p, const Direction& a);

/// Numerator of the HSC quotient on unit directions with |a_n|^2 = x:
/// p_t(x) = c x^2 + 2t(1-x)^2 - 4x(1-x). Endpoints are p_t(0) = 2t and
/// p_t(1) = c. Throws for x outside [0,1]. Unlike the metric operations
/// this accepts t = 0, the limit the negativity argument is about.
double hsc_polynomial(const BlowupParams& p, double x);

struct PolynomialCritical {
  double x = 0.0;
  double value = 0.0;
  bool in_unit_interval = false;
};

/// Critical data used by the sign-threshold analysis:
///   x_t = 2(1-t) / (c + 2t + 4),   p_t(x_t) = 2t - 4(1-t)^2 / (c + 2t + 4).
/// This is the reference convention the threshold t* is defined by; it
/// differs from the exact vertex of hsc_polynomial by an O(t) shift in x.
/// Throws when the denominator degenerates.
PolynomialCritical hsc_polynomial_critical(const BlowupParams& p);

struct NegativityThreshold {
  double t_star = 0.0;
  /// c < 0: the direction e_n has H = c < 0 at every t, so there is no
  /// threshold to cross and t_star is meaningless (set to NaN).
  bool negative_for_all_t = false;
};

/// Zero of t -> hsc_polynomial_critical(.).value for c >= 0, in closed form
/// t* = 2/(c+8), cross-validated against bisection to 1e-12; a discrepancy
/// above 1e-9 throws std::logic_error. Below t* the HSC at the origin is
/// negative in some direction.
NegativityThreshold negativity_threshold(double c);

/// Bisection solve of hsc_polynomial_critical(.).value = 0 on t in (0, 1).
/// Exposed so callers can display both routes side by side.
double negativity_threshold_bisection(double c);

/// sigma(a, g)_j = a_n g_j + g_n a_j for j = 1, ..., n-1: the second
/// fundamental form of the chart at the origin on frame coefficients.
Eigen::VectorXcd sigma(const BlowupParams& p, const Direction& a,
                       const Direction& g);

/// r_t(a, b-bar) = c a_n conj(b_n) + (n-1) tau(a,b) - (n-1) a_n conj(b_n)/t.
Complex ricci(const BlowupParams& p, const Direction& a, const Direction& b);

/// s_t = c + (n-1)(n-2)/t.
double scalar(const BlowupParams& p);

/// Unit direction with |a_n|^2 = x and the remaining mass on the first slot.
Direction direction_with_normal_mass(int n, double x);

}  // namespace closed_form
}  // namespace blowcurv
