#include "blowcurv/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "blowcurv/metric_models.hpp"

namespace blowcurv {

void validate(const BlowupParams& p) {
  if (p.n < 2) {
    std::ostringstream msg;
    msg << "BlowupParams: dimension must be at least 2, got " << p.n;
    throw std::invalid_argument(msg.str());
  }
  if (p.t <= 0.0) {
    std::ostringstream msg;
    msg << "BlowupParams: non-positive t: t = " << p.t;
    throw std::invalid_argument(msg.str());
  }
}

namespace closed_form {

namespace {

double tau_entry(int j, int k, int n) {
  return (j == k && j < n - 1) ? 1.0 : 0.0;
}

double delta_last(int j, int n) { return j == n - 1 ? 1.0 : 0.0; }

// The polynomial analysis is well-defined in the t -> 0 limit even though
// the metric itself needs t > 0.
void validate_polynomial_params(const BlowupParams& p) {
  if (p.n < 2) {
    throw std::invalid_argument("BlowupParams: dimension must be at least 2");
  }
  if (p.t < 0.0) {
    std::ostringstream msg;
    msg << "BlowupParams: negative t: t = " << p.t;
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

Rank4Tensor curvature_tensor(const BlowupParams& p) {
  validate(p);
  const int n = p.n;
  Rank4Tensor tensor(n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        for (int m = 0; m < n; ++m) {
          const double dj = delta_last(j, n);
          const double dk = delta_last(k, n);
          const double dl = delta_last(l, n);
          const double dm = delta_last(m, n);
          double value = p.c * dj * dk * dl * dm;
          value += p.t * (tau_entry(j, k, n) * tau_entry(l, m, n) +
                          tau_entry(j, m, n) * tau_entry(l, k, n));
          value -= dj * dk * tau_entry(l, m, n);
          value -= dj * dm * tau_entry(l, k, n);
          value -= dl * dk * tau_entry(j, m, n);
          value -= dl * dm * tau_entry(j, k, n);
          tensor(j, k, l, m) = value;
        }
      }
    }
  }
  return tensor;
}

double hsc(const BlowupParams& p, const Direction& a) {
  validate(p);
  if (a.size() != p.n) {
    throw std::invalid_argument("hsc: direction dimension mismatch");
  }
  if (a.norm() == 0.0) {
    throw std::invalid_argument("hsc: direction must be nonzero");
  }
  const double x = std::norm(a[p.n - 1]);
  const double tt = tau(a, a).real();
  const double numerator = p.c * x * x + 2.0 * p.t * tt * tt - 4.0 * x * tt;
  const double denominator = p.t * tt + x;
  return numerator / (denominator * denominator);
}

double hsc_polynomial(const BlowupParams& p, double x) {
  validate_polynomial_params(p);
  if (x < 0.0 || x > 1.0) {
    std::ostringstream msg;
    msg << "hsc_polynomial: x must lie in [0, 1], got " << x;
    throw std::invalid_argument(msg.str());
  }
  return p.c * x * x + 2.0 * p.t * (1.0 - x) * (1.0 - x) -
         4.0 * x * (1.0 - x);
}

PolynomialCritical hsc_polynomial_critical(const BlowupParams& p) {
  validate_polynomial_params(p);
  const double denom = p.c + 2.0 * p.t + 4.0;
  if (std::abs(denom) < 1e-12) {
    std::ostringstream msg;
    msg << "hsc_polynomial_critical: degenerate denominator c + 2t + 4 = "
        << denom;
    throw std::invalid_argument(msg.str());
  }
  PolynomialCritical crit;
  crit.x = 2.0 * (1.0 - p.t) / denom;
  crit.value = 2.0 * p.t - 4.0 * (1.0 - p.t) * (1.0 - p.t) / denom;
  crit.in_unit_interval = crit.x >= 0.0 && crit.x <= 1.0;
  return crit;
}

double negativity_threshold_bisection(double c) {
  // The critical value is negative for t near 0 and positive at t = 1,
  // strictly so for c >= 0, which brackets the root.
  auto value_at = [c](double t) {
    return hsc_polynomial_critical({2, t, c}).value;
  };
  double lo = 1e-9;
  double hi = 1.0;
  if (!(value_at(lo) < 0.0 && value_at(hi) > 0.0)) {
    std::ostringstream msg;
    msg << "negativity_threshold_bisection: no sign change on (0, 1) for c = "
        << c;
    throw std::logic_error(msg.str());
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (value_at(mid) < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

NegativityThreshold negativity_threshold(double c) {
  NegativityThreshold out;
  if (c < 0.0) {
    out.negative_for_all_t = true;
    out.t_star = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.t_star = 2.0 / (c + 8.0);
  const double bisected = negativity_threshold_bisection(c);
  if (std::abs(bisected - out.t_star) > 1e-9) {
    std::ostringstream msg;
    msg << "negativity_threshold: closed form " << out.t_star
        << " disagrees with bisection " << bisected << " for c = " << c;
    throw std::logic_error(msg.str());
  }
  return out;
}

Eigen::VectorXcd sigma(const BlowupParams& p, const Direction& a,
                       const Direction& g) {
  validate(p);
  if (a.size() != p.n || g.size() != p.n) {
    throw std::invalid_argument("sigma: direction dimension mismatch");
  }
  Eigen::VectorXcd out(p.n - 1);
  const Complex an = a[p.n - 1];
  const Complex gn = g[p.n - 1];
  for (int j = 0; j < p.n - 1; ++j) {
    out[j] = an * g[j] + gn * a[j];
  }
  return out;
}

Complex ricci(const BlowupParams& p, const Direction& a, const Direction& b) {
  validate(p);
  if (a.size() != p.n || b.size() != p.n) {
    throw std::invalid_argument("ricci: direction dimension mismatch");
  }
  const Complex normal = a[p.n - 1] * std::conj(b[p.n - 1]);
  return p.c * normal + double(p.n - 1) * tau(a, b) -
         double(p.n - 1) * normal / p.t;
}

double scalar(const BlowupParams& p) {
  validate(p);
  return p.c + double(p.n - 1) * double(p.n - 2) / p.t;
}

Direction direction_with_normal_mass(int n, double x) {
  if (n < 2) {
    throw std::invalid_argument(
        "direction_with_normal_mass: dimension must be at least 2");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument(
        "direction_with_normal_mass: x must lie in [0, 1]");
  }
  Direction a = Direction::Zero(n);
  a[0] = std::sqrt(1.0 - x);
  a[n - 1] = std::sqrt(x);
  return a;
}

}  // namespace closed_form
}  // namespace blowcurv
