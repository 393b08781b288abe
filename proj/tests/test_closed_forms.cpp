#include "blowcurv/closed_forms.hpp"

#include <cmath>
#include <stdexcept>

#include "blowcurv/metric_models.hpp"
#include "doctest.h"
#include "fd_oracle.hpp"

using namespace blowcurv;
using namespace blowcurv::closed_form;

namespace {

Direction basis(int n, int j) {
  Direction v = Direction::Zero(n);
  v[j] = 1.0;
  return v;
}

// Independent bisection on the critical value, used to confirm the closed
// threshold from a second route.
double bisect_threshold(double c) {
  double lo = 1e-9;
  double hi = 1.0;
  for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (hsc_polynomial_critical({2, mid, c}).value < 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("curvature tensor entries by index substitution") {
  SUBCASE("n = 2, t = 1, c = 0") {
    const Rank4Tensor r = curvature_tensor({2, 1.0, 0.0});
    CHECK(r(0, 0, 0, 0) == Complex(2.0, 0.0));   // 2t
    CHECK(r(1, 1, 0, 0) == Complex(-1.0, 0.0));  // -tau_11
    CHECK(r(1, 1, 1, 1) == Complex(0.0, 0.0));   // c
  }

  SUBCASE("the all-normal entry is always c") {
    for (const BlowupParams p :
         {BlowupParams{2, 0.3, -1.0}, BlowupParams{3, 0.1, 2.0},
          BlowupParams{5, 0.7, 0.5}}) {
      const Rank4Tensor r = curvature_tensor(p);
      CHECK(r(p.n - 1, p.n - 1, p.n - 1, p.n - 1) == Complex(p.c, 0.0));
    }
  }

  SUBCASE("n = 3, t = 0.5, c = 1 mixed entries") {
    const Rank4Tensor r = curvature_tensor({3, 0.5, 1.0});
    CHECK(r(0, 0, 1, 1) == Complex(0.5, 0.0));
    CHECK(r(0, 1, 1, 0) == Complex(0.5, 0.0));
  }

  SUBCASE("symmetries hold to 1e-12") {
    const SymmetryReport rep =
        check_kahler_symmetries(curvature_tensor({4, 0.25, 2.0}));
    CHECK(rep.worst() <= 1e-12);
  }
}

TEST_CASE("hsc closed form") {
  SUBCASE("pure normal direction gives the base curvature") {
    for (double c : {-1.0, 0.0, 2.0}) {
      CHECK(hsc({3, 0.1, c}, basis(3, 2)) == c);
    }
  }

  SUBCASE("divisor-tangent direction gives 2/t") {
    CHECK(hsc({2, 0.1, 0.0}, basis(2, 0)) == doctest::Approx(20.0));
    CHECK(hsc({4, 0.5, 1.0}, basis(4, 1)) == doctest::Approx(4.0));
  }

  SUBCASE("sign agrees with the numerator polynomial") {
    const BlowupParams p{2, 0.05, 2.0};
    const double x = 0.25;
    const double value = hsc(p, direction_with_normal_mass(2, x));
    const double poly = hsc_polynomial(p, x);
    CHECK(value * poly > 0.0);
    // Same numerator: value * denominator^2 == p_t(x).
    const double denom = p.t * (1.0 - x) + x;
    CHECK(value * denom * denom == doctest::Approx(poly).epsilon(1e-12));
  }

  SUBCASE("quotient of the closed tensor reproduces hsc for random directions") {
    oracle::Rng rng(47);
    for (const BlowupParams p :
         {BlowupParams{2, 0.1, 2.0}, BlowupParams{3, 0.25, -1.0},
          BlowupParams{4, 0.5, 1.0}}) {
      const Rank4Tensor tensor = curvature_tensor(p);
      for (int trial = 0; trial < 10; ++trial) {
        const Direction a = rng.direction(p.n);
        const double norm_sq =
            p.t * tau(a, a).real() + std::norm(a[p.n - 1]);
        const double quotient =
            contract4(tensor, a, a, a, a).real() / (norm_sq * norm_sq);
        CHECK(quotient == doctest::Approx(hsc(p, a)).epsilon(1e-12));
      }
    }
  }

  SUBCASE("invariant under complex rescaling") {
    oracle::Rng rng(53);
    const BlowupParams p{3, 0.25, 1.0};
    for (int trial = 0; trial < 10; ++trial) {
      const Direction a = rng.unit_direction(3);
      Complex lambda = rng.complex_value();
      if (std::abs(lambda) < 1e-3) lambda = Complex(0.7, -0.2);
      CHECK(std::abs(hsc(p, a) - hsc(p, lambda * a)) <
            1e-10 * std::max(1.0, std::abs(hsc(p, a))));
    }
  }

  SUBCASE("zero direction and bad params are rejected") {
    CHECK_THROWS_AS(hsc({2, 0.1, 0.0}, Direction::Zero(2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(hsc({2, -0.1, 0.0}, basis(2, 0)), std::invalid_argument);
    CHECK_THROWS_AS(hsc({1, 0.1, 0.0}, basis(1, 0)), std::invalid_argument);
  }
}

TEST_CASE("hsc numerator polynomial") {
  SUBCASE("endpoints are exact") {
    oracle::Rng rng(59);
    for (int trial = 0; trial < 10; ++trial) {
      const double t = 0.01 + 0.5 * std::abs(rng.normal(rng.gen));
      const double c = rng.normal(rng.gen);
      const BlowupParams p{2, t, c};
      CHECK(hsc_polynomial(p, 0.0) == 2.0 * t);
      CHECK(hsc_polynomial(p, 1.0) == c);
    }
  }

  SUBCASE("the t -> 0 limit value at x = 1/3") {
    CHECK(hsc_polynomial({2, 0.0, 2.0}, 1.0 / 3.0) ==
          doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  }

  SUBCASE("x outside the unit interval is rejected") {
    CHECK_THROWS_AS(hsc_polynomial({2, 0.1, 0.0}, -0.1),
                    std::invalid_argument);
    CHECK_THROWS_AS(hsc_polynomial({2, 0.1, 0.0}, 1.1), std::invalid_argument);
  }
}

TEST_CASE("critical data of the numerator polynomial") {
  SUBCASE("t = 0: x_t = 1/3 and value -2/3 at c = 2") {
    const auto crit = hsc_polynomial_critical({2, 0.0, 2.0});
    CHECK(crit.x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(crit.value == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
    CHECK(crit.in_unit_interval);
  }

  SUBCASE("c = 2, t = 0.2 sits exactly on the threshold") {
    const auto crit = hsc_polynomial_critical({2, 0.2, 2.0});
    CHECK(crit.x == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(std::abs(crit.value) < 1e-15);
  }

  SUBCASE("c = 0, t = 0.25 sits exactly on the threshold") {
    const auto crit = hsc_polynomial_critical({2, 0.25, 0.0});
    CHECK(crit.x == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(crit.value) < 1e-15);
  }

  SUBCASE("x_t lies in (0, 1/2] for c >= 0 and t in (0, 1)") {
    oracle::Rng rng(61);
    for (int trial = 0; trial < 20; ++trial) {
      const double c = 2.0 * std::abs(rng.normal(rng.gen));
      const double t = 0.999 * (0.001 + std::abs(std::sin(trial * 1.7)));
      const auto crit = hsc_polynomial_critical({2, std::min(t, 0.999), c});
      CHECK(crit.x > 0.0);
      CHECK(crit.x <= 0.5);
      CHECK(crit.in_unit_interval);
    }
  }
}

TEST_CASE("negativity threshold") {
  SUBCASE("closed form 2/(c+8) for the reference cases") {
    CHECK(negativity_threshold(2.0).t_star == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(negativity_threshold(0.0).t_star ==
          doctest::Approx(0.25).epsilon(1e-12));
    CHECK_FALSE(negativity_threshold(0.0).negative_for_all_t);
  }

  SUBCASE("negative base curvature is flagged: e_n is negative at every t") {
    const auto th = negativity_threshold(-1.0);
    CHECK(th.negative_for_all_t);
    CHECK(std::isnan(th.t_star));
    for (double t : {0.01, 0.1, 0.5}) {
      CHECK(hsc({3, t, -1.0}, basis(3, 2)) == -1.0);
    }
  }

  SUBCASE("independent bisection confirms the closed form to 1e-9") {
    for (double c : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      CHECK(std::abs(bisect_threshold(c) - 2.0 / (c + 8.0)) < 1e-9);
      CHECK(std::abs(negativity_threshold_bisection(c) - 2.0 / (c + 8.0)) <
            1e-9);
    }
  }

  SUBCASE("below t* the hsc is negative at the critical x") {
    for (double c : {0.0, 1.0, 2.0}) {
      const double t_star = negativity_threshold(c).t_star;
      for (double frac : {0.25, 0.5, 0.9}) {
        const BlowupParams p{2, frac * t_star, c};
        const auto crit = hsc_polynomial_critical(p);
        REQUIRE(crit.in_unit_interval);
        CHECK(crit.value < 0.0);
        CHECK(hsc(p, direction_with_normal_mass(2, crit.x)) < 0.0);
      }
    }
  }

  SUBCASE("above t* the critical value turns nonnegative") {
    for (double c : {0.0, 1.0, 2.0}) {
      const double t_star = negativity_threshold(c).t_star;
      CHECK(hsc_polynomial_critical({2, t_star + 0.01, c}).value > 0.0);
      CHECK(hsc_polynomial_critical({2, 2.0 * t_star, c}).value > 0.0);
    }
  }
}

TEST_CASE("second fundamental form closed form") {
  const BlowupParams p{3, 0.5, 2.0};
  SUBCASE("sigma(e_n, e_n) = 0") {
    CHECK(sigma(p, basis(3, 2), basis(3, 2)).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("sigma(xi_1, xi_n) = e_1") {
    const Eigen::VectorXcd v = sigma(p, basis(3, 0), basis(3, 2));
    CHECK(v[0] == Complex(1.0, 0.0));
    CHECK(v[1] == Complex(0.0, 0.0));
  }
  SUBCASE("uniform direction gives 2/n per component") {
    for (int n : {3, 4}) {
      const Direction a = Direction::Constant(n, 1.0 / std::sqrt(double(n)));
      const Eigen::VectorXcd v = sigma({n, 0.5, 2.0}, a, a);
      for (int j = 0; j < n - 1; ++j) {
        CHECK(std::abs(v[j] - Complex(2.0 / n, 0.0)) < 1e-15);
      }
    }
  }
  SUBCASE("symmetric in its two arguments") {
    oracle::Rng rng(67);
    for (int trial = 0; trial < 5; ++trial) {
      const Direction a = rng.direction(3);
      const Direction g = rng.direction(3);
      CHECK((sigma(p, a, g) - sigma(p, g, a)).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("ricci closed form") {
  SUBCASE("normal direction: c - (n-1)/t, exactly") {
    CHECK(ricci({3, 0.25, 1.0}, basis(3, 2), basis(3, 2)) ==
          Complex(-7.0, 0.0));
    for (const BlowupParams p :
         {BlowupParams{2, 0.5, 0.0}, BlowupParams{4, 0.01, 2.0}}) {
      const Complex value = ricci(p, basis(p.n, p.n - 1), basis(p.n, p.n - 1));
      CHECK(value == Complex(p.c - (p.n - 1) / p.t, 0.0));
    }
  }

  SUBCASE("divisor directions: n - 1, independent of t and c") {
    for (const BlowupParams p :
         {BlowupParams{2, 0.1, 2.0}, BlowupParams{3, 0.5, -1.0},
          BlowupParams{4, 0.25, 0.0}}) {
      CHECK(ricci(p, basis(p.n, 0), basis(p.n, 0)) ==
            Complex(p.n - 1.0, 0.0));
    }
  }

  SUBCASE("no cross term between divisor and normal directions") {
    CHECK(std::abs(ricci({3, 0.9, 0.0}, basis(3, 0), basis(3, 2))) == 0.0);
  }
}

TEST_CASE("scalar closed form") {
  CHECK(scalar({2, 0.1, 1.5}) == 1.5);
  CHECK(scalar({3, 0.5, 0.0}) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(scalar({4, 0.25, 2.0}) == doctest::Approx(26.0).epsilon(1e-15));
}

TEST_CASE("trace consistency between the closed forms") {
  oracle::Rng rng(71);
  for (const BlowupParams p :
       {BlowupParams{2, 0.1, 2.0}, BlowupParams{3, 0.25, -1.0},
        BlowupParams{4, 0.5, 1.0}}) {
    const Rank4Tensor tensor = curvature_tensor(p);

    // Orthonormal frame for diag(t, ..., t, 1).
    std::vector<Direction> frame;
    for (int j = 0; j < p.n - 1; ++j) {
      frame.push_back(basis(p.n, j) / std::sqrt(p.t));
    }
    frame.push_back(basis(p.n, p.n - 1));

    for (int trial = 0; trial < 5; ++trial) {
      const Direction a = rng.direction(p.n);
      const Direction b = rng.direction(p.n);
      Complex trace(0.0, 0.0);
      for (const Direction& v : frame) {
        trace += contract4(tensor, a, b, v, v);
      }
      const Complex expected = ricci(p, a, b);
      CHECK(std::abs(trace - expected) <
            1e-12 * std::max(1.0, std::abs(expected)));
    }

    Complex double_trace(0.0, 0.0);
    for (const Direction& v : frame) {
      for (const Direction& w : frame) {
        double_trace += contract4(tensor, v, v, w, w);
      }
    }
    CHECK(std::abs(double_trace - Complex(scalar(p), 0.0)) <
          1e-12 * std::max(1.0, std::abs(scalar(p))));
  }
}

TEST_CASE("gauss assembly reproduces the curvature tensor exactly") {
  for (const BlowupParams p :
       {BlowupParams{2, 0.1, 0.0}, BlowupParams{3, 0.5, 2.0},
        BlowupParams{4, 0.25, -1.0}}) {
    const int n = p.n;
    const Rank4Tensor expected = curvature_tensor(p);
    const Rank4Tensor fs = oracle::fubini_study_tensor(n - 1);

    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
          for (int m = 0; m < n; ++m) {
            // Base pullback: only the all-normal slot survives at the origin.
            Complex rhs =
                (j == n - 1 && k == n - 1 && l == n - 1 && m == n - 1)
                    ? Complex(p.c, 0.0)
                    : Complex(0.0, 0.0);
            // Fubini-Study pullback acts on the divisor-tangent slots.
            if (j < n - 1 && k < n - 1 && l < n - 1 && m < n - 1) {
              rhs += p.t * fs(j, k, l, m);
            }
            const Eigen::VectorXcd s_jl =
                sigma(p, basis(n, j), basis(n, l));
            const Eigen::VectorXcd s_km =
                sigma(p, basis(n, k), basis(n, m));
            for (int i = 0; i < n - 1; ++i) {
              rhs -= s_jl[i] * std::conj(s_km[i]);
            }
            worst = std::max(worst, std::abs(expected(j, k, l, m) - rhs));
          }
        }
      }
    }
    CHECK(worst == 0.0);
  }
}

TEST_CASE("direction_with_normal_mass splits the unit mass as requested") {
  for (double x : {0.0, 0.25, 0.5, 1.0}) {
    const Direction a = direction_with_normal_mass(3, x);
    CHECK(a.norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::norm(a[2]) == doctest::Approx(x).epsilon(1e-15));
  }
  CHECK_THROWS_AS(direction_with_normal_mass(3, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(direction_with_normal_mass(1, 0.5), std::invalid_argument);
}
