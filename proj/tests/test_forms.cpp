#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "msk/forms.hpp"
#include "msk/model.hpp"

using namespace msk;
using std::numbers::pi;

namespace {

ModelParams params(double l, double w1, double w2, double kappa = 0.0) {
  ModelParams p;
  p.l = l;
  p.omega1 = w1;
  p.omega2 = w2;
  p.kappa = kappa;
  return p;
}

}  // namespace

TEST_CASE("quadratic form on closed-form fields") {
  const double l = 1.3;
  Grid1D g = Grid1D::chebyshev(l, 65);

  SUBCASE("constants with no boundary reward vanish") {
    auto r = forms::quadratic_form(HeightField(g, Vector::Constant(65, 4.0)),
                                   params(l, 0.0, 0.0));
    CHECK(std::abs(r.value) <= 1e-12);
  }

  SUBCASE("linear field reproduces the 2/l threshold anchor") {
    Vector v = g.nodes().array() - l / 2.0;
    for (double w : {0.3, 2.0 / l, 3.0}) {
      auto r = forms::quadratic_form(HeightField(g, v), params(l, w, w));
      const double expect = l - w * l * l / 2.0;
      CHECK(r.value == doctest::Approx(expect).epsilon(1e-11));
    }
    auto at_crit =
        forms::quadratic_form(HeightField(g, v), params(l, 2.0 / l, 2.0 / l));
    CHECK(std::abs(at_crit.value) <= 1e-11);
  }

  SUBCASE("cosine field crosses zero at |kappa| = pi/l") {
    Vector v = (pi / l * g.nodes().array()).cos();
    for (double kappa : {0.5, pi / l, 2.0}) {
      auto r = forms::quadratic_form(HeightField(g, v),
                                     params(l, 0.0, 0.0, kappa));
      const double expect =
          (pi * pi / (l * l)) * (l / 2.0) - kappa * kappa * (l / 2.0);
      CHECK(r.value == doctest::Approx(expect).epsilon(1e-10));
    }
  }

  SUBCASE("report parts are consistent") {
    std::mt19937 rng(5);
    std::normal_distribution<double> dist;
    Vector v(g.size());
    for (int i = 0; i < g.size(); ++i) v[i] = dist(rng);
    auto r = forms::quadratic_form(HeightField(g, v), params(l, -1.0, 0.7, 1.1));
    CHECK(r.value ==
          doctest::Approx(r.gradient - r.boundary - r.curvature).epsilon(1e-12));
  }

  SUBCASE("scaling is exactly quadratic") {
    Vector v = (2.0 * pi / l * g.nodes().array()).sin();
    auto p = params(l, 0.5, -0.25, 0.8);
    auto r1 = forms::quadratic_form(HeightField(g, v), p);
    auto r3 = forms::quadratic_form(HeightField(g, 3.0 * v), p);
    CHECK(r3.value == doctest::Approx(9.0 * r1.value).epsilon(1e-13));
  }
}

TEST_CASE("gbar test function: endpoints, mean, Robin conditions") {
  const double l = 2.0;
  auto p = params(l, 1.5, 1.5);
  HeightField gbar = forms::test_function_gbar(0.1, p);

  CHECK(gbar.values[0] == doctest::Approx(1.0));
  CHECK(gbar.values[gbar.grid.size() - 1] == doctest::Approx(-1.0));
  Vector mid(1);
  mid << l / 2.0;
  CHECK(std::abs((gbar.grid.interpolation_matrix(mid) * gbar.values)[0]) <=
        1e-13);
  CHECK(std::abs(mean(gbar)) <= 1e-12);

  // discrete Robin residuals at both endpoints (omega2 = omega1)
  Vector dv = gbar.grid.derivative_matrix() * gbar.values;
  CHECK(std::abs(dv[0] + p.omega1 * gbar.values[0]) <= 1e-10);
  CHECK(std::abs(dv[gbar.grid.size() - 1] -
                 p.omega2 * gbar.values[gbar.grid.size() - 1]) <= 1e-10);

  SUBCASE("omega1 = 0 collapses to the odd piecewise-linear hat") {
    HeightField flat = forms::test_function_gbar(0.25, params(l, 0.0, 0.0));
    for (int i = 0; i < flat.grid.size(); ++i) {
      double s = flat.grid.nodes()[i];
      double expect = (s <= 0.25)       ? 1.0
                      : (s >= l - 0.25) ? -1.0
                                        : (l / 2.0 - s) / (l / 2.0 - 0.25);
      CHECK(flat.values[i] == doctest::Approx(expect).epsilon(1e-12));
    }
  }

  SUBCASE("eps >= l/4 is rejected") {
    CHECK_THROWS_AS(forms::test_function_gbar(l / 4.0, p), Error);
  }
}

TEST_CASE("half-form closed form and its limits") {
  SUBCASE("eps -> 0 equals 2/l - omega") {
    for (double l : {0.5, 1.0, 2.0})
      for (double w : {0.0, 1.0, 5.0})
        CHECK(forms::gbar_half_form_flat(1e-9, w, l) ==
              doctest::Approx(2.0 / l - w).epsilon(1e-6));
  }
  SUBCASE("supercritical omega gives a negative value") {
    const double l = 1.0;
    CHECK(forms::gbar_half_form_flat(1e-4, 2.0 / l + 0.5, l) < 0.0);
  }
  SUBCASE("omega = 0 stays positive") {
    CHECK(forms::gbar_half_form_flat(0.2, 0.0, 1.0) ==
          doctest::Approx(1.0 / (0.5 - 0.2)));
  }
}

TEST_CASE("quadrature of I* on gbar equals twice the closed half form") {
  for (double l : {0.5, 1.0, 2.0}) {
    for (double w : {-1.0, 0.5, 3.0}) {
      for (double eps_frac : {1e-3, 1e-2, 0.1}) {
        const double eps = eps_frac * l;
        auto p = params(l, w, w);
        HeightField gbar = forms::test_function_gbar(eps, p);
        auto r = forms::quadratic_form(gbar, p);
        const double expect = 2.0 * forms::gbar_half_form_flat(eps, w, l);
        CHECK(r.value == doctest::Approx(expect).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("curved bracket limit values") {
  SUBCASE("kappa = 0 reduces to the flat limit") {
    CHECK(forms::curved_bracket_limit(params(2.0, 0.7, 0.0)) ==
          doctest::Approx(2.0 / 2.0 - 0.7).epsilon(1e-14));
  }
  SUBCASE("limit |kappa| -> 2 pi / l") {
    const double l = 1.7, w1 = 0.05;
    auto p = params(l, w1, w1, 2.0 * pi / l);
    CHECK(forms::curved_bracket_limit(p) ==
          doctest::Approx((2.0 / l) * (1.0 - pi * pi / 3.0) - w1)
              .epsilon(1e-12));
  }
  SUBCASE("limit l -> 2 pi / |kappa|") {
    const double kappa = -1.3, w1 = -0.2;
    auto p = params(2.0 * pi / std::abs(kappa), w1, w1, kappa);
    CHECK(forms::curved_bracket_limit(p) ==
          doctest::Approx(std::abs(kappa) * (1.0 / pi - pi / 3.0) - w1)
              .epsilon(1e-12));
  }
}

TEST_CASE("mean-free minimization of I*") {
  Grid1D g = Grid1D::chebyshev(1.0, 129);

  SUBCASE("free Neumann case gives (pi/l)^2") {
    auto r = forms::min_form_meanfree(params(1.0, 0.0, 0.0), g);
    CHECK(r.mu_min == doctest::Approx(pi * pi).epsilon(1e-8));
    CHECK(std::abs(mean(r.minimizer)) <= 1e-10);
    CHECK(l2_norm(r.minimizer) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("zero crossing at omega = 2/l") {
    const double l = 1.0;
    double lo = 1.5, hi = 2.5;
    REQUIRE(forms::min_form_meanfree(params(l, lo, lo), g).mu_min > 0.0);
    REQUIRE(forms::min_form_meanfree(params(l, hi, hi), g).mu_min < 0.0);
    while (hi - lo > 1e-5) {
      double mid = 0.5 * (lo + hi);
      (forms::min_form_meanfree(params(l, mid, mid), g).mu_min > 0.0 ? lo
                                                                     : hi) =
          mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(2.0 / l).epsilon(1e-3));
  }

  SUBCASE("zero crossing at |kappa| = pi/l") {
    const double l = 1.0;
    double lo = 2.5, hi = 3.5;
    REQUIRE(forms::min_form_meanfree(params(l, 0.0, 0.0, lo), g).mu_min > 0.0);
    REQUIRE(forms::min_form_meanfree(params(l, 0.0, 0.0, hi), g).mu_min < 0.0);
    while (hi - lo > 1e-5) {
      double mid = 0.5 * (lo + hi);
      (forms::min_form_meanfree(params(l, 0.0, 0.0, mid), g).mu_min > 0.0
           ? lo
           : hi) = mid;
    }
    CHECK(0.5 * (lo + hi) == doctest::Approx(pi / l).epsilon(1e-3));
  }

  SUBCASE("mu_min is nonincreasing in omega1, omega2, kappa^2") {
    Grid1D gs = Grid1D::chebyshev(1.0, 65);
    double prev = forms::min_form_meanfree(params(1.0, -2.0, 0.0), gs).mu_min;
    for (double w1 : {-1.0, 0.0, 1.0, 2.0}) {
      double cur = forms::min_form_meanfree(params(1.0, w1, 0.0), gs).mu_min;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
    prev = forms::min_form_meanfree(params(1.0, 0.3, 0.3, 0.0), gs).mu_min;
    for (double k : {0.5, 1.0, 2.0}) {
      double cur = forms::min_form_meanfree(params(1.0, 0.3, 0.3, k), gs).mu_min;
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }

  SUBCASE("mu_min > 0 implies positivity on random mean-free fields") {
    Grid1D gs = Grid1D::chebyshev(1.0, 65);
    auto p = params(1.0, -1.0, -0.5, 1.0);
    auto r = forms::min_form_meanfree(p, gs);
    REQUIRE(r.mu_min > 0.0);
    std::mt19937 rng(17);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
      Vector v(gs.size());
      for (int i = 0; i < gs.size(); ++i) v[i] = dist(rng);
      v.array() -= gs.quad(v) / gs.length();
      CHECK(forms::quadratic_form(HeightField(gs, v), p).value > 0.0);
    }
  }
}

TEST_CASE("sharp discrete trace constant") {
  const double l = 1.0;
  Grid1D g = Grid1D::chebyshev(l, 65);

  SUBCASE("monotone nonincreasing in delta, positive") {
    double prev = forms::trace_constant(0.05, l, g);
    for (double d : {0.2, 1.0, 5.0, 50.0}) {
      double cur = forms::trace_constant(d, l, g);
      CHECK(cur > 0.0);
      CHECK(cur <= prev + 1e-12);
      prev = cur;
    }
  }

  SUBCASE("constant field forces C >= 1/l") {
    CHECK(forms::trace_constant(l, l, g) >= 1.0 / l - 1e-10);
  }

  SUBCASE("inequality holds on random smooth fields at delta = l") {
    const double C = forms::trace_constant(l, l, g);
    std::mt19937 rng(23);
    std::normal_distribution<double> dist;
    for (int trial = 0; trial < 100; ++trial) {
      Vector v = Vector::Zero(g.size());
      for (int k = 0; k <= 8; ++k) {
        double a = dist(rng);
        v += a * (k * pi / l * g.nodes().array()).cos().matrix();
      }
      const double h0sq = v[0] * v[0];
      const double grad = v.dot(g.stiffness_matrix() * v);
      const double mass = g.weights().dot(v.cwiseProduct(v));
      CHECK(h0sq <= l * grad + C * mass + 1e-9 * (1.0 + mass));
    }
  }
}
