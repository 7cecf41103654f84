#include "doctest.h"

#include "fracq/errors.hpp"
#include "fracq/mittag_leffler.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace fracq;
using cplx = std::complex<double>;

namespace {

struct Reference {
  double eta;
  cplx z;
  cplx value;
};

// tests/oracles/mittag_leffler_mpmath.py
const Reference kReference[] = {
    {0.3, {-1.0, 0.0}, {4.5659440832969067e-1, 0.0}},
    {0.3, {-4.0, 0.0}, {1.6650174431551665e-1, 0.0}},
    {0.3, {0.0, -5.0}, {1.8295717331791215e-2, -1.531443565258318e-1}},
    {0.5, {-1.0, 0.0}, {4.27583576155807e-1, 0.0}},
    {0.5, {-10.0, 0.0}, {5.6140992743822586e-2, 0.0}},
    {0.5, {2.0, 0.0}, {1.0894090438997797e+2, 0.0}},
    {0.5, {0.0, 3.0}, {1.2340980408667955e-4, 2.0115731703760039e-1}},
    {0.7, {-4.0, 0.0}, {9.9760254890514629e-2, 0.0}},
    {0.7, {-30.0, 0.0}, {1.1444251527526973e-2, 0.0}},
    {0.7, {1.5, 1.5}, {-4.5588051959724497, 2.5190035259429085}},
    {0.9, {0.0, -5.0}, {3.5741708057676355e-1, 1.3275554115682372e-1}},
    {0.9, {-20.0, 0.0}, {5.7495078161091126e-3, 0.0}},
    {0.9, {3.0, 0.0}, {3.2921897176850825e+1, 0.0}},
};

}  // namespace

TEST_SUITE("mittag_leffler") {

TEST_CASE("trivial reductions") {
  for (const double eta : {0.2, 0.5, 1.0}) CHECK(mittag_leffler(eta, 0.0) == cplx(1.0));
  CHECK(std::abs(mittag_leffler(1.0, -2.0) - 0.1353352832366127) <= 1e-16);
  CHECK(std::abs(mittag_leffler(1.0, cplx(0.3, 2.0)) - std::exp(cplx(0.3, 2.0))) <= 1e-15);
}

TEST_CASE("half order matches the erfc identity") {
  for (const double x : {0.1, 0.5, 1.0, 2.5, 4.0, 8.0, 20.0}) {
    const double exact = std::exp(x * x) * std::erfc(x);
    CHECK(std::abs(mittag_leffler(0.5, -x) - exact) <= 1e-10 * exact);
  }
}

TEST_CASE("extended precision references") {
  for (const auto& r : kReference) {
    CAPTURE(r.eta);
    CAPTURE(r.z);
    CHECK(std::abs(mittag_leffler(r.eta, r.z) - r.value) <= 1e-10 * std::abs(r.value));
  }
}

TEST_CASE("series and contour agree where both apply") {
  for (const double eta : {0.6, 0.8, 0.95}) {
    for (const double r : {4.0, 5.0, 6.0}) {
      for (const double angle : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const cplx z = std::polar(r, angle);
        const auto s = ml_detail::series(eta, z);
        if (!s.certified(1e-10)) continue;
        const auto c = ml_detail::contour(eta, z);
        CAPTURE(eta);
        CAPTURE(z);
        CHECK(std::abs(s.value - c.value) <= 1e-9 * std::abs(c.value));
      }
    }
  }
}

TEST_CASE("complete monotonicity on the negative axis") {
  for (const double eta : {0.1, 0.3, 0.5, 0.75, 1.0}) {
    double prev = 1.0;
    for (int i = 0; i <= 60; ++i) {
      const double t = std::pow(10.0, -3.0 + 0.08 * i);
      const double v = std::abs(mittag_leffler(eta, -std::pow(t, eta)));
      CHECK(v <= prev * (1.0 + 1e-12));
      prev = v;
    }
  }
}

TEST_CASE("large arguments up to |z| = 100 certify") {
  for (const double eta : {0.2, 0.5, 0.8}) {
    for (const double angle : {0.0, 1.0, 2.0, std::numbers::pi}) {
      const auto v = mittag_leffler_checked(eta, std::polar(100.0, angle));
      if (std::abs(v.value) > 1e300) continue;
      CHECK(v.certified(1e-10));
    }
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(mittag_leffler(0.0, 1.0), ValidationError);
  CHECK_THROWS_AS(mittag_leffler(1.2, 1.0), ValidationError);
  CHECK_THROWS_AS(mittag_leffler(0.5, cplx(NAN, 0.0)), ValidationError);
}

TEST_CASE("impossible tolerances are reported, not hidden") {
  CHECK_THROWS_AS(mittag_leffler(0.5, -3.0, 1e-20), AccuracyLoss);
}

}  // TEST_SUITE
