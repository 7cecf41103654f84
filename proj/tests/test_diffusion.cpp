#include "doctest.h"

#include "fracq/diffusion.hpp"
#include "fracq/errors.hpp"
#include "fracq/mittag_leffler.hpp"
#include "fracq/stats.hpp"

#include <cmath>
#include <numbers>

using namespace fracq;

namespace {

// Grid of length 2 pi, so lattice wavenumbers are the signed indices.
const GridSpec kUnitGrid(16, 2.0 * std::numbers::pi);

ComplexField cos_mode(const GridSpec& g, int k) {
  return ComplexField::sample(g, [k](double x) { return cplx(std::cos(k * x), 0.0); });
}

double mode_factor(const ComplexField& out, const ComplexField& in) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < in.size(); ++j) {
    num += out[j].real() * in[j].real();
    den += in[j].real() * in[j].real();
  }
  return num / den;
}

double normwise(const ComplexField& a, const ComplexField& b) {
  double err = 0.0;
  double ref = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    err = std::max(err, std::abs(a[j] - b[j]));
    ref = std::max(ref, std::abs(b[j]));
  }
  return err / ref;
}

}  // namespace

TEST_SUITE("diffusion") {

TEST_CASE("mode-exact examples") {
  const auto mode = cos_mode(kUnitGrid, 1);
  DiffusionProblem heat(FractionalOrders(1.0, 2.0), 1.0, mode);
  const auto sol = solve_mode_exact(heat, {0.0, 1.0});
  CHECK(sol.snapshots[0].values()[3] == mode[3]);
  CHECK(mode_factor(sol.snapshots[1], mode) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));

  DiffusionProblem frac(FractionalOrders(0.5, 1.5), 1.0, mode);
  const auto f = solve_mode_exact(frac, {1.0});
  CHECK(mode_factor(f.snapshots[0], mode) == doctest::Approx(0.42758357615580700).epsilon(1e-12));
}

TEST_CASE("time validation") {
  DiffusionProblem p(FractionalOrders(0.5, 1.5), 1.0, cos_mode(kUnitGrid, 1));
  CHECK_THROWS_AS(solve_mode_exact(p, {1.0, 0.5}), ValidationError);
  CHECK_THROWS_AS(solve_mode_exact(p, {-1.0}), ValidationError);
  CHECK_THROWS_AS(solve_l1_stepping(p, 0.0, 3), ValidationError);
  CHECK_THROWS_AS(DiffusionProblem(FractionalOrders(0.5, 1.5), 0.0, cos_mode(kUnitGrid, 1)), ValidationError);
}

TEST_CASE("L1 stepping examples") {
  const auto mode = cos_mode(kUnitGrid, 1);
  DiffusionProblem euler(FractionalOrders(1.0, 2.0), 1.0, mode);
  const auto one = solve_l1_stepping(euler, 1.0, 1);
  CHECK(mode_factor(one.snapshots.back(), mode) == doctest::Approx(0.5).epsilon(1e-14));

  const auto none = solve_l1_stepping(euler, 0.1, 0);
  CHECK(none.snapshots.size() == 1);
  CHECK(none.snapshots[0].values()[5] == mode[5]);

  DiffusionProblem half(FractionalOrders(0.5, 2.0), 1.0, mode);
  const auto l1 = solve_l1_stepping(half, 1e-3, 1000, 1000);
  CHECK(l1.times.back() == doctest::Approx(1.0));
  const double factor = mode_factor(l1.snapshots.back(), mode);
  CHECK(std::abs(factor - 0.42758357615580700) <= 1e-3 * 0.42758357615580700);
}

TEST_CASE("mass conservation and monotone decay") {
  const auto init = ComplexField::sample(kUnitGrid, [](double x) { return cplx(1.0 + 0.5 * std::sin(x) + 0.2 * std::cos(5 * x), 0.0); });
  for (const auto& orders : {FractionalOrders(0.4, 1.2), FractionalOrders(1.0, 2.0), FractionalOrders(0.8, 0.5)}) {
    DiffusionProblem p(orders, 0.7, init);
    const auto exact = solve_mode_exact(p, {0.01, 0.1, 1.0, 10.0});
    const auto l1 = solve_l1_stepping(p, 0.05, 40, 10);
    for (const auto* sol : {&exact, &l1}) {
      double prev = 1e300;
      for (const auto& snap : sol->snapshots) {
        CHECK(std::abs(snap.integral() - init.integral()) <= 1e-12 * std::abs(init.integral()));
        const double mode5 = std::abs(mode_factor(snap, cos_mode(kUnitGrid, 5)));
        CHECK(mode5 <= prev + 1e-15);
        prev = mode5;
      }
    }
  }
}

TEST_CASE("gaussian limit stays nonnegative") {
  const GridSpec g(256, 20.0, -10.0);
  DiffusionProblem p(FractionalOrders(1.0, 2.0), 1.0, ComplexField::point_mass(g, 128));
  const auto sol = solve_mode_exact(p, {0.05, 0.5, 2.0});
  for (const auto& s : sol.snapshots) {
    for (std::size_t j = 0; j < g.n(); ++j) CHECK(s[j].real() >= -1e-10);
  }
}

TEST_CASE("L1 convergence order on the uniform mesh at eta = 1 and graded meshes below") {
  const auto init = ComplexField::sample(kUnitGrid, [](double x) { return cplx(std::exp(std::cos(x)), 0.0); });
  for (const double eta : {0.4, 0.7, 1.0}) {
    DiffusionProblem p(FractionalOrders(eta, 1.5), 1.0, init);
    const auto exact = solve_mode_exact(p, {1.0}).snapshots.back();
    std::vector<double> lx;
    std::vector<double> ly;
    for (const std::size_t n : {100u, 200u, 400u, 800u}) {
      const auto mesh = graded_mesh(1.0, n, optimal_grading(eta));
      lx.push_back(std::log(static_cast<double>(n)));
      ly.push_back(std::log(normwise(solve_l1_mesh(p, mesh, n).snapshots.back(), exact)));
    }
    const double order = -stats::linear_regression(lx, ly).slope;
    CAPTURE(eta);
    CHECK(std::abs(order - (2.0 - eta)) <= 0.3);
  }
  CHECK(optimal_grading(1.0) == 1.0);
}

TEST_CASE("uniform and graded meshes agree on the uniform special case") {
  const auto init = cos_mode(kUnitGrid, 2);
  DiffusionProblem p(FractionalOrders(0.6, 1.0), 1.0, init);
  const auto a = solve_l1_stepping(p, 0.01, 100, 100).snapshots.back();
  const auto b = solve_l1_mesh(p, graded_mesh(1.0, 100, 1.0), 100).snapshots.back();
  CHECK(normwise(a, b) <= 1e-12);
}

TEST_CASE("fractional moments") {
  const GridSpec g(1024, 40.0, -20.0);
  DiffusionProblem heat(FractionalOrders(1.0, 2.0), 1.0, ComplexField::point_mass(g, 512));
  const auto sol = solve_mode_exact(heat, {0.0, 0.01});
  const auto msd = fractional_msd(sol, 2.0);
  CHECK(msd.values[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(msd.values[1] == doctest::Approx(0.02).epsilon(0.02));
  CHECK(msd.warnings.empty());

  DiffusionProblem levy(FractionalOrders(1.0, 1.5), 1.0, ComplexField::point_mass(GridSpec(4096, 400.0, -200.0), 2048));
  std::vector<double> times;
  for (int i = 0; i <= 10; ++i) times.push_back(std::pow(10.0, 0.1 * i));
  const auto lsol = solve_mode_exact(levy, times);
  const auto m = fractional_msd(lsol, 1.0);
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < times.size(); ++i) {
    lx.push_back(std::log(times[i]));
    ly.push_back(std::log(m.values[i]));
  }
  CHECK(stats::linear_regression(lx, ly).slope == doctest::Approx(1.0 / 1.5).epsilon(0.05 * 1.5));
  CHECK(default_moment_order(FractionalOrders(1.0, 1.5)) == doctest::Approx(1.35));
}

TEST_CASE("moment validation and wraparound warning") {
  const GridSpec g(64, 4.0, -2.0);
  DiffusionProblem p(FractionalOrders(1.0, 1.5), 1.0, ComplexField::point_mass(g, 32));
  const auto sol = solve_mode_exact(p, {0.0, 5.0});
  CHECK_THROWS_AS(fractional_msd(sol, 1.5), ValidationError);
  CHECK_THROWS_AS(fractional_msd(sol, 0.0), ValidationError);
  const auto m = fractional_msd(sol, 1.0);
  CHECK_FALSE(m.warnings.empty());
  CHECK(m.confined_mass[1] < kConfinementThreshold);
}

TEST_CASE("serial and parallel solvers agree bit-for-bit") {
  const auto init = ComplexField::sample(kUnitGrid, [](double x) { return cplx(std::exp(std::sin(x)), 0.0); });
  DiffusionProblem p(FractionalOrders(0.6, 1.3), 1.0, init);
  const auto a = solve_mode_exact(p, {0.5, 1.0}, Execution::serial);
  const auto b = solve_mode_exact(p, {0.5, 1.0}, Execution::parallel);
  const auto c = solve_l1_stepping(p, 0.01, 50, 10, Execution::serial);
  const auto d = solve_l1_stepping(p, 0.01, 50, 10, Execution::parallel);
  for (std::size_t i = 0; i < a.snapshots.size(); ++i) {
    for (std::size_t j = 0; j < kUnitGrid.n(); ++j) CHECK(a.snapshots[i][j] == b.snapshots[i][j]);
  }
  for (std::size_t i = 0; i < c.snapshots.size(); ++i) {
    for (std::size_t j = 0; j < kUnitGrid.n(); ++j) CHECK(c.snapshots[i][j] == d.snapshots[i][j]);
  }
}

}  // TEST_SUITE
