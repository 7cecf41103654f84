#include "doctest.h"

#include "fracq/kernels.hpp"
#include "fracq/random.hpp"

#include <cmath>
#include <vector>

using namespace fracq;
using kernels::L1History;
using kernels::cplx;

// The OpenMP kernels must reproduce the serial reference bit-for-bit.
TEST_SUITE("kernels") {

TEST_CASE("scale and multiply") {
  std::vector<cplx> a(1000);
  std::vector<double> f(1000);
  std::vector<cplx> g(1000);
  RandomStream rng(3, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = cplx(rng.normal(), rng.normal());
    f[i] = rng.uniform();
    g[i] = cplx(rng.normal(), rng.normal());
  }
  auto s = a;
  auto p = a;
  kernels::scale_modes<Execution::serial>(s, f);
  kernels::scale_modes<Execution::parallel>(p, f);
  CHECK(s == p);
  kernels::multiply_pointwise<Execution::serial>(s, g);
  kernels::multiply_pointwise<Execution::parallel>(p, g);
  CHECK(s == p);
}

TEST_CASE("mittag-leffler map") {
  std::vector<cplx> args;
  for (int i = 0; i < 200; ++i) args.push_back(std::polar(0.3 * i, 0.01 * i - 1.0));
  std::vector<cplx> s(args.size());
  std::vector<cplx> p(args.size());
  kernels::mittag_leffler_map<Execution::serial>(0.6, args, s);
  kernels::mittag_leffler_map<Execution::parallel>(0.6, args, p);
  CHECK(s == p);
}

TEST_CASE("l1 step") {
  std::vector<cplx> init(64);
  std::vector<double> diag(64);
  for (std::size_t i = 0; i < init.size(); ++i) {
    init[i] = cplx(std::cos(0.1 * i), std::sin(0.3 * i));
    diag[i] = 1.0 + 0.05 * static_cast<double>(i * i);
  }
  const std::vector<double> w = {1.0, 0.4, 0.25, 0.18, 0.14, 0.11, 0.09, 0.08};
  L1History hs(init, w.size());
  L1History hp(init, w.size());
  for (std::size_t step = 0; step < w.size(); ++step) {
    kernels::l1_step<Execution::serial>(hs, w, diag);
    kernels::l1_step<Execution::parallel>(hp, w, diag);
  }
  CHECK(hs.current == hp.current);
  CHECK(hs.increments == hp.increments);
}

TEST_CASE("stable walks and moments") {
  const std::size_t paths = 300;
  const std::size_t steps = 50;
  std::vector<double> s(paths * (steps + 1));
  std::vector<double> p(s.size());
  kernels::stable_walks<Execution::serial>(1.3, 0.5, steps, 9, 0, paths, s);
  kernels::stable_walks<Execution::parallel>(1.3, 0.5, steps, 9, 0, paths, p);
  CHECK(s == p);
  std::vector<double> ms(steps + 1);
  std::vector<double> mp(steps + 1);
  kernels::abs_moments<Execution::serial>(s, paths, steps + 1, 0.6, ms);
  kernels::abs_moments<Execution::parallel>(p, paths, steps + 1, 0.6, mp);
  CHECK(ms == mp);
  CHECK(ms[0] == 0.0);
}

}  // TEST_SUITE
