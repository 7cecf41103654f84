#include "doctest.h"

#include "fracq/errors.hpp"
#include "fracq/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace fracq;

// Cosine V0 = 2, a = 1, classical constants, 64 zone points: independent
// dense plane-wave diagonalisation (numpy eigvalsh, 81 waves).
constexpr double kBandwidthRatio = 0.09335076762398452;

namespace {

double bandwidth(const BandStructure& bs, std::size_t n) {
  double lo = 1e300;
  double hi = -1e300;
  for (const auto& row : bs.bands) {
    lo = std::min(lo, row[n]);
    hi = std::max(hi, row[n]);
  }
  return hi - lo;
}

}  // namespace

TEST_SUITE("bands") {

TEST_CASE("brillouin zone sampling") {
  const auto q = brillouin_zone(2.0, 4);
  CHECK(q.size() == 4);
  CHECK(q.front() == doctest::Approx(-std::numbers::pi / 2.0));
  CHECK(q.back() < std::numbers::pi / 2.0);
}

TEST_CASE("free bands are the folded dispersion") {
  const auto c = PhysicalConstants::classical();
  const auto q = brillouin_zone(1.0, 9);
  for (const double mu : {0.5, 1.0, 2.0}) {
    const FractionalOrders orders(1.0, mu);
    const auto bs = band_structure(PotentialSpec(PotentialKind::square, 0.0, 1.0), c, orders, 3, 20, q);
    CHECK(bs.basis_size == 21);
    for (std::size_t i = 0; i < q.size(); ++i) {
      std::vector<double> folded;
      for (int m = -10; m <= 10; ++m) folded.push_back(dispersion_energy(q[i] + 2.0 * std::numbers::pi * m, c, orders));
      std::sort(folded.begin(), folded.end());
      for (std::size_t n = 0; n < 3; ++n) CHECK(std::abs(bs.bands[i][n] - folded[n]) <= 1e-12 * std::max(1.0, folded[n]));
    }
  }
  const auto at_zero = band_structure(PotentialSpec(PotentialKind::cosine, 0.0, 1.0), c, FractionalOrders(1.0, 2.0), 1, 7, {0.0});
  CHECK(at_zero.bands[0][0] == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("bands are sorted and even in q") {
  const auto c = PhysicalConstants::classical();
  for (const auto kind : {PotentialKind::cosine, PotentialKind::square, PotentialKind::barrier, PotentialKind::well}) {
    const PotentialSpec v(kind, 4.0, 1.0, 0.25);
    const auto plus = band_structure(v, c, FractionalOrders(1.0, 1.2), 5, 41, {0.4, 1.7, 3.0});
    const auto minus = band_structure(v, c, FractionalOrders(1.0, 1.2), 5, 41, {-0.4, -1.7, -3.0});
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::is_sorted(plus.bands[i].begin(), plus.bands[i].end()));
      for (std::size_t n = 0; n < 5; ++n) CHECK(std::abs(plus.bands[i][n] - minus.bands[i][n]) <= 1e-9);
    }
  }
}

TEST_CASE("self-check certifies converged bases and rejects truncated ones") {
  const auto c = PhysicalConstants::classical();
  const PotentialSpec cosine(PotentialKind::cosine, 5.0, 1.0);
  BandOptions opts;
  opts.self_check = true;
  const auto ok = band_structure(cosine, c, FractionalOrders(1.0, 2.0), 4, 31, brillouin_zone(1.0, 8), opts);
  CHECK(ok.truncation_shift <= 1e-8);
  // A square well converges algebraically; a minimal basis cannot be certified.
  const PotentialSpec square(PotentialKind::square, 50.0, 1.0);
  CHECK_THROWS_AS(band_structure(square, c, FractionalOrders(1.0, 0.5), 4, 13, {0.0}, opts), AccuracyLoss);
}

TEST_CASE("band structure validation") {
  const auto c = PhysicalConstants::classical();
  const PotentialSpec v(PotentialKind::cosine, 1.0, 1.0);
  CHECK_THROWS_AS(band_structure(v, c, FractionalOrders(1.0, 2.0), 4, 12, {0.0}), ValidationError);
  CHECK_THROWS_AS(band_structure(v, c, FractionalOrders(1.0, 2.0), 2, 11, {4.0}), ValidationError);
}

TEST_CASE("fractional versus normal laplacian bands") {
  const auto c = PhysicalConstants::classical();
  const PotentialSpec v(PotentialKind::cosine, 2.0, 1.0);
  const auto q = brillouin_zone(1.0, 64);
  const auto half = band_structure(v, c, FractionalOrders(1.0, 0.5), 3, 81, q);
  const auto two = band_structure(v, c, FractionalOrders(1.0, 2.0), 3, 81, q);
  const auto edge_half = band_structure(v, c, FractionalOrders(1.0, 0.5), 2, 81, {-std::numbers::pi});
  const auto edge_two = band_structure(v, c, FractionalOrders(1.0, 2.0), 2, 81, {-std::numbers::pi});
  const double gap_half = edge_half.bands[0][1] - edge_half.bands[0][0];
  const double gap_two = edge_two.bands[0][1] - edge_two.bands[0][0];
  CHECK(gap_half > 1e-3);
  CHECK(gap_two > 1e-3);
  const double ratio = bandwidth(half, 0) / bandwidth(two, 0);
  CHECK(ratio == doctest::Approx(kBandwidthRatio).epsilon(1e-9));
}

}  // TEST_SUITE
