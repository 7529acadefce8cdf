#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "polyjacobi/spectral.hpp"

using namespace polyjacobi;

namespace {

// Independent oracle for the single bound state of Delta_D - c*delta_0:
// the Green's function condition c^2 = e^2 - 4e, solved by bisection.
double single_site_eigenvalue_oracle(double c) {
  auto f = [c](double e) { return e * e - 4.0 * e - c * c; };
  double lo = -(c + 4.0), hi = -1e-300;  // f(lo) > 0 > f(hi)
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("eigenvalues of tiny explicit matrices") {
  auto m1 = BandedSymmetricMatrix::zeros(1, 0);
  m1.entry(0, 0) = -3.25;
  CHECK(eigenvalues_symmetric(m1) == std::vector<double>{-3.25});

  auto m2 = BandedSymmetricMatrix::zeros(2, 1);
  m2.entry(0, 1) = -1.0;
  const auto e2 = eigenvalues_symmetric(m2);
  CHECK(e2[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e2[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("non-finite entries are rejected") {
  auto m = BandedSymmetricMatrix::zeros(3, 1);
  m.entry(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(eigenvalues_symmetric(m), std::invalid_argument);
}

TEST_CASE("tridiagonal Toeplitz closed form is reproduced") {
  const double pi = std::acos(-1.0);
  for (int n = 1; n <= 50; ++n) {
    auto m = BandedSymmetricMatrix::zeros(n, 1);
    for (double& v : m.bands[1]) v = -1.0;
    const auto eigs = eigenvalues_symmetric(m);
    REQUIRE(static_cast<int>(eigs.size()) == n);
    for (int k = 1; k <= n; ++k)
      CHECK(std::fabs(eigs[k - 1] + 2.0 * std::cos(k * pi / (n + 1))) <= 1e-10);
  }
}

TEST_CASE("single-site potential, sigma = 1") {
  for (double c : {0.5, 1.0, 3.0}) {
    auto coeffs = PolyJacobiCoefficients::make(1, Sequence::delta(0, c));
    const auto report = discrete_spectrum(coeffs, OperatorKind::h_sigma);
    CHECK(report.converged);
    REQUIRE(report.eigenvalues_below.size() == 1);
    CHECK(report.eigenvalues_above.empty());
    const double oracle = single_site_eigenvalue_oracle(c);
    CHECK(std::fabs(report.eigenvalues_below[0] - oracle) <= 1e-8);
    // Closed form of the same condition.
    CHECK(oracle ==
          doctest::Approx(2.0 - std::sqrt(4.0 + c * c)).epsilon(1e-12));
  }
  // Frozen value for c = 3.
  auto coeffs = PolyJacobiCoefficients::make(1, Sequence::delta(0, 3.0));
  const auto report = discrete_spectrum(coeffs, OperatorKind::h_sigma);
  CHECK(report.eigenvalues_below[0] ==
        doctest::Approx(-1.6055512754639893).epsilon(1e-9));
}

TEST_CASE("free operators have empty discrete spectrum") {
  for (int sigma : {1, 2, 3}) {
    const auto coeffs = PolyJacobiCoefficients::make(sigma);
    for (OperatorKind kind :
         {OperatorKind::h_sigma, OperatorKind::h_sigma_shifted,
          OperatorKind::w_sigma}) {
      const auto report = discrete_spectrum(coeffs, kind);
      CHECK(report.converged);
      CHECK(report.eigenvalues_below.empty());
      CHECK(report.eigenvalues_above.empty());
    }
  }
}

TEST_CASE("sigma = 2 single site matches a wide dense truncation") {
  const double c = 0.4;
  auto coeffs = PolyJacobiCoefficients::make(2, Sequence::delta(0, c));
  const auto report = discrete_spectrum(coeffs, OperatorKind::h_sigma);
  CHECK(report.converged);
  REQUIRE(report.eigenvalues_below.size() == 1);

  // Brute-force oracle: one dense solve at half-width 400.
  auto m = assemble_laplacian_power_section(2, -400, 400);
  add_diagonal(m, coeffs.b, -400, -1.0);
  const auto eigs = eigenvalues_symmetric(m);
  CHECK(std::fabs(report.eigenvalues_below[0] - eigs.front()) <= 1e-8);
  CHECK(eigs.front() < 0.0);
}

TEST_CASE("pointwise larger potentials do not shrink the eigenvalue sum") {
  // Variational check at a fixed window.
  const std::int64_t half = 60;
  auto sum_below = [&](const Sequence& b) {
    auto m = assemble_laplacian_power_section(1, -half, half);
    add_diagonal(m, b, -half, -1.0);
    double s = 0.0;
    for (double e : eigenvalues_symmetric(m))
      if (e < 0.0) s += -e;
    return s;
  };
  const Sequence small = Sequence::delta(-1, 0.8) + Sequence::delta(2, 1.5);
  const Sequence big = small + Sequence::delta(-1, 0.7) + Sequence::delta(0, 2.0);
  CHECK(sum_below(big) >= sum_below(small) - 1e-12);
}

TEST_CASE("free w_sigma sections stay inside the essential interval") {
  for (int sigma : {1, 2, 3}) {
    const auto coeffs = PolyJacobiCoefficients::make(sigma);
    const auto m = assemble_w_sigma(coeffs, -80, 80);
    const auto eigs = eigenvalues_symmetric(m);
    const auto ess = essential_spectrum(OperatorFamily::w_sigma, sigma);
    const double eps = 1e-9 * std::pow(4.0, sigma);
    CHECK(eigs.front() >= ess.lo - eps);
    CHECK(eigs.back() <= ess.hi + eps);
  }
}

TEST_CASE("riesz_mean") {
  CHECK(riesz_mean({}, 0.0, 1.0, EdgeSide::below) == 0.0);
  CHECK(riesz_mean({-1.6055512755}, 0.0, 1.0, EdgeSide::below) ==
        doctest::Approx(1.6055512755).epsilon(1e-15));
  CHECK(riesz_mean({-3.0, -5.0}, -2.0, 2.0, EdgeSide::below) ==
        doctest::Approx(10.0).epsilon(1e-15));
  CHECK_THROWS_AS(riesz_mean({1.0}, 0.0, 1.0, EdgeSide::below),
                  std::invalid_argument);
  CHECK_THROWS_AS(riesz_mean({-1.0}, 0.0, 0.5, EdgeSide::below),
                  std::domain_error);
}

TEST_CASE("spectral report ordering") {
  // Two-site potential with two bound states below the edge.
  auto coeffs = PolyJacobiCoefficients::make(
      1, Sequence::delta(0, 3.0) + Sequence::delta(7, 1.0));
  const auto report = discrete_spectrum(coeffs, OperatorKind::h_sigma);
  REQUIRE(report.eigenvalues_below.size() == 2);
  CHECK(report.eigenvalues_below[0] < report.eigenvalues_below[1]);
  CHECK(report.eigenvalues_below[1] < -report.edge_margin);
}
