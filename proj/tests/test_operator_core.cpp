#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "polyjacobi/operator_core.hpp"

using namespace polyjacobi;

namespace {

Sequence random_sequence(std::mt19937_64& rng, std::int64_t radius) {
  std::vector<double> vals(static_cast<std::size_t>(2 * radius + 1));
  for (double& v : vals)
    v = -1.0 + 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return Sequence(-radius, std::move(vals));
}

}  // namespace

TEST_CASE("binomial basics") {
  CHECK(binomial(4, 2) == 6);
  CHECK(binomial(7, 0) == 1);
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(28, 14) == 40116600);
  CHECK_THROWS_AS(binomial(3, 4), std::domain_error);
  CHECK_THROWS_AS(binomial(31, 2), std::domain_error);
}

TEST_CASE("combinatorial identities hold exactly up to 2*sigma_cap") {
  for (int a = 0; a <= 2 * kSigmaCap; ++a) {
    for (int b = 0; b < a; ++b)
      CHECK(binomial(a, b) + binomial(a, b + 1) == binomial(a + 1, b + 1));
    CHECK(2 * binomial(a, 0) + (a >= 1 ? binomial(a, 1) : 0) ==
          (a >= 1 ? binomial(a + 2, 1) : 2));
    if (a >= 1)
      CHECK(2 * binomial(a, a) + binomial(a, a - 1) == binomial(a + 2, a + 1));
  }
}

TEST_CASE("stencil fixed values") {
  CHECK(laplacian_stencil(1).coeffs == std::vector<std::int64_t>{-1, 2, -1});
  CHECK(laplacian_stencil(2).coeffs ==
        std::vector<std::int64_t>{1, -4, 6, -4, 1});
  CHECK(laplacian_stencil(3).coeffs ==
        std::vector<std::int64_t>{-1, 6, -15, 20, -15, 6, -1});
  CHECK_THROWS_AS(laplacian_stencil(0), std::domain_error);
  CHECK_THROWS_AS(laplacian_stencil(kSigmaCap + 1), std::domain_error);
}

TEST_CASE("stencil invariants for all sigma up to the cap") {
  for (int sigma = 1; sigma <= kSigmaCap; ++sigma) {
    const auto st = laplacian_stencil(sigma);
    REQUIRE(st.coeffs.size() == static_cast<std::size_t>(2 * sigma + 1));
    std::int64_t sum = 0, abs_sum = 0;
    for (int k = 0; k <= 2 * sigma; ++k) {
      CHECK(st.coeffs[k] == st.coeffs[2 * sigma - k]);  // symmetry
      if (k > 0) CHECK(st.coeffs[k] * st.coeffs[k - 1] < 0);  // sign alternation
      sum += st.coeffs[k];
      abs_sum += std::abs(st.coeffs[k]);
    }
    CHECK(st.coeffs[sigma] == binomial(2 * sigma, sigma));
    CHECK(st.coeffs[sigma] > 0);
    CHECK(sum == 0);
    CHECK(abs_sum == (std::int64_t{1} << (2 * sigma)));  // 4^sigma
  }
}

TEST_CASE("laplacian power on impulses") {
  const Sequence d0 = Sequence::delta(0);
  const Sequence r1 = apply_laplacian_power(1, d0);
  CHECK(r1.min_index() == -1);
  CHECK(r1.values() == std::vector<double>{-1, 2, -1});

  const Sequence r2 = apply_laplacian_power(2, d0, LaplacianMode::recursive);
  CHECK(r2.min_index() == -2);
  CHECK(r2.values() == std::vector<double>{1, -4, 6, -4, 1});
}

TEST_CASE("constants are annihilated away from support edges") {
  std::vector<double> ones(41, 1.0);
  const Sequence flat(-20, std::move(ones));
  const Sequence r = apply_laplacian_power(1, flat);
  CHECK(r(0) == 0.0);
  CHECK(r(5) == 0.0);
  CHECK(r(-19) == 0.0);
}

TEST_CASE("closed form and recursive application agree exactly") {
  std::mt19937_64 rng(20240817);
  for (int sigma = 1; sigma <= 8; ++sigma) {
    std::vector<double> vals(21);
    for (double& v : vals)
      v = static_cast<double>(static_cast<std::int64_t>(rng() % 201) - 100);
    const Sequence phi(-10, std::move(vals));
    const Sequence closed =
        apply_laplacian_power(sigma, phi, LaplacianMode::closed_form);
    const Sequence recursive =
        apply_laplacian_power(sigma, phi, LaplacianMode::recursive);
    CHECK(closed == recursive);  // bitwise on integer-valued input
  }
}

TEST_CASE("difference operators") {
  const Sequence d0 = Sequence::delta(0);
  const Sequence dd = difference(d0);
  CHECK(dd(-1) == 1.0);
  CHECK(dd(0) == -1.0);

  const Sequence lap = difference_adjoint(difference(d0));
  CHECK(lap.min_index() == -1);
  CHECK(lap.values() == std::vector<double>{-1, 2, -1});
}

TEST_CASE("D and D* are adjoint; Laplacian powers are self-adjoint") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const Sequence phi = random_sequence(rng, 12);
    const Sequence psi = random_sequence(rng, 15);
    CHECK(inner_product(difference(phi), psi) ==
          doctest::Approx(inner_product(phi, difference_adjoint(psi)))
              .epsilon(1e-12));
    const int sigma = 1 + trial % 4;
    const double a = inner_product(apply_laplacian_power(sigma, phi), psi);
    const double b = inner_product(phi, apply_laplacian_power(sigma, psi));
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("symbol point values and grid identity") {
  CHECK(symbol(1, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
  const double pi = std::acos(-1.0);
  CHECK(symbol(1, pi) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(symbol(2, pi / 2) == doctest::Approx(4.0).epsilon(1e-12));

  for (int sigma = 1; sigma <= 6; ++sigma) {
    const double top = std::pow(4.0, sigma);
    double max_diff = 0.0, grid_min = 1e300, grid_max = -1e300;
    for (int i = 0; i <= 10000; ++i) {
      const double x = -pi + 2.0 * pi * i / 10000.0;
      const double s = symbol(sigma, x);
      max_diff = std::max(max_diff, std::fabs(s - symbol_closed_form(sigma, x)));
      grid_min = std::min(grid_min, s);
      grid_max = std::max(grid_max, s);
    }
    CHECK(max_diff <= 1e-10 * top);
    CHECK(grid_min >= -1e-12);
    CHECK(grid_max <= top * (1.0 + 1e-12));
  }
}

TEST_CASE("essential spectra") {
  auto i1 = essential_spectrum(OperatorFamily::w_sigma, 1);
  CHECK(i1.lo == -2.0);
  CHECK(i1.hi == 2.0);
  auto i2 = essential_spectrum(OperatorFamily::laplacian_power, 2);
  CHECK(i2.lo == 0.0);
  CHECK(i2.hi == 16.0);
  auto i3 = essential_spectrum(OperatorFamily::w_sigma, 2);
  CHECK(i3.lo == -6.0);
  CHECK(i3.hi == 10.0);
}

TEST_CASE("free band coefficients") {
  CHECK(free_band_coefficients(1) == std::vector<std::int64_t>{-1});
  CHECK(free_band_coefficients(2) == std::vector<std::int64_t>{-4, 1});
  CHECK(free_band_coefficients(3) == std::vector<std::int64_t>{-15, 6, -1});
}

TEST_CASE("assemble_w_sigma free sections") {
  const auto free1 = assemble_w_sigma(PolyJacobiCoefficients::make(1), -2, 2);
  REQUIRE(free1.dim == 5);
  for (int i = 0; i < 5; ++i) CHECK(free1.at(i, i) == 0.0);
  for (int i = 0; i < 4; ++i) {
    CHECK(free1.at(i, i + 1) == -1.0);
    CHECK(free1.at(i + 1, i) == -1.0);
  }

  const auto free2 = assemble_w_sigma(PolyJacobiCoefficients::make(2), -4, 4);
  CHECK(free2.at(0, 0) == 0.0);
  CHECK(free2.at(3, 4) == -4.0);
  CHECK(free2.at(3, 5) == 1.0);
  CHECK(free2.at(3, 6) == 0.0);
}

TEST_CASE("diagonal perturbation adds at the center only") {
  auto coeffs = PolyJacobiCoefficients::make(1, Sequence::delta(0, 5.0));
  const auto m = assemble_w_sigma(coeffs, -2, 2);
  const auto free1 = assemble_w_sigma(PolyJacobiCoefficients::make(1), -2, 2);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      CHECK(m.at(i, j) == free1.at(i, j) + (i == 2 && j == 2 ? 5.0 : 0.0));
}

TEST_CASE("window too small raises with the minimal window") {
  auto coeffs = PolyJacobiCoefficients::make(1, Sequence::delta(6, 1.0));
  CHECK_THROWS_AS(assemble_w_sigma(coeffs, -2, 2), std::invalid_argument);
  CHECK_THROWS_AS(assemble_w_sigma(PolyJacobiCoefficients::make(2), 0, 2),
                  std::invalid_argument);
}

TEST_CASE("free section plus center binomial equals the Laplacian section") {
  for (int sigma = 1; sigma <= 5; ++sigma) {
    auto shifted = assemble_w_sigma(PolyJacobiCoefficients::make(sigma), -12, 12);
    shifted.add_scalar(static_cast<double>(binomial(2 * sigma, sigma)));
    const auto lap = assemble_laplacian_power_section(sigma, -12, 12);
    // Entries identical, including the band layout of Delta_D^sigma itself.
    const auto st = laplacian_stencil(sigma);
    for (std::int64_t i = 0; i < lap.dim; ++i)
      for (std::int64_t j = i; j <= std::min<std::int64_t>(lap.dim - 1, i + sigma); ++j) {
        CHECK(shifted.at(i, j) == lap.at(i, j));
        CHECK(lap.at(i, j) ==
              static_cast<double>(st.coeffs[static_cast<std::size_t>(sigma + j - i)]));
      }
  }
}

TEST_CASE("sandwich potentials") {
  SUBCASE("unperturbed bands leave b unchanged") {
    auto coeffs =
        PolyJacobiCoefficients::make(2, Sequence::delta(1, 0.75));
    const auto pots = sandwich_potentials(coeffs);
    CHECK(pots.b_plus == coeffs.b);
    CHECK(pots.b_minus == coeffs.b);
  }
  SUBCASE("single first-band deviation spreads to both endpoints") {
    auto coeffs = PolyJacobiCoefficients::make(1, Sequence::zero(),
                                               {Sequence::delta(0, 0.5)});
    const auto pots = sandwich_potentials(coeffs);
    CHECK(pots.b_plus(0) == 0.5);
    CHECK(pots.b_plus(1) == 0.5);
    CHECK(pots.b_plus(2) == 0.0);
    CHECK(pots.b_minus(0) == -0.5);
    CHECK(pots.b_minus(1) == -0.5);
  }
}
