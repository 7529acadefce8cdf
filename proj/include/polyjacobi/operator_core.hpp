#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyjacobi/sequence.hpp"

namespace polyjacobi {

// Largest bandwidth the exact integer machinery supports. C(2*kSigmaCap,
// kSigmaCap) fits in 64 bits with room for the combinatorial identity checks.
inline constexpr int kSigmaCap = 14;

// Exact C(a, b) by Pascal recurrence; a is capped at 2*kSigmaCap + 2 so all
// values used by the stencils and identity checks stay exact in 64 bits.
std::int64_t binomial(int a, int b);

// Coefficients of the closed-form (2*sigma+1)-point stencil of the sigma-th
// power of the discrete Laplacian: coeffs[k] = C(2s,k) * (-1)^(k+s).
struct StencilCoefficients {
  int sigma = 0;
  std::vector<std::int64_t> coeffs;  // length 2*sigma + 1
};

StencilCoefficients laplacian_stencil(int sigma);

enum class LaplacianMode { closed_form, recursive };

// Applies the sigma-th Laplacian power to a finitely supported sequence.
// closed_form uses the binomial stencil, recursive iterates D*D sigma times;
// the two agree exactly on exactly representable inputs.
Sequence apply_laplacian_power(int sigma, const Sequence& phi,
                               LaplacianMode mode = LaplacianMode::closed_form);

// Fourier symbol of the sigma-th Laplacian power, evaluated as the cosine
// series C(2s,s) + 2*sum_{k<s} C(2s,k)(-1)^(k+s) cos((s-k)x).
double symbol(int sigma, double x);

// The same symbol in closed form, (4 sin^2(x/2))^sigma.
double symbol_closed_form(int sigma, double x);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

enum class OperatorFamily { laplacian_power, w_sigma };

// [0, 4^s] for the Laplacian power, shifted down by C(2s,s) for W_sigma.
Interval essential_spectrum(OperatorFamily kind, int sigma);

// Off-diagonal coefficients of the free operator W_sigma^0:
// omega_i = C(2s, s+i) * (-1)^i, i = 1..sigma.
std::vector<std::int64_t> free_band_coefficients(int sigma);

// Perturbation data of a polydiagonal Jacobi operator W_sigma: diagonal b
// and, per band i = 1..sigma, the deviation a_n^i - omega_i. Deviations are
// finitely supported, so W_sigma - W_sigma^0 is compact.
struct PolyJacobiCoefficients {
  int sigma = 1;
  Sequence b;
  std::vector<Sequence> deviations;     // size sigma, band i at index i-1
  std::vector<std::int64_t> omegas;     // size sigma

  static PolyJacobiCoefficients make(int sigma, Sequence b = {},
                                     std::vector<Sequence> deviations = {});

  bool has_deviations() const {
    for (const auto& d : deviations)
      if (!d.is_zero()) return true;
    return false;
  }

  // Largest |index| appearing in b or any deviation band.
  std::int64_t support_radius() const;
};

// Finite section of a real symmetric banded matrix; only the diagonal and
// the upper bands are stored. bands[d] holds the d-th superdiagonal and has
// length dim - d.
struct BandedSymmetricMatrix {
  std::int64_t dim = 0;
  int bandwidth = 0;
  std::vector<std::vector<double>> bands;

  static BandedSymmetricMatrix zeros(std::int64_t dim, int bandwidth);

  double at(std::int64_t row, std::int64_t col) const;
  double& entry(std::int64_t row, std::int64_t col);

  // max_i sum_j |m_ij|, an upper bound for the spectral norm.
  double inf_norm() const;

  BandedSymmetricMatrix& add_scalar(double c);      // c * identity
  friend BandedSymmetricMatrix operator-(const BandedSymmetricMatrix& x,
                                         const BandedSymmetricMatrix& y);
};

// Dirichlet finite section of W_sigma on the index window [lo, hi]. Matrix
// row n carries diagonal b_n and entries (n, n+i) = omega_i + deviation_i(n).
// The window must contain the support of b and of every deviation band.
BandedSymmetricMatrix assemble_w_sigma(const PolyJacobiCoefficients& coeffs,
                                       std::int64_t lo, std::int64_t hi);

// Dirichlet finite section of the Laplacian power on [lo, hi]: diagonal
// C(2s,s), band d equal to C(2s,s+d)(-1)^d.
BandedSymmetricMatrix assemble_laplacian_power_section(int sigma,
                                                       std::int64_t lo,
                                                       std::int64_t hi);

// Adds s * diag(b) restricted to the window.
void add_diagonal(BandedSymmetricMatrix& m, const Sequence& b,
                  std::int64_t lo, double scale = 1.0);

// Diagonals b^(+/-) of the sandwich comparison operators:
// b_n^(+/-) = b_n +/- sum_k (|dev_k(n-k)| + |dev_k(n)|).
struct SandwichPotentials {
  Sequence b_minus;
  Sequence b_plus;
};

SandwichPotentials sandwich_potentials(const PolyJacobiCoefficients& coeffs);

}  // namespace polyjacobi
