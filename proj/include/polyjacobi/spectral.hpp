#pragma once

#include <cstdint>
#include <vector>

#include "polyjacobi/operator_core.hpp"

namespace polyjacobi {

// All eigenvalues of the finite section, ascending. Dense solve; accurate to
// about 1e-10 of the spectral norm and deterministic for identical input.
std::vector<double> eigenvalues_symmetric(const BandedSymmetricMatrix& m);

enum class OperatorKind {
  h_sigma,          // Delta_D^sigma - b, essential spectrum [0, 4^s]
  h_sigma_shifted,  // Delta_D^sigma - 4^s + b, essential spectrum [-4^s, 0]
  w_sigma           // full polydiagonal operator
};

// Discrete spectrum of a finite-section truncation, split by essential edge.
struct SpectralReport {
  int sigma = 1;
  OperatorKind kind = OperatorKind::h_sigma;
  std::int64_t window_lo = 0;
  std::int64_t window_hi = 0;
  std::vector<double> eigenvalues_below;  // ascending: E_1^- < E_2^- < ...
  std::vector<double> eigenvalues_above;  // descending: E_1^+ > E_2^+ > ...
  double edge_margin = 0.0;
  Interval essential;
  bool converged = false;
  std::int64_t window_pair[2] = {0, 0};  // half-widths of the two compared windows
};

// Eigenvalues outside the essential interval, certified by window doubling:
// the section is solved on half-width M and 2M and a value is accepted only
// when the two windows agree to within `tolerance`. Up to four doublings.
SpectralReport discrete_spectrum(const PolyJacobiCoefficients& coeffs,
                                 OperatorKind kind, double tolerance = 1e-8);

enum class EdgeSide { below, above };

// Riesz mean sum_j |E_j - edge|^gamma. Every eigenvalue must lie strictly on
// the stated side of the edge.
double riesz_mean(const std::vector<double>& eigenvalues, double edge,
                  double gamma, EdgeSide side);

}  // namespace polyjacobi
