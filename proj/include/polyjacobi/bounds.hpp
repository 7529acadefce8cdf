#pragma once

#include <string>

#include "polyjacobi/operator_core.hpp"
#include "polyjacobi/spectral.hpp"

namespace polyjacobi {

enum class Theorem { thm2, cor3, thm4 };

std::string theorem_name(Theorem t);

// eta_sigma^gamma = 2s/(2s+1)^((2s+1)/2s) * G((4s+1)/2s) G(g+1) / G(g+(2s+1)/2s)
double eta(int sigma, double gamma);

// nu_sigma^gamma = 2s (2s+1)^(g-2) * G((4s+1)/2s) G(g+1) / G(g+(2s+1)/2s)
double nu(int sigma, double gamma);

// eta * sum_n b_n^(g + 1/2s); requires b_n >= 0.
double rhs_thm2(int sigma, double gamma, const Sequence& b);

// nu * (sum_n |b_n|^(g+1/2s) + 4 sum_n sum_k |a_n^k - omega_k|^(g+1/2s)).
double rhs_thm4(int sigma, double gamma, const PolyJacobiCoefficients& coeffs);

struct BoundReport {
  Theorem theorem = Theorem::thm2;
  int sigma = 1;
  double gamma = 1.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs when rhs > 0
  double constant = 0.0;
  bool converged = false;
  std::string instance_digest;

  bool passed() const {
    if (!converged) return false;
    if (rhs == 0.0) return lhs == 0.0;
    return ratio <= 1.0 + 1e-9;
  }
};

// Hash of the instance data, stable across runs; ties reports to inputs.
std::string instance_digest(const PolyJacobiCoefficients& coeffs);

// Evaluates one inequality on one instance. The LHS is a Riesz mean of the
// converged finite-section spectrum, the RHS is rhs_thm2 / rhs_thm4. A report
// whose spectrum failed window-doubling is marked converged = false and never
// counts as a pass.
BoundReport verify_bound(Theorem theorem, int sigma, double gamma,
                         const PolyJacobiCoefficients& coeffs,
                         double tolerance = 1e-8);

}  // namespace polyjacobi
