#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "polyjacobi/bounds.hpp"
#include "polyjacobi/operator_core.hpp"

namespace polyjacobi {

// Deterministic uniform generator; the double mapping is fixed here rather
// than delegated to distribution objects so a seed pins the exact stream.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  double uniform() {  // [0, 1)
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + static_cast<std::int64_t>(
                    engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }

private:
  std::mt19937_64 engine_;
};

struct RandomInstanceSpec {
  std::uint64_t seed = 0;
  std::int64_t support_radius = 15;
  double amplitude = 1.0;
  int sigma_lo = 1;
  int sigma_hi = 3;
  int count = 100;
};

// Random finitely supported sequence: window radius uniform in
// [0, max_radius], entries uniform in [-amplitude, amplitude]. Never zero.
Sequence random_sequence(Rng& rng, std::int64_t max_radius, double amplitude);
Sequence random_nonnegative_sequence(Rng& rng, std::int64_t max_radius,
                                     double amplitude);
PolyJacobiCoefficients random_coefficients(Rng& rng, int sigma,
                                           std::int64_t max_radius,
                                           double amplitude);

// Margin RHS - LHS of the discrete Kolmogorov inequality
// ||D^k phi|| <= ||phi||^(1-k/n) ||D^n phi||^(k/n); also reports the RHS so
// callers can apply a relative slack.
struct InequalityMargin {
  double lhs = 0.0;
  double rhs = 0.0;
  double margin() const { return rhs - lhs; }
};

InequalityMargin check_kolmogorov(const Sequence& phi, int k, int n);

// ||phi||_inf <= ||phi||^(1-1/2s) ||D^s phi||^(1/2s)
InequalityMargin check_agmon(const Sequence& phi, int sigma);

struct OrthonormalSystem {
  std::vector<Sequence> sequences;
  double gram_tolerance = 1e-12;

  // Largest |<psi_j, psi_k> - delta_jk| over all pairs.
  double gram_deviation() const;
};

// Modified Gram-Schmidt with one re-orthogonalization pass, preserving the
// input order. Throws when a vector is near-dependent on its predecessors
// (residual norm below 1e-8 before normalization).
OrthonormalSystem orthonormalize(const std::vector<Sequence>& raw);

// Orthonormal system built from random finitely supported sequences;
// near-dependent draws are regenerated.
OrthonormalSystem make_orthonormal_system(Rng& rng, int n,
                                          std::int64_t max_radius,
                                          double amplitude = 1.0);

// sum_n rho(n)^(2s+1) <= sum_j ||D^s psi_j||^2 with rho(n) = sum_j psi_j(n)^2
InequalityMargin check_dgsi(const OrthonormalSystem& system, int sigma);

// Minimum eigenvalues of W(omega, b+) - W and W - W(omega, b-) on a window
// covering the perturbation, plus the matrix norms used for relative slack.
struct SandwichCheck {
  double min_eig_plus = 0.0;
  double min_eig_minus = 0.0;
  double norm_plus = 0.0;
  double norm_minus = 0.0;
};

SandwichCheck check_sandwich(const PolyJacobiCoefficients& coeffs);

// (1/B(g-1,2)) * integral_0^e t^(g-2) (e-t) dt = e^g, checked by adaptive
// quadrature. Returns relative error.
double aizenman_lieb_identity_error(double e, double gamma);

struct SuiteEntry {
  std::string check;
  int index = 0;
  double margin = 0.0;     // signed slack, >= threshold to pass
  double threshold = 0.0;  // already scaled by the relevant RHS/norm
  bool pass = false;
};

struct SuiteReport {
  std::vector<SuiteEntry> entries;
  std::string seed_digest;

  int failures() const;
  bool all_passed() const { return failures() == 0; }
  // Deterministic text rendering: one line per entry ordered by
  // (check, index), worst margin per check, summary line.
  std::string to_text() const;
};

// Runs every inequality check on a seeded corpus plus the bound-constant
// identities. Deterministic given the spec. When inject_fault is set, the
// first entry's margin is negated after evaluation (wiring check for the
// CLI exit status).
SuiteReport run_suite(const RandomInstanceSpec& spec, bool inject_fault = false);

}  // namespace polyjacobi
