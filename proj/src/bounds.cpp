#include "polyjacobi/bounds.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <stdexcept>

namespace polyjacobi {

namespace {

void require_hypotheses(int sigma, double gamma) {
  if (sigma < 1 || sigma > kSigmaCap)
    throw std::domain_error("sigma out of range");
  if (gamma < 1.0)
    throw std::domain_error("the bounds require gamma >= 1");
}

double power_sum(const Sequence& s, double p, bool absolute) {
  double total = 0.0;
  for (double v : s.values()) {
    if (absolute) v = std::fabs(v);
    if (v != 0.0) total += std::pow(v, p);
  }
  return total;
}

// FNV-1a over the raw bytes of the canonical representation.
void digest_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void digest_sequence(std::uint64_t& h, const Sequence& s) {
  const std::int64_t off = s.is_zero() ? 0 : s.min_index();
  digest_mix(h, &off, sizeof(off));
  if (!s.is_zero())
    digest_mix(h, s.values().data(), s.values().size() * sizeof(double));
}

}  // namespace

std::string theorem_name(Theorem t) {
  switch (t) {
    case Theorem::thm2: return "thm2";
    case Theorem::cor3: return "cor3";
    case Theorem::thm4: return "thm4";
  }
  return "?";
}

double eta(int sigma, double gamma) {
  require_hypotheses(sigma, gamma);
  const double s2 = 2.0 * sigma;
  const double p = (s2 + 1.0) / s2;  // (2s+1)/2s
  const double log_gamma_part = std::lgamma(p + 1.0) + std::lgamma(gamma + 1.0) -
                                std::lgamma(gamma + p);
  const double log_front = std::log(s2) - p * std::log(s2 + 1.0);
  return std::exp(log_front + log_gamma_part);
}

double nu(int sigma, double gamma) {
  require_hypotheses(sigma, gamma);
  const double s2 = 2.0 * sigma;
  const double p = (s2 + 1.0) / s2;
  const double log_gamma_part = std::lgamma(p + 1.0) + std::lgamma(gamma + 1.0) -
                                std::lgamma(gamma + p);
  const double log_front = std::log(s2) + (gamma - 2.0) * std::log(s2 + 1.0);
  return std::exp(log_front + log_gamma_part);
}

double rhs_thm2(int sigma, double gamma, const Sequence& b) {
  require_hypotheses(sigma, gamma);
  for (double v : b.values())
    if (v < 0.0)
      throw std::domain_error("the Schroedinger-type bound requires b_n >= 0");
  const double p = gamma + 1.0 / (2.0 * sigma);
  return eta(sigma, gamma) * power_sum(b, p, /*absolute=*/false);
}

double rhs_thm4(int sigma, double gamma, const PolyJacobiCoefficients& coeffs) {
  require_hypotheses(sigma, gamma);
  const double p = gamma + 1.0 / (2.0 * sigma);
  double sum = power_sum(coeffs.b, p, /*absolute=*/true);
  for (const auto& dev : coeffs.deviations)
    sum += 4.0 * power_sum(dev, p, /*absolute=*/true);
  return nu(sigma, gamma) * sum;
}

std::string instance_digest(const PolyJacobiCoefficients& coeffs) {
  std::uint64_t h = 1469598103934665603ULL;
  digest_mix(h, &coeffs.sigma, sizeof(coeffs.sigma));
  digest_sequence(h, coeffs.b);
  for (const auto& d : coeffs.deviations) digest_sequence(h, d);
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

BoundReport verify_bound(Theorem theorem, int sigma, double gamma,
                         const PolyJacobiCoefficients& coeffs,
                         double tolerance) {
  require_hypotheses(sigma, gamma);
  if (coeffs.sigma != sigma)
    throw std::invalid_argument("sigma mismatch between coefficients and call");

  BoundReport report;
  report.theorem = theorem;
  report.sigma = sigma;
  report.gamma = gamma;
  report.instance_digest = instance_digest(coeffs);

  if (theorem == Theorem::thm2 || theorem == Theorem::cor3) {
    if (coeffs.has_deviations())
      throw std::invalid_argument(
          "thm2/cor3 apply to diagonal perturbations only");
    report.constant = eta(sigma, gamma);
    report.rhs = rhs_thm2(sigma, gamma, coeffs.b);
    const OperatorKind kind = theorem == Theorem::thm2
                                  ? OperatorKind::h_sigma
                                  : OperatorKind::h_sigma_shifted;
    const SpectralReport spec = discrete_spectrum(coeffs, kind, tolerance);
    report.converged = spec.converged;
    report.lhs = theorem == Theorem::thm2
                     ? riesz_mean(spec.eigenvalues_below, 0.0, gamma,
                                  EdgeSide::below)
                     : riesz_mean(spec.eigenvalues_above, 0.0, gamma,
                                  EdgeSide::above);
  } else {
    report.constant = nu(sigma, gamma);
    report.rhs = rhs_thm4(sigma, gamma, coeffs);
    const SpectralReport spec =
        discrete_spectrum(coeffs, OperatorKind::w_sigma, tolerance);
    report.converged = spec.converged;
    report.lhs = riesz_mean(spec.eigenvalues_below, spec.essential.lo, gamma,
                            EdgeSide::below) +
                 riesz_mean(spec.eigenvalues_above, spec.essential.hi, gamma,
                            EdgeSide::above);
  }
  report.ratio = report.rhs > 0.0 ? report.lhs / report.rhs : 0.0;
  return report;
}

}  // namespace polyjacobi
