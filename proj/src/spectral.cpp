#include "polyjacobi/spectral.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyjacobi {

namespace {

constexpr int kDoublingCap = 4;

struct OutsideEigs {
  std::vector<double> below;  // ascending
  std::vector<double> above;  // descending
};

BandedSymmetricMatrix assemble_section(const PolyJacobiCoefficients& coeffs,
                                       OperatorKind kind, std::int64_t half_width) {
  const std::int64_t lo = -half_width, hi = half_width;
  switch (kind) {
    case OperatorKind::h_sigma: {
      auto m = assemble_laplacian_power_section(coeffs.sigma, lo, hi);
      add_diagonal(m, coeffs.b, lo, -1.0);
      return m;
    }
    case OperatorKind::h_sigma_shifted: {
      auto m = assemble_laplacian_power_section(coeffs.sigma, lo, hi);
      add_diagonal(m, coeffs.b, lo, +1.0);
      m.add_scalar(-std::pow(4.0, coeffs.sigma));
      return m;
    }
    case OperatorKind::w_sigma:
      return assemble_w_sigma(coeffs, lo, hi);
  }
  throw std::logic_error("unknown operator kind");
}

Interval essential_interval(const PolyJacobiCoefficients& coeffs,
                            OperatorKind kind) {
  switch (kind) {
    case OperatorKind::h_sigma:
      return essential_spectrum(OperatorFamily::laplacian_power, coeffs.sigma);
    case OperatorKind::h_sigma_shifted: {
      const double top = std::pow(4.0, coeffs.sigma);
      return {-top, 0.0};
    }
    case OperatorKind::w_sigma:
      return essential_spectrum(OperatorFamily::w_sigma, coeffs.sigma);
  }
  throw std::logic_error("unknown operator kind");
}

OutsideEigs outside_eigenvalues(const PolyJacobiCoefficients& coeffs,
                                OperatorKind kind, std::int64_t half_width,
                                const Interval& essential, double margin) {
  const auto eigs =
      eigenvalues_symmetric(assemble_section(coeffs, kind, half_width));
  OutsideEigs out;
  for (double e : eigs) {
    if (e < essential.lo - margin) out.below.push_back(e);
    if (e > essential.hi + margin) out.above.push_back(e);
  }
  std::sort(out.below.begin(), out.below.end());
  std::sort(out.above.begin(), out.above.end(), std::greater<double>());
  return out;
}

bool lists_match(const std::vector<double>& x, const std::vector<double>& y,
                 double tol) {
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::fabs(x[i] - y[i]) >= tol) return false;
  return true;
}

}  // namespace

std::vector<double> eigenvalues_symmetric(const BandedSymmetricMatrix& m) {
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m.dim, m.dim);
  for (std::int64_t i = 0; i < m.dim; ++i)
    for (std::int64_t j = std::max<std::int64_t>(0, i - m.bandwidth);
         j <= std::min<std::int64_t>(m.dim - 1, i + m.bandwidth); ++j) {
      const double v = m.at(i, j);
      if (!std::isfinite(v))
        throw std::invalid_argument("matrix has non-finite entries");
      dense(i, j) = v;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense,
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("symmetric eigensolver failed to converge");
  std::vector<double> eigs(solver.eigenvalues().data(),
                           solver.eigenvalues().data() + m.dim);
  std::sort(eigs.begin(), eigs.end());
  return eigs;
}

SpectralReport discrete_spectrum(const PolyJacobiCoefficients& coeffs,
                                 OperatorKind kind, double tolerance) {
  if (tolerance <= 0.0) throw std::invalid_argument("tolerance must be > 0");
  const Interval essential = essential_interval(coeffs, kind);
  const double margin =
      std::max(1e-6, 1e-6 * std::pow(4.0, coeffs.sigma));

  SpectralReport report;
  report.sigma = coeffs.sigma;
  report.kind = kind;
  report.edge_margin = margin;
  report.essential = essential;

  std::int64_t half = coeffs.support_radius() + 8 * coeffs.sigma + 40;
  OutsideEigs prev = outside_eigenvalues(coeffs, kind, half, essential, margin);
  for (int round = 0; round < kDoublingCap; ++round) {
    const std::int64_t next_half = 2 * half;
    OutsideEigs cur =
        outside_eigenvalues(coeffs, kind, next_half, essential, margin);
    const bool ok = lists_match(prev.below, cur.below, tolerance) &&
                    lists_match(prev.above, cur.above, tolerance);
    report.window_pair[0] = half;
    report.window_pair[1] = next_half;
    report.window_lo = -next_half;
    report.window_hi = next_half;
    report.eigenvalues_below = cur.below;
    report.eigenvalues_above = cur.above;
    if (ok) {
      report.converged = true;
      return report;
    }
    prev = std::move(cur);
    half = next_half;
  }
  report.converged = false;
  return report;
}

double riesz_mean(const std::vector<double>& eigenvalues, double edge,
                  double gamma, EdgeSide side) {
  if (gamma < 1.0) throw std::domain_error("riesz_mean requires gamma >= 1");
  double s = 0.0;
  for (double e : eigenvalues) {
    const bool ok = side == EdgeSide::below ? e < edge : e > edge;
    if (!ok)
      throw std::invalid_argument(
          "eigenvalue on the wrong side of the essential edge");
    s += std::pow(std::fabs(e - edge), gamma);
  }
  return s;
}

}  // namespace polyjacobi
