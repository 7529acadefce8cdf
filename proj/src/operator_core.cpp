#include "polyjacobi/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polyjacobi {

namespace {

constexpr int kMaxBinomialRow = 2 * kSigmaCap + 2;

const std::vector<std::vector<std::int64_t>>& pascal_table() {
  static const std::vector<std::vector<std::int64_t>> table = [] {
    std::vector<std::vector<std::int64_t>> t(kMaxBinomialRow + 1);
    for (int a = 0; a <= kMaxBinomialRow; ++a) {
      t[a].assign(static_cast<std::size_t>(a) + 1, 1);
      for (int b = 1; b < a; ++b) t[a][b] = t[a - 1][b - 1] + t[a - 1][b];
    }
    return t;
  }();
  return table;
}

void require_sigma(int sigma) {
  if (sigma < 1 || sigma > kSigmaCap)
    throw std::domain_error("sigma must lie in [1, " +
                            std::to_string(kSigmaCap) + "], got " +
                            std::to_string(sigma));
}

}  // namespace

std::int64_t binomial(int a, int b) {
  if (a < 0 || b < 0 || b > a)
    throw std::domain_error("binomial: require 0 <= b <= a");
  if (a > kMaxBinomialRow)
    throw std::domain_error(
        "binomial: a = " + std::to_string(a) + " exceeds the exact range " +
        std::to_string(kMaxBinomialRow) + " implied by sigma cap " +
        std::to_string(kSigmaCap));
  return pascal_table()[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
}

StencilCoefficients laplacian_stencil(int sigma) {
  require_sigma(sigma);
  StencilCoefficients st;
  st.sigma = sigma;
  st.coeffs.resize(static_cast<std::size_t>(2 * sigma + 1));
  for (int k = 0; k <= 2 * sigma; ++k) {
    const std::int64_t sign = ((k + sigma) % 2 == 0) ? 1 : -1;
    st.coeffs[static_cast<std::size_t>(k)] = sign * binomial(2 * sigma, k);
  }
  return st;
}

Sequence apply_laplacian_power(int sigma, const Sequence& phi,
                               LaplacianMode mode) {
  require_sigma(sigma);
  if (phi.is_zero()) return Sequence::zero();
  if (mode == LaplacianMode::recursive) {
    // Delta_D = D*D applied sigma times.
    Sequence out = phi;
    for (int i = 0; i < sigma; ++i) out = difference_adjoint(difference(out));
    return out;
  }
  const StencilCoefficients st = laplacian_stencil(sigma);
  const std::int64_t lo = phi.min_index() - sigma;
  const std::int64_t hi = phi.max_index() + sigma;
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (std::int64_t n = lo; n <= hi; ++n) {
    double s = 0.0;
    for (int k = 0; k <= 2 * sigma; ++k)
      s += static_cast<double>(st.coeffs[static_cast<std::size_t>(k)]) *
           phi(n - sigma + k);
    out[static_cast<std::size_t>(n - lo)] = s;
  }
  return Sequence(lo, std::move(out));
}

double symbol(int sigma, double x) {
  require_sigma(sigma);
  double s = static_cast<double>(binomial(2 * sigma, sigma));
  for (int k = 0; k < sigma; ++k) {
    const double sign = ((k + sigma) % 2 == 0) ? 1.0 : -1.0;
    s += 2.0 * sign * static_cast<double>(binomial(2 * sigma, k)) *
         std::cos((sigma - k) * x);
  }
  return s;
}

double symbol_closed_form(int sigma, double x) {
  require_sigma(sigma);
  const double s = std::sin(0.5 * x);
  return std::pow(4.0 * s * s, sigma);
}

Interval essential_spectrum(OperatorFamily kind, int sigma) {
  require_sigma(sigma);
  const double top = std::pow(4.0, sigma);
  if (kind == OperatorFamily::laplacian_power) return {0.0, top};
  const double center = static_cast<double>(binomial(2 * sigma, sigma));
  return {-center, top - center};
}

std::vector<std::int64_t> free_band_coefficients(int sigma) {
  require_sigma(sigma);
  std::vector<std::int64_t> omegas(static_cast<std::size_t>(sigma));
  for (int i = 1; i <= sigma; ++i) {
    const std::int64_t sign = (i % 2 == 0) ? 1 : -1;
    omegas[static_cast<std::size_t>(i - 1)] = sign * binomial(2 * sigma, sigma + i);
  }
  return omegas;
}

PolyJacobiCoefficients PolyJacobiCoefficients::make(int sigma, Sequence b,
                                                    std::vector<Sequence> deviations) {
  require_sigma(sigma);
  if (deviations.size() > static_cast<std::size_t>(sigma))
    throw std::invalid_argument("deviation band index exceeds sigma");
  deviations.resize(static_cast<std::size_t>(sigma));
  PolyJacobiCoefficients c;
  c.sigma = sigma;
  c.b = std::move(b);
  c.deviations = std::move(deviations);
  c.omegas = free_band_coefficients(sigma);
  return c;
}

std::int64_t PolyJacobiCoefficients::support_radius() const {
  std::int64_t r = b.support_radius();
  for (const auto& d : deviations) r = std::max(r, d.support_radius());
  return r;
}

BandedSymmetricMatrix BandedSymmetricMatrix::zeros(std::int64_t dim,
                                                   int bandwidth) {
  if (dim < 1) throw std::invalid_argument("matrix dimension must be >= 1");
  BandedSymmetricMatrix m;
  m.dim = dim;
  m.bandwidth = bandwidth;
  m.bands.resize(static_cast<std::size_t>(bandwidth) + 1);
  for (int d = 0; d <= bandwidth; ++d)
    m.bands[static_cast<std::size_t>(d)].assign(
        static_cast<std::size_t>(std::max<std::int64_t>(dim - d, 0)), 0.0);
  return m;
}

double BandedSymmetricMatrix::at(std::int64_t row, std::int64_t col) const {
  const std::int64_t d = col >= row ? col - row : row - col;
  if (d > bandwidth) return 0.0;
  const std::int64_t r = std::min(row, col);
  return bands[static_cast<std::size_t>(d)][static_cast<std::size_t>(r)];
}

double& BandedSymmetricMatrix::entry(std::int64_t row, std::int64_t col) {
  const std::int64_t d = col >= row ? col - row : row - col;
  if (d > bandwidth) throw std::out_of_range("entry outside stored bands");
  const std::int64_t r = std::min(row, col);
  return bands[static_cast<std::size_t>(d)][static_cast<std::size_t>(r)];
}

double BandedSymmetricMatrix::inf_norm() const {
  double best = 0.0;
  for (std::int64_t i = 0; i < dim; ++i) {
    double row = 0.0;
    for (std::int64_t j = std::max<std::int64_t>(0, i - bandwidth);
         j <= std::min(dim - 1, i + bandwidth); ++j)
      row += std::fabs(at(i, j));
    best = std::max(best, row);
  }
  return best;
}

BandedSymmetricMatrix& BandedSymmetricMatrix::add_scalar(double c) {
  for (double& v : bands[0]) v += c;
  return *this;
}

BandedSymmetricMatrix operator-(const BandedSymmetricMatrix& x,
                                const BandedSymmetricMatrix& y) {
  if (x.dim != y.dim || x.bandwidth != y.bandwidth)
    throw std::invalid_argument("matrix shape mismatch");
  BandedSymmetricMatrix out = x;
  for (std::size_t d = 0; d < out.bands.size(); ++d)
    for (std::size_t k = 0; k < out.bands[d].size(); ++k)
      out.bands[d][k] -= y.bands[d][k];
  return out;
}

BandedSymmetricMatrix assemble_w_sigma(const PolyJacobiCoefficients& coeffs,
                                       std::int64_t lo, std::int64_t hi) {
  const int sigma = coeffs.sigma;
  std::int64_t min_lo = lo, max_hi = hi;
  auto widen = [&](const Sequence& s) {
    if (s.is_zero()) return;
    min_lo = std::min(min_lo, s.min_index());
    max_hi = std::max(max_hi, s.max_index());
  };
  widen(coeffs.b);
  for (const auto& d : coeffs.deviations) widen(d);
  if (min_lo < lo || max_hi > hi || hi - lo + 1 < 2 * sigma + 1)
    throw std::invalid_argument(
        "window [" + std::to_string(lo) + ", " + std::to_string(hi) +
        "] too small; minimal window is [" +
        std::to_string(std::min(min_lo, max_hi - 2 * sigma)) + ", " +
        std::to_string(std::max(max_hi, min_lo + 2 * sigma)) + "]");

  BandedSymmetricMatrix m = BandedSymmetricMatrix::zeros(hi - lo + 1, sigma);
  for (std::int64_t n = lo; n <= hi; ++n) {
    m.bands[0][static_cast<std::size_t>(n - lo)] = coeffs.b(n);
    for (int i = 1; i <= sigma; ++i) {
      if (n + i > hi) break;
      m.bands[static_cast<std::size_t>(i)][static_cast<std::size_t>(n - lo)] =
          static_cast<double>(coeffs.omegas[static_cast<std::size_t>(i - 1)]) +
          coeffs.deviations[static_cast<std::size_t>(i - 1)](n);
    }
  }
  return m;
}

BandedSymmetricMatrix assemble_laplacian_power_section(int sigma,
                                                       std::int64_t lo,
                                                       std::int64_t hi) {
  // Delta_D^sigma = W_sigma^0 + C(2s,s) * I.
  auto m = assemble_w_sigma(PolyJacobiCoefficients::make(sigma), lo, hi);
  m.add_scalar(static_cast<double>(binomial(2 * sigma, sigma)));
  return m;
}

void add_diagonal(BandedSymmetricMatrix& m, const Sequence& b, std::int64_t lo,
                  double scale) {
  if (b.is_zero()) return;
  const std::int64_t hi = lo + m.dim - 1;
  if (b.min_index() < lo || b.max_index() > hi)
    throw std::invalid_argument("diagonal support exceeds the window");
  for (std::int64_t n = b.min_index(); n <= b.max_index(); ++n)
    m.bands[0][static_cast<std::size_t>(n - lo)] += scale * b(n);
}

SandwichPotentials sandwich_potentials(const PolyJacobiCoefficients& coeffs) {
  const std::int64_t r = coeffs.support_radius() + coeffs.sigma;
  std::vector<double> plus(static_cast<std::size_t>(2 * r + 1), 0.0);
  std::vector<double> minus(plus.size(), 0.0);
  for (std::int64_t n = -r; n <= r; ++n) {
    double spread = 0.0;
    for (int k = 1; k <= coeffs.sigma; ++k) {
      const Sequence& dev = coeffs.deviations[static_cast<std::size_t>(k - 1)];
      spread += std::fabs(dev(n - k)) + std::fabs(dev(n));
    }
    const double bn = coeffs.b(n);
    plus[static_cast<std::size_t>(n + r)] = bn + spread;
    minus[static_cast<std::size_t>(n + r)] = bn - spread;
  }
  return {Sequence(-r, std::move(minus)), Sequence(-r, std::move(plus))};
}

}  // namespace polyjacobi
