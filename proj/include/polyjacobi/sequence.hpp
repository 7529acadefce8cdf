#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polyjacobi {

// Finitely supported real sequence on Z, stored as a dense window
// [offset, offset + size). Entries outside the window are exactly zero.
// Construction canonicalizes: leading/trailing zeros are trimmed and the
// zero sequence is the empty window with offset 0.
class Sequence {
public:
  Sequence() = default;

  Sequence(std::int64_t offset, std::vector<double> values)
      : offset_(offset), values_(std::move(values)) {
    canonicalize();
  }

  static Sequence zero() { return Sequence(); }

  // Unit impulse at index n.
  static Sequence delta(std::int64_t n, double amplitude = 1.0) {
    return Sequence(n, {amplitude});
  }

  bool is_zero() const { return values_.empty(); }
  std::int64_t min_index() const { return offset_; }
  std::int64_t max_index() const {
    return offset_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  std::size_t window_size() const { return values_.size(); }
  // max(|min_index|, |max_index|), 0 for the zero sequence.
  std::int64_t support_radius() const {
    if (is_zero()) return 0;
    const std::int64_t lo = min_index() < 0 ? -min_index() : min_index();
    const std::int64_t hi = max_index() < 0 ? -max_index() : max_index();
    return lo > hi ? lo : hi;
  }

  double operator()(std::int64_t n) const {
    if (values_.empty() || n < offset_) return 0.0;
    const std::int64_t k = n - offset_;
    if (k >= static_cast<std::int64_t>(values_.size())) return 0.0;
    return values_[static_cast<std::size_t>(k)];
  }

  const std::vector<double>& values() const { return values_; }

  Sequence& operator*=(double c) {
    for (double& v : values_) v *= c;
    canonicalize();
    return *this;
  }

  friend Sequence operator*(double c, Sequence s) {
    s *= c;
    return s;
  }

  friend Sequence operator+(const Sequence& x, const Sequence& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const std::int64_t lo = std::min(x.min_index(), y.min_index());
    const std::int64_t hi = std::max(x.max_index(), y.max_index());
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (std::int64_t n = lo; n <= hi; ++n)
      out[static_cast<std::size_t>(n - lo)] = x(n) + y(n);
    return Sequence(lo, std::move(out));
  }

  friend Sequence operator-(const Sequence& x, const Sequence& y) {
    return x + (-1.0) * y;
  }

  friend bool operator==(const Sequence& x, const Sequence& y) {
    return x.offset_ == y.offset_ && x.values_ == y.values_;
  }

private:
  void canonicalize() {
    std::size_t lead = 0;
    while (lead < values_.size() && values_[lead] == 0.0) ++lead;
    std::size_t tail = values_.size();
    while (tail > lead && values_[tail - 1] == 0.0) --tail;
    if (lead == tail) {
      values_.clear();
      offset_ = 0;
      return;
    }
    if (lead > 0 || tail < values_.size()) {
      values_ = std::vector<double>(values_.begin() + static_cast<std::ptrdiff_t>(lead),
                                    values_.begin() + static_cast<std::ptrdiff_t>(tail));
      offset_ += static_cast<std::int64_t>(lead);
    }
  }

  std::int64_t offset_ = 0;
  std::vector<double> values_;
};

inline double inner_product(const Sequence& x, const Sequence& y) {
  if (x.is_zero() || y.is_zero()) return 0.0;
  const std::int64_t lo = std::max(x.min_index(), y.min_index());
  const std::int64_t hi = std::min(x.max_index(), y.max_index());
  double s = 0.0;
  for (std::int64_t n = lo; n <= hi; ++n) s += x(n) * y(n);
  return s;
}

inline double norm_l2(const Sequence& x) {
  double s = 0.0;
  for (double v : x.values()) s += v * v;
  return std::sqrt(s);
}

inline double norm_sup(const Sequence& x) {
  double m = 0.0;
  for (double v : x.values()) m = std::max(m, std::fabs(v));
  return m;
}

// (D phi)(n) = phi(n+1) - phi(n)
inline Sequence difference(const Sequence& phi) {
  if (phi.is_zero()) return Sequence::zero();
  const std::int64_t lo = phi.min_index() - 1;
  const std::int64_t hi = phi.max_index();
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n)
    out[static_cast<std::size_t>(n - lo)] = phi(n + 1) - phi(n);
  return Sequence(lo, std::move(out));
}

// (D* phi)(n) = phi(n-1) - phi(n)
inline Sequence difference_adjoint(const Sequence& phi) {
  if (phi.is_zero()) return Sequence::zero();
  const std::int64_t lo = phi.min_index();
  const std::int64_t hi = phi.max_index() + 1;
  std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
  for (std::int64_t n = lo; n <= hi; ++n)
    out[static_cast<std::size_t>(n - lo)] = phi(n - 1) - phi(n);
  return Sequence(lo, std::move(out));
}

inline Sequence difference_power(const Sequence& phi, int k) {
  if (k < 0) throw std::invalid_argument("difference_power: negative order");
  Sequence out = phi;
  for (int i = 0; i < k; ++i) out = difference(out);
  return out;
}

}  // namespace polyjacobi
