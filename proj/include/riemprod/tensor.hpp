#pragma once

// Dense covariant tensors of rank 1..4 over a small real vector space,
// metric contractions and residual comparison.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace riemprod {

/// Thrown when an argument violates an operation's precondition.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a formula is undefined for the given dimension or data
/// (vanishing denominators).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown when a seeded generator exhausts its retry budget.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultTol = 1e-9;

namespace detail {
constexpr std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) r *= base;
  return r;
}
}  // namespace detail

/// Rank-`Rank` array of binary64 entries, each index running over `dim`,
/// stored row-major. Rank-2 tensors double as square matrices (the product
/// structure P is stored as P(a, b) = P^a_b).
template <std::size_t Rank>
class Tensor {
  static_assert(Rank >= 1 && Rank <= 4, "ranks 1..4 only");

 public:
  static constexpr std::size_t rank = Rank;

  Tensor() = default;

  explicit Tensor(std::size_t dim)
      : dim_(dim), entries_(detail::ipow(dim, Rank), 0.0) {
    if (dim == 0) throw InvalidInput("tensor dimension must be positive");
  }

  Tensor(std::size_t dim, std::vector<double> entries)
      : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0) throw InvalidInput("tensor dimension must be positive");
    if (entries_.size() != detail::ipow(dim, Rank))
      throw InvalidInput("entry count does not match dim^rank");
  }

  /// Builds a tensor by evaluating `f(i, j, ...)` on every index tuple.
  template <class F>
  static Tensor generate(std::size_t dim, F&& f) {
    Tensor t(dim);
    std::array<std::size_t, Rank> idx{};
    for (std::size_t flat = 0; flat < t.entries_.size(); ++flat) {
      t.entries_[flat] = std::apply(f, idx);
      for (std::size_t k = Rank; k-- > 0;) {
        if (++idx[k] < dim) break;
        idx[k] = 0;
      }
    }
    return t;
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return entries_.size(); }
  std::span<const double> entries() const { return entries_; }
  std::span<double> entries() { return entries_; }

  template <class... I>
    requires(sizeof...(I) == Rank)
  double operator()(I... i) const {
    return entries_[offset(static_cast<std::size_t>(i)...)];
  }

  template <class... I>
    requires(sizeof...(I) == Rank)
  double& operator()(I... i) {
    return entries_[offset(static_cast<std::size_t>(i)...)];
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : entries_) m = std::max(m, std::abs(v));
    return m;
  }

  bool all_finite() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](double v) { return std::isfinite(v); });
  }

  Tensor& operator+=(const Tensor& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += o.entries_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= o.entries_[i];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (double& v : entries_) v *= s;
    return *this;
  }

  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }

  friend bool operator==(const Tensor&, const Tensor&) = default;

 private:
  template <class... I>
  std::size_t offset(I... i) const {
    std::size_t off = 0;
    ((off = off * dim_ + i), ...);
    return off;
  }

  void require_same_dim(const Tensor& o) const {
    if (o.dim_ != dim_) throw InvalidInput("tensor dimension mismatch");
  }

  std::size_t dim_ = 0;
  std::vector<double> entries_;
};

using Vector = Tensor<1>;    // contravariant components v^a
using Covector = Tensor<1>;  // covariant components θ_a
using Tensor02 = Tensor<2>;
using Tensor03 = Tensor<3>;
using Tensor04 = Tensor<4>;

// ---------------------------------------------------------------------------
// Rank-2 helpers. Matrices are rank-2 tensors; P is used as an operator.

inline Tensor02 identity(std::size_t dim) {
  return Tensor02::generate(dim, [](std::size_t a, std::size_t b) { return a == b ? 1.0 : 0.0; });
}

inline Tensor02 transpose(const Tensor02& m) {
  return Tensor02::generate(m.dim(), [&](std::size_t a, std::size_t b) { return m(b, a); });
}

inline Tensor02 matmul(const Tensor02& a, const Tensor02& b) {
  if (a.dim() != b.dim()) throw InvalidInput("matmul: dimension mismatch");
  return Tensor02::generate(a.dim(), [&](std::size_t i, std::size_t j) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, j);
    return s;
  });
}

/// (M v)^a = M^a_b v^b
inline Vector apply(const Tensor02& m, const Vector& v) {
  if (m.dim() != v.dim()) throw InvalidInput("apply: dimension mismatch");
  return Vector::generate(m.dim(), [&](std::size_t a) {
    double s = 0.0;
    for (std::size_t b = 0; b < m.dim(); ++b) s += m(a, b) * v(b);
    return s;
  });
}

/// B(x, y) = x^a B_ab y^b
inline double bilinear(const Tensor02& b, const Vector& x, const Vector& y) {
  if (b.dim() != x.dim() || b.dim() != y.dim()) throw InvalidInput("bilinear: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < b.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) s += x(i) * b(i, j) * y(j);
  return s;
}

/// θ(v) = θ_a v^a
inline double pair(const Covector& theta, const Vector& v) {
  if (theta.dim() != v.dim()) throw InvalidInput("pair: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) s += theta(i) * v(i);
  return s;
}

/// Inverse of a symmetric positive-definite matrix via Cholesky.
inline Tensor02 spd_inverse(const Tensor02& g) {
  const auto d = static_cast<Eigen::Index>(g.dim());
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(
      g.entries().data(), d, d);
  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw InvalidInput("metric is not positive definite");
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> inv =
      llt.solve(Eigen::MatrixXd::Identity(d, d));
  return Tensor02(g.dim(), std::vector<double>(inv.data(), inv.data() + inv.size()));
}

/// Full contraction g^{ij} S_ij.
inline double trace(const Tensor02& s, const Tensor02& g_inv) {
  if (s.dim() != g_inv.dim()) throw InvalidInput("trace: dimension mismatch");
  double t = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) t += g_inv(i, j) * s(i, j);
  return t;
}

/// Contracts slots `slot_a` and `slot_b` (1-based) of `t` against `g_inv`.
/// The surviving slots keep their relative order.
template <std::size_t Rank>
  requires(Rank == 3 || Rank == 4)
Tensor<Rank - 2> metric_contract(const Tensor<Rank>& t, const Tensor02& g_inv, std::size_t slot_a,
                                 std::size_t slot_b) {
  if (t.dim() != g_inv.dim()) throw InvalidInput("metric_contract: dimension mismatch");
  if (slot_a == slot_b) throw InvalidInput("metric_contract: slots must be distinct");
  if (slot_a < 1 || slot_a > Rank || slot_b < 1 || slot_b > Rank)
    throw InvalidInput("metric_contract: slot out of range");
  const std::size_t a = slot_a - 1;
  const std::size_t b = slot_b - 1;
  std::array<std::size_t, Rank - 2> free{};
  for (std::size_t s = 0, k = 0; s < Rank; ++s)
    if (s != a && s != b) free[k++] = s;

  const std::size_t dim = t.dim();
  auto contract_at = [&](std::array<std::size_t, Rank - 2> outer) {
    std::array<std::size_t, Rank> idx{};
    for (std::size_t k = 0; k < Rank - 2; ++k) idx[free[k]] = outer[k];
    double sum = 0.0;
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double w = g_inv(i, j);
        if (w == 0.0) continue;
        idx[a] = i;
        idx[b] = j;
        sum += w * std::apply([&](auto... k) { return t(k...); }, idx);
      }
    }
    return sum;
  };
  if constexpr (Rank == 4) {
    return Tensor02::generate(dim, [&](std::size_t y, std::size_t z) { return contract_at({y, z}); });
  } else {
    return Covector::generate(dim, [&](std::size_t y) { return contract_at({y}); });
  }
}

// ---------------------------------------------------------------------------
// Residuals

struct ResidualReport {
  double max_abs_residual = 0.0;
  double scale = 0.0;
  double relative = 0.0;
  double tol = kDefaultTol;
  bool pass = true;

  static ResidualReport from(double max_abs, double scale, double tol) {
    ResidualReport r;
    r.max_abs_residual = max_abs;
    r.scale = scale;
    r.tol = tol;
    r.relative = max_abs / std::max(1.0, scale);
    // NaN residuals never pass
    r.pass = r.relative <= tol;
    return r;
  }

  /// Keeps whichever report is worse (larger relative residual).
  ResidualReport& absorb(const ResidualReport& o) {
    const bool both = pass && o.pass;
    if (!(o.relative <= relative)) *this = o;
    pass = both;
    return *this;
  }
};

inline ResidualReport scalar_residual(double x, double y, double tol) {
  return ResidualReport::from(std::abs(x - y), std::max(std::abs(x), std::abs(y)), tol);
}

template <std::size_t Rank>
ResidualReport residual(const Tensor<Rank>& x, const Tensor<Rank>& y, double tol = kDefaultTol) {
  if (x.dim() != y.dim()) throw InvalidInput("residual: dimension mismatch");
  double worst = 0.0;
  auto xe = x.entries();
  auto ye = y.entries();
  for (std::size_t i = 0; i < xe.size(); ++i) {
    const double d = std::abs(xe[i] - ye[i]);
    if (std::isnan(d)) return ResidualReport::from(d, 0.0, tol);  // never passes
    worst = std::max(worst, d);
  }
  return ResidualReport::from(worst, std::max(x.max_abs(), y.max_abs()), tol);
}

}  // namespace riemprod
