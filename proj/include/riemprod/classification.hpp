#pragma once

// Model F-tensors F(x, y, z) = g((∇_x P)y, z) for the classes W1, W̄3, W̄6
// and classification of a given F by refitting those models.

#include <array>
#include <cmath>
#include <string>
#include <string_view>

#include "riemprod/structure.hpp"
#include "riemprod/tensor.hpp"

namespace riemprod {

enum class FClass { W0, W3bar, W6bar, W1 };

inline constexpr std::array<FClass, 4> kAllClasses{FClass::W0, FClass::W3bar, FClass::W6bar, FClass::W1};

inline std::string_view class_name(FClass c) {
  switch (c) {
    case FClass::W0: return "W0";
    case FClass::W3bar: return "W3bar";
    case FClass::W6bar: return "W6bar";
    case FClass::W1: return "W1";
  }
  return "?";
}

inline FClass parse_class(std::string_view s) {
  for (FClass c : kAllClasses)
    if (class_name(c) == s) return c;
  throw InvalidInput("unknown class label: " + std::string(s));
}

namespace detail {

/// F for class `c` from θ without checking the sign of θ∘P.
inline Tensor03 model_f(FClass c, const PointStructure& ps, const Covector& theta) {
  const Tensor02& g = ps.g;
  const Tensor02& gt = ps.g_tilde;
  const Covector thp = compose_p(theta, ps.P);
  const double c0 = 1.0 / (2.0 * ps.n);
  switch (c) {
    case FClass::W0: return Tensor03(ps.dim());
    case FClass::W3bar:
    case FClass::W6bar: {
      const double s = c == FClass::W3bar ? 1.0 : -1.0;
      return Tensor03::generate(ps.dim(), [&](std::size_t x, std::size_t y, std::size_t z) {
        return c0 * ((g(x, y) + s * gt(x, y)) * theta(z) + (g(x, z) + s * gt(x, z)) * theta(y));
      });
    }
    case FClass::W1:
      return Tensor03::generate(ps.dim(), [&](std::size_t x, std::size_t y, std::size_t z) {
        return c0 * (g(x, y) * theta(z) - gt(x, y) * thp(z) + g(x, z) * theta(y) - gt(x, z) * thp(y));
      });
  }
  throw InvalidInput("unknown class");
}

inline double covector_norm(const Covector& theta, const Tensor02& g_inv) {
  double s = 0.0;
  for (std::size_t i = 0; i < theta.dim(); ++i)
    for (std::size_t j = 0; j < theta.dim(); ++j) s += g_inv(i, j) * theta(i) * theta(j);
  return std::sqrt(std::max(0.0, s));
}

}  // namespace detail

/// Model F for W1, W3bar or W6bar. W3bar needs θ∘P = -θ, W6bar needs
/// θ∘P = +θ; W1 accepts any θ.
inline Tensor03 build_f(FClass c, const PointStructure& ps, const LeeData& lee) {
  if (lee.theta.dim() != ps.dim()) throw InvalidInput("build_f: θ has wrong dimension");
  if (c == FClass::W0) throw InvalidInput("build_f: W0 has no model beyond F = 0");
  if (c != FClass::W1) {
    const double want = c == FClass::W3bar ? -1.0 : 1.0;
    const auto r = residual(compose_p(lee.theta, ps.P), want * lee.theta, 1e-10);
    if (!r.pass)
      throw InvalidInput("build_f: " + std::string(class_name(c)) + " requires θ∘P = " + (want > 0 ? "+θ" : "-θ"));
  }
  return detail::model_f(c, ps, lee.theta);
}

/// θ(x) = g^{ij} F(e_i, e_j, x)
inline Covector theta_from_f(const Tensor03& f, const PointStructure& ps) {
  if (f.dim() != ps.dim()) throw InvalidInput("theta_from_f: dimension mismatch");
  return metric_contract(f, ps.g_inv, 1, 2);
}

struct ClassReport {
  std::array<double, 4> residuals{};  // indexed by FClass
  FClass best = FClass::W0;
  bool pass = false;
  double tol = 0.0;
  Covector theta_recovered;
  Covector theta_v;  // ½(θ - θ∘P)
  Covector theta_h;  // ½(θ + θ∘P)
  double theta_v_norm = 0.0;
  double theta_h_norm = 0.0;
  int observed_sign = 0;  // sign s with θ∘P = sθ; 0 if θ is zero or mixed

  double residual_of(FClass c) const { return residuals[static_cast<std::size_t>(c)]; }
};

/// Recovers θ from F, splits it, rebuilds each class model and compares.
/// Among classes within `tol` the smallest wins (W0 < W3bar < W6bar < W1);
/// otherwise the least residual is reported with pass = false.
inline ClassReport classify_f(const Tensor03& f, const PointStructure& ps, double tol = 1e-10) {
  ClassReport rep;
  rep.tol = tol;
  rep.theta_recovered = theta_from_f(f, ps);
  const Covector thp = compose_p(rep.theta_recovered, ps.P);
  rep.theta_v = 0.5 * (rep.theta_recovered - thp);
  rep.theta_h = 0.5 * (rep.theta_recovered + thp);
  rep.theta_v_norm = detail::covector_norm(rep.theta_v, ps.g_inv);
  rep.theta_h_norm = detail::covector_norm(rep.theta_h, ps.g_inv);

  const double theta_scale = std::max(1.0, rep.theta_v_norm + rep.theta_h_norm);
  const bool has_v = rep.theta_v_norm > tol * theta_scale;
  const bool has_h = rep.theta_h_norm > tol * theta_scale;
  rep.observed_sign = has_v == has_h ? 0 : (has_v ? -1 : 1);

  for (FClass c : kAllClasses) {
    const Covector& source = c == FClass::W3bar ? rep.theta_v : c == FClass::W6bar ? rep.theta_h : rep.theta_recovered;
    rep.residuals[static_cast<std::size_t>(c)] = residual(f, detail::model_f(c, ps, source), tol).relative;
  }

  for (FClass c : kAllClasses) {
    if (rep.residual_of(c) <= tol) {
      rep.best = c;
      rep.pass = true;
      return rep;
    }
  }
  rep.best = FClass::W0;
  for (FClass c : kAllClasses)
    if (rep.residual_of(c) < rep.residual_of(rep.best)) rep.best = c;
  return rep;
}

}  // namespace riemprod
