#pragma once

// Curvature-like tensors, Riemannian P-tensors, the ψ1/ψ2 maps, the
// basic tensors π1, π2, π3 and the Ricci-type contractions.

#include <array>
#include <cmath>
#include <cstdint>
#include <string>

#include "riemprod/random.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/tensor.hpp"

namespace riemprod {

namespace detail {

inline void require_dim(std::size_t got, const PointStructure& ps, const char* what) {
  if (got != ps.dim())
    throw InvalidInput(std::string(what) + ": dimension " + std::to_string(got) + " does not match structure dimension " +
                       std::to_string(ps.dim()));
}

/// (x, y, z, w) ↦ L(x, y, z, M w) for an operator M in the last slot.
inline Tensor04 with_op_slot4(const Tensor04& l, const Tensor02& m) {
  const std::size_t d = l.dim();
  Tensor04 out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          double s = 0.0;
          for (std::size_t k = 0; k < d; ++k) s += m(k, w) * l(x, y, z, k);
          out(x, y, z, w) = s;
        }
  return out;
}

/// (x, y, z, w) ↦ L(x, y, M z, w)
inline Tensor04 with_op_slot3(const Tensor04& l, const Tensor02& m) {
  const std::size_t d = l.dim();
  Tensor04 out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          double s = 0.0;
          for (std::size_t k = 0; k < d; ++k) s += m(k, z) * l(x, y, k, w);
          out(x, y, z, w) = s;
        }
  return out;
}

/// Dense random algebraic curvature tensor in dimension `dim`, entries
/// drawn in [-1, 1] before the symmetry projections.
inline Tensor04 random_algebraic_curvature(std::size_t dim, Rng& rng) {
  Tensor04 a(dim);
  for (double& v : a.entries()) v = rng.uniform(-1.0, 1.0);
  const Tensor04 anti = Tensor04::generate(dim, [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    return 0.25 * (a(x, y, z, w) - a(y, x, z, w) - a(x, y, w, z) + a(y, x, w, z));
  });
  const Tensor04 paired = Tensor04::generate(dim, [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    return 0.5 * (anti(x, y, z, w) + anti(z, w, x, y));
  });
  Tensor04 b(dim);
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      for (std::size_t z = 0; z < dim; ++z)
        for (std::size_t w = 0; w < dim; ++w)
          b(x, y, z, w) = (paired(x, y, z, w) + paired(y, z, x, w) + paired(z, x, y, w)) / 3.0;
  return paired - b;
}

}  // namespace detail

/// (x, y, z, w) ↦ L(x, y, Pz, Pw)
inline Tensor04 with_p_last_pair(const Tensor04& l, const Tensor02& P) {
  return detail::with_op_slot4(detail::with_op_slot3(l, P), P);
}

/// Bianchi map b(L)(x,y,z,w) = ⅓[L(x,y,z,w) + L(y,z,x,w) + L(z,x,y,w)].
inline Tensor04 bianchi_part(const Tensor04& l) {
  return Tensor04::generate(l.dim(), [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    return (l(x, y, z, w) + l(y, z, x, w) + l(z, x, y, w)) / 3.0;
  });
}

inline Tensor04 psi1(const Tensor02& s, const PointStructure& ps) {
  detail::require_dim(s.dim(), ps, "psi1");
  const Tensor02& g = ps.g;
  return Tensor04::generate(ps.dim(), [&](std::size_t x, std::size_t y, std::size_t z, std::size_t w) {
    return g(y, z) * s(x, w) - g(x, z) * s(y, w) + s(y, z) * g(x, w) - s(x, z) * g(y, w);
  });
}

/// ψ2(S)(x, y, z, w) = ψ1(S)(x, y, Pz, Pw)
inline Tensor04 psi2(const Tensor02& s, const PointStructure& ps) {
  return with_p_last_pair(psi1(s, ps), ps.P);
}

/// (ψ1 + ψ2)(S)
inline Tensor04 psi_sum(const Tensor02& s, const PointStructure& ps) {
  Tensor04 a = psi1(s, ps);
  return with_p_last_pair(a, ps.P) + a;
}

/// Symmetric S with S(Px, Py) = S(x, y), hence S(x, Py) = S(y, Px): the
/// tensors for which both ψ1(S) and ψ2(S) are curvature-like.
inline Tensor02 p_invariant_symmetric(const PointStructure& ps, const Tensor02& s0) {
  detail::require_dim(s0.dim(), ps, "p_invariant_symmetric");
  const Tensor02 sym = 0.5 * (s0 + transpose(s0));
  return 0.5 * (sym + with_p_left(with_p_right(sym, ps.P), ps.P));
}

struct PiTensors {
  Tensor04 pi1;
  Tensor04 pi2;
  Tensor04 pi3;
};

/// π1 = ½ψ1(g), π2 = ½ψ2(g), π3 = ψ1(g̃); checks ψ1(g̃) = ψ2(g̃).
inline PiTensors pi_tensors(const PointStructure& ps) {
  PiTensors out{0.5 * psi1(ps.g, ps), 0.5 * psi2(ps.g, ps), psi1(ps.g_tilde, ps)};
  const auto check = residual(out.pi3, psi2(ps.g_tilde, ps), 1e-12);
  if (!check.pass)
    throw InvalidInput("psi1(g~) != psi2(g~): relative residual " + std::to_string(check.relative));
  return out;
}

/// Worst residual over L(x,y,z,w) = -L(y,x,z,w) = -L(x,y,w,z) and the first
/// Bianchi identity, over every index tuple.
inline ResidualReport is_curvature_like(const Tensor04& l, double tol = kDefaultTol) {
  const std::size_t d = l.dim();
  double worst = 0.0;
  auto track = [&](double v) {
    v = std::abs(v);
    if (!(v <= worst) && !std::isnan(worst)) worst = v;  // NaN is sticky
  };
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w) {
          const double v = l(x, y, z, w);
          track(v + l(y, x, z, w));
          track(v + l(x, y, w, z));
          track(v + l(y, z, x, w) + l(z, x, y, w));
        }
  return ResidualReport::from(worst, l.max_abs(), tol);
}

/// Curvature-like plus L(x, y, Pz, Pw) = L(x, y, z, w).
inline ResidualReport is_p_tensor(const Tensor04& l, const PointStructure& ps, double tol = kDefaultTol) {
  detail::require_dim(l.dim(), ps, "is_p_tensor");
  ResidualReport r = is_curvature_like(l, tol);
  r.absorb(residual(with_p_last_pair(l, ps.P), l, tol));
  return r;
}

struct CurvatureTensor {
  Tensor04 L;
  ResidualReport curvature_like;
  ResidualReport p_tensor;

  bool is_curvature_like() const { return curvature_like.pass; }
  bool is_p_tensor() const { return p_tensor.pass; }
};

inline CurvatureTensor classify_curvature(Tensor04 l, const PointStructure& ps, double tol = 1e-10) {
  CurvatureTensor c;
  c.curvature_like = is_curvature_like(l, tol);
  c.p_tensor = is_p_tensor(l, ps, tol);
  c.L = std::move(l);
  return c;
}

struct ContractionSet {
  Tensor02 rho;
  double tau = 0.0;
  Tensor02 rho_star;
  double tau_star = 0.0;
};

/// ρ(y,z) = g^{ij} L(e_i, y, z, e_j), ρ*(y,z) = g^{ij} L(e_i, y, z, Pe_j) and
/// their traces τ, τ*.
inline ContractionSet contractions(const Tensor04& l, const PointStructure& ps) {
  detail::require_dim(l.dim(), ps, "contractions");
  ContractionSet c;
  c.rho = metric_contract(l, ps.g_inv, 1, 4);
  c.tau = trace(c.rho, ps.g_inv);
  c.rho_star = metric_contract(detail::with_op_slot4(l, ps.P), ps.g_inv, 1, 4);
  c.tau_star = trace(c.rho_star, ps.g_inv);
  return c;
}

inline Tensor02 ricci(const Tensor04& l, const PointStructure& ps) {
  detail::require_dim(l.dim(), ps, "ricci");
  return metric_contract(l, ps.g_inv, 1, 4);
}

inline double scalar_curvature(const Tensor04& l, const PointStructure& ps) {
  return trace(ricci(l, ps), ps.g_inv);
}

inline double star_scalar_curvature(const Tensor04& l, const PointStructure& ps) {
  detail::require_dim(l.dim(), ps, "star_scalar_curvature");
  return trace(metric_contract(detail::with_op_slot4(l, ps.P), ps.g_inv, 1, 4), ps.g_inv);
}

/// Random curvature-like tensor: uniform entries, antisymmetrised in (12)
/// and (34), pair-symmetrised, then Bianchi-projected.
inline CurvatureTensor random_curvature_like(const PointStructure& ps, std::uint64_t seed) {
  Rng rng(seed);
  return classify_curvature(detail::random_algebraic_curvature(ps.dim(), rng), ps);
}

/// Random Riemannian P-tensor: independent algebraic curvature tensors on
/// V+ and V- placed block-diagonally in the adapted frame, then expressed
/// in the ambient basis.
inline CurvatureTensor random_p_tensor(const PointStructure& ps, std::uint64_t seed) {
  const auto n = static_cast<std::size_t>(ps.n);
  const std::size_t dim = ps.dim();
  if (ps.frame_plus.size() != n || ps.frame_minus.size() != n)
    throw InvalidInput("random_p_tensor: structure has no adapted frame");
  Rng rng(seed);
  const Tensor04 plus = detail::random_algebraic_curvature(n, rng);
  const Tensor04 minus = detail::random_algebraic_curvature(n, rng);

  // coframe rows: g(v_a, .) for the adapted frame (V+ first)
  Tensor02 coframe(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    const Vector& v = a < n ? ps.frame_plus[a] : ps.frame_minus[a - n];
    const Vector gv = apply(ps.g, v);
    for (std::size_t i = 0; i < dim; ++i) coframe(a, i) = gv(i);
  }

  Tensor04 frame_components(dim);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d) {
          frame_components(a, b, c, d) = plus(a, b, c, d);
          frame_components(a + n, b + n, c + n, d + n) = minus(a, b, c, d);
        }

  // L_ijkl = Σ L̂_abcd C_ai C_bj C_ck C_dl, one slot at a time
  Tensor04 cur = frame_components;
  for (int slot = 0; slot < 4; ++slot) {
    Tensor04 next(dim);
    for (std::size_t i0 = 0; i0 < dim; ++i0)
      for (std::size_t i1 = 0; i1 < dim; ++i1)
        for (std::size_t i2 = 0; i2 < dim; ++i2)
          for (std::size_t i3 = 0; i3 < dim; ++i3) {
            std::array<std::size_t, 4> idx{i0, i1, i2, i3};
            const std::size_t target = idx[slot];
            double s = 0.0;
            for (std::size_t a = 0; a < dim; ++a) {
              idx[slot] = a;
              s += coframe(a, target) * cur(idx[0], idx[1], idx[2], idx[3]);
            }
            next(i0, i1, i2, i3) = s;
          }
    cur = std::move(next);
  }
  return classify_curvature(std::move(cur), ps);
}

}  // namespace riemprod
