#pragma once

// Invariant tensors B (Bochner), A, C, E built from a curvature tensor, and
// totally real sectional curvatures.

#include <cmath>
#include <cstdint>
#include <string>

#include "riemprod/curvature.hpp"
#include "riemprod/random.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/tensor.hpp"

namespace riemprod {

namespace detail {

inline void require_curvature_like(const Tensor04& l, double tol, const char* what) {
  const auto r = is_curvature_like(l, tol);
  if (!r.pass)
    throw InvalidInput(std::string(what) + ": input is not curvature-like (relative residual " +
                       std::to_string(r.relative) + ")");
}

inline void require_p(const Tensor04& l, const PointStructure& ps, double tol, const char* what) {
  require_dim(l.dim(), ps, what);
  const auto r = is_p_tensor(l, ps, tol);
  if (!r.pass)
    throw InvalidInput(std::string(what) + ": input is not a Riemannian P-tensor (relative residual " +
                       std::to_string(r.relative) + ")");
}

}  // namespace detail

/// B(L) = L - 1/(2(n-2)) {(ψ1+ψ2)(ρ(L)) - [τ(L)(π1+π2) + τ*(L)π3] / (2(n-1))}
/// Defined for Riemannian P-tensors in dimension 2n >= 6.
inline Tensor04 bochner(const Tensor04& l, const PointStructure& ps, double tol = kDefaultTol) {
  if (ps.n < 3) throw DomainError("Bochner tensor needs n >= 3 (dim >= 6), got n = " + std::to_string(ps.n));
  detail::require_p(l, ps, tol, "bochner");
  const ContractionSet c = contractions(l, ps);
  const PiTensors pi = pi_tensors(ps);
  const double n = ps.n;
  const Tensor04 traces = (c.tau / (2.0 * (n - 1.0))) * (pi.pi1 + pi.pi2) + (c.tau_star / (2.0 * (n - 1.0))) * pi.pi3;
  return l - (1.0 / (2.0 * (n - 2.0))) * (psi_sum(c.rho, ps) - traces);
}

/// A(L) = L - τ(L)(π1 + π2 - επ3) / (4n(n-1))
inline Tensor04 a_tensor(const Tensor04& l, const PointStructure& ps, int epsilon, double tol = kDefaultTol) {
  if (epsilon != 1 && epsilon != -1) throw InvalidInput("a_tensor: epsilon must be +1 or -1");
  detail::require_p(l, ps, tol, "a_tensor");
  const PiTensors pi = pi_tensors(ps);
  const double n = ps.n;
  const double tau = scalar_curvature(l, ps);
  return l - (tau / (4.0 * n * (n - 1.0))) * (pi.pi1 + pi.pi2 - static_cast<double>(epsilon) * pi.pi3);
}

inline Tensor04 a_tensor(const Tensor04& l, const PointStructure& ps) { return a_tensor(l, ps, ps.epsilon); }

/// C(L) = L - [τ(L)(π1 + π2) + τ*(L)π3] / (4n(n-1))
inline Tensor04 c_tensor(const Tensor04& l, const PointStructure& ps, double tol = kDefaultTol) {
  detail::require_p(l, ps, tol, "c_tensor");
  const PiTensors pi = pi_tensors(ps);
  const ContractionSet c = contractions(l, ps);
  const double denom = 4.0 * ps.n * (ps.n - 1.0);
  return l - (c.tau / denom) * (pi.pi1 + pi.pi2) - (c.tau_star / denom) * pi.pi3;
}

/// E(L) = L - τ(L)π1 / (2n(2n-1)); needs only curvature-like L.
inline Tensor04 e_tensor(const Tensor04& l, const PointStructure& ps, double tol = kDefaultTol) {
  detail::require_dim(l.dim(), ps, "e_tensor");
  detail::require_curvature_like(l, tol, "e_tensor");
  const double n = ps.n;
  return l - (scalar_curvature(l, ps) / (2.0 * n * (2.0 * n - 1.0))) * pi_tensors(ps).pi1;
}

// ---------------------------------------------------------------------------
// Totally real planes

struct Plane {
  Vector x;
  Vector y;
};

struct SectionalPair {
  double nu = 0.0;       // ν' = L(x,y,y,x) / π1(x,y,y,x)
  double nu_star = 0.0;  // ν'* = L(x,y,y,Px) / π1(x,y,y,x)
  Plane plane;
};

/// L(x, y, z, w) for vectors.
inline double evaluate(const Tensor04& l, const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  const std::size_t d = l.dim();
  double s = 0.0;
  for (std::size_t a = 0; a < d; ++a) {
    if (x(a) == 0.0) continue;
    for (std::size_t b = 0; b < d; ++b) {
      if (y(b) == 0.0) continue;
      for (std::size_t c = 0; c < d; ++c) {
        if (z(c) == 0.0) continue;
        double inner = 0.0;
        for (std::size_t e = 0; e < d; ++e) inner += l(a, b, c, e) * w(e);
        s += x(a) * y(b) * z(c) * inner;
      }
    }
  }
  return s;
}

/// Orthonormality of (x, y) and orthogonality of the plane to its P-image.
inline ResidualReport plane_residual(const PointStructure& ps, const Plane& pl, double tol = 1e-10) {
  const Vector px = apply(ps.P, pl.x);
  const Vector py = apply(ps.P, pl.y);
  const Tensor02& g = ps.g;
  ResidualReport r = scalar_residual(bilinear(g, pl.x, pl.x), 1.0, tol);
  r.absorb(scalar_residual(bilinear(g, pl.y, pl.y), 1.0, tol));
  r.absorb(scalar_residual(bilinear(g, pl.x, pl.y), 0.0, tol));
  r.absorb(scalar_residual(bilinear(g, pl.x, px), 0.0, tol));
  r.absorb(scalar_residual(bilinear(g, pl.x, py), 0.0, tol));
  r.absorb(scalar_residual(bilinear(g, pl.y, px), 0.0, tol));
  r.absorb(scalar_residual(bilinear(g, pl.y, py), 0.0, tol));
  return r;
}

inline constexpr int kPlaneRetries = 16;

/// Seeded totally real 2-plane. Each vector is assembled from unit parts in
/// V+ and V- of equal length, so g(v, Pv) = 0; y is Gram-Schmidt
/// orthogonalised against x inside each eigenspace, which makes it
/// orthogonal to both x and Px.
inline Plane totally_real_plane(const PointStructure& ps, std::uint64_t seed) {
  if (ps.n < 2) throw InvalidInput("totally_real_plane: n must be >= 2");
  const std::size_t dim = ps.dim();
  const Tensor02& g = ps.g;
  auto unit = [&](Vector v, bool& ok) {
    const double norm = std::sqrt(std::max(0.0, bilinear(g, v, v)));
    if (norm < 1e-8) {
      ok = false;
      return v;
    }
    return v * (1.0 / norm);
  };
  auto split = [&](const Vector& v, double s) { return 0.5 * (v + s * apply(ps.P, v)); };

  for (int attempt = 0; attempt <= kPlaneRetries; ++attempt) {
    Rng rng(substream(seed, static_cast<std::uint64_t>(attempt)));
    Vector rx(dim), ry(dim);
    for (double& v : rx.entries()) v = rng.uniform(-1.0, 1.0);
    for (double& v : ry.entries()) v = rng.uniform(-1.0, 1.0);
    bool ok = true;
    const Vector xp = unit(split(rx, 1.0), ok);
    const Vector xm = unit(split(rx, -1.0), ok);
    const Vector yp = unit(detail::g_orthogonalize(g, split(ry, 1.0), {xp}), ok);
    const Vector ym = unit(detail::g_orthogonalize(g, split(ry, -1.0), {xm}), ok);
    if (!ok) continue;
    const double r = 1.0 / std::sqrt(2.0);
    Plane pl{r * (xp + xm), r * (yp + ym)};
    if (plane_residual(ps, pl, 1e-10).pass) return pl;
  }
  throw GenerationError("totally_real_plane: no admissible plane after " + std::to_string(kPlaneRetries) + " retries");
}

inline SectionalPair sectional(const Tensor04& l, const PointStructure& ps, const Plane& pl) {
  detail::require_dim(l.dim(), ps, "sectional");
  const auto check = plane_residual(ps, pl, 1e-10);
  if (!check.pass) throw InvalidInput("sectional: plane is not a totally real orthonormal pair");
  const double gxx = bilinear(ps.g, pl.x, pl.x);
  const double gyy = bilinear(ps.g, pl.y, pl.y);
  const double gxy = bilinear(ps.g, pl.x, pl.y);
  const double denom = gxx * gyy - gxy * gxy;  // π1(x, y, y, x)
  if (!(denom > 1e-12)) throw DomainError("sectional: degenerate plane");
  const Vector px = apply(ps.P, pl.x);
  return {evaluate(l, pl.x, pl.y, pl.y, pl.x) / denom, evaluate(l, pl.x, pl.y, pl.y, px) / denom, pl};
}

}  // namespace riemprod
