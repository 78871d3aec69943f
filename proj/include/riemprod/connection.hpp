#pragma once

// The two-parameter family of natural connections (∇'P = ∇'g = 0) on a
// manifold whose Lee form satisfies θ∘P = εθ: torsion, the potential Q,
// the p/q/S'/S''/S data, and the curvature relations between R, R' and K.

#include <string>

#include "riemprod/curvature.hpp"
#include "riemprod/structure.hpp"
#include "riemprod/tensor.hpp"

namespace riemprod {

struct ConnectionParams {
  double lambda = 0.0;
  double mu = 0.0;

  /// λ = 0, μ = -1/(4n)
  static ConnectionParams canonical(int n) { return {0.0, -1.0 / (4.0 * n)}; }
  /// The connection D: λ = μ = 0.
  static ConnectionParams d_connection() { return {0.0, 0.0}; }
};

enum class PQMode { general, specialized };

struct PQData {
  Vector p;
  Vector q;
  double gpp = 0.0;
  double gqq = 0.0;
  double gpq = 0.0;
};

namespace detail {

inline void require_eigen_theta(const PointStructure& ps, const LeeData& lee) {
  const auto r = validate_lee(ps, lee, 1e-10);
  if (!r.pass)
    throw InvalidInput("Lee data violates θ∘P = εθ (relative residual " + std::to_string(r.relative) + ")");
}

inline void require_p_tensor(const Tensor04& l, const PointStructure& ps, double tol, const char* what) {
  const auto r = is_p_tensor(l, ps, tol);
  if (!r.pass)
    throw InvalidInput(std::string(what) + ": input is not a Riemannian P-tensor (relative residual " +
                       std::to_string(r.relative) + ")");
}

inline Tensor02 outer(const Covector& a, const Covector& b) {
  return Tensor02::generate(a.dim(), [&](std::size_t i, std::size_t j) { return a(i) * b(j); });
}

}  // namespace detail

/// Torsion T(x, y, z) of the natural connection with parameters (λ, μ).
inline Tensor03 torsion(const PointStructure& ps, const LeeData& lee, const ConnectionParams& cp) {
  detail::require_dim(lee.theta.dim(), ps, "torsion");
  const Tensor02& g = ps.g;
  const Tensor02& gt = ps.g_tilde;
  const Covector& th = lee.theta;
  const Covector thp = compose_p(th, ps.P);
  const double c0 = 1.0 / (2.0 * ps.n);
  const double l = cp.lambda;
  const double m = cp.mu;
  return Tensor03::generate(ps.dim(), [&](std::size_t x, std::size_t y, std::size_t z) {
    const double base = g(y, z) * thp(x) - g(x, z) * thp(y);
    const double lam = g(y, z) * th(x) - g(x, z) * th(y) + gt(y, z) * thp(x) - gt(x, z) * thp(y);
    const double mu = gt(y, z) * th(x) - gt(x, z) * th(y) + g(y, z) * thp(x) - g(x, z) * thp(y);
    return c0 * base + l * lam + m * mu;
  });
}

/// Potential of ∇' relative to the Levi-Civita connection: Q(x, y, z) = T(z, x, y).
inline Tensor03 q_from_torsion(const Tensor03& t) {
  return Tensor03::generate(t.dim(), [&](std::size_t x, std::size_t y, std::size_t z) { return t(z, x, y); });
}

/// p and q with their inner products. `general` uses p = λΩ + (μ + 1/2n)PΩ,
/// q = λPΩ + μΩ and works for any θ; `specialized` uses the closed forms
/// valid when PΩ = εΩ and rejects Lee data that does not satisfy it.
inline PQData pq_vectors(const PointStructure& ps, const LeeData& lee, const ConnectionParams& cp,
                         PQMode mode = PQMode::specialized) {
  detail::require_dim(lee.omega.dim(), ps, "pq_vectors");
  const double inv2n = 1.0 / (2.0 * ps.n);
  PQData d;
  if (mode == PQMode::general) {
    const Vector pomega = apply(ps.P, lee.omega);
    d.p = cp.lambda * lee.omega + (cp.mu + inv2n) * pomega;
    d.q = cp.lambda * pomega + cp.mu * lee.omega;
  } else {
    detail::require_eigen_theta(ps, lee);
    const double eps = ps.epsilon;
    d.p = (cp.lambda + eps * cp.mu + eps * inv2n) * lee.omega;
    d.q = (cp.mu + eps * cp.lambda) * lee.omega;
  }
  d.gpp = bilinear(ps.g, d.p, d.p);
  d.gqq = bilinear(ps.g, d.q, d.q);
  d.gpq = bilinear(ps.g, d.p, d.q);
  return d;
}

struct STensors {
  Tensor02 s_prime;   // S'
  Tensor02 s_double;  // S''
  Tensor02 s;         // S of K = R' - (ψ1 + ψ2)(S)
};

/// S', S'' and S. In `general` mode S' and S'' take the form valid for any
/// θ, with H in the role of ∇'θ; in `specialized` mode they use θ∘P = εθ.
inline STensors s_tensors(const PointStructure& ps, const LeeData& lee, const ConnectionParams& cp,
                          const NablaThetaData& h, PQMode mode = PQMode::specialized) {
  detail::require_dim(h.H.dim(), ps, "s_tensors");
  const double inv2n = 1.0 / (2.0 * ps.n);
  const double eps = ps.epsilon;
  const double l = cp.lambda;
  const double m = cp.mu;
  const Tensor02 tt = detail::outer(lee.theta, lee.theta);
  const PQData pq = pq_vectors(ps, lee, cp, mode);

  STensors out;
  if (mode == PQMode::general) {
    const Covector thp = compose_p(lee.theta, ps.P);
    const Tensor02 hp = with_p_right(h.H, ps.P);
    out.s_prime = l * h.H + (m + inv2n) * hp - inv2n * (l * detail::outer(lee.theta, thp) + m * tt);
    out.s_double = l * h.H + m * hp + inv2n * (l * detail::outer(thp, lee.theta) + m * detail::outer(thp, thp));
  } else {
    const double a = l + eps * m;
    const double b = (m + eps * l) * inv2n;
    out.s_prime = (a + eps * inv2n) * h.H - b * tt;
    out.s_double = a * h.H + b * tt;
  }
  out.s = (l + eps * m + eps / (4.0 * ps.n)) * h.H + 0.25 * (pq.gpp + pq.gqq) * ps.g + 0.5 * pq.gpq * ps.g_tilde;
  return out;
}

/// K(x, y, z, w) = ½[R(x, y, z, w) + R(x, y, Pz, Pw)]
inline Tensor04 k_from_r(const Tensor04& r, const PointStructure& ps, double tol = kDefaultTol) {
  detail::require_dim(r.dim(), ps, "k_from_r");
  const auto check = is_curvature_like(r, tol);
  if (!check.pass)
    throw InvalidInput("k_from_r: R is not curvature-like (relative residual " + std::to_string(check.relative) + ")");
  return 0.5 * (r + with_p_last_pair(r, ps.P));
}

/// R = R' - g(p,p)π1 - g(q,q)π2 - g(p,q)π3 - ψ1(S') - ψ2(S'')
inline Tensor04 r_from_rprime(const Tensor04& rprime, const PointStructure& ps, const LeeData& lee,
                              const ConnectionParams& cp, const NablaThetaData& h, double tol = kDefaultTol) {
  detail::require_dim(rprime.dim(), ps, "r_from_rprime");
  detail::require_p_tensor(rprime, ps, tol, "r_from_rprime");
  const PQData pq = pq_vectors(ps, lee, cp);
  const STensors s = s_tensors(ps, lee, cp, h);
  const PiTensors pi = pi_tensors(ps);
  return rprime - pq.gpp * pi.pi1 - pq.gqq * pi.pi2 - pq.gpq * pi.pi3 - psi1(s.s_prime, ps) - psi2(s.s_double, ps);
}

/// K = R' - (ψ1 + ψ2)(S), requiring a closed Lee form (H symmetric).
inline Tensor04 k_from_rprime(const Tensor04& rprime, const PointStructure& ps, const LeeData& lee,
                              const ConnectionParams& cp, const NablaThetaData& h, double tol = kDefaultTol) {
  detail::require_dim(rprime.dim(), ps, "k_from_rprime");
  detail::require_p_tensor(rprime, ps, tol, "k_from_rprime");
  const auto sym = residual(h.H, transpose(h.H), tol);
  if (!sym.pass) throw InvalidInput("k_from_rprime: H is not symmetric (θ not closed)");
  return rprime - psi_sum(s_tensors(ps, lee, cp, h).s, ps);
}

}  // namespace riemprod
