#pragma once

// Pointwise ambient data of a Riemannian almost product structure:
// metric g, product structure P with P^2 = id and g(P., P.) = g, tr P = 0,
// the Lee form θ with its dual Ω, and the symmetric tensor H standing in
// for the derivative of θ along a natural connection.

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riemprod/random.hpp"
#include "riemprod/tensor.hpp"

namespace riemprod {

struct PointStructure {
  int n = 0;        // half-dimension
  int epsilon = 1;  // sign of θ∘P = εθ
  Tensor02 g;
  Tensor02 g_inv;
  Tensor02 P;        // P(a, b) = P^a_b
  Tensor02 g_tilde;  // g̃(x, y) = g(x, Py)
  std::vector<Vector> frame_plus;
  std::vector<Vector> frame_minus;

  std::size_t dim() const { return static_cast<std::size_t>(2 * n); }
};

namespace detail {

inline void check_n_epsilon(int n, int epsilon) {
  if (n < 2) throw InvalidInput("half-dimension n must be >= 2, got " + std::to_string(n));
  if (epsilon != 1 && epsilon != -1) throw InvalidInput("epsilon must be +1 or -1");
}

inline double g_dot(const Tensor02& g, const Vector& x, const Vector& y) { return bilinear(g, x, y); }

/// Gram-Schmidt of `v` against `basis` under g, done twice for stability.
/// Returns the unnormalised remainder.
inline Vector g_orthogonalize(const Tensor02& g, Vector v, const std::vector<Vector>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) v -= g_dot(g, b, v) * b;
  }
  return v;
}

/// g-orthonormal basis of the s-eigenspace of P (s = ±1), grown from the
/// projections ½(e_k + s P e_k). Stops after `limit` vectors.
inline std::vector<Vector> eigenspace_frame(const Tensor02& g, const Tensor02& P, int s,
                                            std::size_t limit) {
  const std::size_t dim = g.dim();
  std::vector<Vector> frame;
  for (std::size_t k = 0; k < dim && frame.size() < limit; ++k) {
    Vector e(dim);
    e(k) = 1.0;
    Vector u = 0.5 * (e + static_cast<double>(s) * apply(P, e));
    u = g_orthogonalize(g, u, frame);
    const double norm = std::sqrt(std::max(0.0, g_dot(g, u, u)));
    if (norm < 1e-8) continue;
    frame.push_back(u * (1.0 / norm));
  }
  return frame;
}

}  // namespace detail

/// Assembles a structure from explicit g and P. Derived fields (g_inv, g̃
/// and the adapted frames) are computed; nothing is validated here, use
/// validate_structure for that.
inline PointStructure make_structure(int n, int epsilon, Tensor02 g, Tensor02 P) {
  detail::check_n_epsilon(n, epsilon);
  const auto dim = static_cast<std::size_t>(2 * n);
  if (g.dim() != dim || P.dim() != dim) throw InvalidInput("g and P must be 2n x 2n");
  if (!g.all_finite() || !P.all_finite()) throw InvalidInput("non-finite entries in g or P");
  PointStructure ps;
  ps.n = n;
  ps.epsilon = epsilon;
  ps.g_inv = spd_inverse(g);
  ps.g_tilde = matmul(g, P);
  ps.frame_plus = detail::eigenspace_frame(g, P, +1, static_cast<std::size_t>(n));
  ps.frame_minus = detail::eigenspace_frame(g, P, -1, static_cast<std::size_t>(n));
  ps.g = std::move(g);
  ps.P = std::move(P);
  return ps;
}

/// The adapted model: g = identity, P = diag(1,..,1,-1,..,-1).
inline PointStructure adapted_structure(int n, int epsilon) {
  detail::check_n_epsilon(n, epsilon);
  const auto dim = static_cast<std::size_t>(2 * n);
  Tensor02 P(dim);
  for (std::size_t i = 0; i < dim; ++i) P(i, i) = i < dim / 2 ? 1.0 : -1.0;
  return make_structure(n, epsilon, identity(dim), std::move(P));
}

/// Random structure: g = AᵀA + dim·I with A uniform in [-1, 1], a
/// g-orthonormal frame from Gram-Schmidt of random vectors, and
/// P = proj(V+) - proj(V-) with V± spanned by the two halves of the frame.
inline PointStructure generate_structure(int n, int epsilon, std::uint64_t seed) {
  detail::check_n_epsilon(n, epsilon);
  const auto dim = static_cast<std::size_t>(2 * n);
  Rng rng(seed);
  Tensor02 a(dim);
  for (double& v : a.entries()) v = rng.uniform(-1.0, 1.0);
  Tensor02 g = matmul(transpose(a), a) + static_cast<double>(dim) * identity(dim);
  // symmetric by construction up to summation order; make it exact
  g = Tensor02::generate(dim, [&](std::size_t i, std::size_t j) { return 0.5 * (g(i, j) + g(j, i)); });

  std::vector<Vector> frame;
  while (frame.size() < dim) {
    Vector v(dim);
    for (double& x : v.entries()) x = rng.uniform(-1.0, 1.0);
    v = detail::g_orthogonalize(g, v, frame);
    const double norm = std::sqrt(std::max(0.0, bilinear(g, v, v)));
    if (norm < 1e-6) continue;  // measure-zero degeneracy; draw again
    frame.push_back(v * (1.0 / norm));
  }

  Tensor02 P(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const double sign = k < static_cast<std::size_t>(n) ? 1.0 : -1.0;
    const Vector& v = frame[k];
    const Vector gv = apply(g, v);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) P(i, j) += sign * v(i) * gv(j);
  }

  PointStructure ps;
  ps.n = n;
  ps.epsilon = epsilon;
  ps.g_inv = spd_inverse(g);
  ps.g_tilde = matmul(g, P);
  ps.frame_plus.assign(frame.begin(), frame.begin() + n);
  ps.frame_minus.assign(frame.begin() + n, frame.end());
  ps.g = std::move(g);
  ps.P = std::move(P);
  return ps;
}

/// Individual residuals of the structure axioms.
struct StructureResiduals {
  ResidualReport metric_symmetric;
  ResidualReport inverse;
  ResidualReport involution;     // P∘P = id
  ResidualReport compatibility;  // g(Px, Py) = g(x, y)
  ResidualReport trace_free;     // tr P = 0
  ResidualReport tilde_symmetric;
  ResidualReport frames;  // P v = ±v, g-orthonormality, n vectors each

  ResidualReport worst() const {
    ResidualReport r = metric_symmetric;
    r.absorb(inverse).absorb(involution).absorb(compatibility).absorb(trace_free);
    r.absorb(tilde_symmetric).absorb(frames);
    return r;
  }
};

inline StructureResiduals structure_residuals(const PointStructure& ps, double tol) {
  const std::size_t dim = ps.g.dim();
  const Tensor02 id = identity(dim);
  StructureResiduals r;
  r.metric_symmetric = residual(ps.g, transpose(ps.g), tol);
  r.inverse = residual(matmul(ps.g_inv, ps.g), id, tol);
  r.involution = residual(matmul(ps.P, ps.P), id, tol);
  r.compatibility = residual(matmul(transpose(ps.P), matmul(ps.g, ps.P)), ps.g, tol);
  double tr = 0.0;
  for (std::size_t i = 0; i < dim; ++i) tr += ps.P(i, i);
  r.trace_free = scalar_residual(tr, 0.0, tol);
  r.tilde_symmetric = residual(ps.g_tilde, transpose(ps.g_tilde), tol);

  r.frames = ResidualReport::from(0.0, 0.0, tol);
  const auto half = static_cast<std::size_t>(ps.n);
  if (ps.frame_plus.size() != half || ps.frame_minus.size() != half) {
    r.frames = ResidualReport::from(1.0, 1.0, tol);
    r.frames.pass = false;
    return r;
  }
  std::vector<Vector> all = ps.frame_plus;
  all.insert(all.end(), ps.frame_minus.begin(), ps.frame_minus.end());
  for (std::size_t k = 0; k < all.size(); ++k) {
    const double sign = k < half ? 1.0 : -1.0;
    r.frames.absorb(residual(apply(ps.P, all[k]), sign * all[k], tol));
    for (std::size_t l = 0; l < all.size(); ++l)
      r.frames.absorb(scalar_residual(bilinear(ps.g, all[k], all[l]), k == l ? 1.0 : 0.0, tol));
  }
  return r;
}

/// Worst residual over all structure axioms. Reports, never throws.
inline ResidualReport validate_structure(const PointStructure& ps, double tol = 1e-12) {
  return structure_residuals(ps, tol).worst();
}

// ---------------------------------------------------------------------------
// Lee form

struct LeeData {
  Covector theta;
  Vector omega;
  double theta_omega = 0.0;
};

inline LeeData lee_from_omega(const PointStructure& ps, Vector omega) {
  if (omega.dim() != ps.dim()) throw InvalidInput("Ω has wrong dimension");
  LeeData lee;
  lee.theta = apply(ps.g, omega);
  lee.theta_omega = pair(lee.theta, omega);
  lee.omega = std::move(omega);
  return lee;
}

inline LeeData lee_from_theta(const PointStructure& ps, Covector theta) {
  if (theta.dim() != ps.dim()) throw InvalidInput("θ has wrong dimension");
  if (!theta.all_finite()) throw InvalidInput("non-finite θ");
  LeeData lee;
  lee.omega = apply(ps.g_inv, theta);
  lee.theta_omega = pair(theta, lee.omega);
  lee.theta = std::move(theta);
  return lee;
}

/// (θ∘P)_b = θ_a P^a_b
inline Covector compose_p(const Covector& theta, const Tensor02& P) {
  return Covector::generate(theta.dim(), [&](std::size_t b) {
    double s = 0.0;
    for (std::size_t a = 0; a < theta.dim(); ++a) s += theta(a) * P(a, b);
    return s;
  });
}

/// Ω as a random combination of the ε-eigenspace frame with coefficients
/// uniform in [-scale, scale].
inline LeeData generate_theta(const PointStructure& ps, std::uint64_t seed, double scale = 1.0) {
  if (!(scale > 0.0)) throw InvalidInput("theta scale must be positive");
  const auto& frame = ps.epsilon > 0 ? ps.frame_plus : ps.frame_minus;
  Rng rng(seed);
  Vector omega(ps.dim());
  for (const auto& v : frame) omega += rng.uniform(-scale, scale) * v;
  return lee_from_omega(ps, std::move(omega));
}

inline ResidualReport validate_lee(const PointStructure& ps, const LeeData& lee, double tol = 1e-12) {
  const double eps = ps.epsilon;
  ResidualReport r = residual(compose_p(lee.theta, ps.P), eps * lee.theta, tol);
  r.absorb(residual(apply(ps.P, lee.omega), eps * lee.omega, tol));
  r.absorb(residual(apply(ps.g, lee.omega), lee.theta, tol));
  r.absorb(scalar_residual(lee.theta_omega, bilinear(ps.g, lee.omega, lee.omega), tol));
  if (lee.theta_omega < -tol) r.pass = false;
  return r;
}

// ---------------------------------------------------------------------------
// ∇'θ data

struct NablaThetaData {
  Tensor02 H;
};

/// S̃(y, z) = S(y, Pz)
inline Tensor02 with_p_right(const Tensor02& s, const Tensor02& P) { return matmul(s, P); }

/// (y, z) ↦ S(Py, z)
inline Tensor02 with_p_left(const Tensor02& s, const Tensor02& P) { return matmul(transpose(P), s); }

/// Projects an arbitrary rank-2 tensor onto the admissible set: symmetric,
/// with H(y, Pz) = εH(y, z) = H(Py, z).
inline Tensor02 admissible_h(const PointStructure& ps, const Tensor02& h0) {
  if (h0.dim() != ps.dim()) throw InvalidInput("H has wrong dimension");
  const Tensor02 sym = 0.5 * (h0 + transpose(h0));
  const double eps = ps.epsilon;
  return 0.25 * (sym + eps * with_p_right(sym, ps.P) + eps * with_p_left(sym, ps.P) +
                 with_p_left(with_p_right(sym, ps.P), ps.P));
}

inline NablaThetaData generate_H(const PointStructure& ps, std::uint64_t seed) {
  Rng rng(seed);
  Tensor02 h0(ps.dim());
  for (double& v : h0.entries()) v = rng.uniform(-1.0, 1.0);
  return {admissible_h(ps, h0)};
}

inline ResidualReport validate_H(const PointStructure& ps, const NablaThetaData& h, double tol = 1e-12) {
  const double eps = ps.epsilon;
  ResidualReport r = residual(h.H, transpose(h.H), tol);
  r.absorb(residual(with_p_right(h.H, ps.P), eps * h.H, tol));
  r.absorb(residual(with_p_left(h.H, ps.P), eps * h.H, tol));
  return r;
}

}  // namespace riemprod
