#pragma once

// Reference implementations written directly from the defining index
// formulas with explicit summation loops. They share only the storage type
// with the library, so agreement is evidence for both.

#include <cstddef>

#include "riemprod/riemprod.hpp"

namespace oracle {

using riemprod::Covector;
using riemprod::PointStructure;
using riemprod::Tensor02;
using riemprod::Tensor04;
using riemprod::Vector;

// g(e_a, P e_b)
inline Tensor02 g_p(const Tensor02& g, const Tensor02& P) {
  const std::size_t d = g.dim();
  Tensor02 out(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t k = 0; k < d; ++k) out(a, b) += g(a, k) * P(k, b);
  return out;
}

inline Tensor04 psi1(const Tensor02& g, const Tensor02& s) {
  const std::size_t d = g.dim();
  Tensor04 out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w)
          out(x, y, z, w) = g(y, z) * s(x, w) - g(x, z) * s(y, w) + s(y, z) * g(x, w) - s(x, z) * g(y, w);
  return out;
}

// ψ2 written out term by term: every g(·,P·) and S(·,P·) pairing is expanded.
inline Tensor04 psi2(const Tensor02& g, const Tensor02& P, const Tensor02& s) {
  const Tensor02 gp = g_p(g, P);
  const Tensor02 sp = g_p(s, P);
  const std::size_t d = g.dim();
  Tensor04 out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w)
          out(x, y, z, w) = gp(y, z) * sp(x, w) - gp(x, z) * sp(y, w) + sp(y, z) * gp(x, w) - sp(x, z) * gp(y, w);
  return out;
}

struct Pi {
  Tensor04 pi1, pi2, pi3;
};

inline Pi pi(const PointStructure& ps) {
  const Tensor02 gt = g_p(ps.g, ps.P);
  return {0.5 * psi1(ps.g, ps.g), 0.5 * psi2(ps.g, ps.P, ps.g), psi1(ps.g, gt)};
}

struct Traces {
  Tensor02 rho, rho_star;
  double tau = 0, tau_star = 0;
};

inline Traces traces(const Tensor04& l, const PointStructure& ps) {
  const std::size_t d = l.dim();
  Traces t{Tensor02(d), Tensor02(d)};
  for (std::size_t y = 0; y < d; ++y)
    for (std::size_t z = 0; z < d; ++z)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          t.rho(y, z) += ps.g_inv(i, j) * l(i, y, z, j);
          for (std::size_t k = 0; k < d; ++k) t.rho_star(y, z) += ps.g_inv(i, j) * l(i, y, z, k) * ps.P(k, j);
        }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      t.tau += ps.g_inv(i, j) * t.rho(i, j);
      t.tau_star += ps.g_inv(i, j) * t.rho_star(i, j);
    }
  return t;
}

inline Tensor04 p_last_pair(const Tensor04& l, const Tensor02& P) {
  const std::size_t d = l.dim();
  Tensor04 out(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        for (std::size_t w = 0; w < d; ++w)
          for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) out(x, y, z, w) += l(x, y, a, b) * P(a, z) * P(b, w);
  return out;
}

inline Tensor04 k_of_r(const Tensor04& r, const PointStructure& ps) { return 0.5 * (r + p_last_pair(r, ps.P)); }

inline Vector raise(const Covector& th, const Tensor02& g_inv) {
  const std::size_t d = th.dim();
  Vector v(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) v(a) += g_inv(a, b) * th(b);
  return v;
}

inline double dot(const Tensor02& g, const Vector& x, const Vector& y) {
  double s = 0;
  for (std::size_t a = 0; a < g.dim(); ++a)
    for (std::size_t b = 0; b < g.dim(); ++b) s += g(a, b) * x(a) * y(b);
  return s;
}

// Torsion of the natural connection, brace groups with coefficients 1/2n, λ, μ.
inline riemprod::Tensor03 torsion(const PointStructure& ps, const Covector& th, double lam, double mu) {
  const std::size_t d = ps.dim();
  const Tensor02 gp = g_p(ps.g, ps.P);
  Covector thp(d);  // θ(P e_a)
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t k = 0; k < d; ++k) thp(a) += th(k) * ps.P(k, a);
  const double c = 1.0 / (2.0 * ps.n);
  riemprod::Tensor03 t(d);
  for (std::size_t x = 0; x < d; ++x)
    for (std::size_t y = 0; y < d; ++y)
      for (std::size_t z = 0; z < d; ++z)
        t(x, y, z) = c * (ps.g(y, z) * thp(x) - ps.g(x, z) * thp(y)) +
                     lam * (ps.g(y, z) * th(x) - ps.g(x, z) * th(y) + gp(y, z) * thp(x) - gp(x, z) * thp(y)) +
                     mu * (gp(y, z) * th(x) - gp(x, z) * th(y) + ps.g(y, z) * thp(x) - ps.g(x, z) * thp(y));
  return t;
}

/// R from R' through the general relation: p, q, S', S'' in their
/// unspecialized forms with H standing for ∇'θ.
inline Tensor04 r_of_rprime(const Tensor04& rp, const PointStructure& ps, const Covector& th, double lam, double mu,
                            const Tensor02& h) {
  const std::size_t d = ps.dim();
  const double n = ps.n;
  const Vector om = raise(th, ps.g_inv);
  Vector pom(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) pom(a) += ps.P(a, b) * om(b);
  Vector p(d), q(d);
  for (std::size_t a = 0; a < d; ++a) {
    p(a) = lam * om(a) + (mu + 1.0 / (2.0 * n)) * pom(a);
    q(a) = lam * pom(a) + mu * om(a);
  }
  Covector thp(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t k = 0; k < d; ++k) thp(a) += th(k) * ps.P(k, a);
  const Tensor02 hp = g_p(h, ps.P);  // H(y, Pz)
  Tensor02 s1(d), s2(d);
  for (std::size_t y = 0; y < d; ++y)
    for (std::size_t z = 0; z < d; ++z) {
      s1(y, z) = lam * h(y, z) + (mu + 1.0 / (2.0 * n)) * hp(y, z) -
                 (lam * th(y) * thp(z) + mu * th(y) * th(z)) / (2.0 * n);
      s2(y, z) = lam * h(y, z) + mu * hp(y, z) + (lam * thp(y) * th(z) + mu * thp(y) * thp(z)) / (2.0 * n);
    }
  const Pi pis = pi(ps);
  return rp - dot(ps.g, p, p) * pis.pi1 - dot(ps.g, q, q) * pis.pi2 - dot(ps.g, p, q) * pis.pi3 - psi1(ps.g, s1) -
         psi2(ps.g, ps.P, s2);
}

inline Tensor04 bochner(const Tensor04& l, const PointStructure& ps) {
  const double n = ps.n;
  const Traces t = traces(l, ps);
  const Pi p = pi(ps);
  const Tensor04 inner = psi1(ps.g, t.rho) + psi2(ps.g, ps.P, t.rho) -
                         (1.0 / (2.0 * (n - 1.0))) * (t.tau * (p.pi1 + p.pi2) + t.tau_star * p.pi3);
  return l - (1.0 / (2.0 * (n - 2.0))) * inner;
}

inline Tensor04 a_tensor(const Tensor04& l, const PointStructure& ps) {
  const double n = ps.n;
  const Pi p = pi(ps);
  return l - (traces(l, ps).tau / (4.0 * n * (n - 1.0))) * (p.pi1 + p.pi2 - double(ps.epsilon) * p.pi3);
}

inline Tensor04 c_tensor(const Tensor04& l, const PointStructure& ps) {
  const double n = ps.n;
  const Pi p = pi(ps);
  const Traces t = traces(l, ps);
  return l - (1.0 / (4.0 * n * (n - 1.0))) * (t.tau * (p.pi1 + p.pi2) + t.tau_star * p.pi3);
}

inline Tensor04 e_tensor(const Tensor04& l, const PointStructure& ps) {
  const double n = ps.n;
  return l - (traces(l, ps).tau / (2.0 * n * (2.0 * n - 1.0))) * pi(ps).pi1;
}

inline double eval(const Tensor04& l, const Vector& x, const Vector& y, const Vector& z, const Vector& w) {
  double s = 0;
  const std::size_t d = l.dim();
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      for (std::size_t c = 0; c < d; ++c)
        for (std::size_t e = 0; e < d; ++e) s += l(a, b, c, e) * x(a) * y(b) * z(c) * w(e);
  return s;
}

}  // namespace oracle
