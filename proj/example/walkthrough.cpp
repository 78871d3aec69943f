// Builds a seeded W̄6 instance, compares the invariant tensors of R' and of
// the curvature K of the canonical connection, and prints a short summary.

#include <cstdio>

#include "riemprod/riemprod.hpp"

using namespace riemprod;

int main() {
  const int n = 3;
  const PointStructure ps = generate_structure(n, +1, 7);
  const LeeData lee = generate_theta(ps, 8);
  const NablaThetaData h = generate_H(ps, 9);
  const Tensor04 rprime = random_p_tensor(ps, 10).L;

  const auto canonical = ConnectionParams::canonical(n);
  const Tensor04 r = r_from_rprime(rprime, ps, lee, canonical, h);
  const Tensor04 k = k_from_r(r, ps);

  std::printf("structure residual  %.3e\n", validate_structure(ps).relative);
  std::printf("theta(Omega)        %.6f\n", lee.theta_omega);
  std::printf("tau(R')             %.6f\n", scalar_curvature(rprime, ps));
  std::printf("tau(K)              %.6f\n", scalar_curvature(k, ps));
  std::printf("|B(R') - B(K)|      %.3e\n", residual(bochner(rprime, ps), bochner(k, ps)).relative);
  std::printf("|A(R') - A(K)|      %.3e\n", residual(a_tensor(rprime, ps), a_tensor(k, ps)).relative);

  const Plane pl = totally_real_plane(ps, 11);
  const SectionalPair sp = sectional(k, ps, pl);
  std::printf("nu(K), nu*(K)       %.6f %.6f\n", sp.nu, sp.nu_star);

  const ClassReport cr = classify_f(build_f(FClass::W6bar, ps, lee), ps);
  std::printf("class of F          %s\n", std::string(class_name(cr.best)).c_str());
  return 0;
}
