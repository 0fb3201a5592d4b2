// Moore determinant of the closed-form Hessian of u_a at a random point,
// compared with the density (1/2) a^n (a+1) r^{2n(a-1)}.

#include <cstdio>

#include "qma/qma.hpp"

int main() {
  const int n = 3;
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    const qma::PowerFamilyMember u(a, n);
    for (const auto& q : qma::sample_ball_points(n, 3, 0.2, 0.9, 7)) {
      const double det = qma::moore_det(qma::power_hessian_matrix(u, q));
      std::printf("a=%-4g r=%.4f  moore_det=%.12g  density=%.12g\n", a, q.radius(), det,
                  qma::ma_density(u, q.radius()));
    }
  }
}
