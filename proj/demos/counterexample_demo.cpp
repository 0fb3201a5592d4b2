// For several p, the sign of f(p, 2n), dF/db(1,1), and the certified ratio.

#include <cstdio>

#include "qma/qma.hpp"

int main() {
  for (int n : {1, 2}) {
    for (double p : {0.5, 1.0, 2.0, 3.0}) {
      const qma::RatioCertificate c = qma::find_violation({p, n});
      std::printf("n=%d p=%-4g f(p,2n)=%+.6f dF/db(1,1)=%+.6e  R(%.4f, %.4f)=%.8f%s\n", n, p,
                  qma::f_lemma(p, 2 * n), qma::dFdb_closed(p, n), c.a_star, c.b_star, c.ratio,
                  c.violation ? "  (> 1)" : "");
    }
  }
}
