#pragma once

#include <algorithm>
#include <vector>

namespace ncortho {

template <typename RowSource>
double three_term_residual(const AdmissibleFamily& f, int levels, RowSource&& rows) {
  const int N = f.alphabet_size();
  std::vector<std::vector<NcPolynomial>> phi;
  for (int n = 0; n <= levels; ++n) phi.push_back(rows(n));
  double worst = 0.0;
  for (int k = 1; k <= N; ++k) {
    const NcPolynomial xk = NcPolynomial::variable(N, k);
    for (int n = 0; n < levels; ++n) {
      const auto& current = phi[static_cast<std::size_t>(n)];
      for (std::size_t t = 0; t < current.size(); ++t) {
        const auto col = static_cast<Eigen::Index>(t);
        NcPolynomial r = xk * current[t];
        const auto& up = phi[static_cast<std::size_t>(n + 1)];
        const Matrix& a_up = f.a(n + 1, k);
        for (std::size_t s = 0; s < up.size(); ++s) {
          r -= a_up(static_cast<Eigen::Index>(s), col) * up[s];
        }
        const Matrix& b = f.b(n, k);
        for (std::size_t s = 0; s < current.size(); ++s) {
          r -= b(static_cast<Eigen::Index>(s), col) * current[s];
        }
        if (n >= 1) {
          const auto& down = phi[static_cast<std::size_t>(n - 1)];
          const Matrix& a_down = f.a(n, k);  // A*_{n,k}[s,t] = A_{n,k}[t,s]
          for (std::size_t s = 0; s < down.size(); ++s) {
            r -= a_down(col, static_cast<Eigen::Index>(s)) * down[s];
          }
        }
        worst = std::max(worst, r.max_abs_coefficient());
      }
    }
  }
  return worst;
}

}  // namespace ncortho
