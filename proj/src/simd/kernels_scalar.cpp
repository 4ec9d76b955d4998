#include <algorithm>
#include <cmath>

#include "axistat/simd/kernels.hpp"

namespace axistat::simd::scalar {

void picard_integrand(const double* r, const double* u, const double* du, double alpha,
                      double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double slope = r[i] * du[i];
    const double num = (alpha * r[i]) * (u[i] - slope);
    const double rad = r[i] * r[i] + u[i] * u[i];
    const double den = rad * std::sqrt(1.0 + du[i] * du[i]);
    out[i] = num / den;
  }
}

double inverse_slope(const double* in, double* out, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = in[i];
    worst = std::max(worst, std::abs(v));
    out[i] = v / std::sqrt(1.0 - v * v);
  }
  return worst;
}

void rotational_residual(const double* x, const double* z, const double* sp, const double* cp,
                         const double* dpsi, double alpha, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double h = dpsi[i] + sp[i] / x[i];
    const double support = z[i] * cp[i] - x[i] * sp[i];
    const double p2 = x[i] * x[i] + z[i] * z[i];
    out[i] = h - (alpha * support) / p2;
  }
}

void phase_field(const double* sp, const double* cp, const double* st, const double* ct,
                 double alpha, double* h1, double* h2, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double sd = sp[i] * ct[i] - cp[i] * st[i];
    h1[i] = -sp[i] - (alpha * ct[i]) * sd;
    h2[i] = ct[i] * sd;
  }
}

}  // namespace axistat::simd::scalar
