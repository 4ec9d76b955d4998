#include <atomic>
#include <cstdlib>
#include <string>

#include "axistat/error.hpp"
#include "axistat/simd/kernels.hpp"

namespace axistat::simd {

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("AXISTAT_SIMD")) {
    if (std::string(env) == "scalar") return Isa::Scalar;
  }
  return detected_isa();
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void require_sizes(std::size_t n, std::initializer_list<std::size_t> others) {
  for (std::size_t m : others) {
    if (m != n) throw Error(ErrorKind::InvalidArgument, "kernel operand sizes differ");
  }
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa detected_isa() { return avx2::available() ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::Avx2 && !avx2::available()) {
    throw Error(ErrorKind::InvalidArgument, "AVX2 is not supported on this CPU");
  }
  selected().store(isa, std::memory_order_relaxed);
}

void picard_integrand(std::span<const double> r, std::span<const double> u,
                      std::span<const double> du, double alpha, std::span<double> out) {
  require_sizes(r.size(), {u.size(), du.size(), out.size()});
  if (active_isa() == Isa::Avx2) {
    avx2::picard_integrand(r.data(), u.data(), du.data(), alpha, out.data(), r.size());
  } else {
    scalar::picard_integrand(r.data(), u.data(), du.data(), alpha, out.data(), r.size());
  }
}

double inverse_slope(std::span<const double> in, std::span<double> out) {
  require_sizes(in.size(), {out.size()});
  if (active_isa() == Isa::Avx2) return avx2::inverse_slope(in.data(), out.data(), in.size());
  return scalar::inverse_slope(in.data(), out.data(), in.size());
}

void rotational_residual(std::span<const double> x, std::span<const double> z,
                         std::span<const double> sin_psi, std::span<const double> cos_psi,
                         std::span<const double> dpsi, double alpha, std::span<double> out) {
  require_sizes(x.size(), {z.size(), sin_psi.size(), cos_psi.size(), dpsi.size(), out.size()});
  if (active_isa() == Isa::Avx2) {
    avx2::rotational_residual(x.data(), z.data(), sin_psi.data(), cos_psi.data(), dpsi.data(),
                              alpha, out.data(), x.size());
  } else {
    scalar::rotational_residual(x.data(), z.data(), sin_psi.data(), cos_psi.data(), dpsi.data(),
                                alpha, out.data(), x.size());
  }
}

void phase_field(std::span<const double> sin_psi, std::span<const double> cos_psi,
                 std::span<const double> sin_theta, std::span<const double> cos_theta,
                 double alpha, std::span<double> h1, std::span<double> h2) {
  require_sizes(sin_psi.size(),
                {cos_psi.size(), sin_theta.size(), cos_theta.size(), h1.size(), h2.size()});
  if (active_isa() == Isa::Avx2) {
    avx2::phase_field(sin_psi.data(), cos_psi.data(), sin_theta.data(), cos_theta.data(), alpha,
                      h1.data(), h2.data(), sin_psi.size());
  } else {
    scalar::phase_field(sin_psi.data(), cos_psi.data(), sin_theta.data(), cos_theta.data(), alpha,
                        h1.data(), h2.data(), sin_psi.size());
  }
}

}  // namespace axistat::simd
