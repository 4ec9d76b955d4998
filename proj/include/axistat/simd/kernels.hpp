#pragma once

// Batched arithmetic kernels used by the Picard operator, residual checks and
// phase-field sampling. Each kernel has a scalar reference implementation and an
// AVX2 variant; the variant is chosen at runtime from CPUID. Neither variant uses
// fused multiply-add, so both produce bit-identical results.

#include <cstddef>
#include <span>
#include <string_view>

namespace axistat::simd {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Best instruction set supported by this CPU and build.
Isa detected_isa();

/// Currently selected variant. Defaults to detected_isa() unless the
/// AXISTAT_SIMD environment variable is set to "scalar".
Isa active_isa();

/// Forces a variant; throws if the CPU cannot run it.
void set_active_isa(Isa isa);

/// out[i] = r g(r,u,u') with g(x,y,z) = alpha (y - x z)/((x^2+y^2) sqrt(1+z^2)).
void picard_integrand(std::span<const double> r, std::span<const double> u,
                      std::span<const double> du, double alpha, std::span<double> out);

/// out[i] = x/sqrt(1-x^2) (inverse of y/sqrt(1+y^2)). Returns max |x| so callers
/// can reject arguments outside (-1, 1).
double inverse_slope(std::span<const double> in, std::span<double> out);

/// out[i] = psi' + sin(psi)/x - alpha (z cos psi - x sin psi)/(x^2+z^2), the
/// stationary-equation residual of a surface of revolution about the z-axis.
void rotational_residual(std::span<const double> x, std::span<const double> z,
                         std::span<const double> sin_psi, std::span<const double> cos_psi,
                         std::span<const double> dpsi, double alpha, std::span<double> out);

/// Autonomous phase field from precomputed sines and cosines:
/// h1 = -sin psi - alpha cos theta sin(psi-theta), h2 = cos theta sin(psi-theta).
void phase_field(std::span<const double> sin_psi, std::span<const double> cos_psi,
                 std::span<const double> sin_theta, std::span<const double> cos_theta,
                 double alpha, std::span<double> h1, std::span<double> h2);

// Direct access to each variant, used by the equivalence tests.
namespace scalar {
void picard_integrand(const double* r, const double* u, const double* du, double alpha,
                      double* out, std::size_t n);
double inverse_slope(const double* in, double* out, std::size_t n);
void rotational_residual(const double* x, const double* z, const double* sp, const double* cp,
                         const double* dpsi, double alpha, double* out, std::size_t n);
void phase_field(const double* sp, const double* cp, const double* st, const double* ct,
                 double alpha, double* h1, double* h2, std::size_t n);
}  // namespace scalar

namespace avx2 {
bool available();
void picard_integrand(const double* r, const double* u, const double* du, double alpha,
                      double* out, std::size_t n);
double inverse_slope(const double* in, double* out, std::size_t n);
void rotational_residual(const double* x, const double* z, const double* sp, const double* cp,
                         const double* dpsi, double alpha, double* out, std::size_t n);
void phase_field(const double* sp, const double* cp, const double* st, const double* ct,
                 double alpha, double* h1, double* h2, std::size_t n);
}  // namespace avx2

}  // namespace axistat::simd
