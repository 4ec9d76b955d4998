#pragma once

// Radial problem  (r u'/sqrt(1+u'^2))' = r g(r, u, u'),  u(0) = u0, u'(0) = 0,
// with g(x,y,z) = alpha (y - x z)/((x^2+y^2) sqrt(1+z^2)). The equation is
// singular at r = 0; it is solved there as the fixed point of
//   (T u)(r) = u0 + int_0^r f^{-1}( int_0^s (t/s) g(t,u,u') dt ) ds,
// f^{-1}(x) = x/sqrt(1-x^2), on a uniform grid with cumulative Simpson
// quadrature, then continued as an ordinary second-order ODE.

#include <cstddef>
#include <string_view>
#include <vector>

#include "axistat/alpha.hpp"

namespace axistat {

struct RadialProfile {
  std::vector<double> r;   // strictly increasing, r[0] = 0 for solved profiles
  std::vector<double> u;
  std::vector<double> du;

  std::size_t size() const { return r.size(); }
};

struct FixedPointConfig {
  double u0 = 1.0;
  double epsilon = 0.5;
  double M = 0.0;         // upper bound of |g| on the ball
  double r1_bound = 0.0;  // min{1/M, (sqrt 3/2) eps, 2 eps/(M sqrt(4+eps^2))}
  double Lf = 0.0;        // Lipschitz constant of f^{-1} on [-1/2, 1/2]
  double Lg = 0.0;        // bound of the (y, z)-gradient of g on the ball
  double R_theory = 0.0;  // radius for which the contraction argument applies
  double R = 0.0;         // radius actually solved on
  double tol = 1e-12;
  int max_iter = 60;
  std::size_t grid_points = 513;
};

struct IterationReport {
  int iterations = 0;
  double final_defect = 0.0;         // ||T u - u|| in the C^1 norm
  double observed_contraction = 0.0; // max ||T u_{k+1} - T u_k|| / ||u_{k+1} - u_k||
  double integrated_defect = 0.0;    // see integrated_defect()
};

/// Constants of the existence proof for the given data. R = R_theory.
FixedPointConfig existence_bounds(Alpha alpha, double u0, double epsilon);

/// Same bounds with the default ball eps = min{1, u0}/2.
FixedPointConfig default_config(Alpha alpha, double u0);

/// Widens R to min{0.1 u0, 10 R_theory}; the result is checked a posteriori
/// through the integrated defect.
FixedPointConfig pragmatic(FixedPointConfig config);

/// Uniform grid on [0, R] with `points` nodes.
std::vector<double> uniform_grid(double R, std::size_t points);

/// Cumulative composite Simpson integral on a uniform grid; out[0] = 0.
std::vector<double> cumulative_simpson(const std::vector<double>& f, double h);

/// One application of the fixed-point operator. The input must live on a uniform
/// grid starting at 0. Throws DomainViolation if the inner integral leaves (-1,1).
RadialProfile picard_apply(const RadialProfile& profile, Alpha alpha, double u0);

/// ||u - w||_inf + ||u' - w'||_inf on a common grid.
double c1_distance(const RadialProfile& a, const RadialProfile& b);

struct SingularSolution {
  RadialProfile profile;
  IterationReport report;
};

/// Picard iteration from the constant profile u = u0.
SingularSolution solve_singular(Alpha alpha, double u0, const FixedPointConfig& config);

/// max over the grid of |r f(u') - int_0^r t g dt| and |u - u0 - int_0^r u'|.
double integrated_defect(const RadialProfile& profile, Alpha alpha, double u0);

/// 2 lim_{r->0} u'(r)/r, extrapolated from the three smallest positive radii.
double regularity_limit(const RadialProfile& profile);

/// u'' from the nonsingular form of the equation; alpha/(2 u0) at r = 0.
double graph_second_derivative(double r, double u, double du, Alpha alpha);

enum class GraphStop { RMax, VerticalTangent, UZero };
std::string_view to_string(GraphStop stop);

struct ContinuedProfile {
  RadialProfile profile;
  GraphStop stop = GraphStop::RMax;
};

/// Slope magnitude at which graph continuation hands off to the arc-length form.
inline constexpr double kVerticalSlope = 1e3;

/// Extends a solved profile past its last grid point by adaptive integration of
/// the second-order graph equation.
ContinuedProfile continue_profile(const RadialProfile& profile, Alpha alpha, double r_max);

}  // namespace axistat
