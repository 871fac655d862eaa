#pragma once

#include <complex>
#include <optional>
#include <string_view>

#include "fgt1d/soe.hpp"

namespace fgt {

// Families of integration contours for the inverse-Laplace representation of
// the Gaussian.  Discretising the contour integral with the n-point midpoint
// rule yields an n-term SOE whose error decays geometrically in n until
// double-precision roundoff saturates it.
enum class ContourKind {
  Parabolic,
  Hyperbolic,
  ModifiedTalbot,
  StabilizedHyperbolic,
};

struct ContourSpec {
  ContourKind kind = ContourKind::Parabolic;
  int n = 16;  // number of quadrature nodes, n >= 1
  // StabilizedHyperbolic only: balance parameter in (0, 1).  Defaults to
  // 1/4 for n <= 16 and 12/n for larger n when not set.
  std::optional<double> theta_param{};
};

struct ContourPoint {
  std::complex<double> z;       // contour location z(theta)
  std::complex<double> zprime;  // derivative z'(theta)
};

// Half-width of the parameter interval: the quadrature lives on
// [-width, width].  Pi for the first three kinds; the stabilized hyperbola
// uses a truncation half-width derived from n and the balance parameter.
double contour_param_half_width(const ContourSpec& spec);

// Default balance parameter for the stabilized hyperbola.
double stabilized_balance_theta(int n);

// z and z' at parameter theta.  Throws std::domain_error when theta lies
// outside [-width, width] or the spec is invalid.
ContourPoint contour_point(const ContourSpec& spec, double theta);

// Builds the n-term SOE from the midpoint rule on the contour:
// theta_k = -width + (k + 1/2) * (2 width / n), node t_k = sqrt(z(theta_k))
// (principal branch), weight w_k = h/(2 sqrt(pi) i) * z'(theta_k)
// * exp(z(theta_k)) / sqrt(z(theta_k)).  Entries are ordered by increasing
// theta_k.  Throws fgt::numerical_error if some z(theta_k) falls on the
// closed negative real axis (no usable square root).
SoeApprox soe_from_contour(const ContourSpec& spec);

const char* contour_kind_name(ContourKind kind);
std::optional<ContourKind> contour_kind_from_name(std::string_view name);

}  // namespace fgt
