#include "fgt1d/contour.hpp"

#include <cmath>
#include <stdexcept>

#include "fgt1d/errors.hpp"
#include "internal/contour_core.hpp"

namespace fgt {

namespace {

double resolve_theta(const ContourSpec& spec) {
  if (spec.kind != ContourKind::StabilizedHyperbolic) return 0.0;
  double tp = spec.theta_param ? *spec.theta_param
                               : internal::stabilized_theta_default(spec.n);
  if (!(tp > 0.0) || !(tp < 1.0) || !std::isfinite(tp))
    throw std::domain_error(
        "stabilized contour balance parameter must lie in (0, 1)");
  return tp;
}

void check_spec(const ContourSpec& spec) {
  if (spec.n < 1)
    throw std::domain_error("contour quadrature requires n >= 1");
  if (spec.theta_param && spec.kind != ContourKind::StabilizedHyperbolic)
    throw std::domain_error(
        "theta_param is only meaningful for the stabilized hyperbola");
}

}  // namespace

double stabilized_balance_theta(int n) {
  if (n < 1) throw std::domain_error("contour quadrature requires n >= 1");
  return internal::stabilized_theta_default(n);
}

double contour_param_half_width(const ContourSpec& spec) {
  check_spec(spec);
  double tp = resolve_theta(spec);
  return internal::contour_half_width_t<internal::ops_double>(spec.kind,
                                                              spec.n, tp);
}

ContourPoint contour_point(const ContourSpec& spec, double theta) {
  check_spec(spec);
  double tp = resolve_theta(spec);
  double width =
      internal::contour_half_width_t<internal::ops_double>(spec.kind, spec.n, tp);
  if (!std::isfinite(theta) || theta < -width || theta > width)
    throw std::domain_error(
        "contour parameter outside the quadrature interval");
  auto p = internal::contour_zz<internal::ops_double>(spec.kind, spec.n, theta,
                                                      tp);
  return {p.z, p.zp};
}

SoeApprox soe_from_contour(const ContourSpec& spec) {
  check_spec(spec);
  double tp = resolve_theta(spec);
  std::vector<std::complex<double>> t, w;
  internal::contour_nodes<internal::ops_double>(spec.kind, spec.n, tp, t, w);
  SoeApprox out;
  out.form = SoeForm::Full;
  out.nodes = std::move(t);
  out.weights = std::move(w);
  validate(out);  // nodes must land in the right half-plane
  return out;
}

const char* contour_kind_name(ContourKind kind) {
  switch (kind) {
    case ContourKind::Parabolic:
      return "parabolic";
    case ContourKind::Hyperbolic:
      return "hyperbolic";
    case ContourKind::ModifiedTalbot:
      return "talbot";
    case ContourKind::StabilizedHyperbolic:
      return "stabilized-hyperbolic";
  }
  return "unknown";
}

std::optional<ContourKind> contour_kind_from_name(std::string_view name) {
  if (name == "parabolic") return ContourKind::Parabolic;
  if (name == "hyperbolic") return ContourKind::Hyperbolic;
  if (name == "talbot" || name == "modified-talbot")
    return ContourKind::ModifiedTalbot;
  if (name == "stabilized-hyperbolic" || name == "stabilized")
    return ContourKind::StabilizedHyperbolic;
  return std::nullopt;
}

}  // namespace fgt
