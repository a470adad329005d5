#include "ictqkd/cs_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace ictqkd {
namespace {

void check_unit(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw DomainError(std::string(name) + " must lie in [0, 1]");
  }
}

double branch_value(double x, double y, double sign) {
  const double disc = std::max(0.0, x * (1.0 - x) * y * (1.0 - y));
  return x + (1.0 - 2.0 * x) * (1.0 - y) + sign * 2.0 * std::sqrt(disc);
}

double branch_slope(double x, double y, double sign) {
  const double yy = std::max(0.0, y * (1.0 - y));
  if (yy == 0.0) {
    return 2.0 * y - 1.0;
  }
  if (!(x > 0.0 && x < 1.0)) {
    throw DomainError("envelope slope undefined at the boundary of [0, 1]");
  }
  const double xx = x * (1.0 - x);
  return (2.0 * y - 1.0) + sign * (1.0 - 2.0 * x) * std::sqrt(yy / xx);
}

}  // namespace

EnvelopePair cs_envelope(double x, double overlap_sq) {
  check_unit(x, "cs_envelope: x");
  check_unit(overlap_sq, "cs_envelope: overlap_sq");
  EnvelopePair out;
  out.lower = (x <= 1.0 - overlap_sq) ? 0.0 : branch_value(x, overlap_sq, -1.0);
  out.upper = (x >= overlap_sq) ? 1.0 : branch_value(x, overlap_sq, +1.0);
  out.lower = std::clamp(out.lower, 0.0, 1.0);
  out.upper = std::clamp(out.upper, 0.0, 1.0);
  return out;
}

EnvelopePair cs_envelope_slopes(double x, double overlap_sq) {
  check_unit(x, "cs_envelope_slopes: x");
  check_unit(overlap_sq, "cs_envelope_slopes: overlap_sq");
  EnvelopePair out;
  out.lower = (x <= 1.0 - overlap_sq) ? 0.0 : branch_slope(x, overlap_sq, -1.0);
  out.upper = (x >= overlap_sq) ? 0.0 : branch_slope(x, overlap_sq, +1.0);
  return out;
}

TangentCoefficients cs_tangent(double x_ref, double overlap_sq) {
  check_unit(overlap_sq, "cs_tangent: overlap_sq");
  TangentCoefficients out;
  if (!std::isfinite(x_ref) || x_ref <= 0.0 || x_ref >= 1.0) {
    return out;  // vacuous lines 0 and 1
  }
  const EnvelopePair value = cs_envelope(x_ref, overlap_sq);
  const EnvelopePair slope = cs_envelope_slopes(x_ref, overlap_sq);
  out.m_lower = slope.lower;
  out.m_upper = slope.upper;
  // Intercepts are the line values at x = 0; dominance there means they are
  // <= 0 resp. >= 0, and the clamps only remove rounding residue (in the
  // sound direction) so downstream consumers may assume the sign exactly.
  out.c_lower = std::min(0.0, value.lower - slope.lower * x_ref);
  out.c_upper = std::max(0.0, value.upper - slope.upper * x_ref);
  return out;
}

}  // namespace ictqkd
