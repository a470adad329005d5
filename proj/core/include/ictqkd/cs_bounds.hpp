#pragma once

#include "ictqkd/errors.hpp"

namespace ictqkd {

// Pair of envelope values (or slopes) bracketing an unknown quantity.
struct EnvelopePair {
  double lower = 0.0;
  double upper = 1.0;
};

// Coefficients of two straight lines bracketing the envelope pair globally on
// [0, 1]:  c_lower + m_lower * x <= lower_envelope(x)  and
//          upper_envelope(x) <= c_upper + m_upper * x.
struct TangentCoefficients {
  double c_lower = 0.0;
  double m_lower = 0.0;
  double c_upper = 1.0;
  double m_upper = 0.0;
};

// Range of <b|O|b> over operators 0 <= O <= 1 with <a|O|a> = x fixed, where
// |a>, |b> are states with squared overlap |<a|b>|^2 = overlap_sq. Both
// arguments must lie in [0, 1]. The unclamped branches are
//   g_-+(x, y) = x + (1 - 2x)(1 - y) -+ 2 sqrt(x(1-x)y(1-y)),
// with the lower envelope clamped to 0 for x <= 1 - y and the upper clamped
// to 1 for x >= y.
EnvelopePair cs_envelope(double x, double overlap_sq);

// d/dx of the two envelopes. Zero on clamped branches; on an unclamped branch
// x must lie strictly inside (0, 1).
EnvelopePair cs_envelope_slopes(double x, double overlap_sq);

// Global tangent lines to the envelopes anchored at x_ref. The lower envelope
// is convex and the upper concave, and both have slope 0 where they meet
// their clamps, so the tangents bracket the envelopes on all of [0, 1].
// A non-finite x_ref or one outside (0, 1) yields the vacuous lines 0 and 1.
TangentCoefficients cs_tangent(double x_ref, double overlap_sq);

}  // namespace ictqkd
