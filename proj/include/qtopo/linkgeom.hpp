#pragma once

// Linking numbers of closed polygonal curves in R^3.
//
// The Gauss double integral over a pair of straight segments equals the
// signed solid angle of the parallelogram {a - b : a in A, b in B} seen from
// the origin, so the integral over two closed polygons is an exact finite
// sum of triangle solid angles.

#include <array>
#include <cstdint>
#include <vector>

#include "qtopo/linkalg.hpp"

namespace qtopo {

using Vec3 = std::array<double, 3>;
using Curve = std::vector<Vec3>;  // closed: point i joins point (i + 1) mod n

struct FramedCurve {
  Curve points;
  std::vector<Vec3> offsets;  // push-off direction per vertex; normalized on use
};

struct PolyLink {
  std::vector<FramedCurve> components;
  double delta = 1e-2;
};

inline constexpr double kMinSeparation = 1e-9;
inline constexpr double kIntegerResidual = 1e-6;

// Minimum distance between segment [p0, p1] and segment [q0, q1].
double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1);
// Minimum distance between any segment of a and any segment of b.
double curve_distance(const Curve& a, const Curve& b);

// (1 / 4 pi) * Gauss integral, before rounding.
double linking_integral(const Curve& a, const Curve& b);

// Rounded Gauss integral. Throws GeometryError if the curves come within
// kMinSeparation or the integral is not within kIntegerResidual of an integer.
int linking_number(const Curve& a, const Curve& b);

// Copy of c displaced by delta along each (normalized) offset.
Curve push_off(const Curve& c, const std::vector<Vec3>& offsets, double delta);

// Linking number of c with its push-off; must agree at delta, delta/2 and
// delta/4 or GeometryError is thrown.
int self_linking(const Curve& c, const std::vector<Vec3>& offsets, double delta);

// Throws GeometryError when a curve is degenerate or self-intersecting, or two
// components meet.
void validate(const PolyLink& link);

// Off-diagonal entries are pairwise linking numbers, the diagonal holds the
// framings. Errors name the offending component pair.
FramedLinkMatrix linking_matrix(const PolyLink& link);

}  // namespace qtopo
