#pragma once

// Polygonal links used across the geometry tests and the acceptance suite.

#include <algorithm>
#include <cmath>
#include <random>

#include "qtopo/linkgeom.hpp"

namespace fixtures {

using qtopo::Curve;
using qtopo::FramedCurve;
using qtopo::PolyLink;
using qtopo::Vec3;

inline constexpr double kPi = 3.14159265358979323846;

// Square with vertices at (cx +- h, cy +- h, cz) in the xy-plane.
inline Curve square_xy(double h, Vec3 c = {0, 0, 0}) {
  return {{c[0] - h, c[1] - h, c[2]}, {c[0] + h, c[1] - h, c[2]},
          {c[0] + h, c[1] + h, c[2]}, {c[0] - h, c[1] + h, c[2]}};
}

// Square in the xz-plane.
inline Curve square_xz(double h, Vec3 c = {0, 0, 0}) {
  return {{c[0] - h, c[1], c[2] - h}, {c[0] + h, c[1], c[2] - h},
          {c[0] + h, c[1], c[2] + h}, {c[0] - h, c[1], c[2] + h}};
}

// Interlocked squares: half-width 1 about the origin in xy, and about
// (1, 0, 0) in xz.
inline std::pair<Curve, Curve> hopf_squares() {
  return {square_xy(1.0), square_xz(1.0, {1.0, 0.0, 0.0})};
}

inline std::pair<Curve, Curve> split_squares() {
  return {square_xy(1.0), square_xz(1.0, {10.0, 0.0, 0.0})};
}

inline Curve reversed(Curve c) {
  std::reverse(c.begin(), c.end());
  return c;
}

// Regular n-gon of radius r in the plane z = c[2].
inline Curve round_polygon(int n, double r, Vec3 c = {0, 0, 0}) {
  Curve out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    out.push_back({c[0] + r * std::cos(t), c[1] + r * std::sin(t), c[2]});
  }
  return out;
}

// Offsets for round_polygon rotating `twists` full turns about the tangent,
// starting radially outward, oriented so the self-linking equals `twists`.
// twists = 0 is the planar (blackboard) framing.
inline std::vector<Vec3> twisted_framing(int n, int twists) {
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    const double phi = -twists * t;
    const Vec3 radial{std::cos(t), std::sin(t), 0.0};
    out.push_back({std::cos(phi) * radial[0], std::cos(phi) * radial[1], std::sin(phi)});
  }
  return out;
}

// Two-component (2, 2q) torus link: each component winds once around the
// core and q times around the meridian.
inline std::pair<Curve, Curve> torus_link(int q, int n = 200) {
  Curve a, b;
  const double big = 2.0, small = 0.7;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    for (int comp = 0; comp < 2; ++comp) {
      const double phi = q * t + comp * kPi;
      const double rad = big + small * std::cos(phi);
      (comp == 0 ? a : b).push_back({rad * std::cos(t), rad * std::sin(t), small * std::sin(phi)});
    }
  }
  return {a, b};
}

// Wobbly loop near a circle: radius about 1 in its own plane, random
// low-frequency perturbation.
inline Curve wobbly_loop(std::mt19937_64& rng, bool xz_plane, Vec3 center, int n = 24) {
  std::uniform_real_distribution<double> amp(-0.15, 0.15), phase(0.0, 2.0 * kPi);
  const double a1 = amp(rng), a2 = amp(rng), p1 = phase(rng), p2 = phase(rng);
  Curve out;
  for (int i = 0; i < n; ++i) {
    const double t = 2.0 * kPi * i / n;
    const double r = 1.0 + a1 * std::cos(2 * t + p1);
    const double off = a2 * std::sin(3 * t + p2);
    if (xz_plane) {
      out.push_back({center[0] + r * std::cos(t), center[1] + off, center[2] + r * std::sin(t)});
    } else {
      out.push_back({center[0] + r * std::cos(t), center[1] + r * std::sin(t), center[2] + off});
    }
  }
  return out;
}

// Planar unknot framed with `twists` turns, as a PolyLink component.
inline FramedCurve framed_unknot(int twists, Vec3 center = {0, 0, 0}, int n = 64) {
  return {round_polygon(n, 1.0, center), twisted_framing(n, twists)};
}

}  // namespace fixtures
