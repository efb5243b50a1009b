#include "qtopo/linkgeom.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <string>

#include "qtopo/detail/summation.hpp"
#include "qtopo/errors.hpp"

namespace qtopo {

namespace {

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 scale(const Vec3& a, double s) { return {a[0] * s, a[1] * s, a[2] * s}; }
double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }

// Signed solid angle of triangle (r1, r2, r3) seen from the origin; positive
// when the right-hand normal of the vertex order points away from the origin
// (van Oosterom & Strackee).
double triangle_solid_angle(const Vec3& r1, const Vec3& r2, const Vec3& r3) {
  const double l1 = norm(r1), l2 = norm(r2), l3 = norm(r3);
  const double num = dot(r1, cross(r2, r3));
  const double den = l1 * l2 * l3 + dot(r1, r2) * l3 + dot(r1, r3) * l2 + dot(r2, r3) * l1;
  return 2.0 * std::atan2(num, den);
}

// Gauss integral over segment a0->a1 and segment b0->b1, times 4 pi.
double segment_pair_angle(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  // Parallelogram w(t, s) = a(t) - b(s), traversed (0,0) (1,0) (1,1) (0,1).
  const Vec3 w00 = sub(a0, b0);
  const Vec3 w10 = sub(a1, b0);
  const Vec3 w11 = sub(a1, b1);
  const Vec3 w01 = sub(a0, b1);
  // The integrand (a - b) . (da x db) / |a - b|^3 is minus the solid-angle
  // form of w oriented by w_t x w_s, since w_s = -db.
  return -(triangle_solid_angle(w00, w10, w11) + triangle_solid_angle(w00, w11, w01));
}

void require_closed_curve(const Curve& c, const char* what) {
  if (c.size() < 3) {
    throw GeometryError(std::string(what) + ": a closed polygon needs at least 3 points");
  }
}

}  // namespace

double segment_distance(const Vec3& p0, const Vec3& p1, const Vec3& q0, const Vec3& q1) {
  const Vec3 d1 = sub(p1, p0);
  const Vec3 d2 = sub(q1, q0);
  const Vec3 r = sub(p0, q0);
  const double a = dot(d1, d1);
  const double e = dot(d2, d2);
  const double f = dot(d2, r);
  double s = 0.0, t = 0.0;
  if (a <= 0.0 && e <= 0.0) return norm(r);
  if (a <= 0.0) {
    t = std::clamp(f / e, 0.0, 1.0);
  } else {
    const double c = dot(d1, r);
    if (e <= 0.0) {
      s = std::clamp(-c / a, 0.0, 1.0);
    } else {
      const double b = dot(d1, d2);
      const double denom = a * e - b * b;
      s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
      t = (b * s + f) / e;
      if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
      } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
      }
    }
  }
  return norm(sub(add(p0, scale(d1, s)), add(q0, scale(d2, t))));
}

double curve_distance(const Curve& a, const Curve& b) {
  double best = INFINITY;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec3& a0 = a[i];
    const Vec3& a1 = a[(i + 1) % a.size()];
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, segment_distance(a0, a1, b[j], b[(j + 1) % b.size()]));
    }
  }
  return best;
}

double linking_integral(const Curve& a, const Curve& b) {
  require_closed_curve(a, "linking_integral");
  require_closed_curve(b, "linking_integral");
  std::vector<std::complex<double>> rows;
  rows.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const Vec3& a0 = a[i];
    const Vec3& a1 = a[(i + 1) % a.size()];
    double row = 0.0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      row += segment_pair_angle(a0, a1, b[j], b[(j + 1) % b.size()]);
    }
    rows.emplace_back(row, 0.0);
  }
  return detail::pairwise_sum(rows).real() / (4.0 * kPi);
}

int linking_number(const Curve& a, const Curve& b) {
  require_closed_curve(a, "linking_number");
  require_closed_curve(b, "linking_number");
  const double gap = curve_distance(a, b);
  if (!(gap > kMinSeparation)) {
    std::ostringstream msg;
    msg << "curves are too close (distance " << gap << ")";
    throw GeometryError(msg.str());
  }
  const double lk = linking_integral(a, b);
  const double rounded = std::round(lk);
  if (!(std::abs(lk - rounded) < kIntegerResidual)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "Gauss integral " << lk << " is not within " << kIntegerResidual << " of an integer";
    throw GeometryError(msg.str());
  }
  return static_cast<int>(rounded);
}

Curve push_off(const Curve& c, const std::vector<Vec3>& offsets, double delta) {
  if (offsets.size() != c.size()) {
    throw GeometryError("framing has " + std::to_string(offsets.size()) + " offsets for " +
                        std::to_string(c.size()) + " points");
  }
  Curve out;
  out.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const double len = norm(offsets[i]);
    if (!(len > 0.0)) throw GeometryError("framing offset " + std::to_string(i) + " is zero");
    out.push_back(add(c[i], scale(offsets[i], delta / len)));
  }
  return out;
}

int self_linking(const Curve& c, const std::vector<Vec3>& offsets, double delta) {
  if (!(delta > 0.0)) throw GeometryError("self_linking: delta must be positive");
  const int coarse = linking_number(c, push_off(c, offsets, delta));
  for (double d : {delta / 2.0, delta / 4.0}) {
    const int fine = linking_number(c, push_off(c, offsets, d));
    if (fine != coarse) {
      std::ostringstream msg;
      msg << "self-linking changes from " << coarse << " to " << fine << " as delta shrinks to "
          << d << "; framing too coarse for the geometry";
      throw GeometryError(msg.str());
    }
  }
  return coarse;
}

void validate(const PolyLink& link) {
  for (std::size_t ci = 0; ci < link.components.size(); ++ci) {
    const Curve& c = link.components[ci].points;
    const std::string tag = "component " + std::to_string(ci);
    require_closed_curve(c, tag.c_str());
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (!(norm(sub(c[(i + 1) % n], c[i])) > kMinSeparation)) {
        throw GeometryError(tag + ": segment " + std::to_string(i) + " has zero length");
      }
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;  // adjacent through the closing segment
        const double d = segment_distance(c[i], c[(i + 1) % n], c[j], c[(j + 1) % n]);
        if (!(d > kMinSeparation)) {
          throw GeometryError(tag + ": segments " + std::to_string(i) + " and " +
                              std::to_string(j) + " intersect");
        }
      }
    }
  }
  for (std::size_t i = 0; i < link.components.size(); ++i) {
    for (std::size_t j = i + 1; j < link.components.size(); ++j) {
      if (!(curve_distance(link.components[i].points, link.components[j].points) >
            kMinSeparation)) {
        throw GeometryError("components (" + std::to_string(i) + "," + std::to_string(j) +
                            ") intersect");
      }
    }
  }
}

FramedLinkMatrix linking_matrix(const PolyLink& link) {
  validate(link);
  const std::size_t m = link.components.size();
  FramedLinkMatrix out(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      try {
        const auto& ci = link.components[i];
        out.set(i, j, i == j ? self_linking(ci.points, ci.offsets, link.delta)
                             : linking_number(ci.points, link.components[j].points));
      } catch (const GeometryError& e) {
        throw GeometryError("components (" + std::to_string(i) + "," + std::to_string(j) +
                            "): " + e.what());
      }
    }
  }
  return out;
}

}  // namespace qtopo
