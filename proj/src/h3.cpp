#include "primstab/h3.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "primstab/word.hpp"

namespace primstab {

H3Point::H3Point(Complex z, double t) : z_(z), t_(t) {
  if (!(t > 0.0) || !std::isfinite(t) || !std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw ValidationError("H3 point needs finite coordinates and height t > 0");
  }
}

double chordal_distance(const SpherePoint& p, const SpherePoint& q) {
  if (p.infinite && q.infinite) return 0.0;
  if (p.infinite || q.infinite) {
    const Complex z = p.infinite ? q.z : p.z;
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  return 2.0 * std::abs(p.z - q.z) / std::sqrt((1.0 + std::norm(p.z)) * (1.0 + std::norm(q.z)));
}

MoebiusMap MoebiusMap::renormalized() const {
  return normalize(matrix());
}

double MoebiusMap::max_abs_entry() const {
  return std::max({std::abs(a_), std::abs(b_), std::abs(c_), std::abs(d_)});
}

MoebiusMap operator*(const MoebiusMap& l, const MoebiusMap& r) {
  return MoebiusMap(l.a_ * r.a_ + l.b_ * r.c_, l.a_ * r.b_ + l.b_ * r.d_,
                    l.c_ * r.a_ + l.d_ * r.c_, l.c_ * r.b_ + l.d_ * r.d_);
}

MoebiusMap normalize(const Matrix2& raw) {
  const Complex det = raw.a * raw.d - raw.b * raw.c;
  // With large entries ad - bc cancels. A drift from 1 below the rounding
  // floor of that cancellation is noise: keep the entries bit-for-bit.
  const double scale = std::abs(raw.a * raw.d) + std::abs(raw.b * raw.c);
  if (std::isfinite(scale) && std::abs(det - 1.0) <= 64.0 * std::numeric_limits<double>::epsilon() * scale) {
    return MoebiusMap(raw.a, raw.b, raw.c, raw.d);
  }
  if (!(std::abs(det) > 1e-14) || !std::isfinite(std::abs(det))) {
    throw NumericError("singular matrix");
  }
  const Complex root = std::sqrt(det);
  return MoebiusMap(raw.a / root, raw.b / root, raw.c / root, raw.d / root);
}

double distance_up_to_sign(const MoebiusMap& m1, const MoebiusMap& m2) {
  auto dist = [&](double sign) {
    return std::max({std::abs(m1.a() - sign * m2.a()), std::abs(m1.b() - sign * m2.b()),
                     std::abs(m1.c() - sign * m2.c()), std::abs(m1.d() - sign * m2.d())});
  };
  return std::min(dist(1.0), dist(-1.0));
}

H3Point act_h3(const MoebiusMap& m, const H3Point& p) {
  const Complex z = p.z();
  const double t = p.t();
  const Complex cz_d = m.c() * z + m.d();
  const double denom = std::norm(cz_d) + std::norm(m.c()) * t * t;
  const Complex num = (m.a() * z + m.b()) * std::conj(cz_d) + m.a() * std::conj(m.c()) * t * t;
  return H3Point(num / denom, t / denom);
}

SpherePoint act_boundary(const MoebiusMap& m, const SpherePoint& p) {
  if (p.infinite) {
    if (m.c() == Complex{}) return SpherePoint::infinity();
    return SpherePoint::finite(m.a() / m.c());
  }
  const Complex den = m.c() * p.z + m.d();
  if (den == Complex{}) return SpherePoint::infinity();
  return SpherePoint::finite((m.a() * p.z + m.b()) / den);
}

double dist_h3(const H3Point& p, const H3Point& q) {
  const double dt = p.t() - q.t();
  const double chord = std::sqrt(std::norm(p.z() - q.z()) + dt * dt);
  return 2.0 * std::asinh(chord / (2.0 * std::sqrt(p.t() * q.t())));
}

const char* to_string(IsometryType type) {
  switch (type) {
    case IsometryType::Identity: return "identity";
    case IsometryType::Parabolic: return "parabolic";
    case IsometryType::Elliptic: return "elliptic";
    case IsometryType::Loxodromic: return "loxodromic";
  }
  return "unknown";
}

IsometryType classify(const MoebiusMap& m, const Tolerances& tol) {
  if (std::abs(m.b()) < tol.identity && std::abs(m.c()) < tol.identity &&
      std::abs(m.a() - m.d()) < tol.identity) {
    return IsometryType::Identity;
  }
  const Complex tau = m.trace() * m.trace();
  if (std::abs(tau - 4.0) < tol.parabolic) return IsometryType::Parabolic;
  if (std::abs(tau.imag()) < tol.elliptic && tau.real() > -tol.elliptic && tau.real() < 4.0) {
    return IsometryType::Elliptic;
  }
  return IsometryType::Loxodromic;
}

bool is_near_parabolic(const MoebiusMap& m, const Tolerances& tol) {
  const Complex tau = m.trace() * m.trace();
  return std::abs(tau - 4.0) < tol.near_parabolic;
}

std::vector<SpherePoint> fixed_points(const MoebiusMap& m, const Tolerances& tol) {
  const IsometryType type = classify(m, tol);
  if (type == IsometryType::Identity) throw NumericError("identity has no isolated fixed points");
  const bool parabolic = type == IsometryType::Parabolic;
  const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();

  if (std::abs(c) <= 1e-15 * m.max_abs_entry()) {
    // Fixes infinity; the remaining root solves (d - a) z = b.
    if (parabolic) return {SpherePoint::infinity()};
    return {SpherePoint::infinity(), SpherePoint::finite(b / (d - a))};
  }
  const Complex lin = d - a;
  if (parabolic) return {SpherePoint::finite(-lin / (2.0 * c))};

  // c z^2 + lin z - b = 0; pick the sign that avoids cancellation.
  const Complex root = std::sqrt(lin * lin + 4.0 * b * c);
  const double align = (std::conj(lin) * root).real();
  const Complex q = -0.5 * (align >= 0.0 ? lin + root : lin - root);
  if (q == Complex{}) return {SpherePoint::finite(Complex{})};
  return {SpherePoint::finite(q / c), SpherePoint::finite(-b / q)};
}

double translation_length(const MoebiusMap& m, const Tolerances& tol) {
  switch (classify(m, tol)) {
    case IsometryType::Identity:
    case IsometryType::Parabolic:
      return 0.0;
    case IsometryType::Elliptic:
      throw NumericError("no translation length");
    case IsometryType::Loxodromic:
      break;
  }
  return 2.0 * std::acosh(m.trace() / 2.0).real();
}

BoundaryGeodesic::BoundaryGeodesic(SpherePoint from, SpherePoint to) : from_(from), to_(to) {
  if (!(chordal_distance(from, to) > 1e-12)) throw NumericError("geodesic endpoints coincide");
}

BoundaryGeodesic axis(const MoebiusMap& m, const Tolerances& tol) {
  if (classify(m, tol) != IsometryType::Loxodromic) {
    throw NumericError("axis is defined only for loxodromic maps");
  }
  auto pts = fixed_points(m, tol);
  return BoundaryGeodesic(pts.at(0), pts.at(1));
}

BoundaryGeodesic act_geodesic(const MoebiusMap& m, const BoundaryGeodesic& g) {
  return BoundaryGeodesic(act_boundary(m, g.from()), act_boundary(m, g.to()));
}

double dist_to_geodesic(const H3Point& p, const BoundaryGeodesic& g) {
  const SpherePoint& from = g.from();
  const SpherePoint& to = g.to();
  Matrix2 raw{};
  if (from.infinite) {
    raw = {0.0, 1.0, 1.0, -to.z};  // z -> 1 / (z - q)
  } else if (to.infinite) {
    raw = {1.0, -from.z, 0.0, 1.0};  // z -> z - p
  } else {
    raw = {1.0, -from.z, 1.0, -to.z};  // z -> (z - p) / (z - q)
  }
  const H3Point moved = act_h3(normalize(raw), p);
  return std::asinh(std::abs(moved.z()) / moved.t());
}

}  // namespace primstab
