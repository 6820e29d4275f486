#pragma once

// Upper half-space model of H^3 and the action of PSL(2,C) on it.
//
// A point is w = z + t j with t > 0; a Moebius map [[a,b],[c,d]] acts by the
// Poincare extension w -> (a w + b)(c w + d)^-1.

#include <complex>
#include <stdexcept>
#include <vector>

namespace primstab {

using Complex = std::complex<double>;

/// Raised when a numeric precondition fails (singular matrix, coincident
/// endpoints, no translation length for elliptics, ...).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class H3Point {
 public:
  /// Throws ValidationError unless t > 0.
  H3Point(Complex z, double t);

  Complex z() const { return z_; }
  double t() const { return t_; }

 private:
  Complex z_;
  double t_;
};

/// A point of the Riemann sphere C u {inf}.
struct SpherePoint {
  Complex z{};
  bool infinite = false;

  static SpherePoint infinity() { return {Complex{}, true}; }
  static SpherePoint finite(Complex z) { return {z, false}; }
};

/// Chordal distance on the unit sphere; 2 is antipodal.
double chordal_distance(const SpherePoint& p, const SpherePoint& q);

struct Matrix2 {
  Complex a, b, c, d;
};

/// Determinant-normalized 2x2 complex matrix; M and -M are the same isometry.
class MoebiusMap {
 public:
  static MoebiusMap identity() { return MoebiusMap(1.0, 0.0, 0.0, 1.0); }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  Complex trace() const { return a_ + d_; }
  Complex determinant() const { return a_ * d_ - b_ * c_; }
  Matrix2 matrix() const { return {a_, b_, c_, d_}; }

  /// Adjugate; exact inverse for determinant one.
  MoebiusMap inverse() const { return MoebiusMap(d_, -b_, -c_, a_); }
  /// Divide by a square root of the current determinant to undo drift.
  MoebiusMap renormalized() const;
  /// Largest absolute entry.
  double max_abs_entry() const;

  /// Plain matrix product; determinant drifts by rounding only.
  friend MoebiusMap operator*(const MoebiusMap& lhs, const MoebiusMap& rhs);

 private:
  friend MoebiusMap normalize(const Matrix2& raw);
  MoebiusMap(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {}

  Complex a_, b_, c_, d_;
};

/// Divides by sqrt(det). Throws NumericError if |det| <= 1e-14.
MoebiusMap normalize(const Matrix2& raw);

/// Maximum entrywise distance between m1 and +-m2.
double distance_up_to_sign(const MoebiusMap& m1, const MoebiusMap& m2);

H3Point act_h3(const MoebiusMap& m, const H3Point& p);
SpherePoint act_boundary(const MoebiusMap& m, const SpherePoint& p);

/// cosh d = 1 + (|z1-z2|^2 + (t1-t2)^2) / (2 t1 t2), evaluated via asinh.
double dist_h3(const H3Point& p, const H3Point& q);

enum class IsometryType { Identity, Parabolic, Elliptic, Loxodromic };

const char* to_string(IsometryType type);

struct Tolerances {
  double identity = 1e-9;
  double parabolic = 1e-9;
  double elliptic = 1e-9;  // allowed |Im tr^2| for an elliptic
  double near_parabolic = 1e-6;
};

IsometryType classify(const MoebiusMap& m, const Tolerances& tol = {});

/// |tr^2 - 4| below the reporting threshold.
bool is_near_parabolic(const MoebiusMap& m, const Tolerances& tol = {});

/// Roots of c z^2 + (d-a) z - b = 0. One point for parabolics, two otherwise.
/// Throws NumericError for the identity.
std::vector<SpherePoint> fixed_points(const MoebiusMap& m, const Tolerances& tol = {});

/// 2 Re arccosh(tr/2). Zero for parabolics; throws NumericError for elliptics.
double translation_length(const MoebiusMap& m, const Tolerances& tol = {});

class BoundaryGeodesic {
 public:
  /// Throws NumericError when the endpoints coincide (chordal distance <= 1e-12).
  BoundaryGeodesic(SpherePoint from, SpherePoint to);

  const SpherePoint& from() const { return from_; }
  const SpherePoint& to() const { return to_; }

 private:
  SpherePoint from_;
  SpherePoint to_;
};

/// Invariant geodesic of a loxodromic map. Throws NumericError otherwise.
BoundaryGeodesic axis(const MoebiusMap& m, const Tolerances& tol = {});

BoundaryGeodesic act_geodesic(const MoebiusMap& m, const BoundaryGeodesic& g);

/// Transports g to the vertical axis {0, inf} and uses sinh d = |z| / t.
double dist_to_geodesic(const H3Point& p, const BoundaryGeodesic& g);

}  // namespace primstab
