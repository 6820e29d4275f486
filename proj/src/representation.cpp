#include "primstab/representation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <map>
#include <optional>
#include <thread>

#include "primstab/whitehead.hpp"

namespace primstab {

namespace {

constexpr double kOverflowEntry = 1e150;

void check_finite(const MoebiusMap& m) {
  const double size = m.max_abs_entry();
  if (!std::isfinite(size) || size > kOverflowEntry) throw OverflowError();
}

H3Point act_checked(const MoebiusMap& m, const H3Point& p) {
  try {
    return act_h3(m, p);
  } catch (const ValidationError&) {
    // Height underflowed to zero or coordinates blew up.
    throw OverflowError();
  }
}

}  // namespace

Representation::Representation(std::vector<MoebiusMap> generators, std::string label)
    : generators_(std::move(generators)), label_(std::move(label)) {
  check_rank(static_cast<int>(generators_.size()));
  inverses_.reserve(generators_.size());
  for (const auto& g : generators_) inverses_.push_back(g.inverse());
}

MoebiusMap Representation::image(Letter l) const {
  if (l.generator < 0 || l.generator >= rank()) {
    throw ValidationError("letter outside the rank of the representation");
  }
  return l.inverted ? inverses_[l.generator] : generators_[l.generator];
}

Representation Representation::conjugated(const MoebiusMap& g) const {
  const MoebiusMap g_inv = g.inverse();
  std::vector<MoebiusMap> images;
  images.reserve(generators_.size());
  for (const auto& m : generators_) images.push_back((g * m * g_inv).renormalized());
  return Representation(std::move(images), label_);
}

MoebiusMap evaluate(const Representation& rho, const Word& w) {
  if (w.rank() != rho.rank()) throw ValidationError("rank mismatch between word and representation");
  MoebiusMap m = MoebiusMap::identity();
  int since_renormalize = 0;
  for (Letter l : w.letters()) {
    m = m * rho.image(l);
    if (++since_renormalize == kRenormalizeEvery) {
      check_finite(m);
      m = m.renormalized();
      since_renormalize = 0;
    }
  }
  check_finite(m);
  return m;
}

OrbitPath orbit_path(const Representation& rho, const CyclicWord& c, int repetitions,
                     const H3Point& base_point) {
  if (c.rank() != rho.rank()) throw ValidationError("rank mismatch between word and representation");
  if (repetitions < 2) throw ValidationError("orbit path needs at least 2 repetitions");
  const int m = static_cast<int>(c.size());
  const int total = m * repetitions;
  const int backward = total / 2;
  const int forward = total - backward;

  OrbitPath path{c, repetitions, -backward, {}};
  path.vertices.reserve(static_cast<std::size_t>(total) + 1);

  // Prefix products g_{-k} for k = backward .. 1, built outward then reversed.
  std::vector<H3Point> left;
  MoebiusMap prefix = MoebiusMap::identity();
  for (int k = 1; k <= backward; ++k) {
    const Letter l = c[static_cast<std::size_t>(((-k) % m + m) % m)];
    prefix = prefix * rho.image(l.inverse());
    if (k % kRenormalizeEvery == 0) prefix = prefix.renormalized();
    check_finite(prefix);
    left.push_back(act_checked(prefix, base_point));
  }
  path.vertices.assign(left.rbegin(), left.rend());
  path.vertices.push_back(base_point);

  prefix = MoebiusMap::identity();
  for (int j = 1; j <= forward; ++j) {
    prefix = prefix * rho.image(c[static_cast<std::size_t>((j - 1) % m)]);
    if (j % kRenormalizeEvery == 0) prefix = prefix.renormalized();
    check_finite(prefix);
    path.vertices.push_back(act_checked(prefix, base_point));
  }
  return path;
}

int default_repetitions(int word_length) {
  if (word_length < 1) throw ValidationError("word length must be positive");
  return std::max(4, (60 + word_length - 1) / word_length);
}

PSMetrics ps_metrics(const Representation& rho, const CyclicWord& c, const MetricParams& params) {
  PSMetrics metrics{.word_class = c, .word_length = static_cast<int>(c.size())};
  if (params.window < 1) throw ValidationError("window must be >= 1");
  const int reps = params.repetitions > 0 ? params.repetitions : default_repetitions(metrics.word_length);
  const H3Point& o = params.base_point;

  double upper = 0.0;
  for (const auto& g : rho.generators()) upper = std::max(upper, dist_h3(o, act_h3(g, o)));
  metrics.upper_constant = upper;

  try {
    const MoebiusMap holonomy = evaluate(rho, c.as_word());
    metrics.trace_class = classify(holonomy, params.tolerances);
    metrics.near_parabolic = is_near_parabolic(holonomy, params.tolerances);
    metrics.degenerate = metrics.trace_class != IsometryType::Loxodromic;
    if (metrics.trace_class != IsometryType::Elliptic) {
      metrics.translation_length = translation_length(holonomy, params.tolerances);
    }

    // Distances along the line use equivariance, d(p_i, p_j) = d(o, rho(segment) o)
    // with the segment read from offset i mod m. Measuring from o keeps full
    // precision where two far vertices would both sit near the sphere at infinity.
    const int m = metrics.word_length;
    const int total = m * reps;
    if (params.window > total) throw ValidationError("window exceeds orbit path length");
    std::vector<std::vector<double>> displacement(static_cast<std::size_t>(m),
                                                  std::vector<double>(static_cast<std::size_t>(total) + 1, 0.0));
    for (int start = 0; start < m; ++start) {
      MoebiusMap segment = MoebiusMap::identity();
      for (int k = 1; k <= total; ++k) {
        segment = segment * rho.image(c[static_cast<std::size_t>((start + k - 1) % m)]);
        if (k % kRenormalizeEvery == 0) segment = segment.renormalized();
        check_finite(segment);
        displacement[start][k] = dist_h3(o, act_checked(segment, o));
      }
    }

    const int first = -(total / 2);
    const int last = first + total;
    double slope = std::numeric_limits<double>::infinity();
    double defect = 0.0;
    for (int i = first; i <= last; ++i) {
      const int offset = ((i % m) + m) % m;
      for (int j = i + 1; j <= last; ++j) {
        const int gap = j - i;
        const double d = displacement[offset][gap];
        if (gap >= params.window) slope = std::min(slope, d / gap);
        defect = std::max(defect, gap - d);
      }
    }
    metrics.slope_lower = slope;
    metrics.additive_defect = defect;

    if (!metrics.degenerate) {
      // rho(c) maps vertex j to vertex j + m and preserves its axis, so one
      // period of vertices attains the maximum.
      const BoundaryGeodesic line = axis(holonomy, params.tolerances);
      double margin = 0.0;
      MoebiusMap prefix = MoebiusMap::identity();
      for (int j = 0; j < m; ++j) {
        margin = std::max(margin, dist_to_geodesic(act_checked(prefix, o), line));
        prefix = prefix * rho.image(c[static_cast<std::size_t>(j)]);
      }
      metrics.axis_margin = margin;
    } else {
      metrics.axis_margin = std::numeric_limits<double>::infinity();
    }
  } catch (const OverflowError&) {
    metrics.overflow = true;
  }
  return metrics;
}

PSReport ps_report(const Representation& rho, int max_length, const MetricParams& params, int threads,
                   bool include_inversion) {
  const auto classes = enumerate_primitive_classes(rho.rank(), max_length, include_inversion);
  std::vector<std::optional<PSMetrics>> slots(classes.size());

  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(classes.size());
  auto worker = [&] {
    for (std::size_t i = next++; i < classes.size(); i = next++) {
      try {
        slots[i] = ps_metrics(rho, classes[i], params);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::clamp(threads, 1, static_cast<int>(std::max<std::size_t>(1, classes.size())));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }

  PSReport report;
  std::map<int, LengthTrend> trend;
  for (auto& slot : slots) {
    PSMetrics& row = *slot;
    LengthTrend& bucket = trend[row.word_length];
    bucket.length = row.word_length;
    ++bucket.classes;
    if (row.overflow) {
      ++report.overflow_count;
    } else {
      if (row.degenerate) {
        ++report.degenerate_count;
        ++bucket.degenerate;
      }
      report.min_slope_lower = std::min(report.min_slope_lower, row.slope_lower);
      report.max_axis_margin = std::max(report.max_axis_margin, row.axis_margin);
      bucket.min_slope_lower = std::min(bucket.min_slope_lower, row.slope_lower);
      bucket.max_axis_margin = std::max(bucket.max_axis_margin, row.axis_margin);
    }
    report.rows.push_back(std::move(row));
  }
  for (auto& [length, bucket] : trend) report.trend.push_back(bucket);
  return report;
}

Representation make_schottky_pair(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) throw ValidationError("Schottky parameter s must be > 0");
  const double half = s / 2.0;
  const MoebiusMap x1 = normalize({std::exp(half), 0.0, 0.0, std::exp(-half)});
  const MoebiusMap x2 = normalize({std::cosh(half), std::sinh(half), std::sinh(half), std::cosh(half)});
  return Representation({x1, x2}, "schottky");
}

Representation make_sanov() {
  return Representation({normalize({1.0, 2.0, 0.0, 1.0}), normalize({1.0, 0.0, 2.0, 1.0})}, "sanov");
}

Representation make_punctured_torus() {
  return Representation({normalize({1.0, 1.0, 1.0, 2.0}), normalize({1.0, -1.0, -1.0, 2.0})}, "ptorus");
}

const char* to_string(PingPong p) { return p == PingPong::Certified ? "Certified" : "Unknown"; }

MoebiusMap ping_pong_normalization() {
  // Rotation about (0, 1) moving infinity off the coordinate axes.
  constexpr double theta = 0.78;
  constexpr double phi = 1.59;
  const Complex phase = std::polar(1.0, phi);
  return normalize({std::cos(theta), -std::sin(theta) * phase, std::sin(theta) * std::conj(phase),
                    std::cos(theta)});
}

PingPong ping_pong_certificate(const Representation& rho) {
  const Representation normalized = rho.conjugated(ping_pong_normalization());
  struct Disc {
    Complex center;
    double radius;
  };
  std::vector<Disc> discs;
  for (int i = 0; i < normalized.rank(); ++i) {
    for (bool inverted : {false, true}) {
      const MoebiusMap m = normalized.image(Letter{i, inverted});
      if (std::abs(m.c()) <= 1e-12 * m.max_abs_entry()) {
        throw NumericError("choose different normalization");
      }
      discs.push_back({-m.d() / m.c(), 1.0 / std::abs(m.c())});
    }
  }
  for (std::size_t i = 0; i < discs.size(); ++i) {
    for (std::size_t j = i + 1; j < discs.size(); ++j) {
      const double reach = discs[i].radius + discs[j].radius;
      // Tangent discs are not strictly disjoint; leave room for rounding.
      if (std::abs(discs[i].center - discs[j].center) <= reach * (1.0 + 1e-9)) return PingPong::Unknown;
    }
  }
  return PingPong::Certified;
}

}  // namespace primstab
