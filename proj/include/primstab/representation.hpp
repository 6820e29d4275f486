#pragma once

// Representations F_n -> PSL(2,C), the equivariant orbit map of primitive
// lines, and quasi-geodesic diagnostics over primitive conjugacy classes.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "primstab/h3.hpp"
#include "primstab/word.hpp"

namespace primstab {

/// Matrix entries left the safe double range while evaluating a word.
class OverflowError : public NumericError {
 public:
  OverflowError() : NumericError("word too long for double precision") {}
};

class Representation {
 public:
  Representation(std::vector<MoebiusMap> generators, std::string label = {});

  int rank() const { return static_cast<int>(generators_.size()); }
  const std::vector<MoebiusMap>& generators() const { return generators_; }
  const std::string& label() const { return label_; }

  /// Image of a letter; inverses are the adjugates of the stored images.
  MoebiusMap image(Letter l) const;

  /// g rho g^-1.
  Representation conjugated(const MoebiusMap& g) const;

 private:
  std::vector<MoebiusMap> generators_;
  std::vector<MoebiusMap> inverses_;
  std::string label_;
};

inline constexpr int kRenormalizeEvery = 32;

/// Left-to-right product of letter images, renormalized every 32 factors.
/// Throws OverflowError when entries stop being representable.
MoebiusMap evaluate(const Representation& rho, const Word& w);

/// Broken geodesic through rho(g_j) o, where g_j runs over the prefixes of the
/// bi-infinite periodic word ...ccc... with g_0 = e.
struct OrbitPath {
  CyclicWord word;
  int repetitions = 0;
  int first_index = 0;            // -floor(mR/2)
  std::vector<H3Point> vertices;  // indices first_index .. first_index + mR

  int last_index() const { return first_index + static_cast<int>(vertices.size()) - 1; }
  const H3Point& at(int index) const { return vertices.at(static_cast<std::size_t>(index - first_index)); }
};

OrbitPath orbit_path(const Representation& rho, const CyclicWord& c, int repetitions,
                     const H3Point& base_point);

struct MetricParams {
  int repetitions = 0;  // 0 selects max(4, ceil(60 / |c|))
  int window = 5;
  H3Point base_point{Complex{0.0, 0.0}, 1.0};
  Tolerances tolerances{};
};

int default_repetitions(int word_length);

struct PSMetrics {
  CyclicWord word_class;
  int word_length = 0;
  IsometryType trace_class = IsometryType::Loxodromic;
  bool near_parabolic = false;
  double translation_length = std::numeric_limits<double>::quiet_NaN();
  /// min over |i-j| >= window of d(p_i, p_j) / |i-j|.
  double slope_lower = std::numeric_limits<double>::quiet_NaN();
  /// max over pairs of max(0, |i-j| - d(p_i, p_j)): the K = 1 lower defect.
  double additive_defect = std::numeric_limits<double>::quiet_NaN();
  /// max generator displacement d(o, rho(x) o); bounds d(p_i, p_j) <= K |i-j|.
  double upper_constant = std::numeric_limits<double>::quiet_NaN();
  /// max over vertices of the distance to the axis of rho(c); inf if degenerate.
  double axis_margin = std::numeric_limits<double>::infinity();
  bool degenerate = false;
  bool overflow = false;
};

PSMetrics ps_metrics(const Representation& rho, const CyclicWord& c, const MetricParams& params = {});

struct LengthTrend {
  int length = 0;
  int classes = 0;
  double min_slope_lower = std::numeric_limits<double>::infinity();
  double max_axis_margin = 0.0;
  int degenerate = 0;
};

struct PSReport {
  std::vector<PSMetrics> rows;  // canonical class order
  double min_slope_lower = std::numeric_limits<double>::infinity();
  double max_axis_margin = 0.0;  // inf when some row is degenerate
  int degenerate_count = 0;
  int overflow_count = 0;
  std::vector<LengthTrend> trend;
};

/// Metrics for every primitive class up to max_length, computed on up to
/// `threads` workers. Output order does not depend on the thread count.
PSReport ps_report(const Representation& rho, int max_length, const MetricParams& params = {},
                   int threads = 1, bool include_inversion = true);

/// x1 = diag(e^{s/2}, e^{-s/2}), x2 = [[cosh s/2, sinh s/2], [sinh s/2, cosh s/2]].
Representation make_schottky_pair(double s);
/// x1 = [[1,2],[0,1]], x2 = [[1,0],[2,1]].
Representation make_sanov();
/// x1 = [[1,1],[1,2]], x2 = [[1,-1],[-1,2]]; the commutator is parabolic.
Representation make_punctured_torus();

enum class PingPong { Certified, Unknown };

const char* to_string(PingPong p);

/// Fixed conjugation applied before reading off isometric circles, so that
/// no generator of a typical example fixes infinity.
MoebiusMap ping_pong_normalization();

/// Certified iff the 2n closed isometric discs of the normalized generators
/// and their inverses are pairwise disjoint. Unknown is not a refutation.
/// Throws NumericError("choose different normalization") when an image still
/// fixes infinity.
PingPong ping_pong_certificate(const Representation& rho);

}  // namespace primstab
