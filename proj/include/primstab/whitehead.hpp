#pragma once

// Whitehead graphs, Whitehead automorphisms and the primitivity decision.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "primstab/word.hpp"

namespace primstab {

/// Multigraph on the 2n letters. Each cyclically adjacent pair (l, m) of the
/// source word contributes one edge {l, m^-1}: x and y are joined when x y^-1
/// appears in some cyclic permutation of the word.
struct WhiteheadGraph {
  int rank = 0;
  /// Keyed by (Letter::index(), Letter::index()) with first <= second; loops allowed.
  std::map<std::pair<int, int>, int> edges;

  int vertex_count() const { return 2 * rank; }
  int multiplicity(Letter x, Letter y) const;
  int total_multiplicity() const;
};

WhiteheadGraph whitehead_graph(const CyclicWord& c);

struct ConnectivityReport {
  bool is_connected = false;
  std::vector<Letter> cut_vertices;  // sorted by letter order
};

/// Connectivity over all 2n vertices; articulation points of the underlying
/// simple graph (loops and multiplicities ignored).
ConnectivityReport connectivity_report(const WhiteheadGraph& g);

enum class Separability { NotSeparable, Inconclusive };

/// NotSeparable iff the graph is connected without cut vertex. The converse
/// does not hold, hence Inconclusive rather than Separable.
Separability whitehead_separability_test(const CyclicWord& c);

const char* to_string(Separability s);

/// Either a permutation of generators with inversions, or a type-II
/// automorphism (A, a) acting by x -> a^[x in A] x a^-[x^-1 in A] for
/// x not in {a, a^-1}, fixing a.
class WhiteheadAutomorphism {
 public:
  enum class Kind { Permutation, TypeTwo };

  /// images[i] is the image of generator i; must be a bijection on generators.
  static WhiteheadAutomorphism permutation(int rank, std::vector<Letter> images);
  /// subset is indexed by Letter::index(); requires subset[a], !subset[a^-1].
  static WhiteheadAutomorphism type_two(int rank, std::vector<bool> subset, Letter multiplier);

  Kind kind() const { return kind_; }
  int rank() const { return rank_; }
  const std::vector<bool>& subset() const { return subset_; }
  Letter multiplier() const { return multiplier_; }
  const std::vector<Letter>& permutation_images() const { return images_; }

  /// Image of a single generator (uninverted) as a reduced word.
  Word image(int generator) const;
  WhiteheadAutomorphism inverse() const;
  /// "(A={a,b},a)" or "perm(a->b,b->A)".
  std::string to_string() const;

 private:
  WhiteheadAutomorphism() = default;

  Kind kind_ = Kind::TypeTwo;
  int rank_ = 0;
  std::vector<bool> subset_;
  Letter multiplier_{};
  std::vector<Letter> images_;
};

/// All type-II automorphisms except those with A = {a}, in a fixed order:
/// multiplier in letter order, then subset bitmask ascending.
std::vector<WhiteheadAutomorphism> all_whitehead_automorphisms(int rank);
/// All non-identity permutations with inversions: n! * 2^n - 1 of them.
std::vector<WhiteheadAutomorphism> nielsen_permutations(int rank);

Word apply_automorphism(const WhiteheadAutomorphism& phi, const Word& w);

struct ReductionStep {
  WhiteheadAutomorphism automorphism;
  CyclicWord result;
};

struct PrimitivityVerdict {
  bool is_primitive = false;
  int minimal_length = 0;
  std::vector<ReductionStep> reduction_trace;
};

/// Greedy peak reduction: apply the first length-decreasing type-II move
/// until none exists. By Whitehead's theorem the final length is minimal in
/// the Aut(F) orbit, so primitive iff it reaches length 1.
PrimitivityVerdict minimize(const CyclicWord& c);

bool is_primitive(const CyclicWord& c);

/// Canonical primitive classes of length <= max_length, in shortlex order.
/// With include_inversion the class of w and w^-1 is listed once.
std::vector<CyclicWord> enumerate_primitive_classes(int rank, int max_length,
                                                    bool include_inversion = true);

/// Every cyclically reduced word of length in [1, max_length], canonical
/// under rotation (and inversion when requested), in shortlex order.
std::vector<CyclicWord> enumerate_cyclic_classes(int rank, int max_length,
                                                 bool include_inversion = true);

/// Breadth-first closure of {x1} under all Whitehead automorphisms, keeping
/// only classes of cyclic length <= max_length. Independent of minimize().
class PrimitiveClosure {
 public:
  /// Throws std::runtime_error("increase depth") when the frontier is still
  /// nonempty after `depth` layers.
  PrimitiveClosure(int rank, int max_length, int depth = 64);

  bool contains(const CyclicWord& c) const;
  std::size_t size() const { return classes_.size(); }
  int rank() const { return rank_; }
  int max_length() const { return max_length_; }
  int layers() const { return layers_; }

 private:
  int rank_;
  int max_length_;
  int layers_ = 0;
  std::vector<std::string> classes_;  // sorted canonical strings
};

bool primitivity_oracle(const CyclicWord& c, int depth = 64);

struct BlockingProbe {
  int n = 0;
  bool occurs = false;
  std::optional<CyclicWord> host;  // a primitive class containing g^n, when found
  bool vacuous = false;            // |g^n| > L_max; nothing was searched
};

struct BlockingReport {
  int n_max = 0;
  int l_max = 0;
  std::optional<int> witness;  // least n with no occurrence
  bool bound_limited = false;  // witness came from |g^n| > L_max
  std::vector<BlockingProbe> probes;
};

/// Bounded evidence only: searches primitive classes up to l_max for g^n.
BlockingReport blocking_witness(const CyclicWord& g, int n_max, int l_max);

}  // namespace primstab
