#include "primstab/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace primstab {

// ---------------------------------------------------------------------------
// Whitehead graph

int WhiteheadGraph::multiplicity(Letter x, Letter y) const {
  auto it = edges.find(std::minmax({x.index(), y.index()}));
  return it == edges.end() ? 0 : it->second;
}

int WhiteheadGraph::total_multiplicity() const {
  int total = 0;
  for (const auto& [pair, count] : edges) total += count;
  return total;
}

WhiteheadGraph whitehead_graph(const CyclicWord& c) {
  WhiteheadGraph g;
  g.rank = c.rank();
  const std::size_t n = c.size();
  for (std::size_t i = 0; i < n; ++i) {
    Letter x = c[i];
    Letter y = c[(i + 1) % n].inverse();
    ++g.edges[std::minmax({x.index(), y.index()})];
  }
  return g;
}

ConnectivityReport connectivity_report(const WhiteheadGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
  for (const auto& [pair, count] : g.edges) {
    if (count <= 0 || pair.first == pair.second) continue;
    adj[pair.first].insert(pair.second);
    adj[pair.second].insert(pair.first);
  }

  std::vector<int> discovery(static_cast<std::size_t>(n), -1);
  std::vector<int> low(static_cast<std::size_t>(n), 0);
  std::vector<bool> is_cut(static_cast<std::size_t>(n), false);
  int timer = 0;

  std::function<void(int, int)> dfs = [&](int v, int parent) {
    discovery[v] = low[v] = timer++;
    int children = 0;
    for (int u : adj[v]) {
      if (u == parent) continue;
      if (discovery[u] >= 0) {
        low[v] = std::min(low[v], discovery[u]);
        continue;
      }
      ++children;
      dfs(u, v);
      low[v] = std::min(low[v], low[u]);
      if (parent >= 0 && low[u] >= discovery[v]) is_cut[v] = true;
    }
    if (parent < 0 && children > 1) is_cut[v] = true;
  };

  ConnectivityReport report;
  int components = 0;
  for (int v = 0; v < n; ++v) {
    if (discovery[v] < 0) {
      ++components;
      dfs(v, -1);
    }
  }
  report.is_connected = components == 1;
  for (int v = 0; v < n; ++v) {
    if (is_cut[v]) report.cut_vertices.push_back(Letter::from_index(v));
  }
  return report;
}

Separability whitehead_separability_test(const CyclicWord& c) {
  auto report = connectivity_report(whitehead_graph(c));
  return report.is_connected && report.cut_vertices.empty() ? Separability::NotSeparable
                                                             : Separability::Inconclusive;
}

const char* to_string(Separability s) {
  return s == Separability::NotSeparable ? "NotSeparable" : "Inconclusive";
}

// ---------------------------------------------------------------------------
// Automorphisms

WhiteheadAutomorphism WhiteheadAutomorphism::permutation(int rank, std::vector<Letter> images) {
  check_rank(rank);
  if (images.size() != static_cast<std::size_t>(rank)) {
    throw ValidationError("permutation needs one image per generator");
  }
  std::vector<bool> seen(static_cast<std::size_t>(rank), false);
  for (Letter l : images) {
    if (l.generator < 0 || l.generator >= rank || seen[l.generator]) {
      throw ValidationError("permutation images must be a bijection on generators");
    }
    seen[l.generator] = true;
  }
  WhiteheadAutomorphism phi;
  phi.kind_ = Kind::Permutation;
  phi.rank_ = rank;
  phi.images_ = std::move(images);
  return phi;
}

WhiteheadAutomorphism WhiteheadAutomorphism::type_two(int rank, std::vector<bool> subset,
                                                      Letter multiplier) {
  check_rank(rank);
  if (subset.size() != static_cast<std::size_t>(2 * rank)) {
    throw ValidationError("type-II subset must have one flag per letter");
  }
  if (multiplier.generator < 0 || multiplier.generator >= rank) {
    throw ValidationError("multiplier out of range");
  }
  if (!subset[multiplier.index()] || subset[multiplier.inverse().index()]) {
    throw ValidationError("type-II data requires a in A and a^-1 not in A");
  }
  WhiteheadAutomorphism phi;
  phi.kind_ = Kind::TypeTwo;
  phi.rank_ = rank;
  phi.subset_ = std::move(subset);
  phi.multiplier_ = multiplier;
  return phi;
}

Word WhiteheadAutomorphism::image(int generator) const {
  if (kind_ == Kind::Permutation) return Word(rank_, {images_.at(generator)});
  Letter x{generator, false};
  if (x.generator == multiplier_.generator) return Word(rank_, {x});
  std::vector<Letter> out;
  if (subset_[x.index()]) out.push_back(multiplier_);
  out.push_back(x);
  if (subset_[x.inverse().index()]) out.push_back(multiplier_.inverse());
  return Word(rank_, std::move(out));
}

WhiteheadAutomorphism WhiteheadAutomorphism::inverse() const {
  if (kind_ == Kind::Permutation) {
    std::vector<Letter> inv(images_.size());
    for (int i = 0; i < rank_; ++i) {
      Letter img = images_[i];
      inv[img.generator] = Letter{i, img.inverted};
    }
    return permutation(rank_, std::move(inv));
  }
  std::vector<bool> subset = subset_;
  subset[multiplier_.index()] = false;
  subset[multiplier_.inverse().index()] = true;
  return type_two(rank_, std::move(subset), multiplier_.inverse());
}

std::string WhiteheadAutomorphism::to_string() const {
  std::string out;
  if (kind_ == Kind::Permutation) {
    out = "perm(";
    for (int i = 0; i < rank_; ++i) {
      if (i > 0) out += ',';
      out += Letter{i, false}.to_char();
      out += "->";
      out += images_[i].to_char();
    }
    return out + ")";
  }
  out = "(A={";
  bool first = true;
  for (int i = 0; i < 2 * rank_; ++i) {
    if (!subset_[i]) continue;
    if (!first) out += ',';
    out += Letter::from_index(i).to_char();
    first = false;
  }
  out += "},";
  out += multiplier_.to_char();
  return out + ")";
}

std::vector<WhiteheadAutomorphism> all_whitehead_automorphisms(int rank) {
  check_rank(rank);
  const int letters = 2 * rank;
  std::vector<WhiteheadAutomorphism> out;
  for (int m = 0; m < letters; ++m) {
    Letter a = Letter::from_index(m);
    std::vector<int> others;
    for (int i = 0; i < letters; ++i) {
      if (i != a.index() && i != a.inverse().index()) others.push_back(i);
    }
    const unsigned limit = 1u << others.size();
    for (unsigned mask = 1; mask < limit; ++mask) {
      std::vector<bool> subset(static_cast<std::size_t>(letters), false);
      subset[a.index()] = true;
      for (std::size_t k = 0; k < others.size(); ++k) {
        if (mask & (1u << k)) subset[others[k]] = true;
      }
      out.push_back(WhiteheadAutomorphism::type_two(rank, std::move(subset), a));
    }
  }
  return out;
}

std::vector<WhiteheadAutomorphism> nielsen_permutations(int rank) {
  check_rank(rank);
  std::vector<int> perm(static_cast<std::size_t>(rank));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<WhiteheadAutomorphism> out;
  do {
    for (unsigned signs = 0; signs < (1u << rank); ++signs) {
      bool identity = signs == 0;
      std::vector<Letter> images;
      for (int i = 0; i < rank; ++i) {
        images.push_back(Letter{perm[i], (signs & (1u << i)) != 0});
        if (perm[i] != i) identity = false;
      }
      if (!identity) out.push_back(WhiteheadAutomorphism::permutation(rank, std::move(images)));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Word apply_automorphism(const WhiteheadAutomorphism& phi, const Word& w) {
  if (phi.rank() != w.rank()) {
    throw ValidationError("rank mismatch between automorphism and word");
  }
  std::vector<Letter> out;
  out.reserve(w.size() * 3);
  if (phi.kind() == WhiteheadAutomorphism::Kind::Permutation) {
    for (Letter l : w.letters()) {
      Letter img = phi.permutation_images()[l.generator];
      out.push_back(l.inverted ? img.inverse() : img);
    }
    return Word(w.rank(), std::move(out));
  }
  // Type II on a single letter l (possibly inverted): l -> a^[l in A] l a^-[l^-1 in A].
  const Letter a = phi.multiplier();
  const auto& subset = phi.subset();
  for (Letter l : w.letters()) {
    if (l.generator == a.generator) {
      out.push_back(l);
      continue;
    }
    if (subset[l.index()]) out.push_back(a);
    out.push_back(l);
    if (subset[l.inverse().index()]) out.push_back(a.inverse());
  }
  return Word(w.rank(), std::move(out));
}

// ---------------------------------------------------------------------------
// Primitivity

PrimitivityVerdict minimize(const CyclicWord& c) {
  if (c.rank() < 2) throw ValidationError("minimize requires rank >= 2");
  const auto autos = all_whitehead_automorphisms(c.rank());
  PrimitivityVerdict verdict;
  CyclicWord current = c;
  bool progressed = true;
  while (progressed && current.size() > 1) {
    progressed = false;
    for (const auto& phi : autos) {
      Word image = apply_automorphism(phi, current.as_word());
      CyclicWord reduced = cyclic_reduce(image).cyclic;
      if (reduced.size() < current.size()) {
        verdict.reduction_trace.push_back({phi, reduced});
        current = std::move(reduced);
        progressed = true;
        break;
      }
    }
  }
  verdict.minimal_length = static_cast<int>(current.size());
  verdict.is_primitive = verdict.minimal_length == 1;
  return verdict;
}

bool is_primitive(const CyclicWord& c) { return minimize(c).is_primitive; }

namespace {

// True iff `w` is its own least rotation, and (optionally) not greater than
// the least rotation of its inverse.
bool is_canonical(const std::vector<Letter>& w, bool include_inversion) {
  const std::size_t n = w.size();
  auto less_rotation = [n](auto&& at_a, auto&& at_b) {
    for (std::size_t k = 0; k < n; ++k) {
      Letter x = at_a(k), y = at_b(k);
      if (x != y) return x < y;
    }
    return false;
  };
  for (std::size_t r = 1; r < n; ++r) {
    if (less_rotation([&](std::size_t k) { return w[(r + k) % n]; },
                      [&](std::size_t k) { return w[k]; })) {
      return false;
    }
  }
  if (include_inversion) {
    // Rotation r of the inverse, read at position k: w[(n-1-r-k) mod n]^-1.
    for (std::size_t r = 0; r < n; ++r) {
      auto inv_at = [&](std::size_t k) { return w[(2 * n - 1 - r - k) % n].inverse(); };
      if (less_rotation(inv_at, [&](std::size_t k) { return w[k]; })) return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CyclicWord> enumerate_cyclic_classes(int rank, int max_length, bool include_inversion) {
  check_rank(rank);
  if (max_length < 1) throw ValidationError("max_length must be >= 1");
  const int letters = 2 * rank;
  std::vector<CyclicWord> out;
  std::vector<Letter> buf;
  for (int len = 1; len <= max_length; ++len) {
    buf.assign(static_cast<std::size_t>(len), Letter{});
    // Depth-first in letter order gives lexicographic order within a length.
    std::function<void(int)> extend = [&](int pos) {
      if (pos == len) {
        if (buf.front().is_inverse_of(buf.back())) return;
        if (is_canonical(buf, include_inversion)) out.emplace_back(rank, buf);
        return;
      }
      for (int i = 0; i < letters; ++i) {
        Letter l = Letter::from_index(i);
        if (pos > 0 && buf[pos - 1].is_inverse_of(l)) continue;
        // A least rotation never starts with a letter larger than any later one.
        if (pos > 0 && l < buf.front()) continue;
        buf[pos] = l;
        extend(pos + 1);
      }
    };
    extend(0);
  }
  return out;
}

std::vector<CyclicWord> enumerate_primitive_classes(int rank, int max_length,
                                                    bool include_inversion) {
  if (rank < 2) throw ValidationError("enumeration requires rank >= 2");
  std::vector<CyclicWord> out;
  for (auto& c : enumerate_cyclic_classes(rank, max_length, include_inversion)) {
    if (is_primitive(c)) out.push_back(std::move(c));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Brute-force oracle

namespace {

// Substitution through generator images: the oracle's own action, kept apart
// from apply_automorphism's letter rule.
Word substitute(const std::vector<Word>& images, const Word& w) {
  std::vector<Letter> out;
  for (Letter l : w.letters()) {
    const Word& img = images[l.generator];
    if (!l.inverted) {
      out.insert(out.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) {
        out.push_back(it->inverse());
      }
    }
  }
  return Word(w.rank(), std::move(out));
}

}  // namespace

PrimitiveClosure::PrimitiveClosure(int rank, int max_length, int depth)
    : rank_(rank), max_length_(max_length) {
  if (rank < 2) throw ValidationError("oracle requires rank >= 2");
  if (max_length < 1) throw ValidationError("max_length must be >= 1");

  std::vector<std::vector<Word>> tables;
  auto add_tables = [&](const std::vector<WhiteheadAutomorphism>& autos) {
    for (const auto& phi : autos) {
      std::vector<Word> images;
      for (int i = 0; i < rank; ++i) images.push_back(phi.image(i));
      tables.push_back(std::move(images));
    }
  };
  add_tables(all_whitehead_automorphisms(rank));
  add_tables(nielsen_permutations(rank));

  std::set<std::string> seen;
  std::vector<CyclicWord> frontier;
  CyclicWord seed(rank, {Letter{0, false}});
  seen.insert(seed.to_string());
  frontier.push_back(seed);

  while (!frontier.empty()) {
    if (layers_ >= depth) throw std::runtime_error("increase depth");
    ++layers_;
    std::vector<CyclicWord> next;
    for (const auto& c : frontier) {
      const Word w = c.as_word();
      for (const auto& images : tables) {
        Word img = substitute(images, w);
        if (img.empty()) continue;
        CyclicWord reduced = canonical_class(cyclic_reduce(img).cyclic, true);
        if (static_cast<int>(reduced.size()) > max_length) continue;
        if (seen.insert(reduced.to_string()).second) next.push_back(std::move(reduced));
      }
    }
    frontier = std::move(next);
  }
  classes_.assign(seen.begin(), seen.end());
}

bool PrimitiveClosure::contains(const CyclicWord& c) const {
  if (c.rank() != rank_) throw ValidationError("rank mismatch with oracle closure");
  if (static_cast<int>(c.size()) > max_length_) {
    throw ValidationError("word longer than the oracle closure bound");
  }
  return std::binary_search(classes_.begin(), classes_.end(), canonical_class(c, true).to_string());
}

bool primitivity_oracle(const CyclicWord& c, int depth) {
  PrimitiveClosure closure(c.rank(), static_cast<int>(c.size()), depth);
  return closure.contains(c);
}

// ---------------------------------------------------------------------------
// Blocking evidence

BlockingReport blocking_witness(const CyclicWord& g, int n_max, int l_max) {
  if (n_max < 1 || l_max < 1) throw ValidationError("blocking bounds must be positive");
  BlockingReport report;
  report.n_max = n_max;
  report.l_max = l_max;

  std::optional<std::vector<CyclicWord>> hosts;
  for (int n = 1; n <= n_max; ++n) {
    BlockingProbe probe;
    probe.n = n;
    Word pattern = power(g, n);
    if (static_cast<int>(pattern.size()) > l_max) {
      probe.vacuous = true;
    } else {
      if (!hosts) hosts = enumerate_primitive_classes(g.rank(), l_max, false);
      for (const auto& h : *hosts) {
        // A shorter host only contains the pattern through its proper powers.
        if (h.size() < pattern.size()) continue;
        if (cyclic_subword_occurs(h, pattern)) {
          probe.occurs = true;
          probe.host = h;
          break;
        }
      }
    }
    report.probes.push_back(probe);
    if (!probe.occurs) {
      report.witness = n;
      report.bound_limited = probe.vacuous;
      break;
    }
  }
  return report;
}

}  // namespace primstab
