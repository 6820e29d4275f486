#include <doctest.h>

#include <numeric>
#include <set>
#include <string>

#include "primstab/serialization.hpp"
#include "primstab/whitehead.hpp"
#include "test_support.hpp"

using namespace primstab;
using primstab::testing::random_cyclic;
using primstab::testing::random_letters;
using primstab::testing::rng;

namespace {

CyclicWord cyc(const std::string& s, int rank = 2) { return cyclic_reduce(parse_word(s, rank)).cyclic; }

Letter L(char ch) { return parse_letter(ch); }

// Independent count: scan every subset bitmask of the 2n letters.
int brute_type_two_count(int rank) {
  const int letters = 2 * rank;
  int count = 0;
  for (int a = 0; a < letters; ++a) {
    const int a_inv = a ^ 1;
    for (int mask = 0; mask < (1 << letters); ++mask) {
      if (!(mask & (1 << a)) || (mask & (1 << a_inv))) continue;
      if (mask == (1 << a)) continue;
      ++count;
    }
  }
  return count;
}

}  // namespace

TEST_CASE("whitehead_graph follows the x y^-1 edge rule") {
  // Cyclic pairs of abAB: (a,b)->{a,B}, (b,A)->{b,a}, (A,B)->{A,b}, (B,a)->{B,A}.
  WhiteheadGraph g = whitehead_graph(cyc("abAB"));
  CHECK(g.edges.size() == 4);
  CHECK(g.multiplicity(L('a'), L('B')) == 1);
  CHECK(g.multiplicity(L('b'), L('a')) == 1);
  CHECK(g.multiplicity(L('A'), L('b')) == 1);
  CHECK(g.multiplicity(L('B'), L('A')) == 1);
  CHECK(g.multiplicity(L('a'), L('A')) == 0);

  g = whitehead_graph(cyc("a"));
  CHECK(g.edges.size() == 1);
  CHECK(g.multiplicity(L('a'), L('A')) == 1);

  g = whitehead_graph(cyc("aa"));
  CHECK(g.multiplicity(L('a'), L('A')) == 2);
}

TEST_CASE("connectivity_report") {
  auto r = connectivity_report(whitehead_graph(cyc("abAB")));
  CHECK(r.is_connected);
  CHECK(r.cut_vertices.empty());

  r = connectivity_report(whitehead_graph(cyc("a")));
  CHECK_FALSE(r.is_connected);

  // Path a - b - A with B isolated.
  WhiteheadGraph path;
  path.rank = 2;
  path.edges[{L('a').index(), L('b').index()}] = 1;
  path.edges[{L('A').index(), L('b').index()}] = 1;
  r = connectivity_report(path);
  CHECK_FALSE(r.is_connected);
  REQUIRE(r.cut_vertices.size() == 1);
  CHECK(r.cut_vertices[0] == L('b'));

  // A loop alone never creates a cut vertex.
  WhiteheadGraph loops = path;
  loops.edges[{L('b').index(), L('b').index()}] = 3;
  CHECK(connectivity_report(loops).cut_vertices.size() == 1);
}

TEST_CASE("whitehead_separability_test") {
  CHECK(whitehead_separability_test(cyc("abAB")) == Separability::NotSeparable);
  CHECK(whitehead_separability_test(cyc("a")) == Separability::Inconclusive);
  CHECK(whitehead_separability_test(cyc("ab")) == Separability::Inconclusive);
}

TEST_CASE("all_whitehead_automorphisms counts") {
  CHECK(brute_type_two_count(2) == 12);
  CHECK(brute_type_two_count(3) == 90);
  CHECK(all_whitehead_automorphisms(2).size() == 12);
  CHECK(all_whitehead_automorphisms(3).size() == 90);
  for (const auto& phi : all_whitehead_automorphisms(3)) {
    CHECK(phi.subset()[phi.multiplier().index()]);
    CHECK_FALSE(phi.subset()[phi.multiplier().inverse().index()]);
  }
  CHECK(nielsen_permutations(2).size() == 7);
  CHECK(nielsen_permutations(3).size() == 47);
}

TEST_CASE("type-II data is validated") {
  CHECK_THROWS_AS(WhiteheadAutomorphism::type_two(2, {true, true, false, false}, L('a')), ValidationError);
  CHECK_THROWS_AS(WhiteheadAutomorphism::type_two(2, {false, false, true, false}, L('a')), ValidationError);
}

TEST_CASE("apply_automorphism") {
  // A = {a, b}, multiplier a: b -> ab.
  auto phi = WhiteheadAutomorphism::type_two(2, {true, false, true, false}, L('a'));
  CHECK(apply_automorphism(phi, parse_word("b", 2)).to_string() == "ab");
  CHECK(apply_automorphism(phi, parse_word("ab", 2)).to_string() == "aab");
  CHECK(apply_automorphism(phi, Word(2)).empty());
  CHECK_THROWS_AS(apply_automorphism(phi, parse_word("a", 3)), ValidationError);
}

TEST_CASE("automorphisms are homomorphisms with working inverses") {
  for (int rank : {2, 3}) {
    auto autos = all_whitehead_automorphisms(rank);
    auto perms = nielsen_permutations(rank);
    autos.insert(autos.end(), perms.begin(), perms.end());
    for (const auto& phi : autos) {
      Word u = free_reduce(random_letters(rank, 7), rank);
      Word v = free_reduce(random_letters(rank, 5), rank);
      CHECK(apply_automorphism(phi, u * v) == apply_automorphism(phi, u) * apply_automorphism(phi, v));
      CHECK(apply_automorphism(phi.inverse(), apply_automorphism(phi, u)) == u);
      CHECK(apply_automorphism(phi, apply_automorphism(phi.inverse(), u)) == u);
    }
  }
}

TEST_CASE("minimize examples agree with the oracle") {
  auto v = minimize(cyc("aba"));
  CHECK(v.is_primitive);
  CHECK(v.minimal_length == 1);
  CHECK(primitivity_oracle(cyc("aba")));

  v = minimize(cyc("abAB"));
  CHECK_FALSE(v.is_primitive);
  CHECK(v.minimal_length == 4);
  CHECK(v.reduction_trace.empty());
  CHECK_FALSE(primitivity_oracle(cyc("abAB")));

  v = minimize(cyc("aa"));
  CHECK_FALSE(v.is_primitive);
  CHECK(v.minimal_length == 2);
  CHECK_FALSE(primitivity_oracle(cyc("aa")));

  CHECK(primitivity_oracle(cyc("a")));
}

TEST_CASE("reduction traces strictly decrease") {
  for (int trial = 0; trial < 200; ++trial) {
    CyclicWord c = random_cyclic(2 + trial % 2, 1 + trial % 9);
    auto v = minimize(c);
    CHECK(v.is_primitive == (v.minimal_length == 1));
    std::size_t previous = c.size();
    for (const auto& step : v.reduction_trace) {
      CHECK(step.result.size() < previous);
      previous = step.result.size();
    }
    CHECK(static_cast<int>(previous) == v.minimal_length);
  }
}

TEST_CASE("oracle depth guard") {
  CHECK_THROWS_WITH_AS(PrimitiveClosure(2, 6, 1), "increase depth", std::runtime_error);
}

TEST_CASE("enumerate_primitive_classes small cases") {
  auto to_strings = [](const std::vector<CyclicWord>& cs) {
    std::vector<std::string> out;
    for (const auto& c : cs) out.push_back(c.to_string());
    return out;
  };
  CHECK(to_strings(enumerate_primitive_classes(2, 1)) == std::vector<std::string>{"a", "b"});
  CHECK(to_strings(enumerate_primitive_classes(2, 2)) == std::vector<std::string>{"a", "b", "ab", "aB"});

  // Abelianization cross-check for length <= 2: gcd of exponent sums is 1.
  for (const auto& c : enumerate_cyclic_classes(2, 2)) {
    auto sums = exponent_sums(c.letters(), 2);
    const bool coprime = std::gcd(std::abs(sums[0]), std::abs(sums[1])) == 1;
    CHECK(is_primitive(c) == coprime);
  }

  // Without inversion dedup every class appears with its inverse.
  auto oriented = enumerate_primitive_classes(2, 8, false);
  auto unoriented = enumerate_primitive_classes(2, 8, true);
  CHECK(oriented.size() == 2 * unoriented.size());
  std::set<std::string> seen;
  for (const auto& c : oriented) seen.insert(c.to_string());
  for (const auto& c : unoriented) CHECK(seen.count(c.inverse().to_string()) == 1);
}

TEST_CASE("enumeration never contains proper powers and matches the oracle") {
  PrimitiveClosure closure(2, 6);
  for (const auto& c : enumerate_cyclic_classes(2, 6)) {
    CHECK(is_primitive(c) == closure.contains(c));
  }
  for (const auto& c : enumerate_primitive_classes(2, 8)) {
    const std::string s = c.to_string();
    for (std::size_t period = 1; period < s.size(); ++period) {
      if (s.size() % period != 0) continue;
      std::string repeated;
      while (repeated.size() < s.size()) repeated += s.substr(0, period);
      CHECK(repeated != s);
    }
  }
}

TEST_CASE("Whitehead graph invariants") {
  for (int rank : {2, 3}) {
    for (int trial = 0; trial < 200; ++trial) {
      CyclicWord c = random_cyclic(rank, 1 + trial % 10);
      CHECK(whitehead_graph(c).total_multiplicity() == static_cast<int>(c.size()));
    }
  }
  for (const auto& c : enumerate_primitive_classes(2, 6)) {
    auto r = connectivity_report(whitehead_graph(c));
    CHECK((!r.is_connected || !r.cut_vertices.empty()));
  }
}

TEST_CASE("primitivity is invariant under random automorphisms") {
  auto autos = all_whitehead_automorphisms(3);
  auto perms = nielsen_permutations(3);
  autos.insert(autos.end(), perms.begin(), perms.end());
  std::uniform_int_distribution<std::size_t> pick(0, autos.size() - 1);
  const auto primitives = enumerate_primitive_classes(3, 4);
  for (int trial = 0; trial < 100; ++trial) {
    const CyclicWord& c = primitives[static_cast<std::size_t>(trial) % primitives.size()];
    Word w = c.as_word();
    for (int k = 0; k < 3; ++k) w = apply_automorphism(autos[pick(rng())], w);
    CHECK(minimize(cyclic_reduce(w).cyclic).is_primitive);
  }
}

TEST_CASE("blocking_witness") {
  auto report = blocking_witness(cyc("a"), 3, 6);
  CHECK_FALSE(report.witness.has_value());
  REQUIRE(report.probes.size() == 3);
  REQUIRE(report.probes[2].host.has_value());
  CHECK(is_primitive(cyc("aaab")));
  CHECK(cyclic_subword_occurs(*report.probes[2].host, parse_word("aaa", 2)));

  report = blocking_witness(cyc("abAB"), 1, 8);
  REQUIRE(report.witness.has_value());
  CHECK(*report.witness == 1);
  CHECK_FALSE(report.bound_limited);

  report = blocking_witness(cyc("abAB"), 4, 3);
  REQUIRE(report.witness.has_value());
  CHECK(*report.witness == 1);
  CHECK(report.bound_limited);
}

TEST_CASE("DOT and JSON emission are stable") {
  const std::string dot = whitehead_dot(whitehead_graph(cyc("a")), "a");
  CHECK(dot ==
        "graph whitehead {\n"
        "  label=\"a\";\n"
        "  a;\n"
        "  A;\n"
        "  b;\n"
        "  B;\n"
        "  a -- A [label=\"1\"];\n"
        "}\n");
  const std::string dot2 = whitehead_dot(whitehead_graph(cyc("aa")), "aa");
  CHECK(dot2.find("a -- A [label=\"2\"];") != std::string::npos);
  const std::string dot4 = whitehead_dot(whitehead_graph(cyc("abAB")), "abAB");
  CHECK(dot4.find("a -- b [label=\"1\"];\n  a -- B [label=\"1\"];\n  A -- b [label=\"1\"];\n  A -- B [label=\"1\"];") !=
        std::string::npos);
  CHECK(whitehead_json(whitehead_graph(cyc("abAB")), "abAB") ==
        whitehead_json(whitehead_graph(cyc("abAB")), "abAB"));
}
