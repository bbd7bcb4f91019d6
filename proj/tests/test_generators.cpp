#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "mrfmoves/generators.hpp"
#include "mrfmoves/io.hpp"

using namespace mrfmoves;

TEST_CASE("grid combinatorics") {
  GridSpec spec;
  spec.rows = 3;
  spec.cols = 3;
  const Instance inst = generate(spec);
  CHECK(inst.num_nodes() == 9);
  CHECK(inst.edges().size() == 12);

  spec.rows = 4;
  spec.cols = 7;
  CHECK(generate(spec).edges().size() == 4 * 6 + 3 * 7);
}

TEST_CASE("metric grids satisfy the triangle condition") {
  GridSpec spec;
  spec.rows = 4;
  spec.cols = 5;
  spec.num_states = 6;
  spec.pairwise = PottsPairwise{1.0};
  CHECK(satisfies_triangle(generate(spec)));
  spec.pairwise = TruncatedLinearPairwise{2.0, 5.0};
  CHECK(satisfies_triangle(generate(spec)));
  spec.pairwise = RandomTablePairwise{9, 20, true};
  CHECK(satisfies_triangle(generate(spec)));
  spec.pairwise = TruncatedQuadraticPairwise{1.0, 2.0};
  CHECK(satisfies_triangle(generate(spec)));
  spec.pairwise = TruncatedQuadraticPairwise{1.0, 9.0};
  CHECK_FALSE(satisfies_triangle(generate(spec)));
}

TEST_CASE("generation is deterministic under a seed") {
  GridSpec spec;
  spec.rows = 5;
  spec.cols = 4;
  spec.num_states = 5;
  spec.pairwise = RandomTablePairwise{3, 20, false};
  spec.unary = RandomUnary{4, 20};
  CHECK(serialize_instance(generate(spec)) == serialize_instance(generate(spec)));
  CHECK(serialize_instance(random_small(17, 6, 4, true)) ==
        serialize_instance(random_small(17, 6, 4, true)));
  GridSpec other = spec;
  other.unary = RandomUnary{5, 20};
  CHECK(serialize_instance(generate(spec)) != serialize_instance(generate(other)));
}

TEST_CASE("observation unaries") {
  const Observation obs = synthetic_observation(1, 6, 6, 8);
  GridSpec spec;
  spec.rows = 6;
  spec.cols = 6;
  spec.num_states = 8;
  spec.unary = ObservationUnary{obs.observed, obs.masked, 2.0};
  const Instance inst = generate(spec);
  int masked = 0;
  for (int i = 0; i < 36; ++i) {
    if (obs.masked[i]) {
      ++masked;
      for (int s = 0; s < 8; ++s) CHECK(inst.unary(i, s) == 0.0);
    } else {
      CHECK(inst.unary(i, obs.observed[i]) == 0.0);
      CHECK(inst.unary(i, 0) == 2.0 * obs.observed[i]);
    }
  }
  CHECK(masked > 0);
  spec.unary = ObservationUnary{{1, 2}, {}, 1.0};
  CHECK_THROWS_AS(generate(spec), InvalidInput);
}

TEST_CASE("random_small") {
  SUBCASE("shape and value range") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const Instance inst = random_small(seed, 6, 4, false);
      CHECK(inst.num_nodes() <= 6);
      CHECK(inst.num_states() <= 4);
      CHECK(inst.edges().size() >= static_cast<std::size_t>(inst.num_nodes() - 1));
      for (double u : inst.unaries()) CHECK((u >= 0 && u <= 20));
      for (const Edge& e : inst.edges())
        for (double v : e.table.values()) CHECK((v >= 0 && v <= 20 && v == std::floor(v)));
    }
  }
  SUBCASE("single node has no edges") {
    for (std::uint64_t seed = 0; seed < 20; ++seed)
      CHECK(random_small(seed, 1, 3, true).edges().empty());
  }
  SUBCASE("graph is connected") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const Instance inst = random_small(seed, 6, 4, false);
      std::vector<int> comp(inst.num_nodes());
      for (int i = 0; i < inst.num_nodes(); ++i) comp[i] = i;
      std::function<int(int)> find = [&](int v) { return comp[v] == v ? v : comp[v] = find(comp[v]); };
      for (const Edge& e : inst.edges()) comp[find(e.i)] = find(e.j);
      for (int i = 0; i < inst.num_nodes(); ++i) CHECK(find(i) == find(0));
    }
  }
  SUBCASE("triangle projection holds and is idempotent") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      const Instance inst = random_small(seed, 6, 4, true);
      CHECK(satisfies_triangle(inst));
      for (const Edge& e : inst.edges()) CHECK(project_triangle(e.table) == e.table);
    }
  }
  SUBCASE("unprojected tables violate the triangle condition sometimes") {
    int violating = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed)
      violating += !satisfies_triangle(random_small(seed, 6, 4, false));
    CHECK(violating > 0);
  }
}
