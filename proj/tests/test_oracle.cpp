#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "mrfmoves/generators.hpp"
#include "mrfmoves/oracle.hpp"
#include "test_support.hpp"

using namespace mrfmoves;
using mrfmoves::testing::L;

namespace {

std::set<Labeling> collect(const Instance& inst, const Labeling& x, MoveSetId id) {
  std::set<Labeling> out;
  enumerate_moves(inst, x, id, [&](const Labeling& y) { out.insert(y); });
  return out;
}

bool subset(const std::set<Labeling>& a, const std::set<Labeling>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

TEST_CASE("brute_force_minimum") {
  const OracleResult a = brute_force_minimum(testing::instance_a());
  CHECK(a.x == L({1, 2}));
  CHECK(a.energy == 1.0);

  const OracleResult c = brute_force_minimum(testing::instance_c());
  CHECK(c.x == L({2, 1, 1}));
  CHECK(c.energy == 0.0);

  const OracleResult z = brute_force_minimum(InstanceBuilder(4, 3).build());
  CHECK(z.x == L({1, 1, 1, 1}));
  CHECK(z.energy == 0.0);

  CHECK_THROWS_AS(brute_force_minimum(InstanceBuilder(8, 10).build(), 1000),
                  EnumerationCapExceeded);
}

TEST_CASE("enumerate_moves") {
  const Instance three = InstanceBuilder(3, 3).build();
  SUBCASE("ICM varies one node") {
    std::vector<Labeling> seen;
    enumerate_moves(three, L({1, 2, 3}), IcmMove{1}, [&](const Labeling& y) { seen.push_back(y); });
    CHECK(seen == std::vector<Labeling>{L({1, 1, 3}), L({1, 2, 3}), L({1, 3, 3})});
  }
  SUBCASE("expansion-shrink case table") {
    std::set<Labeling> seen;
    int count = 0;
    enumerate_moves(three, L({1, 2, 3}), ExpShrinkMove{0, 1}, [&](const Labeling& y) {
      seen.insert(y);
      ++count;
    });
    CHECK(count == 8);
    CHECK(seen.size() == 8);
    CHECK(seen.count(L({2, 1, 1})) == 1);
    CHECK(seen.count(L({1, 2, 3})) == 1);
  }
  SUBCASE("expansion with nothing to expand") {
    const Instance two = InstanceBuilder(2, 2).build();
    std::vector<Labeling> seen;
    enumerate_moves(two, L({1, 1}), ExpansionMove{0}, [&](const Labeling& y) { seen.push_back(y); });
    CHECK(seen == std::vector<Labeling>{L({1, 1})});
  }
  SUBCASE("cap refuses oversized spaces") {
    const Instance big = InstanceBuilder(30, 2).build();
    CHECK_THROWS_AS(enumerate_moves(big, Labeling(30, 0), ExpansionMove{1},
                                    [](const Labeling&) {}, 1000),
                    EnumerationCapExceeded);
  }
}

TEST_CASE("enumerated spaces have the advertised size") {
  std::mt19937_64 rng(1);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_small(seed, 6, 4, false);
    Labeling x(inst.num_nodes());
    std::uniform_int_distribution<int> state(0, inst.num_states() - 1);
    for (int& s : x) s = state(rng);
    for (MoveSetId id : {MoveSetId::I, MoveSetId::S, MoveSetId::E, MoveSetId::G})
      for (const MoveSpec& spec : move_specs(inst, id)) {
        std::set<Labeling> seen;
        std::uint64_t count = 0;
        enumerate_moves(inst, x, spec, [&](const Labeling& y) {
          seen.insert(y);
          ++count;
        });
        CHECK(count == seen.size());
        CHECK(count == move_space_size(spec, x, inst));
      }
  }
}

TEST_CASE("best_in_move_set on the witness instances") {
  const Instance c = testing::instance_c();
  CHECK(best_in_move_set(c, L({1, 2, 3}), MoveSetId::G).energy == 0.0);
  CHECK(best_in_move_set(c, L({1, 2, 3}), MoveSetId::S).energy == 5.0);
  CHECK(best_in_move_set(c, L({1, 2, 3}), MoveSetId::E).energy == 5.0);
  CHECK(best_in_move_set(c, L({1, 2, 3}), MoveSetId::SE).energy == 5.0);

  const Instance b = testing::instance_b();
  CHECK(best_in_move_set(b, L({1, 2}), MoveSetId::S).energy == 0.0);
  CHECK(best_in_move_set(b, L({1, 2}), MoveSetId::E).energy == 1.0);

  const Instance trap = testing::instance_icm_trap();
  const double icm = best_in_move_set(trap, L({1, 1}), MoveSetId::I).energy;
  const double swap = best_in_move_set(trap, L({1, 1}), MoveSetId::S).energy;
  const double expansion = best_in_move_set(trap, L({1, 1}), MoveSetId::E).energy;
  CHECK(icm == 2.0);
  CHECK(swap == 0.0);
  CHECK(expansion == 0.0);
  CHECK(brute_force_minimum(trap).x == L({2, 2}));
}

TEST_CASE("dominance_report") {
  const DominanceReport gs =
      dominance_report(testing::instance_c(), L({1, 2, 3}), MoveSetId::G, MoveSetId::S);
  CHECK(gs.leq);
  CHECK(gs.strict);

  const DominanceReport es =
      dominance_report(testing::instance_b(), L({1, 2}), MoveSetId::E, MoveSetId::S);
  CHECK_FALSE(es.leq);

  const DominanceReport se = dominance_report(testing::instance_expansion_wins(),
                                              L({1, 2, 3}), MoveSetId::S, MoveSetId::E);
  CHECK_FALSE(se.leq);
  const DominanceReport es2 = dominance_report(testing::instance_expansion_wins(),
                                               L({1, 2, 3}), MoveSetId::E, MoveSetId::S);
  CHECK(es2.strict);
}

TEST_CASE("move sets are nested") {
  std::mt19937_64 rng(2);
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Instance inst = random_small(seed, 5, 4, false);
    Labeling x(inst.num_nodes());
    std::uniform_int_distribution<int> state(0, inst.num_states() - 1);
    for (int& s : x) s = state(rng);
    const auto I = collect(inst, x, MoveSetId::I);
    const auto S = collect(inst, x, MoveSetId::S);
    const auto E = collect(inst, x, MoveSetId::E);
    const auto G = collect(inst, x, MoveSetId::G);
    CHECK(subset(I, S));
    CHECK(subset(I, E));
    CHECK(subset(S, G));
    CHECK(subset(E, G));
    CHECK(collect(inst, x, MoveSetId::SE).size() ==
          [&] {
            std::set<Labeling> u = S;
            u.insert(E.begin(), E.end());
            return u.size();
          }());
  }
}

TEST_CASE("oracle agrees with the min-cut moves") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Instance inst = random_small(seed, 6, 4, true);
    Labeling x(inst.num_nodes());
    std::uniform_int_distribution<int> state(0, inst.num_states() - 1);
    for (int& s : x) s = state(rng);
    for (MoveSetId id : {MoveSetId::I, MoveSetId::S, MoveSetId::E, MoveSetId::G}) {
      double best = total_energy(inst, x);
      for (const MoveSpec& spec : move_specs(inst, id))
        best = std::min(best, optimal_move(inst, x, spec).energy);
      CHECK(best == best_in_move_set(inst, x, id).energy);
    }
  }
}
