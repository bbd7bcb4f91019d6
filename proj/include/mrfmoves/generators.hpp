#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "mrfmoves/energy.hpp"

namespace mrfmoves {

struct PottsPairwise {
  double lambda = 1.0;
};
/// E(a,b) = min(slope * |a - b|, cap).
struct TruncatedLinearPairwise {
  double slope = 1.0;
  double cap = 1.0;
};
/// E(a,b) = min(weight * (a - b)^2, cap). Fails the triangle condition
/// once cap exceeds 2 * weight.
struct TruncatedQuadraticPairwise {
  double weight = 1.0;
  double cap = 1.0;
};
/// Independent integer table per edge with entries in [0, magnitude].
struct RandomTablePairwise {
  std::uint64_t seed = 0;
  int magnitude = 20;
  bool force_triangle = false;
};
using PairwiseKind =
    std::variant<PottsPairwise, TruncatedLinearPairwise,
                 TruncatedQuadraticPairwise, RandomTablePairwise>;

/// Integer unaries uniform in [0, magnitude].
struct RandomUnary {
  std::uint64_t seed = 0;
  int magnitude = 20;
};
/// Unary of state s at a node is weight * |s - observed| (0-based states).
/// Masked nodes carry no data term.
struct ObservationUnary {
  std::vector<int> observed;
  std::vector<bool> masked;
  double weight = 1.0;
};
using UnaryKind = std::variant<RandomUnary, ObservationUnary>;

/// 4-connected rows x cols grid; node id = r * cols + c.
struct GridSpec {
  int rows = 1;
  int cols = 1;
  int num_states = 2;
  PairwiseKind pairwise = PottsPairwise{};
  UnaryKind unary = RandomUnary{};
};

Instance generate(const GridSpec& spec);

/// Lowers E(g1,g2) to E(g1,a)+E(a,g2)-E(a,a) for violating triples until no
/// triple is violated.
PairwiseTable project_triangle(PairwiseTable table);

/// Random connected graph (random spanning tree plus extra edges) with
/// integer energies in [0, 20]; 1..max_nodes nodes and 1..max_states states.
Instance random_small(std::uint64_t seed, int max_nodes, int max_states,
                      bool triangle);

/// Noisy piecewise-constant image with rectangular holes, for restoration
/// style grids.
struct Observation {
  std::vector<int> clean;
  std::vector<int> observed;
  std::vector<bool> masked;
};

Observation synthetic_observation(std::uint64_t seed, int rows, int cols,
                                  int num_states, int noise = 2,
                                  int num_holes = 3);

}  // namespace mrfmoves
