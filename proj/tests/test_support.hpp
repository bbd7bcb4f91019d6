#pragma once

// Fixtures and reference solvers shared by the test binaries. The reference
// solvers here are deliberately naive and share no code with src/.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <random>
#include <vector>

#include "mrfmoves/energy.hpp"
#include "mrfmoves/mincut.hpp"

namespace mrfmoves::testing {

/// 1-based labels as written in examples -> internal 0-based labels.
inline Labeling L(std::initializer_list<int> one_based) {
  Labeling x;
  for (int s : one_based) x.push_back(s - 1);
  return x;
}

/// Two nodes, two states, E1 = (0,2), E2 = (3,0), Potts(1) edge.
inline Instance instance_a() {
  return InstanceBuilder(2, 2)
      .set_unary(0, {0, 2})
      .set_unary(1, {3, 0})
      .add_edge(0, 1, PairwiseTable::potts(2, 1.0))
      .build();
}

/// Two nodes, E1 = (1,0), E2 = (0,1), zero edge. From (1,2) the optimum
/// (2,1) is one swap away but out of reach of any single expansion.
inline Instance instance_b() {
  return InstanceBuilder(2, 2)
      .set_unary(0, {1, 0})
      .set_unary(1, {0, 1})
      .add_edge(0, 1, PairwiseTable::zeros(2))
      .build();
}

/// Three nodes, three states, E1 = (5,0,5), E2 = E3 = (0,5,5), no edges.
/// From (1,2,3) the optimum (2,1,1) needs one expansion-shrink move.
inline Instance instance_c() {
  return InstanceBuilder(3, 3)
      .set_unary(0, {5, 0, 5})
      .set_unary(1, {0, 5, 5})
      .set_unary(2, {0, 5, 5})
      .build();
}

/// Two nodes at (1,1) with optimum (2,2); every single-node change costs
/// more than it gains.
inline Instance instance_icm_trap() {
  return InstanceBuilder(2, 2)
      .set_unary(0, {1, 0})
      .set_unary(1, {1, 0})
      .add_edge(0, 1, PairwiseTable::potts(2, 5.0))
      .build();
}

/// Three nodes at (1,2,3) with optimum (1,1,1) reachable by a single
/// expansion but not by any swap.
inline Instance instance_expansion_wins() {
  return InstanceBuilder(3, 3)
      .set_unary(0, {0, 5, 5})
      .set_unary(1, {0, 5, 5})
      .set_unary(2, {0, 5, 5})
      .build();
}

/// 3-state table with E(3,3)=0, E(1,2)=5, E(1,3)=E(3,2)=1, other
/// off-diagonal entries 1 and zero diagonal. Violates the triangle
/// condition at (alpha=3, gamma1=1, gamma2=2).
inline PairwiseTable triangle_violation_table() {
  PairwiseTable t = PairwiseTable::potts(3, 1.0);
  t.at(0, 1) = 5;
  return t;
}

inline PairwiseTable truncated_linear_table(int n, double cap) {
  PairwiseTable t = PairwiseTable::zeros(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t.at(a, b) = std::min<double>(std::abs(a - b), cap);
  return t;
}

struct BruteBinary {
  std::vector<int> labeling;
  double energy;
};

/// Minimum over all 2^n option vectors, lowest index first on ties.
inline BruteBinary brute_binary_minimum(const BinaryProblem& bp) {
  BruteBinary best{{}, std::numeric_limits<double>::infinity()};
  const int n = bp.num_nodes;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> y(n);
    for (int k = 0; k < n; ++k) y[k] = (mask >> k) & 1u;
    double e = bp.constant;
    for (int k = 0; k < n; ++k) e += bp.unaries[k][y[k]];
    for (const BinaryEdge& edge : bp.edges) e += edge.table(y[edge.i], y[edge.j]);
    if (e < best.energy) best = {y, e};
  }
  return best;
}

/// Random binary problem with integer energies; every edge table is made
/// submodular by raising t(0,1) when needed.
inline BinaryProblem random_submodular_binary(std::mt19937_64& rng,
                                              int max_nodes) {
  std::uniform_int_distribution<int> nodes(1, max_nodes);
  std::uniform_int_distribution<int> value(-10, 10);
  const int n = nodes(rng);
  BinaryProblem bp(n);
  bp.constant = value(rng);
  for (auto& u : bp.unaries) u = {double(value(rng)), double(value(rng))};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (std::uniform_int_distribution<int>(0, 2)(rng) == 0) continue;
      BinaryTable t;
      for (double& v : t.v) v = value(rng);
      const double excess = t(0, 0) + t(1, 1) - t(1, 0) - t(0, 1);
      if (excess > 0) t.at(0, 1) += excess;
      bp.edges.push_back({i, j, t});
    }
  return bp;
}

/// Edmonds-Karp on a dense residual matrix.
inline double edmonds_karp(const FlowNetwork& net) {
  const int n = net.num_nodes;
  std::vector<std::vector<double>> cap(n, std::vector<double>(n, 0.0));
  for (const FlowArc& a : net.arcs) cap[a.from][a.to] += a.capacity;
  double flow = 0.0;
  for (;;) {
    std::vector<int> prev(n, -1);
    prev[net.source] = net.source;
    std::deque<int> queue{net.source};
    while (!queue.empty() && prev[net.sink] < 0) {
      const int u = queue.front();
      queue.pop_front();
      for (int v = 0; v < n; ++v)
        if (prev[v] < 0 && cap[u][v] > 1e-12) {
          prev[v] = u;
          queue.push_back(v);
        }
    }
    if (prev[net.sink] < 0) return flow;
    double f = std::numeric_limits<double>::infinity();
    for (int v = net.sink; v != net.source; v = prev[v]) f = std::min(f, cap[prev[v]][v]);
    for (int v = net.sink; v != net.source; v = prev[v]) {
      cap[prev[v]][v] -= f;
      cap[v][prev[v]] += f;
    }
    flow += f;
  }
}

}  // namespace mrfmoves::testing
