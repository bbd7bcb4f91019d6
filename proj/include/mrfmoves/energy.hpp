#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrfmoves {

/// Absolute tolerance used by every energy comparison unless overridden.
inline constexpr double kDefaultEps = 1e-9;

class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One state per node. States are 0-based inside the library; files and the
/// CLI use 1-based states.
using Labeling = std::vector<int>;

/// Dense square table of pairwise energies, indexed (state of i, state of j).
class PairwiseTable {
 public:
  PairwiseTable() = default;
  PairwiseTable(int num_states, std::vector<double> row_major);
  static PairwiseTable zeros(int num_states);
  static PairwiseTable potts(int num_states, double lambda);

  int num_states() const { return num_states_; }
  double operator()(int a, int b) const {
    return values_[static_cast<std::size_t>(a) * num_states_ + b];
  }
  double& at(int a, int b) {
    return values_[static_cast<std::size_t>(a) * num_states_ + b];
  }
  std::span<const double> values() const { return values_; }
  PairwiseTable transposed() const;

  friend bool operator==(const PairwiseTable&, const PairwiseTable&) = default;

 private:
  int num_states_ = 0;
  std::vector<double> values_;
};

struct Edge {
  int i = 0;
  int j = 0;
  PairwiseTable table;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A pairwise energy: per-node unary tables plus one table per undirected
/// edge, stored with i < j. Immutable once constructed.
class Instance {
 public:
  Instance() = default;
  /// `unaries` is node-major, num_nodes * num_states entries. Throws
  /// InvalidInput on any broken invariant (ordering, duplicates, sizes,
  /// non-finite entries).
  Instance(int num_nodes, int num_states, std::vector<double> unaries,
           std::vector<Edge> edges);

  int num_nodes() const { return num_nodes_; }
  int num_states() const { return num_states_; }
  double unary(int node, int state) const {
    return unaries_[static_cast<std::size_t>(node) * num_states_ + state];
  }
  std::span<const double> unaries() const { return unaries_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Indices into edges() of the edges touching `node`, ascending.
  std::span<const int> incident(int node) const { return incident_[node]; }

  bool is_valid_labeling(std::span<const int> x) const;
  void require_valid_labeling(std::span<const int> x) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.num_nodes_ == b.num_nodes_ && a.num_states_ == b.num_states_ &&
           a.unaries_ == b.unaries_ && a.edges_ == b.edges_;
  }

 private:
  int num_nodes_ = 0;
  int num_states_ = 0;
  std::vector<double> unaries_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> incident_;
};

/// Accumulates edges in any orientation. Reversed pairs are transposed and
/// repeated pairs are summed, then edges are sorted by (i, j).
class InstanceBuilder {
 public:
  InstanceBuilder(int num_nodes, int num_states);

  InstanceBuilder& set_unary(int node, std::vector<double> values);
  InstanceBuilder& add_edge(int i, int j, const PairwiseTable& table);
  Instance build() const;

 private:
  int num_nodes_;
  int num_states_;
  std::vector<double> unaries_;
  std::vector<Edge> edges_;
};

double total_energy(const Instance& inst, std::span<const int> x);

/// Unary of `node` at `state` plus the pairwise terms to neighbours that are
/// in `cond_set`, evaluated against their labels in `x`. `cond_set` is a
/// per-node membership mask; `node` must not be a member.
double conditional_energy(const Instance& inst, int node, int state,
                          std::span<const int> x,
                          const std::vector<bool>& cond_set);

/// Convenience form conditioning on every other node.
double conditional_energy(const Instance& inst, int node, int state,
                          std::span<const int> x);

struct PairViolation {
  int alpha;
  int beta;
};

struct TripleViolation {
  int alpha;
  int gamma1;
  int gamma2;
};

/// Submodularity restricted to every pair of states: E(a,a)+E(b,b) <=
/// E(b,a)+E(a,b). Returns the lexicographically first violating (a, b).
std::optional<PairViolation> check_pairwise_submodular(
    const PairwiseTable& table, double eps = kDefaultEps);

/// E(a,a)+E(g1,g2) <= E(g1,a)+E(a,g2) for all triples. Returns the first
/// violating (a, g1, g2) in lexicographic order.
std::optional<TripleViolation> check_triangle(const PairwiseTable& table,
                                              double eps = kDefaultEps);

/// True iff every edge of `inst` passes check_triangle.
bool satisfies_triangle(const Instance& inst, double eps = kDefaultEps);

}  // namespace mrfmoves
