#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "mrfmoves/energy.hpp"

namespace mrfmoves {

class SubmodularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 2x2 table indexed (option of i, option of j).
struct BinaryTable {
  std::array<double, 4> v{};

  double operator()(int a, int b) const { return v[2 * a + b]; }
  double& at(int a, int b) { return v[2 * a + b]; }

  /// t(0,0)+t(1,1) <= t(1,0)+t(0,1) within eps.
  bool submodular(double eps = kDefaultEps) const {
    return v[0] + v[3] <= v[2] + v[1] + eps;
  }
};

struct BinaryEdge {
  int i = 0;
  int j = 0;
  BinaryTable table;
};

/// Two-option-per-node pairwise energy.
struct BinaryProblem {
  int num_nodes = 0;
  std::vector<std::array<double, 2>> unaries;
  std::vector<BinaryEdge> edges;
  double constant = 0.0;

  explicit BinaryProblem(int n = 0) : num_nodes(n), unaries(n, {0.0, 0.0}) {}

  /// constant + unaries + edge terms; `y` holds options 0/1.
  double energy(const std::vector<int>& y) const;
};

struct FlowArc {
  int from = 0;
  int to = 0;
  double capacity = 0.0;
};

struct FlowNetwork {
  int num_nodes = 0;  // includes source and sink
  std::vector<FlowArc> arcs;
  int source = 0;
  int sink = 0;
};

struct Decomposition {
  FlowNetwork network;
  double constant = 0.0;
};

/// Builds an s-t network whose cut capacities reproduce the problem's
/// energies: for every option vector y, cut(y) + constant == bp.energy(y).
/// Variable k maps to network node k; the source is num_nodes and the sink
/// num_nodes + 1. A node on the source side takes option 0.
/// Throws SubmodularityError naming the first non-submodular edge.
Decomposition decompose(const BinaryProblem& bp, double eps = kDefaultEps);

struct MaxFlowResult {
  double flow_value = 0.0;
  /// Nodes reachable from the source in the final residual graph.
  std::vector<bool> reachable_from_source;
  /// true = source side. Every node that cannot reach the sink in the
  /// residual graph is on the source side, so undecided nodes default there.
  std::vector<bool> source_side;
};

/// Exact max-flow by Boykov-Kolmogorov search-tree augmentation.
MaxFlowResult max_flow(const FlowNetwork& net);

/// Sum of capacities of arcs leaving the source side.
double cut_capacity(const FlowNetwork& net, const std::vector<bool>& source_side);

struct BinarySolution {
  std::vector<int> labeling;  // options 0/1
  double energy = 0.0;
};

/// Global minimum of a submodular binary problem. Ties resolve toward
/// option 0.
BinarySolution solve_binary(const BinaryProblem& bp, double eps = kDefaultEps);

}  // namespace mrfmoves
