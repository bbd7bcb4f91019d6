#include "mrfmoves/energy.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace mrfmoves {

namespace {

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

}  // namespace

PairwiseTable::PairwiseTable(int num_states, std::vector<double> row_major)
    : num_states_(num_states), values_(std::move(row_major)) {
  if (num_states < 1) throw InvalidInput("pairwise table needs >= 1 state");
  if (values_.size() != static_cast<std::size_t>(num_states) * num_states)
    throw InvalidInput("pairwise table has " + std::to_string(values_.size()) +
                       " entries, expected " +
                       std::to_string(num_states * num_states));
}

PairwiseTable PairwiseTable::zeros(int num_states) {
  return PairwiseTable(
      num_states,
      std::vector<double>(static_cast<std::size_t>(num_states) * num_states));
}

PairwiseTable PairwiseTable::potts(int num_states, double lambda) {
  PairwiseTable t = zeros(num_states);
  for (int a = 0; a < num_states; ++a)
    for (int b = 0; b < num_states; ++b)
      if (a != b) t.at(a, b) = lambda;
  return t;
}

PairwiseTable PairwiseTable::transposed() const {
  PairwiseTable t = zeros(num_states_);
  for (int a = 0; a < num_states_; ++a)
    for (int b = 0; b < num_states_; ++b) t.at(b, a) = (*this)(a, b);
  return t;
}

Instance::Instance(int num_nodes, int num_states, std::vector<double> unaries,
                   std::vector<Edge> edges)
    : num_nodes_(num_nodes),
      num_states_(num_states),
      unaries_(std::move(unaries)),
      edges_(std::move(edges)) {
  if (num_nodes < 1) throw InvalidInput("instance needs >= 1 node");
  if (num_states < 1) throw InvalidInput("instance needs >= 1 state");
  if (unaries_.size() != static_cast<std::size_t>(num_nodes) * num_states)
    throw InvalidInput("unary table size mismatch");
  if (!all_finite(unaries_)) throw InvalidInput("non-finite unary energy");

  incident_.assign(num_nodes, {});
  std::vector<std::pair<int, int>> seen;
  seen.reserve(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const Edge& edge = edges_[e];
    const std::string where =
        "edge (" + std::to_string(edge.i) + "," + std::to_string(edge.j) + ")";
    if (edge.i < 0 || edge.j >= num_nodes || edge.i >= edge.j)
      throw InvalidInput(where + " must satisfy 0 <= i < j < num_nodes");
    if (edge.table.num_states() != num_states)
      throw InvalidInput(where + " table size mismatch");
    if (!all_finite(edge.table.values()))
      throw InvalidInput(where + " has a non-finite energy");
    seen.emplace_back(edge.i, edge.j);
    incident_[edge.i].push_back(static_cast<int>(e));
    incident_[edge.j].push_back(static_cast<int>(e));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidInput("duplicate edge");
}

bool Instance::is_valid_labeling(std::span<const int> x) const {
  if (x.size() != static_cast<std::size_t>(num_nodes_)) return false;
  return std::all_of(x.begin(), x.end(),
                     [&](int s) { return s >= 0 && s < num_states_; });
}

void Instance::require_valid_labeling(std::span<const int> x) const {
  if (x.size() != static_cast<std::size_t>(num_nodes_))
    throw InvalidInput("labeling has " + std::to_string(x.size()) +
                       " entries, instance has " + std::to_string(num_nodes_) +
                       " nodes");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < 0 || x[i] >= num_states_)
      throw InvalidInput("label of node " + std::to_string(i) +
                         " out of range");
}

InstanceBuilder::InstanceBuilder(int num_nodes, int num_states)
    : num_nodes_(num_nodes),
      num_states_(num_states),
      unaries_(static_cast<std::size_t>(std::max(num_nodes, 0)) *
               std::max(num_states, 0)) {}

InstanceBuilder& InstanceBuilder::set_unary(int node,
                                            std::vector<double> values) {
  if (node < 0 || node >= num_nodes_) throw InvalidInput("node out of range");
  if (values.size() != static_cast<std::size_t>(num_states_))
    throw InvalidInput("unary size mismatch");
  std::copy(values.begin(), values.end(),
            unaries_.begin() + static_cast<std::ptrdiff_t>(node) * num_states_);
  return *this;
}

InstanceBuilder& InstanceBuilder::add_edge(int i, int j,
                                           const PairwiseTable& table) {
  if (i == j) throw InvalidInput("self-loop edge");
  if (i > j)
    edges_.push_back({j, i, table.transposed()});
  else
    edges_.push_back({i, j, table});
  return *this;
}

Instance InstanceBuilder::build() const {
  std::map<std::pair<int, int>, PairwiseTable> merged;
  for (const Edge& e : edges_) {
    auto [it, inserted] = merged.try_emplace({e.i, e.j}, e.table);
    if (inserted) continue;
    if (it->second.num_states() != e.table.num_states())
      throw InvalidInput("table size mismatch");
    for (int a = 0; a < e.table.num_states(); ++a)
      for (int b = 0; b < e.table.num_states(); ++b)
        it->second.at(a, b) += e.table(a, b);
  }
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (auto& [key, table] : merged) edges.push_back({key.first, key.second, table});
  return Instance(num_nodes_, num_states_, unaries_, std::move(edges));
}

double total_energy(const Instance& inst, std::span<const int> x) {
  inst.require_valid_labeling(x);
  double sum = 0.0;
  for (int i = 0; i < inst.num_nodes(); ++i) sum += inst.unary(i, x[i]);
  for (const Edge& e : inst.edges()) sum += e.table(x[e.i], x[e.j]);
  return sum;
}

double conditional_energy(const Instance& inst, int node, int state,
                          std::span<const int> x,
                          const std::vector<bool>& cond_set) {
  inst.require_valid_labeling(x);
  if (node < 0 || node >= inst.num_nodes())
    throw InvalidInput("node out of range");
  if (state < 0 || state >= inst.num_states())
    throw InvalidInput("state out of range");
  if (cond_set.size() != static_cast<std::size_t>(inst.num_nodes()))
    throw InvalidInput("conditioning mask size mismatch");
  if (cond_set[node])
    throw InvalidInput("node " + std::to_string(node) +
                       " is in its own conditioning set");

  double sum = inst.unary(node, state);
  for (int e : inst.incident(node)) {
    const Edge& edge = inst.edges()[e];
    if (edge.i == node) {
      if (cond_set[edge.j]) sum += edge.table(state, x[edge.j]);
    } else if (cond_set[edge.i]) {
      sum += edge.table(x[edge.i], state);
    }
  }
  return sum;
}

double conditional_energy(const Instance& inst, int node, int state,
                          std::span<const int> x) {
  std::vector<bool> others(inst.num_nodes(), true);
  if (node >= 0 && node < inst.num_nodes()) others[node] = false;
  return conditional_energy(inst, node, state, x, others);
}

std::optional<PairViolation> check_pairwise_submodular(
    const PairwiseTable& t, double eps) {
  const int n = t.num_states();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      if (t(a, a) + t(b, b) > t(b, a) + t(a, b) + eps) return PairViolation{a, b};
    }
  return std::nullopt;
}

std::optional<TripleViolation> check_triangle(const PairwiseTable& t,
                                              double eps) {
  const int n = t.num_states();
  for (int a = 0; a < n; ++a)
    for (int g1 = 0; g1 < n; ++g1)
      for (int g2 = 0; g2 < n; ++g2)
        if (t(a, a) + t(g1, g2) > t(g1, a) + t(a, g2) + eps)
          return TripleViolation{a, g1, g2};
  return std::nullopt;
}

bool satisfies_triangle(const Instance& inst, double eps) {
  return std::all_of(inst.edges().begin(), inst.edges().end(),
                     [&](const Edge& e) { return !check_triangle(e.table, eps); });
}

}  // namespace mrfmoves
