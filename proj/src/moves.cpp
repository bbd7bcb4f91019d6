#include "mrfmoves/moves.hpp"

#include <limits>
#include <sstream>

namespace mrfmoves {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require_state(const Instance& inst, int s, const char* what) {
  if (s < 0 || s >= inst.num_states())
    throw InvalidInput(std::string(what) + " state out of range");
}

// Candidate states of node i under a two-option move; both entries equal
// when the node has a single option. Index 1 is alpha (beta for swaps).
struct NodeOptions {
  std::array<int, 2> states;
  bool is_free;
};

NodeOptions options_of(const MoveSpec& spec, int xi) {
  return std::visit(
      Overloaded{
          [&](const SwapMove& m) -> NodeOptions {
            if (xi == m.alpha || xi == m.beta) return {{m.alpha, m.beta}, true};
            return {{xi, xi}, false};
          },
          [&](const ExpansionMove& m) -> NodeOptions {
            if (xi == m.alpha) return {{xi, xi}, false};
            return {{xi, m.alpha}, true};
          },
          [&](const ExpShrinkMove& m) -> NodeOptions {
            // Every node stays a variable, even when both options coincide.
            if (xi == m.alpha) return {{m.beta, m.alpha}, true};
            return {{xi, m.alpha}, true};
          },
          [&](const IcmMove&) -> NodeOptions {
            throw InvalidInput("ICM moves have no binary subproblem");
          }},
      spec);
}

// Expansion is expansion-shrink with beta = alpha as far as truncation goes.
std::optional<TableOverride> expansion_override(const PairwiseTable& t, int xi,
                                                int xj, int a, int b,
                                                double eps) {
  if (xi != a && xj != a) {
    if (t(a, a) + t(xi, xj) > t(xi, a) + t(a, xj) + eps)
      return TableOverride{xi, xj, t(a, xj) + t(xi, a) - t(a, a)};
  } else if (xi == a && xj == a) {
    if (t(a, a) + t(b, b) > t(b, a) + t(a, b) + eps)
      return TableOverride{a, a, t(a, b) + t(b, a) - t(b, b)};
  } else if (xi != a) {
    if (t(a, a) + t(xi, b) > t(xi, a) + t(a, b) + eps)
      return TableOverride{a, b, t(a, a) + t(xi, b) - t(xi, a)};
  } else {
    if (t(a, a) + t(b, xj) > t(b, a) + t(a, xj) + eps)
      return TableOverride{b, a, t(a, a) + t(b, xj) - t(a, xj)};
  }
  return std::nullopt;
}

std::optional<TableOverride> swap_override(const PairwiseTable& t, int xi,
                                           int xj, int a, int b, double eps) {
  const bool free_i = xi == a || xi == b;
  const bool free_j = xj == a || xj == b;
  if (!free_i || !free_j) return std::nullopt;
  if (t(a, a) + t(b, b) <= t(b, a) + t(a, b) + eps) return std::nullopt;
  // Only raise an entry that is not the current pair.
  if (xi == b && xj == a)
    return TableOverride{a, b, t(a, a) + t(b, b) - t(b, a)};
  return TableOverride{b, a, t(a, a) + t(b, b) - t(a, b)};
}

std::string describe_violation(const Instance& inst, std::span<const int> x,
                               const MoveSpec& spec, int edge_index) {
  const Edge& e = inst.edges()[edge_index];
  const int xi = x[e.i];
  const int xj = x[e.j];
  std::ostringstream msg;
  msg << "edge " << edge_index << " (" << e.i << "," << e.j << ") gives a "
      << "non-submodular binary term for " << to_string(spec) << ": ";
  if (const auto* m = std::get_if<SwapMove>(&spec)) {
    msg << "E(a,a)+E(b,b) > E(b,a)+E(a,b) at a=" << m->alpha + 1
        << ", b=" << m->beta + 1;
    return msg.str();
  }
  int a = 0;
  int b = 0;
  if (const auto* m = std::get_if<ExpansionMove>(&spec)) {
    a = b = m->alpha;
  } else if (const auto* m = std::get_if<ExpShrinkMove>(&spec)) {
    a = m->alpha;
    b = m->beta;
  }
  const int g1 = xi == a ? b : xi;
  const int g2 = xj == a ? b : xj;
  msg << "E(a,a)+E(g1,g2) > E(g1,a)+E(a,g2) at a=" << a + 1 << ", g1=" << g1 + 1
      << ", g2=" << g2 + 1;
  return msg.str();
}

}  // namespace

void validate_move(const MoveSpec& spec, const Instance& inst) {
  std::visit(Overloaded{
                 [&](const IcmMove& m) {
                   if (m.node < 0 || m.node >= inst.num_nodes())
                     throw InvalidInput("ICM node out of range");
                 },
                 [&](const SwapMove& m) {
                   require_state(inst, m.alpha, "swap alpha");
                   require_state(inst, m.beta, "swap beta");
                   if (m.alpha == m.beta)
                     throw InvalidInput("swap needs distinct alpha and beta");
                 },
                 [&](const ExpansionMove& m) {
                   require_state(inst, m.alpha, "expansion alpha");
                 },
                 [&](const ExpShrinkMove& m) {
                   require_state(inst, m.alpha, "expshrink alpha");
                   require_state(inst, m.beta, "expshrink beta");
                 }},
             spec);
}

std::string to_string(const MoveSpec& spec) {
  return std::visit(
      Overloaded{[](const IcmMove& m) {
                   return "icm(node " + std::to_string(m.node) + ")";
                 },
                 [](const SwapMove& m) {
                   return "swap(" + std::to_string(m.alpha + 1) + "," +
                          std::to_string(m.beta + 1) + ")";
                 },
                 [](const ExpansionMove& m) {
                   return "expansion(" + std::to_string(m.alpha + 1) + ")";
                 },
                 [](const ExpShrinkMove& m) {
                   return "expshrink(" + std::to_string(m.alpha + 1) + "," +
                          std::to_string(m.beta + 1) + ")";
                 }},
      spec);
}

std::uint64_t move_space_size(const MoveSpec& spec, std::span<const int> x,
                              const Instance& inst) {
  validate_move(spec, inst);
  inst.require_valid_labeling(x);
  if (std::holds_alternative<IcmMove>(spec))
    return static_cast<std::uint64_t>(inst.num_states());
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t size = 1;
  for (int xi : x) {
    const NodeOptions o = options_of(spec, xi);
    if (o.states[0] == o.states[1]) continue;
    if (size > kMax / 2) return kMax;
    size *= 2;
  }
  return size;
}

Labeling Subproblem::apply(std::span<const int> x,
                           const std::vector<int>& options) const {
  if (options.size() != nodes.size())
    throw InvalidInput("option vector size mismatch");
  Labeling y(x.begin(), x.end());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    y[nodes[k]] = states[k][options[k]];
  return y;
}

std::vector<std::optional<TableOverride>> truncation_overrides(
    const Instance& inst, std::span<const int> x, const MoveSpec& spec,
    double eps) {
  validate_move(spec, inst);
  inst.require_valid_labeling(x);
  std::vector<std::optional<TableOverride>> out(inst.edges().size());
  for (std::size_t k = 0; k < inst.edges().size(); ++k) {
    const Edge& e = inst.edges()[k];
    const int xi = x[e.i];
    const int xj = x[e.j];
    out[k] = std::visit(
        Overloaded{
            [&](const ExpansionMove& m) {
              return expansion_override(e.table, xi, xj, m.alpha, m.alpha, eps);
            },
            [&](const ExpShrinkMove& m) {
              return expansion_override(e.table, xi, xj, m.alpha, m.beta, eps);
            },
            [&](const SwapMove& m) {
              return swap_override(e.table, xi, xj, m.alpha, m.beta, eps);
            },
            [](const IcmMove&) -> std::optional<TableOverride> {
              throw InvalidInput("ICM moves need no truncation");
            }},
        spec);
  }
  return out;
}

std::vector<PairwiseTable> truncate(const Instance& inst,
                                    std::span<const int> x,
                                    const MoveSpec& spec, double eps) {
  const auto overrides = truncation_overrides(inst, x, spec, eps);
  std::vector<PairwiseTable> tables;
  tables.reserve(inst.edges().size());
  for (std::size_t k = 0; k < inst.edges().size(); ++k) {
    tables.push_back(inst.edges()[k].table);
    if (overrides[k]) tables.back().at(overrides[k]->a, overrides[k]->b) =
        overrides[k]->value;
  }
  return tables;
}

Subproblem build_subproblem(const Instance& inst, std::span<const int> x,
                            const MoveSpec& spec, bool truncate_tables,
                            double eps) {
  validate_move(spec, inst);
  inst.require_valid_labeling(x);

  Subproblem sub;
  const int n = inst.num_nodes();
  std::vector<int> var_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const NodeOptions o = options_of(spec, x[i]);
    if (!o.is_free) continue;
    var_of[i] = static_cast<int>(sub.nodes.size());
    sub.nodes.push_back(i);
    sub.states.push_back(o.states);
  }

  const int num_vars = static_cast<int>(sub.nodes.size());
  BinaryProblem& bp = sub.problem;
  bp = BinaryProblem(num_vars);
  for (int i = 0; i < n; ++i) {
    const int k = var_of[i];
    if (k < 0) {
      bp.constant += inst.unary(i, x[i]);
      continue;
    }
    bp.unaries[k] = {inst.unary(i, sub.states[k][0]),
                     inst.unary(i, sub.states[k][1])};
  }

  std::vector<std::optional<TableOverride>> overrides;
  if (truncate_tables) overrides = truncation_overrides(inst, x, spec, eps);

  for (std::size_t ei = 0; ei < inst.edges().size(); ++ei) {
    const Edge& e = inst.edges()[ei];
    const std::optional<TableOverride> ov =
        truncate_tables ? overrides[ei] : std::nullopt;
    if (ov) ++sub.truncated_edges;
    auto energy = [&](int a, int b) {
      if (ov && ov->a == a && ov->b == b) return ov->value;
      return e.table(a, b);
    };

    const int ki = var_of[e.i];
    const int kj = var_of[e.j];
    if (ki < 0 && kj < 0) {
      bp.constant += energy(x[e.i], x[e.j]);
    } else if (kj < 0) {
      for (int o = 0; o < 2; ++o)
        bp.unaries[ki][o] += energy(sub.states[ki][o], x[e.j]);
    } else if (ki < 0) {
      for (int o = 0; o < 2; ++o)
        bp.unaries[kj][o] += energy(x[e.i], sub.states[kj][o]);
    } else {
      BinaryEdge be{ki, kj, {}};
      for (int oi = 0; oi < 2; ++oi)
        for (int oj = 0; oj < 2; ++oj)
          be.table.at(oi, oj) =
              energy(sub.states[ki][oi], sub.states[kj][oj]);
      bp.edges.push_back(be);
      sub.source_edge.push_back(static_cast<int>(ei));
    }
  }
  return sub;
}

MoveResult optimal_move(const Instance& inst, std::span<const int> x,
                        const MoveSpec& spec, bool allow_truncation,
                        double eps) {
  validate_move(spec, inst);
  inst.require_valid_labeling(x);
  const double current = total_energy(inst, x);

  MoveResult result;
  Labeling best(x.begin(), x.end());

  if (const auto* icm = std::get_if<IcmMove>(&spec)) {
    const int j = icm->node;
    double best_cond = conditional_energy(inst, j, x[j], x);
    for (int s = 0; s < inst.num_states(); ++s) {
      const double c = conditional_energy(inst, j, s, x);
      if (c < best_cond - eps) {
        best_cond = c;
        best[j] = s;
      }
    }
  } else {
    const Subproblem sub =
        build_subproblem(inst, x, spec, allow_truncation, eps);
    if (!allow_truncation) {
      for (std::size_t k = 0; k < sub.problem.edges.size(); ++k)
        if (!sub.problem.edges[k].table.submodular(eps))
          throw SubmodularityError(
              describe_violation(inst, x, spec, sub.source_edge[k]));
    }
    result.truncated = sub.truncated_edges > 0;
    best = sub.apply(x, solve_binary(sub.problem, eps).labeling);
  }

  const double energy = total_energy(inst, best);
  if (energy < current - eps) {
    result.y = std::move(best);
    result.energy = energy;
    result.changed = true;
  } else {
    result.y.assign(x.begin(), x.end());
    result.energy = current;
  }
  return result;
}

}  // namespace mrfmoves
