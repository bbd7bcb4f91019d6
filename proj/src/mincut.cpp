#include "mrfmoves/mincut.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <sstream>

namespace mrfmoves {

double BinaryProblem::energy(const std::vector<int>& y) const {
  if (y.size() != static_cast<std::size_t>(num_nodes))
    throw InvalidInput("binary labeling size mismatch");
  double sum = constant;
  for (int k = 0; k < num_nodes; ++k) sum += unaries[k][y[k]];
  for (const BinaryEdge& e : edges) sum += e.table(y[e.i], y[e.j]);
  return sum;
}

Decomposition decompose(const BinaryProblem& bp, double eps) {
  const int n = bp.num_nodes;
  std::vector<std::array<double, 2>> unary = bp.unaries;
  Decomposition out;
  out.constant = bp.constant;

  FlowNetwork& net = out.network;
  net.num_nodes = n + 2;
  net.source = n;
  net.sink = n + 1;

  for (std::size_t k = 0; k < bp.edges.size(); ++k) {
    const BinaryEdge& e = bp.edges[k];
    const BinaryTable& t = e.table;
    if (!t.submodular(eps)) {
      std::ostringstream msg;
      msg << "binary edge " << k << " (" << e.i << "," << e.j
          << ") is not submodular: " << t(0, 0) << " + " << t(1, 1) << " > "
          << t(1, 0) << " + " << t(0, 1);
      throw SubmodularityError(msg.str());
    }
    out.constant += t(0, 0);
    unary[e.j][1] += t(0, 1) - t(0, 0);
    unary[e.i][1] += t(1, 1) - t(0, 1);
    // Paid when i takes option 1 (sink side) and j option 0 (source side).
    const double c = std::max(0.0, t(1, 0) + t(0, 1) - t(0, 0) - t(1, 1));
    if (c > 0.0) net.arcs.push_back({e.j, e.i, c});
  }

  for (int k = 0; k < n; ++k) {
    const double shift = std::min(unary[k][0], unary[k][1]);
    out.constant += shift;
    const double cost0 = unary[k][0] - shift;
    const double cost1 = unary[k][1] - shift;
    if (cost1 > 0.0) net.arcs.push_back({net.source, k, cost1});
    if (cost0 > 0.0) net.arcs.push_back({k, net.sink, cost0});
  }
  return out;
}

namespace {

class BkMaxFlow {
 public:
  explicit BkMaxFlow(const FlowNetwork& net)
      : n_(net.num_nodes), s_(net.source), t_(net.sink), out_(n_) {
    head_.reserve(net.arcs.size() * 2);
    residual_.reserve(net.arcs.size() * 2);
    for (const FlowArc& a : net.arcs) {
      if (a.from == a.to) continue;
      const int id = static_cast<int>(head_.size());
      head_.push_back(a.to);
      residual_.push_back(a.capacity);
      head_.push_back(a.from);
      residual_.push_back(0.0);
      out_[a.from].push_back(id);
      out_[a.to].push_back(id + 1);
    }
  }

  MaxFlowResult run() {
    tree_.assign(n_, kFree);
    parent_.assign(n_, kNone);
    queued_.assign(n_, false);
    tree_[s_] = kSource;
    tree_[t_] = kSink;
    parent_[s_] = kRoot;
    parent_[t_] = kRoot;
    activate(s_);
    activate(t_);

    double flow = 0.0;
    for (;;) {
      const int bridge = grow();
      if (bridge < 0) break;
      flow += augment(bridge);
      adopt();
    }

    MaxFlowResult result;
    result.flow_value = flow;
    result.reachable_from_source = reach_from_source();
    const std::vector<bool> to_sink = reach_sink();
    result.source_side.resize(n_);
    for (int v = 0; v < n_; ++v) result.source_side[v] = !to_sink[v];
    return result;
  }

 private:
  enum : std::uint8_t { kFree, kSource, kSink };
  static constexpr int kNone = -1;
  static constexpr int kRoot = -2;

  int tail(int arc) const { return head_[arc ^ 1]; }

  void activate(int v) {
    if (queued_[v]) return;
    queued_[v] = true;
    active_.push_back(v);
  }

  // Returns an arc from the source tree into the sink tree, or -1.
  int grow() {
    while (!active_.empty()) {
      const int v = active_.front();
      if (tree_[v] != kFree) {
        for (int a : out_[v]) {
          const int w = head_[a];
          if (tree_[v] == kSource) {
            if (residual_[a] <= 0.0) continue;
            if (tree_[w] == kFree) {
              tree_[w] = kSource;
              parent_[w] = a;
              activate(w);
            } else if (tree_[w] == kSink) {
              return a;
            }
          } else {
            const int rev = a ^ 1;
            if (residual_[rev] <= 0.0) continue;
            if (tree_[w] == kFree) {
              tree_[w] = kSink;
              parent_[w] = rev;
              activate(w);
            } else if (tree_[w] == kSource) {
              return rev;
            }
          }
        }
      }
      active_.pop_front();
      queued_[v] = false;
    }
    return -1;
  }

  double augment(int bridge) {
    double f = residual_[bridge];
    for (int u = tail(bridge); u != s_; u = tail(parent_[u]))
      f = std::min(f, residual_[parent_[u]]);
    for (int u = head_[bridge]; u != t_; u = head_[parent_[u]])
      f = std::min(f, residual_[parent_[u]]);

    push(bridge, f);
    for (int u = tail(bridge); u != s_;) {
      const int a = parent_[u];
      const int next = tail(a);
      push(a, f);
      if (residual_[a] <= 0.0) make_orphan(u);
      u = next;
    }
    for (int u = head_[bridge]; u != t_;) {
      const int a = parent_[u];
      const int next = head_[a];
      push(a, f);
      if (residual_[a] <= 0.0) make_orphan(u);
      u = next;
    }
    return f;
  }

  void push(int arc, double f) {
    residual_[arc] -= f;
    residual_[arc ^ 1] += f;
  }

  void make_orphan(int v) {
    parent_[v] = kNone;
    orphans_.push_back(v);
  }

  // True if following parents from v reaches its tree's terminal.
  bool rooted(int v) const {
    if (tree_[v] == kSource) {
      while (v != s_) {
        if (parent_[v] < 0) return false;
        v = tail(parent_[v]);
      }
    } else {
      while (v != t_) {
        if (parent_[v] < 0) return false;
        v = head_[parent_[v]];
      }
    }
    return true;
  }

  void adopt() {
    while (!orphans_.empty()) {
      const int q = orphans_.front();
      orphans_.pop_front();
      const bool source_tree = tree_[q] == kSource;

      int found = kNone;
      for (int a : out_[q]) {
        const int p = head_[a];
        if (tree_[p] != tree_[q]) continue;
        const int candidate = source_tree ? (a ^ 1) : a;
        if (residual_[candidate] > 0.0 && rooted(p)) {
          found = candidate;
          break;
        }
      }
      if (found != kNone) {
        parent_[q] = found;
        continue;
      }

      for (int a : out_[q]) {
        const int p = head_[a];
        if (tree_[p] != tree_[q]) continue;
        const int toward_q = source_tree ? (a ^ 1) : a;
        if (residual_[toward_q] > 0.0) activate(p);
        const int p_parent_arc = source_tree ? a : (a ^ 1);
        if (parent_[p] == p_parent_arc) make_orphan(p);
      }
      tree_[q] = kFree;
    }
  }

  std::vector<bool> reach_from_source() const {
    std::vector<bool> seen(n_, false);
    std::deque<int> queue{s_};
    seen[s_] = true;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int a : out_[v])
        if (residual_[a] > 0.0 && !seen[head_[a]]) {
          seen[head_[a]] = true;
          queue.push_back(head_[a]);
        }
    }
    return seen;
  }

  std::vector<bool> reach_sink() const {
    std::vector<bool> seen(n_, false);
    std::deque<int> queue{t_};
    seen[t_] = true;
    while (!queue.empty()) {
      const int v = queue.front();
      queue.pop_front();
      for (int a : out_[v]) {
        const int u = head_[a];
        if (residual_[a ^ 1] > 0.0 && !seen[u]) {
          seen[u] = true;
          queue.push_back(u);
        }
      }
    }
    return seen;
  }

  int n_;
  int s_;
  int t_;
  std::vector<std::vector<int>> out_;
  std::vector<int> head_;
  std::vector<double> residual_;
  std::vector<std::uint8_t> tree_;
  std::vector<int> parent_;
  std::vector<bool> queued_;
  std::deque<int> active_;
  std::deque<int> orphans_;
};

}  // namespace

MaxFlowResult max_flow(const FlowNetwork& net) {
  if (net.num_nodes < 2 || net.source == net.sink || net.source < 0 ||
      net.sink < 0 || net.source >= net.num_nodes || net.sink >= net.num_nodes)
    throw InvalidInput("flow network needs distinct source and sink");
  for (const FlowArc& a : net.arcs) {
    if (a.from < 0 || a.to < 0 || a.from >= net.num_nodes ||
        a.to >= net.num_nodes)
      throw InvalidInput("arc endpoint out of range");
    if (!(a.capacity >= 0.0)) throw InvalidInput("negative arc capacity");
  }
  return BkMaxFlow(net).run();
}

double cut_capacity(const FlowNetwork& net,
                    const std::vector<bool>& source_side) {
  double sum = 0.0;
  for (const FlowArc& a : net.arcs)
    if (source_side[a.from] && !source_side[a.to]) sum += a.capacity;
  return sum;
}

BinarySolution solve_binary(const BinaryProblem& bp, double eps) {
  const Decomposition d = decompose(bp, eps);
  const MaxFlowResult flow = max_flow(d.network);
  BinarySolution sol;
  sol.labeling.resize(bp.num_nodes);
  for (int k = 0; k < bp.num_nodes; ++k)
    sol.labeling[k] = flow.source_side[k] ? 0 : 1;
  sol.energy = bp.energy(sol.labeling);
  return sol;
}

}  // namespace mrfmoves
