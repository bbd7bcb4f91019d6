#include "mrfmoves/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace mrfmoves {

namespace {

// Allowed states per node, written straight from the move definitions.
std::vector<std::vector<int>> allowed_states(const Instance& inst,
                                             std::span<const int> x,
                                             const MoveSpec& spec) {
  validate_move(spec, inst);
  inst.require_valid_labeling(x);
  std::vector<std::vector<int>> allowed(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const int xi = x[i];
    std::vector<int>& opts = allowed[i];
    if (const auto* m = std::get_if<IcmMove>(&spec)) {
      if (static_cast<int>(i) == m->node) {
        for (int s = 0; s < inst.num_states(); ++s) opts.push_back(s);
      } else {
        opts = {xi};
      }
    } else if (const auto* m = std::get_if<SwapMove>(&spec)) {
      if (xi == m->alpha || xi == m->beta)
        opts = {m->alpha, m->beta};
      else
        opts = {xi};
    } else if (const auto* m = std::get_if<ExpansionMove>(&spec)) {
      opts = {xi, m->alpha};
    } else if (const auto* m = std::get_if<ExpShrinkMove>(&spec)) {
      if (xi == m->alpha)
        opts = {m->alpha, m->beta};
      else
        opts = {xi, m->alpha};
    }
    std::sort(opts.begin(), opts.end());
    opts.erase(std::unique(opts.begin(), opts.end()), opts.end());
  }
  return allowed;
}

std::uint64_t product_size(const std::vector<std::vector<int>>& allowed) {
  std::uint64_t size = 1;
  for (const auto& opts : allowed) {
    if (size > std::numeric_limits<std::uint64_t>::max() / opts.size())
      return std::numeric_limits<std::uint64_t>::max();
    size *= opts.size();
  }
  return size;
}

// Odometer over the cartesian product, lexicographic in the labeling.
void for_each_product(const std::vector<std::vector<int>>& allowed,
                      std::uint64_t cap, const LabelingSink& sink) {
  const std::uint64_t size = product_size(allowed);
  if (size > cap)
    throw EnumerationCapExceeded("move space of size " + std::to_string(size) +
                                 " exceeds cap " + std::to_string(cap));
  const std::size_t n = allowed.size();
  std::vector<std::size_t> digit(n, 0);
  Labeling y(n);
  for (std::size_t i = 0; i < n; ++i) y[i] = allowed[i][0];
  for (;;) {
    sink(y);
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++digit[i] < allowed[i].size()) {
        y[i] = allowed[i][digit[i]];
        break;
      }
      digit[i] = 0;
      y[i] = allowed[i][0];
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

struct BestTracker {
  const Instance& inst;
  OracleResult best{{}, std::numeric_limits<double>::infinity()};

  void offer(const Labeling& y) {
    const double e = total_energy(inst, y);
    if (e < best.energy || (e == best.energy && y < best.x)) {
      best.energy = e;
      best.x = y;
    }
  }
};

}  // namespace

const char* to_string(MoveSetId id) {
  switch (id) {
    case MoveSetId::I: return "I";
    case MoveSetId::S: return "S";
    case MoveSetId::E: return "E";
    case MoveSetId::G: return "G";
    case MoveSetId::SE: return "SE";
  }
  return "?";
}

OracleResult brute_force_minimum(const Instance& inst, std::uint64_t cap) {
  std::vector<std::vector<int>> all(inst.num_nodes());
  for (auto& opts : all)
    for (int s = 0; s < inst.num_states(); ++s) opts.push_back(s);
  BestTracker tracker{inst};
  for_each_product(all, cap, [&](const Labeling& y) { tracker.offer(y); });
  return tracker.best;
}

void enumerate_moves(const Instance& inst, std::span<const int> x,
                     const MoveSpec& spec, const LabelingSink& sink,
                     std::uint64_t cap) {
  for_each_product(allowed_states(inst, x, spec), cap, sink);
}

std::vector<MoveSpec> move_specs(const Instance& inst, MoveSetId id) {
  const int n_states = inst.num_states();
  std::vector<MoveSpec> specs;
  switch (id) {
    case MoveSetId::I:
      for (int j = 0; j < inst.num_nodes(); ++j) specs.push_back(IcmMove{j});
      break;
    case MoveSetId::S:
      for (int a = 0; a < n_states; ++a)
        for (int b = a + 1; b < n_states; ++b) specs.push_back(SwapMove{a, b});
      break;
    case MoveSetId::E:
      for (int a = 0; a < n_states; ++a) specs.push_back(ExpansionMove{a});
      break;
    case MoveSetId::G:
      for (int a = 0; a < n_states; ++a)
        for (int b = 0; b < n_states; ++b) specs.push_back(ExpShrinkMove{a, b});
      break;
    case MoveSetId::SE:
      specs = move_specs(inst, MoveSetId::S);
      for (MoveSpec& s : move_specs(inst, MoveSetId::E)) specs.push_back(s);
      break;
  }
  return specs;
}

void enumerate_moves(const Instance& inst, std::span<const int> x,
                     MoveSetId id, const LabelingSink& sink,
                     std::uint64_t cap) {
  inst.require_valid_labeling(x);
  const std::vector<MoveSpec> specs = move_specs(inst, id);
  std::uint64_t total = 0;
  for (const MoveSpec& spec : specs) {
    const std::uint64_t size = product_size(allowed_states(inst, x, spec));
    total = size > cap ? cap + 1 : total + size;
    if (total > cap)
      throw EnumerationCapExceeded(std::string("move set ") + to_string(id) +
                                   " exceeds enumeration cap");
  }
  // A set with no parameters (S with one state) still contains x itself.
  if (specs.empty()) {
    sink(Labeling(x.begin(), x.end()));
    return;
  }
  for (const MoveSpec& spec : specs) enumerate_moves(inst, x, spec, sink, cap);
}

OracleResult best_in_move_space(const Instance& inst, std::span<const int> x,
                                const MoveSpec& spec, std::uint64_t cap) {
  BestTracker tracker{inst};
  enumerate_moves(inst, x, spec, [&](const Labeling& y) { tracker.offer(y); },
                  cap);
  return tracker.best;
}

OracleResult best_in_move_set(const Instance& inst, std::span<const int> x,
                              MoveSetId id, std::uint64_t cap) {
  BestTracker tracker{inst};
  enumerate_moves(inst, x, id, [&](const Labeling& y) { tracker.offer(y); },
                  cap);
  return tracker.best;
}

DominanceReport dominance_report(const Instance& inst, std::span<const int> x,
                                 MoveSetId a, MoveSetId b, double eps,
                                 std::uint64_t cap) {
  DominanceReport r;
  r.best_a = best_in_move_set(inst, x, a, cap).energy;
  r.best_b = best_in_move_set(inst, x, b, cap).energy;
  r.leq = r.best_a <= r.best_b + eps;
  r.strict = r.best_a < r.best_b - eps;
  return r;
}

}  // namespace mrfmoves
