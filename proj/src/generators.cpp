#include "mrfmoves/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace mrfmoves {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

PairwiseTable random_table(std::mt19937_64& rng, int num_states,
                           int magnitude) {
  PairwiseTable t = PairwiseTable::zeros(num_states);
  for (int a = 0; a < num_states; ++a)
    for (int b = 0; b < num_states; ++b) t.at(a, b) = uniform_int(rng, 0, magnitude);
  return t;
}

PairwiseTable truncated_linear(int num_states, double slope, double cap) {
  PairwiseTable t = PairwiseTable::zeros(num_states);
  for (int a = 0; a < num_states; ++a)
    for (int b = 0; b < num_states; ++b)
      t.at(a, b) = std::min(slope * std::abs(a - b), cap);
  return t;
}

PairwiseTable truncated_quadratic(int num_states, double weight, double cap) {
  PairwiseTable t = PairwiseTable::zeros(num_states);
  for (int a = 0; a < num_states; ++a)
    for (int b = 0; b < num_states; ++b)
      t.at(a, b) = std::min(weight * (a - b) * (a - b), cap);
  return t;
}

}  // namespace

PairwiseTable project_triangle(PairwiseTable t) {
  const int n = t.num_states();
  // Each pass can only lower entries; integer tables reach a fixed point
  // quickly, the bound guards against pathological real-valued input.
  for (int pass = 0; pass < 100000; ++pass) {
    bool changed = false;
    for (int a = 0; a < n; ++a)
      for (int g1 = 0; g1 < n; ++g1)
        for (int g2 = 0; g2 < n; ++g2) {
          const double capped = t(g1, a) + t(a, g2) - t(a, a);
          if (t(g1, g2) > capped) {
            t.at(g1, g2) = capped;
            changed = true;
          }
        }
    if (!changed) return t;
  }
  throw std::runtime_error("triangle projection did not converge");
}

Instance generate(const GridSpec& spec) {
  if (spec.rows < 1 || spec.cols < 1 || spec.num_states < 1)
    throw InvalidInput("grid needs positive rows, cols and states");
  const int n = spec.rows * spec.cols;
  const int N = spec.num_states;

  InstanceBuilder builder(n, N);
  std::visit(
      Overloaded{
          [&](const RandomUnary& u) {
            std::mt19937_64 rng(u.seed);
            for (int i = 0; i < n; ++i) {
              std::vector<double> values(N);
              for (double& v : values) v = uniform_int(rng, 0, u.magnitude);
              builder.set_unary(i, std::move(values));
            }
          },
          [&](const ObservationUnary& u) {
            if (u.observed.size() != static_cast<std::size_t>(n))
              throw InvalidInput("observation size does not match grid");
            if (!u.masked.empty() && u.masked.size() != u.observed.size())
              throw InvalidInput("mask size does not match grid");
            for (int i = 0; i < n; ++i) {
              std::vector<double> values(N, 0.0);
              if (u.masked.empty() || !u.masked[i])
                for (int s = 0; s < N; ++s)
                  values[s] = u.weight * std::abs(s - u.observed[i]);
              builder.set_unary(i, std::move(values));
            }
          }},
      spec.unary);

  std::vector<std::pair<int, int>> pairs;
  for (int r = 0; r < spec.rows; ++r)
    for (int c = 0; c < spec.cols; ++c) {
      const int i = r * spec.cols + c;
      if (c + 1 < spec.cols) pairs.emplace_back(i, i + 1);
      if (r + 1 < spec.rows) pairs.emplace_back(i, i + spec.cols);
    }

  std::visit(Overloaded{
                 [&](const PottsPairwise& p) {
                   const PairwiseTable t = PairwiseTable::potts(N, p.lambda);
                   for (auto [i, j] : pairs) builder.add_edge(i, j, t);
                 },
                 [&](const TruncatedLinearPairwise& p) {
                   const PairwiseTable t = truncated_linear(N, p.slope, p.cap);
                   for (auto [i, j] : pairs) builder.add_edge(i, j, t);
                 },
                 [&](const TruncatedQuadraticPairwise& p) {
                   const PairwiseTable t = truncated_quadratic(N, p.weight, p.cap);
                   for (auto [i, j] : pairs) builder.add_edge(i, j, t);
                 },
                 [&](const RandomTablePairwise& p) {
                   std::mt19937_64 rng(p.seed);
                   for (auto [i, j] : pairs) {
                     PairwiseTable t = random_table(rng, N, p.magnitude);
                     if (p.force_triangle) t = project_triangle(std::move(t));
                     builder.add_edge(i, j, t);
                   }
                 }},
             spec.pairwise);
  return builder.build();
}

Instance random_small(std::uint64_t seed, int max_nodes, int max_states,
                      bool triangle) {
  if (max_nodes < 1 || max_states < 1)
    throw InvalidInput("random_small needs positive caps");
  std::mt19937_64 rng(seed);
  const int n = uniform_int(rng, 1, max_nodes);
  const int N = uniform_int(rng, 1, max_states);

  InstanceBuilder builder(n, N);
  for (int i = 0; i < n; ++i) {
    std::vector<double> values(N);
    for (double& v : values) v = uniform_int(rng, 0, 20);
    builder.set_unary(i, std::move(values));
  }

  std::vector<std::vector<bool>> linked(n, std::vector<bool>(n, false));
  auto add = [&](int i, int j) {
    linked[i][j] = linked[j][i] = true;
    PairwiseTable t = random_table(rng, N, 20);
    if (triangle) t = project_triangle(std::move(t));
    builder.add_edge(std::min(i, j), std::max(i, j), t);
  };
  for (int i = 1; i < n; ++i) add(i, uniform_int(rng, 0, i - 1));
  if (n > 2) {
    const int extra = uniform_int(rng, 0, n);
    for (int k = 0; k < extra; ++k) {
      const int i = uniform_int(rng, 0, n - 1);
      const int j = uniform_int(rng, 0, n - 1);
      if (i != j && !linked[i][j]) add(i, j);
    }
  }
  return builder.build();
}

Observation synthetic_observation(std::uint64_t seed, int rows, int cols,
                                  int num_states, int noise, int num_holes) {
  if (rows < 1 || cols < 1 || num_states < 1)
    throw InvalidInput("observation needs positive dimensions");
  std::mt19937_64 rng(seed);
  const int n = rows * cols;
  Observation obs;
  obs.clean.resize(n);
  obs.observed.resize(n);
  obs.masked.assign(n, false);

  // Smooth ramp along a random direction with a few constant patches.
  const double dr = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
  const double dc = std::uniform_real_distribution<double>(0.2, 1.0)(rng);
  const double span = dr * (rows - 1) + dc * (cols - 1);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const double t = span > 0 ? (dr * r + dc * c) / span : 0.0;
      obs.clean[r * cols + c] =
          static_cast<int>(std::lround(t * (num_states - 1)));
    }
  const int patches = uniform_int(rng, 1, 3);
  for (int p = 0; p < patches; ++p) {
    const int h = uniform_int(rng, 1, std::max(1, rows / 3));
    const int w = uniform_int(rng, 1, std::max(1, cols / 3));
    const int r0 = uniform_int(rng, 0, rows - h);
    const int c0 = uniform_int(rng, 0, cols - w);
    const int value = uniform_int(rng, 0, num_states - 1);
    for (int r = r0; r < r0 + h; ++r)
      for (int c = c0; c < c0 + w; ++c) obs.clean[r * cols + c] = value;
  }

  for (int i = 0; i < n; ++i)
    obs.observed[i] = std::clamp(obs.clean[i] + uniform_int(rng, -noise, noise),
                                 0, num_states - 1);

  for (int k = 0; k < num_holes; ++k) {
    const int h = uniform_int(rng, 1, std::max(1, rows / 3));
    const int w = uniform_int(rng, 1, std::max(1, cols / 3));
    const int r0 = uniform_int(rng, 0, rows - h);
    const int c0 = uniform_int(rng, 0, cols - w);
    for (int r = r0; r < r0 + h; ++r)
      for (int c = c0; c < c0 + w; ++c) obs.masked[r * cols + c] = true;
  }
  return obs;
}

}  // namespace mrfmoves
