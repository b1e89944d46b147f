#include "cutforge/generate.hpp"

#include <algorithm>
#include <numeric>

namespace cutforge {

DiscreteTree gen_uniform_tree(int n, RngStream& rng) {
  if (n < 1) throw input_error("n must be >= 1");
  if (n == 1) return DiscreteTree(1, 1, {0, 0});
  std::vector<int> seq(n - 2);
  for (int& x : seq) x = 1 + static_cast<int>(rng.below(n));
  return decode_prufer(seq, n);
}

namespace {

// Rotate the step sequence (xi_i - 1) to the unique cyclic shift whose
// partial sums stay >= 0 until the final step (Dvoretzky-Motzkin).
void rotate_to_excursion(std::vector<int>& xi) {
  const int n = static_cast<int>(xi.size());
  long long sum = 0, best = 0;
  int arg = -1;
  for (int i = 0; i < n; ++i) {
    sum += xi[i] - 1;
    if (sum < best) {
      best = sum;
      arg = i;
    }
  }
  std::rotate(xi.begin(), xi.begin() + (arg + 1) % n, xi.end());
}

DiscreteTree tree_from_degree_sequence(const std::vector<int>& xi) {
  const int n = static_cast<int>(xi.size());
  std::vector<int> parent(n + 1, 0);
  std::vector<int> stack{1};
  std::vector<int> remaining{xi[0]};
  int next = 2;
  while (next <= n) {
    while (!remaining.empty() && remaining.back() == 0) {
      remaining.pop_back();
      stack.pop_back();
    }
    parent[next] = stack.back();
    --remaining.back();
    stack.push_back(next);
    remaining.push_back(xi[next - 1]);
    ++next;
  }
  return DiscreteTree(n, 1, std::move(parent));
}

}  // namespace

DiscreteTree gen_cgw_tree(int n, Offspring offspring, RngStream& rng) {
  if (n < 1) throw input_error("n must be >= 1");
  if (n == 1) return DiscreteTree(1, 1, {0, 0});

  std::vector<int> xi(n, 0);
  if (offspring == Offspring::poisson1) {
    // Poisson(1) conditioned on total n-1 == throw n-1 balls into n boxes
    for (int b = 0; b < n - 1; ++b) ++xi[rng.below(n)];
  } else {
    // Geometric(1/2) conditioned on total n-1 == uniform composition of
    // n-1 into n parts: stars and bars over 2n-2 slots
    const int slots = 2 * n - 2;
    std::vector<bool> star(slots, false);
    // choose n-1 star positions by partial shuffle
    std::vector<int> idx(slots);
    std::iota(idx.begin(), idx.end(), 0);
    for (int i = 0; i < n - 1; ++i) {
      const int j = i + static_cast<int>(rng.below(slots - i));
      std::swap(idx[i], idx[j]);
      star[idx[i]] = true;
    }
    int box = 0;
    for (int s = 0; s < slots; ++s) {
      if (star[s])
        ++xi[box];
      else
        ++box;
    }
  }
  rotate_to_excursion(xi);
  return tree_from_degree_sequence(xi);
}

std::vector<int> sample_vertices(const MeasuredTree& t, int k, RngStream& rng) {
  if (k < 1) throw input_error("k must be >= 1");
  const int n = t.n();
  std::vector<double> cdf(n);
  double acc = 0.0;
  for (int v = 1; v <= n; ++v) {
    acc += t.mass(v);
    cdf[v - 1] = acc;
  }
  if (!(acc > 0.0)) throw input_error("degenerate mass distribution");
  std::vector<int> out(k);
  for (int i = 0; i < k; ++i) {
    const double u = rng.uniform() * acc;
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    out[i] = static_cast<int>(it - cdf.begin()) + 1;
    if (out[i] > n) out[i] = n;
  }
  return out;
}

std::vector<int> sample_distinct_vertices(int n, int k, RngStream& rng) {
  if (k < 1 || k > n) throw input_error("need 1 <= k <= n");
  std::vector<int> pool(n);
  std::iota(pool.begin(), pool.end(), 1);
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace cutforge
