#include "cutforge/fragment.hpp"

#include <algorithm>
#include <cmath>

namespace cutforge {

CutSchedule make_schedule(const MeasuredTree& t, RngStream& rng,
                          Intensity mode, double rate_scale) {
  if (t.n() < 2) throw input_error("tree has no edge to cut");
  CutSchedule s;
  s.mode = mode;
  s.rate_scale = rate_scale;
  s.cuts.reserve(t.n() - 1);
  for (int v = 1; v <= t.n(); ++v) {
    if (v == t.tree().root()) continue;
    const double len = t.up_len(v);
    if (!(len > 0.0)) throw input_error("zero-length edge");
    const double rate =
        (mode == Intensity::length_rate ? 2.0 * len : 1.0) * rate_scale;
    s.cuts.push_back({Edge(v, t.tree().parent(v)), rng.exponential(rate)});
  }
  std::sort(s.cuts.begin(), s.cuts.end(),
            [](const Cut& a, const Cut& b) { return a.time < b.time; });
  return s;
}

FragmentationTrace::FragmentationTrace(const MeasuredTree& t,
                                       const CutSchedule& schedule) {
  n_ = t.n();
  const auto& tree = t.tree();

  std::vector<bool> cut_below(n_ + 1, false);
  for (const Cut& c : schedule.cuts) {
    const int child = tree.contains(c.edge.a) && tree.parent(c.edge.a) == c.edge.b
                          ? c.edge.a
                          : c.edge.b;
    if (!tree.contains(child) || Edge(child, tree.parent(child)) != c.edge)
      throw input_error("schedule edge not in tree");
    if (cut_below[child]) throw input_error("edge cut twice in schedule");
    cut_below[child] = true;
  }

  // final components: connected parts of the tree after all cuts
  std::vector<int> group(n_ + 1, -1);
  std::vector<int> stack;
  n_final_ = 0;
  for (int s = 1; s <= n_; ++s) {
    if (group[s] != -1) continue;
    // s must be a component top: either root or cut above
    if (s != tree.root() && !cut_below[s]) continue;
    group[s] = n_final_;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int c : tree.children(v))
        if (!cut_below[c]) {
          group[c] = n_final_;
          stack.push_back(c);
        }
    }
    ++n_final_;
  }

  const std::size_t total = static_cast<std::size_t>(n_final_) +
                            schedule.cuts.size();
  n_nodes_ = total;
  parent_.assign(total, -1);
  kids_.assign(2 * total, -1);
  mass_.assign(total, 0.0);
  split_.assign(total, kNeverCut);
  birth_.assign(total, 0.0);
  cut_.assign(total, Edge());
  range_lo_.assign(total, 0);
  range_hi_.assign(total, 0);
  leaf_node_.assign(n_ + 1, -1);

  std::vector<std::vector<int>> members(n_final_);
  for (int v = 1; v <= n_; ++v) {
    leaf_node_[v] = group[v];
    mass_[group[v]] += t.mass(v);
    members[group[v]].push_back(v);
  }

  // merge in decreasing time order
  std::vector<int> dsu(n_final_), cur(n_final_);
  for (int i = 0; i < n_final_; ++i) dsu[i] = cur[i] = i;
  const auto find = [&](int x) {
    while (dsu[x] != x) x = dsu[x] = dsu[dsu[x]];
    return x;
  };
  int next_id = n_final_;
  for (auto it = schedule.cuts.rbegin(); it != schedule.cuts.rend(); ++it) {
    const int ga = find(group[it->edge.a]);
    const int gb = find(group[it->edge.b]);
    const int na = cur[ga], nb = cur[gb];
    const int id = next_id++;
    kids_[2 * id] = na;
    kids_[2 * id + 1] = nb;
    parent_[na] = parent_[nb] = id;
    mass_[id] = mass_[na] + mass_[nb];
    split_[id] = it->time;
    cut_[id] = it->edge;
    dsu[ga] = gb;
    cur[gb] = id;
  }
  root_ = static_cast<int>(total) - 1;
  if (schedule.cuts.empty()) root_ = 0;

  // birth times and leaf ranges, top-down
  leaf_order_.reserve(n_);
  leaf_pos_.assign(n_ + 1, -1);
  std::vector<int> todo{root_};
  birth_[root_] = 0.0;
  std::vector<int> dfs;  // post-process order for ranges
  dfs.reserve(total);
  while (!todo.empty()) {
    const int id = todo.back();
    todo.pop_back();
    dfs.push_back(id);
    if (is_leaf_node(id)) {
      range_lo_[id] = static_cast<int>(leaf_order_.size());
      for (int v : members[id]) {
        leaf_pos_[v] = static_cast<int>(leaf_order_.size());
        leaf_order_.push_back(v);
      }
      range_hi_[id] = static_cast<int>(leaf_order_.size());
    } else {
      birth_[kids_[2 * id]] = split_[id];
      birth_[kids_[2 * id + 1]] = split_[id];
      todo.push_back(kids_[2 * id + 1]);
      todo.push_back(kids_[2 * id]);
    }
  }
  for (auto it = dfs.rbegin(); it != dfs.rend(); ++it) {
    const int id = *it;
    if (!is_leaf_node(id)) {
      range_lo_[id] = range_lo_[kids_[2 * id]];
      range_hi_[id] = range_hi_[kids_[2 * id + 1]];
    }
  }

  // l-positions: ellpos[id] = l(x, split(id)) for x in block(id)
  ellpos_.assign(total, 0.0);
  for (int id : dfs) {
    const int p = parent_[id];
    const double base = p == -1 ? 0.0 : ellpos_[p];
    const double start = p == -1 ? 0.0 : split_[p];
    ellpos_[id] =
        is_leaf_node(id) ? base : base + mass_[id] * (split_[id] - start);
  }

  build_lca();
}

std::vector<int> FragmentationTrace::block_vertices(int id) const {
  return {leaf_order_.begin() + range_lo_[id],
          leaf_order_.begin() + range_hi_[id]};
}

bool FragmentationTrace::block_contains(int id, int vertex) const {
  const int p = leaf_pos_[vertex];
  return p >= range_lo_[id] && p < range_hi_[id];
}

void FragmentationTrace::build_lca() const {
  euler_node_.clear();
  euler_depth_.clear();
  euler_first_.assign(n_nodes_, -1);
  std::vector<std::pair<int, int>> stack{{root_, 0}};
  std::vector<int> depth(n_nodes_, 0);
  while (!stack.empty()) {
    auto [id, stage] = stack.back();
    stack.pop_back();
    if (euler_first_[id] == -1) euler_first_[id] = static_cast<int>(euler_node_.size());
    euler_node_.push_back(id);
    euler_depth_.push_back(depth[id]);
    if (is_leaf_node(id) || stage == 2) continue;
    stack.push_back({id, stage + 1});
    const int c = kids_[2 * id + stage];
    depth[c] = depth[id] + 1;
    stack.push_back({c, 0});
  }
  const int m = static_cast<int>(euler_node_.size());
  const int levels = 32 - __builtin_clz(std::max(m, 1));
  sparse_.assign(levels, std::vector<int>(m));
  for (int i = 0; i < m; ++i) sparse_[0][i] = i;
  for (int k = 1; k < levels; ++k)
    for (int i = 0; i + (1 << k) <= m; ++i) {
      const int a = sparse_[k - 1][i], b = sparse_[k - 1][i + (1 << (k - 1))];
      sparse_[k][i] = euler_depth_[a] <= euler_depth_[b] ? a : b;
    }
}

int FragmentationTrace::lca_node(int a, int b) const {
  int i = euler_first_[a], j = euler_first_[b];
  if (i > j) std::swap(i, j);
  const int k = 31 - __builtin_clz(j - i + 1);
  const int x = sparse_[k][i], y = sparse_[k][j - (1 << k) + 1];
  return euler_node_[euler_depth_[x] <= euler_depth_[y] ? x : y];
}

std::pair<double, Edge> FragmentationTrace::first_separator(int x, int y) const {
  if (x < 1 || x > n_ || y < 1 || y > n_) throw input_error("unknown vertex");
  const int a = leaf_node_[x], b = leaf_node_[y];
  if (a == b) return {kNeverCut, Edge()};
  const int l = lca_node(a, b);
  return {split_[l], cut_[l]};
}

double FragmentationTrace::separation_time(int x, int y) const {
  return first_separator(x, y).first;
}

double FragmentationTrace::mass_at(int x, double t) const {
  int id = leaf_node_[x];
  while (id != root_ && birth_[id] > t) id = parent_[id];
  return mass_[id];
}

std::vector<std::pair<double, double>> FragmentationTrace::mass_steps(
    int x) const {
  std::vector<std::pair<double, double>> chain;
  for (int id = leaf_node_[x]; id != -1; id = parent_[id])
    chain.emplace_back(birth_[id], mass_[id]);
  std::reverse(chain.begin(), chain.end());
  return chain;
}

double FragmentationTrace::ell(int x, double t) const {
  if (t < 0.0) throw input_error("t must be >= 0");
  double acc = 0.0;
  for (int id = leaf_node_[x]; id != -1; id = parent_[id]) {
    const double hi = std::min(split_[id], t);
    if (hi > birth_[id]) acc += mass_[id] * (hi - birth_[id]);
  }
  return acc;
}

double FragmentationTrace::ell_trunc(int x) const {
  return ellpos_[leaf_node_[x]];
}

double FragmentationTrace::t_last(int x) const {
  return birth_[leaf_node_[x]];
}

double FragmentationTrace::ell_tail_subtracted(int x) const {
  const int leaf = leaf_node_[x];
  return ellpos_[leaf] - mass_[leaf] * birth_[leaf];
}

double FragmentationTrace::cut_metric(int x, int y) const {
  if (x == y) return 0.0;
  const double t = separation_time(x, y);
  if (t == kNeverCut) return ell_trunc(y) - ell_trunc(x);
  return ell_trunc(x) + ell_trunc(y) - 2.0 * ell(x, t);
}

double FragmentationTrace::cut_metric_dual(int x, int y) const {
  if (x == y) return 0.0;
  const double t = separation_time(x, y);
  if (t == kNeverCut) return ell_trunc(x) - ell_trunc(y);
  return ell_trunc(x) + ell_trunc(y) - 2.0 * ell(y, t);
}

std::vector<double> FragmentationTrace::mass_profile(double s) const {
  if (s < 0.0) throw input_error("s must be >= 0");
  std::vector<double> out;
  std::vector<int> stack{root_};
  while (!stack.empty()) {
    const int id = stack.back();
    stack.pop_back();
    if (!is_leaf_node(id) && split_[id] <= s) {
      stack.push_back(kids_[2 * id]);
      stack.push_back(kids_[2 * id + 1]);
    } else {
      out.push_back(mass_[id]);
    }
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace cutforge
