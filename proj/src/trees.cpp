#include "cutforge/trees.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace cutforge {

DiscreteTree::DiscreteTree(int n, int root, std::vector<int> parent)
    : n_(n), root_(root), parent_(std::move(parent)) {
  if (n_ < 1) throw input_error("tree must have at least one vertex");
  if (root_ < 1 || root_ > n_) throw input_error("root out of range");
  if (static_cast<int>(parent_.size()) != n_ + 1)
    throw input_error("parent array must have n+1 entries (index 0 unused)");
  if (parent_[root_] != 0) throw input_error("root must have parent 0");

  std::vector<int> deg(n_ + 1, 0);
  for (int v = 1; v <= n_; ++v) {
    if (v == root_) continue;
    const int p = parent_[v];
    if (p < 1 || p > n_) throw input_error("parent out of range");
    ++deg[p];
  }
  kid_off_.assign(n_ + 2, 0);
  for (int v = 1; v <= n_; ++v) kid_off_[v + 1] = kid_off_[v] + deg[v];
  kids_.resize(n_ - 1);
  std::vector<int> fill(kid_off_.begin(), kid_off_.end() - 1);
  for (int v = 1; v <= n_; ++v)
    if (v != root_) kids_[fill[parent_[v]]++] = v;

  depth_.assign(n_ + 1, -1);
  order_.reserve(n_);
  order_.push_back(root_);
  depth_[root_] = 0;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    const int v = order_[head];
    for (int c : children(v)) {
      depth_[c] = depth_[v] + 1;
      order_.push_back(c);
    }
  }
  if (static_cast<int>(order_.size()) != n_)
    throw input_error("parent mapping is not a tree reaching all vertices");
}

std::vector<Edge> DiscreteTree::edges() const {
  std::vector<Edge> out;
  out.reserve(n_ - 1);
  for (int v = 1; v <= n_; ++v)
    if (v != root_) out.emplace_back(v, parent_[v]);
  return out;
}

int DiscreteTree::degree(int v) const {
  const int up = v == root_ ? 0 : 1;
  return up + kid_off_[v + 1] - kid_off_[v];
}

DiscreteTree tree_from_edges(int n, std::span<const Edge> edges, int root) {
  if (static_cast<int>(edges.size()) != n - 1)
    throw input_error("edge list must have n-1 edges");
  std::vector<std::vector<int>> adj(n + 1);
  for (const Edge& e : edges) {
    if (e.a < 1 || e.b > n || e.a == e.b) throw input_error("bad edge");
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> parent(n + 1, -1), stack{root};
  parent[root] = 0;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (parent[w] == -1) {
        parent[w] = v;
        stack.push_back(w);
      }
  }
  return DiscreteTree(n, root, std::move(parent));
}

DiscreteTree decode_prufer(std::span<const int> seq, int n) {
  if (n < 2) throw input_error("prufer decoding needs n >= 2");
  if (static_cast<int>(seq.size()) != n - 2)
    throw input_error("prufer sequence must have n-2 entries");
  for (int x : seq)
    if (x < 1 || x > n) throw input_error("prufer entry out of range");

  std::vector<int> deg(n + 1, 1);
  for (int x : seq) ++deg[x];

  std::vector<Edge> edges;
  edges.reserve(n - 1);
  int ptr = 1;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : seq) {
    edges.emplace_back(leaf, x);
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  edges.emplace_back(leaf, n);
  return tree_from_edges(n, edges, 1);
}

std::vector<int> encode_prufer(const DiscreteTree& t) {
  const int n = t.n();
  if (n < 2) throw input_error("prufer encoding needs n >= 2");
  std::vector<std::vector<int>> adj(n + 1);
  for (const Edge& e : t.edges()) {
    adj[e.a].push_back(e.b);
    adj[e.b].push_back(e.a);
  }
  std::vector<int> deg(n + 1);
  for (int v = 1; v <= n; ++v) deg[v] = static_cast<int>(adj[v].size());
  std::vector<bool> gone(n + 1, false);

  std::vector<int> seq;
  seq.reserve(n - 2);
  int ptr = 1;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int step = 0; step < n - 2; ++step) {
    gone[leaf] = true;
    int nb = -1;
    for (int w : adj[leaf])
      if (!gone[w]) nb = w;
    seq.push_back(nb);
    if (--deg[nb] == 1 && nb < ptr) {
      leaf = nb;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  return seq;
}

int mrca(const DiscreteTree& t, int u, int v) {
  if (!t.contains(u) || !t.contains(v)) throw input_error("unknown vertex");
  while (u != v) {
    if (t.depth(u) >= t.depth(v))
      u = t.parent(u);
    else
      v = t.parent(v);
  }
  return u;
}

DiscreteTree reroot(const DiscreteTree& t, int new_root) {
  if (!t.contains(new_root)) throw input_error("unknown vertex");
  std::vector<int> parent(t.n() + 1, 0);
  for (int v = 1; v <= t.n(); ++v)
    if (v != t.root()) parent[v] = t.parent(v);
  int v = new_root, prev = 0;
  while (v != 0) {
    const int up = parent[v];
    parent[v] = prev;
    prev = v;
    v = up;
  }
  return DiscreteTree(t.n(), new_root, std::move(parent));
}

MeasuredTree::MeasuredTree(DiscreteTree tree, std::vector<double> up_len,
                           std::vector<double> mass)
    : tree_(std::move(tree)), up_len_(std::move(up_len)), mass_(std::move(mass)) {
  const int n = tree_.n();
  if (static_cast<int>(up_len_.size()) != n + 1 ||
      static_cast<int>(mass_.size()) != n + 1)
    throw input_error("edge_len/mass arrays must have n+1 entries");
  up_len_[tree_.root()] = 0.0;
  double total = 0.0;
  for (int v = 1; v <= n; ++v) {
    if (v != tree_.root() && !(up_len_[v] > 0.0))
      throw input_error("edge lengths must be positive");
    if (mass_[v] < 0.0) throw input_error("masses must be non-negative");
    total += mass_[v];
  }
  if (std::fabs(total - 1.0) > 1e-12)
    throw input_error("masses must sum to 1 within 1e-12");
  root_len_.assign(n + 1, 0.0);
  for (int v : tree_.order())
    if (v != tree_.root()) root_len_[v] = root_len_[tree_.parent(v)] + up_len_[v];
}

MeasuredTree MeasuredTree::uniform(DiscreteTree tree, double edge_len) {
  const int n = tree.n();
  std::vector<double> len(n + 1, edge_len), mass(n + 1, 0.0);
  // keep the total exactly 1 for any n
  for (int v = 1; v < n; ++v) mass[v] = 1.0 / n;
  double acc = 0.0;
  for (int v = 1; v < n; ++v) acc += mass[v];
  mass[n] = 1.0 - acc;
  return MeasuredTree(std::move(tree), std::move(len), std::move(mass));
}

double MeasuredTree::edge_len(const Edge& e) const {
  if (tree_.contains(e.a) && tree_.parent(e.a) == e.b) return up_len_[e.a];
  if (tree_.contains(e.b) && tree_.parent(e.b) == e.a) return up_len_[e.b];
  throw input_error("no such edge");
}

double graph_distance(const MeasuredTree& t, int u, int v) {
  const int m = mrca(t.tree(), u, v);
  return t.root_len(u) + t.root_len(v) - 2.0 * t.root_len(m);
}

namespace {

struct Dsu {
  std::vector<int> up;
  explicit Dsu(int n) : up(n + 1) {
    for (int i = 0; i <= n; ++i) up[i] = i;
  }
  int find(int x) {
    while (up[x] != x) x = up[x] = up[up[x]];
    return x;
  }
  bool merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    up[a] = b;
    return true;
  }
};

}  // namespace

std::vector<Component> component_masses(const MeasuredTree& t,
                                        std::span<const Edge> removed_edges) {
  const int n = t.n();
  std::vector<bool> removed(n + 1, false);
  for (const Edge& e : removed_edges) {
    t.edge_len(e);  // validates membership
    const int child = t.tree().parent(e.a) == e.b ? e.a : e.b;
    removed[child] = true;
  }
  Dsu dsu(n);
  for (int v = 1; v <= n; ++v)
    if (v != t.tree().root() && !removed[v]) dsu.merge(v, t.tree().parent(v));

  std::vector<int> head(n + 1, -1);
  std::vector<Component> out;
  for (int v = 1; v <= n; ++v) {
    const int r = dsu.find(v);
    if (head[r] == -1) {
      head[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    Component& c = out[head[r]];
    c.vertices.push_back(v);
    c.mass += t.mass(v);
  }
  return out;
}

std::string tree_to_json(const MeasuredTree& t) {
  nlohmann::json j;
  const int n = t.n();
  j["n"] = n;
  j["root"] = t.tree().root();
  std::vector<int> parent(n);
  std::vector<double> len(n), mass(n);
  for (int v = 1; v <= n; ++v) {
    parent[v - 1] = v == t.tree().root() ? 0 : t.tree().parent(v);
    len[v - 1] = t.up_len(v);
    mass[v - 1] = t.mass(v);
  }
  j["parent"] = parent;
  j["edge_len"] = len;
  j["mass"] = mass;
  return j.dump();
}

MeasuredTree tree_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  const int n = j.at("n").get<int>();
  const int root = j.at("root").get<int>();
  const auto parent0 = j.at("parent").get<std::vector<int>>();
  if (static_cast<int>(parent0.size()) != n)
    throw input_error("parent array length mismatch");
  std::vector<int> parent(n + 1, 0);
  for (int i = 0; i < n; ++i) parent[i + 1] = parent0[i];
  DiscreteTree tree(n, root, std::move(parent));

  std::vector<double> len(n + 1, 1.0), mass(n + 1, 1.0 / n);
  if (j.contains("edge_len")) {
    const auto raw = j["edge_len"].get<std::vector<double>>();
    if (static_cast<int>(raw.size()) != n) throw input_error("edge_len length");
    for (int i = 0; i < n; ++i) len[i + 1] = i + 1 == root ? 0.0 : raw[i];
  }
  if (j.contains("mass")) {
    const auto raw = j["mass"].get<std::vector<double>>();
    if (static_cast<int>(raw.size()) != n) throw input_error("mass length");
    for (int i = 0; i < n; ++i) mass[i + 1] = raw[i];
  } else {
    mass.assign(n + 1, 0.0);
    for (int v = 1; v < n; ++v) mass[v] = 1.0 / n;
    double acc = 0.0;
    for (int v = 1; v < n; ++v) acc += mass[v];
    mass[n] = 1.0 - acc;
  }
  return MeasuredTree(std::move(tree), std::move(len), std::move(mass));
}

void save_tree(const MeasuredTree& t, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw input_error("cannot open " + path);
  f << tree_to_json(t) << "\n";
}

MeasuredTree load_tree(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw input_error("cannot open " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return tree_from_json(ss.str());
}

}  // namespace cutforge
