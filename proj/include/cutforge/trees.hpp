#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cutforge {

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Unordered vertex pair in canonical (min,max) form.
struct Edge {
  int a = 0, b = 0;
  Edge() = default;
  Edge(int u, int v) : a(u < v ? u : v), b(u < v ? v : u) {}
  bool operator==(const Edge&) const = default;
  bool operator<(const Edge& o) const {
    return a != o.a ? a < o.a : b < o.b;
  }
};

// Rooted tree on vertices 1..n with parent pointers (parent[root] = 0).
// Children lists, depths and a root-first ordering are derived once at
// construction; instances are immutable afterwards.
class DiscreteTree {
 public:
  DiscreteTree() = default;
  DiscreteTree(int n, int root, std::vector<int> parent);

  int n() const { return n_; }
  int root() const { return root_; }
  int parent(int v) const { return parent_[v]; }
  int depth(int v) const { return depth_[v]; }
  bool contains(int v) const { return v >= 1 && v <= n_; }

  std::span<const int> children(int v) const {
    return {kids_.data() + kid_off_[v], kids_.data() + kid_off_[v + 1]};
  }
  // vertices in root-first (BFS) order
  std::span<const int> order() const { return order_; }

  std::vector<Edge> edges() const;
  int degree(int v) const;

  bool operator==(const DiscreteTree& o) const {
    return n_ == o.n_ && root_ == o.root_ && parent_ == o.parent_;
  }

 private:
  int n_ = 0;
  int root_ = 0;
  std::vector<int> parent_;
  std::vector<int> kid_off_, kids_;
  std::vector<int> depth_;
  std::vector<int> order_;
};

// Build a rooted tree from an edge list.
DiscreteTree tree_from_edges(int n, std::span<const Edge> edges, int root);

// Prüfer decoding: sequences over {1..n}^(n-2) are in bijection with
// labelled trees on n vertices. The result is rooted at vertex 1.
DiscreteTree decode_prufer(std::span<const int> seq, int n);
std::vector<int> encode_prufer(const DiscreteTree& t);

int mrca(const DiscreteTree& t, int u, int v);

// Same tree, parent pointers re-oriented towards new_root.
DiscreteTree reroot(const DiscreteTree& t, int new_root);

// Tree with edge lengths and a vertex mass distribution; stands in for a
// measured R-tree at finite n. Masses must sum to 1 (1e-12), lengths > 0.
class MeasuredTree {
 public:
  MeasuredTree() = default;
  // up_len[v] = length of edge {v, parent(v)}; entry for the root ignored.
  MeasuredTree(DiscreteTree tree, std::vector<double> up_len,
               std::vector<double> mass);

  static MeasuredTree uniform(DiscreteTree tree, double edge_len = 1.0);

  const DiscreteTree& tree() const { return tree_; }
  int n() const { return tree_.n(); }
  double up_len(int v) const { return up_len_[v]; }
  double mass(int v) const { return mass_[v]; }
  double edge_len(const Edge& e) const;
  // sum of edge lengths from the root down to v
  double root_len(int v) const { return root_len_[v]; }

  std::vector<Edge> edges() const { return tree_.edges(); }

 private:
  DiscreteTree tree_;
  std::vector<double> up_len_;
  std::vector<double> mass_;
  std::vector<double> root_len_;
};

double graph_distance(const MeasuredTree& t, int u, int v);

struct Component {
  std::vector<int> vertices;
  double mass = 0.0;
};

// Connected components of the tree after deleting removed_edges, with their
// masses. Always a partition of the vertex set; masses sum to 1.
std::vector<Component> component_masses(const MeasuredTree& t,
                                        std::span<const Edge> removed_edges);

// JSON file format:
//   {"n": int, "root": int, "parent": [...], "edge_len"?: [...], "mass"?: [...]}
// parent[i] holds the parent of vertex i+1 (0 for the root); edge_len[i] is
// the length of the edge from vertex i+1 to its parent.
std::string tree_to_json(const MeasuredTree& t);
MeasuredTree tree_from_json(const std::string& text);
void save_tree(const MeasuredTree& t, const std::string& path);
MeasuredTree load_tree(const std::string& path);

}  // namespace cutforge
