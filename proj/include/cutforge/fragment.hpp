#pragma once

#include "cutforge/rng.hpp"
#include "cutforge/trees.hpp"

namespace cutforge {

enum class Intensity {
  length_rate,    // edge e is cut at time Exp(2 * len(e)), skeleton intensity
  uniform_order,  // unit rate per edge, pure combinatorial cutting
};

struct Cut {
  Edge edge;
  double time = 0.0;
};

// One exponential clock per edge, sorted by ring time. Each edge is cut at
// most once; times are strictly increasing almost surely.
struct CutSchedule {
  std::vector<Cut> cuts;
  Intensity mode = Intensity::length_rate;
  double rate_scale = 1.0;
};

CutSchedule make_schedule(const MeasuredTree& t, RngStream& rng,
                          Intensity mode = Intensity::length_rate,
                          double rate_scale = 1.0);

constexpr double kNeverCut = std::numeric_limits<double>::infinity();

// Full component history of the cutting process, stored as the merge
// dendrogram of the time-reversed process (union-find over cuts in
// decreasing time order). Leaves are the final components; for a schedule
// covering every edge these are the single vertices. Immutable once built.
//
// l(x,t) = int_0^t mu(T(x,s)) ds is evaluated exactly from the piecewise
// constant component mass of x. The full integral l(x) uses the truncation
// convention: it stops at the time x's component attains its final value
// (the residual atom mass contributes nothing afterwards).
class FragmentationTrace {
 public:
  FragmentationTrace(const MeasuredTree& t, const CutSchedule& schedule);

  int n_vertices() const { return n_; }
  int n_cuts() const { return static_cast<int>(n_nodes_) - n_final_; }
  int n_nodes() const { return static_cast<int>(n_nodes_); }
  int root_node() const { return root_; }

  // dendrogram accessors (nodes 0..n_nodes-1; first n_final are leaves)
  bool is_leaf_node(int id) const { return id < n_final_; }
  int parent_node(int id) const { return parent_[id]; }
  int child_node(int id, int side) const { return kids_[2 * id + side]; }
  double node_mass(int id) const { return mass_[id]; }
  double split_time(int id) const { return split_[id]; }  // leaves: +inf
  double birth_time(int id) const { return birth_[id]; }
  Edge cut_edge(int id) const { return cut_[id]; }
  int leaf_of_vertex(int v) const { return leaf_node_[v]; }
  int node_size(int id) const { return range_hi_[id] - range_lo_[id]; }
  // vertices of the block, in dendrogram leaf order
  std::vector<int> block_vertices(int id) const;
  bool block_contains(int id, int vertex) const;

  int lca_node(int a, int b) const;

  // time and edge of the first cut strictly separating x and y;
  // (kNeverCut, unset) when x == y or they share a final component.
  std::pair<double, Edge> first_separator(int x, int y) const;
  double separation_time(int x, int y) const;

  // component mass of x at time t (right-continuous)
  double mass_at(int x, double t) const;
  // breakpoints of t -> mass_at(x, t): (start_time, mass) pairs
  std::vector<std::pair<double, double>> mass_steps(int x) const;

  double ell(int x, double t) const;
  // truncated full integral l(x) = l(x, t_last(x))
  double ell_trunc(int x) const;
  // variant subtracting the linear residual tail instead of truncating
  double ell_tail_subtracted(int x) const;
  double t_last(int x) const;  // time x's component attains its final value

  // D(x,y) = l(x) + l(y) - 2 l(x, t(x,y)), truncated convention both sides
  double cut_metric(int x, int y) const;
  // same value computed through the other argument's integral
  double cut_metric_dual(int x, int y) const;

  // component masses at time s, sorted descending
  std::vector<double> mass_profile(double s) const;

  // l(x, split(id)) for x in block(id); root-to-node positions of the
  // genealogical tree in length units
  double ell_at_split(int id) const { return ellpos_[id]; }

 private:
  void build_lca() const;

  int n_ = 0;
  int n_final_ = 0;
  std::size_t n_nodes_ = 0;
  int root_ = -1;
  std::vector<int> parent_, kids_;
  std::vector<double> mass_, split_, birth_, ellpos_;
  std::vector<Cut> node_cut_storage_;
  std::vector<Edge> cut_;
  std::vector<int> leaf_node_;           // vertex -> leaf node id
  std::vector<int> range_lo_, range_hi_;  // leaf-order interval per node
  std::vector<int> leaf_order_;           // position -> vertex
  std::vector<int> leaf_pos_;             // vertex -> position

  // Euler tour sparse table for O(1) LCA
  mutable std::vector<int> euler_first_;
  mutable std::vector<std::vector<int>> sparse_;
  mutable std::vector<int> euler_depth_, euler_node_;
};

}  // namespace cutforge
