#pragma once

#include "cutforge/rng.hpp"
#include "cutforge/trees.hpp"

namespace cutforge {

enum class Offspring { poisson1, geometric_half };

// Uniform over the n^(n-2) labelled trees, via a uniform Prüfer sequence.
DiscreteTree gen_uniform_tree(int n, RngStream& rng);

// Galton-Watson tree with the given critical offspring law, conditioned on
// exactly n vertices. The degree sequence is drawn directly from the
// conditional law of (xi_1..xi_n) given sum = n-1 (multinomial occupancy for
// Poisson(1), uniform composition for Geometric(1/2)), then rotated to the
// unique Lukasiewicz excursion by the cycle lemma. Vertices are labelled in
// depth-first order, root 1.
DiscreteTree gen_cgw_tree(int n, Offspring offspring, RngStream& rng);

// k i.i.d. draws from the vertex mass distribution (with replacement).
std::vector<int> sample_vertices(const MeasuredTree& t, int k, RngStream& rng);

// k distinct vertices, uniform over subsets (partial Fisher-Yates).
std::vector<int> sample_distinct_vertices(int n, int k, RngStream& rng);

}  // namespace cutforge
