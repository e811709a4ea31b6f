#pragma once

#include "jts/bignum.hpp"
#include "jts/junction_tree.hpp"
#include "jts/rng.hpp"

namespace jts {

// Number of junction trees equivalent to j, i.e. representing the same
// graph. A spanning tree of the junction graph (links weighted by clique
// intersection size) is a junction tree exactly when its total weight is
// maximal, so the count multiplies spanning-tree counts per weight class
// under descending contraction; each factor is a matrix-tree determinant
// computed exactly in integers.
BigInt count_junction_trees(const JunctionTree& j);

double log_count_junction_trees(const JunctionTree& j);

// Replaces the links of j with those of a junction tree drawn uniformly
// at random among all count_junction_trees(j) equivalents. Cliques and
// node ids are untouched, so the represented graph never changes.
void rerandomize_links(JunctionTree& j, Rng& rng);

JunctionTree randomize_junction_tree(const JunctionTree& j, Rng& rng);

}  // namespace jts
