#ifndef SDEX_METRICS_HPP
#define SDEX_METRICS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// The 1-skeleton as an undirected graph: one node per vertex of the
/// complex, one edge per stored 1-simplex.  Degenerate edges are never
/// stored, so none appear; a stored loop keeps its (x, x) entry, which is
/// irrelevant for distances.
struct SkeletonGraph {
    std::vector<std::optional<std::string>> labels; // per vertex id
    std::vector<std::pair<int, int>> edges;         // endpoint vertex ids, lo first
    std::vector<std::vector<int>> adjacency;        // per vertex id

    int vertex_count() const { return static_cast<int>(adjacency.size()); }
    int edge_count() const { return static_cast<int>(edges.size()); }
};

SkeletonGraph skeleton_graph(const SimplicialSet& x);

/// Breadth-first distances from a vertex, optionally with one vertex removed
/// from the graph; -1 marks unreachable vertices (and the removed one).
std::vector<int> skeleton_distances(const SkeletonGraph& g, int from, int removed = -1);

/// Least length of a zig-zag edge path between two vertices; empty when they
/// lie in different components.
std::optional<int> edge_distance(const SimplicialSet& x, SimplexRef from, SimplexRef to);

/// Simplicial maps never increase edge distance.  Asserts
/// d(x, y) >= d(f x, f y) for each sampled vertex pair; the returned report
/// lists every violated pair and must be empty.
ValidationReport distance_nonincreasing_check(
    const SimplicialMap& f, const std::vector<std::pair<SimplexRef, SimplexRef>>& sample);

/// Exact minimum, over all vertices x != apex on the side {0,1} and
/// y != apex on the side {0,2} of sd_iter(Δ₂, n), of the length of an edge
/// path from x to y avoiding the apex vertex 0.  The ray-partition argument
/// bounds this from below by 2^n; callers assert that bound against the
/// returned exact value.
int apex_detour_minimum(int n);

/// Distances measured inside a subdivided boundary agree with distances
/// measured in the full subdivided simplex wherever the latter are < 2^n:
/// checks every vertex pair of sd_iter(∂Δ_k, n) with interior distance
/// < 2^n and reports each pair whose boundary distance differs.
ValidationReport boundary_distance_check(int k, int n);

} // namespace sdex

#endif
