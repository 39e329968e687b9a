#include "sdex/metrics.hpp"

#include <deque>
#include <stdexcept>
#include <string>

#include "sdex/cells.hpp"
#include "sdex/subdivision.hpp"

namespace sdex {

SkeletonGraph skeleton_graph(const SimplicialSet& x) {
    SkeletonGraph g;
    const int nv = x.count(0);
    g.labels.reserve(nv);
    for (int v = 0; v < nv; ++v) g.labels.push_back(x.label({0, v}));
    g.adjacency.resize(nv);
    for (int id = 0; id < x.count(1); ++id) {
        int a = x.face({1, id}, 1).target.id; // initial vertex
        int b = x.face({1, id}, 0).target.id; // final vertex
        g.edges.emplace_back(std::min(a, b), std::max(a, b));
        g.adjacency[a].push_back(b);
        if (a != b) g.adjacency[b].push_back(a);
    }
    return g;
}

std::vector<int> skeleton_distances(const SkeletonGraph& g, int from, int removed) {
    if (from < 0 || from >= g.vertex_count())
        throw std::invalid_argument("skeleton_distances: vertex out of range");
    std::vector<int> dist(g.vertex_count(), -1);
    if (from == removed) return dist;
    dist[from] = 0;
    std::deque<int> queue{from};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int w : g.adjacency[v]) {
            if (w == removed || dist[w] >= 0) continue;
            dist[w] = dist[v] + 1;
            queue.push_back(w);
        }
    }
    return dist;
}

std::optional<int> edge_distance(const SimplicialSet& x, SimplexRef from, SimplexRef to) {
    if (from.dim != 0 || to.dim != 0 || from.id >= x.count(0) || to.id >= x.count(0))
        throw std::invalid_argument("edge_distance: arguments must be vertices of the complex");
    std::vector<int> dist = skeleton_distances(skeleton_graph(x), from.id);
    if (dist[to.id] < 0) return std::nullopt;
    return dist[to.id];
}

ValidationReport distance_nonincreasing_check(
    const SimplicialMap& f, const std::vector<std::pair<SimplexRef, SimplexRef>>& sample) {
    ValidationReport rep;
    SkeletonGraph src = skeleton_graph(*f.source());
    SkeletonGraph tgt = skeleton_graph(*f.target());
    for (const auto& [a, b] : sample) {
        if (a.dim != 0 || b.dim != 0)
            throw std::invalid_argument("distance_nonincreasing_check: sample must pair vertices");
        int d_src = skeleton_distances(src, a.id)[b.id];
        if (d_src < 0) continue; // infinite upstream distance bounds anything
        int fa = f.at(a).target.id, fb = f.at(b).target.id;
        int d_tgt = skeleton_distances(tgt, fa)[fb];
        if (d_tgt < 0 || d_tgt > d_src)
            rep.problems.push_back(
                "distance increases under the map: d(" + std::to_string(a.id) + "," +
                std::to_string(b.id) + ") = " + std::to_string(d_src) + " but image distance is " +
                (d_tgt < 0 ? std::string("infinite") : std::to_string(d_tgt)));
    }
    return rep;
}

namespace {

/// Vertex ids in the n-fold subdivision of Δ₂ lying on the side spanned by
/// two of its vertices, together with the subdivided apex vertex.
std::vector<int> subdivided_side_vertices(int n, int v0, int v1) {
    SimplicialMap side = sd_iter_map(
        induced_vertex_map(standard_simplex(1), standard_simplex(2), {v0, v1}), n);
    std::vector<int> out;
    for (int id = 0; id < side.source()->count(0); ++id)
        out.push_back(side.at({0, id}).target.id);
    return out;
}

int subdivided_apex_vertex(int n) {
    SimplicialMap apex =
        sd_iter_map(induced_vertex_map(point(), standard_simplex(2), {0}), n);
    return apex.at({0, 0}).target.id;
}

} // namespace

int apex_detour_minimum(int n) {
    if (n < 0) throw std::invalid_argument("apex_detour_minimum: negative depth");
    if (n > 5) throw std::invalid_argument("apex_detour_minimum: depth beyond the supported budget");
    SSetPtr space = sd_iter(standard_simplex(2), n);
    SkeletonGraph g = skeleton_graph(*space);
    const int apex = subdivided_apex_vertex(n);
    std::vector<char> on_far_side(g.vertex_count(), 0);
    for (int v : subdivided_side_vertices(n, 0, 2))
        if (v != apex) on_far_side[v] = 1;
    int best = -1;
    for (int x : subdivided_side_vertices(n, 0, 1)) {
        if (x == apex) continue;
        std::vector<int> dist = skeleton_distances(g, x, apex);
        for (int y = 0; y < g.vertex_count(); ++y) {
            if (!on_far_side[y] || dist[y] < 0) continue;
            if (best < 0 || dist[y] < best) best = dist[y];
        }
    }
    if (best < 0) throw std::logic_error("apex_detour_minimum: the two sides are disconnected");
    return best;
}

ValidationReport boundary_distance_check(int k, int n) {
    if (k < 2) throw std::invalid_argument("boundary_distance_check: k >= 2 required");
    if (n < 0 || n > 4 || (k >= 3 && n > 2) || k > 4)
        throw std::invalid_argument("boundary_distance_check: arguments beyond the supported budget");
    SimplicialMap incl = sd_iter_map(boundary(k).inclusion, n);
    SkeletonGraph inner = skeleton_graph(*incl.source());
    SkeletonGraph outer = skeleton_graph(*incl.target());
    std::vector<int> image(inner.vertex_count());
    for (int v = 0; v < inner.vertex_count(); ++v) image[v] = incl.at({0, v}).target.id;
    const int cutoff = 1 << n;
    ValidationReport rep;
    for (int a = 0; a < inner.vertex_count(); ++a) {
        std::vector<int> d_in = skeleton_distances(inner, a);
        std::vector<int> d_out = skeleton_distances(outer, image[a]);
        for (int b = 0; b < inner.vertex_count(); ++b) {
            int interior = d_out[image[b]];
            if (interior < 0 || interior >= cutoff) continue;
            if (d_in[b] != interior)
                rep.problems.push_back("vertices " + std::to_string(a) + " and " +
                                       std::to_string(b) + ": boundary distance " +
                                       std::to_string(d_in[b]) + " vs interior distance " +
                                       std::to_string(interior));
        }
    }
    return rep;
}

} // namespace sdex
