#ifndef SDEX_RAYS_HPP
#define SDEX_RAYS_HPP

#include <array>
#include <string>
#include <vector>

#include "sdex/simplicial_set.hpp"

namespace sdex {

/// One triangle of the subdivided 2-simplex together with its ray label and
/// the combinatorial role it plays inside that ray.
///
/// `apex` and `edge` are vertex ids of the ambient space.  A fan triangle
/// touches the corner A at its apex, and `edge` lists the endpoints of its
/// far edge ordered from the AB side towards the AC side.  The two bent
/// kinds record the distinguished edge (the one facing the neighbouring
/// ray) and the vertex opposite it: a type-2a triangle of ray i faces ray
/// i + 1 across that edge and touches ray i - 1 at the apex, a type-2b
/// triangle mirrors this.
struct RayTriangle {
    enum Kind { kFan, kType2a, kType2b };
    SimplexRef simplex;
    int ray = 0;
    Kind kind = kFan;
    int apex = 0;
    std::array<int, 2> edge{0, 0};
};

/// The n-fold subdivided 2-simplex with every triangle assigned to one of
/// 2^n rays running from side AB over to side AC around the corner A.
struct LabeledTriangulation {
    int n = 0;
    SSetPtr space;
    std::vector<RayTriangle> triangles; // indexed by 2-simplex id
    int ray_count() const { return 1 << n; }
};

/// Subdivide the 2-simplex n times, propagating ray labels and triangle
/// roles one level at a time.  Throws BudgetError beyond n = 5, where the
/// quadratic face-poset table stops fitting in memory.
LabeledTriangulation build_rays(int n);

/// Integer barycentric coordinates of the vertices of the n-fold subdivided
/// 2-simplex with respect to its corners; each triple sums to 6^n.
std::vector<std::array<long long, 3>> barycentric_vertex_coordinates(int n);

/// Re-derives every adjacency condition the ray partition promises and
/// reports each violation: boundary conventions (the virtual rays 0 and
/// 2^n + 1 live beyond sides AB and AC), side AB touching only ray 1 and
/// side AC only ray 2^n, the walk of fan triangles around corner A, the
/// distinguished edge and opposite vertex of every bent triangle, and the
/// one-step change of labels across interior edges.
ValidationReport verify_rays(const LabeledTriangulation& lt);

/// Deterministic SVG picture of the partition: one polygon per triangle,
/// coloured by ray, corners labelled A, B and C.
std::string render_svg(const LabeledTriangulation& lt);

} // namespace sdex

#endif
