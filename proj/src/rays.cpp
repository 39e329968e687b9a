#include "sdex/rays.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "sdex/cells.hpp"
#include "sdex/errors.hpp"
#include "sdex/subdivision.hpp"

namespace sdex {

namespace {

constexpr int kMaxLevel = 5;

void check_level(int n, const char* who) {
    if (n < 0) throw std::invalid_argument(std::string(who) + ": n must be >= 0");
    if (n > kMaxLevel)
        throw BudgetError(std::string(who) + ": level " + std::to_string(n) +
                          " needs a face-poset table beyond the memory budget (max " +
                          std::to_string(kMaxLevel) + ")");
}

/// Poset element index of the edge joining two vertices, per sorted pair.
std::map<std::pair<int, int>, int> edge_elements(const FacePoset& p) {
    std::map<std::pair<int, int>, int> out;
    for (int e = 0; e < p.size(); ++e)
        if (p.elements[e].dim == 1) out[{p.vertex_sets[e][0], p.vertex_sets[e][1]}] = e;
    return out;
}

} // namespace

LabeledTriangulation build_rays(int n) {
    check_level(n, "build_rays");
    LabeledTriangulation lt;
    lt.n = n;
    lt.space = standard_simplex(2);
    lt.triangles = {RayTriangle{{2, 0}, 1, RayTriangle::kFan, 0, {1, 2}}};

    for (int level = 0; level < n; ++level) {
        Subdivision sdv(lt.space);
        const auto eidx = edge_elements(sdv.poset());
        auto edge_of = [&](int a, int b) {
            auto it = eidx.find({std::min(a, b), std::max(a, b)});
            if (it == eidx.end()) throw std::logic_error("build_rays: missing edge element");
            return it->second;
        };

        std::vector<RayTriangle> next(sdv.space()->count(2));
        auto put = [&](SimplexRef s, int ray, RayTriangle::Kind kind, int apex,
                       std::array<int, 2> edge) {
            next[s.id] = RayTriangle{s, ray, kind, apex, edge};
        };

        for (const RayTriangle& rt : lt.triangles) {
            const int t = sdv.element_index(rt.simplex);
            const int i = rt.ray;
            // child triangle at corner v leaning on the edge element e
            auto child = [&](int v, int e) { return sdv.chain_simplex({v, e, t}); };
            if (rt.kind == RayTriangle::kFan) {
                const int a = rt.apex, u = rt.edge[0], v = rt.edge[1];
                const int au = edge_of(a, u), av = edge_of(a, v), uv = edge_of(u, v);
                put(child(a, au), 2 * i - 1, RayTriangle::kFan, a, {au, t});
                put(child(a, av), 2 * i, RayTriangle::kFan, a, {t, av});
                put(child(u, au), 2 * i - 1, RayTriangle::kType2b, t, {u, au});
                put(child(u, uv), 2 * i - 1, RayTriangle::kType2a, u, {uv, t});
                put(child(v, uv), 2 * i, RayTriangle::kType2b, v, {uv, t});
                put(child(v, av), 2 * i, RayTriangle::kType2a, t, {v, av});
            } else {
                const int w = rt.apex, p = rt.edge[0], q = rt.edge[1];
                const int pw = edge_of(p, w), qw = edge_of(q, w), d = edge_of(p, q);
                const bool a2 = rt.kind == RayTriangle::kType2a;
                // children at the apex inherit the near half of the ray,
                // children along the distinguished edge take the far half;
                // the kind flips only on the two lateral corner triangles.
                const int near = a2 ? 2 * i - 1 : 2 * i;
                const int far = a2 ? 2 * i : 2 * i - 1;
                const RayTriangle::Kind same = rt.kind;
                const RayTriangle::Kind flip = a2 ? RayTriangle::kType2b : RayTriangle::kType2a;
                put(child(w, pw), near, same, w, {pw, t});
                put(child(w, qw), near, same, w, {qw, t});
                put(child(p, d), far, same, t, {p, d});
                put(child(q, d), far, same, t, {q, d});
                put(child(p, pw), far, flip, p, {pw, t});
                put(child(q, qw), far, flip, q, {qw, t});
            }
        }

        for (const RayTriangle& rt : next)
            if (rt.ray == 0) throw std::logic_error("build_rays: uncovered child triangle");
        lt.space = sdv.space();
        lt.triangles = std::move(next);
    }
    return lt;
}

std::vector<std::array<long long, 3>> barycentric_vertex_coordinates(int n) {
    check_level(n, "barycentric_vertex_coordinates");
    SSetPtr x = standard_simplex(2);
    std::vector<std::array<long long, 3>> coords = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
    for (int level = 0; level < n; ++level) {
        Subdivision sdv(x);
        const FacePoset& p = sdv.poset();
        std::vector<std::array<long long, 3>> next(p.size(), {0, 0, 0});
        for (int e = 0; e < p.size(); ++e) {
            const auto& vs = p.vertex_sets[e];
            // barycenter of the member vertices, rescaled to keep the sum 6^level
            const long long scale = 6 / static_cast<long long>(vs.size());
            for (int v : vs)
                for (int j = 0; j < 3; ++j) next[e][j] += scale * coords[v][j];
        }
        coords = std::move(next);
        x = sdv.space();
    }
    return coords;
}

ValidationReport verify_rays(const LabeledTriangulation& lt) {
    check_level(lt.n, "verify_rays");
    ValidationReport rep;
    auto bad = [&](std::string msg) { rep.problems.push_back(std::move(msg)); };
    if (!lt.space) {
        bad("no space");
        return rep;
    }

    const SimplicialSet& x = *lt.space;
    const int rays = lt.ray_count();
    SSetPtr model = sd_iter(standard_simplex(2), lt.n);
    if (!same_object(x, *model)) {
        bad("space is not the " + std::to_string(lt.n) + "-fold subdivided 2-simplex");
        return rep;
    }
    const int V = x.count(0), E = x.count(1), T = x.count(2);
    if (static_cast<int>(lt.triangles.size()) != T) {
        bad("triangle table has " + std::to_string(lt.triangles.size()) + " entries for " +
            std::to_string(T) + " triangles");
        return rep;
    }
    for (int t = 0; t < T; ++t)
        if (!(lt.triangles[t].simplex == SimplexRef{2, t})) {
            bad("triangle table misindexed at " + std::to_string(t));
            return rep;
        }

    // Boundary data from exact barycentric coordinates: a vertex sits on a
    // side iff the opposite coordinate vanishes.
    const auto coords = barycentric_vertex_coordinates(lt.n);
    long long full = 1;
    for (int j = 0; j < lt.n; ++j) full *= 6;
    auto on_ab = [&](int v) { return coords[v][2] == 0; };
    auto on_ac = [&](int v) { return coords[v][1] == 0; };
    auto on_bc = [&](int v) { return coords[v][0] == 0; };
    int a_id = -1;
    for (int v = 0; v < V; ++v)
        if (coords[v][0] == full) a_id = v;

    auto einit = [&](int e) { return x.face({1, e}, 1).target.id; };
    auto efin = [&](int e) { return x.face({1, e}, 0).target.id; };
    auto epair = [&](int e) {
        return std::make_pair(std::min(einit(e), efin(e)), std::max(einit(e), efin(e)));
    };

    std::vector<std::array<int, 3>> tedges(T);
    std::vector<std::vector<int>> tri_of_edge(E);
    for (int t = 0; t < T; ++t)
        for (int j = 0; j < 3; ++j) {
            const GenSimplex& f = x.face({2, t}, j);
            tedges[t][j] = f.target.id;
            tri_of_edge[f.target.id].push_back(t);
        }
    for (int e = 0; e < E; ++e)
        if (tri_of_edge[e].empty() || tri_of_edge[e].size() > 2) {
            bad("edge " + std::to_string(e) + " lies in " +
                std::to_string(tri_of_edge[e].size()) + " triangles");
            return rep;
        }

    std::vector<long long> per_ray(rays + 2, 0);
    for (int t = 0; t < T; ++t) {
        const int r = lt.triangles[t].ray;
        if (r < 1 || r > rays)
            bad("triangle " + std::to_string(t) + " carries ray " + std::to_string(r) +
                " outside [1, " + std::to_string(rays) + "]");
        else
            ++per_ray[r];
    }
    for (int r = 1; r <= rays; ++r)
        if (per_ray[r] == 0) bad("ray " + std::to_string(r) + " has no triangles");

    // rays seen at each vertex, with the virtual boundary rays mixed in
    std::vector<std::set<int>> vrays(V);
    for (int t = 0; t < T; ++t)
        for (SimplexRef v : x.vertices_of({2, t})) vrays[v.id].insert(lt.triangles[t].ray);
    for (int v = 0; v < V; ++v) {
        if (on_ab(v)) vrays[v].insert(0);
        if (on_ac(v)) vrays[v].insert(rays + 1);
    }

    // what lies across an edge, from the point of view of triangle t
    auto partner = [&](int t, int e) {
        const auto& ts = tri_of_edge[e];
        if (ts.size() == 2) return lt.triangles[ts[0] == t ? ts[1] : ts[0]].ray;
        const int u = einit(e), w = efin(e);
        if (on_ab(u) && on_ab(w)) return 0;
        if (on_ac(u) && on_ac(w)) return rays + 1;
        return lt.triangles[t].ray; // side BC bounds every ray laterally
    };

    // boundary sides carry the extreme rays
    for (int e = 0; e < E; ++e) {
        if (tri_of_edge[e].size() != 1) continue;
        const int u = einit(e), w = efin(e);
        const int r = lt.triangles[tri_of_edge[e][0]].ray;
        if (on_ab(u) && on_ab(w) && r != 1)
            bad("edge " + std::to_string(e) + " on side AB carries ray " + std::to_string(r));
        if (on_ac(u) && on_ac(w) && r != rays)
            bad("edge " + std::to_string(e) + " on side AC carries ray " + std::to_string(r));
        if (!(on_ab(u) && on_ab(w)) && !(on_ac(u) && on_ac(w)) && !(on_bc(u) && on_bc(w)))
            bad("edge " + std::to_string(e) + " is boundary but on no side");
    }

    std::vector<int> fan_of_ray(rays + 2, -1);
    for (int t = 0; t < T; ++t) {
        const RayTriangle& rt = lt.triangles[t];
        const int i = rt.ray;
        if (i < 1 || i > rays) continue;

        std::set<int> roles{rt.apex, rt.edge[0], rt.edge[1]};
        std::set<int> corners;
        for (SimplexRef v : x.vertices_of({2, t})) corners.insert(v.id);
        if (roles != corners) {
            bad("triangle " + std::to_string(t) + ": roles are not its vertices");
            continue;
        }
        const bool has_a = corners.count(a_id) != 0;
        if (has_a != (rt.kind == RayTriangle::kFan)) {
            bad("triangle " + std::to_string(t) + ": corner-A incidence must match the fan kind");
            continue;
        }

        if (rt.kind == RayTriangle::kFan) {
            if (rt.apex != a_id) {
                bad("fan triangle " + std::to_string(t) + ": apex is not corner A");
                continue;
            }
            if (fan_of_ray[i] >= 0)
                bad("rays " + std::to_string(i) + ": two fan triangles");
            else
                fan_of_ray[i] = t;
            continue;
        }

        // bent triangle: distinguished edge faces the neighbouring ray,
        // the apex touches the ray on the other side, the remaining two
        // edges stay inside ray i
        const bool a2 = rt.kind == RayTriangle::kType2a;
        const int facing = a2 ? i + 1 : i - 1;
        const int touching = a2 ? i - 1 : i + 1;
        const std::pair<int, int> rec{std::min(rt.edge[0], rt.edge[1]),
                                      std::max(rt.edge[0], rt.edge[1])};
        int dist_e = -1;
        for (int j = 0; j < 3; ++j)
            if (epair(tedges[t][j]) == rec) dist_e = tedges[t][j];
        if (dist_e < 0) {
            bad("triangle " + std::to_string(t) + ": recorded edge is not one of its edges");
            continue;
        }
        if (partner(t, dist_e) != facing)
            bad("triangle " + std::to_string(t) + ": distinguished edge faces ray " +
                std::to_string(partner(t, dist_e)) + ", expected " + std::to_string(facing));
        for (int j = 0; j < 3; ++j) {
            const int e = tedges[t][j];
            if (e != dist_e && partner(t, e) != i)
                bad("triangle " + std::to_string(t) + ": edge " + std::to_string(e) +
                    " leaves ray " + std::to_string(i) + " towards " +
                    std::to_string(partner(t, e)));
        }
        if (vrays[rt.apex].count(touching) == 0)
            bad("triangle " + std::to_string(t) + ": apex does not touch ray " +
                std::to_string(touching));
    }

    // the fans walk around corner A from side AB to side AC
    for (int r = 1; r <= rays; ++r) {
        if (fan_of_ray[r] < 0) {
            bad("ray " + std::to_string(r) + " has no fan triangle");
            continue;
        }
        const int t = fan_of_ray[r];
        const RayTriangle& rt = lt.triangles[t];
        const std::pair<int, int> rec{std::min(rt.edge[0], rt.edge[1]),
                                      std::max(rt.edge[0], rt.edge[1])};
        int far_e = -1, low_e = -1, high_e = -1;
        for (int j = 0; j < 3; ++j) {
            const int e = tedges[t][j];
            const auto pr = epair(e);
            if (pr == rec) far_e = e;
            if (pr == std::make_pair(std::min(a_id, rt.edge[0]), std::max(a_id, rt.edge[0])))
                low_e = e;
            if (pr == std::make_pair(std::min(a_id, rt.edge[1]), std::max(a_id, rt.edge[1])))
                high_e = e;
        }
        if (far_e < 0 || low_e < 0 || high_e < 0) {
            bad("fan of ray " + std::to_string(r) + ": far edge is not opposite corner A");
            continue;
        }
        auto across = [&](int e) {
            const auto& ts = tri_of_edge[e];
            return ts.size() == 2 ? (ts[0] == t ? ts[1] : ts[0]) : -1;
        };
        if (r == 1) {
            if (!(on_ab(einit(low_e)) && on_ab(efin(low_e))))
                bad("fan of ray 1: low edge does not lie on side AB");
        } else if (across(low_e) != fan_of_ray[r - 1]) {
            bad("fan of ray " + std::to_string(r) + ": low edge does not meet the fan of ray " +
                std::to_string(r - 1));
        }
        if (r == rays) {
            if (!(on_ac(einit(high_e)) && on_ac(efin(high_e))))
                bad("fan of ray " + std::to_string(rays) + ": high edge does not lie on side AC");
        } else if (across(high_e) != fan_of_ray[r + 1]) {
            bad("fan of ray " + std::to_string(r) + ": high edge does not meet the fan of ray " +
                std::to_string(r + 1));
        }
    }

    // interior edges: labels change by at most one step, and an edge interior
    // to one ray must cross it from the i - 1 side to the i + 1 side
    for (int e = 0; e < E; ++e) {
        if (tri_of_edge[e].size() != 2) continue;
        const int u = einit(e), w = efin(e);
        if (u == a_id || w == a_id) continue; // governed by the fan walk
        const int r1 = lt.triangles[tri_of_edge[e][0]].ray;
        const int r2 = lt.triangles[tri_of_edge[e][1]].ray;
        if (r1 == r2) {
            const int i = r1;
            const bool crosses = (vrays[u].count(i - 1) && vrays[w].count(i + 1)) ||
                                 (vrays[u].count(i + 1) && vrays[w].count(i - 1));
            if (!crosses)
                bad("edge " + std::to_string(e) + " inside ray " + std::to_string(i) +
                    " does not cross it");
        } else if (r1 - r2 != 1 && r2 - r1 != 1) {
            bad("edge " + std::to_string(e) + " separates rays " + std::to_string(r1) + " and " +
                std::to_string(r2));
        }
    }

    return rep;
}

std::string render_svg(const LabeledTriangulation& lt) {
    check_level(lt.n, "render_svg");
    if (!lt.space || static_cast<int>(lt.triangles.size()) != lt.space->count(2))
        throw std::invalid_argument("render_svg: triangle table does not match the space");
    const auto coords = barycentric_vertex_coordinates(lt.n);
    if (static_cast<int>(coords.size()) != lt.space->count(0))
        throw std::invalid_argument("render_svg: space is not the subdivided 2-simplex");
    long long full = 1;
    for (int j = 0; j < lt.n; ++j) full *= 6;

    const double ax = 40, ay = 740, bx = 760, by = 740, cx = 400, cy = 116;
    auto px = [&](int v) {
        const double a = static_cast<double>(coords[v][0]) / static_cast<double>(full);
        const double b = static_cast<double>(coords[v][1]) / static_cast<double>(full);
        const double c = static_cast<double>(coords[v][2]) / static_cast<double>(full);
        return std::make_pair(a * ax + b * bx + c * cx, a * ay + b * by + c * cy);
    };

    std::string out =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"800\" "
        "height=\"800\" viewBox=\"0 0 800 800\">\n";
    char buf[160];
    for (int t = 0; t < lt.space->count(2); ++t) {
        out += "<polygon points=\"";
        const auto vs = lt.space->vertices_of({2, t});
        for (std::size_t j = 0; j < vs.size(); ++j) {
            const auto [X, Y] = px(vs[j].id);
            std::snprintf(buf, sizeof buf, "%s%.3f,%.3f", j ? " " : "", X, Y);
            out += buf;
        }
        const double hue = (lt.triangles[t].ray - 1) * 360.0 / lt.ray_count();
        std::snprintf(buf, sizeof buf,
                      "\" fill=\"hsl(%.2f,70%%,75%%)\" stroke=\"black\" stroke-width=\"1\"/>\n",
                      hue);
        out += buf;
    }
    const char* names[3] = {"A", "B", "C"};
    const double tx[3] = {16, 768, 392}, ty[3] = {768, 768, 100};
    for (int j = 0; j < 3; ++j) {
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%.0f\" y=\"%.0f\" font-family=\"sans-serif\" "
                      "font-size=\"28\">%s</text>\n",
                      tx[j], ty[j], names[j]);
        out += buf;
    }
    out += "</svg>\n";
    return out;
}

} // namespace sdex
