#include "sdex/extension.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

#include "sdex/cells.hpp"
#include "sdex/errors.hpp"
#include "sdex/hom_search.hpp"
#include "sdex/subdivision.hpp"

namespace sdex {

namespace {

/// Flattened content of a map Sd(Δ_m) -> X.  The domain of every map in a
/// level is structurally the same object, so the (dim, id)-ordered
/// assignment alone identifies the map; epi value lists have fixed length
/// per position, so plain concatenation is unambiguous.
std::vector<int> map_key(const SimplicialMap& g) {
    std::vector<int> key;
    const SimplicialSet& dom = *g.source();
    for (int d = 0; d <= dom.max_dim(); ++d)
        for (int id = 0; id < dom.count(d); ++id) {
            const GenSimplex& v = g.at({d, id});
            key.push_back(v.target.dim);
            key.push_back(v.target.id);
            for (int e : v.epi.values()) key.push_back(e);
        }
    return key;
}

/// The characteristic map Δ_m -> X of a stored m-simplex: a d-face of the
/// standard simplex with vertex set J is sent to J^*(s).
SimplicialMap characteristic_map(const SSetPtr& dm, const SSetPtr& x, SimplexRef s) {
    const int m = s.dim;
    std::vector<std::vector<GenSimplex>> a(m + 1);
    for (int d = 0; d <= m; ++d)
        for (int id = 0; id < dm->count(d); ++id) {
            std::vector<int> vs = simplex_vertex_labels(*dm, {d, id});
            a[d].push_back(x->pull(OrdinalMap(m + 1, std::move(vs)), s));
        }
    return SimplicialMap(dm, x, std::move(a));
}

/// Level-by-level construction of the truncated extension object.  Each
/// level lists every map Sd(Δ_m) -> X in the canonical search order, with a
/// content index and the normal form of each map in the output object.
struct ExBuilder {
    struct Level {
        std::vector<SimplicialMap> maps;
        std::map<std::vector<int>, int> rank;
        std::vector<GenSimplex> normal;
    };

    SSetPtr x;
    int K;
    SSetPtr space;
    std::vector<Level> levels;
    std::vector<std::vector<int>> stored_rank; // output (m, id) -> level rank

    ExBuilder(SSetPtr x0, int cap) : x(std::move(x0)), K(cap) {
        if (K < 0) throw std::invalid_argument("ex_truncated: negative dimension cap");
        x->require_dim(K, "ex_truncated");
        auto out = std::make_shared<SimplicialSet>(K, false);
        levels.resize(K + 1);
        stored_rank.resize(K + 1);
        IndexPtr idx = std::make_shared<CodomainIndex>(x);
        for (int m = 0; m <= K; ++m) build_level(m, idx, *out);
        space = std::move(out);
    }

    void build_level(int m, const IndexPtr& idx, SimplicialSet& out) {
        Level& lvl = levels[m];
        lvl.maps = HomSearch(sd(standard_simplex(m)), idx).all();
        for (int r = 0; r < static_cast<int>(lvl.maps.size()); ++r)
            lvl.rank.emplace(map_key(lvl.maps[r]), r);
        lvl.normal.reserve(lvl.maps.size());
        if (m == 0) {
            // Sd Δ_0 = Δ_0: one hom-element per vertex of X, labels kept.
            for (const SimplicialMap& g : lvl.maps) {
                SimplexRef ref = out.add_simplex(0, {}, x->label(g.at({0, 0}).target));
                lvl.normal.push_back({OrdinalMap::identity(1), ref});
                stored_rank[0].push_back(static_cast<int>(lvl.normal.size()) - 1);
            }
            return;
        }
        std::vector<SimplicialMap> sd_coface, sd_codegen;
        for (int i = 0; i <= m; ++i)
            sd_coface.push_back(sd_map(induced_vertex_map(
                standard_simplex(m - 1), standard_simplex(m), OrdinalMap::coface(m, i).values())));
        for (int i = 0; i < m; ++i)
            sd_codegen.push_back(
                sd_map(map_from_vertex_function(m, OrdinalMap::codegeneracy(m - 1, i).values())));
        const Level& below = levels[m - 1];
        for (int r = 0; r < static_cast<int>(lvl.maps.size()); ++r) {
            const SimplicialMap& g = lvl.maps[r];
            std::vector<int> face_rank(m + 1);
            for (int i = 0; i <= m; ++i)
                face_rank[i] = below.rank.at(map_key(compose(g, sd_coface[i])));
            // g is degenerate exactly when it factors through a subdivided
            // codegeneracy, i.e. g = (d_i g) . Sd(s_i) for some i; factoring
            // through the smallest such i and taking the core below yields
            // the unique normal form.
            int degen = -1;
            for (int i = 0; i < m && degen < 0; ++i)
                if (map_key(compose(below.maps[face_rank[i]], sd_codegen[i])) == map_key(g))
                    degen = i;
            if (degen >= 0) {
                const GenSimplex& core = below.normal[face_rank[degen]];
                lvl.normal.push_back(
                    {compose(core.epi, OrdinalMap::codegeneracy(m - 1, degen)), core.target});
                continue;
            }
            std::vector<GenSimplex> faces;
            for (int i = 0; i <= m; ++i) faces.push_back(below.normal[face_rank[i]]);
            SimplexRef ref = out.add_simplex(m, std::move(faces));
            lvl.normal.push_back({OrdinalMap::identity(m + 1), ref});
            stored_rank[m].push_back(r);
        }
    }

    /// Normal form in the output of an arbitrary hom-element Sd(Δ_m) -> X.
    const GenSimplex& normal_form(int m, const SimplicialMap& g) const {
        return levels[m].normal[levels[m].rank.at(map_key(g))];
    }
};

} // namespace

SSetPtr ex_truncated(SSetPtr x, int K) { return ExBuilder(std::move(x), K).space; }

SimplicialMap ex_truncated_map(const SimplicialMap& f, int K) {
    ExBuilder src(f.source(), K), dst(f.target(), K);
    std::vector<std::vector<GenSimplex>> a(src.space->max_dim() + 1);
    for (int m = 0; m <= src.space->max_dim(); ++m)
        for (int rank : src.stored_rank[m])
            a[m].push_back(dst.normal_form(m, compose(f, src.levels[m].maps[rank])));
    return SimplicialMap(src.space, dst.space, std::move(a));
}

SimplicialMap ex_eta(SSetPtr x, int K) {
    if (x->max_dim() > K)
        throw TruncationError("ex_eta: source has simplices above the dimension cap");
    ExBuilder b(x, K);
    std::vector<std::vector<GenSimplex>> a(x->max_dim() + 1);
    for (int m = 0; m <= x->max_dim(); ++m) {
        SSetPtr dm = standard_simplex(m);
        SimplicialMap lv = last_vertex_map(m);
        for (int id = 0; id < x->count(m); ++id)
            a[m].push_back(b.normal_form(m, compose(characteristic_map(dm, x, {m, id}), lv)));
    }
    return SimplicialMap(std::move(x), b.space, std::move(a));
}

SimplicialMap last_vertex_map(int m) {
    Subdivision s(standard_simplex(m));
    std::vector<int> img;
    img.reserve(s.poset().size());
    for (int e = 0; e < s.poset().size(); ++e) img.push_back(s.poset().vertex_sets[e].back());
    return induced_vertex_map(s.space(), standard_simplex(m), img);
}

} // namespace sdex
