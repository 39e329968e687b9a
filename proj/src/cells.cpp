#include "sdex/cells.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sdex {

namespace {

// Subsets of {0..k} of each size in lexicographic order, with lookup.
struct SubsetTable {
    std::vector<std::vector<std::vector<int>>> by_size; // [size-1] -> list of subsets
    std::map<std::vector<int>, int> rank;

    explicit SubsetTable(int k) {
        by_size.resize(k + 1);
        std::vector<int> cur;
        for (int size = 1; size <= k + 1; ++size) {
            cur.assign(size, 0);
            for (int i = 0; i < size; ++i) cur[i] = i;
            while (true) {
                by_size[size - 1].push_back(cur);
                rank[cur] = static_cast<int>(by_size[size - 1].size()) - 1;
                int pos = size - 1;
                while (pos >= 0 && cur[pos] == k - size + 1 + pos) --pos;
                if (pos < 0) break;
                ++cur[pos];
                for (int j = pos + 1; j < size; ++j) cur[j] = cur[j - 1] + 1;
            }
        }
    }
};

std::string vertex_list_label(const std::vector<int>& subset) {
    std::string s;
    for (size_t i = 0; i < subset.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(subset[i]);
    }
    return s;
}

// Build the subcomplex of standard_simplex(k) spanned by a predicate on
// subsets, together with its inclusion.
SubComplex subset_complex(int k, const std::vector<std::vector<int>>& subsets) {
    SSetPtr delta = standard_simplex(k);
    std::map<std::vector<int>, SimplexRef> mine;
    auto space = std::make_shared<SimplicialSet>(k);
    std::vector<std::vector<GenSimplex>> incl(k + 1);

    // reconstruct subset ranks of the ambient simplex
    SubsetTable table(k);

    std::vector<std::vector<int>> ordered = subsets;
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    for (const auto& sub : ordered) {
        int d = static_cast<int>(sub.size()) - 1;
        std::vector<GenSimplex> faces;
        for (int i = 0; i <= d && d > 0; ++i) {
            std::vector<int> f = sub;
            f.erase(f.begin() + i);
            faces.push_back(GenSimplex{OrdinalMap::identity(d), mine.at(f)});
        }
        SimplexRef r = space->add_simplex(d, std::move(faces),
                                          d == 0 ? std::optional<std::string>(vertex_list_label(sub))
                                                 : std::nullopt);
        mine[sub] = r;
        incl[d].push_back(GenSimplex{OrdinalMap::identity(d + 1),
                                     SimplexRef{d, table.rank.at(sub)}});
    }
    incl.resize(space->max_dim() + 1);
    SSetPtr frozen = space;
    return SubComplex{frozen, SimplicialMap(frozen, delta, std::move(incl))};
}

} // namespace

SSetPtr standard_simplex(int k) {
    if (k < 0) throw std::invalid_argument("standard_simplex: k >= 0 required");
    auto x = std::make_shared<SimplicialSet>(k);
    SubsetTable table(k);
    for (int size = 1; size <= k + 1; ++size) {
        int d = size - 1;
        for (const auto& sub : table.by_size[size - 1]) {
            std::vector<GenSimplex> faces;
            for (int i = 0; i <= d && d > 0; ++i) {
                std::vector<int> f = sub;
                f.erase(f.begin() + i);
                faces.push_back(GenSimplex{OrdinalMap::identity(d),
                                           SimplexRef{d - 1, table.rank.at(f)}});
            }
            x->add_simplex(d, std::move(faces),
                           d == 0 ? std::optional<std::string>(vertex_list_label(sub))
                                  : std::nullopt);
        }
    }
    return x;
}

SSetPtr point() { return standard_simplex(0); }

SubComplex boundary(int k) {
    if (k < 1) throw std::invalid_argument("boundary: k >= 1 required");
    SubsetTable table(k);
    std::vector<std::vector<int>> subs;
    for (int size = 1; size <= k; ++size)
        for (const auto& s : table.by_size[size - 1]) subs.push_back(s);
    return subset_complex(k, subs);
}

SubComplex horn(int k, int i) {
    if (k < 1 || i < 0 || i > k) throw std::invalid_argument("horn: need k >= 1, 0 <= i <= k");
    SubsetTable table(k);
    std::vector<int> missing_face;
    for (int v = 0; v <= k; ++v)
        if (v != i) missing_face.push_back(v);
    std::vector<std::vector<int>> subs;
    for (int size = 1; size <= k; ++size)
        for (const auto& s : table.by_size[size - 1])
            if (s != missing_face) subs.push_back(s);
    return subset_complex(k, subs);
}

std::vector<int> simplex_vertex_labels(const SimplicialSet& x, SimplexRef s) {
    std::vector<int> out;
    for (SimplexRef v : x.vertices_of(s))
        out.push_back(std::stoi(*x.label(v)));
    return out;
}

SimplicialMap map_from_vertex_function(int k, const std::vector<int>& values) {
    if (static_cast<int>(values.size()) != k + 1)
        throw std::invalid_argument("map_from_vertex_function: need k+1 values");
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1])
            throw std::invalid_argument("map_from_vertex_function: values must be weakly increasing");
    if (values.front() < 0)
        throw std::invalid_argument("map_from_vertex_function: values must be >= 0");
    SSetPtr src = standard_simplex(k);
    SSetPtr dst = standard_simplex(values.back());
    std::vector<int> img(src->count(0));
    for (int v = 0; v <= k; ++v) img[v] = values[v];
    return induced_vertex_map(src, dst, img);
}

SimplicialMap induced_vertex_map(SSetPtr x, SSetPtr y, const std::vector<int>& vertex_image) {
    if (static_cast<int>(vertex_image.size()) != x->count(0))
        throw std::invalid_argument("induced_vertex_map: one image per vertex required");
    // vertex list -> simplex of Y
    std::map<std::vector<int>, SimplexRef> y_by_vertices;
    for (int d = 0; d <= y->max_dim(); ++d)
        for (int id = 0; id < y->count(d); ++id) {
            std::vector<int> vs;
            for (SimplexRef v : y->vertices_of(SimplexRef{d, id})) vs.push_back(v.id);
            y_by_vertices[vs] = SimplexRef{d, id};
        }
    std::vector<std::vector<GenSimplex>> a(x->max_dim() + 1);
    for (int d = 0; d <= x->max_dim(); ++d) {
        for (int id = 0; id < x->count(d); ++id) {
            std::vector<int> seq;
            for (SimplexRef v : x->vertices_of(SimplexRef{d, id}))
                seq.push_back(vertex_image[v.id]);
            std::vector<int> dedup, epi;
            for (int v : seq) {
                if (dedup.empty() || dedup.back() != v) dedup.push_back(v);
                epi.push_back(static_cast<int>(dedup.size()) - 1);
            }
            auto it = y_by_vertices.find(dedup);
            if (it == y_by_vertices.end())
                throw std::invalid_argument(
                    "induced_vertex_map: image vertex list not realized by a simplex of the target");
            a[d].push_back(GenSimplex{OrdinalMap(static_cast<int>(dedup.size()), std::move(epi)),
                                      it->second});
        }
    }
    return SimplicialMap(std::move(x), std::move(y), std::move(a));
}

PushoutResult pushout(const SimplicialMap& i, const SimplicialMap& f) {
    if (!same_object(i.source(), f.source()))
        throw std::invalid_argument("pushout: the two maps must share their source");
    if (!i.is_mono())
        throw std::invalid_argument("pushout: the first map must be a monomorphism");
    const SimplicialSet& a = *i.source();
    const SimplicialSet& b = *i.target();
    const SimplicialSet& x = *f.target();

    int bound = std::max(x.dim_bound(), b.max_dim());
    bool complete = x.complete() && b.complete();
    if (!complete) bound = std::max(x.dim_bound(), b.dim_bound());
    auto p = std::make_shared<SimplicialSet>(bound, complete);

    // X verbatim, ids preserved
    for (int d = 0; d <= x.max_dim(); ++d)
        for (int id = 0; id < x.count(d); ++id) {
            std::vector<GenSimplex> faces;
            for (int k = 0; k <= d && d > 0; ++k) faces.push_back(x.face({d, id}, k));
            p->add_simplex(d, std::move(faces), x.label({d, id}));
        }

    // which B simplices come from A, and the corresponding A ref
    std::vector<std::vector<int>> preimage(b.max_dim() + 1);
    for (int d = 0; d <= b.max_dim(); ++d) preimage[d].assign(b.count(d), -1);
    for (int d = 0; d <= a.max_dim(); ++d)
        for (int id = 0; id < a.count(d); ++id)
            preimage[d][i.at({d, id}).target.id] = id;

    // adopted B simplices in (dim, id) order; record where each lands in P
    std::vector<std::vector<GenSimplex>> b_to_p(b.max_dim() + 1);
    for (int d = 0; d <= b.max_dim(); ++d) b_to_p[d].resize(b.count(d), GenSimplex{OrdinalMap::identity(1), {0, 0}});
    for (int d = 0; d <= b.max_dim(); ++d) {
        for (int id = 0; id < b.count(d); ++id) {
            if (preimage[d][id] >= 0) {
                b_to_p[d][id] = f.at(SimplexRef{d, preimage[d][id]}); // X ids survive in P
                continue;
            }
            std::vector<GenSimplex> faces;
            for (int k = 0; k <= d && d > 0; ++k) {
                const GenSimplex& rec = b.face({d, id}, k);
                const GenSimplex& img = b_to_p[rec.target.dim][rec.target.id];
                faces.push_back(GenSimplex{compose(img.epi, rec.epi), img.target});
            }
            SimplexRef r = p->add_simplex(d, std::move(faces), b.label({d, id}));
            b_to_p[d][id] = GenSimplex{OrdinalMap::identity(d + 1), r};
        }
    }

    SSetPtr frozen = p;
    std::vector<std::vector<GenSimplex>> x_assign(x.max_dim() + 1);
    for (int d = 0; d <= x.max_dim(); ++d)
        for (int id = 0; id < x.count(d); ++id)
            x_assign[d].push_back(GenSimplex{OrdinalMap::identity(d + 1), SimplexRef{d, id}});
    return PushoutResult{frozen, SimplicialMap(f.target(), frozen, std::move(x_assign)),
                         SimplicialMap(i.target(), frozen, std::move(b_to_p))};
}

} // namespace sdex
