#include "sdex/subdivision.hpp"

#include <algorithm>
#include <stdexcept>

#include "sdex/errors.hpp"

namespace sdex {

namespace {

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
    // both sorted
    std::size_t j = 0;
    for (int v : a) {
        while (j < b.size() && b[j] < v) ++j;
        if (j == b.size() || b[j] != v) return false;
        ++j;
    }
    return true;
}

} // namespace

bool is_vertex_determined(const SimplicialSet& x, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    std::map<std::vector<int>, SimplexRef> seen;
    for (int d = 0; d <= x.max_dim(); ++d) {
        for (int id = 0; id < x.count(d); ++id) {
            SimplexRef r{d, id};
            for (int i = 0; i <= d && d > 0; ++i) {
                if (!x.face(r, i).epi.is_identity())
                    return fail("simplex (" + std::to_string(d) + "," + std::to_string(id) +
                                ") has a degenerate face");
            }
            std::vector<int> vs;
            for (SimplexRef v : x.vertices_of(r)) vs.push_back(v.id);
            std::sort(vs.begin(), vs.end());
            if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
                return fail("simplex (" + std::to_string(d) + "," + std::to_string(id) +
                            ") has repeated vertices");
            auto [it, fresh] = seen.emplace(std::move(vs), r);
            if (!fresh)
                return fail("simplices (" + std::to_string(it->second.dim) + "," +
                            std::to_string(it->second.id) + ") and (" + std::to_string(d) + "," +
                            std::to_string(id) + ") share a vertex set");
        }
    }
    return true;
}

int FacePoset::index_of(SimplexRef r) const {
    if (r.dim < 0 || r.dim >= static_cast<int>(offsets_.size()))
        throw std::invalid_argument("face_poset: no such element");
    return offsets_[r.dim] + r.id;
}

FacePoset face_poset(const SimplicialSet& x) {
    std::string why;
    if (!is_vertex_determined(x, &why))
        throw std::invalid_argument("face_poset: object is not vertex-determined: " + why);
    FacePoset p;
    p.offsets_.resize(x.max_dim() + 1, 0);
    for (int d = 0; d <= x.max_dim(); ++d) {
        p.offsets_[d] = p.size();
        for (int id = 0; id < x.count(d); ++id) {
            SimplexRef r{d, id};
            p.elements.push_back(r);
            std::vector<int> vs;
            for (SimplexRef v : x.vertices_of(r)) vs.push_back(v.id);
            std::sort(vs.begin(), vs.end());
            p.vertex_sets.push_back(std::move(vs));
        }
    }
    const int n = p.size();
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            p.leq[a][b] = is_subset(p.vertex_sets[a], p.vertex_sets[b]) ? 1 : 0;
    return p;
}

Subdivision::Subdivision(SSetPtr x) : original_(std::move(x)) {
    if (!original_->complete())
        throw TruncationError("subdivision of a truncated object is not determined");
    poset_ = face_poset(*original_);
    const int n = poset_.size();
    const int out_dim = std::max(0, original_->max_dim());
    auto out = std::make_shared<SimplicialSet>(out_dim);
    chains_.assign(out_dim + 1, {});

    // Vertex labels: dim-0 elements keep their labels, higher elements list
    // their vertex labels in braces.
    auto element_label = [&](int e) -> std::string {
        SimplexRef r = poset_.elements[e];
        auto name_of_vertex = [&](int vid) {
            auto l = original_->label(SimplexRef{0, vid});
            return l ? *l : "v" + std::to_string(vid);
        };
        if (r.dim == 0) return name_of_vertex(r.id);
        std::string s = "{";
        bool first = true;
        for (int v : poset_.vertex_sets[e]) {
            if (!first) s += ' ';
            s += name_of_vertex(v);
            first = false;
        }
        return s + "}";
    };

    // Chains of a given length, in lexicographic order of index vectors.
    std::vector<std::vector<int>> current;
    for (int e = 0; e < n; ++e) {
        current.push_back({e});
        SimplexRef ref = out->add_simplex(0, {}, element_label(e));
        by_chain_.emplace(current.back(), ref);
        chains_[0].push_back(current.back());
    }
    for (int d = 1; d <= original_->max_dim(); ++d) {
        std::vector<std::vector<int>> next;
        for (const auto& c : current) {
            for (int e = c.back() + 1; e < n; ++e) {
                if (!poset_.less(c.back(), e)) continue;
                std::vector<int> ext = c;
                ext.push_back(e);
                std::vector<GenSimplex> faces;
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> sub = ext;
                    sub.erase(sub.begin() + i);
                    faces.push_back({OrdinalMap::identity(d), by_chain_.at(sub)});
                }
                SimplexRef ref = out->add_simplex(d, std::move(faces));
                by_chain_.emplace(ext, ref);
                chains_[d].push_back(ext);
                next.push_back(std::move(ext));
            }
        }
        current = std::move(next);
    }
    space_ = std::move(out);
}

SimplexRef Subdivision::chain_simplex(const std::vector<int>& chain) const {
    auto it = by_chain_.find(chain);
    if (it == by_chain_.end())
        throw std::invalid_argument("chain_simplex: not a chain of the face poset");
    return it->second;
}

SSetPtr sd(SSetPtr x) { return Subdivision(std::move(x)).space(); }

SSetPtr sd_iter(SSetPtr x, int n) {
    if (n < 0) throw std::invalid_argument("sd_iter: negative iteration count");
    for (int i = 0; i < n; ++i) x = sd(x);
    return x;
}

SimplicialMap sd_map(const SimplicialMap& f) {
    Subdivision src(f.source()), tgt(f.target());
    std::vector<std::vector<GenSimplex>> assign(src.space()->max_dim() + 1);
    for (int d = 0; d <= src.space()->max_dim(); ++d) {
        for (int id = 0; id < src.space()->count(d); ++id) {
            const std::vector<int>& chain = src.chain_of({d, id});
            std::vector<int> mapped;
            for (int e : chain)
                mapped.push_back(tgt.element_index(f.at(src.element(e)).target));
            // The image chain is weakly increasing; collapse repeats.
            std::vector<int> epi_vals;
            std::vector<int> strict;
            for (std::size_t i = 0; i < mapped.size(); ++i) {
                if (i == 0 || mapped[i] != mapped[i - 1]) {
                    if (i > 0 && !tgt.poset().less(mapped[i - 1], mapped[i]))
                        throw std::logic_error("sd_map: image chain is not monotone");
                    strict.push_back(mapped[i]);
                }
                epi_vals.push_back(static_cast<int>(strict.size()) - 1);
            }
            assign[d].push_back({OrdinalMap(static_cast<int>(strict.size()), epi_vals),
                                 tgt.chain_simplex(strict)});
        }
    }
    return SimplicialMap(src.space(), tgt.space(), std::move(assign));
}

SimplicialMap sd_iter_map(const SimplicialMap& f, int n) {
    if (n < 0) throw std::invalid_argument("sd_iter_map: negative iteration count");
    SimplicialMap g = f;
    for (int i = 0; i < n; ++i) g = sd_map(g);
    return g;
}

} // namespace sdex
