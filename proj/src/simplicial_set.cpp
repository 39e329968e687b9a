#include "sdex/simplicial_set.hpp"

#include <stdexcept>

#include "sdex/errors.hpp"

namespace sdex {

bool gen_simplex_less(const GenSimplex& a, const GenSimplex& b) {
    if (a.target.dim != b.target.dim) return a.target.dim < b.target.dim;
    if (a.epi.values() != b.epi.values()) return a.epi.values() < b.epi.values();
    return a.target.id < b.target.id;
}

SimplicialSet::SimplicialSet(int dim_bound, bool complete)
    : dim_bound_(dim_bound), complete_(complete) {
    if (dim_bound < 0) throw std::invalid_argument("SimplicialSet: dim_bound must be >= 0");
    grades_.resize(dim_bound + 1);
}

int SimplicialSet::count(int dim) const {
    if (dim < 0 || dim >= static_cast<int>(grades_.size())) return 0;
    return static_cast<int>(grades_[dim].size());
}

int SimplicialSet::max_dim() const {
    for (int d = static_cast<int>(grades_.size()) - 1; d >= 0; --d)
        if (!grades_[d].empty()) return d;
    return -1;
}

int SimplicialSet::total_count() const {
    int n = 0;
    for (const auto& g : grades_) n += static_cast<int>(g.size());
    return n;
}

SimplexRef SimplicialSet::add_simplex(int dim, std::vector<GenSimplex> faces,
                                      std::optional<std::string> label) {
    if (dim < 0 || dim > dim_bound_)
        throw std::invalid_argument("add_simplex: dimension outside bound");
    if (static_cast<int>(faces.size()) != (dim == 0 ? 0 : dim + 1))
        throw std::invalid_argument("add_simplex: wrong number of faces");
    for (const auto& f : faces) {
        if (f.epi.domain_size() != dim)
            throw std::invalid_argument("add_simplex: face operator has wrong domain");
        if (!f.epi.is_surjective())
            throw std::invalid_argument("add_simplex: face operator must be surjective");
        if (f.epi.codomain_size() != f.target.dim + 1)
            throw std::invalid_argument("add_simplex: face operator does not match target dimension");
        if (f.target.dim < 0 || f.target.id < 0 || f.target.id >= count(f.target.dim))
            throw std::invalid_argument("add_simplex: face target does not exist");
    }
    grades_[dim].push_back(Simplex{std::move(faces), std::move(label)});
    return SimplexRef{dim, count(dim) - 1};
}

const GenSimplex& SimplicialSet::face(SimplexRef s, int i) const {
    return grades_[s.dim][s.id].faces[i];
}

const std::optional<std::string>& SimplicialSet::label(SimplexRef s) const {
    return grades_[s.dim][s.id].label;
}

void SimplicialSet::set_label(SimplexRef s, std::string label) {
    grades_[s.dim][s.id].label = std::move(label);
}

GenSimplex SimplicialSet::pull(const OrdinalMap& op, SimplexRef s) const {
    if (op.codomain_size() != s.dim + 1)
        throw std::invalid_argument("pull: operator codomain does not match simplex dimension");
    auto fact = op.epi_mono_factor();
    GenSimplex inj = pull_injective(fact.mono, s);
    return GenSimplex{compose(inj.epi, fact.epi), inj.target};
}

GenSimplex SimplicialSet::pull(const OrdinalMap& op, const GenSimplex& g) const {
    return pull(compose(g.epi, op), g.target);
}

GenSimplex SimplicialSet::face_of(const GenSimplex& g, int i) const {
    return pull(OrdinalMap::coface(g.dim(), i), g);
}

GenSimplex SimplicialSet::pull_injective(const OrdinalMap& mono, SimplexRef s) const {
    if (mono.is_identity())
        return GenSimplex{OrdinalMap::identity(s.dim + 1), s};
    // peel off the largest coface missing from the image
    int j = s.dim;
    {
        const auto& vals = mono.values();
        for (int t = static_cast<int>(vals.size()) - 1; t >= 0; --t)
            if (vals[t] == j) { --j; } else if (vals[t] < j) break;
    }
    const GenSimplex& rec = face(s, j);
    std::vector<int> reduced(mono.values());
    for (int& v : reduced)
        if (v > j) --v;
    OrdinalMap rest(s.dim, std::move(reduced)); // [r] -> [dim-1]
    return pull(compose(rec.epi, rest), rec.target);
}

SimplexRef SimplicialSet::vertex(SimplexRef s, int j) const {
    if (s.dim == 0) return s;
    GenSimplex v = pull(OrdinalMap(s.dim + 1, {j}), s);
    return v.target;
}

std::vector<SimplexRef> SimplicialSet::vertices_of(SimplexRef s) const {
    std::vector<SimplexRef> out;
    out.reserve(s.dim + 1);
    for (int j = 0; j <= s.dim; ++j) out.push_back(vertex(s, j));
    return out;
}

void SimplicialSet::require_dim(int d, const char* who) const {
    if (!complete_ && d > dim_bound_)
        throw TruncationError(std::string(who) + ": object truncated at dimension " +
                              std::to_string(dim_bound_) + ", need " + std::to_string(d));
}

std::vector<GenSimplex> SimplicialSet::all_simplices(int m) const {
    require_dim(m, "all_simplices");
    std::vector<GenSimplex> out;
    int top = std::min(m, max_dim());
    for (int k = 0; k <= top; ++k) {
        if (count(k) == 0) continue;
        for (const auto& epi : monotone_surjections(m, k))
            for (int id = 0; id < count(k); ++id)
                out.push_back(GenSimplex{epi, SimplexRef{k, id}});
    }
    std::sort(out.begin(), out.end(),
              [](const GenSimplex& a, const GenSimplex& b) { return gen_simplex_less(a, b); });
    return out;
}

long long SimplicialSet::total_simplices(int m) const {
    require_dim(m, "total_simplices");
    // # monotone surjections [m] ->> [k] is C(m, k)
    long long total = 0;
    int top = std::min(m, max_dim());
    for (int k = 0; k <= top; ++k) {
        long long c = 1;
        for (int i = 0; i < k; ++i) c = c * (m - i) / (i + 1);
        total += c * count(k);
    }
    return total;
}

ValidationReport SimplicialSet::validate() const {
    ValidationReport rep;
    auto where = [](SimplexRef s) {
        return "simplex (" + std::to_string(s.dim) + "," + std::to_string(s.id) + ")";
    };
    for (int d = 0; d <= max_dim(); ++d) {
        for (int id = 0; id < count(d); ++id) {
            SimplexRef s{d, id};
            const auto& faces = grades_[d][id].faces;
            if (static_cast<int>(faces.size()) != (d == 0 ? 0 : d + 1)) {
                rep.problems.push_back(where(s) + ": wrong face count");
                continue;
            }
            bool shapes_ok = true;
            for (int i = 0; i <= d && d > 0; ++i) {
                const GenSimplex& f = faces[i];
                if (f.epi.domain_size() != d || !f.epi.is_surjective() ||
                    f.epi.codomain_size() != f.target.dim + 1 ||
                    f.target.id >= count(f.target.dim)) {
                    rep.problems.push_back(where(s) + ": malformed face record " + std::to_string(i));
                    shapes_ok = false;
                }
            }
            if (!shapes_ok || d < 2) continue;
            // d_i d_j = d_{j-1} d_i for i < j
            for (int j = 1; j <= d; ++j) {
                for (int i = 0; i < j; ++i) {
                    GenSimplex lhs = pull(OrdinalMap::coface(d - 1, i), faces[j]);
                    GenSimplex rhs = pull(OrdinalMap::coface(d - 1, j - 1), faces[i]);
                    if (!(lhs == rhs))
                        rep.problems.push_back(where(s) + ": identity d_" + std::to_string(i) +
                                               " d_" + std::to_string(j) + " violated");
                }
            }
        }
    }
    return rep;
}

bool same_object(const SimplicialSet& a, const SimplicialSet& b) {
    if (&a == &b) return true;
    if (a.max_dim() != b.max_dim()) return false;
    for (int d = 0; d <= a.max_dim(); ++d) {
        if (a.count(d) != b.count(d)) return false;
        for (int id = 0; id < a.count(d); ++id)
            for (int i = 0; i <= (d == 0 ? -1 : d); ++i)
                if (!(a.face({d, id}, i) == b.face({d, id}, i))) return false;
    }
    return true;
}

bool same_object(const SSetPtr& a, const SSetPtr& b) {
    if (a == b) return true;
    return same_object(*a, *b);
}

} // namespace sdex
