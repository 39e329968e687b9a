#include "sdex/simplicial_map.hpp"

#include <set>
#include <stdexcept>

namespace sdex {

SimplicialMap::SimplicialMap(SSetPtr source, SSetPtr target,
                             std::vector<std::vector<GenSimplex>> assignment)
    : source_(std::move(source)), target_(std::move(target)), assign_(std::move(assignment)) {
    if (!source_ || !target_) throw std::invalid_argument("SimplicialMap: null object");
    if (static_cast<int>(assign_.size()) < source_->max_dim() + 1)
        throw std::invalid_argument("SimplicialMap: assignment misses dimensions");
    for (int d = 0; d <= source_->max_dim(); ++d) {
        if (static_cast<int>(assign_[d].size()) != source_->count(d))
            throw std::invalid_argument("SimplicialMap: assignment size mismatch in dim " +
                                        std::to_string(d));
        for (const auto& g : assign_[d]) {
            if (g.dim() != d)
                throw std::invalid_argument("SimplicialMap: image has wrong dimension");
            if (!g.epi.is_surjective() || g.epi.codomain_size() != g.target.dim + 1 ||
                g.target.id >= target_->count(g.target.dim))
                throw std::invalid_argument("SimplicialMap: malformed image record");
        }
    }
}

SimplicialMap SimplicialMap::identity(SSetPtr x) {
    std::vector<std::vector<GenSimplex>> a(x->max_dim() + 1);
    for (int d = 0; d <= x->max_dim(); ++d)
        for (int id = 0; id < x->count(d); ++id)
            a[d].push_back(GenSimplex{OrdinalMap::identity(d + 1), SimplexRef{d, id}});
    SSetPtr copy = x; // unsequenced move hazard: never pass x and move(x) together
    return SimplicialMap(std::move(copy), std::move(x), std::move(a));
}

SimplicialMap SimplicialMap::to_point(SSetPtr x, SSetPtr point) {
    if (point->count(0) != 1 || point->max_dim() != 0)
        throw std::invalid_argument("to_point: target is not a point");
    std::vector<std::vector<GenSimplex>> a(x->max_dim() + 1);
    for (int d = 0; d <= x->max_dim(); ++d)
        for (int id = 0; id < x->count(d); ++id)
            a[d].push_back(GenSimplex{OrdinalMap::to_point(d + 1), SimplexRef{0, 0}});
    return SimplicialMap(std::move(x), std::move(point), std::move(a));
}

GenSimplex SimplicialMap::apply(const GenSimplex& g) const {
    const GenSimplex& img = at(g.target);
    return GenSimplex{compose(img.epi, g.epi), img.target};
}

ValidationReport SimplicialMap::validate() const {
    ValidationReport rep;
    for (int d = 1; d <= source_->max_dim(); ++d) {
        for (int id = 0; id < source_->count(d); ++id) {
            SimplexRef s{d, id};
            for (int i = 0; i <= d; ++i) {
                GenSimplex lhs = target_->pull(OrdinalMap::coface(d, i), at(s));
                GenSimplex rhs = apply(source_->face(s, i));
                if (!(lhs == rhs))
                    rep.problems.push_back("naturality fails at simplex (" + std::to_string(d) +
                                           "," + std::to_string(id) + ") face " + std::to_string(i));
            }
        }
    }
    return rep;
}

bool SimplicialMap::is_mono() const {
    for (int d = 0; d <= source_->max_dim(); ++d) {
        std::set<SimplexRef> seen;
        for (const auto& g : assign_[d]) {
            if (!g.is_nondegenerate()) return false;
            if (!seen.insert(g.target).second) return false;
        }
    }
    return true;
}

bool SimplicialMap::operator==(const SimplicialMap& other) const {
    return same_object(source_, other.source_) && same_object(target_, other.target_) &&
           assign_ == other.assign_;
}

SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f) {
    if (!same_object(f.target(), g.source()))
        throw std::invalid_argument("compose: middle objects differ");
    std::vector<std::vector<GenSimplex>> a(f.source()->max_dim() + 1);
    for (int d = 0; d <= f.source()->max_dim(); ++d)
        for (int id = 0; id < f.source()->count(d); ++id)
            a[d].push_back(g.apply(f.at(SimplexRef{d, id})));
    return SimplicialMap(f.source(), g.target(), std::move(a));
}

} // namespace sdex
