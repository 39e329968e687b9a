#ifndef SDEX_SIMPLICIAL_MAP_HPP
#define SDEX_SIMPLICIAL_MAP_HPP

#include <vector>

#include "sdex/simplicial_set.hpp"

namespace sdex {

/// A simplicial map, stored as the normal form of the image of every
/// non-degenerate simplex of the source.  Images of degenerate simplices
/// follow by composing degeneracy operators.
class SimplicialMap {
public:
    /// assignment[d][id] = image of source simplex (d, id).
    SimplicialMap(SSetPtr source, SSetPtr target,
                  std::vector<std::vector<GenSimplex>> assignment);

    static SimplicialMap identity(SSetPtr x);
    /// The unique map to a one-point simplicial set.
    static SimplicialMap to_point(SSetPtr x, SSetPtr point);

    const SSetPtr& source() const { return source_; }
    const SSetPtr& target() const { return target_; }

    const GenSimplex& at(SimplexRef s) const { return assign_[s.dim][s.id]; }
    /// Image of an arbitrary simplex of the source, in normal form.
    GenSimplex apply(const GenSimplex& g) const;

    /// Empty report iff every assignment is well-shaped and natural:
    /// face_i(f(s)) = f(face_i(s)) for all stored s and all i.
    ValidationReport validate() const;

    /// True iff the map is injective on non-degenerate simplices and all
    /// their images are non-degenerate (equivalently, levelwise injective).
    bool is_mono() const;

    bool operator==(const SimplicialMap& other) const;

private:
    SSetPtr source_, target_;
    std::vector<std::vector<GenSimplex>> assign_;
};

/// g after f.  Requires f.target and g.source to be the same object.
SimplicialMap compose(const SimplicialMap& g, const SimplicialMap& f);

} // namespace sdex

#endif
