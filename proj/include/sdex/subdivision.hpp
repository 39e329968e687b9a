#ifndef SDEX_SUBDIVISION_HPP
#define SDEX_SUBDIVISION_HPP

#include <map>
#include <string>
#include <vector>

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// True iff every face record has an identity operator (all faces of
/// non-degenerate simplices are non-degenerate), every simplex has pairwise
/// distinct vertices, and no two simplices share a vertex set.  Subdivision
/// is only defined for such objects, and produces such objects.
bool is_vertex_determined(const SimplicialSet& x, std::string* why = nullptr);

/// The poset of non-degenerate simplices ordered by "is a face of", which
/// for a vertex-determined object coincides with vertex-set containment.
struct FacePoset {
    std::vector<SimplexRef> elements;          // in (dim, id) order
    std::vector<std::vector<int>> vertex_sets; // sorted vertex ids per element
    std::vector<std::vector<char>> leq;

    int size() const { return static_cast<int>(elements.size()); }
    int index_of(SimplexRef r) const;
    bool less(int a, int b) const { return a != b && leq[a][b]; }

private:
    friend FacePoset face_poset(const SimplicialSet&);
    std::vector<int> offsets_;
};

FacePoset face_poset(const SimplicialSet& x);

/// Barycentric subdivision: the nerve of the face poset.  d-simplices of
/// the result are the strictly increasing (d+1)-chains of elements;
/// the vertex for element e is the 0-chain (e), labelled by the vertex list
/// of the originating simplex.
class Subdivision {
public:
    explicit Subdivision(SSetPtr x);

    const SSetPtr& original() const { return original_; }
    const SSetPtr& space() const { return space_; }
    const FacePoset& poset() const { return poset_; }

    int element_index(SimplexRef original) const { return poset_.index_of(original); }
    SimplexRef element(int index) const { return poset_.elements[index]; }
    /// The subdivision vertex sitting at element `index`.
    SimplexRef vertex_of_element(int index) const { return SimplexRef{0, index}; }
    /// Ref of the simplex for a strictly increasing chain of element indices.
    SimplexRef chain_simplex(const std::vector<int>& chain) const;
    /// The chain presenting a subdivision simplex.
    const std::vector<int>& chain_of(SimplexRef s) const { return chains_[s.dim][s.id]; }

private:
    SSetPtr original_, space_;
    FacePoset poset_;
    std::vector<std::vector<std::vector<int>>> chains_;
    std::map<std::vector<int>, SimplexRef> by_chain_;
};

/// Plain subdivision of the object.
SSetPtr sd(SSetPtr x);
SSetPtr sd_iter(SSetPtr x, int n);

/// Subdivision of a map between vertex-determined objects, via the induced
/// map of face posets (each simplex goes to the non-degenerate core of its
/// image).
SimplicialMap sd_map(const SimplicialMap& f);
SimplicialMap sd_iter_map(const SimplicialMap& f, int n);

} // namespace sdex

#endif
