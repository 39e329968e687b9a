#ifndef SDEX_CELLS_HPP
#define SDEX_CELLS_HPP

#include <map>
#include <string>
#include <vector>

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// The standard k-simplex.  Non-degenerate d-simplices are the (d+1)-element
/// subsets of {0..k}, listed in lexicographic order; vertices carry labels
/// "0".."k".
SSetPtr standard_simplex(int k);

/// One-point simplicial set.
SSetPtr point();

struct SubComplex {
    SSetPtr space;
    SimplicialMap inclusion; // into standard_simplex(k)
};

/// Boundary of the standard k-simplex (k >= 1).
SubComplex boundary(int k);

/// Horn: the boundary minus the face opposite vertex i (k >= 1, 0 <= i <= k).
SubComplex horn(int k, int i);

/// Vertex set of the subset simplex with a given ref inside standard_simplex,
/// boundary or horn spaces (all of whose simplices are vertex-determined).
std::vector<int> simplex_vertex_labels(const SimplicialSet& x, SimplexRef s);

/// The map of standard simplices induced by a weakly increasing vertex
/// function; the target is standard_simplex(values.back()).
/// Example: values (0,1,2,2,...,2) is the collapse retraction used to push
/// paths off the interior of a subdivided simplex.
SimplicialMap map_from_vertex_function(int k, const std::vector<int>& values);

/// The simplicial map X -> Y determined by a function on vertices, when one
/// exists.  Both objects must be vertex-determined (see subdivision.hpp for
/// the check); throws std::invalid_argument if some simplex's image vertex
/// list is not realized in order by a simplex of Y.
SimplicialMap induced_vertex_map(SSetPtr x, SSetPtr y, const std::vector<int>& vertex_image);

struct PushoutResult {
    SSetPtr space;
    SimplicialMap from_x; // X -> P, identity on ids
    SimplicialMap from_b; // B -> P
};

/// Pushout of X <-f- A -i-> B where i is a monomorphism.  Simplices of X
/// keep their ids; simplices of B outside the image of i are appended in
/// (dim, id) order.
PushoutResult pushout(const SimplicialMap& i, const SimplicialMap& f);

} // namespace sdex

#endif
