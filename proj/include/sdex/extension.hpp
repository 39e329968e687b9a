#ifndef SDEX_EXTENSION_HPP
#define SDEX_EXTENSION_HPP

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// Right adjoint of subdivision, cut off at dimension K: the m-simplices of
/// the result are the simplicial maps Sd(Δ_m) -> X, with simplicial
/// operators given by precomposition along subdivided cofaces and
/// codegeneracies.  Hom-elements that factor through a subdivided
/// codegeneracy are recognized as degenerate and stored in normal form over
/// their core.  The result is truncated (complete() is false): the functor
/// keeps producing fresh simplices above any cut-off.
SSetPtr ex_truncated(SSetPtr x, int K);

/// Functorial action: postcomposition sends the hom-element g: Sd(Δ_m) -> X
/// to f . g, giving ex_truncated(X, K) -> ex_truncated(Y, K) for f: X -> Y.
SimplicialMap ex_truncated_map(const SimplicialMap& f, int K);

/// The unit X -> ex_truncated(X, K): an m-simplex goes to its characteristic
/// map precomposed with the last-vertex projection.  Levelwise injective,
/// the identity correspondence on vertices.  Requires max_dim(X) <= K.
SimplicialMap ex_eta(SSetPtr x, int K);

/// Last-vertex projection Sd(Δ_m) -> Δ_m: the vertex sitting at a face is
/// sent to the largest vertex of that face.
SimplicialMap last_vertex_map(int m);

} // namespace sdex

#endif
