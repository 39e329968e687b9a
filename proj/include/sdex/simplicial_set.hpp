#ifndef SDEX_SIMPLICIAL_SET_HPP
#define SDEX_SIMPLICIAL_SET_HPP

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sdex/ordinal.hpp"

namespace sdex {

/// Reference to a stored (non-degenerate) simplex: dimension + index.
struct SimplexRef {
    int dim = 0;
    int id = 0;
    auto operator<=>(const SimplexRef&) const = default;
};

/// An arbitrary simplex in normal form: the degeneracy operator `epi`
/// applied to the non-degenerate simplex `target`.  Every face table entry
/// and every map assignment is one of these.  A simplex is non-degenerate
/// exactly when `epi` is an identity.
struct GenSimplex {
    OrdinalMap epi;
    SimplexRef target;

    int dim() const { return epi.domain_size() - 1; }
    bool is_nondegenerate() const { return epi.is_identity(); }
    bool operator==(const GenSimplex&) const = default;
};

/// Canonical order used everywhere candidates or assignments are sorted:
/// by target dimension, then degeneracy operator, then target id.
bool gen_simplex_less(const GenSimplex& a, const GenSimplex& b);

struct ValidationReport {
    std::vector<std::string> problems;
    bool ok() const { return problems.empty(); }
};

/// A finite simplicial set presented by its non-degenerate simplices.
/// Faces are stored in Eilenberg-Zilber normal form, so all simplicial
/// operators are computable from the face table alone.
///
/// `dim_bound` is the dimension up to which the presentation is exhaustive.
/// A *complete* object has no non-degenerate simplices in any higher
/// dimension either; a truncated one (a nerve or Ex image cut off at
/// dim_bound) refuses, loudly, to answer questions above the bound.
class SimplicialSet {
public:
    explicit SimplicialSet(int dim_bound, bool complete = true);

    int dim_bound() const { return dim_bound_; }
    bool complete() const { return complete_; }
    /// Number of stored simplices in one dimension.
    int count(int dim) const;
    /// Largest dimension with a stored simplex (-1 if empty).
    int max_dim() const;
    int total_count() const;

    /// Append a simplex; faces[i] must be the normal form of its i-th face.
    /// Structural requirements (sizes, surjectivity of epis, existing
    /// targets) are enforced here; the simplicial identities are checked by
    /// validate().
    SimplexRef add_simplex(int dim, std::vector<GenSimplex> faces,
                           std::optional<std::string> label = std::nullopt);

    const GenSimplex& face(SimplexRef s, int i) const;
    const std::optional<std::string>& label(SimplexRef s) const;
    void set_label(SimplexRef s, std::string label);

    /// Normal form of op^*(s) for an arbitrary operator op: [m] -> [dim s].
    GenSimplex pull(const OrdinalMap& op, SimplexRef s) const;
    /// Normal form of op^*(g) for a generalized simplex.
    GenSimplex pull(const OrdinalMap& op, const GenSimplex& g) const;
    /// i-th face of a generalized simplex of dimension >= 1.
    GenSimplex face_of(const GenSimplex& g, int i) const;
    /// j-th vertex of a stored simplex.
    SimplexRef vertex(SimplexRef s, int j) const;
    std::vector<SimplexRef> vertices_of(SimplexRef s) const;

    /// All m-simplices (degenerate ones included) in canonical order.
    /// Throws TruncationError on a truncated object when m > dim_bound.
    std::vector<GenSimplex> all_simplices(int m) const;
    /// Count of the above without materializing.
    long long total_simplices(int m) const;

    void require_dim(int d, const char* who) const;

    /// Empty report iff the structure is a simplicial set: well-formed face
    /// records and the identities d_i d_j = d_{j-1} d_i for i < j.
    ValidationReport validate() const;

    bool operator==(const SimplicialSet&) const = default;

private:
    struct Simplex {
        std::vector<GenSimplex> faces;
        std::optional<std::string> label;
        bool operator==(const Simplex&) const = default;
    };

    GenSimplex pull_injective(const OrdinalMap& mono, SimplexRef s) const;

    int dim_bound_;
    bool complete_;
    std::vector<std::vector<Simplex>> grades_;
};

using SSetPtr = std::shared_ptr<const SimplicialSet>;

/// Structural identity, ignoring labels.  Used to decide whether two maps
/// are composable; label differences never affect the mathematics.
bool same_object(const SimplicialSet& a, const SimplicialSet& b);
bool same_object(const SSetPtr& a, const SSetPtr& b);

} // namespace sdex

#endif
