#ifndef SDEX_HOM_SEARCH_HPP
#define SDEX_HOM_SEARCH_HPP

#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// Per-dimension index of all simplices of a codomain (degenerate ones
/// included): the sorted element list of each dimension plus buckets keyed
/// by face-rank tuples, so the candidate images with prescribed faces come
/// from one hash lookup.  Levels are built lazily.
class CodomainIndex {
public:
    explicit CodomainIndex(SSetPtr x);

    const SSetPtr& space() const { return x_; }
    /// All m-simplices in canonical (dimension, operator, id) order.
    const std::vector<GenSimplex>& elems(int m) const;
    /// Position of g in elems(m); throws if absent.
    int rank_of(int m, const GenSimplex& g) const;
    /// Ranks of the m-simplices whose faces have the given ranks in
    /// elems(m-1); null when no simplex matches.  For m = 0 pass {}.
    const std::vector<int>* bucket(int m, const std::vector<int>& face_ranks) const;
    /// Rank in elems(m-1) of the j-th face of elems(m)[r] (m >= 1).
    int face_rank(int m, int r, int j) const;
    /// Ranks of the m-simplices whose j-th face has the given rank; null
    /// when none does (m >= 1).  Built lazily on first use.
    const std::vector<int>* with_face(int m, int j, int face_rank) const;

private:
    struct VecHash {
        std::size_t operator()(const std::vector<int>& v) const;
    };
    struct Level {
        std::vector<GenSimplex> elems;
        std::unordered_map<std::vector<int>, std::vector<int>, VecHash> buckets;
        std::vector<std::vector<int>> face_ranks; // per element, its bucket key
        std::vector<std::unordered_map<int, std::vector<int>>> by_face; // [j]
    };
    void ensure(int m) const;

    SSetPtr x_;
    // unique_ptr keeps each Level at a stable address while levels_ grows,
    // so references handed out by elems()/bucket() survive later ensure()s.
    mutable std::vector<std::unique_ptr<Level>> levels_;
};

using IndexPtr = std::shared_ptr<const CodomainIndex>;

/// Backtracking enumeration of the simplicial maps A -> X.  Variables are
/// the non-degenerate simplices of A in (dimension, id) order; candidates
/// for each are scanned in canonical order, so solutions stream out in a
/// deterministic lexicographic order.  Instances are reusable: pins set by
/// fix() persist across solve() calls until clear_fixed().
class HomSearch {
public:
    HomSearch(SSetPtr domain, IndexPtr index);

    const SSetPtr& domain() const { return domain_; }
    const IndexPtr& index() const { return index_; }

    int var_count() const { return static_cast<int>(vars_.size()); }
    int var_of(SimplexRef a) const;
    SimplexRef ref_of(int var) const { return vars_[var].ref; }

    /// Pin the image of one domain simplex.  The value must be a simplex of
    /// the codomain of the right dimension.
    void fix(SimplexRef a, const GenSimplex& value);
    /// Same, with the value's rank in index->elems already known.
    void fix_ranked(SimplexRef a, const GenSimplex& value, int rank);
    void clear_fixed();
    /// Extra admissibility predicate applied to every candidate (used for
    /// projection constraints in lifting squares).  Keep it cheap.
    void set_filter(std::function<bool(SimplexRef, const GenSimplex&)> filter);
    /// Switch solve() to constraint-driven variable selection: the next
    /// variable branched on is one with the most already-assigned faces, its
    /// candidates come from face-incidence lists instead of full scans, and
    /// face values forced by a choice are propagated instead of branched.
    /// Visits exactly the maps the default order visits, in a different (but
    /// deterministic) order.  Essential when the codomain has many simplices
    /// and the domain has unconstrained vertices.
    void set_adaptive(bool on) { adaptive_ = on; }

    /// Depth-first enumeration.  visit sees the image of every variable plus
    /// its rank in the index, and returns false to stop early.  Returns the
    /// number of complete maps visited; budget > 0 throws BudgetError when
    /// more than budget maps would be visited.
    using Visit = std::function<bool(const std::vector<GenSimplex>&, const std::vector<int>&)>;
    long long solve(const Visit& visit, long long budget = 0) const;

    std::optional<SimplicialMap> first() const;
    std::vector<SimplicialMap> all(long long budget = 0) const;
    long long count(long long budget = 0) const;

    /// Package a solution vector as a map.
    SimplicialMap to_map(const std::vector<GenSimplex>& values) const;

private:
    struct Var {
        SimplexRef ref;
        // face records of the domain simplex: target var + operator
        std::vector<int> face_var;
        std::vector<OrdinalMap> face_epi;
        std::optional<GenSimplex> fixed;
        int fixed_rank = -1;
    };
    bool dfs(int vi, std::vector<GenSimplex>& values, std::vector<int>& ranks,
             std::vector<std::vector<int>>& keys, long long& visited, long long budget,
             const Visit& visit) const;
    long long solve_adaptive(const Visit& visit, long long budget) const;

    SSetPtr domain_;
    IndexPtr index_;
    std::vector<Var> vars_;
    std::vector<int> offsets_; // var index of (dim, 0)
    std::vector<std::vector<std::pair<int, int>>> cofaces_; // var -> (covar, face slot)
    std::function<bool(SimplexRef, const GenSimplex&)> filter_;
    bool adaptive_ = false;
};

/// All simplicial maps A -> X in canonical order.
std::vector<SimplicialMap> enumerate_maps(SSetPtr a, SSetPtr x, long long budget = 0);
long long count_maps(SSetPtr a, SSetPtr x, long long budget = 0);

/// First extension g of f along the monomorphism i (g . i = f), if any.
std::optional<SimplicialMap> extend(const SimplicialMap& f, const SimplicialMap& i);
std::optional<SimplicialMap> extend(const SimplicialMap& f, const SimplicialMap& i,
                                    const IndexPtr& index);
std::vector<SimplicialMap> all_extensions(const SimplicialMap& f, const SimplicialMap& i,
                                          long long budget = 0);

/// A subdivided horn inclusion Sd^n(horn(k,i)) -> Sd^n(simplex k).
struct HornProblem {
    int n = 0, k = 0, i = 0;
    SSetPtr horn_space, simplex_space;
    SimplicialMap inclusion;
};
HornProblem horn_problem(int n, int k, int i);

/// Certificate for a failed fibrancy check: an attaching map with no
/// extension along the (subdivided) horn inclusion.
struct HornWitness {
    int n = 0, k = 0, i = 0;
    SimplicialMap attaching;
};

struct FibResult {
    bool ok = true;
    int n = 0, K = 0;
    long long maps_checked = 0;
    std::optional<HornWitness> failure;
};

/// Kan condition up to dimension K: every horn Λ^i_k -> X with k <= K
/// extends.  True is always "true up to K".
FibResult is_kan_up_to(SSetPtr x, int K, long long budget = 0);

/// Lifting against all n-fold subdivided horn inclusions with k <= K
/// (n = 0 is the Kan condition).  For a target recognized as the nerve of a
/// category the check runs through functor extension over the corresponding
/// face posets (same answer by adjointness, far fewer branches); otherwise
/// it enumerates attaching maps directly.  maps_checked counts attaching
/// maps (or functors on the poset route).
FibResult is_fib_n(SSetPtr x, int n, int K, long long budget = 0);

/// Counterexample square for a failed right-lifting-property check.
struct SquareWitness {
    int n = 0, k = 0, i = 0;
    SimplicialMap f; // A -> X
    SimplicialMap g; // B -> Y
};

struct RlpResult {
    bool ok = true;
    long long squares_checked = 0;
    std::optional<SquareWitness> failure;
};

/// Does p: X -> Y lift against the monomorphism i: A -> B?  Squares are
/// enumerated in canonical order (f, then g), so a reported counterexample
/// is the least one.  K is the declared dimension cap and must cover dim B.
RlpResult has_rlp(const SimplicialMap& p, const SimplicialMap& i, int K, long long budget = 0);

/// Map form: p is fib_n when it lifts against every n-fold subdivided horn
/// inclusion with k <= K.  The failure square records the offending horn.
RlpResult is_fib_n_map(const SimplicialMap& p, int n, int K, long long budget = 0);

} // namespace sdex

#endif
