#ifndef SDEX_CATEGORY_HPP
#define SDEX_CATEGORY_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdex/simplicial_set.hpp"
#include "sdex/subdivision.hpp"

namespace sdex {

/// A finite category: objects 0..n-1, arrows with source/target, a total
/// composition table on composable pairs, and an identity per object.
class FiniteCategory {
public:
    struct Arrow {
        int src, dst;
    };

    /// compose_table[g * arrows + f] = g . f (f first), or -1 if not composable.
    FiniteCategory(int num_objects, std::vector<Arrow> arrows, std::vector<int> identities,
                   std::vector<int> compose_table);

    /// One-object category from a monoid multiplication table:
    /// table[g][f] = index of g . f; element 0 need not be the unit
    /// (the unit is located by its laws).
    static FiniteCategory from_monoid(const std::vector<std::string>& names,
                                      const std::vector<std::vector<int>>& table);
    /// The category of a finite poset: one arrow per related pair.
    static FiniteCategory from_poset_matrix(const std::vector<std::vector<char>>& leq,
                                            const std::vector<std::string>& labels = {});

    int num_objects() const { return num_objects_; }
    int num_arrows() const { return static_cast<int>(arrows_.size()); }
    const Arrow& arrow(int a) const { return arrows_[a]; }
    int identity(int obj) const { return identities_[obj]; }
    bool is_identity(int a) const;
    /// g . f, or -1 when dst(f) != src(g).
    int compose(int g, int f) const { return compose_[g * num_arrows() + f]; }

    const std::string& object_label(int o) const { return object_labels_[o]; }
    const std::string& arrow_label(int a) const { return arrow_labels_[a]; }
    void set_object_label(int o, std::string l) { object_labels_[o] = std::move(l); }
    void set_arrow_label(int a, std::string l) { arrow_labels_[a] = std::move(l); }

    /// Identity laws, typing of the table, associativity on all triples.
    ValidationReport validate() const;

private:
    int num_objects_;
    std::vector<Arrow> arrows_;
    std::vector<int> identities_;
    std::vector<int> compose_;
    std::vector<std::string> object_labels_, arrow_labels_;
};

bool is_groupoid(const FiniteCategory& c);

/// Witness for a failed left-calculus-of-fractions condition: either a span
/// that completes to no commuting square, or an equalized parallel pair that
/// no arrow coequalizes.
struct FractionsWitness {
    enum class Kind { span, parallel_pair } kind;
    int f = -1, g = -1; // the span f,g or the parallel pair u,v
    int w = -1;         // the equalizing arrow (pair case)
};

struct FractionsResult {
    bool ok = true;
    std::optional<FractionsWitness> witness;
};

/// The two Gabriel-Zisman conditions with every arrow inverted:
/// (i) every span completes to a commuting square;
/// (ii) u.w = v.w implies some z has z.u = z.v.
FractionsResult left_fractions_check(const FiniteCategory& c);

/// A finite poset on elements 0..n-1.
class FinitePoset {
public:
    FinitePoset(std::vector<std::vector<char>> leq, std::vector<std::string> labels = {});

    int size() const { return static_cast<int>(leq_.size()); }
    bool leq(int a, int b) const { return leq_[a][b] != 0; }
    bool less(int a, int b) const { return a != b && leq(a, b); }
    const std::string& label(int e) const { return labels_[e]; }

    ValidationReport validate() const; // reflexive, antisymmetric, transitive

private:
    std::vector<std::vector<char>> leq_;
    std::vector<std::string> labels_;
};

/// Poset of the non-degenerate simplices of a complex, ordered by face-ness,
/// with brace-nested vertex-list labels.
FinitePoset poset_of_complex(const SimplicialSet& x);

/// The (n-1)-fold iterated face poset of the face poset of the standard
/// k-simplex: for n >= 1 this is the poset P with Sd^n(Delta_k) = nerve of P.
FinitePoset cat_sd_simplex(int n, int k);

/// Subposet pair for the horn inclusion at the same level: element j of
/// `sub` embeds as element embed[j] of `big`.
struct PosetInclusion {
    FinitePoset sub, big;
    std::vector<int> embed;
};
PosetInclusion cat_sd_horn(int n, int k, int i);

/// K-truncated nerve: non-degenerate m-simplices are the composable strings
/// of m non-identity arrows; inner faces compose (with a degeneracy record
/// when a composite collapses to an identity).
SSetPtr nerve(const FiniteCategory& c, int K);

/// A functor P -> C presented as an object per element and an arrow per
/// related pair (u <= v), stored as arrow_of[u * n + v].
struct PosetFunctor {
    std::vector<int> object_of;
    std::vector<int> arrow_of;
};

struct InjectivityResult {
    bool ok = true;
    long long functors_checked = 0;
    std::optional<PosetFunctor> failure; // non-extendable functor on `sub`
    int fail_k = -1, fail_i = -1;        // offending horn (batch check only)
};

/// Does every functor sub -> C extend along the embedding to big -> C?
/// Exhaustive: enumerates functors in canonical depth-first order (branching
/// only on cover arrows; composites are forced) and searches an extension
/// for each, reusing the previous stage's extension as a warm start.
/// budget = max functors visited (0 = unlimited); exceeding throws BudgetError.
InjectivityResult poset_injectivity(const FinitePoset& sub, const FinitePoset& big,
                                    const std::vector<int>& embed, const FiniteCategory& c,
                                    long long budget = 0);

/// Batch form: injectivity of C with respect to every
/// cat_sd_horn(n, k, i) -> cat_sd_simplex(n, k) with k <= k_max.
InjectivityResult poset_injectivity_check(const FiniteCategory& c, int n, int k_max,
                                          long long budget = 0);

/// Recognition of a complex as the nerve of a category: objects = vertices,
/// arrows = 1-simplices, composition read off unique inner-horn fillers,
/// then an exact dimensionwise comparison against the rebuilt nerve.
/// string_of maps each non-degenerate simplex to its spine of arrow ids
/// (identity arrows for vertices' degeneracies never appear).
struct NerveRecognition {
    FiniteCategory cat;
    std::vector<std::vector<std::vector<int>>> string_of; // [dim][id] -> arrow ids
};
std::optional<NerveRecognition> recognize_nerve(const SimplicialSet& x);

} // namespace sdex

#endif
