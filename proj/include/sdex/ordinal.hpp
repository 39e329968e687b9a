#ifndef SDEX_ORDINAL_HPP
#define SDEX_ORDINAL_HPP

#include <compare>
#include <vector>

namespace sdex {

struct OrdinalFactorization;

/// A weakly monotone map [m] -> [n] between finite ordinals, where
/// [m] = {0, 1, ..., m}.  Stored as the list of values together with the
/// codomain size n+1 (the values alone only bound the codomain from below).
class OrdinalMap {
public:
    /// values[i] = image of i; must be weakly increasing and < codomain_size.
    OrdinalMap(int codomain_size, std::vector<int> values);

    static OrdinalMap identity(int size);
    /// Coface d_i : [k-1] -> [k], the injection missing i.  Requires k >= 1.
    static OrdinalMap coface(int k, int i);
    /// Codegeneracy s_i : [k+1] -> [k], the surjection hitting i twice.
    static OrdinalMap codegeneracy(int k, int i);
    /// The unique map [m] -> [0].
    static OrdinalMap to_point(int domain_size);

    int domain_size() const { return static_cast<int>(values_.size()); }
    int codomain_size() const { return codomain_size_; }
    int operator()(int i) const { return values_[i]; }
    const std::vector<int>& values() const { return values_; }

    bool is_identity() const;
    bool is_injective() const;
    bool is_surjective() const;

    /// The unique epi-mono factorization in the simplex category.
    OrdinalFactorization epi_mono_factor() const;

    auto operator<=>(const OrdinalMap&) const = default;

private:
    int codomain_size_;
    std::vector<int> values_;
};

struct OrdinalFactorization {
    OrdinalMap epi;  // surjection [m] ->> [r]
    OrdinalMap mono; // injection  [r] >-> [n]
};

/// f after g: (f . g)(x) = f(g(x)).  Requires g.codomain_size == f.domain_size.
OrdinalMap compose(const OrdinalMap& f, const OrdinalMap& g);

/// All monotone surjections [m] ->> [k] in lexicographic order of values.
std::vector<OrdinalMap> monotone_surjections(int m, int k);

} // namespace sdex

#endif
