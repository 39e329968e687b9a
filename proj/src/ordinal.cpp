#include "sdex/ordinal.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sdex {

OrdinalMap::OrdinalMap(int codomain_size, std::vector<int> values)
    : codomain_size_(codomain_size), values_(std::move(values)) {
    if (codomain_size_ <= 0)
        throw std::invalid_argument("OrdinalMap: codomain must be nonempty");
    if (values_.empty())
        throw std::invalid_argument("OrdinalMap: domain must be nonempty");
    int prev = 0;
    for (int v : values_) {
        if (v < prev || v >= codomain_size_)
            throw std::invalid_argument("OrdinalMap: values must be weakly increasing and in range");
        prev = v;
    }
}

OrdinalMap OrdinalMap::identity(int size) {
    std::vector<int> v(size);
    for (int i = 0; i < size; ++i) v[i] = i;
    return OrdinalMap(size, std::move(v));
}

OrdinalMap OrdinalMap::coface(int k, int i) {
    if (k < 1 || i < 0 || i > k)
        throw std::invalid_argument("coface: need k >= 1 and 0 <= i <= k");
    std::vector<int> v(k);
    for (int t = 0; t < k; ++t) v[t] = t < i ? t : t + 1;
    return OrdinalMap(k + 1, std::move(v));
}

OrdinalMap OrdinalMap::codegeneracy(int k, int i) {
    if (k < 0 || i < 0 || i > k)
        throw std::invalid_argument("codegeneracy: need 0 <= i <= k");
    std::vector<int> v(k + 2);
    for (int t = 0; t <= k + 1; ++t) v[t] = t <= i ? t : t - 1;
    return OrdinalMap(k + 1, std::move(v));
}

OrdinalMap OrdinalMap::to_point(int domain_size) {
    return OrdinalMap(1, std::vector<int>(domain_size, 0));
}

bool OrdinalMap::is_identity() const {
    if (codomain_size_ != domain_size()) return false;
    for (int i = 0; i < domain_size(); ++i)
        if (values_[i] != i) return false;
    return true;
}

bool OrdinalMap::is_injective() const {
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] == values_[i - 1]) return false;
    return true;
}

bool OrdinalMap::is_surjective() const {
    if (values_.front() != 0 || values_.back() != codomain_size_ - 1) return false;
    for (size_t i = 1; i < values_.size(); ++i)
        if (values_[i] - values_[i - 1] > 1) return false;
    return true;
}

OrdinalFactorization OrdinalMap::epi_mono_factor() const {
    std::vector<int> image;   // distinct values, increasing
    std::vector<int> epi;     // position of each value in image
    for (int v : values_) {
        if (image.empty() || image.back() != v) image.push_back(v);
        epi.push_back(static_cast<int>(image.size()) - 1);
    }
    int r = static_cast<int>(image.size());
    return {OrdinalMap(r, std::move(epi)), OrdinalMap(codomain_size_, std::move(image))};
}

OrdinalMap compose(const OrdinalMap& f, const OrdinalMap& g) {
    if (g.codomain_size() != f.domain_size())
        throw std::invalid_argument("compose: codomain of inner map (" +
                                    std::to_string(g.codomain_size()) +
                                    ") != domain of outer map (" +
                                    std::to_string(f.domain_size()) + ")");
    std::vector<int> v(g.domain_size());
    for (int i = 0; i < g.domain_size(); ++i) v[i] = f(g(i));
    return OrdinalMap(f.codomain_size(), std::move(v));
}

std::vector<OrdinalMap> monotone_surjections(int m, int k) {
    std::vector<OrdinalMap> out;
    if (k > m || k < 0) return out;
    // A surjection [m] ->> [k] is determined by the k positions (out of m
    // steps) where the value increases.  Enumerate those subsets in
    // lexicographic order; this orders the value lists lexicographically too.
    std::vector<int> rise(k);
    for (int i = 0; i < k; ++i) rise[i] = i;
    while (true) {
        std::vector<int> vals(m + 1);
        int v = 0;
        size_t next = 0;
        vals[0] = 0;
        for (int step = 0; step < m; ++step) {
            if (next < rise.size() && rise[next] == step) { ++v; ++next; }
            vals[step + 1] = v;
        }
        out.emplace_back(k + 1, std::move(vals));
        // next k-combination of {0..m-1}
        int pos = k - 1;
        while (pos >= 0 && rise[pos] == m - k + pos) --pos;
        if (pos < 0) break;
        ++rise[pos];
        for (int j = pos + 1; j < k; ++j) rise[j] = rise[j - 1] + 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sdex
