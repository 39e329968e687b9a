#include "sdex/category.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>

#include "sdex/cells.hpp"
#include "sdex/errors.hpp"

namespace sdex {

FiniteCategory::FiniteCategory(int num_objects, std::vector<Arrow> arrows,
                               std::vector<int> identities, std::vector<int> compose_table)
    : num_objects_(num_objects),
      arrows_(std::move(arrows)),
      identities_(std::move(identities)),
      compose_(std::move(compose_table)) {
    const int a = num_arrows();
    if (num_objects_ < 0 || static_cast<int>(identities_.size()) != num_objects_ ||
        static_cast<int>(compose_.size()) != a * a)
        throw std::invalid_argument("FiniteCategory: malformed tables");
    for (const Arrow& ar : arrows_)
        if (ar.src < 0 || ar.src >= num_objects_ || ar.dst < 0 || ar.dst >= num_objects_)
            throw std::invalid_argument("FiniteCategory: arrow endpoints out of range");
    object_labels_.resize(num_objects_);
    for (int o = 0; o < num_objects_; ++o) object_labels_[o] = "x" + std::to_string(o);
    arrow_labels_.resize(a);
    for (int i = 0; i < a; ++i) arrow_labels_[i] = "a" + std::to_string(i);
}

FiniteCategory FiniteCategory::from_monoid(const std::vector<std::string>& names,
                                           const std::vector<std::vector<int>>& table) {
    const int m = static_cast<int>(table.size());
    if (m == 0) throw std::invalid_argument("from_monoid: empty table");
    std::vector<int> comp(m * m, -1);
    for (int g = 0; g < m; ++g) {
        if (static_cast<int>(table[g].size()) != m)
            throw std::invalid_argument("from_monoid: ragged table");
        for (int f = 0; f < m; ++f) {
            if (table[g][f] < 0 || table[g][f] >= m)
                throw std::invalid_argument("from_monoid: entry out of range");
            comp[g * m + f] = table[g][f];
        }
    }
    int unit = -1;
    for (int e = 0; e < m; ++e) {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x) ok = table[e][x] == x && table[x][e] == x;
        if (ok) {
            unit = e;
            break;
        }
    }
    if (unit < 0) throw std::invalid_argument("from_monoid: no two-sided unit");
    FiniteCategory c(1, std::vector<Arrow>(m, Arrow{0, 0}), {unit}, std::move(comp));
    for (int i = 0; i < m && i < static_cast<int>(names.size()); ++i) c.set_arrow_label(i, names[i]);
    c.set_object_label(0, "*");
    return c;
}

FiniteCategory FiniteCategory::from_poset_matrix(const std::vector<std::vector<char>>& leq,
                                                 const std::vector<std::string>& labels) {
    const int n = static_cast<int>(leq.size());
    std::vector<Arrow> arrows;
    std::map<std::pair<int, int>, int> id_of;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (leq[a][b]) {
                id_of[{a, b}] = static_cast<int>(arrows.size());
                arrows.push_back({a, b});
            }
    const int m = static_cast<int>(arrows.size());
    std::vector<int> ids(n, -1), comp(m * m, -1);
    for (int o = 0; o < n; ++o) {
        auto it = id_of.find({o, o});
        if (it == id_of.end()) throw std::invalid_argument("from_poset_matrix: not reflexive");
        ids[o] = it->second;
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f)
            if (arrows[f].dst == arrows[g].src) {
                auto it = id_of.find({arrows[f].src, arrows[g].dst});
                if (it == id_of.end())
                    throw std::invalid_argument("from_poset_matrix: not transitive");
                comp[g * m + f] = it->second;
            }
    FiniteCategory c(n, std::move(arrows), std::move(ids), std::move(comp));
    for (int o = 0; o < n && o < static_cast<int>(labels.size()); ++o) c.set_object_label(o, labels[o]);
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrow(a);
        c.set_arrow_label(a, c.object_label(ar.src) + "<=" + c.object_label(ar.dst));
    }
    return c;
}

bool FiniteCategory::is_identity(int a) const {
    return identities_[arrows_[a].src] == a;
}

ValidationReport FiniteCategory::validate() const {
    ValidationReport rep;
    const int m = num_arrows();
    for (int o = 0; o < num_objects_; ++o) {
        int e = identities_[o];
        if (e < 0 || e >= m || arrows_[e].src != o || arrows_[e].dst != o)
            rep.problems.push_back("identity of object " + std::to_string(o) + " is mistyped");
    }
    for (int g = 0; g < m; ++g)
        for (int f = 0; f < m; ++f) {
            int gf = compose(g, f);
            bool composable = arrows_[f].dst == arrows_[g].src;
            if (composable != (gf >= 0)) {
                rep.problems.push_back("composability mismatch at (" + std::to_string(g) + "," +
                                       std::to_string(f) + ")");
                continue;
            }
            if (gf >= 0 && (arrows_[gf].src != arrows_[f].src || arrows_[gf].dst != arrows_[g].dst))
                rep.problems.push_back("composite mistyped at (" + std::to_string(g) + "," +
                                       std::to_string(f) + ")");
        }
    for (int f = 0; f < m; ++f) {
        if (compose(identities_[arrows_[f].dst], f) != f || compose(f, identities_[arrows_[f].src]) != f)
            rep.problems.push_back("identity law fails at arrow " + std::to_string(f));
    }
    for (int h = 0; h < m; ++h)
        for (int g = 0; g < m; ++g) {
            if (arrows_[g].dst != arrows_[h].src) continue;
            int hg = compose(h, g);
            for (int f = 0; f < m; ++f) {
                if (arrows_[f].dst != arrows_[g].src) continue;
                if (compose(hg, f) != compose(h, compose(g, f)))
                    rep.problems.push_back("associativity fails at (" + std::to_string(h) + "," +
                                           std::to_string(g) + "," + std::to_string(f) + ")");
            }
        }
    return rep;
}

bool is_groupoid(const FiniteCategory& c) {
    for (int a = 0; a < c.num_arrows(); ++a) {
        const auto& ar = c.arrow(a);
        bool invertible = false;
        for (int b = 0; b < c.num_arrows() && !invertible; ++b) {
            const auto& br = c.arrow(b);
            if (br.src != ar.dst || br.dst != ar.src) continue;
            invertible = c.compose(b, a) == c.identity(ar.src) && c.compose(a, b) == c.identity(ar.dst);
        }
        if (!invertible) return false;
    }
    return true;
}

FractionsResult left_fractions_check(const FiniteCategory& c) {
    const int m = c.num_arrows();
    // (i) spans complete to commuting squares
    for (int f = 0; f < m; ++f)
        for (int g = 0; g < m; ++g) {
            if (c.arrow(f).src != c.arrow(g).src) continue;
            bool done = false;
            for (int u = 0; u < m && !done; ++u) {
                if (c.arrow(u).src != c.arrow(f).dst) continue;
                for (int v = 0; v < m && !done; ++v) {
                    if (c.arrow(v).src != c.arrow(g).dst) continue;
                    if (c.arrow(u).dst != c.arrow(v).dst) continue;
                    done = c.compose(u, f) == c.compose(v, g);
                }
            }
            if (!done)
                return {false, FractionsWitness{FractionsWitness::Kind::span, f, g, -1}};
        }
    // (ii) equalized pairs get coequalized
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            if (c.arrow(u).src != c.arrow(v).src || c.arrow(u).dst != c.arrow(v).dst) continue;
            for (int w = 0; w < m; ++w) {
                if (c.arrow(w).dst != c.arrow(u).src) continue;
                if (c.compose(u, w) != c.compose(v, w)) continue;
                bool done = false;
                for (int z = 0; z < m && !done; ++z) {
                    if (c.arrow(z).src != c.arrow(u).dst) continue;
                    done = c.compose(z, u) == c.compose(z, v);
                }
                if (!done)
                    return {false, FractionsWitness{FractionsWitness::Kind::parallel_pair, u, v, w}};
                break; // one equalizing w suffices; a coequalizer serves all
            }
        }
    return {true, std::nullopt};
}

FinitePoset::FinitePoset(std::vector<std::vector<char>> leq, std::vector<std::string> labels)
    : leq_(std::move(leq)), labels_(std::move(labels)) {
    const int n = size();
    for (const auto& row : leq_)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("FinitePoset: ragged relation");
    labels_.resize(n);
    for (int e = 0; e < n; ++e)
        if (labels_[e].empty()) labels_[e] = "e" + std::to_string(e);
}

ValidationReport FinitePoset::validate() const {
    ValidationReport rep;
    const int n = size();
    for (int a = 0; a < n; ++a)
        if (!leq(a, a)) rep.problems.push_back("not reflexive at " + std::to_string(a));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (a != b && leq(a, b) && leq(b, a))
                rep.problems.push_back("antisymmetry fails at (" + std::to_string(a) + "," +
                                       std::to_string(b) + ")");
            if (!leq(a, b)) continue;
            for (int c = 0; c < n; ++c)
                if (leq(b, c) && !leq(a, c))
                    rep.problems.push_back("transitivity fails at (" + std::to_string(a) + "," +
                                           std::to_string(b) + "," + std::to_string(c) + ")");
        }
    return rep;
}

FinitePoset poset_of_complex(const SimplicialSet& x) {
    FacePoset p = face_poset(x);
    std::vector<std::string> labels(p.size());
    auto vertex_name = [&](int vid) {
        auto l = x.label(SimplexRef{0, vid});
        return l ? *l : "v" + std::to_string(vid);
    };
    for (int e = 0; e < p.size(); ++e) {
        if (p.elements[e].dim == 0) {
            labels[e] = vertex_name(p.elements[e].id);
        } else {
            std::string s = "{";
            for (std::size_t j = 0; j < p.vertex_sets[e].size(); ++j) {
                if (j) s += ' ';
                s += vertex_name(p.vertex_sets[e][j]);
            }
            labels[e] = s + "}";
        }
    }
    std::vector<std::vector<char>> leq = p.leq;
    return FinitePoset(std::move(leq), std::move(labels));
}

FinitePoset cat_sd_simplex(int n, int k) {
    if (n < 1) throw std::invalid_argument("cat_sd_simplex: requires n >= 1");
    return poset_of_complex(*sd_iter(standard_simplex(k), n - 1));
}

PosetInclusion cat_sd_horn(int n, int k, int i) {
    if (n < 1) throw std::invalid_argument("cat_sd_horn: requires n >= 1");
    SubComplex h = horn(k, i);
    SSetPtr a = sd_iter(h.space, n - 1);
    SSetPtr b = sd_iter(standard_simplex(k), n - 1);
    SimplicialMap inc = sd_iter_map(h.inclusion, n - 1);
    FacePoset pa = face_poset(*a), pb = face_poset(*b);
    std::vector<int> embed(pa.size());
    for (int e = 0; e < pa.size(); ++e)
        embed[e] = pb.index_of(inc.at(pa.elements[e]).target);
    return PosetInclusion{poset_of_complex(*a), poset_of_complex(*b), std::move(embed)};
}

SSetPtr nerve(const FiniteCategory& c, int K) {
    if (K < 0) throw std::invalid_argument("nerve: negative truncation");
    auto out = std::make_shared<SimplicialSet>(K, /*complete=*/false);
    std::vector<int> nonid;
    for (int a = 0; a < c.num_arrows(); ++a)
        if (!c.is_identity(a)) nonid.push_back(a);

    // strings[d] = identity-free composable strings, lexicographic
    std::vector<std::vector<std::vector<int>>> strings(K + 1);
    std::vector<std::map<std::vector<int>, int>> index(K + 1);
    for (int o = 0; o < c.num_objects(); ++o) {
        index[0].emplace(std::vector<int>{o}, o); // dim-0 keyed by object
        strings[0].push_back({o});
        out->add_simplex(0, {}, c.object_label(o));
    }
    for (int d = 1; d <= K; ++d) {
        for (const auto& prefix : strings[d - 1]) {
            for (int a : nonid) {
                if (d == 1) {
                    // prefix is a single object
                    if (c.arrow(a).src != prefix[0]) continue;
                    std::vector<int> s{a};
                    std::vector<GenSimplex> faces{
                        {OrdinalMap::identity(1), {0, c.arrow(a).dst}},
                        {OrdinalMap::identity(1), {0, c.arrow(a).src}}};
                    int id = out->add_simplex(1, std::move(faces), c.arrow_label(a)).id;
                    index[1].emplace(s, id);
                    strings[1].push_back(std::move(s));
                    continue;
                }
                if (c.arrow(a).src != c.arrow(prefix.back()).dst) continue;
                std::vector<int> s = prefix;
                s.push_back(a);
                std::vector<GenSimplex> faces;
                for (int i = 0; i <= d; ++i) {
                    if (i == 0 || i == d) {
                        std::vector<int> sub(s.begin() + (i == 0 ? 1 : 0),
                                             s.end() - (i == 0 ? 0 : 1));
                        faces.push_back({OrdinalMap::identity(d), {d - 1, index[d - 1].at(sub)}});
                    } else {
                        int comp = c.compose(s[i], s[i - 1]);
                        std::vector<int> sub;
                        for (int j = 0; j < d; ++j) {
                            if (j == i - 1) {
                                if (!c.is_identity(comp)) sub.push_back(comp);
                            } else if (j != i) {
                                sub.push_back(s[j]);
                            }
                        }
                        if (c.is_identity(comp)) {
                            int id = sub.empty() ? c.arrow(comp).src : index[d - 2].at(sub);
                            faces.push_back({OrdinalMap::codegeneracy(d - 2, i - 1), {d - 2, id}});
                        } else {
                            faces.push_back({OrdinalMap::identity(d), {d - 1, index[d - 1].at(sub)}});
                        }
                    }
                }
                std::string lab = c.arrow_label(s[0]);
                for (int j = 1; j < d; ++j) lab += "|" + c.arrow_label(s[j]);
                int id = out->add_simplex(d, std::move(faces), lab).id;
                index[d].emplace(s, id);
                strings[d].push_back(std::move(s));
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Functor enumeration / extension over finite posets.
// Variables are one object per element (in a fixed linear extension) and one
// arrow per strict pair.  Within an element's phase an arrow is forced as
// soon as one route through an already-assigned intermediate exists, a free
// arrow with a known route equation draws its candidates from a left-division
// table instead of trying every typed arrow, and every remaining route
// becomes a standalone equality check the moment both of its legs exist, so
// inconsistent branches are pruned at the earliest possible depth; branching
// happens only on objects and cover arrows, in descending order of the lower
// element, so the leaf order is independent of where the forced arrows and
// checks are spliced in.
// ---------------------------------------------------------------------------

namespace {

struct Plan {
    enum Kind : unsigned char { kObject, kFreeArrow, kDivArrow, kForcedArrow, kFixed, kCheck };
    struct Step {
        Kind kind;
        int slot;            // slot assigned (kCheck: slot compared against)
        int a = -1, b = -1;  // route slots lo/hi (kForcedArrow, kCheck);
                             // src/dst object slots (kFreeArrow);
                             // cross/target slots (kDivArrow)
        int fixed_from = -1; // sub-side slot feeding a fixed step
    };
    std::vector<Step> steps;
    std::vector<int> topo;        // elements in assignment order
    std::vector<int> pair_slot;   // u * n + v -> slot
    std::vector<int> phase_of;    // step -> opening step of its element's phase
    int n = 0;
    int total_slots = 0;
    int first_branch = 0;         // first kObject/kFreeArrow step index
    int last_branch = -1;         // last kObject/kFreeArrow step index
};

/// Linear extension by number of elements below, ties by id.  For extension
/// plans the free (non-fixed) elements are postponed within each level so
/// that branching happens as late as possible: the enumeration order of sub
/// functors never depends on this, only the shape of the extension search.
std::vector<int> linear_extension(const FinitePoset& p,
                                  const std::vector<int>& image_to_sub_slot) {
    std::vector<int> order(p.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> below(p.size(), 0);
    for (int a = 0; a < p.size(); ++a)
        for (int b = 0; b < p.size(); ++b)
            if (p.less(b, a)) ++below[a];
    auto fixed = [&](int e) { return !image_to_sub_slot.empty() && image_to_sub_slot[e] >= 0; };
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (below[a] != below[b]) return below[a] < below[b];
        return fixed(a) && !fixed(b);
    });
    return order;
}

/// For extension plans, big_to_sub maps each element to the sub element fixed
/// onto it (-1 = free), and sub_pair_slot/sub_n give the sub plan's pair slot
/// numbering so fixed pairs know which sub slot feeds them.  Pass empty / 0
/// for a plain enumeration plan.
Plan make_plan(const FinitePoset& p, const std::vector<int>& big_to_sub,
               const std::vector<int>& sub_pair_slot, int sub_n) {
    Plan plan;
    plan.n = p.size();
    plan.topo = linear_extension(p, big_to_sub);
    plan.pair_slot.assign(plan.n * plan.n, -1);
    plan.total_slots = plan.n;

    // sub-side slot feeding each slot of this plan (-1 = free)
    std::vector<int> slot_fixed(plan.n, -1);
    if (!big_to_sub.empty())
        for (int e = 0; e < plan.n; ++e) slot_fixed[e] = big_to_sub[e];
    auto fixed_of = [&](int slot) { return slot_fixed[slot]; };

    for (int idx = 0; idx < plan.n; ++idx) {
        int e = plan.topo[idx];
        const int opener = static_cast<int>(plan.steps.size());
        {
            Plan::Step st;
            st.slot = e;
            if (int fs = fixed_of(e); fs >= 0) {
                st.kind = Plan::kFixed;
                st.fixed_from = fs;
            } else {
                st.kind = Plan::kObject;
            }
            plan.steps.push_back(st);
        }
        // lower elements of e in descending assignment order
        std::vector<int> lowers;
        for (int j = idx - 1; j >= 0; --j)
            if (p.less(plan.topo[j], e)) lowers.push_back(plan.topo[j]);
        for (int u : lowers) {
            plan.pair_slot[u * plan.n + e] = plan.total_slots++;
            int fs = -1;
            if (!big_to_sub.empty() && big_to_sub[u] >= 0 && big_to_sub[e] >= 0)
                fs = sub_pair_slot[big_to_sub[u] * sub_n + big_to_sub[e]];
            slot_fixed.push_back(fs);
        }

        auto slot_of = [&](int u, int v) { return plan.pair_slot[u * plan.n + v]; };
        std::vector<int> emitted; // elements x with (x<e) already assigned, emission order
        // Emit the assignment of (x<e) plus every route equality whose legs
        // just became available.  `via` is the element the value is forced
        // through (-1 when free or fixed).  A free arrow below which some
        // (v<e) is already assigned enumerates only the solutions of
        // X o (v<x) = (v<e) -- the same survivors, in the same order, as
        // trying every typed arrow and discarding it at the route check.
        auto emit = [&](int x, Plan::Kind kind, int via) {
            Plan::Step st;
            st.kind = kind;
            st.slot = slot_of(x, e);
            int div_v = -1;
            if (kind == Plan::kFixed) {
                st.fixed_from = fixed_of(st.slot);
            } else if (kind == Plan::kForcedArrow) {
                st.a = slot_of(x, via);
                st.b = slot_of(via, e);
            } else { // kFreeArrow
                for (int v : emitted)
                    if (p.less(v, x)) {
                        div_v = v;
                        break;
                    }
                if (div_v >= 0) {
                    st.kind = Plan::kDivArrow;
                    st.a = slot_of(div_v, x);
                    st.b = slot_of(div_v, e);
                } else {
                    st.a = x;
                    st.b = e;
                }
            }
            plan.steps.push_back(st);
            for (int w : emitted) {
                if (w == via || !p.less(x, w)) continue;
                // x < w < e : remaining route must agree with (x<e)
                if (fixed_of(slot_of(x, e)) >= 0 && fixed_of(slot_of(x, w)) >= 0 &&
                    fixed_of(slot_of(w, e)) >= 0)
                    continue; // all sub-side: the sub functor's own burden
                plan.steps.push_back({Plan::kCheck, slot_of(x, e), slot_of(x, w), slot_of(w, e), -1});
            }
            for (int v : emitted) {
                if (v == div_v || !p.less(v, x)) continue;
                // v < x < e : new route for the earlier arrow (v<e)
                if (fixed_of(slot_of(v, e)) >= 0 && fixed_of(slot_of(v, x)) >= 0 &&
                    fixed_of(slot_of(x, e)) >= 0)
                    continue;
                plan.steps.push_back({Plan::kCheck, slot_of(v, e), slot_of(v, x), slot_of(x, e), -1});
            }
            emitted.push_back(x);
        };

        // fixed arrows first (plain copies; maximizes later forcing) ...
        for (int u : lowers)
            if (fixed_of(slot_of(u, e)) >= 0) emit(u, Plan::kFixed, -1);
        // ... then force pending arrows as soon as a route exists, else
        // branch on the highest pending element.
        std::vector<int> pending;
        for (int u : lowers)
            if (fixed_of(slot_of(u, e)) < 0) pending.push_back(u);
        while (!pending.empty()) {
            int pick = -1, via = -1;
            for (std::size_t i = 0; i < pending.size() && pick < 0; ++i)
                for (int w : emitted)
                    if (p.less(pending[i], w)) {
                        pick = static_cast<int>(i);
                        via = w;
                        break;
                    }
            if (pick < 0) {
                emit(pending.front(), Plan::kFreeArrow, -1);
                pending.erase(pending.begin());
            } else {
                emit(pending[pick], Plan::kForcedArrow, via);
                pending.erase(pending.begin() + pick);
            }
        }
        plan.phase_of.resize(plan.steps.size(), opener);
    }
    plan.first_branch = static_cast<int>(plan.steps.size());
    for (std::size_t s = 0; s < plan.steps.size(); ++s)
        if (plan.steps[s].kind == Plan::kObject || plan.steps[s].kind == Plan::kFreeArrow ||
            plan.steps[s].kind == Plan::kDivArrow) {
            if (plan.first_branch == static_cast<int>(plan.steps.size()))
                plan.first_branch = static_cast<int>(s);
            plan.last_branch = static_cast<int>(s);
        }
    return plan;
}

struct ArrowTables {
    // candidates per (src obj * num_objects + dst obj), ascending arrow id
    std::vector<std::vector<int>> by_type;
    // left division: arrows x with x o a = d, per (a * num_arrows + d), ascending
    std::vector<std::vector<int>> div;
    int num_objects;
    int num_arrows;
    explicit ArrowTables(const FiniteCategory& c)
        : num_objects(c.num_objects()), num_arrows(c.num_arrows()) {
        by_type.assign(num_objects * num_objects, {});
        for (int a = 0; a < num_arrows; ++a)
            by_type[c.arrow(a).src * num_objects + c.arrow(a).dst].push_back(a);
        div.assign(num_arrows * num_arrows, {});
        for (int x = 0; x < num_arrows; ++x)
            for (int a = 0; a < num_arrows; ++a)
                if (int d = c.compose(x, a); d >= 0) div[a * num_arrows + d].push_back(x);
    }
    const std::vector<int>& candidates(int src_obj, int dst_obj) const {
        return by_type[src_obj * num_objects + dst_obj];
    }
    const std::vector<int>& division(int a, int d) const { return div[a * num_arrows + d]; }
};

/// Depth-first executor over a plan.  Leaf is called with the shallowest step
/// index whose slot changed since the previous leaf and the candidate ordinal
/// at the deepest branching step; returning true stops the run.
/// `fixed_src` supplies the values of kFixed steps (null if the plan has none).
template <typename Leaf>
class Runner {
public:
    Runner(const Plan& plan, const FiniteCategory& c, const ArrowTables& tabs,
           std::vector<int>& val, const std::vector<int>* fixed_src, Leaf leaf)
        : plan_(plan), c_(c), tabs_(tabs), val_(val), fixed_src_(fixed_src), leaf_(leaf) {}

    bool run(int from = 0) {
        first_changed_ = 0;
        return dfs(from);
    }

private:
    bool dfs(int si) {
        if (si == static_cast<int>(plan_.steps.size())) {
            int fc = first_changed_;
            first_changed_ = std::numeric_limits<int>::max();
            return leaf_(fc, last_ord_);
        }
        const Plan::Step& st = plan_.steps[si];
        switch (st.kind) {
        case Plan::kFixed:
            val_[st.slot] = (*fixed_src_)[st.fixed_from];
            return dfs(si + 1);
        case Plan::kObject:
            for (int o = 0; o < c_.num_objects(); ++o) {
                val_[st.slot] = o;
                note(si);
                if (si == plan_.last_branch) last_ord_ = o;
                if (dfs(si + 1)) return true;
            }
            return false;
        case Plan::kForcedArrow: {
            int v = c_.compose(val_[st.b], val_[st.a]);
            if (v < 0) return false;
            val_[st.slot] = v;
            note(si);
            return dfs(si + 1);
        }
        case Plan::kCheck:
            if (c_.compose(val_[st.b], val_[st.a]) != val_[st.slot]) return false;
            return dfs(si + 1);
        case Plan::kFreeArrow: {
            const auto& cand = tabs_.candidates(val_[st.a], val_[st.b]);
            for (int ci = 0; ci < static_cast<int>(cand.size()); ++ci) {
                val_[st.slot] = cand[ci];
                note(si);
                if (si == plan_.last_branch) last_ord_ = ci;
                if (dfs(si + 1)) return true;
            }
            return false;
        }
        case Plan::kDivArrow: {
            const auto& cand = tabs_.division(val_[st.a], val_[st.b]);
            for (int ci = 0; ci < static_cast<int>(cand.size()); ++ci) {
                val_[st.slot] = cand[ci];
                note(si);
                if (si == plan_.last_branch) last_ord_ = ci;
                if (dfs(si + 1)) return true;
            }
            return false;
        }
        }
        return false;
    }

    void note(int si) {
        if (si < first_changed_) first_changed_ = si;
    }

    const Plan& plan_;
    const FiniteCategory& c_;
    const ArrowTables& tabs_;
    std::vector<int>& val_;
    const std::vector<int>* fixed_src_;
    Leaf leaf_;
    int first_changed_ = 0;
    int last_ord_ = 0;
};

PosetFunctor functor_from_slots(const Plan& plan, const std::vector<int>& val) {
    PosetFunctor f;
    f.object_of.assign(plan.n, -1);
    for (int e = 0; e < plan.n; ++e) f.object_of[e] = val[e];
    f.arrow_of.assign(plan.n * plan.n, -1);
    for (int u = 0; u < plan.n; ++u)
        for (int v = 0; v < plan.n; ++v)
            if (int s = plan.pair_slot[u * plan.n + v]; s >= 0) f.arrow_of[u * plan.n + v] = val[s];
    return f;
}

/// Content key for memoizing injectivity runs: result only depends on the
/// order data, the embedding, and the composition table (never on names).
std::string injectivity_key(const FinitePoset& sub, const FinitePoset& big,
                            const std::vector<int>& embed, const FiniteCategory& c) {
    std::string key;
    auto put = [&key](int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); };
    put(sub.size());
    for (int a = 0; a < sub.size(); ++a)
        for (int b = 0; b < sub.size(); ++b) key.push_back(sub.leq(a, b) ? 1 : 0);
    put(big.size());
    for (int a = 0; a < big.size(); ++a)
        for (int b = 0; b < big.size(); ++b) key.push_back(big.leq(a, b) ? 1 : 0);
    for (int e : embed) put(e);
    put(c.num_objects());
    put(c.num_arrows());
    for (int a = 0; a < c.num_arrows(); ++a) {
        put(c.arrow(a).src);
        put(c.arrow(a).dst);
    }
    for (int g = 0; g < c.num_arrows(); ++g)
        for (int f = 0; f < c.num_arrows(); ++f) put(c.compose(g, f));
    return key;
}

} // namespace

InjectivityResult poset_injectivity(const FinitePoset& sub, const FinitePoset& big,
                                    const std::vector<int>& embed, const FiniteCategory& c,
                                    long long budget) {
    if (static_cast<int>(embed.size()) != sub.size())
        throw std::invalid_argument("poset_injectivity: embedding size mismatch");
    for (int a = 0; a < sub.size(); ++a) {
        if (embed[a] < 0 || embed[a] >= big.size())
            throw std::invalid_argument("poset_injectivity: embedding out of range");
        for (int b = 0; b < sub.size(); ++b)
            if (sub.leq(a, b) != big.leq(embed[a], embed[b]))
                throw std::invalid_argument("poset_injectivity: not an order embedding");
    }

    // Completed runs are memoized by content; a hit replays the original
    // budget behaviour so callers cannot tell a cached answer from a fresh one.
    static std::map<std::string, InjectivityResult> memo;
    std::string key = injectivity_key(sub, big, embed, c);
    if (auto it = memo.find(key); it != memo.end()) {
        if (budget > 0 && it->second.functors_checked > budget)
            throw BudgetError("poset_injectivity: functor budget of " + std::to_string(budget) +
                              " exceeded");
        return it->second;
    }

    Plan sub_plan = make_plan(sub, {}, {}, 0);
    std::vector<int> big_to_sub(big.size(), -1);
    for (int a = 0; a < sub.size(); ++a) big_to_sub[embed[a]] = a;
    Plan big_plan = make_plan(big, big_to_sub, sub_plan.pair_slot, sub.size());

    ArrowTables tabs(c);
    std::vector<int> sub_val(sub_plan.total_slots, -1);

    // Static dependency closure: for each sub plan step index j, the big plan
    // steps to replay when any slot assigned at a step >= j has changed.
    // Copies are kept apart from recomputations so that a failed replay can
    // fall straight into the branch-suffix search with all copies current.
    // Ops carry their own operands so the hot replay loop never touches the
    // plan; `step` keeps the originating index for the phase ladder.
    struct ReplayOp {
        Plan::Kind kind;
        int step;
        int slot, a, b;
    };
    std::vector<std::vector<ReplayOp>> replay_copy(sub_plan.steps.size());
    std::vector<std::vector<ReplayOp>> replay_rest(sub_plan.steps.size());
    {
        // big step index that assigns each big slot
        std::vector<int> step_of_slot(big_plan.total_slots, -1);
        for (std::size_t s = 0; s < big_plan.steps.size(); ++s)
            if (big_plan.steps[s].kind != Plan::kCheck)
                step_of_slot[big_plan.steps[s].slot] = static_cast<int>(s);
        // dependency: big step depends on sub slots via fixed_from, or on
        // other big slots via routes/typing; propagate transitively in order.
        std::vector<std::vector<char>> depends(big_plan.steps.size(),
                                               std::vector<char>(sub_plan.total_slots, 0));
        auto absorb_slot = [&](std::vector<char>& row, int big_slot) {
            int bs = step_of_slot[big_slot];
            for (int t = 0; t < static_cast<int>(row.size()); ++t)
                row[t] = row[t] | depends[bs][t];
        };
        for (std::size_t s = 0; s < big_plan.steps.size(); ++s) {
            const auto& st = big_plan.steps[s];
            auto& row = depends[s];
            switch (st.kind) {
            case Plan::kFixed:
                row[st.fixed_from] = 1;
                break;
            case Plan::kForcedArrow:
                absorb_slot(row, st.a);
                absorb_slot(row, st.b);
                break;
            case Plan::kCheck:
                absorb_slot(row, st.a);
                absorb_slot(row, st.b);
                absorb_slot(row, st.slot);
                break;
            case Plan::kFreeArrow:
            case Plan::kDivArrow:
                absorb_slot(row, st.a);
                absorb_slot(row, st.b);
                break;
            case Plan::kObject:
                break;
            }
        }
        // sub step j assigns sub slot sub_plan.steps[j].slot; suffix union
        std::vector<std::vector<char>> touched(sub_plan.steps.size() + 1,
                                               std::vector<char>(sub_plan.total_slots, 0));
        for (int j = static_cast<int>(sub_plan.steps.size()) - 1; j >= 0; --j) {
            touched[j] = touched[j + 1];
            const auto& st = sub_plan.steps[j];
            if (st.kind != Plan::kCheck) touched[j][st.slot] = 1; // every assignment kind
        }
        for (std::size_t j = 0; j < sub_plan.steps.size(); ++j) {
            for (std::size_t s = 0; s < big_plan.steps.size(); ++s) {
                bool hit = false;
                for (int t = 0; t < sub_plan.total_slots && !hit; ++t)
                    hit = touched[j][t] && depends[s][t];
                if (!hit) continue;
                const auto& st = big_plan.steps[s];
                ReplayOp op{st.kind, static_cast<int>(s), st.slot,
                            st.kind == Plan::kFixed ? st.fixed_from : st.a, st.b};
                (st.kind == Plan::kFixed ? replay_copy : replay_rest)[j].push_back(op);
            }
        }
    }

    InjectivityResult result;

    // One cached extension per candidate ordinal of the deepest branching sub
    // step.  That slot cycles fastest, so each cache entry is verified against
    // the same innermost value it was built with and survives most leaves;
    // acc[s] tracks the shallowest sub step changed since entry s last
    // verified, so slower-moving changes still trigger the right replay.
    const int entries =
        std::max(1, std::max(c.num_objects(), c.num_arrows()));
    std::vector<std::vector<int>> cache(entries,
                                        std::vector<int>(big_plan.total_slots, -1));
    std::vector<char> valid(entries, 0);
    std::vector<int> acc(entries, std::numeric_limits<int>::max());

    auto found = [&](int, int) { return true; };

    /// Replay the affected big steps against cached extension bv; returns -1
    /// if it remains a valid extension, else the failing step.  Copies always
    /// run, so on failure the suffix searches start with every fixed slot
    /// current.
    auto verify_cache = [&](std::vector<int>& bv, int first_changed) -> int {
        for (const ReplayOp& st : replay_copy[first_changed]) bv[st.slot] = sub_val[st.a];
        for (const ReplayOp& st : replay_rest[first_changed]) {
            switch (st.kind) {
            case Plan::kForcedArrow: {
                int v = c.compose(bv[st.b], bv[st.a]);
                if (v < 0) return st.step;
                bv[st.slot] = v;
                break;
            }
            case Plan::kCheck:
                if (c.compose(bv[st.b], bv[st.a]) != bv[st.slot]) return st.step;
                break;
            case Plan::kObject:
                // a free big object: cached value unaffected by sub changes
                break;
            case Plan::kFreeArrow: {
                int a = bv[st.slot];
                if (c.arrow(a).src != bv[st.a] || c.arrow(a).dst != bv[st.b]) return st.step;
                break;
            }
            case Plan::kDivArrow:
                // cached value must still solve X o a = d
                if (c.compose(bv[st.slot], bv[st.a]) != bv[st.b]) return st.step;
                break;
            case Plan::kFixed:
                break; // handled in the first pass
            }
        }
        return -1;
    };

    auto leaf = [&](int first_changed, int ord) -> bool {
        ++result.functors_checked;
        if (budget > 0 && result.functors_checked > budget)
            throw BudgetError("poset_injectivity: functor budget of " + std::to_string(budget) +
                              " exceeded");
        std::vector<int>& bv = cache[ord];
        int eff = valid[ord] ? std::min(acc[ord], first_changed) : 0;
        for (int s = 0; s < entries; ++s) acc[s] = std::min(acc[s], first_changed);
        acc[ord] = std::numeric_limits<int>::max();
        int fail_at = -1;
        if (valid[ord]) {
            fail_at = verify_cache(bv, eff);
            if (fail_at < 0) return false;
        } else {
            for (const auto& st : big_plan.steps)
                if (st.kind == Plan::kFixed) bv[st.slot] = sub_val[st.fixed_from];
        }
        // Re-search only from the phase the replay failed in (everything
        // earlier re-verified), then from the whole branch suffix.
        Runner<decltype(found)> searcher(big_plan, c, tabs, bv, &sub_val, found);
        int from = big_plan.first_branch;
        if (fail_at >= 0) from = std::max(from, big_plan.phase_of[fail_at]);
        if (searcher.run(from) ||
            (from > big_plan.first_branch && searcher.run(big_plan.first_branch))) {
            valid[ord] = 1;
            return false;
        }
        result.ok = false;
        result.failure = functor_from_slots(sub_plan, sub_val);
        return true; // stop enumeration
    };

    Runner<decltype(leaf)> r(sub_plan, c, tabs, sub_val, nullptr, leaf);
    r.run();
    memo.emplace(std::move(key), result);
    return result;
}

InjectivityResult poset_injectivity_check(const FiniteCategory& c, int n, int k_max,
                                          long long budget) {
    if (n < 1) throw std::invalid_argument("poset_injectivity_check: requires n >= 1");
    InjectivityResult total;
    for (int k = 1; k <= k_max; ++k) {
        for (int i = 0; i <= k; ++i) {
            PosetInclusion pi = cat_sd_horn(n, k, i);
            long long rest = budget > 0 ? budget - total.functors_checked : 0;
            if (budget > 0 && rest <= 0)
                throw BudgetError("poset_injectivity_check: functor budget exhausted");
            InjectivityResult r = poset_injectivity(pi.sub, pi.big, pi.embed, c, rest);
            total.functors_checked += r.functors_checked;
            if (!r.ok) {
                total.ok = false;
                total.failure = std::move(r.failure);
                total.fail_k = k;
                total.fail_i = i;
                return total;
            }
        }
    }
    return total;
}

std::optional<NerveRecognition> recognize_nerve(const SimplicialSet& x) {
    if (x.max_dim() < 0) return std::nullopt;
    if (!x.complete() && x.dim_bound() < 2) return std::nullopt; // composition unreadable
    const int V = x.count(0);
    // arrows: identities first (one per vertex), then non-degenerate edges
    const int E = x.count(1);
    const int A = V + E;
    std::vector<FiniteCategory::Arrow> arrows(A);
    std::vector<int> ids(V);
    for (int v = 0; v < V; ++v) {
        arrows[v] = {v, v};
        ids[v] = v;
    }
    auto arrow_of_gen = [&](const GenSimplex& g) {
        // a 1-dimensional element: either a vertex degeneracy or an edge
        return g.epi.is_identity() ? V + g.target.id : g.target.id;
    };
    for (int e = 0; e < E; ++e) {
        SimplexRef r{1, e};
        int dst = x.face(r, 0).target.id, src = x.face(r, 1).target.id;
        arrows[V + e] = {src, dst};
    }
    // composition from unique fillers: for every composable pair there must be
    // exactly one 2-element with matching outer faces
    std::map<std::pair<int, int>, std::pair<int, GenSimplex>> filler; // (f,g) -> count, middle
    for (const GenSimplex& t : x.all_simplices(2)) {
        int f = arrow_of_gen(x.face_of(t, 2)), g = arrow_of_gen(x.face_of(t, 0));
        auto [it, fresh] = filler.emplace(std::make_pair(f, g),
                                          std::make_pair(1, x.face_of(t, 1)));
        if (!fresh) it->second.first++;
    }
    std::vector<int> comp(A * A, -1);
    for (int g = 0; g < A; ++g)
        for (int f = 0; f < A; ++f) {
            if (arrows[f].dst != arrows[g].src) continue;
            auto it = filler.find({f, g});
            if (it == filler.end() || it->second.first != 1) return std::nullopt;
            comp[g * A + f] = arrow_of_gen(it->second.second);
        }
    FiniteCategory cat(V, std::move(arrows), std::move(ids), std::move(comp));
    if (!cat.validate().ok()) return std::nullopt;
    for (int v = 0; v < V; ++v)
        if (auto l = x.label(SimplexRef{0, v})) cat.set_object_label(v, *l);
    for (int e = 0; e < E; ++e)
        if (auto l = x.label(SimplexRef{1, e})) cat.set_arrow_label(V + e, *l);

    // spines: every non-degenerate simplex must be an identity-free
    // composable string, pairwise distinct within each dimension
    NerveRecognition rec{std::move(cat), {}};
    rec.string_of.resize(x.max_dim() + 1);
    for (int d = 0; d <= x.max_dim(); ++d) {
        rec.string_of[d].resize(x.count(d));
        std::map<std::vector<int>, int> seen;
        for (int id = 0; id < x.count(d); ++id) {
            SimplexRef r{d, id};
            std::vector<int> s;
            for (int j = 0; j + 1 <= d; ++j) {
                GenSimplex edge = x.pull(OrdinalMap(d + 1, {j, j + 1}), r);
                int a = arrow_of_gen(edge);
                if (rec.cat.is_identity(a)) return std::nullopt; // degenerate spine edge
                s.push_back(a);
            }
            for (std::size_t j = 0; j + 1 < s.size(); ++j)
                if (rec.cat.arrow(s[j]).dst != rec.cat.arrow(s[j + 1]).src) return std::nullopt;
            if (d >= 1 && !seen.emplace(s, id).second) return std::nullopt; // spine collision
            rec.string_of[d][id] = std::move(s);
        }
    }
    // cardinalities must match the rebuilt nerve: identity-free string counts,
    // checked up to the bound the object vouches for
    const int depth = x.complete() ? x.max_dim() + 1 : x.dim_bound();
    {
        constexpr long long kCap = 1'000'000'000'000'000LL;
        std::vector<long long> per_obj(rec.cat.num_objects(), 1);
        long long total = rec.cat.num_objects();
        for (int d = 0; d <= depth; ++d) {
            if (total != (d <= x.max_dim() ? x.count(d) : 0)) return std::nullopt;
            std::vector<long long> next(rec.cat.num_objects(), 0);
            for (int a = 0; a < rec.cat.num_arrows(); ++a)
                if (!rec.cat.is_identity(a))
                    next[rec.cat.arrow(a).dst] =
                        std::min(kCap, next[rec.cat.arrow(a).dst] + per_obj[rec.cat.arrow(a).src]);
            per_obj = std::move(next);
            total = 0;
            for (long long v : per_obj) total = std::min(kCap, total + v);
        }
    }
    // face records must agree with nerve composition rules
    for (int d = 1; d <= x.max_dim(); ++d) {
        for (int id = 0; id < x.count(d); ++id) {
            SimplexRef r{d, id};
            const std::vector<int>& s = rec.string_of[d][id];
            for (int i = 0; i <= d; ++i) {
                std::vector<int> sub;
                OrdinalMap expected_epi = OrdinalMap::identity(d);
                int expected_dim = d - 1;
                int expected_vertex = -1; // when expected_dim == 0
                if (i == 0) {
                    sub.assign(s.begin() + 1, s.end());
                    if (d == 1) expected_vertex = rec.cat.arrow(s[0]).dst;
                } else if (i == d) {
                    sub.assign(s.begin(), s.end() - 1);
                    if (d == 1) expected_vertex = rec.cat.arrow(s[0]).src;
                } else {
                    int m = rec.cat.compose(s[i], s[i - 1]);
                    for (int j = 0; j < d; ++j) {
                        if (j == i - 1) {
                            if (!rec.cat.is_identity(m)) sub.push_back(m);
                        } else if (j != i) {
                            sub.push_back(s[j]);
                        }
                    }
                    if (rec.cat.is_identity(m)) {
                        expected_epi = OrdinalMap::codegeneracy(d - 2, i - 1);
                        expected_dim = d - 2;
                        if (d == 2) expected_vertex = rec.cat.arrow(s[i - 1]).src;
                    }
                }
                const GenSimplex& got = x.face(r, i);
                if (got.epi != expected_epi || got.target.dim != expected_dim) return std::nullopt;
                if (expected_dim == 0) {
                    if (got.target.id != expected_vertex) return std::nullopt;
                } else if (rec.string_of[expected_dim][got.target.id] != sub) {
                    return std::nullopt;
                }
            }
        }
    }
    return rec;
}

} // namespace sdex
