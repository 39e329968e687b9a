#ifndef SDEX_TOWER_HPP
#define SDEX_TOWER_HPP

#include <vector>

#include "sdex/simplicial_map.hpp"
#include "sdex/simplicial_set.hpp"

namespace sdex {

/// One stage of the bounded replacement tower over a base complex: the
/// space built so far, the canonical map from the base, and a record of
/// every cell attached on the way here.
struct TowerStage {
    struct Attachment {
        int stage = 0;           // stage at which the cell was glued
        int k = 0, i = 0;        // horn shape
        long long map_index = 0; // position of the attaching map in canonical order
    };

    int stage_index = 0;
    SSetPtr space;
    SimplicialMap canonical_map; // base -> space
    std::vector<Attachment> attachment_log;
};

/// Stage 0: the base itself under the identity.
TowerStage tower_base(SSetPtr u);

/// One step of the tower: for every 2 <= k <= k_max and every horn index i,
/// each map Sd^{n+1}(Λ^i_k) -> space lacking an extension along the
/// subdivided horn inclusion gets a copy of Sd^{n+1}(Δ_k) pushed on.  All
/// attaching maps are enumerated against the incoming stage, so the gluing
/// is a simultaneous pushout; identical attaching maps cannot repeat within
/// one enumeration, so each glues exactly one cell.  k = 1 is skipped: that
/// horn is a single vertex and the constant map always extends it.
/// budget > 0 bounds the maps enumerated per (k, i); BudgetError on excess.
TowerStage attach_stage(const TowerStage& s, int n, int k_max, long long budget = 0);

/// Evidence that the subdivided zig-zag stays metrically rigid along its
/// tower: builds U = Sd^n(Λ⁰₂) and j_max attachment stages of
/// Sd^{n+1}-horn fillers with k <= k_max, recording at every stage the
/// distance between the images of the two far endpoints (expected 2^{n+1})
/// and the absence of an extension of the canonical map along
/// Sd^n(Λ⁰₂) -> Sd^n(Δ₂).  ok is true when every stage shows the expected
/// distance and no extension.
struct TowerCertificate {
    struct Batch {
        int k = 0, i = 0;
        long long count = 0;
    };
    struct Stage {
        int j = 0;
        long long vertex_count = 0;
        long long edge_count = 0;
        std::vector<Batch> attachments;
        int distance = -1; // -1 encodes "unreachable"
        bool lift_exists = false;
    };

    int n = 0, j_max = 0, k_max = 0;
    std::vector<Stage> stages;
    bool ok = false;
};

TowerCertificate tower_certificate(int n, int j_max, int k_max, long long budget = 0);

} // namespace sdex

#endif
