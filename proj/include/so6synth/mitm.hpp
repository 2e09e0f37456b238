#pragma once

#include <optional>

#include "so6synth/lut.hpp"

namespace so6synth {

struct MitmOptions {
    unsigned threads = 1;
    unsigned max_total_depth = 40;  // resource cap, not an impossibility bound
    bool use_probe = false;
    double probe_budget_ms = -1.0;  // < 0: auto (previous layer's wall time)
};

struct MitmResult {
    Word word;
    size_t tcount = 0;
    So6Matrix meet_class;
    size_t left_depth = 0;
    size_t right_depth = 0;
};

// Bidirectional search: alternately extends the side with the smaller
// frontier until a newly inserted class appears in the other side's global
// index, then assembles and verifies an exact word with
//   evaluate_word_on(word, rL) == rR * C^-1 for a signed permutation C.
// Throws resource_error when max_total_depth is exhausted.
MitmResult mitm(const So6Matrix& rl, const So6Matrix& rr, const MitmOptions& opts = {});

// One layer extension of `to_extend` with meet probing against `to_check`'s
// full global index; returns the first meet class committed, if any.
std::optional<So6Matrix> extend_one_step_mitm(Lut& to_extend, const Lut& to_check,
                                              unsigned threads = 1);

// Brute-force Clifford fix-up: signed perms with c1 * ml_rl * c0 == mr_rr.
// Exhaustive over <= 46080 candidates; requires the inputs to be equivalent.
std::pair<SignedPerm, SignedPerm> clifford_fixup(const So6Matrix& ml_rl, const So6Matrix& mr_rr);

// Depth-first probe one layer beyond `other`'s deepest stored layer, storing
// nothing, probing `lut_side`'s global index, within a wall-clock budget.
struct ProbeHit {
    uint64_t parent;  // node index in other's back layer
    GenIndex gen;
    So6Matrix meet;
};
std::optional<ProbeHit> brute_probe(const Lut& lut_side, const Lut& other, double budget_ms);

}  // namespace so6synth
