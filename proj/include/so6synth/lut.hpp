#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "so6synth/canon.hpp"
#include "so6synth/generators.hpp"

namespace so6synth {

// One stored representative: the canonical form itself plus reconstruction
// metadata. gen_id is the dense id of the involutive generator that produced
// it from its parent (kNoGen for the root).
struct Node {
    So6Matrix canon;
    uint8_t gen_id = kNoGen;
    uint64_t parent = 0;  // index into the previous layer
    // Id of the generator whose application provably reverts to the parent
    // class: the stored form is L * X * parent * R, so the reverting candidate
    // is X with its indices relabeled through L, not X itself. Derived data,
    // used only for backtracking suppression during extension; not serialized.
    uint8_t suppress = kNoGen;
};

struct LayerStats {
    uint64_t candidates = 0;
    uint64_t inserted = 0;
    uint64_t duplicate = 0;
    double seconds = 0.0;
};

struct LutRef {
    uint32_t depth;
    uint64_t index;
};

// Layered table: layer i holds exactly one canonical representative per
// equivalence class at T-distance i from the root. Layers are sorted by
// canonical flat-byte order at finalize time, which makes layer contents,
// metadata, and saved bytes independent of thread count.
class Lut {
public:
    So6Matrix root;
    std::vector<std::vector<Node>> layers;

    size_t depth() const { return layers.size() - 1; }
    uint64_t total_nodes() const;

    const Node& node(LutRef ref) const { return layers[ref.depth][ref.index]; }

    std::optional<LutRef> find(const So6Matrix& canon) const;

    // Internal: registers a finalized layer in the global index.
    void index_layer(uint32_t depth);

private:
    // canonical flat_hash -> refs; collisions resolved by exact compare.
    std::unordered_map<uint64_t, std::vector<LutRef>> index_;
};

Lut init_lut(const So6Matrix& root);

// Called on every successful insertion with the new canonical form; a true
// return requests best-effort early termination of the layer extension (the
// partially expanded layer is still finalized). Used by the MITM meet probe.
using InsertHook = std::function<bool(const So6Matrix&)>;

// Appends layer depth()+1. Candidates: every node of the last layer times
// every involutive generator except the node's own gen_id (backtracking
// suppression, optional); deduplicated against the union of all finalized
// layers and the layer under construction. Duplicate inserts keep the
// minimal (parent, gen_id) pair so metadata is schedule-independent.
LayerStats extend_one_step(Lut& lut, unsigned threads = 1, bool suppress_backtrack = true,
                           const InsertHook& on_insert = {});

Lut generate_lut(const So6Matrix& root, unsigned depth, unsigned threads = 1,
                 const std::function<void(unsigned, const LayerStats&)>& progress = {});

// Canonicalizes U and probes the table.
std::optional<LutRef> lut_lookup(const Lut& lut, const So6Matrix& u);

// Raw descent data for a stored node, before any correction folding:
//   evaluate(steps) * to_matrix(s) * N0 * to_matrix(r_total) == node.canon
// where N0 is the root's canonical form (layer 0 node).
struct Descent {
    std::vector<GenIndex> steps;
    SignedPerm s;
    SignedPerm r_total;
};

Descent reconstruct_descent(const Lut& lut, LutRef ref);

// Rebuilds the descent word for a stored node. The result satisfies
//   evaluate_word_on(word, canonicalize(root).matrix) = hit_canon * C
// for some signed permutation C; when the root's canonical form is itself a
// signed permutation (e.g. an identity-rooted table), C is folded in and
// evaluate_word(word) == node.canon exactly. Verified before returning.
Word reconstruct(const Lut& lut, LutRef ref);

}  // namespace so6synth
