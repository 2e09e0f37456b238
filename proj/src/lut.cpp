#include "so6synth/lut.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

namespace so6synth {

uint64_t Lut::total_nodes() const {
    uint64_t n = 0;
    for (const auto& layer : layers) n += layer.size();
    return n;
}

std::optional<LutRef> Lut::find(const So6Matrix& canon) const {
    auto it = index_.find(canon.flat_hash());
    if (it == index_.end()) return std::nullopt;
    for (const LutRef& ref : it->second) {
        if (node(ref).canon == canon) return ref;
    }
    return std::nullopt;
}

void Lut::index_layer(uint32_t depth) {
    const auto& layer = layers[depth];
    for (uint64_t i = 0; i < layer.size(); ++i)
        index_[layer[i].canon.flat_hash()].push_back(LutRef{depth, i});
}

Lut init_lut(const So6Matrix& root) {
    validate_so6(root, /*throwing=*/true);
    Lut lut;
    lut.root = root;
    lut.layers.push_back({Node{canonicalize(root).matrix, kNoGen, 0}});
    lut.index_layer(0);
    return lut;
}

namespace {

struct PendingNode {
    So6Matrix canon;
    uint8_t gen_id;
    uint64_t parent;
    uint8_t suppress;
};

// Sharded insert-if-absent map for the layer under construction. Duplicate
// inserts keep the lexicographically minimal (parent, gen_id) pair, which
// makes metadata independent of thread scheduling.
struct NextMap {
    static constexpr int kShards = 64;
    struct Shard {
        std::mutex mu;
        std::unordered_map<uint64_t, std::vector<PendingNode>> map;
    };
    std::array<Shard, kShards> shards;

    // Returns true if the class was new.
    bool insert(const So6Matrix& canon, uint8_t gen_id, uint64_t parent, uint8_t suppress) {
        const uint64_t h = canon.flat_hash();
        Shard& s = shards[h & (kShards - 1)];
        std::lock_guard<std::mutex> lock(s.mu);
        auto& bucket = s.map[h];
        for (PendingNode& p : bucket) {
            if (p.canon == canon) {
                if (std::make_pair(parent, gen_id) < std::make_pair(p.parent, p.gen_id)) {
                    p.parent = parent;
                    p.gen_id = gen_id;
                    p.suppress = suppress;
                }
                return false;
            }
        }
        bucket.push_back(PendingNode{canon, gen_id, parent, suppress});
        return true;
    }
};

}  // namespace

LayerStats extend_one_step(Lut& lut, unsigned threads, bool suppress_backtrack,
                           const InsertHook& on_insert) {
    if (lut.layers.empty()) throw integrity_error("lut: extend on empty table");
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<Node>& frontier = lut.layers.back();
    NextMap next;
    std::atomic<uint64_t> cursor{0};
    std::atomic<uint64_t> candidates{0}, inserted{0}, duplicate{0};
    std::atomic<bool> failed{false};
    std::atomic<bool> stop{false};
    std::string fail_msg;
    std::mutex fail_mu;

    auto worker = [&] {
        uint64_t my_cand = 0, my_ins = 0, my_dup = 0;
        try {
            constexpr uint64_t kChunk = 16;
            for (;;) {
                const uint64_t begin = cursor.fetch_add(kChunk);
                if (begin >= frontier.size() || failed.load(std::memory_order_relaxed) ||
                    stop.load(std::memory_order_relaxed))
                    break;
                const uint64_t end = std::min<uint64_t>(begin + kChunk, frontier.size());
                for (uint64_t n = begin; n < end; ++n) {
                    const Node& node = frontier[n];
                    for (int id = 0; id < GenIndex::kPairCount; ++id) {
                        if (suppress_backtrack && id == node.suppress) continue;
                        const GenIndex g = GenIndex::from_id(id, /*involutive=*/true);
                        ++my_cand;
                        const CanonicalForm cf = canonicalize(apply_gen(g, node.canon));
                        const So6Matrix& cand = cf.matrix;
                        // Relabel g through the left witness: that index pair
                        // is the candidate that undoes this step (see Node).
                        const auto limg = cf.left.images();
                        const int p = limg[g.i - 1], q = limg[g.j - 1];
                        const uint8_t sup = static_cast<uint8_t>(
                            GenIndex::inv(std::min(p, q) + 1, std::max(p, q) + 1).id());
                        if (lut.find(cand)) {
                            ++my_dup;
                            continue;
                        }
                        if (next.insert(cand, static_cast<uint8_t>(id), n, sup)) {
                            ++my_ins;
                            if (on_insert && on_insert(cand)) stop.store(true);
                        } else {
                            ++my_dup;
                        }
                    }
                }
            }
        } catch (const std::exception& e) {
            failed.store(true);
            std::lock_guard<std::mutex> lock(fail_mu);
            if (fail_msg.empty())
                fail_msg = "lut: extension to depth " + std::to_string(lut.depth() + 1) +
                           " failed: " + e.what();
        }
        candidates += my_cand;
        inserted += my_ins;
        duplicate += my_dup;
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw overflow_error(fail_msg);

    std::vector<Node> layer;
    layer.reserve(inserted.load());
    for (auto& shard : next.shards) {
        for (auto& [h, bucket] : shard.map) {
            for (PendingNode& p : bucket)
                layer.push_back(Node{p.canon, p.gen_id, p.parent, p.suppress});
        }
    }
    std::sort(layer.begin(), layer.end(),
              [](const Node& x, const Node& y) { return flat_less(x.canon, y.canon); });
    lut.layers.push_back(std::move(layer));
    lut.index_layer(static_cast<uint32_t>(lut.layers.size() - 1));

    LayerStats stats;
    stats.candidates = candidates.load();
    stats.inserted = inserted.load();
    stats.duplicate = duplicate.load();
    stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return stats;
}

Lut generate_lut(const So6Matrix& root, unsigned depth, unsigned threads,
                 const std::function<void(unsigned, const LayerStats&)>& progress) {
    Lut lut = init_lut(root);
    try {
        for (unsigned k = 1; k <= depth; ++k) {
            const LayerStats stats = extend_one_step(lut, threads);
            if (progress) progress(k, stats);
        }
    } catch (const std::bad_alloc&) {
        throw resource_error("lut: out of memory at depth " + std::to_string(lut.depth() + 1) +
                             " after " + std::to_string(lut.total_nodes()) + " nodes");
    }
    return lut;
}

std::optional<LutRef> lut_lookup(const Lut& lut, const So6Matrix& u) {
    return lut.find(canonicalize(u).matrix);
}

Descent reconstruct_descent(const Lut& lut, LutRef ref) {
    // Collect the descent chain root -> node.
    std::vector<uint8_t> gens(ref.depth);
    {
        LutRef cur = ref;
        for (uint32_t d = ref.depth; d > 0; --d) {
            const Node& n = lut.node(cur);
            gens[d - 1] = n.gen_id;
            cur = LutRef{d - 1, n.parent};
        }
    }

    // Forward pass: N_t = L_t * X_t * N_{t-1} * R_t, recomputing the
    // canonicalization witnesses layer by layer.
    So6Matrix n_prev = lut.layers[0][0].canon;
    std::vector<GenIndex> xs;    // X_1 .. X_d
    std::vector<SignedPerm> ls;  // L_1 .. L_d
    SignedPerm r_total;          // R_1 * R_2 * ... * R_d
    for (uint32_t t = 0; t < ref.depth; ++t) {
        const GenIndex g = GenIndex::from_id(gens[t], /*involutive=*/true);
        CanonicalForm cf = canonicalize(apply_gen(g, n_prev));
        xs.push_back(g);
        ls.push_back(cf.left);
        r_total = r_total * cf.right;
        n_prev = cf.matrix;
    }
    if (n_prev != lut.node(ref).canon)
        throw integrity_error("lut: reconstruction does not reach the stored node");

    // N_d = L_d X_d L_{d-1} X_{d-1} ... L_1 X_1 N_0 R_1..R_d; push every L
    // rightward through the generators.
    Descent out;
    SignedPerm s;  // running left residue
    const int d = static_cast<int>(ref.depth);
    if (d > 0) s = ls[d - 1];
    for (int t = d - 1; t >= 0; --t) {
        auto [x, s2] = commute_left(s, xs[t]);
        out.steps.push_back(x);
        s = s2;
        if (t > 0) s = s * ls[t - 1];
    }
    out.s = s;
    out.r_total = r_total;
    return out;
}

Word reconstruct(const Lut& lut, LutRef ref) {
    const Descent dsc = reconstruct_descent(lut, ref);
    // evaluate(steps) * s * N_0 == N_d * r_total^-1. Fold N_0 and r_total
    // into the correction when N_0 is itself a signed permutation.
    Word w;
    w.steps = dsc.steps;
    const So6Matrix& n0 = lut.layers[0][0].canon;
    if (auto sp0 = as_signed_perm(n0)) {
        w.correction = dsc.s * *sp0 * dsc.r_total;
        if (evaluate_word(w) != lut.node(ref).canon)
            throw integrity_error("lut: reconstructed word verification failed");
    } else {
        w.correction = dsc.s;
        if (evaluate_word_on(w, n0) != sp_act_right(lut.node(ref).canon, dsc.r_total.inverse()))
            throw integrity_error("lut: reconstructed word verification failed");
    }
    return w;
}

}  // namespace so6synth
