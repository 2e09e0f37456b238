#include "so6synth/mitm.hpp"

#include <chrono>
#include <mutex>

namespace so6synth {

namespace {

// Assembles the exact word from the two sides' descents. With
//   M = ev(SL) * sL * N0L * rtL,  N0L = L0L * rL * R0L   (left side)
//   M = ev(SR) * sR * N0R * rtR,  N0R = L0R * rR * R0R   (right side)
// solving for rR gives
//   rR = (sR*L0R)^-1 * ev(rev SR) * ev(SL) * (sL*L0L) * rL * C,
//   C  = R0L * rtL * rtR^-1 * R0R^-1,
// and the left residue is pushed through the combined generator string.
MitmResult assemble(const So6Matrix& rl, const So6Matrix& rr, const So6Matrix& meet,
                    const Descent& dl, const Descent& dr, const CanonicalForm& cfl,
                    const CanonicalForm& cfr) {
    std::vector<GenIndex> steps(dr.steps.rbegin(), dr.steps.rend());
    steps.insert(steps.end(), dl.steps.begin(), dl.steps.end());
    const SignedPerm a = (dr.s * cfr.left).inverse();
    const SignedPerm residue = push_left_through(a, steps);

    MitmResult res;
    res.word.steps = std::move(steps);
    res.word.correction = residue * dl.s * cfl.left;
    res.tcount = res.word.steps.size();
    res.meet_class = meet;
    res.left_depth = dl.steps.size();
    res.right_depth = dr.steps.size();

    const SignedPerm c =
        cfl.right * dl.r_total * dr.r_total.inverse() * cfr.right.inverse();
    if (evaluate_word_on(res.word, rl) != sp_act_right(rr, c.inverse()))
        throw integrity_error("mitm: assembled word verification failed");
    return res;
}

MitmResult assemble_from_refs(const Lut& left, const Lut& right, const So6Matrix& meet,
                              const CanonicalForm& cfl, const CanonicalForm& cfr) {
    const auto lref = left.find(meet);
    const auto rref = right.find(meet);
    if (!lref || !rref) throw integrity_error("mitm: meet class missing from an index");
    return assemble(left.root, right.root, meet, reconstruct_descent(left, *lref),
                    reconstruct_descent(right, *rref), cfl, cfr);
}

// Extends a stored descent by one unstored generator step:
//   meet = L * X * N_d * R  with  N_d = ev(steps) * s * N0 * rt.
Descent extend_descent(const Lut& lut, uint64_t parent, GenIndex gen, const CanonicalForm& cf) {
    Descent d = reconstruct_descent(
        lut, LutRef{static_cast<uint32_t>(lut.depth()), parent});
    auto [x, s1] = commute_left(cf.left, gen);
    const SignedPerm s2 = push_left_through(s1, d.steps);
    d.steps.insert(d.steps.begin(), x);
    d.s = s2 * d.s;
    d.r_total = d.r_total * cf.right;
    return d;
}

}  // namespace

std::optional<So6Matrix> extend_one_step_mitm(Lut& to_extend, const Lut& to_check,
                                              unsigned threads) {
    std::mutex mu;
    std::optional<So6Matrix> winner;
    extend_one_step(to_extend, threads, /*suppress_backtrack=*/true,
                    [&](const So6Matrix& cand) {
                        if (!to_check.find(cand)) return false;
                        std::lock_guard<std::mutex> lock(mu);
                        if (!winner) winner = cand;
                        return true;
                    });
    return winner;
}

std::pair<SignedPerm, SignedPerm> clifford_fixup(const So6Matrix& ml_rl,
                                                 const So6Matrix& mr_rr) {
    const So6Matrix at = transpose(ml_rl);
    for (uint32_t code = 0; code < SignedPerm::kCount; ++code) {
        const SignedPerm c0 = SignedPerm::from_code(static_cast<uint16_t>(code));
        // W = mr_rr * (ml_rl * c0)^-1 = mr_rr * c0^-1 * ml_rl^T.
        const So6Matrix w = mat_mul(sp_act_right(mr_rr, c0.inverse()), at);
        if (auto c1 = as_signed_perm(w)) {
            if (sp_act_left(*c1, sp_act_right(ml_rl, c0)) != mr_rr)
                throw integrity_error("mitm: fixup self-check failed");
            return {c0, *c1};
        }
    }
    throw integrity_error("mitm: no Clifford fixup exists (inputs not equivalent)");
}

std::optional<ProbeHit> brute_probe(const Lut& lut_side, const Lut& other, double budget_ms) {
    if (budget_ms <= 0.0) return std::nullopt;
    const auto t0 = std::chrono::steady_clock::now();
    const auto& frontier = other.layers.back();
    for (uint64_t n = 0; n < frontier.size(); ++n) {
        const auto elapsed =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0);
        if (elapsed.count() > budget_ms) return std::nullopt;
        const Node& node = frontier[n];
        for (int id = 0; id < GenIndex::kPairCount; ++id) {
            if (id == node.suppress) continue;
            const GenIndex g = GenIndex::from_id(id, /*involutive=*/true);
            const So6Matrix cand = canonicalize(apply_gen(g, node.canon)).matrix;
            if (other.find(cand)) continue;  // not a depth d+1 class
            if (lut_side.find(cand)) return ProbeHit{n, g, cand};
        }
    }
    return std::nullopt;
}

MitmResult mitm(const So6Matrix& rl, const So6Matrix& rr, const MitmOptions& opts) {
    validate_so6(rl, /*throwing=*/true);
    validate_so6(rr, /*throwing=*/true);
    const CanonicalForm cfl = canonicalize(rl);
    const CanonicalForm cfr = canonicalize(rr);

    if (cfl.matrix == cfr.matrix) {
        // rR = (L2^-1 L1) rL (R1 R2^-1): the empty word with a pure Clifford
        // correction.
        MitmResult res;
        res.word.correction = cfr.left.inverse() * cfl.left;
        res.meet_class = cfl.matrix;
        const SignedPerm c = cfl.right * cfr.right.inverse();
        if (evaluate_word_on(res.word, rl) != sp_act_right(rr, c.inverse()))
            throw integrity_error("mitm: trivial word verification failed");
        return res;
    }

    Lut left = init_lut(rl);
    Lut right = init_lut(rr);
    double last_seconds = 0.0;

    while (left.depth() + right.depth() < opts.max_total_depth) {
        const bool extend_left = left.layers.back().size() <= right.layers.back().size();
        Lut& ext = extend_left ? left : right;
        const Lut& other = extend_left ? right : left;

        if (opts.use_probe) {
            const double budget =
                opts.probe_budget_ms >= 0.0 ? opts.probe_budget_ms : last_seconds * 1e3;
            if (auto hit = brute_probe(other, ext, budget)) {
                const CanonicalForm cf = canonicalize(
                    apply_gen(hit->gen, ext.layers.back()[hit->parent].canon));
                const Descent extended = extend_descent(ext, hit->parent, hit->gen, cf);
                const auto oref = other.find(hit->meet);
                if (!oref) throw integrity_error("mitm: probe meet missing from index");
                const Descent stored = reconstruct_descent(other, *oref);
                if (extend_left)
                    return assemble(rl, rr, hit->meet, extended, stored, cfl, cfr);
                return assemble(rl, rr, hit->meet, stored, extended, cfl, cfr);
            }
        }

        const auto t0 = std::chrono::steady_clock::now();
        const auto meet = extend_one_step_mitm(ext, other, opts.threads);
        last_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (meet) return assemble_from_refs(left, right, *meet, cfl, cfr);
    }
    throw resource_error("mitm: depth budget " + std::to_string(opts.max_total_depth) +
                         " exhausted without a meet");
}

}  // namespace so6synth
