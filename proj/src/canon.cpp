#include "so6synth/canon.hpp"

#include <algorithm>
#include <vector>

namespace so6synth {

namespace {

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

uint64_t fnv1a(const uint64_t* words, int n) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (int k = 0; k < n; ++k) {
        h ^= words[k];
        h *= 0x100000001b3ull;
    }
    return h;
}

// Symmetric (order-free) combine of line hashes: wrapping sum and xor of a
// bijective mix, folded together.
uint64_t combine_lines(const uint64_t (&line_hash)[6]) {
    uint64_t s = 0, x = 0;
    for (uint64_t h : line_hash) {
        const uint64_t m = splitmix64(h);
        s += m;
        x ^= m * 0x9e3779b97f4a7c15ull;
    }
    return s ^ (x >> 1);
}

}  // namespace

uint64_t entry_key(Dyadic d) {
    const int64_t a = d.a(), b = d.b();
    if (a < 0 || (a == 0 && b < 0)) return (-d).packed();
    return d.packed();
}

Signature signature(const So6Matrix& u) {
    uint64_t col_hash[6], row_hash[6];
    for (int col = 0; col < 6; ++col) {
        uint64_t keys[6];
        for (int row = 0; row < 6; ++row) keys[row] = entry_key(u.at(row, col));
        std::sort(keys, keys + 6);
        col_hash[col] = fnv1a(keys, 6);
    }
    for (int row = 0; row < 6; ++row) {
        uint64_t keys[6];
        for (int col = 0; col < 6; ++col) keys[col] = entry_key(u.at(row, col));
        std::sort(keys, keys + 6);
        row_hash[row] = fnv1a(keys, 6);
    }
    const uint64_t h =
        splitmix64(combine_lines(col_hash) * 0x2545f4914f6cdd1dull + combine_lines(row_hash));
    return Signature{h};
}

namespace {

// A column as six order_key words plus the source column index and the sign
// applied during normalization.
struct NormColumn {
    std::array<uint64_t, 6> keys;
    std::array<Dyadic, 6> vals;
    uint8_t src;
    bool flipped;

    friend bool operator<(const NormColumn& x, const NormColumn& y) { return x.keys < y.keys; }
};

CanonicalForm reference_impl(const So6Matrix& u) {
    bool have_best = false;
    std::array<std::array<uint64_t, 6>, 6> best_keys;
    So6Matrix best;
    SignedPerm best_left, best_right;

    for (uint32_t code = 0; code < SignedPerm::kCount; ++code) {
        const SignedPerm p1 = SignedPerm::from_code(static_cast<uint16_t>(code));
        const auto images = p1.images();
        std::array<NormColumn, 6> cols;
        for (int c = 0; c < 6; ++c) {
            NormColumn& nc = cols[c];
            nc.src = static_cast<uint8_t>(c);
            // V = P1 * U: V[images[r]][c] = sign(r) * U[r][c].
            std::array<Dyadic, 6> v;
            for (int r = 0; r < 6; ++r) {
                const Dyadic e = u.at(r, c);
                v[images[r]] = p1.sign(r) < 0 ? -e : e;
            }
            // Lex-min of (v, -v) by order_key.
            bool flip = false;
            for (int r = 0; r < 6; ++r) {
                const uint64_t k = v[r].order_key();
                const uint64_t nk = (-v[r]).order_key();
                if (k == nk) continue;
                flip = nk < k;
                break;
            }
            for (int r = 0; r < 6; ++r) {
                nc.vals[r] = flip ? -v[r] : v[r];
                nc.keys[r] = nc.vals[r].order_key();
            }
            nc.flipped = flip;
        }
        std::sort(cols.begin(), cols.end());
        if (have_best) {
            int cmp = 0;
            for (int c = 0; c < 6 && cmp == 0; ++c) {
                if (cols[c].keys < best_keys[c])
                    cmp = -1;
                else if (best_keys[c] < cols[c].keys)
                    cmp = 1;
            }
            if (cmp >= 0) continue;  // equal candidate: keep first witnesses
        }
        have_best = true;
        uint8_t right_signs = 0;
        std::array<uint8_t, 6> right_images{};
        for (int c = 0; c < 6; ++c) {
            best_keys[c] = cols[c].keys;
            for (int r = 0; r < 6; ++r) best.at(r, c) = cols[c].vals[r];
            right_images[c] = cols[c].src;
            if (cols[c].flipped) right_signs |= uint8_t(1) << c;
        }
        best_left = p1;
        best_right = SignedPerm::from_images(right_images, right_signs);
    }

    if (best == u) return CanonicalForm{best, SignedPerm(), SignedPerm()};
    return CanonicalForm{best, best_left, best_right};
}

// --- Production search -----------------------------------------------------
//
// The orbit element is W[r][k] = eps_r * delta_k * U[rho(r)][pi(k)]. The
// column-major lex minimum is found by a level-synchronous branch-and-bound
// over the 36 result positions: row assignments branch inside result column
// 0, the source column branches at the top of every result column, and sign
// products are never branched (the non-minimal sign is strictly worse).
// Sign variables live in a parity union-find (6 rows + 6 columns + a +1
// anchor); a product eps_r*delta_k is pinned the first time a nonzero entry
// is emitted at (r, k) with the endpoints in different components.

constexpr int kAnchor = 12;  // node ids: rows 0..5, columns 6..11, anchor 12

struct SearchState {
    std::array<int8_t, 6> rho{-1, -1, -1, -1, -1, -1};  // result row -> source row
    std::array<int8_t, 6> pi{-1, -1, -1, -1, -1, -1};   // result col -> source col
    uint8_t rows_used = 0;
    uint8_t cols_used = 0;
    std::array<int8_t, 13> parent{};
    std::array<uint8_t, 13> par{};  // parity (1 = negated) relative to parent

    SearchState() {
        for (int i = 0; i < 13; ++i) parent[i] = static_cast<int8_t>(i);
    }

    std::pair<int, int> find(int x) {  // (root, parity to root)
        int p = 0;
        while (parent[x] != x) {
            p ^= par[x];
            x = parent[x];
        }
        return {x, p};
    }

    // Returns eps_r * delta_k in {-1,+1}, or 0 if still free.
    int product(int r, int k) {
        auto [ra, pa] = find(r);
        auto [rb, pb] = find(6 + k);
        if (ra != rb) return 0;
        return (pa ^ pb) ? -1 : +1;
    }

    void pin(int r, int k, int s) {  // sets eps_r * delta_k = s
        auto [ra, pa] = find(r);
        auto [rb, pb] = find(6 + k);
        parent[ra] = static_cast<int8_t>(rb);
        par[ra] = static_cast<uint8_t>(pa ^ pb ^ (s < 0 ? 1 : 0));
    }

    int value(int node) {  // resolved sign; free components default to +1
        auto [root, p] = find(node);
        (void)root;
        return p ? -1 : +1;
    }
};

struct Candidate {
    uint64_t key;
    Dyadic val;
    SearchState state;
};

constexpr size_t kStateCap = 4096;

// Evaluates emitting position (r, k) on `st` (already holding the rho/pi
// assignment for it) and appends the outcome.
void emit(std::vector<Candidate>& out, SearchState st, const So6Matrix& u, int r, int k) {
    const Dyadic v = u.at(st.rho[r], st.pi[k]);
    if (v.is_zero()) {
        out.push_back({v.order_key(), v, st});
        return;
    }
    const int s = st.product(r, k);
    if (s != 0) {
        const Dyadic w = s < 0 ? -v : v;
        out.push_back({w.order_key(), w, st});
        return;
    }
    const Dyadic neg = -v;
    const bool flip = neg.order_key() < v.order_key();
    st.pin(r, k, flip ? -1 : +1);
    const Dyadic w = flip ? neg : v;
    out.push_back({w.order_key(), w, st});
}

bool search_impl(const So6Matrix& u, CanonicalForm& out) {
    std::vector<SearchState> states(1);
    std::vector<Candidate> cands;
    So6Matrix result;

    for (int k = 0; k < 6; ++k) {
        for (int r = 0; r < 6; ++r) {
            cands.clear();
            for (const SearchState& st : states) {
                if (k == 0) {
                    for (int i = 0; i < 6; ++i) {  // choose rho(r)
                        if (st.rows_used & (1 << i)) continue;
                        SearchState next = st;
                        next.rho[r] = static_cast<int8_t>(i);
                        next.rows_used |= uint8_t(1) << i;
                        if (r == 0) {
                            for (int c = 0; c < 6; ++c) {  // choose pi(0) too
                                SearchState next2 = next;
                                next2.pi[0] = static_cast<int8_t>(c);
                                next2.cols_used = uint8_t(1) << c;
                                emit(cands, next2, u, r, k);
                            }
                        } else {
                            emit(cands, next, u, r, k);
                        }
                    }
                } else if (r == 0) {
                    for (int c = 0; c < 6; ++c) {  // choose pi(k)
                        if (st.cols_used & (1 << c)) continue;
                        SearchState next = st;
                        next.pi[k] = static_cast<int8_t>(c);
                        next.cols_used |= uint8_t(1) << c;
                        emit(cands, next, u, r, k);
                    }
                } else {
                    emit(cands, st, u, r, k);
                }
            }
            uint64_t min_key = cands[0].key;
            for (const Candidate& c : cands) min_key = std::min(min_key, c.key);
            states.clear();
            for (Candidate& c : cands) {
                if (c.key == min_key) states.push_back(std::move(c.state));
            }
            if (states.size() > kStateCap) return false;
            result.at(r, k) = [&] {
                for (const Candidate& c : cands)
                    if (c.key == min_key) return c.val;
                throw integrity_error("canon: empty candidate set");
            }();
        }
    }

    SearchState& win = states.front();
    std::array<uint8_t, 6> left_images{}, right_images{};
    uint8_t left_signs = 0, right_signs = 0;
    for (int r = 0; r < 6; ++r) {
        left_images[win.rho[r]] = static_cast<uint8_t>(r);
        if (win.value(r) < 0) left_signs |= uint8_t(1) << win.rho[r];
    }
    for (int k = 0; k < 6; ++k) {
        right_images[k] = static_cast<uint8_t>(win.pi[k]);
        if (win.value(6 + k) < 0) right_signs |= uint8_t(1) << k;
    }
    out.matrix = result;
    out.left = SignedPerm::from_images(left_images, left_signs);
    out.right = SignedPerm::from_images(right_images, right_signs);
    return true;
}

}  // namespace

CanonicalForm canonicalize_reference(const So6Matrix& u) { return reference_impl(u); }

CanonicalForm canonicalize(const So6Matrix& u) {
    CanonicalForm cf;
    if (!search_impl(u, cf)) return reference_impl(u);
    if (sp_act_left(cf.left, sp_act_right(u, cf.right)) != cf.matrix)
        throw integrity_error("canon: witness verification failed");
    if (cf.matrix == u) return CanonicalForm{cf.matrix, SignedPerm(), SignedPerm()};
    return cf;
}

bool equivalent(const So6Matrix& u, const So6Matrix& v) {
    if (u == v) return true;
    if (signature(u) != signature(v)) return false;
    return canonicalize(u).matrix == canonicalize(v).matrix;
}

}  // namespace so6synth
