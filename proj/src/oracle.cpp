#include "so6synth/oracle.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "so6synth/canon.hpp"
#include "so6synth/generators.hpp"

namespace so6synth::oracle {

BigDyadic big_reduce(BigInt a, BigInt b, int64_t c) {
    if (c < 0) throw overflow_error("oracle: negative exponent");
    if (a == 0 && b == 0) return BigDyadic{};
    while (c > 0 && a % 2 == 0) {
        BigInt na = b, nb = a / 2;
        a = na;
        b = nb;
        --c;
        if (a == 0 && b == 0) return BigDyadic{};
    }
    return BigDyadic{a, b, c};
}

BigDyadic big_from(Dyadic d) { return BigDyadic{d.a(), d.b(), d.c()}; }

Dyadic big_to_dyadic(const BigDyadic& x) {
    if (x.a > Dyadic::kCoeffMax || x.a < -Dyadic::kCoeffMax || x.b > Dyadic::kCoeffMax ||
        x.b < -Dyadic::kCoeffMax || x.c > Dyadic::kExpMax)
        throw overflow_error("oracle: value out of packed range");
    return Dyadic::reduce(static_cast<int64_t>(x.a), static_cast<int64_t>(x.b), x.c);
}

namespace {

// Multiplies the numerator by sqrt(2)^gap (exponent alignment).
void big_raise(BigDyadic& x, int64_t gap) {
    if (x.a == 0 && x.b == 0) return;
    if (gap & 1) {
        BigInt na = 2 * x.b, nb = x.a;
        x.a = na;
        x.b = nb;
    }
    const int64_t m = gap / 2;
    x.a <<= static_cast<unsigned>(m);
    x.b <<= static_cast<unsigned>(m);
}

}  // namespace

BigDyadic big_add(const BigDyadic& x, const BigDyadic& y) {
    BigDyadic p = x, q = y;
    if (p.c < q.c) {
        big_raise(p, q.c - p.c);
        p.c = q.c;
    } else if (q.c < p.c) {
        big_raise(q, p.c - q.c);
        q.c = p.c;
    }
    return big_reduce(p.a + q.a, p.b + q.b, p.c);
}

BigDyadic big_sub(const BigDyadic& x, const BigDyadic& y) {
    return big_add(x, BigDyadic{-y.a, -y.b, y.c});
}

BigDyadic big_mul(const BigDyadic& x, const BigDyadic& y) {
    return big_reduce(x.a * y.a + 2 * x.b * y.b, x.a * y.b + y.a * x.b, x.c + y.c);
}

BigDyadic big_twist(const BigDyadic& x) {
    if (x.c & 1) return BigDyadic{-x.a, x.b, x.c};
    return BigDyadic{x.a, -x.b, x.c};
}

BigDyadic big_div_sqrt2(const BigDyadic& x) {
    if (x.a == 0 && x.b == 0) return x;
    return big_reduce(x.a, x.b, x.c + 1);
}

namespace {

using Keys = std::array<uint64_t, 6>;

struct OracleColumn {
    Keys keys;
    std::array<Dyadic, 6> vals;

    friend bool operator<(const OracleColumn& x, const OracleColumn& y) {
        return x.keys < y.keys;
    }
};

std::array<Dyadic, 6> row_acted_column(const So6Matrix& u, const SignedPerm& p1, int c) {
    const auto images = p1.images();
    std::array<Dyadic, 6> v;
    for (int r = 0; r < 6; ++r) {
        const Dyadic e = u.at(r, c);
        v[images[r]] = p1.sign(r) < 0 ? -e : e;
    }
    return v;
}

OracleColumn make_column(const std::array<Dyadic, 6>& vals) {
    OracleColumn oc;
    oc.vals = vals;
    for (int r = 0; r < 6; ++r) oc.keys[r] = vals[r].order_key();
    return oc;
}

OracleColumn negate_column(const OracleColumn& oc) {
    OracleColumn n;
    for (int r = 0; r < 6; ++r) {
        n.vals[r] = -oc.vals[r];
        n.keys[r] = n.vals[r].order_key();
    }
    return n;
}

std::array<Keys, 6> candidate_keys(const std::array<OracleColumn, 6>& cols) {
    std::array<Keys, 6> k;
    for (int c = 0; c < 6; ++c) k[c] = cols[c].keys;
    return k;
}

So6Matrix cols_to_matrix(const std::array<OracleColumn, 6>& cols) {
    So6Matrix m;
    for (int c = 0; c < 6; ++c)
        for (int r = 0; r < 6; ++r) m.at(r, c) = cols[c].vals[r];
    return m;
}

// Parity of the permutation sorting `cols` (columns assumed distinct).
int sort_parity(const std::array<OracleColumn, 6>& cols) {
    std::array<int, 6> order = {0, 1, 2, 3, 4, 5};
    std::sort(order.begin(), order.end(), [&](int x, int y) { return cols[x] < cols[y]; });
    int inv = 0;
    for (int i = 0; i < 6; ++i)
        for (int j = i + 1; j < 6; ++j)
            if (order[i] > order[j]) ++inv;
    return (inv & 1) ? -1 : +1;
}

}  // namespace

So6Matrix naive_canon(const So6Matrix& u) {
    bool have = false;
    std::array<Keys, 6> best_keys{};
    So6Matrix best;
    for (uint32_t code = 0; code < SignedPerm::kCount; ++code) {
        const SignedPerm p1 = SignedPerm::from_code(static_cast<uint16_t>(code));
        std::array<OracleColumn, 6> cols;
        for (int c = 0; c < 6; ++c) {
            const OracleColumn oc = make_column(row_acted_column(u, p1, c));
            const OracleColumn neg = negate_column(oc);
            cols[c] = neg.keys < oc.keys ? neg : oc;
        }
        std::sort(cols.begin(), cols.end());
        const auto keys = candidate_keys(cols);
        if (!have || keys < best_keys) {
            have = true;
            best_keys = keys;
            best = cols_to_matrix(cols);
        }
    }
    return best;
}

So6Matrix naive_canon_so6(const So6Matrix& u) {
    bool have = false;
    std::array<Keys, 6> best_keys{};
    So6Matrix best;
    for (uint32_t code = 0; code < SignedPerm::kCount; ++code) {
        const SignedPerm p1 = SignedPerm::from_code(static_cast<uint16_t>(code));
        if (p1.det() != +1) continue;
        std::array<OracleColumn, 6> base;
        for (int c = 0; c < 6; ++c) base[c] = make_column(row_acted_column(u, p1, c));
        for (int signs = 0; signs < 64; ++signs) {
            std::array<OracleColumn, 6> cols;
            int sign_prod = +1;
            for (int c = 0; c < 6; ++c) {
                if (signs & (1 << c)) {
                    cols[c] = negate_column(base[c]);
                    sign_prod = -sign_prod;
                } else {
                    cols[c] = base[c];
                }
            }
            // Need det(P2) = sign(pi) * prod(signs) = +1: take the sorted
            // arrangement when its parity already matches, otherwise the
            // cheapest odd repair (swap the last two sorted columns).
            const int parity = sort_parity(cols);
            std::sort(cols.begin(), cols.end());
            if (parity * sign_prod != +1) std::swap(cols[4], cols[5]);
            const auto keys = candidate_keys(cols);
            if (!have || keys < best_keys) {
                have = true;
                best_keys = keys;
                best = cols_to_matrix(cols);
            }
        }
    }
    return best;
}

bool naive_equivalent(const So6Matrix& u, const So6Matrix& v) {
    return naive_canon(u) == naive_canon(v);
}

bool naive_equivalent_so6(const So6Matrix& u, const So6Matrix& v) {
    return naive_canon_so6(u) == naive_canon_so6(v);
}

namespace {

struct MatHash {
    size_t operator()(const So6Matrix& m) const { return m.flat_hash(); }
};

}  // namespace

int det_label(const SignedPerm& l, const SignedPerm& r) {
    return (l.det() < 0 ? 1 : 0) | (r.det() < 0 ? 2 : 0);
}

std::set<int> stabilizer_det_pairs(const So6Matrix& k) {
    std::set<int> h;
    const So6Matrix kt = transpose(k);
    for (uint32_t code = 0; code < SignedPerm::kCount; ++code) {
        const SignedPerm s1 = SignedPerm::from_code(static_cast<uint16_t>(code));
        // S2 = K^T * S1^-1 * K must be a signed permutation.
        const So6Matrix w = mat_mul(kt, sp_act_left(s1.inverse(), k));
        if (auto s2 = as_signed_perm(w)) h.insert(det_label(s1, *s2));
        if (h.size() == 4) break;
    }
    return h;
}

BfsClasses naive_bfs(const So6Matrix& root, unsigned k) {
    if (k > 4) throw resource_error("oracle: naive_bfs limited to k <= 4");
    validate_so6(root, /*throwing=*/true);

    struct ClassData {
        unsigned distance;                  // O(6)-class distance
        std::map<int, unsigned> label_min;  // witness det label -> min distance
    };
    std::unordered_map<So6Matrix, ClassData, MatHash> classes;
    std::unordered_map<So6Matrix, bool, MatHash> seen;  // unquotiented visited set

    std::vector<So6Matrix> frontier = {root};
    seen[root] = true;
    for (unsigned d = 0; d <= k; ++d) {
        for (const So6Matrix& m : frontier) {
            const CanonicalForm cf = canonicalize(m);
            auto [it, fresh] = classes.try_emplace(cf.matrix, ClassData{d, {}});
            auto [lit, lfresh] =
                it->second.label_min.try_emplace(det_label(cf.left, cf.right), d);
            (void)fresh;
            (void)lit;
            (void)lfresh;
        }
        if (d == k) break;
        std::vector<So6Matrix> next;
        for (const So6Matrix& m : frontier) {
            for (int id = 0; id < GenIndex::kPairCount; ++id) {
                So6Matrix c = apply_gen(GenIndex::from_id(id, true), m);
                auto [it, fresh] = seen.try_emplace(c, true);
                (void)it;
                if (fresh) next.push_back(std::move(c));
            }
        }
        frontier = std::move(next);
    }

    BfsClasses out;
    out.o6.resize(k + 1);
    out.so6_counts.assign(k + 1, 0);
    for (const auto& [rep, data] : classes) out.o6[data.distance].push_back(rep);
    for (auto& layer : out.o6)
        std::sort(layer.begin(), layer.end(),
                  [](const So6Matrix& x, const So6Matrix& y) { return flat_less(x, y); });

    // Independent check of the fast grouping: distinct class representatives
    // must have distinct exhaustive canonical forms.
    {
        std::set<std::array<uint64_t, 6 * 6>> naive_forms;
        for (const auto& layer : out.o6) {
            for (const So6Matrix& rep : layer) {
                const So6Matrix nc = naive_canon(rep);
                std::array<uint64_t, 36> words{};
                for (int i = 0; i < 36; ++i) words[i] = nc.flat()[i].packed();
                if (!naive_forms.insert(words).second)
                    throw integrity_error("oracle: fast grouping split a class");
            }
        }
    }

    // det-+1-only refinement: inside one O(6) class, two members are
    // SO-equivalent iff their witness det labels differ by a stabilizer det
    // pair of the representative.
    for (const auto& [rep, data] : classes) {
        const std::set<int> h = stabilizer_det_pairs(rep);
        std::map<int, unsigned> coset_min;  // canonical coset label -> distance
        for (const auto& [label, dist] : data.label_min) {
            int canon_label = label;
            for (int e : h) canon_label = std::min(canon_label, label ^ e);
            auto [it, fresh] = coset_min.try_emplace(canon_label, dist);
            if (!fresh) it->second = std::min(it->second, dist);
        }
        for (const auto& [label, dist] : coset_min) {
            (void)label;
            ++out.so6_counts[dist];
        }
    }
    return out;
}

}  // namespace so6synth::oracle
