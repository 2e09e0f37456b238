#include "so6synth/so6_matrix.hpp"

#include <cstdlib>

namespace so6synth {

namespace {

// Widened dyadic used by the verification paths (matrix products, dot
// products, determinants). Coefficients live in 128 bits so products and
// short sums of packed entries cannot wrap.
struct WideDyadic {
    __int128 a = 0, b = 0;
    int64_t c = 0;

    static WideDyadic from(Dyadic d) { return {d.a(), d.b(), d.c()}; }

    bool is_zero() const { return a == 0 && b == 0; }
};

constexpr __int128 kWideLimit = (__int128{1} << 120);

void check_wide(const WideDyadic& x) {
    if (x.a >= kWideLimit || x.a <= -kWideLimit || x.b >= kWideLimit || x.b <= -kWideLimit)
        throw overflow_error("so6: widened intermediate overflow");
}

WideDyadic wide_mul(const WideDyadic& x, const WideDyadic& y) {
    WideDyadic r{x.a * y.a + 2 * x.b * y.b, x.a * y.b + y.a * x.b, x.c + y.c};
    check_wide(r);
    return r;
}

void wide_raise(WideDyadic& x, int64_t gap) {
    x.c += gap;
    if (x.is_zero()) return;
    if (gap & 1) {
        const __int128 na = 2 * x.b, nb = x.a;
        x.a = na;
        x.b = nb;
    }
    const int64_t m = gap / 2;
    if (m > 110) throw overflow_error("so6: widened alignment overflow");
    x.a <<= m;
    x.b <<= m;
    check_wide(x);
}

WideDyadic wide_add(WideDyadic x, WideDyadic y) {
    if (x.c < y.c)
        wide_raise(x, y.c - x.c);
    else if (y.c < x.c)
        wide_raise(y, x.c - y.c);
    WideDyadic r{x.a + y.a, x.b + y.b, x.c};
    check_wide(r);
    return r;
}

WideDyadic wide_neg(WideDyadic x) {
    x.a = -x.a;
    x.b = -x.b;
    return x;
}

Dyadic wide_reduce(WideDyadic x) {
    if (x.a == 0 && x.b == 0) return Dyadic::zero();
    while (x.c > 0 && (x.a & 1) == 0) {
        const __int128 na = x.b, nb = x.a / 2;
        x.a = na;
        x.b = nb;
        --x.c;
        if (x.a == 0 && x.b == 0) return Dyadic::zero();
    }
    if (x.a > Dyadic::kCoeffMax || x.a < -Dyadic::kCoeffMax || x.b > Dyadic::kCoeffMax ||
        x.b < -Dyadic::kCoeffMax || x.c < 0)
        throw overflow_error("so6: reduced entry does not fit packed field");
    return Dyadic::reduce(static_cast<int64_t>(x.a), static_cast<int64_t>(x.b), x.c);
}

bool wide_equals_int(const WideDyadic& x, int64_t n) {
    WideDyadic r = x;
    while (r.c > 0 && (r.a & 1) == 0 && !(r.a == 0 && r.b == 0)) {
        const __int128 na = r.b, nb = r.a / 2;
        r.a = na;
        r.b = nb;
        --r.c;
    }
    if (r.a == 0 && r.b == 0) return n == 0;
    return r.c == 0 && r.b == 0 && r.a == n;
}

}  // namespace

So6Matrix So6Matrix::identity_matrix() {
    So6Matrix m;
    for (int i = 0; i < 6; ++i) m.at(i, i) = Dyadic::one();
    return m;
}

So6Matrix mat_mul(const So6Matrix& a, const So6Matrix& b) {
    So6Matrix r;
    for (int col = 0; col < 6; ++col) {
        for (int row = 0; row < 6; ++row) {
            WideDyadic acc;
            bool first = true;
            for (int k = 0; k < 6; ++k) {
                const Dyadic& x = a.at(row, k);
                const Dyadic& y = b.at(k, col);
                if (x.is_zero() || y.is_zero()) continue;
                const WideDyadic p = wide_mul(WideDyadic::from(x), WideDyadic::from(y));
                acc = first ? p : wide_add(acc, p);
                first = false;
            }
            r.at(row, col) = first ? Dyadic::zero() : wide_reduce(acc);
        }
    }
    return r;
}

So6Matrix transpose(const So6Matrix& a) {
    So6Matrix r;
    for (int col = 0; col < 6; ++col)
        for (int row = 0; row < 6; ++row) r.at(row, col) = a.at(col, row);
    return r;
}

int det(const So6Matrix& a) {
    // Laplace expansion as a subset DP: f[S] is the determinant of the
    // submatrix on rows 0..|S|-1 and column set S.
    std::array<WideDyadic, 64> f{};
    std::array<bool, 64> zero{};
    zero.fill(true);
    f[0] = WideDyadic{1, 0, 0};
    zero[0] = false;
    for (int s = 1; s < 64; ++s) {
        const int row = __builtin_popcount(static_cast<unsigned>(s)) - 1;
        WideDyadic acc;
        bool acc_zero = true;
        int parity = 0;
        for (int col = 0; col < 6; ++col) {
            if (!(s & (1 << col))) continue;
            const int sub = s & ~(1 << col);
            const Dyadic& e = a.at(row, col);
            if (!e.is_zero() && !zero[sub]) {
                WideDyadic term = wide_mul(WideDyadic::from(e), f[sub]);
                if ((row + parity) & 1) term = wide_neg(term);  // cofactor sign (-1)^(row+pos)
                acc = acc_zero ? term : wide_add(acc, term);
                acc_zero = false;
            }
            ++parity;
        }
        f[s] = acc;
        zero[s] = acc_zero;
    }
    const WideDyadic& d = f[63];
    if (zero[63]) return 0;
    if (wide_equals_int(d, 1)) return 1;
    if (wide_equals_int(d, -1)) return -1;
    throw integrity_error("so6: determinant outside {+1,-1,0}");
}

bool is_orthogonal(const So6Matrix& a) {
    for (int r1 = 0; r1 < 6; ++r1) {
        for (int r2 = r1; r2 < 6; ++r2) {
            WideDyadic acc;
            bool first = true;
            for (int k = 0; k < 6; ++k) {
                const Dyadic& x = a.at(r1, k);
                const Dyadic& y = a.at(r2, k);
                if (x.is_zero() || y.is_zero()) continue;
                const WideDyadic p = wide_mul(WideDyadic::from(x), WideDyadic::from(y));
                acc = first ? p : wide_add(acc, p);
                first = false;
            }
            const int64_t expect = (r1 == r2) ? 1 : 0;
            if (first ? expect != 0 : !wide_equals_int(acc, expect)) return false;
        }
    }
    return true;
}

std::optional<SignedPerm> as_signed_perm(const So6Matrix& a) {
    std::array<uint8_t, 6> images{};
    uint8_t signs = 0;
    uint8_t seen_rows = 0;
    const Dyadic one = Dyadic::one();
    const Dyadic minus_one = Dyadic::minus_one();
    for (int col = 0; col < 6; ++col) {
        int hit = -1;
        for (int row = 0; row < 6; ++row) {
            const Dyadic& e = a.at(row, col);
            if (e.is_zero()) continue;
            if (hit >= 0 || (e != one && e != minus_one)) return std::nullopt;
            hit = row;
            if (e == minus_one) signs |= uint8_t(1) << col;
        }
        if (hit < 0 || (seen_rows & (uint8_t(1) << hit))) return std::nullopt;
        seen_rows |= uint8_t(1) << hit;
        images[col] = static_cast<uint8_t>(hit);
    }
    return SignedPerm::from_images(images, signs);
}

So6Matrix to_matrix(const SignedPerm& p) {
    So6Matrix m;
    const auto images = p.images();
    for (int col = 0; col < 6; ++col)
        m.at(images[col], col) = p.sign(col) < 0 ? Dyadic::minus_one() : Dyadic::one();
    return m;
}

So6Matrix sp_act_left(const SignedPerm& p, const So6Matrix& u) {
    So6Matrix r;
    const auto images = p.images();
    for (int row = 0; row < 6; ++row) {
        const int dst = images[row];
        const bool neg = p.sign(row) < 0;
        for (int col = 0; col < 6; ++col) {
            const Dyadic& e = u.at(row, col);
            r.at(dst, col) = neg ? -e : e;
        }
    }
    return r;
}

So6Matrix sp_act_right(const So6Matrix& u, const SignedPerm& p) {
    So6Matrix r;
    const auto images = p.images();
    // (U * P) e_c = U (sign_c e_{images[c]}) = sign_c * column images[c] of U.
    for (int col = 0; col < 6; ++col) {
        const bool neg = p.sign(col) < 0;
        const int src = images[col];
        for (int row = 0; row < 6; ++row) {
            const Dyadic& e = u.at(row, src);
            r.at(row, col) = neg ? -e : e;
        }
    }
    return r;
}

bool validate_so6(const So6Matrix& u, bool throwing) {
    auto fail = [&](const char* msg) -> bool {
        if (throwing) throw integrity_error(msg);
        return false;
    };
    for (const Dyadic& e : u.flat()) {
        try {
            Dyadic::from_packed_checked(e.packed());
        } catch (const integrity_error&) {
            return fail("so6: non-reduced matrix entry");
        }
    }
    if (!is_orthogonal(u)) return fail("so6: matrix is not exactly orthogonal");
    const int d = det(u);
    if (d != 1 && d != -1) return fail("so6: determinant outside {+1,-1}");
    return true;
}

}  // namespace so6synth
