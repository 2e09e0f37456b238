#include "so6synth/generators.hpp"

namespace so6synth {

namespace {

// Cell codes for the hardcoded gate images: 0, +-1, and +-2 meaning
// +-1/sqrt(2).
So6Matrix from_cells(const int (&cells)[6][6]) {
    So6Matrix m;
    for (int row = 0; row < 6; ++row) {
        for (int col = 0; col < 6; ++col) {
            switch (cells[row][col]) {
                case 0: break;
                case 1: m.at(row, col) = Dyadic::one(); break;
                case -1: m.at(row, col) = Dyadic::minus_one(); break;
                case 2: m.at(row, col) = Dyadic::inv_sqrt2(); break;
                case -2: m.at(row, col) = -Dyadic::inv_sqrt2(); break;
                default: throw integrity_error("gate image: bad cell code");
            }
        }
    }
    return m;
}

// One fused step of (x + sign*y) / sqrt(2) without an intermediate pack.
Dyadic add_div_sqrt2(Dyadic x, Dyadic y, int sign) {
    int64_t a, b, c;
    Dyadic::aligned_sum(x, y, sign, a, b, c);
    if (a == 0 && b == 0) return Dyadic::zero();
    return Dyadic::reduce(a, b, c + 1);
}

template <int A, int B, bool Inv>  // 0-based row pair
So6Matrix kernel(const So6Matrix& u) {
    So6Matrix r = u;
    for (int col = 0; col < 6; ++col) {
        const Dyadic x = u.at(A, col);
        const Dyadic y = u.at(B, col);
        if constexpr (Inv) {
            r.at(A, col) = add_div_sqrt2(x, y, +1);
            r.at(B, col) = add_div_sqrt2(x, y, -1);
        } else {
            r.at(A, col) = add_div_sqrt2(x, y, -1);
            r.at(B, col) = add_div_sqrt2(x, y, +1);
        }
    }
    return r;
}

using Kernel = So6Matrix (*)(const So6Matrix&);

template <bool Inv>
constexpr std::array<Kernel, GenIndex::kPairCount> make_kernels() {
    return {
        kernel<0, 1, Inv>, kernel<0, 2, Inv>, kernel<0, 3, Inv>, kernel<0, 4, Inv>,
        kernel<0, 5, Inv>, kernel<1, 2, Inv>, kernel<1, 3, Inv>, kernel<1, 4, Inv>,
        kernel<1, 5, Inv>, kernel<2, 3, Inv>, kernel<2, 4, Inv>, kernel<2, 5, Inv>,
        kernel<3, 4, Inv>, kernel<3, 5, Inv>, kernel<4, 5, Inv>,
    };
}

constexpr auto kPlainKernels = make_kernels<false>();
constexpr auto kInvKernels = make_kernels<true>();

}  // namespace

So6Matrix gate_image(Gate g) {
    switch (g) {
        case Gate::H0: {
            static const int cells[6][6] = {
                {0, 0, 1, 0, 0, 0},  {0, -1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0},
                {0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 1, 0},  {0, 0, 0, 0, 0, 1},
            };
            return from_cells(cells);
        }
        case Gate::S0: {
            static const int cells[6][6] = {
                {0, -1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1},
            };
            return from_cells(cells);
        }
        case Gate::T0: {
            static const int cells[6][6] = {
                {2, -2, 0, 0, 0, 0}, {2, 2, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 1, 0, 0},  {0, 0, 0, 0, 1, 0}, {0, 0, 0, 0, 0, 1},
            };
            return from_cells(cells);
        }
        case Gate::H1: {
            static const int cells[6][6] = {
                {1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0},  {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 0, 0, 1}, {0, 0, 0, 0, -1, 0}, {0, 0, 0, 1, 0, 0},
            };
            return from_cells(cells);
        }
        case Gate::S1: {
            static const int cells[6][6] = {
                {1, 0, 0, 0, 0, 0},  {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 0, -1, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 0, 1},
            };
            return from_cells(cells);
        }
        case Gate::T1: {
            static const int cells[6][6] = {
                {1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}, {0, 0, 1, 0, 0, 0},
                {0, 0, 0, 2, -2, 0}, {0, 0, 0, 2, 2, 0}, {0, 0, 0, 0, 0, 1},
            };
            return from_cells(cells);
        }
        case Gate::CZ: {
            static const int cells[6][6] = {
                {0, -1, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0},  {0, 0, 0, 0, 0, -1},
                {0, 0, 0, 0, -1, 0}, {0, 0, 0, 1, 0, 0},  {0, 0, 1, 0, 0, 0},
            };
            return from_cells(cells);
        }
    }
    throw integrity_error("gate image: unknown gate");
}

GenIndex GenIndex::make(int i, int j, bool involutive) {
    if (i < 1 || j < 1 || i >= j || j > 6)
        throw integrity_error("generator index: need 1 <= i < j <= 6");
    GenIndex g;
    g.i = static_cast<uint8_t>(i);
    g.j = static_cast<uint8_t>(j);
    g.involutive = involutive;
    return g;
}

GenIndex GenIndex::from_id(int id, bool involutive) {
    if (id < 0 || id >= kPairCount) throw integrity_error("generator index: id out of range");
    for (int i = 1; i <= 5; ++i) {
        for (int j = i + 1; j <= 6; ++j) {
            GenIndex g = make(i, j, involutive);
            if (g.id() == id) return g;
        }
    }
    throw integrity_error("generator index: unreachable");
}

So6Matrix generator(GenIndex g) {
    So6Matrix m = So6Matrix::identity_matrix();
    const int a = g.i - 1, b = g.j - 1;
    const Dyadic r = Dyadic::inv_sqrt2();
    if (g.involutive) {
        m.at(a, a) = r;
        m.at(a, b) = r;
        m.at(b, a) = r;
        m.at(b, b) = -r;
    } else {
        m.at(a, a) = r;
        m.at(a, b) = -r;
        m.at(b, a) = r;
        m.at(b, b) = r;
    }
    return m;
}

So6Matrix apply_gen(GenIndex g, const So6Matrix& u) {
    return (g.involutive ? kInvKernels : kPlainKernels)[g.id()](u);
}

SignedPerm conj_perm(int i, int j) {
    const GenIndex g = GenIndex::plain(i, j);  // validates the pair
    std::array<uint8_t, 6> images{};
    images[g.i - 1] = 0;
    images[g.j - 1] = 1;
    uint8_t next = 2;
    for (int k = 0; k < 6; ++k) {
        if (k == g.i - 1 || k == g.j - 1) continue;
        images[k] = next++;
    }
    return SignedPerm::from_images(images, 0);
}

std::pair<GenIndex, SignedPerm> commute_left(const SignedPerm& s, GenIndex g) {
    if (!g.involutive) throw integrity_error("commute_left: plain generator unsupported");
    const auto images = s.images();
    const int p = images[g.i - 1], q = images[g.j - 1];
    const GenIndex out = GenIndex::inv(std::min(p, q) + 1, std::max(p, q) + 1);
    // s' = X(p,q) * s * X(i,j); the involutive generators are self-inverse.
    const So6Matrix m = apply_gen(out, sp_act_left(s, generator(g)));
    const auto sp = as_signed_perm(m);
    if (!sp) throw integrity_error("commute_left: residue is not a signed permutation");
    return {out, *sp};
}

SignedPerm push_left_through(const SignedPerm& s, std::vector<GenIndex>& steps) {
    SignedPerm cur = s;
    for (GenIndex& step : steps) {
        auto [g, next] = commute_left(cur, step);
        step = g;
        cur = next;
    }
    return cur;
}

So6Matrix evaluate_word(const Word& w) {
    So6Matrix m = to_matrix(w.correction);
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) m = apply_gen(*it, m);
    return m;
}

So6Matrix evaluate_word_on(const Word& w, const So6Matrix& base) {
    So6Matrix m = sp_act_left(w.correction, base);
    for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) m = apply_gen(*it, m);
    return m;
}

}  // namespace so6synth
