#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "so6synth/so6_matrix.hpp"

namespace so6synth {

// SO(6) images of the named two-qubit gates (qubit-0 forms are the "gate
// tensor I" forms).
enum class Gate { H0, H1, S0, S1, T0, T1, CZ };

So6Matrix gate_image(Gate g);

// A T-step generator acting on coordinate pair (i, j), 1 <= i < j <= 6.
// The plain family is the Clifford-conjugated T image; the involutive family
// additionally swaps the two touched rows, giving a symmetric det(-1)
// involution. Fifteen pairs in lexicographic order give the dense id 0..14.
struct GenIndex {
    uint8_t i = 1, j = 2;  // 1-based, i < j
    bool involutive = true;

    static constexpr int kPairCount = 15;

    static GenIndex plain(int i, int j) { return make(i, j, false); }
    static GenIndex inv(int i, int j) { return make(i, j, true); }
    static GenIndex from_id(int id, bool involutive = true);

    int id() const {  // dense 0..14 within a family
        const int a = i - 1, b = j - 1;
        return a * 5 - a * (a - 1) / 2 + (b - a - 1);
    }

    friend bool operator==(GenIndex x, GenIndex y) {
        return x.i == y.i && x.j == y.j && x.involutive == y.involutive;
    }
    friend bool operator!=(GenIndex x, GenIndex y) { return !(x == y); }

private:
    static GenIndex make(int i, int j, bool involutive);
};

constexpr uint8_t kNoGen = 0xff;  // "no previous generator" marker

So6Matrix generator(GenIndex g);

// Applies generator(g) on the left, touching only rows i and j:
//   involutive:  row_i' = (row_i + row_j)/sqrt2,  row_j' = (row_i - row_j)/sqrt2
//   plain:       row_i' = (row_i - row_j)/sqrt2,  row_j' = (row_i + row_j)/sqrt2
// Dispatched through a table of 15 specialized kernels per family.
So6Matrix apply_gen(GenIndex g, const So6Matrix& u);

// The signed permutation P with  to_matrix(P)^T * gate_image(T0) * to_matrix(P)
// == generator(plain i,j). Sign conventions follow the explicit printed
// generator matrices.
SignedPerm conj_perm(int i, int j);

// Commutation of a signed permutation across an involutive generator:
//   to_matrix(s) * generator(g) == generator(g') * to_matrix(s')
// Returns (g', s'). Only defined for the involutive family.
std::pair<GenIndex, SignedPerm> commute_left(const SignedPerm& s, GenIndex g);

// Rewrites  s * X_{steps[0]} * ... * X_{steps[n-1]}  as
// X_{steps'[0]} * ... * X_{steps'[n-1]} * s_out, in place.
SignedPerm push_left_through(const SignedPerm& s, std::vector<GenIndex>& steps);

// Synthesis output: generator steps (leftmost applied last) followed by a
// signed-permutation correction, evaluating to
//   X_{steps[0]} * X_{steps[1]} * ... * X_{steps[n-1]} * to_matrix(correction).
struct Word {
    std::vector<GenIndex> steps;
    SignedPerm correction;

    size_t tcount() const { return steps.size(); }
};

So6Matrix evaluate_word(const Word& w);

// Evaluates the word against an explicit base matrix in place of the
// correction's identity factor: steps applied to correction * base.
So6Matrix evaluate_word_on(const Word& w, const So6Matrix& base);

}  // namespace so6synth
