#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <set>
#include <vector>

#include "so6synth/so6_matrix.hpp"

// Slow, independent reference implementations for differential testing.
// Nothing here is ever on a hot path, and none of it shares the optimized
// code paths of the production modules (only the type definitions).
namespace so6synth::oracle {

using BigInt = boost::multiprecision::cpp_int;

// Unbounded-precision mirror of Dyadic: (a + b*sqrt(2)) / sqrt(2)^c.
struct BigDyadic {
    BigInt a = 0, b = 0;
    int64_t c = 0;

    friend bool operator==(const BigDyadic& x, const BigDyadic& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c;
    }
};

BigDyadic big_reduce(BigInt a, BigInt b, int64_t c);
BigDyadic big_from(Dyadic d);
Dyadic big_to_dyadic(const BigDyadic& x);  // throws overflow_error when out of range
BigDyadic big_add(const BigDyadic& x, const BigDyadic& y);
BigDyadic big_sub(const BigDyadic& x, const BigDyadic& y);
BigDyadic big_mul(const BigDyadic& x, const BigDyadic& y);
BigDyadic big_twist(const BigDyadic& x);
BigDyadic big_div_sqrt2(const BigDyadic& x);

// Exhaustive canonical form under U -> P1*U*P2, all 46080 signed row
// actions, greedy column minimization on the right. O(6) variant (both
// determinants allowed).
So6Matrix naive_canon(const So6Matrix& u);

// det-+1-only variant: row actions restricted to det +1 and the right
// action minimized over column arrangements of determinant +1.
So6Matrix naive_canon_so6(const So6Matrix& u);

bool naive_equivalent(const So6Matrix& u, const So6Matrix& v);
bool naive_equivalent_so6(const So6Matrix& u, const So6Matrix& v);

// det-pair label of a signed-permutation witness pair, as a Z2 x Z2 element:
// bit 0 = det(l) < 0, bit 1 = det(r) < 0.
int det_label(const SignedPerm& l, const SignedPerm& r);

// The subgroup of Z2 x Z2 formed by det pairs of the stabilizer
// {(S1, S2) : S1 * K * S2 = K} of a class representative. Two members of one
// O(6) class are det-+1-only equivalent iff their witness det labels differ
// by an element of this subgroup.
std::set<int> stabilizer_det_pairs(const So6Matrix& k);

// Unquotiented breadth-first enumeration of words over the 15 involutive
// generators up to length k (k <= 4), grouped into equivalence classes with
// true minimal distances, under both group variants.
struct BfsClasses {
    // Per distance: one representative per O(6)-variant class.
    std::vector<std::vector<So6Matrix>> o6;
    // Per distance: number of det-+1-only classes.
    std::vector<size_t> so6_counts;
};

BfsClasses naive_bfs(const So6Matrix& root, unsigned k);

}  // namespace so6synth::oracle
