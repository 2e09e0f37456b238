#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so6synth/canon.hpp"
#include "so6synth/generators.hpp"
#include "so6synth/oracle.hpp"

using namespace so6synth;

namespace {

std::mt19937_64 rng(0xca0717ULL);

SignedPerm random_perm() {
    std::uniform_int_distribution<int> code(0, SignedPerm::kCount - 1);
    return SignedPerm::from_code(static_cast<uint16_t>(code(rng)));
}

So6Matrix random_node(int len) {
    So6Matrix m = So6Matrix::identity_matrix();
    std::uniform_int_distribution<int> gen(0, GenIndex::kPairCount - 1);
    for (int i = 0; i < len; ++i) m = apply_gen(GenIndex::from_id(gen(rng), true), m);
    return m;
}

int random_len() {
    std::uniform_int_distribution<int> len(0, 12);
    return len(rng);
}

}  // namespace

TEST_CASE("entry_key identifies entries up to sign and nothing else") {
    std::uniform_int_distribution<int64_t> coeff(-1000, 1000);
    std::uniform_int_distribution<int64_t> exp(0, 10);
    for (int t = 0; t < 20000; ++t) {
        const Dyadic x = Dyadic::reduce(coeff(rng), coeff(rng), exp(rng));
        const Dyadic y = Dyadic::reduce(coeff(rng), coeff(rng), exp(rng));
        CHECK(entry_key(x) == entry_key(-x));
        CHECK((entry_key(x) == entry_key(y)) == (x == y || x == -y));
    }
}

TEST_CASE("signature is exactly orbit invariant") {
    for (int t = 0; t < 1000; ++t) {
        const So6Matrix u = random_node(random_len());
        const Signature s = signature(u);
        CHECK(signature(sp_act_left(random_perm(), u)) == s);
        CHECK(signature(sp_act_right(u, random_perm())) == s);
        CHECK(signature(sp_act_right(sp_act_left(random_perm(), u), random_perm())) == s);
    }
}

TEST_CASE("signature separates easy classes") {
    const So6Matrix id = So6Matrix::identity_matrix();
    const So6Matrix t0 = gate_image(Gate::T0);
    CHECK(signature(id) != signature(t0));
    CHECK(signature(gate_image(Gate::CZ)) == signature(id));  // CZ is a signed perm
}

TEST_CASE("canonicalize returns a valid witnessed orbit minimum") {
    for (int t = 0; t < 300; ++t) {
        const So6Matrix u = random_node(random_len());
        const CanonicalForm cf = canonicalize(u);
        CHECK(sp_act_left(cf.left, sp_act_right(u, cf.right)) == cf.matrix);
        // Invariance across the orbit.
        const So6Matrix v = sp_act_left(random_perm(), sp_act_right(u, random_perm()));
        CHECK(canonicalize(v).matrix == cf.matrix);
        // Idempotence with identity witnesses.
        const CanonicalForm again = canonicalize(cf.matrix);
        CHECK(again.matrix == cf.matrix);
        CHECK(again.left.is_identity());
        CHECK(again.right.is_identity());
    }
}

TEST_CASE("production search matches the reference loop bit for bit") {
    for (int t = 0; t < 60; ++t) {
        const So6Matrix u = random_node(random_len());
        const CanonicalForm fast = canonicalize(u);
        const CanonicalForm slow = canonicalize_reference(u);
        CHECK(fast.matrix == slow.matrix);
        CHECK(sp_act_left(slow.left, sp_act_right(u, slow.right)) == slow.matrix);
    }
}

TEST_CASE("canonical form agrees with the exhaustive oracle") {
    for (int t = 0; t < 40; ++t) {
        const So6Matrix u = random_node(random_len());
        CHECK(canonicalize(u).matrix == oracle::naive_canon(u));
    }
}

TEST_CASE("equivalent agrees with the oracle") {
    // Engineered positives: same class by construction.
    for (int t = 0; t < 100; ++t) {
        const So6Matrix u = random_node(random_len());
        const So6Matrix v = sp_act_left(random_perm(), sp_act_right(u, random_perm()));
        CHECK(equivalent(u, v));
    }
    // Random pairs, checked against the oracle either way.
    for (int t = 0; t < 30; ++t) {
        const So6Matrix u = random_node(random_len());
        const So6Matrix v = random_node(random_len());
        CHECK(equivalent(u, v) == oracle::naive_equivalent(u, v));
    }
    CHECK(equivalent(gate_image(Gate::CZ), So6Matrix::identity_matrix()));
    CHECK(!equivalent(gate_image(Gate::T0), So6Matrix::identity_matrix()));
    CHECK(equivalent(gate_image(Gate::T0), gate_image(Gate::T1)));
}
