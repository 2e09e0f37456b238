#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "so6synth/mitm.hpp"

using namespace so6synth;

namespace {

std::mt19937_64 rng(0x317337ULL);

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

// The mitm contract: evaluate_word_on(word, rl) == rr * C for some signed
// permutation C. mitm verifies this internally; re-derive C here as well.
void check_contract(const MitmResult& res, const So6Matrix& rl, const So6Matrix& rr) {
    const So6Matrix ev = evaluate_word_on(res.word, rl);
    const So6Matrix c = mat_mul(transpose(rr), ev);
    CHECK(as_signed_perm(c).has_value());
    CHECK(res.tcount == res.word.steps.size());
    CHECK(res.left_depth + res.right_depth == res.tcount);
}

}  // namespace

TEST_CASE("identical roots give the empty word") {
    for (int t = 0; t < 10; ++t) {
        const So6Matrix u = random_node(6);
        const MitmResult res = mitm(u, u);
        CHECK(res.word.steps.empty());
        CHECK(res.tcount == 0);
        check_contract(res, u, u);
    }
    // Equivalent-but-unequal roots also meet at depth zero.
    const So6Matrix u = random_node(5);
    const So6Matrix v = sp_act_left(random_perm(), sp_act_right(u, random_perm()));
    const MitmResult res = mitm(u, v);
    CHECK(res.tcount == 0);
    check_contract(res, u, v);
}

TEST_CASE("Clifford operators synthesize with T-count zero") {
    const So6Matrix id = So6Matrix::identity_matrix();
    for (Gate g : {Gate::H0, Gate::H1, Gate::S0, Gate::S1, Gate::CZ}) {
        const MitmResult res = mitm(gate_image(g), id);
        CHECK(res.tcount == 0);
        check_contract(res, gate_image(g), id);
    }
}

TEST_CASE("T gates synthesize with T-count one") {
    const So6Matrix id = So6Matrix::identity_matrix();
    for (Gate g : {Gate::T0, Gate::T1}) {
        const MitmResult res = mitm(gate_image(g), id);
        CHECK(res.tcount == 1);
        check_contract(res, gate_image(g), id);
    }
}

TEST_CASE("exhaustive optimality for every class at distance <= 4") {
    const So6Matrix id = So6Matrix::identity_matrix();
    Lut lut = init_lut(id);
    for (int k = 0; k < 4; ++k) extend_one_step(lut);
    for (uint32_t d = 0; d < lut.layers.size(); ++d) {
        for (const Node& n : lut.layers[d]) {
            const MitmResult res = mitm(n.canon, id);
            CHECK(res.tcount == d);
            check_contract(res, n.canon, id);
        }
    }
}

TEST_CASE("random words synthesize at their exact table distance") {
    const So6Matrix id = So6Matrix::identity_matrix();
    Lut lut = init_lut(id);
    for (int k = 0; k < 8; ++k) extend_one_step(lut);
    std::uniform_int_distribution<int> len(0, 8);
    for (int t = 0; t < 12; ++t) {
        const So6Matrix u = random_node(len(rng));
        const auto ref = lut_lookup(lut, u);
        REQUIRE(ref.has_value());
        const MitmResult res = mitm(u, id);
        CHECK(res.tcount == ref->depth);
        check_contract(res, u, id);
        // Synthesis in the other direction has the same optimal T-count.
        const MitmResult rev = mitm(id, u);
        CHECK(rev.tcount == ref->depth);
        check_contract(rev, id, u);
    }
}

TEST_CASE("probing does not change the optimal T-count") {
    const So6Matrix id = So6Matrix::identity_matrix();
    MitmOptions probed;
    probed.use_probe = true;
    probed.probe_budget_ms = 10000.0;
    std::uniform_int_distribution<int> len(1, 7);
    for (int t = 0; t < 8; ++t) {
        const So6Matrix u = random_node(len(rng));
        const MitmResult plain = mitm(u, id);
        const MitmResult fast = mitm(u, id, probed);
        CHECK(plain.tcount == fast.tcount);
        check_contract(fast, u, id);
    }
}

TEST_CASE("clifford_fixup recovers a witness pair and rejects non-equivalents") {
    for (int t = 0; t < 5; ++t) {
        const So6Matrix a = random_node(6);
        const So6Matrix b = sp_act_left(random_perm(), sp_act_right(a, random_perm()));
        const auto [c0, c1] = clifford_fixup(a, b);
        CHECK(sp_act_left(c1, sp_act_right(a, c0)) == b);
    }
    CHECK_THROWS_AS(clifford_fixup(gate_image(Gate::T0), So6Matrix::identity_matrix()),
                    integrity_error);
}

TEST_CASE("brute_probe respects its budget and finds one-step meets") {
    const So6Matrix id = So6Matrix::identity_matrix();
    Lut deep = init_lut(id);
    for (int k = 0; k < 4; ++k) extend_one_step(deep);
    Lut shallow = init_lut(id);
    for (int k = 0; k < 3; ++k) extend_one_step(shallow);

    CHECK(!brute_probe(deep, shallow, 0.0).has_value());

    const auto hit = brute_probe(deep, shallow, 60000.0);
    REQUIRE(hit.has_value());
    const So6Matrix cand = canonicalize(
        apply_gen(hit->gen, shallow.layers.back()[hit->parent].canon)).matrix;
    CHECK(cand == hit->meet);
    CHECK(!shallow.find(hit->meet).has_value());
    const auto ref = deep.find(hit->meet);
    REQUIRE(ref.has_value());
    CHECK(ref->depth == 4);
}

TEST_CASE("the depth budget raises resource_error") {
    MitmOptions tight;
    tight.max_total_depth = 1;
    const So6Matrix u = random_node(6);
    // Make sure the target genuinely needs more than one step.
    Lut lut = init_lut(So6Matrix::identity_matrix());
    extend_one_step(lut);
    if (!lut_lookup(lut, u).has_value())
        CHECK_THROWS_AS(mitm(u, So6Matrix::identity_matrix(), tight), resource_error);
}
