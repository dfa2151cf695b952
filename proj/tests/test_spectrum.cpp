#include "doctest.h"

#include <random>

#include "fusionforge/closed_rules.hpp"
#include "fusionforge/criteria.hpp"
#include "naive_spectrum.hpp"

using namespace fusionforge;

namespace {

// replay the zero-criterion conditions on a claimed witness
bool replay_zero(const FusionRing& R, const std::vector<std::int64_t>& w) {
    REQUIRE(w.size() == 9);
    const auto& du = R.dual;
    int i1 = w[0], i2 = w[1], i3 = w[2], i4 = w[3], i5 = w[4], i6 = w[5], i7 = w[6], i8 = w[7],
        i9 = w[8];
    if (!(R.N(i4, i1, i6) && R.N(i5, i4, i2) && R.N(i5, i6, i3) && R.N(i7, i9, i1) &&
          R.N(i2, i7, i8) && R.N(i8, i9, i3)))
        return false;
    std::int64_t sum = 0;
    for (int k = 0; k < R.rank; ++k)
        sum += R.N(i4, i7, k) * R.N(du[i5], i8, k) * R.N(i6, du[i9], k);
    if (sum != 0) return false;
    if (R.N(i2, i1, i3) != 1) return false;
    bool c4 = naive::psum(R, i5, i4, i3, du[i1]) == 1 ||
              naive::psum(R, i2, du[i4], i3, du[i6]) == 1 ||
              naive::psum(R, du[i5], i2, i6, du[i1]) == 1;
    bool c5 = naive::psum(R, i2, i7, i3, du[i9]) == 1 ||
              naive::psum(R, i8, du[i7], i3, du[i1]) == 1 ||
              naive::psum(R, du[i2], i8, i1, du[i9]) == 1;
    return c4 && c5;
}

FusionRing random_sparse_tensor(std::mt19937_64& gen, int rank, int fill) {
    FusionRing R = FusionRing::zeros(rank);
    std::uniform_int_distribution<int> idx(0, rank - 1);
    std::uniform_int_distribution<int> val(1, 2);
    for (int t = 0; t < fill; ++t) R.N(idx(gen), idx(gen), idx(gen)) = val(gen);
    // random involutive dual permutation
    std::vector<int> perm(rank);
    for (int i = 0; i < rank; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), gen);
    for (int i = 0; i + 1 < rank; i += 2) {
        R.dual[perm[i]] = perm[i + 1];
        R.dual[perm[i + 1]] = perm[i];
    }
    return R;
}

}  // namespace

TEST_CASE("planted zero-spectrum witness is found and replays") {
    FusionRing R = FusionRing::zeros(4);
    R.N(1, 1, 1) = 1;
    R.N(1, 1, 2) = 1;
    R.N(1, 2, 3) = 1;
    R.N(2, 1, 3) = 1;
    R.N(3, 1, 3) = 1;
    R.N(3, 2, 3) = 1;
    auto res = zero_spectrum(R, SpectrumMode::Exhaustive);
    CHECK(res.verdict == Verdict::Fail);
    REQUIRE(res.witness.size() == 9);
    CHECK(replay_zero(R, res.witness));
    CHECK(naive::zero_witness(R).has_value());
}

TEST_CASE("planted one-spectrum witness is found") {
    FusionRing R = FusionRing::zeros(4);
    R.N(0, 0, 1) = 1;
    R.N(0, 2, 2) = 1;
    R.N(0, 2, 3) = 2;
    R.N(0, 3, 2) = 1;
    R.N(1, 2, 1) = 2;
    R.N(1, 3, 0) = 1;
    R.N(2, 0, 2) = 1;
    R.N(2, 2, 0) = 1;
    R.N(2, 3, 1) = 2;
    R.N(3, 2, 3) = 1;
    auto res = one_spectrum(R, SpectrumMode::Exhaustive);
    CHECK(res.verdict == Verdict::Fail);
    REQUIRE(res.witness.size() == 10);
    auto nv = naive::one_witness(R);
    REQUIRE(nv.has_value());
    CHECK(std::vector<std::int64_t>(nv->begin(), nv->end()) == res.witness);
}

TEST_CASE("exhaustive searches pass on the small interpolated rings") {
    for (std::int64_t q : {2, 3, 4, 5, 7, 8, 9, 11}) {
        FusionRing R = closedrules::rules_psl2(q);
        CHECK(zero_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Pass);
        CHECK(one_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Pass);
    }
    for (std::int64_t q : {2, 3, 4, 5, 6, 7, 9, 11, 13, 15, 16}) {
        FusionRing T = closedrules::rules_etingof(q);
        CHECK(zero_spectrum(T, SpectrumMode::Exhaustive).verdict == Verdict::Pass);
        CHECK(one_spectrum(T, SpectrumMode::Exhaustive).verdict == Verdict::Pass);
    }
}

TEST_CASE("pruned search agrees with the naive oracle on the families (rank <= 7)") {
    for (std::int64_t q : {2, 3, 4, 5, 7, 9}) {
        FusionRing R = closedrules::rules_psl2(q);
        CHECK(naive::zero_witness(R).has_value() ==
              (zero_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
        CHECK(naive::one_witness(R).has_value() ==
              (one_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
    }
    for (std::int64_t q : {2, 3, 4, 5, 6}) {
        FusionRing T = closedrules::rules_etingof(q);
        CHECK(naive::zero_witness(T).has_value() ==
              (zero_spectrum(T, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
        CHECK(naive::one_witness(T).has_value() ==
              (one_spectrum(T, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
    }
}

TEST_CASE("property: pruned search agrees with the naive oracle on random tensors") {
    std::mt19937_64 gen(0xabcdef);
    int zero_hits = 0, one_hits = 0;
    for (int trial = 0; trial < 60; ++trial) {
        FusionRing R = random_sparse_tensor(gen, 4, 6 + trial % 7);
        bool nz = naive::zero_witness(R).has_value();
        bool no = naive::one_witness(R).has_value();
        CHECK(nz == (zero_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
        CHECK(no == (one_spectrum(R, SpectrumMode::Exhaustive).verdict == Verdict::Fail));
        zero_hits += nz;
        one_hits += no;
    }
    // the sample should exercise both outcomes
    CHECK(zero_hits > 0);
    CHECK(one_hits > 0);
}

TEST_CASE("fast-path hypotheses hold where the proofs use them") {
    // even q >= 6: two universal elements (x_{q+1,c})
    for (std::int64_t q : {6, 8, 10, 14}) {
        FusionRing R = closedrules::rules_even(q);
        auto z = zero_spectrum(R, SpectrumMode::Fast);
        auto o = one_spectrum(R, SpectrumMode::Fast);
        CHECK(z.verdict == Verdict::Pass);
        CHECK(z.method == Method::FastPathLemma);
        CHECK(o.verdict == Verdict::Pass);
        CHECK(o.method == Method::FastPathLemma);
    }
    // q = 1 mod 4: x_{q,1} is universal, so the zero criterion is immediate
    for (std::int64_t q : {5, 9, 13, 17}) {
        FusionRing R = closedrules::rules_1mod4(q);
        auto z = zero_spectrum(R, SpectrumMode::Fast);
        CHECK(z.verdict == Verdict::Pass);
        CHECK(z.method == Method::FastPathLemma);
    }
}

TEST_CASE("fast mode matches exhaustive on the awkward congruence classes") {
    // q = 3 mod 4 (no universal element) and the one-spectrum for q = 1 mod 4
    for (std::int64_t q : {7, 11, 15, 19}) {
        FusionRing R = closedrules::rules_3mod4(q);
        CHECK(zero_spectrum(R, SpectrumMode::Fast).verdict == Verdict::Pass);
        CHECK(one_spectrum(R, SpectrumMode::Fast).verdict == Verdict::Pass);
    }
    for (std::int64_t q : {5, 9, 13, 17}) {
        FusionRing R = closedrules::rules_1mod4(q);
        CHECK(one_spectrum(R, SpectrumMode::Fast).verdict == Verdict::Pass);
    }
    for (std::int64_t q : {17, 23, 31, 40}) {
        FusionRing T = closedrules::rules_etingof(q);
        CHECK(zero_spectrum(T, SpectrumMode::Fast).verdict == Verdict::Pass);
        CHECK(one_spectrum(T, SpectrumMode::Fast).verdict == Verdict::Pass);
    }
}

TEST_CASE("midpath restrictions agree with the full exhaustive search at moderate rank") {
    for (std::int64_t q : {13, 17}) {
        FusionRing R = closedrules::rules_1mod4(q);
        CHECK(one_spectrum(R, SpectrumMode::Fast).verdict ==
              one_spectrum(R, SpectrumMode::Exhaustive).verdict);
    }
    for (std::int64_t q : {15, 19}) {
        FusionRing R = closedrules::rules_3mod4(q);
        auto fast_z = zero_spectrum(R, SpectrumMode::Fast);
        auto full_z = zero_spectrum(R, SpectrumMode::Exhaustive);
        CHECK(fast_z.verdict == full_z.verdict);
        auto fast_o = one_spectrum(R, SpectrumMode::Fast);
        auto full_o = one_spectrum(R, SpectrumMode::Exhaustive);
        CHECK(fast_o.verdict == full_o.verdict);
    }
}
