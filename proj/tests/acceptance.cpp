// Acceptance suite: one test case per numbered criterion, each printing a
// single PASS/FAIL line. Run through ctest (one entry per criterion) or
// directly: ./acceptance
//
// Criterion 8's empty-survivor expectation is implemented as stated and is
// expected to fail: the sieve's constraint set provably admits 15 rank-10/11
// types (re-verified exactly inside the test). The survivors are reported as
// "not excluded by these numerical constraints".

#include "doctest.h"

#include <chrono>
#include <cmath>
#include <random>
#include <set>

#include "fusionforge/json_io.hpp"
#include "naive_spectrum.hpp"

using namespace fusionforge;

namespace {

struct Line {
    const char* name;
    bool pass = true;
    std::string note;
    ~Line() {
        std::printf("[ACCEPT] %s: %s%s%s\n", name, pass ? "PASS" : "FAIL",
                    note.empty() ? "" : " -- ", note.c_str());
        std::fflush(stdout);
    }
};

FusionRing golden(int q) {
    std::string path = std::string(FUSIONFORGE_FIXTURE_DIR) + "/golden_r" + std::to_string(q) + ".json";
    return ring_from_json(json::parse(read_file(path)));
}

}  // namespace

TEST_CASE("criterion 1: R_6 golden match") {
    Line line{"criterion 1 (R_6 golden match)"};
    FusionRing R = reconstruct(build_psl2_table(6));
    FusionRing G = golden(6);
    line.pass = (R.rank == 7) && (R.tensor == G.tensor) && (R.dual == G.dual);
    auto d = fpdims(R, nullptr);
    FusionType want{{ {1, 1}, {5, 3}, {6, 1}, {7, 2} }};
    line.pass = line.pass && fpdim_total(d) == 210 && fusion_type(d) == want;
    CHECK(line.pass);
}

TEST_CASE("criterion 2: R_15 and R_21 golden matches") {
    Line line{"criterion 2 (R_15/R_21 golden matches)"};
    FusionRing R15 = reconstruct(build_psl2_table(15));
    FusionRing G15 = golden(15);
    line.pass = (R15.rank == 10) && (R15.tensor == G15.tensor) && (R15.dual == G15.dual);
    line.pass = line.pass && fpdim_total(fpdims(R15)) == 1680;
    FusionRing R21 = reconstruct(build_psl2_table(21));
    FusionRing G21 = golden(21);
    line.pass = line.pass && (R21.rank == 13) && (R21.tensor == G21.tensor);
    line.pass = line.pass && fpdim_total(fpdims(R21)) == 4620;
    CHECK(line.pass);
}

TEST_CASE("criterion 3: oracle equivalence for q in 2..50, both families") {
    Line line{"criterion 3 (closed rules == Verlinde, q in 2..50, both families)"};
    for (std::int64_t q = 2; q <= 50 && line.pass; ++q) {
        for (const std::string fam : {"psl2", "etingof"}) {
            Eigentable t = (fam == "psl2") ? build_psl2_table(q) : build_etingof_table(q);
            if (!verify_schur_orthogonality(t)) { line.pass = false; line.note = "orthogonality q=" + std::to_string(q); break; }
            if (!verify_egyptian(t)) { line.pass = false; line.note = "egyptian q=" + std::to_string(q); break; }
            FusionRing V = reconstruct(t);  // includes the exact character property check
            FusionRing C = (fam == "psl2") ? closedrules::rules_psl2(q) : closedrules::rules_etingof(q);
            if (V.tensor != C.tensor || V.dual != C.dual) {
                line.pass = false;
                line.note = "tensor mismatch at q=" + std::to_string(q) + " " + fam;
                break;
            }
            if (!verify_axioms(V).ok()) {
                line.pass = false;
                line.note = "axioms q=" + std::to_string(q) + " " + fam;
                break;
            }
        }
    }
    CHECK(line.pass);
}

TEST_CASE("criterion 4: inner-product lemma suite for q in {6,8,15,19,21,25}") {
    Line line{"criterion 4 (lemma suite, all branches, all admissible tuples)"};
    int total = 0;
    for (std::int64_t q : {6, 8, 15, 19, 21, 25}) {
        LemmaReport rep = oracle_lemma_suite(q);
        total += rep.checked;
        if (!rep.ok()) {
            line.pass = false;
            line.note = "mismatch at q=" + std::to_string(q) + " lemma " + rep.mismatches[0].lemma;
        }
    }
    line.note = line.pass ? std::to_string(total) + " lemma instances, all exact" : line.note;
    CHECK(line.pass);
}

TEST_CASE("criterion 5: criteria battery for q in 2..50, both families, with spot values") {
    Line line{"criterion 5 (schur/ostrik/drinfeld/cyclotomic/isaacs/frobenius, exact)"};
    for (std::int64_t q = 2; q <= 50 && line.pass; ++q) {
        for (const std::string fam : {"psl2", "etingof"}) {
            Eigentable t = (fam == "psl2") ? build_psl2_table(q) : build_etingof_table(q);
            FusionRing R = (fam == "psl2") ? closedrules::rules_psl2(q) : closedrules::rules_etingof(q);
            auto dims = fpdims(R, &t);
            CriterionReport reps[] = {schur_product(t), ostrik(t), drinfeld_center(t),
                                      extended_cyclotomic(t), isaacs(t), frobenius_criterion(dims)};
            for (const auto& rep : reps) {
                if (rep.verdict != Verdict::Pass || rep.method != Method::Exact) {
                    line.pass = false;
                    line.note = std::string(criterion_name(rep.criterion)) + " " +
                                verdict_name(rep.verdict) + " at q=" + std::to_string(q) + " " + fam;
                }
            }
        }
    }
    // spot values. The zeta_7-family Schur sums of the q=6 table are exactly
    // {(q+1)^2/(q(q-1)), (q+1)/(q(q-1))} = {49/30, 7/30} (verified here by two
    // independent routes during development; the printed worked example's
    // rationals are not the values of these sums). Ostrik branch polynomials
    // evaluate exactly as printed.
    if (line.pass) {
        Eigentable t6 = build_psl2_table(6);
        std::set<Rational> seen;
        for (int j1 = 4; j1 <= 6; ++j1)
            for (int j2 = j1; j2 <= 6; ++j2)
                for (int j3 = j2; j3 <= 6; ++j3) {
                    auto v = schur_value(t6, j1, j2, j3).as_rational();
                    if (!v) { line.pass = false; break; }
                    seen.insert(*v);
                }
        if (seen != std::set<Rational>{make_rational(7, 30), make_rational(49, 30)}) {
            line.pass = false;
            line.note = "q=6 zeta_7-family Schur spot values";
        }
        if (ostrik_sum(t6) != make_rational(7454, 44100) ||
            ostrik_sum(build_psl2_table(15)) != make_rational(1364856, 11289600) ||
            ostrik_sum(build_psl2_table(5)) != make_rational(3656, 14400)) {
            line.pass = false;
            line.note = "ostrik branch polynomial spot values";
        }
    }
    CHECK(line.pass);
}

TEST_CASE("criterion 6: spectrum criteria") {
    Line line{"criterion 6 (zero/one spectrum: exhaustive small q, oracle agreement, fast paths)"};
    for (std::int64_t q = 2; q <= 11 && line.pass; ++q) {
        FusionRing R = closedrules::rules_psl2(q);
        if (zero_spectrum(R, SpectrumMode::Exhaustive).verdict != Verdict::Pass ||
            one_spectrum(R, SpectrumMode::Exhaustive).verdict != Verdict::Pass) {
            line.pass = false;
            line.note = "R_" + std::to_string(q);
        }
    }
    for (std::int64_t q = 2; q <= 13 && line.pass; ++q) {
        FusionRing T = closedrules::rules_etingof(q);
        if (zero_spectrum(T, SpectrumMode::Exhaustive).verdict != Verdict::Pass ||
            one_spectrum(T, SpectrumMode::Exhaustive).verdict != Verdict::Pass) {
            line.pass = false;
            line.note = "T_" + std::to_string(q);
        }
    }
    // naive full-enumeration oracle agreement at rank <= 6
    for (std::int64_t q : {2, 3, 4, 5, 7}) {
        FusionRing R = closedrules::rules_psl2(q);
        if (naive::zero_witness(R).has_value() || naive::one_witness(R).has_value()) {
            line.pass = false;
            line.note = "naive oracle disagrees on R_" + std::to_string(q);
        }
    }
    for (std::int64_t q : {2, 3, 4, 5, 6}) {
        FusionRing T = closedrules::rules_etingof(q);
        if (naive::zero_witness(T).has_value() || naive::one_witness(T).has_value()) {
            line.pass = false;
            line.note = "naive oracle disagrees on T_" + std::to_string(q);
        }
    }
    // fast-path lemma hypotheses hold for q even (two shared elements) and
    // zero-spectrum for q = 1 mod 4 (one shared element)
    for (std::int64_t q : {6, 8, 10, 12, 14, 16}) {
        FusionRing R = closedrules::rules_even(q);
        auto z = zero_spectrum(R, SpectrumMode::Fast);
        auto o = one_spectrum(R, SpectrumMode::Fast);
        if (z.method != Method::FastPathLemma || o.method != Method::FastPathLemma ||
            z.verdict != Verdict::Pass || o.verdict != Verdict::Pass) {
            line.pass = false;
            line.note = "fast path even q=" + std::to_string(q);
        }
    }
    for (std::int64_t q : {5, 9, 13, 17, 21}) {
        FusionRing R = closedrules::rules_1mod4(q);
        auto z = zero_spectrum(R, SpectrumMode::Fast);
        if (z.method != Method::FastPathLemma || z.verdict != Verdict::Pass) {
            line.pass = false;
            line.note = "fast path 1mod4 q=" + std::to_string(q);
        }
    }
    CHECK(line.pass);
}

TEST_CASE("criterion 7: structural statistics for q in 4..50") {
    Line line{"criterion 7 (multiplicity, duals, simplicity, divisibility obstruction)"};
    for (std::int64_t q = 4; q <= 50 && line.pass; ++q) {
        FusionRing R = closedrules::rules_psl2(q);
        if (q % 2 == 0 && multiplicity(R) > 2) { line.pass = false; line.note = "mult even q=" + std::to_string(q); }
        if (q % 2 == 1 && q >= 7 && multiplicity(R) > 3) { line.pass = false; line.note = "mult odd q=" + std::to_string(q); }
        int nonself = R.rank - self_dual_count(R);
        if (nonself != ((q % 4 == 3) ? 2 : 0)) { line.pass = false; line.note = "duals q=" + std::to_string(q); }
        if (!is_simple(R)) { line.pass = false; line.note = "simplicity q=" + std::to_string(q); }
        auto dims = fpdims(R);
        if (modular_divisibility(dims).verdict != Verdict::Fail) {
            line.pass = false;
            line.note = "missing obstruction q=" + std::to_string(q);
        }
        FusionRing T = closedrules::rules_etingof(q);
        if (modular_divisibility(fpdims(T)).verdict != Verdict::Fail) {
            line.pass = false;
            line.note = "missing obstruction T_" + std::to_string(q);
        }
    }
    // is_simple true exactly for q >= 4
    for (std::int64_t q : {2, 3}) {
        if (is_simple(closedrules::rules_psl2(q))) {
            line.pass = false;
            line.note = "R_" + std::to_string(q) + " should not be simple";
        }
    }
    CHECK(line.pass);
}

TEST_CASE("criterion 8: modular-type search certificate") {
    Line line{"criterion 8 (rank-11 sieve: empty survivor list expected)"};
    SearchCertificate cert;
    auto survivors = search_nonpointed_simple_modular_types(11, &cert);
    bool cert_ok = cert.completed && cert.nodes > 0;
    // the enumerator matches an independent bounded brute force for <= 6 terms
    bool enum_ok = true;
    {
        auto brute = [](int tmax, std::uint64_t c, std::uint64_t smax) {
            std::set<std::vector<std::uint64_t>> out;
            std::vector<std::uint64_t> cur;
            std::function<void(Rational, int, std::uint64_t)> rec = [&](Rational rem, int tleft,
                                                                        std::uint64_t smin) {
                if (rem == 0) {
                    out.insert(cur);
                    return;
                }
                if (tleft == 0) return;
                for (std::uint64_t s = smin; s <= smax; ++s) {
                    Rational d{Integer(1), Integer(s) * Integer(s)};
                    d.canonicalize();
                    if (d > rem) continue;
                    cur.push_back(s);
                    rec(rem - d, tleft - 1, s);
                    cur.pop_back();
                }
            };
            rec(Rational(Integer(c)), tmax, 1);
            return out;
        };
        for (int tmax = 1; tmax <= 6 && enum_ok; ++tmax)
            for (std::uint64_t c = 1; c <= 6 && enum_ok; ++c) {
                std::set<std::vector<std::uint64_t>> dfs;
                enumerate_unit_sum_of_inverse_squares(
                    tmax, c, [&](const std::vector<std::uint64_t>& s) {
                        if (s.back() <= 12) dfs.insert(s);
                    });
                if (dfs != brute(tmax, c, 12)) enum_ok = false;
            }
    }
    // every survivor re-verifies against the full constraint set
    bool survivors_verified = true;
    for (const auto& cand : survivors) {
        Rational sum(0);
        for (auto x : cand.s) {
            Rational d{Integer(1), Integer(x) * Integer(x)};
            d.canonicalize();
            sum += d;
        }
        std::uint64_t smax = cand.s.back();
        if (sum != Rational(Integer(cand.c)) ||
            std::count(cand.s.begin(), cand.s.end(), smax) != 1)
            survivors_verified = false;
        for (auto x : cand.s)
            if (smax % x) survivors_verified = false;
        for (auto d : cand.dims)
            if (d > 1 && is_prime_power(d)) survivors_verified = false;
    }
    bool empty_as_claimed = survivors.empty();
    line.pass = cert_ok && enum_ok && survivors_verified && empty_as_claimed;
    if (!empty_as_claimed)
        line.note = std::to_string(survivors.size()) +
                    " types pass every stated arithmetic constraint (each re-verified exactly "
                    "here and by an independent enumeration); smallest: dims (1,6,12,12,15,15,15,"
                    "20,20,30,30), global dim 3600. The empty-list expectation is not attainable "
                    "from these constraints; survivors are reported as not excluded.";
    CHECK(cert_ok);
    CHECK(enum_ok);
    CHECK(survivors_verified);
    CHECK(empty_as_claimed);
}

TEST_CASE("criterion 9: known-group sanity fixtures") {
    Line line{"criterion 9 (classical degree multisets for q = 2,3,4,5)"};
    auto degree_multiset = [](std::int64_t q) {
        std::multiset<std::int64_t> out;
        for (const auto& l : build_psl2_table(q).row_labels) out.insert(l.degree);
        return out;
    };
    line.pass = degree_multiset(2) == std::multiset<std::int64_t>{1, 1, 2} &&
                degree_multiset(3) == std::multiset<std::int64_t>{1, 1, 1, 3} &&
                degree_multiset(4) == std::multiset<std::int64_t>{1, 3, 3, 4, 5} &&
                degree_multiset(5) == std::multiset<std::int64_t>{1, 3, 3, 4, 5};
    CHECK(line.pass);
}

TEST_CASE("criterion 10: exact-number property suite") {
    Line line{"criterion 10 (randomized arithmetic identities, roots, embeddings)"};
    std::mt19937_64 gen(0xACCE57);
    auto random_cyclo = [&]() {
        std::uniform_int_distribution<unsigned> ord(1, 48);
        unsigned n = ord(gen);
        std::uniform_int_distribution<int> nt(0, 3), num(-4, 4);
        std::uniform_int_distribution<int> den(1, 4);
        std::uniform_int_distribution<unsigned> ex(0, n - 1);
        Cyclotomic x;
        for (int i = 0, t = nt(gen); i < t; ++i)
            x = x + make_rational(num(gen), den(gen)) * root_of_unity(n, ex(gen));
        return x;
    };
    // 10^4 randomized identities across canonicalization and conjugation
    for (int it = 0; it < 2500 && line.pass; ++it) {
        Cyclotomic x = random_cyclo(), y = random_cyclo();
        if (canonicalize(x + y) != canonicalize(canonicalize(x) + canonicalize(y))) line.pass = false;
        if (canonicalize(x * y) != canonicalize(canonicalize(x) * canonicalize(y))) line.pass = false;
        if (conjugate(conjugate(x)) != x) line.pass = false;
        if (conjugate(x * y) != conjugate(x) * conjugate(y)) line.pass = false;
    }
    if (!line.pass) line.note = "randomized identity failed";
    for (unsigned n = 1; n <= 200 && line.pass; ++n) {
        auto sq = as_rational(sqrt_integer(n) * sqrt_integer(n));
        if (!sq || *sq != static_cast<long>(n)) {
            line.pass = false;
            line.note = "sqrt roundtrip n=" + std::to_string(n);
        }
    }
    // certified embeddings within 1e-9 of independent references
    struct Ref { Cyclotomic v; double re, im; };
    std::vector<Ref> refs;
    refs.push_back({sqrt_integer(2), 1.41421356237309504880, 0.0});
    refs.push_back({sqrt_integer(21), 4.58257569495584000659, 0.0});
    refs.push_back({sqrt_integer(199), 14.1067359796658844252, 0.0});
    refs.push_back({root_of_unity(7, 1), 0.62348980185873353052, 0.78183148246802980871});
    refs.push_back({root_of_unity(5, 1) + root_of_unity(5, 4), 0.61803398874989484820, 0.0});
    for (const auto& ref : refs) {
        auto iv = embed(ref.v, 128);
        if (std::abs(iv.re.mid() - ref.re) > 1e-9 || std::abs(iv.im.mid() - ref.im) > 1e-9 ||
            iv.re.width() > 1e-12) {
            line.pass = false;
            line.note = "embedding reference";
        }
    }
    CHECK(line.pass);
}
