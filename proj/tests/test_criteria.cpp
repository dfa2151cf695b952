#include "doctest.h"

#include <set>

#include "fusionforge/criteria.hpp"

using namespace fusionforge;

TEST_CASE("schur values for the q = 6 table") {
    Eigentable t = build_psl2_table(6);
    // zeta_7-family columns are 4,5,6; their triple values are exactly
    // (q+1)^2/(q(q-1)) = 49/30 (generic) and (q+1)/(q(q-1)) = 7/30 (degenerate)
    std::set<Rational> seen;
    for (int j1 = 4; j1 <= 6; ++j1)
        for (int j2 = j1; j2 <= 6; ++j2)
            for (int j3 = j2; j3 <= 6; ++j3) {
                auto v = schur_value(t, j1, j2, j3).as_rational();
                REQUIRE(v.has_value());
                seen.insert(*v);
            }
    CHECK(seen == std::set<Rational>{make_rational(7, 30), make_rational(49, 30)});
    // all-identity triple: sum_i d_i^2 = FPdim
    auto v111 = schur_value(t, 0, 0, 0).as_rational();
    REQUIRE(v111.has_value());
    CHECK(*v111 == 210);
    CHECK(schur_product(t).verdict == Verdict::Pass);
}

TEST_CASE("schur rejects a negative sum") {
    // synthetic 2x2 table whose (1,1,1) sum is 1 + (-2)^3 = -7
    Eigentable t;
    t.rank = 2;
    t.row_labels = {{1, 1, Family::Unit}, {1, 1, Family::Point}};
    t.columns = {{Family::Unit, 1, 1}, {Family::Point, 1, 1}};
    t.class_sizes = {1, 1};
    t.codegrees = {2, 5};
    t.fpdim_total = 2;
    t.entries = {Cyclotomic(Rational(1)), Cyclotomic(Rational(1)), Cyclotomic(Rational(1)),
                 Cyclotomic(Rational(-2))};
    auto rep = schur_product(t);
    CHECK(rep.verdict == Verdict::Fail);
    REQUIRE(rep.witness.size() == 3);
    auto v = schur_value(t, static_cast<int>(rep.witness[0]), static_cast<int>(rep.witness[1]),
                         static_cast<int>(rep.witness[2]))
                 .as_rational();
    REQUIRE(v.has_value());
    CHECK(*v < 0);
}

TEST_CASE("ostrik values match the branch polynomials") {
    // q even: (q^5 - q^3 - 3q^2 + 2) / (q^2 (q^2-1)^2)
    Eigentable t6 = build_psl2_table(6);
    CHECK(ostrik_sum(t6) == make_rational(7454, 44100));
    CHECK(ostrik(t6).verdict == Verdict::Pass);
    // q = 3 mod 4: (2q^5 - 3q^4 - 9q^2 + 6) / (q^2 (q^2-1)^2)
    Eigentable t15 = build_psl2_table(15);
    CHECK(ostrik_sum(t15) == make_rational(1364856, 11289600));
    CHECK(ostrik(t15).verdict == Verdict::Pass);
    // q = 1 mod 4: (2q^5 - 3q^4 - 4q^3 - 9q^2 + 6) / (q^2 (q^2-1)^2)
    Eigentable t5 = build_psl2_table(5);
    CHECK(ostrik_sum(t5) == make_rational(3656, 14400));
    // rank-1 boundary: 2 * 1 <= 1 + 1
    Eigentable triv;
    triv.rank = 1;
    triv.row_labels = {{1, 1, Family::Unit}};
    triv.columns = {{Family::Unit, 1, 1}};
    triv.class_sizes = {1};
    triv.fpdim_total = 1;
    triv.entries = {Cyclotomic(Rational(1))};
    triv.finalize();
    CHECK(ostrik(triv).verdict == Verdict::Pass);
}

TEST_CASE("drinfeld center ratios") {
    Eigentable t21 = build_psl2_table(21);
    CHECK(drinfeld_center(t21).verdict == Verdict::Pass);
    std::vector<std::int64_t> ratios;
    for (auto c : t21.codegrees) ratios.push_back(t21.codegrees[0] / c);
    CHECK(ratios == t21.class_sizes);
    Eigentable synth = t21;
    synth.codegrees = {6, 4};
    CHECK(drinfeld_center(synth).verdict == Verdict::Fail);
}

TEST_CASE("extended cyclotomic criterion") {
    Eigentable t15 = build_psl2_table(15);
    CHECK(extended_cyclotomic(t15).verdict == Verdict::Pass);
    // the half-degree entries are roots of x^2 + x + 4
    const Cyclotomic& v = t15.at(1, 1);
    CHECK((v * v + v + Cyclotomic(Rational(4))).is_zero());
    Eigentable bad = t15;
    bad.at(3, 2) = Cyclotomic(make_rational(1, 2));
    auto rep = extended_cyclotomic(bad);
    CHECK(rep.verdict == Verdict::Fail);
    CHECK(rep.witness == std::vector<std::int64_t>{3, 2});
}

TEST_CASE("isaacs criterion") {
    Eigentable t6 = build_psl2_table(6);
    CHECK(isaacs(t6).verdict == Verdict::Pass);
    // spot value: row x_{5,c}, the class-size-35 column: 210/(5*6) * (-1) = -7
    Rational factor = Rational(210) / (Rational(5) * Rational(6));
    auto entry = t6.at(1, 1).as_rational();
    REQUIRE(entry.has_value());
    CHECK(factor * *entry == -7);
    for (std::int64_t q : {2, 3, 5, 8, 15, 21}) CHECK(isaacs(build_psl2_table(q)).verdict == Verdict::Pass);
}

TEST_CASE("modular divisibility obstruction") {
    auto d6 = fpdims(closedrules::rules_even(6));
    auto rep6 = modular_divisibility(d6);
    CHECK(rep6.verdict == Verdict::Fail);  // 36 does not divide 210
    auto d21 = fpdims(closedrules::rules_1mod4(21));
    CHECK(modular_divisibility(d21).verdict == Verdict::Fail);  // 441 does not divide 4620
    std::vector<std::int64_t> pointed(5, 1);
    CHECK(modular_divisibility(pointed).verdict == Verdict::Pass);
}

TEST_CASE("frobenius criterion") {
    CHECK(frobenius_criterion({1, 5, 5, 5, 6, 7, 7}).verdict == Verdict::Pass);
    CHECK(frobenius_criterion({1, 2}).verdict == Verdict::Fail);
}

TEST_CASE("every Schur sum on the family tables is rational") {
    for (std::int64_t q : {6, 15, 21}) {
        Eigentable t = build_psl2_table(q);
        for (int j1 = 0; j1 < t.rank; ++j1)
            for (int j2 = j1; j2 < t.rank; ++j2)
                for (int j3 = j2; j3 < t.rank; ++j3)
                    CHECK(schur_value(t, j1, j2, j3).as_rational().has_value());
    }
    for (std::int64_t q : {7, 12}) {
        Eigentable t = build_etingof_table(q);
        for (int j1 = 0; j1 < t.rank; ++j1)
            for (int j2 = j1; j2 < t.rank; ++j2)
                for (int j3 = j2; j3 < t.rank; ++j3)
                    CHECK(schur_value(t, j1, j2, j3).as_rational().has_value());
    }
}

TEST_CASE("run_all on the showcase inputs") {
    auto r6 = run_all(6, "psl2");
    CHECK(r6.all_categorification_pass());
    for (const auto& rep : r6.reports)
        if (rep.criterion == Criterion::ModularDivisibility) CHECK(rep.verdict == Verdict::Fail);

    auto e30 = run_all(30, "etingof");
    CHECK(e30.all_categorification_pass());

    auto r15 = run_all(15, "psl2");
    CHECK(r15.all_categorification_pass());
    for (const auto& rep : r15.reports)
        if (rep.criterion == Criterion::ZeroSpectrum || rep.criterion == Criterion::OneSpectrum)
            CHECK(rep.method == Method::FastPathLemma);  // the adapted argument route
}
