#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/closed_rules.hpp"
#include "fusionforge/spectrum.hpp"

namespace fusionforge {

enum class Criterion : std::uint8_t {
    Schur,
    Ostrik,
    Drinfeld,
    Cyclotomic,
    Isaacs,
    Frobenius,
    ZeroSpectrum,
    OneSpectrum,
    ModularDivisibility,
};

inline const char* criterion_name(Criterion c) {
    switch (c) {
        case Criterion::Schur: return "schur";
        case Criterion::Ostrik: return "ostrik";
        case Criterion::Drinfeld: return "drinfeld";
        case Criterion::Cyclotomic: return "cyclotomic";
        case Criterion::Isaacs: return "isaacs";
        case Criterion::Frobenius: return "frobenius";
        case Criterion::ZeroSpectrum: return "zero_spectrum";
        case Criterion::OneSpectrum: return "one_spectrum";
        case Criterion::ModularDivisibility: return "modular_divisibility";
    }
    return "?";
}

enum class Verdict : std::uint8_t { Pass, Fail, Undecided };
enum class Method : std::uint8_t { Exact, FastPathLemma, ExhaustiveSearch };

inline const char* verdict_name(Verdict v) {
    return v == Verdict::Pass ? "pass" : (v == Verdict::Fail ? "fail" : "undecided");
}
inline const char* method_name(Method m) {
    return m == Method::Exact ? "exact"
                              : (m == Method::FastPathLemma ? "fast_path_lemma" : "exhaustive_search");
}

struct CriterionReport {
    Criterion criterion;
    Verdict verdict = Verdict::Pass;
    Method method = Method::Exact;
    std::vector<std::int64_t> witness;  // indices of a failing tuple, when any
    std::string detail;                 // exact value or short note
};

/// Schur product criterion: for all column triples j1 <= j2 <= j3,
/// sum_i l_{i,j1} l_{i,j2} l_{i,j3} / l_{i,1} >= 0. Values are asserted
/// real; comparison is exact when the value is rational, interval-certified
/// otherwise.
inline CriterionReport schur_product(const Eigentable& t, int jobs = 0) {
    CriterionReport rep{Criterion::Schur};
    const int r = t.rank;
    std::vector<Rational> inv_degree(r);
    for (int i = 0; i < r; ++i) {
        if (t.row_labels[i].degree <= 0) throw std::invalid_argument("schur: nonpositive degree");
        inv_degree[i] = Rational(1) / Rational(static_cast<long>(t.row_labels[i].degree));
    }
    std::mutex mu;
    std::vector<CriterionReport> bad;  // verdicts from all threads; smallest witness wins
    detail::parallel_for(
        r,
        [&](int j1) {
            detail::BucketSum acc;
            for (int j2 = j1; j2 < r; ++j2)
                for (int j3 = j2; j3 < r; ++j3) {
                    acc.clear();
                    for (int i = 0; i < r; ++i)
                        acc.add_product3_scaled(t.at(i, j1), t.at(i, j2), t.at(i, j3),
                                                inv_degree[i]);
                    Cyclotomic v = acc.total();
                    CriterionReport local{Criterion::Schur};
                    if (!v.is_real()) {
                        local.verdict = Verdict::Fail;
                        local.detail = "non-real Schur sum " + v.to_string();
                    } else {
                        try {
                            if (sign_of_real(v) < 0) {
                                local.verdict = Verdict::Fail;
                                local.detail = v.to_string();
                            }
                        } catch (const PrecisionExceeded&) {
                            local.verdict = Verdict::Undecided;
                            local.detail = "sign undecided at precision cap";
                        }
                    }
                    if (local.verdict != Verdict::Pass) {
                        local.witness = {j1, j2, j3};
                        std::lock_guard<std::mutex> lock(mu);
                        bad.push_back(local);
                    }
                }
        },
        jobs);
    if (!bad.empty()) {
        std::sort(bad.begin(), bad.end(), [](const CriterionReport& a, const CriterionReport& b) {
            return a.witness < b.witness;
        });
        return bad.front();
    }
    return rep;
}

/// Exact value of one Schur sum (exposed for spot checks).
inline Cyclotomic schur_value(const Eigentable& t, int j1, int j2, int j3) {
    detail::BucketSum acc;
    for (int i = 0; i < t.rank; ++i)
        acc.add((t.at(i, j1) * t.at(i, j2) * t.at(i, j3))
                    .scaled(Rational(1) / Rational(static_cast<long>(t.row_labels[i].degree))));
    return acc.total();
}

/// 2 sum_j 1/c_j^2 <= 1 + 1/c_1, exactly.
inline CriterionReport ostrik(const Eigentable& t) {
    CriterionReport rep{Criterion::Ostrik};
    Rational s(0);
    for (auto c : t.codegrees) {
        Rational ci(static_cast<long>(c));
        s += Rational(1) / (ci * ci);
    }
    Rational rhs = Rational(1) + Rational(1) / Rational(static_cast<long>(t.codegrees[0]));
    Rational lhs = 2 * s;
    rep.detail = lhs.get_str() + " <= " + rhs.get_str();
    if (lhs > rhs) rep.verdict = Verdict::Fail;
    return rep;
}

inline Rational ostrik_sum(const Eigentable& t) {
    Rational s(0);
    for (auto c : t.codegrees) s += Rational(1) / (Rational(static_cast<long>(c)) * Rational(static_cast<long>(c)));
    return s;
}

/// c_1/c_j integral for every j (the formal class sizes).
inline CriterionReport drinfeld_center(const Eigentable& t) {
    CriterionReport rep{Criterion::Drinfeld};
    for (std::size_t j = 0; j < t.codegrees.size(); ++j)
        if (t.codegrees[0] % t.codegrees[j] != 0) {
            rep.verdict = Verdict::Fail;
            rep.witness = {static_cast<std::int64_t>(j)};
            rep.detail = std::to_string(t.codegrees[0]) + "/" + std::to_string(t.codegrees[j]);
            return rep;
        }
    return rep;
}

/// Every entry is a cyclotomic integer.
inline CriterionReport extended_cyclotomic(const Eigentable& t) {
    CriterionReport rep{Criterion::Cyclotomic};
    for (int i = 0; i < t.rank; ++i)
        for (int j = 0; j < t.rank; ++j)
            if (!t.at(i, j).is_cyclotomic_integer()) {
                rep.verdict = Verdict::Fail;
                rep.witness = {i, j};
                rep.detail = t.at(i, j).to_string();
                return rep;
            }
    return rep;
}

/// lambda_{i,j} c_1 / (lambda_{i,1} c_j) is an algebraic integer for all
/// (i,j). Fast route: integral rational factor times a cyclotomic integer;
/// otherwise test the full product.
inline CriterionReport isaacs(const Eigentable& t) {
    CriterionReport rep{Criterion::Isaacs};
    for (int i = 0; i < t.rank; ++i)
        for (int j = 0; j < t.rank; ++j) {
            const Cyclotomic& l = t.at(i, j);
            if (l.is_zero()) continue;
            Rational factor = Rational(static_cast<long>(t.codegrees[0])) /
                              (Rational(static_cast<long>(t.row_labels[i].degree)) *
                               Rational(static_cast<long>(t.codegrees[j])));
            if (is_integer(factor) && l.is_cyclotomic_integer()) continue;
            if (!(l.scaled(factor)).is_cyclotomic_integer()) {
                rep.verdict = Verdict::Fail;
                rep.witness = {i, j};
                rep.detail = l.scaled(factor).to_string();
                return rep;
            }
        }
    return rep;
}

/// FPdim divisible by every basis dimension.
inline CriterionReport frobenius_criterion(const std::vector<std::int64_t>& dims) {
    CriterionReport rep{Criterion::Frobenius};
    std::int64_t total = fpdim_total(dims);
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (total % dims[i] != 0) {
            rep.verdict = Verdict::Fail;
            rep.witness = {static_cast<std::int64_t>(i)};
            rep.detail = std::to_string(total) + " % " + std::to_string(dims[i]);
            return rep;
        }
    return rep;
}

/// d_i^2 | FPdim for every i; a failure obstructs any pseudo-unitary
/// modular categorification. Verdict Fail means the obstruction is present.
inline CriterionReport modular_divisibility(const std::vector<std::int64_t>& dims) {
    CriterionReport rep{Criterion::ModularDivisibility};
    std::int64_t total = fpdim_total(dims);
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (total % (dims[i] * dims[i]) != 0) {
            rep.verdict = Verdict::Fail;
            rep.witness = {static_cast<std::int64_t>(i)};
            rep.detail = std::to_string(dims[i]) + "^2 does not divide " + std::to_string(total);
            return rep;
        }
    return rep;
}

inline CriterionReport zero_spectrum(const FusionRing& R, SpectrumMode mode = SpectrumMode::Fast) {
    CriterionReport rep{Criterion::ZeroSpectrum};
    SpectrumResult res = zero_spectrum_check(R, mode);
    rep.method = res.used_fast_lemma ? Method::FastPathLemma : Method::ExhaustiveSearch;
    rep.detail = res.method_note;
    if (!res.pass) {
        rep.verdict = Verdict::Fail;
        rep.witness = res.witness;
    }
    return rep;
}

inline CriterionReport one_spectrum(const FusionRing& R, SpectrumMode mode = SpectrumMode::Fast) {
    CriterionReport rep{Criterion::OneSpectrum};
    SpectrumResult res = one_spectrum_check(R, mode);
    rep.method = res.used_fast_lemma ? Method::FastPathLemma : Method::ExhaustiveSearch;
    rep.detail = res.method_note;
    if (!res.pass) {
        rep.verdict = Verdict::Fail;
        rep.witness = res.witness;
    }
    return rep;
}

struct RunAllResult {
    std::vector<CriterionReport> reports;
    bool all_categorification_pass() const {
        for (const auto& r : reports) {
            if (r.criterion == Criterion::ModularDivisibility) continue;
            if (r.verdict != Verdict::Pass) return false;
        }
        return true;
    }
};

/// Builds the table and ring for (q, family) and runs the whole battery;
/// spectrum criteria use the fast path with exhaustive fallback.
inline RunAllResult run_all(std::int64_t q, const std::string& family,
                            bool exhaustive_spectrum = false) {
    if (q < 2) throw std::invalid_argument("run_all: q must be >= 2");
    Eigentable t = (family == "etingof") ? build_etingof_table(q) : build_psl2_table(q);
    FusionRing R = reconstruct(t);
    std::vector<std::int64_t> dims = fpdims(R, &t);
    RunAllResult out;
    out.reports.push_back(schur_product(t));
    out.reports.push_back(ostrik(t));
    out.reports.push_back(drinfeld_center(t));
    out.reports.push_back(extended_cyclotomic(t));
    out.reports.push_back(isaacs(t));
    out.reports.push_back(frobenius_criterion(dims));
    out.reports.push_back(zero_spectrum(R, exhaustive_spectrum ? SpectrumMode::Exhaustive
                                                               : SpectrumMode::Fast));
    out.reports.push_back(one_spectrum(R, exhaustive_spectrum ? SpectrumMode::Exhaustive
                                                              : SpectrumMode::Fast));
    out.reports.push_back(modular_divisibility(dims));
    return out;
}

}  // namespace fusionforge
