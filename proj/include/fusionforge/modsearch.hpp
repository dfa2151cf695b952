#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fusionforge/rational.hpp"

namespace fusionforge {

/// p^a with a >= 1; 1 is not a prime power.
inline bool is_prime_power(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        return n == 1;
    }
    return true;  // prime
}

/// All nondecreasing multisets (s_1..s_r), r <= max_terms, with
/// sum 1/s_i^2 = c. DFS bounds: s >= previous, 1/s^2 <= remainder rho, and
/// t/s^2 >= rho (so s <= sqrt(t/rho)); complete and finite.
/// Returns the number of DFS nodes visited.
inline std::uint64_t enumerate_unit_sum_of_inverse_squares(
    int max_terms, std::uint64_t c,
    const std::function<void(const std::vector<std::uint64_t>&)>& emit) {
    if (max_terms < 1 || max_terms > 64)
        throw std::invalid_argument("enumerate: max_terms out of range");
    std::vector<std::uint64_t> cur;
    std::uint64_t nodes = 0;
    std::function<void(const Rational&, int, std::uint64_t)> dfs =
        [&](const Rational& rho, int tleft, std::uint64_t smin) {
            ++nodes;
            if (rho == 0) {
                emit(cur);
                return;
            }
            if (tleft == 0) return;
            // 1/s^2 <= rho  =>  s >= ceil(sqrt(den/num))
            Integer lo_sq = rho.get_den() / rho.get_num();  // floor
            Integer lo;
            mpz_sqrt(lo.get_mpz_t(), lo_sq.get_mpz_t());
            while (lo * lo * rho.get_num() < rho.get_den()) ++lo;
            // tleft/s^2 >= rho  =>  s <= floor(sqrt(tleft*den/num))
            Integer hi_sq = (Integer(tleft) * rho.get_den()) / rho.get_num();
            Integer hi;
            mpz_sqrt(hi.get_mpz_t(), hi_sq.get_mpz_t());
            while (hi * hi * rho.get_num() > Integer(tleft) * rho.get_den()) --hi;
            if (lo < Integer(static_cast<unsigned long>(smin))) lo = Integer(static_cast<unsigned long>(smin));
            for (Integer s = lo; s <= hi; ++s) {
                std::uint64_t sv = mpz_get_ui(s.get_mpz_t());
                Rational inv2{Integer(1), s * s};
                inv2.canonicalize();
                cur.push_back(sv);
                dfs(rho - inv2, tleft - 1, sv);
                cur.pop_back();
            }
        };
    dfs(Rational(Integer(c)), max_terms, 1);
    return nodes;
}

/// A multiset surviving the arithmetic sieve: a putative type of a
/// nonpointed simple integral modular category that these constraints do
/// not exclude.
struct ModularTypeCandidate {
    std::uint64_t c = 1;                // common square class
    std::vector<std::uint64_t> s;       // nondecreasing, sum 1/s^2 = c
    std::vector<std::uint64_t> dims;    // s_max / s_i, sorted ascending
    Integer global_dim;                 // c * s_max^2

    friend bool operator==(const ModularTypeCandidate& a, const ModularTypeCandidate& b) {
        return a.c == b.c && a.s == b.s;
    }
};

struct SearchFlags {
    bool npp_filter = true;          // nontrivial dims must not be prime powers
    bool unique_unit_filter = true;  // exactly one s_i attains s_max
};

struct SearchCertificate {
    int max_rank = 0;
    std::uint64_t c_from = 1, c_to = 0;
    std::uint64_t nodes = 0;           // DFS nodes across all c
    std::uint64_t solutions = 0;       // exact unit-sum multisets enumerated
    std::uint64_t nonpointed = 0;      // some dim > 1
    std::uint64_t pass_unique_max = 0;
    std::uint64_t pass_divisibility = 0;
    std::uint64_t pass_npp = 0;        // = survivors when the filter chain is full
    SearchFlags flags;
    bool completed = false;            // enumeration ran to exhaustion (no cap)
};

/// Exhaustive sieve over rank < max_rank+1: enumerate sum 1/s_i^2 = c for
/// c = 1..max_rank, keep candidates with a unique maximal s (the unique
/// invertible), integral dims s_max/s_i, and no nontrivial prime-power dim.
/// Survivors are "not excluded by these numerical constraints", not
/// categories.
inline std::vector<ModularTypeCandidate> search_nonpointed_simple_modular_types(
    int max_rank, SearchCertificate* cert_out = nullptr, SearchFlags flags = {}) {
    if (max_rank < 2 || max_rank > 11)
        throw std::invalid_argument("search: max_rank must be in 2..11");
    SearchCertificate cert;
    cert.max_rank = max_rank;
    cert.c_from = 1;
    cert.c_to = static_cast<std::uint64_t>(max_rank);
    cert.flags = flags;
    std::vector<ModularTypeCandidate> out;
    for (std::uint64_t c = cert.c_from; c <= cert.c_to; ++c) {
        cert.nodes += enumerate_unit_sum_of_inverse_squares(
            max_rank, c, [&](const std::vector<std::uint64_t>& s) {
                ++cert.solutions;
                std::uint64_t smax = s.back();
                bool nonpointed = false;
                for (auto x : s)
                    if (x != smax) nonpointed = true;
                if (s.size() == 1 && s[0] == 1) nonpointed = false;
                if (!nonpointed) return;  // pointed type, not a counterexample shape
                ++cert.nonpointed;
                if (flags.unique_unit_filter) {
                    int atmax = 0;
                    for (auto x : s)
                        if (x == smax) ++atmax;
                    if (atmax != 1) return;
                }
                ++cert.pass_unique_max;
                for (auto x : s)
                    if (smax % x != 0) return;
                ++cert.pass_divisibility;
                std::vector<std::uint64_t> dims;
                for (auto x : s) dims.push_back(smax / x);
                if (flags.npp_filter) {
                    for (auto d : dims)
                        if (d > 1 && is_prime_power(d)) return;
                }
                ++cert.pass_npp;
                std::sort(dims.begin(), dims.end());
                ModularTypeCandidate cand;
                cand.c = c;
                cand.s = s;
                cand.dims = std::move(dims);
                cand.global_dim = Integer(c) * Integer(smax) * Integer(smax);
                // dedupe types that arose from a redundant square class
                for (const auto& prev : out)
                    if (prev.dims == cand.dims && prev.global_dim == cand.global_dim) return;
                out.push_back(std::move(cand));
            });
    }
    cert.completed = true;
    if (cert_out) *cert_out = cert;
    return out;
}

}  // namespace fusionforge
