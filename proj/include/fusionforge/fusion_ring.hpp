#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/chartables.hpp"

namespace fusionforge {

/// A based ring with nonnegative integer structure constants, unit, duals
/// and Frobenius reciprocity. The tensor is stored flat, N[(i*r + j)*r + k].
struct FusionRing {
    int rank = 0;
    std::vector<RowLabel> labels;
    std::vector<int> dual;
    std::vector<std::int64_t> tensor;
    std::string family;
    std::int64_t q = 0;

    std::int64_t N(int i, int j, int k) const {
        return tensor[(static_cast<std::size_t>(i) * rank + j) * rank + k];
    }
    std::int64_t& N(int i, int j, int k) {
        return tensor[(static_cast<std::size_t>(i) * rank + j) * rank + k];
    }

    static FusionRing zeros(int rank) {
        FusionRing r;
        r.rank = rank;
        r.labels.assign(rank, RowLabel{});
        r.dual.resize(rank);
        for (int i = 0; i < rank; ++i) r.dual[i] = i;
        r.tensor.assign(static_cast<std::size_t>(rank) * rank * rank, 0);
        return r;
    }

    static FusionRing trivial() {
        FusionRing r = zeros(1);
        r.N(0, 0, 0) = 1;
        return r;
    }
};

struct AxiomViolation {
    std::string axiom;            // "neutral", "dual", "associativity", "frobenius"
    std::vector<int> indices;
};

struct AxiomReport {
    bool neutral = true;
    bool dual = true;
    bool associative = true;
    bool frobenius = true;
    bool commutative = true;  // reported separately, not an axiom
    std::vector<AxiomViolation> violations;
    bool ok() const { return neutral && dual && associative && frobenius; }
};

/// Checks the four fusion axioms plus commutativity. Associativity is
/// verified through the regular representation: M_i M_j = sum_k N_ij^k M_k.
inline AxiomReport verify_axioms(const FusionRing& R) {
    AxiomReport rep;
    const int r = R.rank;
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            std::int64_t want = (i == k) ? 1 : 0;
            if (R.N(0, i, k) != want || R.N(i, 0, k) != want) {
                rep.neutral = false;
                rep.violations.push_back({"neutral", {i, k}});
            }
        }
    for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k) {
            std::int64_t want = (R.dual[i] == k) ? 1 : 0;
            if (R.N(i, k, 0) != want || R.N(k, i, 0) != want) {
                rep.dual = false;
                rep.violations.push_back({"dual", {i, k}});
            }
        }
    // associativity via matrix products; equivalent to
    // sum_m N_ij^m N_mk^l == sum_m N_jk^m N_im^l for all i,j,k,l
    std::vector<std::int64_t> lhs(static_cast<std::size_t>(r) * r), rhs(lhs.size());
    for (int i = 0; i < r && rep.associative; ++i)
        for (int j = 0; j < r; ++j) {
            // lhs = row block of M_i * M_j ; rhs = sum_k N_ij^k M_k
            std::fill(lhs.begin(), lhs.end(), 0);
            std::fill(rhs.begin(), rhs.end(), 0);
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l) {
                    std::int64_t a = 0, b = 0;
                    for (int m = 0; m < r; ++m) {
                        a += R.N(i, j, m) * R.N(m, k, l);
                        b += R.N(j, k, m) * R.N(i, m, l);
                    }
                    lhs[static_cast<std::size_t>(k) * r + l] = a;
                    rhs[static_cast<std::size_t>(k) * r + l] = b;
                }
            for (int k = 0; k < r; ++k)
                for (int l = 0; l < r; ++l)
                    if (lhs[static_cast<std::size_t>(k) * r + l] !=
                        rhs[static_cast<std::size_t>(k) * r + l]) {
                        rep.associative = false;
                        rep.violations.push_back({"associativity", {i, j, k, l}});
                        if (rep.violations.size() > 64) goto assoc_done;
                    }
        }
assoc_done:
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (int k = 0; k < r; ++k) {
                if (R.N(i, j, k) != R.N(R.dual[i], k, j) || R.N(i, j, k) != R.N(k, R.dual[j], i)) {
                    rep.frobenius = false;
                    rep.violations.push_back({"frobenius", {i, j, k}});
                }
                if (R.N(i, j, k) != R.N(j, i, k)) rep.commutative = false;
            }
    return rep;
}

struct RingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// FP dimensions. With a table: the degree column, after verifying the
/// character property sum_k N_ij^k d_k = d_i d_j exactly. Without: Perron
/// data from power iteration, rounded and re-verified exactly against the
/// same property (the exact check is the certificate).
inline std::vector<std::int64_t> fpdims(const FusionRing& R, const Eigentable* t = nullptr) {
    const int r = R.rank;
    std::vector<std::int64_t> d(r);
    if (t) {
        if (t->rank != r) throw RingError("fpdims: table rank mismatch");
        for (int i = 0; i < r; ++i) d[i] = t->row_labels[i].degree;
    } else {
        // Perron eigenvector of A[j][k] = sum_i N(i,j,k): the dimension
        // vector satisfies (A d)_j = (sum_i d_i) d_j. Normalize d_0 = 1.
        std::vector<double> u(r, 1.0), nu(r);
        for (int it = 0; it < 5000; ++it) {
            std::fill(nu.begin(), nu.end(), 0.0);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) {
                    double uj = 0;
                    for (int k = 0; k < r; ++k)
                        uj += static_cast<double>(R.N(i, j, k)) * u[k];
                    nu[j] += uj;
                }
            double norm = nu[0];
            if (norm <= 0) throw RingError("fpdims: degenerate Perron iteration");
            for (auto& x : nu) x /= norm;
            double delta = 0;
            for (int i = 0; i < r; ++i) delta = std::max(delta, std::abs(nu[i] - u[i]));
            u = nu;
            if (delta < 1e-13 && it > 10) break;
        }
        for (int i = 0; i < r; ++i) {
            double rounded = std::round(u[i]);
            if (std::abs(u[i] - rounded) > 1e-6 || rounded < 1)
                throw RingError("fpdims: non-integral Perron data at index " + std::to_string(i));
            d[i] = static_cast<std::int64_t>(rounded);
        }
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < r; ++k) s += R.N(i, j, k) * d[k];
            if (s != d[i] * d[j])
                throw RingError("fpdims: character property fails at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        }
    return d;
}

inline std::int64_t fpdim_total(const std::vector<std::int64_t>& d) {
    std::int64_t s = 0;
    for (auto x : d) s += x * x;
    return s;
}

struct FusionType {
    std::vector<std::pair<std::int64_t, int>> pairs;  // (dim, multiplicity), dims increasing
    friend bool operator==(const FusionType&, const FusionType&) = default;
};

inline FusionType fusion_type(const std::vector<std::int64_t>& dims) {
    std::vector<std::int64_t> d = dims;
    std::sort(d.begin(), d.end());
    FusionType t;
    for (auto x : d) {
        if (!t.pairs.empty() && t.pairs.back().first == x)
            ++t.pairs.back().second;
        else
            t.pairs.push_back({x, 1});
    }
    return t;
}

/// Simple iff every nontrivial element generates the whole basis under
/// fusion products and duals.
inline bool is_simple(const FusionRing& R) {
    const int r = R.rank;
    if (r == 1) return true;
    for (int b = 1; b < r; ++b) {
        std::vector<bool> in(r, false);
        std::vector<int> stack{0, b};
        in[0] = in[b] = true;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            int xd = R.dual[x];
            if (!in[xd]) {
                in[xd] = true;
                stack.push_back(xd);
            }
            for (int y = 0; y < r; ++y) {
                if (!in[y]) continue;
                for (int k = 0; k < r; ++k)
                    if (!in[k] && (R.N(x, y, k) != 0 || R.N(y, x, k) != 0)) {
                        in[k] = true;
                        stack.push_back(k);
                    }
            }
        }
        for (int k = 0; k < r; ++k)
            if (!in[k]) return false;
    }
    return true;
}

inline std::int64_t multiplicity(const FusionRing& R) {
    std::int64_t m = 0;
    for (auto v : R.tensor) m = std::max(m, v);
    return m;
}

inline int self_dual_count(const FusionRing& R) {
    int c = 0;
    for (int i = 0; i < R.rank; ++i)
        if (R.dual[i] == i) ++c;
    return c;
}

/// FPdim(R) divisible by every basis dimension.
inline bool is_frobenius_type(const std::vector<std::int64_t>& dims) {
    std::int64_t total = fpdim_total(dims);
    for (auto d : dims)
        if (total % d != 0) return false;
    return true;
}

}  // namespace fusionforge
