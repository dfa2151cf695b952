#pragma once

#include <cstdint>
#include <map>

#include "fusionforge/verlinde.hpp"

namespace fusionforge {

/// Direct generators of the closed-form fusion rules, used as the
/// independent oracle against the Verlinde reconstruction. The sum-index
/// conditions read literally: "!= x and 2max" excludes both the sum hitting
/// x and the sum equalling twice its own maximum; "= x or 2max" includes
/// either.
namespace closedrules {

namespace detail {

inline bool two_max(std::int64_t c1, std::int64_t c2, std::int64_t c3) {
    return c1 + c2 + c3 == 2 * std::max({c1, c2, c3});
}

struct Builder {
    FusionRing R;
    std::map<std::pair<Family, std::int64_t>, int> index;

    explicit Builder(const std::vector<RowLabel>& labels) {
        R = FusionRing::zeros(static_cast<int>(labels.size()));
        R.labels = labels;
        for (int i = 0; i < R.rank; ++i) index[{labels[i].family, labels[i].charparam}] = i;
    }
    int at(Family f, std::int64_t c) const { return index.at({f, c}); }
    void set(int i, int j, int k, std::int64_t v) {
        R.N(i, j, k) = v;
        R.N(j, i, k) = v;
    }
    void unit_row(int i) {
        R.N(0, i, i) = 1;
        if (i != 0) R.N(i, 0, i) = 1;
    }
};

}  // namespace detail

/// Closed-form rules for even q.
inline FusionRing rules_even(std::int64_t q) {
    if (q < 2 || q % 2 != 0) throw std::invalid_argument("rules_even: q must be even and >= 2");
    using detail::two_max;
    std::vector<RowLabel> labels;
    labels.push_back({1, 1, Family::Unit});
    for (std::int64_t c = 1; c <= q / 2; ++c) labels.push_back({q - 1, c, Family::QMinus});
    labels.push_back({q, 1, Family::Q});
    for (std::int64_t c = 1; c <= (q - 2) / 2; ++c) labels.push_back({q + 1, c, Family::QPlus});
    detail::Builder B(labels);
    const std::int64_t am = q / 2, bm = (q - 2) / 2;
    auto a = [&](std::int64_t c) { return B.at(Family::QMinus, c); };
    auto b = [&](std::int64_t c) { return B.at(Family::QPlus, c); };
    const int s = B.at(Family::Q, 1);
    for (int i = 0; i < B.R.rank; ++i) B.unit_row(i);

    for (std::int64_t c1 = 1; c1 <= am; ++c1) {
        for (std::int64_t c2 = c1; c2 <= am; ++c2) {
            // x_{q-1,c1} x_{q-1,c2}
            if (c1 == c2) B.set(a(c1), a(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                if (c1 + c2 + c3 != q + 1 && !two_max(c1, c2, c3)) B.set(a(c1), a(c2), a(c3), 1);
            if (c1 != c2) B.set(a(c1), a(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), a(c2), b(c3), 1);
        }
        // x_{q-1,c1} x_{q,1}
        for (std::int64_t c2 = 1; c2 <= am; ++c2)
            if (c1 != c2) B.set(a(c1), s, a(c2), 1);
        B.set(a(c1), s, s, 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(a(c1), s, b(c2), 1);
        // x_{q-1,c1} x_{q+1,c2}
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(a(c1), b(c2), a(c3), 1);
            B.set(a(c1), b(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), b(c2), b(c3), 1);
        }
    }
    // x_{q,1} x_{q,1}
    B.set(s, s, 0, 1);
    for (std::int64_t c = 1; c <= am; ++c) B.set(s, s, a(c), 1);
    B.set(s, s, s, 1);
    for (std::int64_t c = 1; c <= bm; ++c) B.set(s, s, b(c), 1);
    // x_{q,1} x_{q+1,c1}
    for (std::int64_t c1 = 1; c1 <= bm; ++c1) {
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(s, b(c1), a(c2), 1);
        B.set(s, b(c1), s, 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(s, b(c1), b(c2), 1 + (c1 == c2 ? 1 : 0));
    }
    // x_{q+1,c1} x_{q+1,c2}
    for (std::int64_t c1 = 1; c1 <= bm; ++c1)
        for (std::int64_t c2 = c1; c2 <= bm; ++c2) {
            if (c1 == c2) B.set(b(c1), b(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(b(c1), b(c2), a(c3), 1);
            B.set(b(c1), b(c2), s, 1 + (c1 == c2 ? 1 : 0));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                B.set(b(c1), b(c2), b(c3),
                      (c1 + c2 + c3 == q - 1 || two_max(c1, c2, c3)) ? 2 : 1);
        }
    B.R.family = "psl2";
    B.R.q = q;
    return B.R;
}

/// Closed-form rules for q = 3 mod 4. The dual permutation swaps the two
/// degree-(q-1)/2 elements.
inline FusionRing rules_3mod4(std::int64_t q) {
    if (q < 3 || q % 4 != 3) throw std::invalid_argument("rules_3mod4: q must be 3 mod 4");
    using detail::two_max;
    std::vector<RowLabel> labels;
    labels.push_back({1, 1, Family::Unit});
    for (std::int64_t c = 1; c <= 2; ++c) labels.push_back({(q - 1) / 2, c, Family::Half});
    const std::int64_t am = (q - 3) / 4, bm = (q - 3) / 4, quarter = (q + 1) / 4;
    for (std::int64_t c = 1; c <= am; ++c) labels.push_back({q - 1, c, Family::QMinus});
    labels.push_back({q, 1, Family::Q});
    for (std::int64_t c = 1; c <= bm; ++c) labels.push_back({q + 1, c, Family::QPlus});
    detail::Builder B(labels);
    auto h = [&](std::int64_t c) { return B.at(Family::Half, c); };
    auto a = [&](std::int64_t c) { return B.at(Family::QMinus, c); };
    auto b = [&](std::int64_t c) { return B.at(Family::QPlus, c); };
    const int s = B.at(Family::Q, 1);
    auto D = [](std::int64_t x, std::int64_t y) { return x == y ? 1 : 0; };
    for (int i = 0; i < B.R.rank; ++i) B.unit_row(i);
    B.R.dual[h(1)] = h(2);
    B.R.dual[h(2)] = h(1);

    for (std::int64_t c1 = 1; c1 <= 2; ++c1) {
        for (std::int64_t c2 = c1; c2 <= 2; ++c2) {
            if (c1 != c2) B.set(h(c1), h(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                if (D(c1, c2) && !D(c1, c3)) B.set(h(c1), h(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                if (D(c1, c2)) B.set(h(c1), h(c2), a(c3), 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                if (!D(c1, c2)) B.set(h(c1), h(c2), b(c3), 1);
        }
        for (std::int64_t c2 = 1; c2 <= am; ++c2) {
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                if (!D(c1, c3)) B.set(h(c1), a(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                if (!D(c2 + c3, quarter)) B.set(h(c1), a(c2), a(c3), 1);
            B.set(h(c1), a(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(h(c1), a(c2), b(c3), 1);
        }
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(h(c1), s, a(c2), 1);
        B.set(h(c1), s, s, 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(h(c1), s, b(c2), 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            B.set(h(c1), b(c2), h(c1), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(h(c1), b(c2), a(c3), 1);
            B.set(h(c1), b(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(h(c1), b(c2), b(c3), 1);
        }
    }
    for (std::int64_t c1 = 1; c1 <= am; ++c1) {
        for (std::int64_t c2 = c1; c2 <= am; ++c2) {
            if (c1 == c2) B.set(a(c1), a(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                if (!D(c1 + c2, quarter)) B.set(a(c1), a(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                B.set(a(c1), a(c2), a(c3),
                      (c1 + c2 + c3 == (q + 1) / 2 || two_max(c1, c2, c3)) ? 1 : 2);
            B.set(a(c1), a(c2), s, 2 - D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), a(c2), b(c3), 2);
        }
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) B.set(a(c1), s, h(c2), 1);
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(a(c1), s, a(c2), 2 - D(c1, c2));
        B.set(a(c1), s, s, 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(a(c1), s, b(c2), 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            for (std::int64_t c3 = 1; c3 <= 2; ++c3) B.set(a(c1), b(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(a(c1), b(c2), a(c3), 2);
            B.set(a(c1), b(c2), s, 2);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), b(c2), b(c3), 2);
        }
    }
    B.set(s, s, 0, 1);
    for (std::int64_t c = 1; c <= 2; ++c) B.set(s, s, h(c), 1);
    for (std::int64_t c = 1; c <= am; ++c) B.set(s, s, a(c), 2);
    B.set(s, s, s, 2);
    for (std::int64_t c = 1; c <= bm; ++c) B.set(s, s, b(c), 2);
    for (std::int64_t c1 = 1; c1 <= bm; ++c1) {
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) B.set(s, b(c1), h(c2), 1);
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(s, b(c1), a(c2), 2);
        B.set(s, b(c1), s, 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(s, b(c1), b(c2), 2 + D(c1, c2));
    }
    for (std::int64_t c1 = 1; c1 <= bm; ++c1)
        for (std::int64_t c2 = c1; c2 <= bm; ++c2) {
            if (c1 == c2) B.set(b(c1), b(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= 2; ++c3) B.set(b(c1), b(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(b(c1), b(c2), a(c3), 2);
            B.set(b(c1), b(c2), s, 2 + D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                B.set(b(c1), b(c2), b(c3),
                      (c1 + c2 + c3 == (q - 1) / 2 || two_max(c1, c2, c3)) ? 3 : 2);
        }
    B.R.family = "psl2";
    B.R.q = q;
    return B.R;
}

/// Closed-form rules for q = 1 mod 4; all elements self-dual.
inline FusionRing rules_1mod4(std::int64_t q) {
    if (q < 5 || q % 4 != 1) throw std::invalid_argument("rules_1mod4: q must be 1 mod 4");
    using detail::two_max;
    std::vector<RowLabel> labels;
    labels.push_back({1, 1, Family::Unit});
    for (std::int64_t c = 1; c <= 2; ++c) labels.push_back({(q + 1) / 2, c, Family::Half});
    const std::int64_t am = (q - 1) / 4, bm = (q - 5) / 4, quarter = (q - 1) / 4;
    for (std::int64_t c = 1; c <= am; ++c) labels.push_back({q - 1, c, Family::QMinus});
    labels.push_back({q, 1, Family::Q});
    for (std::int64_t c = 1; c <= bm; ++c) labels.push_back({q + 1, c, Family::QPlus});
    detail::Builder B(labels);
    auto h = [&](std::int64_t c) { return B.at(Family::Half, c); };
    auto a = [&](std::int64_t c) { return B.at(Family::QMinus, c); };
    auto b = [&](std::int64_t c) { return B.at(Family::QPlus, c); };
    const int s = B.at(Family::Q, 1);
    auto D = [](std::int64_t x, std::int64_t y) { return x == y ? 1 : 0; };
    for (int i = 0; i < B.R.rank; ++i) B.unit_row(i);

    for (std::int64_t c1 = 1; c1 <= 2; ++c1) {
        for (std::int64_t c2 = c1; c2 <= 2; ++c2) {
            if (c1 == c2) B.set(h(c1), h(c2), 0, 1);
            if (c1 == c2) B.set(h(c1), h(c2), h(c1), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                if (!D(c1, c2)) B.set(h(c1), h(c2), a(c3), 1);
            B.set(h(c1), h(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                if (D(c1, c2)) B.set(h(c1), h(c2), b(c3), 1);
        }
        for (std::int64_t c2 = 1; c2 <= am; ++c2) {
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                if (!D(c1, c3)) B.set(h(c1), a(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(h(c1), a(c2), a(c3), 1);
            B.set(h(c1), a(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(h(c1), a(c2), b(c3), 1);
        }
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) B.set(h(c1), s, h(c2), 1);
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(h(c1), s, a(c2), 1);
        B.set(h(c1), s, s, 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(h(c1), s, b(c2), 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            B.set(h(c1), b(c2), h(c1), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(h(c1), b(c2), a(c3), 1);
            B.set(h(c1), b(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                B.set(h(c1), b(c2), b(c3), 1 + D(c2 + c3, quarter));
        }
    }
    for (std::int64_t c1 = 1; c1 <= am; ++c1) {
        for (std::int64_t c2 = c1; c2 <= am; ++c2) {
            if (c1 == c2) B.set(a(c1), a(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= 2; ++c3) B.set(a(c1), a(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                B.set(a(c1), a(c2), a(c3),
                      (c1 + c2 + c3 == (q + 1) / 2 || two_max(c1, c2, c3)) ? 1 : 2);
            B.set(a(c1), a(c2), s, 2 - D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), a(c2), b(c3), 2);
        }
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) B.set(a(c1), s, h(c2), 1);
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(a(c1), s, a(c2), 2 - D(c1, c2));
        B.set(a(c1), s, s, 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(a(c1), s, b(c2), 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            for (std::int64_t c3 = 1; c3 <= 2; ++c3) B.set(a(c1), b(c2), h(c3), 1);
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(a(c1), b(c2), a(c3), 2);
            B.set(a(c1), b(c2), s, 2);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3) B.set(a(c1), b(c2), b(c3), 2);
        }
    }
    B.set(s, s, 0, 1);
    for (std::int64_t c = 1; c <= 2; ++c) B.set(s, s, h(c), 1);
    for (std::int64_t c = 1; c <= am; ++c) B.set(s, s, a(c), 2);
    B.set(s, s, s, 2);
    for (std::int64_t c = 1; c <= bm; ++c) B.set(s, s, b(c), 2);
    for (std::int64_t c1 = 1; c1 <= bm; ++c1) {
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) B.set(s, b(c1), h(c2), 1);
        for (std::int64_t c2 = 1; c2 <= am; ++c2) B.set(s, b(c1), a(c2), 2);
        B.set(s, b(c1), s, 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) B.set(s, b(c1), b(c2), 2 + D(c1, c2));
    }
    for (std::int64_t c1 = 1; c1 <= bm; ++c1)
        for (std::int64_t c2 = c1; c2 <= bm; ++c2) {
            if (c1 == c2) B.set(b(c1), b(c2), 0, 1);
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                B.set(b(c1), b(c2), h(c3), 1 + D(c1 + c2, quarter));
            for (std::int64_t c3 = 1; c3 <= am; ++c3) B.set(b(c1), b(c2), a(c3), 2);
            B.set(b(c1), b(c2), s, 2 + D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                B.set(b(c1), b(c2), b(c3),
                      (c1 + c2 + c3 == (q - 1) / 2 || two_max(c1, c2, c3)) ? 3 : 2);
        }
    B.R.family = "psl2";
    B.R.q = q;
    return B.R;
}

/// Near-group rules: group ring of C_{q-1} extended by one big element.
inline FusionRing rules_etingof(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("rules_etingof: q must be >= 2");
    const std::int64_t n = q - 1;
    std::vector<RowLabel> labels;
    for (std::int64_t c = 0; c < n; ++c) labels.push_back({1, c, Family::Point});
    labels.push_back({q - 1, 1, Family::Big});
    FusionRing R = FusionRing::zeros(static_cast<int>(q));
    R.labels = labels;
    R.family = "etingof";
    R.q = q;
    const int big = static_cast<int>(q) - 1;
    for (int c1 = 0; c1 < n; ++c1) {
        R.dual[c1] = static_cast<int>((n - c1) % n);
        for (int c2 = 0; c2 < n; ++c2) R.N(c1, c2, static_cast<int>((c1 + c2) % n)) = 1;
        R.N(c1, big, big) = 1;
        R.N(big, c1, big) = 1;
    }
    for (int c = 0; c < n; ++c) R.N(big, big, c) = 1;
    R.N(big, big, big) = q - 2;
    R.dual[big] = big;
    return R;
}

inline FusionRing rules_psl2(std::int64_t q) {
    if (q % 2 == 0) return rules_even(q);
    if (q % 4 == 3) return rules_3mod4(q);
    return rules_1mod4(q);
}

/// Tensor-exact equality of closed-form rules and Verlinde reconstruction.
inline bool crosscheck(std::int64_t q, const std::string& family) {
    Eigentable t = (family == "etingof") ? build_etingof_table(q) : build_psl2_table(q);
    FusionRing verlinde_ring = reconstruct(t);
    FusionRing closed = (family == "etingof") ? rules_etingof(q) : rules_psl2(q);
    return verlinde_ring.tensor == closed.tensor && verlinde_ring.dual == closed.dual;
}

}  // namespace closedrules

}  // namespace fusionforge
