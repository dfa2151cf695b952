#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "fusionforge/fusion_ring.hpp"

namespace fusionforge {

struct ReconstructionError : std::runtime_error {
    int i, j, k;
    std::string value;
    ReconstructionError(int i_, int j_, int k_, std::string v)
        : std::runtime_error("reconstruction failure at (" + std::to_string(i_) + "," +
                             std::to_string(j_) + "," + std::to_string(k_) + "): value " + v),
          i(i_), j(j_), k(k_), value(std::move(v)) {}
};

namespace detail {

/// Accumulates an exact sum of cyclotomic term products. Terms are bucketed
/// by order into dense reusable slabs (coefficient arrays indexed by
/// exponent), so the hot loops run on preallocated mpq storage with no
/// per-term allocation. Per-bucket partial sums stay in one small field and
/// usually collapse to rationals before cross-bucket addition.
class BucketSum {
public:
    static constexpr Cyclotomic::Exp kDenseLimit = 1 << 14;

    void clear() {
        rational_ = 0;
        overflow_ = Cyclotomic();
        for (auto& [n, slab] : slabs_) {
            for (auto e : slab.touched) {
                slab.coeff[e] = 0;
                slab.mark[e] = false;
            }
            slab.touched.clear();
        }
    }

    void add(const Cyclotomic& x) {
        for (const auto& [e, c] : x.terms()) add_term(x.order(), e, c);
    }

    void add_rational(const Rational& r) { rational_ += r; }

    /// += a * b * w
    void add_product2_scaled(const Cyclotomic& a, const Cyclotomic& b, const Rational& w) {
        if (a.terms().empty() || b.terms().empty()) return;
        Cyclotomic::Exp na = a.order(), nb = b.order();
        Cyclotomic::Exp g = std::gcd(na, nb), L = na / g * nb;
        Cyclotomic::Exp fa = L / na, fb = L / nb;
        Slab* slab = L <= kDenseLimit ? &slab_for(L) : nullptr;
        for (const auto& [ea, ca] : a.terms()) {
            mpq_mul(t1_.get_mpq_t(), ca.get_mpq_t(), w.get_mpq_t());
            Cyclotomic::Exp base = ea * fa;
            for (const auto& [eb, cb] : b.terms()) {
                mpq_mul(t2_.get_mpq_t(), t1_.get_mpq_t(), cb.get_mpq_t());
                Cyclotomic::Exp e = base + eb * fb;
                if (e >= L) e -= L;
                if (slab)
                    slab->bump(e, t2_);
                else
                    overflow_ = overflow_ + Rational(t2_) * root_of_unity(L, static_cast<long long>(e));
            }
        }
    }

    /// += a * b * c * w
    void add_product3_scaled(const Cyclotomic& a, const Cyclotomic& b, const Cyclotomic& c,
                             const Rational& w) {
        if (a.terms().empty() || b.terms().empty() || c.terms().empty()) return;
        Cyclotomic::Exp L = lcm3(a.order(), b.order(), c.order());
        Cyclotomic::Exp fa = L / a.order(), fb = L / b.order(), fc = L / c.order();
        Slab* slab = L <= kDenseLimit ? &slab_for(L) : nullptr;
        for (const auto& [ea, ca] : a.terms()) {
            mpq_mul(t1_.get_mpq_t(), ca.get_mpq_t(), w.get_mpq_t());
            for (const auto& [eb, cb] : b.terms()) {
                mpq_mul(t2_.get_mpq_t(), t1_.get_mpq_t(), cb.get_mpq_t());
                Cyclotomic::Exp e2 = ea * fa + eb * fb;
                for (const auto& [ec, cc] : c.terms()) {
                    mpq_mul(t3_.get_mpq_t(), t2_.get_mpq_t(), cc.get_mpq_t());
                    Cyclotomic::Exp e = (e2 + ec * fc) % L;
                    if (slab)
                        slab->bump(e, t3_);
                    else
                        overflow_ =
                            overflow_ + Rational(t3_) * root_of_unity(L, static_cast<long long>(e));
                }
            }
        }
    }

    void add_term(Cyclotomic::Exp order, Cyclotomic::Exp e, const Rational& c) {
        if (order <= kDenseLimit)
            slab_for(order).bump(e % order, c);
        else
            overflow_ = overflow_ + c * root_of_unity(order, static_cast<long long>(e));
    }

    /// Exact value; rational fast path, general cyclotomic fallback.
    Cyclotomic total() const {
        Rational racc = rational_;
        Cyclotomic rest = overflow_;
        for (const auto& [n, slab] : slabs_) {
            if (slab.touched.empty()) continue;
            Cyclotomic c = slab.to_cyclotomic(n).canonicalized();
            if (auto r = c.as_rational())
                racc += *r;
            else
                rest = rest + c;
        }
        if (rest.terms().empty()) return Cyclotomic(racc);
        return (rest + Cyclotomic(racc)).canonicalized();
    }

private:
    struct Slab {
        std::vector<Rational> coeff;
        std::vector<bool> mark;
        std::vector<Cyclotomic::Exp> touched;
        void bump(Cyclotomic::Exp e, const Rational& v) {
            if (!mark[e]) {
                mark[e] = true;
                touched.push_back(e);
            }
            mpq_add(coeff[e].get_mpq_t(), coeff[e].get_mpq_t(), v.get_mpq_t());
        }
        Cyclotomic to_cyclotomic(Cyclotomic::Exp order) const {
            Cyclotomic out;
            for (auto e : touched)
                if (coeff[e] != 0) out = out + coeff[e] * root_of_unity(order, static_cast<long long>(e));
            return out;
        }
    };

    static Cyclotomic::Exp lcm3(Cyclotomic::Exp a, Cyclotomic::Exp b, Cyclotomic::Exp c) {
        Cyclotomic::Exp g = std::gcd(a, b), l = a / g * b;
        g = std::gcd(l, c);
        return l / g * c;
    }

    Slab& slab_for(Cyclotomic::Exp n) {
        auto& slab = slabs_[n];
        if (slab.coeff.size() < n) {
            slab.coeff.resize(n, Rational(0));
            slab.mark.resize(n, false);
        }
        return slab;
    }

    std::map<Cyclotomic::Exp, Slab> slabs_;
    Rational rational_ = Rational(0);
    Cyclotomic overflow_;
    mpq_class t1_, t2_, t3_;
};

inline void parallel_for(int n, const std::function<void(int)>& body, int jobs = 0) {
    if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    int workers = std::min(jobs, n);
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= n) return;
                body(i);
            }
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

/// <f, g> = sum_s (1/c_s) f(s) conj(g(s)), exactly.
inline Cyclotomic inner_product(const Eigentable& t, const std::vector<Cyclotomic>& f,
                                const std::vector<Cyclotomic>& g) {
    if (static_cast<int>(f.size()) != t.rank || static_cast<int>(g.size()) != t.rank)
        throw std::invalid_argument("inner_product: vector length must equal rank");
    detail::BucketSum acc;
    for (int s = 0; s < t.rank; ++s) {
        Rational w = Rational(1) / Rational(static_cast<long>(t.codegrees[s]));
        acc.add_product2_scaled(f[s], g[s].conjugate(), w);
    }
    return acc.total();
}

/// <x_i x_j, x_k> on rows of the table.
inline Cyclotomic triple_product(const Eigentable& t, int i, int j, int k) {
    detail::BucketSum acc;
    for (int s = 0; s < t.rank; ++s) {
        Rational w = Rational(1) / Rational(static_cast<long>(t.codegrees[s]));
        acc.add_product3_scaled(t.at(i, s), t.at(j, s), t.at(k, s).conjugate(), w);
    }
    return acc.total();
}

/// Fusion ring from an eigentable via N_ij^k = sum_s lambda_is lambda_js
/// conj(lambda_ks) / c_s; every value must be a nonnegative rational
/// integer, and the result is checked against the character property.
inline FusionRing reconstruct(const Eigentable& t, int jobs = 0) {
    auto assumptions = verify_reconstruction_assumptions(t);
    if (!assumptions.ok())
        throw ReconstructionError(-1, -1, -1, "reconstruction assumptions (a)-(c) fail");
    const int r = t.rank;
    FusionRing R = FusionRing::zeros(r);
    R.labels = t.row_labels;
    R.dual = assumptions.dual;
    R.family = t.family;
    R.q = t.q;

    // conjugated rows, scaled by the codegree weights once
    std::vector<Cyclotomic> wconj(static_cast<std::size_t>(r) * r);
    for (int k = 0; k < r; ++k)
        for (int s = 0; s < r; ++s)
            wconj[static_cast<std::size_t>(k) * r + s] =
                t.at(k, s).conjugate().scaled(Rational(1) /
                                              Rational(static_cast<long>(t.codegrees[s])));

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) pairs.emplace_back(i, j);

    std::atomic<bool> failed{false};
    std::atomic<bool> char_ok{true};
    std::mutex fail_mu;
    std::optional<ReconstructionError> first_error;
    const Cyclotomic one{Rational(1)};

    detail::parallel_for(
        static_cast<int>(pairs.size()),
        [&](int pi) {
            if (failed.load()) return;
            auto [i, j] = pairs[pi];
            std::vector<Cyclotomic> prod(r);
            for (int s = 0; s < r; ++s) prod[s] = (t.at(i, s) * t.at(j, s)).canonicalized();
            detail::BucketSum acc;
            for (int k = 0; k < r; ++k) {
                acc.clear();
                for (int s = 0; s < r; ++s)
                    acc.add_product2_scaled(prod[s], wconj[static_cast<std::size_t>(k) * r + s],
                                            Rational(1));
                Cyclotomic v = acc.total();
                auto rat = v.as_rational();
                if (!rat || !is_integer(*rat) || *rat < 0) {
                    std::lock_guard<std::mutex> lock(fail_mu);
                    if (!first_error)
                        first_error = ReconstructionError(i, j, k, v.to_string());
                    failed.store(true);
                    return;
                }
                std::int64_t n = to_int64(rat->get_num());
                R.N(i, j, k) = n;
                R.N(j, i, k) = n;  // the formula is symmetric in i and j
            }
            // character property, exact: sum_k N_ij^k lambda_ks = lambda_is lambda_js
            for (int s = 0; s < r && char_ok.load(); ++s) {
                acc.clear();
                acc.add_product2_scaled(prod[s], one, Rational(-1));
                for (int k = 0; k < r; ++k)
                    if (R.N(i, j, k))
                        acc.add_product2_scaled(t.at(k, s), one,
                                                Rational(static_cast<long>(R.N(i, j, k))));
                if (!acc.total().is_zero()) char_ok.store(false);
            }
        },
        jobs);
    if (first_error) throw *first_error;
    if (!char_ok.load()) throw ReconstructionError(-1, -1, -1, "character property fails");
    return R;
}

/// Closed forms of the computed inner products <x_a x_b, x_c>, one entry
/// per family triple; evaluated over every admissible parameter tuple and
/// compared with the stated right-hand side.
struct LemmaReport {
    int checked = 0;
    struct Mismatch {
        std::string lemma;
        std::vector<std::int64_t> params;
        std::string got;
        std::int64_t want;
    };
    std::vector<Mismatch> mismatches;
    bool ok() const { return mismatches.empty(); }
};

inline LemmaReport oracle_lemma_suite(std::int64_t q) {
    if (q < 2) throw std::invalid_argument("oracle_lemma_suite: q must be >= 2");
    Eigentable t = build_psl2_table(q);
    LemmaReport rep;

    std::map<std::pair<Family, std::int64_t>, int> index;
    for (int i = 0; i < t.rank; ++i)
        index[{t.row_labels[i].family, t.row_labels[i].charparam}] = i;
    auto row = [&](Family f, std::int64_t c) { return index.at({f, c}); };

    auto check = [&](const char* name, std::vector<std::int64_t> params, int i, int j, int k,
                     std::int64_t want) {
        Cyclotomic v = triple_product(t, i, j, k);
        ++rep.checked;
        auto r = v.as_rational();
        if (!r || *r != Rational(static_cast<long>(want)))
            rep.mismatches.push_back({name, std::move(params), v.to_string(), want});
    };
    auto dmax2 = [](std::int64_t a, std::int64_t b, std::int64_t c) {
        return a + b + c == 2 * std::max({a, b, c});
    };
    auto D = [](std::int64_t a, std::int64_t b) { return a == b ? 1 : 0; };

    if (q % 2 == 0) {
        std::int64_t am = q / 2, bm = (q - 2) / 2;
        int s = row(Family::Q, 1);
        for (std::int64_t c1 = 1; c1 <= am; ++c1)
            for (std::int64_t c2 = 1; c2 <= am; ++c2) {
                for (std::int64_t c3 = 1; c3 <= am; ++c3)
                    check("aa_a", {c1, c2, c3}, row(Family::QMinus, c1), row(Family::QMinus, c2),
                          row(Family::QMinus, c3),
                          (c1 + c2 + c3 == q + 1 || dmax2(c1, c2, c3)) ? 0 : 1);
                check("aa_s", {c1, c2}, row(Family::QMinus, c1), row(Family::QMinus, c2), s,
                      1 - D(c1, c2));
                for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                    check("aa_b", {c1, c2, c3}, row(Family::QMinus, c1), row(Family::QMinus, c2),
                          row(Family::QPlus, c3), 1);
            }
        for (std::int64_t c = 1; c <= am; ++c) check("ss_a", {c}, s, s, row(Family::QMinus, c), 1);
        check("ss_s", {}, s, s, s, 1);
        for (std::int64_t c = 1; c <= bm; ++c) check("ss_b", {c}, s, s, row(Family::QPlus, c), 1);
        for (std::int64_t c1 = 1; c1 <= bm; ++c1)
            for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
                for (std::int64_t c3 = 1; c3 <= am; ++c3)
                    check("bb_a", {c1, c2, c3}, row(Family::QPlus, c1), row(Family::QPlus, c2),
                          row(Family::QMinus, c3), 1);
                check("bb_s", {c1, c2}, row(Family::QPlus, c1), row(Family::QPlus, c2), s,
                      1 + D(c1, c2));
                for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                    check("bb_b", {c1, c2, c3}, row(Family::QPlus, c1), row(Family::QPlus, c2),
                          row(Family::QPlus, c3),
                          (c1 + c2 + c3 == q - 1 || dmax2(c1, c2, c3)) ? 2 : 1);
            }
        for (std::int64_t c1 = 1; c1 <= am; ++c1)
            for (std::int64_t c2 = 1; c2 <= bm; ++c2)
                check("as_b", {c1, c2}, row(Family::QMinus, c1), s, row(Family::QPlus, c2), 1);
        return rep;
    }

    const bool three = (q % 4 == 3);
    std::int64_t am = three ? (q - 3) / 4 : (q - 1) / 4;
    std::int64_t bm = three ? (q - 3) / 4 : (q - 5) / 4;
    std::int64_t quarter = three ? (q + 1) / 4 : (q - 1) / 4;
    int s = row(Family::Q, 1);
    auto h = [&](std::int64_t c) { return row(Family::Half, c); };
    auto a = [&](std::int64_t c) { return row(Family::QMinus, c); };
    auto b = [&](std::int64_t c) { return row(Family::QPlus, c); };

    for (std::int64_t c1 = 1; c1 <= 2; ++c1) {
        for (std::int64_t c2 = 1; c2 <= 2; ++c2) {
            for (std::int64_t c3 = 1; c3 <= 2; ++c3)
                check("hh_h", {c1, c2, c3}, h(c1), h(c2), h(c3),
                      three ? D(c1, c2) * (1 - D(c1, c3)) : D(c1, c2) * D(c1, c3));
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                check("hh_a", {c1, c2, c3}, h(c1), h(c2), a(c3),
                      three ? D(c1, c2) : 1 - D(c1, c2));
            check("hh_s", {c1, c2}, h(c1), h(c2), s, three ? 0 : 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("hh_b", {c1, c2, c3}, h(c1), h(c2), b(c3),
                      three ? 1 - D(c1, c2) : D(c1, c2));
        }
        for (std::int64_t c2 = 1; c2 <= am; ++c2) {
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                check("ha_a", {c1, c2, c3}, h(c1), a(c2), a(c3),
                      three ? 1 - D(c2 + c3, quarter) : 1);
            check("ha_s", {c1, c2}, h(c1), a(c2), s, 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("ha_b", {c1, c2, c3}, h(c1), a(c2), b(c3), 1);
        }
        check("hs_s", {c1}, h(c1), s, s, 1);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            check("hs_b", {c1, c2}, h(c1), s, b(c2), 1);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("hb_b", {c1, c2, c3}, h(c1), b(c2), b(c3),
                      three ? 1 : 1 + D(c2 + c3, quarter));
        }
    }
    for (std::int64_t c1 = 1; c1 <= am; ++c1) {
        for (std::int64_t c2 = 1; c2 <= am; ++c2) {
            for (std::int64_t c3 = 1; c3 <= am; ++c3)
                check("aa_a", {c1, c2, c3}, a(c1), a(c2), a(c3),
                      (c1 + c2 + c3 == (q + 1) / 2 || dmax2(c1, c2, c3)) ? 1 : 2);
            check("aa_s", {c1, c2}, a(c1), a(c2), s, 2 - D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("aa_b", {c1, c2, c3}, a(c1), a(c2), b(c3), 2);
        }
        check("as_s", {c1}, a(c1), s, s, 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            check("as_b", {c1, c2}, a(c1), s, b(c2), 2);
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("ab_b", {c1, c2, c3}, a(c1), b(c2), b(c3), 2);
        }
    }
    check("ss_s", {}, s, s, s, 2);
    for (std::int64_t c1 = 1; c1 <= bm; ++c1) {
        check("ss_b", {c1}, s, s, b(c1), 2);
        for (std::int64_t c2 = 1; c2 <= bm; ++c2) {
            check("sb_b", {c1, c2}, s, b(c1), b(c2), 2 + D(c1, c2));
            for (std::int64_t c3 = 1; c3 <= bm; ++c3)
                check("bb_b", {c1, c2, c3}, b(c1), b(c2), b(c3),
                      (c1 + c2 + c3 == (q - 1) / 2 || dmax2(c1, c2, c3)) ? 3 : 2);
        }
    }
    return rep;
}

}  // namespace fusionforge
