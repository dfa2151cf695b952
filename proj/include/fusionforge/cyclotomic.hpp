#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fusionforge/rational.hpp"

namespace fusionforge {

/// Exact element of a cyclotomic field Q(zeta_N), stored as a sparse map
/// from exponents (mod N) to nonzero rational coefficients.
///
/// Canonical form uses the tensor power basis: write N = prod p^a and keep,
/// per prime power, only residues below (p-1)*p^(a-1), reducing with
/// Phi_{p^a}(x) = sum_j x^(j*p^(a-1)). The canonical exponents form a
/// Z-module basis of Z[zeta_N], so integrality and rationality read off the
/// coefficients directly. Canonicalization also divides out the gcd of the
/// exponents, shrinking the declared order when it can.
///
/// Values are immutable; all operations return new values. Mixed orders are
/// lifted to the lcm first.
class Cyclotomic {
public:
    using Exp = std::uint64_t;
    using Term = std::pair<Exp, Rational>;

    Cyclotomic() : order_(1), canonical_(true) {}

    Cyclotomic(const Rational& r) : order_(1), canonical_(true) {
        if (r != 0) terms_.emplace_back(0, r);
    }

    Cyclotomic(long v) : Cyclotomic(Rational(v)) {}

    static Cyclotomic root_of_unity(Exp order, long long exponent) {
        if (order == 0) throw std::invalid_argument("root_of_unity: order must be >= 1");
        long long e = exponent % static_cast<long long>(order);
        if (e < 0) e += static_cast<long long>(order);
        Cyclotomic z;
        z.order_ = order;
        z.canonical_ = false;
        z.terms_.emplace_back(static_cast<Exp>(e), Rational(1));
        return z;
    }

    Exp order() const { return order_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_canonical() const { return canonical_; }
    bool is_zero() const { return canonicalized().terms_.empty(); }

    Cyclotomic operator-() const {
        Cyclotomic r(*this);
        for (auto& t : r.terms_) t.second = -t.second;
        return r;
    }

    Cyclotomic scaled(const Rational& c) const {
        if (c == 0) return Cyclotomic();
        Cyclotomic r(*this);
        for (auto& t : r.terms_) t.second *= c;
        return r;
    }

    friend Cyclotomic operator+(const Cyclotomic& a, const Cyclotomic& b) {
        Exp n = lcm_order(a.order_, b.order_);
        Cyclotomic x = a.to_order(n), y = b.to_order(n);
        Cyclotomic r;
        r.order_ = n;
        // merge the two sorted term lists
        r.terms_.reserve(x.terms_.size() + y.terms_.size());
        auto i = x.terms_.begin(), j = y.terms_.begin();
        while (i != x.terms_.end() || j != y.terms_.end()) {
            if (j == y.terms_.end() || (i != x.terms_.end() && i->first < j->first)) {
                r.terms_.push_back(*i++);
            } else if (i == x.terms_.end() || j->first < i->first) {
                r.terms_.push_back(*j++);
            } else {
                Rational c = i->second + j->second;
                if (c != 0) r.terms_.emplace_back(i->first, c);
                ++i;
                ++j;
            }
        }
        r.canonical_ = x.canonical_ && y.canonical_;
        return r;
    }

    friend Cyclotomic operator-(const Cyclotomic& a, const Cyclotomic& b) { return a + (-b); }

    friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
        Exp n = lcm_order(a.order_, b.order_);
        Cyclotomic x = a.to_order(n), y = b.to_order(n);
        std::map<Exp, Rational> acc;
        for (const auto& [ea, ca] : x.terms_)
            for (const auto& [eb, cb] : y.terms_) {
                Exp e = ea + eb;
                if (e >= n) e -= n;
                auto it = acc.find(e);
                if (it == acc.end())
                    acc.emplace(e, ca * cb);
                else {
                    it->second += ca * cb;
                    if (it->second == 0) acc.erase(it);
                }
            }
        Cyclotomic r;
        r.order_ = n;
        r.terms_.assign(acc.begin(), acc.end());
        r.canonical_ = false;
        return r;
    }

    friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
        Cyclotomic x = a.canonicalized(), y = b.canonicalized();
        if (x.order_ != y.order_) {
            Exp n = lcm_order(x.order_, y.order_);
            x = x.to_order(n).canonicalized();
            y = y.to_order(n).canonicalized();
        }
        return x.order_ == y.order_ && x.terms_ == y.terms_;
    }

    friend bool operator!=(const Cyclotomic& a, const Cyclotomic& b) { return !(a == b); }

    /// Galois automorphism zeta -> zeta^(-1); complex conjugation under any
    /// embedding.
    Cyclotomic conjugate() const { return galois(order_ - 1 == 0 ? 1 : order_ - 1); }

    /// Galois automorphism zeta -> zeta^a for gcd(a, order) = 1.
    Cyclotomic galois(Exp a) const {
        if (std::gcd(a, order_) != 1)
            throw std::invalid_argument("galois: exponent not coprime to order");
        Cyclotomic r;
        r.order_ = order_;
        r.canonical_ = false;
        std::map<Exp, Rational> acc;
        for (const auto& [e, c] : terms_)
            acc.emplace(static_cast<Exp>((static_cast<unsigned __int128>(e) * a) % order_), c);
        r.terms_.assign(acc.begin(), acc.end());
        return r;
    }

    /// Rewrite into the canonical basis (idempotent). Also shrinks the order
    /// by the gcd of the exponents when possible.
    Cyclotomic canonicalized() const {
        if (canonical_) return *this;
        Cyclotomic r = *this;
        for (;;) {
            r = r.tensor_canonicalize();
            if (r.terms_.empty()) {
                r.order_ = 1;
                break;
            }
            Exp g = r.order_;
            for (const auto& [e, c] : r.terms_) g = std::gcd(g, e);
            if (g <= 1) break;
            r.order_ /= g;
            for (auto& t : r.terms_) t.first /= g;
            if (r.order_ == 1) break;
            r.canonical_ = false;
        }
        r.canonical_ = true;
        return r;
    }

    /// The rational value, if the canonical form is supported on exponent 0.
    std::optional<Rational> as_rational() const {
        Cyclotomic c = canonicalized();
        if (c.terms_.empty()) return Rational(0);
        if (c.order_ == 1 && c.terms_.size() == 1) return c.terms_[0].second;
        return std::nullopt;
    }

    /// True iff the value lies in Z[zeta_N] (all canonical coefficients are
    /// integers; the canonical exponents are a Z-basis of the ring of
    /// integers).
    bool is_cyclotomic_integer() const {
        Cyclotomic c = canonicalized();
        for (const auto& [e, q] : c.terms_)
            if (!is_integer(q)) return false;
        return true;
    }

    /// True iff fixed by conjugation (real under every embedding).
    bool is_real() const { return *this == conjugate(); }

    Cyclotomic to_order(Exp n) const {
        if (n == order_) return *this;
        if (n % order_ != 0) throw std::invalid_argument("to_order: not a multiple of order");
        Exp f = n / order_;
        Cyclotomic r;
        r.order_ = n;
        r.canonical_ = false;
        r.terms_.reserve(terms_.size());
        for (const auto& [e, c] : terms_) r.terms_.emplace_back(e * f, c);
        return r;
    }

    std::string to_string() const;  // GAP-style E(n)^k notation

    static Cyclotomic parse(const std::string& text);  // accepts the same notation

private:
    static Exp lcm_order(Exp a, Exp b) {
        Exp g = std::gcd(a, b);
        unsigned __int128 l = (unsigned __int128)(a / g) * b;
        if (l > (unsigned __int128)1 << 62) throw std::overflow_error("cyclotomic order overflow");
        return static_cast<Exp>(l);
    }

    struct PrimePower {
        Exp p, pa;     // prime and p^a
        Exp bound;     // (p-1) * p^(a-1): canonical residues are < bound
        Exp step;      // p^(a-1)
        Exp crt;       // ==1 mod pa, ==0 mod n/pa
    };

    struct Basis {
        Exp n = 1;
        std::vector<PrimePower> pps;
    };

    static std::shared_ptr<const Basis> basis_for(Exp n) {
        static std::mutex mu;
        static std::unordered_map<Exp, std::shared_ptr<const Basis>> cache;
        {
            std::lock_guard<std::mutex> lock(mu);
            auto it = cache.find(n);
            if (it != cache.end()) return it->second;
        }
        auto b = std::make_shared<Basis>();
        b->n = n;
        Exp m = n;
        for (Exp p = 2; p * p <= m; ++p) {
            if (m % p) continue;
            Exp pa = 1;
            while (m % p == 0) {
                m /= p;
                pa *= p;
            }
            b->pps.push_back({p, pa, 0, 0, 0});
        }
        if (m > 1) b->pps.push_back({m, m, 0, 0, 0});
        for (auto& pp : b->pps) {
            pp.step = pp.pa / pp.p;
            pp.bound = (pp.p - 1) * pp.step;
            Exp rest = n / pp.pa;
            // crt = rest * (rest^-1 mod pa)
            Exp inv = 1, base = rest % pp.pa, e = 1;
            // extended Euclid (pa is small enough for the naive loop)
            {
                long long t = 0, newt = 1;
                long long r0 = static_cast<long long>(pp.pa), r1 = static_cast<long long>(base);
                while (r1 != 0) {
                    long long qd = r0 / r1;
                    long long tmp = t - qd * newt;
                    t = newt;
                    newt = tmp;
                    tmp = r0 - qd * r1;
                    r0 = r1;
                    r1 = tmp;
                }
                if (r0 != 1) throw std::logic_error("crt: non-coprime parts");
                if (t < 0) t += static_cast<long long>(pp.pa);
                inv = static_cast<Exp>(t);
            }
            (void)e;
            pp.crt = static_cast<Exp>(((unsigned __int128)rest * inv) % n);
        }
        std::lock_guard<std::mutex> lock(mu);
        auto [it, ok] = cache.emplace(n, std::move(b));
        (void)ok;
        return it->second;
    }

    Cyclotomic tensor_canonicalize() const {
        if (order_ == 1) {
            Cyclotomic r = *this;
            r.canonical_ = true;
            return r;
        }
        auto basis = basis_for(order_);
        std::map<Exp, Rational> acc;
        // expansion per prime power: residue -> list of (residue', sign)
        std::vector<std::pair<Exp, int>> parts[2];
        for (const auto& [e, c] : terms_) {
            // start with the "empty product" carrying exponent 0
            std::vector<std::pair<Exp, int>> cur{{0, 1}};
            for (const auto& pp : basis->pps) {
                Exp res = e % pp.pa;
                std::vector<std::pair<Exp, int>> local;
                if (res < pp.bound) {
                    local.emplace_back(res, 1);
                } else {
                    // zeta^{bound + t} = -sum_{j=0..p-2} zeta^{j*step + t}
                    Exp t = res - pp.bound;
                    for (Exp j = 0; j + 1 < pp.p; ++j) local.emplace_back(j * pp.step + t, -1);
                }
                std::vector<std::pair<Exp, int>> next;
                next.reserve(cur.size() * local.size());
                for (const auto& [ec, sc] : cur)
                    for (const auto& [el, sl] : local) {
                        Exp combined =
                            static_cast<Exp>((ec + (unsigned __int128)el * pp.crt) % order_);
                        next.emplace_back(combined, sc * sl);
                    }
                cur.swap(next);
            }
            for (const auto& [ce, sign] : cur) {
                auto it = acc.find(ce);
                if (it == acc.end()) {
                    Rational v = sign > 0 ? c : -c;
                    if (v != 0) acc.emplace(ce, std::move(v));
                } else {
                    if (sign > 0)
                        it->second += c;
                    else
                        it->second -= c;
                    if (it->second == 0) acc.erase(it);
                }
            }
        }
        Cyclotomic r;
        r.order_ = order_;
        r.terms_.assign(acc.begin(), acc.end());
        r.canonical_ = true;
        return r;
    }

    Exp order_;
    std::vector<Term> terms_;  // sorted by exponent; no zero coefficients
    bool canonical_;
};

inline Cyclotomic operator*(const Rational& c, const Cyclotomic& x) { return x.scaled(c); }
inline Cyclotomic operator*(const Cyclotomic& x, const Rational& c) { return x.scaled(c); }

inline Cyclotomic root_of_unity(Cyclotomic::Exp order, long long exponent) {
    return Cyclotomic::root_of_unity(order, exponent);
}

inline Cyclotomic conjugate(const Cyclotomic& x) { return x.conjugate(); }
inline Cyclotomic canonicalize(const Cyclotomic& x) { return x.canonicalized(); }
inline std::optional<Rational> as_rational(const Cyclotomic& x) { return x.as_rational(); }
inline bool is_cyclotomic_integer(const Cyclotomic& x) { return x.is_cyclotomic_integer(); }

namespace detail {

inline int legendre(long long t, long long p) {
    // Euler's criterion by fast modular exponentiation
    long long e = (p - 1) / 2, base = t % p, r = 1;
    if (base < 0) base += p;
    while (e) {
        if (e & 1) r = (unsigned __int128)r * base % p;
        base = (unsigned __int128)base * base % p;
        e >>= 1;
    }
    return r == 1 ? 1 : (r == 0 ? 0 : -1);
}

}  // namespace detail

/// Exact +sqrt(n) as a cyclotomic number, built from quadratic Gauss sums:
/// sqrt(2) = zeta_8 + zeta_8^-1, and for odd prime p the sum
/// sum_t (t|p) zeta_p^t equals sqrt(p) for p = 1 mod 4 and i*sqrt(p) for
/// p = 3 mod 4 (divide by i = zeta_4). Square factors come out as integers.
inline Cyclotomic sqrt_integer(unsigned long long n) {
    if (n == 0) throw std::invalid_argument("sqrt_integer: argument must be >= 1");
    unsigned long long square = 1, rest = n;
    Cyclotomic result(Rational(1));
    for (unsigned long long p = 2; p * p <= rest; ++p) {
        if (rest % p) continue;
        unsigned e = 0;
        while (rest % p == 0) {
            rest /= p;
            ++e;
        }
        for (unsigned i = 0; i + 1 < e; i += 2) square *= p;
        if (e % 2 == 0) continue;
        if (p == 2) {
            result = result * (root_of_unity(8, 1) + root_of_unity(8, 7));
        } else {
            Cyclotomic g;
            for (unsigned long long t = 1; t < p; ++t)
                g = g + Rational(detail::legendre(static_cast<long long>(t),
                                                  static_cast<long long>(p))) *
                            root_of_unity(p, static_cast<long long>(t));
            if (p % 4 == 1)
                result = result * g;
            else
                result = result * (root_of_unity(4, 3) * g);  // g = i*sqrt(p)
        }
    }
    if (rest > 1) {
        // leftover odd part with exponent 1
        unsigned long long p = rest;
        if (p == 2) {
            result = result * (root_of_unity(8, 1) + root_of_unity(8, 7));
        } else {
            Cyclotomic g;
            for (unsigned long long t = 1; t < p; ++t)
                g = g + Rational(detail::legendre(static_cast<long long>(t),
                                                  static_cast<long long>(p))) *
                            root_of_unity(p, static_cast<long long>(t));
            result = (p % 4 == 1) ? result * g : result * (root_of_unity(4, 3) * g);
        }
    }
    return (result * Rational(static_cast<long>(square))).canonicalized();
}

inline std::string Cyclotomic::to_string() const {
    Cyclotomic c = canonicalized();
    if (c.terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, q] : c.terms_) {
        Rational a = q;
        if (!first && a > 0) os << "+";
        if (e == 0) {
            os << a.get_str();
        } else {
            if (a == -1)
                os << "-";
            else if (a != 1)
                os << a.get_str() << "*";
            os << "E(" << c.order_ << ")";
            if (e != 1) os << "^" << e;
        }
        first = false;
    }
    return os.str();
}

inline Cyclotomic Cyclotomic::parse(const std::string& text) {
    // terms like  3/2*E(5)^2, -E(7), 4, -1/3
    Cyclotomic result;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i == text.size()) throw std::invalid_argument("parse: empty cyclotomic literal");
    while (i < text.size()) {
        skip_ws();
        int sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            if (text[i] == '-') sign = -1;
            ++i;
            skip_ws();
        }
        Rational coeff(1);
        bool saw_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() &&
                   (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
                ++j;
            coeff = Rational(text.substr(i, j - i));
            coeff.canonicalize();
            i = j;
            saw_coeff = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip_ws();
            }
        }
        if (i < text.size() && text[i] == 'E') {
            ++i;
            if (i >= text.size() || text[i] != '(') throw std::invalid_argument("parse: expected (");
            ++i;
            std::size_t j = i;
            while (j < text.size() && text[j] != ')') ++j;
            if (j == text.size()) throw std::invalid_argument("parse: expected )");
            unsigned long long n = std::stoull(text.substr(i, j - i));
            i = j + 1;
            long long e = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                std::size_t k = i;
                if (k < text.size() && (text[k] == '-' || text[k] == '+')) ++k;
                while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                e = std::stoll(text.substr(i, k - i));
                i = k;
            }
            result = result + (Rational(sign) * coeff) * root_of_unity(n, e);
        } else if (saw_coeff) {
            result = result + Cyclotomic(Rational(sign) * coeff);
        } else {
            throw std::invalid_argument("parse: unexpected character in cyclotomic literal");
        }
        skip_ws();
    }
    return result;
}

}  // namespace fusionforge
