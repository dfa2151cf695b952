#pragma once

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "fusionforge/cyclotomic.hpp"

namespace fusionforge {

/// Closed real interval [lo, hi] with outward-rounded mpfr endpoints.
class RealInterval {
public:
    explicit RealInterval(mpfr_prec_t prec = 64) {
        mpfr_init2(lo_, prec);
        mpfr_init2(hi_, prec);
        mpfr_set_zero(lo_, 1);
        mpfr_set_zero(hi_, 1);
    }
    RealInterval(const RealInterval& o) {
        mpfr_init2(lo_, mpfr_get_prec(o.lo_));
        mpfr_init2(hi_, mpfr_get_prec(o.hi_));
        mpfr_set(lo_, o.lo_, MPFR_RNDD);
        mpfr_set(hi_, o.hi_, MPFR_RNDU);
    }
    RealInterval& operator=(const RealInterval& o) {
        if (this != &o) {
            mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
            mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
            mpfr_set(lo_, o.lo_, MPFR_RNDD);
            mpfr_set(hi_, o.hi_, MPFR_RNDU);
        }
        return *this;
    }
    ~RealInterval() {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }

    static RealInterval from_rational(const Rational& q, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
        return r;
    }

    static RealInterval point(double v, mpfr_prec_t prec) {
        RealInterval r(prec);
        mpfr_set_d(r.lo_, v, MPFR_RNDD);
        mpfr_set_d(r.hi_, v, MPFR_RNDU);
        return r;
    }

    void add(const RealInterval& o) {
        mpfr_add(lo_, lo_, o.lo_, MPFR_RNDD);
        mpfr_add(hi_, hi_, o.hi_, MPFR_RNDU);
    }

    void sub(const RealInterval& o) {
        mpfr_sub(lo_, lo_, o.hi_, MPFR_RNDD);
        mpfr_sub(hi_, hi_, o.lo_, MPFR_RNDU);
    }

    static RealInterval mul(const RealInterval& a, const RealInterval& b) {
        RealInterval r(std::max(mpfr_get_prec(a.lo_), mpfr_get_prec(b.lo_)));
        mpfr_t c[4];
        for (auto& x : c) mpfr_init2(x, mpfr_get_prec(r.lo_));
        mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDD);
        mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDD);
        mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDD);
        mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDD);
        mpfr_set(r.lo_, c[0], MPFR_RNDD);
        for (int i = 1; i < 4; ++i) mpfr_min(r.lo_, r.lo_, c[i], MPFR_RNDD);
        mpfr_mul(c[0], a.lo_, b.lo_, MPFR_RNDU);
        mpfr_mul(c[1], a.lo_, b.hi_, MPFR_RNDU);
        mpfr_mul(c[2], a.hi_, b.lo_, MPFR_RNDU);
        mpfr_mul(c[3], a.hi_, b.hi_, MPFR_RNDU);
        mpfr_set(r.hi_, c[0], MPFR_RNDU);
        for (int i = 1; i < 4; ++i) mpfr_max(r.hi_, r.hi_, c[i], MPFR_RNDU);
        for (auto& x : c) mpfr_clear(x);
        return r;
    }

    bool contains_zero() const {
        return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
    }
    bool contains(double v) const {
        return mpfr_cmp_d(lo_, v) <= 0 && mpfr_cmp_d(hi_, v) >= 0;
    }
    bool contains(const Rational& q) const {
        return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
    }
    int sign() const {
        if (mpfr_sgn(lo_) > 0) return 1;
        if (mpfr_sgn(hi_) < 0) return -1;
        return 0;  // straddles zero
    }
    double lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
    double hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }
    double width() const {
        mpfr_t w;
        mpfr_init2(w, mpfr_get_prec(lo_));
        mpfr_sub(w, hi_, lo_, MPFR_RNDU);
        double d = mpfr_get_d(w, MPFR_RNDU);
        mpfr_clear(w);
        return d;
    }
    double mid() const { return (lo() + hi()) / 2; }

    mpfr_ptr raw_lo() { return lo_; }
    mpfr_ptr raw_hi() { return hi_; }
    mpfr_srcptr raw_lo() const { return lo_; }
    mpfr_srcptr raw_hi() const { return hi_; }

private:
    mpfr_t lo_, hi_;
};

/// Rectangle in the complex plane (real x imaginary intervals).
struct ComplexInterval {
    RealInterval re, im;
    explicit ComplexInterval(mpfr_prec_t prec = 64) : re(prec), im(prec) {}
    bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
};

namespace detail {

// Enclosure of cos/sin(2*pi*k/n) at the given precision. Uses the midpoint
// value with an error radius of the argument width (|derivative| <= 1) plus
// a couple of ulps of slack.
inline void cos_sin_enclosure(Cyclotomic::Exp k, Cyclotomic::Exp n, mpfr_prec_t prec,
                              RealInterval& cos_out, RealInterval& sin_out) {
    mpfr_t pi_lo, pi_hi, th_lo, th_hi, mid, c, s, err, tmp;
    mpfr_inits2(prec + 32, pi_lo, pi_hi, th_lo, th_hi, mid, c, s, err, tmp, (mpfr_ptr) nullptr);
    mpfr_const_pi(pi_lo, MPFR_RNDD);
    mpfr_const_pi(pi_hi, MPFR_RNDU);
    // theta = 2*pi*k/n, k >= 0
    mpfr_mul_ui(th_lo, pi_lo, 2 * k, MPFR_RNDD);
    mpfr_div_ui(th_lo, th_lo, n, MPFR_RNDD);
    mpfr_mul_ui(th_hi, pi_hi, 2 * k, MPFR_RNDU);
    mpfr_div_ui(th_hi, th_hi, n, MPFR_RNDU);
    mpfr_sub(err, th_hi, th_lo, MPFR_RNDU);
    // a couple of ulps of slack around the correctly rounded midpoint values
    mpfr_set_ui_2exp(tmp, 4, -static_cast<mpfr_exp_t>(prec + 16), MPFR_RNDU);
    mpfr_add(err, err, tmp, MPFR_RNDU);
    mpfr_set(mid, th_lo, MPFR_RNDN);
    mpfr_sin_cos(s, c, mid, MPFR_RNDN);

    mpfr_sub(cos_out.raw_lo(), c, err, MPFR_RNDD);
    mpfr_add(cos_out.raw_hi(), c, err, MPFR_RNDU);
    mpfr_sub(sin_out.raw_lo(), s, err, MPFR_RNDD);
    mpfr_add(sin_out.raw_hi(), s, err, MPFR_RNDU);
    mpfr_clears(pi_lo, pi_hi, th_lo, th_hi, mid, c, s, err, tmp, (mpfr_ptr) nullptr);
}

}  // namespace detail

/// Certified rectangle containing the image of x under zeta_N -> e^(2*pi*i/N).
inline ComplexInterval embed(const Cyclotomic& x, mpfr_prec_t precision_bits = 64) {
    if (precision_bits < 32) precision_bits = 32;
    ComplexInterval acc(precision_bits);
    for (const auto& [e, q] : x.terms()) {
        RealInterval coeff = RealInterval::from_rational(q, precision_bits);
        RealInterval c(precision_bits), s(precision_bits);
        detail::cos_sin_enclosure(e, x.order(), precision_bits, c, s);
        RealInterval re = RealInterval::mul(coeff, c);
        RealInterval im = RealInterval::mul(coeff, s);
        acc.re.add(re);
        acc.im.add(im);
    }
    return acc;
}

inline mpfr_prec_t embed_precision_cap() {
    if (const char* env = std::getenv("FUSIONFORGE_PRECISION_BITS")) {
        long v = std::atol(env);
        if (v >= 32) return static_cast<mpfr_prec_t>(v);
    }
    return 4096;
}

struct PrecisionExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Sign of a real cyclotomic value: exact when rational, otherwise by
/// refining the certified embedding geometrically up to the precision cap.
/// Never guesses; throws PrecisionExceeded at the cap.
inline int sign_of_real(const Cyclotomic& x, mpfr_prec_t cap = embed_precision_cap()) {
    auto c = x.canonicalized();
    if (auto r = c.as_rational()) return sgn(*r);
    if (!c.is_real()) throw std::invalid_argument("sign_of_real: value is not real");
    for (mpfr_prec_t prec = 64; prec <= cap; prec *= 2) {
        ComplexInterval iv = embed(c, prec);
        int s = iv.re.sign();
        if (s != 0) return s;
    }
    throw PrecisionExceeded("sign undecidable at precision cap");
}

}  // namespace fusionforge
