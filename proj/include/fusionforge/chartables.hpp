#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fusionforge/cyclotomic.hpp"
#include "fusionforge/interval.hpp"

namespace fusionforge {

/// Which block of the generic table a basis element belongs to. The blocks
/// with equal degree would otherwise collide at small q (e.g. q = 2, where
/// the degree-(q-1) family also has degree 1).
enum class Family : std::uint8_t {
    Unit,      // trivial element, degree 1
    Half,      // the degree-(q-/+1)/2 pair (odd q only)
    QMinus,    // degree q-1 family
    Q,         // degree q element
    QPlus,     // degree q+1 family
    Point,     // degree-1 group part of the near-group table
    Big,       // the degree-(q-1) element of the near-group table
};

inline const char* family_name(Family f) {
    switch (f) {
        case Family::Unit: return "unit";
        case Family::Half: return "half";
        case Family::QMinus: return "qminus";
        case Family::Q: return "q";
        case Family::QPlus: return "qplus";
        case Family::Point: return "point";
        case Family::Big: return "big";
    }
    return "?";
}

struct RowLabel {
    std::int64_t degree = 1;
    std::int64_t charparam = 1;
    Family family = Family::Unit;

    friend bool operator==(const RowLabel&, const RowLabel&) = default;
    std::string str() const {
        return "x_{" + std::to_string(degree) + "," + std::to_string(charparam) + "}";
    }
};

/// Column block descriptor; columns in the same block share a class size
/// and the same small cyclotomic field.
struct ColumnGroup {
    Family kind;               // block tag reusing the row family naming
    std::int64_t classparam;   // the k parameter of the column
    std::int64_t class_size;
};

struct TableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The eigentable of a commutative fusion ring: simultaneous eigenvalues
/// lambda_{i,j} (row i = basis element, column j = character), with class
/// sizes, codegrees and FPdim. Immutable after construction.
class Eigentable {
public:
    int rank = 0;
    std::vector<RowLabel> row_labels;
    std::vector<ColumnGroup> columns;
    std::vector<std::int64_t> class_sizes;
    std::vector<std::int64_t> codegrees;
    std::int64_t fpdim_total = 0;
    std::vector<Cyclotomic> entries;  // row-major, rank x rank
    std::string family;               // "psl2" or "etingof" (empty for custom tables)
    std::int64_t q = 0;

    const Cyclotomic& at(int i, int j) const { return entries[static_cast<std::size_t>(i) * rank + j]; }
    Cyclotomic& at(int i, int j) { return entries[static_cast<std::size_t>(i) * rank + j]; }

    /// Recompute codegrees from Definition sum_i |lambda_{i,j}|^2 and check
    /// them against fpdim/class_size. A mismatch is a construction bug.
    void finalize() {
        codegrees.assign(rank, 0);
        for (int j = 0; j < rank; ++j) {
            Cyclotomic s;
            for (int i = 0; i < rank; ++i) s = s + at(i, j) * at(i, j).conjugate();
            auto r = s.as_rational();
            if (!r || !is_integer(*r))
                throw TableError("codegree is not a rational integer at column " + std::to_string(j));
            std::int64_t c = to_int64(r->get_num());
            if (static_cast<std::int64_t>(c) * class_sizes[j] != fpdim_total)
                throw TableError("codegree * class size != fpdim at column " + std::to_string(j));
            codegrees[j] = c;
        }
    }
};

namespace detail {

inline Cyclotomic two_cos(std::int64_t n, std::int64_t a) {
    // zeta_n^a + zeta_n^-a
    return root_of_unity(static_cast<Cyclotomic::Exp>(n), a) +
           root_of_unity(static_cast<Cyclotomic::Exp>(n), -a);
}

}  // namespace detail

/// Generic table of the interpolated family for any integer q >= 2; the
/// branch on q mod 4 picks the matching table shape. Row and column blocks
/// are laid out in the fixed order the printed fusion matrices use.
inline Eigentable build_psl2_table(std::int64_t q) {
    if (q <= 1) throw std::invalid_argument("build_psl2_table: q must be >= 2");
    Eigentable t;
    t.family = "psl2";
    t.q = q;

    const Cyclotomic one{Rational(1)}, zero;
    auto C = [](long v) { return Cyclotomic(Rational(v)); };

    if (q % 2 == 0) {
        t.fpdim_total = q * (q * q - 1);
        t.row_labels.push_back({1, 1, Family::Unit});
        for (std::int64_t c = 1; c <= q / 2; ++c) t.row_labels.push_back({q - 1, c, Family::QMinus});
        t.row_labels.push_back({q, 1, Family::Q});
        for (std::int64_t c = 1; c <= (q - 2) / 2; ++c) t.row_labels.push_back({q + 1, c, Family::QPlus});

        t.columns.push_back({Family::Unit, 1, 1});
        t.columns.push_back({Family::Q, 1, q * q - 1});
        for (std::int64_t k = 1; k <= (q - 2) / 2; ++k)
            t.columns.push_back({Family::QMinus, k, q * (q + 1)});
        for (std::int64_t k = 1; k <= q / 2; ++k)
            t.columns.push_back({Family::QPlus, k, q * (q - 1)});

        t.rank = static_cast<int>(t.row_labels.size());
        t.entries.assign(static_cast<std::size_t>(t.rank) * t.rank, zero);
        for (int i = 0; i < t.rank; ++i) {
            const RowLabel& row = t.row_labels[i];
            for (int j = 0; j < t.rank; ++j) {
                const ColumnGroup& col = t.columns[j];
                std::int64_t k = col.classparam, c = row.charparam;
                Cyclotomic v;
                switch (col.kind) {
                    case Family::Unit: v = C(row.degree); break;
                    case Family::Q:
                        v = row.family == Family::Unit   ? one
                            : row.family == Family::QMinus ? C(-1)
                            : row.family == Family::Q      ? zero
                                                           : one;
                        break;
                    case Family::QMinus:
                        v = row.family == Family::Unit   ? one
                            : row.family == Family::QMinus ? zero
                            : row.family == Family::Q      ? one
                                                           : detail::two_cos(q - 1, k * c);
                        break;
                    default:  // QPlus columns
                        v = row.family == Family::Unit   ? one
                            : row.family == Family::QMinus ? -detail::two_cos(q + 1, k * c)
                            : row.family == Family::Q      ? C(-1)
                                                           : zero;
                        break;
                }
                t.at(i, j) = v.canonicalized();
            }
        }
    } else {
        t.fpdim_total = q * (q * q - 1) / 2;
        const bool three_mod4 = (q % 4 == 3);
        const std::int64_t half_deg = three_mod4 ? (q - 1) / 2 : (q + 1) / 2;
        const std::int64_t am = three_mod4 ? (q - 3) / 4 : (q - 1) / 4;  // q-1 family count
        const std::int64_t bm = three_mod4 ? (q - 3) / 4 : (q - 5) / 4;  // q+1 family count
        const std::int64_t lone_k = three_mod4 ? (q + 1) / 4 : (q - 1) / 4;

        t.row_labels.push_back({1, 1, Family::Unit});
        for (std::int64_t c = 1; c <= 2; ++c) t.row_labels.push_back({half_deg, c, Family::Half});
        for (std::int64_t c = 1; c <= am; ++c) t.row_labels.push_back({q - 1, c, Family::QMinus});
        t.row_labels.push_back({q, 1, Family::Q});
        for (std::int64_t c = 1; c <= bm; ++c) t.row_labels.push_back({q + 1, c, Family::QPlus});

        t.columns.push_back({Family::Unit, 1, 1});
        for (std::int64_t k = 1; k <= 2; ++k)
            t.columns.push_back({Family::Half, k, (q * q - 1) / 2});
        if (three_mod4) {
            for (std::int64_t k = 1; k <= am; ++k)
                t.columns.push_back({Family::QMinus, k, q * (q + 1)});
            for (std::int64_t k = 1; k <= bm; ++k)
                t.columns.push_back({Family::QPlus, k, q * (q - 1)});
            t.columns.push_back({Family::Big, lone_k, q * (q - 1) / 2});
        } else {
            for (std::int64_t k = 1; k <= bm; ++k)
                t.columns.push_back({Family::QMinus, k, q * (q + 1)});
            t.columns.push_back({Family::Big, lone_k, q * (q + 1) / 2});
            for (std::int64_t k = 1; k <= am; ++k)
                t.columns.push_back({Family::QPlus, k, q * (q - 1)});
        }

        t.rank = static_cast<int>(t.row_labels.size());
        t.entries.assign(static_cast<std::size_t>(t.rank) * t.rank, zero);

        // (± 1 ± i sqrt(q))/2 entries of the paired columns
        Cyclotomic sq = sqrt_integer(static_cast<unsigned long long>(q));
        Cyclotomic root = three_mod4 ? (root_of_unity(4, 1) * sq).canonicalized() : sq;
        auto sgn_pow = [](std::int64_t e) { return (e % 2 == 0) ? 1 : -1; };

        for (int i = 0; i < t.rank; ++i) {
            const RowLabel& row = t.row_labels[i];
            for (int j = 0; j < t.rank; ++j) {
                const ColumnGroup& col = t.columns[j];
                std::int64_t k = col.classparam, c = row.charparam;
                Cyclotomic v;
                switch (row.family) {
                    case Family::Unit:
                        v = one;
                        break;
                    case Family::Half:
                        if (col.kind == Family::Unit)
                            v = C(half_deg);
                        else if (col.kind == Family::Half) {
                            // (-1 + i(-1)^{k+c} sqrt q)/2   or   (1 + (-1)^{k+c} sqrt q)/2
                            Cyclotomic base = three_mod4 ? C(-1) : one;
                            v = (base + Rational(sgn_pow(k + c)) * root).scaled(make_rational(1, 2));
                        } else if (three_mod4) {
                            // 0 on the zeta_{q-1} block; (-1)^{k+1} on zeta_{q+1} and lone
                            v = (col.kind == Family::QMinus) ? zero : C(sgn_pow(k + 1));
                        } else {
                            // (-1)^k on zeta_{q-1} and lone; 0 on zeta_{q+1}
                            v = (col.kind == Family::QPlus) ? zero : C(sgn_pow(k));
                        }
                        break;
                    case Family::QMinus:
                        if (col.kind == Family::Unit)
                            v = C(q - 1);
                        else if (col.kind == Family::Half)
                            v = C(-1);
                        else if (col.kind == Family::QMinus)
                            v = zero;
                        else if (col.kind == Family::QPlus)
                            v = -detail::two_cos(q + 1, 2 * k * c);
                        else  // lone column
                            v = three_mod4 ? C(-2 * sgn_pow(c)) : zero;
                        break;
                    case Family::Q:
                        if (col.kind == Family::Unit)
                            v = C(q);
                        else if (col.kind == Family::Half)
                            v = zero;
                        else if (col.kind == Family::QMinus)
                            v = one;
                        else if (col.kind == Family::QPlus)
                            v = C(-1);
                        else
                            v = three_mod4 ? C(-1) : one;
                        break;
                    default:  // QPlus rows
                        if (col.kind == Family::Unit)
                            v = C(q + 1);
                        else if (col.kind == Family::Half)
                            v = one;
                        else if (col.kind == Family::QMinus)
                            v = detail::two_cos(q - 1, 2 * k * c);
                        else if (col.kind == Family::QPlus)
                            v = zero;
                        else
                            v = three_mod4 ? zero : C(2 * sgn_pow(c));
                        break;
                }
                t.at(i, j) = v.canonicalized();
            }
        }
    }
    t.class_sizes.clear();
    for (const auto& c : t.columns) t.class_sizes.push_back(c.class_size);
    t.finalize();
    return t;
}

/// Generic table of the near-group family: rank q, degree-1 elements
/// x_{1,c} for c = 0..q-2 plus one element of degree q-1.
inline Eigentable build_etingof_table(std::int64_t q) {
    if (q <= 1) throw std::invalid_argument("build_etingof_table: q must be >= 2");
    Eigentable t;
    t.family = "etingof";
    t.q = q;
    t.fpdim_total = q * (q - 1);
    const std::int64_t n = q - 1;
    for (std::int64_t c = 0; c <= n - 1; ++c) t.row_labels.push_back({1, c, Family::Point});
    t.row_labels.push_back({q - 1, 1, Family::Big});
    t.columns.push_back({Family::Unit, 1, 1});
    for (std::int64_t k = 1; k <= q - 2; ++k) t.columns.push_back({Family::Point, k, q});
    t.columns.push_back({Family::Big, 1, q - 1});
    t.rank = static_cast<int>(q);
    t.entries.assign(static_cast<std::size_t>(t.rank) * t.rank, Cyclotomic());
    for (int i = 0; i < t.rank; ++i) {
        const RowLabel& row = t.row_labels[i];
        for (int j = 0; j < t.rank; ++j) {
            const ColumnGroup& col = t.columns[j];
            Cyclotomic v;
            if (row.family == Family::Point) {
                if (col.kind == Family::Unit || col.kind == Family::Big)
                    v = Cyclotomic(Rational(1));
                else
                    v = root_of_unity(static_cast<Cyclotomic::Exp>(n), col.classparam * row.charparam);
            } else {
                if (col.kind == Family::Unit)
                    v = Cyclotomic(Rational(q - 1));
                else if (col.kind == Family::Big)
                    v = Cyclotomic(Rational(-1));
            }
            t.at(i, j) = v.canonicalized();
        }
    }
    t.class_sizes.clear();
    for (const auto& c : t.columns) t.class_sizes.push_back(c.class_size);
    t.finalize();
    return t;
}

namespace detail {

/// In-place accumulation of a * conj(b) * w into an exponent map at the
/// lcm order; avoids temporary Cyclotomic values in the orthogonality sums.
inline void accumulate_conj_product(std::map<Cyclotomic::Exp, Rational>& acc,
                                    Cyclotomic::Exp& acc_order, const Cyclotomic& a,
                                    const Cyclotomic& b, const Rational& w) {
    if (a.terms().empty() || b.terms().empty()) return;
    Cyclotomic::Exp na = a.order(), nb = b.order();
    Cyclotomic::Exp g = std::gcd(na, nb), L0 = na / g * nb;
    Cyclotomic::Exp g2 = std::gcd(acc_order, L0);
    Cyclotomic::Exp L = acc_order / g2 * L0;
    if (L != acc_order) {
        std::map<Cyclotomic::Exp, Rational> lifted;
        for (const auto& [e, c] : acc) lifted.emplace(e * (L / acc_order), c);
        acc.swap(lifted);
        acc_order = L;
    }
    Cyclotomic::Exp fa = L / na, fb = L / nb;
    for (const auto& [ea, ca] : a.terms())
        for (const auto& [eb, cb] : b.terms()) {
            // conj(b): exponent eb -> -eb
            Cyclotomic::Exp e = (ea * fa + (L - (eb * fb) % L)) % L;
            acc[e] += ca * cb * w;
        }
}

inline std::optional<Rational> map_as_rational(const std::map<Cyclotomic::Exp, Rational>& acc,
                                               Cyclotomic::Exp order) {
    Cyclotomic c;
    for (const auto& [e, v] : acc)
        if (v != 0) c = c + v * root_of_unity(order, static_cast<long long>(e));
    return c.as_rational();
}

}  // namespace detail

/// Exact check of both Schur orthogonality relations.
inline bool verify_schur_orthogonality(const Eigentable& t) {
    const int r = t.rank;
    for (int j = 0; j < r; ++j)
        for (int jp = j; jp < r; ++jp) {
            std::map<Cyclotomic::Exp, Rational> acc;
            Cyclotomic::Exp order = 1;
            for (int i = 0; i < r; ++i)
                detail::accumulate_conj_product(acc, order, t.at(i, j), t.at(i, jp), Rational(1));
            auto v = detail::map_as_rational(acc, order);
            if (!v) return false;
            if (j == jp ? (*v != Rational(static_cast<long>(t.codegrees[j]))) : (*v != 0)) return false;
        }
    for (int i = 0; i < r; ++i)
        for (int ip = i; ip < r; ++ip) {
            std::map<Cyclotomic::Exp, Rational> acc;
            Cyclotomic::Exp order = 1;
            for (int j = 0; j < r; ++j)
                detail::accumulate_conj_product(acc, order, t.at(i, j), t.at(ip, j),
                                                Rational(1) / Rational(static_cast<long>(t.codegrees[j])));
            auto v = detail::map_as_rational(acc, order);
            if (!v) return false;
            if (*v != Rational(i == ip ? 1 : 0)) return false;
        }
    return true;
}

struct ReconstructionAssumptions {
    bool rows_orthonormal = false;  // (a)
    bool duals_exist = false;       // (b) unique conjugate row for every row
    bool row_one_is_unit = false;   // (c)
    std::vector<int> dual;          // the permutation found for (b)
    bool ok() const { return rows_orthonormal && duals_exist && row_one_is_unit; }
};

/// Checks the reconstruction hypotheses (a)-(c) and returns the
/// dual permutation; hypothesis (d), integrality of the structure
/// constants, is certified during reconstruction itself.
inline ReconstructionAssumptions verify_reconstruction_assumptions(const Eigentable& t) {
    ReconstructionAssumptions res;
    const int r = t.rank;
    res.rows_orthonormal = true;
    for (int i = 0; i < r && res.rows_orthonormal; ++i)
        for (int ip = i; ip < r; ++ip) {
            Cyclotomic s;
            for (int j = 0; j < r; ++j)
                s = s + (t.at(i, j) * t.at(ip, j).conjugate())
                            .scaled(Rational(1) / Rational(static_cast<long>(t.codegrees[j])));
            auto v = s.as_rational();
            if (!v || *v != Rational(i == ip ? 1 : 0)) {
                res.rows_orthonormal = false;
                break;
            }
        }
    res.dual.assign(r, -1);
    res.duals_exist = true;
    for (int i = 0; i < r; ++i) {
        int found = -1;
        for (int ip = 0; ip < r; ++ip) {
            bool all = true;
            for (int j = 0; j < r && all; ++j)
                if (t.at(ip, j) != t.at(i, j).conjugate()) all = false;
            if (all) {
                if (found != -1) { found = -2; break; }
                found = ip;
            }
        }
        if (found < 0) { res.duals_exist = false; break; }
        res.dual[i] = found;
    }
    res.row_one_is_unit = true;
    for (int j = 0; j < r; ++j)
        if (t.at(0, j) != Cyclotomic(Rational(1))) res.row_one_is_unit = false;
    return res;
}

/// Exact check of sum_j 1/c_j = 1.
inline bool verify_egyptian(const Eigentable& t) {
    Rational s(0);
    for (auto c : t.codegrees) s += Rational(1) / Rational(static_cast<long>(c));
    return s == 1;
}

/// The degree column dominates every entry in absolute value (checked with
/// certified embeddings at the given precision).
inline bool verify_degree_dominance(const Eigentable& t, mpfr_prec_t bits = 128) {
    for (int i = 0; i < t.rank; ++i) {
        double d = static_cast<double>(t.row_labels[i].degree);
        for (int j = 0; j < t.rank; ++j) {
            ComplexInterval iv = embed(t.at(i, j), bits);
            double m = std::max(std::abs(iv.re.lo()), std::abs(iv.re.hi()));
            double mi = std::max(std::abs(iv.im.lo()), std::abs(iv.im.hi()));
            if (m * m + mi * mi > d * d * (1 + 1e-12)) return false;
        }
    }
    return true;
}

}  // namespace fusionforge
