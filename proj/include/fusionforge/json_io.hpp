#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "fusionforge/criteria.hpp"
#include "fusionforge/modsearch.hpp"

namespace fusionforge {

using nlohmann::json;

// Numeric values that can outgrow 64 bits travel as strings.

inline json cyclotomic_to_json(const Cyclotomic& x) {
    Cyclotomic c = x.canonicalized();
    json terms = json::array();
    for (const auto& [e, q] : c.terms()) {
        json t;
        t["order"] = c.order();
        t["exp"] = e;
        t["num"] = q.get_num().get_str();
        t["den"] = q.get_den().get_str();
        terms.push_back(t);
    }
    return terms;
}

inline Cyclotomic cyclotomic_from_json(const json& j) {
    if (j.is_string()) return Cyclotomic::parse(j.get<std::string>());
    if (!j.is_array()) throw std::invalid_argument("cyclotomic: expected array or E-string");
    Cyclotomic acc;
    for (const auto& t : j) {
        Integer num(t.at("num").get<std::string>());
        Integer den(t.at("den").get<std::string>());
        Rational coeff = make_rational(num, den);
        acc = acc + coeff * root_of_unity(t.at("order").get<std::uint64_t>(),
                                          t.at("exp").get<long long>());
    }
    return acc;
}

inline json table_to_json(const Eigentable& t) {
    json j;
    j["family"] = t.family;
    j["q"] = t.q;
    j["rank"] = t.rank;
    json labels = json::array();
    for (const auto& l : t.row_labels)
        labels.push_back({{"degree", std::to_string(l.degree)},
                          {"charparam", l.charparam},
                          {"family", family_name(l.family)}});
    j["row_labels"] = labels;
    json sizes = json::array(), cods = json::array();
    for (auto s : t.class_sizes) sizes.push_back(std::to_string(s));
    for (auto c : t.codegrees) cods.push_back(std::to_string(c));
    j["class_sizes"] = sizes;
    j["codegrees"] = cods;
    j["fpdim_total"] = std::to_string(t.fpdim_total);
    json rows = json::array();
    for (int i = 0; i < t.rank; ++i) {
        json row = json::array();
        for (int s = 0; s < t.rank; ++s) row.push_back(cyclotomic_to_json(t.at(i, s)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

inline Family family_from_name(const std::string& s) {
    if (s == "unit") return Family::Unit;
    if (s == "half") return Family::Half;
    if (s == "qminus") return Family::QMinus;
    if (s == "q") return Family::Q;
    if (s == "qplus") return Family::QPlus;
    if (s == "point") return Family::Point;
    if (s == "big") return Family::Big;
    throw std::invalid_argument("unknown family tag: " + s);
}

inline Eigentable table_from_json(const json& j) {
    Eigentable t;
    t.family = j.value("family", "");
    t.q = j.value("q", 0);
    t.rank = j.at("rank").get<int>();
    for (const auto& l : j.at("row_labels")) {
        RowLabel lab;
        lab.degree = std::stoll(l.at("degree").get<std::string>());
        lab.charparam = l.at("charparam").get<std::int64_t>();
        lab.family = family_from_name(l.at("family").get<std::string>());
        t.row_labels.push_back(lab);
    }
    for (const auto& s : j.at("class_sizes"))
        t.class_sizes.push_back(std::stoll(s.get<std::string>()));
    t.fpdim_total = std::stoll(j.at("fpdim_total").get<std::string>());
    if (static_cast<int>(t.row_labels.size()) != t.rank ||
        static_cast<int>(t.class_sizes.size()) != t.rank)
        throw std::invalid_argument("table: field lengths disagree with rank");
    const auto& rows = j.at("entries");
    t.entries.reserve(static_cast<std::size_t>(t.rank) * t.rank);
    for (int i = 0; i < t.rank; ++i)
        for (int s = 0; s < t.rank; ++s)
            t.entries.push_back(cyclotomic_from_json(rows.at(i).at(s)).canonicalized());
    for (int j2 = 0; j2 < t.rank; ++j2)
        t.columns.push_back({Family::Unit, j2, t.class_sizes[j2]});
    t.finalize();  // recompute codegrees and check them against the class sizes
    return t;
}

inline json ring_to_json(const FusionRing& R) {
    json j;
    j["version"] = 1;
    j["family"] = R.family;
    j["q"] = R.q;
    j["rank"] = R.rank;
    json labels = json::array();
    for (const auto& l : R.labels)
        labels.push_back({{"degree", std::to_string(l.degree)},
                          {"charparam", l.charparam},
                          {"family", family_name(l.family)}});
    j["labels"] = labels;
    j["dual"] = R.dual;
    json N = json::array();
    for (int i = 0; i < R.rank; ++i) {
        json plane = json::array();
        for (int jj = 0; jj < R.rank; ++jj) {
            json row = json::array();
            for (int k = 0; k < R.rank; ++k) row.push_back(R.N(i, jj, k));
            plane.push_back(row);
        }
        N.push_back(plane);
    }
    j["N"] = N;
    return j;
}

inline FusionRing ring_from_json(const json& j) {
    FusionRing R = FusionRing::zeros(j.at("rank").get<int>());
    R.family = j.value("family", "");
    R.q = j.value("q", 0);
    if (j.contains("labels")) {
        R.labels.clear();
        for (const auto& l : j.at("labels")) {
            RowLabel lab;
            lab.degree = std::stoll(l.at("degree").get<std::string>());
            lab.charparam = l.at("charparam").get<std::int64_t>();
            lab.family = family_from_name(l.at("family").get<std::string>());
            R.labels.push_back(lab);
        }
        if (static_cast<int>(R.labels.size()) != R.rank)
            throw std::invalid_argument("ring: labels length != rank");
    }
    R.dual = j.at("dual").get<std::vector<int>>();
    if (static_cast<int>(R.dual.size()) != R.rank)
        throw std::invalid_argument("ring: dual length != rank");
    const auto& N = j.at("N");
    for (int i = 0; i < R.rank; ++i)
        for (int jj = 0; jj < R.rank; ++jj)
            for (int k = 0; k < R.rank; ++k) {
                std::int64_t v = N.at(i).at(jj).at(k).get<std::int64_t>();
                if (v < 0) throw std::invalid_argument("ring: negative structure constant");
                R.N(i, jj, k) = v;
            }
    return R;
}

inline json report_to_json(const CriterionReport& r) {
    json j;
    j["criterion"] = criterion_name(r.criterion);
    j["verdict"] = verdict_name(r.verdict);
    j["method"] = method_name(r.method);
    if (!r.witness.empty()) j["witness"] = r.witness;
    if (!r.detail.empty()) j["detail"] = r.detail;
    return j;
}

inline json certificate_to_json(const SearchCertificate& c,
                                const std::vector<ModularTypeCandidate>& survivors) {
    json j;
    j["max_rank"] = c.max_rank;
    j["c_range"] = {c.c_from, c.c_to};
    j["nodes"] = c.nodes;
    j["solutions"] = c.solutions;
    j["filter_counts"] = {{"nonpointed", c.nonpointed},
                          {"unique_max", c.pass_unique_max},
                          {"divisibility", c.pass_divisibility},
                          {"non_prime_power", c.pass_npp}};
    j["flags"] = {{"npp_filter", c.flags.npp_filter},
                  {"unique_unit_filter", c.flags.unique_unit_filter}};
    j["completed"] = c.completed;
    json surv = json::array();
    for (const auto& s : survivors) {
        json e;
        e["c"] = s.c;
        e["s"] = s.s;
        e["dims"] = s.dims;
        e["global_dim"] = s.global_dim.get_str();
        e["note"] = "not excluded by these numerical constraints";
        surv.push_back(e);
    }
    j["survivors"] = surv;
    return j;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
}

/// FNV-1a 64-bit content hash; guards the committed golden fixtures against
/// silent edits.
inline std::uint64_t fnv1a64(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace fusionforge
