#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "affq/characters.hpp"
#include "affq/qalgebra.hpp"

namespace affq {

using json = nlohmann::json; // object keys serialize sorted

inline CartanDatum datum_from_json(const nlohmann::json& j) {
    CartanDatum d;
    try {
        d.labels = j.at("labels").get<std::vector<std::string>>();
        auto dot = j.at("dot");
        for (const auto& row : dot) d.dot.push_back(row.get<Vec>());
        std::string i0 = j.at("i0").get<std::string>();
        d.i0 = d.labels.size();
        for (std::size_t i = 0; i < d.labels.size(); ++i)
            if (d.labels[i] == i0) d.i0 = i;
        if (d.i0 == d.labels.size())
            throw validation_error("datum: i0 label not found: " + i0);
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("datum: malformed JSON: ") + e.what());
    }
    d.validate();
    return d;
}

inline CartanDatum datum_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("datum: cannot open file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error(std::string("datum: parse failure: ") + e.what());
    }
    return datum_from_json(j);
}

inline const char* preset_datum_json(const std::string& name) {
    if (name == "A1~")
        return R"({"labels":["0","1"],"dot":[[2,-2],[-2,2]],"i0":"0"})";
    if (name == "A2~")
        return R"({"labels":["0","1","2"],"dot":[[2,-1,-1],[-1,2,-1],[-1,-1,2]],"i0":"0"})";
    if (name == "C2~")
        return R"({"labels":["0","1","2"],"dot":[[2,-2,0],[-2,4,-2],[0,-2,2]],"i0":"0"})";
    throw validation_error("unknown preset type: " + name +
                           " (expected A1~, A2~ or C2~)");
}

inline CartanDatum preset_datum(const std::string& name) {
    return datum_from_json(nlohmann::json::parse(preset_datum_json(name)));
}

inline json root_to_json(const RootDatum& rd, const AffineRoot& r) {
    json fin = json::object();
    for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
        if (r.finite.size() > a && r.finite[a] != 0)
            fin[rd.datum.labels[rd.finite_nodes[a]]] = r.finite[a];
    return json{{"finite", fin}, {"m", r.m}};
}

inline json index_to_json(const RootDatum& rd, const ExtendedRootIndex& idx) {
    if (idx.imaginary)
        return json{{"imag", json::array({idx.m, rd.datum.labels[rd.finite_nodes[idx.node]]})}};
    return json{{"real", idx.k}};
}

inline json weight_to_json(const RootDatum& rd, const ExtendedWeight& w) {
    json out = json::object();
    for (std::size_t i = 0; i < rd.size(); ++i)
        out[rd.datum.labels[i]] = w.pairings[i];
    return out;
}

inline json offset_to_json(const RootDatum& rd, const Vec& off) {
    json out = json::object();
    for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
        out[rd.datum.labels[rd.finite_nodes[a]]] = off[a];
    return out;
}

inline json character_to_json(const RootDatum& rd, const FormalCharacter& ch) {
    json entries = json::array();
    for (const auto& [key, coeff] : ch.table)
        entries.push_back(json{{"offset", offset_to_json(rd, key.offset)},
                               {"t", key.t},
                               {"coeff", coeff}});
    return json{{"base", weight_to_json(rd, ch.base)},
                {"depth", ch.depth},
                {"certificate", ch.certificate},
                {"entries", entries}};
}

inline std::string word_to_string(const RootDatum& rd,
                                  const std::vector<std::size_t>& word) {
    std::string s;
    for (std::size_t t = 0; t < word.size(); ++t) {
        if (t) s += ",";
        s += rd.datum.labels[word[t]];
    }
    return s;
}

inline json tor_table_to_json(const RootDatum& rd, const Characters::TorTable& t) {
    json entries = json::array();
    for (const auto& e : t.entries)
        entries.push_back(json{{"n", e.n},
                               {"word", word_to_string(rd, e.word)},
                               {"weight", weight_to_json(rd, e.weight)}});
    return json{{"tag", t.tag},
                {"window", json::array({t.n_min, t.n_max})},
                {"certificate", t.certificate},
                {"entries", entries}};
}

inline json multidegree_to_json(const RootDatum& rd, const MultiDegree& d) {
    return json{{"weight", offset_to_json(rd, d.weight)}, {"energy", d.energy}};
}

inline json koszul_report_to_json(const RootDatum& rd, const KoszulReport& rep) {
    json specs = json::array();
    for (const auto& [p, v] : rep.specializations) specs.push_back(json::array({p, v}));
    json table = json::array();
    for (const auto& [tau, ranks] : rep.homology)
        table.push_back(json{{"multidegree", multidegree_to_json(rd, tau)},
                             {"ranks", ranks}});
    return json{{"energy_cap", rep.energy_cap},
                {"seed", rep.seed},
                {"specializations", specs},
                {"stable", rep.stable},
                {"table", table}};
}

// Parse "lo:hi" into a pair of integers.
inline std::pair<Int, Int> parse_window(const std::string& s) {
    auto pos = s.find(':');
    if (pos == std::string::npos)
        throw validation_error("window: expected \"lo:hi\", got: " + s);
    try {
        Int lo = std::stoll(s.substr(0, pos));
        Int hi = std::stoll(s.substr(pos + 1));
        if (lo > hi) throw validation_error("window: lo > hi in: " + s);
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw validation_error("window: non-integer bound in: " + s);
    } catch (const std::out_of_range&) {
        throw validation_error("window: bound out of range in: " + s);
    }
}

// Parse "lo:hi,imcap" into a ConvexWindow.
inline ConvexWindow parse_convex_window(const std::string& s) {
    auto comma = s.find(',');
    std::string range = comma == std::string::npos ? s : s.substr(0, comma);
    auto [lo, hi] = parse_window(range);
    Int imcap = 0;
    if (comma != std::string::npos) {
        try {
            imcap = std::stoll(s.substr(comma + 1));
        } catch (const std::exception&) {
            throw validation_error("window: bad imaginary cap in: " + s);
        }
    }
    if (imcap < 0) throw validation_error("window: negative imaginary cap");
    return ConvexWindow{lo, hi, imcap};
}

inline Vec parse_int_list(const std::string& s, std::size_t expected,
                          const std::string& what) {
    Vec out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            out.push_back(std::stoll(tok));
        } catch (const std::exception&) {
            throw validation_error(what + ": non-integer entry: " + tok);
        }
    }
    if (out.size() != expected)
        throw validation_error(what + ": expected " + std::to_string(expected) +
                               " entries, got " + std::to_string(out.size()));
    return out;
}

} // namespace affq
