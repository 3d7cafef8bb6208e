#pragma once

#include <cctype>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "aflag/shtuka.hpp"

namespace aflag {

using nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---- group specifications ----------------------------------------------------

/// Accepts "SL3", "PGL2", "GL2", "A2sc", "C2ad", ... and products joined
/// with 'x' ("SL2xSL2").
inline RootDatum parse_group(const std::string& spec) {
    auto parse_atom = [](const std::string& s) -> RootDatum {
        auto starts = [&](const char* p) { return s.rfind(p, 0) == 0; };
        if (starts("SL") || starts("PGL") || starts("GL")) {
            std::size_t digits = starts("PGL") ? 3 : 2;
            int n = 0;
            try {
                n = std::stoi(s.substr(digits));
            } catch (...) {
                throw ParseError("bad group rank in '" + s + "'");
            }
            if (starts("GL")) return build_root_datum(GroupType::GL, n, Isogeny::GeneralLinear);
            if (n < 2) throw ParseError("SL/PGL need rank >= 2");
            Isogeny iso = starts("SL") ? Isogeny::SimplyConnected : Isogeny::Adjoint;
            return build_root_datum(GroupType::A, n - 1, iso);
        }
        if (s.size() >= 3) {
            char t = s[0];
            std::string iso = s.substr(s.size() - 2);
            GroupType type;
            switch (t) {
                case 'A': type = GroupType::A; break;
                case 'B': type = GroupType::B; break;
                case 'C': type = GroupType::C; break;
                case 'D': type = GroupType::D; break;
                case 'E': type = GroupType::E; break;
                case 'F': type = GroupType::F; break;
                case 'G': type = GroupType::G; break;
                default: throw ParseError("unknown group type in '" + s + "'");
            }
            int n = 0;
            try {
                n = std::stoi(s.substr(1, s.size() - 3));
            } catch (...) {
                throw ParseError("bad group rank in '" + s + "'");
            }
            if (iso == "sc") return build_root_datum(type, n, Isogeny::SimplyConnected);
            if (iso == "ad") return build_root_datum(type, n, Isogeny::Adjoint);
            throw ParseError("unknown isogeny in '" + s + "' (use sc or ad)");
        }
        throw ParseError("cannot parse group '" + s + "'");
    };

    std::vector<std::string> parts;
    std::string cur;
    for (char c : spec) {
        if (c == 'x') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    RootDatum rd = parse_atom(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) rd = direct_sum(rd, parse_atom(parts[i]));
    return rd;
}

inline json root_datum_to_json(const RootDatum& rd) {
    json j;
    j["type"] = std::string(1, group_type_letter(rd.type));
    j["rank"] = rd.rank;
    j["isogeny"] = isogeny_name(rd.isogeny);
    j["simple_roots"] = rd.simple_roots;
    j["simple_coroots"] = rd.simple_coroots;
    json pos = json::array();
    for (const auto& r : rd.positive_roots) pos.push_back(r.root);
    j["positive_roots"] = pos;
    j["two_rho"] = rd.two_rho;
    j["pi1_invariant_factors"] = rd.pi1_factors;
    return j;
}

// ---- cocharacters and elements -----------------------------------------------

inline Cocharacter parse_cocharacter(const std::string& s, int rank) {
    Cocharacter mu;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok == "w") {
            // fundamental coweight shorthand for rank-1 lattices
            if (rank != 1) throw ParseError("'w' cocharacter shorthand needs rank 1");
            mu.push_back(1);
            continue;
        }
        try {
            mu.push_back(std::stoll(tok));
        } catch (...) {
            throw ParseError("bad cocharacter entry '" + tok + "'");
        }
    }
    if (static_cast<int>(mu.size()) != rank)
        throw ParseError("cocharacter has " + std::to_string(mu.size()) + " entries, expected " +
                         std::to_string(rank));
    return mu;
}

/// Lists of cocharacters: entries split on ';', vector components on ','.
/// For rank-1 groups a bare comma-separated list is a list of entries, so
/// the literal "w,w,w" works.
inline std::vector<Cocharacter> parse_cocharacter_list(const std::string& s, int rank) {
    std::vector<std::string> entries;
    if (s.find(';') == std::string::npos && rank == 1) {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) entries.push_back(tok);
    } else {
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ';')) entries.push_back(tok);
    }
    std::vector<Cocharacter> out;
    for (const auto& e : entries)
        if (!e.empty()) out.push_back(parse_cocharacter(e, rank));
    return out;
}

inline json element_to_json(const AffineWeylGroup& w, const IWElement& e) {
    json j;
    j["t"] = e.t;
    std::string word;
    for (int i : w.finite_word(e.w)) {
        if (!word.empty()) word += " ";
        word += "s" + std::to_string(i + 1);
    }
    j["w"] = word.empty() ? "e" : word;
    return j;
}

/// Element grammar: products of "e", "t[1,0]", finite reflections "s<i>"
/// (1-based) and affine generators "r<j>" (0-based index into S), joined
/// with '*'.
inline IWElement parse_element(const AffineWeylGroup& w, const std::string& s) {
    IWElement acc = w.identity();
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '*')) {
        if (tok.empty() || tok == "e") continue;
        if (tok[0] == 't') {
            if (tok.size() < 3 || tok[1] != '[' || tok.back() != ']')
                throw ParseError("bad translation term '" + tok + "'");
            Cocharacter mu = parse_cocharacter(tok.substr(2, tok.size() - 3), w.rank());
            acc = w.multiply(acc, w.translation(mu));
        } else if (tok[0] == 's') {
            int i = 0;
            try {
                i = std::stoi(tok.substr(1));
            } catch (...) {
                throw ParseError("bad reflection term '" + tok + "'");
            }
            if (i < 1 || i > w.datum().semisimple_rank())
                throw ParseError("finite reflection index out of range in '" + tok + "'");
            acc = w.multiply(acc, w.finite_reflection(i - 1));
        } else if (tok[0] == 'r') {
            int i = 0;
            try {
                i = std::stoi(tok.substr(1));
            } catch (...) {
                throw ParseError("bad generator term '" + tok + "'");
            }
            if (i < 0 || i >= w.simple_count())
                throw ParseError("generator index out of range in '" + tok + "'");
            acc = w.multiply(acc, w.simple_reflections()[i]);
        } else {
            throw ParseError("bad element term '" + tok + "'");
        }
    }
    return acc;
}

// ---- facets --------------------------------------------------------------------

/// "a0" is the alcove (empty type), "0" the base point (all finite simple
/// reflections), "J=0,2" an explicit type by indices into S.
inline Facet parse_facet(const FlagCells& fc, const std::string& s) {
    if (s == "a0") return fc.alcove_facet();
    if (s == "0") return fc.base_point_facet();
    if (s.rfind("J=", 0) == 0) {
        std::vector<int> type;
        std::stringstream ss(s.substr(2));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                type.push_back(std::stoi(tok));
            } catch (...) {
                throw ParseError("bad facet index '" + tok + "'");
            }
        }
        return fc.facet_from_type(type);
    }
    throw ParseError("cannot parse facet '" + s + "' (use a0, 0, or J=i,j,...)");
}

// ---- polynomials, tables -------------------------------------------------------

inline json tate_poly_to_json(const TatePoly& p) {
    json coeffs = json::object();
    for (auto [d, c] : p.coeffs()) coeffs[std::to_string(d)] = c;
    return json{{"coeffs", coeffs}};
}

inline json motive_class_to_json(const MotiveClass& m) {
    json j = tate_poly_to_json(m.poly);
    j["provenance"] = m.provenance;
    return j;
}

inline json cell_table_to_json(const FlagCells& fc, const CellTable& t) {
    const AffineWeylGroup& w = fc.group();
    json j;
    j["facets"] = {{"left", t.bound.left.name}, {"right", t.bound.right.name}};
    j["bound"] = element_to_json(w, t.bound.min_rep);
    json rows = json::array();
    for (const auto& r : t.rows) {
        json row;
        row["rep"] = element_to_json(w, r.min_rep);
        row["dim"] = r.dim;
        if (r.label) row["label"] = *r.label;
        rows.push_back(row);
    }
    j["rows"] = rows;
    json covers = json::array();
    for (auto [a, b] : t.covers) covers.push_back(json::array({a, b}));
    j["covers"] = covers;
    return j;
}

inline std::string cell_table_to_tsv(const FlagCells& fc, const CellTable& t) {
    const AffineWeylGroup& w = fc.group();
    std::string out = "rep\tdim";
    bool labeled = !t.rows.empty() && t.rows.front().label.has_value();
    if (labeled) out += "\tlabel";
    out += "\n";
    for (const auto& r : t.rows) {
        out += w.element_string(r.min_rep) + "\t" + std::to_string(r.dim);
        if (labeled && r.label) {
            out += "\t";
            for (std::size_t i = 0; i < r.label->size(); ++i) {
                if (i) out += ",";
                out += std::to_string((*r.label)[i]);
            }
        }
        out += "\n";
    }
    return out;
}

inline std::string cell_table_to_dot(const FlagCells& fc, const CellTable& t) {
    const AffineWeylGroup& w = fc.group();
    std::string out = "digraph cells {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        out += "  n" + std::to_string(i) + " [label=\"" + w.element_string(t.rows[i].min_rep) +
               " / " + std::to_string(t.rows[i].dim) + "\"];\n";
    for (auto [a, b] : t.covers)
        out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    out += "}\n";
    return out;
}

inline json ic_class_to_json(const FlagCells& fc, const ICClass& c) {
    json j = tate_poly_to_json(c.poly);
    j["bound"] = element_to_json(fc.group(), c.bound.min_rep);
    j["convention"] = c.convention;
    j["twist"] = c.twist;
    return j;
}

}  // namespace aflag
