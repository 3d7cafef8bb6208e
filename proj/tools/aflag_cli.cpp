// Command-line front end: every computation in the library as a
// reproducible, machine-readable report. Output is deterministic and
// byte-identical across runs and thread counts.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "aflag/io.hpp"

using namespace aflag;

namespace {

constexpr std::int64_t kHardLengthCap = 64;

struct Options {
    std::string group = "SL2";
    std::string facets = "a0,0";
    std::string bound;
    std::string bound_word;
    std::string format;
    std::string v_expr;
    std::string w_expr;
    std::string mu;
    std::string partition;
    std::string omega;  // pi1 classes, ',' within a vector, ';' between vectors
    std::int64_t maxlen = 8;
    std::int64_t max_kl_len = 12;
    std::int64_t level_degree = 0;
    std::int64_t q = 0;
    bool verify = false;
    int threads = 1;
};

std::int64_t env_cap() {
    const char* v = std::getenv("AFL_MAX_LEN");
    if (!v) return 24;
    try {
        std::int64_t cap = std::stoll(v);
        return std::min(cap, kHardLengthCap);
    } catch (...) {
        throw ParseError("AFL_MAX_LEN is not an integer");
    }
}

int env_threads(int flag_value) {
    if (flag_value > 1) return flag_value;
    const char* v = std::getenv("AFL_THREADS");
    if (!v) return 1;
    try {
        return std::max(1, std::stoi(v));
    } catch (...) {
        throw ParseError("AFL_THREADS is not an integer");
    }
}

std::pair<Facet, Facet> parse_facet_pair(const FlagCells& fc, const std::string& s) {
    // "a0,0", "0,0", "J=0,J=0,1" -- split at commas that start a new facet name
    std::vector<std::string> parts;
    std::string cur;
    auto complete = [](const std::string& x) {
        return x == "a0" || x == "0" || x.rfind("J=", 0) == 0;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == ',' && parts.empty() && complete(cur) && i + 1 < s.size()) {
            char n = s[i + 1];
            bool starts_facet = (n == 'a') || (n == 'J') || (n == '0' && i + 2 == s.size());
            if (cur.rfind("J=", 0) == 0 && std::isdigit(static_cast<unsigned char>(n)) && n != '0')
                starts_facet = false;  // continuation of a J=... index list
            if (starts_facet) {
                parts.push_back(cur);
                cur.clear();
                continue;
            }
        }
        cur += s[i];
    }
    parts.push_back(cur);
    if (parts.size() != 2) throw ParseError("expected two facets as '<left>,<right>'");
    return {parse_facet(fc, parts[0]), parse_facet(fc, parts[1])};
}

std::vector<IWElement> parse_omega(const AffineWeylGroup& w, const std::string& s) {
    if (s.empty()) return {w.identity()};
    std::vector<IWElement> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ';')) {
        IntVec cls;
        std::stringstream inner(tok);
        std::string part;
        while (std::getline(inner, part, ',')) {
            try {
                cls.push_back(std::stoll(part));
            } catch (...) {
                throw ParseError("bad omega coordinate '" + part + "'");
            }
        }
        if (cls.size() != w.datum().pi1_factors.size())
            throw ParseError("omega class has wrong number of coordinates");
        out.push_back(w.omega_element(pi1_class(w.datum(), pi1_lift(w.datum(), cls))));
    }
    return out;
}

// ---- subcommands ------------------------------------------------------------

int run_group(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    json j = root_datum_to_json(rd);
    j["label"] = rd.label;
    if (rd.semisimple_rank() > 0) {
        AffineWeylGroup w(rd);
        json gens = json::array();
        for (int i = 0; i < w.simple_count(); ++i) {
            AffineRoot a = w.simple_affine_roots()[i];
            gens.push_back({{"index", i},
                            {"name", w.simple_reflection_name(i)},
                            {"root", w.affine_root_functional(a)},
                            {"level", a.level}});
        }
        j["simple_reflections"] = gens;
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_enumerate(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    auto omega = parse_omega(w, opt.omega);
    auto all = w.enumerate_by_length(opt.maxlen, omega, env_cap());
    bool tsv = opt.format == "tsv";
    if (tsv) std::cout << "element\tlen\tpi1\n";
    for (const IWElement& e : all) {
        if (opt.verify && w.length(e) != w.bfs_length(e))
            throw std::logic_error("verify: inversion length disagrees with word length");
        if (tsv) {
            std::cout << w.element_string(e) << "\t" << w.length(e) << "\t";
            IntVec cls = w.omega_class(e);
            for (std::size_t i = 0; i < cls.size(); ++i)
                std::cout << (i ? "," : "") << cls[i];
            std::cout << "\n";
        } else {
            json j = element_to_json(w, e);
            j["len"] = w.length(e);
            j["pi1"] = w.omega_class(e);
            std::cout << j.dump() << "\n";
        }
    }
    return 0;
}

IWElement resolve_bound(const FlagCells& fc, const Options& opt) {
    const AffineWeylGroup& w = fc.group();
    IWElement e = w.identity();
    if (!opt.bound.empty()) e = fc.element_for_label(parse_cocharacter(opt.bound, w.rank()));
    if (!opt.bound_word.empty()) {
        std::stringstream ss(opt.bound_word);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            int i = 0;
            try {
                i = std::stoi(tok);
            } catch (...) {
                throw ParseError("bad bound word entry '" + tok + "'");
            }
            if (i < 0 || i >= w.simple_count()) throw ParseError("bound word index out of range");
            e = w.multiply(e, w.simple_reflections()[i]);
        }
    }
    return e;
}

int run_cells(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    FlagCells fc(w);
    auto [left, right] = parse_facet_pair(fc, opt.facets);
    DoubleCoset bound = fc.double_coset_of(resolve_bound(fc, opt), left, right);
    CellTable t = fc.schubert_cells(bound, env_threads(opt.threads), env_cap());
    if (opt.verify) {
        for (const auto& row : t.rows)
            if (fc.cell_dimension_by_roots(row.min_rep, right) != row.dim)
                throw std::logic_error("verify: affine root count disagrees with cell dimension");
        auto elems = fc.double_coset_elements(bound);
        int at_min = 0;
        for (const auto& x : elems)
            if (w.length(x) == w.length(bound.min_rep)) ++at_min;
        if (at_min != 1) throw std::logic_error("verify: minimal representative not unique");
    }
    std::string format = opt.format.empty() ? "json" : opt.format;
    if (format == "tsv")
        std::cout << cell_table_to_tsv(fc, t);
    else if (format == "dot")
        std::cout << cell_table_to_dot(fc, t);
    else if (format == "json")
        std::cout << cell_table_to_json(fc, t).dump(2) << "\n";
    else
        throw ParseError("cells: unknown format '" + format + "'");
    return 0;
}

int run_motive(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    FlagCells fc(w);
    auto [left, right] = parse_facet_pair(fc, opt.facets);
    auto omega = parse_omega(w, opt.omega);
    MotiveClass m = truncated_flag_class(fc, left, right, opt.maxlen, omega, env_cap());
    if (opt.verify && left.type.empty()) {
        std::map<std::int64_t, std::int64_t> hist;
        std::set<IWElement> seen;
        for (const IWElement& e : w.enumerate_by_length(opt.maxlen, omega, env_cap())) {
            DoubleCoset c = fc.double_coset_of(e, left, right);
            if (seen.insert(c.min_rep).second && fc.coset_length(c) <= opt.maxlen)
                ++hist[fc.coset_length(c)];
        }
        for (auto [d, c] : m.poly.coeffs())
            if (hist[d] != c) throw std::logic_error("verify: histogram mismatch");
    }
    std::string format = opt.format.empty() ? "text" : opt.format;
    if (format == "text")
        std::cout << m.poly.str() << "\n";
    else if (format == "json")
        std::cout << motive_class_to_json(m).dump(2) << "\n";
    else
        throw ParseError("motive: unknown format '" + format + "'");
    if (opt.q >= 2)
        std::cout << "point_count(q=" << opt.q << ") = " << m.poly.evaluate(opt.q) << "\n";
    return 0;
}

int run_bruhat(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    IWElement v = parse_element(w, opt.v_expr);
    IWElement x = parse_element(w, opt.w_expr);
    bool leq = w.bruhat_leq(v, x);
    if (opt.verify && w.length(x) <= env_cap()) {
        auto interval = w.bruhat_interval_by_subwords(x);
        bool oracle = std::find(interval.begin(), interval.end(), v) != interval.end();
        if (oracle != leq) throw std::logic_error("verify: subword oracle disagrees");
    }
    json j;
    j["v"] = element_to_json(w, v);
    j["w"] = element_to_json(w, x);
    j["leq"] = leq;
    j["geq"] = w.bruhat_leq(x, v);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_kl(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    KLContext kl(w, std::min(opt.max_kl_len, kHardLengthCap), env_cap());
    IWElement big = parse_element(w, opt.w_expr);
    std::vector<IWElement> vs;
    if (!opt.v_expr.empty())
        vs.push_back(parse_element(w, opt.v_expr));
    else
        vs = kl.lower_cone(big);
    std::cout << "v\tw\tP\n";
    for (const IWElement& v : vs) {
        TatePoly p = kl.kl_polynomial(v, big);
        if (opt.verify && !kl.verify_inversion_identity(v, big))
            throw std::logic_error("verify: R-polynomial identity fails");
        std::cout << w.element_string(v) << "\t" << w.element_string(big) << "\t" << p.str("q")
                  << "\n";
    }
    return 0;
}

int run_ic(const Options& opt) {
    RootDatum rd = parse_group(opt.group);
    AffineWeylGroup w(rd);
    FlagCells fc(w);
    KLContext kl(w, std::min(opt.max_kl_len, kHardLengthCap), env_cap());
    auto [left, right] = parse_facet_pair(fc, opt.facets);
    DoubleCoset bound = fc.double_coset_of(resolve_bound(fc, opt), left, right);
    CellTable t = fc.schubert_cells(bound, env_threads(opt.threads), env_cap());
    ICClass c = ic_class(fc, kl, t);
    if (opt.verify) {
        // specializing every polynomial at L = 1 must reproduce the Schubert
        // class with each cell weighted by its stalk value at 1
        TatePoly spec;
        IWElement wmax = fc.double_coset_max(bound);
        for (const auto& row : t.rows) {
            std::int64_t stalk =
                kl.kl_polynomial(fc.coset_max(row.min_rep, right), wmax).sum_of_coefficients();
            if (stalk <= 0) throw std::logic_error("verify: empty stalk below the bound");
            spec.add(row.dim, stalk);
        }
        std::int64_t lhs = 0, rhs = 0;
        for (auto [d, cc] : spec.coeffs()) lhs += cc;
        for (auto [d, cc] : c.poly.coeffs()) rhs += cc;
        if (lhs != rhs) throw std::logic_error("verify: specialization mismatch");
    }
    json j = ic_class_to_json(fc, c);
    j["schubert_class"] = tate_poly_to_json(class_of_cell_table(t).poly);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_shtuka(const Options& opt, const std::optional<std::string>& input_file) {
    RootDatum rd;
    BoundTuple b;
    if (input_file) {
        std::ifstream in(*input_file);
        if (!in) throw ParseError("cannot open input file");
        json input;
        try {
            in >> input;
            rd = parse_group(input.at("group").get<std::string>());
            for (const auto& m : input.at("mu")) b.mu.push_back(m.get<Cocharacter>());
            if (input.contains("partition"))
                b.partition = input["partition"].get<std::vector<std::vector<int>>>();
            if (input.contains("level_degree"))
                b.level_degree = input["level_degree"].get<std::int64_t>();
        } catch (const json::exception& e) {
            throw ParseError(std::string("bad shtuka input: ") + e.what());
        }
    } else {
        rd = parse_group(opt.group);
        b.mu = parse_cocharacter_list(opt.mu, rd.rank);
        b.level_degree = opt.level_degree;
        if (!opt.partition.empty()) {
            std::stringstream ss(opt.partition);
            std::string tok;
            int next = 1;
            while (std::getline(ss, tok, ',')) {
                int len = 0;
                try {
                    len = std::stoi(tok);
                } catch (...) {
                    throw ParseError("bad partition block size '" + tok + "'");
                }
                std::vector<int> block;
                for (int i = 0; i < len; ++i) block.push_back(next++);
                b.partition.push_back(block);
            }
        }
    }
    if (b.partition.empty() && !b.mu.empty()) {
        std::vector<int> block(b.mu.size());
        for (std::size_t i = 0; i < block.size(); ++i) block[i] = static_cast<int>(i) + 1;
        b.partition = {block};
    }
    validate_bound_tuple(rd, b);

    json out;
    json part = json::array();
    for (const auto& block : b.partition) part.push_back(block);
    out["partition"] = part;
    out["level_degree"] = b.level_degree;
    out["mu"] = b.mu;

    bool adm = is_admissible(rd, b.mu);
    if (opt.verify) {
        // independent check: the total cocharacter lies in the coroot lattice
        IntVec total(rd.rank, 0);
        for (const auto& m : b.mu) total = add(total, m);
        IntMat a(rd.rank, rd.semisimple_rank());
        for (int j = 0; j < rd.semisimple_rank(); ++j)
            for (int i = 0; i < rd.rank; ++i) a(i, j) = rd.simple_coroots[j][i];
        auto sol = solve_exact(a, total);
        bool member = sol.has_value();
        if (member)
            for (const auto& c : *sol)
                if (!c.is_integer()) member = false;
        if (member != adm) throw std::logic_error("verify: admissibility disagrees");
    }
    out["admissible"] = adm;
    if (adm) {
        AffineWeylGroup w(rd);
        FlagCells fc(w);
        KLContext kl(w, std::min(opt.max_kl_len, kHardLengthCap), env_cap());
        out["dimension"] = bound_dimension(rd, b);
        MotiveClass lm = local_model_class(fc, b, env_threads(opt.threads), env_cap());
        out["local_model_class"] = tate_poly_to_json(lm.poly);
        ICClass ic = ic_box_class(fc, kl, b, env_threads(opt.threads), env_cap());
        out["ic_class"] = tate_poly_to_json(ic.poly);
        FusionPoset fp = fusion_poset(rd, b);
        json legs = json::array();
        for (const auto& leg : fp.leg_strata) legs.push_back(leg);
        out["fusion_strata"] = {{"legs", legs}, {"diagonal", fp.diagonal_strata}};
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact combinatorics of partial affine flag varieties"};
    app.require_subcommand(1);
    Options opt;
    std::optional<std::string> input_file;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--group", opt.group, "group label (SL2, PGL2, GL2, A2sc, C2ad, ...)");
        cmd->add_flag("--verify", opt.verify, "re-run the independent oracle and fail on mismatch");
        cmd->add_option("--threads", opt.threads, "worker threads (output is identical)");
    };

    CLI::App* cgroup = app.add_subcommand("group", "print the root datum");
    add_common(cgroup);

    CLI::App* cenum = app.add_subcommand("enumerate", "list elements by length");
    add_common(cenum);
    cenum->add_option("--maxlen", opt.maxlen, "length bound");
    cenum->add_option("--omega", opt.omega, "length-zero components as pi1 classes");
    cenum->add_option("--format", opt.format, "jsonl (default) or tsv");

    CLI::App* ccells = app.add_subcommand("cells", "Schubert cell table of a bound");
    add_common(ccells);
    ccells->add_option("--facets", opt.facets, "facet pair, e.g. a0,0 or 0,0 or J=0,J=1");
    ccells->add_option("--bound", opt.bound, "cocharacter label of the bound, e.g. 1,0");
    ccells->add_option("--bound-word", opt.bound_word, "generator word applied after the bound");
    ccells->add_option("--format", opt.format, "json (default), tsv or dot");

    CLI::App* cmotive = app.add_subcommand("motive", "truncated motive class of a partial flag");
    add_common(cmotive);
    cmotive->add_option("--facets", opt.facets, "facet pair");
    cmotive->add_option("--maxlen", opt.maxlen, "dimension bound");
    cmotive->add_option("--omega", opt.omega, "length-zero components as pi1 classes");
    cmotive->add_option("--format", opt.format, "text (default) or json");
    cmotive->add_option("--q", opt.q, "also print the point count at q");

    CLI::App* cbruhat = app.add_subcommand("bruhat", "compare two elements");
    add_common(cbruhat);
    cbruhat->add_option("--v", opt.v_expr, "element expression")->required();
    cbruhat->add_option("--w", opt.w_expr, "element expression")->required();

    CLI::App* ckl = app.add_subcommand("kl", "Kazhdan-Lusztig polynomials");
    add_common(ckl);
    ckl->add_option("--v", opt.v_expr, "lower element (default: all below w)");
    ckl->add_option("--w", opt.w_expr, "upper element")->required();
    ckl->add_option("--max-kl-len", opt.max_kl_len, "length cap for the recursion");

    CLI::App* cic = app.add_subcommand("ic", "intersection motive class of a Schubert bound");
    add_common(cic);
    cic->add_option("--facets", opt.facets, "facet pair");
    cic->add_option("--bound", opt.bound, "cocharacter label of the bound");
    cic->add_option("--bound-word", opt.bound_word, "generator word applied after the bound");
    cic->add_option("--max-kl-len", opt.max_kl_len, "length cap for the recursion");

    CLI::App* cshtuka = app.add_subcommand("shtuka", "bound combinatorics of iterated shtukas");
    add_common(cshtuka);
    cshtuka->add_option("--mu", opt.mu, "dominant cocharacters, e.g. 1,0;0,-1 (';' between legs)");
    cshtuka->add_option("--partition", opt.partition, "contiguous block sizes, e.g. 2,1");
    cshtuka->add_option("--level-degree", opt.level_degree, "degree of the level divisor");
    cshtuka->add_option("--max-kl-len", opt.max_kl_len, "length cap for the recursion");
    cshtuka->add_option("--input", input_file, "JSON input {group, partition, mu, level_degree}");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(cgroup)) return run_group(opt);
        if (app.got_subcommand(cenum)) return run_enumerate(opt);
        if (app.got_subcommand(ccells)) return run_cells(opt);
        if (app.got_subcommand(cmotive)) return run_motive(opt);
        if (app.got_subcommand(cbruhat)) return run_bruhat(opt);
        if (app.got_subcommand(ckl)) return run_kl(opt);
        if (app.got_subcommand(cic)) return run_ic(opt);
        if (app.got_subcommand(cshtuka)) return run_shtuka(opt, input_file);
    } catch (const ParseError& e) {
        std::cerr << "E_PARSE " << e.what() << "\n";
        return 2;
    } catch (const LimitError& e) {
        std::cerr << "E_LIMIT " << e.what() << "\n";
        return 4;
    } catch (const std::invalid_argument& e) {
        std::cerr << "E_DOMAIN " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "E_DOMAIN " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "E_INTERNAL " << e.what() << "\n";
        return 5;
    }
    return 1;
}
