#pragma once

#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "affq/io.hpp"

namespace affq::cli {

struct Session {
    std::string datum_file;
    std::string preset;
    std::string x_spec;
    std::string format = "json";
    std::uint64_t seed = 0;
    int workers = 1;

    CartanDatum datum() const {
        if (!datum_file.empty()) return datum_from_file(datum_file);
        if (!preset.empty()) return preset_datum(preset);
        throw validation_error("no datum: pass --datum FILE or --type A1~|A2~|C2~");
    }
};

inline void add_session_flags(CLI::App* cmd, Session& s) {
    cmd->add_option("--datum", s.datum_file, "Cartan datum JSON file");
    cmd->add_option("--type", s.preset, "bundled preset: A1~, A2~ or C2~");
    cmd->add_option("--x", s.x_spec,
                    "translation coefficients over the finite nodes (default all 1)");
    cmd->add_option("--format", s.format, "output format: json or tsv");
    cmd->add_option("--seed", s.seed, "RNG seed for modular specializations");
    cmd->add_option("--workers", s.workers,
                    "max worker count; results are independent of it");
}

inline TranslationVector session_x(const Session& s, const RootDatum& rd) {
    std::size_t nf = rd.finite_nodes.size();
    if (s.x_spec.empty()) return TranslationVector{Vec(nf, 1)};
    return TranslationVector{parse_int_list(s.x_spec, nf, "--x")};
}

inline std::vector<std::size_t> parse_word(const std::string& s, const CartanDatum& d) {
    std::vector<std::size_t> word;
    if (s.empty()) return word;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) word.push_back(d.index_of(tok));
    return word;
}

// Monomial string: comma list of "k", "k^e", "im:m:label" or "im:m:label^e".
inline PBWMonomial parse_monomial(const std::string& s, const RootDatum& rd) {
    std::map<std::tuple<int, Int, Int>, std::pair<ExtendedRootIndex, Int>> acc;
    if (s.empty() || s == "1") return PBWMonomial{};
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        Int exp = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            exp = std::stoll(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        if (exp < 1) throw validation_error("monomial: exponent must be >= 1");
        ExtendedRootIndex idx;
        if (tok.rfind("im:", 0) == 0) {
            auto rest = tok.substr(3);
            auto colon = rest.find(':');
            if (colon == std::string::npos)
                throw validation_error("monomial: expected im:m:label, got: " + tok);
            Int m = std::stoll(rest.substr(0, colon));
            std::size_t node_full = rd.datum.index_of(rest.substr(colon + 1));
            std::size_t node = rd.finite_nodes.size();
            for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
                if (rd.finite_nodes[a] == node_full) node = a;
            if (node == rd.finite_nodes.size())
                throw validation_error("monomial: imaginary node must be finite");
            if (m < 1) throw validation_error("monomial: imaginary m must be >= 1");
            idx = ExtendedRootIndex::imag(m, node);
        } else {
            idx = ExtendedRootIndex::real(std::stoll(tok));
        }
        auto& slot = acc[idx.key()];
        slot.first = idx;
        slot.second += exp;
    }
    PBWMonomial m;
    for (const auto& [k, ie] : acc) {
        (void)k;
        m.factors.push_back(ie);
    }
    return m;
}

inline void emit(const Session& s, const json& j, std::ostream& out,
                 const std::vector<std::vector<std::string>>& tsv_rows = {}) {
    if (s.format == "tsv" && !tsv_rows.empty()) {
        for (const auto& row : tsv_rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "\t" : "") << row[i];
            out << "\n";
        }
        return;
    }
    if (s.format != "json" && s.format != "tsv")
        throw validation_error("unknown format: " + s.format);
    out << j.dump(2) << "\n";
}

inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
    CLI::App app{"exact affine Weyl / convex-order / q-algebra calculator"};
    app.require_subcommand(1);

    Session ses;
    std::string word, uword, wword, twistword, lambda_spec, window_spec, mono_a, mono_b;
    std::string weight_spec;
    Int m = 1, depth = 4, cap = 6, certify_depth = 2, energy = 0, m_range = 16;
    Int stab_window = 4;
    bool flip = false;

    auto* datum_cmd = app.add_subcommand("datum", "datum inspection");
    auto* datum_validate = datum_cmd->add_subcommand("validate", "validate and classify");
    add_session_flags(datum_validate, ses);
    datum_validate->add_option("file", ses.datum_file, "datum JSON file");
    auto* datum_describe = datum_cmd->add_subcommand("describe", "derived constants");
    add_session_flags(datum_describe, ses);
    datum_describe->add_option("file", ses.datum_file, "datum JSON file");

    auto* weyl_cmd = app.add_subcommand("weyl", "Weyl group arithmetic");
    auto* weyl_length = weyl_cmd->add_subcommand("length", "length of a word's product");
    add_session_flags(weyl_length, ses);
    weyl_length->add_option("--word", word, "comma list of labels")->required();
    auto* weyl_word = weyl_cmd->add_subcommand("word", "canonical reduced word");
    add_session_flags(weyl_word, ses);
    weyl_word->add_option("--word", word, "comma list of labels")->required();
    auto* weyl_bruhat = weyl_cmd->add_subcommand("bruhat", "Bruhat order test u <= w");
    add_session_flags(weyl_bruhat, ses);
    weyl_bruhat->add_option("--u", uword, "word of u")->required();
    weyl_bruhat->add_option("--w", wword, "word of w")->required();
    auto* weyl_nf = weyl_cmd->add_subcommand("normal-form", "w = theta_z wbar");
    add_session_flags(weyl_nf, ses);
    weyl_nf->add_option("--word", word, "comma list of labels")->required();

    auto* roots_cmd = app.add_subcommand("roots", "root combinatorics and lengths");
    auto* r_semiinf = roots_cmd->add_subcommand("semiinf-length", "semi-infinite length");
    add_session_flags(r_semiinf, ses);
    r_semiinf->add_option("--word", word, "comma list of labels")->required();
    auto* r_twist = roots_cmd->add_subcommand("twisted-length", "l^twist(u)");
    add_session_flags(r_twist, ses);
    r_twist->add_option("--twist", twistword, "word of the twisting element")->required();
    r_twist->add_option("--word", word, "word of u")->required();
    auto* r_stab = roots_cmd->add_subcommand("stabilize", "twisted-length stabilization");
    add_session_flags(r_stab, ses);
    r_stab->add_option("--word", word, "word of w")->required();
    r_stab->add_option("--window", stab_window, "constant-run length to accept");
    r_stab->add_option("--m-range", m_range, "m budget");
    auto* r_sbruhat = roots_cmd->add_subcommand("semiinf-bruhat",
                                                "semi-infinite Bruhat semi-decision");
    add_session_flags(r_sbruhat, ses);
    r_sbruhat->add_option("--u", uword, "word of u")->required();
    r_sbruhat->add_option("--w", wword, "word of w")->required();
    r_sbruhat->add_option("--depth", certify_depth, "certification grid depth");

    auto* convex_cmd = app.add_subcommand("convex", "Beck convex order");
    auto* c_window = convex_cmd->add_subcommand("window", "theta_{mx} window sets");
    add_session_flags(c_window, ses);
    c_window->add_option("--m", m, "window multiple");
    auto* c_check = convex_cmd->add_subcommand("check", "convexity violations");
    add_session_flags(c_check, ses);
    c_check->add_option("--window", window_spec, "\"lo:hi,imcap\"")->required();

    auto* pbw_cmd = app.add_subcommand("pbw", "graded PBW algebra");
    auto* p_dim = pbw_cmd->add_subcommand("dim", "graded dimension");
    add_session_flags(p_dim, ses);
    p_dim->add_option("--window", window_spec, "\"lo:hi,imcap\"")->required();
    p_dim->add_option("--weight", weight_spec, "finite weight coefficients")->required();
    p_dim->add_option("--energy", energy, "energy component")->required();
    p_dim->add_flag("--semiinf", flip, "semi-infinite two-sided span");
    auto* p_str = pbw_cmd->add_subcommand("straighten", "product of two monomials");
    add_session_flags(p_str, ses);
    p_str->add_option("--a", mono_a, "left monomial")->required();
    p_str->add_option("--b", mono_b, "right monomial")->required();

    auto* koszul_cmd = app.add_subcommand("koszul", "Koszul complex homology");
    auto* k_check = koszul_cmd->add_subcommand("check", "K_* = A (x) (A^!)^* ranks");
    add_session_flags(k_check, ses);
    k_check->add_option("--m", m, "window multiple");
    k_check->add_option("--cap", cap, "energy cap");
    k_check->add_flag("--flip", flip, "flip differential orientation");
    auto* k_dual = koszul_cmd->add_subcommand("tor-dual", "K (x)_A A^* ranks");
    add_session_flags(k_dual, ses);
    k_dual->add_option("--m", m, "window multiple");
    k_dual->add_option("--cap", cap, "energy cap");

    auto* char_cmd = app.add_subcommand("char", "formal characters");
    auto* ch_verma = char_cmd->add_subcommand("verma", "truncated Verma character");
    add_session_flags(ch_verma, ses);
    ch_verma->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    ch_verma->add_option("--depth", depth, "energy truncation depth");
    auto* ch_bgg = char_cmd->add_subcommand("bgg", "BGG Euler characteristic");
    add_session_flags(ch_bgg, ses);
    ch_bgg->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    ch_bgg->add_option("--depth", depth, "energy truncation depth");
    auto* ch_tbgg = char_cmd->add_subcommand("twisted-bgg", "twisted Euler characteristic");
    add_session_flags(ch_tbgg, ses);
    ch_tbgg->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    ch_tbgg->add_option("--m", m, "twist multiple");
    ch_tbgg->add_option("--depth", depth, "energy truncation depth");

    auto* tor_cmd = app.add_subcommand("tor", "semi-infinite Tor tables");
    auto* t_table = tor_cmd->add_subcommand("table", "finite-m table");
    add_session_flags(t_table, ses);
    t_table->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    t_table->add_option("--m", m, "twist multiple");
    t_table->add_option("--window", window_spec, "\"lo:hi\"")->required();
    auto* t_limit = tor_cmd->add_subcommand("limit", "stabilized limit table");
    add_session_flags(t_limit, ses);
    t_limit->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    t_limit->add_option("--window", window_spec, "\"lo:hi\"")->required();
    auto* t_stab = tor_cmd->add_subcommand("stabilization", "per-element m0 report");
    add_session_flags(t_stab, ses);
    t_stab->add_option("--lambda", lambda_spec, "pairings in label order")->required();
    t_stab->add_option("--window", window_spec, "\"lo:hi\"")->required();
    t_stab->add_option("--m-range", m_range, "m budget");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "argument error: " << e.what() << "\n";
        return 1;
    }

    try {
        CartanDatum datum = ses.datum();
        RootDatum rd = make_root_datum(datum);
        Weyl weyl(rd);
        auto lambda = [&]() {
            return ExtendedWeight{parse_int_list(lambda_spec, rd.size(), "--lambda")};
        };
        auto order = [&]() {
            return std::make_unique<ConvexOrder>(weyl, session_x(ses, rd));
        };

        if (datum_validate->parsed()) {
            emit(ses, json{{"classification", to_string(classify(datum))},
                           {"labels", datum.labels},
                           {"i0", datum.labels[datum.i0]},
                           {"valid", true}},
                 out);
            return 0;
        }
        if (datum_describe->parsed()) {
            json marks = json::object(), comarks = json::object(), dhat = json::object();
            for (std::size_t i = 0; i < rd.size(); ++i) {
                marks[datum.labels[i]] = rd.marks[i];
                comarks[datum.labels[i]] = rd.comarks[i];
                dhat[datum.labels[i]] = rd.dhat[i];
            }
            emit(ses, json{{"classification", to_string(classify(datum))},
                           {"marks", marks},
                           {"comarks", comarks},
                           {"dhat", dhat},
                           {"D", rd.D},
                           {"dual_coxeter_comark_sum", rd.dual_coxeter_comark_sum},
                           {"dual_coxeter_conventional", rd.dual_coxeter_conventional}},
                 out);
            return 0;
        }
        if (weyl_length->parsed()) {
            emit(ses, json{{"length", weyl.length(weyl.from_word(parse_word(word, datum)))}},
                 out);
            return 0;
        }
        if (weyl_word->parsed()) {
            auto [len, rw] =
                weyl.length_and_word(weyl.from_word(parse_word(word, datum)));
            emit(ses, json{{"length", len}, {"word", word_to_string(rd, rw)}}, out);
            return 0;
        }
        if (weyl_bruhat->parsed()) {
            bool leq = weyl.bruhat_leq(weyl.from_word(parse_word(uword, datum)),
                                       weyl.from_word(parse_word(wword, datum)));
            emit(ses, json{{"leq", leq}}, out);
            return 0;
        }
        if (weyl_nf->parsed()) {
            auto [z, wbar] = weyl.normal_form(weyl.from_word(parse_word(word, datum)));
            json zj = json::object();
            for (std::size_t a = 0; a < rd.finite_nodes.size(); ++a)
                zj[datum.labels[rd.finite_nodes[a]]] = z.coeffs[a];
            emit(ses, json{{"z", zj},
                           {"wbar", word_to_string(rd, weyl.length_and_word(wbar).second)}},
                 out);
            return 0;
        }

        AffineRoots aroots(weyl);
        if (r_semiinf->parsed()) {
            emit(ses, json{{"semiinf_length", aroots.semiinf_length(weyl.from_word(
                               parse_word(word, datum)))}},
                 out);
            return 0;
        }
        if (r_twist->parsed()) {
            emit(ses, json{{"twisted_length",
                            aroots.twisted_length(
                                weyl.from_word(parse_word(twistword, datum)),
                                weyl.from_word(parse_word(word, datum)))}},
                 out);
            return 0;
        }
        if (r_stab->parsed()) {
            auto st = aroots.stabilization_m0(weyl.from_word(parse_word(word, datum)),
                                              session_x(ses, rd), stab_window, m_range);
            emit(ses, json{{"m0", st.m0},
                           {"stable_value", st.value},
                           {"sequence", st.sequence},
                           {"window", stab_window}},
                 out);
            return 0;
        }
        if (r_sbruhat->parsed()) {
            auto v = aroots.semiinf_bruhat_leq(weyl.from_word(parse_word(uword, datum)),
                                               weyl.from_word(parse_word(wword, datum)),
                                               certify_depth);
            std::string verdict = v == AffineRoots::Verdict::yes            ? "true"
                                  : v == AffineRoots::Verdict::no           ? "false"
                                                                            : "inconclusive";
            emit(ses, json{{"verdict", verdict}, {"certify_depth", certify_depth}}, out);
            return 0;
        }

        if (c_window->parsed()) {
            auto ord = order();
            auto rep = ord->theta_window(m);
            json gens = json::array();
            for (const auto& g : rep.generators()) gens.push_back(index_to_json(rd, g));
            emit(ses, json{{"m", m},
                           {"upper", rep.upper},
                           {"lower", rep.lower},
                           {"upper_contiguous", rep.upper_contiguous},
                           {"lower_contiguous", rep.lower_contiguous},
                           {"generators", gens}},
                 out);
            return 0;
        }
        if (c_check->parsed()) {
            auto ord = order();
            auto bad = ord->convexity_check(parse_convex_window(window_spec));
            json v = json::array();
            for (const auto& b : bad)
                v.push_back(json{{"a", index_to_json(rd, b.a)},
                                 {"b", index_to_json(rd, b.b)},
                                 {"sum", index_to_json(rd, b.sum)}});
            emit(ses, json{{"window", window_spec}, {"violations", v}}, out);
            return 0;
        }

        if (p_dim->parsed()) {
            auto ord = order();
            ConvexWindow cw = parse_convex_window(window_spec);
            MultiDegree deg{parse_int_list(weight_spec, rd.finite_nodes.size(),
                                           "--weight"),
                            energy};
            Int dim;
            if (flip) {
                dim = semiinf_pbw_dimension(*ord, cw, deg);
            } else {
                dim = graded_dimension(*ord, ord->window_indices(cw), deg);
            }
            emit(ses, json{{"window", window_spec}, {"dimension", dim}}, out);
            return 0;
        }
        if (p_str->parsed()) {
            auto ord = order();
            GradedElement a = GradedElement::monomial(*ord, parse_monomial(mono_a, rd),
                                                      LaurentScalar::one());
            GradedElement b = GradedElement::monomial(*ord, parse_monomial(mono_b, rd),
                                                      LaurentScalar::one());
            GradedElement p = straighten_product(a, b);
            json terms = json::array();
            for (const auto& [mm, cc] : p.terms()) {
                json fac = json::array();
                for (const auto& [idx, e] : mm.factors)
                    fac.push_back(json{{"index", index_to_json(rd, idx)}, {"exp", e}});
                terms.push_back(json{{"factors", fac}, {"coeff", cc.str()}});
            }
            emit(ses, json{{"terms", terms}}, out);
            return 0;
        }

        if (k_check->parsed() || k_dual->parsed()) {
            auto ord = order();
            auto gens = ord->theta_window(m).generators();
            KoszulReport rep = k_check->parsed()
                                   ? koszul_homology(*ord, gens, cap, ses.seed, flip)
                                   : koszul_cotor(*ord, gens, cap, ses.seed);
            if (!rep.stable) {
                emit(ses, koszul_report_to_json(rd, rep), out);
                err << "specialization-unstable: ranks disagreed across 4 draws\n";
                return 3;
            }
            emit(ses, koszul_report_to_json(rd, rep), out);
            return 0;
        }

        Characters chars(weyl);
        if (ch_verma->parsed()) {
            emit(ses, character_to_json(rd, chars.verma_character(lambda(), depth)), out);
            return 0;
        }
        if (ch_bgg->parsed()) {
            emit(ses, character_to_json(rd, chars.bgg_euler(lambda(), depth)), out);
            return 0;
        }
        if (ch_tbgg->parsed()) {
            emit(ses,
                 character_to_json(rd, chars.twisted_bgg_euler(lambda(), m,
                                                               session_x(ses, rd), depth)),
                 out);
            return 0;
        }
        if (t_table->parsed() || t_limit->parsed()) {
            auto [lo, hi] = parse_window(window_spec);
            Characters::TorTable t =
                t_table->parsed()
                    ? chars.tor_table(lambda(), m, session_x(ses, rd), lo, hi)
                    : chars.tor_limit_table(lambda(), lo, hi);
            std::vector<std::vector<std::string>> rows{{"n", "word", "weight"}};
            for (const auto& e : t.entries) {
                std::string ws;
                for (std::size_t i = 0; i < rd.size(); ++i)
                    ws += (i ? "," : "") + std::to_string(e.weight.pairings[i]);
                rows.push_back({std::to_string(e.n), word_to_string(rd, e.word), ws});
            }
            emit(ses, tor_table_to_json(rd, t), out, rows);
            return 0;
        }
        if (t_stab->parsed()) {
            auto [lo, hi] = parse_window(window_spec);
            auto rep = chars.stabilization_report(lambda(), session_x(ses, rd), lo, hi,
                                                  m_range);
            json entries = json::array();
            for (const auto& e : rep)
                entries.push_back(json{{"n", e.n},
                                       {"word", word_to_string(rd, e.word)},
                                       {"m0", e.m0},
                                       {"stable_value", e.value},
                                       {"sequence", e.sequence}});
            emit(ses, json{{"window", window_spec}, {"entries", entries}}, out);
            return 0;
        }
        err << "no subcommand action matched\n";
        return 1;
    } catch (const validation_error& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const budget_error& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        err << "internal inconsistency: " << e.what() << "\n";
        return 3;
    }
}

} // namespace affq::cli
