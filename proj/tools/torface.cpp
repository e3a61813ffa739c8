#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>

#include "torface/homology.hpp"
#include "torface/json_io.hpp"
#include "torface/oracle.hpp"
#include "torface/squarefree.hpp"

using namespace torface;
using ojson = nlohmann::ordered_json;

namespace {

struct Options {
    std::string input;
    std::string out;
    std::string format = "json";
    std::string field = "q";
    int box = 4;
    int jobs = 0;
    int cap = 64;
    int degree_bound = 3;
};

Field parse_field(const std::string& s) {
    if (s == "q") return Field::q();
    if (s.rfind("fp:", 0) == 0) return Field::fp(std::stoll(s.substr(3)));
    throw ParseError("field must be 'q' or 'fp:P'");
}

void emit(const Options& o, const std::string& payload) {
    if (o.out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ParseError("cannot write '" + o.out + "'");
    f << payload;
}

ojson deg_json(const ToricFaceRing& r, const DegreeElem& d) {
    return ojson{{"cell", r.complex().name(d.cell)}, {"coords", d.coords}};
}

ojson degs_json(const ToricFaceRing& r, const std::vector<DegreeElem>& ds) {
    ojson a = ojson::array();
    for (auto& d : ds) a.push_back(deg_json(r, d));
    return a;
}

std::string word_str(const Presentation& p, const std::vector<int>& e) {
    std::string s;
    for (size_t i = 0; i < e.size(); ++i) {
        if (!e[i]) continue;
        if (!s.empty()) s += "*";
        s += p.variables[i].name;
        if (e[i] > 1) s += "^" + std::to_string(e[i]);
    }
    return s.empty() ? "1" : s;
}

std::string table_csv(const ToricFaceRing& r, const CohomologyTable& t) {
    std::string s = "complex,index,cell,coords,rank\n";
    for (auto& e : t.entries) {
        s += std::string(1, t.tag) + "," + std::to_string(e.index) + "," +
             r.complex().name(e.deg.cell) + ",";
        for (size_t i = 0; i < e.deg.coords.size(); ++i)
            s += (i ? " " : "") + std::to_string(e.deg.coords[i]);
        s += "," + std::to_string(e.rank) + "\n";
    }
    return s;
}

ojson table_json(const ToricFaceRing& r, const CohomologyTable& t) {
    ojson entries = ojson::array();
    for (auto& e : t.entries) {
        ojson row = deg_json(r, e.deg);
        row["index"] = e.index;
        row["rank"] = e.rank;
        entries.push_back(row);
    }
    return ojson{{"schema", 1},
                 {"command", "cohomology"},
                 {"complex", std::string(1, t.tag)},
                 {"box", t.box},
                 {"field", t.field.str()},
                 {"entries", entries},
                 {"undecided", degs_json(r, t.undecided)}};
}

ojson report_json(const ToricFaceRing& r, const std::string& which, const CheckReport& rep) {
    ojson viols = ojson::array();
    for (auto& v : rep.violations) {
        ojson row = deg_json(r, v.deg);
        row["i"] = v.index;
        row["rank_lhs"] = v.rank_a;
        row["rank_rhs"] = v.rank_b;
        viols.push_back(row);
    }
    std::string status = rep.violations.empty() ? (rep.undecided.empty() ? "pass" : "undecided")
                                                : "fail";
    return ojson{{"schema", 1},        {"command", "check"},
                 {"check", which},     {"box", rep.box},
                 {"status", status},   {"violations", viols},
                 {"undecided", degs_json(r, rep.undecided)}};
}

int report_exit(const CheckReport& rep) {
    if (!rep.violations.empty()) return 2;
    if (!rep.undecided.empty()) return 3;
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric face rings: graded Cech, dual, and Ishida complexes with exact ranks"};
    app.require_subcommand(1);

    Options o;
    std::string check_which, cell_name, module_path, complex_tag = "L";
    int oracle_bound = -1;

    auto add_common = [&](CLI::App* cmd, bool with_box = true) {
        cmd->add_option("input", o.input, "input JSON document")->required();
        cmd->add_option("--out", o.out, "write the report to a file");
        cmd->add_option("--format", o.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--cap", o.cap, "membership search cap");
        cmd->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
        cmd->add_option("--field", o.field, "q | fp:P");
        if (with_box) cmd->add_option("--box", o.box, "scan box radius");
    };

    auto* validate = app.add_subcommand("validate", "parse and validate an input document");
    add_common(validate, false);

    auto* presentation = app.add_subcommand("presentation", "variables and bounded relations");
    add_common(presentation, false);
    presentation->add_option("--degree-bound", o.degree_bound, "total degree bound");

    auto* degreeset = app.add_subcommand("degreeset", "degree sets of one cell");
    add_common(degreeset);
    degreeset->add_option("--cell", cell_name, "cell id")->required();

    auto* cohomology = app.add_subcommand("cohomology", "rank table over the scan box");
    add_common(cohomology);
    cohomology->add_option("--complex", complex_tag, "L|J|I")
        ->check(CLI::IsMember({"L", "J", "I"}));

    auto* check = app.add_subcommand("check", "duality / ishida / cm diagnostics");
    check->add_option("which", check_which, "duality|ishida|cm")
        ->required()
        ->check(CLI::IsMember({"duality", "ishida", "cm"}));
    add_common(check);

    auto* sqcheck = app.add_subcommand("sqcheck", "squarefree-ness of a graded module");
    add_common(sqcheck);
    sqcheck->add_option("--module", module_path, "module JSON file")->required();

    auto* odiff = app.add_subcommand("oracle-diff", "brute-force strands against the engine");
    add_common(odiff);
    odiff->add_option("--bound", oracle_bound, "oracle enumeration radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Input in = load_input(o.input);
        const ToricFaceRing& r = *in.ring;
        Field field = parse_field(o.field);
        HomologyEngine eng(r, o.cap);

        if (app.got_subcommand(validate)) {
            ojson doc{{"schema", 1},
                      {"command", "validate"},
                      {"valid", true},
                      {"cells", r.complex().size()},
                      {"dim", r.complex().max_dim()},
                      {"krull_dim", r.krull_dim()},
                      {"conewise_normal", r.conewise_normal()}};
            emit(o, doc.dump(1) + "\n");
            return 0;
        }

        if (app.got_subcommand(presentation)) {
            Presentation p = r.presentation(o.degree_bound, in.labels);
            ojson vars = ojson::array();
            for (auto& v : p.variables) {
                ojson row = deg_json(r, v.deg);
                row["name"] = v.name;
                vars.push_back(row);
            }
            ojson rels = ojson::array();
            for (auto& w : p.monomial_relations)
                rels.push_back(ojson{{"type", "monomial"},
                                     {"text", word_str(p, w)},
                                     {"exponents", w}});
            for (auto& [lhs, rhs] : p.binomial_relations)
                rels.push_back(ojson{{"type", "binomial"},
                                     {"text", word_str(p, lhs) + " - " + word_str(p, rhs)},
                                     {"lhs_exponents", lhs},
                                     {"rhs_exponents", rhs}});
            ojson doc{{"schema", 1},
                      {"command", "presentation"},
                      {"degree_bound", p.degree_bound},
                      {"variables", vars},
                      {"relations", rels},
                      {"bound_hit", p.bound_hit}};
            emit(o, doc.dump(1) + "\n");
            return 0;
        }

        if (app.got_subcommand(degreeset)) {
            int cell = r.complex().cell_by_name(cell_name);
            const Localization& loc = eng.loc();
            std::vector<DegreeElem> mem, locs, duals, und;
            for (auto& d : r.box_degrees(o.box)) {
                if (r.member_at(d, cell)) mem.push_back(d);
                Tri tl = loc.loc_member_tri(d, cell);
                Tri td = loc.dual_member_tri(d, cell);
                if (tl == Tri::yes) locs.push_back(d);
                if (td == Tri::yes) duals.push_back(d);
                if (tl == Tri::undecided || td == Tri::undecided) und.push_back(d);
            }
            ojson doc{{"schema", 1},
                      {"command", "degreeset"},
                      {"cell", cell_name},
                      {"box", o.box},
                      {"membership", degs_json(r, mem)},
                      {"localization", degs_json(r, locs)},
                      {"dual", degs_json(r, duals)},
                      {"undecided", degs_json(r, und)}};
            emit(o, doc.dump(1) + "\n");
            return 0;
        }

        if (app.got_subcommand(cohomology)) {
            CohomologyTable t = eng.box_scan(complex_tag[0], o.box, field, o.jobs);
            emit(o, o.format == "csv" ? table_csv(r, t) : table_json(r, t).dump(1) + "\n");
            return 0;
        }

        if (app.got_subcommand(check)) {
            if (check_which == "duality") {
                CheckReport rep = eng.duality_check(o.box, field, o.jobs);
                emit(o, report_json(r, "duality", rep).dump(1) + "\n");
                return report_exit(rep);
            }
            if (check_which == "ishida") {
                CheckReport rep = eng.ishida_check(o.box, field, o.jobs);
                emit(o, report_json(r, "ishida", rep).dump(1) + "\n");
                return report_exit(rep);
            }
            CohomologyTable jt = eng.box_scan('J', o.box, field, o.jobs);
            CmReport rep = eng.cm_diagnostic(jt);
            ojson wit = ojson::array();
            for (auto& [i, d] : rep.witnesses) {
                ojson row = deg_json(r, d);
                row["i"] = i;
                wit.push_back(row);
            }
            std::string verdict = rep.kind == CmKind::consistent ? "ConsistentWithCM"
                                  : rep.kind == CmKind::not_cm   ? "NotCM"
                                                                 : "Undecided";
            ojson doc{{"schema", 1},
                      {"command", "check"},
                      {"check", "cm"},
                      {"box", o.box},
                      {"dim", rep.dim},
                      {"verdict", verdict},
                      {"witnesses", wit},
                      {"undecided", degs_json(r, rep.undecided)}};
            emit(o, doc.dump(1) + "\n");
            return rep.kind == CmKind::consistent ? 0 : rep.kind == CmKind::not_cm ? 2 : 3;
        }

        if (app.got_subcommand(sqcheck)) {
            i64 smax = 1;
            for (int c = 0; c < r.complex().size(); ++c)
                for (i64 x : r.s_elem(c).coords) smax = std::max(smax, x < 0 ? -x : x);
            int window = std::max(2 * o.box, (int)(2 * smax));
            BoxedModule m = load_module(module_path, r, window);
            SqResult res = check_squarefree(r, m, o.box);
            ojson doc{{"schema", 1},
                      {"command", "sqcheck"},
                      {"box", o.box},
                      {"squarefree", res.squarefree},
                      {"pairs_checked", res.pairs_checked},
                      {"box_too_small", res.box_too_small}};
            if (res.witness) {
                ojson w{{"a", deg_json(r, res.witness->a)},
                        {"b", deg_json(r, res.witness->b)},
                        {"reason", res.witness->reason}};
                doc["witness"] = w;
            } else {
                doc["witness"] = nullptr;
            }
            if (res.squarefree) {
                SquarefreeModule sq = to_incidence_module(r, m, window);
                ojson dims = ojson::object();
                for (auto& [c, d] : sq.dims) dims[r.complex().name(c)] = d;
                doc["incidence_module"] = ojson{{"dims", dims}};
            }
            emit(o, doc.dump(1) + "\n");
            return res.squarefree ? 0 : 2;
        }

        if (app.got_subcommand(odiff)) {
            int bound = oracle_bound > 0 ? oracle_bound : 2 * o.box + 8;
            Oracle oracle(r, bound);
            auto diffs = oracle_diff(r, eng, oracle, o.box, field);
            ojson rows = ojson::array();
            for (auto& d : diffs) {
                ojson row = deg_json(r, d.deg);
                row["complex"] = std::string(1, d.tag);
                row["index"] = d.index;
                row["oracle_rank"] = d.oracle_rank;
                row["engine_rank"] = d.engine_rank;
                rows.push_back(row);
            }
            ojson doc{{"schema", 1},
                      {"command", "oracle-diff"},
                      {"box", o.box},
                      {"bound", bound},
                      {"status", diffs.empty() ? "pass" : "fail"},
                      {"mismatches", rows}};
            emit(o, doc.dump(1) + "\n");
            return diffs.empty() ? 0 : 2;
        }
    } catch (const UndecidedError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 4;
    }
    return 1;
}
