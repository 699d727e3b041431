// dtcalc: exact computations for Lagrangian-intersection vanishing-cycle data.
// Every subcommand prints one deterministic JSON report on standard output.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dtcalc/dtcalc.hpp"
#include "dtcalc/json_io.hpp"

namespace {

using dtcalc::io::json;
using namespace dtcalc;

struct Conventions {
    bool conjugate = false;

    json to_json() const {
        return json{{"monodromy", conjugate ? "T=exp(+2*pi*i*D)" : "T=exp(-2*pi*i*D)"},
                    {"section_G", "-1 < Re(lambda) <= 0"},
                    {"tq_base_point", "alpha=1"}};
    }

    MonodromyData apply(const MonodromyData& m) const {
        if (!conjugate) return m;
        std::vector<JordanBlockSet> blocks;
        for (const auto& b : m.blocks())
            blocks.push_back(JordanBlockSet{reduce_into_G(-b.exponent), b.sizes});
        return MonodromyData(std::move(blocks));
    }

    PVData apply(const PVData& d) const {
        PVData out = d;
        out.monodromy = apply(d.monodromy);
        return out;
    }
};

std::string read_poly_text(const std::string& arg) {
    if (arg == "-") {
        std::ostringstream all;
        all << std::cin.rdbuf();
        return all.str();
    }
    return arg;
}

std::optional<std::vector<std::string>> split_vars(const std::string& csv) {
    if (csv.empty()) return std::nullopt;
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DomainError(ErrorCode::SchemaViolation, "cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw DomainError(ErrorCode::SchemaViolation,
                          path + ": invalid JSON: " + e.what());
    }
    return j;
}

json make_report(const std::string& command, json inputs, json results,
                 const Conventions& conv, json warnings = json::array()) {
    json j;
    j["schema"] = "dtcalc/1";
    j["command"] = command;
    j["inputs"] = std::move(inputs);
    j["results"] = std::move(results);
    j["conventions"] = conv.to_json();
    j["warnings"] = std::move(warnings);
    return j;
}

json monomial_strings(const MilnorAlgebra& alg) {
    json arr = json::array();
    for (const auto& m : alg.basis()) {
        Poly p(alg.f().variables());
        p.add_term(m, Scalar(1));
        arr.push_back(p.render());
    }
    return arr;
}

json cmd_milnor(const std::string& poly_text, const std::string& vars_csv,
                const Conventions& conv) {
    Poly f = parse_poly(poly_text, split_vars(vars_csv));
    MilnorAlgebra alg(f);
    json results;
    results["mu"] = alg.mu();
    results["basis"] = monomial_strings(alg);
    results["variables"] = f.variables();
    return make_report("milnor", json{{"poly", f.render()}}, results, conv);
}

json cmd_spectrum(const std::string& poly_text, const std::string& vars_csv,
                  const Conventions& conv) {
    Poly f = parse_poly(poly_text, split_vars(vars_csv));
    Spectrum sp = spectrum(f);
    auto w = qh_weights(f);
    json results;
    results["spectrum"] = io::spectrum_to_json(sp);
    results["mu"] = sp.size();
    json jw = json::array();
    for (const auto& wi : *w) jw.push_back(rational_to_string(wi));
    results["weights"] = jw;
    return make_report("spectrum", json{{"poly", f.render()}}, results, conv);
}

json cmd_monodromy(const std::string& poly_text, const std::string& vars_csv, bool pv,
                   const Conventions& conv) {
    Poly f = parse_poly(poly_text, split_vars(vars_csv));
    MonodromyData raw = vanishing_monodromy(f);
    json results;
    results["monodromy"] = io::monodromy_to_json(conv.apply(raw));
    results["dim"] = raw.dim();
    if (pv) {
        PVData twisted = pv_twist(raw, static_cast<int>(f.var_count()));
        results["pv"] = io::pvdata_to_json(conv.apply(twisted));
    }
    json inputs{{"poly", f.render()}, {"pv", pv}};
    return make_report("monodromy", inputs, results, conv);
}

json cmd_ts(const std::string& f_text, const std::string& g_text, const Conventions& conv) {
    Poly f = parse_poly(f_text);
    Poly g = parse_poly(g_text);
    Poly sum = boxplus(f, g);
    Spectrum sf = spectrum(f), sg = spectrum(g), ssum = spectrum(sum);
    Spectrum minkowski = thom_sebastiani(sf, sg);
    json results;
    results["f_spectrum"] = io::spectrum_to_json(sf);
    results["g_spectrum"] = io::spectrum_to_json(sg);
    results["sum_spectrum"] = io::spectrum_to_json(ssum);
    results["mu_f"] = sf.size();
    results["mu_g"] = sg.size();
    results["mu_sum"] = ssum.size();
    results["checks"] = json{{"spectrum_additive", minkowski == ssum},
                             {"mu_multiplicative", sf.size() * sg.size() == ssum.size()}};
    json inputs{{"f", f.render()}, {"g", g.render()}};
    return make_report("ts", inputs, results, conv);
}

json cmd_stabilize(const std::string& poly_text, unsigned rank,
                   const std::string& lambda_text, const Conventions& conv) {
    Poly f = parse_poly(poly_text);
    Rational lambda = lambda_text.empty()
                          ? Rational(1, 2)
                          : io::rational_from_json(json(lambda_text), "/lambda");
    PVData before = pv_twist(vanishing_monodromy(f), static_cast<int>(f.var_count()));
    QuadForm q = QuadForm::standard(rank);
    PVData after = stabilize(before, q, OrderParam{lambda});
    json results;
    results["before"] = io::pvdata_to_json(conv.apply(before));
    results["after"] = io::pvdata_to_json(conv.apply(after));
    results["tq_scale"] = rational_to_string(tq_scale(q, OrderParam{lambda}));
    results["invariant"] = (after.monodromy == before.monodromy);
    json inputs{{"poly", f.render()},
                {"rank", rank},
                {"lambda", rational_to_string(lambda)}};
    return make_report("stabilize", inputs, results, conv);
}

json cmd_maslov(const std::string& space_path, const std::string& chain_path,
                const Conventions& conv) {
    json jspace = load_json_file(space_path);
    json jchain = load_json_file(chain_path);
    auto space = std::make_shared<const SymplecticSpace>(
        io::space_from_json(jspace, "/space"));
    std::vector<LagrangianSubspace> chain = io::chain_from_json(jchain, space, "/chain");
    LagChainMap cm = chain_map(chain);
    json results;
    results["chain_matrix"] = io::matrix_to_json(cm.matrix);
    results["dual_target"] = cm.dual_flag;
    results["chain_length"] = chain.size();
    if (chain.size() == 3) {
        Matrix<Scalar> q = maslov_form(chain[0], chain[1], chain[2]);
        results["maslov_form"] = io::matrix_to_json(q);
    }
    json inputs{{"space", space_path}, {"chain", chain_path}};
    return make_report("maslov", inputs, results, conv);
}

json cmd_rh(const std::string& monodromy_path, bool roundtrip, const Conventions& conv) {
    json jm = load_json_file(monodromy_path);
    MonodromyData m = io::monodromy_from_json(jm, "");
    DiffModule d = rh_inverse(m);
    Matrix<Scalar> constant(d.rank, d.rank);
    for (std::size_t i = 0; i < d.rank; ++i)
        for (std::size_t j = 0; j < d.rank; ++j)
            constant(i, j) = d.d_matrix(i, j).coefficient(0);
    json results;
    results["rank"] = d.rank;
    results["d_matrix"] = io::matrix_to_json(constant);
    if (roundtrip) {
        MonodromyData back = lattice_reduce(d);
        results["roundtrip"] = json{{"monodromy", io::monodromy_to_json(conv.apply(back))},
                                    {"equal", back == m}};
    }
    json inputs{{"monodromy", monodromy_path}, {"roundtrip", roundtrip}};
    return make_report("rh", inputs, results, conv);
}

json cmd_chart(const std::string& h_text, const std::string& lvars_csv,
               const std::string& mvars_csv, const Conventions& conv) {
    auto lvars = split_vars(lvars_csv);
    auto mvars = split_vars(mvars_csv);
    if (!lvars || !mvars)
        throw DomainError(ErrorCode::InvalidArgument, "--lvars and --mvars are required");
    Poly h = parse_poly(h_text);
    ChartEmbedding emb = embedding_quadform(h, *lvars, *mvars);
    json results;
    results["f"] = emb.f.render();
    json elim = json::array();
    for (std::size_t i = 0; i < emb.elimination.size(); ++i)
        elim.push_back((*mvars)[i] + " = " + emb.elimination[i].render());
    results["elimination"] = elim;
    results["q_xi"] = io::matrix_to_json(emb.q_xi.matrix());
    results["maslov_consistent"] = maslov_consistency(emb);
    json warnings = json::array();
    try {
        Spectrum sh = spectrum(emb.h);
        Spectrum sf = spectrum(emb.f);
        Spectrum sq = spectrum(quadform_potential(emb.q_xi, *mvars));
        results["spectra"] = json{{"h", io::spectrum_to_json(sh)},
                                  {"f", io::spectrum_to_json(sf)},
                                  {"q_xi", io::spectrum_to_json(sq)},
                                  {"additive", thom_sebastiani(sf, sq) == sh}};
    } catch (const DomainError& e) {
        warnings.push_back(std::string("spectrum comparison skipped: ") + e.what());
    }
    json inputs{{"h", h.render()}, {"lvars", *lvars}, {"mvars", *mvars}};
    return make_report("chart", inputs, results, conv, warnings);
}

json cmd_clean(const std::string& data_path, const Conventions& conv) {
    json jd = load_json_file(data_path);
    if (!jd.is_object()) io::schema_error("", "expected an object");
    SymplecticSpace space = io::space_from_json(jd, "");
    Matrix<Scalar> b_l = io::matrix_from_json(jd.value("t_l", json()), "/t_l");
    Matrix<Scalar> b_m = io::matrix_from_json(jd.value("t_m", json()), "/t_m");
    Matrix<Scalar> b_lm(0, space.dim());
    if (jd.contains("t_lm") && !jd["t_lm"].empty())
        b_lm = io::matrix_from_json(jd["t_lm"], "/t_lm");
    Scalar vol_s(1);
    if (jd.contains("vol_s")) vol_s = io::scalar_from_json(jd["vol_s"], "/vol_s");
    Scalar c = clean_intersection_data(space, b_l, b_m, b_lm, vol_s);
    json results;
    results["scalar"] = c.to_string();
    results["torsor_target"] = c.to_string();
    if (auto roots = sqrt_in_field(c))
        results["in_field_roots"] = json::array(
            {roots->first.to_string(), roots->second.to_string()});
    json inputs{{"data", data_path}};
    return make_report("clean", inputs, results, conv);
}

json cmd_cocycle(const std::string& loop_path, const Conventions& conv) {
    json jl = load_json_file(loop_path);
    if (!jl.is_object() || !jl.contains("loop") || !jl["loop"].is_array())
        io::schema_error("", "expected an object with a 'loop' array");
    std::vector<TorsorTransition> loop;
    for (std::size_t k = 0; k < jl["loop"].size(); ++k) {
        const json& t = jl["loop"][k];
        std::string tp = "/loop/" + std::to_string(k);
        if (!t.is_object() || !t.contains("from") || !t.contains("to"))
            io::schema_error(tp, "expected {from, to, target, ...}");
        loop.push_back(TorsorTransition{t["from"].get<std::string>(),
                                        t["to"].get<std::string>(),
                                        io::torsor_from_json(t, tp)});
    }
    int sign = cocycle_check(loop);
    json results;
    results["sign"] = sign;
    results["consistent"] = (sign == 1);
    json inputs{{"loop", loop_path}};
    return make_report("cocycle", inputs, results, conv);
}

int run_single(const std::vector<std::string>& args, std::ostream& out);

json cmd_batch(const std::string& batch_path, const Conventions& conv) {
    json jb = load_json_file(batch_path);
    if (!jb.is_array()) io::schema_error("", "expected an array of argv arrays");
    json results = json::array();
    for (std::size_t k = 0; k < jb.size(); ++k) {
        const json& entry = jb[k];
        if (!entry.is_array())
            io::schema_error("/" + std::to_string(k), "expected an argv array");
        std::vector<std::string> args;
        if (conv.conjugate) args.push_back("--convention=conjugate");
        for (const auto& a : entry) args.push_back(a.get<std::string>());
        std::ostringstream capture;
        int code = run_single(args, capture);
        json item = json::parse(capture.str());
        item["exit"] = code;
        results.push_back(std::move(item));
    }
    return make_report("batch", json{{"batch", batch_path}}, results, conv);
}

int run_single(const std::vector<std::string>& args, std::ostream& out) {
    CLI::App app{"dtcalc: exact Lagrangian-intersection and vanishing-cycle calculator"};
    app.require_subcommand(0, 1);

    std::string convention = "standard";
    app.add_option("--convention", convention, "monodromy sign convention")
        ->check(CLI::IsMember({"standard", "conjugate"}));
    std::string batch_file;
    app.add_option("--batch", batch_file, "JSON file with an array of argv arrays");

    std::string poly_text, vars_csv, f_text, g_text, lambda_text;
    std::string space_path, chain_path, monodromy_path, h_text, lvars_csv, mvars_csv;
    std::string data_path, loop_path;
    bool pv = false, roundtrip = false;
    unsigned rank = 0;

    CLI::App* milnor = app.add_subcommand("milnor", "Milnor algebra of an isolated singularity");
    milnor->add_option("--poly", poly_text, "potential ('-' reads stdin)")->required();
    milnor->add_option("--vars", vars_csv, "comma-separated variable order");

    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "quasi-homogeneous spectrum");
    spectrum_cmd->add_option("--poly", poly_text)->required();
    spectrum_cmd->add_option("--vars", vars_csv);

    CLI::App* monodromy_cmd = app.add_subcommand("monodromy", "vanishing-cycle monodromy");
    monodromy_cmd->add_option("--poly", poly_text)->required();
    monodromy_cmd->add_option("--vars", vars_csv);
    monodromy_cmd->add_flag("--pv", pv, "apply the (-1)^dim twist");

    CLI::App* ts = app.add_subcommand("ts", "Thom-Sebastiani sum of two potentials");
    ts->add_option("--f", f_text)->required();
    ts->add_option("--g", g_text)->required();

    CLI::App* stab = app.add_subcommand("stabilize", "stabilize by a standard quadratic form");
    stab->add_option("--poly", poly_text)->required();
    stab->add_option("--rank", rank, "rank of the added quadratic form")->required();
    stab->add_option("--lambda", lambda_text, "order parameter (default 1/2)");

    CLI::App* maslov_cmd = app.add_subcommand("maslov", "chain map / Maslov form of Lagrangians");
    maslov_cmd->add_option("--space", space_path)->required();
    maslov_cmd->add_option("--chain", chain_path)->required();

    CLI::App* rh = app.add_subcommand("rh", "inverse Riemann-Hilbert of monodromy data");
    rh->add_option("--monodromy", monodromy_path)->required();
    rh->add_flag("--roundtrip", roundtrip, "also reduce back and compare");

    CLI::App* chart = app.add_subcommand("chart", "chart embedding from a generating function");
    chart->add_option("--h", h_text)->required();
    chart->add_option("--lvars", lvars_csv)->required();
    chart->add_option("--mvars", mvars_csv)->required();

    CLI::App* clean = app.add_subcommand("clean", "clean-intersection determinant comparison");
    clean->add_option("--data", data_path)->required();

    CLI::App* cocycle = app.add_subcommand("cocycle", "sign of a chart-transition loop");
    cocycle->add_option("--loop", loop_path)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    Conventions conv{convention == "conjugate"};
    try {
        json report;
        if (!batch_file.empty()) {
            report = cmd_batch(batch_file, conv);
        } else if (milnor->parsed()) {
            report = cmd_milnor(read_poly_text(poly_text), vars_csv, conv);
        } else if (spectrum_cmd->parsed()) {
            report = cmd_spectrum(read_poly_text(poly_text), vars_csv, conv);
        } else if (monodromy_cmd->parsed()) {
            report = cmd_monodromy(read_poly_text(poly_text), vars_csv, pv, conv);
        } else if (ts->parsed()) {
            report = cmd_ts(read_poly_text(f_text), read_poly_text(g_text), conv);
        } else if (stab->parsed()) {
            report = cmd_stabilize(read_poly_text(poly_text), rank, lambda_text, conv);
        } else if (maslov_cmd->parsed()) {
            report = cmd_maslov(space_path, chain_path, conv);
        } else if (rh->parsed()) {
            report = cmd_rh(monodromy_path, roundtrip, conv);
        } else if (chart->parsed()) {
            report = cmd_chart(read_poly_text(h_text), lvars_csv, mvars_csv, conv);
        } else if (clean->parsed()) {
            report = cmd_clean(data_path, conv);
        } else if (cocycle->parsed()) {
            report = cmd_cocycle(loop_path, conv);
        } else {
            std::cerr << app.help();
            return 1;
        }
        out << report.dump(2) << "\n";
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error at byte " << e.offset() << ": " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        json err;
        err["schema"] = "dtcalc/1";
        err["error"] = json{{"code", e.code_name()}, {"message", e.what()}};
        out << err.dump(2) << "\n";
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_single(args, std::cout);
}
