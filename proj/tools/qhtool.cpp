#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "qh/builders.hpp"
#include "qh/io.hpp"

using namespace qh;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitFormat = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const ToolReport& rep, const std::string& format) {
    if (format == "json")
        std::cout << render_json(rep);
    else
        std::cout << render_text(rep);
}

Rat parse_rational(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::exception&) {
        throw BadParameters("cannot parse rational: " + s);
    }
}

int cmd_verify(const std::string& file, const std::string& level_s,
               const std::string& eta_s, const std::string& format) {
    ToolReport rep;
    rep.command = "verify";
    rep.input = file;
    std::string bytes = read_file(file);
    rep.input_digest = digest_hex(bytes);
    rep.level = level_s;
    VerifyLevel level = parse_level(level_s);
    AlgebraFile a = parse_algebra(bytes);
    std::optional<DVec> eta;
    if (!eta_s.empty()) eta = parse_scalar_vector(a.H.field(), a.H.dim(), eta_s);
    rep.checks = run_verify_suite(a, level, eta);
    emit(rep, format);
    return rep.ok() ? kExitPass : kExitFail;
}

int cmd_ribbonize(const std::string& file, const std::string& out,
                  const std::string& format) {
    ToolReport rep;
    rep.command = "ribbonize";
    rep.input = file;
    std::string bytes = read_file(file);
    rep.input_digest = digest_hex(bytes);
    AlgebraFile a = parse_algebra(bytes);
    if (!a.r) throw FormatError("ribbonize requires an r_matrix section");

    rep.checks = run_verify_suite(a, VerifyLevel::qt, std::nullopt);
    if (!rep.checks.ok()) {
        emit(rep, format);
        return kExitFail;
    }

    GaugeData G = compute_drinfeld_twist(a.H);
    RMatrix R = verify_qt(a.H.B, *a.r);
    UElement U = compute_u(a.H, R, G);
    HTheta T;
    Report built = check_h_theta(a.H, R, U, &T);
    rep.checks.merge(built);
    if (!rep.checks.ok()) {
        emit(rep, format);
        return kExitFail;
    }

    AlgebraFile outf;
    outf.name = a.name + "(theta)";
    outf.H = T.alg;
    outf.r = T.r.r;
    save_algebra(outf, out);
    rep.extras.emplace_back("output", out);
    rep.extras.emplace_back("output_dim", std::to_string(T.alg.dim()));

    // full level-ribbon verification of the emitted algebra, eta = theta^{-1}
    AlgebraFile reloaded = load_algebra(out);
    rep.checks.merge(
        run_verify_suite(reloaded, VerifyLevel::ribbon, T.eta.eta.to_vec()), "output");
    emit(rep, format);
    return rep.ok() ? kExitPass : kExitFail;
}

int cmd_pivotal(const std::string& file, const std::string& mode,
                const std::string& candidate_s, const std::string& format) {
    ToolReport rep;
    rep.command = "pivotal";
    rep.input = file;
    std::string bytes = read_file(file);
    rep.input_digest = digest_hex(bytes);
    AlgebraFile a = parse_algebra(bytes);

    rep.checks = run_verify_suite(a, VerifyLevel::hopf, std::nullopt);
    if (!rep.checks.ok()) {
        emit(rep, format);
        return kExitFail;
    }
    GaugeData G = compute_drinfeld_twist(a.H);
    const auto& M = a.H.B.mult;

    auto describe = [&](const Tensor& g) {
        std::ostringstream os;
        os << "[";
        for (long i = 0; i < a.H.dim(); ++i) os << (i ? ", " : "") << g.to_vec()[i].str();
        os << "], counit = " << a.H.B.eps_vec(g.to_vec()).str();
        DVec sg_g = M.mul(a.H.s_vec(g.to_vec()), g.to_vec());
        os << ", S(g)·g = [";
        for (long i = 0; i < a.H.dim(); ++i) os << (i ? ", " : "") << sg_g[i].str();
        os << "]";
        return os.str();
    };

    if (mode == "candidate") {
        if (candidate_s.empty()) throw FormatError("candidate mode needs --candidate");
        DVec g = parse_scalar_vector(a.H.field(), a.H.dim(), candidate_s);
        Tensor gt = Tensor::from_vec(a.H.field(), g);
        rep.extras.emplace_back("candidate", describe(gt));
        rep.checks.merge(verify_sovereign(a.H, G, gt), "candidate");
    } else if (mode == "solve") {
        try {
            long dim = 0;
            bool incomplete = false;
            auto cands = solve_pivotal(a.H, G, &dim, &incomplete);
            rep.extras.emplace_back("solution_space_dim", std::to_string(dim));
            if (incomplete)
                rep.checks.info("pivotal-search",
                                "incomplete search: enumeration over a nullspace basis "
                                "can miss quadratic solutions");
            for (size_t k = 0; k < cands.size(); ++k)
                rep.extras.emplace_back("candidate_" + std::to_string(k),
                                        describe(cands[k].g));
            rep.checks.add("pivotal-found", true,
                           std::to_string(cands.size()) + " verified candidate(s)");
        } catch (const NoSolution& e) {
            rep.checks.add("pivotal-found", false, e.what());
        }
    } else if (mode == "integral") {
        try {
            PivotalCandidate c = pivotal_from_integral(a.H, G);
            rep.extras.emplace_back("candidate", describe(c.g));
            rep.checks.merge(verify_sovereign(a.H, G, c.g), "integral");
        } catch (const NotSemisimple& e) {
            rep.checks.add("integral-exists", false, e.what());
        }
    } else {
        throw FormatError("unknown pivotal mode: " + mode);
    }
    emit(rep, format);
    return rep.ok() ? kExitPass : kExitFail;
}

int cmd_traces(const std::string& file, const std::string& module_name,
               const std::string& candidate_s, const std::string& format) {
    ToolReport rep;
    rep.command = "traces";
    rep.input = file;
    std::string bytes = read_file(file);
    rep.input_digest = digest_hex(bytes);
    AlgebraFile a = parse_algebra(bytes);

    rep.checks = run_verify_suite(a, VerifyLevel::hopf, std::nullopt);
    if (!rep.checks.ok()) {
        emit(rep, format);
        return kExitFail;
    }
    GaugeData G = compute_drinfeld_twist(a.H);

    HModule V;
    if (module_name == "regular") {
        V = regular_module(a.H);
    } else {
        bool found = false;
        for (const auto& [name, mod] : a.modules)
            if (name == module_name) {
                V = mod;
                found = true;
            }
        if (!found) throw FormatError("no module named " + module_name + " in the file");
        rep.checks.merge(check_module(a.H, V), "module");
        if (!rep.checks.ok()) {
            emit(rep, format);
            return kExitFail;
        }
    }

    std::vector<PivotalCandidate> cands;
    if (!candidate_s.empty()) {
        DVec g = parse_scalar_vector(a.H.field(), a.H.dim(), candidate_s);
        Tensor gt = Tensor::from_vec(a.H.field(), g);
        Report rs = verify_sovereign(a.H, G, gt);
        rep.checks.merge(rs, "candidate");
        if (!rs.ok()) {
            emit(rep, format);
            return kExitFail;
        }
        cands.push_back(
            PivotalCandidate{gt, Tensor::from_vec(a.H.field(),
                                                  a.H.B.mult.invert_element(g))});
    } else {
        try {
            cands = solve_pivotal(a.H, G);
        } catch (const NoSolution& e) {
            rep.checks.add("pivotal-found", false, e.what());
            emit(rep, format);
            return kExitFail;
        }
    }

    auto basis = end_basis(a.H, V);
    bool any_spherical = false;
    for (size_t k = 0; k < cands.size(); ++k) {
        bool ok = true;
        for (size_t i = 0; i < basis.size(); ++i) {
            auto [tl, tr] = categorical_traces(a.H, cands[k], V, basis[i]);
            std::ostringstream os;
            os << "tr_l = " << tl.str() << ", tr_r = " << tr.str();
            rep.extras.emplace_back(
                "candidate_" + std::to_string(k) + ".endo_" + std::to_string(i), os.str());
            if (!(tl == tr)) ok = false;
        }
        rep.checks.info("spherical[candidate_" + std::to_string(k) + "]",
                        ok ? "traces balanced" : "traces differ");
        any_spherical = any_spherical || ok;
    }
    rep.checks.add("spherical-verdict", any_spherical,
                   any_spherical ? "" : "no candidate balances the traces on " + V.name);
    emit(rep, format);
    return rep.ok() ? kExitPass : kExitFail;
}

int cmd_example(const std::string& family, long n, long s, const std::string& r_param,
                bool with_r, const std::string& out, const std::string& format) {
    ToolReport rep;
    rep.command = "example";
    AlgebraFile a;
    if (family == "cyclic") {
        a.H = cyclic_qha(n, s);
        a.name = "H_q(" + std::to_string(n) + ")" + (s != 1 ? "[s=" + std::to_string(s) + "]" : "");
    } else if (family == "group") {
        auto res = group_hopf(n, with_r);
        a.H = res.H;
        a.name = "kC" + std::to_string(n) + (with_r ? "+R" : "");
        if (res.R) a.r = res.R->r;
    } else if (family == "sweedler") {
        auto res = sweedler(parse_rational(r_param));
        a.H = res.H;
        a.name = "sweedler[r=" + r_param + "]";
        a.r = res.R.r;
    } else {
        throw BadParameters("unknown family: " + family);
    }
    save_algebra(a, out);
    rep.extras.emplace_back("output", out);
    rep.extras.emplace_back("name", a.name);
    rep.extras.emplace_back("dim", std::to_string(a.H.dim()));
    rep.checks.add("builder-verified", true, "all builder postconditions hold");
    emit(rep, format);
    return kExitPass;
}

int cmd_drinfeld(const std::string& file, const std::string& out,
                 const std::string& format) {
    ToolReport rep;
    rep.command = "drinfeld";
    rep.input = file;
    std::string bytes = read_file(file);
    rep.input_digest = digest_hex(bytes);
    AlgebraFile a = parse_algebra(bytes);

    rep.checks = run_verify_suite(a, VerifyLevel::hopf, std::nullopt);
    if (!rep.checks.ok()) {
        emit(rep, format);
        return kExitFail;
    }
    GaugeData G = compute_drinfeld_twist(a.H);

    nlohmann::ordered_json j;
    auto tensor_out = [&](const Tensor& t) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        long legs[kMaxRank];
        for (const auto& [flat, c] : t.nonzeros()) {
            t.unflatten(flat, legs);
            nlohmann::ordered_json e;
            e["i"] = nlohmann::ordered_json::array();
            for (int q = 0; q < t.rank(); ++q) e["i"].push_back(legs[q]);
            e["c"] = c.str();
            arr.push_back(std::move(e));
        }
        return arr;
    };
    j["gamma"] = tensor_out(G.gamma);
    j["delta"] = tensor_out(G.delta);
    j["f"] = tensor_out(G.f);
    j["f_inv"] = tensor_out(G.f_inv);
    if (a.r) {
        RMatrix R = verify_qt(a.H.B, *a.r);
        UElement U = compute_u(a.H, R, G);
        j["u"] = tensor_out(U.u);
        j["u_inv"] = tensor_out(U.u_inv);
    }
    std::string payload = j.dump(2) + "\n";
    if (!out.empty()) {
        std::ofstream of(out, std::ios::binary);
        if (!of) throw FormatError("cannot write " + out);
        of << payload;
        rep.extras.emplace_back("output", out);
    } else {
        rep.extras.emplace_back("elements", payload);
    }
    emit(rep, format);
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact structure-constant toolkit for quasi-Hopf algebras"};
    app.require_subcommand(1);
    std::string format = "text";
    std::string file, out, level = "hopf", eta, candidate, mode = "solve";
    std::string module_name = "regular", family, r_param = "0";
    long n = 2, s = 1;
    bool with_r = false;

    auto* verify = app.add_subcommand("verify", "run the axiom suite on an algebra file");
    verify->add_option("file", file)->required();
    verify->add_option("--level", level, "bialgebra, hopf, qt or ribbon");
    verify->add_option("--eta", eta, "ribbon element candidate (JSON scalar vector)");

    auto* ribbonize =
        app.add_subcommand("ribbonize", "build and verify the theta extension");
    ribbonize->add_option("file", file)->required();
    ribbonize->add_option("-o,--output", out)->required();

    auto* pivotal = app.add_subcommand("pivotal", "verify or search sovereign elements");
    pivotal->add_option("file", file)->required();
    pivotal->add_option("--mode", mode, "candidate, solve or integral");
    pivotal->add_option("--candidate", candidate, "element (JSON scalar vector)");

    auto* traces = app.add_subcommand("traces", "categorical traces and sphericity");
    traces->add_option("file", file)->required();
    traces->add_option("--module", module_name, "module name or 'regular'");
    traces->add_option("--candidate", candidate, "sovereign element (JSON scalar vector)");

    auto* example = app.add_subcommand("example", "emit a verified example algebra");
    example->add_option("--family", family, "cyclic, group or sweedler")->required();
    example->add_option("-n", n, "group order");
    example->add_option("-s", s, "root-of-unity exponent (cyclic family)");
    example->add_option("--r-param", r_param, "R-matrix parameter (sweedler family)");
    example->add_flag("--with-r", with_r, "attach the stock R-matrix (group family)");
    example->add_option("-o,--output", out)->required();

    auto* drinfeld =
        app.add_subcommand("drinfeld", "emit gamma, delta, the twist and u");
    drinfeld->add_option("file", file)->required();
    drinfeld->add_option("-o,--output", out);

    for (auto* sc : {verify, ribbonize, pivotal, traces, example, drinfeld})
        sc->add_option("--format", format, "report format: text or json")
            ->check(CLI::IsMember({"text", "json"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_name() == "CallForHelp" ? kExitPass : kExitFormat;
    }

    try {
        if (*verify) return cmd_verify(file, level, eta, format);
        if (*ribbonize) return cmd_ribbonize(file, out, format);
        if (*pivotal) return cmd_pivotal(file, mode, candidate, format);
        if (*traces) return cmd_traces(file, module_name, candidate, format);
        if (*example) return cmd_example(family, n, s, r_param, with_r, out, format);
        if (*drinfeld) return cmd_drinfeld(file, out, format);
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const BadParameters& e) {
        std::cerr << "bad parameters: " << e.what() << "\n";
        return kExitFormat;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFail;
    }
    return kExitFormat;
}
