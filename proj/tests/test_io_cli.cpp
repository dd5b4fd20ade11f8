#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qh/builders.hpp"
#include "qh/io.hpp"

#include "test_util.hpp"

using namespace qh;

#ifndef QHTOOL_PATH
#define QHTOOL_PATH "qhtool"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run_tool(const std::string& args) {
    std::string cmd = std::string(QHTOOL_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof(buf), p)) > 0) out.append(buf, n);
    int status = pclose(p);
    return {WEXITSTATUS(status), out};
}

std::string tmp_path(const std::string& name) {
    return std::string("qh_cli_") + name;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    f << text;
}

}  // namespace

TEST_CASE("serialize/parse round trip is byte-identical") {
    AlgebraFile a;
    a.H = cyclic_qha(3);
    a.name = "H_q(3)";
    std::string once = serialize_algebra(a);
    AlgebraFile b = parse_algebra(once);
    std::string twice = serialize_algebra(b);
    CHECK(once == twice);
    CHECK(b.name == a.name);
    CHECK(b.H.dim() == 3);
    CHECK(b.H.B.phi == a.H.B.phi);
    CHECK(b.H.alpha == a.H.alpha);
    // structure constants reproduce exactly
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j)
            CHECK(b.H.B.mult.basis_prod(i, j) == a.H.B.mult.basis_prod(i, j));
}

TEST_CASE("round trip with r_matrix and modules") {
    auto [H, Ropt] = group_hopf(2, true);
    AlgebraFile a;
    a.H = H;
    a.name = "kC2+R";
    a.r = Ropt->r;
    a.modules.emplace_back("regular", regular_module(H));
    std::string once = serialize_algebra(a);
    AlgebraFile b = parse_algebra(once);
    REQUIRE(b.r.has_value());
    CHECK(*b.r == *a.r);
    REQUIRE(b.modules.size() == 1);
    CHECK(b.modules[0].first == "regular");
    CHECK(b.modules[0].second.rho[1] == a.modules[0].second.rho[1]);
    CHECK(serialize_algebra(b) == once);
}

TEST_CASE("loader rederives a missing phi_inv and verifies it") {
    AlgebraFile a;
    a.H = cyclic_qha(2);
    a.name = "H_q(2)";
    auto j = nlohmann::ordered_json::parse(serialize_algebra(a));
    j.erase("phi_inv");
    AlgebraFile d = parse_algebra(j.dump());
    CHECK(d.H.B.phi_inv == a.H.B.phi_inv);  // the two-sided inverse is unique
}

TEST_CASE("scalar encodings are canonicalized") {
    QuasiHopf H = group_hopf(2, false).H;
    // 2/6 + (4/6) zeta over Q(zeta_2)? degree 1, so a single coefficient
    DVec v = parse_scalar_vector(H.field(), 2,
                                 R"([{"num":[2],"den":6},{"num":[-4],"den":6}])");
    CHECK(v[0] == Scalar::from_rat(H.field(), Rat(1, 3)));
    CHECK(v[1] == Scalar::from_rat(H.field(), Rat(-2, 3)));
    CHECK_THROWS_AS(
        parse_scalar_vector(H.field(), 2, R"([{"num":[1],"den":0},{"num":[0],"den":1}])"),
        FormatError);
    CHECK_THROWS_AS(
        parse_scalar_vector(H.field(), 2, R"([{"num":[1,2],"den":1},{"num":[0],"den":1}])"),
        FormatError);  // wrong phi(N) length
}

TEST_CASE("digest is the standard FNV-1a 64") {
    CHECK(digest_hex("") == "cbf29ce484222325");
    CHECK(digest_hex("abc") == "e71fa2190541574b");
}

TEST_CASE("cli: verify exits 0 on valid input, deterministically") {
    std::string f = tmp_path("hq3.json");
    AlgebraFile a;
    a.H = cyclic_qha(3);
    a.name = "H_q(3)";
    save_algebra(a, f);
    auto r1 = run_tool("verify " + f + " --level hopf --format json");
    auto r2 = run_tool("verify " + f + " --level hopf --format json");
    CHECK(r1.exit_code == 0);
    CHECK(r1.out == r2.out);  // byte-identical structured reports
    CHECK(r1.out.find("\"status\": \"pass\"") != std::string::npos);
    std::remove(f.c_str());
}

TEST_CASE("cli: identity failure exits 1 with a witness") {
    std::string f = tmp_path("hq2_mut.json");
    AlgebraFile a;
    a.H = cyclic_qha(2);
    a.name = "H_q(2) mutated";
    a.H.alpha = a.H.B.unit1();  // alpha := 1
    save_algebra(a, f);
    auto r = run_tool("verify " + f + " --level hopf --format json");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"status\": \"fail\"") != std::string::npos);
    CHECK(r.out.find("antipode-zigzag") != std::string::npos);
    std::remove(f.c_str());
}

TEST_CASE("cli: parse and format errors exit 2") {
    std::string f = tmp_path("garbage.json");
    write_file(f, "{\"not\": \"an algebra\"}");
    CHECK(run_tool("verify " + f).exit_code == 2);
    write_file(f, "not json at all");
    CHECK(run_tool("verify " + f).exit_code == 2);
    std::remove(f.c_str());

    // mismatched cyclotomic order: scalars of the wrong length
    std::string g = tmp_path("mismatch.json");
    AlgebraFile a;
    a.H = cyclic_qha(3);
    a.name = "bad";
    std::string text = serialize_algebra(a);
    // claim order 4 (phi = 2 happens to match) then order 8 (phi = 4 does not)
    auto pos = text.find("\"cyclotomic_order\": 3");
    REQUIRE(pos != std::string::npos);
    std::string bad = text;
    bad.replace(pos, 21, "\"cyclotomic_order\": 8");
    write_file(g, bad);
    CHECK(run_tool("verify " + g).exit_code == 2);
    std::remove(g.c_str());

    // qt level without an r_matrix section
    std::string h = tmp_path("nor.json");
    save_algebra(a, h);
    CHECK(run_tool("verify " + h + " --level qt").exit_code == 2);
    CHECK(run_tool("ribbonize " + h + " -o /dev/null").exit_code == 2);
    std::remove(h.c_str());
}

TEST_CASE("cli: ribbonize emits a loadable, fully verified extension") {
    std::string f = tmp_path("kc2r.json");
    std::string o = tmp_path("kc2r_theta.json");
    auto [H, Ropt] = group_hopf(2, true);
    AlgebraFile a;
    a.H = H;
    a.name = "kC2+R";
    a.r = Ropt->r;
    save_algebra(a, f);
    auto r = run_tool("ribbonize " + f + " -o " + o + " --format json");
    CHECK(r.exit_code == 0);
    AlgebraFile out = load_algebra(o);
    CHECK(out.H.dim() == 4);
    REQUIRE(out.r.has_value());
    CHECK(out.H.B.basis[3] == "g·θ");
    // the emitted file verifies at ribbon level on its own
    auto rv = run_tool("verify " + o + " --level ribbon");
    CHECK(rv.exit_code == 0);
    std::remove(f.c_str());
    std::remove(o.c_str());
}

TEST_CASE("cli: pivotal and traces") {
    std::string f = tmp_path("hq4.json");
    AlgebraFile a;
    a.H = cyclic_qha(4);
    a.name = "H_q(4)";
    save_algebra(a, f);
    auto solve = run_tool("pivotal " + f + " --mode solve --format json");
    CHECK(solve.exit_code == 0);
    CHECK(solve.out.find("pivotal-found") != std::string::npos);
    auto tr = run_tool("traces " + f + " --module regular --format json");
    CHECK(tr.exit_code == 0);
    CHECK(tr.out.find("spherical-verdict") != std::string::npos);
    // supplied candidate g (generator): spherical
    auto cand = run_tool(
        "traces " + f +
        R"( --candidate '[{"num":[0,0],"den":1},{"num":[1,0],"den":1},{"num":[0,0],"den":1},{"num":[0,0],"den":1}]')");
    CHECK(cand.exit_code == 0);
    std::remove(f.c_str());
}

TEST_CASE("cli: ribbon level with a supplied eta") {
    std::string f = tmp_path("kc2r_eta.json");
    auto [H, Ropt] = group_hopf(2, true);
    AlgebraFile a;
    a.H = H;
    a.name = "kC2+R";
    a.r = Ropt->r;
    save_algebra(a, f);
    // eta = g is a ribbon element here
    auto good = run_tool(
        "verify " + f +
        R"( --level ribbon --eta '[{"num":[0],"den":1},{"num":[1],"den":1}]')");
    CHECK(good.exit_code == 0);
    // eta = -g fails the coproduct law
    auto bad = run_tool(
        "verify " + f +
        R"( --level ribbon --eta '[{"num":[0],"den":1},{"num":[-1],"den":1}]')");
    CHECK(bad.exit_code == 1);
    std::remove(f.c_str());
}

TEST_CASE("cli: traces rejects a sovereign but non-spherical candidate") {
    std::string f = tmp_path("hq3_traces.json");
    AlgebraFile a;
    a.H = cyclic_qha(3);
    a.name = "H_q(3)";
    save_algebra(a, f);
    // the unit element is sovereign for this algebra but its traces differ
    auto r = run_tool(
        "traces " + f +
        R"( --candidate '[{"num":[1,0],"den":1},{"num":[0,0],"den":1},{"num":[0,0],"den":1}]' --format json)");
    CHECK(r.exit_code == 1);
    CHECK(r.out.find("\"spherical-verdict\"") != std::string::npos);
    CHECK(r.out.find("no candidate balances") != std::string::npos);
    std::remove(f.c_str());
}

TEST_CASE("cli: traces on a module supplied through the file") {
    std::string f = tmp_path("kc2_mod.json");
    QuasiHopf H = group_hopf(2, false).H;
    AlgebraFile a;
    a.H = H;
    a.name = "kC2";
    a.modules.emplace_back("left", regular_module(H));
    save_algebra(a, f);
    auto r = run_tool("traces " + f + " --module left --format json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("spherical-verdict") != std::string::npos);
    CHECK(run_tool("traces " + f + " --module missing").exit_code == 2);
    std::remove(f.c_str());
}

TEST_CASE("cli: ribbonize the 4-dimensional algebra to dimension 8") {
    std::string f = tmp_path("sw0.json");
    std::string o = tmp_path("sw0_theta.json");
    CHECK(run_tool("example --family sweedler --r-param 0 -o " + f).exit_code == 0);
    auto r = run_tool("ribbonize " + f + " -o " + o);
    CHECK(r.exit_code == 0);
    AlgebraFile out = load_algebra(o);
    CHECK(out.H.dim() == 8);
    std::remove(f.c_str());
    std::remove(o.c_str());
}

TEST_CASE("ribbon pipeline derives a twist on the non-triangular pair") {
    // no eta supplied: the central candidates fail here, but (u g)^{-1} over
    // the pivotal candidates supplies the ribbon element, which is then
    // verified like any other candidate
    auto [H, R] = qh::testutil::kc4_with_r();
    AlgebraFile a;
    a.H = H;
    a.name = "kC4+R";
    a.r = R.r;
    Report rep = run_verify_suite(a, VerifyLevel::ribbon, std::nullopt);
    CHECK(rep.ok());
    bool found = false;
    for (const auto& e : rep.entries())
        if (e.name == "ribbon-element-exists") found = e.pass;
    CHECK(found);
}

TEST_CASE("cli: example families and drinfeld output") {
    std::string f = tmp_path("sw.json");
    CHECK(run_tool("example --family sweedler --r-param 1/2 -o " + f).exit_code == 0);
    AlgebraFile a = load_algebra(f);
    CHECK(a.H.dim() == 4);
    REQUIRE(a.r.has_value());
    auto dr = run_tool("drinfeld " + f);
    CHECK(dr.exit_code == 0);
    CHECK(dr.out.find("\"u\"") != std::string::npos);
    CHECK(run_tool("example --family cyclic -n 1 -o " + f).exit_code == 2);
    CHECK(run_tool("example --family group -n 2 --with-r -o " + f).exit_code == 0);
    AlgebraFile g = load_algebra(f);
    CHECK(g.r.has_value());
    CHECK(run_tool("example --family group -n 3 --with-r -o " + f).exit_code == 2);
    std::remove(f.c_str());
}
