#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "zst/errors.hpp"
#include "zst/io.hpp"

using namespace zst;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args, const std::string& out = "") {
    std::string cmd = std::string(ZS_TSPEC_BIN) + " " + args + " > " + (out.empty() ? "/dev/null" : out) + " 2>/dev/null";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path tmp(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "zs_tspec_tests";
    fs::create_directories(d);
    return d / name;
}

}  // namespace

TEST_CASE("floats are written with 15 digits after the point") {
    CHECK(dump(Json(0.1), 0) == "1.000000000000000e-01\n");
    CHECK(dump(Json::array({1.0, -2.5}), 0).find("-2.500000000000000e+00") != std::string::npos);
    CHECK(dump(Json(3), 0) == "3\n");
}

TEST_CASE("potential JSON round trip") {
    std::mt19937_64 rng(51);
    const Potential p = Potential::random(2, 1.0, rng);
    const Potential q = potential_from_json(Json::parse(dump(to_json(p))));
    for (int i = 0; i < 4; ++i)
        for (int k = -2; k <= 2; ++k) CHECK(std::abs(q.psi[i][k] - p.psi[i][k]) < 1e-14 * std::max(1.0, std::abs(p.psi[i][k])));

    const SingleExp s = figure_params("3b");
    const Potential a = s.potential(), b = potential_from_json(to_json(s));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(a.psi[i][-1] - b.psi[i][-1]) < 1e-15);
}

TEST_CASE("potential sources") {
    CHECK(load_potential("zero").is_zero());
    CHECK(load_potential("figure:3a").order() == 1);
    const Potential r1 = load_potential("random:3:1.5:7"), r2 = load_potential("random:3:1.5:7");
    CHECK(r1.h1_norm() == doctest::Approx(1.5));
    CHECK(std::abs(r1.psi[2][1] - r2.psi[2][1]) == 0);
    const Potential inl = load_potential(R"({"singleexp": {"sigma": -1, "alpha": [0.5, 0], "c": [0, 1.0]}})");
    CHECK(inl.psi[0][-1] == cplx(0.5, 0));

    CHECK_THROWS_AS(load_potential("figure:9z"), ParseError);
    CHECK_THROWS_AS(load_potential("random:x"), ParseError);
    CHECK_THROWS_AS(load_potential("{not json"), ParseError);
    CHECK_THROWS_AS(load_potential(R"({"K": 1, "coeffs": [[0, 0, 0]]})"), ParseError);
    CHECK_THROWS_AS(load_potential(R"({"K": 1, "coeffs": [[0,0],[0,0,0],[0,0,0],[0,0,0]]})"), ParseError);
    CHECK_THROWS_AS(load_potential(R"({"singleexp": {"sigma": 2, "alpha": 1}})"), ParseError);
    CHECK_THROWS_AS(load_potential(R"({"singleexp": {"sigma": 1, "omega": 1.0, "alpha": 1}})"), ParseError);
    CHECK_THROWS_AS(load_potential("/nonexistent/psi.json"), IoError);
}

TEST_CASE("spectrum JSON layout") {
    LabeledEigenvalue e;
    e.value = cplx(1, -2);
    e.i = 2;
    e.n = -3;
    e.sign = 1;
    e.mult = 2;
    const Json j = to_json(e);
    CHECK(j["kind"] == "periodic");
    CHECK(j["sign"] == "+");
    CHECK(j["value"][1].get<double>() == -2.0);
    CHECK(j.begin().key() == "kind");
    e.kind = Kind::Dirichlet;
    e.sign = 0;
    CHECK(to_json(e)["sign"] == "none");
}

TEST_CASE("cli: output is deterministic and exit codes are distinct") {
    const auto a = tmp("a.json"), b = tmp("b.json");
    CHECK(run("spectrum --potential zero --kind dirichlet --nmax 3", a.string()) == 0);
    CHECK(run("spectrum --potential zero --kind dirichlet --nmax 3 --out " + b.string()) == 0);
    CHECK(read_file(a.string()) == read_file(b.string()));
    const Json j = Json::parse(read_file(a.string()));
    CHECK(j["kind"] == "dirichlet");
    CHECK(j["eigenvalues"].size() == 2 * (2 * 0 + 1) + 4 * 3);

    CHECK(run("spectrum --potential zero --kind periodic --nmax 2 --format csv", a.string()) == 0);
    CHECK(read_file(a.string()).rfind("kind,i,n,sign,mult,re,im,residual", 0) == 0);

    // input errors
    CHECK(run("spectrum --potential /nonexistent.json") == 1);
    CHECK(run("spectrum --potential '{bad'") == 1);
    CHECK(run("spectrum --kind floquet") == 1);
    CHECK(run("nosuchcommand") == 1);
    // the counting lemma cannot hold with N <= 1 for a large potential
    CHECK(run("spectrum --potential random:4:30:1 --kind periodic --nmax 1") == 2);

    CHECK(run("validate --suite sign", a.string()) == 0);
    CHECK(run("conserve --plane-wave sigma=1,alpha=0.3,mode=-1 --xmax 0.25 --steps 5", a.string()) == 0);
    CHECK(run("conserve --plane-wave sigma=1,alpha=0.3,mode=-1 --xmax 0.25 --drift-tol 1e-30") == 3);
    CHECK(run("zeroset --potential figure:3b --n -1", a.string()) == 0);
    const Json z = Json::parse(read_file(a.string()));
    CHECK(z.dump().find("crossing") != std::string::npos);
}
