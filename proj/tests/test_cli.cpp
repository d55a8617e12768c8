#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <vector>

#include "dunkl/atoms.hpp"
#include "dunkl/cli.hpp"

using namespace dunkl;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "dunkl");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream ss(text);
    for (std::string l; std::getline(ss, l);) v.push_back(l);
    return v;
}

std::vector<double> split_numbers(const std::string& row) {
    std::vector<double> v;
    std::istringstream ss(row);
    for (std::string cell; std::getline(ss, cell, ',');) v.push_back(std::stod(cell));
    return v;
}

fs::path temp_file(const std::string& name, const std::string& content = {}) {
    fs::path p = fs::temp_directory_path() / ("dunkl_cli_" + name);
    if (!content.empty()) std::ofstream(p, std::ios::binary) << content;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("grid specs") {
    GridSpec lin{GridSpec::Kind::linear, 0.0, 5.0, 64};
    auto v = lin.values();
    REQUIRE(v.size() == 64);
    CHECK(v.front() == 0.0);
    CHECK(v.back() == 5.0);
    GridSpec geo{GridSpec::Kind::geometric, 0.01, 10.0, 4};
    auto g = geo.values();
    CHECK(g[1] == doctest::Approx(0.1));
    CHECK(g.back() == 10.0);
}

TEST_CASE("config merging and validation") {
    RunConfig cfg;
    merge_config(cfg, R"({"lambda": 2, "p": 0.9, "kappa": "auto", "grids": {"z": {"kind": "linear", "lo": 0, "hi": 1, "count": 3}}})");
    CHECK(cfg.lambda == 2.0);
    CHECK_FALSE(cfg.kappa.has_value());
    CHECK(cfg.resolved_kappa() == min_vanishing_order(2.0, 0.9));
    CHECK(cfg.grid("z").count == 3);
    CHECK_NOTHROW(cfg.validate());

    CHECK_THROWS_AS(merge_config(cfg, R"({"lamda": 1})"), ConfigError);
    CHECK_THROWS_AS(merge_config(cfg, R"({"grids": {"w": {}}})"), ConfigError);
    CHECK_THROWS_AS(merge_config(cfg, "not json"), ConfigError);
    CHECK_THROWS_AS(merge_config(cfg, R"({"kappa": 1.5})"), ConfigError);

    RunConfig bad;
    bad.p = 0.6;  // below 2/3 at λ = 1
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.p = 0.7;
    bad.kappa = 0;  // p = 0.7 needs κ = 2
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.kappa = 3;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad = RunConfig{};
    bad.tolerances["unknown_family"] = 1.0;
    CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("eval dunkl-kernel writes one row per z node") {
    auto r = run({"--lambda", "1", "eval", "dunkl-kernel"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    REQUIRE(ls.size() == 65);
    CHECK(ls[0] == "z,value_re,value_im");
    CHECK(r.out.find('\r') == std::string::npos);
    auto last = split_numbers(ls.back());
    CHECK(last[0] == 5.0);
}

TEST_CASE("eval kernel-p at y = 0 is a range error") {
    auto cfg = temp_file("y0.json", R"({"grids": {"y": {"kind": "linear", "lo": 0, "hi": 1, "count": 2}}})");
    auto r = run({"--config", cfg.string(), "eval", "kernel-p"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK_FALSE(r.err.empty());
    // the conjugate kernel accepts the boundary
    CHECK(run({"--config", cfg.string(), "eval", "kernel-q"}).code == 0);
}

TEST_CASE("eval kernel-h header and shape") {
    auto r = run({"eval", "kernel-h"});
    REQUIRE(r.code == 0);
    auto ls = lines(r.out);
    CHECK(ls[0] == "x,t,y,value_re,value_im");
    CHECK(ls.size() == 1 + 7 * 7);
}

TEST_CASE("eval transform of the gaussian profile") {
    for (const char* lambda : {"0.5", "1", "2"}) {
        auto r = run({"--lambda", lambda, "--p", "1", "eval", "transform"});
        REQUIRE(r.code == 0);
        auto ls = lines(r.out);
        REQUIRE(ls.size() == 42);
        CHECK(ls[0] == "xi,value_re,value_im");
        for (std::size_t i = 1; i < ls.size(); ++i) {
            auto row = split_numbers(ls[i]);
            CHECK(std::abs(row[1] - std::exp(-0.5 * row[0] * row[0])) < 1e-6);
            CHECK(std::abs(row[2]) < 1e-6);
        }
    }
}

TEST_CASE("atom command") {
    auto r = run({"--lambda", "1", "--p", "0.7", "--kappa", "auto", "atom"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["kappa"] == 2);

    // byte-identical round trip
    std::string text = r.out.substr(0, r.out.size() - 1);
    CHECK(atom_to_json(atom_from_json(text)) == text);

    auto cfg = temp_file("bad_interval.json", R"({"x0": 2, "delta0": 1})");
    CHECK(run({"--config", cfg.string(), "atom"}).code == 2);
    CHECK(run({"--kappa", "two", "atom"}).code == 2);
}

TEST_CASE("flags override the config file") {
    auto cfg = temp_file("p09.json", R"({"p": 0.9, "x0": 3})");
    auto r = run({"--config", cfg.string(), "--p", "0.8", "atom"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["p"] == 0.8);
    CHECK(j["x0"] == 3.0);
}

TEST_CASE("verify rejects p at or below the critical index") {
    auto r = run({"--p", "0.6", "verify", "--suite", "paley"});
    CHECK(r.code == 2);
    CHECK(r.out.empty());
    CHECK(run({"--lambda", "0.5", "--p", "0.5", "verify", "--suite", "paley"}).code == 2);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"eval", "kernel-z"}).code == 2);
    CHECK(run({"verify", "--suite", "everything"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("verify output is deterministic and finite") {
    auto a = temp_file("decay_a.jsonl");
    auto b = temp_file("decay_b.jsonl");
    auto ra = run({"--seed", "7", "--out", a.string(), "verify", "--suite", "decay"});
    auto rb = run({"--seed", "7", "--out", b.string(), "verify", "--suite", "decay"});
    CHECK(ra.code == rb.code);
    CHECK(ra.out.empty());
    std::string text = slurp(a);
    CHECK_FALSE(text.empty());
    CHECK(text == slurp(b));
    for (const auto& l : lines(text)) {
        auto j = nlohmann::json::parse(l);
        CHECK(j.contains("name"));
        CHECK(std::isfinite(j["computed"].get<double>()));
        CHECK(std::isfinite(j["ratio"].get<double>()));
    }
}

TEST_CASE("estimates suite size and failure listing") {
    auto r = run({"verify", "--suite", "estimates"});
    auto ls = lines(r.out);
    CHECK(ls.size() >= 12);
    bool any_fail = false;
    for (const auto& l : ls) any_fail |= !nlohmann::json::parse(l)["pass"].get<bool>();
    CHECK(r.code == (any_fail ? 1 : 0));
    CHECK(any_fail == (r.err.find("FAIL ") != std::string::npos));
}

TEST_CASE("tolerance overrides reach the reports") {
    auto cfg = temp_file("tol.json", R"({"tolerances": {"estimate_b": 0.5}})");
    auto r = run({"--config", cfg.string(), "verify", "--suite", "estimates"});
    auto first = nlohmann::json::parse(lines(r.out).at(0));
    CHECK(first["params"]["tolerance"] == 0.5);
}
