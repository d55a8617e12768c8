#include "dunkl/cli.hpp"

#include <algorithm>
#include <charconv>
#include <complex>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dunkl/atoms.hpp"
#include "dunkl/kernels.hpp"
#include "dunkl/transform.hpp"

namespace dunkl {

std::vector<double> GridSpec::values() const {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) {
        double f = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        out[i] = kind == Kind::linear ? lo + (hi - lo) * f : lo * std::pow(hi / lo, f);
    }
    if (count > 1) out.back() = hi;
    return out;
}

RunConfig::RunConfig() {
    using K = GridSpec::Kind;
    grids["x"] = {K::linear, -3.0, 3.0, 7};
    grids["t"] = {K::linear, 0.05, 3.05, 7};
    grids["y"] = {K::geometric, 0.01, 10.0, 4};
    grids["z"] = {K::linear, 0.0, 5.0, 64};
    grids["xi"] = {K::linear, 0.0, 4.0, 41};
    grids["dilations"] = {K::geometric, 0.5, 4.0, 4};
    grids["paley_xi"] = {K::geometric, 1e-3, 1e3, 2048};
}

int RunConfig::resolved_kappa() const { return kappa ? *kappa : min_vanishing_order(lambda, p); }

const GridSpec& RunConfig::grid(const std::string& name) const {
    auto it = grids.find(name);
    if (it == grids.end()) throw ConfigError("missing grid '" + name + "'");
    return it->second;
}

void RunConfig::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be a finite number > 0");
    double p_min = 2.0 * lambda / (2.0 * lambda + 1.0);
    if (!(p > p_min && p <= 1.0))
        throw ConfigError("p must lie in (2λ/(2λ+1), 1] = (" + std::to_string(p_min) + ", 1]");
    if (kappa && (*kappa < 0 || *kappa % 2 != 0)) throw ConfigError("kappa must be even and >= 0");
    if (kappa && *kappa < min_vanishing_order(lambda, p))
        throw ConfigError("kappa must be at least " + std::to_string(min_vanishing_order(lambda, p)) +
                          " for this (lambda, p)");
    Interval(x0, delta0);  // throws DomainError when delta0 >= |x0|/2
    for (const auto& [name, g] : grids) {
        if (g.count < 1) throw ConfigError("grid '" + name + "': count must be >= 1");
        if (!std::isfinite(g.lo) || !std::isfinite(g.hi) || g.lo > g.hi)
            throw ConfigError("grid '" + name + "': need finite lo <= hi");
        if (g.count > 1 && g.lo == g.hi) throw ConfigError("grid '" + name + "': lo == hi needs count 1");
        if (g.kind == GridSpec::Kind::geometric && !(g.lo > 0.0))
            throw ConfigError("grid '" + name + "': geometric grids need lo > 0");
    }
    for (const auto& [family, tol] : tolerances) {
        const auto& known = report_families();
        if (std::find(known.begin(), known.end(), family) == known.end())
            throw ConfigError("unknown report family '" + family + "' in tolerances");
        if (!(tol >= 0.0) || !std::isfinite(tol)) throw ConfigError("tolerance for " + family + " must be >= 0");
    }
    if (profile != "gaussian" && profile != "bump" && profile != "atom")
        throw ConfigError("profile must be gaussian, bump or atom");
}

SuiteConfig RunConfig::suite_config() const {
    SuiteConfig s;
    s.lambda = lambda;
    s.p = p;
    s.kappa = kappa ? *kappa : -1;
    s.x0 = x0;
    s.delta0 = delta0;
    s.dilations = grid("dilations").values();
    s.y_grid = grid("y").values();
    for (double y : s.y_grid)
        if (!(y > 0.0)) throw ConfigError("grid 'y' must be positive for verification");
    s.paley_p = p == 1.0 ? std::vector<double>{1.0} : std::vector<double>{1.0, p};
    const GridSpec& px = grid("paley_xi");
    if (px.kind != GridSpec::Kind::geometric) throw ConfigError("grid 'paley_xi' must be geometric");
    s.paley = {px.lo, px.hi, px.count};
    s.seed = seed;
    s.tolerances = tolerances;
    return s;
}

void merge_config(RunConfig& cfg, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    auto number = [](const nlohmann::json& v, const std::string& key) {
        if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
        return v.get<double>();
    };
    for (const auto& [key, v] : j.items()) {
        if (key == "lambda") cfg.lambda = number(v, key);
        else if (key == "p") cfg.p = number(v, key);
        else if (key == "x0") cfg.x0 = number(v, key);
        else if (key == "delta0") cfg.delta0 = number(v, key);
        else if (key == "kappa") {
            if (v.is_string() && v.get<std::string>() == "auto") cfg.kappa.reset();
            else if (v.is_number_integer()) cfg.kappa = v.get<int>();
            else throw ConfigError("config key 'kappa' must be an integer or \"auto\"");
        } else if (key == "seed") {
            if (!v.is_number_unsigned()) throw ConfigError("config key 'seed' must be a non-negative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else if (key == "profile") {
            if (!v.is_string()) throw ConfigError("config key 'profile' must be a string");
            cfg.profile = v.get<std::string>();
        } else if (key == "tolerances") {
            if (!v.is_object()) throw ConfigError("config key 'tolerances' must be an object");
            for (const auto& [family, tol] : v.items()) cfg.tolerances[family] = number(tol, "tolerances." + family);
        } else if (key == "grids") {
            if (!v.is_object()) throw ConfigError("config key 'grids' must be an object");
            for (const auto& [name, entry] : v.items()) {
                if (!cfg.grids.count(name)) throw ConfigError("unknown grid '" + name + "'");
                GridSpec g;
                for (const auto& [gk, gv] : entry.items()) {
                    if (gk == "kind") {
                        std::string kind = gv.is_string() ? gv.get<std::string>() : "";
                        if (kind == "linear") g.kind = GridSpec::Kind::linear;
                        else if (kind == "geometric") g.kind = GridSpec::Kind::geometric;
                        else throw ConfigError("grid '" + name + "': kind must be linear or geometric");
                    } else if (gk == "lo") g.lo = number(gv, name + ".lo");
                    else if (gk == "hi") g.hi = number(gv, name + ".hi");
                    else if (gk == "count") {
                        if (!gv.is_number_integer()) throw ConfigError("grid '" + name + "': count must be an integer");
                        g.count = gv.get<int>();
                    } else throw ConfigError("grid '" + name + "': unknown key '" + gk + "'");
                }
                cfg.grids[name] = g;
            }
        } else {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
}

namespace {

struct NumericFailure : std::runtime_error {
    NumericFailure(const std::string& what, std::string report_line)
        : std::runtime_error(what), report(std::move(report_line)) {}
    std::string report;
};

std::string csv_real(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

class Csv {
public:
    explicit Csv(std::initializer_list<const char*> header) {
        bool first = true;
        for (const char* h : header) {
            text_ += first ? "" : ",";
            text_ += h;
            first = false;
        }
        text_ += '\n';
    }
    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            text_ += first ? "" : ",";
            text_ += csv_real(v);
            first = false;
        }
        text_ += '\n';
    }
    const std::string& text() const { return text_; }

private:
    std::string text_;
};

// Runs one evaluation; numeric exceptions become a failing JSON report.
template <class F>
double guarded(const std::string& subject, std::initializer_list<std::pair<const char*, double>> at, F&& f) {
    try {
        double v = f();
        if (!std::isfinite(v)) throw ConvergenceError("non-finite value", {});
        return v;
    } catch (const DomainError&) {
        throw;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j;
        j["name"] = "eval:" + subject;
        j["pass"] = false;
        for (auto [k, v] : at) j["params"][k] = v;
        j["params"]["error"] = e.what();
        throw NumericFailure(e.what(), j.dump());
    }
}

GridFunction transform_input(const RunConfig& cfg, const DunklParam& dp) {
    if (cfg.profile == "gaussian")
        return GridFunction(-12.0, 12.0, [](double x) { return std::exp(-0.5 * x * x); }, "gaussian");
    if (cfg.profile == "bump")
        return GridFunction(-1.0, 1.0, [](double x) { return std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0; },
                            "bump");
    Atom a = make_atom(dp, cfg.p, Interval(cfg.x0, cfg.delta0), cfg.resolved_kappa());
    return GridFunction(a.interval().lo(), a.interval().hi(), [a](double t) { return a(t); }, "atom");
}

std::string cmd_eval(const std::string& subject, const RunConfig& cfg) {
    DunklParam dp(cfg.lambda);
    if (subject == "dunkl-kernel") {
        Csv csv{"z", "value_re", "value_im"};
        auto z = cfg.grid("z").values();
        std::vector<std::complex<double>> v(z.size());
        for (std::size_t i = 0; i < z.size(); ++i) v[i] = dunkl_kernel(dp, z[i]);
        for (std::size_t i = 0; i < z.size(); ++i) csv.row({z[i], v[i].real(), v[i].imag()});
        return csv.text();
    }
    if (subject == "transform") {
        auto xi = cfg.grid("xi").values();
        auto sf = dunkl_transform(transform_input(cfg, dp), dp, xi);
        if (sf.flagged) {
            nlohmann::ordered_json j;
            j["name"] = "eval:transform";
            j["pass"] = false;
            j["params"]["error"] = "node cap reached before the quadrature settled";
            throw NumericFailure("transform did not converge", j.dump());
        }
        Csv csv{"xi", "value_re", "value_im"};
        for (std::size_t i = 0; i < xi.size(); ++i) csv.row({xi[i], sf.values[i].real(), sf.values[i].imag()});
        return csv.text();
    }

    auto xs = cfg.grid("x").values();
    auto ts = cfg.grid("t").values();
    Csv csv{"x", "t", "y", "value_re", "value_im"};
    if (subject == "kernel-h") {
        for (double x : xs)
            for (double t : ts)
                csv.row({x, t, 0.0, guarded(subject, {{"x", x}, {"t", t}}, [&] { return hilbert_kernel(dp, x, t); }),
                         0.0});
        return csv.text();
    }
    auto ys = cfg.grid("y").values();
    bool conj = subject == "kernel-q";
    for (double y : ys) {
        if (conj ? !(y >= 0.0) : !(y > 0.0))
            throw ConfigError(std::string("eval ") + subject + ": grid 'y' must be " + (conj ? ">= 0" : "> 0"));
    }
    for (double x : xs)
        for (double t : ts)
            for (double y : ys) {
                double v = guarded(subject, {{"x", x}, {"t", t}, {"y", y}}, [&] {
                    return conj ? conj_poisson_kernel(dp, x, y, t) : poisson_kernel(dp, x, y, t);
                });
                csv.row({x, t, y, v, 0.0});
            }
    return csv.text();
}

std::string cmd_atom(const RunConfig& cfg) {
    Atom a = make_atom(DunklParam(cfg.lambda), cfg.p, Interval(cfg.x0, cfg.delta0), cfg.resolved_kappa());
    return atom_to_json(a) + "\n";
}

std::string cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& err, bool& all_pass) {
    auto reports = run_suite(parse_suite(suite), cfg.suite_config());
    std::string text;
    all_pass = true;
    for (const auto& r : reports) {
        text += to_json_line(r);
        text += '\n';
        if (!r.pass) {
            all_pass = false;
            err << "FAIL " << r.name << " ratio=" << r.ratio << " tolerance=" << r.number("tolerance") << '\n';
        }
    }
    return text;
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open output file " + path);
    f << text;
    if (!f) throw ConfigError("failed writing " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kernels, transforms and verification suites of rank-one Dunkl analysis", "dunkl"};
    std::string config_path, out_path, kappa_flag, suite = "all", subject;
    std::optional<double> lambda, p;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", config_path, "JSON run configuration");
    app.add_option("--out", out_path, "output file (default: standard output)");
    app.add_option("--lambda", lambda, "multiplicity parameter λ > 0");
    app.add_option("--p", p, "Hardy exponent in (2λ/(2λ+1), 1]");
    app.add_option("--kappa", kappa_flag, "vanishing-moment order or 'auto'");
    app.add_option("--seed", seed, "seed for randomized sweep points");
    app.add_option("--suite", suite, "verification suite")
        ->check(CLI::IsMember({"estimates", "atoms", "decay", "paley", "all"}));
    auto* eval = app.add_subcommand("eval", "evaluate a kernel or transform on the configured grids (CSV)");
    eval->add_option("subject", subject, "kernel-h, kernel-p, kernel-q, dunkl-kernel or transform")
        ->required()
        ->check(CLI::IsMember({"kernel-h", "kernel-p", "kernel-q", "dunkl-kernel", "transform"}));
    auto* atom = app.add_subcommand("atom", "construct the configured atom (JSON)");
    auto* verify = app.add_subcommand("verify", "run a verification suite (JSON lines)");
    for (auto* sub : {eval, atom, verify}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }

    try {
        RunConfig cfg;
        if (!config_path.empty()) merge_config(cfg, read_file(config_path));
        if (lambda) cfg.lambda = *lambda;
        if (p) cfg.p = *p;
        if (seed) cfg.seed = *seed;
        if (!kappa_flag.empty()) {
            if (kappa_flag == "auto") {
                cfg.kappa.reset();
            } else {
                int k = 0;
                auto res = std::from_chars(kappa_flag.data(), kappa_flag.data() + kappa_flag.size(), k);
                if (res.ec != std::errc{} || res.ptr != kappa_flag.data() + kappa_flag.size())
                    throw ConfigError("--kappa must be an integer or 'auto'");
                cfg.kappa = k;
            }
        }
        cfg.validate();

        if (eval->parsed()) {
            write_output(out_path, cmd_eval(subject, cfg), out);
            return 0;
        }
        if (atom->parsed()) {
            write_output(out_path, cmd_atom(cfg), out);
            return 0;
        }
        bool all_pass = true;
        write_output(out_path, cmd_verify(suite, cfg, err, all_pass), out);
        return all_pass ? 0 : 1;
    } catch (const NumericFailure& e) {
        err << e.report << '\n';
        return 3;
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return 2;
    } catch (const DomainError& e) {
        err << "range error: " << e.what() << '\n';
        return 2;
    } catch (const UnsupportedInput& e) {
        err << "unsupported input: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        nlohmann::ordered_json j;
        j["name"] = "run";
        j["pass"] = false;
        j["params"]["error"] = e.what();
        err << j.dump() << '\n';
        return 3;
    }
}

}  // namespace dunkl
