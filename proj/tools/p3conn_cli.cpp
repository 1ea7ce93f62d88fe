// Command-line front end: single-point evaluations, verification suites, and
// parameter sweeps with machine-readable JSON/CSV output.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "p3conn/acceptance.hpp"
#include "p3conn/json_io.hpp"
#include "p3conn/mbform.hpp"
#include "p3conn/monodromy.hpp"
#include "p3conn/ode.hpp"
#include "p3conn/tau.hpp"

namespace {

constexpr const char* kVersion = "p3conn 1.0.0";

p3conn::cplx parse_complex(const std::string& s) {
    double re = 0, im = 0;
    char comma = 0;
    std::istringstream is(s);
    is >> re;
    if (is >> comma >> im && comma != ',')
        throw p3conn::validation_error("complex values must be \"re,im\": " + s);
    return {re, im};
}

struct Params {
    std::string sigma, eta, alpha, beta;
    double t0 = 1e-4, t1 = 200.0, tol = 1e-12;
    std::string output, format = "json";

    p3conn::MonodromyData monodromy() const {
        const bool has_se = !sigma.empty() || !eta.empty();
        const bool has_ab = !alpha.empty() || !beta.empty();
        if (has_se == has_ab)
            throw p3conn::validation_error(
                "provide exactly one parameterization: --sigma/--eta or --alpha/--beta");
        if (has_se) {
            if (sigma.empty() || eta.empty())
                throw p3conn::validation_error("both --sigma and --eta are required");
            return {parse_complex(sigma), parse_complex(eta)};
        }
        if (alpha.empty() || beta.empty())
            throw p3conn::validation_error("both --alpha and --beta are required");
        return p3conn::cauchy_to_monodromy({parse_complex(alpha), parse_complex(beta)});
    }
};

void add_param_flags(CLI::App* cmd, Params& p) {
    cmd->add_option("--sigma", p.sigma, "sigma as re,im");
    cmd->add_option("--eta", p.eta, "eta as re,im");
    cmd->add_option("--alpha", p.alpha, "alpha as re,im");
    cmd->add_option("--beta", p.beta, "beta as re,im");
    cmd->add_option("--t0", p.t0, "small-x endpoint");
    cmd->add_option("--t1", p.t1, "large-x endpoint");
    cmd->add_option("--tol", p.tol, "local integration tolerance");
    cmd->add_option("-o,--output", p.output, "output file (default stdout)");
    cmd->add_option("--format", p.format, "json or csv");
}

void emit(const Params& p, const std::string& text) {
    if (p.output.empty()) {
        std::cout << text << '\n';
    } else {
        std::ofstream os(p.output);
        os << text << '\n';
    }
}

p3conn::json connect_record(const p3conn::MonodromyData& m) {
    using p3conn::to_json;
    p3conn::json j;
    j["version"] = kVersion;
    j["sigma"] = to_json(m.sigma);
    j["eta"] = to_json(m.eta);
    const auto c = p3conn::cauchy_from_monodromy(m);
    j["alpha"] = to_json(c.alpha);
    j["beta"] = to_json(c.beta);
    const auto st = p3conn::stokes_from_monodromy(m);
    j["p"] = to_json(st.p);
    j["q"] = to_json(st.q);
    j["nu"] = to_json(p3conn::nu_from_monodromy(m));
    const auto a = p3conn::amplitudes_from_monodromy(m);
    j["b_plus"] = to_json(a.b_plus);
    j["b_minus"] = to_json(a.b_minus);
    try {
        j["rho"] = to_json(p3conn::rho_from_monodromy(m).rho);
    } catch (const p3conn::validation_error& e) {
        j["rho"] = p3conn::json{{"error", e.what()}};
    }
    return j;
}

p3conn::json ratio_record(const p3conn::MonodromyData& m, const Params& p) {
    using p3conn::to_json;
    p3conn::json j;
    j["version"] = kVersion;
    j["sigma"] = to_json(m.sigma);
    j["eta"] = to_json(m.eta);
    j["nu"] = to_json(p3conn::nu_from_monodromy(m));
    j["tolerances"] = {{"t0", p.t0}, {"t1", p.t1}, {"tol", p.tol}};
    j["closed_form"] = to_json(p3conn::log_tau_ratio_closed_form(m));
    j["quadrature"] = to_json(p3conn::log_tau_ratio_quadrature(m, p.t0, p.t1, p.tol));
    j["action"] = to_json(p3conn::log_tau_ratio_action(m, p.t0, p.t1, p.tol));
    return j;
}

std::map<std::string, std::string> read_flat_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw p3conn::validation_error("sweep: cannot open config " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(is, line)) {
        const auto h = line.find('#');
        if (h != std::string::npos) line.erase(h);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> v;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) v.push_back(std::stod(tok));
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Painleve III (radial sine-Gordon) connection-problem toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    Params p;
    const char* env_tol = std::getenv("P3CONN_TOL");
    if (env_tol) p.tol = std::atof(env_tol);

    auto* c_connect = app.add_subcommand("connect", "derived parameters from (sigma,eta) or (alpha,beta)");
    auto* c_solve = app.add_subcommand("solve", "integrate the ODE, emit a trajectory CSV");
    auto* c_ratio = app.add_subcommand("ratio", "ln(C_inf/C_0) by all three methods");
    auto* c_verify = app.add_subcommand("verify", "run the full acceptance suite");
    auto* c_mb = app.add_subcommand("mb-check", "Malgrange-Bertola closure defects");
    auto* c_chi = app.add_subcommand("chi", "both chi routes");
    auto* c_sweep = app.add_subcommand("sweep", "grid sweep from a flat config file");
    for (auto* c : {c_connect, c_solve, c_ratio, c_verify, c_mb, c_chi})
        add_param_flags(c, p);
    std::string sweep_config;
    c_sweep->add_option("config", sweep_config, "flat key=value config")->required();
    c_sweep->add_option("-o,--output", p.output, "output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_connect->parsed()) {
            emit(p, connect_record(p.monodromy()).dump(2));
        } else if (c_solve->parsed()) {
            const auto m = p.monodromy();
            p3conn::require_valid(m);
            const auto c = p3conn::cauchy_from_monodromy(m);
            const auto t = p3conn::integrate(c, std::max(p.t0, 1e-3), p.t1, p.tol);
            std::ostringstream os;
            p3conn::write_trajectory_csv(os, t);
            emit(p, os.str());
        } else if (c_ratio->parsed()) {
            emit(p, ratio_record(p.monodromy(), p).dump(2));
        } else if (c_chi->parsed()) {
            const auto m = p.monodromy();
            p3conn::json j;
            j["version"] = kVersion;
            j["chi_direct"] = p3conn::to_json(p3conn::chi_constant(m));
            j["chi_via_ratio"] = p3conn::to_json(std::exp(p3conn::log_chi_via_ratio(m)));
            emit(p, j.dump(2));
        } else if (c_mb->parsed()) {
            const auto m = p.monodromy();
            const auto rep = p3conn::closure_check({1.0, 5.0, 20.0}, m, 1e-3, p.tol);
            p3conn::json j;
            j["version"] = kVersion;
            j["x_list"] = rep.x_list;
            j["domega_defect"] = rep.domega_defect;
            j["bracket_drift"] = rep.bracket_drift;
            j["bracket_vs_limit"] = rep.bracket_vs_limit;
            j["w_closure_defect"] = rep.w_closure_defect;
            j["max_defect"] = rep.max_defect();
            emit(p, j.dump(2));
        } else if (c_verify->parsed()) {
            const auto results = p3conn::acceptance::run_all();
            p3conn::json j;
            j["version"] = kVersion;
            bool all = true;
            p3conn::json arr = p3conn::json::array();
            for (const auto& r : results) {
                arr.push_back({{"id", r.id},
                               {"name", r.name},
                               {"pass", r.pass},
                               {"worst", r.worst},
                               {"tolerance", r.tolerance},
                               {"detail", r.detail}});
                all = all && r.pass;
            }
            j["criteria"] = arr;
            j["all_pass"] = all;
            emit(p, j.dump(2));
            if (!all) return 2;
        } else if (c_sweep->parsed()) {
            const auto kv = read_flat_config(sweep_config);
            const auto sig = parse_list(kv.at("sigma"));
            const auto eta = parse_list(kv.at("eta"));
            Params sp = p;
            if (kv.count("t0")) sp.t0 = std::stod(kv.at("t0"));
            if (kv.count("t1")) sp.t1 = std::stod(kv.at("t1"));
            if (kv.count("tol")) sp.tol = std::stod(kv.at("tol"));
            const std::string cmd = kv.count("command") ? kv.at("command") : "ratio";
            std::vector<p3conn::MonodromyData> pts;
            for (double s : sig)
                for (double e : eta) pts.push_back({s, e});
            std::vector<std::future<p3conn::json>> futs;
            for (const auto& m : pts)
                futs.push_back(std::async(std::launch::async, [m, sp, cmd] {
                    return cmd == "connect" ? connect_record(m) : ratio_record(m, sp);
                }));
            p3conn::json arr = p3conn::json::array();
            for (auto& f : futs) arr.push_back(f.get());
            p3conn::json j;
            j["version"] = kVersion;
            j["results"] = arr;
            emit(p, j.dump(2));
        }
    } catch (const p3conn::validation_error& e) {
        p3conn::json j{{"error", "validation"}, {"message", e.what()}};
        std::cerr << j.dump(2) << '\n';
        return 1;
    } catch (const p3conn::convergence_error& e) {
        p3conn::json j{{"error", "non-convergence"}, {"message", e.what()}};
        std::cerr << j.dump(2) << '\n';
        return 2;
    }
    return 0;
}
