#include "kamrfp/model.hpp"
#include "kamrfp/oracle.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>

namespace {

using kamrfp::Rat;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;     // parse or validation failure
constexpr int kExitBudget = 3;    // enumeration budget or variable cap hit
constexpr int kExitInternal = 4;  // invariant violation inside the solver

double ms_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

kamrfp::Network load_network(const std::string& path, const std::string& format) {
    std::ifstream in(path);
    if (!in) throw kamrfp::ParseError("cannot open '" + path + "'");
    return kamrfp::parse_network(
        in, format == "json" ? kamrfp::NetworkFormat::Json : kamrfp::NetworkFormat::Dimacs);
}

json flow_to_json(const kamrfp::Flow& flow, bool with_float) {
    json arr = json::array();
    for (std::size_t i = 0; i < flow.values.size(); ++i) {
        json entry{{"arc", i + 1}, {"value", kamrfp::rat_to_string(flow.values[i])}};
        if (with_float) entry["value_float"] = flow.values[i].convert_to<double>();
        arr.push_back(std::move(entry));
    }
    return arr;
}

void put_rat(json& doc, const std::string& key, const Rat& value, bool with_float) {
    doc[key] = kamrfp::rat_to_string(value);
    if (with_float) doc[key + "_float"] = value.convert_to<double>();
}

struct SolveArgs {
    int k = 0;
    std::string mode = "two-phase";
    std::string format = "dimacs";
    bool no_certify = false;
    bool with_float = false;
    std::size_t max_vars = 50000;
    unsigned long long budget = 1'000'000;
    unsigned jobs = 1;
    std::string file;
};

int run_solve(const SolveArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const kamrfp::Network net = load_network(args.file, args.format);
    const double parse_ms = ms_since(t0);

    kamrfp::SolveOptions options;
    options.mode = args.mode == "combined" ? kamrfp::ObjectiveMode::Combined
                                           : kamrfp::ObjectiveMode::TwoPhase;
    options.certify = !args.no_certify;
    options.max_variables = args.max_vars;
    options.attack_budget = args.budget;
    options.attack_threads = args.jobs;

    kamrfp::SolveTimings timings;
    const kamrfp::Solution sol = kamrfp::solve_kamrfp(net, args.k, options, &timings);

    const int m = net.arc_count();
    const unsigned long long scenarios = kamrfp::ScenarioIndex::binomial(m, args.k);
    const unsigned long long variables =
        static_cast<unsigned long long>(m + 2) + scenarios * (m + 1 - args.k);

    json doc;
    doc["command"] = "solve";
    doc["n"] = net.vertex_count();
    doc["m"] = m;
    doc["k"] = args.k;
    doc["mode"] = args.mode;
    doc["scenarios"] = scenarios;
    doc["variables"] = variables;
    put_rat(doc, "fstar", sol.fstar, args.with_float);
    put_rat(doc, "theta", sol.theta, args.with_float);
    put_rat(doc, "loss", sol.loss, args.with_float);
    doc["flow"] = flow_to_json(sol.flow, args.with_float);
    doc["worst_attack"] = sol.worst_attack;
    doc["certified"] = sol.certified;
    doc["timings_ms"] = {{"parse", parse_ms},
                         {"fstar", timings.fstar_ms},
                         {"build", timings.build_ms},
                         {"solve", timings.solve_ms},
                         {"certify", timings.certify_ms}};
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

struct AttackArgs {
    int k = 0;
    std::string flow_file;
    std::string format = "dimacs";
    bool with_float = false;
    unsigned long long budget = 1'000'000;
    unsigned jobs = 1;
    std::string file;
};

int run_attack(const AttackArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const kamrfp::Network net = load_network(args.file, args.format);
    std::ifstream fin(args.flow_file);
    if (!fin) throw kamrfp::ParseError("cannot open '" + args.flow_file + "'");
    const kamrfp::Flow flow = kamrfp::parse_flow(fin, net);
    const double parse_ms = ms_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    const kamrfp::AttackReport report =
        kamrfp::worst_case(net, flow, args.k, {args.budget, args.jobs});

    json doc;
    doc["command"] = "attack";
    doc["n"] = net.vertex_count();
    doc["m"] = net.arc_count();
    doc["k"] = args.k;
    doc["subsets_evaluated"] = report.subsets_evaluated;
    put_rat(doc, "attacked_flow_value", report.attacked_flow_value, args.with_float);
    put_rat(doc, "residual", report.residual, args.with_float);
    put_rat(doc, "loss", report.loss, args.with_float);
    doc["worst_attack"] = report.worst_attack;
    doc["timings_ms"] = {{"parse", parse_ms}, {"enumerate", ms_since(t1)}};
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

struct OracleArgs {
    std::string tol = "1/1000000";
    std::string format = "dimacs";
    bool with_float = false;
    std::string file;
};

int run_oracle_k1(const OracleArgs& args) {
    const kamrfp::Network net = load_network(args.file, args.format);
    const Rat tolerance = kamrfp::parse_rational(args.tol);
    const Rat fstar = kamrfp::max_flow(net).value;

    json doc;
    doc["command"] = "oracle-k1";
    doc["n"] = net.vertex_count();
    doc["m"] = net.arc_count();
    put_rat(doc, "fstar", fstar, args.with_float);
    doc["tolerance"] = kamrfp::rat_to_string(tolerance);
    if (fstar == 0) {
        doc["skipped"] = true;
    } else {
        const Rat lambda = kamrfp::k1_bisection_oracle(net, tolerance);
        doc["skipped"] = false;
        put_rat(doc, "lambda", lambda, args.with_float);
        put_rat(doc, "implied_theta", fstar - lambda, args.with_float);
    }
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact solver for adaptive maximum flow under k-arc destruction"};
    app.require_subcommand(1);

    SolveArgs solve_args;
    auto* solve = app.add_subcommand("solve", "Solve the robust flow problem and certify");
    solve->add_option("-k", solve_args.k, "Number of destroyed arcs")->required();
    solve->add_option("--mode", solve_args.mode, "Objective mode")
        ->check(CLI::IsMember({"two-phase", "combined"}));
    solve->add_option("--format", solve_args.format, "Input format")
        ->check(CLI::IsMember({"dimacs", "json"}));
    solve->add_flag("--no-certify", solve_args.no_certify, "Skip attack-oracle certification");
    solve->add_flag("--float", solve_args.with_float, "Add decimal approximations");
    solve->add_option("--max-vars", solve_args.max_vars, "LP variable cap");
    solve->add_option("--budget", solve_args.budget, "Attack enumeration budget");
    solve->add_option("--jobs", solve_args.jobs, "Enumeration worker threads");
    solve->add_option("file", solve_args.file, "Network file")->required();

    AttackArgs attack_args;
    auto* attack = app.add_subcommand("attack", "Exhaustive worst-case attack on a given flow");
    attack->add_option("-k", attack_args.k, "Number of destroyed arcs")->required();
    attack->add_option("--flow", attack_args.flow_file, "Flow file")->required();
    attack->add_option("--format", attack_args.format, "Input format")
        ->check(CLI::IsMember({"dimacs", "json"}));
    attack->add_flag("--float", attack_args.with_float, "Add decimal approximations");
    attack->add_option("--budget", attack_args.budget, "Attack enumeration budget");
    attack->add_option("--jobs", attack_args.jobs, "Enumeration worker threads");
    attack->add_option("file", attack_args.file, "Network file")->required();

    OracleArgs oracle_args;
    auto* oracle = app.add_subcommand("oracle-k1", "Bisection cross-check for k = 1");
    oracle->add_option("--tol", oracle_args.tol, "Bisection tolerance (rational)");
    oracle->add_option("--format", oracle_args.format, "Input format")
        ->check(CLI::IsMember({"dimacs", "json"}));
    oracle->add_flag("--float", oracle_args.with_float, "Add decimal approximations");
    oracle->add_option("file", oracle_args.file, "Network file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (solve->parsed()) return run_solve(solve_args);
        if (attack->parsed()) return run_attack(attack_args);
        return run_oracle_k1(oracle_args);
    } catch (const kamrfp::ModelTooLarge& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const kamrfp::BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBudget;
    } catch (const kamrfp::ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const kamrfp::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::logic_error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
}
