// Command line front end: solve instances, check solutions against them,
// emit generator output, and benchmark the tree solver.

#include "CLI11.hpp"
#include "json.hpp"

#include "ivd/generators.hpp"
#include "ivd/oracle.hpp"
#include "ivd/tree_solver.hpp"
#include "ivd/two_sat.hpp"
#include "ivd/voronoi.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

// Exit codes: 0 decided/valid, 1 invalid solution, 2 budget exceeded,
// 64 usage or input errors, 70 internal errors.
constexpr int exit_budget = 2;
constexpr int exit_usage = 64;
constexpr int exit_internal = 70;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_text(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw UsageError("cannot open " + path);
        ss << in.rdbuf();
    }
    return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << text << "\n";
}

std::vector<long long> parse_list(const std::string& csv, std::size_t want = 0) {
    std::vector<long long> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos == 0 || pos != item.size()) throw UsageError("not an integer list: " + csv);
        out.push_back(v);
    }
    if (out.empty()) throw UsageError("empty integer list");
    if (want != 0 && out.size() != want)
        throw UsageError("expected " + std::to_string(want) + " integers in: " + csv);
    return out;
}

ivd::Instance load_instance(const std::string& path) {
    ivd::Instance inst = ivd::parse_instance(read_text(path));
    auto violations = ivd::validate_instance(inst);
    if (!violations.empty())
        throw UsageError("invalid instance: " + violations.front().to_string());
    return inst;
}

int run_solve(const std::string& input, const std::string& algo, long long budget,
              const std::string& output) {
    ivd::Instance inst = load_instance(input);
    std::string pick = algo;
    if (pick == "auto") {
        if (inst.kind == ivd::Kind::tree)
            pick = "tree";
        else if (ivd::open_cell_status(inst) != ivd::OpenCellStatus::large_cell)
            pick = "sat2";
        else
            pick = "brute";
    }
    std::optional<ivd::Solution> sol;
    if (pick == "tree") {
        if (inst.kind != ivd::Kind::tree) throw UsageError("--algo tree needs a tree instance");
        sol = ivd::solve(inst);
    } else if (pick == "sat2") {
        if (ivd::open_cell_status(inst) == ivd::OpenCellStatus::large_cell)
            throw UsageError("--algo sat2 needs at most two unshared vertices per cell");
        sol = ivd::solve_via_2sat(inst);
    } else {
        sol = ivd::brute_force_solve(inst, budget);
    }
    write_text(output, sol ? ivd::serialize_solution(*sol) : std::string(R"({"answer":"no"})"));
    return 0;
}

int run_check(const std::string& input, const std::string& solution) {
    ivd::Instance inst = load_instance(input);
    ivd::Solution sol = ivd::parse_solution(read_text(solution));
    if (static_cast<int>(sol.sites.size()) != inst.k())
        throw UsageError("solution lists " + std::to_string(sol.sites.size()) +
                         " sites but the instance has " + std::to_string(inst.k()) + " cells");
    bool ok = ivd::check_solution(inst, sol);
    std::cout << (ok ? "valid" : "invalid") << "\n";
    return ok ? 0 : 1;
}

struct BenchRow {
    int n = 0;
    int k = 0;
    bool yes = false;
    double ms = 0.0;
    ivd::SolveStats stats;
};

int pool_size() {
    if (const char* env = std::getenv("IVD_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

int run_bench(const std::string& sizes_csv, std::uint64_t seed, int kdiv, long long max_len,
              const std::string& json_path) {
    std::vector<long long> sizes = parse_list(sizes_csv);
    for (long long n : sizes)
        if (n < 2) throw UsageError("benchmark sizes must be at least 2");
    if (kdiv < 1) throw UsageError("--kdiv must be positive");

    std::vector<BenchRow> rows(sizes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= sizes.size()) return;
            int n = static_cast<int>(sizes[i]);
            int k = std::max(1, n / kdiv);
            ivd::PlantedInstance made =
                ivd::gen_random_tree_yes(n, k, max_len, seed + static_cast<std::uint64_t>(i));
            ivd::SolveStats st;
            auto t0 = std::chrono::steady_clock::now();
            auto sol = ivd::solve(made.instance, &st);
            auto t1 = std::chrono::steady_clock::now();
            rows[i] = {n, k, sol.has_value(),
                       std::chrono::duration<double, std::milli>(t1 - t0).count(), st};
        }
    };
    std::vector<std::thread> pool;
    int threads = std::min<std::size_t>(pool_size(), sizes.size());
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    std::cout << std::setw(9) << "n" << std::setw(7) << "k" << std::setw(12) << "time_ms"
              << std::setw(12) << "expansions" << std::setw(14) << "sum_min" << std::setw(12)
              << "max_family" << std::setw(8) << "answer"
              << "\n";
    for (const BenchRow& r : rows)
        std::cout << std::setw(9) << r.n << std::setw(7) << r.k << std::setw(12) << std::fixed
                  << std::setprecision(2) << r.ms << std::setw(12) << r.stats.expansions
                  << std::setw(14) << r.stats.sum_min_subtree << std::setw(12)
                  << r.stats.max_family << std::setw(8) << (r.yes ? "yes" : "no") << "\n";
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].n == 2 * rows[i - 1].n && rows[i - 1].ms > 0.0)
            std::cout << "doubling " << rows[i - 1].n << " -> " << rows[i].n << ": time x"
                      << std::setprecision(3) << rows[i].ms / rows[i - 1].ms << ", sum_min x"
                      << (rows[i - 1].stats.sum_min_subtree > 0
                              ? static_cast<double>(rows[i].stats.sum_min_subtree) /
                                    static_cast<double>(rows[i - 1].stats.sum_min_subtree)
                              : 0.0)
                      << "\n";

    if (!json_path.empty()) {
        nlohmann::json out;
        out["seed"] = seed;
        out["rows"] = nlohmann::json::array();
        for (const BenchRow& r : rows)
            out["rows"].push_back({{"n", r.n},
                                   {"k", r.k},
                                   {"time_ms", r.ms},
                                   {"expansions", r.stats.expansions},
                                   {"sum_min", r.stats.sum_min_subtree},
                                   {"max_family", r.stats.max_family},
                                   {"answer", r.yes ? "yes" : "no"}});
        write_text(json_path, out.dump(2));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact solvers for the inverse Voronoi problem on graphs"};
    app.require_subcommand(1);

    auto* solve_cmd = app.add_subcommand("solve", "decide an instance and print a site list");
    std::string solve_input = "-", solve_output = "-", solve_algo = "auto";
    long long solve_budget = 2000000;
    solve_cmd->add_option("--input", solve_input, "instance file, - for stdin");
    solve_cmd->add_option("--algo", solve_algo, "auto, tree, sat2 or brute")
        ->check(CLI::IsMember({"auto", "tree", "sat2", "brute"}));
    solve_cmd->add_option("--budget", solve_budget, "site tuple budget for brute force");
    solve_cmd->add_option("--output", solve_output, "result file, - for stdout");

    auto* check_cmd = app.add_subcommand("check", "verify a site list against an instance");
    std::string check_input = "-", check_solution;
    check_cmd->add_option("--input", check_input, "instance file, - for stdin");
    check_cmd->add_option("--solution", check_solution, "site list file")->required();

    auto* gen_cmd = app.add_subcommand("gen", "write a generated instance");
    gen_cmd->require_subcommand(1);
    gen_cmd->fallthrough();
    std::string gen_output = "-";
    gen_cmd->add_option("--output", gen_output, "instance file, - for stdout");

    auto* gen_tree = gen_cmd->add_subcommand("tree", "random tree instance with a planted answer");
    int tree_n = 100, tree_k = 5;
    long long tree_max_len = 10;
    std::uint64_t tree_seed = 1;
    std::string tree_planted;
    gen_tree->add_option("--n", tree_n, "vertex count");
    gen_tree->add_option("--k", tree_k, "cell count");
    gen_tree->add_option("--max-len", tree_max_len, "edge lengths drawn from 1..max-len");
    gen_tree->add_option("--seed", tree_seed, "generator seed");
    gen_tree->add_option("--planted", tree_planted, "also write the planted site list here");

    auto* gen_sat = gen_cmd->add_subcommand("sat1in3", "clause triangle construction");
    int sat_vars = 3;
    std::vector<std::string> sat_clauses;
    gen_sat->add_option("--vars", sat_vars, "variable count");
    gen_sat->add_option("--clause", sat_clauses, "clause as v1,v2,v3; repeatable")->required();

    auto* gen_msi = gen_cmd->add_subcommand("msi", "subdivision clique construction");
    int msi_parts = 0;
    std::string msi_part_of;
    std::vector<std::string> msi_h_edges, msi_p_edges;
    gen_msi->add_option("--parts", msi_parts, "number of parts")->required();
    gen_msi->add_option("--part-of", msi_part_of, "part id per host vertex, comma separated")
        ->required();
    gen_msi->add_option("--h-edge", msi_h_edges, "host edge as u,v; repeatable")->required();
    gen_msi->add_option("--p-edge", msi_p_edges, "pattern edge as i,j; repeatable")->required();

    auto* gen_mis = gen_cmd->add_subcommand("mis", "choice gadget construction");
    int mis_parts = 0, mis_part_size = 0;
    std::vector<std::string> mis_edges;
    gen_mis->add_option("--parts", mis_parts, "number of parts")->required();
    gen_mis->add_option("--part-size", mis_part_size, "vertices per part")->required();
    gen_mis->add_option("--edge", mis_edges, "edge as part,index,part,index; repeatable")
        ->required();

    auto* gen_stars = gen_cmd->add_subcommand("stars", "two joined stars from integer sets");
    std::string stars_xs, stars_ys;
    gen_stars->add_option("--xs", stars_xs, "first set, comma separated")->required();
    gen_stars->add_option("--ys", stars_ys, "second set, comma separated")->required();

    auto* bench_cmd = app.add_subcommand("bench", "time the tree solver over planted instances");
    std::string bench_sizes, bench_json;
    std::uint64_t bench_seed = 1;
    int bench_kdiv = 64;
    long long bench_max_len = 1000;
    bench_cmd->add_option("--sizes", bench_sizes, "vertex counts, comma separated")->required();
    bench_cmd->add_option("--seed", bench_seed, "base seed; size index i uses seed+i");
    bench_cmd->add_option("--kdiv", bench_kdiv, "cells per instance = n / kdiv");
    bench_cmd->add_option("--max-len", bench_max_len, "edge lengths drawn from 1..max-len");
    bench_cmd->add_option("--json", bench_json, "also write rows as JSON here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve_cmd->parsed())
            return run_solve(solve_input, solve_algo, solve_budget, solve_output);
        if (check_cmd->parsed()) return run_check(check_input, check_solution);
        if (bench_cmd->parsed())
            return run_bench(bench_sizes, bench_seed, bench_kdiv, bench_max_len, bench_json);

        if (gen_tree->parsed()) {
            ivd::PlantedInstance made =
                ivd::gen_random_tree_yes(tree_n, tree_k, tree_max_len, tree_seed);
            write_text(gen_output, ivd::serialize_instance(made.instance));
            if (!tree_planted.empty())
                write_text(tree_planted, ivd::serialize_solution(made.planted));
            return 0;
        }
        if (gen_sat->parsed()) {
            ivd::OneInThreeFormula f;
            f.variables = sat_vars;
            for (const std::string& c : sat_clauses) {
                std::vector<long long> tri = parse_list(c, 3);
                f.clauses.push_back({static_cast<int>(tri[0]), static_cast<int>(tri[1]),
                                     static_cast<int>(tri[2])});
            }
            write_text(gen_output, ivd::serialize_instance(ivd::gen_from_1in3sat(f)));
            return 0;
        }
        if (gen_msi->parsed()) {
            ivd::MsiInput in;
            in.parts = msi_parts;
            for (long long p : parse_list(msi_part_of)) in.part_of.push_back(static_cast<int>(p));
            for (const std::string& e : msi_h_edges) {
                std::vector<long long> uv = parse_list(e, 2);
                in.h_edges.emplace_back(static_cast<int>(uv[0]), static_cast<int>(uv[1]));
            }
            for (const std::string& e : msi_p_edges) {
                std::vector<long long> ij = parse_list(e, 2);
                in.p_edges.emplace_back(static_cast<int>(ij[0]), static_cast<int>(ij[1]));
            }
            write_text(gen_output, ivd::serialize_instance(ivd::gen_from_msi(in)));
            return 0;
        }
        if (gen_mis->parsed()) {
            ivd::MisInput in;
            in.parts = mis_parts;
            in.part_size = mis_part_size;
            for (const std::string& e : mis_edges) {
                std::vector<long long> q = parse_list(e, 4);
                in.edges.push_back({static_cast<int>(q[0]), static_cast<int>(q[1]),
                                    static_cast<int>(q[2]), static_cast<int>(q[3])});
            }
            write_text(gen_output, ivd::serialize_instance(ivd::gen_from_mis(in).instance));
            return 0;
        }
        if (gen_stars->parsed()) {
            write_text(gen_output, ivd::serialize_instance(ivd::gen_set_intersection_stars(
                                       parse_list(stars_xs), parse_list(stars_ys))));
            return 0;
        }
        throw UsageError("no subcommand selected");
    } catch (const ivd::BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return exit_budget;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const ivd::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}
