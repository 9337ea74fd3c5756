#include <cyclepack.hpp>
#include <cyclepack/harness.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace cyclepack;

namespace {

struct ProfileArgs {
    std::string lengths;
    std::string mode = "theorem";

    CycleProfile get() const { return make_profile(parse_length_list(lengths), parse_mode(mode)); }
};

void add_profile(CLI::App * app, ProfileArgs & p) {
    app->add_option("--profile", p.lengths, "comma-separated cycle lengths, e.g. 6,6,8")->required();
    app->add_option("--mode", p.mode, "theorem|conjecture")->check(CLI::IsMember({"theorem", "conjecture"}));
}

void emit(const std::string & out, const std::string & text) {
    if (out.empty() || out == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out);
    if (! f) throw std::runtime_error("cannot write " + out);
    f << text;
}

std::string solve_text(const nlohmann::json & j) {
    std::ostringstream out;
    auto row = [&](const std::string & k, const std::string & v) { out << std::left << std::setw(24) << k << v << '\n'; };
    row("outcome", j["outcome"].get<std::string>());
    row("hypotheses", j["hypotheses"]["ok"].get<bool>() ? "hold" : "fail");
    for (const auto & c : j["hypotheses"]["checks"]) row("  " + c["name"].get<std::string>(), c["detail"].get<std::string>());
    row("oracle_fallback", j["oracle_fallback"].get<bool>() ? "yes" : "no");
    if (j.contains("packing")) {
        std::size_t i = 0;
        for (const auto & c : j["packing"]) {
            std::string s;
            for (const auto & v : c) s += (s.empty() ? "" : " ") + std::to_string(v.get<Vertex>());
            row("cycle " + std::to_string(i++), "[" + std::to_string(c.size()) + "] " + s);
        }
        row("verified", j["report"]["ok"].get<bool>() ? "ok" : "FAILED");
    }
    return out.str();
}

}

int main(int argc, char ** argv) {
    CLI::App app{"Vertex-disjoint cycle packing in bipartite graphs"};
    app.require_subcommand(1);
    std::size_t oracle_limit = oracle_limit_from_env();
    bool as_json = false;
    app.add_option("--oracle-limit", oracle_limit, "largest vertex count handed to the exact oracle")->check(CLI::Range(1, 24));
    app.add_flag("--json", as_json, "machine-readable output");

    // solve
    auto * solve = app.add_subcommand("solve", "pack one graph file");
    std::string graph_file;
    ProfileArgs solve_prof;
    PackOptions pack_opt;
    solve->add_option("--graph", graph_file, "graph file")->required();
    add_profile(solve, solve_prof);
    solve->add_option("--budget", pack_opt.budget, "move iterations per attempt");
    solve->add_option("--seed", pack_opt.seed, "restart seed");
    solve->add_option("--restarts", pack_opt.restarts, "seeded restarts after the first attempt");
    solve->add_option("--oracle-limit", oracle_limit, "largest vertex count handed to the exact oracle")->check(CLI::Range(1, 24));
    solve->add_flag("--json", as_json, "machine-readable output");

    // trials
    auto * trials = app.add_subcommand("trials", "seeded random-instance campaign");
    TrialConfig tcfg;
    ProfileArgs trials_prof;
    std::size_t delta = 0;
    std::string csv_out;
    trials->add_option("--side", tcfg.side_size, "vertices per side")->required();
    auto * delta_opt = trials->add_option("--delta", delta, "minimum degree (default: the theorem threshold)");
    add_profile(trials, trials_prof);
    trials->add_option("--trials", tcfg.trials, "number of instances")->required();
    trials->add_option("--seed", tcfg.seed, "campaign seed")->required();
    trials->add_option("--threads", tcfg.threads, "worker threads");
    trials->add_option("--budget", tcfg.budget, "move iterations per attempt");
    trials->add_option("--fill", tcfg.fill, "edge probability above the degree base")->check(CLI::Range(0.0, 1.0));
    trials->add_option("--csv", csv_out, "write per-trial rows to this CSV file");
    trials->add_option("--oracle-limit", oracle_limit, "largest vertex count handed to the exact oracle")->check(CLI::Range(1, 24));
    trials->add_flag("--json", as_json, "machine-readable output");

    // exhaustive
    auto * exhaustive = app.add_subcommand("exhaustive", "every bipartite graph on side+side vertices");
    std::size_t ex_side = 0;
    ProfileArgs ex_prof;
    bool force = false;
    exhaustive->add_option("--side", ex_side, "vertices per side")->required();
    add_profile(exhaustive, ex_prof);
    exhaustive->add_flag("--force", force, "allow side above 4");
    exhaustive->add_flag("--json", as_json, "machine-readable output");

    // sharpness
    auto * sharp = app.add_subcommand("sharpness", "certify the degree-(k+1) construction has no packing");
    std::size_t sharp_k = 2;
    sharp->add_option("--k", sharp_k, "number of cycles (even)")->required();
    sharp->add_flag("--json", as_json, "machine-readable output");

    // hunt
    auto * hunt = app.add_subcommand("hunt", "search random instances for unpackable ones");
    std::size_t hunt_side = 0, hunt_trials = 0;
    std::uint64_t hunt_seed = 0;
    ProfileArgs hunt_prof;
    hunt_prof.mode = "conjecture";
    std::string hunt_out;
    hunt->add_option("--side", hunt_side, "vertices per side")->required();
    add_profile(hunt, hunt_prof);
    hunt->add_option("--trials", hunt_trials, "number of instances")->required();
    hunt->add_option("--seed", hunt_seed, "campaign seed")->required();
    hunt->add_option("--out", hunt_out, "directory for counterexample files")->required();

    // gen
    auto * gen = app.add_subcommand("gen", "write a generated graph file");
    gen->require_subcommand(1);
    std::string gen_out;
    gen->add_option("--out", gen_out, "output file (stdout if omitted)");
    auto * gen_complete_cmd = gen->add_subcommand("complete", "K_{m,m}");
    std::size_t gm = 0;
    gen_complete_cmd->add_option("--m", gm, "side size")->required();
    gen_complete_cmd->add_option("--out", gen_out, "output file");
    auto * gen_random_cmd = gen->add_subcommand("random", "random graph with a minimum-degree floor");
    std::size_t gx = 0, gy = 0, gd = 0;
    std::uint64_t gseed = 0;
    double gfill = 0.5;
    gen_random_cmd->add_option("--x", gx, "X side size")->required();
    gen_random_cmd->add_option("--y", gy, "Y side size")->required();
    gen_random_cmd->add_option("--delta", gd, "minimum degree")->required();
    gen_random_cmd->add_option("--seed", gseed, "seed")->required();
    gen_random_cmd->add_option("--fill", gfill, "edge probability above the base")->check(CLI::Range(0.0, 1.0));
    gen_random_cmd->add_option("--out", gen_out, "output file");
    auto * gen_sharp_cmd = gen->add_subcommand("sharpness", "the 4k+2 vertex construction");
    std::size_t gk = 2;
    gen_sharp_cmd->add_option("--k", gk, "even k")->required();
    gen_sharp_cmd->add_option("--out", gen_out, "output file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError & e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input_error;
    }

    try {
        if (*solve) {
            std::ifstream in(graph_file);
            if (! in) {
                std::cerr << "error: cannot open " << graph_file << '\n';
                return exit_input_error;
            }
            const auto g = parse_graph(in);
            const auto prof = solve_prof.get();
            pack_opt.oracle_limit = oracle_limit;
            const auto res = pack(g, prof, pack_opt);
            const auto j = solve_report(g, prof, res);
            std::cout << (as_json ? j.dump(2) + "\n" : solve_text(j));
            return exit_code(res.outcome);
        }
        if (*trials) {
            tcfg.profile = trials_prof.get();
            if (delta_opt->count()) tcfg.delta = delta;
            tcfg.oracle_limit = oracle_limit;
            const auto sum = run_trials(tcfg);
            if (! csv_out.empty()) emit(csv_out, to_csv(sum));
            std::cout << (as_json ? to_json(sum).dump(2) + "\n" : to_text(sum));
            if (sum.theorem_violations()) {
                std::cerr << "THEOREM VIOLATION in " << sum.theorem_violations() << " trial(s)\n";
                return exit_infeasible;
            }
            return sum.count(Outcome::Packing) == sum.trials.size() ? 0 : exit_unknown;
        }
        if (*exhaustive) {
            const auto sum = run_exhaustive(ex_side, ex_prof.get(), force, oracle_limit);
            const auto j = to_json(sum);
            if (as_json)
                std::cout << j.dump(2) << '\n';
            else
                for (const char * k : {"side", "threshold", "graphs_enumerated", "graphs_examined", "hypothesis_satisfying", "packed"})
                    std::cout << std::left << std::setw(24) << k << j[k].dump() << '\n';
            if (! sum.ok()) {
                std::cerr << "VIOLATION: " << sum.violations.size() << " hypothesis-satisfying graph(s) without a packing\n";
                return exit_infeasible;
            }
            return 0;
        }
        if (*sharp) {
            const auto r = run_sharpness(sharp_k, oracle_limit);
            const auto j = to_json(r);
            if (as_json)
                std::cout << j.dump(2) << '\n';
            else
                for (const char * k : {"k", "vertices", "min_degree", "threshold", "profile", "certified", "infeasible"})
                    std::cout << std::left << std::setw(14) << k << j[k].dump() << '\n';
            return r.ok() ? 0 : exit_unknown;
        }
        if (*hunt) {
            const auto r = run_hunt(hunt_side, hunt_prof.get(), hunt_trials, hunt_seed, hunt_out, oracle_limit);
            std::cout << to_json(r).dump(2) << '\n';
            return 0;
        }
        if (*gen) {
            if (*gen_complete_cmd)
                emit(gen_out, serialize_graph(gen_complete(gm)));
            else if (*gen_random_cmd)
                emit(gen_out, serialize_graph(gen_random_mindeg(gx, gy, gd, gseed, gfill)));
            else
                emit(gen_out, serialize_graph(gen_sharpness(gk).graph));
            return 0;
        }
    } catch (const ParseError & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const std::invalid_argument & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    } catch (const OracleRefused & e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input_error;
    }
    return exit_input_error;
}
