#pragma once

#include <cyclepack/generators.hpp>
#include <cyclepack/graph.hpp>
#include <cyclepack/io.hpp>
#include <cyclepack/oracle.hpp>
#include <cyclepack/packer.hpp>
#include <cyclepack/profile.hpp>
#include <cyclepack/verifier.hpp>

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cyclepack {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline nlohmann::json to_json(const Packing & pk) { return pk.cycles; }

inline nlohmann::json to_json(const MoveCounts & m) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t i = 0; i < move_kind_count; ++i) j[std::string(to_string(static_cast<MoveKind>(i)))] = m.counts[i];
    return j;
}

// ---------------------------------------------------------------- trials

struct TrialConfig {
    CycleProfile profile;
    std::size_t side_size = 0;
    std::optional<std::size_t> delta;  ///< defaults to degree_threshold(profile)
    std::size_t trials = 1;
    std::uint64_t seed = 0;
    std::size_t budget = PackOptions{}.budget;
    std::size_t restarts = PackOptions{}.restarts;
    std::size_t oracle_limit = default_oracle_limit;
    bool oracle_fallback = true;
    std::size_t threads = 1;
    double fill = 0.5;

    std::size_t effective_delta() const { return delta.value_or(degree_threshold(profile)); }

    void validate() const {
        if (trials < 1) throw ConfigError("trials must be at least 1");
        if (side_size < 1) throw ConfigError("side size must be at least 1");
        if (effective_delta() > side_size)
            throw ConfigError("delta " + std::to_string(effective_delta()) + " exceeds side size " + std::to_string(side_size));
    }
};

struct TrialRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    Outcome outcome = Outcome::Unknown;
    bool oracle_fallback = false;
    bool hypotheses_hold = false;
    bool theorem_violation = false;
    MoveCounts moves;
    std::optional<Packing> packing;
    std::optional<VerificationReport> report;
    double wall_ms = 0;
};

struct CampaignSummary {
    TrialConfig config;
    std::vector<TrialRecord> trials;

    std::size_t count(Outcome o) const {
        return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [o](const auto & t) { return t.outcome == o; }));
    }
    double success_rate() const { return trials.empty() ? 0.0 : static_cast<double>(count(Outcome::Packing)) / static_cast<double>(trials.size()); }
    std::size_t oracle_fallbacks() const {
        return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto & t) { return t.oracle_fallback; }));
    }
    std::size_t theorem_violations() const {
        return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const auto & t) { return t.theorem_violation; }));
    }
    MoveCounts move_histogram() const {
        MoveCounts m;
        for (const auto & t : trials) m += t.moves;
        return m;
    }
};

inline std::uint64_t trial_seed(std::uint64_t seed, std::size_t index) { return seed ^ static_cast<std::uint64_t>(index); }

inline TrialRecord run_trial(const TrialConfig & cfg, std::size_t index) {
    TrialRecord rec;
    rec.index = index;
    rec.seed = trial_seed(cfg.seed, index);
    const auto t0 = std::chrono::steady_clock::now();

    const auto g = gen_random_mindeg(cfg.side_size, cfg.side_size, cfg.effective_delta(), rec.seed, cfg.fill);
    rec.hypotheses_hold = hypotheses_hold(g, cfg.profile);

    PackOptions opt;
    opt.budget = cfg.budget;
    opt.restarts = cfg.restarts;
    opt.seed = rec.seed;
    opt.oracle_limit = cfg.oracle_limit;
    opt.oracle_fallback = cfg.oracle_fallback;
    auto res = pack(g, cfg.profile, opt);

    rec.outcome = res.outcome;
    rec.oracle_fallback = res.stats.oracle_used;
    rec.moves = res.stats.moves;
    if (res.packing) {
        rec.report = verify_packing(g, cfg.profile, *res.packing);
        rec.packing = std::move(res.packing);
    }
    // With the hypotheses in force a certified refusal contradicts the theorem.
    rec.theorem_violation = rec.hypotheses_hold && rec.outcome == Outcome::Infeasible;
    rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rec;
}

/// Trials are split across workers by index (i % threads) and stored by
/// index, so the summary does not depend on the worker count.
inline CampaignSummary run_trials(const TrialConfig & cfg) {
    cfg.validate();
    CampaignSummary sum;
    sum.config = cfg;
    sum.trials.resize(cfg.trials);
    const std::size_t workers = std::max<std::size_t>(1, std::min(cfg.threads, cfg.trials));
    if (workers == 1) {
        for (std::size_t i = 0; i < cfg.trials; ++i) sum.trials[i] = run_trial(cfg, i);
        return sum;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < cfg.trials; i += workers) sum.trials[i] = run_trial(cfg, i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    for (auto & t : pool) t.join();
    for (auto & e : errors)
        if (e) std::rethrow_exception(e);
    return sum;
}

inline nlohmann::json to_json(const CampaignSummary & s) {
    using nlohmann::json;
    const auto & c = s.config;
    json trials = json::array();
    json timing_trials = json::array();
    double total = 0, worst = 0;
    for (const auto & t : s.trials) {
        json r{{"index", t.index},
               {"seed", t.seed},
               {"outcome", std::string(to_string(t.outcome))},
               {"oracle_fallback", t.oracle_fallback},
               {"hypotheses_hold", t.hypotheses_hold},
               {"theorem_violation", t.theorem_violation},
               {"moves", to_json(t.moves)}};
        if (t.packing) r["packing"] = to_json(*t.packing);
        if (t.report) r["report"] = to_json(*t.report);
        trials.push_back(std::move(r));
        timing_trials.push_back(t.wall_ms);
        total += t.wall_ms;
        worst = std::max(worst, t.wall_ms);
    }
    return {{"config",
             {{"profile", c.profile.lengths()},
              {"mode", std::string(to_string(c.profile.mode()))},
              {"side", c.side_size},
              {"delta", c.effective_delta()},
              {"trials", c.trials},
              {"seed", c.seed},
              {"budget", c.budget},
              {"restarts", c.restarts},
              {"oracle_limit", c.oracle_limit},
              {"oracle_fallback", c.oracle_fallback}}},
            {"trials", trials},
            {"aggregate",
             {{"packing", s.count(Outcome::Packing)},
              {"infeasible", s.count(Outcome::Infeasible)},
              {"unknown", s.count(Outcome::Unknown)},
              {"success_rate", s.success_rate()},
              {"oracle_fallbacks", s.oracle_fallbacks()},
              {"theorem_violations", s.theorem_violations()},
              {"move_histogram", to_json(s.move_histogram())}}},
            {"timing",
             {{"per_trial_ms", timing_trials},
              {"mean_ms", s.trials.empty() ? 0.0 : total / static_cast<double>(s.trials.size())},
              {"max_ms", worst}}}};
}

/// The summary JSON with the wall-clock section removed; identical for
/// identical configurations.
inline std::string deterministic_dump(const CampaignSummary & s) {
    auto j = to_json(s);
    j.erase("timing");
    return j.dump();
}

inline std::string to_csv(const CampaignSummary & s) {
    std::ostringstream out;
    out << "index,seed,outcome,oracle_fallback,hypotheses_hold,theorem_violation,wall_ms";
    for (std::size_t i = 0; i < move_kind_count; ++i) out << ',' << to_string(static_cast<MoveKind>(i));
    out << '\n';
    for (const auto & t : s.trials) {
        out << t.index << ',' << t.seed << ',' << to_string(t.outcome) << ',' << t.oracle_fallback << ','
            << t.hypotheses_hold << ',' << t.theorem_violation << ',' << std::fixed << std::setprecision(3) << t.wall_ms;
        for (auto c : t.moves.counts) out << ',' << c;
        out << '\n';
    }
    return out.str();
}

inline std::string to_text(const CampaignSummary & s) {
    std::ostringstream out;
    auto row = [&](const std::string & k, const std::string & v) { out << std::left << std::setw(22) << k << " " << v << '\n'; };
    row("profile", s.config.profile.describe() + " (" + std::string(to_string(s.config.profile.mode())) + ")");
    row("side", std::to_string(s.config.side_size));
    row("delta", std::to_string(s.config.effective_delta()));
    row("trials", std::to_string(s.trials.size()));
    row("packing", std::to_string(s.count(Outcome::Packing)));
    row("infeasible", std::to_string(s.count(Outcome::Infeasible)));
    row("unknown", std::to_string(s.count(Outcome::Unknown)));
    std::ostringstream rate;
    rate << std::fixed << std::setprecision(4) << s.success_rate();
    row("success_rate", rate.str());
    row("oracle_fallbacks", std::to_string(s.oracle_fallbacks()));
    row("theorem_violations", std::to_string(s.theorem_violations()));
    const auto h = s.move_histogram();
    for (std::size_t i = 0; i < move_kind_count; ++i)
        row("moves." + std::string(to_string(static_cast<MoveKind>(i))), std::to_string(h.counts[i]));
    return out.str();
}

// ------------------------------------------------------------ exhaustive

inline constexpr std::size_t exhaustive_default_cap = 4;

struct ExhaustiveSummary {
    std::size_t side = 0;
    CycleProfile profile;
    std::uint64_t graphs_enumerated = 0;  ///< all 2^(side^2) edge subsets, pruned ones included
    std::uint64_t graphs_examined = 0;    ///< complete edge sets reached after pruning
    std::uint64_t hypothesis_satisfying = 0;
    std::uint64_t packed = 0;
    std::vector<std::string> violations;  ///< serialised graphs with no packing

    bool ok() const { return violations.empty() && packed == hypothesis_satisfying; }
};

/// Every bipartite graph on side + side vertices, by raw edge subset. An X
/// vertex is decided as soon as its neighbourhood mask is chosen, so masks
/// below the degree threshold prune the remaining subtree.
inline ExhaustiveSummary run_exhaustive(std::size_t side, const CycleProfile & prof, bool force = false,
                                        std::size_t oracle_limit = default_oracle_limit) {
    if (side == 0) throw ConfigError("side must be at least 1");
    if (side > exhaustive_default_cap && ! force)
        throw ConfigError("side " + std::to_string(side) + " above " + std::to_string(exhaustive_default_cap) +
                          " enumerates 2^" + std::to_string(side * side) + " graphs; pass --force");
    if (side * side > 62) throw ConfigError("side too large to enumerate");
    if (2 * side > std::min(oracle_limit, oracle_hard_cap))
        throw ConfigError("2*side exceeds the oracle limit; exhaustive verification needs the exact oracle");

    ExhaustiveSummary sum;
    sum.side = side;
    sum.profile = prof;
    sum.graphs_enumerated = std::uint64_t{1} << (side * side);

    const bool balanced = side >= prof.n() / 2;
    if (! balanced) return sum;
    const std::size_t delta = degree_threshold(prof);
    const std::uint64_t per_vertex = std::uint64_t{1} << side;

    std::vector<std::uint64_t> masks(side, 0);
    auto build = [&] {
        std::vector<Edge> e;
        for (std::size_t x = 0; x < side; ++x)
            for (std::size_t y = 0; y < side; ++y)
                if (masks[x] >> y & 1u) e.emplace_back(static_cast<Vertex>(x), static_cast<Vertex>(side + y));
        return BipartiteGraph(side, side, e);
    };

    auto rec = [&](auto && self, std::size_t x) -> void {
        if (x == side) {
            ++sum.graphs_examined;
            for (std::size_t y = 0; y < side; ++y) {
                std::size_t d = 0;
                for (std::size_t i = 0; i < side; ++i) d += masks[i] >> y & 1u;
                if (d < delta) return;
            }
            ++sum.hypothesis_satisfying;
            const auto g = build();
            auto pk = brute_force_pack(g, prof, oracle_limit);
            if (pk && verify_packing(g, prof, *pk).ok)
                ++sum.packed;
            else
                sum.violations.push_back(serialize_graph(g));
            return;
        }
        for (std::uint64_t m = 0; m < per_vertex; ++m) {
            masks[x] = m;
            if (static_cast<std::size_t>(std::popcount(m)) < delta) continue;
            self(self, x + 1);
        }
    };
    rec(rec, 0);
    return sum;
}

inline nlohmann::json to_json(const ExhaustiveSummary & s) {
    return {{"side", s.side},
            {"profile", s.profile.lengths()},
            {"mode", std::string(to_string(s.profile.mode()))},
            {"threshold", degree_threshold(s.profile)},
            {"graphs_enumerated", s.graphs_enumerated},
            {"graphs_examined", s.graphs_examined},
            {"hypothesis_satisfying", s.hypothesis_satisfying},
            {"packed", s.packed},
            {"violations", s.violations},
            {"ok", s.ok()}};
}

// ------------------------------------------------------------ sharpness

struct SharpnessReport {
    std::size_t k = 0;
    std::size_t vertices = 0;
    std::size_t min_degree = 0;
    std::size_t threshold = 0;
    CycleProfile profile;
    bool certified = false;   ///< oracle ran
    bool infeasible = false;  ///< oracle found no packing

    bool ok() const { return certified && infeasible && min_degree == k + 1 && min_degree + 1 == threshold; }
};

inline SharpnessReport run_sharpness(std::size_t k, std::size_t oracle_limit = default_oracle_limit) {
    auto inst = gen_sharpness(k);
    SharpnessReport r;
    r.k = k;
    r.vertices = inst.graph.vertex_count();
    r.min_degree = min_degree(inst.graph);
    r.profile = inst.profile;
    r.threshold = degree_threshold(inst.profile);
    if (r.vertices <= std::min(oracle_limit, oracle_hard_cap)) {
        r.certified = true;
        r.infeasible = ! brute_force_pack(inst.graph, inst.profile, oracle_limit).has_value();
    }
    return r;
}

inline nlohmann::json to_json(const SharpnessReport & r) {
    return {{"k", r.k},
            {"vertices", r.vertices},
            {"min_degree", r.min_degree},
            {"threshold", r.threshold},
            {"profile", r.profile.lengths()},
            {"certified", r.certified},
            {"infeasible", r.infeasible},
            {"ok", r.ok()}};
}

// ------------------------------------------------------------------ hunt

struct HuntReport {
    CycleProfile profile;
    std::size_t side = 0;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::size_t certified_packings = 0;
    std::size_t uncertified = 0;
    std::vector<std::string> counterexample_files;
};

/// Graph file with reproduction metadata in comment lines.
inline std::string counterexample_text(const BipartiteGraph & g, const CycleProfile & prof, std::uint64_t seed,
                                       std::size_t trial) {
    std::ostringstream out;
    out << "c counterexample candidate\n";
    out << "c profile " << prof.describe() << " mode " << to_string(prof.mode()) << '\n';
    out << "c seed " << seed << " trial " << trial << '\n';
    out << "c min_degree " << min_degree(g) << " threshold " << degree_threshold(prof) << '\n';
    out << serialize_graph(g);
    return out.str();
}

inline HuntReport run_hunt(std::size_t side, const CycleProfile & prof, std::size_t trials, std::uint64_t seed,
                           const std::filesystem::path & out_dir, std::size_t oracle_limit = default_oracle_limit,
                           double fill = 0.5) {
    if (trials < 1) throw ConfigError("trials must be at least 1");
    if (side < prof.n() / 2) throw ConfigError("side below n/2: no instance satisfies the balance hypothesis");
    const std::size_t delta = degree_threshold(prof);
    if (delta > side) throw ConfigError("degree threshold exceeds side size");

    HuntReport rep;
    rep.profile = prof;
    rep.side = side;
    rep.trials = trials;
    rep.seed = seed;
    const bool certify = 2 * side <= std::min(oracle_limit, oracle_hard_cap);

    for (std::size_t i = 0; i < trials; ++i) {
        const std::uint64_t s = trial_seed(seed, i);
        const auto g = gen_random_mindeg(side, side, delta, s, fill);
        if (! certify) {
            PackOptions opt;
            opt.seed = s;
            opt.oracle_fallback = false;
            if (pack(g, prof, opt).outcome == Outcome::Packing)
                ++rep.certified_packings;
            else
                ++rep.uncertified;
            continue;
        }
        if (brute_force_pack(g, prof, oracle_limit)) {
            ++rep.certified_packings;
            continue;
        }
        std::filesystem::create_directories(out_dir);
        auto file = out_dir / ("counterexample_seed" + std::to_string(seed) + "_trial" + std::to_string(i) + ".graph");
        std::ofstream(file) << counterexample_text(g, prof, seed, i);
        rep.counterexample_files.push_back(file.string());
    }
    return rep;
}

inline nlohmann::json to_json(const HuntReport & r) {
    return {{"profile", r.profile.lengths()},
            {"mode", std::string(to_string(r.profile.mode()))},
            {"side", r.side},
            {"threshold", degree_threshold(r.profile)},
            {"trials", r.trials},
            {"seed", r.seed},
            {"certified_packings", r.certified_packings},
            {"uncertified", r.uncertified},
            {"counterexamples", r.counterexample_files}};
}

// ----------------------------------------------------------------- solve

inline constexpr int exit_packing = 0;
inline constexpr int exit_input_error = 1;
inline constexpr int exit_infeasible = 2;
inline constexpr int exit_unknown = 3;

inline int exit_code(Outcome o) {
    switch (o) {
        case Outcome::Packing: return exit_packing;
        case Outcome::Infeasible: return exit_infeasible;
        case Outcome::Unknown: return exit_unknown;
    }
    return exit_input_error;
}

inline nlohmann::json solve_report(const BipartiteGraph & g, const CycleProfile & prof, const PackResult & res) {
    nlohmann::json j{{"outcome", std::string(to_string(res.outcome))},
                     {"profile", prof.lengths()},
                     {"mode", std::string(to_string(prof.mode()))},
                     {"hypotheses", to_json(check_hypotheses(g, prof))},
                     {"oracle_fallback", res.stats.oracle_used},
                     {"moves", to_json(res.stats.moves)}};
    if (res.packing) {
        j["packing"] = to_json(*res.packing);
        j["report"] = to_json(verify_packing(g, prof, *res.packing));
    }
    return j;
}

}
