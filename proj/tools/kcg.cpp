// Command-line front end: run matches, verify trace files, run sweeps.
// Talks to the engine exclusively through the C API in kcgames.h.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "kcgames.h"

namespace {

struct ConfigBuilder {
    CLI::App *app;
    std::map<std::string, std::string> storage;
    std::vector<std::pair<CLI::Option *, std::string>> bindings;

    void bind(const std::string &flag, const std::string &key, const std::string &help) {
        auto *opt = app->add_option(flag, storage[key], help);
        bindings.emplace_back(opt, key);
    }

    // only explicitly provided flags reach the config; defaults live in the core
    int apply(kcg_config *config) const {
        for (const auto &[opt, key] : bindings) {
            if (opt->count() == 0) continue;
            if (kcg_config_set(config, key.c_str(), storage.at(key).c_str()) != KCG_OK)
                return 1;
        }
        return 0;
    }
};

void add_game_flags(ConfigBuilder &b) {
    b.bind("--game", "game", "game: complexity|total_function|extraction|bijection|miller");
    b.bind("--alice", "alice", "Alice strategy name");
    b.bind("--bob", "bob", "Bob strategy name");
    b.bind("--max-rounds", "max_rounds", "horizon: maximum rounds per match");
    b.bind("--quiescence", "quiescence", "true/false: stop when both players pass in a round");
    b.bind("--strict", "strict", "true/false: refuse unwinnable parameters");
    b.bind("--n", "n", "total_function: bit width");
    b.bind("--budget", "budget", "adversary function budget");
    b.bind("--left-size", "left_size", "extraction: |L|");
    b.bind("--right-size", "right_size", "extraction: |R|");
    b.bind("--degree-cap", "degree_cap", "extraction: max neighbors per right element");
    b.bind("--threshold", "threshold", "extraction: required all-marked count");
    b.bind("--domain-size", "domain_size", "bijection: N");
    b.bind("--moves", "moves", "bijection: adversary move budget");
    b.bind("--ratio-target", "ratio_target", "miller: C");
    b.bind("--num-sets", "num_sets", "miller: number of sets (uniform sizes)");
    b.bind("--set-size", "set_size", "miller: uniform set size");
    b.bind("--sizes", "sizes", "miller: comma-separated set sizes");
    b.bind("--mode", "mode", "complexity: graph|levin");
    b.bind("--alpha", "alpha", "complexity: property name");
    b.bind("--alpha-domain", "alpha_domain", "complexity: comma list of strings, e = empty");
    b.bind("--alpha-x", "alpha_x", "complexity: property string parameter");
    b.bind("--alpha-bound", "alpha_bound", "complexity: property bound parameter");
    b.bind("--alpha-c", "alpha_c", "complexity: property constant parameter");
    b.bind("--infinite-rule", "infinite_rule", "complexity: false|true|reject");
    b.bind("--alpha2", "alpha2", "complexity: two-profile predicate name");
    b.bind("--chunk", "chunk", "complexity: table enumeration chunk");
    b.bind("--table-len", "table_len", "complexity: identity table max length");
    b.bind("--active-rounds", "active_rounds", "randomized strategy activity budget");
    b.bind("--max-program-len", "max_program_len", "complexity: random program length cap");
    b.bind("--max-output-len", "max_output_len", "complexity: random output length cap");
}

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
        if (c == sep) {
            out.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    out.push_back(current);
    return out;
}

struct Axis {
    std::string key;
    std::vector<std::uint64_t> values;
};

// key=start:stop[:step], stop inclusive; an empty range is a valid axis
bool parse_axis(const std::string &text, Axis &axis) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0) return false;
    axis.key = text.substr(0, eq);
    const auto parts = split(text.substr(eq + 1), ':');
    if (parts.size() < 2 || parts.size() > 3) return false;
    try {
        std::size_t used = 0;
        const std::uint64_t start = std::stoull(parts[0], &used);
        if (used != parts[0].size()) return false;
        const std::uint64_t stop = std::stoull(parts[1], &used);
        if (used != parts[1].size()) return false;
        std::uint64_t step = 1;
        if (parts.size() == 3) {
            step = std::stoull(parts[2], &used);
            if (used != parts[2].size() || step == 0) return false;
        }
        for (std::uint64_t v = start; v <= stop; v += step) axis.values.push_back(v);
    } catch (const std::exception &) {
        return false;
    }
    return true;
}

std::string sanitize_cell(std::string s) {
    for (auto &c : s)
        if (c == '\t' || c == '\n') c = ' ';
    return s;
}

int write_text(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return 0;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot open " << path << " for writing\n";
        return 1;
    }
    out << text;
    return 0;
}

int cmd_run(const ConfigBuilder &builder, const std::string &seed, const std::string &out_path) {
    kcg_config *config = kcg_config_new();
    if (builder.apply(config) != 0 || kcg_config_set(config, "seed", seed.c_str()) != KCG_OK) {
        kcg_config_free(config);
        std::cerr << "config error: " << kcg_last_error() << "\n";
        return 1;
    }
    kcg_result *result = nullptr;
    const int rc = kcg_run(config, &result);
    kcg_config_free(config);
    if (rc != KCG_OK) {
        std::cerr << "error: " << kcg_last_error() << "\n";
        return 1;
    }
    const int file_rc = write_text(out_path, kcg_result_trace(result));
    std::cerr << kcg_result_report(result) << "\n";
    const int outcome = kcg_result_outcome(result);
    kcg_result_free(result);
    if (file_rc != 0) return 1;
    return outcome == KCG_PLAYER_ALICE ? 0 : 2;
}

int cmd_verify(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "cannot read " << path << "\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    kcg_result *result = nullptr;
    const int rc = kcg_verify(text.c_str(), text.size(), &result);
    if (rc == KCG_OK) {
        std::cout << "ok: " << kcg_result_report(result) << "\n";
        kcg_result_free(result);
        return 0;
    }
    std::cerr << "invalid: " << kcg_last_error() << "\n";
    if (result) kcg_result_free(result);
    return 1;
}

int cmd_sweep(const ConfigBuilder &builder, const std::string &game,
              const std::vector<std::string> &axis_specs, const std::string &seeds_spec,
              const std::string &out_path) {
    std::vector<Axis> axes;
    for (const auto &spec : axis_specs) {
        Axis axis;
        if (!parse_axis(spec, axis)) {
            std::cerr << "bad axis '" << spec << "', expected key=start:stop[:step]\n";
            return 1;
        }
        axes.push_back(std::move(axis));
    }
    std::vector<std::uint64_t> seeds;
    {
        Axis seed_axis;
        if (parse_axis("seed=" + seeds_spec, seed_axis)) {
            seeds = seed_axis.values;
        } else {
            try {
                const std::uint64_t count = std::stoull(seeds_spec);
                for (std::uint64_t s = 0; s < count; ++s) seeds.push_back(s);
            } catch (const std::exception &) {
                std::cerr << "bad --seeds '" << seeds_spec << "', expected count or start:stop\n";
                return 1;
            }
        }
    }

    std::vector<std::string> metric_columns = split(kcg_metric_names(game.c_str()), ',');
    if (metric_columns.size() == 1 && metric_columns[0].empty()) metric_columns.clear();

    std::ostringstream table;
    table << "row";
    for (const auto &axis : axes) table << '\t' << axis.key;
    table << "\tseed\toutcome\trounds\tquiescent";
    for (const auto &name : metric_columns) table << '\t' << name;
    table << "\terror\n";

    std::vector<std::size_t> cursor(axes.size(), 0);
    std::uint64_t row = 0;
    bool done = false;
    for (const auto &axis : axes)
        if (axis.values.empty()) done = true;
    while (!done) {
        for (const auto seed : seeds) {
            table << row;
            kcg_config *config = kcg_config_new();
            int prep = builder.apply(config);
            for (std::size_t i = 0; i < axes.size(); ++i) {
                table << '\t' << axes[i].values[cursor[i]];
                if (prep == 0)
                    prep = kcg_config_set(config, axes[i].key.c_str(),
                                          std::to_string(axes[i].values[cursor[i]]).c_str()) == KCG_OK
                               ? 0
                               : 1;
            }
            table << '\t' << seed;
            if (prep == 0)
                prep = kcg_config_set(config, "seed", std::to_string(seed).c_str()) == KCG_OK ? 0 : 1;
            kcg_result *result = nullptr;
            const int rc = prep == 0 ? kcg_run(config, &result) : KCG_ERR_INTERNAL;
            kcg_config_free(config);
            if (rc == KCG_OK) {
                table << '\t' << (kcg_result_outcome(result) == KCG_PLAYER_ALICE ? "alice" : "bob");
                table << '\t' << kcg_result_rounds(result);
                table << '\t' << (kcg_result_quiescent(result) ? "true" : "false");
                std::map<std::string, std::string> metrics;
                for (std::size_t i = 0; i < kcg_result_metric_count(result); ++i)
                    metrics[kcg_result_metric_name(result, i)] = kcg_result_metric_value(result, i);
                for (const auto &name : metric_columns) {
                    auto it = metrics.find(name);
                    table << '\t' << (it == metrics.end() ? "-" : sanitize_cell(it->second));
                }
                table << "\t\n";
                kcg_result_free(result);
            } else {
                table << "\t-\t0\t-";
                for (std::size_t i = 0; i < metric_columns.size(); ++i) table << "\t-";
                table << '\t' << sanitize_cell(kcg_last_error()) << "\n";
                if (result) kcg_result_free(result);
            }
            ++row;
        }
        // advance the cross product, last axis fastest
        done = true;
        for (std::size_t i = axes.size(); i-- > 0;) {
            if (++cursor[i] < axes[i].values.size()) {
                done = false;
                break;
            }
            cursor[i] = 0;
        }
        if (axes.empty()) done = true;
    }
    return write_text(out_path, table.str());
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"enumeration-game simulator and trace verifier"};
    app.require_subcommand(1);

    auto *run = app.add_subcommand("run", "play one match and write its trace");
    ConfigBuilder run_builder{run, {}, {}};
    add_game_flags(run_builder);
    std::string run_seed, run_out;
    run->add_option("--seed", run_seed, "match seed (required)")->required();
    run->add_option("--out", run_out, "trace output path ('-' = stdout)");

    auto *verify = app.add_subcommand("verify", "replay and check a trace file");
    std::string verify_path;
    verify->add_option("--in", verify_path, "trace file path")->required();

    auto *sweep = app.add_subcommand("sweep", "run a parameter/seed sweep, print a TSV table");
    ConfigBuilder sweep_builder{sweep, {}, {}};
    add_game_flags(sweep_builder);
    std::vector<std::string> sweep_axes;
    std::string sweep_seeds = "1", sweep_out, sweep_game;
    sweep->add_option("--axis", sweep_axes, "axis as key=start:stop[:step]; repeatable");
    sweep->add_option("--seeds", sweep_seeds, "seed count or start:stop (required)")->required();
    sweep->add_option("--out", sweep_out, "table output path ('-' = stdout)");

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return cmd_run(run_builder, run_seed, run_out);
    if (verify->parsed()) return cmd_verify(verify_path);
    if (sweep->parsed()) {
        auto it = sweep_builder.storage.find("game");
        sweep_game = it == sweep_builder.storage.end() ? "" : it->second;
        if (sweep_game.empty()) {
            std::cerr << "sweep requires --game\n";
            return 1;
        }
        return cmd_sweep(sweep_builder, sweep_game, sweep_axes, sweep_seeds, sweep_out);
    }
    return 1;
}
