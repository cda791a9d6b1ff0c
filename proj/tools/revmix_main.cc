// Copyright 2026 The revmix Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// revmix command line: one subcommand per experiment, records to --out or stdout.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>

#include "CLI11.hpp"
#include "revmix/errors.h"
#include "revmix/experiment.h"
#include "revmix/feistel.h"
#include "revmix/paths.h"

namespace {

using revmix::ExperimentConfig;

/// Flag storage for one subcommand. Set flags override --config.
struct Flags {
    int n = 0, k = 0, m = 0, ell = 0, t = 0, s = 0, q = 0, workers = 0;
    uint64_t trials = 0, seed = 0, cap = 0, dense_cap = 0;
    std::string arch, dist, op, expr, method, out, format, config, experiment;
    double tolerance = 0.0;
    std::map<std::string, CLI::Option *> opts;

    bool given(const std::string &name) const {
        auto it = opts.find(name);
        return it != opts.end() && it->second->count() > 0;
    }
};

void add_flags(CLI::App *cmd, Flags &f) {
    f.opts["n"] = cmd->add_option("--n", f.n, "wires (block width for feistel)");
    f.opts["k"] = cmd->add_option("--k", f.k, "tuple size");
    f.opts["m"] = cmd->add_option("--m", f.m, "wires for eigencheck and regioncheck");
    f.opts["ell"] = cmd->add_option("--ell", f.ell, "suffix window parameter");
    f.opts["t"] = cmd->add_option("--t", f.t, "steps");
    f.opts["s"] = cmd->add_option("--s", f.s, "blocks");
    f.opts["q"] = cmd->add_option("--q", f.q, "rows");
    f.opts["trials"] = cmd->add_option("--trials", f.trials, "Monte Carlo trials");
    f.opts["seed"] = cmd->add_option("--seed", f.seed, "master seed");
    f.opts["arch"] = cmd->add_option("--arch", f.arch, "generic, nn, or brickwork")
                         ->check(CLI::IsMember({"generic", "nn", "brickwork"}));
    f.opts["dist"] = cmd->add_option("--dist", f.dist, "alt or des2")->check(CLI::IsMember({"alt", "des2"}));
    f.opts["op"] = cmd->add_option("--op", f.op, "operator text, e.g. R[m=3]; overrides --arch and --dist");
    f.opts["expr"] = cmd->add_option("--expr", f.expr, "statement: norm(E), lambda2(E), or qform(f, E, g)");
    f.opts["method"] = cmd->add_option("--method", f.method, "dense, power, or auto")
                           ->check(CLI::IsMember({"dense", "power", "auto"}));
    f.opts["out"] = cmd->add_option("--out", f.out, "output path (default stdout)");
    f.opts["format"] = cmd->add_option("--format", f.format, "jsonl or csv")->check(CLI::IsMember({"jsonl", "csv"}));
    f.opts["cap"] = cmd->add_option("--cap", f.cap, "largest state-space dimension");
    f.opts["dense_cap"] = cmd->add_option("--dense-cap", f.dense_cap, "largest dense matrix dimension");
    f.opts["workers"] = cmd->add_option("--workers", f.workers, "worker threads");
    f.opts["tolerance"] = cmd->add_option("--tolerance", f.tolerance, "numeric tolerance");
    f.opts["config"] = cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
}

ExperimentConfig build_config(const std::string &experiment, const Flags &f) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    if (f.given("config")) {
        std::ifstream in(f.config);
        if (!in) {
            throw revmix::UsageError("cannot read config " + f.config);
        }
        try {
            j = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::exception &e) {
            throw revmix::UsageError("config " + f.config + ": " + e.what());
        }
    }
    ExperimentConfig c = ExperimentConfig::from_json(j);
    if (!experiment.empty()) {
        c.experiment = experiment;
    }
    auto set_int = [&](const char *name, int v, std::optional<int> &dst) {
        if (f.given(name)) {
            dst = v;
        }
    };
    set_int("n", f.n, c.n);
    set_int("k", f.k, c.k);
    set_int("m", f.m, c.m);
    set_int("ell", f.ell, c.ell);
    set_int("t", f.t, c.t);
    set_int("s", f.s, c.s);
    set_int("q", f.q, c.q);
    set_int("workers", f.workers, c.workers);
    if (f.given("trials")) {
        c.trials = f.trials;
    }
    if (f.given("seed")) {
        c.seed = f.seed;
    }
    if (f.given("cap")) {
        c.state_cap = f.cap;
    }
    if (f.given("dense_cap")) {
        c.dense_cap = f.dense_cap;
    }
    auto set_str = [&](const char *name, const std::string &v, std::string &dst) {
        if (f.given(name)) {
            dst = v;
        }
    };
    set_str("arch", f.arch, c.arch);
    set_str("dist", f.dist, c.dist);
    set_str("op", f.op, c.op);
    set_str("expr", f.expr, c.expr);
    set_str("method", f.method, c.method);
    set_str("out", f.out, c.out);
    if (f.given("format")) {
        c.format = f.format == "csv" ? revmix::OutputFormat::csv : revmix::OutputFormat::jsonl;
    }
    if (f.given("tolerance")) {
        c.tolerance = f.tolerance;
    }
    return c;
}

int emit(const ExperimentConfig &c, const std::vector<revmix::ResultRecord> &records) {
    if (c.out.empty()) {
        revmix::write_records(records, c.format, std::cout);
        return 0;
    }
    std::ofstream file(c.out);
    if (!file) {
        std::cerr << "revmix: cannot write " << c.out << "\n";
        return revmix::kExitUsage;
    }
    revmix::write_records(records, c.format, file);
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"revmix: random reversible circuits, k-tuple walk operators, and reversible Feistel networks"};
    app.require_subcommand(1);

    std::map<std::string, std::unique_ptr<Flags>> flags;
    for (const auto &name : revmix::experiment_names()) {
        auto *cmd = app.add_subcommand(name, "run the " + name + " experiment");
        flags[name] = std::make_unique<Flags>();
        add_flags(cmd, *flags[name]);
    }
    auto *validate_cmd = app.add_subcommand("validate", "check parameters and caps of an experiment without running it");
    flags["validate"] = std::make_unique<Flags>();
    add_flags(validate_cmd, *flags["validate"]);
    validate_cmd->add_option("experiment", flags["validate"]->experiment, "experiment to check");

    std::string table_out;
    auto *table_cmd = app.add_subcommand("des2-table", "write the DES[2] word table for even 3-bit gates");
    table_cmd->add_option("--out", table_out, "output path")->required();

    int tt_n = 0, tt_s = 0;
    uint64_t tt_key = 0;
    std::string tt_format = "hex", tt_out;
    auto *tt_cmd = app.add_subcommand("truth-table", "export (x, pn(x)) over all inputs with toy block functions");
    tt_cmd->add_option("--n", tt_n, "block width")->required();
    tt_cmd->add_option("--s", tt_s, "blocks")->required();
    tt_cmd->add_option("--seed", tt_key, "toy family key")->required();
    tt_cmd->add_option("--format", tt_format, "hex or binary")->check(CLI::IsMember({"hex", "binary"}));
    tt_cmd->add_option("--out", tt_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : revmix::kExitUsage;
    }

    try {
        if (table_cmd->parsed()) {
            revmix::des2_table().save(table_out);
            return 0;
        }
        if (tt_cmd->parsed()) {
            auto bank = revmix::FunctionBank::toy(tt_n, tt_s, tt_key);
            auto text = revmix::pn_truth_table(
                bank, tt_format == "hex" ? revmix::TruthTableFormat::hex : revmix::TruthTableFormat::binary);
            if (tt_out.empty()) {
                std::cout << text;
            } else {
                std::ofstream(tt_out) << text;
            }
            return 0;
        }
        if (validate_cmd->parsed()) {
            ExperimentConfig c = build_config(flags["validate"]->experiment, *flags["validate"]);
            auto record = revmix::validate(c);
            return emit(c, {record});
        }
        for (const auto &name : revmix::experiment_names()) {
            if (app.got_subcommand(name)) {
                ExperimentConfig c = build_config(name, *flags[name]);
                revmix::RunResult r = revmix::run(c);
                for (const auto &rec : r.records) {
                    if (!rec.error.empty()) {
                        std::cerr << "revmix: " << rec.error << "\n";
                    }
                }
                int werr = emit(c, r.records);
                return werr ? werr : r.exit_code;
            }
        }
    } catch (const revmix::SizeCapError &e) {
        std::cerr << "revmix: " << e.what() << "\n";
        return revmix::kExitCap;
    } catch (const revmix::ConvergenceError &e) {
        std::cerr << "revmix: " << e.what() << "\n";
        return revmix::kExitConvergence;
    } catch (const revmix::Error &e) {
        std::cerr << "revmix: " << e.what() << "\n";
        return revmix::kExitUsage;
    }
    return revmix::kExitUsage;
}
