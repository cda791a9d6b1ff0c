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

#include "revmix/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

#include "revmix/errors.h"
#include "revmix/feistel.h"
#include "revmix/operator_expr.h"
#include "revmix/parallel.h"
#include "revmix/paths.h"
#include "revmix/regions.h"
#include "revmix/spectral.h"
#include "revmix/tuple_state.h"

namespace revmix {

using json = nlohmann::ordered_json;

const std::vector<std::string> &experiment_names() {
    static const std::vector<std::string> names = {
        "gap",        "design",      "tv", "verify", "eigencheck", "compare", "regioncheck", "feistel-collision",
        "feistel-uniformity", "expr",
    };
    return names;
}

namespace {

template <class T>
void read_opt(const json &j, const char *key, std::optional<T> &dst) {
    if (j.contains(key)) {
        dst = j.at(key).get<T>();
    }
}

void read_str(const json &j, const char *key, std::string &dst) {
    if (j.contains(key)) {
        dst = j.at(key).get<std::string>();
    }
}

OutputFormat parse_format(const std::string &s) {
    if (s == "jsonl") {
        return OutputFormat::jsonl;
    }
    if (s == "csv") {
        return OutputFormat::csv;
    }
    throw UsageError("format must be jsonl or csv, got '" + s + "'");
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const json &j) {
    static const std::vector<std::string> known = {
        "experiment", "n",   "k",      "m",      "ell", "t",      "s",         "q",       "trials",    "seed",
        "arch",       "dist", "op",    "expr",   "method", "out", "format", "cap", "dense_cap", "workers", "tolerance",
    };
    if (!j.is_object()) {
        throw UsageError("config must be a JSON object");
    }
    for (const auto &[key, value] : j.items()) {
        if (std::find(known.begin(), known.end(), key) == known.end()) {
            throw UsageError("unknown config key '" + key + "'");
        }
    }
    ExperimentConfig c;
    try {
        read_str(j, "experiment", c.experiment);
        read_opt(j, "n", c.n);
        read_opt(j, "k", c.k);
        read_opt(j, "m", c.m);
        read_opt(j, "ell", c.ell);
        read_opt(j, "t", c.t);
        read_opt(j, "s", c.s);
        read_opt(j, "q", c.q);
        read_opt(j, "trials", c.trials);
        read_opt(j, "seed", c.seed);
        read_str(j, "arch", c.arch);
        read_str(j, "dist", c.dist);
        read_str(j, "op", c.op);
        read_str(j, "expr", c.expr);
        read_str(j, "method", c.method);
        read_str(j, "out", c.out);
        if (j.contains("format")) {
            c.format = parse_format(j.at("format").get<std::string>());
        }
        read_opt(j, "cap", c.state_cap);
        read_opt(j, "dense_cap", c.dense_cap);
        read_opt(j, "workers", c.workers);
        if (j.contains("tolerance")) {
            c.tolerance = j.at("tolerance").get<double>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw UsageError(std::string("bad config value: ") + e.what());
    }
    return c;
}

json ExperimentConfig::params() const {
    json p;
    auto put = [&](const char *key, const auto &opt) {
        if (opt) {
            p[key] = *opt;
        }
    };
    put("n", n);
    put("k", k);
    put("m", m);
    put("ell", ell);
    put("t", t);
    put("s", s);
    put("q", q);
    put("trials", trials);
    if (!op.empty()) {
        p["op"] = op;
    } else if (experiment != "eigencheck" && experiment != "regioncheck" && experiment.rfind("feistel", 0) != 0) {
        p["arch"] = arch;
        p["dist"] = dist;
    }
    if (!expr.empty()) {
        p["expr"] = expr;
    }
    if (method != "auto") {
        p["method"] = method;
    }
    return p;
}

json ResultRecord::to_json() const {
    json j;
    j["experiment"] = experiment;
    j["params"] = params;
    json v = json::object();
    for (const auto &rv : values) {
        v[rv.name] = rv.value;
    }
    j["values"] = v;
    j["method"] = method;
    j["residual"] = residual ? json(*residual) : json(nullptr);
    j["tolerance"] = tolerance ? json(*tolerance) : json(nullptr);
    j["pass"] = pass;
    j["runtime_ms"] = runtime_ms;
    j["seed"] = seed;
    j["version"] = version;
    if (!error.empty()) {
        j["error"] = error;
    }
    return j;
}

ResultRecord ResultRecord::from_json(const json &j) {
    ResultRecord r;
    try {
        r.experiment = j.at("experiment").get<std::string>();
        r.params = j.at("params");
        for (const auto &[name, value] : j.at("values").items()) {
            r.values.push_back(ResultValue{name, value});
        }
        r.method = j.at("method").get<std::string>();
        if (!j.at("residual").is_null()) {
            r.residual = j.at("residual").get<double>();
        }
        if (!j.at("tolerance").is_null()) {
            r.tolerance = j.at("tolerance").get<double>();
        }
        r.pass = j.at("pass").get<bool>();
        r.runtime_ms = j.at("runtime_ms").get<double>();
        r.seed = j.at("seed").get<uint64_t>();
        r.version = j.at("version").get<std::string>();
        if (j.contains("error")) {
            r.error = j.at("error").get<std::string>();
        }
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("record does not match the schema: ") + e.what());
    }
    return r;
}

OperatorSpec config_operator(const ExperimentConfig &c) {
    const int n = c.n.value();
    const int k = c.k.value();
    if (!c.op.empty()) {
        return parse_operator_spec(c.op, n, k);
    }
    GateDist dist;
    try {
        dist = parse_gate_dist(c.dist);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    Architecture arch;
    try {
        arch = parse_architecture(c.arch);
    } catch (const Error &e) {
        throw UsageError(e.what());
    }
    switch (arch) {
        case Architecture::generic:
            return OperatorSpec::r_subset(n, k, n, dist);
        case Architecture::nearest_neighbor:
            return OperatorSpec::r_nn(n, k, {}, dist);
        case Architecture::brickwork:
            return OperatorSpec::r_brickwork(n, k, dist);
    }
    throw UsageError("unknown architecture");
}

namespace {

enum class Need { none, state, dense };

void require(const ExperimentConfig &c, std::initializer_list<std::pair<const char *, bool>> fields) {
    for (const auto &[name, present] : fields) {
        if (!present) {
            throw UsageError(c.experiment + " needs --" + std::string(name));
        }
    }
}

void check_positive(const char *name, long long v, long long lo) {
    if (v < lo) {
        throw UsageError(std::string(name) + " must be at least " + std::to_string(lo) + ", got " + std::to_string(v));
    }
}

void check_shape(int n, int k, const char *wires, int min_wires) {
    if (n < min_wires) {
        throw UsageError(std::string(wires) + "=" + std::to_string(n) + " is too small: gates need 3 wires");
    }
    check_positive("k", k, 1);
    if (n * k > 62) {
        throw SizeCapError("n*k=" + std::to_string(n * k) + " exceeds the 62-bit state index");
    }
}

bool use_dense(const ExperimentConfig &c, const TupleShape &shape) {
    if (c.method == "dense") {
        return true;
    }
    if (c.method == "power") {
        return false;
    }
    if (c.method != "auto") {
        throw UsageError("method must be dense, power, or auto, got '" + c.method + "'");
    }
    return shape.dim() <= dense_cap();
}

/// Name of the statement head, e.g. "norm" in "norm(...)", and its argument text.
std::pair<std::string, std::string> split_call(const std::string &text) {
    size_t open = text.find('(');
    size_t close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        throw UsageError("statement must look like name(...), got '" + text + "'");
    }
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t");
        size_t e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    if (!trim(text.substr(close + 1)).empty()) {
        throw UsageError("trailing text after statement '" + text + "'");
    }
    return {trim(text.substr(0, open)), trim(text.substr(open + 1, close - open - 1))};
}

Need requirement(const ExperimentConfig &c) {
    const std::string &e = c.experiment;
    if (e == "gap") {
        require(c, {{"n", bool(c.n)}, {"k", bool(c.k)}});
        check_shape(*c.n, *c.k, "n", 3);
        return use_dense(c, TupleShape{*c.n, *c.k}) ? Need::dense : Need::state;
    }
    if (e == "design" || e == "tv") {
        require(c, {{"n", bool(c.n)}, {"k", bool(c.k)}, {"t", bool(c.t)}});
        check_shape(*c.n, *c.k, "n", 3);
        check_positive("t", *c.t, e == "tv" ? 0 : 1);
        return e == "design" ? Need::dense : Need::state;
    }
    if (e == "verify" || e == "compare") {
        require(c, {{"n", bool(c.n)}, {"k", bool(c.k)}});
        check_shape(*c.n, *c.k, "n", 3);
        return Need::dense;
    }
    if (e == "expr") {
        require(c, {{"n", bool(c.n)}, {"k", bool(c.k)}, {"expr", !c.expr.empty()}});
        check_shape(*c.n, *c.k, "n", 1);
        std::string head = split_call(c.expr).first;
        if (head == "norm") {
            return use_dense(c, TupleShape{*c.n, *c.k}) ? Need::dense : Need::state;
        }
        if (head == "lambda2") {
            return Need::dense;
        }
        if (head == "qform") {
            return Need::state;
        }
        throw UsageError("unknown statement '" + head + "'; expected norm, lambda2, or qform");
    }
    if (e == "eigencheck") {
        require(c, {{"m", bool(c.m)}, {"k", bool(c.k)}});
        check_shape(*c.m, *c.k, "m", 2);
        return Need::state;
    }
    if (e == "regioncheck") {
        require(c, {{"m", bool(c.m)}, {"k", bool(c.k)}, {"ell", bool(c.ell)}});
        check_shape(*c.m, *c.k, "m", 3);
        try {
            check_suffix_window(*c.m, *c.ell);
        } catch (const Error &err) {
            throw UsageError(err.what());
        }
        return Need::state;
    }
    if (e == "feistel-collision" || e == "feistel-uniformity") {
        require(c, {{"n", bool(c.n)}, {"s", bool(c.s)}, {"q", bool(c.q)}, {"trials", bool(c.trials)}});
        check_positive("n", *c.n, 1);
        check_positive("s", *c.s, 1);
        check_positive("q", *c.q, 1);
        check_positive("trials", (long long)*c.trials, 1);
        const int N = *c.n * *c.s;
        if (N > 64) {
            throw UsageError("n*s must be at most 64");
        }
        if (N < 63 && uint64_t(*c.q) > (uint64_t{1} << N)) {
            throw UsageError("q exceeds the number of distinct rows 2^(n*s)");
        }
        if (e == "feistel-uniformity" && *c.n > 16) {
            throw SizeCapError("uniformity histograms need n <= 16");
        }
        return Need::none;
    }
    throw UsageError("unknown experiment '" + e + "'");
}

void apply_settings(const ExperimentConfig &c) {
    if (c.state_cap) {
        set_state_cap(*c.state_cap);
    }
    if (c.dense_cap) {
        set_dense_cap(*c.dense_cap);
    }
    if (c.workers) {
        if (*c.workers < 1) {
            throw UsageError("workers must be at least 1");
        }
        set_worker_count(*c.workers);
    }
}

FunctionVector parse_function(const std::string &text, int n, int k) {
    if (text == "one") {
        return FunctionVector(TupleShape{n, k}, 1.0);
    }
    auto [head, body] = split_call(text);
    if (head != "chi") {
        throw UsageError("function must be 'one' or chi({..};..), got '" + text + "'");
    }
    FourierIndex idx;
    size_t pos = 0;
    while (pos <= body.size()) {
        size_t end = body.find(';', pos);
        std::string part = body.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        part.erase(std::remove(part.begin(), part.end(), ' '), part.end());
        if (part.size() < 2 || part.front() != '{' || part.back() != '}') {
            throw UsageError("character row must be a set like {1,2}, got '" + part + "'");
        }
        std::vector<int> set;
        std::string inner = part.substr(1, part.size() - 2);
        size_t p = 0;
        while (p < inner.size()) {
            size_t comma = inner.find(',', p);
            std::string tok = inner.substr(p, comma == std::string::npos ? std::string::npos : comma - p);
            try {
                set.push_back(std::stoi(tok));
            } catch (const std::exception &) {
                throw UsageError("bad wire '" + tok + "' in character");
            }
            if (comma == std::string::npos) {
                break;
            }
            p = comma + 1;
        }
        idx.sets.push_back(set);
        if (end == std::string::npos) {
            break;
        }
        pos = end + 1;
    }
    if (int(idx.sets.size()) != k) {
        throw UsageError("character has " + std::to_string(idx.sets.size()) + " rows, expected k=" +
                         std::to_string(k));
    }
    return chi_vector(idx, n, k);
}

/// Splits on commas outside brackets and parentheses.
std::vector<std::string> split_args(const std::string &s) {
    std::vector<std::string> out(1);
    int depth = 0;
    for (char ch : s) {
        if (ch == '(' || ch == '[' || ch == '{') {
            depth++;
        } else if (ch == ')' || ch == ']' || ch == '}') {
            depth--;
        }
        if (ch == ',' && depth == 0) {
            out.emplace_back();
        } else {
            out.back() += ch;
        }
    }
    for (auto &a : out) {
        size_t b = a.find_first_not_of(" \t");
        size_t e = a.find_last_not_of(" \t");
        a = b == std::string::npos ? std::string() : a.substr(b, e - b + 1);
    }
    return out;
}

}  // namespace

double evaluate_statement(const std::string &statement, int n, int k, std::string *method) {
    auto [head, body] = split_call(statement);
    if (head == "norm") {
        OperatorExpr e = parse_operator_expr(body, n, k);
        bool dense = TupleShape{n, k}.dim() <= dense_cap();
        SpectralReport r = op_norm(e, dense ? NormMethod::dense : NormMethod::power);
        if (!r.converged) {
            throw ConvergenceError("power iteration did not converge, residual " + std::to_string(r.residual));
        }
        if (method) {
            *method = to_string(r.method);
        }
        return r.value;
    }
    if (head == "lambda2") {
        Lambda2Report r = lambda2(parse_operator_expr(body, n, k));
        if (method) {
            *method = "dense";
        }
        if (r.degenerate) {
            throw ConvergenceError("degenerate spectrum: a single distinct eigenvalue");
        }
        return r.value;
    }
    if (head == "qform") {
        auto args = split_args(body);
        if (args.size() != 3) {
            throw UsageError("qform takes (f, expr, g)");
        }
        if (method) {
            *method = "matrix-free";
        }
        return quadratic_form(parse_function(args[0], n, k), parse_operator_expr(args[1], n, k),
                              parse_function(args[2], n, k));
    }
    throw UsageError("unknown statement '" + head + "'");
}

ResultRecord validate(const ExperimentConfig &config) {
    if (!config.seed) {
        throw UsageError("--seed is mandatory");
    }
    apply_settings(config);
    Need need = requirement(config);
    ResultRecord r;
    r.experiment = "validate";
    r.params = config.params();
    r.params["experiment"] = config.experiment;
    r.seed = *config.seed;
    r.method = "dry-run";
    uint64_t bytes = 0;
    if (need != Need::none) {
        const int wires = config.n ? *config.n : *config.m;
        const TupleShape shape{wires, *config.k};
        check_cap(shape, need == Need::dense ? dense_cap() : state_cap(), config.experiment);
        const uint64_t dim = shape.dim();
        bytes = 8 * dim;
        r.values.push_back({"vector_bytes", bytes});
        if (need == Need::dense) {
            r.values.push_back({"dense_matrix_bytes", 8 * dim * dim});
        }
    }
    r.values.push_back({"status", "ok"});
    return r;
}

namespace {

ResultRecord base_record(const ExperimentConfig &c) {
    ResultRecord r;
    r.experiment = c.experiment;
    r.params = c.params();
    r.seed = *c.seed;
    return r;
}

void add_spectral(ResultRecord &r, const SpectralReport &s) {
    r.method = to_string(s.method);
    r.residual = s.residual;
    r.tolerance = s.tolerance;
    r.values.push_back({"iterations", s.iterations});
    r.pass = s.converged;
}

std::vector<ResultRecord> execute(const ExperimentConfig &c) {
    const std::string &e = c.experiment;
    std::vector<ResultRecord> out;
    PowerOptions power;
    power.tolerance = c.tolerance;
    power.seed = *c.seed;
    if (e == "gap") {
        OperatorSpec spec = config_operator(c);
        ResultRecord r = base_record(c);
        auto method = use_dense(c, spec.shape()) ? NormMethod::dense : NormMethod::power;
        SpectralReport s = spectral_gap(spec, method, power);
        r.values.push_back({"operator", spec.to_string()});
        r.values.push_back({"gap", s.value});
        add_spectral(r, s);
        if (!s.converged) {
            throw ConvergenceError("power iteration did not converge for " + spec.to_string());
        }
        out.push_back(r);
    } else if (e == "design") {
        OperatorSpec spec = config_operator(c);
        DesignEpsilon d = design_epsilon(spec, *c.t);
        ResultRecord r = base_record(c);
        r.method = "dense";
        r.values.push_back({"operator", spec.to_string()});
        r.values.push_back({"direct", d.direct});
        r.values.push_back({"telescoped", d.telescoped});
        r.tolerance = c.tolerance;
        r.residual = std::abs(d.direct - d.telescoped);
        r.pass = *r.residual <= c.tolerance;
        out.push_back(r);
    } else if (e == "tv") {
        OperatorSpec spec = config_operator(c);
        ResultRecord r = base_record(c);
        r.method = "exact";
        r.values.push_back({"operator", spec.to_string()});
        r.values.push_back({"tv", kwise_tv(spec, *c.t)});
        out.push_back(r);
    } else if (e == "verify") {
        OperatorSpec spec = config_operator(c);
        AxiomReport rep = verify_operator_axioms(spec);
        ResultRecord r = base_record(c);
        r.method = "dense";
        r.values.push_back({"operator", rep.spec});
        for (const auto &ch : rep.checks) {
            json v;
            v["checked"] = ch.checked;
            v["deviation"] = ch.deviation;
            v["tolerance"] = ch.tolerance;
            v["pass"] = ch.pass;
            r.values.push_back({ch.name, v});
        }
        r.pass = rep.all_pass();
        out.push_back(r);
    } else if (e == "eigencheck") {
        FourierReport f = fourier_eigencheck(*c.m, *c.k);
        ResultRecord r = base_record(c);
        r.method = "matrix-free";
        r.values.push_back({"characters", f.characters});
        r.values.push_back({"singleton_characters", f.singleton_characters});
        r.values.push_back({"max_deviation", f.max_deviation});
        r.tolerance = 1e-12;
        r.pass = f.max_deviation <= 1e-12;
        out.push_back(r);
    } else if (e == "compare") {
        const int n = *c.n;
        PathMap pm = PathMap::deterministic(general_generators(n), nn_generators(n, [&] {
                                                std::vector<int> a(n - 2);
                                                std::iota(a.begin(), a.end(), 1);
                                                return a;
                                            }()),
                                            [n](const GeneratorEdge &g) {
                                                return general_to_nn_path(n, g.gate, g.site);
                                            });
        ComparisonReport cr = comparison_check(n, *c.k, pm, c.tolerance);
        ResultRecord r = base_record(c);
        r.method = "dense";
        r.values.push_back({"lambda2_general", cr.lambda2_domain});
        r.values.push_back({"lambda2_nn", cr.lambda2_codomain});
        r.values.push_back({"B", cr.B});
        r.values.push_back({"division_reading", cr.division_reading});
        r.values.push_back({"printed_reading", cr.printed_reading});
        r.tolerance = c.tolerance;
        r.pass = cr.division_reading;
        out.push_back(r);
    } else if (e == "regioncheck") {
        for (const RegionCheck &ch : region_bound_checks(*c.m, *c.k, *c.ell)) {
            ResultRecord r = base_record(c);
            r.method = "exact";
            r.values.push_back({"check", ch.name});
            r.values.push_back({"observed", ch.observed});
            r.values.push_back({"bound", ch.bound});
            r.values.push_back({"exact_zero", ch.exact_zero});
            r.values.push_back({"asserted", ch.asserted});
            r.values.push_back({"holds", ch.pass});
            r.pass = ch.pass || !ch.asserted;
            out.push_back(r);
        }
    } else if (e == "feistel-collision") {
        CollisionStats st = phase1_collision_experiment(*c.n, *c.s, *c.q, *c.trials, *c.seed);
        ResultRecord r = base_record(c);
        r.method = "monte-carlo";
        r.values.push_back({"failures", st.failures});
        r.values.push_back({"frequency", st.frequency});
        r.values.push_back({"bound", st.bound});
        r.values.push_back({"three_sigma", st.three_sigma});
        r.pass = st.frequency <= st.bound + st.three_sigma;
        out.push_back(r);
    } else if (e == "feistel-uniformity") {
        UniformityStats st = uniformity_experiment(*c.n, *c.s, *c.q, *c.trials, *c.seed);
        ResultRecord r = base_record(c);
        r.method = "monte-carlo";
        r.values.push_back({"chi_square", st.chi_square});
        r.values.push_back({"p_value", st.p_value});
        r.values.push_back({"min_p_bonferroni", st.min_p_bonferroni});
        r.values.push_back({"max_pair_collision", st.max_pair_collision});
        r.values.push_back({"pair_collision_ceiling", st.pair_collision_ceiling});
        r.values.push_back({"uniform", st.uniform});
        r.pass = st.uniform;
        out.push_back(r);
    } else if (e == "expr") {
        ResultRecord r = base_record(c);
        r.values.push_back({"statement", c.expr});
        r.values.push_back({"value", evaluate_statement(c.expr, *c.n, *c.k, &r.method)});
        out.push_back(r);
    }
    return out;
}

ResultRecord error_record(const ExperimentConfig &c, const std::string &what) {
    ResultRecord r;
    r.experiment = c.experiment;
    try {
        r.params = c.params();
    } catch (...) {
        r.params = json::object();
    }
    r.seed = c.seed.value_or(0);
    r.method = "none";
    r.pass = false;
    r.error = what;
    return r;
}

}  // namespace

RunResult run(const ExperimentConfig &config) {
    RunResult result;
    const int saved_workers = worker_count();
    const uint64_t saved_state = state_cap();
    const uint64_t saved_dense = dense_cap();
    try {
        validate(config);
        auto start = std::chrono::steady_clock::now();
        result.records = execute(config);
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        for (auto &r : result.records) {
            r.runtime_ms = ms / double(result.records.size());
            if (!r.pass) {
                result.exit_code = kExitFailure;
            }
        }
    } catch (const SizeCapError &e) {
        result.exit_code = kExitCap;
        result.records = {error_record(config, e.what())};
    } catch (const ConvergenceError &e) {
        result.exit_code = kExitConvergence;
        result.records = {error_record(config, e.what())};
    } catch (const Error &e) {
        result.exit_code = kExitUsage;
        result.records = {error_record(config, e.what())};
    }
    set_worker_count(saved_workers);
    set_state_cap(saved_state);
    set_dense_cap(saved_dense);
    return result;
}

namespace {

std::string csv_field(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char ch : s) {
        out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    }
    return out + "\"";
}

}  // namespace

void write_records(const std::vector<ResultRecord> &records, OutputFormat format, std::ostream &out) {
    if (format == OutputFormat::jsonl) {
        for (const auto &r : records) {
            out << r.to_json().dump() << "\n";
        }
        return;
    }
    out << "experiment,params,name,value,method,residual,tolerance,pass,runtime_ms,seed,version,error\n";
    for (const auto &r : records) {
        auto opt = [](const std::optional<double> &v) { return v ? json(*v).dump() : std::string(); };
        auto row = [&](const std::string &name, const json &value) {
            out << csv_field(r.experiment) << ',' << csv_field(r.params.dump()) << ',' << csv_field(name) << ','
                << csv_field(value.is_string() ? value.get<std::string>() : value.dump()) << ','
                << csv_field(r.method) << ',' << opt(r.residual) << ',' << opt(r.tolerance) << ','
                << (r.pass ? "true" : "false") << ',' << json(r.runtime_ms).dump() << ',' << r.seed << ','
                << csv_field(r.version) << ',' << csv_field(r.error) << '\n';
        };
        if (r.values.empty()) {
            row("", json(nullptr));
        }
        for (const auto &v : r.values) {
            row(v.name, v.value);
        }
    }
}

}  // namespace revmix
