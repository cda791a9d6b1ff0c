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

#ifndef REVMIX_EXPERIMENT_H
#define REVMIX_EXPERIMENT_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "revmix/operator_spec.h"

namespace revmix {

inline constexpr const char *kToolVersion = "revmix 1.0.0";

enum class OutputFormat { jsonl, csv };

/// Experiment names accepted by run().
const std::vector<std::string> &experiment_names();

/// One batch job. Unset numeric fields take per-experiment defaults.
struct ExperimentConfig {
    std::string experiment;
    std::optional<int> n, k, m, ell, t, s, q;
    std::optional<uint64_t> trials;
    std::optional<uint64_t> seed;
    std::string arch = "nn";
    std::string dist = "alt";
    /// Explicit operator text such as "R[m=3]"; overrides arch and dist.
    std::string op;
    /// Statement for the expr experiment, e.g. "norm(R[nn] - R[full])".
    std::string expr;
    /// dense, power, or auto (dense when under the dense cap).
    std::string method = "auto";
    std::string out;
    OutputFormat format = OutputFormat::jsonl;
    std::optional<uint64_t> state_cap;
    std::optional<uint64_t> dense_cap;
    std::optional<int> workers;
    double tolerance = 1e-10;

    /// Reads the keys of a JSON object. Unknown keys are a UsageError.
    static ExperimentConfig from_json(const nlohmann::ordered_json &j);
    nlohmann::ordered_json params() const;
};

/// Exit statuses of run().
enum ExitCode { kExitOk = 0, kExitFailure = 1, kExitUsage = 2, kExitCap = 3, kExitConvergence = 4 };

/// One value of a record.
struct ResultValue {
    std::string name;
    nlohmann::ordered_json value;
};

struct ResultRecord {
    std::string experiment;
    nlohmann::ordered_json params;
    std::vector<ResultValue> values;
    std::string method;
    std::optional<double> residual;
    std::optional<double> tolerance;
    /// False when a checked quantity misses its bound.
    bool pass = true;
    double runtime_ms = 0.0;
    uint64_t seed = 0;
    std::string version = kToolVersion;
    std::string error;

    nlohmann::ordered_json to_json() const;
    static ResultRecord from_json(const nlohmann::ordered_json &j);
};

struct RunResult {
    int exit_code = kExitOk;
    std::vector<ResultRecord> records;
};

/// Checks parameters and resource caps without computing. Throws UsageError
/// or SizeCapError. Returns the diagnostic record of the validate experiment.
ResultRecord validate(const ExperimentConfig &config);

/// Validates, then runs. Library errors are mapped to exit codes and reported
/// as a record with a nonempty error field.
RunResult run(const ExperimentConfig &config);

/// Operator chosen by op, or by arch and dist.
OperatorSpec config_operator(const ExperimentConfig &config);

void write_records(const std::vector<ResultRecord> &records, OutputFormat format, std::ostream &out);

/// Evaluates "norm(E)", "lambda2(E)", or "qform(F, E, G)" where F and G are
/// "one" or a character such as "chi({1};{2})".
double evaluate_statement(const std::string &statement, int n, int k, std::string *method = nullptr);

}  // namespace revmix

#endif
