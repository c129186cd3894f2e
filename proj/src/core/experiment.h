// core/experiment.h

// Copyright 2026 diarkit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIARKIT_CORE_EXPERIMENT_H_
#define DIARKIT_CORE_EXPERIMENT_H_

#include <map>
#include <string>
#include <vector>

namespace diarkit {

struct ExperimentRow {
  std::string suite;
  std::string condition;
  std::string seed;  // per-seed index or "median"
  double der = 0.0;
};

// Suites: "oracle-vs-baseline" (oracle type split at threshold 0.0 against
// the single-model pipeline at -0.2), "balanced-vs-unbalanced" (mixture
// trained on a type-balanced subsample against the raw imbalanced pool),
// "prior-sweep" (mixture under uniform, paper, and oracle priors).
// Unknown names raise an error listing the suites.  `config` overrides the
// suite defaults (keys documented in the CLI help); everything is seeded,
// so equal inputs give equal tables.
std::vector<ExperimentRow> RunExperimentSuite(
    const std::string &suite,
    const std::map<std::string, std::string> &config);

// Tab-separated table: header suite/condition/seed/der, one row each, DER
// at 6 decimals; per-condition medians follow the per-seed rows.
std::string FormatExperimentTable(const std::vector<ExperimentRow> &rows);

}  // namespace diarkit

#endif  // DIARKIT_CORE_EXPERIMENT_H_
