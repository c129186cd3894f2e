// diarkit_cli.cc: command line front end over the public C API.

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

// Logs go to stderr, data to stdout or files.  Exit codes: 0 success,
// 2 missing input, 3 parse error, 4 numeric failure, 5 invalid usage,
// 6 I/O error, 1 anything else.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "diarkit/diarkit.h"

namespace {

struct CliExit {
  int code;
};

int ExitCodeFor(diarkit_status status) {
  switch (status) {
    case DIARKIT_OK:
      return 0;
    case DIARKIT_NOT_FOUND:
      return 2;
    case DIARKIT_PARSE_ERROR:
      return 3;
    case DIARKIT_NUMERIC_ERROR:
      return 4;
    case DIARKIT_INVALID_ARGUMENT:
      return 5;
    case DIARKIT_IO_ERROR:
      return 6;
    default:
      return 1;
  }
}

void Check(diarkit_status status) {
  if (status == DIARKIT_OK) return;
  std::cerr << "diarkit: error: " << diarkit_last_error() << "\n";
  throw CliExit{ExitCodeFor(status)};
}

const char *OrNull(const std::string &s) {
  return s.empty() ? nullptr : s.c_str();
}

void WriteTextFile(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary);
  if (os) os << text;
  if (!os) {
    std::cerr << "diarkit: error: cannot write '" << path << "'\n";
    throw CliExit{6};
  }
}

// Every subcommand accepts --config <file> with flat key = value lines
// (keys are the long flag names); explicit flags win.
void AddConfig(CLI::App *cmd) {
  cmd->set_config("--config", "",
                  "Flat key = value config file; explicit flags win");
}

constexpr const char *kPriorHelp =
    "Speaker type prior: uniform | paper | oracle:<M|F|C> | "
    "M=<p>,F=<p>,C=<p>";

struct TrainOpts {
  std::string embeddings, labels, model_out, prior;
  int iterations = 10;
  bool per_type = false;
  bool length_norm = false;
};

void AddTrain(CLI::App &app) {
  auto *cmd = app.add_subcommand("train", "Train a PLDA or mixture model");
  AddConfig(cmd);
  auto opt = std::make_shared<TrainOpts>();
  cmd->add_option("--embeddings", opt->embeddings, "Embedding file")
      ->required();
  cmd->add_option("--labels", opt->labels, "Speaker label file")->required();
  cmd->add_option("--model-out", opt->model_out, "Output model path")
      ->required();
  cmd->add_option("--iterations", opt->iterations, "EM iterations")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--per-type", opt->per_type,
                "Train one component per speaker type (mixture model)");
  cmd->add_option("--prior", opt->prior,
                  std::string(kPriorHelp) + "; stored as the mixture default");
  cmd->add_flag("--length-norm,!--no-length-norm", opt->length_norm,
                "Length-normalize embeddings to norm sqrt(dim)");
  cmd->callback([opt] {
    double *loglik = nullptr;
    size_t len = 0;
    if (opt->per_type) {
      Check(diarkit_train_mixture(opt->embeddings.c_str(),
                                  opt->labels.c_str(), opt->iterations,
                                  opt->length_norm ? 1 : 0,
                                  OrNull(opt->prior),
                                  opt->model_out.c_str(), &loglik, &len));
      const char types[3] = {'M', 'F', 'C'};
      size_t per = len / 3;
      for (size_t k = 0; k < len; ++k) {
        std::printf("component %c iter %zu objective %.10g\n",
                    types[k / per], k % per, loglik[k]);
      }
    } else {
      if (!opt->prior.empty()) {
        std::cerr << "diarkit: error: --prior needs --per-type\n";
        diarkit_doubles_free(loglik);
        throw CliExit{5};
      }
      Check(diarkit_train_plda(opt->embeddings.c_str(), opt->labels.c_str(),
                               opt->iterations, opt->length_norm ? 1 : 0,
                               opt->model_out.c_str(), &loglik, &len));
      for (size_t k = 0; k < len; ++k) {
        std::printf("iter %zu objective %.10g\n", k, loglik[k]);
      }
    }
    diarkit_doubles_free(loglik);
    std::cerr << "wrote model to " << opt->model_out << "\n";
  });
}

struct ScorePairOpts {
  std::string model, prior, embeddings;
  size_t i = 0, j = 0;
  bool mixture = false;
  bool length_norm = false;
};

void AddScorePair(CLI::App &app) {
  auto *cmd = app.add_subcommand(
      "score-pair", "Log likelihood ratio of two embedding records");
  AddConfig(cmd);
  auto opt = std::make_shared<ScorePairOpts>();
  cmd->add_option("--model", opt->model, "Model file")->required();
  cmd->add_flag("--mixture", opt->mixture, "Model file holds a mixture");
  cmd->add_option("--prior", opt->prior, kPriorHelp);
  cmd->add_option("--embeddings", opt->embeddings, "Embedding file")
      ->required();
  cmd->add_option("--i", opt->i, "First record index")->required();
  cmd->add_option("--j", opt->j, "Second record index")->required();
  cmd->add_flag("--length-norm,!--no-length-norm", opt->length_norm,
                "Length-normalize embeddings to norm sqrt(dim)");
  cmd->callback([opt] {
    if (!opt->prior.empty() && !opt->mixture) {
      std::cerr << "diarkit: error: --prior needs --mixture\n";
      throw CliExit{5};
    }
    double llr = 0.0;
    Check(diarkit_score_pair_file(opt->model.c_str(), opt->mixture ? 1 : 0,
                                  OrNull(opt->prior),
                                  opt->embeddings.c_str(), opt->i, opt->j,
                                  opt->length_norm ? 1 : 0, &llr));
    std::printf("%.12g\n", llr);
  });
}

struct DiarizeOpts {
  std::string mode = "single";
  std::string model, embeddings, sad, types, posteriors, prior, stop;
  std::string rttm_out;
  bool length_norm = false;
  int jobs = 1;
};

void AddDiarize(CLI::App &app) {
  auto *cmd =
      app.add_subcommand("diarize", "Cluster segment embeddings into turns");
  AddConfig(cmd);
  auto opt = std::make_shared<DiarizeOpts>();
  cmd->add_option("--mode", opt->mode, "single | mixture | oracle")
      ->check(CLI::IsMember({"single", "mixture", "oracle"}));
  cmd->add_option("--model", opt->model,
                  "PLDA file (single) or mixture file (mixture, oracle)")
      ->required();
  cmd->add_option("--embeddings", opt->embeddings,
                  "Embedding file; records are the segments")
      ->required();
  cmd->add_option("--sad", opt->sad, "Speech region file")->required();
  cmd->add_option("--types", opt->types,
                  "Speaker type label file (oracle mode)");
  cmd->add_option("--posteriors", opt->posteriors,
                  "Frame posterior file for per-segment priors (mixture)");
  cmd->add_option("--prior", opt->prior,
                  std::string(kPriorHelp) + " shared by all segments");
  cmd->add_option("--stop", opt->stop,
                  "Stop rule thresh:<t> or num:<k> "
                  "(default thresh:-0.2 single, thresh:0 otherwise)");
  cmd->add_flag("--length-norm,!--no-length-norm", opt->length_norm,
                "Length-normalize embeddings to norm sqrt(dim)");
  cmd->add_option("--jobs", opt->jobs, "Recordings clustered in parallel")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--rttm-out", opt->rttm_out, "Hypothesis RTTM path")
      ->required();
  cmd->callback([opt] {
    std::string stop = opt->stop;
    if (stop.empty()) {
      stop = opt->mode == "single" ? "thresh:-0.2" : "thresh:0";
    }
    diarkit_diarize_options options{};
    options.mode = opt->mode.c_str();
    options.model_path = opt->model.c_str();
    options.embeddings_path = opt->embeddings.c_str();
    options.sad_path = opt->sad.c_str();
    options.type_labels_path = OrNull(opt->types);
    options.posteriors_path = OrNull(opt->posteriors);
    options.prior_spec = OrNull(opt->prior);
    options.stop_spec = stop.c_str();
    options.length_normalize = opt->length_norm ? 1 : 0;
    options.jobs = opt->jobs;
    options.rttm_out_path = opt->rttm_out.c_str();
    int segments = 0, clusters = 0;
    Check(diarkit_diarize(&options, &segments, &clusters));
    std::printf("mode %s\nstop %s\nsegments %d\nclusters %d\n",
                opt->mode.c_str(), stop.c_str(), segments, clusters);
    std::cerr << "wrote hypothesis to " << opt->rttm_out << "\n";
  });
}

struct DerOpts {
  std::string reference, hypothesis, out;
  double collar = 0.0;
  bool score_overlap = true;
  bool json = false;
};

void AddDer(CLI::App &app) {
  auto *cmd = app.add_subcommand(
      "der", "Diarization error rate of a hypothesis against a reference");
  AddConfig(cmd);
  auto opt = std::make_shared<DerOpts>();
  cmd->add_option("--reference", opt->reference, "Reference RTTM")
      ->required();
  cmd->add_option("--hypothesis", opt->hypothesis, "Hypothesis RTTM")
      ->required();
  cmd->add_option("--collar", opt->collar,
                  "Seconds excluded around reference boundaries")
      ->check(CLI::NonNegativeNumber);
  cmd->add_flag("--score-overlap,!--no-score-overlap", opt->score_overlap,
                "Score regions where several reference speakers talk");
  cmd->add_flag("--json", opt->json, "Emit the report as JSON");
  cmd->add_option("--out", opt->out, "Also write the report to this file");
  cmd->callback([opt] {
    diarkit_der_report report{};
    Check(diarkit_der(opt->reference.c_str(), opt->hypothesis.c_str(),
                      opt->collar, opt->score_overlap ? 1 : 0, &report));
    char buf[320];
    if (opt->json) {
      std::snprintf(buf, sizeof(buf),
                    "{\"fa\": %.17g, \"miss\": %.17g, \"sm\": %.17g, "
                    "\"total\": %.17g, \"der\": %.17g}\n",
                    report.fa, report.miss, report.sm, report.total,
                    report.der);
    } else {
      std::snprintf(buf, sizeof(buf),
                    "fa %.6f\nmiss %.6f\nsm %.6f\ntotal %.6f\nder %.6f\n",
                    report.fa, report.miss, report.sm, report.total,
                    report.der);
    }
    std::fputs(buf, stdout);
    if (!opt->out.empty()) WriteTextFile(opt->out, buf);
  });
}

struct SimulateOpts {
  std::string spec, out_prefix;
};

void AddSimulate(CLI::App &app) {
  auto *cmd = app.add_subcommand(
      "simulate", "Generate synthetic embeddings and annotations");
  AddConfig(cmd);
  auto opt = std::make_shared<SimulateOpts>();
  cmd->add_option("--spec", opt->spec,
                  "Generator key = value spec file (see README)")
      ->required();
  cmd->add_option("--out-prefix", opt->out_prefix,
                  "Output path prefix for the generated files")
      ->required();
  cmd->callback([opt] {
    Check(diarkit_simulate(opt->spec.c_str(), opt->out_prefix.c_str()));
    std::cerr << "wrote synthetic data under " << opt->out_prefix << "\n";
  });
}

struct ExperimentOpts {
  std::string suite, spec, out;
};

void AddExperiment(CLI::App &app) {
  auto *cmd =
      app.add_subcommand("experiment", "Run a named synthetic benchmark");
  AddConfig(cmd);
  auto opt = std::make_shared<ExperimentOpts>();
  cmd->add_option("--suite", opt->suite,
                  "oracle-vs-baseline | balanced-vs-unbalanced | prior-sweep")
      ->required();
  cmd->add_option("--spec", opt->spec, "Suite key = value spec file");
  cmd->add_option("--out", opt->out, "Also write the table to this file");
  cmd->callback([opt] {
    char *table = nullptr;
    Check(diarkit_experiment(opt->suite.c_str(), OrNull(opt->spec), &table));
    std::fputs(table, stdout);
    std::string copy = table;
    diarkit_string_free(table);
    if (!opt->out.empty()) WriteTextFile(opt->out, copy);
  });
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"diarkit: speaker diarization scoring toolkit"};
  app.require_subcommand(1);
  AddTrain(app);
  AddScorePair(app);
  AddDiarize(app);
  AddDer(app);
  AddSimulate(app);
  AddExperiment(app);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 5;
  } catch (const CliExit &e) {
    return e.code;
  }
  return 0;
}
