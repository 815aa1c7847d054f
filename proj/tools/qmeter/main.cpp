// Copyright 2026 The qmeter Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qmeter/config.hpp"
#include "qmeter/models.hpp"
#include "qmeter/report.hpp"
#include "qmeter/scenario.hpp"
#include "qmeter/suites.hpp"

namespace {

using namespace qmeter::cli;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInvalidInput = 2;
constexpr int kInternal = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void deliver(const std::string& bytes, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << bytes;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f || !(f << bytes)) throw std::runtime_error("cannot write " + out);
}

ScenarioConfig load(const std::string& path) {
  ScenarioConfig cfg = parse_config(slurp(path));
  if (!cfg.tolerance) cfg.tolerance = tolerance_from_env();
  return cfg;
}

int finish(const Report& r, const std::string& out, Format format) {
  deliver(emit_report(r, format), out);
  return r.pass() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qmeter: quantum measurement precision, joint uncertainty and repeated-measurement tools"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out;
  std::string format = "json";
  auto* run = app.add_subcommand("run", "execute a scenario file and write a report");
  run->add_option("--config", config_path, "scenario JSON")->required();
  run->add_option("--out", out, "report path, '-' for stdout")->default_val("-");
  run->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  std::string suite;
  int trials = 100;
  std::uint64_t seed = 0;
  auto* verify = app.add_subcommand("verify", "run a randomized property suite");
  verify->add_option("--suite", suite, "suite name or 'all'")->required();
  verify->add_option("--trials", trials, "trials per suite")->check(CLI::PositiveNumber);
  verify->add_option("--seed", seed, "random seed");

  int budget = 0;
  auto* search = app.add_subcommand("search", "search for instruments that beat the limit");
  search->add_option("--config", config_path, "scenario JSON of kind 'search'")->required();
  auto* budget_opt = search->add_option("--budget", budget, "candidates to evaluate")->check(CLI::PositiveNumber);
  auto* seed_opt = search->add_option("--seed", seed, "random seed");
  search->add_option("--out", out, "report path, '-' for stdout")->default_val("-");

  std::string model;
  auto* describe = app.add_subcommand("describe", "print the closed form of a model family");
  describe->add_option("--model", model, "luders, unsharp, measure_prepare or von_neumann")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*run) {
      const Report r = run_scenario(load(config_path));
      return finish(r, out, format == "csv" ? Format::kCsv : Format::kJson);
    }
    if (*search) {
      ScenarioConfig cfg = load(config_path);
      if (cfg.kind != ScenarioKind::kSearch) throw ConfigError("kind", "search needs a scenario of kind 'search'");
      nlohmann::json doc = cfg.document;
      if (*budget_opt) doc["search"]["budget"] = budget;
      if (*seed_opt) doc["seed"] = seed;
      const std::optional<double> t = cfg.tolerance;
      cfg = parse_config_json(doc);
      cfg.tolerance = t;
      return finish(run_scenario(cfg), out, Format::kJson);
    }
    if (*verify) {
      std::vector<std::string> names;
      if (suite == "all") {
        names = qmeter::suite_names();
      } else {
        names.push_back(suite);
      }
      bool ok = true;
      for (const std::string& name : names) {
        const nlohmann::json doc = {{"kind", "suite"}, {"seed", seed}, {"suite", {{"name", name}, {"trials", trials}}}};
        const Report r = run_scenario(parse_config_json(doc));
        std::printf("%-17s trials=%-6.0f violations=%-4.0f max_error=%.3g %s\n", name.c_str(), r.scalars.at("trials"),
                    r.scalars.at("violations"), r.scalars.at("max_error"), r.pass() ? "PASS" : "FAIL");
        ok = ok && r.pass();
      }
      return ok ? kOk : kCheckFailed;
    }
    if (*describe) {
      const auto family = qmeter::parse_model_family(model);
      if (!family) throw InputError("unknown model '" + model + "'");
      std::cout << qmeter::describe_model(*family);
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "qmeter: invalid config: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ScenarioError& e) {
    std::cerr << "qmeter: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InputError& e) {
    std::cerr << "qmeter: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "qmeter: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
