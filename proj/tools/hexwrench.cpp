// Copyright 2026 The hexwrench Authors
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

#include "hexwrench/commands.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

namespace
{

enum ExitCode : int
{
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kSchema = 3,
  kCapacity = 4,
  kRankDeficient = 5,
};

hexwrench::Json section_file(const std::string & path, const std::string & what)
{
  hexwrench::Json doc = hexwrench::read_json_file(path);
  hexwrench::check_schema_version(doc, what);
  doc.erase("schema_version");
  return doc;
}

}  // namespace

int main(int argc, char ** argv)
{
  using namespace hexwrench;

  CLI::App app{"Six-axis soft force/torque sensor toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "JSON configuration (default: $HEXWRENCH_CONFIG)");
  app.add_option("--seed", seed, "Noise seed, overrides the configuration");

  auto * simulate = app.add_subcommand("simulate", "Simulate a load profile into a pressure log");
  std::string sim_out;
  std::string model_path;
  std::string profile_path;
  std::string noise_path;
  simulate->add_option("--out,-o", sim_out, "Output log CSV")->required();
  simulate->add_option("--model", model_path, "Sensor model JSON");
  simulate->add_option("--profile", profile_path, "Load profile JSON");
  simulate->add_option("--noise", noise_path, "Noise JSON");

  auto * calibrate = app.add_subcommand("calibrate", "Fit a decoupling matrix from a log");
  std::string cal_log;
  std::string cal_out;
  std::string strategy_text = "structured";
  calibrate->add_option("--log", cal_log, "Log CSV")->required();
  calibrate->add_option("--strategy", strategy_text, "dense | block | structured")
  ->check(CLI::IsMember({"dense", "block", "structured"}));
  calibrate->add_option("--out,-o", cal_out, "Calibration JSON")->required();

  auto * decouple = app.add_subcommand("decouple", "Convert a pressure log into wrenches");
  std::string dec_log;
  std::string dec_cal;
  std::string dec_out;
  DecoupleOptions dec_options;
  decouple->add_option("--log", dec_log, "Log CSV")->required();
  decouple->add_option("--calibration", dec_cal, "Calibration JSON")->required();
  decouple->add_option("--out,-o", dec_out, "Output wrench CSV")->required();
  decouple->add_option("--tare-seconds", dec_options.tare_seconds,
      "Tare window at the log start; 0 uses the calibration baseline");
  decouple->add_option("--smooth", dec_options.smoothing_window, "Moving-average length in samples")
  ->check(CLI::PositiveNumber);

  auto * evaluate = app.add_subcommand("evaluate", "Error metrics of measured against reference wrenches");
  std::string eval_meas;
  std::string eval_ref;
  std::string eval_out;
  bool eval_resample = false;
  evaluate->add_option("--meas", eval_meas, "Measured wrench CSV")->required();
  evaluate->add_option("--ref", eval_ref, "Reference wrench or log CSV")->required();
  evaluate->add_option("--out,-o", eval_out, "Report JSON")->required();
  evaluate->add_flag("--resample", eval_resample, "Interpolate measured series onto reference timestamps");

  auto * sysid = app.add_subcommand("sysid", "Identify first-order transfer functions per axis");
  std::string sys_in;
  std::string sys_outp;
  std::string sys_out;
  bool sys_resample = false;
  sysid->add_option("--input", sys_in, "Input (reference) wrench CSV")->required();
  sysid->add_option("--output", sys_outp, "Output (measured) wrench CSV")->required();
  sysid->add_option("--out,-o", sys_out, "Transfer-function JSON")->required();
  sysid->add_flag("--resample", sys_resample, "Interpolate output series onto input timestamps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError & e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }

  try {
    if (config_path.empty()) {
      if (const char * env = std::getenv("HEXWRENCH_CONFIG")) {config_path = env;}
    }
    RunConfig config = config_path.empty() ?
      default_run_config() : run_config_from_json(read_json_file(config_path));
    if (!model_path.empty()) {
      config.model = model_from_json(section_file(model_path, model_path));
      config.profile.capacity = config.model.capacity;
    }
    if (!profile_path.empty()) {
      config.profile = profile_from_json(section_file(profile_path, profile_path), config.profile);
    }
    if (!noise_path.empty()) {
      config.noise = noise_from_json(section_file(noise_path, noise_path), config.noise);
    }
    if (seed) {config.noise.seed = *seed;}

    if (*simulate) {
      run_simulate(config, sim_out);
    } else if (*calibrate) {
      run_calibrate(config, cal_log, parse_strategy(strategy_text), cal_out);
    } else if (*decouple) {
      run_decouple(dec_log, dec_cal, dec_out, dec_options);
    } else if (*evaluate) {
      run_evaluate(config, eval_meas, eval_ref, eval_out, eval_resample);
    } else if (*sysid) {
      run_sysid(config, sys_in, sys_outp, sys_out, sys_resample);
    }
  } catch (const SchemaError & e) {
    std::cerr << "hexwrench: schema error: " << e.what() << '\n';
    return kSchema;
  } catch (const CapacityError & e) {
    std::cerr << "hexwrench: " << e.what() << '\n';
    return kCapacity;
  } catch (const RankDeficiencyError & e) {
    std::cerr << "hexwrench: " << e.what() << '\n';
    return kRankDeficient;
  } catch (const std::exception & e) {
    std::cerr << "hexwrench: error: " << e.what() << '\n';
    return kFailure;
  }
  return kOk;
}
