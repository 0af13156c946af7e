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

/**
 * @file json_io.hpp
 *
 * JSON documents: configuration, calibration, evaluation report, transfer
 * functions and CSV sidecars. Every top-level document carries
 * "schema_version": 1; other versions and unknown keys are rejected with a
 * SchemaError naming the offending key path.
 */

#ifndef HEXWRENCH__JSON_IO_HPP_
#define HEXWRENCH__JSON_IO_HPP_

#include "hexwrench/calibration.hpp"
#include "hexwrench/evaluation.hpp"
#include "hexwrench/signal_sim.hpp"
#include "hexwrench/sysid.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>

namespace hexwrench
{

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Throws SchemaError unless doc["schema_version"] == kSchemaVersion.
void check_schema_version(const Json & doc, const std::string & what);

Json read_json_file(const std::filesystem::path & path);
/// Two-space indented text with a trailing newline.
void write_json_file(const std::filesystem::path & path, const Json & doc);

Json geometry_to_json(const SensorGeometry<double> & g);
SensorGeometry<double> geometry_from_json(const Json & j);

/// Model section; material and gas default to the reference set for the geometry.
Json model_to_json(const SensorModeld & model);
SensorModeld model_from_json(const Json & j);

Json profile_to_json(const ProfileSpec & spec);
ProfileSpec profile_from_json(const Json & j, const ProfileSpec & defaults = {});

Json noise_to_json(const NoiseConfig & noise);
NoiseConfig noise_from_json(const Json & j, const NoiseConfig & defaults = {});

Json calibration_options_to_json(const CalibrationOptions & options);
CalibrationOptions calibration_options_from_json(const Json & j, const CalibrationOptions & defaults = {});

Json calibration_to_json(const CalibrationResult & result);
CalibrationResult calibration_from_json(const Json & doc);

Json report_to_json(const EvalReport & report, const Capacity & capacity);

Json transfer_functions_to_json(
  const std::array<std::optional<FirstOrderFit>, kAxes> & fits, double dt);

struct SysidOptions
{
  double f_min{0.1};   // Hz
  double f_max{500.0};
  int points{200};
};

/// Combined command configuration; every section is optional.
struct RunConfig
{
  SensorModeld model{reference_sensor_model<double>()};
  ProfileSpec profile{};
  NoiseConfig noise{};
  CalibrationOptions calibration{};
  EvalOptions evaluation{};
  SysidOptions sysid{};
};

/// Default run configuration: all six axes loaded with distinct cycle counts.
RunConfig default_run_config();

RunConfig run_config_from_json(const Json & doc, const RunConfig & defaults = default_run_config());
Json run_config_to_json(const RunConfig & config);

}  // namespace hexwrench

#endif  // HEXWRENCH__JSON_IO_HPP_
