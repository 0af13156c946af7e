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

#ifndef HEXWRENCH__DECOUPLER_HPP_
#define HEXWRENCH__DECOUPLER_HPP_

#include "hexwrench/calibration.hpp"
#include "hexwrench/signal_sim.hpp"
#include "hexwrench/types.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace hexwrench
{

struct DecodedStream
{
  Eigen::VectorXd t;
  WrenchRows wrench;
  /// 0-based indices of input rows dropped for non-finite channels.
  std::vector<std::size_t> rejected_rows;
};

/**
 * Runtime pressure -> wrench conversion, F = K (p_abs - baseline).
 *
 * Taring mutates the object; once configured, decouple() and
 * decouple_stream() are const and safe to call concurrently.
 */
class Decoupler
{
public:
  Decoupler() = default;
  explicit Decoupler(const DecouplingMatrix & k) {load(k);}
  explicit Decoupler(const CalibrationResult & calibration) {load(calibration.k);}

  void load(const DecouplingMatrix & k) {k_ = k;}
  bool loaded() const {return k_.has_value();}

  /// Per-channel mean of the rows; throws on an empty window.
  const PressureVectord & tare(const PressureRows & baseline_rows);
  void set_baseline(const PressureVectord & baseline) {baseline_ = baseline;}
  const std::optional<PressureVectord> & baseline() const {return baseline_;}

  /// Moving-average length applied by decouple_stream (1 = no filtering).
  void set_smoothing_window(int samples);

  /// Canonical-order wrench for one absolute pressure sample.
  Wrenchd decouple(const PressureVectord & p_abs) const;

  DecodedStream decouple_stream(const Eigen::VectorXd & t, const PressureRows & p_abs) const;
  DecodedStream decouple_stream(const SimLog & log) const {return decouple_stream(log.t, log.pressure);}

private:
  void require_ready() const;

  std::optional<DecouplingMatrix> k_;
  std::optional<PressureVectord> baseline_;
  int smoothing_{1};
};

}  // namespace hexwrench

#endif  // HEXWRENCH__DECOUPLER_HPP_
