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

#include "hexwrench/decoupler.hpp"

#include <cmath>
#include <deque>

namespace hexwrench
{

const PressureVectord & Decoupler::tare(const PressureRows & baseline_rows)
{
  if (baseline_rows.rows() == 0) {throw Error("tare window is empty");}
  baseline_ = baseline_rows.colwise().mean().transpose();
  return *baseline_;
}

void Decoupler::set_smoothing_window(int samples)
{
  if (samples < 1) {throw Error("smoothing window must be at least one sample");}
  smoothing_ = samples;
}

void Decoupler::require_ready() const
{
  if (!k_) {throw Error("decoupling matrix not loaded");}
  if (!baseline_) {throw Error("decoupler not tared");}
}

Wrenchd Decoupler::decouple(const PressureVectord & p_abs) const
{
  require_ready();
  const Wrenchd f = *k_ * (p_abs - *baseline_);
  return from_decoupling_order(f);
}

DecodedStream Decoupler::decouple_stream(const Eigen::VectorXd & t, const PressureRows & p_abs) const
{
  require_ready();
  if (t.size() != p_abs.rows()) {throw Error("timestamp and pressure row counts differ");}

  DecodedStream out;
  out.t.resize(t.size());
  out.wrench.resize(t.size(), kAxes);
  std::deque<Wrenchd> window;
  Wrenchd window_sum = Wrenchd::Zero();
  Eigen::Index kept = 0;
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    if (!p_abs.row(i).allFinite() || !std::isfinite(t(i))) {
      out.rejected_rows.push_back(static_cast<std::size_t>(i));
      continue;
    }
    Wrenchd w = decouple(p_abs.row(i).transpose());
    if (smoothing_ > 1) {
      window.push_back(w);
      window_sum += w;
      if (static_cast<int>(window.size()) > smoothing_) {
        window_sum -= window.front();
        window.pop_front();
      }
      w = window_sum / static_cast<double>(window.size());
    }
    out.t(kept) = t(i);
    out.wrench.row(kept) = w.transpose();
    ++kept;
  }
  out.t.conservativeResize(kept);
  out.wrench.conservativeResize(kept, Eigen::NoChange);
  return out;
}

}  // namespace hexwrench
