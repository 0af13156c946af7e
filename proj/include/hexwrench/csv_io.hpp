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
 * @file csv_io.hpp
 *
 * Plain CSV tables of time-stamped samples.
 *
 *   log:    t,fx,fy,fz,tx,ty,tz,p01,...,p16   (pressures absolute, Pa)
 *   wrench: t,fx,fy,fz,tx,ty,tz               (N, N*m)
 *
 * Numbers are written in shortest round-trip form, so write -> read -> write
 * reproduces the same bytes. Missing samples are written and read as "nan".
 * Reader errors are SchemaError carrying the 1-based line number.
 */

#ifndef HEXWRENCH__CSV_IO_HPP_
#define HEXWRENCH__CSV_IO_HPP_

#include "hexwrench/signal_sim.hpp"
#include "hexwrench/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hexwrench
{

struct WrenchSeries
{
  Eigen::VectorXd t;
  WrenchRows wrench;

  Eigen::Index size() const {return t.size();}
};

/// Column names of a log file, in order.
std::vector<std::string> log_columns();
std::vector<std::string> wrench_columns();

/// Shortest decimal text that parses back to the same double.
std::string format_number(double v);

void write_log_csv(std::ostream & out, const SimLog & log);

/// Sample rate is estimated from the timestamps (1024 Hz for < 2 rows).
SimLog read_log_csv(std::istream & in);

void write_wrench_csv(std::ostream & out, const Eigen::VectorXd & t, const WrenchRows & wrench);
void write_wrench_csv(std::ostream & out, const WrenchSeries & series);

/// Accepts wrench files and log files (pressure columns are ignored).
WrenchSeries read_wrench_csv(std::istream & in);

/// Generic numeric table with a header row, for plot data.
void write_table_csv(
  std::ostream & out, const std::vector<std::string> & header,
  const Eigen::Ref<const Eigen::MatrixXd> & rows);

}  // namespace hexwrench

#endif  // HEXWRENCH__CSV_IO_HPP_
