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

#include "hexwrench/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <system_error>

namespace hexwrench
{

namespace
{

std::vector<std::string_view> split(std::string_view line)
{
  std::vector<std::string_view> fields;
  std::size_t begin = 0;
  while (true) {
    const std::size_t comma = line.find(',', begin);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(begin));
      return fields;
    }
    fields.push_back(line.substr(begin, comma - begin));
    begin = comma + 1;
  }
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {s.remove_prefix(1);}
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {s.remove_suffix(1);}
  return s;
}

double parse_number(std::string_view text, std::size_t line, const std::string & column)
{
  text = trim(text);
  if (text.empty()) {throw SchemaError(line, "column " + column + ": empty field");}
  if (text.front() == '+') {text.remove_prefix(1);}
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw SchemaError(line, "column " + column + ": invalid number '" + std::string(text) + "'");
  }
  return v;
}

/// Parsed numeric rows of a table whose header must start with `required`.
struct Table
{
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_table(std::istream & in, const std::vector<std::string> & required, bool allow_extra)
{
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) {continue;}
    const auto fields = split(view);
    if (!have_header) {
      for (auto f : fields) {table.header.emplace_back(trim(f));}
      if (table.header.size() < required.size() ||
        (!allow_extra && table.header.size() != required.size()))
      {
        throw SchemaError(line_no, "expected header with " + std::to_string(required.size()) +
                " columns, found " + std::to_string(table.header.size()));
      }
      for (std::size_t c = 0; c < required.size(); ++c) {
        if (table.header[c] != required[c]) {
          throw SchemaError(line_no, "column " + std::to_string(c + 1) + ": expected '" +
                  required[c] + "', found '" + table.header[c] + "'");
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw SchemaError(line_no, "expected " + std::to_string(table.header.size()) +
              " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row[c] = parse_number(fields[c], line_no, table.header[c]);
    }
    if (!std::isfinite(row[0])) {throw SchemaError(line_no, "timestamp must be finite");}
    if (!table.rows.empty() && !(row[0] > table.rows.back()[0])) {
      throw SchemaError(line_no, "timestamps must be strictly increasing");
    }
    table.rows.push_back(std::move(row));
  }
  if (!have_header) {throw SchemaError(1, "missing header row");}
  return table;
}

void write_row(std::ostream & out, const Eigen::Ref<const Eigen::RowVectorXd> & row)
{
  for (Eigen::Index c = 0; c < row.size(); ++c) {
    if (c > 0) {out << ',';}
    out << format_number(row(c));
  }
  out << '\n';
}

void write_header(std::ostream & out, const std::vector<std::string> & header)
{
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c > 0) {out << ',';}
    out << header[c];
  }
  out << '\n';
}

double estimate_rate(const Eigen::VectorXd & t)
{
  if (t.size() < 2) {return 1024.0;}
  return static_cast<double>(t.size() - 1) / (t(t.size() - 1) - t(0));
}

}  // namespace

std::vector<std::string> log_columns()
{
  std::vector<std::string> cols = wrench_columns();
  for (int k = 1; k <= kChannels; ++k) {
    cols.push_back(k < 10 ? "p0" + std::to_string(k) : "p" + std::to_string(k));
  }
  return cols;
}

std::vector<std::string> wrench_columns()
{
  std::vector<std::string> cols{"t"};
  for (Axis a : kAllAxes) {cols.emplace_back(axis_name(a));}
  return cols;
}

std::string format_number(double v)
{
  if (std::isnan(v)) {return "nan";}
  if (std::isinf(v)) {return v > 0 ? "inf" : "-inf";}
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) {throw Error("number formatting failed");}
  return std::string(buf, ptr);
}

void write_log_csv(std::ostream & out, const SimLog & log)
{
  if (log.wrench.rows() != log.size() || log.pressure.rows() != log.size()) {
    throw Error("log columns differ in length");
  }
  write_header(out, log_columns());
  Eigen::RowVectorXd row(1 + kAxes + kChannels);
  for (Eigen::Index i = 0; i < log.size(); ++i) {
    row << log.t(i), log.wrench.row(i), log.pressure.row(i);
    write_row(out, row);
  }
}

SimLog read_log_csv(std::istream & in)
{
  const Table table = read_table(in, log_columns(), false);
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  SimLog log;
  log.t.resize(n);
  log.wrench.resize(n, kAxes);
  log.pressure.resize(n, kChannels);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto & r = table.rows[static_cast<std::size_t>(i)];
    log.t(i) = r[0];
    for (int a = 0; a < kAxes; ++a) {log.wrench(i, a) = r[static_cast<std::size_t>(1 + a)];}
    for (int k = 0; k < kChannels; ++k) {log.pressure(i, k) = r[static_cast<std::size_t>(1 + kAxes + k)];}
  }
  log.sample_rate = estimate_rate(log.t);
  return log;
}

void write_wrench_csv(std::ostream & out, const Eigen::VectorXd & t, const WrenchRows & wrench)
{
  if (wrench.rows() != t.size()) {throw Error("wrench series columns differ in length");}
  write_header(out, wrench_columns());
  Eigen::RowVectorXd row(1 + kAxes);
  for (Eigen::Index i = 0; i < t.size(); ++i) {
    row << t(i), wrench.row(i);
    write_row(out, row);
  }
}

void write_wrench_csv(std::ostream & out, const WrenchSeries & series)
{
  write_wrench_csv(out, series.t, series.wrench);
}

WrenchSeries read_wrench_csv(std::istream & in)
{
  const Table table = read_table(in, wrench_columns(), true);
  if (table.header.size() != wrench_columns().size() && table.header != log_columns()) {
    throw SchemaError(1, "expected a wrench or log header");
  }
  const auto n = static_cast<Eigen::Index>(table.rows.size());
  WrenchSeries s;
  s.t.resize(n);
  s.wrench.resize(n, kAxes);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto & r = table.rows[static_cast<std::size_t>(i)];
    s.t(i) = r[0];
    for (int a = 0; a < kAxes; ++a) {s.wrench(i, a) = r[static_cast<std::size_t>(1 + a)];}
  }
  return s;
}

void write_table_csv(
  std::ostream & out, const std::vector<std::string> & header,
  const Eigen::Ref<const Eigen::MatrixXd> & rows)
{
  if (static_cast<Eigen::Index>(header.size()) != rows.cols()) {
    throw Error("table header and column count differ");
  }
  write_header(out, header);
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {write_row(out, rows.row(i));}
}

}  // namespace hexwrench
