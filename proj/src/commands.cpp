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

#include "hexwrench/decoupler.hpp"
#include "hexwrench/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace hexwrench
{

namespace
{

constexpr std::size_t kMaxPlotPoints = 400;

void write_text_file(const fs::path & path, const std::string & text)
{
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) {throw Error("cannot write " + path.string());}
    out << text;
    if (!out) {throw Error("failed writing " + path.string());}
  }
  fs::rename(tmp, path);
}

std::ifstream open_input(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {throw Error("cannot open " + path.string());}
  return in;
}

fs::path with_suffix(const fs::path & base, const std::string & suffix)
{
  fs::path p = base;
  p.replace_extension();
  return p.string() + suffix;
}

/// Sidecar of an input CSV, validated against the expected kind; nullopt if absent.
std::optional<Json> read_sidecar(const fs::path & csv, const std::string & kind, Eigen::Index rows)
{
  const fs::path meta = sidecar_path(csv);
  if (!fs::exists(meta)) {return std::nullopt;}
  Json doc = read_json_file(meta);
  check_schema_version(doc, meta.string());
  static const std::vector<std::string> known{
    "schema_version", "kind", "rows", "sample_rate", "seed", "model_hash", "rejected_rows"};
  for (const auto & item : doc.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw SchemaError(0, meta.string() + ": unknown key '" + item.key() + "'");
    }
  }
  if (doc.value("kind", std::string()) != kind && !(kind == "wrench" && doc.value("kind", std::string()) == "log")) {
    throw SchemaError(0, meta.string() + ": expected kind '" + kind + "'");
  }
  if (doc.contains("rows") && doc["rows"].get<long long>() != static_cast<long long>(rows)) {
    throw SchemaError(0, meta.string() + ": row count does not match " + csv.string());
  }
  return doc;
}

std::vector<std::size_t> decimation(Eigen::Index n)
{
  std::vector<std::size_t> idx;
  const auto count = static_cast<std::size_t>(n);
  const std::size_t step = std::max<std::size_t>(1, count / kMaxPlotPoints);
  for (std::size_t i = 0; i < count; i += step) {idx.push_back(i);}
  return idx;
}

double interpolate_at(const Eigen::VectorXd & t, const Eigen::VectorXd & y, double at)
{
  const double * begin = t.data();
  const double * end = t.data() + t.size();
  const double * hi = std::lower_bound(begin, end, at);
  if (hi == end) {return y(t.size() - 1);}
  const auto j = static_cast<Eigen::Index>(hi - begin);
  if (*hi == at || j == 0) {return y(j);}
  const double w = (at - t(j - 1)) / (t(j) - t(j - 1));
  return y(j - 1) + w * (y(j) - y(j - 1));
}

WrenchSeries select_rows(const WrenchSeries & s, const std::vector<Eigen::Index> & rows)
{
  WrenchSeries out;
  out.t.resize(static_cast<Eigen::Index>(rows.size()));
  out.wrench.resize(static_cast<Eigen::Index>(rows.size()), kAxes);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.t(static_cast<Eigen::Index>(i)) = s.t(rows[i]);
    out.wrench.row(static_cast<Eigen::Index>(i)) = s.wrench.row(rows[i]);
  }
  return out;
}

void write_static_plot(
  const fs::path & report, const WrenchSeries & meas, const WrenchSeries & ref, const Capacity & cap)
{
  std::vector<std::string> header{"t"};
  Eigen::MatrixXd table(meas.size(), 1 + 2 * kAxes);
  table.col(0) = meas.t;
  Plot plot{"Static response", "reference / full scale", "measured / full scale", false, {}};
  const auto idx = decimation(meas.size());
  for (Axis a : kAllAxes) {
    const std::string name(axis_name(a));
    header.push_back("ref_" + name);
    header.push_back("meas_" + name);
    table.col(1 + 2 * index(a)) = ref.wrench.col(index(a));
    table.col(2 + 2 * index(a)) = meas.wrench.col(index(a));
    PlotSeries s{name, {}, {}, true};
    for (std::size_t i : idx) {
      s.x.push_back(ref.wrench(static_cast<Eigen::Index>(i), index(a)) / cap.full_scale(a));
      s.y.push_back(meas.wrench(static_cast<Eigen::Index>(i), index(a)) / cap.full_scale(a));
    }
    plot.series.push_back(std::move(s));
  }
  std::ostringstream csv;
  write_table_csv(csv, header, table);
  write_text_file(with_suffix(report, ".static.csv"), csv.str());
  write_text_file(with_suffix(report, ".static.svg"), render_svg(plot));
}

void write_hysteresis_plot(
  const fs::path & report, const WrenchSeries & meas, const WrenchSeries & ref,
  const EvalOptions & options)
{
  std::ostringstream csv;
  csv << "axis,ref,loading,unloading\n";
  Plot plot{"Hysteresis loops", "reference / full scale", "measured / full scale", false, {}};
  for (Axis a : kAllAxes) {
    const std::string name(axis_name(a));
    const double fs_a = options.capacity.full_scale(a);
    HysteresisBranches b;
    try {
      b = hysteresis_branches(meas.wrench.col(index(a)), ref.wrench.col(index(a)), options.hysteresis_grid);
    } catch (const Error &) {
      continue;
    }
    PlotSeries load{name + " loading", {}, {}, false};
    PlotSeries unload{name + " unloading", {}, {}, false};
    for (Eigen::Index i = 0; i < b.grid.size(); ++i) {
      csv << name << ',' << format_number(b.grid(i)) << ',' << format_number(b.loading(i)) << ',' <<
        format_number(b.unloading(i)) << '\n';
      load.x.push_back(b.grid(i) / fs_a);
      load.y.push_back(b.loading(i) / fs_a);
      unload.x.push_back(b.grid(i) / fs_a);
      unload.y.push_back(b.unloading(i) / fs_a);
    }
    plot.series.push_back(std::move(load));
    plot.series.push_back(std::move(unload));
  }
  write_text_file(with_suffix(report, ".hysteresis.csv"), csv.str());
  write_text_file(with_suffix(report, ".hysteresis.svg"), render_svg(plot));
}

void write_drift_plot(
  const fs::path & report, const WrenchSeries & meas, const WrenchSeries & ref,
  const EvalOptions & options)
{
  std::vector<Eigen::Index> quiet;
  for (Eigen::Index i = 0; i < ref.size(); ++i) {
    bool unloaded = true;
    for (Axis a : kAllAxes) {
      unloaded = unloaded &&
        std::abs(ref.wrench(i, index(a))) <= options.unloaded_fraction * options.capacity.full_scale(a);
    }
    if (unloaded) {quiet.push_back(i);}
  }
  const WrenchSeries drift = select_rows(meas, quiet);
  std::ostringstream csv;
  write_wrench_csv(csv, drift);
  write_text_file(with_suffix(report, ".drift.csv"), csv.str());

  Plot plot{"Unloaded output", "t (s)", "measured / full scale", false, {}};
  const auto idx = decimation(drift.size());
  for (Axis a : kAllAxes) {
    PlotSeries s{std::string(axis_name(a)), {}, {}, true};
    for (std::size_t i : idx) {
      s.x.push_back(drift.t(static_cast<Eigen::Index>(i)));
      s.y.push_back(drift.wrench(static_cast<Eigen::Index>(i), index(a)) / options.capacity.full_scale(a));
    }
    plot.series.push_back(std::move(s));
  }
  write_text_file(with_suffix(report, ".drift.svg"), render_svg(plot));
}

}  // namespace

fs::path sidecar_path(const fs::path & csv)
{
  return csv.string() + ".meta.json";
}

std::string model_hash(const SensorModeld & model)
{
  return fnv1a_hex(model_to_json(model).dump());
}

SimLog load_log(const fs::path & csv)
{
  auto in = open_input(csv);
  SimLog log;
  try {
    log = read_log_csv(in);
  } catch (const SchemaError & e) {
    throw SchemaError(0, csv.string() + ": " + e.what());
  }
  if (const auto meta = read_sidecar(csv, "log", log.size())) {
    if (meta->contains("sample_rate")) {log.sample_rate = (*meta)["sample_rate"].get<double>();}
    if (meta->contains("seed")) {log.metadata.seed = (*meta)["seed"].get<std::uint64_t>();}
    if (meta->contains("model_hash")) {log.metadata.model_hash = (*meta)["model_hash"].get<std::string>();}
  }
  return log;
}

WrenchSeries load_wrench_series(const fs::path & csv)
{
  auto in = open_input(csv);
  WrenchSeries s;
  try {
    s = read_wrench_csv(in);
  } catch (const SchemaError & e) {
    throw SchemaError(0, csv.string() + ": " + e.what());
  }
  read_sidecar(csv, "wrench", s.size());
  return s;
}

void save_log(const fs::path & csv, const SimLog & log)
{
  std::ostringstream out;
  write_log_csv(out, log);
  write_text_file(csv, out.str());
  const Json meta{
    {"schema_version", kSchemaVersion},
    {"kind", "log"},
    {"rows", log.size()},
    {"sample_rate", log.sample_rate},
    {"seed", log.metadata.seed},
    {"model_hash", log.metadata.model_hash},
  };
  write_text_file(sidecar_path(csv), meta.dump(2) + "\n");
}

void save_wrench_series(
  const fs::path & csv, const WrenchSeries & series, const std::vector<std::size_t> & rejected_rows)
{
  std::ostringstream out;
  write_wrench_csv(out, series);
  write_text_file(csv, out.str());
  const Json meta{
    {"schema_version", kSchemaVersion},
    {"kind", "wrench"},
    {"rows", series.size()},
    {"rejected_rows", rejected_rows},
  };
  write_text_file(sidecar_path(csv), meta.dump(2) + "\n");
}

std::pair<WrenchSeries, WrenchSeries> align(
  const WrenchSeries & series, const WrenchSeries & onto, bool resample)
{
  if (series.size() == onto.size() && series.t == onto.t) {return {series, onto};}
  if (!resample) {
    throw Error("series are misaligned (" + std::to_string(series.size()) + " vs " +
            std::to_string(onto.size()) + " rows or differing timestamps); pass --resample to interpolate");
  }
  if (series.size() < 2) {throw Error("resampling needs at least two samples");}
  const double lo = series.t(0);
  const double hi = series.t(series.size() - 1);
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < onto.size(); ++i) {
    if (onto.t(i) >= lo && onto.t(i) <= hi) {rows.push_back(i);}
  }
  if (rows.empty()) {throw Error("series do not overlap in time");}
  WrenchSeries target = select_rows(onto, rows);
  WrenchSeries out;
  out.t = target.t;
  out.wrench.resize(target.size(), kAxes);
  for (int a = 0; a < kAxes; ++a) {
    const Eigen::VectorXd y = series.wrench.col(a);
    for (Eigen::Index i = 0; i < target.size(); ++i) {
      out.wrench(i, a) = interpolate_at(series.t, y, target.t(i));
    }
  }
  return {out, target};
}

SimLog run_simulate(const RunConfig & config, const fs::path & out_csv)
{
  ProfileSpec spec = config.profile;
  spec.capacity = config.model.capacity;
  const LoadProfile profile = generate_profile(spec);
  SimLog log = simulate(profile, config.model, config.noise);
  log.metadata.seed = config.noise.seed;
  log.metadata.model_hash = model_hash(config.model);
  save_log(out_csv, log);
  return log;
}

CalibrationResult run_calibrate(
  const RunConfig & config, const fs::path & log_csv, Strategy strategy, const fs::path & out_cal)
{
  const SimLog log = load_log(log_csv);
  CalibrationOptions options = config.calibration;
  options.capacity = config.model.capacity;
  const CalibrationData data = tared_calibration_data(log, options);
  CalibrationResult result;
  switch (strategy) {
    case Strategy::Dense: result = fit_dense(data, options); break;
    case Strategy::Block: result = fit_block(data, options); break;
    case Strategy::Structured: result = fit_structured(data, config.model.layout, options); break;
  }
  write_text_file(out_cal, calibration_to_json(result).dump(2) + "\n");
  return result;
}

WrenchSeries run_decouple(
  const fs::path & log_csv, const fs::path & cal_file, const fs::path & out_csv,
  const DecoupleOptions & options)
{
  const CalibrationResult cal = calibration_from_json(read_json_file(cal_file));
  const SimLog log = load_log(log_csv);
  Decoupler decoupler(cal);
  decoupler.set_smoothing_window(options.smoothing_window);
  if (options.tare_seconds > 0.0 && log.size() > 0) {
    std::vector<Eigen::Index> rows;
    for (Eigen::Index i = 0; i < log.size() && log.t(i) < log.t(0) + options.tare_seconds; ++i) {
      if (log.pressure.row(i).allFinite()) {rows.push_back(i);}
    }
    PressureRows window(static_cast<Eigen::Index>(rows.size()), kChannels);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      window.row(static_cast<Eigen::Index>(i)) = log.pressure.row(rows[i]);
    }
    decoupler.tare(window);
  } else {
    decoupler.set_baseline(cal.baseline);
  }
  const DecodedStream decoded = decoupler.decouple_stream(log);
  WrenchSeries out{decoded.t, decoded.wrench};
  save_wrench_series(out_csv, out, decoded.rejected_rows);
  return out;
}

EvalReport run_evaluate(
  const RunConfig & config, const fs::path & meas_csv, const fs::path & ref_csv,
  const fs::path & out_report, bool resample)
{
  const WrenchSeries meas_raw = load_wrench_series(meas_csv);
  const WrenchSeries ref_raw = load_wrench_series(ref_csv);
  auto [meas_aligned, ref_aligned] = align(meas_raw, ref_raw, resample);

  std::vector<Eigen::Index> finite;
  for (Eigen::Index i = 0; i < meas_aligned.size(); ++i) {
    if (meas_aligned.wrench.row(i).allFinite() && ref_aligned.wrench.row(i).allFinite()) {finite.push_back(i);}
  }
  const WrenchSeries meas = select_rows(meas_aligned, finite);
  const WrenchSeries ref = select_rows(ref_aligned, finite);
  if (meas.size() == 0) {throw Error("no finite samples to evaluate");}

  EvalOptions options = config.evaluation;
  options.capacity = config.model.capacity;
  const EvalReport report = evaluate(meas.wrench, ref.wrench, options);
  write_text_file(out_report, report_to_json(report, options.capacity).dump(2) + "\n");
  write_static_plot(out_report, meas, ref, options.capacity);
  write_hysteresis_plot(out_report, meas, ref, options);
  write_drift_plot(out_report, meas, ref, options);
  return report;
}

std::array<std::optional<FirstOrderFit>, kAxes> run_sysid(
  const RunConfig & config, const fs::path & input_csv, const fs::path & output_csv,
  const fs::path & out_tf, bool resample)
{
  const WrenchSeries input_raw = load_wrench_series(input_csv);
  const WrenchSeries output_raw = load_wrench_series(output_csv);
  const auto [output, input] = align(output_raw, input_raw, resample);
  if (input.size() < 2) {throw Error("system identification needs at least two samples");}
  const double dt = (input.t(input.size() - 1) - input.t(0)) / static_cast<double>(input.size() - 1);
  for (Eigen::Index i = 1; i < input.size(); ++i) {
    if (std::abs(input.t(i) - input.t(i - 1) - dt) > 1e-6 * dt) {
      throw Error("system identification needs uniformly sampled series");
    }
  }
  const auto fits = fit_wrench_dynamics(input.wrench, output.wrench, dt);
  write_text_file(out_tf, transfer_functions_to_json(fits, dt).dump(2) + "\n");

  const auto freqs = log_frequencies(config.sysid.f_min, config.sysid.f_max, config.sysid.points);
  std::vector<std::string> header{"frequency"};
  Eigen::MatrixXd table(static_cast<Eigen::Index>(freqs.size()), 1 + 2 * kAxes);
  table.setConstant(std::nan(""));
  for (std::size_t i = 0; i < freqs.size(); ++i) {table(static_cast<Eigen::Index>(i), 0) = freqs[i];}
  Plot plot{"Bode magnitude", "f (Hz)", "magnitude (dB)", true, {}};
  for (Axis a : kAllAxes) {
    const std::string name(axis_name(a));
    header.push_back(name + "_magnitude_db");
    header.push_back(name + "_phase_deg");
    const auto & fit = fits[static_cast<std::size_t>(index(a))];
    if (!fit) {continue;}
    const auto points = bode_points(fit->gain, fit->tau, freqs);
    PlotSeries s{name, {}, {}, false};
    for (std::size_t i = 0; i < points.size(); ++i) {
      table(static_cast<Eigen::Index>(i), 1 + 2 * index(a)) = points[i].magnitude_db;
      table(static_cast<Eigen::Index>(i), 2 + 2 * index(a)) = points[i].phase_deg;
      s.x.push_back(points[i].frequency);
      s.y.push_back(points[i].magnitude_db);
    }
    plot.series.push_back(std::move(s));
  }
  std::ostringstream csv;
  write_table_csv(csv, header, table);
  write_text_file(with_suffix(out_tf, ".bode.csv"), csv.str());
  write_text_file(with_suffix(out_tf, ".bode.svg"), render_svg(plot));
  return fits;
}

}  // namespace hexwrench
