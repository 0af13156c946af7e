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

#include "hexwrench/json_io.hpp"

#include <fstream>
#include <set>

namespace hexwrench
{

namespace
{

/// Strict view of one JSON object: typed optional reads, unknown keys rejected.
class Fields
{
public:
  Fields(const Json & j, std::string path)
  : j_(j), path_(std::move(path))
  {
    if (!j_.is_object()) {throw SchemaError(0, where() + "expected an object");}
  }

  template<typename T>
  bool get(const std::string & key, T & out)
  {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {return false;}
    try {
      if constexpr (std::is_floating_point_v<T>) {
        if (!it->is_number()) {throw SchemaError(0, where(key) + "expected a number");}
      }
      if constexpr (std::is_integral_v<T>&& !std::is_same_v<T, bool>) {
        if (!it->is_number_integer() && !it->is_number_unsigned()) {
          throw SchemaError(0, where(key) + "expected an integer");
        }
      }
      out = it->template get<T>();
    } catch (const nlohmann::json::exception & e) {
      throw SchemaError(0, where(key) + e.what());
    }
    return true;
  }

  const Json * child(const std::string & key)
  {
    seen_.insert(key);
    const auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) {return nullptr;}
    return &*it;
  }

  std::string path(const std::string & key) const {return path_.empty() ? key : path_ + "." + key;}

  void done() const
  {
    for (const auto & item : j_.items()) {
      if (!seen_.count(item.key())) {throw SchemaError(0, "unknown key '" + path(item.key()) + "'");}
    }
  }

private:
  std::string where(const std::string & key = {}) const
  {
    const std::string p = key.empty() ? path_ : path(key);
    return p.empty() ? std::string() : p + ": ";
  }

  const Json & j_;
  std::string path_;
  std::set<std::string> seen_;
};

template<std::size_t N>
Json to_array(const std::array<double, N> & a)
{
  Json out = Json::array();
  for (double v : a) {out.push_back(v);}
  return out;
}

Json vector_to_json(const Eigen::Ref<const Eigen::VectorXd> & v)
{
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {out.push_back(v(i));}
  return out;
}

PressureVectord channel_values(const Json & j, const std::string & path)
{
  PressureVectord v;
  if (j.is_number()) {
    v.setConstant(j.get<double>());
    return v;
  }
  if (!j.is_array() || j.size() != static_cast<std::size_t>(kChannels)) {
    throw SchemaError(0, path + ": expected a number or an array of 16 numbers");
  }
  for (int k = 0; k < kChannels; ++k) {
    if (!j[static_cast<std::size_t>(k)].is_number()) {throw SchemaError(0, path + ": expected numbers");}
    v(k) = j[static_cast<std::size_t>(k)].get<double>();
  }
  return v;
}

Json per_axis(const Wrenchd & w)
{
  Json out = Json::object();
  for (Axis a : kAllAxes) {out[std::string(axis_name(a))] = w(index(a));}
  return out;
}

std::array<double, kAxes> per_axis_from_json(const Json & j, const std::string & path, std::array<double, kAxes> values)
{
  if (j.is_number()) {
    values.fill(j.get<double>());
    return values;
  }
  Fields f(j, path);
  for (Axis a : kAllAxes) {f.get(std::string(axis_name(a)), values[static_cast<std::size_t>(index(a))]);}
  f.done();
  return values;
}

std::string_view waveform_kind_name(WaveformKind k)
{
  switch (k) {
    case WaveformKind::None: return "none";
    case WaveformKind::Ramp: return "ramp";
    case WaveformKind::Sine: return "sine";
    case WaveformKind::RandomWalk: return "random_walk";
  }
  return "none";
}

WaveformKind parse_waveform_kind(const std::string & s, const std::string & path)
{
  for (WaveformKind k : {WaveformKind::None, WaveformKind::Ramp, WaveformKind::Sine, WaveformKind::RandomWalk}) {
    if (s == waveform_kind_name(k)) {return k;}
  }
  throw SchemaError(0, path + ": unknown waveform kind '" + s + "'");
}

Json waveform_to_json(const Waveform & w)
{
  return Json{
    {"kind", waveform_kind_name(w.kind)},
    {"amplitude", w.amplitude},
    {"cycles", w.cycles},
    {"bipolar", w.bipolar},
    {"frequency", w.frequency},
    {"phase", w.phase},
    {"offset", w.offset},
    {"step_std", w.step_std},
    {"seed", w.seed},
    {"delay", w.delay},
  };
}

Waveform waveform_from_json(const Json & j, const std::string & path, Waveform w)
{
  Fields f(j, path);
  std::string kind;
  if (f.get("kind", kind)) {w.kind = parse_waveform_kind(kind, f.path("kind"));}
  f.get("amplitude", w.amplitude);
  f.get("cycles", w.cycles);
  f.get("bipolar", w.bipolar);
  f.get("frequency", w.frequency);
  f.get("phase", w.phase);
  f.get("offset", w.offset);
  f.get("step_std", w.step_std);
  f.get("seed", w.seed);
  f.get("delay", w.delay);
  f.done();
  return w;
}

Json material_to_json(const LayerMaterial<double> & m)
{
  return Json{
    {"youngs_modulus", m.youngs_modulus},
    {"poisson_ratio", m.poisson_ratio},
    {"pillar_area", m.pillar_area},
    {"pillar_shear_area", m.pillar_shear_area},
    {"shear_modulus_1", m.shear_modulus_1},
    {"shear_modulus_2", m.shear_modulus_2},
    {"shear_area_1", m.shear_area_1},
    {"shear_area_2", m.shear_area_2},
  };
}

LayerMaterial<double> material_from_json(const Json & j, const std::string & path, LayerMaterial<double> m)
{
  Fields f(j, path);
  f.get("youngs_modulus", m.youngs_modulus);
  f.get("poisson_ratio", m.poisson_ratio);
  f.get("pillar_area", m.pillar_area);
  f.get("pillar_shear_area", m.pillar_shear_area);
  f.get("shear_modulus_1", m.shear_modulus_1);
  f.get("shear_modulus_2", m.shear_modulus_2);
  f.get("shear_area_1", m.shear_area_1);
  f.get("shear_area_2", m.shear_area_2);
  f.done();
  return m;
}

Json optional_number(const std::optional<double> & v)
{
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

void check_schema_version(const Json & doc, const std::string & what)
{
  if (!doc.is_object()) {throw SchemaError(0, what + ": expected a JSON object");}
  const auto it = doc.find("schema_version");
  if (it == doc.end()) {throw SchemaError(0, what + ": missing schema_version");}
  if (!it->is_number_integer() || it->get<long long>() != kSchemaVersion) {
    throw SchemaError(0, what + ": unsupported schema_version " + it->dump());
  }
}

Json read_json_file(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {throw Error("cannot open " + path.string());}
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error & e) {
    throw SchemaError(0, path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path & path, const Json & doc)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) {throw Error("cannot write " + path.string());}
  out << doc.dump(2) << '\n';
  if (!out) {throw Error("failed writing " + path.string());}
}

Json geometry_to_json(const SensorGeometry<double> & g)
{
  Json j{
    {"outer_radius", g.outer_radius},
    {"pillar_radius", g.pillar_radius},
    {"layer_height", g.layer_height},
    {"lower_arc_span", g.lower_arc_span},
    {"upper_arc_span", g.upper_arc_span},
    {"lower_phase", g.lower_phase},
    {"upper_phase", g.upper_phase},
    {"upper_pair_half_gap", g.upper_pair_half_gap},
    {"upper_pairing", g.upper_pairing},
  };
  if (g.lower_centers) {j["lower_centers"] = to_array(*g.lower_centers);}
  if (g.upper_centers) {j["upper_centers"] = to_array(*g.upper_centers);}
  return j;
}

SensorGeometry<double> geometry_from_json(const Json & j)
{
  SensorGeometry<double> g;
  Fields f(j, "model.geometry");
  f.get("outer_radius", g.outer_radius);
  f.get("pillar_radius", g.pillar_radius);
  f.get("layer_height", g.layer_height);
  f.get("lower_arc_span", g.lower_arc_span);
  f.get("upper_arc_span", g.upper_arc_span);
  f.get("lower_phase", g.lower_phase);
  f.get("upper_phase", g.upper_phase);
  f.get("upper_pair_half_gap", g.upper_pair_half_gap);
  f.get("upper_pairing", g.upper_pairing);
  std::array<double, kChambersPerLayer> centers{};
  if (f.get("lower_centers", centers)) {g.lower_centers = centers;}
  if (f.get("upper_centers", centers)) {g.upper_centers = centers;}
  f.done();
  return g;
}

Json model_to_json(const SensorModeld & model)
{
  return Json{
    {"geometry", geometry_to_json(model.layout.geometry)},
    {"material", {
        {"lower", material_to_json(model.material.lower)},
        {"upper", material_to_json(model.material.upper)}}},
    {"gas", {{"p0", vector_to_json(model.gas.p0)}, {"v0", vector_to_json(model.gas.v0)}}},
    {"capacity", {{"force", model.capacity.force}, {"torque", model.capacity.torque}}},
  };
}

SensorModeld model_from_json(const Json & j)
{
  Fields f(j, "model");
  SensorGeometry<double> g;
  if (const Json * geo = f.child("geometry")) {g = geometry_from_json(*geo);}

  auto material = MaterialParams<double>::reference(g);
  if (const Json * mat = f.child("material")) {
    Fields mf(*mat, "model.material");
    if (const Json * lower = mf.child("lower")) {
      material.lower = material_from_json(*lower, "model.material.lower", material.lower);
    }
    if (const Json * upper = mf.child("upper")) {
      material.upper = material_from_json(*upper, "model.material.upper", material.upper);
    }
    mf.done();
  }

  auto gas = ChamberGasState<double>::reference(g);
  if (const Json * gj = f.child("gas")) {
    Fields gf(*gj, "model.gas");
    if (const Json * p0 = gf.child("p0")) {gas.p0 = channel_values(*p0, "model.gas.p0");}
    if (const Json * v0 = gf.child("v0")) {gas.v0 = channel_values(*v0, "model.gas.v0");}
    gf.done();
  }

  Capacity capacity;
  if (const Json * cj = f.child("capacity")) {
    Fields cf(*cj, "model.capacity");
    cf.get("force", capacity.force);
    cf.get("torque", capacity.torque);
    cf.done();
  }
  f.done();
  return make_sensor_model(g, material, gas, capacity);
}

Json profile_to_json(const ProfileSpec & spec)
{
  Json axes = Json::object();
  for (Axis a : kAllAxes) {axes[std::string(axis_name(a))] = waveform_to_json(spec.axis(a));}
  return Json{
    {"sample_rate", spec.sample_rate},
    {"duration", spec.duration},
    {"lead_in", spec.lead_in},
    {"axes", axes},
  };
}

ProfileSpec profile_from_json(const Json & j, const ProfileSpec & defaults)
{
  ProfileSpec spec = defaults;
  Fields f(j, "profile");
  f.get("sample_rate", spec.sample_rate);
  f.get("duration", spec.duration);
  f.get("lead_in", spec.lead_in);
  if (const Json * axes = f.child("axes")) {
    Fields af(*axes, "profile.axes");
    for (Axis a : kAllAxes) {
      const std::string name(axis_name(a));
      if (const Json * w = af.child(name)) {
        spec.axis(a) = waveform_from_json(*w, af.path(name), spec.axis(a));
      }
    }
    af.done();
  }
  f.done();
  return spec;
}

Json noise_to_json(const NoiseConfig & noise)
{
  Json lag = Json::object();
  for (Axis a : kAllAxes) {lag[std::string(axis_name(a))] = noise.lag_tau[static_cast<std::size_t>(index(a))];}
  return Json{
    {"lag_tau", lag},
    {"hysteresis_play", noise.hysteresis_play},
    {"gaussian_std", noise.gaussian_std},
    {"drift_rw_std", noise.drift_rw_std},
    {"quant_step", noise.quant_step},
    {"seed", noise.seed},
  };
}

NoiseConfig noise_from_json(const Json & j, const NoiseConfig & defaults)
{
  NoiseConfig n = defaults;
  Fields f(j, "noise");
  if (const Json * lag = f.child("lag_tau")) {n.lag_tau = per_axis_from_json(*lag, "noise.lag_tau", n.lag_tau);}
  f.get("hysteresis_play", n.hysteresis_play);
  f.get("gaussian_std", n.gaussian_std);
  f.get("drift_rw_std", n.drift_rw_std);
  f.get("quant_step", n.quant_step);
  f.get("seed", n.seed);
  f.done();
  return n;
}

Json calibration_options_to_json(const CalibrationOptions & o)
{
  return Json{
    {"baseline_seconds", o.baseline_seconds},
    {"ridge", o.ridge},
    {"rank_tolerance", o.rank_tolerance},
    {"ill_conditioned_above", o.ill_conditioned_above},
    {"degenerate_tolerance", o.degenerate_tolerance},
  };
}

CalibrationOptions calibration_options_from_json(const Json & j, const CalibrationOptions & defaults)
{
  CalibrationOptions o = defaults;
  Fields f(j, "calibration");
  f.get("baseline_seconds", o.baseline_seconds);
  f.get("ridge", o.ridge);
  f.get("rank_tolerance", o.rank_tolerance);
  f.get("ill_conditioned_above", o.ill_conditioned_above);
  f.get("degenerate_tolerance", o.degenerate_tolerance);
  f.done();
  return o;
}

Json calibration_to_json(const CalibrationResult & r)
{
  Json rows = Json::array();
  for (Axis a : kDecouplingRowOrder) {rows.push_back(axis_name(a));}
  Json columns = Json::array();
  for (int k = 1; k <= kChannels; ++k) {
    columns.push_back(k < 10 ? "p0" + std::to_string(k) : "p" + std::to_string(k));
  }
  Json k = Json::array();
  for (int i = 0; i < kAxes; ++i) {k.push_back(vector_to_json(r.k.row(i).transpose()));}

  Json doc{
    {"schema_version", kSchemaVersion},
    {"kind", "calibration"},
    {"strategy", strategy_name(r.strategy)},
    {"row_order", rows},
    {"column_order", columns},
    {"k", k},
    {"baseline", vector_to_json(r.baseline)},
  };
  if (r.scalars) {
    Json s = Json::object();
    const auto v = r.scalars->as_vector();
    for (int i = 0; i < 6; ++i) {
      s[std::string(CouplingScalars<double>::names[static_cast<std::size_t>(i)])] = v(i);
    }
    doc["scalars"] = s;
  } else {
    doc["scalars"] = nullptr;
  }
  const auto & d = r.diagnostics;
  doc["diagnostics"] = Json{
    {"residual_rms", per_axis(d.residual_rms)},
    {"condition_number", d.condition_number},
    {"ill_conditioned", d.ill_conditioned},
    {"rank", d.rank},
    {"free_parameters", d.free_parameters},
    {"samples", d.samples},
  };
  return doc;
}

CalibrationResult calibration_from_json(const Json & doc)
{
  check_schema_version(doc, "calibration");
  Fields f(doc, "");
  int version = 0;
  f.get("schema_version", version);
  std::string kind;
  if (!f.get("kind", kind) || kind != "calibration") {throw SchemaError(0, "kind: expected 'calibration'");}

  CalibrationResult r;
  std::string strategy;
  if (!f.get("strategy", strategy)) {throw SchemaError(0, "strategy: missing");}
  try {
    r.strategy = parse_strategy(strategy);
  } catch (const Error & e) {
    throw SchemaError(0, std::string("strategy: ") + e.what());
  }

  std::vector<std::string> rows;
  if (!f.get("row_order", rows)) {throw SchemaError(0, "row_order: missing");}
  std::vector<std::string> expected_rows;
  for (Axis a : kDecouplingRowOrder) {expected_rows.emplace_back(axis_name(a));}
  if (rows != expected_rows) {throw SchemaError(0, "row_order: expected fx,fy,tz,fz,tx,ty");}
  std::vector<std::string> columns;
  if (!f.get("column_order", columns) || columns.size() != static_cast<std::size_t>(kChannels)) {
    throw SchemaError(0, "column_order: expected 16 channel names");
  }

  std::vector<std::vector<double>> k;
  if (!f.get("k", k) || k.size() != static_cast<std::size_t>(kAxes)) {
    throw SchemaError(0, "k: expected 6 rows");
  }
  for (int i = 0; i < kAxes; ++i) {
    const auto & row = k[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(kChannels)) {throw SchemaError(0, "k: expected 16 columns per row");}
    for (int c = 0; c < kChannels; ++c) {r.k(i, c) = row[static_cast<std::size_t>(c)];}
  }
  std::vector<double> baseline;
  if (f.get("baseline", baseline)) {
    if (baseline.size() != static_cast<std::size_t>(kChannels)) {throw SchemaError(0, "baseline: expected 16 values");}
    for (int c = 0; c < kChannels; ++c) {r.baseline(c) = baseline[static_cast<std::size_t>(c)];}
  }

  if (const Json * s = f.child("scalars")) {
    Fields sf(*s, "scalars");
    Eigen::Matrix<double, 6, 1> v;
    for (int i = 0; i < 6; ++i) {
      const std::string name(CouplingScalars<double>::names[static_cast<std::size_t>(i)]);
      if (!sf.get(name, v(i))) {throw SchemaError(0, sf.path(name) + ": missing");}
    }
    sf.done();
    r.scalars = CouplingScalars<double>::from_vector(v);
  }

  if (const Json * d = f.child("diagnostics")) {
    Fields df(*d, "diagnostics");
    if (const Json * rms = df.child("residual_rms")) {
      const auto v = per_axis_from_json(*rms, "diagnostics.residual_rms", {});
      for (int a = 0; a < kAxes; ++a) {r.diagnostics.residual_rms(a) = v[static_cast<std::size_t>(a)];}
    }
    df.get("condition_number", r.diagnostics.condition_number);
    df.get("ill_conditioned", r.diagnostics.ill_conditioned);
    df.get("rank", r.diagnostics.rank);
    df.get("free_parameters", r.diagnostics.free_parameters);
    df.get("samples", r.diagnostics.samples);
    df.done();
  }
  f.done();
  return r;
}

Json report_to_json(const EvalReport & report, const Capacity & capacity)
{
  Json axes = Json::object();
  for (Axis a : kAllAxes) {
    const AxisReport & r = report.axis(a);
    Json j{
      {"full_scale", capacity.full_scale(a)},
      {"deviation", optional_number(r.deviation)},
      {"repeatability", optional_number(r.repeatability)},
      {"nonlinearity", optional_number(r.nonlinearity)},
      {"hysteresis", optional_number(r.hysteresis)},
      {"drift", optional_number(r.drift)},
      {"accuracy", optional_number(r.accuracy)},
    };
    if (r.regression) {
      j["regression"] = Json{
        {"slope", r.regression->slope},
        {"ci_low", r.regression->ci_low},
        {"ci_high", r.regression->ci_high},
        {"r_squared", r.regression->r_squared},
        {"samples", r.regression->samples},
      };
    } else {
      j["regression"] = nullptr;
    }
    axes[std::string(axis_name(a))] = j;
  }
  return Json{
    {"schema_version", kSchemaVersion},
    {"kind", "evaluation"},
    {"units", "fraction of full scale"},
    {"axes", axes},
  };
}

Json transfer_functions_to_json(
  const std::array<std::optional<FirstOrderFit>, kAxes> & fits, double dt)
{
  Json axes = Json::object();
  for (Axis a : kAllAxes) {
    const auto & fit = fits[static_cast<std::size_t>(index(a))];
    if (!fit) {
      axes[std::string(axis_name(a))] = nullptr;
      continue;
    }
    axes[std::string(axis_name(a))] = Json{
      {"gain", fit->gain},
      {"tau", fit->tau},
      {"fit_rms", fit->fit_rms},
      {"corner_frequency", fit->tau > 0.0 ? Json(corner_frequency(fit->tau)) : Json(nullptr)},
    };
  }
  return Json{
    {"schema_version", kSchemaVersion},
    {"kind", "transfer_functions"},
    {"model", "gain / (tau s + 1)"},
    {"sample_interval", dt},
    {"axes", axes},
  };
}

RunConfig default_run_config()
{
  RunConfig c;
  c.profile.sample_rate = 1024.0;
  c.profile.duration = 10.0;
  c.profile.lead_in = 1.0;
  const std::array<int, kAxes> cycles{2, 3, 4, 6, 8, 9};
  for (Axis a : kAllAxes) {
    Waveform & w = c.profile.axis(a);
    w.kind = WaveformKind::Ramp;
    w.amplitude = 0.8 * c.profile.capacity.full_scale(a);
    w.cycles = cycles[static_cast<std::size_t>(index(a))];
  }
  return c;
}

RunConfig run_config_from_json(const Json & doc, const RunConfig & defaults)
{
  check_schema_version(doc, "config");
  RunConfig c = defaults;
  Fields f(doc, "");
  int version = 0;
  f.get("schema_version", version);
  if (const Json * m = f.child("model")) {c.model = model_from_json(*m);}
  c.profile.capacity = c.model.capacity;
  c.evaluation.capacity = c.model.capacity;
  c.calibration.capacity = c.model.capacity;
  if (const Json * p = f.child("profile")) {c.profile = profile_from_json(*p, c.profile);}
  if (const Json * n = f.child("noise")) {c.noise = noise_from_json(*n, c.noise);}
  if (const Json * cal = f.child("calibration")) {
    c.calibration = calibration_options_from_json(*cal, c.calibration);
  }
  if (const Json * e = f.child("evaluation")) {
    Fields ef(*e, "evaluation");
    ef.get("unloaded_fraction", c.evaluation.unloaded_fraction);
    ef.get("hysteresis_grid", c.evaluation.hysteresis_grid);
    ef.done();
  }
  if (const Json * s = f.child("sysid")) {
    Fields sf(*s, "sysid");
    sf.get("f_min", c.sysid.f_min);
    sf.get("f_max", c.sysid.f_max);
    sf.get("points", c.sysid.points);
    sf.done();
  }
  f.done();
  return c;
}

Json run_config_to_json(const RunConfig & c)
{
  return Json{
    {"schema_version", kSchemaVersion},
    {"model", model_to_json(c.model)},
    {"profile", profile_to_json(c.profile)},
    {"noise", noise_to_json(c.noise)},
    {"calibration", calibration_options_to_json(c.calibration)},
    {"evaluation", {
        {"unloaded_fraction", c.evaluation.unloaded_fraction},
        {"hysteresis_grid", c.evaluation.hysteresis_grid}}},
    {"sysid", {{"f_min", c.sysid.f_min}, {"f_max", c.sysid.f_max}, {"points", c.sysid.points}}},
  };
}

}  // namespace hexwrench
