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
 * @file core_model.hpp
 *
 * Linearised forward physics of the two-layer, 16-chamber air-chamber
 * force/torque sensor: geometry and material constants in, per-chamber
 * volume and pressure change out.
 *
 * Everything here is templated on the scalar type and header-only. The
 * single-load-case functions (dv_normal_force, dv_shear_force, dv_torque_z,
 * dv_torque_xy) evaluate the strain/area integrals directly; the coupling
 * matrices evaluate the closed-form constants. The two routes agree by
 * superposition and are tested against each other.
 */

#ifndef HEXWRENCH__CORE_MODEL_HPP_
#define HEXWRENCH__CORE_MODEL_HPP_

#include "hexwrench/types.hpp"

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>

namespace hexwrench
{

enum class Layer { Lower, Upper };

constexpr std::string_view layer_name(Layer l) {return l == Layer::Lower ? "lower" : "upper";}

/// Angular extent [begin, end] of one chamber, radians.
template<typename Scalar>
struct Arc
{
  Scalar begin{0};
  Scalar end{0};

  Scalar center() const {return (begin + end) / Scalar(2);}
  Scalar span() const {return end - begin;}
};

template<typename Scalar>
using LayerArcs = std::array<Arc<Scalar>, kChambersPerLayer>;

/**
 * Raw sensor geometry (SI units).
 *
 * Chamber centres are derived unless given explicitly: the lower layer is
 * evenly spaced at pi/4 starting from lower_phase; the upper layer is four
 * adjacent pairs, pair p centred at upper_phase + upper_pair_half_gap + p*pi/2
 * with its two chambers at -/+ upper_pair_half_gap from the pair centre.
 */
template<typename Scalar>
struct SensorGeometry
{
  Scalar outer_radius{Scalar(0.040)};
  Scalar pillar_radius{Scalar(0.006)};
  Scalar layer_height{Scalar(0.008)};
  Scalar lower_arc_span{std::numbers::pi_v<Scalar> / 8};
  Scalar upper_arc_span{std::numbers::pi_v<Scalar> / 8};
  Scalar lower_phase{0};
  Scalar upper_phase{0};
  Scalar upper_pair_half_gap{std::numbers::pi_v<Scalar> / 8};
  /// Torque-z sign per upper chamber; four +1 and four -1.
  std::array<int, kChambersPerLayer> upper_pairing{1, -1, 1, -1, 1, -1, 1, -1};
  std::optional<std::array<Scalar, kChambersPerLayer>> lower_centers;
  std::optional<std::array<Scalar, kChambersPerLayer>> upper_centers;

  Scalar mean_radius() const {return (outer_radius + pillar_radius) / Scalar(2);}
  Scalar arc_span(Layer l) const {return l == Layer::Lower ? lower_arc_span : upper_arc_span;}
};

/// Validated geometry with the chamber arcs of both layers.
template<typename Scalar>
struct ChamberLayout
{
  SensorGeometry<Scalar> geometry;
  LayerArcs<Scalar> lower;
  LayerArcs<Scalar> upper;

  const LayerArcs<Scalar> & arcs(Layer l) const {return l == Layer::Lower ? lower : upper;}
};

namespace detail
{

template<typename Scalar>
Scalar wrap_angle(Scalar a)
{
  const Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  a = std::fmod(a, two_pi);
  if (a > std::numbers::pi_v<Scalar>) {a -= two_pi;}
  if (a < -std::numbers::pi_v<Scalar>) {a += two_pi;}
  return a;
}

template<typename Scalar>
LayerArcs<Scalar> arcs_from_centers(const std::array<Scalar, kChambersPerLayer> & centers, Scalar span)
{
  LayerArcs<Scalar> arcs;
  for (std::size_t k = 0; k < arcs.size(); ++k) {
    arcs[k] = {centers[k] - span / 2, centers[k] + span / 2};
  }
  return arcs;
}

template<typename Scalar>
void check_disjoint(const LayerArcs<Scalar> & arcs, Layer layer)
{
  const Scalar tol = Scalar(1e-9);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (std::size_t j = i + 1; j < arcs.size(); ++j) {
      const Scalar gap = std::abs(wrap_angle(arcs[i].center() - arcs[j].center()));
      const Scalar needed = (arcs[i].span() + arcs[j].span()) / 2;
      if (gap < needed - tol) {
        throw LayoutError(
          std::string(layer_name(layer)) + " layer: chamber arcs " + std::to_string(i + 1) +
          " and " + std::to_string(j + 1) + " overlap");
      }
    }
  }
}

/// Rank of an 8x3 block after normalising its columns.
template<typename Scalar>
int normalized_rank(const Eigen::Matrix<Scalar, kChambersPerLayer, 3> & m)
{
  Eigen::Matrix<double, kChambersPerLayer, 3> n = m.template cast<double>();
  for (int c = 0; c < 3; ++c) {
    const double norm = n.col(c).norm();
    if (norm > 0.0) {n.col(c) /= norm;}
  }
  Eigen::JacobiSVD<Eigen::Matrix<double, kChambersPerLayer, 3>> svd(n);
  const auto & s = svd.singularValues();
  int rank = 0;
  for (int i = 0; i < s.size(); ++i) {
    if (s(i) > 1e-6 * s(0)) {++rank;}
  }
  return s(0) > 0.0 ? rank : 0;
}

}  // namespace detail

/**
 * Validate raw geometry and derive both layers' chamber arcs.
 *
 * Throws LayoutError when r0 >= R0, a length is non-positive, the pairing
 * signs are not four +1 and four -1, or two arcs in one layer overlap.
 */
template<typename Scalar>
ChamberLayout<Scalar> build_layout(const SensorGeometry<Scalar> & g)
{
  if (!(g.pillar_radius > 0) || !(g.pillar_radius < g.outer_radius)) {
    throw LayoutError("pillar radius must satisfy 0 < r0 < R0");
  }
  if (!(g.layer_height > 0)) {
    throw LayoutError("layer height must be positive");
  }
  if (!(g.lower_arc_span > 0) || !(g.upper_arc_span > 0)) {
    throw LayoutError("chamber arc spans must be positive");
  }
  int plus = 0;
  int minus = 0;
  for (int s : g.upper_pairing) {
    plus += s == 1;
    minus += s == -1;
  }
  if (plus != 4 || minus != 4) {
    throw LayoutError("upper pairing must contain four +1 and four -1 entries");
  }

  const Scalar quarter = std::numbers::pi_v<Scalar> / 4;
  std::array<Scalar, kChambersPerLayer> lower_c{};
  std::array<Scalar, kChambersPerLayer> upper_c{};
  for (int k = 0; k < kChambersPerLayer; ++k) {
    lower_c[static_cast<std::size_t>(k)] = g.lower_phase + Scalar(k) * quarter;
  }
  for (int p = 0; p < 4; ++p) {
    const Scalar pair_center = g.upper_phase + g.upper_pair_half_gap + Scalar(p) * 2 * quarter;
    upper_c[static_cast<std::size_t>(2 * p)] = pair_center - g.upper_pair_half_gap;
    upper_c[static_cast<std::size_t>(2 * p + 1)] = pair_center + g.upper_pair_half_gap;
  }
  if (g.lower_centers) {lower_c = *g.lower_centers;}
  if (g.upper_centers) {upper_c = *g.upper_centers;}

  ChamberLayout<Scalar> layout{g, detail::arcs_from_centers(lower_c, g.lower_arc_span),
    detail::arcs_from_centers(upper_c, g.upper_arc_span)};
  detail::check_disjoint(layout.lower, Layer::Lower);
  detail::check_disjoint(layout.upper, Layer::Upper);
  return layout;
}

/**
 * Direction matrix T_xy of one layer: row k is the integral of
 * [cos(theta), sin(theta)] over chamber k's arc.
 */
template<typename Scalar>
Eigen::Matrix<Scalar, kChambersPerLayer, 2> direction_matrix(const LayerArcs<Scalar> & arcs)
{
  Eigen::Matrix<Scalar, kChambersPerLayer, 2> t;
  for (int k = 0; k < kChambersPerLayer; ++k) {
    const auto & a = arcs[static_cast<std::size_t>(k)];
    t(k, 0) = std::sin(a.end) - std::sin(a.begin);
    t(k, 1) = std::cos(a.begin) - std::cos(a.end);
  }
  return t;
}

/// Elastic constants of one layer (Pa, m^2).
template<typename Scalar>
struct LayerMaterial
{
  Scalar youngs_modulus{Scalar(0.5e6)};
  Scalar poisson_ratio{Scalar(0.49)};
  Scalar pillar_area{0};          // normal to Fz
  Scalar pillar_shear_area{0};    // normal to shear stress
  Scalar shear_modulus_1{0};
  Scalar shear_modulus_2{0};
  Scalar shear_area_1{0};
  Scalar shear_area_2{0};

  /// Reference silicone set for the given pillar radius.
  static LayerMaterial reference(const SensorGeometry<Scalar> & g)
  {
    LayerMaterial m;
    const Scalar area = std::numbers::pi_v<Scalar> * g.pillar_radius * g.pillar_radius;
    m.pillar_area = area;
    m.pillar_shear_area = area;
    m.shear_modulus_1 = m.youngs_modulus / (2 * (1 + m.poisson_ratio));
    m.shear_modulus_2 = m.shear_modulus_1;
    m.shear_area_1 = area;
    m.shear_area_2 = area / 2;
    return m;
  }
};

template<typename Scalar>
struct MaterialParams
{
  LayerMaterial<Scalar> lower;
  LayerMaterial<Scalar> upper;

  const LayerMaterial<Scalar> & of(Layer l) const {return l == Layer::Lower ? lower : upper;}

  static MaterialParams reference(const SensorGeometry<Scalar> & g)
  {
    return {LayerMaterial<Scalar>::reference(g), LayerMaterial<Scalar>::reference(g)};
  }
};

template<typename Scalar>
void validate(const LayerMaterial<Scalar> & m, Layer layer)
{
  const std::string where = std::string(layer_name(layer)) + " layer material: ";
  if (!(m.poisson_ratio > 0) || !(m.poisson_ratio < Scalar(0.5))) {
    throw LayoutError(where + "Poisson ratio must lie in (0, 0.5)");
  }
  for (Scalar v : {m.youngs_modulus, m.pillar_area, m.pillar_shear_area, m.shear_modulus_1,
      m.shear_modulus_2, m.shear_area_1, m.shear_area_2})
  {
    if (!(v > 0) || !std::isfinite(static_cast<double>(v))) {
      throw LayoutError(where + "moduli and areas must be positive and finite");
    }
  }
}

/// Initial absolute pressure and volume of every chamber.
template<typename Scalar>
struct ChamberGasState
{
  PressureVector<Scalar> p0;
  PressureVector<Scalar> v0;

  /// Linearised ideal-gas gain dp/dV = -p0/v0 per chamber (Pa/m^3).
  PressureVector<Scalar> kappa() const {return -p0.cwiseQuotient(v0);}

  /// Atmospheric fill; volumes from the undeformed chamber cross-section.
  static ChamberGasState reference(const SensorGeometry<Scalar> & g)
  {
    ChamberGasState s;
    s.p0.setConstant(Scalar(101325));
    const Scalar r = g.mean_radius();
    const Scalar area = g.layer_height * (g.outer_radius - g.pillar_radius);
    s.v0.template head<kChambersPerLayer>().setConstant(g.lower_arc_span * r * area);
    s.v0.template tail<kChambersPerLayer>().setConstant(g.upper_arc_span * r * area);
    return s;
  }
};

template<typename Scalar>
void validate(const ChamberGasState<Scalar> & gas)
{
  for (int k = 0; k < kChannels; ++k) {
    if (!(gas.p0(k) > 0) || !(gas.v0(k) > 0)) {
      throw LayoutError("chamber " + std::to_string(k + 1) + ": p0 and v0 must be positive");
    }
  }
}

/**
 * Strains of one layer under a wrench; all linear in the load.
 *
 * eps_edge is the edge strain under Tx/Ty, taken as |T|/(E*Sp*R0) so that the
 * tilt shear strain gamma_tilt = h0*eps_edge/R0.
 */
template<typename Scalar>
struct DeformationStrains
{
  Scalar eps_zz{0};
  Scalar eps_zx{0};
  Scalar gamma_shear{0};
  Scalar shear_direction{0};
  Scalar gamma1{0};
  Scalar gamma2{0};
  Scalar eps_edge{0};
  Scalar gamma_tilt{0};
  Scalar tilt_direction{0};
};

template<typename Scalar>
DeformationStrains<Scalar> deformation_strains(
  const Wrench<Scalar> & w, const LayerMaterial<Scalar> & m, const SensorGeometry<Scalar> & g)
{
  DeformationStrains<Scalar> s;
  const Scalar es = m.youngs_modulus * m.pillar_area;
  s.eps_zz = w(index(Axis::Fz)) / es;
  s.eps_zx = -m.poisson_ratio * w(index(Axis::Fz)) / es;

  const Scalar fxy = std::hypot(w(index(Axis::Fx)), w(index(Axis::Fy)));
  s.gamma_shear = 2 * (1 + m.poisson_ratio) / m.youngs_modulus * (fxy / m.pillar_shear_area);
  s.shear_direction = std::atan2(w(index(Axis::Fy)), w(index(Axis::Fx)));

  s.gamma1 = w(index(Axis::Tz)) / (m.shear_modulus_1 * m.shear_area_1);
  s.gamma2 = w(index(Axis::Tz)) / (m.shear_modulus_2 * m.shear_area_2);

  const Scalar txy = std::hypot(w(index(Axis::Tx)), w(index(Axis::Ty)));
  s.eps_edge = txy / (m.youngs_modulus * m.pillar_shear_area * g.outer_radius);
  s.gamma_tilt = g.layer_height * s.eps_edge / g.outer_radius;
  s.tilt_direction = std::atan2(w(index(Axis::Ty)), w(index(Axis::Tx)));
  return s;
}

namespace detail
{

/// r * integral over each arc of cos(theta - direction).
template<typename Scalar>
LayerVector<Scalar> projected_arc_integral(const LayerArcs<Scalar> & arcs, Scalar r, Scalar direction)
{
  LayerVector<Scalar> v;
  for (int k = 0; k < kChambersPerLayer; ++k) {
    const auto & a = arcs[static_cast<std::size_t>(k)];
    v(k) = r * (std::sin(a.end - direction) - std::sin(a.begin - direction));
  }
  return v;
}

}  // namespace detail

/// Volume change of one layer's chambers under a normal force alone.
template<typename Scalar>
LayerVector<Scalar> dv_normal_force(
  Scalar fz, const LayerMaterial<Scalar> & m, const ChamberLayout<Scalar> & layout, Layer layer)
{
  const auto & g = layout.geometry;
  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  w(index(Axis::Fz)) = fz;
  const auto s = deformation_strains(w, m, g);
  // Cross-section change with the strain product dropped.
  const Scalar d_area = g.layer_height * (-s.eps_zz * g.outer_radius + s.eps_zx * g.pillar_radius);
  LayerVector<Scalar> dv;
  const auto & arcs = layout.arcs(layer);
  for (int k = 0; k < kChambersPerLayer; ++k) {
    dv(k) = d_area * g.mean_radius() * arcs[static_cast<std::size_t>(k)].span();
  }
  return dv;
}

/// Volume change under Fx/Fy; the rigid lower layer does not respond.
template<typename Scalar>
LayerVector<Scalar> dv_shear_force(
  Scalar fx, Scalar fy, const LayerMaterial<Scalar> & m, const ChamberLayout<Scalar> & layout,
  Layer layer)
{
  if (layer == Layer::Lower) {return LayerVector<Scalar>::Zero();}
  const auto & g = layout.geometry;
  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  w(index(Axis::Fx)) = fx;
  w(index(Axis::Fy)) = fy;
  const auto s = deformation_strains(w, m, g);
  const Scalar amplitude = s.gamma_shear * g.layer_height * g.layer_height / 2;
  return amplitude *
         detail::projected_arc_integral(layout.arcs(layer), g.mean_radius(), s.shear_direction);
}

/// Volume change under Tz: paired upper chambers swell/shrink in opposition.
template<typename Scalar>
LayerVector<Scalar> dv_torque_z(
  Scalar tz, const LayerMaterial<Scalar> & m, const ChamberLayout<Scalar> & layout, Layer layer)
{
  if (layer == Layer::Lower) {return LayerVector<Scalar>::Zero();}
  const auto & g = layout.geometry;
  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  w(index(Axis::Tz)) = tz;
  const auto s = deformation_strains(w, m, g);
  const Scalar magnitude = (g.outer_radius - g.pillar_radius) * g.pillar_radius * g.layer_height *
    (s.gamma2 - s.gamma1) / 4;
  LayerVector<Scalar> dv;
  for (int k = 0; k < kChambersPerLayer; ++k) {
    dv(k) = magnitude * Scalar(g.upper_pairing[static_cast<std::size_t>(k)]);
  }
  return dv;
}

/// Volume change under Tx/Ty: the layer tilts, one side compressed.
template<typename Scalar>
LayerVector<Scalar> dv_torque_xy(
  Scalar tx, Scalar ty, const LayerMaterial<Scalar> & m, const ChamberLayout<Scalar> & layout,
  Layer layer)
{
  const auto & g = layout.geometry;
  Wrench<Scalar> w = Wrench<Scalar>::Zero();
  w(index(Axis::Tx)) = tx;
  w(index(Axis::Ty)) = ty;
  const auto s = deformation_strains(w, m, g);
  const Scalar r0 = g.pillar_radius;
  const Scalar amplitude =
    s.gamma_tilt * (g.outer_radius * g.outer_radius - r0 * r0) / 2;
  return amplitude *
         detail::projected_arc_integral(layout.arcs(layer), g.mean_radius(), s.tilt_direction);
}

/// The six per-layer deformation constants (alpha, lambda, beta, xi).
template<typename Scalar>
struct CouplingScalars
{
  Scalar alpha_lower{0};
  Scalar lambda_lower{0};
  Scalar beta_upper{0};
  Scalar xi_upper{0};
  Scalar alpha_upper{0};
  Scalar lambda_upper{0};

  Eigen::Matrix<Scalar, 6, 1> as_vector() const
  {
    Eigen::Matrix<Scalar, 6, 1> v;
    v << alpha_lower, lambda_lower, beta_upper, xi_upper, alpha_upper, lambda_upper;
    return v;
  }

  static CouplingScalars from_vector(const Eigen::Matrix<Scalar, 6, 1> & v)
  {
    return {v(0), v(1), v(2), v(3), v(4), v(5)};
  }

  static constexpr std::array<std::string_view, 6> names{
    "alpha_lower", "lambda_lower", "beta_upper", "xi_upper", "alpha_upper", "lambda_upper"};
};

template<typename Scalar>
Scalar normal_force_constant(const LayerMaterial<Scalar> & m, const SensorGeometry<Scalar> & g, Layer l)
{
  return g.arc_span(l) * g.mean_radius() * g.layer_height *
         (g.outer_radius + m.poisson_ratio * g.pillar_radius) / (m.youngs_modulus * m.pillar_area);
}

template<typename Scalar>
Scalar shear_force_constant(const LayerMaterial<Scalar> & m, const SensorGeometry<Scalar> & g)
{
  return (1 + m.poisson_ratio) * g.mean_radius() * g.layer_height * g.layer_height /
         (m.youngs_modulus * m.pillar_shear_area);
}

template<typename Scalar>
Scalar torque_z_constant(const LayerMaterial<Scalar> & m, const SensorGeometry<Scalar> & g)
{
  return (g.outer_radius - g.pillar_radius) * g.pillar_radius * g.layer_height / 4 *
         (1 / (m.shear_modulus_2 * m.shear_area_2) - 1 / (m.shear_modulus_1 * m.shear_area_1));
}

template<typename Scalar>
Scalar torque_xy_constant(const LayerMaterial<Scalar> & m, const SensorGeometry<Scalar> & g)
{
  const Scalar R2 = g.outer_radius * g.outer_radius;
  return g.mean_radius() * g.layer_height * (R2 - g.pillar_radius * g.pillar_radius) /
         (2 * m.youngs_modulus * m.pillar_shear_area * R2);
}

template<typename Scalar>
CouplingScalars<Scalar> coupling_scalars(
  const MaterialParams<Scalar> & m, const SensorGeometry<Scalar> & g)
{
  return {normal_force_constant(m.lower, g, Layer::Lower), torque_xy_constant(m.lower, g),
    shear_force_constant(m.upper, g), torque_z_constant(m.upper, g),
    normal_force_constant(m.upper, g, Layer::Upper), torque_xy_constant(m.upper, g)};
}

/**
 * Volume-change transfer matrices.
 *
 *   dV_lower = t_l  [Fz Tx Ty]
 *   dV_upper = t_u1 [Fx Fy Tz] + t_u2 [Fz Tx Ty]
 *
 * t_u2's Fz column uses the all-ones pattern: uniform compression loads
 * every upper chamber equally, as it does in the lower layer.
 */
template<typename Scalar>
struct CouplingMatrices
{
  using Block = Eigen::Matrix<Scalar, kChambersPerLayer, 3>;
  using Direction = Eigen::Matrix<Scalar, kChambersPerLayer, 2>;

  LayerVector<Scalar> t_fz;
  Direction txy_lower;
  Direction txy_upper;
  LayerVector<Scalar> t_tz;
  CouplingScalars<Scalar> scalars;
  Block t_l;
  Block t_u1;
  Block t_u2;
};

/// Throws LayoutError when t_l or t_u1 lose column rank (degenerate layout).
template<typename Scalar>
CouplingMatrices<Scalar> assemble_coupling(
  const CouplingScalars<Scalar> & sc, const ChamberLayout<Scalar> & layout)
{
  CouplingMatrices<Scalar> c;
  c.t_fz.setOnes();
  c.txy_lower = direction_matrix(layout.lower);
  c.txy_upper = direction_matrix(layout.upper);
  for (int k = 0; k < kChambersPerLayer; ++k) {
    c.t_tz(k) = Scalar(layout.geometry.upper_pairing[static_cast<std::size_t>(k)]);
  }
  c.scalars = sc;
  c.t_l << -sc.alpha_lower * c.t_fz, sc.lambda_lower * c.txy_lower;
  c.t_u1 << sc.beta_upper * c.txy_upper, sc.xi_upper * c.t_tz;
  c.t_u2 << -sc.alpha_upper * c.t_fz, sc.lambda_upper * c.txy_upper;

  if (detail::normalized_rank(c.t_l) < 3) {
    throw LayoutError("degenerate layout: lower transfer block T_l has rank < 3");
  }
  if (detail::normalized_rank(c.t_u1) < 3) {
    throw LayoutError("degenerate layout: upper transfer block T_u1 has rank < 3");
  }
  return c;
}

template<typename Scalar>
CouplingMatrices<Scalar> coupling_matrices(
  const MaterialParams<Scalar> & m, const ChamberLayout<Scalar> & layout)
{
  return assemble_coupling(coupling_scalars(m, layout.geometry), layout);
}

template<typename Scalar>
struct SensorModel
{
  ChamberLayout<Scalar> layout;
  MaterialParams<Scalar> material;
  ChamberGasState<Scalar> gas;
  CouplingMatrices<Scalar> coupling;
  Capacity capacity;
};

template<typename Scalar>
SensorModel<Scalar> make_sensor_model(
  const SensorGeometry<Scalar> & geometry, const MaterialParams<Scalar> & material,
  const ChamberGasState<Scalar> & gas, const Capacity & capacity = {})
{
  auto layout = build_layout(geometry);
  validate(material.lower, Layer::Lower);
  validate(material.upper, Layer::Upper);
  validate(gas);
  auto coupling = coupling_matrices(material, layout);
  return {std::move(layout), material, gas, std::move(coupling), capacity};
}

template<typename Scalar>
SensorModel<Scalar> reference_sensor_model()
{
  const SensorGeometry<Scalar> g;
  return make_sensor_model(g, MaterialParams<Scalar>::reference(g), ChamberGasState<Scalar>::reference(g));
}

/// Volume change of all 16 chambers (lower 8 then upper 8).
template<typename Scalar>
PressureVector<Scalar> volumes_from_wrench(const Wrench<Scalar> & w, const SensorModel<Scalar> & model)
{
  const Eigen::Matrix<Scalar, 3, 1> shared(w(index(Axis::Fz)), w(index(Axis::Tx)), w(index(Axis::Ty)));
  const Eigen::Matrix<Scalar, 3, 1> upper_only(w(index(Axis::Fx)), w(index(Axis::Fy)), w(index(Axis::Tz)));
  PressureVector<Scalar> dv;
  dv.template head<kChambersPerLayer>().noalias() = model.coupling.t_l * shared;
  dv.template tail<kChambersPerLayer>().noalias() =
    model.coupling.t_u1 * upper_only + model.coupling.t_u2 * shared;
  return dv;
}

/// Linearised ideal gas: dp_k = kappa_k * dV_k.
template<typename Scalar>
PressureVector<Scalar> pressure_from_volume(
  const PressureVector<Scalar> & dv, const ChamberGasState<Scalar> & gas)
{
  return gas.kappa().cwiseProduct(dv);
}

template<typename Scalar>
PressureVector<Scalar> pressure_response(const Wrench<Scalar> & w, const SensorModel<Scalar> & model)
{
  return pressure_from_volume(volumes_from_wrench(w, model), model.gas);
}

/// Sensitivity matrix M with dp = M * w (columns in canonical axis order).
template<typename Scalar>
Eigen::Matrix<Scalar, kChannels, kAxes> pressure_sensitivity(const SensorModel<Scalar> & model)
{
  Eigen::Matrix<Scalar, kChannels, kAxes> m;
  for (int a = 0; a < kAxes; ++a) {
    m.col(a) = pressure_response<Scalar>(Wrench<Scalar>::Unit(a), model);
  }
  return m;
}

}  // namespace hexwrench

#endif  // HEXWRENCH__CORE_MODEL_HPP_
