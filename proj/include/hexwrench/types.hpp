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

#ifndef HEXWRENCH__TYPES_HPP_
#define HEXWRENCH__TYPES_HPP_

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hexwrench
{

inline constexpr int kAxes = 6;
inline constexpr int kChambersPerLayer = 8;
inline constexpr int kChannels = 16;

/// Canonical wrench component order: forces first, then torques.
enum class Axis : int { Fx = 0, Fy, Fz, Tx, Ty, Tz };

inline constexpr std::array<Axis, kAxes> kAllAxes{
  Axis::Fx, Axis::Fy, Axis::Fz, Axis::Tx, Axis::Ty, Axis::Tz};

/**
 * Row order of the decoupling matrix K.
 *
 * K is stored with its rows ordered (Fx, Fy, Tz, Fz, Tx, Ty): the first three
 * rows are recovered from both layers, the last three from the rigid lower
 * layer alone. kDecouplingRowOrder[i] is the canonical axis of K's row i.
 */
inline constexpr std::array<Axis, kAxes> kDecouplingRowOrder{
  Axis::Fx, Axis::Fy, Axis::Tz, Axis::Fz, Axis::Tx, Axis::Ty};

constexpr int index(Axis a) {return static_cast<int>(a);}

constexpr std::string_view axis_name(Axis a)
{
  constexpr std::array<std::string_view, kAxes> names{"fx", "fy", "fz", "tx", "ty", "tz"};
  return names[static_cast<std::size_t>(index(a))];
}

constexpr bool is_force(Axis a) {return index(a) < 3;}

template<typename Scalar>
using Wrench = Eigen::Matrix<Scalar, kAxes, 1>;

template<typename Scalar>
using LayerVector = Eigen::Matrix<Scalar, kChambersPerLayer, 1>;

/// 16 channels: lower chambers 1-8 followed by upper chambers 1-8.
template<typename Scalar>
using PressureVector = Eigen::Matrix<Scalar, kChannels, 1>;

using Wrenchd = Wrench<double>;
using PressureVectord = PressureVector<double>;
using DecouplingMatrix = Eigen::Matrix<double, kAxes, kChannels>;
using WrenchRows = Eigen::Matrix<double, Eigen::Dynamic, kAxes>;
using PressureRows = Eigen::Matrix<double, Eigen::Dynamic, kChannels>;

/// Canonical (Fx,Fy,Fz,Tx,Ty,Tz) -> decoupling row order (Fx,Fy,Tz,Fz,Tx,Ty).
template<typename Scalar>
Wrench<Scalar> to_decoupling_order(const Wrench<Scalar> & w)
{
  Wrench<Scalar> out;
  for (int i = 0; i < kAxes; ++i) {
    out(i) = w(index(kDecouplingRowOrder[static_cast<std::size_t>(i)]));
  }
  return out;
}

template<typename Scalar>
Wrench<Scalar> from_decoupling_order(const Wrench<Scalar> & f)
{
  Wrench<Scalar> out;
  for (int i = 0; i < kAxes; ++i) {
    out(index(kDecouplingRowOrder[static_cast<std::size_t>(i)])) = f(i);
  }
  return out;
}

/// Rated load per axis; also the full scale used to normalise error metrics.
struct Capacity
{
  double force{50.0};   // N
  double torque{1.0};   // N*m

  double full_scale(Axis a) const {return is_force(a) ? force : torque;}

  Wrenchd as_wrench() const
  {
    Wrenchd w;
    w << force, force, force, torque, torque, torque;
    return w;
  }
};

class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Geometry or layout that cannot describe a physical sensor.
class LayoutError : public Error
{
public:
  using Error::Error;
};

/// A load exceeds the declared capacity on one axis.
class CapacityError : public Error
{
public:
  CapacityError(Axis axis, const std::string & what)
  : Error(what), axis_(axis) {}
  Axis axis() const {return axis_;}

private:
  Axis axis_;
};

/// Regression design that does not determine the requested parameters.
class RankDeficiencyError : public Error
{
public:
  RankDeficiencyError(std::vector<Axis> unexcited, const std::string & what)
  : Error(what), unexcited_(std::move(unexcited)) {}
  const std::vector<Axis> & unexcited_axes() const {return unexcited_;}

private:
  std::vector<Axis> unexcited_;
};

/// Malformed input file; line is 1-based, 0 when not line-specific.
class SchemaError : public Error
{
public:
  SchemaError(std::size_t line, const std::string & what)
  : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const {return line_;}

private:
  std::size_t line_;
};

}  // namespace hexwrench

#endif  // HEXWRENCH__TYPES_HPP_
