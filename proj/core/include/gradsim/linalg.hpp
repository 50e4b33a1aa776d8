#pragma once

#include <Eigen/Dense>

namespace gradsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Gravitational acceleration vector, m s^-2, components in the model frame
/// (right-handed, z up).
using GravityVector = Vec3;

}  // namespace gradsim
