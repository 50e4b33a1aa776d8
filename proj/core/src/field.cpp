#include "gradsim/field.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "gradsim/errors.hpp"
#include "gradsim/fit.hpp"

namespace gradsim {

namespace {

constexpr double kG = PhysicalConstants::gravitational_constant;

std::string describe_point(const Vec3& p) {
  std::ostringstream os;
  os << "(" << p.x() << ", " << p.y() << ", " << p.z() << ")";
  return os.str();
}

double sphere_volume(double radius) {
  return 4.0 / 3.0 * std::numbers::pi * radius * radius * radius;
}

[[noreturn]] void throw_inside(const Vec3& point, const MassBody& body) {
  std::ostringstream os;
  os << "field point " << describe_point(point)
     << " is inside or on the surface of a "
     << (body.kind() == BodyKind::PointMass ? "point-mass" : "sphere")
     << " body centered at " << describe_point(body.center());
  throw FieldPointInsideBody(os.str());
}

// Walks leaf bodies, calling fn(leaf, effective_mass).
template <typename Fn>
void for_each_leaf(const MassBody& body, double background, Fn&& fn) {
  switch (body.kind()) {
    case BodyKind::PointMass:
      fn(body, body.mass());
      break;
    case BodyKind::UniformSphere:
      fn(body, sphere_volume(body.radius()) * (body.density() - background));
      break;
    case BodyKind::Composite:
      for (const MassBody& child : body.children()) {
        for_each_leaf(child, background, fn);
      }
      break;
  }
}

template <typename Fn>
void for_each_leaf(const DensityModel& model, Fn&& fn) {
  for (const MassBody& body : model.bodies()) {
    for_each_leaf(body, model.background_density(), fn);
  }
}

// Separation from a leaf body's surface; checks the exterior precondition.
double exterior_distance(const MassBody& leaf, const Vec3& point) {
  const double r = (point - leaf.center()).norm();
  const double surface = leaf.kind() == BodyKind::UniformSphere ? leaf.radius() : 0.0;
  if (r <= surface) throw_inside(point, leaf);
  return r;
}

}  // namespace

MassBody MassBody::point_mass(const Vec3& center, double mass_kg) {
  if (!std::isfinite(mass_kg)) {
    throw std::invalid_argument("point_mass: mass must be finite");
  }
  MassBody b;
  b.kind_ = BodyKind::PointMass;
  b.center_ = center;
  b.mass_ = mass_kg;
  return b;
}

MassBody MassBody::uniform_sphere(const Vec3& center, double radius_m,
                                  double density_kgm3) {
  if (!(radius_m > 0.0)) {
    throw std::invalid_argument("uniform_sphere: radius must be > 0");
  }
  if (!std::isfinite(density_kgm3)) {
    throw std::invalid_argument("uniform_sphere: density must be finite");
  }
  MassBody b;
  b.kind_ = BodyKind::UniformSphere;
  b.center_ = center;
  b.radius_ = radius_m;
  b.density_ = density_kgm3;
  return b;
}

MassBody MassBody::composite(std::vector<MassBody> children) {
  if (children.empty()) {
    throw std::invalid_argument("composite: needs at least one child body");
  }
  MassBody b;
  b.kind_ = BodyKind::Composite;
  b.children_ = std::move(children);
  // Center: gross-mass weighted centroid of the children (robust for signed
  // masses summing to zero), else plain average.
  double gross = 0.0;
  Vec3 weighted = Vec3::Zero();
  Vec3 unweighted = Vec3::Zero();
  for (const MassBody& child : b.children_) {
    const double m = std::abs(child.mass());
    gross += m;
    weighted += m * child.center();
    unweighted += child.center();
  }
  b.center_ = gross > 0.0 ? Vec3(weighted / gross)
                          : Vec3(unweighted / static_cast<double>(b.children_.size()));
  return b;
}

double MassBody::mass() const {
  switch (kind_) {
    case BodyKind::PointMass:
      return mass_;
    case BodyKind::UniformSphere:
      return sphere_volume(radius_) * density_;
    case BodyKind::Composite: {
      double sum = 0.0;
      for (const MassBody& child : children_) sum += child.mass();
      return sum;
    }
  }
  return 0.0;
}

DensityModel::DensityModel(std::vector<MassBody> bodies,
                           double background_density_kgm3)
    : bodies_(std::move(bodies)), background_density_(background_density_kgm3) {
  if (!std::isfinite(background_density_kgm3)) {
    throw std::invalid_argument("DensityModel: background density must be finite");
  }
}

double DensityModel::effective_mass(const MassBody& body) const {
  double sum = 0.0;
  for_each_leaf(body, background_density_,
                [&](const MassBody&, double m) { sum += m; });
  return sum;
}

double DensityModel::net_effective_mass() const {
  double sum = 0.0;
  for_each_leaf(*this, [&](const MassBody&, double m) { sum += m; });
  return sum;
}

double DensityModel::gross_effective_mass() const {
  double sum = 0.0;
  for_each_leaf(*this, [&](const MassBody&, double m) { sum += std::abs(m); });
  return sum;
}

Vec3 DensityModel::reference_center() const {
  double gross = 0.0;
  Vec3 weighted = Vec3::Zero();
  Vec3 unweighted = Vec3::Zero();
  std::size_t leaves = 0;
  for_each_leaf(*this, [&](const MassBody& leaf, double m) {
    gross += std::abs(m);
    weighted += std::abs(m) * leaf.center();
    unweighted += leaf.center();
    ++leaves;
  });
  if (leaves == 0) return Vec3::Zero();
  if (gross > 0.0) return weighted / gross;
  return unweighted / static_cast<double>(leaves);
}

double DensityModel::bounding_radius() const {
  const Vec3 ref = reference_center();
  double radius = 0.0;
  for_each_leaf(*this, [&](const MassBody& leaf, double) {
    const double extent = leaf.kind() == BodyKind::UniformSphere ? leaf.radius() : 0.0;
    radius = std::max(radius, (leaf.center() - ref).norm() + extent);
  });
  return radius;
}

double DensityModel::distance_to_nearest_surface(const Vec3& point) const {
  double nearest = std::numeric_limits<double>::infinity();
  for_each_leaf(*this, [&](const MassBody& leaf, double) {
    const double surface = leaf.kind() == BodyKind::UniformSphere ? leaf.radius() : 0.0;
    nearest = std::min(nearest, (point - leaf.center()).norm() - surface);
  });
  return nearest;
}

double potential(const DensityModel& model, const Vec3& point) {
  double sum = 0.0;
  for_each_leaf(model, [&](const MassBody& leaf, double m_eff) {
    const double r = exterior_distance(leaf, point);
    sum += -kG * m_eff / r;
  });
  return sum;
}

double potential_difference(const DensityModel& model, const Vec3& a,
                            const Vec3& b) {
  double sum = 0.0;
  const Vec3 separation = b - a;
  for_each_leaf(model, [&](const MassBody& leaf, double m_eff) {
    const double r_a = exterior_distance(leaf, a);
    const double r_b = exterior_distance(leaf, b);
    // 1/r_a - 1/r_b = (r_b^2 - r_a^2) / (r_a r_b (r_a + r_b))
    const double radius_sq_gap =
        separation.dot(a + b - 2.0 * leaf.center());
    sum += -kG * m_eff * radius_sq_gap / (r_a * r_b * (r_a + r_b));
  });
  return sum;
}

GravityVector acceleration(const DensityModel& model, const Vec3& point) {
  Vec3 g = Vec3::Zero();
  for_each_leaf(model, [&](const MassBody& leaf, double m_eff) {
    const double r = exterior_distance(leaf, point);
    const Vec3 offset = point - leaf.center();
    g += -kG * m_eff / (r * r * r) * offset;
  });
  return g;
}

GradientTensor gradient_tensor(const DensityModel& model, const Vec3& point) {
  Mat3 gamma = Mat3::Zero();
  for_each_leaf(model, [&](const MassBody& leaf, double m_eff) {
    const double r = exterior_distance(leaf, point);
    const Vec3 n = (point - leaf.center()) / r;
    const double scale = kG * m_eff / (r * r * r);
    // Gamma_ij = G m (3 n_i n_j - delta_ij) / r^3
    gamma += scale * (3.0 * n * n.transpose() - Mat3::Identity());
  });
  return GradientTensor{gamma};
}

GradientTensor finite_difference_tensor(const DensityModel& model,
                                        const Vec3& point,
                                        std::optional<double> step_m) {
  const double separation = model.distance_to_nearest_surface(point);
  if (model.bodies().empty()) {
    return GradientTensor{};
  }
  if (separation <= 0.0) {
    throw FieldPointInsideBody("field point " + describe_point(point) +
                               " is inside or on a body surface");
  }
  const double h = step_m.value_or(1e-3 * separation);
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite_difference_tensor: step must be > 0");
  }

  Mat3 gamma;
  for (int j = 0; j < 3; ++j) {
    Vec3 forward = point, backward = point;
    forward[j] += h;
    backward[j] -= h;
    if (model.distance_to_nearest_surface(forward) <= 0.0 ||
        model.distance_to_nearest_surface(backward) <= 0.0) {
      throw StepTooLargeForGeometry(
          "finite-difference probe at step " + std::to_string(h) +
          " m enters a body near point " + describe_point(point));
    }
    const Vec3 column = (acceleration(model, forward) - acceleration(model, backward)) / (2.0 * h);
    gamma.col(j) = column;
  }
  return GradientTensor{gamma};
}

double falloff_exponent(const DensityModel& model, const Vec3& direction,
                        double r_min_m, double r_max_m, int samples) {
  if (r_max_m <= r_min_m) {
    throw DegenerateRange("falloff_exponent: r_max must exceed r_min");
  }
  if (samples < 4) {
    throw std::invalid_argument("falloff_exponent: need samples >= 4");
  }
  if (r_max_m / r_min_m < 4.0) {
    throw std::invalid_argument("falloff_exponent: need r_max/r_min >= 4");
  }
  const double norm = direction.norm();
  if (!(norm > 0.0)) {
    throw std::invalid_argument("falloff_exponent: direction must be nonzero");
  }
  if (r_min_m <= model.bounding_radius()) {
    throw std::invalid_argument("falloff_exponent: r_min must exceed the model extent");
  }
  const Vec3 unit = direction / norm;
  const Vec3 origin = model.reference_center();

  std::vector<double> radii(static_cast<std::size_t>(samples));
  std::vector<double> metric(static_cast<std::size_t>(samples));
  const double log_min = std::log(r_min_m);
  const double log_step = (std::log(r_max_m) - log_min) / (samples - 1);
  for (int i = 0; i < samples; ++i) {
    const double r = std::exp(log_min + log_step * i);
    const double value = gradient_tensor(model, origin + r * unit).max_abs();
    if (!(value > 0.0)) {
      throw Error("falloff_exponent: gradient tensor vanishes along the sweep");
    }
    radii[static_cast<std::size_t>(i)] = r;
    metric[static_cast<std::size_t>(i)] = value;
  }
  return fit_loglog_slope(radii, metric);
}

std::array<double, 5> GradientTensor::independent_components() const {
  return {components(0, 0), components(1, 1), components(0, 1),
          components(0, 2), components(1, 2)};
}

GradientTensor GradientTensor::from_independent_components(
    const std::array<double, 5>& c) {
  Mat3 m;
  const double xx = c[0], yy = c[1], xy = c[2], xz = c[3], yz = c[4];
  m << xx, xy, xz,
       xy, yy, yz,
       xz, yz, -(xx + yy);
  return GradientTensor{m};
}

}  // namespace gradsim
