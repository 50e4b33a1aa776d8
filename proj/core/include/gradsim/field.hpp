#pragma once

#include <array>
#include <optional>
#include <vector>

#include "gradsim/constants.hpp"
#include "gradsim/linalg.hpp"

namespace gradsim {

enum class BodyKind { PointMass, UniformSphere, Composite };

/// A synthetic source of gravity: a point mass, a uniform sphere, or a signed
/// composite of other bodies. Signed masses are allowed so that density
/// contrasts (e.g. a neutrally buoyant hull) can be expressed directly.
class MassBody {
 public:
  static MassBody point_mass(const Vec3& center, double mass_kg);
  static MassBody uniform_sphere(const Vec3& center, double radius_m,
                                 double density_kgm3);
  static MassBody composite(std::vector<MassBody> children);

  BodyKind kind() const { return kind_; }
  const Vec3& center() const { return center_; }
  /// Total signed mass with no background subtraction. For a composite this
  /// is the sum over children.
  double mass() const;
  double radius() const { return radius_; }
  double density() const { return density_; }
  const std::vector<MassBody>& children() const { return children_; }

 private:
  MassBody() = default;

  BodyKind kind_ = BodyKind::PointMass;
  Vec3 center_ = Vec3::Zero();
  double mass_ = 0.0;     // point mass only
  double radius_ = 0.0;   // sphere only
  double density_ = 0.0;  // sphere only
  std::vector<MassBody> children_;  // composite only
};

/// A collection of bodies plus an optional background density. When the
/// background is set, every volumetric body contributes with its density
/// contrast: effective mass = volume * (density - background). Point masses
/// pass through unchanged.
class DensityModel {
 public:
  DensityModel() = default;
  explicit DensityModel(std::vector<MassBody> bodies,
                        double background_density_kgm3 = 0.0);

  const std::vector<MassBody>& bodies() const { return bodies_; }
  double background_density() const { return background_density_; }

  /// Effective (contrast-corrected) mass of one body, recursing into
  /// composites.
  double effective_mass(const MassBody& body) const;
  /// Sum of effective masses over the whole model (net monopole).
  double net_effective_mass() const;
  /// Sum of |effective mass| over all leaf bodies (gross mass scale).
  double gross_effective_mass() const;
  /// Gross-mass weighted centroid; used as the origin for falloff sweeps and
  /// standoff probes. Falls back to the unweighted centroid when all
  /// contrasts vanish, and to the origin for an empty model.
  Vec3 reference_center() const;
  /// Radius of the sphere around reference_center() that bounds every body
  /// surface.
  double bounding_radius() const;

  /// Signed distance from the point to the nearest body surface (> 0 means
  /// strictly outside every body). Point masses count as zero-radius spheres.
  double distance_to_nearest_surface(const Vec3& point) const;

 private:
  std::vector<MassBody> bodies_;
  double background_density_ = 0.0;
};

/// Symmetric, trace-free (in vacuum) second-derivative tensor of the
/// potential, Gamma_ij = d g_i / d x_j, SI units s^-2. I/O uses Eotvos.
struct GradientTensor {
  Mat3 components = Mat3::Zero();

  Mat3 in_eotvos() const { return components / PhysicalConstants::eotvos; }
  double trace() const { return components.trace(); }
  double max_abs() const { return components.cwiseAbs().maxCoeff(); }

  /// The five independent components {xx, yy, xy, xz, yz}; zz follows from
  /// the vacuum trace condition and the rest from symmetry.
  std::array<double, 5> independent_components() const;
  static GradientTensor from_independent_components(const std::array<double, 5>& c);
};

/// Gravitational potential per unit mass at an exterior field point,
/// J kg^-1. Negative near positive-contrast mass, approaching zero at
/// infinity. Throws FieldPointInsideBody for interior or on-surface points.
double potential(const DensityModel& model, const Vec3& point);

/// potential(model, a) - potential(model, b), evaluated cancellation-free.
/// For nearby points the naive subtraction loses the difference to rounding
/// once |potential| dwarfs it (a planetary field differs by ~1e-9 relative
/// across a centimetre); this path rewrites each body's 1/r_a - 1/r_b via
/// r_b^2 - r_a^2 = (b - a) . (a + b - 2 c) and stays accurate at machine
/// precision relative to the difference itself.
double potential_difference(const DensityModel& model, const Vec3& a,
                            const Vec3& b);

/// Gravitational acceleration -grad(potential) at an exterior field point.
GravityVector acceleration(const DensityModel& model, const Vec3& point);

/// Analytic gradient tensor Gamma_ij = d g_i / d x_j at an exterior point.
GradientTensor gradient_tensor(const DensityModel& model, const Vec3& point);

/// Central finite differences of acceleration(); the independent oracle for
/// gradient_tensor(). Default step is 1e-3 times the distance to the nearest
/// body surface. Throws StepTooLargeForGeometry when a probe point would
/// fall inside a body.
GradientTensor finite_difference_tensor(const DensityModel& model,
                                        const Vec3& point,
                                        std::optional<double> step_m = {});

/// Log-log least-squares slope of max|Gamma_ij| versus distance, sampled at
/// `samples` log-spaced radii along `direction` from the model's reference
/// center. Quantifies far-field falloff: -3 for a monopole, <= -4 once the
/// net contrast cancels. Requires samples >= 4, r_max/r_min >= 4 and
/// r_min beyond the model's bounding radius.
double falloff_exponent(const DensityModel& model, const Vec3& direction,
                        double r_min_m, double r_max_m, int samples);

}  // namespace gradsim
