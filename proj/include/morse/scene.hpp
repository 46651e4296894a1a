#pragma once

#include <string>
#include <vector>

#include "morse/errors.hpp"
#include "morse/hermitian.hpp"

namespace morse {

// chern: weights calibrated so the torus oracle dimensions are matched
// exactly and no 2*pi factors appear anywhere. raw: weights are taken
// literally and the model-density prefactors are applied as displayed.
enum class Units { chern, raw };

inline const char* units_name(Units u) {
  return u == Units::chern ? "chern" : "raw";
}

struct BulkSample {
  double weight;
  HermitianMatrix theta;  // curvature at the point, dim n
};

struct BoundarySample {
  double weight;
  HermitianMatrix theta_tan;  // curvature restricted to T^{1,0}, dim n-1
  HermitianMatrix levi;       // Levi form, unit-norm defining function
};

// Quadrature-sampled geometry. Weights carry the measure; the library never
// invents quadrature for user data.
struct Scene {
  int n = 0;
  Units units = Units::chern;
  std::vector<BulkSample> bulk;
  std::vector<BoundarySample> boundary;
};

inline void validate_scene(const Scene& scene) {
  if (scene.n < 1) throw DimensionMismatch("scene: n must be >= 1");
  if (!scene.boundary.empty() && scene.n < 2)
    throw DimensionMismatch("scene: boundary samples require n >= 2");
  for (std::size_t i = 0; i < scene.bulk.size(); ++i) {
    const BulkSample& s = scene.bulk[i];
    if (s.weight < 0.0)
      throw NegativeWeight("bulk sample weight is negative",
                           static_cast<long>(i));
    if (s.theta.dim() != scene.n)
      throw DimensionMismatch("bulk sample " + std::to_string(i) +
                              ": theta dim must equal n");
  }
  for (std::size_t i = 0; i < scene.boundary.size(); ++i) {
    const BoundarySample& s = scene.boundary[i];
    if (s.weight < 0.0)
      throw NegativeWeight("boundary sample weight is negative",
                           static_cast<long>(i));
    if (s.theta_tan.dim() != scene.n - 1 || s.levi.dim() != scene.n - 1)
      throw DimensionMismatch("boundary sample " + std::to_string(i) +
                              ": matrices must have dim n - 1");
  }
}

}  // namespace morse
