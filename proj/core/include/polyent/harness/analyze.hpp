#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "polyent/cohomology/growth.hpp"
#include "polyent/harness/matrix_input.hpp"

namespace polyent::harness {

struct MatrixAnalysis {
  MatrixInput input;
  std::size_t k = 2;    // complex dimension used for the bounds
  std::size_t b2 = 0;
  std::optional<cohomology::CharPolynomial> char_poly;   // lone matrices only
  std::optional<cohomology::UnitCircleResult> unit_circle;
  cohomology::GrowthProfile profile;
  std::optional<cohomology::HpolBounds> bounds;
  // Elliptic / parabolic / loxodromic reading of a lone matrix on H^{1,1};
  // empty when the matrix is not invertible over Z.
  std::optional<cohomology::SurfaceClass> surface;
  std::string headline;
};

// A lone matrix is read as the action on H^{1,1} of a k-dimensional manifold
// with b_2 = its size unless b2 is given. A document carries its own k and b_2.
MatrixAnalysis analyze_matrix(const MatrixInput& input, std::size_t k = 2, std::optional<std::size_t> b2 = {});
MatrixAnalysis analyze_matrix(std::string_view text, std::size_t k = 2, std::optional<std::size_t> b2 = {});

std::string render_text(const MatrixAnalysis& a);
// Pretty-printed JSON document with a fixed key order.
std::string render_json(const MatrixAnalysis& a);

}  // namespace polyent::harness
