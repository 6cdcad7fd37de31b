#pragma once

// Text input for integer matrices and cohomology actions.
//
//  rows:      "1 1 0\n0 1 1\n0 0 1" or "1,1,0; 0,1,1; 0,0,1"; '#' starts a comment
//  nested:    [[1,1,0],[0,1,1],[0,0,1]]
//  document:  {"dim": 3, "degrees": [{"j": 0, "matrix": [[1]], "betti": 1}, ...]}

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "polyent/cohomology/growth.hpp"
#include "polyent/cohomology/int_matrix.hpp"

namespace polyent::harness {

class ParseError : public std::runtime_error {
 public:
  // line and column are 1-based.
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
  std::size_t line_;
  std::size_t column_;
};

cohomology::IntMatrix parse_int_matrix(std::string_view text);
cohomology::CohomologyAction parse_action_document(std::string_view text);

using MatrixInput = std::variant<cohomology::IntMatrix, cohomology::CohomologyAction>;

// Dispatches on the first significant character: '{' document, otherwise a matrix.
MatrixInput parse_matrix_input(std::string_view text);

}  // namespace polyent::harness
