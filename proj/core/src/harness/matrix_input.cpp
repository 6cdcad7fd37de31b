#include "polyent/harness/matrix_input.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "json.hpp"

namespace polyent::harness {

using polyent::BigInt;
using cohomology::IntMatrix;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      reason_(what),
      line_(line),
      column_(column) {}

namespace {

struct Position {
  std::size_t line = 1, column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

[[noreturn]] void fail(std::string_view text, std::size_t offset, const std::string& what) {
  const Position p = position_of(text, offset);
  throw ParseError(what, p.line, p.column);
}

// Scanner over either the row format or the nested-bracket format.
class MatrixScanner {
 public:
  explicit MatrixScanner(std::string_view text) : t_(text) {}

  IntMatrix parse() {
    skip_blank(true);
    if (i_ < t_.size() && t_[i_] == '[') return parse_nested();
    return parse_rows();
  }

 private:
  void skip_comment() {
    while (i_ < t_.size() && t_[i_] != '\n') ++i_;
  }

  // Skips spaces and comments; newlines too when `newlines` is set.
  void skip_blank(bool newlines) {
    while (i_ < t_.size()) {
      const char c = t_[i_];
      if (c == '#') {
        skip_comment();
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        ++i_;
      } else {
        break;
      }
    }
  }

  BigInt integer() {
    const std::size_t start = i_;
    std::size_t j = i_;
    if (j < t_.size() && (t_[j] == '-' || t_[j] == '+')) ++j;
    const std::size_t digits = j;
    while (j < t_.size() && std::isdigit(static_cast<unsigned char>(t_[j]))) ++j;
    if (j == digits) {
      std::size_t end = start;
      while (end < t_.size() && !std::isspace(static_cast<unsigned char>(t_[end])) && t_[end] != ',' &&
             t_[end] != ';' && t_[end] != ']')
        ++end;
      const std::string token(t_.substr(start, std::max<std::size_t>(end - start, 1)));
      fail(t_, start, "expected an integer, found '" + (start < t_.size() ? token : std::string("end of input")) + "'");
    }
    if (j < t_.size() && (t_[j] == '.' || t_[j] == 'e' || t_[j] == 'E' || std::isalpha(static_cast<unsigned char>(t_[j]))))
      fail(t_, start, "entries must be integers");
    std::string s(t_.substr(digits, j - digits));
    BigInt v(s);
    if (t_[start] == '-') v = -v;
    i_ = j;
    return v;
  }

  IntMatrix parse_rows() {
    std::vector<std::vector<BigInt>> rows;
    std::vector<std::size_t> row_start;
    while (true) {
      skip_blank(true);
      if (i_ >= t_.size()) break;
      row_start.push_back(i_);
      std::vector<BigInt> row;
      while (true) {
        skip_blank(false);
        if (i_ >= t_.size() || t_[i_] == '\n' || t_[i_] == ';') break;
        row.push_back(integer());
        skip_blank(false);
        if (i_ < t_.size() && t_[i_] == ',') {
          ++i_;
          skip_blank(false);
          if (i_ >= t_.size() || t_[i_] == '\n' || t_[i_] == ';') fail(t_, i_, "dangling ','");
        }
      }
      if (i_ < t_.size()) ++i_;
      if (row.empty()) fail(t_, row_start.back(), "empty row");
      rows.push_back(std::move(row));
    }
    return assemble(rows, row_start);
  }

  void expect(char c) {
    skip_blank(true);
    if (i_ >= t_.size()) fail(t_, i_, std::string("expected '") + c + "', found end of input");
    if (t_[i_] != c) fail(t_, i_, std::string("expected '") + c + "', found '" + t_[i_] + "'");
    ++i_;
  }

  IntMatrix parse_nested() {
    std::vector<std::vector<BigInt>> rows;
    std::vector<std::size_t> row_start;
    expect('[');
    skip_blank(true);
    if (i_ < t_.size() && t_[i_] == ']') fail(t_, i_, "empty matrix");
    while (true) {
      skip_blank(true);
      row_start.push_back(i_);
      expect('[');
      std::vector<BigInt> row;
      skip_blank(true);
      if (i_ < t_.size() && t_[i_] == ']') fail(t_, i_, "empty row");
      while (true) {
        skip_blank(true);
        row.push_back(integer());
        skip_blank(true);
        if (i_ < t_.size() && t_[i_] == ',') {
          ++i_;
          continue;
        }
        expect(']');
        break;
      }
      rows.push_back(std::move(row));
      skip_blank(true);
      if (i_ < t_.size() && t_[i_] == ',') {
        ++i_;
        continue;
      }
      expect(']');
      break;
    }
    skip_blank(true);
    if (i_ < t_.size()) fail(t_, i_, "trailing characters after the matrix");
    return assemble(rows, row_start);
  }

  IntMatrix assemble(const std::vector<std::vector<BigInt>>& rows, const std::vector<std::size_t>& row_start) {
    if (rows.empty()) fail(t_, 0, "no matrix rows");
    const std::size_t n = rows.size();
    for (std::size_t r = 0; r < n; ++r) {
      if (rows[r].size() != n)
        fail(t_, row_start[r],
             "row " + std::to_string(r + 1) + " has " + std::to_string(rows[r].size()) + " entries; a " +
                 std::to_string(n) + "x" + std::to_string(n) + " matrix needs " + std::to_string(n));
    }
    std::vector<BigInt> flat;
    flat.reserve(n * n);
    for (const auto& row : rows) flat.insert(flat.end(), row.begin(), row.end());
    return IntMatrix(n, std::move(flat));
  }

  std::string_view t_;
  std::size_t i_ = 0;
};

// Offset of the `occurrence`-th appearance of "key" (0-based), for locating
// semantic errors inside an otherwise valid document.
std::size_t locate_key(std::string_view text, const std::string& key, std::size_t occurrence) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = 0;
  for (std::size_t k = 0;; ++k) {
    const std::size_t hit = text.find(quoted, pos);
    if (hit == std::string_view::npos) return 0;
    if (k == occurrence) return hit;
    pos = hit + quoted.size();
  }
}

BigInt json_integer(const nlohmann::json& v, std::string_view text, std::size_t offset, const std::string& where) {
  if (v.is_number_integer()) return BigInt(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    std::size_t k = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    bool ok = k < s.size();
    for (std::size_t j = k; j < s.size(); ++j) ok = ok && std::isdigit(static_cast<unsigned char>(s[j]));
    if (ok) {
      BigInt b(s.substr(k));
      return s[0] == '-' ? BigInt(-b) : b;
    }
  }
  fail(text, offset, where + ": entries must be integers (JSON integers or digit strings)");
}

IntMatrix json_matrix(const nlohmann::json& m, std::string_view text, std::size_t offset, const std::string& where) {
  if (m.is_string()) {
    try {
      return parse_int_matrix(m.get<std::string>());
    } catch (const ParseError& e) {
      fail(text, offset, where + ": " + e.what());
    }
  }
  if (!m.is_array() || m.empty()) fail(text, offset, where + ": expected a non-empty array of rows");
  const std::size_t n = m.size();
  std::vector<BigInt> flat;
  for (std::size_t r = 0; r < n; ++r) {
    if (!m[r].is_array() || m[r].size() != n)
      fail(text, offset, where + ": row " + std::to_string(r + 1) + " must hold " + std::to_string(n) + " entries");
    for (const auto& v : m[r]) flat.push_back(json_integer(v, text, offset, where));
  }
  return IntMatrix(n, std::move(flat));
}

std::size_t first_significant(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    } else {
      break;
    }
  }
  return i;
}

}  // namespace

IntMatrix parse_int_matrix(std::string_view text) { return MatrixScanner(text).parse(); }

cohomology::CohomologyAction parse_action_document(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    std::string msg = e.what();
    if (const auto p = msg.find("parse error"); p != std::string::npos) msg = msg.substr(p);
    fail(text, off, msg);
  }
  if (!doc.is_object()) fail(text, first_significant(text), "expected an object with 'dim' and 'degrees'");
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned())
    fail(text, locate_key(text, "dim", 0), "'dim' must be a positive integer");
  if (!doc.contains("degrees") || !doc["degrees"].is_array())
    fail(text, locate_key(text, "degrees", 0), "'degrees' must be an array");

  cohomology::CohomologyAction action;
  action.k = doc["dim"].get<std::size_t>();
  const auto& degrees = doc["degrees"];
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    const auto& d = degrees[i];
    const std::string where = "degrees[" + std::to_string(i) + "]";
    const std::size_t at = locate_key(text, "matrix", i);
    if (!d.is_object() || !d.contains("j") || !d.contains("matrix"))
      fail(text, at, where + ": needs 'j' and 'matrix'");
    if (!d["j"].is_number_unsigned()) fail(text, locate_key(text, "j", i), where + ": 'j' must be a nonnegative integer");
    cohomology::DegreeAction da;
    da.degree = d["j"].get<std::size_t>();
    da.matrix = json_matrix(d["matrix"], text, at, where + ".matrix");
    da.betti = da.matrix.dim();
    if (d.contains("betti")) {
      if (!d["betti"].is_number_unsigned()) fail(text, at, where + ": 'betti' must be a nonnegative integer");
      da.betti = d["betti"].get<std::size_t>();
    }
    action.degrees.push_back(std::move(da));
  }
  try {
    action.validate();
  } catch (const std::invalid_argument& e) {
    fail(text, locate_key(text, "degrees", 0), e.what());
  }
  return action;
}

MatrixInput parse_matrix_input(std::string_view text) {
  const std::size_t i = first_significant(text);
  if (i < text.size() && text[i] == '{') return parse_action_document(text);
  return parse_int_matrix(text);
}

}  // namespace polyent::harness
