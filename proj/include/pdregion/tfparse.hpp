#pragma once

#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pdregion/rational.hpp"

namespace pdregion {

// Grammar (usual precedence, left associative):
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' INTEGER)?
//   primary := NUMBER | 's' | '(' expr ')'
// NUMBER is a decimal literal with optional exponent.

/// Parses a transfer-function expression in `s` into canonical form.
/// Throws ParseError (with byte offset) on syntax errors, zero denominators
/// and non-rational constructs such as `s^s`.
RationalFunction parse_expression(std::string_view src);

/// Canonical text form, e.g. "(10)/(5 + 1*s)". Coefficients are printed with
/// 17 significant digits so that parse_expression(to_text(f)) == f.
std::string to_text(const RationalFunction& f);

/// Explicit ascending-power coefficient lists.
struct CoefficientEntry {
  std::vector<double> num;
  std::vector<double> den;
};

using SystemEntry = std::variant<std::string, CoefficientEntry>;
/// Numeric parameters are substituted as literals; text parameters are
/// substituted as parenthesized sub-expressions (and may reference other
/// parameters).
using ParameterValue = std::variant<double, std::string>;

enum class SystemKind { siso, mimo };

struct SystemFile {
  std::string name;
  SystemKind kind = SystemKind::siso;
  std::vector<std::vector<SystemEntry>> entries;
  std::map<std::string, ParameterValue> parameters;
};

/// Replaces every identifier other than `s` by its parameter value.
/// Throws DomainError for unknown or cyclic parameters.
std::string substitute_parameters(std::string_view src, const std::map<std::string, ParameterValue>& params);

/// Throws DomainError on shape problems and unknown parameters, ParseError
/// (message naming the row/column) when an entry does not parse.
RationalMatrix parse_system(const SystemFile& file);

/// Reads the JSON system-definition format. Throws DomainError on schema
/// violations.
SystemFile system_file_from_json(std::string_view json_text);
SystemFile load_system_file(const std::string& path);

}  // namespace pdregion
