#include "pdregion/tfparse.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "pdregion/error.hpp"

namespace pdregion {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Length of the number literal starting at src[pos] (0 if none).
std::size_t number_length(std::string_view src, std::size_t pos) {
  std::size_t i = pos;
  bool digits = false;
  while (i < src.size() && is_digit(src[i])) {
    ++i;
    digits = true;
  }
  if (i < src.size() && src[i] == '.') {
    ++i;
    while (i < src.size() && is_digit(src[i])) {
      ++i;
      digits = true;
    }
  }
  if (!digits) return 0;
  if (i < src.size() && (src[i] == 'e' || src[i] == 'E')) {
    std::size_t j = i + 1;
    if (j < src.size() && (src[j] == '+' || src[j] == '-')) ++j;
    if (j < src.size() && is_digit(src[j])) {
      while (j < src.size() && is_digit(src[j])) ++j;
      i = j;
    }
  }
  return i - pos;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  RationalFunction parse() {
    RationalFunction f = expr();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected character '" + std::string(1, src_[pos_]) + "'");
    for (double c : f.num().coeffs())
      if (!std::isfinite(c)) fail("non-finite coefficient", 0);
    for (double c : f.den().coeffs())
      if (!std::isfinite(c)) fail("non-finite coefficient", 0);
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }
  [[noreturn]] void fail(const std::string& what, std::size_t at) const { throw ParseError(what, at); }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction acc = term();
    for (;;) {
      if (accept('+')) {
        acc = acc + term();
      } else if (accept('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  RationalFunction term() {
    RationalFunction acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = acc * unary();
      } else if (accept('/')) {
        skip_ws();
        const std::size_t at = pos_;
        RationalFunction rhs = unary();
        if (rhs.num().is_zero()) fail("zero denominator polynomial", at);
        acc = acc / rhs;
      } else {
        return acc;
      }
    }
  }

  RationalFunction unary() {
    if (accept('-')) return -unary();
    return power();
  }

  RationalFunction power() {
    RationalFunction base = primary();
    if (!accept('^')) return base;
    skip_ws();
    const std::size_t at = pos_;
    std::size_t len = 0;
    while (at + len < src_.size() && is_digit(src_[at + len])) ++len;
    const bool integer_literal =
        len > 0 && (at + len == src_.size() || (src_[at + len] != '.' && src_[at + len] != 'e' && src_[at + len] != 'E'));
    if (!integer_literal) fail("non-rational construct: exponent must be a nonnegative integer literal", at);
    int exponent = 0;
    auto [ptr, ec] = std::from_chars(src_.data() + at, src_.data() + at + len, exponent);
    if (ec != std::errc() || exponent > 64) fail("exponent out of range", at);
    pos_ = at + len;
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '^') fail("chained exponents are not supported");
    RationalFunction out = RationalFunction::constant(1.0);
    for (int i = 0; i < exponent; ++i) out = out * base;
    return out;
  }

  RationalFunction primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of expression");
    const char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      RationalFunction inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (is_digit(c) || c == '.') {
      const std::size_t len = number_length(src_, pos_);
      if (len == 0) fail("malformed number");
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(src_.data() + pos_, src_.data() + pos_ + len, value);
      if (ec != std::errc() || ptr != src_.data() + pos_ + len) fail("malformed number");
      pos_ += len;
      return RationalFunction::constant(value);
    }
    if (is_ident_start(c)) {
      std::size_t end = pos_;
      while (end < src_.size() && is_ident_char(src_[end])) ++end;
      const std::string_view name = src_.substr(pos_, end - pos_);
      if (name != "s") fail("unknown symbol '" + std::string(name) + "'");
      pos_ = end;
      return {Polynomial({0.0, 1.0}), Polynomial::constant(1.0)};
    }
    fail("unexpected character '" + std::string(1, c) + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string polynomial_text(const Polynomial& p) {
  std::string out;
  const auto& c = p.coeffs();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0) {
      if (c[i] == 0.0) continue;
      out += " + ";
    }
    out += format_exact(c[i]);
    if (i == 1) out += "*s";
    if (i > 1) out += "*s^" + std::to_string(i);
  }
  return out;
}

std::string substitute_impl(std::string_view src, const std::map<std::string, ParameterValue>& params, int depth) {
  if (depth > 32) throw DomainError("parameter substitution too deep (cyclic parameter definitions?)");
  std::string out;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (is_digit(c) || c == '.') {
      std::size_t len = number_length(src, i);
      if (len == 0) len = 1;
      out.append(src.substr(i, len));
      i += len;
    } else if (is_ident_start(c)) {
      std::size_t end = i;
      while (end < src.size() && is_ident_char(src[end])) ++end;
      const std::string name(src.substr(i, end - i));
      if (name == "s") {
        out += name;
      } else {
        auto it = params.find(name);
        if (it == params.end()) throw DomainError("unknown parameter '" + name + "'");
        if (const double* v = std::get_if<double>(&it->second)) {
          out += "(" + format_exact(*v) + ")";
        } else {
          out += "(" + substitute_impl(std::get<std::string>(it->second), params, depth + 1) + ")";
        }
      }
      i = end;
    } else {
      out += c;
      ++i;
    }
  }
  return out;
}

RationalFunction parse_entry(const SystemEntry& entry, const std::map<std::string, ParameterValue>& params) {
  if (const auto* text = std::get_if<std::string>(&entry)) {
    return parse_expression(substitute_parameters(*text, params));
  }
  const auto& coeffs = std::get<CoefficientEntry>(entry);
  for (double c : coeffs.num)
    if (!std::isfinite(c)) throw DomainError("non-finite numerator coefficient");
  for (double c : coeffs.den)
    if (!std::isfinite(c)) throw DomainError("non-finite denominator coefficient");
  Polynomial den(coeffs.den);
  if (den.is_zero()) throw DomainError("zero denominator polynomial");
  return {Polynomial(coeffs.num), den};
}

std::vector<double> read_coefficients(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw DomainError(std::string("coefficient entry needs a '") + key + "' array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw DomainError(std::string("non-numeric coefficient in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

SystemEntry read_entry(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) return CoefficientEntry{read_coefficients(j, "num"), read_coefficients(j, "den")};
  throw DomainError("system entry must be an expression string or a {num, den} object");
}

}  // namespace

RationalFunction parse_expression(std::string_view src) { return Parser(src).parse(); }

std::string to_text(const RationalFunction& f) {
  return "(" + polynomial_text(f.num()) + ")/(" + polynomial_text(f.den()) + ")";
}

std::string substitute_parameters(std::string_view src, const std::map<std::string, ParameterValue>& params) {
  return substitute_impl(src, params, 0);
}

RationalMatrix parse_system(const SystemFile& file) {
  const std::size_t rows = file.entries.size();
  if (rows == 0) throw DomainError("system '" + file.name + "' has no entries");
  for (const auto& row : file.entries) {
    if (row.size() != rows) {
      throw DomainError("system '" + file.name + "': entry matrix is " + std::to_string(rows) + "x" +
                        std::to_string(row.size()) + ", a square matrix is required");
    }
  }
  if (file.kind == SystemKind::siso && rows != 1) {
    throw DomainError("system '" + file.name + "' is declared siso but has a " + std::to_string(rows) + "x" +
                      std::to_string(rows) + " entry matrix");
  }
  std::vector<std::vector<RationalFunction>> parsed(rows);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < rows; ++j) {
      try {
        parsed[i].push_back(parse_entry(file.entries[i][j], file.parameters));
      } catch (const ParseError& e) {
        throw ParseError("entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what(), e.offset());
      } catch (const DomainError& e) {
        throw DomainError("entry (" + std::to_string(i) + "," + std::to_string(j) + "): " + e.what());
      }
    }
  }
  return RationalMatrix(std::move(parsed));
}

SystemFile system_file_from_json(std::string_view json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw DomainError(std::string("system file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw DomainError("system file must be a JSON object");

  SystemFile file;
  file.name = j.value("name", std::string("system"));
  const std::string kind = j.value("kind", std::string("siso"));
  if (kind == "siso") {
    file.kind = SystemKind::siso;
  } else if (kind == "mimo") {
    file.kind = SystemKind::mimo;
  } else {
    throw DomainError("system kind must be 'siso' or 'mimo', got '" + kind + "'");
  }

  if (j.contains("parameters")) {
    const auto& params = j.at("parameters");
    if (!params.is_object()) throw DomainError("'parameters' must be an object");
    for (const auto& [key, value] : params.items()) {
      if (value.is_number()) {
        const double v = value.get<double>();
        if (!std::isfinite(v)) throw DomainError("parameter '" + key + "' is not finite");
        file.parameters[key] = v;
      } else if (value.is_string()) {
        file.parameters[key] = value.get<std::string>();
      } else {
        throw DomainError("parameter '" + key + "' must be a number or an expression string");
      }
    }
  }

  if (!j.contains("entries")) throw DomainError("system file has no 'entries'");
  const auto& entries = j.at("entries");
  if (entries.is_array()) {
    for (const auto& row : entries) {
      if (!row.is_array()) throw DomainError("'entries' must be a matrix (array of arrays)");
      std::vector<SystemEntry> out_row;
      for (const auto& e : row) out_row.push_back(read_entry(e));
      file.entries.push_back(std::move(out_row));
    }
  } else {
    file.entries.push_back({read_entry(entries)});
  }
  return file;
}

SystemFile load_system_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open system file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return system_file_from_json(buf.str());
}

}  // namespace pdregion
