#include "matclass/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace matclass {

namespace {

[[noreturn]] void parse_fail(const std::string& origin, const std::string& what) {
  throw InputError(origin + ": " + what);
}

struct TokenReader {
  std::string_view text;
  size_t pos = 0;
  long count = 0;

  bool next(std::string_view& out) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos >= text.size()) return false;
    const size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    out = text.substr(start, pos - start);
    ++count;
    return true;
  }
};

double parse_double(std::string_view tok, const std::string& origin, long index) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    parse_fail(origin, "token " + std::to_string(index) + " is not a number: '" +
                           std::string(tok) + "'");
  return v;
}

Matrix parse_matrix_text(std::string_view content, const std::string& origin) {
  TokenReader tr{content};
  std::string_view tok;
  if (!tr.next(tok)) parse_fail(origin, "empty matrix file");
  int n = 0;
  {
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), n);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || n < 1)
      parse_fail(origin, "first token must be the positive order n");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  while (tr.next(tok)) entries.push_back(parse_double(tok, origin, tr.count));
  if (entries.size() != static_cast<size_t>(n) * n)
    parse_fail(origin, "expected " + std::to_string(static_cast<size_t>(n) * n) + " entries for order " +
                           std::to_string(n) + ", found " + std::to_string(entries.size()));
  try {
    return Matrix(n, std::move(entries));
  } catch (const InputError& e) {
    parse_fail(origin, e.what());
  }
}

Matrix parse_matrix_json(std::string_view content, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("rows"))
    parse_fail(origin, "matrix JSON needs {\"n\", \"rows\"}");
  const int n = j["n"].get<int>();
  if (n < 1) parse_fail(origin, "order must be >= 1");
  if (!j["rows"].is_array() || j["rows"].size() != static_cast<size_t>(n))
    parse_fail(origin, "rows must be an array of n rows");
  std::vector<double> entries;
  entries.reserve(static_cast<size_t>(n) * n);
  for (const auto& row : j["rows"]) {
    if (!row.is_array() || row.size() != static_cast<size_t>(n))
      parse_fail(origin, "each row must hold exactly n values");
    for (const auto& v : row) entries.push_back(v.get<double>());
  }
  try {
    return Matrix(n, std::move(entries));
  } catch (const InputError& e) {
    parse_fail(origin, e.what());
  }
}

}  // namespace

Matrix parse_matrix(std::string_view content, MatrixFormat format, const std::string& origin) {
  if (format == MatrixFormat::auto_detect) {
    size_t i = 0;
    while (i < content.size() && std::isspace(static_cast<unsigned char>(content[i]))) ++i;
    format = (i < content.size() && content[i] == '{') ? MatrixFormat::json : MatrixFormat::text;
  }
  return format == MatrixFormat::json ? parse_matrix_json(content, origin)
                                      : parse_matrix_text(content, origin);
}

Matrix load_matrix(const std::string& path, MatrixFormat format) {
  return parse_matrix(read_file(path), format, path);
}

std::string to_json(const Matrix& a) {
  nlohmann::ordered_json j;
  j["n"] = a.order();
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int i = 0; i < a.order(); ++i) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int jj = 0; jj < a.order(); ++jj) row.push_back(a(i, jj));
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string to_text(const Matrix& a) {
  std::ostringstream os;
  os.precision(17);
  os << a.order() << "\n";
  for (int i = 0; i < a.order(); ++i) {
    for (int j = 0; j < a.order(); ++j) os << (j ? " " : "") << a(i, j);
    os << "\n";
  }
  return os.str();
}

RealPolynomial parse_polynomial(std::string_view content, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
    parse_fail(origin, "polynomial JSON needs {\"coeffs\": [highest..lowest]}");
  std::vector<double> coeffs;
  for (const auto& v : j["coeffs"]) coeffs.push_back(v.get<double>());
  try {
    return RealPolynomial(std::move(coeffs));
  } catch (const InputError& e) {
    parse_fail(origin, e.what());
  }
}

RealPolynomial load_polynomial(const std::string& path) {
  return parse_polynomial(read_file(path), path);
}

TargetMinorTable parse_target_minors(std::string_view content, const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(content);
  } catch (const nlohmann::json::exception& e) {
    parse_fail(origin, std::string("JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("minors"))
    parse_fail(origin, "target table JSON needs {\"n\", \"minors\"}");
  TargetMinorTable t;
  t.n = j["n"].get<int>();
  if (t.n < 1 || t.n > MinorTable::order_cap) parse_fail(origin, "target order out of range");
  t.targets.assign(std::uint64_t{1} << t.n, 0.0);
  t.targets[0] = 1.0;
  std::vector<bool> seen(t.targets.size(), false);
  seen[0] = true;
  for (const auto& [key, value] : j["minors"].items()) {
    std::uint64_t mask = 0;
    try {
      mask = std::stoull(key);
    } catch (...) {
      parse_fail(origin, "target key is not a decimal mask: " + key);
    }
    if (mask >= t.targets.size()) parse_fail(origin, "target mask out of range: " + key);
    if (mask == 0) {
      if (value.get<double>() != 1.0) parse_fail(origin, "target for the empty set must be 1");
      continue;
    }
    t.targets[mask] = value.get<double>();
    seen[mask] = true;
  }
  for (std::uint64_t mask = 1; mask < t.targets.size(); ++mask)
    if (!seen[mask]) parse_fail(origin, "target table is missing mask " + std::to_string(mask));
  try {
    t.validate();
  } catch (const InputError& e) {
    parse_fail(origin, e.what());
  }
  return t;
}

TargetMinorTable load_target_minors(const std::string& path) {
  return parse_target_minors(read_file(path), path);
}

MinorTable load_minor_table(const std::string& path) {
  try {
    return minor_table_from_json(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write file: " + path);
  out << content;
}

}  // namespace matclass
