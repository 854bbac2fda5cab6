#include "table.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace qclone::cli {
namespace {

constexpr int kSignificant = 12;

void trim_fraction(std::string& s) {
  if (s.find('.') == std::string::npos) return;
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
}

std::string to_chars_string(double x, std::chars_format fmt, int precision) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), x, fmt, precision);
  return std::string(buf.data(), res.ptr);
}

template <typename Fn>
void for_each_line(std::string_view text, Fn fn) {
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    fn(text.substr(start, end - start));
    start = end + 1;
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  const double a = std::abs(x);
  if (a >= 1e-4 && a < 1e6) {
    const int exponent = static_cast<int>(std::floor(std::log10(a)));
    auto s = to_chars_string(x, std::chars_format::fixed, std::max(0, kSignificant - 1 - exponent));
    trim_fraction(s);
    return s == "-0" ? "0" : s;
  }
  auto s = to_chars_string(x, std::chars_format::scientific, kSignificant - 1);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  trim_fraction(mantissa);
  return mantissa + s.substr(e);
}

std::string format_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return format_number(v); }
    std::string operator()(const std::string& v) const { return v; }
  };
  return std::visit(Visitor{}, c);
}

Cell parse_cell(std::string_view text) {
  if (text.empty()) return std::monostate{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  std::int64_t i = 0;
  if (auto [p, ec] = std::from_chars(first, last, i); ec == std::errc{} && p == last) return i;
  double d = 0.0;
  if (auto [p, ec] = std::from_chars(first, last, d); ec == std::errc{} && p == last) return d;
  return std::string(text);
}

namespace {

std::string csv_field(std::string s) {
  if (s.find_first_of(",\n") != std::string::npos)
    throw std::invalid_argument("to_csv: field contains a separator: " + s);
  return s;
}

}  // namespace

std::string to_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.header.size(); ++i) out += (i ? "," : "") + csv_field(t.header[i]);
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + csv_field(format_cell(row[i]));
    out += '\n';
  }
  return out;
}

std::string to_text(const Table& t) {
  std::string out = "#";
  for (const auto& h : t.header) out += " " + h;
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const auto s = format_cell(row[i]);
      out += (i ? " " : "") + (s.empty() ? std::string("-") : s);
    }
    out += '\n';
  }
  return out;
}

std::string to_csv(const Record& r) {
  Table t;
  t.rows.emplace_back();
  for (const auto& [k, v] : r) {
    t.header.push_back(k);
    t.rows.back().push_back(v);
  }
  return to_csv(t);
}

std::string to_text(const Record& r) {
  std::string out;
  for (const auto& [k, v] : r) out += k + "=" + format_cell(v) + "\n";
  return out;
}

Table parse_csv(std::string_view text) {
  Table t;
  bool first = true;
  for_each_line(text, [&](std::string_view line) {
    const auto fields = split(line, ',');
    if (first) {
      for (auto f : fields) t.header.emplace_back(f);
      first = false;
      return;
    }
    if (fields.size() != t.header.size()) throw std::invalid_argument("parse_csv: row width differs from header");
    std::vector<Cell> row;
    for (auto f : fields) row.push_back(parse_cell(f));
    t.rows.push_back(std::move(row));
  });
  if (first) throw std::invalid_argument("parse_csv: missing header");
  return t;
}

}  // namespace qclone::cli
