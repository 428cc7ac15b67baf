#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <regex>
#include <sstream>

#include "curvlab/metric_patch.hpp"

namespace curvlab {

namespace {

/// Recursive-descent parser for one expression:
///   expr   := term (('+' | '-') term)*
///   term   := unary (('*' | '/') unary)*
///   unary  := '-' unary | power
///   power  := primary ('^' int)?
///   primary:= number | xN | name | 'exp' '(' expr ')' | '(' expr ')'
class ExpressionParser {
public:
  ExpressionParser(const std::string& text, int dim, const std::map<std::string, double>& params, int line, int column0)
      : text_(text), dim_(dim), params_(params), line_(line), column0_(column0) {}

  Expr parse() {
    Expr e = expr();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return e;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column0_ + static_cast<int>(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      if (accept('+')) lhs = lhs + term();
      else if (accept('-')) lhs = lhs - term();
      else return lhs;
    }
  }

  Expr term() {
    Expr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = lhs * unary();
      else if (accept('/')) lhs = lhs / unary();
      else return lhs;
    }
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    const bool paren = accept('(');
    skip_space();
    const std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    int exponent = 0;
    const char* first = text_.data() + start;
    auto [ptr, ec] = std::from_chars(first + (*first == '+' ? 1 : 0), text_.data() + pos_, exponent);
    if (ec != std::errc() || ptr != text_.data() + pos_ || pos_ == start) {
      pos_ = start;
      fail("expected an integer exponent after '^'");
    }
    if (paren) expect(')');
    return pow(std::move(base), exponent);
  }

  Expr primary() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    // strtod is locale-dependent in theory; the CLI runs in the C locale
    const std::string tail = text_.substr(pos_);
    char* stop = nullptr;
    const double value = std::strtod(tail.c_str(), &stop);
    if (stop == tail.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(stop - tail.c_str());
    return Expr::constant(value);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    static const std::regex coordinate(R"(x([0-9]+))");
    std::smatch m;
    if (std::regex_match(name, m, coordinate)) {
      const int k = std::stoi(m[1].str());
      if (k < 1 || k > dim_) {
        pos_ = start;
        fail("coordinate '" + name + "' outside x1..x" + std::to_string(dim_));
      }
      return Expr::variable(k - 1);
    }
    if (name == "exp") {
      expect('(');
      Expr e = expr();
      expect(')');
      return exp(std::move(e));
    }
    if (params_.count(name)) return Expr::parameter(name);
    pos_ = start;
    fail("unknown symbol '" + name + "'");
  }

  const std::string& text_;
  int dim_;
  const std::map<std::string, double>& params_;
  int line_;
  int column0_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Expr parse_expression(const std::string& text, int dim, const std::map<std::string, double>& known_parameters) {
  return ExpressionParser(text, dim, known_parameters, 1, 1).parse();
}

MetricPatch parse_metric_file(const std::string& text, const std::string& name) {
  static const std::regex dim_line(R"(^\s*dim\s*=\s*([0-9]+)\s*$)");
  static const std::regex param_line(R"(^\s*param\s+([A-Za-z_][A-Za-z0-9_]*)\s*=\s*(\S+)\s*$)");
  static const std::regex entry_line(R"(^(\s*g\s*\[\s*([0-9]+)\s*\]\s*\[\s*([0-9]+)\s*\]\s*=)(.*)$)");

  std::optional<int> dim;
  std::map<std::string, double> params;
  std::map<std::pair<int, int>, std::pair<Expr, int>> given;  // (i,j) -> (expr, line)

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    std::smatch m;
    if (std::regex_match(raw, m, dim_line)) {
      if (dim) throw ParseError("duplicate dim declaration", line_no, 1);
      dim = std::stoi(m[1].str());
      if (*dim < 1 || *dim > kMaxJetDim) throw ParseError("dim must be between 1 and 6", line_no, 1);
    } else if (std::regex_match(raw, m, param_line)) {
      const std::string value = m[2].str();
      char* stop = nullptr;
      const double v = std::strtod(value.c_str(), &stop);
      if (stop != value.c_str() + value.size()) {
        throw ParseError("malformed parameter value '" + value + "'", line_no, static_cast<int>(m.position(2)) + 1);
      }
      if (m[1].str() == "exp" || std::regex_match(m[1].str(), std::regex(R"(x[0-9]+)"))) {
        throw ParseError("parameter name '" + m[1].str() + "' is reserved", line_no, static_cast<int>(m.position(1)) + 1);
      }
      params[m[1].str()] = v;
    } else if (std::regex_match(raw, m, entry_line)) {
      if (!dim) throw ParseError("metric entry before 'dim = <n>'", line_no, 1);
      const int i = std::stoi(m[2].str());
      const int j = std::stoi(m[3].str());
      if (i < 1 || j < 1 || i > *dim || j > *dim) {
        throw ParseError("entry index outside 1.." + std::to_string(*dim), line_no, static_cast<int>(m.position(2)) + 1);
      }
      if (given.count({i, j})) throw ParseError("duplicate entry g[" + std::to_string(i) + "][" + std::to_string(j) + "]", line_no, 1);
      const int column0 = static_cast<int>(m.length(1)) + 1;
      Expr e = ExpressionParser(m[4].str(), *dim, params, line_no, column0).parse();
      if (auto it = given.find({j, i}); it != given.end() && !(it->second.first == e)) {
        throw ParseError("asymmetric metric: g[" + std::to_string(i) + "][" + std::to_string(j) + "] differs from g[" +
                             std::to_string(j) + "][" + std::to_string(i) + "] (line " + std::to_string(it->second.second) + ")",
                         line_no, 1);
      }
      given.emplace(std::make_pair(i, j), std::make_pair(std::move(e), line_no));
    } else {
      throw ParseError("unrecognized line", line_no, 1);
    }
  }
  if (!dim) throw ParseError("missing 'dim = <n>' declaration", line_no + 1, 1);

  std::vector<Expr> entries(static_cast<std::size_t>(*dim * *dim), Expr::constant(0.0));
  for (int i = 1; i <= *dim; ++i) {
    if (!given.count({i, i})) throw ParseError("missing diagonal entry g[" + std::to_string(i) + "][" + std::to_string(i) + "]", line_no + 1, 1);
  }
  for (const auto& [ij, value] : given) {
    const auto [i, j] = ij;
    entries[static_cast<std::size_t>((i - 1) * *dim + (j - 1))] = value.first;
    entries[static_cast<std::size_t>((j - 1) * *dim + (i - 1))] = value.first;
  }
  return MetricPatch(name, *dim, std::move(entries), std::move(params));
}

std::string serialize_metric(const MetricPatch& patch) {
  std::ostringstream out;
  out << "# " << patch.name() << "\n";
  out << "dim = " << patch.dim() << "\n";
  for (const auto& [k, v] : patch.parameters()) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out << "param " << k << " = " << buf << "\n";
  }
  for (int i = 0; i < patch.dim(); ++i) {
    for (int j = i; j < patch.dim(); ++j) {
      if (i != j && patch.entry(i, j).is_constant(0.0)) continue;
      out << "g[" << i + 1 << "][" << j + 1 << "] = " << patch.entry(i, j).to_string() << "\n";
    }
  }
  return out.str();
}

}  // namespace curvlab
