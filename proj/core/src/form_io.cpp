#include "wpdet/form_io.hpp"

#include <cctype>
#include <map>
#include <sstream>

#include "wpdet/errors.hpp"

namespace wpdet {
namespace {

using Monomials = std::map<std::vector<unsigned>, Integer>;

// Recursive-descent reader for  [sign] term { sign term }  where
// term = [digits] ['*'] { var ['^' digits] ['*'] }.
class PolyReader {
 public:
  PolyReader(const std::string& text, std::span<const std::string> names) : s_(text), names_(names) {}

  Monomials read() {
    Monomials out;
    skip();
    if (at_end()) throw ParseError("empty polynomial");
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
        skip();
      } else if (!first) {
        throw ParseError(error_at("expected '+' or '-'"));
      }
      first = false;
      auto [e, c] = read_term();
      out[e] += c * sign;
      skip();
    }
    for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
  }

 private:
  std::pair<std::vector<unsigned>, Integer> read_term() {
    std::vector<unsigned> e(names_.size(), 0);
    Integer c = 1;
    bool saw_anything = false;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = Integer(read_digits());
      saw_anything = true;
      skip();
      if (peek() == '*') {
        get();
        skip();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) throw ParseError(error_at("expected variable after '*'"));
      }
    }
    while (std::isalpha(static_cast<unsigned char>(peek()))) {
      std::size_t var = read_variable();
      unsigned power = 1;
      skip();
      if (peek() == '^') {
        get();
        skip();
        power = static_cast<unsigned>(std::stoul(read_digits()));
        skip();
      }
      e[var] += power;
      saw_anything = true;
      if (peek() == '*') {
        get();
        skip();
        if (!std::isalpha(static_cast<unsigned char>(peek()))) throw ParseError(error_at("expected variable after '*'"));
      }
    }
    if (!saw_anything) throw ParseError(error_at("expected a term"));
    return {e, c};
  }

  std::size_t read_variable() {
    std::size_t start = pos_;
    // Longest declared name matching at this position.
    std::size_t best = names_.size(), best_len = 0;
    for (std::size_t i = 0; i < names_.size(); ++i) {
      const auto& n = names_[i];
      if (s_.compare(pos_, n.size(), n) == 0 && n.size() > best_len) {
        best = i;
        best_len = n.size();
      }
    }
    if (best == names_.size()) {
      std::size_t end = start;
      while (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end]))) ++end;
      throw ParseError("unknown variable '" + s_.substr(start, end - start) + "'");
    }
    pos_ += best_len;
    return best;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) throw ParseError(error_at("expected digits"));
    return s_.substr(start, pos_ - start);
  }

  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[pos_]; }
  char get() { return s_[pos_++]; }
  std::string error_at(const std::string& what) const {
    return what + " at offset " + std::to_string(pos_) + " in '" + s_ + "'";
  }

  const std::string& s_;
  std::span<const std::string> names_;
  std::size_t pos_ = 0;
};

std::vector<Integer> parse_coef_list(const std::string& body) {
  std::vector<Integer> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw ParseError("empty coefficient in '" + body + "'");
    out.push_back(parse_integer(item.substr(a, b - a + 1)));
  }
  if (out.empty()) throw ParseError("empty coefficient list");
  return out;
}

bool has_prefix(const std::string& s, const std::string& prefix) { return s.rfind(prefix, 0) == 0; }

}  // namespace

BinaryForm parse_binary_form(const std::string& text) {
  if (has_prefix(text, "coefs:")) {
    auto coefs = parse_coef_list(text.substr(6));
    if (coefs.size() < 2) throw ParseError("a binary form needs at least two coefficients");
    return BinaryForm(std::move(coefs));
  }
  const std::vector<std::string> names{"x", "y"};
  Monomials terms = PolyReader(text, names).read();
  if (terms.empty()) throw ParseError("binary form is identically zero");
  const unsigned degree = terms.begin()->first[0] + terms.begin()->first[1];
  if (degree == 0) throw ParseError("binary form must have positive degree");
  std::vector<Integer> coefs(degree + 1, Integer(0));
  for (const auto& [e, c] : terms) {
    if (e[0] + e[1] != degree) throw ParseError("binary form is not homogeneous: '" + text + "'");
    coefs[degree - e[0]] = c;
  }
  return BinaryForm(std::move(coefs));
}

std::vector<Integer> parse_univariate(const std::string& text) {
  if (has_prefix(text, "coefs:")) return parse_coef_list(text.substr(6));
  const std::vector<std::string> names{"x"};
  Monomials terms = PolyReader(text, names).read();
  unsigned degree = 0;
  for (const auto& [e, c] : terms) degree = std::max(degree, e[0]);
  std::vector<Integer> coefs(degree + 1, Integer(0));
  for (const auto& [e, c] : terms) coefs[degree - e[0]] = c;
  return coefs;
}

WeightedForm parse_weighted_form(const std::string& text, const WeightVector& w,
                                 std::span<const std::string> names) {
  if (names.size() != w.size()) throw DimensionError("variable names do not match the weight vector");
  Monomials terms = PolyReader(text, names).read();
  WeightedForm f(w);
  for (const auto& [e, c] : terms) {
    try {
      f.add_term(ExponentVector(e), c);
    } catch (const DomainError&) {
      throw ParseError("form is not weighted homogeneous: '" + text + "'");
    }
  }
  return f;
}

WeightVector parse_weights(const std::string& text) {
  std::vector<unsigned> w;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    Integer v = parse_integer(item);
    if (v <= 0 || !v.fits_uint_p()) throw ParseError("weights must be positive integers: '" + text + "'");
    w.push_back(static_cast<unsigned>(v.get_ui()));
  }
  if (w.empty()) throw ParseError("empty weight list");
  return WeightVector(std::move(w));
}

nlohmann::json to_json(const WeightedForm& f) {
  nlohmann::json j;
  j["weights"] = std::vector<unsigned>(f.weights().values().begin(), f.weights().values().end());
  j["degree"] = f.degree() ? nlohmann::json(*f.degree()) : nlohmann::json(nullptr);
  nlohmann::json terms = nlohmann::json::array();
  std::vector<std::pair<ExponentVector, Integer>> sorted(f.terms().begin(), f.terms().end());
  std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
    return compare_graded(a.first, b.first, f.weights()) == std::strong_ordering::greater;
  });
  for (const auto& [e, c] : sorted) {
    terms.push_back({{"exp", std::vector<unsigned>(e.values().begin(), e.values().end())},
                     {"coef", to_decimal(c)}});
  }
  j["terms"] = std::move(terms);
  return j;
}

WeightedForm weighted_form_from_json(const nlohmann::json& j) {
  try {
    WeightVector w(j.at("weights").get<std::vector<unsigned>>());
    WeightedForm f = j.at("degree").is_null() ? WeightedForm(w) : WeightedForm(w, j.at("degree").get<unsigned>());
    for (const auto& t : j.at("terms")) {
      f.add_term(ExponentVector(t.at("exp").get<std::vector<unsigned>>()),
                 parse_integer(t.at("coef").get<std::string>()));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed weighted form JSON: ") + e.what());
  }
}

nlohmann::json to_json(const BinaryForm& f) {
  std::vector<std::string> coefs;
  for (const auto& c : f.coefficients()) coefs.push_back(to_decimal(c));
  return {{"degree", f.degree()}, {"coefs", coefs}};
}

BinaryForm binary_form_from_json(const nlohmann::json& j) {
  try {
    std::vector<Integer> coefs;
    for (const auto& c : j.at("coefs")) coefs.push_back(parse_integer(c.get<std::string>()));
    if (coefs.size() != j.at("degree").get<unsigned>() + 1)
      throw ParseError("binary form JSON: degree and coefficient count disagree");
    return BinaryForm(std::move(coefs));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed binary form JSON: ") + e.what());
  }
}

}  // namespace wpdet
