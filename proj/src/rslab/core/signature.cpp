#include "rslab/core/signature.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "rslab/core/error.hpp"

namespace rslab {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  });
}

boost::multiprecision::cpp_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    fail(ErrorCode::parse, "malformed number '" + std::string(whole) + "'");
  }
  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = std::min(digits.find_first_not_of('0'), digits.size() - 1);
  return boost::multiprecision::cpp_int(std::string(digits.substr(first)));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  using boost::multiprecision::cpp_int;
  const std::string_view whole = text;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string_view num = text.substr(0, slash);
    bool neg = !num.empty() && num[0] == '-';
    if (neg) num.remove_prefix(1);
    cpp_int n = parse_integer(num, whole);
    cpp_int d = parse_integer(text.substr(slash + 1), whole);
    if (d == 0) fail(ErrorCode::parse, "zero denominator in '" + std::string(whole) + "'");
    return Rational(neg ? cpp_int(-n) : n, d);
  }

  bool neg = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    neg = text[0] == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view ex = text.substr(e + 1);
    bool eneg = false;
    if (!ex.empty() && (ex[0] == '-' || ex[0] == '+')) {
      eneg = ex[0] == '-';
      ex.remove_prefix(1);
    }
    if (ex.empty() || ex.size() > 6) fail(ErrorCode::parse, "malformed exponent in '" + std::string(whole) + "'");
    exponent = static_cast<long>(parse_integer(ex, whole));
    if (eneg) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) fail(ErrorCode::parse, "malformed number '" + std::string(whole) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    digits = std::string(text);
  }
  cpp_int mant = parse_integer(digits, whole);
  if (neg) mant = -mant;
  cpp_int scale = boost::multiprecision::pow(cpp_int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(mant, scale) : Rational(mant * scale);
}

std::string rational_to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Signature::Signature(std::vector<Relation> relations, bool independence_mode)
    : relations_(std::move(relations)), independence_mode_(independence_mode) {
  std::set<std::string> names;
  for (auto& rel : relations_) {
    if (!is_identifier(rel.name)) fail(ErrorCode::invalid_argument, "bad relation name '" + rel.name + "'");
    if (!names.insert(rel.name).second) fail(ErrorCode::invalid_argument, "duplicate relation name '" + rel.name + "'");
    if (rel.arity < 1) fail(ErrorCode::invalid_argument, "relation '" + rel.name + "' has arity 0");
    if (rel.alpha <= 0 || rel.alpha > 1) {
      fail(ErrorCode::invalid_argument, "alpha of '" + rel.name + "' must lie in (0,1], got " + rational_to_string(rel.alpha));
    }
    if (!(rel.gamma >= 0.0 && rel.gamma <= 1.0)) {
      fail(ErrorCode::invalid_argument, "gamma of '" + rel.name + "' must lie in [0,1]");
    }
    rel.alpha_value = rel.alpha.convert_to<double>();
    max_arity_ = std::max(max_arity_, rel.arity);
  }
}

SignaturePtr Signature::binary(std::string_view alpha, double gamma, bool independence_mode) {
  Relation r;
  r.name = "R";
  r.arity = 2;
  r.alpha = parse_rational(alpha);
  r.gamma = gamma;
  return std::make_shared<const Signature>(std::vector<Relation>{r}, independence_mode);
}

RelIndex Signature::find(std::string_view name) const noexcept {
  for (RelIndex i = 0; i < relations_.size(); ++i) {
    if (relations_[i].name == name) return i;
  }
  return relations_.size();
}

}  // namespace rslab
