#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace rslab {

using Rational = boost::multiprecision::cpp_rational;
using RelIndex = std::size_t;

// Parses "0.55", "-3", "1.5e-2", or "11/20" into an exact rational.
Rational parse_rational(std::string_view text);
std::string rational_to_string(const Rational& r);

struct Relation {
  std::string name;
  std::uint32_t arity = 2;
  Rational alpha;        // exact weight in (0, 1]
  double alpha_value = 0;
  double gamma = 1.0;    // scale factor in [0, 1]
};

/// The random part of the language: relation symbols with arities, weights
/// alpha_i and scale factors gamma_i.
///
/// With `independence_mode` on, the weights are treated as if {1, alpha_0, ...}
/// were linearly independent over the rationals, so a dimension form vanishes
/// only when all of its coefficients do.
class Signature {
 public:
  Signature(std::vector<Relation> relations, bool independence_mode = true);

  /// One symmetric binary relation "R" with the given weight.
  static std::shared_ptr<const Signature> binary(std::string_view alpha,
                                                 double gamma = 1.0,
                                                 bool independence_mode = true);

  std::size_t size() const noexcept { return relations_.size(); }
  const Relation& relation(RelIndex i) const { return relations_.at(i); }
  const std::vector<Relation>& relations() const noexcept { return relations_; }
  bool independence_mode() const noexcept { return independence_mode_; }
  std::uint32_t max_arity() const noexcept { return max_arity_; }

  /// Index of the relation called `name`, or size() if absent.
  RelIndex find(std::string_view name) const noexcept;

 private:
  std::vector<Relation> relations_;
  bool independence_mode_;
  std::uint32_t max_arity_ = 0;
};

using SignaturePtr = std::shared_ptr<const Signature>;

}  // namespace rslab
