#pragma once

#include <cstdint>
#include <string>

#include <boost/container/small_vector.hpp>
#include <json.hpp>

#include "rslab/core/signature.hpp"

namespace rslab {

/// Formal integer combination c0 + sum_i c_i * alpha_i of the relation
/// weights. Every dimension and edge-weight quantity is carried in this form so
/// that zero tests are exact.
class DimForm {
 public:
  using Coeffs = boost::container::small_vector<std::int64_t, 4>;

  DimForm() = default;
  explicit DimForm(std::size_t relations) : coeffs_(relations, 0) {}
  DimForm(std::int64_t c0, Coeffs coeffs) : c0_(c0), coeffs_(std::move(coeffs)) {}

  std::int64_t c0() const noexcept { return c0_; }
  const Coeffs& coeffs() const noexcept { return coeffs_; }
  std::int64_t coeff(std::size_t i) const { return coeffs_[i]; }
  std::size_t relation_count() const noexcept { return coeffs_.size(); }

  void set_c0(std::int64_t v) noexcept { c0_ = v; }
  void set_coeff(std::size_t i, std::int64_t v) { coeffs_[i] = v; }
  void add_coeff(std::size_t i, std::int64_t v) { coeffs_[i] += v; }

  /// All coefficients zero.
  bool is_zero() const noexcept;

  /// Value at the signature's weights, in double precision.
  double approx(const Signature& sig) const;

  DimForm& operator+=(const DimForm& o);
  DimForm& operator-=(const DimForm& o);
  friend DimForm operator+(DimForm a, const DimForm& b) { return a += b; }
  friend DimForm operator-(DimForm a, const DimForm& b) { return a -= b; }
  DimForm operator-() const;
  friend bool operator==(const DimForm& a, const DimForm& b) {
    return a.c0_ == b.c0_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::int64_t c0_ = 0;
  Coeffs coeffs_;
};

enum class Sign { negative = -1, zero = 0, positive = 1 };

/// Sign of the form's value at the signature's weights.
///
/// A double evaluation with a rigorous rounding bound settles almost every
/// case; otherwise the form is evaluated in exact rational arithmetic. Under
/// independence mode an exact rational zero with nonzero coefficients is
/// resolved as if alpha_i were alpha_i + eps^(i+1) for an infinitesimal
/// eps > 0, i.e. by the first nonzero c_i. The resulting order is that of a
/// genuine real weight vector, and zero is reported exactly for the all-zero
/// form.
Sign sign(const DimForm& f, const Signature& sig);

/// sign(a - b).
Sign compare(const DimForm& a, const DimForm& b, const Signature& sig);
inline bool less(const DimForm& a, const DimForm& b, const Signature& sig) {
  return compare(a, b, sig) == Sign::negative;
}

/// Exact value as a rational.
Rational exact_value(const DimForm& f, const Signature& sig);

/// "4 - 6*alpha_R".
std::string to_string(const DimForm& f, const Signature& sig);

/// {"c0": int, "coeffs": [int, ...], "value": float}
nlohmann::ordered_json to_json(const DimForm& f, const Signature& sig);

}  // namespace rslab
