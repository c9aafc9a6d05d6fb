#include "rslab/dimension/dim_form.hpp"

#include <cmath>
#include <sstream>

#include "rslab/core/error.hpp"

namespace rslab {

bool DimForm::is_zero() const noexcept {
  if (c0_ != 0) return false;
  for (auto c : coeffs_) {
    if (c != 0) return false;
  }
  return true;
}

double DimForm::approx(const Signature& sig) const {
  double v = static_cast<double>(c0_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) v += static_cast<double>(coeffs_[i]) * sig.relation(i).alpha_value;
  return v;
}

DimForm& DimForm::operator+=(const DimForm& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  c0_ += o.c0_;
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

DimForm& DimForm::operator-=(const DimForm& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
  c0_ -= o.c0_;
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

DimForm DimForm::operator-() const {
  DimForm r = *this;
  r.c0_ = -r.c0_;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

Rational exact_value(const DimForm& f, const Signature& sig) {
  if (f.relation_count() > sig.size()) fail(ErrorCode::invalid_argument, "form has more coefficients than relations");
  Rational v(f.c0());
  for (std::size_t i = 0; i < f.relation_count(); ++i) {
    if (f.coeff(i) != 0) v += Rational(f.coeff(i)) * sig.relation(i).alpha;
  }
  return v;
}

Sign sign(const DimForm& f, const Signature& sig) {
  if (f.relation_count() > sig.size()) fail(ErrorCode::invalid_argument, "form has more coefficients than relations");
  // Fast path. Each product c_i * a_i carries at most two roundings (the
  // weight's conversion and the multiply), each sum one more; the bound
  // below over-covers all of them.
  double v = static_cast<double>(f.c0());
  double mag = std::fabs(v);
  for (std::size_t i = 0; i < f.relation_count(); ++i) {
    double t = static_cast<double>(f.coeff(i)) * sig.relation(i).alpha_value;
    v += t;
    mag += std::fabs(t);
  }
  const double bound = mag * static_cast<double>(f.relation_count() + 4) * 0x1p-52;
  if (v > bound) return Sign::positive;
  if (v < -bound) return Sign::negative;

  Rational exact = exact_value(f, sig);
  if (exact > 0) return Sign::positive;
  if (exact < 0) return Sign::negative;
  if (!sig.independence_mode()) return Sign::zero;
  for (std::size_t i = 0; i < f.relation_count(); ++i) {
    if (f.coeff(i) > 0) return Sign::positive;
    if (f.coeff(i) < 0) return Sign::negative;
  }
  return Sign::zero;
}

Sign compare(const DimForm& a, const DimForm& b, const Signature& sig) { return sign(a - b, sig); }

std::string to_string(const DimForm& f, const Signature& sig) {
  std::ostringstream os;
  os << f.c0();
  for (std::size_t i = 0; i < f.relation_count(); ++i) {
    auto c = f.coeff(i);
    if (c == 0) continue;
    os << (c < 0 ? " - " : " + ");
    auto a = c < 0 ? -c : c;
    if (a != 1) os << a << '*';
    os << "alpha_" << sig.relation(i).name;
  }
  return os.str();
}

nlohmann::ordered_json to_json(const DimForm& f, const Signature& sig) {
  nlohmann::ordered_json j;
  j["c0"] = f.c0();
  j["coeffs"] = std::vector<std::int64_t>(f.coeffs().begin(), f.coeffs().end());
  j["value"] = f.approx(sig);
  return j;
}

}  // namespace rslab
