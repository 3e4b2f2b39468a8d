#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace eqkh {

// Laurent polynomial with integer coefficients in one formal variable.
class laurent {
 public:
  laurent() = default;
  static laurent monomial(std::int64_t coeff, int exp);

  void add_term(int exp, std::int64_t coeff);
  std::int64_t coeff(int exp) const;
  bool is_zero() const { return terms_.empty(); }
  const std::map<int, std::int64_t>& terms() const { return terms_; }

  laurent operator+(const laurent& o) const;
  laurent operator-(const laurent& o) const;
  laurent operator*(const laurent& o) const;
  bool operator==(const laurent&) const = default;

  laurent pow(unsigned e) const;
  // Substitutes variable -> (a * variable + b); requires nonnegative exponents.
  laurent substitute_affine(std::int64_t a, std::int64_t b) const;

  // Decreasing exponents, no spaces: "-q^9+q^5+q^3+q", "q+q^-1", "3q^2-1", "0".
  std::string to_string(const std::string& var = "q") const;

 private:
  std::map<int, std::int64_t> terms_;  // exponent -> nonzero coefficient
};

}  // namespace eqkh
