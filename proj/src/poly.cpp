#include "eqkh/poly.hpp"

#include <cstdlib>

#include "eqkh/errors.hpp"

namespace eqkh {

laurent laurent::monomial(std::int64_t coeff, int exp) {
  laurent p;
  p.add_term(exp, coeff);
  return p;
}

void laurent::add_term(int exp, std::int64_t coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(exp);
  if (it == terms_.end()) {
    terms_.emplace(exp, coeff);
  } else if ((it->second += coeff) == 0) {
    terms_.erase(it);
  }
}

std::int64_t laurent::coeff(int exp) const {
  auto it = terms_.find(exp);
  return it == terms_.end() ? 0 : it->second;
}

laurent laurent::operator+(const laurent& o) const {
  laurent out = *this;
  for (auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

laurent laurent::operator-(const laurent& o) const {
  laurent out = *this;
  for (auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

laurent laurent::operator*(const laurent& o) const {
  laurent out;
  for (auto& [e1, c1] : terms_)
    for (auto& [e2, c2] : o.terms_) out.add_term(e1 + e2, c1 * c2);
  return out;
}

laurent laurent::pow(unsigned e) const {
  laurent out = monomial(1, 0);
  laurent base = *this;
  for (; e; e >>= 1) {
    if (e & 1) out = out * base;
    base = base * base;
  }
  return out;
}

laurent laurent::substitute_affine(std::int64_t a, std::int64_t b) const {
  laurent lin;
  lin.add_term(1, a);
  lin.add_term(0, b);
  laurent out;
  for (auto& [e, c] : terms_) {
    if (e < 0) throw structure_error("affine substitution needs nonnegative exponents");
    out = out + laurent::monomial(c, 0) * lin.pow(static_cast<unsigned>(e));
  }
  return out;
}

std::string laurent::to_string(const std::string& var) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    if (c > 0 && !out.empty()) out += '+';
    if (c < 0) out += '-';
    std::int64_t a = std::abs(c);
    if (a != 1 || e == 0) out += std::to_string(a);
    if (e != 0) {
      out += var;
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

}  // namespace eqkh
