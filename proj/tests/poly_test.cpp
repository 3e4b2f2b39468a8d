#include "eqkh/poly.hpp"

#include "doctest.h"

using namespace eqkh;

TEST_CASE("laurent arithmetic") {
  laurent p = laurent::monomial(1, 2) + laurent::monomial(-3, 0);
  CHECK(p.coeff(2) == 1);
  CHECK(p.coeff(0) == -3);
  CHECK((p - p).is_zero());

  laurent q1 = laurent::monomial(1, 1) + laurent::monomial(1, -1);
  laurent sq = q1 * q1;
  CHECK(sq.coeff(2) == 1);
  CHECK(sq.coeff(0) == 2);
  CHECK(sq.coeff(-2) == 1);
  CHECK(q1.pow(2) == sq);
  CHECK(q1.pow(0) == laurent::monomial(1, 0));
}

TEST_CASE("laurent formatting") {
  CHECK(laurent().to_string() == "0");
  CHECK(laurent::monomial(1, 0).to_string() == "1");
  CHECK(laurent::monomial(-1, 0).to_string() == "-1");
  CHECK(laurent::monomial(1, 1).to_string() == "q");
  CHECK(laurent::monomial(2, 0).to_string() == "2");
  CHECK(laurent::monomial(1, -2).to_string() == "q^-2");

  laurent trefoil = laurent::monomial(-1, 9) + laurent::monomial(1, 5) +
                    laurent::monomial(1, 3) + laurent::monomial(1, 1);
  CHECK(trefoil.to_string() == "-q^9+q^5+q^3+q");

  laurent unknot = laurent::monomial(1, 1) + laurent::monomial(1, -1);
  CHECK(unknot.to_string() == "q+q^-1");

  laurent mixed = laurent::monomial(3, 2) + laurent::monomial(-1, 0);
  CHECK(mixed.to_string() == "3q^2-1");
  CHECK(mixed.to_string("x") == "3x^2-1");
}

TEST_CASE("affine substitution") {
  // q + q^2 at q = t - 1 gives t^2 - t.
  laurent p = laurent::monomial(1, 1) + laurent::monomial(1, 2);
  laurent s = p.substitute_affine(1, -1);
  CHECK(s == laurent::monomial(1, 2) + laurent::monomial(-1, 1));
}
