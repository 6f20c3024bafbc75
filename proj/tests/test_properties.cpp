#include <doctest.h>

#include "support/properties.hpp"

TEST_CASE("division reconstructs the dividend") { CHECK(props::divisionRoundTrip(200, 101) == 0); }

TEST_CASE("commutation identities") { CHECK(props::commutation(150, 102) == 0); }

TEST_CASE("reduction modulo i and j is a module map") {
  CHECK(props::reductionIsModuleMap(150, 103) == 0);
}

TEST_CASE("left multiples by i and j reduce to zero") {
  CHECK(props::leftMultipleDegeneracy(150, 104) == 0);
}
