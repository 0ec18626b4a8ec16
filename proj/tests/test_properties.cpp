#include "properties.hpp"

#include <gtest/gtest.h>

using namespace lietwist;

namespace {

void expect_suite(const props::Result& r) {
  EXPECT_GE(r.cases, 200u) << r.name;
  EXPECT_EQ(r.failures, 0u) << r.name << ": " << r.first_failure;
}

}  // namespace

TEST(Properties, DSquaredZero) { expect_suite(props::d_squared_zero(11)); }
TEST(Properties, LeviCivita) { expect_suite(props::connection_properties(12)); }
TEST(Properties, SalamonRoundTrip) { expect_suite(props::salamon_round_trip(13)); }
TEST(Properties, Adjoint) { expect_suite(props::adjoint_properties(14)); }
TEST(Properties, LeeOracle) { expect_suite(props::lee_oracle(15)); }
TEST(Properties, MetricRoundTrip) { expect_suite(props::metric_round_trip(16)); }
TEST(Properties, ClassImplications) { expect_suite(props::class_implications(17)); }
TEST(Properties, CharacterOnBrackets) { expect_suite(props::character_on_brackets(18)); }
TEST(Properties, CompatibleIffJacobi) { expect_suite(props::compatible_iff_jacobi(19)); }

TEST(Properties, ResultBookkeeping) {
  props::Result r{"x"};
  r.check(true, "a");
  r.check(false, "b");
  r.check(false, "c");
  EXPECT_EQ(r.cases, 3u);
  EXPECT_EQ(r.failures, 2u);
  EXPECT_EQ(r.first_failure, "b");
  EXPECT_FALSE(r.ok());
}
