#include "lietwist/catalog.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace lietwist;

namespace {

const Catalog& catalog() {
  static const Catalog c = Catalog::load_default();
  return c;
}

Rational q(const char* s) { return Rational::parse(s); }

const char* minimal = R"(
# comment
[family]
id = plane_sum
structure = (0,0,0,0,0,0)
J = e1 -> e2; e3 -> e4; e5 -> e6
omega = e12 + s e34 + e56
params = s
constraints = s > 0
)";

}  // namespace

TEST(Catalog, Counts) {
  const auto& c = catalog();
  EXPECT_EQ(c.size(), 44u);
  auto ids = list_families(c);
  auto aff = std::count_if(ids.begin(), ids.end(), [](const std::string& id) { return id.rfind("aff_", 0) == 0; });
  EXPECT_EQ(aff, 3);
  auto r2 = std::count_if(ids.begin(), ids.end(), [](const std::string& id) { return id.rfind("R2_", 0) == 0; });
  EXPECT_EQ(r2, 39);
  for (const char* id : {"R2_rjoin_rr31", "R2_rjoin2_d4h_a", "R2_rjoin2_d4h_b", "worked_rr31", "example_2p2q"}) {
    EXPECT_NE(std::find(ids.begin(), ids.end(), id), ids.end()) << id;
  }
}

TEST(Catalog, UnknownFamily) {
  EXPECT_THROW(catalog().find("R2_rjoin_nothing"), UnknownFamily);
}

TEST(Catalog, ParsesMinimal) {
  auto c = Catalog::parse(minimal);
  ASSERT_EQ(c.size(), 1u);
  const auto& f = c.find("plane_sum");
  EXPECT_EQ(f.params(), std::vector<std::string>{"s"});
  auto h = f.instantiate({{"s", 2}});
  EXPECT_TRUE(h.algebra().abelian());
  EXPECT_THROW(f.instantiate({{"s", -2}}), DomainError);
}

TEST(Catalog, ErrorsCarryLine) {
  std::string bad = minimal;
  bad.replace(bad.find("params"), 6, "parmas");
  try {
    Catalog::parse(bad);
    FAIL();
  } catch (const CatalogError& e) {
    EXPECT_EQ(e.line(), 8u);
  }
  EXPECT_THROW(Catalog::parse(std::string(minimal) + minimal), CatalogError);
  EXPECT_THROW(Catalog::parse("id = x\n"), CatalogError);
  EXPECT_THROW(Catalog::parse("[families]\n"), CatalogError);
}

TEST(Catalog, UndeclaredParameter) {
  std::string bad = minimal;
  bad.replace(bad.find("s e34"), 1, "u");
  EXPECT_THROW(Catalog::parse(bad), CatalogError);
}

TEST(Catalog, BadTemplates) {
  auto c = Catalog::parse(minimal);
  const auto& f = c.find("plane_sum");
  EXPECT_THROW(f.with_field("J", "e1 -> e2; e3 -> e4"), CatalogError);
  EXPECT_THROW(f.with_field("J", "e7 -> e2; e3 -> e4; e5 -> e6"), CatalogError);
  EXPECT_THROW(f.with_field("structure", "(0,0,0,0,0)"), CatalogError);
  EXPECT_THROW(f.with_field("omega", "e12 + e3"), CatalogError);
  EXPECT_THROW(f.with_field("constraints", "s"), CatalogError);
  EXPECT_THROW(f.with_field("constraints", "0 < s < 1"), CatalogError);
}

TEST(Constraint, Operators) {
  ParamBinding b{{"a", 2}, {"b", -1}};
  EXPECT_TRUE(Constraint::parse("a > 0").holds(b));
  EXPECT_FALSE(Constraint::parse("b >= 0").holds(b));
  EXPECT_TRUE(Constraint::parse("a + b <= 1").holds(b));
  EXPECT_TRUE(Constraint::parse("(a - 1)(b + 2) < 2").holds(b));
  EXPECT_TRUE(Constraint::parse("a b != 0").holds(b));
  EXPECT_FALSE(Constraint::parse("1/(a + 2 b) > 0").holds(b));
  EXPECT_TRUE(Constraint::parse("square(a + 2)").holds(b));
  EXPECT_FALSE(Constraint::parse("square(a)").holds(b));
  EXPECT_FALSE(Constraint::parse("square(b)").holds(b));
}

TEST(Constraint, Parameters) {
  EXPECT_EQ(Constraint::parse("w_34 > w_56").parameters(), (std::set<std::string>{"w_34", "w_56"}));
}

TEST(Sampler, SatisfiesConstraintsAndIsDeterministic) {
  for (const auto& f : catalog().families()) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      auto b = sample_params(f, seed);
      EXPECT_TRUE(f.satisfies(b)) << f.id();
      EXPECT_EQ(b, sample_params(f, seed)) << f.id();
      EXPECT_EQ(b.size(), f.params().size()) << f.id();
    }
  }
}

TEST(Sampler, SquareRadicand) {
  for (const char* id : {"R2_rjoin1_d4l", "R2_rjoin2_d4l", "aff_rjoin1_d42", "aff_rjoin2_d42"}) {
    const auto& f = catalog().find(id);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      auto b = sample_params(f, seed);
      auto radicand = *b.get("sigma") + *b.get("w_22");
      EXPECT_TRUE(radicand.sqrt().has_value()) << id << " " << b.str();
      EXPECT_LT(*b.get("sigma"), Rational(0));
    }
  }
}

TEST(Sampler, Exhaustion) {
  auto f = Catalog::parse(minimal).find("plane_sum").with_field("constraints", "s > 0; s < 0");
  EXPECT_THROW(sample_params(f, 1), SamplerExhausted);
}

TEST(Sampler, ManyConstraints) {
  const auto& f = catalog().find("R2_rjoin3_r2r2");
  auto b = sample_params(f, 5);
  auto s = *b.get("sigma"), t = *b.get("tau"), mu = *b.get("mu");
  EXPECT_NE(s * t, Rational(0));
  EXPECT_NE(s + t, Rational(-1));
  EXPECT_GT(mu * (1 + s) / t, Rational(0));
}

TEST(Instantiate, FirstFamily) {
  auto h = catalog().find("R2_rjoin_rr31").instantiate({{"sigma", 3}, {"x", q("1/2")}, {"t", -2}});
  const auto& L = h.algebra();
  EXPECT_EQ(L.bracket(0, 2), basis_vec(6, 0) - q("1/2") * basis_vec(6, 1));
  EXPECT_EQ(L.bracket(0, 5), Rational(2) * basis_vec(6, 1));
  EXPECT_EQ(L.bracket(1, 2), q("1/2") * basis_vec(6, 0) + basis_vec(6, 1));
  EXPECT_EQ(L.bracket(2, 3), basis_vec(6, 3));
  EXPECT_EQ(L.bracket(2, 4), basis_vec(6, 4));
  EXPECT_TRUE(h.metric().positive_definite());
  EXPECT_TRUE(lee_form(h).is_zero());
}

TEST(Instantiate, AffThird) {
  const auto& f = catalog().find("aff_rjoin3_d42");
  ParamBinding b{{"w_11", 1}, {"w_22", 2}};
  auto h = f.instantiate(b);
  EXPECT_EQ(fundamental_form(h), parse_form("e12 + 2 e36 + 2 e45", 6, 2));
  EXPECT_EQ(h.algebra(), parse_salamon("(-12,0,2*36,-46,-34+56,0)"));
}

TEST(Instantiate, ExampleZeroBlocksIsAbelianKahler) {
  const auto& f = catalog().find("example_2p2q");
  ParamBinding b;
  for (const auto& p : f.params()) b.set(p, 0);
  auto h = f.instantiate(b);
  EXPECT_TRUE(h.algebra().abelian());
  EXPECT_TRUE(classify(h).kahler);
}

TEST(Instantiate, ViolationAndDefect) {
  const auto& f = catalog().find("R2_rjoin_rr31");
  EXPECT_THROW(f.instantiate({{"sigma", -3}, {"x", 1}, {"t", 1}}), DomainError);
  auto broken = f.with_field("structure", "(-13-x23-t26, x13+t16-23, 0, -34, 35, 0)");
  EXPECT_THROW(broken.instantiate({{"sigma", 3}, {"x", 1}, {"t", 1}}), DomainError);
}

TEST(Verify, FirstFamily) {
  auto r = verify(catalog().find("R2_rjoin_rr31"), 10, 42);
  EXPECT_EQ(r.accepted(), 10u);
  EXPECT_EQ(r.passed(), 10u);
  EXPECT_GE(r.attempted, 10u);
}

TEST(Verify, Example2p2q) {
  auto r = verify(catalog().find("example_2p2q"), 10, 7);
  EXPECT_EQ(r.passed(), 10u);
  for (const auto& s : r.samples) {
    auto td = catalog().find("example_2p2q").twist_data(s.binding);
    EXPECT_TRUE(character(td.rho1()).is_zero());
  }
}

TEST(Verify, Deterministic) {
  const auto& f = catalog().find("R2_rjoin1_rp2");
  auto a = verify(f, 5, 9), b = verify(f, 5, 9);
  ASSERT_EQ(a.samples.size(), b.samples.size());
  EXPECT_EQ(a.attempted, b.attempted);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    EXPECT_EQ(a.samples[i].binding, b.samples[i].binding);
    EXPECT_EQ(a.samples[i].theta, b.samples[i].theta);
  }
}

TEST(Verify, SignFlipMutationIsCaught) {
  const auto& f = catalog().find("R2_rjoin_rr31");
  auto mutant = f.with_field("structure", "(-13-x23-t26, x13+t16+23, 0, -34, -35, 0)");
  auto r = verify(mutant, 10, 42);
  EXPECT_EQ(r.passed(), 0u);
  for (const auto& s : r.samples) EXPECT_TRUE(!s.jacobi || !s.balanced);
}

TEST(Verify, VariantsShareBindings) {
  const auto& f = catalog().find("R2_rjoin2_rp2");
  auto printed = verify(f, 4, 3), probe = verify(f, 4, 3, Variant::probe_omega);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(printed.samples[i].binding, probe.samples[i].binding);
  EXPECT_THROW(verify(catalog().find("R2_rjoin_rr31"), 1, 1, Variant::erratum), DomainError);
}

TEST(Verify, MissingE12Probe) {
  auto o = verify_family(catalog().find("R2_rjoin2_rp2"), 10, 1);
  EXPECT_FALSE(o.printed.any_posdef());
  ASSERT_TRUE(o.probe.has_value());
  EXPECT_TRUE(o.probe->pass());
  EXPECT_EQ(o.status(), Status::pass_probe);
}

TEST(Verify, ImpliedConstraintHonored) {
  const auto& f = catalog().find("R2_ljoin4_rp2");
  ASSERT_EQ(f.implied().size(), 1u);
  for (std::uint64_t s = 0; s < 10; ++s) EXPECT_GT(*sample_params(f, s).get("w_56"), Rational(0));
}

TEST(Verify, ErratumVariantsVerify) {
  for (const auto& f : catalog().families()) {
    if (!f.has_variant(Variant::erratum)) continue;
    EXPECT_TRUE(verify(f, 5, 11, Variant::erratum).pass()) << f.id();
  }
}

TEST(WorkedRr31, ReproducesProof) {
  const auto& f = catalog().find("worked_rr31");
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto b = sample_params(f, seed);
    auto td = f.twist_data(b);
    EXPECT_EQ(lee_form(td.h2()), parse_form("-2 e1", 4, 1));
    EXPECT_EQ(character(td.rho2()), parse_form("-2 e1", 4, 1));
    EXPECT_TRUE(lee_form(build_product(td)).is_zero());
    ParamBinding printed{{"x", *b.get("x_1")}, {"t", *b.get("t_1")}, {"sigma", *b.get("sigma")}};
    auto h = catalog().find("R2_rjoin_rr31").instantiate(printed);
    auto p = build_product(td);
    EXPECT_EQ(p.algebra(), h.algebra());
    EXPECT_EQ(p.J(), h.J());
    EXPECT_EQ(p.metric(), h.metric());
  }
}
