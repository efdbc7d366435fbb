#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qvir/laurent.hpp"

using namespace qvir;

namespace {
RegistryPtr reg() {
  static RegistryPtr r = make_registry({"t", "u", "v", "x"});
  return r;
}
Rat R(const std::string& s) { return parse_rat(reg(), s); }

std::vector<int> order_smallest_first(const ContourSpec& s) {
  std::vector<int> order;
  for (int i = static_cast<int>(s.symbols.size()) - 1; i >= 0; --i)
    if (s.integrate[i]) order.push_back(i);
  return order;
}

// z first, then the w's from the largest contour inward
std::vector<int> order_w_large_first(const ContourSpec& s) {
  std::vector<int> order;
  int zi = s.symbol_index("z");
  order.push_back(zi);
  for (size_t i = 0; i < s.symbols.size(); ++i)
    if (s.integrate[i] && static_cast<int>(i) != zi) order.push_back(i);
  return order;
}
}  // namespace

TEST_CASE("trivial contour") {
  // closed contour around the origin of dz/(2 pi i z) * 1
  ContourSpec s;
  s.reg = reg();
  s.symbols = {"z"};
  s.integrate = {true};
  s.target = {0};
  s.prefactor = s.monomial(Rat::one(reg()));
  CHECK(contour_coefficient(s).eq(R("1")));
  s.target = {2};
  CHECK(contour_coefficient(s).is_zero());
}

TEST_CASE("geometric expansion picks the declared dominant term") {
  // [z^1] of (x - (t/u) z)^-1 under |x| > |z| is (t/u)/x^2
  ContourSpec s;
  s.reg = reg();
  s.symbols = {"x", "z"};
  s.integrate = {false, true};
  s.target = {0, 1};
  s.prefactor = s.monomial(Rat::one(reg()));
  ContourSpec::Term a = s.monomial(Rat::one(reg()));
  a.expo[0] = 1;
  ContourSpec::Term b = s.monomial(-R("t/u"));
  b.expo[1] = 1;
  s.add_factor(a, b, -1);
  CHECK(contour_coefficient(s).eq(R("t/(u*x^2)")));
}

TEST_CASE("F reproduces t^{n(la)} in two integration orders") {
  for (int n = 0; n <= 5; ++n)
    for (auto& la : partitions_of(n)) {
      ContourSpec s = f_spec(reg(), la);
      Rat expect = recursion_oracle(ContourOracle::F, reg(), la);
      CHECK(contour_coefficient(s, order_smallest_first(s)).eq(expect));
      CHECK(contour_coefficient(s, order_w_large_first(s)).eq(expect));
    }
}

TEST_CASE("F matches its own recursion") {
  for (int n = 0; n <= 5; ++n)
    for (auto& la : partitions_of(n))
      CHECK(oracle_f_by_recursion(reg(), la)
                .eq(recursion_oracle(ContourOracle::F, reg(), la)));
}

TEST_CASE("G^0 closed form, both orders") {
  for (int n = 0; n <= 5; ++n)
    for (auto& la : partitions_of(n)) {
      ContourSpec s = gk_spec(reg(), la, 0);
      Rat expect = recursion_oracle(ContourOracle::Gk, reg(), la);
      CHECK(contour_coefficient(s, order_smallest_first(s)).eq(expect));
      CHECK(contour_coefficient(s, order_w_large_first(s)).eq(expect));
      CHECK(oracle_gk_by_recursion(reg(), la, 0).eq(expect));
    }
  // G^0_(2) = t^2 - t
  CHECK(recursion_oracle(ContourOracle::Gk, reg(), Partition{2}).eq(R("t^2-t")));
}

TEST_CASE("one-boson kernel blocks") {
  // frak F: (u x)^{la_1} (u t x)^{la_2} ...
  for (int n = 0; n <= 4; ++n)
    for (auto& la : partitions_of(n)) {
      ContourSpec s = frak_f_spec(reg(), la);
      CHECK(contour_coefficient(s).eq(
          recursion_oracle(ContourOracle::frakF, reg(), la)));
    }
  // frak G: prod (1 - u t^{1-i}/v) prod (t^i/(u x))^{mu_i}
  for (int n = 0; n <= 4; ++n)
    for (auto& mu : partitions_of(n)) {
      ContourSpec s = frak_g_spec(reg(), mu);
      CHECK(contour_coefficient(s).eq(
          recursion_oracle(ContourOracle::frakG, reg(), mu)));
    }
  // spot value: frak G at (1) is (1-u/v) * t/(u x)
  CHECK(recursion_oracle(ContourOracle::frakG, reg(), Partition{1})
            .eq(R("(1-u/v)*t/(u*x)")));
}

TEST_CASE("kernel reduces to the two one-sided blocks") {
  // mu empty: the kernel is the frak F integrand
  for (auto& la : partitions_of(3)) {
    CHECK(contour_coefficient(n1_kernel_spec(reg(), la, Partition{}))
              .eq(recursion_oracle(ContourOracle::frakF, reg(), la)));
  }
  // la empty: the kernel is the frak G integrand
  for (auto& mu : partitions_of(3)) {
    CHECK(contour_coefficient(n1_kernel_spec(reg(), Partition{}, mu))
              .eq(recursion_oracle(ContourOracle::frakG, reg(), mu)));
  }
}

TEST_CASE("errors") {
  // a factor with no dominant term
  ContourSpec s;
  s.reg = reg();
  s.symbols = {"z"};
  s.integrate = {true};
  s.target = {0};
  s.prefactor = s.monomial(Rat::one(reg()));
  ContourSpec::Term a = s.monomial(Rat::one(reg()));
  a.expo[0] = 1;
  ContourSpec::Term b = s.monomial(-R("t"));
  b.expo[0] = 1;
  s.add_factor(a, b, -1);
  CHECK_THROWS_AS(contour_coefficient(s), Error);
}
