#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qvir/nekrasov.hpp"

using namespace qvir;

namespace {
RegistryPtr reg() {
  static RegistryPtr r = make_registry({"q", "t", "Q"});
  return r;
}
Rat R(const std::string& s) { return parse_rat(reg(), s); }
}  // namespace

TEST_CASE("factored rational value behaves like its expansion") {
  FactoredRat f(reg());
  f.mul_binomial(R("1"), R("-q*Q"), 1);
  f.mul_binomial(R("1"), R("-t"), -1);
  f.mul_rat(R("q^2"));
  CHECK(f.expand().eq(R("q^2*(1-q*Q)/(1-t)")));
  CHECK(f.valuation("q") == 2);
  CHECK(f.inverse().expand().eq(R("(1-t)/(q^2*(1-q*Q))")));
  // limit and valuation bookkeeping
  FactoredRat g(reg());
  g.mul_binomial(R("1"), R("-q^2/t"), -1);
  CHECK(g.valuation("q") == 0);
  CHECK(g.limit_at_zero("q").value->eq(R("1")));
  FactoredRat h(reg());
  h.mul_binomial(R("q"), R("-t"), -1);
  CHECK(h.valuation("q") == 0);
  CHECK(h.limit_at_zero("q").value->eq(R("-1/t")));
  // factored sum equals the naive sum
  std::vector<FactoredRat> terms{f, g, h};
  Rat naive = f.expand() + g.expand() + h.expand();
  CHECK(FactoredRat::sum(terms).eq(naive));
}

TEST_CASE("generic factor") {
  Rat Q = R("Q");
  CHECK(nekrasov_n(reg(), Partition{}, Partition{}, Q).eq(R("1")));
  // single box against itself at Q = 1: (1 - q^0 t^1)(1 - q^-1 t^0)
  Rat v = nekrasov_n(reg(), Partition{1}, Partition{1}, R("1"));
  CHECK(v.eq(R("(1-t)*(1-1/q)")));
  // substitution consistency with the factored form
  for (auto& la : partitions_of(2))
    for (auto& mu : partitions_of(1))
      CHECK(nekrasov_n_factored(reg(), la, mu, Q).expand().eq(
          nekrasov_n(reg(), la, mu, Q)));
}

TEST_CASE("crystal factor") {
  Rat Q = R("Q");
  Rat one = R("1");
  for (int n = 0; n <= 4; ++n)
    for (auto& la : partitions_of(n))
      CHECK(nekrasov_ntilde(reg(), la, Partition{}, Q).eq(one));
  CHECK(nekrasov_ntilde(reg(), Partition{}, Partition{1}, Q).eq(R("1-Q")));
  // degree in Q of the empty-la factor is |mu| - |mu-check|
  for (int n = 1; n <= 4; ++n)
    for (auto& mu : partitions_of(n)) {
      Rat v = nekrasov_ntilde(reg(), Partition{}, mu, Q);
      int qdeg = v.num().max_exponent(reg()->index_checked("Q")) -
                 v.den().max_exponent(reg()->index_checked("Q"));
      CHECK(qdeg == mu.size() - mu.checked_rows().size());
    }
  // defining limit: lim q^{n(mu')} N_{la mu}((q/t) Q)
  for (int a = 0; a <= 3; ++a)
    for (int b = 0; b <= 3; ++b)
      for (auto& la : partitions_of(a))
        for (auto& mu : partitions_of(b)) {
          Rat lhs = (R("q").pow(mu.conjugate().n_stat()) *
                     nekrasov_n(reg(), la, mu, R("q/t") * Q))
                        .limit_at_zero_checked("q");
          CHECK(lhs.eq(nekrasov_ntilde(reg(), la, mu, Q)));
        }
}

TEST_CASE("pure partition sums") {
  auto z = z_pure(reg(), 1);
  CHECK(z[0].eq(R("1")));
  // order 1 by hand: (t/q) [ 1/(N11(1) N1e(Q) Nee(1) Ne1(1/Q))
  //                         + 1/(Nee(1) Ne1(Q) N11(1) N1e(1/Q)) ]
  Partition one{1};
  Partition empty;
  Rat t1 = R("t/q") / (nekrasov_n(reg(), one, one, R("1")) *
                       nekrasov_n(reg(), one, empty, R("Q")) *
                       nekrasov_n(reg(), empty, one, R("1/Q")));
  Rat t2 = R("t/q") / (nekrasov_n(reg(), empty, one, R("Q")) *
                       nekrasov_n(reg(), one, one, R("1")) *
                       nekrasov_n(reg(), one, empty, R("1/Q")));
  CHECK(z[1].eq(t1 + t2));

  auto zt = z_tilde_pure(reg(), 2);
  CHECK(zt[0].eq(R("1")));
  CHECK(zt[1].eq(R("1/(1-1/t)")));
  // Q-independence up to order 6
  auto zt6 = z_tilde_pure(reg(), 6);
  for (auto& c : zt6) {
    CHECK(c.eq(c.substitute({{"Q", R("2")}})));
    CHECK(c.eq(c.substitute({{"Q", R("7")}})));
  }
  // crystal norm series: 1/b_{(1^n)}(1/t)
  Rat tinv = R("1/t");
  for (int n = 0; n <= 6; ++n) {
    Partition ones(std::vector<int>(n, 1));
    CHECK(zt6[n].eq(R("1") / b_stat(ones, tinv)));
  }
}

TEST_CASE("residue antisymmetry") {
  for (int n = 0; n <= 5; ++n)
    for (int m = 0; n + m <= 5; ++m)
      for (int M = -m; M <= n; ++M) {
        if (M == n - m || m + M < 0 || n - M < 0) continue;
        Rat a = z_residue_term(reg(), n, m, M);
        Rat b = z_residue_term(reg(), m + M, n - M, M);
        CHECK((a + b).is_zero());
      }
}

TEST_CASE("pole-order bookkeeping of the crystallization") {
  Rat tq = R("t/q");
  for (int n = 0; n <= 3; ++n)
    for (int a = 0; a <= n; ++a)
      for (auto& la : partitions_of(a))
        for (auto& mu : partitions_of(n - a)) {
          FactoredRat term = z_pure_term(reg(), la, mu);
          term.mul_rat(tq.pow(n));
          CHECK(term.valuation("q") == e_exponent(la, mu));
          bool columns =
              la.length() == la.size() && mu.length() == mu.size();
          CHECK((e_exponent(la, mu) == 0) == columns);
        }
}

TEST_CASE("four-flavor sum and its scaled limit") {
  auto big = make_registry({"q", "t", "u1", "u2", "v1", "v2", "w1", "w2", "Q"});
  auto z = z_nf4(big, 1);
  CHECK(z[0].eq(Rat::one(big)));
  // order-1 coefficient via the two single-box tuples
  Rat byhand = Rat::zero(big);
  for (auto& tup : enumerate_tuples(1, 2))
    byhand += z_nf4_term(big, tup).expand();
  CHECK(z[1].eq(byhand));

  ScaledExponents e{1, 1, 0, 0, 1};
  CHECK(e.valid());
  auto lim = z_nf4_scaled_limit(big, 2, e);
  auto zt = z_tilde_pure(big, 2);
  Rat v12 = Rat::variable(big, "v1") / Rat::variable(big, "v2");
  for (int n = 0; n <= 2; ++n) CHECK(lim[n].eq(zt[n].substitute({{"Q", v12}})));
  CHECK_THROWS_AS(z_nf4_scaled_limit(big, 1, ScaledExponents{0, 0, 0, 0, 0}),
                  Error);
}
