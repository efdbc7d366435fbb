#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qvir/symfunc.hpp"

using namespace qvir;

namespace {
RegistryPtr reg() {
  static RegistryPtr r = make_registry({"q", "t", "r"});
  return r;
}
Rat R(const std::string& s) { return parse_rat(reg(), s); }
Rat Q() { return R("q"); }
Rat T() { return R("t"); }
}  // namespace

TEST_CASE("basis conversions") {
  // m_(1) = p_1
  CHECK(monomial_sym(reg(), Partition{1})
            .eq(SymFunc::power_sum(reg(), Partition{1})));
  // m_(1,1) = (p_1^2 - p_2)/2
  SymFunc m11 = monomial_sym(reg(), Partition{1, 1});
  SymFunc expect = SymFunc::power_sum(reg(), Partition{1, 1}).scaled(R("1/2")) -
                   SymFunc::power_sum(reg(), Partition{2}).scaled(R("1/2"));
  CHECK(m11.eq(expect));
  // e_2 = m_(1,1)
  CHECK(elementary_sym(reg(), 2).eq(m11));
  // round trip through the monomial basis
  SymFunc f = SymFunc::power_sum(reg(), Partition{3, 1}).scaled(Q()) +
              SymFunc::power_sum(reg(), Partition{2, 2});
  CHECK(from_monomial_basis(reg(), to_monomial_basis(f)).eq(f));
}

TEST_CASE("inner product") {
  SymFunc p1 = SymFunc::power_sum(reg(), Partition{1});
  CHECK(inner_qt(p1, p1, Q(), T()).eq(R("(1-q)/(1-t)")));
  SymFunc p2 = SymFunc::power_sum(reg(), Partition{2});
  SymFunc p11 = SymFunc::power_sum(reg(), Partition{1, 1});
  CHECK(inner_qt(p2, p11, Q(), T()).is_zero());
  CHECK(inner_qt(p2, p2, Q(), T()).eq(R("2*(1-q^2)/(1-t^2)")));
}

TEST_CASE("Macdonald functions") {
  MacdonaldTable mac(reg(), Q(), T());
  CHECK(mac.P(Partition{1}).eq(SymFunc::power_sum(reg(), Partition{1})));
  CHECK(mac.P(Partition{1, 1}).eq(monomial_sym(reg(), Partition{1, 1})));
  // P_(2) = m_(2) + c m_(1,1) with the known coefficient
  SymFunc p2 = mac.P(Partition{2});
  auto mcoeffs = to_monomial_basis(p2);
  CHECK(mcoeffs.at(Partition{2}).eq(R("1")));
  CHECK(mcoeffs.at(Partition{1, 1}).eq(R("(1-q)*(1+t)/(1-q*t)")));

  // orthogonality and dominance triangularity through degree 5
  for (int n = 2; n <= 5; ++n) {
    auto parts = partitions_of(n);
    for (auto& la : parts) {
      auto mc = to_monomial_basis(mac.P(la));
      for (auto& [mu, c] : mc) {
        CHECK(mu.size() == n);
        if (!dominates(la, mu)) CHECK(c.is_zero());
      }
      CHECK(mc.at(la).eq(R("1")));
      for (auto& mu : parts)
        if (mu != la) CHECK(inner_qt(mac.P(la), mac.P(mu), Q(), T()).is_zero());
    }
  }
}

TEST_CASE("Jing operators and Hall-Littlewood functions") {
  // H_0 1 = 1
  CHECK(jing_apply(0, SymFunc::one(reg()), T(), false).eq(SymFunc::one(reg())));
  // H_{-1} 1 = (1-t) p_1 = Q_(1)
  CHECK(jing_apply(-1, SymFunc::one(reg()), T(), false)
            .eq(SymFunc::power_sum(reg(), Partition{1}).scaled(R("1-t"))));

  // Jing construction vs the q -> 0 limit of the generic Macdonald table
  // (two independent routes)
  MacdonaldTable mac(reg(), Q(), T());
  for (int n = 1; n <= 5; ++n)
    for (auto& la : partitions_of(n)) {
      SymFunc viaJing = hall_littlewood_q(reg(), la, T());
      SymFunc atZero(reg());
      for (auto& [mu, c] : mac.P(la).coeffs())
        atZero.add_coeff(mu, c.limit_at_zero_checked("q"));
      SymFunc viaMac = atZero.scaled(b_stat(la, T()));
      CHECK(viaJing.eq(viaMac));
    }

  // Q_(1^s) = b_(1^s)(t) e_s
  for (int s = 1; s <= 4; ++s) {
    Partition ones(std::vector<int>(s, 1));
    CHECK(hall_littlewood_q(reg(), ones, T())
              .eq(elementary_sym(reg(), s).scaled(b_stat(ones, T()))));
  }

  // <Q_la, Q_mu>_{0,t} = b_la(t) delta through degree 4
  for (int n = 0; n <= 4; ++n)
    for (auto& la : partitions_of(n))
      for (auto& mu : partitions_of(n)) {
        Rat v = inner_qt(hall_littlewood_q(reg(), la, T()),
                         hall_littlewood_q(reg(), mu, T()), Rat::zero(reg()), T());
        if (la == mu)
          CHECK(v.eq(b_stat(la, T())));
        else
          CHECK(v.is_zero());
      }

  // Hall-Littlewood at 1/t comes out of the same code path
  Rat tinv = R("1/t");
  CHECK(hall_littlewood_q(reg(), Partition{1}, tinv)
            .eq(SymFunc::power_sum(reg(), Partition{1}).scaled(R("1-1/t"))));
}

TEST_CASE("principal specialization") {
  Rat r = R("r");
  CHECK(principal_specialize(SymFunc::power_sum(reg(), Partition{1}), r, T())
            .eq(R("(1-r)/(1-t)")));
  // Q_la at p_n = (1-r^n)/(1-t^n) equals t^{n(la)} prod (1 - t^{1-i} r)
  for (int n = 1; n <= 5; ++n)
    for (auto& la : partitions_of(n)) {
      Rat lhs = principal_specialize(hall_littlewood_q(reg(), la, T()), r, T());
      Rat rhs = T().pow(la.n_stat());
      for (int i = 1; i <= la.length(); ++i)
        rhs *= Rat::one(reg()) - T().pow(1 - i) * r;
      CHECK(lhs.eq(rhs));
    }
  // r = 0: Q_la at p_n = 1/(1-t^n) equals t^{n(la)}
  for (auto& la : partitions_of(4)) {
    Rat lhs = principal_specialize(hall_littlewood_q(reg(), la, T()),
                                   Rat::zero(reg()), T());
    CHECK(lhs.eq(T().pow(la.n_stat())));
  }
}

TEST_CASE("signed Hall-Littlewood pairing") {
  // <Q_(s)(-p), Q_la(p)>_{0,t} = t^{|la|+n(la)} prod_{k=1}^{l(la)} (1-t^-k)
  for (int n = 0; n <= 4; ++n)
    for (auto& la : partitions_of(n)) {
      Partition row = n ? Partition{n} : Partition{};
      Rat lhs = hl_pairing_signed(reg(), row, la, T());
      Rat rhs = T().pow(n + la.n_stat());
      for (int k = 1; k <= la.length(); ++k) rhs *= Rat::one(reg()) - T().pow(-k);
      CHECK(lhs.eq(rhs));
    }
  // <e_s(-p), Q_la(p)>_{0,t} = (-1)^{|la|} t^{n(la)} at |la| = s
  for (int s = 1; s <= 4; ++s)
    for (auto& la : partitions_of(s)) {
      Rat lhs = inner_qt(elementary_sym(reg(), s).negate_power_sums(),
                         hall_littlewood_q(reg(), la, T()), Rat::zero(reg()), T());
      Rat rhs = T().pow(la.n_stat());
      if (s % 2) rhs = -rhs;
      CHECK(lhs.eq(rhs));
    }
  CHECK(hl_pairing_signed(reg(), Partition{}, Partition{}, T()).eq(R("1")));

  // completeness: sum_mu <Q_la(p),Q_mu(-p)><Q_mu(-p),Q_nu(p)>/b_mu = b_la delta
  for (int n = 0; n <= 4; ++n) {
    auto parts = partitions_of(n);
    for (auto& la : parts)
      for (auto& nu : parts) {
        Rat acc = Rat::zero(reg());
        for (auto& mu : parts) {
          // the form is symmetric: <f(p),g(-p)> = <f(-p),g(p)>
          Rat a = hl_pairing_signed(reg(), mu, la, T());
          Rat b = hl_pairing_signed(reg(), mu, nu, T());
          acc += a * b / b_stat(mu, T());
        }
        if (la == nu)
          CHECK(acc.eq(b_stat(la, T())));
        else
          CHECK(acc.is_zero());
      }
  }
}
