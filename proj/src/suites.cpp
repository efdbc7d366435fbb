#include "qvir/suites.hpp"

#include <sstream>

#include "qvir/checks.hpp"
#include "qvir/dvir.hpp"
#include "qvir/gmac.hpp"
#include "qvir/intertwiner.hpp"
#include "qvir/laurent.hpp"
#include "qvir/nekrasov.hpp"

namespace qvir {

namespace {

RegistryPtr dvir_registry() { return make_registry({"q", "t", "k", "Q"}); }
RegistryPtr dim_registry() { return make_registry({"q", "t", "u1", "u2"}); }
RegistryPtr nf4_registry() {
  return make_registry({"q", "t", "u1", "u2", "v1", "v2", "w1", "w2", "Q"});
}
RegistryPtr corr_registry() {
  return make_registry({"q", "t", "u1", "u2", "v1", "v2", "w1", "w2", "Y"});
}
RegistryPtr n1_registry() { return make_registry({"q", "t", "u", "v", "x"}); }

using Task = std::function<CheckResult()>;

Task make(const std::string& name, const std::string& id, bool conjecture,
          std::function<bool()> fn) {
  return [=]() { return run_check(name, id, conjecture, fn); };
}

}  // namespace

// ------------------------------------------------------------------- dvir

std::vector<Task> suite_dvir(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const int L = cfg.level;

  tasks.push_back(make(
      "crystal PBW vectors are Hall-Littlewood states", "dvir.pbw-hall-littlewood",
      false, [L] {
        auto reg = dvir_registry();
        FamilyPtr tt = t_family(reg, true);
        Rat tinv = Rat::one(reg) / Rat::variable(reg, "t");
        Rat k = Rat::variable(reg, "k");
        Rat t = Rat::variable(reg, "t");
        for (int n = 0; n <= std::min(L, 4); ++n)
          for (auto& la : partitions_of(n)) {
            FockState lhs = pbw_ket({tt}, PartitionTuple{la});
            FockState rhs = state_from_symfunc(
                                tt->weights(), hall_littlewood_q(reg, la, tinv),
                                {Rat::one(reg)})
                                .scaled(k.pow(la.length()));
            if (!lhs.eq(rhs)) return false;
            FockState lhsb = pbw_bra({tt}, PartitionTuple{la});
            FockState rhsb =
                bra_from_symfunc(
                    tt->weights(),
                    hall_littlewood_q(reg, la, tinv).negate_power_sums(),
                    {Rat::one(reg)})
                    .scaled(k.pow(-la.length()) * t.pow(n));
            if (!lhsb.eq(rhsb)) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "crystal Kac matrix is diagonal with entries b_la(1/t)",
      "dvir.crystal-kac-diagonal", false, [L] {
        auto reg = dvir_registry();
        FamilyPtr tt = t_family(reg, true);
        Rat tinv = Rat::one(reg) / Rat::variable(reg, "t");
        for (int n = 0; n <= std::min(L, 4); ++n) {
          RatMatrix b = kac_matrix(tt, n);
          auto parts = partitions_of(n);
          for (size_t i = 0; i < parts.size(); ++i)
            for (size_t j = 0; j < parts.size(); ++j) {
              Rat expect = i == j ? b_stat(parts[i], tinv) : Rat::zero(reg);
              if (!b(i, j).eq(expect)) return false;
            }
        }
        return true;
      }));

  tasks.push_back(make(
      "Whittaker vector defining property", "dvir.whittaker-defining", false,
      [L] {
        auto reg = dvir_registry();
        whittaker_vector(t_family(reg, false), std::min(L, 3));
        whittaker_vector(t_family(reg, true), std::min(L, 4));
        return true;
      }));

  tasks.push_back(make(
      "crystal Whittaker norm equals the crystallized pure partition sum",
      "dvir.crystal-norm-vs-pure", false, [L] {
        auto reg = dvir_registry();
        const int order = std::max(L, 6);
        Rat tinv = Rat::one(reg) / Rat::variable(reg, "t");
        std::vector<Rat> lhs = whittaker_norm(t_family(reg, true), order);
        std::vector<Rat> rhs = z_tilde_pure(reg, order);
        for (int n = 0; n <= order; ++n) {
          Partition ones(std::vector<int>(n, 1));
          if (!lhs[n].eq(Rat::one(reg) / b_stat(ones, tinv))) return false;
          if (!lhs[n].eq(rhs[n])) return false;
        }
        return true;
      }));

  tasks.push_back(make(
      "crystallized pure partition sum is independent of Q",
      "dvir.pure-sum-q-independent", false, [L] {
        auto reg = dvir_registry();
        const int order = std::max(L, 6);
        std::vector<Rat> z = z_tilde_pure(reg, order);
        for (auto& c : z) {
          Rat at2 = c.substitute({{"Q", Rat::integer(reg, 2)}});
          Rat at3 = c.substitute({{"Q", Rat::integer(reg, 3)}});
          if (!c.eq(at2) || !c.eq(at3)) return false;
        }
        return true;
      }));

  tasks.push_back(make(
      "generic Whittaker norm matches the pure partition sum at k^2 = Q",
      "dvir.generic-norm-vs-pure", false, [L] {
        auto reg = dvir_registry();
        const int order = std::min(L, 3);
        std::vector<Rat> norm = whittaker_norm(t_family(reg, false), order);
        std::vector<Rat> z = z_pure(reg, order);
        Rat k2 = Rat::variable(reg, "k").pow(2);
        for (int n = 0; n <= order; ++n) {
          Rat zs = z[n].substitute({{"Q", k2}});
          if (!norm[n].eq(zs)) return false;
        }
        return true;
      }));

  // T and crystal-T commutation relations
  for (bool crystal : {false, true}) {
    std::ostringstream id;
    id << "dvir.commutators." << (crystal ? "crystal" : "generic");
    tasks.push_back(make(
        std::string("T commutation relations, ") +
            (crystal ? "crystal" : "generic"),
        id.str(), false, [crystal, L] {
          auto reg = dvir_registry();
          AlgebraFamilies alg = dvir_algebra(reg, crystal);
          int cap = std::min(L, 3);
          for (int n = -3; n <= 3; ++n)
            for (int m = -3; m <= 3; ++m)
              for (int lvl = 0; lvl <= cap; ++lvl)
                if (!commutator_holds(alg, RelPair::TT, n, m, lvl, 2))
                  return false;
          return true;
        }));
  }
  return tasks;
}

// --------------------------------------------------------------- nekrasov

std::vector<Task> suite_nekrasov(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const int L = cfg.level;

  tasks.push_back(make(
      "crystal factor basics", "nekrasov.tilde-factor", false, [] {
        auto reg = dvir_registry();
        Rat Q = Rat::variable(reg, "Q");
        Rat one = Rat::one(reg);
        for (int n = 0; n <= 4; ++n)
          for (auto& la : partitions_of(n))
            if (!nekrasov_ntilde(reg, la, Partition{}, Q).eq(one)) return false;
        if (!nekrasov_ntilde(reg, Partition{}, Partition{1}, Q).eq(one - Q))
          return false;
        return true;
      }));

  tasks.push_back(make(
      "crystal factor is the limit of the renormalized generic one",
      "nekrasov.tilde-as-limit", false, [L] {
        auto reg = dvir_registry();
        Rat Q = Rat::variable(reg, "Q");
        Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
        int cap = std::min(L, 3);
        for (int a = 0; a <= cap; ++a)
          for (int b = 0; b <= cap; ++b)
            for (auto& la : partitions_of(a))
              for (auto& mu : partitions_of(b)) {
                Rat q = Rat::variable(reg, "q");
                Rat lhs = (q.pow(mu.conjugate().n_stat()) *
                           nekrasov_n(reg, la, mu, p * Q))
                              .limit_at_zero_checked("q");
                if (!lhs.eq(nekrasov_ntilde(reg, la, mu, Q))) return false;
              }
        return true;
      }));

  tasks.push_back(make(
      "termwise crystallization of the pure partition sum",
      "nekrasov.pure-sum-crystallization", false, [L] {
        auto reg = dvir_registry();
        const int order = std::min(L, 4);
        std::vector<Rat> ztilde = z_tilde_pure(reg, order);
        Rat tq = Rat::variable(reg, "t") / Rat::variable(reg, "q");
        for (int n = 0; n <= order; ++n) {
          Rat acc = Rat::zero(reg);
          for (int a = 0; a <= n; ++a)
            for (auto& la : partitions_of(a))
              for (auto& mu : partitions_of(n - a)) {
                FactoredRat term = z_pure_term(reg, la, mu);
                term.mul_rat(tq.pow(n));  // L^4 -> Lt^4 (t/q)
                // pole-order bookkeeping
                if (-term.valuation("q") != -e_exponent(la, mu) &&
                    term.valuation("q") != e_exponent(la, mu))
                  return false;
                bool columns = la.length() == la.size() &&
                               mu.length() == mu.size();
                if ((term.valuation("q") == 0) != columns) return false;
                LimitResult lim = term.limit_at_zero("q");
                if (lim.pole) return false;
                acc += *lim.value;
              }
          if (!acc.eq(ztilde[n])) return false;
        }
        return true;
      }));

  tasks.push_back(make(
      "residue antisymmetry of the crystallized sum",
      "nekrasov.residue-antisymmetry", false, [L] {
        auto reg = dvir_registry();
        int cap = std::min(L, 5);
        for (int n = 0; n <= cap; ++n)
          for (int m = 0; n + m <= cap; ++m)
            for (int M = -m; M <= n; ++M) {
              if (M == n - m) continue;
              if (m + M < 0 || n - M < 0) continue;
              Rat a = z_residue_term(reg, n, m, M);
              Rat b = z_residue_term(reg, m + M, n - M, M);
              if (!(a + b).eq(Rat::zero(reg))) return false;
            }
        return true;
      }));

  tasks.push_back(make(
      "scaled-parameter limit of the four-flavor sum",
      "nekrasov.nf4-scaled-limit", false, [L] {
        auto reg = nf4_registry();
        const int order = std::min(L, 3);
        ScaledExponents e{1, 1, 0, 0, 1};
        std::vector<Rat> lhs = z_nf4_scaled_limit(reg, order, e);
        std::vector<Rat> zt = z_tilde_pure(reg, order);
        Rat v12 = Rat::variable(reg, "v1") / Rat::variable(reg, "v2");
        for (int n = 0; n <= order; ++n) {
          Rat rhs = zt[n].substitute({{"Q", v12}});
          if (!lhs[n].eq(rhs)) return false;
        }
        return true;
      }));
  return tasks;
}

// ------------------------------------------------------------------- gmac

std::vector<Task> suite_gmac(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const int L = cfg.level;

  tasks.push_back(make(
      "Macdonald orthogonality and triangularity", "gmac.macdonald-basics",
      false, [L] {
        auto reg = dim_registry();
        MacdonaldTable mac(reg, Rat::variable(reg, "q"), Rat::variable(reg, "t"));
        int cap = std::min(L + 1, 5);
        for (int n = 1; n <= cap; ++n) {
          auto parts = partitions_of(n);
          for (auto& la : parts) {
            auto mc = to_monomial_basis(mac.P(la));
            for (auto& [mu, c] : mc)
              if (!dominates(la, mu) && !c.eq(Rat::zero(reg))) return false;
            for (auto& mu : parts)
              if (!(mu == la) &&
                  !inner_qt(mac.P(la), mac.P(mu), Rat::variable(reg, "q"),
                            Rat::variable(reg, "t"))
                       .eq(Rat::zero(reg)))
                return false;
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "principal specialization of Hall-Littlewood functions",
      "gmac.hl-principal-specialization", false, [L] {
        auto reg = make_registry({"t", "r"});
        Rat t = Rat::variable(reg, "t"), r = Rat::variable(reg, "r");
        int cap = std::min(L + 1, 5);
        for (int n = 0; n <= cap; ++n)
          for (auto& la : partitions_of(n)) {
            Rat lhs = principal_specialize(hall_littlewood_q(reg, la, t), r, t);
            Rat rhs = t.pow(la.n_stat());
            for (int i = 1; i <= la.length(); ++i)
              rhs *= Rat::one(reg) - t.pow(1 - i) * r;
            if (!lhs.eq(rhs)) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "generalized Macdonald triangular structure and the star vanishing",
      "gmac.triangular-star-vanishing", false, [L] {
        for (int arity = 2; arity <= 3; ++arity) {
          auto reg = arity == 2 ? dim_registry()
                                : make_registry({"q", "t", "u1", "u2", "u3"});
          int cap = std::min(L, 3);
          if (arity == 3) cap = std::min(cap, 2);
          for (int lvl = 0; lvl <= cap; ++lvl) {
            GMacTable tab = generalized_macdonald(reg, lvl, arity);
            // stronger vanishing: c_{la mu} = 0 unless mu <=_w la
            for (size_t i = 0; i < tab.tuples.size(); ++i)
              for (size_t j = 0; j < tab.tuples.size(); ++j) {
                if (tab.c(i, j).eq(Rat::zero(reg))) continue;
                if (!tuple_ordered(tab.tuples[i], tab.tuples[j],
                                   TupleOrder::wstar))
                  return false;
              }
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "eigenvector property re-verified by direct application",
      "gmac.eigenvector-reverify", false, [L] {
        auto reg = dim_registry();
        FamilyPtr x1 = x1_family(reg, 2, false);
        int cap = std::min(L, 3);
        for (int lvl = 0; lvl <= cap; ++lvl) {
          GMacTable tab = generalized_macdonald(reg, lvl, 2);
          for (size_t j = 0; j < tab.tuples.size(); ++j) {
            FockState img = x1->apply(0, tab.p_states[j]);
            if (!img.eq(tab.p_states[j].scaled(tab.eigenvalue[j]))) return false;
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "integral-form coefficients are Laurent polynomial at small levels",
      "gmac.integral-form-polynomiality", true, [L] {
        auto reg = dim_registry();
        std::vector<FamilyPtr> fams{x1_family(reg, 2, false),
                                    x2_family(reg, false)};
        for (int lvl = 1; lvl <= std::min(L, 2); ++lvl) {
          GMacTable tab = generalized_macdonald(reg, lvl, 2);
          fill_integral_form(tab, fams);
          RatMatrix alpha = tab.alpha_paper();
          for (Eigen::Index i = 0; i < alpha.rows(); ++i)
            for (Eigen::Index j = 0; j < alpha.cols(); ++j) {
              // denominator must be a monomial in q and t
              const Poly& den = alpha(i, j).den();
              if (den.terms().size() > 1) return false;
              for (auto& [e, c] : den.terms())
                for (int v = 0; v < reg->size(); ++v)
                  if (e[v] != 0 && reg->name(v) != "q" && reg->name(v) != "t")
                    return false;
              const Poly& denb = tab.beta(i, j).den();
              if (denb.terms().size() > 1) return false;
            }
        }
        return true;
      }));

  tasks.push_back(make(
      "crystal tables exist and the eigenvalue degeneracy witness holds",
      "gmac.crystal-tables", false, [L] {
        auto reg = dim_registry();
        int cap = std::min(L, 3);
        for (int lvl = 0; lvl <= cap; ++lvl) crystal_generalized_hl(reg, lvl);
        // the crystal eigenvalues of ((1),(2)) and ((2),(1)) collide
        Rat a = crystal_eigenvalue(reg, PartitionTuple{Partition{1}, Partition{2}});
        Rat b = crystal_eigenvalue(reg, PartitionTuple{Partition{2}, Partition{1}});
        return a.eq(b);
      }));

  tasks.push_back(make(
      "crystal Shapovalov closed form, block structure and inverse",
      "gmac.crystal-shapovalov", false, [L] {
        auto reg = dim_registry();
        int cap = std::min(L, 4);
        Rat tinv = Rat::one(reg) / Rat::variable(reg, "t");
        Rat uu = Rat::variable(reg, "u1") * Rat::variable(reg, "u2");
        for (int lvl = 0; lvl <= cap; ++lvl) {
          ShapovalovPair sh = crystal_shapovalov(reg, lvl);
          // the closed form of the single-column block of the inverse
          for (auto& la : partitions_of(lvl)) {
            Partition ones(std::vector<int>(lvl, 1));
            PartitionTuple row{Partition{}, ones};
            PartitionTuple col{Partition{}, la};
            Rat expect = uu.pow(-la.size() - la.length()) *
                         Rat::variable(reg, "t").pow(-la.n_stat()) /
                         b_stat(la, tinv);
            if (la.size() % 2) expect = -expect;
            int i = -1, j = -1;
            for (size_t r = 0; r < sh.tuples.size(); ++r) {
              if (sh.tuples[r] == row) i = static_cast<int>(r);
              if (sh.tuples[r] == col) j = static_cast<int>(r);
            }
            if (!sh.s_inv(i, j).eq(expect)) return false;
            if (!sh.s_inv(j, i).eq(expect)) return false;
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "norm conjecture, crystal side", "gmac.norm-conjecture-crystal", true,
      [L] {
        auto reg = dim_registry();
        for (int lvl = 0; lvl <= std::min(L, 3); ++lvl)
          for (auto& chk : norm_conjecture_check(reg, lvl, true))
            if (!chk.holds) return false;
        return true;
      }));

  tasks.push_back(make(
      "norm conjecture, generic side", "gmac.norm-conjecture-generic", true,
      [L] {
        auto reg = dim_registry();
        for (int lvl = 0; lvl <= std::min(L, 2); ++lvl)
          for (auto& chk : norm_conjecture_check(reg, lvl, false))
            if (!chk.holds) return false;
        return true;
      }));

  tasks.push_back(make(
      "Macdonald inclusion under the positive eta modes", "gmac.eta-inclusion",
      true, [L] {
        auto reg = dim_registry();
        for (auto& rep : eta_inclusion_check(reg, std::min(L, 4)))
          if (!rep.violations.empty()) return false;
        return true;
      }));

  for (bool crystal : {false, true}) {
    std::string id = std::string("gmac.commutators.") +
                     (crystal ? "crystal" : "generic");
    tasks.push_back(make(
        std::string("generator commutation relations, ") +
            (crystal ? "crystal" : "generic"),
        id, false, [crystal, L] {
          auto reg = dim_registry();
          AlgebraFamilies alg = dim_algebra(reg, crystal);
          int cap = std::min(L, 3);
          for (auto pair : {RelPair::X1X1, RelPair::X1X2, RelPair::X2X2})
            for (int n = -3; n <= 3; ++n)
              for (int m = -3; m <= 3; ++m)
                for (int lvl = 0; lvl <= cap; ++lvl)
                  if (!commutator_holds(alg, pair, n, m, lvl, 2)) return false;
          return true;
        }));
  }
  return tasks;
}

// ------------------------------------------------------------ intertwiner

namespace {

Intertwiner solve_crystal_phi(const RegistryPtr& reg, int level,
                              const std::vector<std::string>& src,
                              const std::vector<std::string>& dst) {
  Intertwiner::Config c;
  c.x1_src = x1_family(reg, 2, true, src);
  c.x2_src = x2_family(reg, true, src);
  c.x1_dst = x1_family(reg, 2, true, dst);
  c.x2_dst = x2_family(reg, true, dst);
  c.crystal = true;
  c.level = level;
  return Intertwiner::solve(c);
}

}  // namespace

std::vector<Task> suite_intertwiner(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const int L = cfg.level;

  tasks.push_back(make(
      "one-boson crystal operator is the limit of the generic one",
      "intertwiner.n1-crystal-limit", false, [] {
        auto reg = n1_registry();
        VertexSpec gen = phi_n1_spec(reg, false);
        VertexSpec cry = phi_n1_spec(reg, true);
        Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
        for (int m = 1; m <= 6; ++m) {
          // argument p z multiplies the creation side by p^m and the
          // annihilation side by p^{-m}
          Rat c = (gen.cre(0, m) * p.pow(m)).limit_at_zero_checked("q");
          Rat d = (gen.ann(0, m) * p.pow(-m)).limit_at_zero_checked("q");
          if (!c.eq(cry.cre(0, m))) return false;
          if (!d.eq(cry.ann(0, m))) return false;
        }
        return true;
      }));

  tasks.push_back(make(
      "one-boson integral form at the crystal point",
      "intertwiner.n1-integral-form-limit", false, [L] {
        // lim K_la = (-u/t)^{|la|} t^{-n(la)} Q_la(b_{-n}; t)|u> for the
        // arity-1 module: the integral form over the eta PBW basis
        auto reg = n1_registry();
        int cap = std::min(L, 3);
        FamilyPtr x1 = x1_family(reg, 1, false, {"u"});
        FamilyPtr x1c = x1_family(reg, 1, true, {"u"});
        MacdonaldTable mac(reg, Rat::variable(reg, "q"), Rat::variable(reg, "t"));
        Rat t = Rat::variable(reg, "t");
        Rat u = Rat::variable(reg, "u");
        for (int lvl = 0; lvl <= cap; ++lvl) {
          auto tuples = enumerate_tuples(lvl, 1);
          RatMatrix mket = pbw_matrix({x1}, lvl);
          // normalization index (1^lvl)
          Partition ones(std::vector<int>(lvl, 1));
          int norm_idx = -1;
          for (size_t i = 0; i < tuples.size(); ++i)
            if (tuples[i][0] == ones) norm_idx = static_cast<int>(i);
          for (auto& la : partitions_of(lvl)) {
            FockState p_state = state_from_symfunc(
                x1->weights(), mac.P(la), {Rat::one(reg)});
            RatVector coords = rat_vector(tuples.size(), reg);
            for (size_t i = 0; i < tuples.size(); ++i)
              coords(i) = p_state.coeff(tuples[i]);
            RatVector a = gauss_solve(mket, coords);
            // K_la as a state, normalized at the single-column coordinate
            FockState acc(x1->weights());
            for (size_t i = 0; i < tuples.size(); ++i)
              acc = acc + pbw_ket({x1}, tuples[i]).scaled(a(i) / a(norm_idx));
            FockState lim = acc.limit_q_to_zero(x1c->weights());
            FockState rhs =
                state_from_symfunc(x1c->weights(),
                                   hall_littlewood_q(reg, la, t),
                                   {Rat::one(reg)})
                    .scaled((-u / t).pow(la.size()) * t.pow(-la.n_stat()));
            if (!lim.eq(rhs)) return false;
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "one-boson matrix elements: operator pipeline vs contour pipeline",
      "intertwiner.n1-two-pipelines", true, [L] {
        auto reg = n1_registry();
        int cap = std::min(L, 3);
        for (int a = 0; a <= cap; ++a)
          for (int b = 0; b <= cap; ++b)
            for (auto& la : partitions_of(a))
              for (auto& mu : partitions_of(b)) {
                Rat fock = n1_matrix_element_fock(reg, la, mu);
                Rat contour = n1_matrix_element_contour(reg, la, mu);
                if (!fock.eq(contour)) return false;
                Rat closed = n1_prefactor(reg, la, mu) *
                             n1_kernel_closed(reg, la, mu);
                if (!fock.eq(closed)) return false;
              }
        return true;
      }));

  tasks.push_back(make(
      "crystal operator: solve, residual surplus and uniqueness",
      "intertwiner.crystal-solve", false, [L] {
        auto reg = corr_registry();
        Intertwiner phi =
            solve_crystal_phi(reg, std::min(L, 4), {"u1", "u2"}, {"v1", "v2"});
        if (phi.residual_violations(2) != 0) return false;
        return phi.system_nullity(2) == 1;
      }));

  tasks.push_back(make(
      "raising-mode matrix elements of the crystal operator",
      "intertwiner.crystal-mode-elements", false, [L] {
        auto reg = corr_registry();
        int cap = std::min(L, 3);
        Intertwiner phi = solve_crystal_phi(reg, cap, {"u1", "u2"}, {"v1", "v2"});
        Rat vv = Rat::variable(reg, "v1") * Rat::variable(reg, "v2");
        Rat sum = Rat::variable(reg, "v1") + Rat::variable(reg, "v2") +
                  Rat::variable(reg, "u1") + Rat::variable(reg, "u2");
        Rat prod = Rat::variable(reg, "u1") * Rat::variable(reg, "u2") - vv;
        FamilyPtr x1u = phi.config().x1_src;
        FamilyPtr x2u = phi.config().x2_src;
        FockState uvac = FockState::vacuum(x1u->weights());
        for (int n = 1; n <= cap; ++n) {
          Rat e1 = phi.vacuum_element(x1u->apply(-n, uvac));
          Rat e2 = phi.vacuum_element(x2u->apply(-n, uvac));
          // z-stripped values of (1/(v1 v2 z))^n (...)
          if (!e1.eq(vv.pow(-n) * sum)) return false;
          if (!e2.eq(vv.pow(-n) * prod)) return false;
        }
        // <X_la|Phi|u> = (-v1 v2 u1 u2)^n at (empty,(1^n)), else 0
        FockState phivac = phi.apply(uvac);
        std::vector<FamilyPtr> vfams{phi.config().x1_dst, phi.config().x2_dst};
        Rat uu = Rat::variable(reg, "u1") * Rat::variable(reg, "u2");
        for (int n = 0; n <= cap; ++n)
          for (auto& tup : enumerate_tuples(n, 2)) {
            Rat got = pairing(pbw_bra(vfams, tup), phivac);
            Partition ones(std::vector<int>(n, 1));
            Rat expect = (tup[0].length() == 0 && tup[1] == ones)
                             ? (-(vv * uu)).pow(n)
                             : Rat::zero(reg);
            if (!got.eq(expect)) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "vacuum matrix elements over the PBW kets in closed form",
      "intertwiner.pbw-closed-elements", false, [L] {
        auto reg = corr_registry();
        int cap = std::min(L, 4);
        Intertwiner phi = solve_crystal_phi(reg, cap, {"u1", "u2"}, {"v1", "v2"});
        std::vector<FamilyPtr> ufams{phi.config().x1_src, phi.config().x2_src};
        for (int n = 0; n <= cap; ++n)
          for (auto& la : partitions_of(n)) {
            FockState ket = pbw_ket(ufams, PartitionTuple{Partition{}, la});
            Rat got = phi.vacuum_element(ket);
            Rat expect =
                vac_pbw_element_closed(reg, la, "u1", "u2", "v1", "v2");
            if (!got.eq(expect)) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "four-point function: PBW insertion equals the closed formula",
      "intertwiner.four-point-pbw-vs-closed", false, [L] {
        auto reg = corr_registry();
        const int order = std::min(L, 4);
        std::vector<Rat> a = four_point(reg, order, FourPointMethod::pbw);
        std::vector<Rat> b = four_point(reg, order, FourPointMethod::closed);
        for (int n = 0; n <= order; ++n)
          if (!a[n].eq(b[n])) return false;
        return true;
      }));

  tasks.push_back(make(
      "four-point function: integral-form insertion agrees",
      "intertwiner.four-point-aflt", true, [L] {
        auto reg = corr_registry();
        const int order = std::min(L, 3);
        std::vector<Rat> a = four_point(reg, order, FourPointMethod::aflt);
        std::vector<Rat> b = four_point(reg, order, FourPointMethod::closed);
        for (int n = 0; n <= order; ++n)
          if (!a[n].eq(b[n])) return false;
        return true;
      }));

  tasks.push_back(make(
      "matrix-element conjecture at the crystal point",
      "intertwiner.crystal-element-conjecture", true, [L] {
        auto reg = corr_registry();
        int cap = std::min(L, 2);
        Intertwiner phi = solve_crystal_phi(reg, cap, {"u1", "u2"}, {"v1", "v2"});
        Rat t = Rat::variable(reg, "t");
        Rat u1 = Rat::variable(reg, "u1"), u2 = Rat::variable(reg, "u2");
        Rat v1 = Rat::variable(reg, "v1"), v2 = Rat::variable(reg, "v2");
        std::map<std::string, Rat> to_v{{"u1", v1}, {"u2", v2}};
        GMacTable tabs[3] = {crystal_generalized_hl(reg, 0),
                             crystal_generalized_hl(reg, 1),
                             crystal_generalized_hl(reg, 2)};
        std::vector<FamilyPtr> ufams{phi.config().x1_src, phi.config().x2_src};
        std::vector<FamilyPtr> vfams{phi.config().x1_dst, phi.config().x2_dst};
        for (int a = 0; a <= cap; ++a)
          for (int b = 0; b <= cap; ++b) {
            const GMacTable& ta = tabs[a];
            const GMacTable& tb = tabs[b];
            for (size_t i = 0; i < ta.tuples.size(); ++i)
              for (size_t j = 0; j < tb.tuples.size(); ++j) {
                // <K_la| over F_v, |K_mu> over F_u
                FockState bra(vfams[0]->weights());
                for (size_t r = 0; r < ta.tuples.size(); ++r) {
                  Rat c = ta.beta(i, r).substitute(to_v);
                  if (!c.is_zero())
                    bra = bra + pbw_bra(vfams, ta.tuples[r]).scaled(c);
                }
                FockState ket(ufams[0]->weights());
                for (size_t r = 0; r < tb.tuples.size(); ++r) {
                  Rat c = tb.alpha_scaled(j, r);
                  if (!c.is_zero())
                    ket = ket + pbw_ket(ufams, tb.tuples[r]).scaled(c);
                }
                Rat got = phi.element(bra, ket);
                const PartitionTuple& la = ta.tuples[i];
                const PartitionTuple& mu = tb.tuples[j];
                Rat expect = (u1 * u2 * v1 * v2).pow(la.size() - mu.size()) *
                             u1.pow(2 * mu[0].size()) * u2.pow(2 * mu[1].size()) *
                             (u1 * u2).pow(mu.size()) *
                             t.pow(-2 * (mu[0].n_stat() + mu[1].n_stat()));
                if ((la.size() + mu.size()) % 2) expect = -expect;
                std::vector<Rat> vs{v1, v2}, us{u1, u2};
                for (int ii = 0; ii < 2; ++ii)
                  for (int jj = 0; jj < 2; ++jj)
                    expect *= nekrasov_ntilde(reg, la[ii], mu[jj],
                                              vs[ii] / us[jj]);
                if (!got.eq(expect)) return false;
              }
          }
        return true;
      }));

  tasks.push_back(make(
      "generic operator: solve, residual surplus, element conjecture",
      "intertwiner.generic-solve", true, [L] {
        auto reg = corr_registry();
        int cap = std::min(L, 2);
        Intertwiner::Config c;
        c.x1_src = x1_family(reg, 2, false);
        c.x2_src = x2_family(reg, false);
        c.x1_dst = x1_family(reg, 2, false, {"v1", "v2"});
        c.x2_dst = x2_family(reg, false, {"v1", "v2"});
        c.crystal = false;
        c.level = cap;
        Intertwiner phi = Intertwiner::solve(c);
        if (phi.residual_violations(2) != 0) return false;
        if (phi.system_nullity(2) != 1) return false;
        // matrix-element conjecture in the scaled normalization: the scaled
        // element times p^{-2(|la|-|mu|)} matches the unscaled conjecture,
        // whose (t/q)^{2(|la|-|mu|)} factor cancels that power exactly
        Rat t = Rat::variable(reg, "t");
        Rat q = Rat::variable(reg, "q");
        Rat u1 = Rat::variable(reg, "u1"), u2 = Rat::variable(reg, "u2");
        Rat v1 = Rat::variable(reg, "v1"), v2 = Rat::variable(reg, "v2");
        std::map<std::string, Rat> to_v{{"u1", v1}, {"u2", v2}};
        std::vector<FamilyPtr> ufams{c.x1_src, c.x2_src};
        std::vector<FamilyPtr> vfams{c.x1_dst, c.x2_dst};
        for (int a = 0; a <= cap; ++a) {
          GMacTable ta = generalized_macdonald(reg, a, 2);
          fill_integral_form(ta, ufams);
          for (int b = 0; b <= cap; ++b) {
            GMacTable tb = generalized_macdonald(reg, b, 2);
            fill_integral_form(tb, ufams);
            for (size_t i = 0; i < ta.tuples.size(); ++i)
              for (size_t j = 0; j < tb.tuples.size(); ++j) {
                FockState bra(vfams[0]->weights());
                for (size_t r = 0; r < ta.tuples.size(); ++r) {
                  Rat cc = ta.beta(i, r).substitute(to_v);
                  if (!cc.is_zero())
                    bra = bra + pbw_bra(vfams, ta.tuples[r]).scaled(cc);
                }
                FockState ket(ufams[0]->weights());
                for (size_t r = 0; r < tb.tuples.size(); ++r) {
                  Rat cc = tb.alpha_scaled(j, r);
                  if (!cc.is_zero())
                    ket = ket + pbw_ket(ufams, tb.tuples[r]).scaled(cc);
                }
                Rat got = phi.element(bra, ket);
                const PartitionTuple& la = ta.tuples[i];
                const PartitionTuple& mu = tb.tuples[j];
                Rat expect = (u1 * u2).pow(la.size()) *
                             (v1 * v2).pow(la.size() - mu.size());
                if ((la.size() + mu.size()) % 2) expect = -expect;
                std::vector<Rat> vs{v1, v2}, us{u1, u2};
                for (int ii = 0; ii < 2; ++ii) {
                  expect *= us[ii].pow(2 * mu[ii].size()) *
                            q.pow(2 * mu[ii].conjugate().n_stat()) *
                            t.pow(-2 * mu[ii].n_stat());
                }
                for (int ii = 0; ii < 2; ++ii)
                  for (int jj = 0; jj < 2; ++jj)
                    expect *= nekrasov_n(reg, la[ii], mu[jj],
                                         q * vs[ii] / (t * us[jj]));
                if (!got.eq(expect)) return false;
              }
          }
        }
        return true;
      }));

  tasks.push_back(make(
      "strange factorization and its ratio-only dependence",
      "intertwiner.strange-factorization", true, [L] {
        auto reg = corr_registry();
        int cap = std::min(L, 4);
        for (int n = 0; n <= cap; ++n)
          for (auto& la : partitions_of(n)) {
            auto chk = strange_factorization_check(reg, la);
            if (!chk.identity_holds || !chk.ratio_only) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "summed comparison of the two four-point expansions",
      "intertwiner.summed-comparison", true, [L] {
        auto reg = corr_registry();
        for (int n = 0; n <= std::min(L, 3); ++n)
          if (!summed_comparison_check(reg, n)) return false;
        return true;
      }));
  return tasks;
}

// ---------------------------------------------------------------- laurent

std::vector<Task> suite_laurent(const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  const int L = cfg.level;

  tasks.push_back(make(
      "contour engine reproduces the recursion oracles in two orders",
      "laurent.oracles-two-orders", false, [L] {
        auto reg = n1_registry();
        int cap = std::min(L + 1, 5);
        for (int n = 0; n <= cap; ++n)
          for (auto& la : partitions_of(n)) {
            ContourSpec fs = f_spec(reg, la);
            ContourSpec gs = gk_spec(reg, la, 0);
            Rat f_expect = recursion_oracle(ContourOracle::F, reg, la);
            Rat g_expect = recursion_oracle(ContourOracle::Gk, reg, la);
            std::vector<int> small_first, z_then_large;
            for (int i = static_cast<int>(fs.symbols.size()) - 1; i >= 0; --i)
              if (fs.integrate[i]) small_first.push_back(i);
            z_then_large.push_back(fs.symbol_index("z"));
            for (size_t i = 0; i < fs.symbols.size(); ++i)
              if (fs.integrate[i] &&
                  static_cast<int>(i) != fs.symbol_index("z"))
                z_then_large.push_back(static_cast<int>(i));
            if (!contour_coefficient(fs, small_first).eq(f_expect)) return false;
            if (!contour_coefficient(fs, z_then_large).eq(f_expect)) return false;
            if (!contour_coefficient(gs).eq(g_expect)) return false;
            std::vector<int> g_outside_in{gs.symbol_index("z")};
            for (int i = 1; i <= la.length(); ++i)
              g_outside_in.push_back(gs.symbol_index("w" + std::to_string(i)));
            if (!contour_coefficient(gs, g_outside_in).eq(g_expect)) return false;
            if (!oracle_f_by_recursion(reg, la).eq(f_expect)) return false;
          }
        return true;
      }));

  tasks.push_back(make(
      "one-boson kernel matches its closed form",
      "laurent.n1-kernel-conjecture", true, [L] {
        auto reg = n1_registry();
        int cap = std::min(L, 3);
        for (int a = 0; a <= cap; ++a)
          for (int b = 0; b <= cap; ++b)
            for (auto& la : partitions_of(a))
              for (auto& mu : partitions_of(b)) {
                Rat kernel = contour_coefficient(n1_kernel_spec(reg, la, mu));
                if (!kernel.eq(n1_kernel_closed(reg, la, mu))) return false;
              }
        return true;
      }));
  return tasks;
}

CheckReport run_suite(const std::string& name, const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  auto append = [&](std::vector<Task> v) {
    for (auto& t : v) tasks.push_back(std::move(t));
  };
  if (name == "dvir")
    append(suite_dvir(cfg));
  else if (name == "nekrasov")
    append(suite_nekrasov(cfg));
  else if (name == "gmac")
    append(suite_gmac(cfg));
  else if (name == "intertwiner")
    append(suite_intertwiner(cfg));
  else if (name == "laurent")
    append(suite_laurent(cfg));
  else if (name == "all") {
    append(suite_dvir(cfg));
    append(suite_nekrasov(cfg));
    append(suite_gmac(cfg));
    append(suite_intertwiner(cfg));
    append(suite_laurent(cfg));
  } else {
    throw Error("unknown suite: " + name);
  }
  CheckReport report;
  run_parallel(std::move(tasks), cfg.workers, report);
  return report;
}

}  // namespace qvir
