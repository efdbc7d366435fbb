#include "qvir/laurent.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qvir {

int ContourSpec::symbol_index(const std::string& name) const {
  for (size_t i = 0; i < symbols.size(); ++i)
    if (symbols[i] == name) return static_cast<int>(i);
  throw Error("unknown contour symbol: " + name);
}

ContourSpec::Term ContourSpec::monomial(const Rat& c) const {
  return Term{c, std::vector<int>(symbols.size(), 0)};
}

void ContourSpec::mul_prefactor(const Rat& c, const std::string& sym, int e) {
  prefactor.coeff *= c;
  if (!sym.empty()) prefactor.expo[symbol_index(sym)] += e;
}

void ContourSpec::add_factor(const Term& a, const Term& b, int power) {
  factors.push_back(Factor{a, b, power});
}

namespace {

using Key = std::vector<int>;
using LaurentPoly = std::map<Key, Rat>;

void add_term(LaurentPoly& p, const Key& k, const Rat& c) {
  if (c.is_zero()) return;
  auto it = p.find(k);
  if (it == p.end()) {
    p.emplace(k, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

LaurentPoly mul_term(const LaurentPoly& p, const ContourSpec::Term& t) {
  LaurentPoly r;
  for (auto& [k, c] : p) {
    Key nk = k;
    for (size_t i = 0; i < nk.size(); ++i) nk[i] += t.expo[i];
    r.emplace(std::move(nk), c * t.coeff);
  }
  return r;
}

// a strictly dominates b when, scanning symbols from the smallest, the first
// differing exponent is smaller in a (lower powers of smaller symbols are
// larger in modulus). Returns +1 (a dominates), -1 (b), 0 (tie).
int dominance(const ContourSpec::Term& a, const ContourSpec::Term& b) {
  for (int i = static_cast<int>(a.expo.size()) - 1; i >= 0; --i) {
    if (a.expo[i] != b.expo[i]) return a.expo[i] < b.expo[i] ? 1 : -1;
  }
  return 0;
}

struct Eliminator {
  const ContourSpec& spec;
  LaurentPoly acc;
  std::vector<ContourSpec::Factor> pending;

  explicit Eliminator(const ContourSpec& s) : spec(s), pending(s.factors) {
    acc.emplace(s.prefactor.expo, s.prefactor.coeff);
  }

  void eliminate(int v) {
    if (!spec.integrate[v]) throw Error("cannot eliminate a parameter symbol");
    const int e = spec.target[v];
    std::vector<ContourSpec::Factor> inv;
    std::vector<ContourSpec::Factor> keep;
    for (auto& f : pending) {
      ContourSpec::Factor g = f;
      // strip the common v power into the accumulator
      int common = std::min(g.a.expo[v], g.b.expo[v]);
      if (common != 0) {
        g.a.expo[v] -= common;
        g.b.expo[v] -= common;
        ContourSpec::Term shift = spec.monomial(Rat(1));
        shift.expo[v] = common * g.power;
        acc = mul_term(acc, shift);
      }
      if (g.a.expo[v] == 0 && g.b.expo[v] == 0) {
        keep.push_back(std::move(g));
        continue;
      }
      if (g.power >= 1) {
        for (int k = 0; k < g.power; ++k) {
          LaurentPoly r;
          for (auto& [key, c] : acc) {
            Key ka = key, kb = key;
            for (size_t i = 0; i < key.size(); ++i) {
              ka[i] += g.a.expo[i];
              kb[i] += g.b.expo[i];
            }
            add_term(r, ka, c * g.a.coeff);
            add_term(r, kb, c * g.b.coeff);
          }
          acc = std::move(r);
        }
        continue;
      }
      inv.push_back(std::move(g));
    }

    // classify each inverse factor: dominant part and expansion ratio
    int direction = 0;  // +1: ratios raise the v exponent, -1: lower
    struct Series {
      ContourSpec::Term ratio;  // -b/a (so 1/(a+b) = 1/a sum ratio^k)
    };
    std::vector<Series> series;
    for (auto& g : inv) {
      if (g.power != -1) throw Error("factor powers other than +-1 unsupported");
      int d = dominance(g.a, g.b);
      if (d == 0) throw Error("factor without a dominant term");
      const auto& dom = d > 0 ? g.a : g.b;
      const auto& sub = d > 0 ? g.b : g.a;
      // multiply acc by dom^-1
      ContourSpec::Term dinv;
      dinv.coeff = Rat(1) / dom.coeff;
      dinv.expo.resize(dom.expo.size());
      for (size_t i = 0; i < dom.expo.size(); ++i) dinv.expo[i] = -dom.expo[i];
      acc = mul_term(acc, dinv);
      ContourSpec::Term ratio;
      ratio.coeff = -sub.coeff / dom.coeff;
      ratio.expo.resize(dom.expo.size());
      for (size_t i = 0; i < dom.expo.size(); ++i)
        ratio.expo[i] = sub.expo[i] - dom.expo[i];
      int sgn = ratio.expo[v] > 0 ? 1 : (ratio.expo[v] < 0 ? -1 : 0);
      if (sgn == 0) throw Error("internal: ratio without v dependence");
      if (direction == 0) direction = sgn;
      if (direction != sgn)
        throw Error("two-sided expansion needed; pick another elimination order");
      series.push_back(Series{std::move(ratio)});
    }

    auto in_range = [&](int exp_v) {
      return direction >= 0 ? exp_v <= e : exp_v >= e;
    };
    // drop accumulator terms that can never reach the target
    {
      LaurentPoly trimmed;
      for (auto& [k, c] : acc)
        if (in_range(k[v])) trimmed.emplace(k, c);
      acc = std::move(trimmed);
    }
    for (auto& s : series) {
      LaurentPoly r;
      for (auto& [k, c] : acc) {
        Key cur = k;
        Rat coeff = c;
        add_term(r, cur, coeff);
        for (;;) {
          for (size_t i = 0; i < cur.size(); ++i) cur[i] += s.ratio.expo[i];
          if (!in_range(cur[v])) break;
          coeff = coeff * s.ratio.coeff;
          add_term(r, cur, coeff);
        }
      }
      acc = std::move(r);
    }
    // project onto the target exponent
    LaurentPoly out;
    for (auto& [k, c] : acc) {
      if (k[v] != e) continue;
      Key nk = k;
      nk[v] = 0;
      add_term(out, nk, c);
    }
    acc = std::move(out);
    pending = std::move(keep);
  }

  Rat finish() {
    // remaining factors may involve parameter symbols only
    Rat extra = Rat::one(spec.reg);
    for (auto& f : pending) {
      for (size_t v = 0; v < spec.symbols.size(); ++v)
        if (spec.integrate[v] && (f.a.expo[v] || f.b.expo[v]))
          throw Error("unexpanded factor still involves an integration symbol");
      auto fold = [&](const ContourSpec::Term& t) {
        Rat r = t.coeff;
        for (size_t i = 0; i < spec.symbols.size(); ++i)
          if (t.expo[i])
            r *= Rat::variable(spec.reg, spec.symbols[i]).pow(t.expo[i]);
        return r;
      };
      extra *= (fold(f.a) + fold(f.b)).pow(f.power);
    }
    Rat total = Rat::zero(spec.reg);
    for (auto& [k, c] : acc) {
      Rat term = c;
      for (size_t i = 0; i < spec.symbols.size(); ++i) {
        if (k[i] == 0) continue;
        if (spec.integrate[i]) throw Error("leftover integration exponent");
        term *= Rat::variable(spec.reg, spec.symbols[i]).pow(k[i]);
      }
      total += term;
    }
    return total * extra;
  }
};

}  // namespace

Rat contour_coefficient(const ContourSpec& spec,
                        const std::vector<int>& elimination_order) {
  Eliminator el(spec);
  for (int v : elimination_order) el.eliminate(v);
  for (size_t i = 0; i < spec.symbols.size(); ++i)
    if (spec.integrate[i] &&
        std::find(elimination_order.begin(), elimination_order.end(),
                  static_cast<int>(i)) == elimination_order.end())
      throw Error("integration symbol not eliminated: " + spec.symbols[i]);
  return el.finish();
}

Rat contour_coefficient(const ContourSpec& spec) {
  std::vector<int> order;
  for (int i = static_cast<int>(spec.symbols.size()) - 1; i >= 0; --i)
    if (spec.integrate[i]) order.push_back(i);
  return contour_coefficient(spec, order);
}

// -------------------------------------------------------------- integrands

namespace {

ContourSpec base_spec(const RegistryPtr& reg, std::vector<std::string> symbols,
                      std::vector<bool> integrate, std::vector<int> target) {
  ContourSpec s;
  s.reg = reg;
  s.symbols = std::move(symbols);
  s.integrate = std::move(integrate);
  s.target = std::move(target);
  s.prefactor = s.monomial(Rat::one(reg));
  return s;
}

ContourSpec::Term sym_term(const ContourSpec& s, const Rat& c,
                           const std::string& name, int e = 1) {
  ContourSpec::Term t = s.monomial(c);
  t.expo[s.symbol_index(name)] += e;
  return t;
}

void add_w_block(ContourSpec& s, int l, const Rat& t, bool small_index_large) {
  // prod over pairs of (w_big - w_small)/(w_big - t w_small)
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= l; ++j) {
      if (i >= j) continue;
      // symbols named w1..wl; which of wi, wj is larger depends on the contour
      std::string big = small_index_large ? "w" + std::to_string(i)
                                          : "w" + std::to_string(j);
      std::string small = small_index_large ? "w" + std::to_string(j)
                                            : "w" + std::to_string(i);
      s.add_factor(sym_term(s, Rat::one(s.reg), big),
                   sym_term(s, Rat::integer(s.reg, -1), small), 1);
      s.add_factor(sym_term(s, Rat::one(s.reg), big),
                   sym_term(s, -t, small), -1);
    }
}

}  // namespace

ContourSpec f_spec(const RegistryPtr& reg, const Partition& la) {
  const int l = la.length();
  // ordering |1/z| > |w1| > ... > |wl|: z is the smallest symbol
  std::vector<std::string> symbols;
  std::vector<bool> integrate;
  std::vector<int> target;
  for (int i = 1; i <= l; ++i) {
    symbols.push_back("w" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(la.part(i));
  }
  symbols.push_back("z");
  integrate.push_back(true);
  target.push_back(la.size());
  ContourSpec s = base_spec(reg, symbols, integrate, target);
  Rat t = Rat::variable(reg, "t");
  for (int i = 1; i <= l; ++i) {
    // (1 - z w_i)^-1
    ContourSpec::Term zw = s.monomial(Rat::integer(reg, -1));
    zw.expo[s.symbol_index("z")] = 1;
    zw.expo[s.symbol_index("w" + std::to_string(i))] = 1;
    s.add_factor(s.monomial(Rat::one(reg)), zw, -1);
  }
  add_w_block(s, l, t, true);
  return s;
}

ContourSpec gk_spec(const RegistryPtr& reg, const Partition& la, int k) {
  const int l = la.length();
  // z is the largest symbol here
  std::vector<std::string> symbols{"z"};
  std::vector<bool> integrate{true};
  std::vector<int> target{-la.size()};
  for (int i = 1; i <= l; ++i) {
    symbols.push_back("w" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(la.part(i));
  }
  ContourSpec s = base_spec(reg, symbols, integrate, target);
  Rat t = Rat::variable(reg, "t");
  for (int i = 1; i <= l; ++i) {
    std::string wi = "w" + std::to_string(i);
    s.add_factor(sym_term(s, Rat::one(reg), "z"),
                 sym_term(s, Rat::integer(reg, -1), wi), 1);
    s.add_factor(sym_term(s, t.pow(-k), "z"), sym_term(s, -t, wi), -1);
  }
  add_w_block(s, l, t, true);
  return s;
}

ContourSpec frak_f_spec(const RegistryPtr& reg, const Partition& la) {
  const int l = la.length();
  // |w_l| > ... > |w_1| > |x|
  std::vector<std::string> symbols;
  std::vector<bool> integrate;
  std::vector<int> target;
  for (int i = l; i >= 1; --i) {
    symbols.push_back("w" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(-la.part(i));
  }
  symbols.push_back("x");
  integrate.push_back(false);
  target.push_back(0);
  ContourSpec s = base_spec(reg, symbols, integrate, target);
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  for (int i = 1; i <= l; ++i) {
    std::string wi = "w" + std::to_string(i);
    // w_i / (w_i - u x)
    s.mul_prefactor(Rat::one(reg), wi, 1);
    s.add_factor(sym_term(s, Rat::one(reg), wi), sym_term(s, -u, "x"), -1);
  }
  // prod_{j<i} (w_i - w_j)/(w_i - t w_j): larger second index is larger
  add_w_block(s, l, t, false);
  return s;
}

ContourSpec frak_g_spec(const RegistryPtr& reg, const Partition& mu) {
  const int m = mu.length();
  // |x| > |z_1| > ... > |z_m|
  std::vector<std::string> symbols{"x"};
  std::vector<bool> integrate{false};
  std::vector<int> target{0};
  for (int i = 1; i <= m; ++i) {
    symbols.push_back("z" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(mu.part(i));
  }
  ContourSpec s = base_spec(reg, symbols, integrate, target);
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  Rat v = Rat::variable(reg, "v");
  for (int i = 1; i <= m; ++i) {
    std::string zi = "z" + std::to_string(i);
    // (x - (t/v) z_i)/(x - (t/u) z_i)
    s.add_factor(sym_term(s, Rat::one(reg), "x"), sym_term(s, -t / v, zi), 1);
    s.add_factor(sym_term(s, Rat::one(reg), "x"), sym_term(s, -t / u, zi), -1);
  }
  // prod_{i<j} (z_i - z_j)/(z_i - t z_j), smaller index larger
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      std::string zi = "z" + std::to_string(i), zj = "z" + std::to_string(j);
      s.add_factor(sym_term(s, Rat::one(reg), zi),
                   sym_term(s, Rat::integer(reg, -1), zj), 1);
      s.add_factor(sym_term(s, Rat::one(reg), zi), sym_term(s, -t, zj), -1);
    }
  return s;
}

ContourSpec n1_kernel_spec(const RegistryPtr& reg, const Partition& la,
                           const Partition& mu) {
  const int l = la.length(), m = mu.length();
  // |w_l| > ... > |w_1| > |x| > |z_1| > ... > |z_m|
  std::vector<std::string> symbols;
  std::vector<bool> integrate;
  std::vector<int> target;
  for (int i = l; i >= 1; --i) {
    symbols.push_back("w" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(-la.part(i));
  }
  symbols.push_back("x");
  integrate.push_back(false);
  target.push_back(0);
  for (int i = 1; i <= m; ++i) {
    symbols.push_back("z" + std::to_string(i));
    integrate.push_back(true);
    target.push_back(mu.part(i));
  }
  ContourSpec s = base_spec(reg, symbols, integrate, target);
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  Rat v = Rat::variable(reg, "v");
  // w block: prod_{j<i} (w_i - w_j)/(w_i - t w_j)
  add_w_block(s, l, t, false);
  // z block: prod_{i<j} (z_i - z_j)/(z_i - t z_j)
  for (int i = 1; i <= m; ++i)
    for (int j = i + 1; j <= m; ++j) {
      std::string zi = "z" + std::to_string(i), zj = "z" + std::to_string(j);
      s.add_factor(sym_term(s, Rat::one(reg), zi),
                   sym_term(s, Rat::integer(reg, -1), zj), 1);
      s.add_factor(sym_term(s, Rat::one(reg), zi), sym_term(s, -t, zj), -1);
    }
  // cross factors (w_i - t z_j)/(w_i - z_j)
  for (int i = 1; i <= l; ++i)
    for (int j = 1; j <= m; ++j) {
      std::string wi = "w" + std::to_string(i), zj = "z" + std::to_string(j);
      s.add_factor(sym_term(s, Rat::one(reg), wi), sym_term(s, -t, zj), 1);
      s.add_factor(sym_term(s, Rat::one(reg), wi),
                   sym_term(s, Rat::integer(reg, -1), zj), -1);
    }
  // x factors (x - (t/v) z_i)/(x - (t/u) z_i)
  for (int i = 1; i <= m; ++i) {
    std::string zi = "z" + std::to_string(i);
    s.add_factor(sym_term(s, Rat::one(reg), "x"), sym_term(s, -t / v, zi), 1);
    s.add_factor(sym_term(s, Rat::one(reg), "x"), sym_term(s, -t / u, zi), -1);
  }
  // w_i/(w_i - u x)
  for (int i = 1; i <= l; ++i) {
    std::string wi = "w" + std::to_string(i);
    s.mul_prefactor(Rat::one(reg), wi, 1);
    s.add_factor(sym_term(s, Rat::one(reg), wi), sym_term(s, -u, "x"), -1);
  }
  return s;
}

// ----------------------------------------------------------------- oracles

Rat recursion_oracle(ContourOracle which, const RegistryPtr& reg,
                     const Partition& la, const OracleParams& params) {
  Rat t = Rat::variable(reg, "t");
  Rat one = Rat::one(reg);
  switch (which) {
    case ContourOracle::F:
      return t.pow(la.n_stat());
    case ContourOracle::Gk: {
      if (params.k == 0) {
        Rat r = t.pow(la.size() + la.n_stat());
        for (int s = 1; s <= la.length(); ++s) r *= one - t.pow(-s);
        return r;
      }
      return oracle_gk_by_recursion(reg, la, params.k);
    }
    case ContourOracle::frakF: {
      Rat x = Rat::variable(reg, "x");
      Rat u = params.u.bound() ? params.u : Rat::variable(reg, "u");
      Rat r = one;
      for (int i = 1; i <= la.length(); ++i)
        r *= (u * t.pow(i - 1) * x).pow(la.part(i));
      return r;
    }
    case ContourOracle::frakG: {
      Rat x = Rat::variable(reg, "x");
      Rat u = params.u.bound() ? params.u : Rat::variable(reg, "u");
      Rat v = Rat::variable(reg, "v");
      Rat r = one;
      for (int i = 1; i <= la.length(); ++i) {
        r *= one - u * t.pow(1 - i) / v;
        r *= (t.pow(i) / (u * x)).pow(la.part(i));
      }
      return r;
    }
  }
  throw Error("unreachable");
}

Rat oracle_f_by_recursion(const RegistryPtr& reg, const Partition& la) {
  Rat t = Rat::variable(reg, "t");
  // A_0 = 1, A_n = (t-1) t^{n-1}
  auto a_coeff = [&](int n) {
    return n == 0 ? Rat::one(reg) : (t - Rat::one(reg)) * t.pow(n - 1);
  };
  std::map<std::vector<int>, Rat> memo;
  std::function<Rat(const std::vector<int>&)> f =
      [&](const std::vector<int>& tup) -> Rat {
    if (tup.size() <= 1) return Rat::one(reg);
    auto it = memo.find(tup);
    if (it != memo.end()) return it->second;
    const int l = static_cast<int>(tup.size());
    const int last = tup.back();
    // sum over alpha_0..alpha_{l-1} >= 0 summing to `last`; alpha_0 carries
    // weight A_{alpha_0}... the first slot is the unweighted remainder
    Rat acc = Rat::zero(reg);
    std::vector<int> alphas(l - 1, 0);
    std::function<void(int, int, Rat)> rec = [&](int idx, int rest, Rat w) {
      if (idx == l - 1) {
        // alpha_0 = rest, weight 1
        std::vector<int> next(tup.begin(), tup.end() - 1);
        for (int i = 0; i < l - 1; ++i) next[i] += alphas[i];
        acc += w * f(next);
        return;
      }
      for (int a = 0; a <= rest; ++a) {
        alphas[idx] = a;
        rec(idx + 1, rest - a, w * a_coeff(a));
      }
      alphas[idx] = 0;
    };
    rec(0, last, Rat::one(reg));
    memo.emplace(tup, acc);
    return acc;
  };
  std::vector<int> tup(la.parts());
  return f(tup);
}

Rat oracle_gk_by_recursion(const RegistryPtr& reg, const Partition& la, int k) {
  Rat t = Rat::variable(reg, "t");
  if (la.length() == 0) return Rat::one(reg);
  // G^k_{la} = t^{la_1 (k+1) - l(la)} (t^{k+1} - 1) G^{k+1}_{la_2..}
  std::vector<int> rest(la.parts().begin() + 1, la.parts().end());
  return t.pow(static_cast<long>(la.part(1)) * (k + 1) - la.length()) *
         (t.pow(k + 1) - Rat::one(reg)) *
         oracle_gk_by_recursion(reg, Partition(rest), k + 1);
}

}  // namespace qvir
