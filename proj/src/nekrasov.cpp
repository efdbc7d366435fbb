#include "qvir/nekrasov.hpp"

#include <algorithm>

namespace qvir {

FactoredRat::FactoredRat(RegistryPtr reg)
    : reg_(std::move(reg)), pref_(Rat::one(reg_)) {}

FactoredRat FactoredRat::from_rat(Rat r) {
  FactoredRat f(r.reg());
  f.pref_ = std::move(r);
  return f;
}

void FactoredRat::mul_rat(const Rat& r) { pref_ *= r; }

void FactoredRat::push(const Poly& p, int power) {
  if (power == 0) return;
  auto it = std::lower_bound(
      factors_.begin(), factors_.end(), p,
      [](const std::pair<Poly, int>& a, const Poly& b) { return a.first < b; });
  if (it != factors_.end() && it->first == p) {
    it->second += power;
    if (it->second == 0) factors_.erase(it);
  } else {
    factors_.insert(it, {p, power});
  }
}

void FactoredRat::mul_poly(const Poly& p, int power) {
  if (p.is_zero()) throw Error("zero factor");
  if (p.is_constant()) {
    Rat c = Rat::from_poly(p);
    pref_ *= c.pow(power);
    return;
  }
  // normalize: strip content so syntactically equal factors merge
  mpz_class c = p.content();
  Poly q = p.divide_content(c);
  if (c != 1) pref_ *= Rat::rational(reg_, mpq_class(c)).pow(power);
  push(q, power);
}

void FactoredRat::mul_binomial(const Rat& a, const Rat& b, int power) {
  // (a + b) = (a.num b.den + b.num a.den)/(a.den b.den), all monomials
  Poly num = a.num() * b.den() + b.num() * a.den();
  if (num.is_zero()) throw Error("vanishing binomial factor");
  Poly den = a.den() * b.den();
  mul_poly(num, power);
  pref_ *= Rat::from_poly(den).pow(-power);
}

FactoredRat FactoredRat::operator*(const FactoredRat& o) const {
  FactoredRat r = *this;
  r.pref_ *= o.pref_;
  for (auto& [p, e] : o.factors_) r.push(p, e);
  return r;
}

FactoredRat FactoredRat::inverse() const {
  FactoredRat r(reg_);
  r.pref_ = Rat::one(reg_) / pref_;
  r.factors_ = factors_;
  for (auto& [p, e] : r.factors_) e = -e;
  return r;
}

FactoredRat FactoredRat::substituted(const std::map<std::string, Rat>& b) const {
  FactoredRat r(reg_);
  r.pref_ = pref_.substitute(b);
  for (auto& [p, e] : factors_) {
    Rat sub = Rat::from_poly(p).substitute(b);
    // a monomial binding turns a polynomial factor into poly/monomial
    if (!sub.den().is_constant()) {
      // fold the monomial denominator into the prefactor
      r.pref_ *= Rat::from_poly(sub.den()).pow(-e);
    } else {
      mpz_class c = sub.den().content();
      if (!(sub.den() == Poly::constant(reg_, c)))
        throw Error("substitution left a non-monomial denominator in a factor");
      r.pref_ *= Rat::rational(reg_, mpq_class(c)).pow(-e);
    }
    r.mul_poly(sub.num(), e);
  }
  return r;
}

Rat FactoredRat::expand() const {
  Rat r = pref_;
  for (auto& [p, e] : factors_) r *= Rat::from_poly(p).pow(e);
  return r;
}

int FactoredRat::valuation(const std::string& var) const {
  int v = reg_->index_checked(var);
  int val = pref_.num().min_exponent(v) - pref_.den().min_exponent(v);
  for (auto& [p, e] : factors_) val += e * p.min_exponent(v);
  return val;
}

LimitResult FactoredRat::limit_at_zero(const std::string& var) const {
  LimitResult res;
  if (pref_.is_zero()) {
    res.value = pref_;
    return res;
  }
  int val = valuation(var);
  if (val < 0) {
    res.pole = true;
    res.pole_order = -val;
    return res;
  }
  if (val > 0) {
    res.value = Rat::zero(reg_);
    return res;
  }
  int v = reg_->index_checked(var);
  Expo shift(reg_->size(), 0);
  Rat acc = Rat::one(reg_);
  {
    // cofactor of the prefactor
    shift[v] = -pref_.num().min_exponent(v);
    Poly n = pref_.num().shifted(shift).at_zero(v);
    shift[v] = -pref_.den().min_exponent(v);
    Poly d = pref_.den().shifted(shift).at_zero(v);
    acc = Rat::from_quotient(std::move(n), std::move(d));
  }
  for (auto& [p, e] : factors_) {
    shift[v] = -p.min_exponent(v);
    Poly cof = p.shifted(shift).at_zero(v);
    acc *= Rat::from_poly(cof).pow(e);
  }
  res.value = acc;
  return res;
}

Rat FactoredRat::sum(const std::vector<FactoredRat>& terms) {
  if (terms.empty()) throw Error("empty factored sum");
  const RegistryPtr reg = terms[0].reg_;
  // denominator exponent needed per distinct factor
  std::map<Poly, int> need;
  for (auto& t : terms)
    for (auto& [p, e] : t.factors_)
      if (e < 0) {
        int& cur = need[p];
        cur = std::max(cur, -e);
      }
  Rat total = Rat::zero(reg);
  for (auto& t : terms) {
    Rat numer = t.pref_;
    for (auto& [p, e] : t.factors_) {
      auto it = need.find(p);
      int completed = e + (it == need.end() ? 0 : it->second);
      if (completed < 0) throw Error("internal: factored sum bookkeeping");
      numer *= Rat::from_poly(p).pow(completed);
    }
    // factors absent from this term still complete the common denominator
    for (auto& [p, d] : need) {
      bool present = false;
      for (auto& [q, e] : t.factors_)
        if (q == p) {
          present = true;
          break;
        }
      if (!present) numer *= Rat::from_poly(p).pow(d);
    }
    total += numer;
  }
  Rat den = Rat::one(reg);
  for (auto& [p, d] : need) den *= Rat::from_poly(p).pow(d);
  return total / den;
}

// ------------------------------------------------------------ the factors

namespace {

Rat qt_mono(const RegistryPtr& reg, int qe, int te) {
  return Rat::variable(reg, "q").pow(qe) * Rat::variable(reg, "t").pow(te);
}

}  // namespace

FactoredRat nekrasov_n_factored(const RegistryPtr& reg, const Partition& la,
                                const Partition& mu, const Rat& Q) {
  FactoredRat f(reg);
  Rat one = Rat::one(reg);
  Partition lac = la.conjugate(), muc = mu.conjugate();
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.part(i); ++j) {
      int arm = la.part(i) - j;
      int leg = muc.part(j) - i;
      f.mul_binomial(one, -Q * qt_mono(reg, arm, leg + 1), 1);
    }
  for (int i = 1; i <= mu.length(); ++i)
    for (int j = 1; j <= mu.part(i); ++j) {
      int arm = mu.part(i) - j;
      int leg = lac.part(j) - i;
      f.mul_binomial(one, -Q * qt_mono(reg, -arm - 1, -leg), 1);
    }
  return f;
}

Rat nekrasov_n(const RegistryPtr& reg, const Partition& la, const Partition& mu,
               const Rat& Q) {
  return nekrasov_n_factored(reg, la, mu, Q).expand();
}

Rat nekrasov_ntilde(const RegistryPtr& reg, const Partition& la,
                    const Partition& mu, const Rat& Q) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Partition lac = la.conjugate();
  // boxes of mu with nonzero arm contribute (-Q/t) t^{-L_la}; the end-of-row
  // boxes contribute 1 - Q t^{-L_la - 1}
  Rat r = one;
  for (int i = 1; i <= mu.length(); ++i) {
    for (int j = 1; j < mu.part(i); ++j) {
      int leg = lac.part(j) - i;
      r *= -Q / t * t.pow(-leg);
    }
    int leg = lac.part(mu.part(i)) - i;
    r *= one - Q * t.pow(-leg - 1);
  }
  return r;
}

long e_exponent(const Partition& la, const Partition& mu) {
  long s = 0;
  for (int i = 1; i <= la.length(); ++i)
    for (int j = 1; j <= la.part(i); ++j) s += j;
  for (int i = 1; i <= mu.length(); ++i)
    for (int j = 1; j <= mu.part(i); ++j) s += j;
  return 2 * (s - la.size() - mu.size());
}

FactoredRat z_pure_term(const RegistryPtr& reg, const Partition& la,
                        const Partition& mu) {
  Rat one = Rat::one(reg);
  Rat Q = Rat::variable(reg, "Q");
  FactoredRat den = nekrasov_n_factored(reg, la, la, one) *
                    nekrasov_n_factored(reg, la, mu, Q) *
                    nekrasov_n_factored(reg, mu, mu, one) *
                    nekrasov_n_factored(reg, mu, la, one / Q);
  FactoredRat term = den.inverse();
  Rat tq = Rat::variable(reg, "t") / Rat::variable(reg, "q");
  term.mul_rat(tq.pow(la.size() + mu.size()));
  return term;
}

std::vector<Rat> z_pure(const RegistryPtr& reg, int order) {
  std::vector<Rat> out;
  for (int n = 0; n <= order; ++n) {
    std::vector<FactoredRat> terms;
    for (int a = 0; a <= n; ++a)
      for (auto& la : partitions_of(a))
        for (auto& mu : partitions_of(n - a))
          terms.push_back(z_pure_term(reg, la, mu));
    out.push_back(FactoredRat::sum(terms));
  }
  return out;
}

std::vector<Rat> z_tilde_pure(const RegistryPtr& reg, int order) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat Q = Rat::variable(reg, "Q");
  std::vector<Rat> out;
  for (int k = 0; k <= order; ++k) {
    std::vector<FactoredRat> terms;
    for (int n = 0; n <= k; ++n) {
      int m = k - n;
      FactoredRat f(reg);
      for (int s = 1; s <= n; ++s) {
        f.mul_binomial(one, -t.pow(-s), -1);
        f.mul_binomial(one, -t.pow(n - m - s) / Q, -1);
      }
      for (int s = 1; s <= m; ++s) {
        f.mul_binomial(one, -t.pow(-s), -1);
        f.mul_binomial(one, -Q * t.pow(m - n - s), -1);
      }
      terms.push_back(f);
    }
    out.push_back(FactoredRat::sum(terms));
  }
  return out;
}

Rat z_residue_term(const RegistryPtr& reg, int n, int m, int M) {
  if (m + M < 0 || n - M < 0) throw Error("z_residue_term: invalid (n,m,M)");
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat num = t.pow(static_cast<long>(n - M) * m) * (t.pow(m + M) - t.pow(n));
  Rat den = one;
  for (int s = 1; s <= n; ++s) den *= one - t.pow(-s);
  for (int s = 1; s <= m + M; ++s) den *= one - t.pow(-s);
  for (int s = 1; s <= m; ++s) den *= one - t.pow(s);
  for (int s = 1; s <= n - M; ++s) den *= one - t.pow(s);
  return num / den;
}

// --------------------------------------------------------------- N_f = 4

namespace {

Rat ratio_arg(const RegistryPtr& reg, const std::string& a, const std::string& b) {
  return Rat::variable(reg, "q") * Rat::variable(reg, a) /
         (Rat::variable(reg, "t") * Rat::variable(reg, b));
}

}  // namespace

FactoredRat z_nf4_term(const RegistryPtr& reg, const PartitionTuple& tup) {
  FactoredRat f(reg);
  const Partition empty;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      std::string vi = "v" + std::to_string(i), vj = "v" + std::to_string(j);
      std::string wi = "w" + std::to_string(i), uj = "u" + std::to_string(j);
      f = f * nekrasov_n_factored(reg, empty, tup[j - 1], ratio_arg(reg, wi, vj));
      f = f * nekrasov_n_factored(reg, tup[i - 1], empty, ratio_arg(reg, vi, uj));
      f = f * nekrasov_n_factored(reg, tup[i - 1], tup[j - 1],
                                  ratio_arg(reg, vi, vj))
                  .inverse();
    }
  return f;
}

std::vector<Rat> z_nf4(const RegistryPtr& reg, int order) {
  std::vector<Rat> out;
  for (int n = 0; n <= order; ++n) {
    std::vector<FactoredRat> terms;
    for (auto& tup : enumerate_tuples(n, 2)) terms.push_back(z_nf4_term(reg, tup));
    out.push_back(FactoredRat::sum(terms));
  }
  return out;
}

bool ScaledExponents::valid() const {
  int m_in[2] = {m1, m2}, m_out[2] = {m3, m4};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (!(m_in[i] + 1 > a && a > m_out[j])) return false;
  return true;
}

std::vector<Rat> z_nf4_scaled_limit(const RegistryPtr& reg, int order,
                                    const ScaledExponents& e) {
  if (!e.valid()) throw Error("scaled exponents violate the window");
  Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
  // after the substitution the variables u_i, v_i, w_i stand for the fixed
  // primed parameters
  std::map<std::string, Rat> sub = {
      {"u1", p.pow(-e.m1) * Rat::variable(reg, "u1")},
      {"u2", p.pow(-e.m2) * Rat::variable(reg, "u2")},
      {"v1", p.pow(-e.a) * Rat::variable(reg, "v1")},
      {"v2", p.pow(-e.a) * Rat::variable(reg, "v2")},
      {"w1", p.pow(-e.m3) * Rat::variable(reg, "w1")},
      {"w2", p.pow(-e.m4) * Rat::variable(reg, "w2")},
  };
  std::vector<Rat> out;
  for (int n = 0; n <= order; ++n) {
    Rat acc = Rat::zero(reg);
    for (auto& tup : enumerate_tuples(n, 2)) {
      FactoredRat scaled = z_nf4_term(reg, tup).substituted(sub);
      LimitResult lim = scaled.limit_at_zero("q");
      if (lim.pole)
        throw Error("pole at q=0 in the scaled partition sum at " + tup.text());
      bool columns = (tup[0].length() == tup[0].size()) &&
                     (tup[1].length() == tup[1].size());
      if (!columns && !lim.value->is_zero() &&
          !lim.value->eq(Rat::zero(reg)))
        throw Error("unexpected surviving term at " + tup.text());
      acc += *lim.value;
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace qvir
