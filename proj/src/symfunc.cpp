#include "qvir/symfunc.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <sstream>

#include "qvir/matrix.hpp"

namespace qvir {

SymFunc SymFunc::one(RegistryPtr reg) {
  SymFunc f(reg);
  f.c_.emplace(Partition{}, Rat::one(reg));
  return f;
}

SymFunc SymFunc::power_sum(RegistryPtr reg, const Partition& la) {
  SymFunc f(reg);
  f.c_.emplace(la, Rat::one(reg));
  return f;
}

int SymFunc::degree() const {
  int d = 0;
  for (auto& [la, v] : c_) d = std::max(d, la.size());
  return d;
}

void SymFunc::add_coeff(const Partition& la, const Rat& v) {
  if (v.is_zero()) return;
  auto it = c_.find(la);
  if (it == c_.end()) {
    c_.emplace(la, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Rat SymFunc::coeff(const Partition& la) const {
  auto it = c_.find(la);
  return it == c_.end() ? Rat::zero(reg_) : it->second;
}

SymFunc SymFunc::operator+(const SymFunc& o) const {
  SymFunc r = *this;
  for (auto& [la, v] : o.c_) r.add_coeff(la, v);
  return r;
}

SymFunc SymFunc::operator-(const SymFunc& o) const {
  SymFunc r = *this;
  for (auto& [la, v] : o.c_) r.add_coeff(la, -v);
  return r;
}

SymFunc SymFunc::operator*(const SymFunc& o) const {
  SymFunc r(reg_);
  for (auto& [la, u] : c_)
    for (auto& [mu, v] : o.c_) {
      std::vector<int> parts = la.parts();
      parts.insert(parts.end(), mu.parts().begin(), mu.parts().end());
      std::sort(parts.rbegin(), parts.rend());
      r.add_coeff(Partition(std::move(parts)), u * v);
    }
  return r;
}

SymFunc SymFunc::scaled(const Rat& s) const {
  SymFunc r(reg_);
  if (s.is_zero()) return r;
  for (auto& [la, v] : c_) r.c_.emplace(la, v * s);
  return r;
}

SymFunc SymFunc::negate_power_sums() const {
  SymFunc r(reg_);
  for (auto& [la, v] : c_)
    r.c_.emplace(la, la.length() % 2 ? -v : v);
  return r;
}

SymFunc SymFunc::d_power_sum(int m) const {
  SymFunc r(reg_);
  for (auto& [la, v] : c_) {
    int mult = la.multiplicity(m);
    if (mult == 0) continue;
    std::vector<int> parts = la.parts();
    parts.erase(std::find(parts.begin(), parts.end(), m));
    r.add_coeff(Partition(std::move(parts)), v * Rat::integer(reg_, mult));
  }
  return r;
}

bool SymFunc::eq(const SymFunc& o, bool fingerprint_first) const {
  for (auto& [la, v] : c_)
    if (!v.eq(o.coeff(la), fingerprint_first)) return false;
  for (auto& [la, v] : o.c_)
    if (c_.find(la) == c_.end() && !v.eq(Rat::zero(reg_), fingerprint_first))
      return false;
  return true;
}

std::string SymFunc::text() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [la, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.text() << ")*p" << la.text();
  }
  return os.str();
}

// ------------------------------------------------------- basis conversions

namespace {

// rational-constant expansions, independent of any registry
using QExpansion = std::map<Partition, mpq_class>;

std::recursive_mutex g_basis_mutex;

// p_r * m_mu in the m basis: replace one part value v (or add a new part,
// v = 0) by v + r; the coefficient is the multiplicity of v + r afterwards.
QExpansion pr_times_m(int r, const Partition& mu) {
  QExpansion out;
  std::vector<int> values{0};
  for (int p : mu.parts())
    if (std::find(values.begin(), values.end(), p) == values.end())
      values.push_back(p);
  for (int v : values) {
    std::vector<int> parts = mu.parts();
    if (v != 0) parts.erase(std::find(parts.begin(), parts.end(), v));
    parts.push_back(v + r);
    std::sort(parts.rbegin(), parts.rend());
    Partition nu(std::move(parts));
    out[nu] += nu.multiplicity(v + r);
  }
  return out;
}

// p_lambda in the m basis (cached)
const QExpansion& p_in_m(const Partition& la) {
  static std::map<Partition, QExpansion> cache;
  std::lock_guard<std::recursive_mutex> lk(g_basis_mutex);
  auto it = cache.find(la);
  if (it != cache.end()) return it->second;
  QExpansion cur;
  cur[Partition{}] = 1;
  for (int r : la.parts()) {
    QExpansion next;
    for (auto& [mu, c] : cur)
      for (auto& [nu, d] : pr_times_m(r, mu)) next[nu] += c * d;
    cur = std::move(next);
  }
  return cache.emplace(la, std::move(cur)).first->second;
}

// m_lambda in the p basis (cached): invert the triangular p->m data per degree
const QExpansion& m_in_p(const Partition& la) {
  static std::map<Partition, QExpansion> cache;
  std::lock_guard<std::recursive_mutex> lk(g_basis_mutex);
  {
    auto it = cache.find(la);
    if (it != cache.end()) return it->second;
  }
  const int n = la.size();
  auto parts = partitions_of(n);
  // solve m_la = sum_mu x_mu p_mu from p_mu = sum_nu R[mu][nu] m_nu
  const int k = static_cast<int>(parts.size());
  std::vector<std::vector<mpq_class>> r(k, std::vector<mpq_class>(k, 0));
  for (int i = 0; i < k; ++i) {
    auto& row = p_in_m(parts[i]);
    for (int j = 0; j < k; ++j) {
      auto it = row.find(parts[j]);
      if (it != row.end()) r[i][j] = it->second;
    }
  }
  // dense rational solve of R^T x = e_la (small: at most p(6) = 11)
  for (int target = 0; target < k; ++target) {
    std::vector<std::vector<mpq_class>> a(k, std::vector<mpq_class>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) a[i][j] = r[j][i];
    std::vector<mpq_class> rhs(k, 0);
    rhs[target] = 1;
    for (int c = 0; c < k; ++c) {
      int piv = -1;
      for (int i = c; i < k; ++i)
        if (a[i][c] != 0) {
          piv = i;
          break;
        }
      if (piv < 0) throw Error("m_in_p: singular transition matrix");
      std::swap(a[piv], a[c]);
      std::swap(rhs[piv], rhs[c]);
      mpq_class inv = 1 / a[c][c];
      for (int j = 0; j < k; ++j) a[c][j] *= inv;
      rhs[c] *= inv;
      for (int i = 0; i < k; ++i) {
        if (i == c || a[i][c] == 0) continue;
        mpq_class f = a[i][c];
        for (int j = 0; j < k; ++j) a[i][j] -= f * a[c][j];
        rhs[i] -= f * rhs[c];
      }
    }
    // column vector rhs solves R^T rhs = e_target, i.e. sum_mu rhs_mu p_mu has
    // m-coordinates e_target
    QExpansion exp;
    for (int i = 0; i < k; ++i)
      if (rhs[i] != 0) exp[parts[i]] = rhs[i];
    cache.emplace(parts[target], std::move(exp));
  }
  return cache.at(la);
}

}  // namespace

SymFunc monomial_sym(RegistryPtr reg, const Partition& la) {
  SymFunc f(reg);
  for (auto& [mu, c] : m_in_p(la)) f.add_coeff(mu, Rat::rational(reg, c));
  return f;
}

SymFunc elementary_sym(RegistryPtr reg, int k) {
  // e_k = sum_{|la|=k} (-1)^{k-l(la)} p_la / z_la
  SymFunc f(reg);
  for (auto& la : partitions_of(k)) {
    mpq_class c(1, la.z_stat());
    if ((k - la.length()) % 2) c = -c;
    f.add_coeff(la, Rat::rational(reg, c));
  }
  return f;
}

std::map<Partition, Rat> to_monomial_basis(const SymFunc& f) {
  std::map<Partition, Rat> out;
  for (auto& [la, v] : f.coeffs())
    for (auto& [mu, c] : p_in_m(la)) {
      Rat add = v * Rat::rational(f.reg(), c);
      auto it = out.find(mu);
      if (it == out.end())
        out.emplace(mu, add);
      else
        it->second += add;
    }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

SymFunc from_monomial_basis(RegistryPtr reg, const std::map<Partition, Rat>& m) {
  SymFunc f(reg);
  for (auto& [la, v] : m) {
    SymFunc part = monomial_sym(reg, la).scaled(v);
    f = f + part;
  }
  return f;
}

Rat inner_qt(const SymFunc& f, const SymFunc& g, const Rat& q, const Rat& t) {
  RegistryPtr reg = f.reg();
  Rat acc = Rat::zero(reg);
  for (auto& [la, u] : f.coeffs()) {
    Rat v = g.coeff(la);
    if (v.is_zero()) continue;
    Rat w = Rat::integer(reg, la.z_stat());
    for (int p : la.parts())
      w *= (Rat::one(reg) - q.pow(p)) / (Rat::one(reg) - t.pow(p));
    acc += u * v * w;
  }
  return acc;
}

MacdonaldTable::MacdonaldTable(RegistryPtr reg, Rat q, Rat t)
    : reg_(std::move(reg)), q_(std::move(q)), t_(std::move(t)) {}

const SymFunc& MacdonaldTable::P(const Partition& la) {
  auto it = cache_.find(la);
  if (it != cache_.end()) return it->second;
  if (q_.is_zero()) {
    // the diagonalizer degenerates at q = 0 (eigenvalues depend only on the
    // length there); the Jing construction covers the Hall-Littlewood case
    SymFunc f = hall_littlewood_q(reg_, la, t_).scaled(Rat::one(reg_) /
                                                       b_stat(la, t_));
    return cache_.emplace(la, std::move(f)).first->second;
  }
  // Diagonalize the degree-preserving mode of the basic vertex operator
  // (creation (1-t^{-m})/m p_m, derivative -(1-q^m) d/dp_m). It is
  // unitriangular-conjugate to a diagonal with distinct entries, hence
  // dominance-triangular over the monomial basis; P_la comes out of a
  // back-substitution, avoiding Gram eliminations entirely.
  const Rat one = Rat::one(reg_);
  const Rat qv = q_, tv = t_;
  RegistryPtr reg = reg_;
  auto cre = [reg, tv, one](int m) {
    return (one - tv.pow(-m)) / Rat::integer(reg, m);
  };
  auto der = [reg, qv, one](int m) { return -(one - qv.pow(m)); };

  const int n = la.size();
  auto parts = partitions_of(n);  // canonical order refines dominance
  const int k = static_cast<int>(parts.size());
  // operator matrix over the monomial basis
  RatMatrix mat = rat_matrix(k, k, reg_);
  for (int j = 0; j < k; ++j) {
    SymFunc img = vertex_mode_apply(0, monomial_sym(reg_, parts[j]), cre, der);
    auto mc = to_monomial_basis(img);
    for (auto& [mu, c] : mc) {
      int i = -1;
      for (int r = 0; r < k; ++r)
        if (parts[r] == mu) i = r;
      mat(i, j) = c;
    }
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!mat(i, j).eq(Rat::zero(reg_)))
        throw Error("Macdonald mode matrix not triangular");
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (mat(i, i).eq(mat(j, j)))
        throw Error("Macdonald eigenvalue collision");
  for (int j = 0; j < k; ++j) {
    if (cache_.count(parts[j])) continue;
    RatVector y = rat_vector(k, reg_);
    y(j) = one;
    for (int i = j + 1; i < k; ++i) {
      Rat num = Rat::zero(reg_);
      for (int l = j; l < i; ++l) num += mat(i, l) * y(l);
      if (num.is_zero() || num.eq(Rat::zero(reg_))) continue;
      y(i) = num / (mat(j, j) - mat(i, i));
    }
    SymFunc f(reg_);
    for (int i = 0; i < k; ++i)
      if (!y(i).is_zero()) f = f + monomial_sym(reg_, parts[i]).scaled(y(i));
    cache_.emplace(parts[j], std::move(f));
  }
  return cache_.at(la);
}

Rat MacdonaldTable::norm(const Partition& la) {
  auto it = norms_.find(la);
  if (it != norms_.end()) return it->second;
  const SymFunc& p = P(la);
  Rat n = inner_qt(p, p, q_, t_);
  norms_.emplace(la, n);
  return n;
}

SymFunc vertex_mode_apply(int mode, const SymFunc& f,
                          const std::function<Rat(int)>& cre,
                          const std::function<Rat(int)>& der) {
  RegistryPtr reg = f.reg();
  // stage 1: all iterated derivatives, keyed by the multiset applied
  int fdeg = f.degree();
  std::map<Partition, SymFunc> derivs;
  derivs.emplace(Partition{}, f);
  std::function<void(const Partition&)> expand = [&](const Partition& rho) {
    const SymFunc& base = derivs.at(rho);
    int head = rho.length() ? rho.parts()[0] : fdeg;
    for (int m = std::min(head, fdeg - rho.size()); m >= 1; --m) {
      std::vector<int> parts = rho.parts();
      parts.insert(parts.begin(), m);
      std::sort(parts.rbegin(), parts.rend());
      Partition next(std::move(parts));
      if (derivs.count(next)) continue;
      SymFunc d = base.d_power_sum(m);
      if (d.is_zero()) continue;
      derivs.emplace(next, d);
      expand(next);
    }
  };
  expand(Partition{});

  SymFunc out(reg);
  for (auto& [rho, draw] : derivs) {
    Rat c = Rat::one(reg);
    std::map<int, int> mult;
    for (int p : rho.parts()) ++mult[p];
    for (auto& [v, m] : mult) {
      long fact = 1;
      for (int i = 2; i <= m; ++i) fact *= i;
      c *= der(v).pow(m) / Rat::integer(reg, fact);
    }
    if (c.is_zero()) continue;
    // creation multiset kappa with |kappa| - |rho| = -mode
    int need = rho.size() - mode;
    if (need < 0) continue;
    for (auto& kappa : partitions_of(need)) {
      Rat cc = c;
      std::map<int, int> km;
      for (int p : kappa.parts()) ++km[p];
      for (auto& [v, m] : km) {
        cc *= cre(v).pow(m);
        long fact = 1;
        for (int i = 2; i <= m; ++i) fact *= i;
        cc /= Rat::integer(reg, fact);
      }
      if (cc.is_zero()) continue;
      out = out + (SymFunc::power_sum(reg, kappa) * derivs.at(rho)).scaled(cc);
    }
  }
  return out;
}

SymFunc jing_apply(int mode, const SymFunc& f, const Rat& t, bool dagger) {
  RegistryPtr reg = f.reg();
  const Rat one = Rat::one(reg);
  // H(z): creation (1-t^m)/m p_m, derivative side -d/dp_m (the bracket
  // n/(1-t^n) cancels the coefficient); the dagger swaps the signs
  auto cre = [reg, t, one, dagger](int m) {
    Rat b = (one - t.pow(m)) / Rat::integer(reg, m);
    return dagger ? -b : b;
  };
  auto der = [reg, dagger](int) {
    return dagger ? Rat::one(reg) : -Rat::one(reg);
  };
  return vertex_mode_apply(mode, f, cre, der);
}

SymFunc hall_littlewood_q(RegistryPtr reg, const Partition& la, const Rat& t) {
  SymFunc f = SymFunc::one(reg);
  for (int i = la.length(); i >= 1; --i) f = jing_apply(-la.part(i), f, t, false);
  return f;
}

Rat principal_specialize(const SymFunc& f, const Rat& r, const Rat& t) {
  RegistryPtr reg = f.reg();
  const Rat one = Rat::one(reg);
  Rat acc = Rat::zero(reg);
  for (auto& [la, v] : f.coeffs()) {
    Rat w = v;
    for (int p : la.parts()) w *= (one - r.pow(p)) / (one - t.pow(p));
    acc += w;
  }
  return acc;
}

Rat hl_pairing_signed(RegistryPtr reg, const Partition& la, const Partition& mu,
                      const Rat& t) {
  SymFunc a = hall_littlewood_q(reg, la, t).negate_power_sums();
  SymFunc b = hall_littlewood_q(reg, mu, t);
  return inner_qt(a, b, Rat::zero(reg), t);
}

}  // namespace qvir
