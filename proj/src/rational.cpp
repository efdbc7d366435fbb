#include "qvir/rational.hpp"

#include <algorithm>
#include <climits>
#include <cctype>
#include <sstream>

namespace qvir {

Registry::Registry(std::vector<std::string> names) : names_(std::move(names)) {
  for (int i = 0; i < static_cast<int>(names_.size()); ++i) {
    if (!index_.emplace(names_[i], i).second)
      throw Error("duplicate registry variable: " + names_[i]);
  }
}

int Registry::index(const std::string& n) const {
  auto it = index_.find(n);
  return it == index_.end() ? -1 : it->second;
}

int Registry::index_checked(const std::string& n) const {
  int i = index(n);
  if (i < 0) throw Error("unknown variable: " + n);
  return i;
}

RegistryPtr make_registry(std::vector<std::string> names) {
  return std::make_shared<Registry>(std::move(names));
}

Poly Poly::constant(RegistryPtr reg, const mpz_class& c) {
  Poly p(std::move(reg));
  if (c != 0) p.terms_.emplace(Expo(p.reg_->size(), 0), c);
  return p;
}

Poly Poly::variable(RegistryPtr reg, int idx, int power) {
  Poly p(std::move(reg));
  Expo e(p.reg_->size(), 0);
  e.at(idx) = power;
  p.terms_.emplace(std::move(e), 1);
  return p;
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Expo& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

void Poly::add_term(const Expo& e, const mpz_class& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly Poly::operator-() const {
  Poly r(reg_);
  for (auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  Poly r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const {
  Poly r = *this;
  for (auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  Poly r(reg_);
  if (terms_.empty() || o.terms_.empty()) return r;
  const int n = reg_->size();
  Expo e(n);
  mpz_class c;
  for (auto& [ea, ca] : terms_) {
    for (auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

Poly Poly::shifted(const Expo& shift, const mpz_class& c) const {
  Poly r(reg_);
  const int n = reg_->size();
  for (auto& [e, coef] : terms_) {
    Expo f(n);
    for (int i = 0; i < n; ++i) {
      f[i] = e[i] + shift[i];
      if (f[i] < 0) throw Error("monomial shift below zero exponent");
    }
    r.terms_.emplace(std::move(f), coef * c);
  }
  return r;
}

int Poly::min_exponent(int var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[var];
  for (auto& [e, c] : terms_) m = std::min(m, e[var]);
  return m;
}

int Poly::max_exponent(int var) const {
  if (terms_.empty()) return 0;
  int m = terms_.begin()->first[var];
  for (auto& [e, c] : terms_) m = std::max(m, e[var]);
  return m;
}

mpz_class Poly::content() const {
  mpz_class g = 0;
  for (auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g == 0 ? mpz_class(1) : g;
}

Poly Poly::divide_content(const mpz_class& c) const {
  Poly r(reg_);
  for (auto& [e, coef] : terms_) {
    mpz_class d;
    mpz_divexact(d.get_mpz_t(), coef.get_mpz_t(), c.get_mpz_t());
    r.terms_.emplace(e, d);
  }
  return r;
}

Poly Poly::at_zero(int var) const {
  Poly r(reg_);
  for (auto& [e, c] : terms_)
    if (e[var] == 0) r.terms_.emplace(e, c);
  return r;
}

int Poly::total_degree() const {
  int d = 0;
  for (auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

mpq_class Poly::eval(const std::vector<mpq_class>& point) const {
  mpq_class acc = 0;
  const int n = reg_->size();
  for (auto& [e, c] : terms_) {
    mpq_class t(c);
    for (int i = 0; i < n; ++i) {
      if (e[i] == 0) continue;
      mpq_class pw = point[i];
      for (int k = 1; k < e[i]; ++k) pw *= point[i];
      t *= pw;
    }
    acc += t;
  }
  return acc;
}

namespace {

// graded-lex: higher total degree first, then lexicographically larger
// exponent vector first (registry order).
bool graded_lex_before(const Expo& a, const Expo& b) {
  long da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  return a > b;
}

void render_term(std::ostream& os, const Registry& reg, const Expo& e,
                 const mpz_class& c, bool first) {
  mpz_class a = c < 0 ? mpz_class(-c) : c;
  if (!first)
    os << (c < 0 ? " - " : " + ");
  else if (c < 0)
    os << "-";
  bool has_var = std::any_of(e.begin(), e.end(), [](int x) { return x != 0; });
  if (a != 1 || !has_var) {
    os << a.get_str();
    if (has_var) os << "*";
  }
  bool firstv = true;
  for (int i = 0; i < reg.size(); ++i) {
    if (e[i] == 0) continue;
    if (!firstv) os << "*";
    firstv = false;
    os << reg.name(i);
    if (e[i] > 1) os << "^" << e[i];
  }
}

}  // namespace

std::string Poly::text() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Expo, mpz_class>*> order;
  order.reserve(terms_.size());
  for (auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(),
            [](auto* a, auto* b) { return graded_lex_before(a->first, b->first); });
  std::ostringstream os;
  bool first = true;
  for (auto* t : order) {
    render_term(os, *reg_, t->first, t->second, first);
    first = false;
  }
  return os.str();
}

// ------------------------------------------------------- multivariate gcd

namespace {

// leading term in plain lexicographic order (the map's last entry)
std::pair<Expo, mpz_class> lex_lead(const Poly& p) {
  auto it = std::prev(p.terms().end());
  return {it->first, it->second};
}

// coefficients of p viewed as univariate in `var`
std::map<int, Poly> univ_view(const Poly& p, int var) {
  std::map<int, Poly> out;
  const int n = p.reg()->size();
  for (auto& [e, c] : p.terms()) {
    Expo f = e;
    int d = f[var];
    f[var] = 0;
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, Poly(p.reg())).first;
    it->second.add_term(f, c);
  }
  (void)n;
  return out;
}

Poly univ_assemble(const RegistryPtr& reg, int var,
                   const std::map<int, Poly>& coeffs) {
  Poly out(reg);
  for (auto& [d, c] : coeffs)
    for (auto& [e, v] : c.terms()) {
      Expo f = e;
      f[var] += d;
      out.add_term(f, v);
    }
  return out;
}

int pick_main_var(const Poly& a, const Poly& b) {
  const int n = a.reg()->size();
  int best = -1, best_deg = INT_MAX;
  for (int v = 0; v < n; ++v) {
    int da = a.max_exponent(v), db = b.max_exponent(v);
    if (da == 0 && db == 0) continue;
    int d = std::max(da, db);
    if (d < best_deg) {
      best_deg = d;
      best = v;
    }
  }
  return best;
}

// pseudo-remainder of a by b in `var` (simple PRS step)
Poly pseudo_rem(Poly a, const Poly& b, int var) {
  const int db = b.max_exponent(var);
  auto bu = univ_view(b, var);
  const Poly& lb = bu.at(db);
  while (!a.is_zero() && a.max_exponent(var) >= db) {
    int da = a.max_exponent(var);
    auto au = univ_view(a, var);
    const Poly& la = au.at(da);
    // a := lb * a - la * x^{da-db} * b
    Poly shift_la(a.reg());
    for (auto& [e, c] : la.terms()) {
      Expo f = e;
      f[var] += da - db;
      shift_la.add_term(f, c);
    }
    a = lb * a - shift_la * b;
    if (!a.is_zero()) a = a.divide_content(a.content());
  }
  return a;
}

// probable-coprimality filter: reduce to univariate over a prime field at a
// random point; gcd degree zero there implies the true gcd has no content in
// the main variable (and skipping a possible cancellation stays exact anyway)
bool probably_coprime(const Poly& a, const Poly& b, int var) {
  static const long prime = 2147483629L;
  const int n = a.reg()->size();
  std::vector<long> point(n);
  unsigned long seed = 0x9e3779b97f4a7c15ULL;
  for (int i = 0; i < n; ++i) {
    seed ^= seed << 13;
    seed ^= seed >> 7;
    seed ^= seed << 17;
    point[i] = 2 + static_cast<long>(seed % 1021);
  }
  auto reduce = [&](const Poly& p) {
    std::map<int, long> u;
    for (auto& [e, c] : p.terms()) {
      long val = static_cast<long>(mpz_fdiv_ui(c.get_mpz_t(), prime));
      for (int i = 0; i < n; ++i) {
        if (i == var || e[i] == 0) continue;
        long pw = 1, base = point[i] % prime;
        for (int k = 0; k < e[i]; ++k) pw = (pw * base) % prime;
        val = static_cast<long>((static_cast<__int128>(val) * pw) % prime);
      }
      u[e[var]] = (u[e[var]] + val) % prime;
    }
    std::vector<long> coeffs;
    int deg = u.empty() ? 0 : u.rbegin()->first;
    coeffs.assign(deg + 1, 0);
    for (auto& [d, v] : u) coeffs[d] = v;
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return coeffs;
  };
  auto ua = reduce(a);
  auto ub = reduce(b);
  if (ua.empty() || ub.empty()) return false;  // unlucky point, do the work
  auto mod_inv = [&](long x) {
    long r = 1, e = prime - 2, base = x % prime;
    while (e) {
      if (e & 1) r = static_cast<long>((static_cast<__int128>(r) * base) % prime);
      base = static_cast<long>((static_cast<__int128>(base) * base) % prime);
      e >>= 1;
    }
    return r;
  };
  while (!ub.empty()) {
    // ua mod ub
    if (ua.size() < ub.size()) std::swap(ua, ub);
    if (ub.empty()) break;
    long inv = mod_inv(ub.back());
    while (ua.size() >= ub.size() && !ua.empty()) {
      long f = static_cast<long>(
          (static_cast<__int128>(ua.back()) * inv) % prime);
      size_t off = ua.size() - ub.size();
      for (size_t i = 0; i < ub.size(); ++i) {
        ua[off + i] =
            ((ua[off + i] -
              static_cast<long>((static_cast<__int128>(f) * ub[i]) % prime)) %
                 prime +
             prime) %
            prime;
      }
      while (!ua.empty() && ua.back() == 0) ua.pop_back();
    }
    std::swap(ua, ub);
  }
  return ua.size() <= 1;  // constant gcd image
}

}  // namespace

Poly poly_divexact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  Poly rem = a;
  Poly quot(a.reg());
  auto [lbe, lbc] = lex_lead(b);
  const int n = a.reg()->size();
  while (!rem.is_zero()) {
    auto [lre, lrc] = lex_lead(rem);
    Expo qe(n);
    for (int i = 0; i < n; ++i) {
      qe[i] = lre[i] - lbe[i];
      if (qe[i] < 0) throw Error("inexact polynomial division");
    }
    mpz_class qc, r;
    mpz_fdiv_qr(qc.get_mpz_t(), r.get_mpz_t(), lrc.get_mpz_t(),
                lbc.get_mpz_t());
    if (r != 0) throw Error("inexact polynomial division");
    Poly q1(a.reg());
    q1.add_term(qe, qc);
    quot = quot + q1;
    rem = rem - q1 * b;
  }
  return quot;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  const RegistryPtr& reg = a.reg();
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  // integer content first
  mpz_class ca = a.content(), cb = b.content();
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  Poly pa = a.divide_content(ca);
  Poly pb = b.divide_content(cb);
  int var = pick_main_var(pa, pb);
  if (var < 0) return Poly::constant(reg, cg);  // both constant
  if (pa.max_exponent(var) == 0 || pb.max_exponent(var) == 0) {
    // one of them is free of every variable only when constant, otherwise
    // recurse through the content of the other
    if (pa.is_constant() || pb.is_constant()) return Poly::constant(reg, cg);
  }
  if (probably_coprime(pa, pb, var)) return Poly::constant(reg, cg);
  // contents in var (polynomials in the remaining variables)
  auto content_of = [&](const Poly& p) {
    Poly c(reg);
    for (auto& [d, coef] : univ_view(p, var)) c = poly_gcd(c, coef);
    return c;
  };
  Poly conta = content_of(pa);
  Poly contb = content_of(pb);
  Poly prim_a = poly_divexact(pa, conta);
  Poly prim_b = poly_divexact(pb, contb);
  Poly cont_gcd = poly_gcd(conta, contb);
  // primitive PRS
  Poly r0 = prim_a, r1 = prim_b;
  if (r0.max_exponent(var) < r1.max_exponent(var)) std::swap(r0, r1);
  while (!r1.is_zero()) {
    Poly r = pseudo_rem(r0, r1, var);
    if (!r.is_zero()) {
      r = r.divide_content(r.content());
      Poly c = content_of(r);
      if (!c.is_constant()) r = poly_divexact(r, c);
    }
    r0 = std::move(r1);
    r1 = std::move(r);
  }
  if (r0.max_exponent(var) == 0) return Poly::constant(reg, cg) * cont_gcd;
  Poly g = Poly::constant(reg, cg) * cont_gcd * r0;
  return g.divide_content(g.content());
}

Rat Rat::zero(RegistryPtr reg) {
  Rat r;
  r.reg_ = reg;
  r.num_ = Poly(reg);
  r.den_ = Poly::constant(reg, 1);
  return r;
}

Rat Rat::one(RegistryPtr reg) { return integer(std::move(reg), 1); }

Rat Rat::integer(RegistryPtr reg, long v) {
  Rat r = zero(reg);
  r.num_ = Poly::constant(reg, v);
  return r;
}

Rat Rat::rational(RegistryPtr reg, const mpq_class& v) {
  Rat r = zero(reg);
  r.num_ = Poly::constant(reg, v.get_num());
  r.den_ = Poly::constant(reg, v.get_den());
  r.normalize();
  return r;
}

Rat Rat::variable(RegistryPtr reg, const std::string& name, int power) {
  int idx = reg->index_checked(name);
  Rat r = zero(reg);
  if (power >= 0) {
    r.num_ = Poly::variable(reg, idx, power);
  } else {
    r.num_ = Poly::constant(reg, 1);
    r.den_ = Poly::variable(reg, idx, -power);
  }
  return r;
}

Rat Rat::from_poly(Poly num) {
  Rat r;
  r.reg_ = num.reg();
  r.den_ = Poly::constant(r.reg_, 1);
  r.num_ = std::move(num);
  r.normalize();
  return r;
}

Rat Rat::from_quotient(Poly num, Poly den) {
  Rat r;
  r.reg_ = num.reg();
  r.num_ = std::move(num);
  r.den_ = std::move(den);
  r.normalize();
  return r;
}

bool Rat::is_one() const { return bound() ? num_ == den_ : uc_ == 1; }

Rat Rat::lifted(const RegistryPtr& reg) const {
  return bound() ? *this : Rat::rational(reg, uc_);
}

void Rat::normalize() {
  if (den_.is_zero()) throw Error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(reg_, 1);
    return;
  }
  if (num_.terms().size() > 1 && den_.terms().size() > 1) {
    Poly g = poly_gcd(num_, den_);
    if (!g.is_constant()) {
      num_ = poly_divexact(num_, g);
      den_ = poly_divexact(den_, g);
    }
  }
  // strip common monomial factor
  const int n = reg_->size();
  Expo shift(n, 0);
  bool any = false;
  for (int i = 0; i < n; ++i) {
    int m = std::min(num_.min_exponent(i), den_.min_exponent(i));
    if (m > 0) {
      shift[i] = -m;
      any = true;
    }
  }
  if (any) {
    num_ = num_.shifted(shift);
    den_ = den_.shifted(shift);
  }
  // strip integer content
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), num_.content().get_mpz_t(), den_.content().get_mpz_t());
  if (g > 1) {
    num_ = num_.divide_content(g);
    den_ = den_.divide_content(g);
  }
  // leading denominator coefficient positive (graded-lex leading term)
  const std::pair<const Expo, mpz_class>* lead = nullptr;
  for (auto& t : den_.terms())
    if (!lead || graded_lex_before(t.first, lead->first)) lead = &t;
  if (lead && lead->second < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

void Rat::require_same(const Rat& a, const Rat& b) {
  if (a.reg_ != b.reg_ && !a.reg_->same_names(*b.reg_))
    throw Error("registry mismatch");
}

Rat Rat::operator-() const {
  Rat r = *this;
  if (!bound()) {
    r.uc_ = -r.uc_;
    return r;
  }
  r.num_ = -r.num_;
  return r;
}

Rat Rat::operator+(const Rat& o) const {
  if (!bound() && !o.bound()) {
    Rat r;
    r.uc_ = uc_ + o.uc_;
    return r;
  }
  if (!bound()) return lifted(o.reg_) + o;
  if (!o.bound()) return *this + o.lifted(reg_);
  require_same(*this, o);
  Rat r;
  r.reg_ = reg_;
  if (den_ == o.den_) {
    r.num_ = num_ + o.num_;
    r.den_ = den_;
  } else {
    r.num_ = num_ * o.den_ + o.num_ * den_;
    r.den_ = den_ * o.den_;
  }
  r.normalize();
  return r;
}

Rat Rat::operator-(const Rat& o) const { return *this + (-o); }

Rat Rat::operator*(const Rat& o) const {
  if (!bound() && !o.bound()) {
    Rat r;
    r.uc_ = uc_ * o.uc_;
    return r;
  }
  if (!bound()) return lifted(o.reg_) * o;
  if (!o.bound()) return *this * o.lifted(reg_);
  require_same(*this, o);
  Rat r;
  r.reg_ = reg_;
  // cheap structural cancellations keep chained products small
  if (num_ == o.den_ && !num_.is_zero()) {
    r.num_ = o.num_;
    r.den_ = den_;
  } else if (o.num_ == den_ && !den_.is_constant()) {
    r.num_ = num_;
    r.den_ = o.den_;
  } else {
    r.num_ = num_ * o.num_;
    r.den_ = den_ * o.den_;
  }
  r.normalize();
  return r;
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw Error("division by zero");
  if (!bound() && !o.bound()) {
    Rat r;
    r.uc_ = uc_ / o.uc_;
    return r;
  }
  if (!bound()) return lifted(o.reg_) / o;
  if (!o.bound()) return *this / o.lifted(reg_);
  require_same(*this, o);
  Rat r;
  r.reg_ = reg_;
  r.num_ = num_ * o.den_;
  r.den_ = den_ * o.num_;
  r.normalize();
  return r;
}

Rat Rat::pow(long e) const {
  if (!bound()) {
    if (uc_ == 0 && e <= 0) throw Error("zero to a non-positive power");
    Rat r;
    r.uc_ = 1;
    mpq_class b = e < 0 ? mpq_class(1 / uc_) : uc_;
    for (long k = 0; k < (e < 0 ? -e : e); ++k) r.uc_ *= b;
    return r;
  }
  Rat base = *this;
  if (e < 0) {
    base = one(reg_) / base;
    e = -e;
  }
  Rat acc = one(reg_);
  while (e > 0) {
    if (e & 1) acc *= base;
    base = (e >>= 1) ? base * base : base;
  }
  return acc;
}

bool Rat::eq_exact(const Rat& o) const {
  if (!bound() && !o.bound()) return uc_ == o.uc_;
  if (!bound()) return lifted(o.reg_).eq_exact(o);
  if (!o.bound()) return eq_exact(o.lifted(reg_));
  require_same(*this, o);
  return num_ * o.den_ == o.num_ * den_;
}

bool Rat::eq(const Rat& o, bool fingerprint_first, int points) const {
  if (!bound() || !o.bound()) return eq_exact(o);
  if (fingerprint_first) {
    PointSampler sampler;
    int agreed = 0;
    int attempts = 0;
    while (agreed < points && attempts < 8 * points) {
      ++attempts;
      auto pt = sampler.sample(reg_->size());
      if (den_.eval(pt) == 0 || o.den_.eval(pt) == 0) continue;
      mpq_class lhs = num_.eval(pt) * o.den_.eval(pt);
      mpq_class rhs = o.num_.eval(pt) * den_.eval(pt);
      if (lhs != rhs) return false;
      ++agreed;
    }
  }
  return eq_exact(o);
}

LimitResult Rat::limit_at_zero(const std::string& var) const {
  LimitResult res;
  if (!bound() || num_.is_zero()) {
    res.value = *this;
    return res;
  }
  int v = reg_->index_checked(var);
  int a = num_.min_exponent(v);
  int b = den_.min_exponent(v);
  if (a < b) {
    res.pole = true;
    res.pole_order = b - a;
    return res;
  }
  Expo shift(reg_->size(), 0);
  shift[v] = -b;
  Poly n2 = num_.shifted(shift);
  Poly d2 = den_.shifted(shift);
  // remaining var-power in the numerator cofactor beyond the denominator's
  n2 = n2.at_zero(v);  // keeps terms with exponent exactly b-a... see below
  // after shifting by -b, numerator terms carry exponent >= a-b >= 0; the
  // limit keeps only exponent-0 terms (zero when a > b)
  d2 = d2.at_zero(v);
  res.value = from_quotient(std::move(n2), std::move(d2));
  return res;
}

Rat Rat::limit_at_zero_checked(const std::string& var) const {
  LimitResult r = limit_at_zero(var);
  if (r.pole)
    throw Error("pole of order " + std::to_string(r.pole_order) + " at " + var +
                "=0");
  return *r.value;
}

Rat Rat::substitute(const std::map<std::string, Rat>& bindings,
                    const RegistryPtr& target) const {
  if (!bound()) return *this;
  // values resolved lazily so untouched source variables need not exist in
  // the target registry unless they actually occur
  std::vector<std::optional<Rat>> vals(reg_->size());
  auto value_of = [&](int i) -> const Rat& {
    if (!vals[i]) {
      auto it = bindings.find(reg_->name(i));
      if (it != bindings.end()) {
        if (it->second.bound() && it->second.reg() != target &&
            !it->second.reg()->same_names(*target))
          throw Error("binding registry mismatch for " + reg_->name(i));
        vals[i] = it->second;
      } else {
        vals[i] = Rat::variable(target, reg_->name(i));
      }
    }
    return *vals[i];
  };
  auto eval_poly = [&](const Poly& p) {
    Rat acc = Rat::zero(target);
    for (auto& [e, c] : p.terms()) {
      Rat term = Rat::rational(target, mpq_class(c));
      for (int i = 0; i < reg_->size(); ++i)
        if (e[i] != 0) term *= value_of(i).pow(e[i]);
      acc += term;
    }
    return acc;
  };
  Rat n = eval_poly(num_);
  Rat d = eval_poly(den_);
  if (d.is_zero()) throw Error("substitution produced zero denominator");
  return n / d;
}

Rat Rat::substitute(const std::map<std::string, Rat>& bindings) const {
  return substitute(bindings, reg_);
}

Rat Rat::even_power_rewrite(const std::string& var,
                            const std::string& other) const {
  if (!bound()) return *this;
  int v = reg_->index_checked(var);
  int o = reg_->index_checked(other);
  auto rewrite = [&](const Poly& p) {
    Poly r(reg_);
    for (auto& [e, c] : p.terms()) {
      if (e[v] % 2 != 0) throw Error("odd power of " + var + " in rewrite");
      Expo f = e;
      f[o] += f[v] / 2;
      f[v] = 0;
      r.add_term(f, c);
    }
    return r;
  };
  return from_quotient(rewrite(num_), rewrite(den_));
}

std::optional<mpq_class> Rat::eval(const std::vector<mpq_class>& point) const {
  if (!bound()) return uc_;
  mpq_class d = den_.eval(point);
  if (d == 0) return std::nullopt;
  return mpq_class(num_.eval(point) / d);
}

std::string Rat::text() const {
  if (!bound()) return uc_.get_str();
  if (den_.is_constant()) {
    if (den_.terms().begin()->second == 1) return num_.text();
  }
  return "(" + num_.text() + ")/(" + den_.text() + ")";
}

// ---------------------------------------------------------------- parsing

namespace {

struct Parser {
  const RegistryPtr& reg;
  const std::string& s;
  size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }

  Rat expr() {
    Rat r = term();
    for (;;) {
      if (eat('+'))
        r += term();
      else if (eat('-'))
        r -= term();
      else
        return r;
    }
  }

  Rat term() {
    Rat r = power();
    for (;;) {
      if (eat('*'))
        r *= power();
      else if (eat('/'))
        r /= power();
      else
        return r;
    }
  }

  Rat power() {
    Rat b = atom();
    if (eat('^')) {
      skip();
      bool neg = eat('-');
      long e = parse_int();
      return b.pow(neg ? -e : e);
    }
    return b;
  }

  long parse_int() {
    skip();
    size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) throw Error("expected integer at position " + std::to_string(i));
    return std::stol(s.substr(start, i - start));
  }

  Rat atom() {
    skip();
    if (eat('(')) {
      Rat r = expr();
      if (!eat(')')) throw Error("missing )");
      return r;
    }
    if (eat('-')) return -atom();
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      size_t start = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      mpz_class v(s.substr(start, i - start));
      return Rat::rational(reg, mpq_class(v));
    }
    // identifier
    size_t start = i;
    while (i < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_'))
      ++i;
    if (start == i) throw Error("parse error at position " + std::to_string(i));
    return Rat::variable(reg, s.substr(start, i - start));
  }
};

}  // namespace

Rat parse_rat(const RegistryPtr& reg, const std::string& text) {
  Parser p{reg, text};
  Rat r = p.expr();
  p.skip();
  if (p.i != text.size()) throw Error("trailing input in expression: " + text);
  return r;
}

PointSampler::PointSampler(unsigned long seed) : state_(seed ? seed : 1) {}

unsigned long PointSampler::next() {
  // xorshift64
  state_ ^= state_ << 13;
  state_ ^= state_ >> 7;
  state_ ^= state_ << 17;
  return state_;
}

std::vector<mpq_class> PointSampler::sample(int nvars) {
  std::vector<mpq_class> pt;
  pt.reserve(nvars);
  for (int i = 0; i < nvars; ++i) {
    long num = 2 + static_cast<long>(next() % 96);  // [2,97]
    long den = 2 + static_cast<long>(next() % 96);
    pt.emplace_back(num, den);
    pt.back().canonicalize();
  }
  return pt;
}

}  // namespace qvir
