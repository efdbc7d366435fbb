#ifndef QVIR_RATIONAL_HPP
#define QVIR_RATIONAL_HPP

#include <gmpxx.h>

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qvir {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered set of variable names. The order is fixed for the lifetime of a
// computation; canonical monomial order and all text output depend on it.
class Registry {
 public:
  explicit Registry(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int i) const { return names_.at(i); }
  int index(const std::string& n) const;        // -1 if absent
  int index_checked(const std::string& n) const;  // throws if absent
  bool same_names(const Registry& other) const { return names_ == other.names_; }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

using RegistryPtr = std::shared_ptr<const Registry>;

RegistryPtr make_registry(std::vector<std::string> names);

// Exponent vector, one entry per registry variable, all entries >= 0.
using Expo = std::vector<int>;

// Sparse multivariate polynomial with integer coefficients.
// Invariant: no zero coefficients are stored.
class Poly {
 public:
  Poly() = default;
  explicit Poly(RegistryPtr reg) : reg_(std::move(reg)) {}

  static Poly constant(RegistryPtr reg, const mpz_class& c);
  static Poly variable(RegistryPtr reg, int idx, int power = 1);

  const RegistryPtr& reg() const { return reg_; }
  const std::map<Expo, mpz_class>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;

  void add_term(const Expo& e, const mpz_class& c);

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  bool operator==(const Poly& o) const { return terms_ == o.terms_; }
  bool operator<(const Poly& o) const { return terms_ < o.terms_; }

  // Multiply by c * x^e where e may not go below existing minimum exponents
  // when negative. Used for monomial normalization.
  Poly shifted(const Expo& shift, const mpz_class& c = 1) const;

  int min_exponent(int var) const;  // over all terms; 0 for the zero poly
  int max_exponent(int var) const;
  mpz_class content() const;  // gcd of coefficients, sign of leading term
  Poly divide_content(const mpz_class& c) const;

  // Substitute var := 0. Terms with positive exponent in var drop out.
  Poly at_zero(int var) const;

  int total_degree() const;

  mpq_class eval(const std::vector<mpq_class>& point) const;

  std::string text() const;  // canonical: graded-lex monomial order

 private:
  RegistryPtr reg_;
  std::map<Expo, mpz_class> terms_;
};

struct LimitResult;

// Exact rational function num/den over a registry. The representation is not
// fully reduced (no multivariate gcd); integer content and common monomial
// factors are always stripped, and the denominator's leading coefficient is
// positive. Equality is semantic, via cross-multiplication.
class Rat {
 public:
  // Registry-less constant. Mixed arithmetic lifts it into the other
  // operand's registry, which keeps generic code (Eigen kernels, sums started
  // from Rat()) independent of any particular registry.
  Rat() : uc_(0) {}
  Rat(int v) : uc_(v) {}  // NOLINT: implicit by design, Eigen uses Scalar(0)

  static Rat zero(RegistryPtr reg);
  static Rat one(RegistryPtr reg);
  static Rat integer(RegistryPtr reg, long v);
  static Rat rational(RegistryPtr reg, const mpq_class& v);
  static Rat variable(RegistryPtr reg, const std::string& name, int power = 1);
  static Rat from_poly(Poly num);
  static Rat from_quotient(Poly num, Poly den);

  bool bound() const { return static_cast<bool>(reg_); }
  const RegistryPtr& reg() const { return reg_; }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return bound() ? num_.is_zero() : uc_ == 0; }
  bool is_one() const;

  Rat operator-() const;
  Rat operator+(const Rat& o) const;
  Rat operator-(const Rat& o) const;
  Rat operator*(const Rat& o) const;
  Rat operator/(const Rat& o) const;  // throws Error on division by zero
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }

  Rat pow(long e) const;  // negative exponents allowed

  // structural equality (same representation); semantic equality is eq()
  bool operator==(const Rat& o) const {
    if (bound() != o.bound()) return false;
    return bound() ? num_ == o.num_ && den_ == o.den_ : uc_ == o.uc_;
  }
  bool operator!=(const Rat& o) const { return !(*this == o); }

  // Exact semantic equality: num(a)*den(b) - num(b)*den(a) == 0.
  bool eq_exact(const Rat& o) const;
  // Fast path: compares evaluations at random rational points first; a
  // disagreement is definitive, agreement at `points` samples falls back to
  // the exact check. Exactness is preserved either way.
  bool eq(const Rat& o, bool fingerprint_first = true, int points = 3) const;

  // Factor q^a from num and q^b from den; require a >= b; set q := 0 in the
  // cofactors. Reports a pole of order b-a otherwise.
  LimitResult limit_at_zero(const std::string& var) const;
  Rat limit_at_zero_checked(const std::string& var) const;  // throws on pole

  // Exact composition. Bindings map source-registry variable names to values
  // over `target`; unbound names must exist in `target` and map identically.
  Rat substitute(const std::map<std::string, Rat>& bindings,
                 const RegistryPtr& target) const;
  // Same-registry convenience.
  Rat substitute(const std::map<std::string, Rat>& bindings) const;

  // Rewrite var^(2k) -> other^k. Throws if any odd power of var remains.
  Rat even_power_rewrite(const std::string& var, const std::string& other) const;

  std::optional<mpq_class> eval(const std::vector<mpq_class>& point) const;

  std::string text() const;

 private:
  RegistryPtr reg_;
  Poly num_, den_;
  mpq_class uc_;  // value while unbound
  Rat lifted(const RegistryPtr& reg) const;
  void normalize();
  static void require_same(const Rat& a, const Rat& b);
};

inline Rat operator*(long s, const Rat& r) { return r * Rat::integer(r.reg(), s); }

// Result of a q->0 style limit attempt.
struct LimitResult {
  bool pole = false;
  int pole_order = 0;       // valid when pole
  std::optional<Rat> value;  // valid when !pole
};

// Expression parser: numbers, variables, + - * / ^ ( ). Accepts (a superset
// of) the canonical text form, so parse(render(x)) == x.
Rat parse_rat(const RegistryPtr& reg, const std::string& text);

// Multivariate gcd over the integers (primitive PRS with content recursion).
// Representations stay exact without it; it exists to keep iterated
// eliminations from snowballing, and normalize() calls it behind a cheap
// modular coprimality filter.
Poly poly_gcd(const Poly& a, const Poly& b);
// Exact division; throws when b does not divide a.
Poly poly_divexact(const Poly& a, const Poly& b);

// Deterministic sample points for fingerprint equality; numerators and
// denominators drawn from [2,97].
class PointSampler {
 public:
  explicit PointSampler(unsigned long seed = 0x5eed);
  std::vector<mpq_class> sample(int nvars);

 private:
  unsigned long state_;
  unsigned long next();
};

}  // namespace qvir

#endif
