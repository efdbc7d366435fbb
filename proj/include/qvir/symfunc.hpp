#ifndef QVIR_SYMFUNC_HPP
#define QVIR_SYMFUNC_HPP

#include <map>

#include "qvir/partition.hpp"
#include "qvir/rational.hpp"

namespace qvir {

// Symmetric function stored in the power-sum basis: a finite map from
// partitions to coefficients of p_lambda = prod_k p_{lambda_k}.
class SymFunc {
 public:
  SymFunc() = default;
  explicit SymFunc(RegistryPtr reg) : reg_(std::move(reg)) {}

  static SymFunc zero(RegistryPtr reg) { return SymFunc(std::move(reg)); }
  static SymFunc one(RegistryPtr reg);
  static SymFunc power_sum(RegistryPtr reg, const Partition& la);

  const RegistryPtr& reg() const { return reg_; }
  const std::map<Partition, Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const;

  void add_coeff(const Partition& la, const Rat& v);
  Rat coeff(const Partition& la) const;

  SymFunc operator+(const SymFunc& o) const;
  SymFunc operator-(const SymFunc& o) const;
  SymFunc operator*(const SymFunc& o) const;  // product in the p-basis
  SymFunc scaled(const Rat& s) const;

  // p_n -> -p_n for every n.
  SymFunc negate_power_sums() const;
  // partial derivative with respect to p_m (p's treated as free variables)
  SymFunc d_power_sum(int m) const;

  bool eq(const SymFunc& o, bool fingerprint_first = true) const;

  std::string text() const;  // sorted partition keys

 private:
  RegistryPtr reg_;
  std::map<Partition, Rat> c_;
};

// m_lambda expanded over power sums (rational constants, cached globally).
SymFunc monomial_sym(RegistryPtr reg, const Partition& la);
// e_k over power sums: coefficient extraction from exp(-sum (-z)^n p_n / n).
SymFunc elementary_sym(RegistryPtr reg, int k);

// Change of basis. to: coefficients of m_mu; from: the inverse map.
std::map<Partition, Rat> to_monomial_basis(const SymFunc& f);
SymFunc from_monomial_basis(RegistryPtr reg, const std::map<Partition, Rat>& m);

// <p_la, p_mu>_{q,t} = z_la prod (1-q^{la_k})/(1-t^{la_k}) delta; bilinear.
// q and t are passed as values, so (0, t) and (q, 1/t) fall out of one code
// path.
Rat inner_qt(const SymFunc& f, const SymFunc& g, const Rat& q, const Rat& t);

// Macdonald functions P_lambda(q,t), unitriangular over m in dominance order,
// mutually orthogonal under <,>_{q,t}. One table per (q,t) argument pair.
class MacdonaldTable {
 public:
  MacdonaldTable(RegistryPtr reg, Rat q, Rat t);
  const SymFunc& P(const Partition& la);
  Rat norm(const Partition& la);  // <P_la, P_la>_{q,t}

  const Rat& q() const { return q_; }
  const Rat& t() const { return t_; }

 private:
  RegistryPtr reg_;
  Rat q_, t_;
  std::map<Partition, SymFunc> cache_;
  std::map<Partition, Rat> norms_;
};

// Mode of a normal-ordered exponential on the polynomial realization
// p_n * and d/dp_n: picks the z^{-mode} coefficient of
// exp(sum cre(m) p_m z^m) exp(sum der(m) d/dp_m z^{-m}). Exact at fixed
// degree. The Jing operators and the degree-preserving diagonalizer of the
// Macdonald construction are both instances.
SymFunc vertex_mode_apply(int mode, const SymFunc& f,
                          const std::function<Rat(int)>& cre,
                          const std::function<Rat(int)>& der);

// Jing operator modes: b_{-n} = p_n, b_n = n/(1-t^n) d/dp_n.
SymFunc jing_apply(int mode, const SymFunc& f, const Rat& t, bool dagger);

// Q_lambda(t) = b_lambda(t) P_lambda(0,t), built as H_{-la_1} H_{-la_2}...1.
SymFunc hall_littlewood_q(RegistryPtr reg, const Partition& la, const Rat& t);

// p_n := (1-r^n)/(1-t^n).
Rat principal_specialize(const SymFunc& f, const Rat& r, const Rat& t);

// <Q_la(-p;t), Q_mu(p;t)>_{0,t}.
Rat hl_pairing_signed(RegistryPtr reg, const Partition& la, const Partition& mu,
                      const Rat& t);

}  // namespace qvir

#endif
