#ifndef QVIR_NEKRASOV_HPP
#define QVIR_NEKRASOV_HPP

#include <vector>

#include "qvir/partition.hpp"
#include "qvir/rational.hpp"

namespace qvir {

// Product-form rational value: prefactor * prod poly_i^{e_i}. Keeping the
// binomial factors unexpanded makes the instanton sums and their q -> 0
// limits cheap; only the final common-denominator sum expands anything.
class FactoredRat {
 public:
  explicit FactoredRat(RegistryPtr reg);
  static FactoredRat from_rat(Rat r);

  const RegistryPtr& reg() const { return reg_; }
  void mul_rat(const Rat& r);
  void mul_poly(const Poly& p, int power);
  // (a + b)^power with a, b monomial rational functions
  void mul_binomial(const Rat& a, const Rat& b, int power);
  FactoredRat operator*(const FactoredRat& o) const;
  FactoredRat inverse() const;
  // substitution applied to the prefactor and each factor; the factors must
  // stay polynomial up to a monomial, which a monomial binding guarantees
  FactoredRat substituted(const std::map<std::string, Rat>& bindings) const;

  Rat expand() const;
  // valuation in `var` = min-exponent of the prefactor plus the factor
  // valuations; limit keeps the cofactors at var = 0
  int valuation(const std::string& var) const;
  LimitResult limit_at_zero(const std::string& var) const;

  // exact sum over a factored common denominator
  static Rat sum(const std::vector<FactoredRat>& terms);

 private:
  RegistryPtr reg_;
  Rat pref_;
  std::vector<std::pair<Poly, int>> factors_;  // sorted by Poly
  void push(const Poly& p, int power);
};

// 5d Nekrasov factor N_{la mu}(Q); Q is any value over the registry (which
// must carry q and t).
Rat nekrasov_n(const RegistryPtr& reg, const Partition& la, const Partition& mu,
               const Rat& Q);
FactoredRat nekrasov_n_factored(const RegistryPtr& reg, const Partition& la,
                                const Partition& mu, const Rat& Q);

// crystal limit lim q^{n(mu')} N_{la mu}((q/t) Q), in closed form
Rat nekrasov_ntilde(const RegistryPtr& reg, const Partition& la,
                    const Partition& mu, const Rat& Q);

// E_{la mu} = 2(sum_la j + sum_mu j - |la| - |mu|): the q valuation of the
// renormalized pure partition-sum term
long e_exponent(const Partition& la, const Partition& mu);

// coefficient of L^{4n} of the pure instanton sum, n = 0..order; the (t/q)^n
// from (L^4 t/q)^{|la|+|mu|} is kept inside the coefficient
std::vector<Rat> z_pure(const RegistryPtr& reg, int order);
// one term of the double sum, including its (t/q)^{|la|+|mu|}
FactoredRat z_pure_term(const RegistryPtr& reg, const Partition& la,
                        const Partition& mu);

// crystallized pure partition sum, coefficient of Lt^{4k}
std::vector<Rat> z_tilde_pure(const RegistryPtr& reg, int order);

// the residue antisymmetry witness Z^{(M)}_{(n,m)} from the Q-independence
// argument; requires m + M >= 0 and n - M >= 0
Rat z_residue_term(const RegistryPtr& reg, int n, int m, int M);

// N_f = 4 partition sum over pairs of partitions; coefficient of the n-th
// power of the expansion ratio u1 u2 z1/(w1 w2 z2)
std::vector<Rat> z_nf4(const RegistryPtr& reg, int order);
FactoredRat z_nf4_term(const RegistryPtr& reg, const PartitionTuple& tup);

struct ScaledExponents {
  int m1, m2, m3, m4;  // u_i = p^{-m_i} u_i', w_i = p^{-m_{i+2}} w_i'
  int a;               // v_i = p^{-a} v_i', both equal
  bool valid() const;  // m_i + 1 > a > m_{j+2}
};

// scaled-parameter limit: substitute, take q -> 0 termwise (pole = error),
// and require that every surviving term has la = ((1^n), (1^m))
std::vector<Rat> z_nf4_scaled_limit(const RegistryPtr& reg, int order,
                                    const ScaledExponents& e);

}  // namespace qvir

#endif
