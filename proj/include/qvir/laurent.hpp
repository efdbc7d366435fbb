#ifndef QVIR_LAURENT_HPP
#define QVIR_LAURENT_HPP

#include <string>
#include <vector>

#include "qvir/partition.hpp"
#include "qvir/rational.hpp"

namespace qvir {

// Iterated formal-series residue engine. Symbols are ordered from largest to
// smallest modulus; a binomial factor is expandable whenever the ordering
// singles out a strictly dominant term. Integration symbols are eliminated by
// coefficient extraction, parameter symbols (such as the argument x sitting
// between the w and z contours) keep their position in the ordering and fold
// into the scalar result at the end.
struct ContourSpec {
  struct Term {
    Rat coeff;              // over the parameter registry
    std::vector<int> expo;  // one exponent per ordered symbol
  };
  struct Factor {
    Term a, b;  // the factor is (a + b)^power
    int power;  // +1 or -1
  };

  RegistryPtr reg;                   // parameter registry
  std::vector<std::string> symbols;  // largest modulus first
  std::vector<bool> integrate;      // per symbol
  std::vector<int> target;          // wanted exponent per integration symbol
  std::vector<Factor> factors;
  Term prefactor;                   // single monomial multiplier

  int symbol_index(const std::string& name) const;
  Term monomial(const Rat& c) const;  // exponent-free term
  // convenience builders
  void mul_prefactor(const Rat& c, const std::string& sym, int e);
  void add_factor(const Term& a, const Term& b, int power);
};

// Extracts the joint coefficient prod v^{target_v} over the integration
// symbols, eliminating them in the given order (indices into spec.symbols).
// Throws Error when a factor has no dominant term or an elimination step
// would need a two-sided expansion in its variable.
Rat contour_coefficient(const ContourSpec& spec,
                        const std::vector<int>& elimination_order);
// Default order: smallest symbol first.
Rat contour_coefficient(const ContourSpec& spec);

// ----------------------------------------------------------- the integrands

// F integrand: prod_i (1 - z w_i)^-1 prod_{i<j} (w_i-w_j)/(w_i-t w_j) with
// z^{-|la|} w^{-la} and contour |1/z| > |w_1| > ... > |w_l|.
ContourSpec f_spec(const RegistryPtr& reg, const Partition& la);

// G^k integrand: prod_i (z-w_i)/(t^{-k} z - t w_i) prod_{i<j} ... z^{|la|}
// w^{-la}, z largest.
ContourSpec gk_spec(const RegistryPtr& reg, const Partition& la, int k);

// Vertex-operator contraction integrands for the one-boson matrix elements;
// u, v, x are registry variables.
ContourSpec frak_f_spec(const RegistryPtr& reg, const Partition& la);
ContourSpec frak_g_spec(const RegistryPtr& reg, const Partition& mu);

// Full kernel for <K_la| Phi(x) |K_mu> at the crystal point: w-block, z-block,
// the cross factors (w_i - t z_j)/(w_i - z_j) and the x factors, with contour
// |w_l| > ... > |w_1| > |x| > |z_1| > ... > |z_m|.
ContourSpec n1_kernel_spec(const RegistryPtr& reg, const Partition& la,
                           const Partition& mu);

// --------------------------------------------------------------- oracles

enum class ContourOracle { F, Gk, frakF, frakG };

struct OracleParams {
  int k = 0;   // for Gk
  Rat u;       // for frakF / frakG (frakG also reads v, x from the registry)
};

// Closed-form values from the recursions, independent of the series engine.
Rat recursion_oracle(ContourOracle which, const RegistryPtr& reg,
                     const Partition& la, const OracleParams& params = {});

// The same values by the literal one-variable-at-a-time recursions.
Rat oracle_f_by_recursion(const RegistryPtr& reg, const Partition& la);
Rat oracle_gk_by_recursion(const RegistryPtr& reg, const Partition& la, int k);

}  // namespace qvir

#endif
