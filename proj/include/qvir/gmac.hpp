#ifndef QVIR_GMAC_HPP
#define QVIR_GMAC_HPP

#include "qvir/fock.hpp"
#include "qvir/nekrasov.hpp"

namespace qvir {

// Eigendata of the constant mode of the first generator on a level, together
// with the transition and integral-form matrices. For generic parameters the
// table lives over (q,t,u_i); the crystal table is its q -> 0 limit in the
// Hall-Littlewood product basis.
struct GMacTable {
  RegistryPtr reg;
  int level = 0;
  int arity = 2;
  bool crystal = false;
  std::vector<PartitionTuple> tuples;  // canonical order, rows and columns

  RatMatrix c;                  // |P_la> over Macdonald/HL products, rows la
  RatMatrix c_star;             // dual side
  std::vector<Rat> eigenvalue;  // of the constant mode, per tuple
  std::vector<FockState> p_states;  // boson coordinates of |P_la>
  std::vector<FockState> p_bras;    // mirror coordinates of <P_la|

  // integral forms over the (scaled) PBW basis; alpha rows are normalized at
  // the (empty,...,empty,(1^n)) column
  RatMatrix alpha_scaled, beta;
  bool integral_filled = false;

  int index_of(const PartitionTuple& t) const;
  // the paper's normalization of the alpha table differs from the scaled one
  // by p^{|mu^(1)|} per column (generic N = 2 only)
  RatMatrix alpha_paper() const;
};

// Diagonalizes the constant mode in the Macdonald-product basis by a
// triangular solve; asserts triangularity and distinct linked eigenvalues.
GMacTable generalized_macdonald(const RegistryPtr& reg, int level, int N);

// Fills alpha/beta by expressing |P_la> over the PBW kets of the families.
void fill_integral_form(GMacTable& table, const std::vector<FamilyPtr>& fams);

// Generalized Hall-Littlewood table: entrywise q -> 0 limit of the generic
// table (the constant mode is too degenerate at q = 0 for a direct
// diagonalization). The eigenvector property is re-verified against the
// crystal generator, including the closed-form eigenvalues.
GMacTable crystal_generalized_hl(const RegistryPtr& reg, int level);

// closed-form crystal eigenvalue: sum_k u_k (1 + (1-t) sum_{i<=l(la^k)} t^-i)
Rat crystal_eigenvalue(const RegistryPtr& reg, const PartitionTuple& la);

// Crystal Shapovalov matrix of the scaled PBW vectors, computed by Wick
// pairing and by the Hall-Littlewood closed form (they must agree), plus the
// closed-form inverse (verified by multiplication).
struct ShapovalovPair {
  std::vector<PartitionTuple> tuples;
  RatMatrix s;
  RatMatrix s_inv;
};
ShapovalovPair crystal_shapovalov(const RegistryPtr& reg, int level);

// closed forms behind the pair
Rat shapovalov_closed(const RegistryPtr& reg, const PartitionTuple& la,
                      const PartitionTuple& mu);
Rat shapovalov_inverse_closed(const RegistryPtr& reg, const PartitionTuple& la,
                              const PartitionTuple& mu);

// -------------------------------------------------------------- the checks

struct TupleCheck {
  PartitionTuple tuple;
  bool holds = false;
};

// norm conjecture: <K_la|K_la> against the Nekrasov-factor product
std::vector<TupleCheck> norm_conjecture_check(const RegistryPtr& reg, int level,
                                              bool crystal);

// Macdonald inclusion check for the positive eta modes: expanding
// eta_n P_la(a_{-n})|u> only partitions contained in la may appear
struct EtaInclusionReport {
  Partition la;
  int mode;
  std::vector<Partition> violations;
};
std::vector<EtaInclusionReport> eta_inclusion_check(const RegistryPtr& reg,
                                                    int max_level);

}  // namespace qvir

#endif
