#ifndef QVIR_DVIR_HPP
#define QVIR_DVIR_HPP

#include "qvir/fock.hpp"

namespace qvir {

// Gram matrix B_{la mu} = <T_la | T_{-mu}> of the PBW vectors at a level, in
// the paper's normalization of the generators. Internally everything runs on
// the scaled generators; for the generic family the two differ by p^{level},
// which is unwound here.
RatMatrix kac_matrix(const FamilyPtr& t_fam, int level);

// Gram matrix of the scaled PBW vectors (what the solver actually uses).
RatMatrix kac_matrix_scaled(const FamilyPtr& t_fam, int level);

// Whittaker coefficients B^{(1^n),(1^n)} for n = 0..order (unscaled
// normalization, the coefficients of L^{4n} in <G|G>).
std::vector<Rat> whittaker_norm(const FamilyPtr& t_fam, int order);

struct WhittakerVector {
  // level-n components sum_la x_la T-scaled_{-la} |h>, with the power of the
  // expansion parameter kept implicit
  std::vector<FockState> components;
};

// Solves the defining linear systems level by level and verifies
// T_1 G_{n+1} = G_n and T_m G = 0 (m >= 2) on the computed range.
WhittakerVector whittaker_vector(const FamilyPtr& t_fam, int order);

}  // namespace qvir

#endif
