#ifndef QVIR_CHECKS_HPP
#define QVIR_CHECKS_HPP

#include "qvir/fock.hpp"

namespace qvir {

// Which commutation relation to verify.
enum class RelPair { TT, X1X1, X1X2, X2X2 };

struct AlgebraFamilies {
  FamilyPtr t;        // deformed Virasoro
  FamilyPtr x1, x2;   // arity-2 generators
  bool crystal = false;
};

AlgebraFamilies dvir_algebra(const RegistryPtr& reg, bool crystal);
AlgebraFamilies dim_algebra(const RegistryPtr& reg, bool crystal);

// Verifies [A_n, A_m] = RHS on every canonical basis vector of the level.
// The infinite sums truncate by the grading; beyond the cutoff, `tail` more
// terms are asserted to act as zero (an error reports a cutoff too small).
// Returns false with a diagnostic when the relation fails.
bool commutator_holds(const AlgebraFamilies& a, RelPair pair, int n, int m,
                      int level, int tail, std::string* detail = nullptr);

// structure constants f_l of exp(sum_n c_n z^n), via the logarithmic
// derivative recursion
std::vector<Rat> exp_series(const std::function<Rat(int)>& c, int order,
                            const RegistryPtr& reg);

}  // namespace qvir

#endif
