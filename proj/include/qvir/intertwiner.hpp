#ifndef QVIR_INTERTWINER_HPP
#define QVIR_INTERTWINER_HPP

#include "qvir/fock.hpp"
#include "qvir/gmac.hpp"

namespace qvir {

// Explicit one-boson vertex operator F_u -> F_v. The generic form is the
// known exponential; the crystal form is its q -> 0 limit at argument p z and
// must agree with that limit coefficientwise.
VertexSpec phi_n1_spec(const RegistryPtr& reg, bool crystal,
                       const std::string& uname = "u",
                       const std::string& vname = "v");

// <K_la| Phi(x) |K_mu> at the crystal point, one boson, by applying the
// explicit operator between the Hall-Littlewood integral forms. The power of
// the argument x is carried in the registry variable "x".
Rat n1_matrix_element_fock(const RegistryPtr& reg, const Partition& la,
                           const Partition& mu);
// the same matrix element through the contour kernel
Rat n1_matrix_element_contour(const RegistryPtr& reg, const Partition& la,
                              const Partition& mu);
// closed form of the kernel coefficient: Ntilde_{la mu}(v/u) x^{|la|-|mu|}
// u^{|la|} (-v)^{-|mu|} t^{|mu|+n(la)}
Rat n1_kernel_closed(const RegistryPtr& reg, const Partition& la,
                     const Partition& mu);
// prefactor linking the kernel coefficient to the matrix element
Rat n1_prefactor(const RegistryPtr& reg, const Partition& la,
                 const Partition& mu);

// --------------------------------------------------- the arity-2 operator

// The vertex operator F_u -> F_v defined by its exchange relations with the
// two generators. No free-field form exists; the operator is stored as its
// graded matrix elements, with the argument power w^{d'-d} implicit in the
// grading. The defining relations determine every block from the vacuum one,
// and the solver re-verifies a surplus of relation instances afterwards.
class Intertwiner {
 public:
  struct Config {
    FamilyPtr x1_src, x2_src;
    FamilyPtr x1_dst, x2_dst;
    bool crystal = false;
    int level = 2;
  };

  static Intertwiner solve(const Config& cfg);

  const Config& config() const { return cfg_; }
  int level() const { return cfg_.level; }

  // image of a source state, truncated to target levels <= level()
  FockState apply(const FockState& ket) const;
  // <v| Phi |ket>
  Rat vacuum_element(const FockState& ket) const;
  // <bra| Phi |ket> for a target-module mirror bra
  Rat element(const FockState& bra_mirror, const FockState& ket) const;

  // residual check over all relation instances |n| <= level + extra;
  // returns the number of violated graded components
  int residual_violations(int extra) const;

  // nullity of the assembled homogeneous linear system on blocks up to
  // `cap` (expected: exactly 1, the overall scale)
  int system_nullity(int cap) const;

 private:
  Config cfg_;
  Rat e2_;
  std::vector<std::vector<FockState>> img_;  // [ket level][basis index]
  FockState apply_level(const FockState& homogeneous) const;
};

// Lemma value <v|Phi(z)|X_{(empty,la)}>, z power stripped:
// (-1)^{l(la)} (v1 v2)^{-|la|} t^{-n(la)} prod_k (t^{k-1} v1 v2 - u1 u2)
Rat vac_pbw_element_closed(const RegistryPtr& reg, const Partition& la,
                           const std::string& u1, const std::string& u2,
                           const std::string& v1, const std::string& v2);

// ----------------------------------------------------------- correlators

enum class FourPointMethod { pbw, closed, aflt };

// coefficients of (u1 u2 z1 / (w1 w2 z2))^n of <w|Phi(z2)Phi(z1)|u> for
// n = 0..order
std::vector<Rat> four_point(const RegistryPtr& reg, int order,
                            FourPointMethod method);

// one closed-form term: prod_k (1 - t^{k-1} w1w2/(v1v2)) / (t^{2n(la)}
// b_la(1/t))
Rat four_point_closed_term(const RegistryPtr& reg, const Partition& la);

// ------------------------------------------------- factorization checks

struct FactorizationCheck {
  Partition la;
  bool identity_holds = false;
  bool ratio_only = false;  // the interleaving sum depends только on w1w2/(v1v2)
};
FactorizationCheck strange_factorization_check(const RegistryPtr& reg,
                                               const Partition& la);

// summed comparison at order n: interleaving sums against the closed terms
bool summed_comparison_check(const RegistryPtr& reg, int n);

// the AFLT-side summand of the comparison for one pair of partitions
Rat comparison_lhs_term(const RegistryPtr& reg, const PartitionTuple& pair);

}  // namespace qvir

#endif
