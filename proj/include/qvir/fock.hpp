#ifndef QVIR_FOCK_HPP
#define QVIR_FOCK_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "qvir/matrix.hpp"
#include "qvir/partition.hpp"
#include "qvir/symfunc.hpp"

namespace qvir {

// Graded Fock module over N bosons. The normalization tag selects the bracket
// [a_n, a_{-n}] = n (1-q^n)/(1-t^n) (generic) or n/(1-t^n) (crystal).
struct FockWeights {
  RegistryPtr reg;
  int N = 1;
  std::vector<Rat> u;  // highest-weight values per species
  bool crystal = false;

  Rat bracket(int n) const;  // n >= 1
  bool compatible(const FockWeights& o) const;
};

// Element of the module: finite map from boson monomials (indexed by
// partition tuples) to coefficients, over prod_i a^(i)_{-la^(i)} |u>.
class FockState {
 public:
  FockState() = default;
  explicit FockState(FockWeights w) : w_(std::move(w)) {}
  static FockState vacuum(FockWeights w);

  const FockWeights& weights() const { return w_; }
  const std::map<PartitionTuple, Rat>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int max_level() const;

  void add(const PartitionTuple& nu, const Rat& v);
  Rat coeff(const PartitionTuple& nu) const;
  FockState operator+(const FockState& o) const;
  FockState operator-(const FockState& o) const;
  FockState scaled(const Rat& s) const;
  FockState level_component(int d) const;

  // coefficient-wise q -> 0; throws on a pole
  FockState limit_q_to_zero(const FockWeights& crystal_weights) const;

  bool eq(const FockState& o, bool fingerprint_first = true) const;
  std::string text() const;

 private:
  FockWeights w_;
  std::map<PartitionTuple, Rat> c_;
};

// Gram value of a monomial basis vector under the module pairing.
Rat gram_value(const FockWeights& w, const PartitionTuple& nu);

// Wick pairing <bra|ket>. The bra is stored in mirror coordinates: the
// functional with <mirror e_nu | e_mu> = G_nu delta. Dual PBW vectors are
// built by right-action of modes on such mirrors.
Rat pairing(const FockState& bra_mirror, const FockState& ket);

// Normal-ordered exponential operator datum. Coefficient callbacks take the
// species (0-based) and the mode m >= 1.
struct VertexSpec {
  std::function<Rat(int species, int m)> cre;
  std::function<Rat(int species, int m)> ann;
  Rat zero_mode;                        // scalar on the source module
  std::optional<FockWeights> target;    // set for intertwining operators
};

// z-mode n of the spec applied to a state: the annihilation exponential is
// commuted through the creation monomials with the module bracket, the
// z-coefficient is extracted, and the zero mode multiplies in.
FockState apply_spec_mode(const FockWeights& w, const VertexSpec& spec, int n,
                          const FockState& s);

// The whole operator at argument x (a registry variable): sum over modes with
// the x-power folded into coefficients, truncated to output levels <= cap.
FockState apply_spec_whole(const FockWeights& w, const VertexSpec& spec,
                           const std::string& xvar, int level_cap,
                           const FockState& s);

// Mode family with per-mode scalar gates (step functions of n for the
// crystal generators, integer powers of p for the scaled generic ones).
class OperatorFamily {
 public:
  struct Term {
    std::function<Rat(int n)> gate;
    VertexSpec spec;
  };

  OperatorFamily(std::string name, FockWeights w, std::vector<Term> terms);

  const std::string& name() const { return name_; }
  const FockWeights& weights() const { return w_; }

  FockState apply(int n, const FockState& s) const;
  // right action on a bra mirror: (phi . Op_n) as a mirror state
  FockState apply_bra(int n, const FockState& bra_mirror) const;

  // matrix of mode n from the canonical basis at level_from (cached)
  std::shared_ptr<const RatMatrix> matrix(int n, int level_from) const;

 private:
  std::string name_;
  FockWeights w_;
  std::vector<Term> terms_;
  mutable std::mutex mu_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<const RatMatrix>> cache_;
};

using FamilyPtr = std::shared_ptr<const OperatorFamily>;

// ------------------------------------------------------------- the algebras

// Deformed Virasoro generators over one boson with weight k, in the scaled
// normalization p^{|n|/2} T_n that keeps every stored coefficient an integer
// power of q and t. The crystal family is its entrywise q -> 0 limit.
FamilyPtr t_family(const RegistryPtr& reg, bool crystal);

// First DIM generator, arity N in {1,2,3}; N <= 2 use the scaled
// normalization (p^{|n|/2} X^(1)_n for N = 2). The N = 3 family is kept in
// the integer A-normalization and is meant for the constant mode only.
// `names` overrides the weight variables (default u1..uN).
FamilyPtr x1_family(const RegistryPtr& reg, int N, bool crystal,
                    const std::vector<std::string>& names = {});

// Second DIM generator for N = 2, scaled as p^{n/2} X^(2)_n.
FamilyPtr x2_family(const RegistryPtr& reg, bool crystal,
                    const std::vector<std::string>& names = {});

// eta vertex operator on one species of an N-species module (for the
// Macdonald inclusion checks).
FamilyPtr eta_family(const RegistryPtr& reg, int N, int species);

FockWeights dvir_weights(const RegistryPtr& reg, bool crystal);
FockWeights dim_weights(const RegistryPtr& reg, int N, bool crystal,
                        const std::vector<std::string>& names = {});

// ---------------------------------------------------------------- PBW data

// |X_la> = X2_{-la2_1} X2_{-la2_2} ... X1_{-la1_1} X1_{-la1_2} ... |u>;
// families listed per species, innermost (species 1) last.
FockState pbw_ket(const std::vector<FamilyPtr>& families,
                  const PartitionTuple& la);
FockState pbw_bra(const std::vector<FamilyPtr>& families,
                  const PartitionTuple& la);

// change-of-basis matrix: column j = monomial coordinates of the PBW ket of
// the j-th canonical tuple at the level
RatMatrix pbw_matrix(const std::vector<FamilyPtr>& families, int level);

// state built from a symmetric function with p_n realized as a linear
// combination of creation modes: p_n -> sum_s coeffs[s] a^(s)_{-n}
FockState state_from_symfunc(const FockWeights& w, const SymFunc& f,
                             const std::vector<Rat>& species_coeffs);
// same on the bra side (mirror coordinates), p_n -> sum_s coeffs[s] a^(s)_n
FockState bra_from_symfunc(const FockWeights& w, const SymFunc& f,
                           const std::vector<Rat>& species_coeffs);

// Hall-Littlewood form of the crystal PBW vectors (N = 2):
// |X_{la,mu}> = (u1 u2)^{l(mu)} u2^{l(la)} Q_mu(b+;1/t) Q_la(b-;1/t) |u>.
FockState pm_basis_state(const FockWeights& w, const Partition& la,
                         const Partition& mu);
FockState pm_basis_bra(const FockWeights& w, const Partition& la,
                       const Partition& mu);

}  // namespace qvir

#endif
