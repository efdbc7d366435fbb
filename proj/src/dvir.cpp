#include "qvir/dvir.hpp"

namespace qvir {

namespace {

std::vector<PartitionTuple> level_tuples(int level) {
  return enumerate_tuples(level, 1);
}

}  // namespace

RatMatrix kac_matrix_scaled(const FamilyPtr& t_fam, int level) {
  auto tuples = level_tuples(level);
  const int k = static_cast<int>(tuples.size());
  RatMatrix b = rat_matrix(k, k, t_fam->weights().reg);
  std::vector<FockState> kets(k), bras(k);
  for (int i = 0; i < k; ++i) {
    kets[i] = pbw_ket({t_fam}, tuples[i]);
    bras[i] = pbw_bra({t_fam}, tuples[i]);
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b(i, j) = pairing(bras[i], kets[j]);
  return b;
}

RatMatrix kac_matrix(const FamilyPtr& t_fam, int level) {
  RatMatrix b = kac_matrix_scaled(t_fam, level);
  if (!t_fam->weights().crystal) {
    const RegistryPtr& reg = t_fam->weights().reg;
    Rat pinv = (Rat::variable(reg, "t") / Rat::variable(reg, "q")).pow(level);
    for (Eigen::Index i = 0; i < b.rows(); ++i)
      for (Eigen::Index j = 0; j < b.cols(); ++j) b(i, j) = b(i, j) * pinv;
  }
  return b;
}

std::vector<Rat> whittaker_norm(const FamilyPtr& t_fam, int order) {
  const RegistryPtr& reg = t_fam->weights().reg;
  const bool crystal = t_fam->weights().crystal;
  std::vector<Rat> out;
  for (int n = 0; n <= order; ++n) {
    auto tuples = level_tuples(n);
    RatMatrix b = kac_matrix_scaled(t_fam, n);
    // solve B x = e_{(1^n)}; the inverse element is x at the same column
    Partition ones(std::vector<int>(n, 1));
    int idx = -1;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (tuples[i][0] == ones) idx = static_cast<int>(i);
    RatVector e = rat_vector(tuples.size(), reg);
    e(idx) = Rat::one(reg);
    RatVector x = gauss_solve(b, e);
    Rat val = x(idx);
    if (!crystal) {
      Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
      val = val * p.pow(n);  // scaled -> paper normalization
    }
    out.push_back(val);
  }
  return out;
}

WhittakerVector whittaker_vector(const FamilyPtr& t_fam, int order) {
  const RegistryPtr& reg = t_fam->weights().reg;
  WhittakerVector g;
  for (int n = 0; n <= order; ++n) {
    auto tuples = level_tuples(n);
    RatMatrix b = kac_matrix_scaled(t_fam, n);
    Partition ones(std::vector<int>(n, 1));
    int idx = -1;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (tuples[i][0] == ones) idx = static_cast<int>(i);
    RatVector e = rat_vector(tuples.size(), reg);
    e(idx) = Rat::one(reg);
    RatVector x = gauss_solve(b, e);
    FockState comp(t_fam->weights());
    for (size_t i = 0; i < tuples.size(); ++i)
      comp = comp + pbw_ket({t_fam}, tuples[i]).scaled(x(i));
    g.components.push_back(comp);
  }
  // defining property on the computed range
  for (int n = 1; n <= order; ++n) {
    FockState lowered = t_fam->apply(1, g.components[n]);
    if (!lowered.eq(g.components[n - 1]))
      throw Error("Whittaker vector fails the raising-mode property at level " +
                  std::to_string(n));
    for (int m = 2; m <= n; ++m)
      if (!t_fam->apply(m, g.components[n]).is_zero() &&
          !t_fam->apply(m, g.components[n]).eq(FockState(t_fam->weights())))
        throw Error("Whittaker vector not annihilated by mode " +
                    std::to_string(m));
  }
  return g;
}

}  // namespace qvir
