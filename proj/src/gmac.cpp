#include "qvir/gmac.hpp"

#include <algorithm>

namespace qvir {

namespace {

// multiply a state by a symmetric function realized in the creation modes of
// one species
FockState mul_species_symfunc(const FockState& s, const SymFunc& f, int species) {
  const FockWeights& w = s.weights();
  FockState out(w);
  for (auto& [nu, c] : f.coeffs()) {
    FockState acc = s.scaled(c);
    for (int part : nu.parts()) {
      FockState next(w);
      for (auto& [tup, v] : acc.coeffs()) {
        std::vector<Partition> comps = tup.components();
        std::vector<int> parts = comps[species].parts();
        parts.push_back(part);
        std::sort(parts.rbegin(), parts.rend());
        comps[species] = Partition(std::move(parts));
        next.add(PartitionTuple(std::move(comps)), v);
      }
      acc = std::move(next);
    }
    out = out + acc;
  }
  return out;
}

// column coordinates of prod_s P_{la^s}(a^{(s)}) |u> for every tuple of the
// level; `tables` holds one Macdonald table per parameter choice (shared)
RatMatrix product_basis_matrix(const FockWeights& w, MacdonaldTable& mac,
                               const std::vector<PartitionTuple>& tuples) {
  const int k = static_cast<int>(tuples.size());
  RatMatrix m = rat_matrix(k, k, w.reg);
  for (int j = 0; j < k; ++j) {
    FockState s = FockState::vacuum(w);
    for (int sp = 0; sp < w.N; ++sp)
      s = mul_species_symfunc(s, mac.P(tuples[j][sp]), sp);
    for (auto& [nu, v] : s.coeffs()) {
      int i = -1;
      for (int r = 0; r < k; ++r)
        if (tuples[r] == nu) i = r;
      if (i < 0) throw Error("product basis leaves the level");
      m(i, j) = v;
    }
  }
  return m;
}

RatMatrix bra_action_matrix(const FamilyPtr& fam, int mode, int level) {
  const FockWeights& w = fam->weights();
  auto tuples = enumerate_tuples(level, w.N);
  auto out_tuples = enumerate_tuples(level + mode, w.N);
  RatMatrix m = rat_matrix(out_tuples.size(), tuples.size(), w.reg);
  for (size_t j = 0; j < tuples.size(); ++j) {
    FockState e(w);
    e.add(tuples[j], Rat::one(w.reg));
    FockState img = fam->apply_bra(mode, e);
    for (auto& [nu, v] : img.coeffs()) {
      int i = -1;
      for (size_t r = 0; r < out_tuples.size(); ++r)
        if (out_tuples[r] == nu) i = static_cast<int>(r);
      if (i < 0) throw Error("bra action leaves the level");
      m(i, j) = v;
    }
  }
  return m;
}

void assert_distinct_diagonal(const RatMatrix& c) {
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = i + 1; j < c.rows(); ++j)
      if (c(i, i).eq(c(j, j)))
        throw Error("eigenvalue collision on the diagonal");
}

}  // namespace

int GMacTable::index_of(const PartitionTuple& t) const {
  for (size_t i = 0; i < tuples.size(); ++i)
    if (tuples[i] == t) return static_cast<int>(i);
  throw Error("tuple not in table: " + t.text());
}

RatMatrix GMacTable::alpha_paper() const {
  if (crystal) return alpha_scaled;
  RatMatrix out = alpha_scaled;
  Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    Rat f = p.pow(tuples[j][0].size());
    for (Eigen::Index i = 0; i < out.rows(); ++i) out(i, j) = out(i, j) * f;
  }
  return out;
}

GMacTable generalized_macdonald(const RegistryPtr& reg, int level, int N) {
  GMacTable tab;
  tab.reg = reg;
  tab.level = level;
  tab.arity = N;
  tab.crystal = false;
  tab.tuples = enumerate_tuples(level, N);
  const int k = static_cast<int>(tab.tuples.size());
  FockWeights w = dim_weights(reg, N, false);
  FamilyPtr x1 = x1_family(reg, N, false);

  MacdonaldTable mac(reg, Rat::variable(reg, "q"), Rat::variable(reg, "t"));
  RatMatrix m = product_basis_matrix(w, mac, tab.tuples);
  RatMatrix minv = gauss_inverse(m);
  RatMatrix x0 = *x1->matrix(0, level);
  RatMatrix c = minv * x0 * m;

  // triangularity in the canonical linearization (the star ordering refined)
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j)
      if (!c(i, j).eq(Rat::zero(reg)))
        throw Error("constant mode not triangular at " + tab.tuples[i].text() +
                    " <- " + tab.tuples[j].text());
  assert_distinct_diagonal(c);

  tab.c = rat_matrix(k, k, reg);
  tab.eigenvalue.resize(k);
  for (int j = 0; j < k; ++j) {
    tab.eigenvalue[j] = c(j, j);
    RatVector y = rat_vector(k, reg);
    y(j) = Rat::one(reg);
    for (int i = j + 1; i < k; ++i) {
      Rat num = Rat::zero(reg);
      for (int l = j; l < i; ++l) num += c(i, l) * y(l);
      if (num.is_zero() || num.eq(Rat::zero(reg))) continue;
      y(i) = num / (c(j, j) - c(i, i));
    }
    for (int i = 0; i < k; ++i) tab.c(j, i) = y(i);
  }
  // boson coordinates of the eigenvectors
  tab.p_states.resize(k);
  for (int j = 0; j < k; ++j) {
    RatVector coords = m * tab.c.row(j).transpose();
    FockState s(w);
    for (int i = 0; i < k; ++i) s.add(tab.tuples[i], coords(i));
    tab.p_states[j] = s;
  }

  // dual side through the right action
  RatMatrix adj = bra_action_matrix(x1, 0, level);
  RatMatrix b = minv * adj * m;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < i; ++j)
      if (!b(i, j).eq(Rat::zero(reg)))
        throw Error("dual constant mode not triangular");
  assert_distinct_diagonal(b);
  tab.c_star = rat_matrix(k, k, reg);
  tab.p_bras.resize(k);
  for (int j = 0; j < k; ++j) {
    if (!b(j, j).eq(tab.eigenvalue[j]))
      throw Error("left and right eigenvalues disagree at " +
                  tab.tuples[j].text());
    RatVector y = rat_vector(k, reg);
    y(j) = Rat::one(reg);
    for (int i = j - 1; i >= 0; --i) {
      Rat num = Rat::zero(reg);
      for (int l = i + 1; l <= j; ++l) num += b(i, l) * y(l);
      if (num.is_zero() || num.eq(Rat::zero(reg))) continue;
      y(i) = num / (b(j, j) - b(i, i));
    }
    for (int i = 0; i < k; ++i) tab.c_star(j, i) = y(i);
    RatVector coords = m * y;
    FockState s(w);
    for (int i = 0; i < k; ++i) s.add(tab.tuples[i], coords(i));
    tab.p_bras[j] = s;
  }
  return tab;
}

void fill_integral_form(GMacTable& tab, const std::vector<FamilyPtr>& fams) {
  const int k = static_cast<int>(tab.tuples.size());
  const RegistryPtr& reg = tab.reg;
  const FockWeights& w = fams[0]->weights();
  // normalization column (empty,...,empty,(1^n))
  std::vector<Partition> norm_comps(tab.arity);
  norm_comps[tab.arity - 1] = Partition(std::vector<int>(tab.level, 1));
  const int norm_idx = tab.index_of(PartitionTuple(norm_comps));

  RatMatrix mket = pbw_matrix(fams, tab.level);
  RatMatrix mbra = rat_matrix(k, k, reg);
  for (int j = 0; j < k; ++j) {
    FockState s = pbw_bra(fams, tab.tuples[j]);
    for (auto& [nu, v] : s.coeffs()) mbra(tab.index_of(nu), j) = v;
  }

  tab.alpha_scaled = rat_matrix(k, k, reg);
  tab.beta = rat_matrix(k, k, reg);
  for (int j = 0; j < k; ++j) {
    RatVector pk = rat_vector(k, reg), pb = rat_vector(k, reg);
    for (int i = 0; i < k; ++i) {
      pk(i) = tab.p_states[j].coeff(tab.tuples[i]);
      pb(i) = tab.p_bras[j].coeff(tab.tuples[i]);
    }
    RatVector a = gauss_solve(mket, pk);
    RatVector bvec = gauss_solve(mbra, pb);
    if (a(norm_idx).is_zero() || a(norm_idx).eq(Rat::zero(reg)))
      throw Error("vanishing normalizing coordinate in alpha at " +
                  tab.tuples[j].text());
    if (bvec(norm_idx).is_zero() || bvec(norm_idx).eq(Rat::zero(reg)))
      throw Error("vanishing normalizing coordinate in beta at " +
                  tab.tuples[j].text());
    for (int i = 0; i < k; ++i) {
      tab.alpha_scaled(j, i) = a(i) / a(norm_idx);
      tab.beta(j, i) = bvec(i) / bvec(norm_idx);
    }
  }
  tab.integral_filled = true;
}

Rat crystal_eigenvalue(const RegistryPtr& reg, const PartitionTuple& la) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat acc = Rat::zero(reg);
  for (int kk = 0; kk < la.arity(); ++kk) {
    Rat inner = Rat::zero(reg);
    for (int i = 1; i <= la[kk].length(); ++i) inner += t.pow(-i);
    acc += Rat::variable(reg, "u" + std::to_string(kk + 1)) *
           (one + (one - t) * inner);
  }
  return acc;
}

GMacTable crystal_generalized_hl(const RegistryPtr& reg, int level) {
  GMacTable gen = generalized_macdonald(reg, level, 2);
  GMacTable tab;
  tab.reg = reg;
  tab.level = level;
  tab.arity = 2;
  tab.crystal = true;
  tab.tuples = gen.tuples;
  const int k = static_cast<int>(tab.tuples.size());

  FockWeights cw = dim_weights(reg, 2, true);
  FamilyPtr x1c = x1_family(reg, 2, true);
  FamilyPtr x2c = x2_family(reg, true);

  // limit of the eigenvectors in boson coordinates; the paper's hypothesis is
  // that no pole appears, and limit_q_to_zero raises otherwise
  tab.p_states.resize(k);
  tab.p_bras.resize(k);
  for (int j = 0; j < k; ++j) {
    tab.p_states[j] = gen.p_states[j].limit_q_to_zero(cw);
    tab.p_bras[j] = gen.p_bras[j].limit_q_to_zero(cw);
  }

  // re-expand over Hall-Littlewood products
  MacdonaldTable hl(reg, Rat::zero(reg), Rat::variable(reg, "t"));
  RatMatrix m = product_basis_matrix(cw, hl, tab.tuples);
  RatMatrix minv = gauss_inverse(m);
  tab.c = rat_matrix(k, k, reg);
  tab.c_star = rat_matrix(k, k, reg);
  tab.eigenvalue.resize(k);
  for (int j = 0; j < k; ++j) {
    RatVector coords = rat_vector(k, reg), bcoords = rat_vector(k, reg);
    for (int i = 0; i < k; ++i) {
      coords(i) = tab.p_states[j].coeff(tab.tuples[i]);
      bcoords(i) = tab.p_bras[j].coeff(tab.tuples[i]);
    }
    RatVector row = minv * coords;
    RatVector brow = minv * bcoords;
    for (int i = 0; i < k; ++i) {
      tab.c(j, i) = row(i);
      tab.c_star(j, i) = brow(i);
    }
    // eigenvector property against the crystal generator, closed form value
    Rat ev = crystal_eigenvalue(reg, tab.tuples[j]);
    tab.eigenvalue[j] = ev;
    FockState img = x1c->apply(0, tab.p_states[j]);
    if (!img.eq(tab.p_states[j].scaled(ev)))
      throw Error("crystal eigenvector property fails at " +
                  tab.tuples[j].text());
    if (!gen.eigenvalue[j].limit_at_zero_checked("q").eq(ev))
      throw Error("crystal eigenvalue disagrees with the generic limit");
  }

  // integral forms directly over the crystal PBW basis
  std::vector<FamilyPtr> cfams{x1c, x2c};
  std::vector<Partition> norm_comps(2);
  norm_comps[1] = Partition(std::vector<int>(level, 1));
  const int norm_idx = tab.index_of(PartitionTuple(norm_comps));
  RatMatrix mket = pbw_matrix(cfams, level);
  RatMatrix mbra = rat_matrix(k, k, reg);
  for (int j = 0; j < k; ++j) {
    FockState s = pbw_bra(cfams, tab.tuples[j]);
    for (auto& [nu, v] : s.coeffs()) mbra(tab.index_of(nu), j) = v;
  }
  tab.alpha_scaled = rat_matrix(k, k, reg);
  tab.beta = rat_matrix(k, k, reg);
  for (int j = 0; j < k; ++j) {
    RatVector pk = rat_vector(k, reg), pb = rat_vector(k, reg);
    for (int i = 0; i < k; ++i) {
      pk(i) = tab.p_states[j].coeff(tab.tuples[i]);
      pb(i) = tab.p_bras[j].coeff(tab.tuples[i]);
    }
    RatVector a = gauss_solve(mket, pk);
    RatVector bvec = gauss_solve(mbra, pb);
    if (a(norm_idx).eq(Rat::zero(reg)) || bvec(norm_idx).eq(Rat::zero(reg)))
      throw Error("vanishing normalizing coordinate in the crystal table");
    for (int i = 0; i < k; ++i) {
      tab.alpha_scaled(j, i) = a(i) / a(norm_idx);
      tab.beta(j, i) = bvec(i) / bvec(norm_idx);
    }
  }
  tab.integral_filled = true;
  return tab;
}

Rat shapovalov_closed(const RegistryPtr& reg, const PartitionTuple& la,
                      const PartitionTuple& mu) {
  Rat zero = Rat::zero(reg);
  if (!(la[0] == mu[0])) return zero;
  Rat one = Rat::one(reg);
  Rat tinv = one / Rat::variable(reg, "t");
  Rat uu = Rat::variable(reg, "u1") * Rat::variable(reg, "u2");
  return uu.pow(la[0].length()) * uu.pow(la[1].length() + mu[1].length()) *
         b_stat(la[0], tinv) * hl_pairing_signed(reg, la[1], mu[1], tinv);
}

Rat shapovalov_inverse_closed(const RegistryPtr& reg, const PartitionTuple& la,
                              const PartitionTuple& mu) {
  Rat zero = Rat::zero(reg);
  if (!(la[0] == mu[0])) return zero;
  Rat one = Rat::one(reg);
  Rat tinv = one / Rat::variable(reg, "t");
  Rat uu = Rat::variable(reg, "u1") * Rat::variable(reg, "u2");
  return uu.pow(-la[0].length()) * uu.pow(-la[1].length() - mu[1].length()) /
         b_stat(la[0], tinv) *
         (hl_pairing_signed(reg, la[1], mu[1], tinv) /
          (b_stat(la[1], tinv) * b_stat(mu[1], tinv)));
}

ShapovalovPair crystal_shapovalov(const RegistryPtr& reg, int level) {
  ShapovalovPair pair;
  pair.tuples = enumerate_tuples(level, 2);
  const int k = static_cast<int>(pair.tuples.size());
  FamilyPtr x1c = x1_family(reg, 2, true);
  FamilyPtr x2c = x2_family(reg, true);
  std::vector<FamilyPtr> fams{x1c, x2c};
  pair.s = rat_matrix(k, k, reg);
  pair.s_inv = rat_matrix(k, k, reg);
  std::vector<FockState> kets(k), bras(k);
  for (int i = 0; i < k; ++i) {
    kets[i] = pbw_ket(fams, pair.tuples[i]);
    bras[i] = pbw_bra(fams, pair.tuples[i]);
  }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat wick = pairing(bras[i], kets[j]);
      Rat closed = shapovalov_closed(reg, pair.tuples[i], pair.tuples[j]);
      if (!wick.eq(closed))
        throw Error("Shapovalov closed form disagrees with the pairing at " +
                    pair.tuples[i].text() + ", " + pair.tuples[j].text());
      pair.s(i, j) = wick;
      pair.s_inv(i, j) =
          shapovalov_inverse_closed(reg, pair.tuples[i], pair.tuples[j]);
    }
  RatMatrix prod = pair.s * pair.s_inv;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      Rat expect = i == j ? Rat::one(reg) : Rat::zero(reg);
      if (!prod(i, j).eq(expect))
        throw Error("Shapovalov inverse fails at level " + std::to_string(level));
    }
  return pair;
}

std::vector<TupleCheck> norm_conjecture_check(const RegistryPtr& reg, int level,
                                              bool crystal) {
  std::vector<TupleCheck> out;
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat u1 = Rat::variable(reg, "u1"), u2 = Rat::variable(reg, "u2");
  if (crystal) {
    GMacTable tab = crystal_generalized_hl(reg, level);
    ShapovalovPair sh = crystal_shapovalov(reg, level);
    const int k = static_cast<int>(tab.tuples.size());
    for (int j = 0; j < k; ++j) {
      Rat lhs = Rat::zero(reg);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
          lhs += tab.beta(j, a) * sh.s(a, b) * tab.alpha_scaled(j, b);
      const PartitionTuple& la = tab.tuples[j];
      Rat rhs = (u1 * u2).pow(la.size()) * u1.pow(2 * la[0].size()) *
                u2.pow(2 * la[1].size()) *
                t.pow(-2 * (la[0].n_stat() + la[1].n_stat()));
      std::vector<Rat> us{u1, u2};
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          rhs *= nekrasov_ntilde(reg, la[i], la[jj], us[i] / us[jj]);
      out.push_back({la, lhs.eq(rhs)});
    }
  } else {
    Rat q = Rat::variable(reg, "q");
    GMacTable tab = generalized_macdonald(reg, level, 2);
    std::vector<FamilyPtr> fams{x1_family(reg, 2, false), x2_family(reg, false)};
    fill_integral_form(tab, fams);
    const int k = static_cast<int>(tab.tuples.size());
    // scaled PBW Gram matrix
    std::vector<FockState> kets(k), bras(k);
    for (int i = 0; i < k; ++i) {
      kets[i] = pbw_ket(fams, tab.tuples[i]);
      bras[i] = pbw_bra(fams, tab.tuples[i]);
    }
    for (int j = 0; j < k; ++j) {
      Rat lhs = Rat::zero(reg);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          Rat sab = pairing(bras[a], kets[b]);
          lhs += tab.beta(j, a) * sab * tab.alpha_scaled(j, b);
        }
      const PartitionTuple& la = tab.tuples[j];
      Rat rhs = (u1 * u2).pow(la.size());
      std::vector<Rat> us{u1, u2};
      for (int i = 0; i < 2; ++i)
        rhs *= t.pow(-2 * la[i].n_stat()) *
               q.pow(2 * la[i].conjugate().n_stat()) * us[i].pow(2 * la[i].size());
      for (int i = 0; i < 2; ++i)
        for (int jj = 0; jj < 2; ++jj)
          rhs *= nekrasov_n(reg, la[i], la[jj], q * us[i] / (t * us[jj]));
      out.push_back({la, lhs.eq(rhs)});
    }
  }
  return out;
}

std::vector<EtaInclusionReport> eta_inclusion_check(const RegistryPtr& reg,
                                                    int max_level) {
  std::vector<EtaInclusionReport> out;
  FockWeights w = dim_weights(reg, 1, false);
  FamilyPtr eta = eta_family(reg, 1, 0);
  MacdonaldTable mac(reg, Rat::variable(reg, "q"), Rat::variable(reg, "t"));
  for (int lv = 1; lv <= max_level; ++lv) {
    for (auto& la : partitions_of(lv)) {
      FockState base = mul_species_symfunc(FockState::vacuum(w), mac.P(la), 0);
      for (int n = 1; n <= max_level; ++n) {
        EtaInclusionReport rep;
        rep.la = la;
        rep.mode = n;
        FockState img = eta->apply(n, base);
        int out_level = lv - n;
        if (out_level < 0) {
          if (!img.is_zero()) rep.violations.push_back(Partition{});
          out.push_back(rep);
          continue;
        }
        auto tuples = enumerate_tuples(out_level, 1);
        RatMatrix m = product_basis_matrix(w, mac, tuples);
        RatVector coords = rat_vector(tuples.size(), reg);
        for (size_t i = 0; i < tuples.size(); ++i)
          coords(i) = img.coeff(tuples[i]);
        RatVector sol = gauss_solve(m, coords);
        for (size_t i = 0; i < tuples.size(); ++i) {
          if (sol(i).eq(Rat::zero(reg))) continue;
          if (!la.contains(tuples[i][0])) rep.violations.push_back(tuples[i][0]);
        }
        out.push_back(rep);
      }
    }
  }
  return out;
}

}  // namespace qvir
