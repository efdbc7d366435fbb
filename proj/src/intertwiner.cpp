#include "qvir/intertwiner.hpp"

#include <algorithm>

#include "qvir/laurent.hpp"

namespace qvir {

VertexSpec phi_n1_spec(const RegistryPtr& reg, bool crystal,
                       const std::string& uname, const std::string& vname) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, uname);
  Rat v = Rat::variable(reg, vname);
  VertexSpec spec;
  FockWeights dst;
  dst.reg = reg;
  dst.N = 1;
  dst.u = {v};
  dst.crystal = crystal;
  spec.target = dst;
  spec.zero_mode = one;
  if (crystal) {
    spec.cre = [=](int, int m) { return u.pow(m) / Rat::integer(reg, m); };
    spec.ann = [=](int, int m) {
      return (u.pow(-m) - v.pow(-m)) * t.pow(m) / Rat::integer(reg, m);
    };
  } else {
    Rat q = Rat::variable(reg, "q");
    spec.cre = [=](int, int m) {
      return -(v.pow(m) - (t / q).pow(m) * u.pow(m)) /
             (Rat::integer(reg, m) * (one - q.pow(m)));
    };
    spec.ann = [=](int, int m) {
      return (v.pow(-m) - u.pow(-m)) / (Rat::integer(reg, m) * (one - q.pow(-m)));
    };
  }
  return spec;
}

namespace {

FockWeights n1_weights(const RegistryPtr& reg, const std::string& name,
                       bool crystal) {
  FockWeights w;
  w.reg = reg;
  w.N = 1;
  w.u = {Rat::variable(reg, name)};
  w.crystal = crystal;
  return w;
}

}  // namespace

Rat n1_matrix_element_fock(const RegistryPtr& reg, const Partition& la,
                           const Partition& mu) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  Rat v = Rat::variable(reg, "v");
  FockWeights wu = n1_weights(reg, "u", true);
  FockWeights wv = n1_weights(reg, "v", true);
  // |K_mu> = (-u/t)^{|mu|} t^{-n(mu)} Q_mu(b_{-n}; t)|u>
  FockState ket =
      state_from_symfunc(wu, hall_littlewood_q(reg, mu, t), {one})
          .scaled((-u / t).pow(mu.size()) * t.pow(-mu.n_stat()));
  // <K_la| = (-v)^{|la|} t^{-n(la)} <v| Q_la(b_n; t)
  FockState bra =
      bra_from_symfunc(wv, hall_littlewood_q(reg, la, t), {one})
          .scaled((-v).pow(la.size()) * t.pow(-la.n_stat()));
  VertexSpec phi = phi_n1_spec(reg, true);
  FockState img = apply_spec_whole(wu, phi, "x", la.size(), ket);
  return pairing(bra, img);
}

Rat n1_matrix_element_contour(const RegistryPtr& reg, const Partition& la,
                              const Partition& mu) {
  Rat kernel = contour_coefficient(n1_kernel_spec(reg, la, mu));
  return n1_prefactor(reg, la, mu) * kernel;
}

Rat n1_prefactor(const RegistryPtr& reg, const Partition& la,
                 const Partition& mu) {
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  Rat v = Rat::variable(reg, "v");
  return (-v).pow(la.size()) * (-u).pow(mu.size()) *
         t.pow(-la.n_stat() - mu.n_stat() - mu.size());
}

Rat n1_kernel_closed(const RegistryPtr& reg, const Partition& la,
                     const Partition& mu) {
  Rat t = Rat::variable(reg, "t");
  Rat u = Rat::variable(reg, "u");
  Rat v = Rat::variable(reg, "v");
  Rat x = Rat::variable(reg, "x");
  return nekrasov_ntilde(reg, la, mu, v / u) * x.pow(la.size() - mu.size()) *
         u.pow(la.size()) * (-v).pow(-mu.size()) * t.pow(mu.size() + la.n_stat());
}

// ------------------------------------------------------------- the solver

namespace {

// exact solve of an overdetermined consistent full-column-rank system
RatVector solve_stacked(RatMatrix a, RatVector b) {
  const Eigen::Index rows = a.rows(), cols = a.cols();
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < rows; ++i)
      if (!a(i, c).is_zero() && !a(i, c).eq(Rat::zero(a(i, c).reg()))) {
        piv = i;
        break;
      }
    if (piv < 0) throw Error("underdetermined intertwiner system");
    if (piv != r) {
      a.row(piv).swap(a.row(r));
      std::swap(b(piv), b(r));
    }
    Rat inv = Rat::one(a(r, c).reg()) / a(r, c);
    for (Eigen::Index j = c; j < cols; ++j) a(r, j) = a(r, j) * inv;
    b(r) = b(r) * inv;
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      Rat f = a(i, c);
      for (Eigen::Index j = c; j < cols; ++j) a(i, j) = a(i, j) - f * a(r, j);
      b(i) = b(i) - f * b(r);
    }
    ++r;
  }
  // consistency of the remaining rows
  for (Eigen::Index i = r; i < rows; ++i)
    if (!b(i).is_zero() && !b(i).eq(Rat::zero(b(i).reg())))
      throw Error("inconsistent intertwiner system");
  return b.head(cols);
}

FockState truncate_levels(const FockState& s, int cap) {
  FockState out(s.weights());
  for (auto& [nu, v] : s.coeffs())
    if (nu.size() <= cap) out.add(nu, v);
  return out;
}

}  // namespace

Intertwiner Intertwiner::solve(const Config& cfg) {
  Intertwiner phi;
  phi.cfg_ = cfg;
  const RegistryPtr& reg = cfg.x1_dst->weights().reg;
  const FockWeights& wu = cfg.x1_src->weights();
  const FockWeights& wv = cfg.x1_dst->weights();
  const int L = cfg.level;
  Rat one = Rat::one(reg);
  Rat p = cfg.crystal ? Rat::zero(reg)
                      : Rat::variable(reg, "q") / Rat::variable(reg, "t");
  phi.e2_ = wv.u[0] * wv.u[1];
  const Rat e2 = phi.e2_;

  // constant-mode eigenvalues on the source vacuum
  FockState uvac = FockState::vacuum(wu);
  Rat x1_vac = cfg.x1_src->apply(0, uvac).coeff(
      PartitionTuple(std::vector<Partition>(2)));
  Rat x2_vac = cfg.x2_src->apply(0, uvac).coeff(
      PartitionTuple(std::vector<Partition>(2)));

  // ---- seed column Phi|u>, level by level in the target degree
  std::vector<FockState> seed(L + 1, FockState(wv));
  seed[0] = FockState::vacuum(wv);
  for (int d = 1; d <= L; ++d) {
    auto tuples = enumerate_tuples(d, 2);
    const int k = static_cast<int>(tuples.size());
    // stack the mode equations X^(i)_n seed[d] = rhs_{i,n}
    std::vector<RatMatrix> mats;
    std::vector<RatVector> rhss;
    for (int i = 1; i <= 2; ++i) {
      const FamilyPtr& fam = i == 1 ? cfg.x1_dst : cfg.x2_dst;
      for (int n = 1; n <= d; ++n) {
        auto m = fam->matrix(n, d);
        FockState rhs_state(wv);
        if (!cfg.crystal) {
          const FamilyPtr& f2 = i == 1 ? cfg.x1_dst : cfg.x2_dst;
          rhs_state = f2->apply(n - 1, seed[d - 1]).scaled(e2 * p.pow(2));
        }
        if (n == 1) {
          Rat c = i == 1 ? -e2 * p * x1_vac : -e2 * x2_vac;
          rhs_state = rhs_state + seed[d - 1].scaled(c);
        }
        auto out_tuples = enumerate_tuples(d - n, 2);
        RatVector rv = rat_vector(out_tuples.size(), reg);
        for (size_t r = 0; r < out_tuples.size(); ++r)
          rv(r) = rhs_state.coeff(out_tuples[r]);
        mats.push_back(*m);
        rhss.push_back(rv);
      }
    }
    Eigen::Index rows = 0;
    for (auto& m : mats) rows += m.rows();
    RatMatrix big = rat_matrix(rows, k, reg);
    RatVector bigb = rat_vector(rows, reg);
    Eigen::Index at = 0;
    for (size_t s = 0; s < mats.size(); ++s) {
      big.block(at, 0, mats[s].rows(), k) = mats[s];
      bigb.segment(at, mats[s].rows()) = rhss[s];
      at += mats[s].rows();
    }
    RatVector x = solve_stacked(std::move(big), std::move(bigb));
    for (int r = 0; r < k; ++r) seed[d].add(tuples[r], x(r));
  }
  phi.img_.resize(L + 1);
  FockState seed_total(wv);
  for (int d = 0; d <= L; ++d) seed_total = seed_total + seed[d];
  phi.img_[0].push_back(seed_total);

  // ---- ket levels by the exchange recursion
  std::vector<FamilyPtr> ufams{cfg.x1_src, cfg.x2_src};
  for (int d = 1; d <= L; ++d) {
    auto tuples = enumerate_tuples(d, 2);
    const int k = static_cast<int>(tuples.size());
    std::vector<FockState> pbw_images(k, FockState(wv));
    for (int j = 0; j < k; ++j) {
      const PartitionTuple& la = tuples[j];
      int species;
      int m;
      PartitionTuple rest;
      if (la[1].length() > 0) {
        species = 1;
        m = la[1].part(1);
        std::vector<int> parts(la[1].parts().begin() + 1, la[1].parts().end());
        rest = PartitionTuple{la[0], Partition(parts)};
      } else {
        species = 0;
        m = la[0].part(1);
        std::vector<int> parts(la[0].parts().begin() + 1, la[0].parts().end());
        rest = PartitionTuple{Partition(parts), Partition{}};
      }
      const FamilyPtr& fsrc = species == 0 ? cfg.x1_src : cfg.x2_src;
      const FamilyPtr& fdst = species == 0 ? cfg.x1_dst : cfg.x2_dst;
      FockState y = pbw_ket(ufams, rest);           // level d - m
      FockState phi_y = phi.apply(y);               // known (level d - m <= L)
      FockState term1 = phi.apply(fsrc->apply(1 - m, y));  // level d-1 state
      FockState term2 = fdst->apply(1 - m, phi_y);
      FockState acc = term1 - truncate_levels(term2, L);
      if (!cfg.crystal) {
        Rat gamma = species == 0 ? e2 * p : e2 * p.pow(2);
        acc = acc + truncate_levels(fdst->apply(-m, phi_y), L).scaled(gamma);
      }
      pbw_images[j] = acc.scaled(one / e2);
    }
    // change from PBW columns to the monomial basis
    RatMatrix mket = pbw_matrix(ufams, d);
    RatMatrix minv = gauss_inverse(mket);
    phi.img_[d].resize(k, FockState(wv));
    for (int jm = 0; jm < k; ++jm) {
      FockState s(wv);
      for (int i = 0; i < k; ++i) {
        if (minv(i, jm).is_zero()) continue;
        s = s + pbw_images[i].scaled(minv(i, jm));
      }
      phi.img_[d][jm] = s;
    }
  }
  return phi;
}

FockState Intertwiner::apply(const FockState& ket) const {
  const FockWeights& wv = cfg_.x1_dst->weights();
  FockState out(wv);
  for (auto& [nu, c] : ket.coeffs()) {
    int d = nu.size();
    if (d > cfg_.level) throw Error("intertwiner table too small");
    auto tuples = enumerate_tuples(d, 2);
    int idx = -1;
    for (size_t i = 0; i < tuples.size(); ++i)
      if (tuples[i] == nu) idx = static_cast<int>(i);
    out = out + img_[d][idx].scaled(c);
  }
  return out;
}

Rat Intertwiner::vacuum_element(const FockState& ket) const {
  FockState img = apply(ket);
  return img.coeff(PartitionTuple(std::vector<Partition>(2)));
}

Rat Intertwiner::element(const FockState& bra_mirror, const FockState& ket) const {
  return pairing(bra_mirror, apply(ket));
}

int Intertwiner::residual_violations(int extra) const {
  const RegistryPtr& reg = cfg_.x1_dst->weights().reg;
  const int L = cfg_.level;
  Rat one = Rat::one(reg);
  Rat p = cfg_.crystal ? Rat::zero(reg)
                       : Rat::variable(reg, "q") / Rat::variable(reg, "t");
  int bad = 0;
  for (int i = 1; i <= 2; ++i) {
    const FamilyPtr& fsrc = i == 1 ? cfg_.x1_src : cfg_.x2_src;
    const FamilyPtr& fdst = i == 1 ? cfg_.x1_dst : cfg_.x2_dst;
    for (int n = -(L + extra); n <= L + extra; ++n) {
      Rat a, b;  // X_n Phi - b X_{n-1} Phi - Phi X_n + a Phi X_{n-1} = 0
      if (cfg_.crystal) {
        b = Rat::zero(reg);
        a = (i == 2 || n <= 0) ? e2_ : Rat::zero(reg);
      } else {
        int d1 = i == 1 ? (n >= 1 ? 1 : 0) : 1;  // 3/2 + delta(n) - i + 1/2...
        // exponents: i=1: (2,1) for n>=1, (1,0) for n<=0; i=2: (2,0)
        int be = i == 1 ? (n >= 1 ? 2 : 1) : 2;
        int ae = i == 1 ? (n >= 1 ? 1 : 0) : 0;
        (void)d1;
        b = e2_ * p.pow(be);
        a = e2_ * p.pow(ae);
      }
      for (int d = 0; d <= L; ++d) {
        if (d - n > L || d - n + 1 > L) continue;
        auto tuples = enumerate_tuples(d, 2);
        for (auto& tup : tuples) {
          FockState e(cfg_.x1_src->weights());
          e.add(tup, one);
          FockState lhs(cfg_.x1_dst->weights());
          // valid output levels
          int cap = std::min(L - std::max(n, 0), L - std::max(n - 1, 0));
          cap = std::min(cap, L);
          if (cap < 0) continue;
          FockState t1 = fdst->apply(n, img_[d][&tup - &tuples[0]]);
          FockState t4 = fdst->apply(n - 1, img_[d][&tup - &tuples[0]]);
          FockState t2 = d - n >= 0 ? apply(fsrc->apply(n, e))
                                    : FockState(cfg_.x1_dst->weights());
          FockState t3 = d - n + 1 >= 0 ? apply(fsrc->apply(n - 1, e))
                                        : FockState(cfg_.x1_dst->weights());
          FockState resid = t1 - t4.scaled(b) - t2 + t3.scaled(a);
          for (int lv = 0; lv <= cap; ++lv)
            if (!resid.level_component(lv).eq(
                    FockState(cfg_.x1_dst->weights())))
              ++bad;
        }
      }
    }
  }
  return bad;
}

int Intertwiner::system_nullity(int cap) const {
  const RegistryPtr& reg = cfg_.x1_dst->weights().reg;
  Rat one = Rat::one(reg);
  Rat p = cfg_.crystal ? Rat::zero(reg)
                       : Rat::variable(reg, "q") / Rat::variable(reg, "t");
  // unknown blocks (d -> d') for d, d' <= cap
  std::vector<int> udim(cap + 1), vdim(cap + 1);
  for (int d = 0; d <= cap; ++d) {
    udim[d] = static_cast<int>(enumerate_tuples(d, 2).size());
    vdim[d] = static_cast<int>(enumerate_tuples(d, 2).size());
  }
  std::map<std::pair<int, int>, int> offset;
  int total = 0;
  for (int d = 0; d <= cap; ++d)
    for (int dp = 0; dp <= cap; ++dp) {
      offset[{d, dp}] = total;
      total += udim[d] * vdim[dp];
    }
  auto idx = [&](int d, int dp, int r, int c) {
    return offset.at({d, dp}) + r * udim[d] + c;
  };
  std::vector<std::vector<Rat>> rows;
  for (int i = 1; i <= 2; ++i) {
    const FamilyPtr& fsrc = i == 1 ? cfg_.x1_src : cfg_.x2_src;
    const FamilyPtr& fdst = i == 1 ? cfg_.x1_dst : cfg_.x2_dst;
    for (int n = -(cap + 1); n <= cap + 1; ++n) {
      Rat a, b;
      if (cfg_.crystal) {
        b = Rat::zero(reg);
        a = (i == 2 || n <= 0) ? e2_ : Rat::zero(reg);
      } else {
        int be = i == 1 ? (n >= 1 ? 2 : 1) : 2;
        int ae = i == 1 ? (n >= 1 ? 1 : 0) : 0;
        b = e2_ * p.pow(be);
        a = e2_ * p.pow(ae);
      }
      for (int d = 0; d <= cap; ++d) {
        // all blocks used must exist
        if (d - n < 0 && d - n + 1 < 0) {
          // source actions vanish; still constrains X_n Phi terms
        }
        if (d - n > cap || d - n + 1 > cap) continue;
        for (int lv = 0; lv <= cap; ++lv) {
          if (lv + n > cap || lv + n - 1 > cap) continue;
          if (lv + n < 0 && lv + n - 1 < 0) continue;
          auto out_tuples = enumerate_tuples(lv, 2);
          auto src_tuples = enumerate_tuples(d, 2);
          std::shared_ptr<const RatMatrix> xdn, xdn1;
          if (lv + n >= 0) xdn = fdst->matrix(n, lv + n);
          if (lv + n - 1 >= 0) xdn1 = fdst->matrix(n - 1, lv + n - 1);
          std::shared_ptr<const RatMatrix> xsn, xsn1;
          if (d - n >= 0) xsn = fsrc->matrix(n, d);
          if (d - n + 1 >= 0) xsn1 = fsrc->matrix(n - 1, d);
          for (size_t r = 0; r < out_tuples.size(); ++r)
            for (int c = 0; c < udim[d]; ++c) {
              std::vector<Rat> row(total, Rat::zero(reg));
              bool nonzero = false;
              if (xdn)
                for (int s = 0; s < vdim[lv + n]; ++s) {
                  Rat v = (*xdn)(r, s);
                  if (v.is_zero()) continue;
                  row[idx(d, lv + n, s, c)] += v;
                  nonzero = true;
                }
              if (xdn1 && !b.is_zero())
                for (int s = 0; s < vdim[lv + n - 1]; ++s) {
                  Rat v = (*xdn1)(r, s);
                  if (v.is_zero()) continue;
                  row[idx(d, lv + n - 1, s, c)] -= b * v;
                  nonzero = true;
                }
              if (xsn && d - n <= cap)
                for (int s = 0; s < udim[d - n]; ++s) {
                  Rat v = (*xsn)(s, c);
                  if (v.is_zero()) continue;
                  row[idx(d - n, lv, r, s)] -= v;
                  nonzero = true;
                }
              if (xsn1 && !a.is_zero() && d - n + 1 <= cap)
                for (int s = 0; s < udim[d - n + 1]; ++s) {
                  Rat v = (*xsn1)(s, c);
                  if (v.is_zero()) continue;
                  row[idx(d - n + 1, lv, r, s)] += a * v;
                  nonzero = true;
                }
              if (nonzero) rows.push_back(std::move(row));
            }
        }
      }
    }
  }
  RatMatrix m = rat_matrix(rows.size(), total, reg);
  for (size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < total; ++j) m(i, j) = rows[i][j];
  return total - gauss_rank(std::move(m));
}

Rat vac_pbw_element_closed(const RegistryPtr& reg, const Partition& la,
                           const std::string& u1, const std::string& u2,
                           const std::string& v1, const std::string& v2) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat uu = Rat::variable(reg, u1) * Rat::variable(reg, u2);
  Rat vv = Rat::variable(reg, v1) * Rat::variable(reg, v2);
  Rat r = vv.pow(-la.size()) * t.pow(-la.n_stat());
  if (la.length() % 2) r = -r;
  for (int k = 1; k <= la.length(); ++k) r *= t.pow(k - 1) * vv - uu;
  return r;
}

// ------------------------------------------------------------ correlators

Rat four_point_closed_term(const RegistryPtr& reg, const Partition& la) {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat ww = Rat::variable(reg, "w1") * Rat::variable(reg, "w2");
  Rat vv = Rat::variable(reg, "v1") * Rat::variable(reg, "v2");
  Rat num = one;
  for (int k = 1; k <= la.length(); ++k) num *= one - t.pow(k - 1) * ww / vv;
  return num / (t.pow(2 * la.n_stat()) * b_stat(la, one / t));
}

std::vector<Rat> four_point(const RegistryPtr& reg, int order,
                            FourPointMethod method) {
  Rat one = Rat::one(reg);
  std::vector<Rat> out;
  if (method == FourPointMethod::closed) {
    for (int n = 0; n <= order; ++n) {
      Rat acc = Rat::zero(reg);
      for (auto& la : partitions_of(n)) acc += four_point_closed_term(reg, la);
      out.push_back(acc);
    }
    return out;
  }
  Rat uu = Rat::variable(reg, "u1") * Rat::variable(reg, "u2");
  Rat ww = Rat::variable(reg, "w1") * Rat::variable(reg, "w2");
  if (method == FourPointMethod::pbw) {
    Intertwiner::Config c1;  // F_u -> F_v
    c1.x1_src = x1_family(reg, 2, true);
    c1.x2_src = x2_family(reg, true);
    c1.x1_dst = x1_family(reg, 2, true, {"v1", "v2"});
    c1.x2_dst = x2_family(reg, true, {"v1", "v2"});
    c1.crystal = true;
    c1.level = order;
    Intertwiner phi1 = Intertwiner::solve(c1);
    Intertwiner::Config c2;  // F_v -> F_w
    c2.x1_src = c1.x1_dst;
    c2.x2_src = c1.x2_dst;
    c2.x1_dst = x1_family(reg, 2, true, {"w1", "w2"});
    c2.x2_dst = x2_family(reg, true, {"w1", "w2"});
    c2.crystal = true;
    c2.level = order;
    Intertwiner phi2 = Intertwiner::solve(c2);

    std::vector<FamilyPtr> vfams{c1.x1_dst, c1.x2_dst};
    FockState uvac = FockState::vacuum(c1.x1_src->weights());
    FockState phi1_vac = phi1.apply(uvac);
    for (int n = 0; n <= order; ++n) {
      auto tuples = enumerate_tuples(n, 2);
      const int k = static_cast<int>(tuples.size());
      Rat acc = Rat::zero(reg);
      for (int i = 0; i < k; ++i) {
        Rat right = pairing(pbw_bra(vfams, tuples[i]), phi1_vac);
        if (right.is_zero()) continue;
        for (int j = 0; j < k; ++j) {
          Rat sinv = shapovalov_inverse_closed(
              reg, tuples[j], tuples[i]);  // S^{mu la} over F_v, v-weights
          if (sinv.is_zero()) continue;
          // rename the u-weights of the closed form to v
          Rat sinv_v = sinv.substitute(
              {{"u1", Rat::variable(reg, "v1")}, {"u2", Rat::variable(reg, "v2")}});
          Rat left = phi2.vacuum_element(pbw_ket(vfams, tuples[j]));
          acc += left * sinv_v * right;
        }
      }
      out.push_back(acc / (uu / ww).pow(n));
    }
    return out;
  }
  // AFLT route: insert the integral-form basis with its computed norms
  for (int n = 0; n <= order; ++n) {
    Rat acc = Rat::zero(reg);
    if (n == 0) {
      out.push_back(one);
      continue;
    }
    GMacTable tab = crystal_generalized_hl(reg, n);
    ShapovalovPair sh = crystal_shapovalov(reg, n);
    // all tables above live on u-named weights; v is the inner module
    std::map<std::string, Rat> to_v{{"u1", Rat::variable(reg, "v1")},
                                    {"u2", Rat::variable(reg, "v2")}};
    Intertwiner::Config c1;
    c1.x1_src = x1_family(reg, 2, true);
    c1.x2_src = x2_family(reg, true);
    c1.x1_dst = x1_family(reg, 2, true, {"v1", "v2"});
    c1.x2_dst = x2_family(reg, true, {"v1", "v2"});
    c1.crystal = true;
    c1.level = n;
    Intertwiner phi1 = Intertwiner::solve(c1);
    Intertwiner::Config c2;
    c2.x1_src = c1.x1_dst;
    c2.x2_src = c1.x2_dst;
    c2.x1_dst = x1_family(reg, 2, true, {"w1", "w2"});
    c2.x2_dst = x2_family(reg, true, {"w1", "w2"});
    c2.crystal = true;
    c2.level = n;
    Intertwiner phi2 = Intertwiner::solve(c2);
    std::vector<FamilyPtr> vfams{c1.x1_dst, c1.x2_dst};
    FockState phi1_vac = phi1.apply(FockState::vacuum(c1.x1_src->weights()));
    const int k = static_cast<int>(tab.tuples.size());
    for (int j = 0; j < k; ++j) {
      // |K_la> over F_v and <K_la| over F_v via the v-renamed tables
      FockState ketK(c1.x1_dst->weights());
      FockState braK(c1.x1_dst->weights());
      for (int i = 0; i < k; ++i) {
        Rat av = tab.alpha_scaled(j, i).substitute(to_v);
        Rat bv = tab.beta(j, i).substitute(to_v);
        if (!av.is_zero())
          ketK = ketK + pbw_ket(vfams, tab.tuples[i]).scaled(av);
        if (!bv.is_zero())
          braK = braK + pbw_bra(vfams, tab.tuples[i]).scaled(bv);
      }
      Rat norm = Rat::zero(reg);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
          Rat s = sh.s(a, b).substitute(to_v);
          norm += tab.beta(j, a).substitute(to_v) * s *
                  tab.alpha_scaled(j, b).substitute(to_v);
        }
      Rat left = phi2.vacuum_element(ketK);
      Rat right = pairing(braK, phi1_vac);
      acc += left * right / norm;
    }
    out.push_back(acc / (uu / ww).pow(n));
  }
  return out;
}

// --------------------------------------------------- factorization checks

Rat comparison_lhs_term(const RegistryPtr& reg, const PartitionTuple& pair) {
  Rat acc = Rat::one(reg);
  const Partition empty;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      Rat warg = Rat::variable(reg, "w" + std::to_string(i)) /
                 Rat::variable(reg, "v" + std::to_string(j));
      Rat varg = Rat::variable(reg, "v" + std::to_string(i)) /
                 Rat::variable(reg, "v" + std::to_string(j));
      acc *= nekrasov_ntilde(reg, empty, pair[j - 1], warg);
      acc /= nekrasov_ntilde(reg, pair[i - 1], pair[j - 1], varg);
    }
  return acc;
}

FactorizationCheck strange_factorization_check(const RegistryPtr& reg,
                                               const Partition& la) {
  FactorizationCheck out;
  out.la = la;
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat ww = Rat::variable(reg, "w1") * Rat::variable(reg, "w2");
  Rat vv = Rat::variable(reg, "v1") * Rat::variable(reg, "v2");
  Rat lhs = Rat::zero(reg);
  for (auto& pair : interleavings(la)) lhs += comparison_lhs_term(reg, pair);
  Rat rhs = four_point_closed_term(reg, la) * (ww / vv).pow(la.size() - la.length()) *
            t.pow(2 * la.n_stat() - la.i_stat());
  out.identity_holds = lhs.eq(rhs);
  // ratio-only dependence: rescale w1 -> w1 Y, w2 -> w2 / Y
  Rat y = Rat::variable(reg, "Y");
  Rat lhs_scaled = lhs.substitute({{"w1", Rat::variable(reg, "w1") * y},
                                   {"w2", Rat::variable(reg, "w2") / y}});
  out.ratio_only = lhs_scaled.eq(lhs);
  return out;
}

bool summed_comparison_check(const RegistryPtr& reg, int n) {
  Rat lhs = Rat::zero(reg);
  for (auto& pair : enumerate_tuples(n, 2)) lhs += comparison_lhs_term(reg, pair);
  Rat rhs = Rat::zero(reg);
  for (auto& la : partitions_of(n)) rhs += four_point_closed_term(reg, la);
  return lhs.eq(rhs);
}

}  // namespace qvir
