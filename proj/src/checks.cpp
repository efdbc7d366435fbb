#include "qvir/checks.hpp"

#include <sstream>

namespace qvir {

AlgebraFamilies dvir_algebra(const RegistryPtr& reg, bool crystal) {
  AlgebraFamilies a;
  a.t = t_family(reg, crystal);
  a.crystal = crystal;
  return a;
}

AlgebraFamilies dim_algebra(const RegistryPtr& reg, bool crystal) {
  AlgebraFamilies a;
  a.x1 = x1_family(reg, 2, crystal);
  a.x2 = x2_family(reg, crystal);
  a.crystal = crystal;
  return a;
}

std::vector<Rat> exp_series(const std::function<Rat(int)>& c, int order,
                            const RegistryPtr& reg) {
  std::vector<Rat> f(order + 1, Rat::zero(reg));
  f[0] = Rat::one(reg);
  for (int k = 1; k <= order; ++k) {
    Rat acc = Rat::zero(reg);
    for (int j = 1; j <= k; ++j) acc += Rat::integer(reg, j) * c(j) * f[k - j];
    f[k] = acc / Rat::integer(reg, k);
  }
  return f;
}

namespace {

// matrix of A_a B_b from `level`, zero-shaped when the grading kills it
RatMatrix mode_product(const FamilyPtr& a, int na, const FamilyPtr& b, int nb,
                       int level) {
  const RegistryPtr& reg = a->weights().reg;
  int dim_in = static_cast<int>(enumerate_tuples(level, a->weights().N).size());
  int out_level = level - na - nb;
  int dim_out =
      out_level < 0
          ? 0
          : static_cast<int>(enumerate_tuples(out_level, a->weights().N).size());
  if (level - nb < 0 || out_level < 0) return rat_matrix(dim_out, dim_in, reg);
  auto mb = b->matrix(nb, level);
  auto ma = a->matrix(na, level - nb);
  return (*ma) * (*mb);
}

struct RhsBuilder {
  const RegistryPtr& reg;
  int level;
  RatMatrix acc;
  int tail;
  std::string* detail;
  bool tail_ok = true;

  RhsBuilder(const RegistryPtr& r, int lvl, int rows, int cols, int tl,
             std::string* det)
      : reg(r), level(lvl), acc(rat_matrix(rows, cols, r)), tail(tl), detail(det) {}

  // adds s * A_a B_b; returns false when the grading already kills it
  bool add(const Rat& s, const FamilyPtr& a, int na, const FamilyPtr& b, int nb) {
    if (level - nb < 0 || level - na - nb < 0) return false;
    RatMatrix m = mode_product(a, na, b, nb, level);
    if (m.rows() == acc.rows() && m.cols() == acc.cols())
      acc = acc + m * s;
    return true;
  }

  // infinite tail sum: term(l) gives (scalar, A, a-mode, B, b-mode); stops at
  // the grading cutoff and asserts `tail` more dropped terms act as zero
  void add_tail(const std::function<std::tuple<Rat, FamilyPtr, int, FamilyPtr, int>(
                    int)>& term,
                int lstart) {
    int l = lstart;
    for (;; ++l) {
      auto [s, a, na, b, nb] = term(l);
      if (level - nb < 0) break;  // right factor annihilates every vector
      add(s, a, na, b, nb);
    }
    for (int extra = 0; extra < tail; ++extra) {
      auto [s, a, na, b, nb] = term(l + extra);
      if (level - nb >= 0) {
        tail_ok = false;
        if (detail) *detail += " dropped tail term still acts at l=" +
                               std::to_string(l + extra) + ";";
      }
    }
  }
};

}  // namespace

bool commutator_holds(const AlgebraFamilies& alg, RelPair pair, int n, int m,
                      int level, int tail, std::string* detail) {
  const FamilyPtr& left =
      pair == RelPair::TT ? alg.t : (pair == RelPair::X2X2 ? alg.x2 : alg.x1);
  const FamilyPtr& right =
      pair == RelPair::TT ? alg.t : (pair == RelPair::X1X1 ? alg.x1 : alg.x2);
  const RegistryPtr& reg = left->weights().reg;
  const Rat one = Rat::one(reg);
  const Rat t = Rat::variable(reg, "t");
  const int N = left->weights().N;
  const int dim_in = static_cast<int>(enumerate_tuples(level, N).size());
  const int out_level = level - n - m;
  const int dim_out =
      out_level < 0 ? 0 : static_cast<int>(enumerate_tuples(out_level, N).size());

  // LHS = left_n right_m - right_m left_n
  RatMatrix lhs = rat_matrix(dim_out, dim_in, reg);
  {
    RatMatrix p1 = mode_product(left, n, right, m, level);
    RatMatrix p2 = mode_product(right, m, left, n, level);
    if (p1.rows() == dim_out) lhs = lhs + p1;
    if (p2.rows() == dim_out) lhs = lhs - p2;
  }

  RhsBuilder rhs(reg, level, dim_out, dim_in, tail, detail);

  auto npos = [](int v) { return std::max(v, 0); };
  auto nneg = [](int v) { return std::max(-v, 0); };

  if (!alg.crystal) {
    Rat q = Rat::variable(reg, "q");
    Rat p = q / t;
    Rat central_pref = (one - q) * (one - one / t) / (one - p);
    // mode-weight doubled exponents: |n| for T and X1, n for X2
    auto s2 = [&](const FamilyPtr& f, int mode) {
      return f == alg.x2 ? mode : std::abs(mode);
    };
    std::function<Rat(int)> coeff;
    if (pair == RelPair::TT)
      coeff = [&, reg](int k) {
        return (one - q.pow(k)) * (one - t.pow(-k)) /
               (Rat::integer(reg, k) * (one + p.pow(k)));
      };
    else if (pair == RelPair::X2X2)
      coeff = [&, reg](int k) {
        return (one - q.pow(k)) * (one - t.pow(-k)) * (one + p.pow(k)) /
               Rat::integer(reg, k);
      };
    else
      coeff = [&, reg](int k) {
        return (one - q.pow(k)) * (one - t.pow(-k)) / Rat::integer(reg, k);
      };
    int lmax = 2 * level + std::abs(n) + std::abs(m) + tail + 2;
    std::vector<Rat> f = exp_series(coeff, lmax, reg);

    auto gate = [&](const FamilyPtr& fa, int a, const FamilyPtr& fb, int b) {
      // p^{(s2(n)+s2(m)-s2(a)-s2(b))/2}
      int e = s2(left, n) + s2(right, m) - s2(fa, a) - s2(fb, b);
      if (pair == RelPair::X1X2) {
        // the X1 X2 relation carries p^l on its first product
      }
      if (e % 2 != 0) throw Error("internal: odd relation gate");
      return p.pow(e / 2);
    };

    if (pair == RelPair::TT || pair == RelPair::X1X1 || pair == RelPair::X2X2) {
      rhs.add_tail(
          [&](int l) {
            Rat s = -f[l] * gate(left, n - l, right, m + l);
            return std::make_tuple(s, left, n - l, right, m + l);
          },
          1);
      rhs.add_tail(
          [&](int l) {
            Rat s = f[l] * gate(left, m - l, right, n + l);
            return std::make_tuple(s, left, m - l, right, n + l);
          },
          1);
      if (pair == RelPair::TT && n + m == 0) {
        Rat c = -central_pref * (p.pow(2 * npos(n)) - p.pow(2 * nneg(n)));
        for (int i = 0; i < dim_in; ++i) rhs.acc(i, i) += c;
      }
      if (pair == RelPair::X1X1) {
        // +central_pref (p^m - p^n) X2_{n+m}, scaled
        Rat c = central_pref *
                (p.pow(nneg(n) + npos(m)) - p.pow(npos(n) + nneg(m)));
        if (out_level >= 0) {
          auto x2m = alg.x2->matrix(n + m, level);
          rhs.acc = rhs.acc + (*x2m) * c;
        }
      }
    } else {  // X1X2: [X1_n, X2_m] = -sum f1_l (p^l X1_{n-l} X2_{m+l}
              //                                   - X2_{m-l} X1_{n+l})
      rhs.add_tail(
          [&](int l) {
            int e = std::abs(n) + m + 2 * l - std::abs(n - l) - (m + l);
            if (e % 2 != 0) throw Error("internal: odd relation gate");
            Rat s = -f[l] * p.pow(e / 2);
            return std::make_tuple(s, alg.x1, n - l, alg.x2, m + l);
          },
          1);
      rhs.add_tail(
          [&](int l) {
            int e = std::abs(n) + l - std::abs(n + l);
            if (e % 2 != 0) throw Error("internal: odd relation gate");
            Rat s = f[l] * p.pow(e / 2);
            return std::make_tuple(s, alg.x2, m - l, alg.x1, n + l);
          },
          1);
    }
  } else {
    // crystal relations
    Rat c1 = one - one / t;  // (1 - t^{-1})
    if (pair == RelPair::TT || pair == RelPair::X1X1) {
      const FamilyPtr& X = pair == RelPair::TT ? alg.t : alg.x1;
      bool swapped = false;
      int nn = n, mm = m;
      if (nn == mm) {
        // commutator of equal modes vanishes; rhs stays zero
      } else {
        if (nn < mm) {
          std::swap(nn, mm);
          swapped = true;
        }
        // now nn > mm
        Rat sgn = swapped ? -one : one;
        if ((nn > mm && mm > 0) || (0 > nn && nn > mm)) {
          for (int l = 1; l <= nn - mm; ++l)
            rhs.add(-sgn * c1, X, nn - l, X, mm + l);
        } else if (nn > 0 && mm == 0) {
          for (int l = 1; l <= nn - (pair == RelPair::X1X1 ? 1 : 0); ++l)
            rhs.add(-sgn * c1, X, nn - l, X, l);
          Rat w = pair == RelPair::TT ? (t - one / t) : c1;
          rhs.add_tail(
              [&](int l) {
                Rat s = -sgn * w * (pair == RelPair::TT ? t.pow(-l) : one);
                return std::make_tuple(s, X, -l, X, nn + l);
              },
              1);
          if (pair == RelPair::X1X1 && out_level >= 0) {
            auto x2m = alg.x2->matrix(nn, level);
            rhs.acc = rhs.acc + (*x2m) * (sgn * c1);
          }
        } else if (nn == 0 && mm < 0) {
          for (int l = 1; l <= -mm - (pair == RelPair::X1X1 ? 1 : 0); ++l)
            rhs.add(-sgn * c1, X, -l, X, mm + l);
          Rat w = pair == RelPair::TT ? (t - one / t) : c1;
          rhs.add_tail(
              [&](int l) {
                Rat s = -sgn * w * (pair == RelPair::TT ? t.pow(-l) : one);
                return std::make_tuple(s, X, mm - l, X, l);
              },
              1);
          if (pair == RelPair::X1X1 && out_level >= 0) {
            auto x2m = alg.x2->matrix(mm, level);
            rhs.acc = rhs.acc + (*x2m) * (sgn * c1);
          }
        } else if (nn > 0 && mm < 0) {
          if (pair == RelPair::TT) {
            rhs.add(-sgn * c1, X, mm, X, nn);
            rhs.add_tail(
                [&](int l) {
                  Rat s = -sgn * (t - one / t) * t.pow(-l);
                  return std::make_tuple(s, X, mm - l, X, nn + l);
                },
                1);
            if (nn + mm == 0)
              for (int i = 0; i < dim_in; ++i) rhs.acc(i, i) += sgn * c1;
          } else {
            rhs.add_tail(
                [&](int l) {
                  Rat s = -sgn * c1;
                  return std::make_tuple(s, X, mm - l, X, nn + l);
                },
                0);
            if (out_level >= 0) {
              auto x2m = alg.x2->matrix(nn + mm, level);
              rhs.acc = rhs.acc + (*x2m) * (sgn * c1);
            }
          }
        }
      }
    } else if (pair == RelPair::X1X2) {
      if (n > 0) {
        rhs.add_tail(
            [&](int l) {
              return std::make_tuple(c1, alg.x2, m - l, alg.x1, n + l);
            },
            1);
      } else if (n == 0) {
        rhs.add_tail(
            [&](int l) {
              return std::make_tuple(-c1, alg.x1, -l, alg.x2, m + l);
            },
            1);
        rhs.add_tail(
            [&](int l) {
              return std::make_tuple(c1, alg.x2, m - l, alg.x1, l);
            },
            1);
      } else {
        rhs.add_tail(
            [&](int l) {
              return std::make_tuple(-c1, alg.x1, n - l, alg.x2, m + l);
            },
            1);
      }
    } else {  // X2X2 crystal
      rhs.add_tail(
          [&](int l) {
            return std::make_tuple(-c1, alg.x2, n - l, alg.x2, m + l);
          },
          1);
      rhs.add_tail(
          [&](int l) {
            return std::make_tuple(c1, alg.x2, m - l, alg.x2, n + l);
          },
          1);
    }
  }

  if (!rhs.tail_ok) return false;
  bool ok = matrix_eq(lhs, rhs.acc);
  if (!ok && detail) {
    std::ostringstream os;
    os << "relation failed: pair=" << static_cast<int>(pair) << " n=" << n
       << " m=" << m << " level=" << level;
    *detail += os.str();
  }
  return ok;
}

}  // namespace qvir
