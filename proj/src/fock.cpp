#include "qvir/fock.hpp"

#include <algorithm>
#include <sstream>

namespace qvir {

namespace {

// canonical tuple bases, cached
const std::vector<PartitionTuple>& tuple_basis(int level, int N) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<PartitionTuple>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(level, N);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, enumerate_tuples(level, N)).first;
  return it->second;
}

int tuple_index(const std::vector<PartitionTuple>& basis,
                const PartitionTuple& t) {
  for (size_t i = 0; i < basis.size(); ++i)
    if (basis[i] == t) return static_cast<int>(i);
  throw Error("tuple not in basis: " + t.text());
}

Rat binom(const RegistryPtr& reg, int m, int j) {
  mpz_class v;
  mpz_bin_uiui(v.get_mpz_t(), m, j);
  return Rat::rational(reg, mpq_class(v));
}

Rat inv_factorial(const RegistryPtr& reg, int m) {
  mpz_class f = 1;
  for (int i = 2; i <= m; ++i) f *= i;
  return Rat::rational(reg, mpq_class(1, f));
}

}  // namespace

Rat FockWeights::bracket(int n) const {
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat num = Rat::integer(reg, n);
  if (!crystal) num *= one - Rat::variable(reg, "q").pow(n);
  return num / (one - t.pow(n));
}

bool FockWeights::compatible(const FockWeights& o) const {
  if (N != o.N || crystal != o.crystal || !reg->same_names(*o.reg)) return false;
  for (int i = 0; i < N; ++i)
    if (!(u[i] == o.u[i])) return false;
  return true;
}

FockState FockState::vacuum(FockWeights w) {
  FockState s(w);
  s.add(PartitionTuple(std::vector<Partition>(w.N)), Rat::one(w.reg));
  return s;
}

int FockState::max_level() const {
  int d = 0;
  for (auto& [nu, v] : c_) d = std::max(d, nu.size());
  return d;
}

void FockState::add(const PartitionTuple& nu, const Rat& v) {
  if (v.is_zero()) return;
  auto it = c_.find(nu);
  if (it == c_.end()) {
    c_.emplace(nu, v);
  } else {
    it->second += v;
    if (it->second.is_zero()) c_.erase(it);
  }
}

Rat FockState::coeff(const PartitionTuple& nu) const {
  auto it = c_.find(nu);
  return it == c_.end() ? Rat::zero(w_.reg) : it->second;
}

FockState FockState::operator+(const FockState& o) const {
  FockState r = *this;
  for (auto& [nu, v] : o.c_) r.add(nu, v);
  return r;
}

FockState FockState::operator-(const FockState& o) const {
  FockState r = *this;
  for (auto& [nu, v] : o.c_) r.add(nu, -v);
  return r;
}

FockState FockState::scaled(const Rat& s) const {
  FockState r(w_);
  if (s.is_zero()) return r;
  for (auto& [nu, v] : c_) r.c_.emplace(nu, v * s);
  return r;
}

FockState FockState::level_component(int d) const {
  FockState r(w_);
  for (auto& [nu, v] : c_)
    if (nu.size() == d) r.c_.emplace(nu, v);
  return r;
}

FockState FockState::limit_q_to_zero(const FockWeights& cw) const {
  FockState r(cw);
  for (auto& [nu, v] : c_) r.add(nu, v.limit_at_zero_checked("q"));
  return r;
}

bool FockState::eq(const FockState& o, bool fp) const {
  for (auto& [nu, v] : c_)
    if (!v.eq(o.coeff(nu), fp)) return false;
  for (auto& [nu, v] : o.c_)
    if (c_.find(nu) == c_.end() && !v.eq(Rat::zero(w_.reg), fp)) return false;
  return true;
}

std::string FockState::text() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [nu, v] : c_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << v.text() << ")*a" << nu.text();
  }
  return os.str();
}

Rat gram_value(const FockWeights& w, const PartitionTuple& nu) {
  Rat g = Rat::one(w.reg);
  for (int s = 0; s < w.N; ++s) {
    std::map<int, int> mult;
    for (int p : nu[s].parts()) ++mult[p];
    for (auto& [v, m] : mult) {
      g *= w.bracket(v).pow(m);
      long fact = 1;
      for (int i = 2; i <= m; ++i) fact *= i;
      g *= Rat::integer(w.reg, fact);
    }
  }
  return g;
}

Rat pairing(const FockState& bra_mirror, const FockState& ket) {
  if (!bra_mirror.weights().compatible(ket.weights()))
    throw Error("pairing: incompatible modules");
  Rat acc = Rat::zero(ket.weights().reg);
  for (auto& [nu, b] : bra_mirror.coeffs()) {
    Rat x = ket.coeff(nu);
    if (x.is_zero()) continue;
    acc += b * x * gram_value(ket.weights(), nu);
  }
  return acc;
}

// -------------------------------------------------------- spec application

namespace {

struct AnnOutcome {
  std::vector<Partition> remaining;
  Rat weight;
  int removed;
};

// every way of contracting annihilation modes against the monomial
void for_each_annihilation(const FockWeights& w, const VertexSpec& spec,
                           const PartitionTuple& nu,
                           const std::function<void(const AnnOutcome&)>& fn) {
  struct Slot {
    int species;
    int value;
    int mult;
  };
  std::vector<Slot> slots;
  for (int s = 0; s < w.N; ++s) {
    std::map<int, int> mult;
    for (int p : nu[s].parts()) ++mult[p];
    for (auto& [v, m] : mult) slots.push_back({s, v, m});
  }
  std::vector<int> take(slots.size(), 0);
  std::function<void(size_t, Rat, int)> rec = [&](size_t i, Rat wgt, int rem) {
    if (i == slots.size()) {
      AnnOutcome out;
      out.remaining.resize(w.N);
      std::vector<std::vector<int>> parts(w.N);
      for (size_t k = 0; k < slots.size(); ++k)
        for (int c = 0; c < slots[k].mult - take[k]; ++c)
          parts[slots[k].species].push_back(slots[k].value);
      for (int s = 0; s < w.N; ++s) {
        std::sort(parts[s].rbegin(), parts[s].rend());
        out.remaining[s] = Partition(std::move(parts[s]));
      }
      out.weight = wgt;
      out.removed = rem;
      fn(out);
      return;
    }
    const Slot& sl = slots[i];
    Rat base = spec.ann ? spec.ann(sl.species, sl.value) : Rat();
    Rat contracted = base * w.bracket(sl.value);
    Rat acc = wgt;
    for (int j = 0; j <= sl.mult; ++j) {
      take[i] = j;
      if (j > 0) {
        if (contracted.is_zero()) break;
        acc = acc * contracted;
      }
      rec(i + 1, acc * binom(w.reg, sl.mult, j), rem + j * sl.value);
    }
    take[i] = 0;
  };
  rec(0, Rat::one(w.reg), 0);
}

// coefficient of one species' creation multiset: prod_v cre^{m_v} / m_v!
Rat creation_coeff(const FockWeights& w, const VertexSpec& spec, int s,
                   const Partition& ka) {
  Rat c = Rat::one(w.reg);
  std::map<int, int> mult;
  for (int p : ka.parts()) ++mult[p];
  for (auto& [v, m] : mult) {
    Rat base = spec.cre ? spec.cre(s, v) : Rat();
    if (base.is_zero()) return Rat();
    c *= base.pow(m) * inv_factorial(w.reg, m);
  }
  return c;
}

// every creation multiset of a given total size, with its coefficient
void for_each_creation(const FockWeights& w, const VertexSpec& spec, int total,
                       const std::function<void(const std::vector<Partition>&,
                                                const Rat&)>& fn) {
  std::vector<Partition> created(w.N);
  std::function<void(int, int, Rat)> rec = [&](int s, int rest, Rat wgt) {
    if (s == w.N - 1) {
      for (auto& ka : partitions_of(rest)) {
        Rat c = creation_coeff(w, spec, s, ka);
        if (c.is_zero() && ka.length() > 0) continue;
        created[s] = ka;
        fn(created, wgt * c);
      }
      return;
    }
    for (int k = 0; k <= rest; ++k)
      for (auto& ka : partitions_of(k)) {
        Rat c = creation_coeff(w, spec, s, ka);
        if (c.is_zero() && ka.length() > 0) continue;
        created[s] = ka;
        rec(s + 1, rest - k, wgt * c);
      }
  };
  rec(0, total, Rat::one(w.reg));
}

PartitionTuple merge_tuple(const std::vector<Partition>& a,
                           const std::vector<Partition>& b) {
  std::vector<Partition> out(a.size());
  for (size_t s = 0; s < a.size(); ++s) {
    std::vector<int> parts = a[s].parts();
    parts.insert(parts.end(), b[s].parts().begin(), b[s].parts().end());
    std::sort(parts.rbegin(), parts.rend());
    out[s] = Partition(std::move(parts));
  }
  return PartitionTuple(std::move(out));
}

}  // namespace

FockState apply_spec_mode(const FockWeights& w, const VertexSpec& spec, int n,
                          const FockState& s) {
  FockState out(spec.target ? *spec.target : w);
  for (auto& [nu, c] : s.coeffs()) {
    for_each_annihilation(w, spec, nu, [&](const AnnOutcome& ann) {
      int need = ann.removed - n;
      if (need < 0) return;
      for_each_creation(w, spec, need,
                        [&](const std::vector<Partition>& created, const Rat& cw) {
                          out.add(merge_tuple(ann.remaining, created),
                                  c * ann.weight * cw * spec.zero_mode);
                        });
    });
  }
  return out;
}

FockState apply_spec_whole(const FockWeights& w, const VertexSpec& spec,
                           const std::string& xvar, int level_cap,
                           const FockState& s) {
  FockState out(spec.target ? *spec.target : w);
  Rat x = Rat::variable(w.reg, xvar);
  for (auto& [nu, c] : s.coeffs()) {
    const int level = nu.size();
    for_each_annihilation(w, spec, nu, [&](const AnnOutcome& ann) {
      int base = level - ann.removed;
      for (int need = 0; base + need <= level_cap; ++need) {
        for_each_creation(
            w, spec, need, [&](const std::vector<Partition>& created, const Rat& cw) {
              out.add(merge_tuple(ann.remaining, created),
                      c * ann.weight * cw * spec.zero_mode *
                          x.pow(need - ann.removed));
            });
      }
    });
  }
  return out;
}

OperatorFamily::OperatorFamily(std::string name, FockWeights w,
                               std::vector<Term> terms)
    : name_(std::move(name)), w_(std::move(w)), terms_(std::move(terms)) {}

FockState OperatorFamily::apply(int n, const FockState& s) const {
  FockState out(w_);
  for (auto& term : terms_) {
    Rat g = term.gate(n);
    if (g.is_zero()) continue;
    out = out + apply_spec_mode(w_, term.spec, n, s).scaled(g);
  }
  return out;
}

FockState OperatorFamily::apply_bra(int n, const FockState& bra_mirror) const {
  // <phi| Op_n in mirror coordinates equals the mode -n of the adjoint spec
  // (creation and annihilation swapped) applied as a ket
  FockState out(w_);
  for (auto& term : terms_) {
    Rat g = term.gate(n);
    if (g.is_zero()) continue;
    VertexSpec adj;
    adj.cre = term.spec.ann;
    adj.ann = term.spec.cre;
    adj.zero_mode = term.spec.zero_mode;
    out = out + apply_spec_mode(w_, adj, -n, bra_mirror).scaled(g);
  }
  return out;
}

std::shared_ptr<const RatMatrix> OperatorFamily::matrix(int n,
                                                        int level_from) const {
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find({n, level_from});
    if (it != cache_.end()) return it->second;
  }
  const int level_to = level_from - n;
  auto& from = tuple_basis(level_from, w_.N);
  auto result = std::make_shared<RatMatrix>();
  if (level_to < 0) {
    *result = rat_matrix(0, from.size(), w_.reg);
  } else {
    auto& to = tuple_basis(level_to, w_.N);
    *result = rat_matrix(to.size(), from.size(), w_.reg);
    for (size_t j = 0; j < from.size(); ++j) {
      FockState in(w_);
      in.add(from[j], Rat::one(w_.reg));
      FockState img = apply(n, in);
      for (auto& [nu, v] : img.coeffs())
        (*result)(tuple_index(to, nu), j) = v;
    }
  }
  std::lock_guard<std::mutex> lk(mu_);
  return cache_.emplace(std::make_pair(n, level_from), result).first->second;
}

// ----------------------------------------------------------- the algebras

FockWeights dvir_weights(const RegistryPtr& reg, bool crystal) {
  FockWeights w;
  w.reg = reg;
  w.N = 1;
  w.u = {Rat::variable(reg, "k")};
  w.crystal = crystal;
  return w;
}

FockWeights dim_weights(const RegistryPtr& reg, int N, bool crystal,
                        const std::vector<std::string>& names) {
  FockWeights w;
  w.reg = reg;
  w.N = N;
  for (int i = 1; i <= N; ++i) {
    std::string nm = names.empty() ? "u" + std::to_string(i) : names.at(i - 1);
    w.u.push_back(Rat::variable(reg, nm));
  }
  w.crystal = crystal;
  return w;
}

namespace {

// gates
std::function<Rat(int)> gate_one(const RegistryPtr& reg) {
  return [reg](int) { return Rat::one(reg); };
}
std::function<Rat(int)> gate_theta_le0(const RegistryPtr& reg) {
  return [reg](int n) { return n <= 0 ? Rat::one(reg) : Rat::zero(reg); };
}
std::function<Rat(int)> gate_theta_ge0(const RegistryPtr& reg) {
  return [reg](int n) { return n >= 0 ? Rat::one(reg) : Rat::zero(reg); };
}
std::function<Rat(int)> gate_p_pos(const RegistryPtr& reg) {
  Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
  return [p](int n) { return p.pow(std::max(n, 0)); };
}
std::function<Rat(int)> gate_p_neg(const RegistryPtr& reg) {
  Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
  return [p](int n) { return p.pow(std::max(-n, 0)); };
}
std::function<Rat(int)> gate_p_lin(const RegistryPtr& reg) {
  Rat p = Rat::variable(reg, "q") / Rat::variable(reg, "t");
  return [p](int n) { return p.pow(n); };
}

}  // namespace

FamilyPtr t_family(const RegistryPtr& reg, bool crystal) {
  FockWeights w = dvir_weights(reg, crystal);
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat k = Rat::variable(reg, "k");
  std::vector<OperatorFamily::Term> terms;
  if (!crystal) {
    Rat q = Rat::variable(reg, "q");
    // Lambda^+ at shifted argument: creation -(1-t^m)/(m (t^m + q^m)),
    // annihilation -(1-t^m)/m, zero mode k
    VertexSpec plus;
    plus.cre = [=](int, int m) {
      return -(one - t.pow(m)) / (Rat::integer(reg, m) * (t.pow(m) + q.pow(m)));
    };
    plus.ann = [=](int, int m) { return -(one - t.pow(m)) / Rat::integer(reg, m); };
    plus.zero_mode = k;
    VertexSpec minus;
    minus.cre = [=](int, int m) {
      return (one - t.pow(m)) / (Rat::integer(reg, m) * (t.pow(m) + q.pow(m)));
    };
    minus.ann = [=](int, int m) { return (one - t.pow(m)) / Rat::integer(reg, m); };
    minus.zero_mode = one / k;
    terms.push_back({gate_p_pos(reg), plus});
    terms.push_back({gate_p_neg(reg), minus});
  } else {
    VertexSpec plus;
    plus.cre = [=](int, int m) { return (one - t.pow(-m)) / Rat::integer(reg, m); };
    plus.ann = [=](int, int m) { return -(one - t.pow(m)) / Rat::integer(reg, m); };
    plus.zero_mode = k;
    VertexSpec minus;
    minus.cre = [=](int, int m) { return -(one - t.pow(-m)) / Rat::integer(reg, m); };
    minus.ann = [=](int, int m) { return (one - t.pow(m)) / Rat::integer(reg, m); };
    minus.zero_mode = one / k;
    terms.push_back({gate_theta_le0(reg), plus});
    terms.push_back({gate_theta_ge0(reg), minus});
  }
  return std::make_shared<OperatorFamily>(crystal ? "Tt" : "T",
                                          std::move(w), std::move(terms));
}

FamilyPtr x1_family(const RegistryPtr& reg, int N, bool crystal,
                    const std::vector<std::string>& names) {
  FockWeights w = dim_weights(reg, N, crystal, names);
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  auto cre_eta = [=](int m) { return (one - t.pow(-m)) / Rat::integer(reg, m); };
  auto ann_eta = [=](int m) { return -(one - t.pow(m)) / Rat::integer(reg, m); };
  std::vector<OperatorFamily::Term> terms;

  if (N == 1) {
    VertexSpec e;
    e.cre = [=](int, int m) { return cre_eta(m); };
    e.ann = [=](int, int m) { return ann_eta(m); };
    e.zero_mode = w.u[0];
    terms.push_back({gate_one(reg), e});
    return std::make_shared<OperatorFamily>(crystal ? "X1t[1]" : "X1[1]",
                                            std::move(w), std::move(terms));
  }

  if (N == 2 && !crystal) {
    Rat q = Rat::variable(reg, "q");
    Rat p = q / t;
    // W1: species-1 vertex, conjugated so every entry carries integer powers
    VertexSpec w1;
    w1.cre = [=](int s, int m) {
      return s == 0 ? p.pow(m) * cre_eta(m) : Rat::zero(reg);
    };
    w1.ann = [=](int s, int m) {
      return s == 0 ? p.pow(-m) * ann_eta(m) : Rat::zero(reg);
    };
    w1.zero_mode = w.u[0];
    // W2: the phi-dressed species-2 vertex
    VertexSpec w2;
    w2.cre = [=](int s, int m) {
      if (s == 0) return (one - t.pow(-m)) * (p.pow(m) - one) / Rat::integer(reg, m);
      return cre_eta(m);
    };
    w2.ann = [=](int s, int m) { return s == 1 ? ann_eta(m) : Rat::zero(reg); };
    w2.zero_mode = w.u[1];
    terms.push_back({gate_p_pos(reg), w1});
    terms.push_back({gate_p_pos(reg), w2});
    return std::make_shared<OperatorFamily>("X1[2]", std::move(w), std::move(terms));
  }

  if (N == 2 && crystal) {
    VertexSpec l1;
    l1.cre = [=](int s, int m) { return s == 0 ? cre_eta(m) : Rat::zero(reg); };
    l1.ann = [=](int s, int m) { return s == 0 ? ann_eta(m) : Rat::zero(reg); };
    l1.zero_mode = w.u[0];
    VertexSpec l2;
    l2.cre = [=](int s, int m) {
      return s == 0 ? -cre_eta(m) : cre_eta(m);
    };
    l2.ann = [=](int s, int m) { return s == 1 ? ann_eta(m) : Rat::zero(reg); };
    l2.zero_mode = w.u[1];
    terms.push_back({gate_theta_ge0(reg), l1});
    terms.push_back({gate_theta_le0(reg), l2});
    return std::make_shared<OperatorFamily>("X1t[2]", std::move(w), std::move(terms));
  }

  if (N == 3 && !crystal) {
    // integer A-normalization; used for the constant mode only
    Rat q = Rat::variable(reg, "q");
    Rat p = q / t;
    for (int kspecies = 0; kspecies < 3; ++kspecies) {
      VertexSpec lam;
      lam.cre = [=](int s, int m) {
        if (s < kspecies)
          return (one - t.pow(-m)) * (one - p.pow(-m)) / Rat::integer(reg, m);
        if (s == kspecies) return cre_eta(m);
        return Rat::zero(reg);
      };
      lam.ann = [=](int s, int m) {
        return s == kspecies ? ann_eta(m) : Rat::zero(reg);
      };
      lam.zero_mode = w.u[kspecies];
      terms.push_back({gate_one(reg), lam});
    }
    return std::make_shared<OperatorFamily>("X1[3]", std::move(w), std::move(terms));
  }

  throw Error("x1_family: unsupported arity");
}

FamilyPtr x2_family(const RegistryPtr& reg, bool crystal,
                    const std::vector<std::string>& names) {
  FockWeights w = dim_weights(reg, 2, crystal, names);
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  std::vector<OperatorFamily::Term> terms;
  auto ann_eta = [=](int m) { return -(one - t.pow(m)) / Rat::integer(reg, m); };
  auto cre_eta = [=](int m) { return (one - t.pow(-m)) / Rat::integer(reg, m); };
  if (!crystal) {
    Rat q = Rat::variable(reg, "q");
    Rat p = q / t;
    VertexSpec s2;
    s2.cre = [=](int s, int m) {
      return s == 0 ? p.pow(2 * m) * cre_eta(m) : p.pow(m) * cre_eta(m);
    };
    s2.ann = [=](int, int m) { return p.pow(-m) * ann_eta(m); };
    s2.zero_mode = w.u[0] * w.u[1];
    terms.push_back({gate_p_lin(reg), s2});
    return std::make_shared<OperatorFamily>("X2[2]", std::move(w), std::move(terms));
  }
  VertexSpec x2t;
  x2t.cre = [=](int s, int m) { return s == 1 ? cre_eta(m) : Rat::zero(reg); };
  x2t.ann = [=](int, int m) { return ann_eta(m); };
  x2t.zero_mode = w.u[0] * w.u[1];
  terms.push_back({gate_one(reg), x2t});
  return std::make_shared<OperatorFamily>("X2t[2]", std::move(w), std::move(terms));
}

FamilyPtr eta_family(const RegistryPtr& reg, int N, int species) {
  FockWeights w = dim_weights(reg, N, false);
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  VertexSpec e;
  e.cre = [=](int s, int m) {
    return s == species ? (one - t.pow(-m)) / Rat::integer(reg, m) : Rat::zero(reg);
  };
  e.ann = [=](int s, int m) {
    return s == species ? -(one - t.pow(m)) / Rat::integer(reg, m) : Rat::zero(reg);
  };
  e.zero_mode = one;
  std::vector<OperatorFamily::Term> terms{{gate_one(reg), e}};
  return std::make_shared<OperatorFamily>("eta", std::move(w), std::move(terms));
}

// --------------------------------------------------------------- PBW data

FockState pbw_ket(const std::vector<FamilyPtr>& families,
                  const PartitionTuple& la) {
  if (static_cast<int>(families.size()) != la.arity())
    throw Error("pbw_ket: arity mismatch");
  FockState s = FockState::vacuum(families[0]->weights());
  // innermost species first, smallest part first within a species
  for (size_t sp = 0; sp < families.size(); ++sp) {
    const Partition& part = la[static_cast<int>(sp)];
    for (int i = part.length(); i >= 1; --i)
      s = families[sp]->apply(-part.part(i), s);
  }
  return s;
}

FockState pbw_bra(const std::vector<FamilyPtr>& families,
                  const PartitionTuple& la) {
  if (static_cast<int>(families.size()) != la.arity())
    throw Error("pbw_bra: arity mismatch");
  FockState s = FockState::vacuum(families[0]->weights());
  for (size_t sp = 0; sp < families.size(); ++sp) {
    const Partition& part = la[static_cast<int>(sp)];
    for (int i = part.length(); i >= 1; --i)
      s = families[sp]->apply_bra(part.part(i), s);
  }
  return s;
}

RatMatrix pbw_matrix(const std::vector<FamilyPtr>& families, int level) {
  const FockWeights& w = families[0]->weights();
  auto& basis = tuple_basis(level, w.N);
  RatMatrix m = rat_matrix(basis.size(), basis.size(), w.reg);
  for (size_t j = 0; j < basis.size(); ++j) {
    FockState s = pbw_ket(families, basis[j]);
    for (auto& [nu, v] : s.coeffs()) m(tuple_index(basis, nu), j) = v;
  }
  return m;
}

FockState state_from_symfunc(const FockWeights& w, const SymFunc& f,
                             const std::vector<Rat>& species_coeffs) {
  FockState out(w);
  for (auto& [nu, c] : f.coeffs()) {
    FockState acc = FockState::vacuum(w).scaled(c);
    for (int part : nu.parts()) {
      FockState next(w);
      for (auto& [tup, v] : acc.coeffs())
        for (int s = 0; s < w.N; ++s) {
          if (species_coeffs[s].is_zero()) continue;
          std::vector<Partition> comps = tup.components();
          std::vector<int> parts = comps[s].parts();
          parts.push_back(part);
          std::sort(parts.rbegin(), parts.rend());
          comps[s] = Partition(std::move(parts));
          next.add(PartitionTuple(std::move(comps)), v * species_coeffs[s]);
        }
      acc = std::move(next);
    }
    out = out + acc;
  }
  return out;
}

FockState bra_from_symfunc(const FockWeights& w, const SymFunc& f,
                           const std::vector<Rat>& species_coeffs) {
  return state_from_symfunc(w, f, species_coeffs);
}

FockState pm_basis_state(const FockWeights& w, const Partition& la,
                         const Partition& mu) {
  if (w.N != 2 || !w.crystal) throw Error("pm_basis_state: crystal N=2 only");
  RegistryPtr reg = w.reg;
  Rat one = Rat::one(reg);
  Rat tinv = one / Rat::variable(reg, "t");
  // b^+_{-n} = b^(2)_{-n}; b^-_{-n} = -b^(1)_{-n} + b^(2)_{-n}
  SymFunc qmu = hall_littlewood_q(reg, mu, tinv);
  SymFunc qla = hall_littlewood_q(reg, la, tinv);
  FockState s = state_from_symfunc(w, qla, {-one, one});
  // multiply by Q_mu in the plus bosons
  FockState out(w);
  for (auto& [nu, c] : qmu.coeffs()) {
    FockState acc = s.scaled(c);
    for (int part : nu.parts()) {
      FockState next(w);
      for (auto& [tup, v] : acc.coeffs()) {
        std::vector<Partition> comps = tup.components();
        std::vector<int> parts = comps[1].parts();
        parts.push_back(part);
        std::sort(parts.rbegin(), parts.rend());
        comps[1] = Partition(std::move(parts));
        next.add(PartitionTuple(std::move(comps)), v);
      }
      acc = std::move(next);
    }
    out = out + acc;
  }
  Rat pref = (w.u[0] * w.u[1]).pow(mu.length()) * w.u[1].pow(la.length());
  return out.scaled(pref);
}

FockState pm_basis_bra(const FockWeights& w, const Partition& la,
                       const Partition& mu) {
  if (w.N != 2 || !w.crystal) throw Error("pm_basis_bra: crystal N=2 only");
  RegistryPtr reg = w.reg;
  Rat one = Rat::one(reg);
  Rat t = Rat::variable(reg, "t");
  Rat tinv = one / t;
  // b^+_n = b^(1)_n + b^(2)_n; b^-_n = b^(1)_n
  SymFunc qla = hall_littlewood_q(reg, la, tinv);
  SymFunc qmu = hall_littlewood_q(reg, mu, tinv);
  FockState s = bra_from_symfunc(w, qla, {one, Rat::zero(reg)});
  FockState out(w);
  for (auto& [nu, c] : qmu.coeffs()) {
    FockState acc = s.scaled(c);
    for (int part : nu.parts()) {
      FockState next(w);
      for (auto& [tup, v] : acc.coeffs())
        for (int sp = 0; sp < 2; ++sp) {
          std::vector<Partition> comps = tup.components();
          std::vector<int> parts = comps[sp].parts();
          parts.push_back(part);
          std::sort(parts.rbegin(), parts.rend());
          comps[sp] = Partition(std::move(parts));
          next.add(PartitionTuple(std::move(comps)), v);
        }
      acc = std::move(next);
    }
    out = out + acc;
  }
  Rat pref = w.u[0].pow(la.length()) * (w.u[0] * w.u[1]).pow(mu.length()) *
             t.pow(la.size() + mu.size());
  return out.scaled(pref);
}

}  // namespace qvir
