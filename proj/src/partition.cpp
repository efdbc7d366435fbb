#include "qvir/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

namespace qvir {

void Partition::validate() const {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw Error("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw Error("partition parts must be weakly decreasing");
  }
}

int Partition::size() const {
  return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int Partition::part(int i) const {
  if (i < 1) throw Error("partition index is 1-based");
  return i <= length() ? parts_[i - 1] : 0;
}

Partition Partition::conjugate() const {
  std::vector<int> c;
  if (!parts_.empty()) {
    c.resize(parts_[0]);
    for (int j = 1; j <= parts_[0]; ++j) {
      int count = 0;
      for (int p : parts_)
        if (p >= j) ++count;
      c[j - 1] = count;
    }
  }
  return Partition(std::move(c));
}

long Partition::n_stat() const {
  long n = 0;
  for (size_t i = 0; i < parts_.size(); ++i) n += static_cast<long>(i) * parts_[i];
  return n;
}

long Partition::z_stat() const {
  long z = 1;
  std::map<int, int> mult;
  for (int p : parts_) ++mult[p];
  for (auto& [v, m] : mult) {
    for (int k = 0; k < m; ++k) z *= v;
    for (int k = 2; k <= m; ++k) z *= k;
  }
  return z;
}

int Partition::multiplicity(int value) const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), value));
}

bool Partition::contains(const Partition& mu) const {
  for (int i = 1; i <= mu.length(); ++i)
    if (part(i) < mu.part(i)) return false;
  return true;
}

Partition Partition::union_with(const Partition& mu) const {
  std::vector<int> u;
  int len = std::max(length(), mu.length());
  for (int i = 1; i <= len; ++i) u.push_back(std::max(part(i), mu.part(i)));
  return Partition(std::move(u));
}

Partition Partition::checked_rows() const {
  std::vector<int> r;
  for (int p : parts_)
    if (p > 1) r.push_back(p - 1);
  return Partition(std::move(r));
}

long Partition::i_stat() const {
  Partition conj = conjugate();
  Partition chk = checked_rows();
  long s = 0;
  for (int i = 1; i <= chk.length(); ++i)
    for (int j = 1; j <= chk.part(i); ++j) s += conj.part(j);
  return s;
}

std::string Partition::text() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) os << ",";
    os << parts_[i];
  }
  os << "]";
  return os.str();
}

int arm_length(const Partition& la, int i, int j) { return la.part(i) - j; }

int leg_length(const Partition& mu, int i, int j) {
  return mu.conjugate().part(j) - i;
}

bool dominates(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size()) return false;
  int acc_l = 0, acc_m = 0;
  int len = std::max(la.length(), mu.length());
  for (int i = 1; i <= len; ++i) {
    acc_l += la.part(i);
    acc_m += mu.part(i);
    if (acc_l < acc_m) return false;
  }
  return true;
}

Rat b_stat(const Partition& la, const Rat& t) {
  Rat b = Rat::one(t.reg());
  std::map<int, int> mult;
  for (int p : la.parts()) ++mult[p];
  for (auto& [v, m] : mult)
    for (int k = 1; k <= m; ++k) b *= Rat::one(t.reg()) - t.pow(k);
  return b;
}

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int rest, int maxpart) {
    if (rest == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(rest, maxpart); p >= 1; --p) {
      cur.push_back(p);
      rec(rest - p, p);
      cur.pop_back();
    }
  };
  rec(n, n == 0 ? 1 : n);
  // reverse-lexicographic: larger first part first; the recursion above
  // already emits in that order
  return out;
}

int PartitionTuple::size() const {
  int s = 0;
  for (auto& p : comps_) s += p.size();
  return s;
}

std::string PartitionTuple::text() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < arity(); ++i) {
    if (i) os << ",";
    os << comps_[i].text();
  }
  os << "]";
  return os.str();
}

bool canonical_before(const PartitionTuple& a, const PartitionTuple& b) {
  if (a.arity() != b.arity()) throw Error("tuple arity mismatch");
  const int N = a.arity();
  for (int i = N - 1; i >= 0; --i) {
    if (a[i].size() != b[i].size()) return a[i].size() > b[i].size();
  }
  // equal size profile: reverse-lexicographic per component, last first
  for (int i = N - 1; i >= 0; --i) {
    if (a[i] != b[i]) {
      int len = std::max(a[i].length(), b[i].length());
      for (int k = 1; k <= len; ++k)
        if (a[i].part(k) != b[i].part(k)) return a[i].part(k) > b[i].part(k);
    }
  }
  return false;
}

std::vector<PartitionTuple> enumerate_tuples(int n, int N) {
  if (n < 0 || N < 1) throw Error("enumerate_tuples: bad arguments");
  std::vector<PartitionTuple> out;
  std::vector<Partition> cur(N);
  std::function<void(int, int)> rec = [&](int comp, int rest) {
    if (comp == N) {
      if (rest == 0) out.emplace_back(cur);
      return;
    }
    if (comp == N - 1) {
      for (auto& p : partitions_of(rest)) {
        cur[comp] = p;
        rec(comp + 1, 0);
      }
      return;
    }
    for (int k = 0; k <= rest; ++k)
      for (auto& p : partitions_of(k)) {
        cur[comp] = p;
        rec(comp + 1, rest - k);
      }
  };
  rec(0, n);
  std::sort(out.begin(), out.end(), canonical_before);
  return out;
}

namespace {

bool star_greater(const PartitionTuple& a, const PartitionTuple& b) {
  const int N = a.arity();
  if (a.size() != b.size()) return false;
  bool profile_differs = false;
  int suf_a = 0, suf_b = 0;
  for (int k = N - 1; k >= 0; --k) {
    suf_a += a[k].size();
    suf_b += b[k].size();
    if (suf_a < suf_b) return false;
    if (a[k].size() != b[k].size()) profile_differs = true;
  }
  return profile_differs;
}

bool succ_star_greater(const PartitionTuple& a, const PartitionTuple& b) {
  if (!star_greater(a, b)) return false;
  const int N = a.arity();
  // for each component, some nu containing both a^(alpha) and b^(alpha) must
  // exist with the prescribed size; growing the union along its first row
  // always works, so only the size bound matters
  for (int alpha = 0; alpha < N; ++alpha) {
    int target = a[alpha].size();
    for (int beta = alpha + 1; beta < N; ++beta)
      target += a[beta].size() - b[beta].size();
    if (a[alpha].union_with(b[alpha]).size() > target) return false;
  }
  return true;
}

bool componentwise_dominates(const PartitionTuple& a, const PartitionTuple& b) {
  for (int i = 0; i < a.arity(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    if (!dominates(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

bool tuple_ordered(const PartitionTuple& a, const PartitionTuple& b,
                   TupleOrder which) {
  if (a.arity() != b.arity()) throw Error("tuple arity mismatch");
  switch (which) {
    case TupleOrder::dominance:
      return componentwise_dominates(a, b);
    case TupleOrder::star:
      return star_greater(a, b);
    case TupleOrder::succ_star:
      return succ_star_greater(a, b);
    case TupleOrder::wstar: {
      if (a.size() != b.size()) return false;
      auto all = enumerate_tuples(a.size(), a.arity());
      for (auto& mu : all) {
        if (!componentwise_dominates(a, mu)) continue;
        for (auto& nu : all) {
          if (!(mu == nu || succ_star_greater(mu, nu))) continue;
          if (componentwise_dominates(nu, b)) return true;
        }
      }
      return false;
    }
  }
  throw Error("unreachable");
}

std::vector<PartitionTuple> interleavings(const Partition& la) {
  std::map<int, int> mult;
  for (int p : la.parts()) ++mult[p];
  std::vector<std::pair<int, int>> items(mult.begin(), mult.end());
  std::vector<PartitionTuple> out;
  std::vector<int> take(items.size(), 0);
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == items.size()) {
      std::vector<int> first, second;
      for (size_t i = 0; i < items.size(); ++i) {
        for (int k = 0; k < take[i]; ++k) first.push_back(items[i].first);
        for (int k = 0; k < items[i].second - take[i]; ++k)
          second.push_back(items[i].first);
      }
      std::sort(first.rbegin(), first.rend());
      std::sort(second.rbegin(), second.rend());
      out.push_back(
          PartitionTuple{Partition(std::move(first)), Partition(std::move(second))});
      return;
    }
    for (take[idx] = 0; take[idx] <= items[idx].second; ++take[idx]) rec(idx + 1);
    take[idx] = 0;
  };
  rec(0);
  return out;
}

Partition parse_partition(const std::string& text) {
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip();
  if (i >= text.size() || text[i] != '[') throw Error("expected [");
  ++i;
  std::vector<int> parts;
  skip();
  while (i < text.size() && text[i] != ']') {
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw Error("expected integer in partition");
    parts.push_back(std::stoi(text.substr(start, i - start)));
    skip();
    if (i < text.size() && text[i] == ',') {
      ++i;
      skip();
    }
  }
  if (i >= text.size()) throw Error("missing ] in partition");
  return Partition(std::move(parts));
}

PartitionTuple parse_partition_tuple(const std::string& text) {
  size_t i = 0;
  if (text.empty() || text[0] != '[') throw Error("expected [");
  std::vector<Partition> comps;
  int depth = 0;
  size_t start = 0;
  for (; i < text.size(); ++i) {
    if (text[i] == '[') {
      if (++depth == 2) start = i;
    } else if (text[i] == ']') {
      if (depth == 2) comps.push_back(parse_partition(text.substr(start, i - start + 1)));
      --depth;
    }
  }
  if (depth != 0) throw Error("unbalanced partition tuple");
  return PartitionTuple(std::move(comps));
}

}  // namespace qvir
