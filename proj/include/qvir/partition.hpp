#ifndef QVIR_PARTITION_HPP
#define QVIR_PARTITION_HPP

#include <string>
#include <vector>

#include "qvir/rational.hpp"

namespace qvir {

// Weakly decreasing sequence of positive integers; empty allowed.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts) : parts_(parts) { validate(); }
  explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    validate();
  }

  const std::vector<int>& parts() const { return parts_; }
  int size() const;               // |lambda|
  int length() const { return static_cast<int>(parts_.size()); }
  int part(int i) const;          // 1-based, 0 outside the diagram
  Partition conjugate() const;
  long n_stat() const;            // n(lambda) = sum (i-1) lambda_i
  long z_stat() const;            // prod i^{m_i} m_i!
  int multiplicity(int value) const;
  bool contains(const Partition& mu) const;  // lambda_i >= mu_i for all i
  Partition union_with(const Partition& mu) const;  // componentwise max

  // Rows shortened by one box (the cells with nonzero arm), zeros dropped.
  Partition checked_rows() const;
  // I statistic: sum of lambda'_j over the cells of checked_rows().
  long i_stat() const;

  bool operator==(const Partition& o) const { return parts_ == o.parts_; }
  bool operator!=(const Partition& o) const { return parts_ != o.parts_; }
  bool operator<(const Partition& o) const { return parts_ < o.parts_; }

  std::string text() const;  // "[2,1]", "[]" for empty

 private:
  std::vector<int> parts_;
  void validate() const;
};

// Arm and leg lengths for a cell (i,j), 1-based. The cell need not lie in the
// diagram: the literal formulas with lambda_i = 0, lambda'_j = 0 apply, which
// is what mixed-diagram hook products require.
int arm_length(const Partition& la, int i, int j);
int leg_length(const Partition& mu, int i, int j);

// Dominance: equal size and prefix-sum domination.
bool dominates(const Partition& la, const Partition& mu);

// b_lambda(t) = prod_i prod_{k=1}^{m_i} (1 - t^k), t passed as a value.
Rat b_stat(const Partition& la, const Rat& t);

std::vector<Partition> partitions_of(int n);

class PartitionTuple {
 public:
  PartitionTuple() = default;
  PartitionTuple(std::initializer_list<Partition> comps) : comps_(comps) {}
  explicit PartitionTuple(std::vector<Partition> comps)
      : comps_(std::move(comps)) {}

  int arity() const { return static_cast<int>(comps_.size()); }
  const Partition& operator[](int i) const { return comps_.at(i); }
  const std::vector<Partition>& components() const { return comps_; }
  int size() const;  // total number of boxes

  bool operator==(const PartitionTuple& o) const { return comps_ == o.comps_; }
  bool operator!=(const PartitionTuple& o) const { return comps_ != o.comps_; }
  // storage order for maps; the canonical basis order is canonical_before
  bool operator<(const PartitionTuple& o) const { return comps_ < o.comps_; }

  std::string text() const;  // "[[2,1],[]]"

 private:
  std::vector<Partition> comps_;
};

// Canonical linearization: size profiles (|la^N|,...,|la^1|) lexicographically
// descending, then reverse-lexicographic order per component. Refines the
// star ordering, so star-triangular matrices are triangular in storage order.
bool canonical_before(const PartitionTuple& a, const PartitionTuple& b);

// All N-tuples of total size n in canonical order.
std::vector<PartitionTuple> enumerate_tuples(int n, int N);

enum class TupleOrder { dominance, star, succ_star, wstar };

// a >= b (strict for star and succ_star) in the requested ordering.
bool tuple_ordered(const PartitionTuple& a, const PartitionTuple& b,
                   TupleOrder which);

// All pairs (la1, la2) whose merged multiset of parts equals la's.
std::vector<PartitionTuple> interleavings(const Partition& la);

Partition parse_partition(const std::string& text);
PartitionTuple parse_partition_tuple(const std::string& text);

}  // namespace qvir

#endif
