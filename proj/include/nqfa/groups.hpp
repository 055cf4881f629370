#ifndef NQFA_GROUPS_HPP
#define NQFA_GROUPS_HPP

#include <optional>
#include <string>
#include <vector>

#include "nqfa/numerics.hpp"

// Finite groups given by Cayley tables and their irreducible unitary
// representations: the raw material for both quantum-group constructors.

namespace nqfa {

class FiniteGroup {
 public:
  // Validates the table: identity, inverses, associativity. Rejections name
  // the witness (triple, element) that fails.
  static FiniteGroup from_cayley_table(const std::vector<std::vector<int>>& table);

  // trivial, cyclic(n) ("cN"), s3, d4, q8.
  static FiniteGroup builtin(const std::string& name);

  int order() const { return order_; }
  int mul(int s, int t) const { return table_[static_cast<size_t>(s)][static_cast<size_t>(t)]; }
  int identity() const { return identity_; }
  int inverse(int s) const { return inverse_[static_cast<size_t>(s)]; }
  bool abelian() const;
  int element_order(int s) const;
  const std::vector<std::vector<int>>& table() const { return table_; }
  const std::string& name() const { return name_; }

 private:
  FiniteGroup() = default;
  int order_ = 0;
  int identity_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::string name_;
};

// One irreducible unitary representation: a unitary dim x dim matrix per
// group element, validated against the homomorphism/unitarity/irreducibility
// invariants on construction.
struct GroupIrrep {
  int dim;
  std::vector<CMatrix> matrices;  // indexed by group element
  Cplx character(int s) const { return matrices[static_cast<size_t>(s)].trace(); }
};

// Complete list of irreps: abelian groups get their characters computed, the
// bundled non-abelian groups (s3, d4, q8) ship generator data that is
// re-validated here. Other non-abelian groups must supply irreps via file.
std::vector<GroupIrrep> irreps(const FiniteGroup& g);

// JSON loaders per the documented file formats.
FiniteGroup group_from_json(const std::string& text);
std::string group_to_json(const FiniteGroup& g);
std::vector<GroupIrrep> irreps_from_json(const FiniteGroup& g, const std::string& text);

// Validation shared by computed, embedded and user-supplied irreps; throws
// ValidationError naming the failing invariant.
void validate_irreps(const FiniteGroup& g, const std::vector<GroupIrrep>& reps);

}  // namespace nqfa

#endif  // NQFA_GROUPS_HPP
