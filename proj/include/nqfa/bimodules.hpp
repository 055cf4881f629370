#ifndef NQFA_BIMODULES_HPP
#define NQFA_BIMODULES_HPP

#include <optional>

#include "nqfa/fourier.hpp"

// Executable ideal/bimodule structure theory: closed left ideals of L^1(G),
// annihilators, the Bim / Ran-perp correspondence, null sets, harmonic
// operators, the joint-invariance classification, and the lattice identities.
// Weak*-closure means linear span at these dimensions throughout.

namespace nqfa {

// A closed left ideal J of L^1(G), stored as an orthonormalized subspace of
// the d x 1 functional-coordinate space. Construction validates the module
// property L^1 * J inside J.
class LeftIdeal {
 public:
  static LeftIdeal from_generators(const FiniteQuantumGroup::Ptr& host,
                                   const std::vector<Functional>& gens);
  static LeftIdeal from_subspace(const FiniteQuantumGroup::Ptr& host, MatSubspace coords);
  static LeftIdeal zero(const FiniteQuantumGroup::Ptr& host);
  static LeftIdeal full(const FiniteQuantumGroup::Ptr& host);

  const FiniteQuantumGroup::Ptr& host() const { return host_; }
  const MatSubspace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  Functional basis_functional(Index r) const;

 private:
  LeftIdeal(FiniteQuantumGroup::Ptr host, MatSubspace space)
      : host_(std::move(host)), space_(std::move(space)) {}
  FiniteQuantumGroup::Ptr host_;
  MatSubspace space_;
};

// J^perp = {a in l^inf : <f, a> = 0 for all f in J}, in algebra coordinates;
// dim J + dim J^perp = d.
MatSubspace annihilator(const LeftIdeal& j);
// {f in L^1 : <f, a> = 0 for all a in the coordinate subspace}.
MatSubspace pre_annihilator(const FiniteQuantumGroup::Ptr& host, const MatSubspace& coords);

// An L^inf(dual G)-bimodule of B(l2(G)) with its provenance.
struct InvariantBimodule {
  MatSubspace space;
  std::string provenance;
};

// Bim over a coordinate subspace of l^inf: span{x_hat pi(a) y_hat}.
InvariantBimodule bim(const FiniteQuantumGroup::Ptr& q, const MatSubspace& coords);
// Same for a subspace already realized as operators on l2.
InvariantBimodule bim_ops(const FiniteQuantumGroup::Ptr& q, const MatSubspace& ops);

// Ran(J)^perp = joint kernel of the Theta^r(f), f in J.
InvariantBimodule ran_perp(const LeftIdeal& j);
// Ran(J) itself, inside the trace-class pairing picture.
MatSubspace ran_subspace(const LeftIdeal& j);

struct BimRanReport {
  Index ideal_dim = 0, annihilator_dim = 0, bim_dim = 0, ranperp_dim = 0;
  bool contained = false;       // Bim(J^perp) inside Ran(J)^perp
  bool equal = false;           // equality (the finite / AP case)
  bool trace_identity = false;  // Bim(J^perp) cap l^inf = J^perp
};
BimRanReport check_bim_equals_ranperp(const LeftIdeal& j);

// Null sets: N(Sigma) in l^inf coordinates and its big brother in B(l2);
// both reduce to the ideal generated by Sigma.
MatSubspace null_set(const FiniteQuantumGroup::Ptr& host, const std::vector<Functional>& sigma);
MatSubspace null_set_big(const FiniteQuantumGroup::Ptr& host, const std::vector<Functional>& sigma);

struct HarmonicSpaces {
  MatSubspace fixed_coords;  // H_Sigma in l^inf coordinates
  MatSubspace fixed_ops;     // H~_Sigma in B(l2)
};
HarmonicSpaces harmonic(const FiniteQuantumGroup::Ptr& host, const std::vector<Functional>& sigma);

struct ClassifyResult {
  bool invariant = false;
  std::optional<LeftIdeal> ideal;  // with U = Bim(annihilator(ideal)) verified
  bool roundtrip_ok = false;
  std::string violation;  // witness description when not invariant
};
// Theorem-4.5-style classification of a weak*-closed subspace of B(l2).
ClassifyResult classify_joint_invariant(const FiniteQuantumGroup::Ptr& q, const MatSubspace& u);

struct LatticeReport {
  bool join_identity = false;  // Bim(J1p) v Bim(J2p) = Bim((J1 cap J2)^perp)
  bool meet_identity = false;  // Bim(J1p cap J2p) = Bim(J1p) cap Bim(J2p)
  bool ran_identity = false;   // Ran(J1) cap Ran(J2) = Ran(J1 cap J2)
};
LatticeReport lattice_ops(const LeftIdeal& j1, const LeftIdeal& j2);

// The predual-bookkeeping rerun: J_perp inside c0, Bim over C(dual G),
// RAN(J)_perp inside K(l2). At finite dimension c0 = l^inf and K = B, so the
// checker drives the same engine and asserts the same equalities.
struct CstarReport {
  Index j_lowerperp_dim = 0, bim_dim = 0, ranperp_dim = 0;
  bool equal = false;
  bool trace_identity = false;
};
CstarReport cstar_variants(const LeftIdeal& j);

// All ideals of a commutative L^1 via block-support patterns (throws when the
// convolution algebra is not commutative), and seeded singly-generated
// sampling for any host.
std::vector<LeftIdeal> enumerate_ideals(const FiniteQuantumGroup::Ptr& host);
std::vector<LeftIdeal> sample_ideals(const FiniteQuantumGroup::Ptr& host, int count,
                                     std::uint64_t seed);

}  // namespace nqfa

#endif  // NQFA_BIMODULES_HPP
