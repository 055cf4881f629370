#ifndef NQFA_QG_HPP
#define NQFA_QG_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "nqfa/groups.hpp"
#include "nqfa/numerics.hpp"

// Finite quantum groups as explicit Hopf *-algebra data together with the
// Haar state, its GNS space, the fundamental unitaries W, V, What and the
// Peter-Weyl decomposition of the dual. Every object lives as an operator on
// the single GNS space of the Haar state, so every identity in the theory
// becomes a matrix identity here.
//
// Coordinate conventions:
//   * algebra elements are coordinate vectors against the fixed basis e_0..e_{d-1};
//   * mult tensor M is d x d^2 with column i*d+j = coords of e_i e_j;
//   * comult tensor C is d^2 x d with row j*d+k = coefficient of e_j (x) e_k;
//   * star acts as coords(x^*) = star * conj(coords(x));
//   * functionals are coordinate vectors against the dual basis, pairing
//     <f, x> = sum_i f_i x_i (bilinear, no conjugation).

namespace nqfa {

struct HopfData {
  std::vector<std::string> labels;
  CMatrix mult;               // d x d^2
  CMatrix comult;             // d^2 x d
  CMatrix star;               // d x d
  Eigen::RowVectorXcd counit; // 1 x d
  CMatrix antipode;           // d x d
  Eigen::RowVectorXcd haar;   // 1 x d
  CVector unit;               // coords of 1; solved from mult when empty
};

// One Wedderburn block of the algebra: the minimal central projection and a
// full set of *-compatible matrix units, in coordinates and as operators.
struct AlgebraBlock {
  Index n = 0;
  CMatrix projection_op;
  CVector projection_coords;
  std::vector<CVector> unit_coords;  // e_ij at i*n+j
  std::vector<CMatrix> unit_ops;
};

// One irreducible corepresentation of the compact dual: coefficient operators
// u[i*n+j] acting on l2(G), F-matrix eigenvalues, quantum dimension and the
// (quantum) characters. All finite quantum groups are Kac, so the stored
// F-eigenvalues are 1 and qdim = n; the Fejer weights are still computed from
// these fields so imported non-Kac data would flow through unchanged.
struct DualIrrep {
  int index = 0;
  Index n = 0;
  std::vector<CMatrix> u;            // n*n operators on l2(G)
  std::vector<CVector> u_coords;     // their coordinates in the dual basis
  Eigen::VectorXd f_eigs;            // lambda_1..lambda_n
  double qdim = 0;                   // d_beta
  CMatrix chi, chi_q;
  const CMatrix& coeff(Index i, Index j) const { return u[static_cast<size_t>(i * n + j)]; }
  const CVector& coeff_coords(Index i, Index j) const {
    return u_coords[static_cast<size_t>(i * n + j)];
  }
};

// Immutable after the validating constructor; concurrent read sharing is
// safe once the lazily materialized views (dual(), peter_weyl(),
// algebra_blocks(), density_basis()) have been touched once. Construction is
// single-threaded.
class FiniteQuantumGroup {
 public:
  using Ptr = std::shared_ptr<const FiniteQuantumGroup>;

  // C(Gamma) with Gamma f(s,t) = f(st), counit = evaluation at the identity,
  // Haar = uniform average. Commutative.
  static Ptr from_function_algebra(const FiniteGroup& g);
  // The group algebra C[Gamma] with group-like generators, Haar = coefficient
  // of the identity. Cocommutative.
  static Ptr from_group_algebra(const FiniteGroup& g);
  // Accepts arbitrary tensors and admits them only if every axiom passes;
  // failures report the axiom by name with its residual.
  static Ptr from_structure_tensors(HopfData data, std::string name = "custom");
  static Ptr from_structure_tensors_json(const std::string& text);
  std::string structure_tensors_json() const;

  Index dim() const { return dim_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& labels() const { return data_.labels; }
  const HopfData& data() const { return data_; }

  // ----- coordinate-level Hopf operations
  CVector mul(const CVector& x, const CVector& y) const;
  CVector star(const CVector& x) const;
  CVector comult(const CVector& x) const;  // in the e_j (x) e_k coordinates
  Cplx counit(const CVector& x) const { return data_.counit * x; }
  CVector antipode(const CVector& x) const { return data_.antipode * x; }
  Cplx haar(const CVector& x) const { return data_.haar * x; }
  const CVector& unit() const { return data_.unit; }
  // Haar projection h: x h = counit(x) h, counit(h) = 1. Implements the dual
  // Haar state via haar_dual(lambda(f)) = f(h).
  const CVector& haar_element() const { return haar_element_; }

  // ----- GNS space and operators on it
  const CMatrix& gns_map() const { return gns_; }  // coords -> l2 coords
  CMatrix represent(const CVector& x) const;       // left regular pi(x)
  const CMatrix& basis_op(Index i) const { return pi_[static_cast<size_t>(i)]; }
  const MatSubspace& algebra_ops() const { return algebra_ops_; }
  // pi^{-1}; throws when op is outside pi(A) by more than tol.
  CVector coords_of_operator(const CMatrix& op, double tol = kTolMember) const;
  // trace-dual matrix G_i with tr(G_i pi(e_j)) = delta_ij, for leg slicing
  const CMatrix& pi_dual(Index i) const { return pi_duals_[static_cast<size_t>(i)]; }

  // ----- fundamental unitaries on l2 (x) l2
  const CMatrix& fundamental_w() const { return w_; }
  const CMatrix& fundamental_v() const { return v_; }
  const CMatrix& fundamental_what() const { return what_; }

  // ----- dual algebra L^infty(dual G) = span{lambda(f)} on the same l2
  const CMatrix& dual_op(Index j) const { return dual_ops_[static_cast<size_t>(j)]; }
  const std::vector<CMatrix>& dual_ops() const { return dual_ops_; }
  const MatSubspace& dual_ops_span() const { return dual_span_; }
  CMatrix lambda_op(const CVector& f) const;  // lambda(f) = (f (x) id)(W)
  CMatrix rho_op(const CVector& f) const;     // rho(f) = (id (x) f)(V)
  CVector dual_coords_of_operator(const CMatrix& op, double tol = kTolMember) const;
  // Dual Haar state evaluated on an element of L^infty(dual G).
  Cplx haar_dual(const CMatrix& op) const;
  Cplx haar_dual_coords(const CVector& f) const { return f.dot(haar_element_.conjugate()); }

  // The dual quantum group as a fully validated FiniteQuantumGroup whose
  // basis j corresponds to dual_op(j); built lazily and cached.
  Ptr dual() const;

  // Wedderburn decomposition of the algebra into matrix blocks: deterministic
  // order (counit block first, then ascending size with a coordinate
  // fingerprint). Cached.
  const std::vector<AlgebraBlock>& algebra_blocks() const;

  // Peter-Weyl decomposition of the dual; lazily computed, all DualIrrep
  // invariants asserted, hard error when sum n^2 != dim.
  const std::vector<DualIrrep>& peter_weyl() const;

  // Basis {dual_op(a) * basis_op(b)} of all of B(l2(G)); the change-of-basis
  // matrix has columns vec(x_hat_a x_b) at column a*d+b.
  const CMatrix& density_basis() const;
  const CMatrix& density_basis_inverse() const;

  // Residuals of every validated axiom, for reports.
  const std::map<std::string, double>& residuals() const { return residuals_; }

  static FiniteQuantumGroup const* require(const Ptr& p);

 private:
  FiniteQuantumGroup() = default;
  void build(double tol);
  void validate_hopf(double tol);
  void build_gns(double tol);
  void build_unitaries(double tol);
  void build_dual_ops(double tol);
  void note(const std::string& axiom, double residual, double tol);

  std::string name_;
  Index dim_ = 0;
  HopfData data_;
  CVector haar_element_;
  CMatrix gram_, gns_, gns_inv_;
  std::vector<CMatrix> pi_;
  MatSubspace algebra_ops_{0, 0};
  std::vector<CMatrix> pi_duals_;  // trace-dual matrices G_i for pi-coords
  CMatrix w_, v_, what_;
  std::vector<CMatrix> dual_ops_;   // w_j = lambda(f^j)
  std::vector<CMatrix> v_left_;     // V = sum v_i (x) pi(e_i)
  MatSubspace dual_span_{0, 0};
  std::vector<CMatrix> dual_duals_;  // trace-duals of dual_ops
  std::map<std::string, double> residuals_;

  mutable Ptr dual_cache_;
  mutable std::vector<AlgebraBlock> blocks_cache_;
  mutable std::vector<DualIrrep> pw_cache_;
  mutable CMatrix density_, density_inv_;

  friend class QgTestAccess;
};

// (g (x) id)(Y) and (id (x) g)(Y) for Y on C^{d1} (x) C^{d2}, where the
// functional is g(X) = tr(G X).
CMatrix slice_first(const CMatrix& y, const CMatrix& g, Index d1, Index d2);
CMatrix slice_second(const CMatrix& y, const CMatrix& g, Index d1, Index d2);

// Embeds an operator acting on legs (a,b) of a three-fold tensor power of C^d.
CMatrix embed_pair(const CMatrix& op, Index d, int leg_a, int leg_b);

// Max residual of M as a coordinate map realizing a *-Hopf isomorphism
// from p onto q (multiplicativity, comultiplicativity, counit, antipode,
// star, Haar, unit).
double hopf_iso_residual(const FiniteQuantumGroup& p, const FiniteQuantumGroup& q,
                         const CMatrix& m);

}  // namespace nqfa

#endif  // NQFA_QG_HPP
