#ifndef NQFA_DYNAMICS_HPP
#define NQFA_DYNAMICS_HPP

#include <optional>

#include "nqfa/fourier.hpp"

// Actions of a finite quantum group on finite-dimensional algebras, their
// crossed products, the dual action, the conditional expectation E, and the
// Fejer reconstruction machinery.

namespace nqfa {

// Dimension caps for crossed products: l2(G) dimension defaults to 8
// (override with NQFA_MAX_DIM) and the target algebra dimension to 36.
Index max_l2_dim();
Index max_target_dim();

// A concrete *-subalgebra N of M_k given by a basis; the basis need not be
// orthogonal but must span a unital *-closed multiplicatively closed space.
struct TargetAlgebra {
  Index k = 0;
  std::vector<CMatrix> basis;
  MatSubspace span{0, 0};

  static TargetAlgebra full_matrix(Index k);
  static TargetAlgebra diagonal(Index n);
  static TargetAlgebra from_basis(Index k, std::vector<CMatrix> basis);

  Index dim() const { return static_cast<Index>(basis.size()); }
  CMatrix element(const CVector& coords) const;
  CVector coords(const CMatrix& x, double tol = kTolMember) const;
  CMatrix unit_element() const;

 private:
  std::vector<CMatrix> duals_;  // trace-dual matrices for coords()
  friend struct TargetAlgebraBuilder;
};

// A left coaction alpha: N -> l^inf(G) (x) N with validation data. Built by
// make(); every violated axiom is reported by name with its residual.
class Action {
 public:
  static Action make(FiniteQuantumGroup::Ptr host, TargetAlgebra target,
                     std::vector<CMatrix> alpha_images, bool cstar_kind = false);
  static Action trivial(FiniteQuantumGroup::Ptr host, TargetAlgebra target,
                        bool cstar_kind = false);
  // the comultiplication viewed as the canonical action of G on l^inf(G)
  static Action canonical(FiniteQuantumGroup::Ptr host, bool cstar_kind = false);

  const FiniteQuantumGroup::Ptr& host() const { return host_; }
  const TargetAlgebra& target() const { return target_; }
  bool cstar_kind() const { return cstar_; }
  const CMatrix& alpha_image(Index m) const { return alpha_[static_cast<size_t>(m)]; }
  CMatrix alpha_of(const CVector& ncoords) const;
  const MatSubspace& alpha_range() const { return alpha_range_; }
  const std::map<std::string, double>& residuals() const { return residuals_; }

  // N^alpha = {x : alpha(x) = 1 (x) x}, as a subspace of M_k.
  MatSubspace fixed_points() const;
  // n *_alpha f = (f (x) id) alpha(n)
  CMatrix module_star(const CMatrix& n, const Functional& f) const;
  // f *_alpha omega = (f (x) omega) o alpha for omega in N^* (coords pairing)
  CVector pre_module(const Functional& f, const CVector& omega) const;

 private:
  Action() = default;
  FiniteQuantumGroup::Ptr host_;
  TargetAlgebra target_;
  std::vector<CMatrix> alpha_;
  MatSubspace alpha_range_{0, 0};
  bool cstar_ = false;
  std::map<std::string, double> residuals_;
};

// G acting on N: basis alpha(n_m)(x_hat_j (x) 1) of dimension dim(N) * d,
// with the dual action, the conditional expectation and the Fejer maps.
class CrossedProduct {
 public:
  explicit CrossedProduct(Action action);

  const Action& action() const { return action_; }
  const FiniteQuantumGroup::Ptr& host() const { return action_.host(); }
  Index ambient() const { return ambient_; }  // matrices act on C^(d*k)
  Index dim() const { return static_cast<Index>(raw_.size()); }
  const CMatrix& raw(Index mu) const { return raw_[static_cast<size_t>(mu)]; }
  Index raw_index(Index m, Index j) const { return m * host()->dim() + j; }
  const MatSubspace& space() const { return space_; }

  // coordinates in the raw generator basis; throws when T is outside the
  // crossed product by more than tol.
  CVector coordinates(const CMatrix& t, double tol = kTolMember) const;
  bool contains(const CMatrix& t, double tol = kTolMember) const;
  CMatrix from_coordinates(const CVector& c) const;

  // E(alpha(x)(u (x) 1)) = phi_hat(u) alpha(x); idempotent onto alpha(N).
  CMatrix expect(const CMatrix& t) const;
  // T . fhat = (fhat (x) id (x) id)(alpha_hat(T)), by the generator route.
  CMatrix module_action(const CMatrix& t, const Functional& fhat) const;
  // the same map on raw coordinates
  CVector module_action_coords(const CVector& coords, const Functional& fhat) const;
  // the same map through Theta^l-op-hat applied to the B(l2) leg
  CMatrix module_action_theta(const CMatrix& t, const Functional& fhat) const;

  // Fejer sum over the bands in F; fhat must be supported on F.
  CMatrix fejer_term(const CMatrix& t, const Functional& fhat,
                     const std::vector<int>& bands) const;
  // Plain truncation to the given bands, no support requirement; partial sums
  // for convergence studies carry no exactness contract.
  CMatrix fejer_partial(const CMatrix& t, const Functional& fhat,
                        const std::vector<int>& bands) const;
  struct Reconstruction {
    CMatrix out;
    double residual;
  };
  // full reconstruction with fhat = counit and F = all bands; exact here
  Reconstruction fejer_reconstruct(const CMatrix& t) const;
  // band projection P_gamma = module action of d_gamma phi_q^gamma
  CMatrix spectral_projection(const CMatrix& t, int gamma) const;
  // omega_{T,phi}(vhat) = <(Theta (x) id)(T), phi> with phi given as a matrix
  // paired by tr(phi . S)
  Cplx multiplier_pairing(const CMatrix& t, const CMatrix& phi, const Functional& vhat) const;

  // fixed points of the dual action; equals alpha(N)
  MatSubspace dual_action_fixed_points() const;
  MatSubspace alpha_n() const;

  const std::map<std::string, double>& residuals() const { return residuals_; }

 private:
  Action action_;
  Index ambient_ = 0;
  std::vector<CMatrix> raw_;
  MatSubspace space_{0, 0};
  CMatrix stacked_raw_;
  Eigen::ColPivHouseholderQR<CMatrix> solver_;
  std::map<std::string, double> residuals_;
};

// (Phi (x) id_N)(T) for a linear map Phi on B(l2) = M_d and T on C^d (x) C^k.
CMatrix apply_to_first_leg(const LinMap& phi, const CMatrix& t, Index d, Index k);

}  // namespace nqfa

#endif  // NQFA_DYNAMICS_HPP
