#ifndef NQFA_FOURIER_HPP
#define NQFA_FOURIER_HPP

#include "nqfa/qg.hpp"

// The convolution algebra L^1(G), the regular representations, the
// implementation maps Theta^l / Theta^r / Theta^l-op-hat, characters and
// coefficient expansions.

namespace nqfa {

// An element of L^1: d coordinates against the dual basis of the host's
// algebra basis, pairing <f, x> = sum_i f_i x_i. Functionals on the dual
// quantum group are hosted on host->dual().
class Functional {
 public:
  Functional(FiniteQuantumGroup::Ptr host, CVector coords);

  // the unit of L^1 (the counit of the host)
  static Functional counit(const FiniteQuantumGroup::Ptr& host);
  // coordinate functional f^j
  static Functional coordinate(const FiniteQuantumGroup::Ptr& host, Index j);
  // the Haar state as an element of L^1
  static Functional haar_state(const FiniteQuantumGroup::Ptr& host);
  // density form a.phi with <a.phi, y> = phi(y a)
  static Functional density(const FiniteQuantumGroup::Ptr& host, const CVector& a);
  // x_hat.phi_hat on the dual of q, for an operator x_hat in L^inf(dual G)
  static Functional dual_density(const FiniteQuantumGroup::Ptr& q, const CMatrix& xhat);

  const FiniteQuantumGroup::Ptr& host() const { return host_; }
  const CVector& coords() const { return coords_; }
  Index dim() const { return coords_.size(); }
  Cplx operator()(const CVector& x) const { return (coords_.transpose() * x)(0, 0); }
  // pairing with an operator in the host's lambda-image (for dual-hosted
  // functionals this is the L^1(dual) x L^inf(dual) pairing)
  Cplx pair_op_of(const FiniteQuantumGroup& carrier, const CMatrix& op) const;

  Functional operator+(const Functional& o) const;
  Functional operator-(const Functional& o) const;
  Functional scaled(Cplx c) const { return {host_, CVector(c * coords_)}; }

 private:
  FiniteQuantumGroup::Ptr host_;
  CVector coords_;
};

// f * g = (f (x) g) o Gamma; hosts must match.
Functional convolve(const Functional& f, const Functional& g);

// lambda(f) = (f (x) id)(W), rho(f) = (id (x) f)(V)
CMatrix lambda_rep(const Functional& f);
CMatrix rho_rep(const Functional& f);

// Theta^l(f): X -> (f (x) id)(W^* (1 (x) X) W), an anti-homomorphism in f.
LinMap theta_l(const Functional& f);
// Theta^r(f): X -> (id (x) f)(V (X (x) 1) V^*), a homomorphism in f.
LinMap theta_r(const Functional& f);
// Theta^l-op-hat(fhat) on B(l2(q)) for fhat in L^1 of the (opposite) dual,
// realized through the opposite dual comultiplication applied on the
// L^inf(dual)-leg of the x_hat x product basis.
LinMap theta_l_op_dual(const FiniteQuantumGroup::Ptr& q, const Functional& fhat);

// The canonical conditional expectation B(l2) -> l^inf(G); equals
// theta_l_op_dual at the dual Haar state.
LinMap canonical_expectation(const FiniteQuantumGroup::Ptr& q);

struct CharacterData {
  CMatrix chi;      // sum of diagonal coefficients
  CMatrix chi_q;    // F-weighted diagonal sum
  Functional phi_q; // chi_q . phi_hat, an element of L^1(dual G)
};
CharacterData characters(const FiniteQuantumGroup::Ptr& q, const DualIrrep& beta);

// chi_gamma = d_gamma * phi_q^gamma, the central projector functional.
Functional band_functional(const FiniteQuantumGroup::Ptr& q, const DualIrrep& gamma);

struct CoeffEntry {
  int beta;
  Index i, j;
  Cplx value;  // <fhat, u^beta_ij>
};
// Coefficient table of fhat in L^1(dual G) against the Peter-Weyl coefficients.
std::vector<CoeffEntry> coeff_expansion(const FiniteQuantumGroup::Ptr& q, const Functional& fhat);
// Rebuild fhat = sum (d_beta/lambda_j) <fhat,u_ij> (u_ij^* . phi_hat).
Functional coeff_reconstruct(const FiniteQuantumGroup::Ptr& q, const std::vector<CoeffEntry>& table);
// CSV with columns beta,i,j,re,im.
std::string coeff_csv(const std::vector<CoeffEntry>& table);

}  // namespace nqfa

#endif  // NQFA_FOURIER_HPP
