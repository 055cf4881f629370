#include "nqfa/fourier.hpp"

#include <sstream>

namespace nqfa {

Functional::Functional(FiniteQuantumGroup::Ptr host, CVector coords)
    : host_(std::move(host)), coords_(std::move(coords)) {
  FiniteQuantumGroup::require(host_);
  if (coords_.size() != host_->dim()) throw Error("functional coords length != host dim");
}

Functional Functional::counit(const FiniteQuantumGroup::Ptr& host) {
  return {host, FiniteQuantumGroup::require(host)->data().counit.transpose()};
}

Functional Functional::coordinate(const FiniteQuantumGroup::Ptr& host, Index j) {
  CVector c = CVector::Zero(FiniteQuantumGroup::require(host)->dim());
  c(j) = 1.0;
  return {host, std::move(c)};
}

Functional Functional::haar_state(const FiniteQuantumGroup::Ptr& host) {
  return {host, FiniteQuantumGroup::require(host)->data().haar.transpose()};
}

Functional Functional::density(const FiniteQuantumGroup::Ptr& host, const CVector& a) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  CVector c(d);
  for (Index i = 0; i < d; ++i) {
    CVector ei = CVector::Unit(d, i);
    c(i) = q->haar(q->mul(ei, a));  // <a.phi, e_i> = phi(e_i a)
  }
  return {host, std::move(c)};
}

Functional Functional::dual_density(const FiniteQuantumGroup::Ptr& q, const CMatrix& xhat) {
  const auto* qq = FiniteQuantumGroup::require(q);
  const Index d = qq->dim();
  CVector c(d);
  for (Index j = 0; j < d; ++j) c(j) = qq->haar_dual(CMatrix(qq->dual_op(j) * xhat));
  return {qq->dual(), std::move(c)};
}

Cplx Functional::pair_op_of(const FiniteQuantumGroup& carrier, const CMatrix& op) const {
  CVector g = carrier.dual_coords_of_operator(op);
  return (coords_.transpose() * g)(0, 0);
}

Functional Functional::operator+(const Functional& o) const {
  if (host_ != o.host_) throw Error("functional host mismatch");
  return {host_, CVector(coords_ + o.coords_)};
}

Functional Functional::operator-(const Functional& o) const {
  if (host_ != o.host_) throw Error("functional host mismatch");
  return {host_, CVector(coords_ - o.coords_)};
}

Functional convolve(const Functional& f, const Functional& g) {
  if (f.host() != g.host()) throw Error("convolve: host mismatch");
  const auto* q = f.host().get();
  const Index d = q->dim();
  // (f*g)_k = sum_{ij} comult(i*d+j, k) f_i g_j
  CVector out = CVector::Zero(d);
  for (Index k = 0; k < d; ++k) {
    Cplx acc = 0;
    for (Index i = 0; i < d; ++i) {
      if (f.coords()(i) == 0.0) continue;
      for (Index j = 0; j < d; ++j)
        acc += f.coords()(i) * g.coords()(j) * q->data().comult(i * d + j, k);
    }
    out(k) = acc;
  }
  return {f.host(), std::move(out)};
}

CMatrix lambda_rep(const Functional& f) { return f.host()->lambda_op(f.coords()); }

CMatrix rho_rep(const Functional& f) { return f.host()->rho_op(f.coords()); }

LinMap theta_l(const Functional& f) {
  const auto* q = f.host().get();
  const Index d = q->dim();
  // W = sum_j pi(e_j) (x) w_j gives
  // Theta^l(f)(X) = sum_{j j'} f((e_j)^* e_{j'}) w_j^* X w_{j'}
  CMatrix m = CMatrix::Zero(d * d, d * d);
  for (Index j = 0; j < d; ++j) {
    CVector sj = q->star(CVector(CVector::Unit(d, j)));
    for (Index jp = 0; jp < d; ++jp) {
      Cplx gamma = f(q->mul(sj, CVector(CVector::Unit(d, jp))));
      if (gamma == 0.0) continue;
      // vec(A X B) = kron(B^T, A) vec(X) with A = w_j^*, B = w_{j'}
      m += gamma * kron(q->dual_op(jp).transpose(), q->dual_op(j).adjoint());
    }
  }
  return {d, d, std::move(m)};
}

LinMap theta_r(const Functional& f) {
  const auto* q = f.host().get();
  const Index d = q->dim();
  // V = sum_i v_i (x) pi(e_i) gives
  // Theta^r(f)(X) = sum_{i i'} f(e_i (e_{i'})^*) v_i X v_{i'}^*
  CMatrix m = CMatrix::Zero(d * d, d * d);
  std::vector<CMatrix> vparts;
  for (Index i = 0; i < d; ++i) vparts.push_back(q->rho_op(CVector(CVector::Unit(d, i))));
  for (Index i = 0; i < d; ++i) {
    CVector ei = CVector::Unit(d, i);
    for (Index ip = 0; ip < d; ++ip) {
      CVector sip = q->star(CVector(CVector::Unit(d, ip)));
      Cplx gamma = f(q->mul(ei, sip));
      if (gamma == 0.0) continue;
      // vec(A X B^*) = kron(conj(B), A) vec(X)
      m += gamma * kron(vparts[static_cast<size_t>(ip)].conjugate(),
                        vparts[static_cast<size_t>(i)]);
    }
  }
  return {d, d, std::move(m)};
}

LinMap theta_l_op_dual(const FiniteQuantumGroup::Ptr& q, const Functional& fhat) {
  const auto* qq = FiniteQuantumGroup::require(q);
  if (fhat.host() != qq->dual()) throw Error("theta_l_op_dual: functional must live on the dual");
  const Index d = qq->dim();
  const CMatrix& chat = qq->dual()->data().comult;  // d^2 x d
  // on the product basis x_hat_a x_b:
  //   x_hat_a x_b -> [(id (x) fhat) Gamma_hat(x_hat_a)] x_b
  CMatrix k = CMatrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a) {
    CVector img = CVector::Zero(d);  // coefficients over x_hat_c
    for (Index c = 0; c < d; ++c) {
      Cplx acc = 0;
      for (Index e = 0; e < d; ++e) acc += chat(c * d + e, a) * fhat.coords()(e);
      img(c) = acc;
    }
    for (Index b = 0; b < d; ++b)
      for (Index c = 0; c < d; ++c) k(c * d + b, a * d + b) = img(c);
  }
  CMatrix m = qq->density_basis() * k * qq->density_basis_inverse();
  return {d, d, std::move(m)};
}

LinMap canonical_expectation(const FiniteQuantumGroup::Ptr& q) {
  const auto* qq = FiniteQuantumGroup::require(q);
  Functional phihat(qq->dual(), qq->haar_element());
  return theta_l_op_dual(q, phihat);
}

CharacterData characters(const FiniteQuantumGroup::Ptr& q, const DualIrrep& beta) {
  return {beta.chi, beta.chi_q, Functional::dual_density(q, beta.chi_q)};
}

Functional band_functional(const FiniteQuantumGroup::Ptr& q, const DualIrrep& gamma) {
  return Functional::dual_density(q, gamma.chi_q).scaled(gamma.qdim);
}

std::vector<CoeffEntry> coeff_expansion(const FiniteQuantumGroup::Ptr& q, const Functional& fhat) {
  const auto* qq = FiniteQuantumGroup::require(q);
  if (fhat.host() != qq->dual()) throw Error("coeff_expansion: functional must live on the dual");
  std::vector<CoeffEntry> table;
  for (const auto& ir : qq->peter_weyl())
    for (Index i = 0; i < ir.n; ++i)
      for (Index j = 0; j < ir.n; ++j)
        table.push_back(
            {ir.index, i, j, (fhat.coords().transpose() * ir.coeff_coords(i, j))(0, 0)});
  return table;
}

Functional coeff_reconstruct(const FiniteQuantumGroup::Ptr& q,
                             const std::vector<CoeffEntry>& table) {
  const auto* qq = FiniteQuantumGroup::require(q);
  const auto& pw = qq->peter_weyl();
  CVector acc = CVector::Zero(qq->dim());
  for (const auto& entry : table) {
    const DualIrrep& ir = pw.at(static_cast<size_t>(entry.beta));
    double weight = ir.qdim / ir.f_eigs(entry.j);
    Functional piece = Functional::dual_density(q, CMatrix(ir.coeff(entry.i, entry.j).adjoint()));
    acc += weight * entry.value * piece.coords();
  }
  return {qq->dual(), std::move(acc)};
}

std::string coeff_csv(const std::vector<CoeffEntry>& table) {
  std::ostringstream os;
  os << "beta,i,j,re,im\n";
  os.precision(17);
  for (const auto& e : table)
    os << e.beta << "," << e.i << "," << e.j << "," << e.value.real() << "," << e.value.imag()
       << "\n";
  return os.str();
}

}  // namespace nqfa
