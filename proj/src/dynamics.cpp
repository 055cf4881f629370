#include "nqfa/dynamics.hpp"

#include <cstdlib>

namespace nqfa {

Index max_l2_dim() {
  if (const char* env = std::getenv("NQFA_MAX_DIM")) {
    long v = std::atol(env);
    if (v >= 1) return static_cast<Index>(v);
  }
  return 8;
}

Index max_target_dim() { return 36; }

// ---------------------------------------------------------------------------
// TargetAlgebra

struct TargetAlgebraBuilder {
  static void finish(TargetAlgebra& t) {
    const Index n = t.dim();
    if (n == 0) throw Error("target algebra needs a basis");
    for (const auto& b : t.basis)
      if (b.rows() != t.k || b.cols() != t.k) throw Error("target basis shape mismatch");
    t.span = MatSubspace::span(t.basis);
    if (t.span.dim() != n) throw Error("target basis is linearly dependent");
    // *-closed, multiplicatively closed, unital
    if (!t.span.contains(identity(t.k)))
      throw ValidationError("target_algebra_unital", t.span.residual(identity(t.k)));
    double r = 0;
    for (const auto& a : t.basis) {
      r = std::max(r, t.span.residual(a.adjoint()));
      for (const auto& b : t.basis) r = std::max(r, t.span.residual(a * b));
    }
    if (r > kTolMember) throw ValidationError("target_algebra_closed", r);
    CMatrix p(t.k * t.k, n);
    for (Index m = 0; m < n; ++m) p.col(m) = vec(t.basis[static_cast<size_t>(m)]);
    CMatrix pinv = (p.adjoint() * p).inverse() * p.adjoint();
    t.duals_.clear();
    for (Index m = 0; m < n; ++m)
      t.duals_.push_back(unvec(pinv.row(m).transpose(), t.k, t.k).transpose());
  }
};

TargetAlgebra TargetAlgebra::full_matrix(Index k) {
  TargetAlgebra t;
  t.k = k;
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      CMatrix e = zero(k, k);
      e(i, j) = 1.0;
      t.basis.push_back(e);
    }
  TargetAlgebraBuilder::finish(t);
  return t;
}

TargetAlgebra TargetAlgebra::diagonal(Index n) {
  TargetAlgebra t;
  t.k = n;
  for (Index i = 0; i < n; ++i) {
    CMatrix e = zero(n, n);
    e(i, i) = 1.0;
    t.basis.push_back(e);
  }
  TargetAlgebraBuilder::finish(t);
  return t;
}

TargetAlgebra TargetAlgebra::from_basis(Index k, std::vector<CMatrix> basis) {
  TargetAlgebra t;
  t.k = k;
  t.basis = std::move(basis);
  TargetAlgebraBuilder::finish(t);
  return t;
}

CMatrix TargetAlgebra::element(const CVector& coords) const {
  CMatrix x = zero(k, k);
  for (Index m = 0; m < dim(); ++m)
    if (coords(m) != 0.0) x += coords(m) * basis[static_cast<size_t>(m)];
  return x;
}

CVector TargetAlgebra::coords(const CMatrix& x, double tol) const {
  CVector c(dim());
  for (Index m = 0; m < dim(); ++m) c(m) = (duals_[static_cast<size_t>(m)] * x).trace();
  if ((x - element(c)).norm() > tol * std::max(1.0, x.norm()))
    throw Error("matrix is outside the target algebra");
  return c;
}

CMatrix TargetAlgebra::unit_element() const { return identity(k); }

// ---------------------------------------------------------------------------
// Action

Action Action::make(FiniteQuantumGroup::Ptr host, TargetAlgebra target,
                    std::vector<CMatrix> alpha_images, bool cstar_kind) {
  const auto* q = FiniteQuantumGroup::require(host);
  Action a;
  a.host_ = std::move(host);
  a.target_ = std::move(target);
  a.alpha_ = std::move(alpha_images);
  a.cstar_ = cstar_kind;
  const Index d = q->dim();
  const Index k = a.target_.k;
  const Index n = a.target_.dim();
  if (static_cast<Index>(a.alpha_.size()) != n)
    throw Error("alpha needs one image per target basis element");
  for (const auto& img : a.alpha_)
    if (img.rows() != d * k || img.cols() != d * k)
      throw Error("alpha image must act on l2(G) (x) C^k");

  auto note = [&](const std::string& axiom, double r, double tol) {
    a.residuals_[axiom] = r;
    if (!(r <= tol)) throw ValidationError(axiom, r);
  };
  const double tol = 1e-8;

  note("alpha_unital",
       (a.alpha_of(a.target_.coords(a.target_.unit_element())) - identity(d * k)).norm(), tol);

  double r = 0;
  for (Index m = 0; m < n; ++m)
    for (Index l = 0; l < n; ++l) {
      CVector prod = a.target_.coords(
          CMatrix(a.target_.basis[static_cast<size_t>(m)] * a.target_.basis[static_cast<size_t>(l)]));
      r = std::max(r, (a.alpha_of(prod) -
                       a.alpha_image(m) * a.alpha_image(l)).norm());
      if (r > tol)
        throw ValidationError("alpha_homomorphism", r,
                              "witness pair (" + std::to_string(m) + "," + std::to_string(l) + ")");
    }
  note("alpha_homomorphism", r, tol);

  r = 0;
  for (Index m = 0; m < n; ++m) {
    CVector starred = a.target_.coords(CMatrix(a.target_.basis[static_cast<size_t>(m)].adjoint()));
    r = std::max(r, (a.alpha_of(starred) - a.alpha_image(m).adjoint()).norm());
  }
  note("alpha_star", r, tol);

  {
    std::vector<CMatrix> imgs = a.alpha_;
    a.alpha_range_ = MatSubspace::span(imgs);
    note("alpha_injective", a.alpha_range_.dim() == n ? 0.0 : 1.0, 0.5);
  }

  // alpha lands in l^inf(G) (x) N
  {
    std::vector<CMatrix> tensor;
    for (Index i = 0; i < d; ++i)
      for (Index m = 0; m < n; ++m)
        tensor.push_back(kron(q->basis_op(i), a.target_.basis[static_cast<size_t>(m)]));
    MatSubspace leg_space = MatSubspace::span(tensor);
    r = 0;
    for (const auto& img : a.alpha_) r = std::max(r, leg_space.residual(img));
    note("alpha_range_in_tensor", r, tol);
  }

  // coaction law (Gamma (x) id) alpha = (id (x) alpha) alpha
  {
    const CMatrix& w = q->fundamental_w();
    CMatrix wk = kron(w, identity(k));
    r = 0;
    for (Index m = 0; m < n; ++m) {
      const CMatrix& img = a.alpha_image(m);
      CMatrix lhs = wk.adjoint() * kron(identity(d), img) * wk;
      CMatrix rhs = CMatrix::Zero(d * d * k, d * d * k);
      for (Index i = 0; i < d; ++i) {
        CMatrix yi = slice_first(img, q->pi_dual(i), d, k);
        rhs += kron(q->basis_op(i), a.alpha_of(a.target_.coords(yi)));
      }
      r = std::max(r, (lhs - rhs).norm());
    }
    note("coaction_law", r, tol * 10);
  }

  if (cstar_kind) {
    // Podles condition: span{(c0(G) (x) 1) alpha(A)} = c0(G) (x) A
    std::vector<CMatrix> produced, full;
    for (Index i = 0; i < d; ++i) {
      CMatrix xi = kron(q->basis_op(i), identity(k));
      for (Index m = 0; m < n; ++m) {
        produced.push_back(xi * a.alpha_image(m));
        full.push_back(kron(q->basis_op(i), a.target_.basis[static_cast<size_t>(m)]));
      }
    }
    bool eq = subspace_equal(MatSubspace::span(produced), MatSubspace::span(full));
    note("podles_condition", eq ? 0.0 : 1.0, 0.5);
  }
  return a;
}

Action Action::trivial(FiniteQuantumGroup::Ptr host, TargetAlgebra target, bool cstar_kind) {
  const auto* q = FiniteQuantumGroup::require(host);
  std::vector<CMatrix> images;
  for (const auto& b : target.basis) images.push_back(kron(identity(q->dim()), b));
  return make(std::move(host), std::move(target), std::move(images), cstar_kind);
}

Action Action::canonical(FiniteQuantumGroup::Ptr host, bool cstar_kind) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  std::vector<CMatrix> basis;
  for (Index i = 0; i < d; ++i) basis.push_back(q->basis_op(i));
  TargetAlgebra target = TargetAlgebra::from_basis(d, std::move(basis));
  std::vector<CMatrix> images;
  for (Index i = 0; i < d; ++i) {
    CVector g = q->comult(CVector(CVector::Unit(d, i)));
    CMatrix img = CMatrix::Zero(d * d, d * d);
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        Cplx c = g(a * d + b);
        if (c != 0.0) img += c * kron(q->basis_op(a), q->basis_op(b));
      }
    images.push_back(img);
  }
  return make(std::move(host), std::move(target), std::move(images), cstar_kind);
}

CMatrix Action::alpha_of(const CVector& ncoords) const {
  const Index d = host_->dim();
  CMatrix out = CMatrix::Zero(d * target_.k, d * target_.k);
  for (Index m = 0; m < target_.dim(); ++m)
    if (ncoords(m) != 0.0) out += ncoords(m) * alpha_[static_cast<size_t>(m)];
  return out;
}

MatSubspace Action::fixed_points() const {
  const Index d = host_->dim();
  const Index k = target_.k;
  const Index n = target_.dim();
  // stack vec(alpha(n_m) - 1 (x) n_m) as columns of the defect map on coords
  CMatrix defect((d * k) * (d * k), n);
  for (Index m = 0; m < n; ++m)
    defect.col(m) =
        vec(CMatrix(alpha_[static_cast<size_t>(m)] -
                    kron(identity(d), target_.basis[static_cast<size_t>(m)])));
  Eigen::JacobiSVD<CMatrix> svd(defect, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? kRankTol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  for (Index c = rank; c < svd.matrixV().cols(); ++c)
    basis.push_back(target_.element(CVector(svd.matrixV().col(c))));
  if (basis.empty()) return MatSubspace(k, k);
  return MatSubspace::span(basis);
}

CMatrix Action::module_star(const CMatrix& n, const Functional& f) const {
  if (f.host() != host_) throw Error("module_star: functional must live on the host");
  const Index d = host_->dim();
  CMatrix img = alpha_of(target_.coords(n));
  CMatrix out = zero(target_.k, target_.k);
  for (Index i = 0; i < d; ++i)
    if (f.coords()(i) != 0.0) out += f.coords()(i) * slice_first(img, host_->pi_dual(i), d, target_.k);
  return out;
}

CVector Action::pre_module(const Functional& f, const CVector& omega) const {
  // <n, f *_alpha omega> = <n *_alpha f, omega>
  const Index n = target_.dim();
  CVector out(n);
  for (Index m = 0; m < n; ++m) {
    CMatrix starred = module_star(target_.basis[static_cast<size_t>(m)], f);
    out(m) = (omega.transpose() * target_.coords(starred))(0, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// CrossedProduct

CrossedProduct::CrossedProduct(Action action) : action_(std::move(action)) {
  const auto& q = *action_.host();
  const Index d = q.dim();
  const Index k = action_.target().k;
  const Index n = action_.target().dim();
  if (d > max_l2_dim() || n > max_target_dim())
    throw Error("crossed product refused: l2 dim " + std::to_string(d) + " (cap " +
                std::to_string(max_l2_dim()) + "), target dim " + std::to_string(n) + " (cap " +
                std::to_string(max_target_dim()) + ")");
  ambient_ = d * k;

  raw_.reserve(static_cast<size_t>(n * d));
  for (Index m = 0; m < n; ++m)
    for (Index j = 0; j < d; ++j)
      raw_.push_back(action_.alpha_image(m) * kron(q.dual_op(j), identity(k)));
  space_ = MatSubspace::span(raw_);
  if (space_.dim() != n * d)
    throw ValidationError("crossed_basis_independent",
                          static_cast<double>(n * d - space_.dim()));
  residuals_["crossed_basis_independent"] = 0.0;

  stacked_raw_ = CMatrix(ambient_ * ambient_, n * d);
  for (Index mu = 0; mu < n * d; ++mu) stacked_raw_.col(mu) = vec(raw_[static_cast<size_t>(mu)]);
  solver_.compute(stacked_raw_);

  // the generated algebra adds nothing: the span is already closed. All
  // pairwise products are checked, batched through the orthonormal basis.
  double closure = 0;
  const CMatrix& basis = space_.stacked();
  for (const auto& a : raw_) {
    CMatrix prods(ambient_ * ambient_, dim());
    for (Index nu = 0; nu < dim(); ++nu)
      prods.col(nu) = vec(CMatrix(a * raw_[static_cast<size_t>(nu)]));
    CMatrix defect = prods - basis * (basis.adjoint() * prods);
    for (Index nu = 0; nu < dim(); ++nu)
      closure = std::max(closure, defect.col(nu).norm() /
                                      std::max(1.0, prods.col(nu).norm()));
  }
  residuals_["crossed_multiplicatively_closed"] = closure;
  if (closure > kTolMember) throw ValidationError("crossed_multiplicatively_closed", closure);
}

CVector CrossedProduct::coordinates(const CMatrix& t, double tol) const {
  if (t.rows() != ambient_ || t.cols() != ambient_)
    throw Error("crossed product element has wrong ambient size");
  CVector c = solver_.solve(vec(t));
  double res = (stacked_raw_ * c - vec(t)).norm() / std::max(1.0, t.norm());
  if (res > tol)
    throw Error("element is outside the crossed product, residual " + std::to_string(res));
  return c;
}

bool CrossedProduct::contains(const CMatrix& t, double tol) const {
  if (t.rows() != ambient_ || t.cols() != ambient_) return false;
  CVector c = solver_.solve(vec(t));
  return (stacked_raw_ * c - vec(t)).norm() / std::max(1.0, t.norm()) <= tol;
}

CMatrix CrossedProduct::from_coordinates(const CVector& c) const {
  return unvec(stacked_raw_ * c, ambient_, ambient_);
}

CMatrix CrossedProduct::expect(const CMatrix& t) const {
  const auto& q = *host();
  const Index d = q.dim();
  const Index n = action_.target().dim();
  CVector c = coordinates(t);
  // E(alpha(n_m)(x_hat_j (x) 1)) = phi_hat(x_hat_j) alpha(n_m), phi_hat(x_hat_j) = h_j
  CMatrix out = CMatrix::Zero(ambient_, ambient_);
  for (Index m = 0; m < n; ++m) {
    Cplx weight = 0;
    for (Index j = 0; j < d; ++j) weight += c(raw_index(m, j)) * q.haar_element()(j);
    if (weight != 0.0) out += weight * action_.alpha_image(m);
  }
  return out;
}

CVector CrossedProduct::module_action_coords(const CVector& c, const Functional& fhat) const {
  const auto& q = *host();
  if (fhat.host() != q.dual()) throw Error("module_action: functional must live on the dual");
  const Index d = q.dim();
  const Index n = action_.target().dim();
  const CMatrix& chat = q.dual()->data().comult;
  // T.fhat = sum_m alpha(n_m)([(id (x) fhat) Gamma_hat(x_hat_j)] (x) 1)
  CVector out = CVector::Zero(dim());
  for (Index j = 0; j < d; ++j) {
    CVector img(d);
    for (Index cc = 0; cc < d; ++cc) {
      Cplx acc = 0;
      for (Index e = 0; e < d; ++e) acc += chat(cc * d + e, j) * fhat.coords()(e);
      img(cc) = acc;
    }
    for (Index m = 0; m < n; ++m) {
      Cplx cmj = c(raw_index(m, j));
      if (cmj == 0.0) continue;
      for (Index cc = 0; cc < d; ++cc) out(raw_index(m, cc)) += cmj * img(cc);
    }
  }
  return out;
}

CMatrix CrossedProduct::module_action(const CMatrix& t, const Functional& fhat) const {
  return from_coordinates(module_action_coords(coordinates(t), fhat));
}

CMatrix CrossedProduct::module_action_theta(const CMatrix& t, const Functional& fhat) const {
  LinMap theta = theta_l_op_dual(host(), fhat);
  return apply_to_first_leg(theta, t, host()->dim(), action_.target().k);
}

CMatrix CrossedProduct::fejer_term(const CMatrix& t, const Functional& fhat,
                                   const std::vector<int>& bands) const {
  // the support of fhat must not escape the band set
  auto table = coeff_expansion(host(), fhat);
  for (const auto& e : table) {
    if (std::abs(e.value) < 1e-12) continue;
    if (std::find(bands.begin(), bands.end(), e.beta) == bands.end())
      throw Error("fejer_term: functional support escapes band set at irrep " +
                  std::to_string(e.beta));
  }
  return fejer_partial(t, fhat, bands);
}

CMatrix CrossedProduct::fejer_partial(const CMatrix& t, const Functional& fhat,
                                      const std::vector<int>& bands) const {
  const auto& q = *host();
  const auto& pw = q.peter_weyl();
  const Index k = action_.target().k;
  CMatrix acc = CMatrix::Zero(ambient_, ambient_);
  for (int band : bands) {
    const DualIrrep& ir = pw.at(static_cast<size_t>(band));
    for (Index i = 0; i < ir.n; ++i)
      for (Index j = 0; j < ir.n; ++j) {
        Cplx coeff = (fhat.coords().transpose() * ir.coeff_coords(j, i))(0, 0);
        if (std::abs(coeff) < 1e-15) continue;
        double weight = ir.qdim / ir.f_eigs(i);
        for (Index kk = 0; kk < ir.n; ++kk) {
          CMatrix inner = expect(t * kron(CMatrix(ir.coeff(kk, i).adjoint()), identity(k)));
          acc += weight * coeff * inner * kron(ir.coeff(kk, j), identity(k));
        }
      }
  }
  return acc;
}

CrossedProduct::Reconstruction CrossedProduct::fejer_reconstruct(const CMatrix& t) const {
  const auto& pw = host()->peter_weyl();
  std::vector<int> bands;
  for (const auto& ir : pw) bands.push_back(ir.index);
  Functional epshat = Functional::counit(host()->dual());
  CMatrix out = fejer_term(t, epshat, bands);
  return {out, (out - t).norm()};
}

CMatrix CrossedProduct::spectral_projection(const CMatrix& t, int gamma) const {
  const auto& pw = host()->peter_weyl();
  return module_action(t, band_functional(host(), pw.at(static_cast<size_t>(gamma))));
}

Cplx CrossedProduct::multiplier_pairing(const CMatrix& t, const CMatrix& phi,
                                        const Functional& vhat) const {
  return (phi * module_action(t, vhat)).trace();
}

MatSubspace CrossedProduct::alpha_n() const {
  std::vector<CMatrix> imgs;
  for (Index m = 0; m < action_.target().dim(); ++m) imgs.push_back(action_.alpha_image(m));
  return MatSubspace::span(imgs);
}

MatSubspace CrossedProduct::dual_action_fixed_points() const {
  const auto& q = *host();
  const Index d = q.dim();
  const Index n = action_.target().dim();
  const CMatrix& chat = q.dual()->data().comult;
  const CVector eps = q.data().counit.transpose();
  // alpha_hat(T) = 1 (x) T in coordinates over x_hat_e (x) R_{m,c}:
  //   sum_j Chat(c*d+e, j) a_{mj} = eps_e a_{mc}
  CMatrix sys(d * n * d, n * d);
  sys.setZero();
  Index row = 0;
  for (Index e = 0; e < d; ++e)
    for (Index m = 0; m < n; ++m)
      for (Index c = 0; c < d; ++c, ++row) {
        for (Index j = 0; j < d; ++j) sys(row, raw_index(m, j)) += chat(c * d + e, j);
        sys(row, raw_index(m, c)) -= eps(e);
      }
  Eigen::JacobiSVD<CMatrix> svd(sys, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? kRankTol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  for (Index c = rank; c < svd.matrixV().cols(); ++c)
    basis.push_back(from_coordinates(CVector(svd.matrixV().col(c))));
  if (basis.empty()) return MatSubspace(ambient_, ambient_);
  return MatSubspace::span(basis);
}

CMatrix apply_to_first_leg(const LinMap& phi, const CMatrix& t, Index d, Index k) {
  if (phi.rows() != d || phi.cols() != d) throw Error("apply_to_first_leg: map must act on M_d");
  if (t.rows() != d * k || t.cols() != d * k) throw Error("apply_to_first_leg: shape mismatch");
  CMatrix out = CMatrix::Zero(d * k, d * k);
  for (Index p = 0; p < k; ++p)
    for (Index qq = 0; qq < k; ++qq) {
      CMatrix slice(d, d);
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) slice(a, b) = t(a * k + p, b * k + qq);
      CMatrix mapped = phi.apply(slice);
      for (Index a = 0; a < d; ++a)
        for (Index b = 0; b < d; ++b) out(a * k + p, b * k + qq) = mapped(a, b);
    }
  return out;
}

}  // namespace nqfa
