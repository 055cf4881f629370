#include "nqfa/fubini.hpp"

namespace nqfa {

bool check_invariant(const Action& a, const MatSubspace& x, double tol) {
  const auto* q = a.host().get();
  const Index d = q->dim();
  const Index k = a.target().k;
  if (x.rows() != k || x.cols() != k) throw Error("invariant check: X must live in the target");
  if (x.dim() == 0) return true;
  // alpha(X) inside span{pi(e_i) (x) x_basis}
  std::vector<CMatrix> legs;
  for (Index i = 0; i < d; ++i)
    for (Index r = 0; r < x.dim(); ++r) legs.push_back(kron(q->basis_op(i), x.basis(r)));
  MatSubspace target_space = MatSubspace::span(legs);
  for (Index r = 0; r < x.dim(); ++r) {
    CMatrix image = a.alpha_of(a.target().coords(x.basis(r)));
    if (target_space.residual(image) > tol) return false;
  }
  return true;
}

MatSubspace fubini_crossed_product(const CrossedProduct& cp, const MatSubspace& x) {
  const auto& a = cp.action();
  const auto* q = cp.host().get();
  const Index k = a.target().k;
  const Index nd = cp.dim();

  // alpha(X) as an operator subspace and the projector onto its complement
  std::vector<CMatrix> ax;
  for (Index r = 0; r < x.dim(); ++r) ax.push_back(a.alpha_of(a.target().coords(x.basis(r))));
  MatSubspace alpha_x = ax.empty() ? MatSubspace(cp.ambient(), cp.ambient()) : MatSubspace::span(ax);

  // linear conditions on crossed-product coordinates: for every Pol(dual)
  // coefficient v, the component of E(T(v (x) 1)) orthogonal to alpha(X)
  // vanishes. The E-images always lie in alpha(N), so each constraint block
  // is expressed against an orthonormal basis of that space.
  MatSubspace alpha_n = cp.alpha_n();
  const CMatrix& bn = alpha_n.stacked();  // ambient^2 x dim alpha(N)
  std::vector<CMatrix> rows;
  const auto& pw = q->peter_weyl();
  for (const auto& ir : pw)
    for (Index i = 0; i < ir.n; ++i)
      for (Index j = 0; j < ir.n; ++j) {
        CMatrix cols(bn.cols(), nd);
        for (Index mu = 0; mu < nd; ++mu) {
          CMatrix image = cp.expect(cp.raw(mu) * kron(ir.coeff(i, j), identity(k)));
          cols.col(mu) = bn.adjoint() * vec(CMatrix(image - alpha_x.project(image)));
        }
        rows.push_back(cols);
      }
  CMatrix stacked(static_cast<Index>(rows.size()) * bn.cols(), nd);
  for (size_t r = 0; r < rows.size(); ++r)
    stacked.middleRows(static_cast<Index>(r) * bn.cols(), bn.cols()) = rows[r];
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? kRankTol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  for (Index c = rank; c < svd.matrixV().cols(); ++c)
    basis.push_back(cp.from_coordinates(CVector(svd.matrixV().col(c))));
  if (basis.empty()) return MatSubspace(cp.ambient(), cp.ambient());
  return MatSubspace::span(basis);
}

MatSubspace span_crossed(const CrossedProduct& cp, const MatSubspace& x) {
  const auto& a = cp.action();
  const auto* q = cp.host().get();
  const Index k = a.target().k;
  std::vector<CMatrix> gens;
  for (Index r = 0; r < x.dim(); ++r) {
    CMatrix ax = a.alpha_of(a.target().coords(x.basis(r)));
    for (Index j = 0; j < q->dim(); ++j) gens.push_back(ax * kron(q->dual_op(j), identity(k)));
  }
  if (gens.empty()) return MatSubspace(cp.ambient(), cp.ambient());
  return MatSubspace::span(gens);
}

SliceMapReport slice_map_check(const CrossedProduct& cp, const MatSubspace& x) {
  SliceMapReport rep;
  rep.invariant = check_invariant(cp.action(), x);
  if (!rep.invariant) return rep;
  MatSubspace fub = fubini_crossed_product(cp, x);
  MatSubspace spn = span_crossed(cp, x);
  rep.span_dim = spn.dim();
  rep.fubini_dim = fub.dim();
  rep.contained = fub.contains(spn);
  rep.equal = rep.contained && fub.dim() == spn.dim();

  // dual-action reformulation: T in fubini iff T.fhat in span for every
  // fhat in an L^1(dual) basis; solved as one more nullspace problem, with
  // the constraint blocks compressed against the crossed-product basis
  const auto* q = cp.host().get();
  const Index nd = cp.dim();
  const CMatrix& bc = cp.space().stacked();
  std::vector<CMatrix> rows;
  for (Index e = 0; e < q->dim(); ++e) {
    Functional fhat = Functional::coordinate(q->dual(), e);
    CMatrix cols(bc.cols(), nd);
    for (Index mu = 0; mu < nd; ++mu) {
      CVector unitc = CVector::Zero(nd);
      unitc(mu) = 1.0;
      CMatrix moved = cp.from_coordinates(cp.module_action_coords(unitc, fhat));
      cols.col(mu) = bc.adjoint() * vec(CMatrix(moved - spn.project(moved)));
    }
    rows.push_back(cols);
  }
  CMatrix stacked(static_cast<Index>(rows.size()) * bc.cols(), nd);
  for (size_t r = 0; r < rows.size(); ++r)
    stacked.middleRows(static_cast<Index>(r) * bc.cols(), bc.cols()) = rows[r];
  Eigen::JacobiSVD<CMatrix> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? kRankTol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  for (Index c = rank; c < svd.matrixV().cols(); ++c)
    basis.push_back(cp.from_coordinates(CVector(svd.matrixV().col(c))));
  MatSubspace reform =
      basis.empty() ? MatSubspace(cp.ambient(), cp.ambient()) : MatSubspace::span(basis);
  rep.reformulation_ok = subspace_equal(reform, fub);
  return rep;
}

MatSubspace orbit_closure_subspace(const Action& a, std::uint64_t seed) {
  const auto* q = a.host().get();
  Rng rng(seed);
  CVector c(a.target().dim());
  for (Index i = 0; i < c.size(); ++i) c(i) = rng.cgauss();
  MatSubspace x = MatSubspace::span({a.target().element(c)});
  for (;;) {
    std::vector<CMatrix> next;
    for (Index r = 0; r < x.dim(); ++r) next.push_back(x.basis(r));
    for (Index r = 0; r < x.dim(); ++r)
      for (Index i = 0; i < q->dim(); ++i)
        next.push_back(a.module_star(x.basis(r), Functional::coordinate(a.host(), i)));
    MatSubspace grown = MatSubspace::span(next);
    if (grown.dim() == x.dim()) return grown;
    x = grown;
  }
}

}  // namespace nqfa
