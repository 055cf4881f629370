#include "nqfa/bimodules.hpp"

namespace nqfa {

namespace {

CMatrix col_matrix(const CVector& v) {
  return Eigen::Map<const CMatrix>(v.data(), v.size(), 1);
}

std::vector<Functional> subspace_functionals(const FiniteQuantumGroup::Ptr& host,
                                             const MatSubspace& coords) {
  std::vector<Functional> out;
  for (Index r = 0; r < coords.dim(); ++r)
    out.emplace_back(host, CVector(coords.basis(r).col(0)));
  return out;
}

// theta_r maps for a family of functionals
std::vector<LinMap> theta_family(const std::vector<Functional>& fs) {
  std::vector<LinMap> out;
  out.reserve(fs.size());
  for (const auto& f : fs) out.push_back(theta_r(f));
  return out;
}

}  // namespace

LeftIdeal LeftIdeal::from_generators(const FiniteQuantumGroup::Ptr& host,
                                     const std::vector<Functional>& gens) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  std::vector<CMatrix> cols;
  for (const auto& g : gens) {
    if (g.host() != host) throw Error("ideal generator lives on the wrong host");
    // L^1 is unital, so span{f^i * g} already contains g
    for (Index i = 0; i < d; ++i)
      cols.push_back(col_matrix(convolve(Functional::coordinate(host, i), g).coords()));
  }
  MatSubspace space = cols.empty() ? MatSubspace(d, 1) : MatSubspace::span(cols);
  return from_subspace(host, std::move(space));
}

LeftIdeal LeftIdeal::from_subspace(const FiniteQuantumGroup::Ptr& host, MatSubspace coords) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  if (coords.rows() != d || coords.cols() != 1) throw Error("ideal subspace has wrong shape");
  double r = 0;
  for (Index i = 0; i < d; ++i)
    for (Index b = 0; b < coords.dim(); ++b) {
      Functional f(host, CVector(coords.basis(b).col(0)));
      CVector conv = convolve(Functional::coordinate(host, i), f).coords();
      r = std::max(r, coords.residual(col_matrix(conv)));
    }
  if (r > kTolMember) throw ValidationError("left_ideal_module", r);
  return {host, std::move(coords)};
}

LeftIdeal LeftIdeal::zero(const FiniteQuantumGroup::Ptr& host) {
  return {host, MatSubspace(FiniteQuantumGroup::require(host)->dim(), 1)};
}

LeftIdeal LeftIdeal::full(const FiniteQuantumGroup::Ptr& host) {
  return {host, MatSubspace::full(FiniteQuantumGroup::require(host)->dim(), 1)};
}

Functional LeftIdeal::basis_functional(Index r) const {
  return {host_, CVector(space_.basis(r).col(0))};
}

MatSubspace annihilator(const LeftIdeal& j) {
  // the pairing is bilinear, so the annihilator is the hermitian-orthogonal
  // complement of the conjugated coordinates
  const Index d = j.host()->dim();
  if (j.dim() == 0) return MatSubspace::full(d, 1);
  std::vector<CMatrix> conj_cols;
  for (Index r = 0; r < j.dim(); ++r) conj_cols.push_back(j.space().basis(r).conjugate());
  return MatSubspace::span(conj_cols).orthogonal_complement();
}

MatSubspace pre_annihilator(const FiniteQuantumGroup::Ptr& host, const MatSubspace& coords) {
  const Index d = FiniteQuantumGroup::require(host)->dim();
  if (coords.dim() == 0) return MatSubspace::full(d, 1);
  std::vector<CMatrix> conj_cols;
  for (Index r = 0; r < coords.dim(); ++r) conj_cols.push_back(coords.basis(r).conjugate());
  return MatSubspace::span(conj_cols).orthogonal_complement();
}

InvariantBimodule bim(const FiniteQuantumGroup::Ptr& q, const MatSubspace& coords) {
  const auto* qq = FiniteQuantumGroup::require(q);
  std::vector<CMatrix> ops;
  for (Index r = 0; r < coords.dim(); ++r)
    ops.push_back(qq->represent(CVector(coords.basis(r).col(0))));
  MatSubspace op_space =
      ops.empty() ? MatSubspace(qq->dim(), qq->dim()) : MatSubspace::span(ops);
  return bim_ops(q, op_space);
}

InvariantBimodule bim_ops(const FiniteQuantumGroup::Ptr& q, const MatSubspace& ops) {
  const auto* qq = FiniteQuantumGroup::require(q);
  const Index d = qq->dim();
  std::vector<CMatrix> gens;
  for (Index r = 0; r < ops.dim(); ++r)
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b)
        gens.push_back(qq->dual_op(a) * ops.basis(r) * qq->dual_op(b));
  MatSubspace space = gens.empty() ? MatSubspace(d, d) : MatSubspace::span(gens);
  return {std::move(space), "bim"};
}

InvariantBimodule ran_perp(const LeftIdeal& j) {
  const auto* q = j.host().get();
  std::vector<Functional> basis;
  for (Index r = 0; r < j.dim(); ++r) basis.push_back(j.basis_functional(r));
  MatSubspace space = common_nullspace(theta_family(basis), q->dim(), q->dim());
  return {std::move(space), "ranperp"};
}

MatSubspace ran_subspace(const LeftIdeal& j) {
  const auto* q = j.host().get();
  const Index d = q->dim();
  std::vector<CMatrix> preduals;
  for (Index r = 0; r < j.dim(); ++r) {
    // predual action against the bilinear trace pairing:
    // tr(Theta_*(rho) X) = tr(rho Theta(X))
    CMatrix m = theta_r(j.basis_functional(r)).matrix();
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        CMatrix rho = zero(d, d);
        rho(a, b) = 1.0;
        CVector out = m.transpose() * vec(CMatrix(rho.transpose()));
        preduals.push_back(unvec(out, d, d).transpose());
      }
  }
  if (preduals.empty()) return MatSubspace(d, d);
  return MatSubspace::span(preduals);
}

BimRanReport check_bim_equals_ranperp(const LeftIdeal& j) {
  BimRanReport rep;
  const auto* q = j.host().get();
  MatSubspace ann = annihilator(j);
  InvariantBimodule b = bim(j.host(), ann);
  InvariantBimodule rp = ran_perp(j);
  rep.ideal_dim = j.dim();
  rep.annihilator_dim = ann.dim();
  rep.bim_dim = b.space.dim();
  rep.ranperp_dim = rp.space.dim();
  rep.contained = rp.space.contains(b.space);
  rep.equal = rep.contained && b.space.dim() == rp.space.dim();
  // Bim(J^perp) cap l^inf = J^perp
  MatSubspace cap = intersect(b.space, q->algebra_ops());
  std::vector<CMatrix> ann_ops;
  for (Index r = 0; r < ann.dim(); ++r)
    ann_ops.push_back(q->represent(CVector(ann.basis(r).col(0))));
  MatSubspace ann_op_space =
      ann_ops.empty() ? MatSubspace(q->dim(), q->dim()) : MatSubspace::span(ann_ops);
  rep.trace_identity = subspace_equal(cap, ann_op_space);
  return rep;
}

MatSubspace null_set(const FiniteQuantumGroup::Ptr& host, const std::vector<Functional>& sigma) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  // solve Theta^r(sigma)(pi(a)) = 0 inside pi(l^inf), then return coordinates
  MatSubspace ops = common_nullspace_in(theta_family(sigma), q->algebra_ops());
  std::vector<CMatrix> cols;
  for (Index r = 0; r < ops.dim(); ++r)
    cols.push_back(col_matrix(q->coords_of_operator(ops.basis(r))));
  MatSubspace out = cols.empty() ? MatSubspace(d, 1) : MatSubspace::span(cols);

  // reduction to the generated ideal: N(Sigma) = (L^1 * Sigma)^perp
  LeftIdeal ideal = LeftIdeal::from_generators(host, sigma);
  MatSubspace viaperp = annihilator(ideal);
  if (!subspace_equal(out, viaperp))
    throw ValidationError("null_set_reduction", 1.0,
                          "N(Sigma) != (L^1 * Sigma)^perp");
  return out;
}

MatSubspace null_set_big(const FiniteQuantumGroup::Ptr& host,
                         const std::vector<Functional>& sigma) {
  const auto* q = FiniteQuantumGroup::require(host);
  MatSubspace out = common_nullspace(theta_family(sigma), q->dim(), q->dim());
  // N~(Sigma) = N~(L^1 * Sigma)
  LeftIdeal ideal = LeftIdeal::from_generators(host, sigma);
  std::vector<Functional> basis;
  for (Index r = 0; r < ideal.dim(); ++r) basis.push_back(ideal.basis_functional(r));
  MatSubspace via_ideal = common_nullspace(theta_family(basis), q->dim(), q->dim());
  if (!subspace_equal(out, via_ideal))
    throw ValidationError("null_set_big_reduction", 1.0,
                          "N~(Sigma) != N~(L^1 * Sigma)");
  return out;
}

HarmonicSpaces harmonic(const FiniteQuantumGroup::Ptr& host,
                        const std::vector<Functional>& sigma) {
  Functional eps = Functional::counit(host);
  std::vector<Functional> shifted;
  for (const auto& s : sigma) shifted.push_back(s - eps);
  return {null_set(host, shifted), null_set_big(host, shifted)};
}

ClassifyResult classify_joint_invariant(const FiniteQuantumGroup::Ptr& q, const MatSubspace& u) {
  const auto* qq = FiniteQuantumGroup::require(q);
  const Index d = qq->dim();
  ClassifyResult res;
  if (u.rows() != d || u.cols() != d) throw Error("classify: subspace must live in B(l2)");

  // (a) L^inf(dual)-bimodule
  for (Index r = 0; r < u.dim(); ++r)
    for (Index a = 0; a < d; ++a)
      for (Index b = 0; b < d; ++b) {
        CMatrix moved = qq->dual_op(a) * u.basis(r) * qq->dual_op(b);
        if (u.residual(moved) > 1e-9) {
          res.violation = "not an L^inf(dual)-bimodule: generator (" + std::to_string(a) + "," +
                          std::to_string(b) + ") escapes on basis element " + std::to_string(r);
          return res;
        }
      }
  // (b) invariance under the dual multiplier action
  for (Index j = 0; j < d; ++j) {
    LinMap theta = theta_l_op_dual(q, Functional::coordinate(qq->dual(), j));
    for (Index r = 0; r < u.dim(); ++r)
      if (u.residual(theta.apply(u.basis(r))) > 1e-9) {
        res.violation = "not invariant under the dual action: functional " + std::to_string(j) +
                        " escapes on basis element " + std::to_string(r);
        return res;
      }
  }
  res.invariant = true;

  // proof recipe: I = span{E(T g_hat)} * L^1, J = pre-annihilator of I
  LinMap e = canonical_expectation(q);
  std::vector<CMatrix> i_cols;
  for (Index r = 0; r < u.dim(); ++r)
    for (const auto& ir : qq->peter_weyl())
      for (Index ii = 0; ii < ir.n; ++ii)
        for (Index jj = 0; jj < ir.n; ++jj) {
          CMatrix et = e.apply(CMatrix(u.basis(r) * ir.coeff(ii, jj)));
          CVector a = qq->coords_of_operator(et);
          // right L^1-module closure: a * f^m = (f^m (x) id) Gamma(a)
          CVector g = qq->comult(a);
          for (Index m = 0; m < d; ++m) {
            CVector moved(d);
            for (Index b = 0; b < d; ++b) moved(b) = g(m * d + b);
            i_cols.push_back(col_matrix(moved));
          }
          i_cols.push_back(col_matrix(a));
        }
  MatSubspace i_space = i_cols.empty() ? MatSubspace(d, 1) : MatSubspace::span(i_cols);
  MatSubspace j_coords = pre_annihilator(q, i_space);
  LeftIdeal j = LeftIdeal::from_subspace(q, j_coords);
  InvariantBimodule rebuilt = bim(q, annihilator(j));
  res.roundtrip_ok = subspace_equal(rebuilt.space, u);
  res.ideal = j;
  return res;
}

LatticeReport lattice_ops(const LeftIdeal& j1, const LeftIdeal& j2) {
  if (j1.host() != j2.host()) throw Error("lattice_ops: ideals on different hosts");
  const auto& q = j1.host();
  LatticeReport rep;
  MatSubspace cap_coords = intersect(j1.space(), j2.space());
  LeftIdeal jcap = LeftIdeal::from_subspace(q, cap_coords);

  InvariantBimodule b1 = bim(q, annihilator(j1));
  InvariantBimodule b2 = bim(q, annihilator(j2));
  rep.join_identity =
      subspace_equal(sum(b1.space, b2.space), bim(q, annihilator(jcap)).space);

  InvariantBimodule meet_inner = bim(q, intersect(annihilator(j1), annihilator(j2)));
  rep.meet_identity = subspace_equal(meet_inner.space, intersect(b1.space, b2.space));

  rep.ran_identity = subspace_equal(intersect(ran_subspace(j1), ran_subspace(j2)),
                                    ran_subspace(jcap));
  return rep;
}

CstarReport cstar_variants(const LeftIdeal& j) {
  // at finite dimension c0 = l^inf and K(l2) = B(l2): the predual pairing
  // J_perp in c0 coincides with J^perp, so the same engine answers the
  // C*-side questions
  CstarReport rep;
  MatSubspace lower = annihilator(j);
  InvariantBimodule b = bim(j.host(), lower);
  InvariantBimodule rp = ran_perp(j);
  rep.j_lowerperp_dim = lower.dim();
  rep.bim_dim = b.space.dim();
  rep.ranperp_dim = rp.space.dim();
  rep.equal = subspace_equal(b.space, rp.space);
  MatSubspace cap = intersect(b.space, j.host()->algebra_ops());
  std::vector<CMatrix> ops;
  for (Index r = 0; r < lower.dim(); ++r)
    ops.push_back(j.host()->represent(CVector(lower.basis(r).col(0))));
  MatSubspace lower_ops =
      ops.empty() ? MatSubspace(j.host()->dim(), j.host()->dim()) : MatSubspace::span(ops);
  rep.trace_identity = subspace_equal(cap, lower_ops);
  return rep;
}

std::vector<LeftIdeal> enumerate_ideals(const FiniteQuantumGroup::Ptr& host) {
  const auto* q = FiniteQuantumGroup::require(host);
  const Index d = q->dim();
  // blocks of the convolution algebra = blocks of the dual quantum group
  const auto& blocks = q->dual()->algebra_blocks();
  for (const auto& b : blocks)
    if (b.n != 1)
      throw Error("enumerate_ideals: convolution algebra is not commutative; use sample_ideals");
  if (blocks.size() > 12) throw Error("enumerate_ideals: too many blocks to enumerate");
  std::vector<LeftIdeal> out;
  for (std::uint64_t mask = 0; mask < (1ull << blocks.size()); ++mask) {
    std::vector<CMatrix> cols;
    for (size_t b = 0; b < blocks.size(); ++b)
      if (mask & (1ull << b)) cols.push_back(col_matrix(blocks[b].unit_coords[0]));
    MatSubspace space = cols.empty() ? MatSubspace(d, 1) : MatSubspace::span(cols);
    out.push_back(LeftIdeal::from_subspace(host, std::move(space)));
  }
  return out;
}

std::vector<LeftIdeal> sample_ideals(const FiniteQuantumGroup::Ptr& host, int count,
                                     std::uint64_t seed) {
  const auto* q = FiniteQuantumGroup::require(host);
  Rng rng(seed);
  std::vector<LeftIdeal> out;
  for (int k = 0; k < count; ++k) {
    CVector g(q->dim());
    for (Index i = 0; i < g.size(); ++i) g(i) = rng.cgauss();
    out.push_back(LeftIdeal::from_generators(host, {Functional(host, g)}));
  }
  return out;
}

}  // namespace nqfa
