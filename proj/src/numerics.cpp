#include "nqfa/numerics.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "json.hpp"

namespace nqfa {

double Rng::gauss() {
  // Box-Muller on splitmix64 output; fully deterministic for a given seed.
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

CMatrix Rng::matrix(Index rows, Index cols) {
  CMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = cgauss();
  return m;
}

bool all_finite(const CMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag()))
        return false;
  return true;
}

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }
CMatrix zero(Index rows, Index cols) { return CMatrix::Zero(rows, cols); }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CVector vec(const CMatrix& a) {
  return Eigen::Map<const CVector>(a.data(), a.size());
}

CMatrix unvec(const CVector& v, Index rows, Index cols) {
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix flip_matrix(Index d) {
  CMatrix s = CMatrix::Zero(d * d, d * d);
  for (Index i = 0; i < d; ++i)
    for (Index j = 0; j < d; ++j) s(j * d + i, i * d + j) = 1.0;
  return s;
}

void MatSubspace::check_shape(const CMatrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_)
    throw Error("subspace ambient mismatch: expected " +
                std::to_string(rows_) + "x" + std::to_string(cols_) + ", got " +
                std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
}

void MatSubspace::check_ambient(const MatSubspace& other) const {
  if (other.rows_ != rows_ || other.cols_ != cols_)
    throw Error("subspace ambient mismatch between operands");
}

CMatrix MatSubspace::project(const CMatrix& x) const {
  check_shape(x);
  if (dim() == 0) return CMatrix::Zero(rows_, cols_);
  CVector v = vec(x);
  CVector p = stacked_ * (stacked_.adjoint() * v);
  return unvec(p, rows_, cols_);
}

double MatSubspace::residual(const CMatrix& x) const {
  check_shape(x);
  double nx = frob(x);
  return frob(x - project(x)) / std::max(1.0, nx);
}

bool MatSubspace::contains(const CMatrix& x, double tol) const {
  return residual(x) <= tol;
}

bool MatSubspace::contains(const MatSubspace& other, double tol) const {
  check_ambient(other);
  for (const auto& b : other.basis_)
    if (!contains(b, tol)) return false;
  return true;
}

bool MatSubspace::equals(const MatSubspace& other, double tol) const {
  check_ambient(other);
  return dim() == other.dim() && contains(other, tol) && other.contains(*this, tol);
}

CVector MatSubspace::coordinates(const CMatrix& x, double tol) const {
  check_shape(x);
  if (residual(x) > tol)
    throw Error("matrix lies outside the subspace (residual " +
                std::to_string(residual(x)) + ")");
  return stacked_.adjoint() * vec(x);
}

MatSubspace MatSubspace::orthogonal_complement() const {
  if (dim() == 0) return full(rows_, cols_);
  // Nullspace of stacked^* via full SVD.
  Eigen::JacobiSVD<CMatrix> svd(stacked_.adjoint(), Eigen::ComputeFullV);
  Index rank = dim();
  MatSubspace out(rows_, cols_);
  const CMatrix& v = svd.matrixV();
  for (Index k = rank; k < v.cols(); ++k) {
    out.basis_.push_back(unvec(v.col(k), rows_, cols_));
  }
  out.stacked_ = v.rightCols(v.cols() - rank);
  return out;
}

MatSubspace MatSubspace::span(const std::vector<CMatrix>& mats, double tol) {
  if (mats.empty()) throw Error("span of empty list needs an ambient shape; use MatSubspace(rows, cols)");
  Index rows = mats[0].rows(), cols = mats[0].cols();
  CMatrix stack(rows * cols, static_cast<Index>(mats.size()));
  Index n = 0;
  double maxnorm = 0;
  for (const auto& m : mats) {
    if (m.rows() != rows || m.cols() != cols)
      throw Error("span: input matrices must share a shape");
    if (!all_finite(m)) throw Error("span: non-finite entry in input");
    maxnorm = std::max(maxnorm, frob(m));
  }
  // drop numerically-zero inputs: unit-normalizing them would amplify
  // roundoff junk into spurious directions
  n = 0;
  for (const auto& m : mats) {
    double nm = frob(m);
    if (nm <= 1e-12 * maxnorm) continue;
    stack.col(n++) = vec(m) / nm;
  }
  MatSubspace out(rows, cols);
  if (n == 0) return out;
  Eigen::JacobiSVD<CMatrix> svd(stack.leftCols(n), Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  double cut = tol * sv(0);
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  out.stacked_ = svd.matrixU().leftCols(rank);
  for (Index k = 0; k < rank; ++k)
    out.basis_.push_back(unvec(out.stacked_.col(k), rows, cols));
  return out;
}

MatSubspace MatSubspace::span(const std::vector<CMatrix>& mats, Index rows, Index cols,
                              double tol) {
  if (mats.empty()) return MatSubspace(rows, cols);
  if (mats[0].rows() != rows || mats[0].cols() != cols)
    throw Error("span: inputs do not match the stated ambient shape");
  return span(mats, tol);
}

MatSubspace MatSubspace::full(Index rows, Index cols) {
  MatSubspace out(rows, cols);
  out.stacked_ = CMatrix::Identity(rows * cols, rows * cols);
  for (Index k = 0; k < rows * cols; ++k)
    out.basis_.push_back(unvec(out.stacked_.col(k), rows, cols));
  return out;
}

MatSubspace sum(const MatSubspace& u, const MatSubspace& v) {
  u.check_ambient(v);
  std::vector<CMatrix> all = u.basis_;
  all.insert(all.end(), v.basis_.begin(), v.basis_.end());
  if (all.empty()) return MatSubspace(u.rows_, u.cols_);
  return MatSubspace::span(all);
}

MatSubspace intersect(const MatSubspace& u, const MatSubspace& v) {
  u.check_ambient(v);
  // U cap V = (U^perp + V^perp)^perp, exact at these dimensions.
  return sum(u.orthogonal_complement(), v.orthogonal_complement())
      .orthogonal_complement();
}

bool subspace_equal(const MatSubspace& u, const MatSubspace& v, double tol) {
  return u.equals(v, tol);
}

CMatrix LinMap::apply(const CMatrix& x) const {
  if (x.rows() != rows_ || x.cols() != cols_)
    throw Error("LinMap shape mismatch");
  return unvec(m_ * vec(x), rows_, cols_);
}

LinMap LinMap::compose(const LinMap& inner) const {
  if (inner.rows_ != rows_ || inner.cols_ != cols_)
    throw Error("LinMap compose shape mismatch");
  return {rows_, cols_, m_ * inner.m_};
}

LinMap LinMap::identity_map(Index rows, Index cols) {
  return {rows, cols, CMatrix::Identity(rows * cols, rows * cols)};
}

LinMap LinMap::left_mult(const CMatrix& a) {
  // vec(AX) = kron(I, A) vec(X)
  return {a.rows(), a.rows(), kron(identity(a.rows()), a)};
}

LinMap LinMap::right_mult(const CMatrix& b) {
  // vec(XB) = kron(B^T, I) vec(X)
  return {b.rows(), b.rows(), kron(b.transpose(), identity(b.rows()))};
}

LinMap LinMap::sandwich(const CMatrix& a, const CMatrix& b) {
  return {a.rows(), a.rows(), kron(b.transpose(), a)};
}

MatSubspace common_nullspace(const std::vector<LinMap>& ops, Index rows,
                             Index cols, double tol) {
  if (ops.empty()) return MatSubspace::full(rows, cols);
  Index n = rows * cols;
  CMatrix stack(n * static_cast<Index>(ops.size()), n);
  for (size_t k = 0; k < ops.size(); ++k) {
    if (ops[k].rows() != rows || ops[k].cols() != cols)
      throw Error("common_nullspace: operator ambient mismatch");
    stack.middleRows(static_cast<Index>(k) * n, n) = ops[k].matrix();
  }
  Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? tol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  const CMatrix& v = svd.matrixV();
  for (Index k = rank; k < v.cols(); ++k) basis.push_back(unvec(v.col(k), rows, cols));
  if (basis.empty()) return MatSubspace(rows, cols);
  return MatSubspace::span(basis);
}

MatSubspace common_nullspace_in(const std::vector<LinMap>& ops,
                                const MatSubspace& s, double tol) {
  if (s.dim() == 0) return MatSubspace(s.rows(), s.cols());
  if (ops.empty()) return s;
  Index n = s.rows() * s.cols();
  CMatrix stack(n * static_cast<Index>(ops.size()), s.dim());
  for (size_t k = 0; k < ops.size(); ++k)
    stack.middleRows(static_cast<Index>(k) * n, n) =
        ops[k].matrix() * s.stacked();
  Eigen::JacobiSVD<CMatrix> svd(stack, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  double cut = sv.size() ? tol * std::max(sv(0), 1.0) : 0.0;
  Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  std::vector<CMatrix> basis;
  for (Index k = rank; k < svd.matrixV().cols(); ++k) {
    CVector coeff = svd.matrixV().col(k);
    basis.push_back(unvec(s.stacked() * coeff, s.rows(), s.cols()));
  }
  if (basis.empty()) return MatSubspace(s.rows(), s.cols());
  return MatSubspace::span(basis);
}

MatSubspace generated_algebra(const std::vector<CMatrix>& gens, bool unital,
                              double tol) {
  if (gens.empty() && !unital) throw Error("generated_algebra: no generators");
  Index n = gens.empty() ? 0 : gens[0].rows();
  for (const auto& g : gens)
    if (g.rows() != g.cols() || g.rows() != (n ? n : g.rows()))
      throw Error("generated_algebra: generators must be square, same shape");
  if (n == 0) throw Error("generated_algebra: cannot infer ambient size");
  std::vector<CMatrix> seed = gens;
  if (unital) seed.push_back(identity(n));
  MatSubspace s = MatSubspace::span(seed, tol);
  for (;;) {
    std::vector<CMatrix> next = s.basis();
    for (const auto& a : s.basis())
      for (const auto& b : s.basis()) next.push_back(a * b);
    MatSubspace grown = MatSubspace::span(next, tol);
    if (grown.dim() == s.dim()) return grown;
    s = grown;
  }
}

CMatrix sqrt_psd(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(a);
  Eigen::VectorXd ev = es.eigenvalues();
  for (Index i = 0; i < ev.size(); ++i) ev(i) = std::sqrt(std::max(0.0, ev(i)));
  return es.eigenvectors() * ev.asDiagonal() *
         es.eigenvectors().adjoint();
}

std::string matrix_to_json(const CMatrix& a) {
  nlohmann::ordered_json j;
  j["rows"] = a.rows();
  j["cols"] = a.cols();
  auto data = nlohmann::ordered_json::array();
  for (Index i = 0; i < a.rows(); ++i)
    for (Index jj = 0; jj < a.cols(); ++jj)
      data.push_back({a(i, jj).real(), a(i, jj).imag()});
  j["data"] = std::move(data);
  return j.dump();
}

CMatrix matrix_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  Index rows = j.at("rows").get<Index>();
  Index cols = j.at("cols").get<Index>();
  const auto& data = j.at("data");
  if (static_cast<Index>(data.size()) != rows * cols)
    throw Error("matrix json: data length != rows*cols");
  CMatrix a(rows, cols);
  Index k = 0;
  for (Index i = 0; i < rows; ++i)
    for (Index jj = 0; jj < cols; ++jj, ++k)
      a(i, jj) = Cplx(data[static_cast<size_t>(k)][0].get<double>(),
                      data[static_cast<size_t>(k)][1].get<double>());
  if (!all_finite(a)) throw Error("matrix json: non-finite entry");
  return a;
}

}  // namespace nqfa
