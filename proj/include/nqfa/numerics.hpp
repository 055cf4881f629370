#ifndef NQFA_NUMERICS_HPP
#define NQFA_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

// Dense complex-matrix kernels and subspace algebra. Everything downstream
// (quantum groups, crossed products, bimodule checkers) reduces to the
// operations in this header. All values are immutable after construction and
// all operations are pure functions.
//
// Conventions used throughout the project:
//   * vec(X) stacks columns (Eigen order), so vec(AXB) = kron(B^T, A) vec(X).
//   * Operators on C^{d1} (x) C^{d2} index the product basis e_i (x) e_j as
//     i*d2 + j, matching kron().
//   * The trace inner product <A,B> = tr(A^* B) fixes every orthonormalization.

namespace nqfa {

using Cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Default tolerances. Rank decisions are relative to the largest singular
// value; orthonormality and membership checks are absolute after inputs are
// unit-normalized.
inline constexpr double kTolOrtho = 1e-9;
inline constexpr double kRankTol = 1e-8;
inline constexpr double kTolMember = 1e-8;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A named-axiom failure with its residual, used by every validating
// constructor in the project ("coassociativity", "pentagon", ...).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& axiom, double residual,
                  const std::string& detail = "")
      : Error("axiom '" + axiom + "' failed, residual " +
              std::to_string(residual) + (detail.empty() ? "" : "; " + detail)),
        axiom_(axiom),
        residual_(residual) {}
  const std::string& axiom() const { return axiom_; }
  double residual() const { return residual_; }

 private:
  std::string axiom_;
  double residual_;
};

// Deterministic 64-bit generator (splitmix64). Seeded runs must be
// reproducible byte-for-byte across platforms, so no std:: distributions.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed = 0) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  double uniform() {  // in [0,1)
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }
  double gauss();
  Cplx cgauss() { return {gauss(), gauss()}; }
  CMatrix matrix(Index rows, Index cols);
};

inline double frob(const CMatrix& a) { return a.norm(); }

// Trace inner product <a,b> = tr(a^* b).
inline Cplx tdot(const CMatrix& a, const CMatrix& b) {
  return (a.adjoint() * b).trace();
}

bool all_finite(const CMatrix& a);

CMatrix identity(Index n);
CMatrix zero(Index rows, Index cols);

// Kronecker product, (a(x)b)(i*rb+k, j*cb+l) = a(i,j) b(k,l).
CMatrix kron(const CMatrix& a, const CMatrix& b);

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, Index rows, Index cols);

// Flip unitary on C^d (x) C^d, sigma(x (x) y) = y (x) x.
CMatrix flip_matrix(Index d);

// An orthonormalized subspace of the rows x cols matrix space. The common
// currency for ideals, annihilators, bimodules, null sets and Fubini products.
class MatSubspace {
 public:
  MatSubspace(Index rows, Index cols) : rows_(rows), cols_(cols) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index dim() const { return static_cast<Index>(basis_.size()); }
  const std::vector<CMatrix>& basis() const { return basis_; }
  const CMatrix& basis(Index k) const { return basis_[static_cast<size_t>(k)]; }

  // Columns of the stacked matrix are vec(basis[k]).
  const CMatrix& stacked() const { return stacked_; }

  // Orthogonal projection of x onto the subspace.
  CMatrix project(const CMatrix& x) const;
  // ||x - project(x)||_F / max(1, ||x||_F).
  double residual(const CMatrix& x) const;
  bool contains(const CMatrix& x, double tol = kTolMember) const;
  bool contains(const MatSubspace& other, double tol = kTolMember) const;
  bool equals(const MatSubspace& other, double tol = kTolMember) const;

  // Coordinates of x in the orthonormal basis; throws if x is outside.
  CVector coordinates(const CMatrix& x, double tol = kTolMember) const;

  MatSubspace orthogonal_complement() const;

  static MatSubspace span(const std::vector<CMatrix>& mats,
                          double tol = kRankTol);
  // ambient-aware variant: an empty input list yields the zero subspace
  static MatSubspace span(const std::vector<CMatrix>& mats, Index rows, Index cols,
                          double tol = kRankTol);
  static MatSubspace full(Index rows, Index cols);

  friend MatSubspace sum(const MatSubspace& u, const MatSubspace& v);
  friend MatSubspace intersect(const MatSubspace& u, const MatSubspace& v);

 private:
  Index rows_, cols_;
  std::vector<CMatrix> basis_;
  CMatrix stacked_;  // (rows*cols) x dim
  void check_shape(const CMatrix& x) const;
  void check_ambient(const MatSubspace& other) const;
};

MatSubspace sum(const MatSubspace& u, const MatSubspace& v);
MatSubspace intersect(const MatSubspace& u, const MatSubspace& v);

bool subspace_equal(const MatSubspace& u, const MatSubspace& v,
                    double tol = kTolMember);

// A linear map on the rows x cols matrix space, materialized as an
// (rows*cols)^2 matrix acting on vec(X). Makes kernels, commutants and
// fixed-point sets direct rank problems.
class LinMap {
 public:
  LinMap(Index rows, Index cols)
      : rows_(rows), cols_(cols), m_(CMatrix::Zero(rows * cols, rows * cols)) {}
  LinMap(Index rows, Index cols, CMatrix m)
      : rows_(rows), cols_(cols), m_(std::move(m)) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  const CMatrix& matrix() const { return m_; }

  CMatrix apply(const CMatrix& x) const;
  LinMap compose(const LinMap& inner) const;  // this o inner
  LinMap operator+(const LinMap& o) const { return {rows_, cols_, m_ + o.m_}; }
  LinMap operator-(const LinMap& o) const { return {rows_, cols_, m_ - o.m_}; }
  LinMap scaled(Cplx c) const { return {rows_, cols_, c * m_}; }

  static LinMap identity_map(Index rows, Index cols);
  // X -> A X  and  X -> X B on square matrix spaces.
  static LinMap left_mult(const CMatrix& a);
  static LinMap right_mult(const CMatrix& b);
  // X -> A X B.
  static LinMap sandwich(const CMatrix& a, const CMatrix& b);

 private:
  Index rows_, cols_;
  CMatrix m_;
};

// Orthonormal basis of the intersection of the kernels of ops; an empty list
// yields the full ambient space.
MatSubspace common_nullspace(const std::vector<LinMap>& ops, Index rows,
                             Index cols, double tol = kRankTol);

// Kernel of the maps restricted to a subspace: {x in s : op(x) = 0 for all}.
MatSubspace common_nullspace_in(const std::vector<LinMap>& ops,
                                const MatSubspace& s, double tol = kRankTol);

// Smallest subspace containing gens (and the identity when unital) that is
// closed under multiplication; alternates span/multiply until the dimension
// stabilizes. Terminates since dimensions are bounded by the ambient size.
MatSubspace generated_algebra(const std::vector<CMatrix>& gens, bool unital,
                              double tol = kRankTol);

// Hermitian positive square root.
CMatrix sqrt_psd(const CMatrix& a);

// JSON dump format {"rows":r,"cols":c,"data":[[re,im],...]} row-major.
std::string matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const std::string& text);

}  // namespace nqfa

#endif  // NQFA_NUMERICS_HPP
