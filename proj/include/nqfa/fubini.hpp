#ifndef NQFA_FUBINI_HPP
#define NQFA_FUBINI_HPP

#include "nqfa/dynamics.hpp"

// Invariant subspaces, Fubini crossed products and the slice-map property,
// for both the von Neumann and C* kinds (one engine at finite dimension).

namespace nqfa {

// alpha(X) inside l^inf(G) (x) X, as a subspace containment test.
bool check_invariant(const Action& a, const MatSubspace& x, double tol = kTolMember);

// {T in the crossed product : E(T(v (x) 1)) in alpha(X) for all v in Pol}.
MatSubspace fubini_crossed_product(const CrossedProduct& cp, const MatSubspace& x);

// span{alpha(x)(x_hat (x) 1) : x in X}.
MatSubspace span_crossed(const CrossedProduct& cp, const MatSubspace& x);

struct SliceMapReport {
  bool invariant = false;
  Index span_dim = 0, fubini_dim = 0;
  bool contained = false;      // span inside fubini, always
  bool equal = false;          // the slice map property
  bool reformulation_ok = false;  // fubini = {T : T.fhat in span for all fhat}
};
SliceMapReport slice_map_check(const CrossedProduct& cp, const MatSubspace& x);

// Orbit closure of a seeded random element: alternates alpha-slices over an
// L^1 basis with spans until the dimension stabilizes. Produces genuinely
// invariant subspaces without any classification theory.
MatSubspace orbit_closure_subspace(const Action& a, std::uint64_t seed);

}  // namespace nqfa

#endif  // NQFA_FUBINI_HPP
