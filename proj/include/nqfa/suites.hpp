#ifndef NQFA_SUITES_HPP
#define NQFA_SUITES_HPP

#include <string>

#include "json.hpp"
#include "nqfa/bimodules.hpp"
#include "nqfa/fubini.hpp"

// Verification suites shared by the CLI and the acceptance harness. Every
// suite returns a deterministic JSON report (insertion-ordered keys, fixed
// iteration orders, no timestamps) carrying a "pass" verdict and the maximum
// residual observed.

namespace nqfa {

using Json = nlohmann::ordered_json;

// Group spec: builtin name (trivial, cN, cyclic(n), s3, d4, q8) or a path to
// a JSON file carrying either a Cayley table or structure tensors.
FiniteQuantumGroup::Ptr build_quantum_group(const std::string& group_spec,
                                            const std::string& side);

// Action spec: "trivial:k" (on M_k), "trivial" (on C), "canonical", or a path
// to an action file {"group":..., "side":..., "target_dim":..., "alpha":...}.
Action build_action(const FiniteQuantumGroup::Ptr& q, const std::string& action_spec,
                    bool cstar = false);
Action action_from_json(const std::string& text);

Json suite_hopf(const FiniteQuantumGroup::Ptr& q, double tol);
Json suite_pentagon(const FiniteQuantumGroup::Ptr& q, double tol);
Json suite_peterweyl(const FiniteQuantumGroup::Ptr& q, double tol);
Json suite_fejer(const FiniteQuantumGroup::Ptr& q, std::uint64_t seed, double tol);
Json suite_bimodule(const FiniteQuantumGroup::Ptr& q, std::uint64_t seed, double tol);
Json suite_fubini(const FiniteQuantumGroup::Ptr& q, std::uint64_t seed, double tol);

// All of the above, keyed by suite name.
Json run_suites(const FiniteQuantumGroup::Ptr& q, const std::vector<std::string>& names,
                std::uint64_t seed, double tol);

}  // namespace nqfa

#endif  // NQFA_SUITES_HPP
