#pragma once

// Seeded generators for test chains and valid parameter draws.  Everything
// here is a pure function of its seed: the same call reproduces the same
// chain bit for bit, which is what lets batch reports pin regression hashes.

#include <cstdint>
#include <utility>

#include "opord/chain.hpp"
#include "opord/exponents.hpp"

namespace opord {

// Random ordered chain A_1 <= A_2 <= ... <= A_k.  A_1 is a random SPD matrix
// with condition number at most condition_cap; each later operator adds a
// random positive semidefinite bump, so every link margin is nonnegative by
// construction.  The bump budget is sized so the whole chain satisfies
//   max_eig(A_k) / min_eig(A_1) <= condition_cap.
// Needs k >= 2 (a chain has at least one link) and condition_cap >= 1; with
// condition_cap == 1 every operator collapses to the identity.
OperatorChain gen_ordered_chain(std::uint64_t seed, int dim, int k,
                                double condition_cap = 50.0);

// Ordered chain except at link broken_link (1-based, strictly below k),
// where the next operator loses a rank-one deficit along the top
// eigendirection of its predecessor:
//   min_eig(A_{j+1} - A_j) <= -violation_depth * norm(A_j).
// The realized deficit lands in [violation_depth, 1.5 * violation_depth]
// times norm(A_j), capped so A_{j+1} stays positive definite; that cap
// requires violation_depth <= 0.85.
OperatorChain gen_broken_chain(std::uint64_t seed, int dim, int k,
                               int broken_link, double violation_depth);

// Valid n-stage parameter draw with exponents tame enough that nested
// evaluations on a condition-50 chain stay far from the positivity floor:
// t_j in [0.05, 0.95], p_j >= 1 shrinking toward 1 as n grows, r above t_n,
// and a final rejection pass bounding the total exponent mass psi - t_n + r.
FurutaParams gen_params(std::uint64_t seed, int n);

// Same shape but all mixing weights equal, as the single-shared-weight
// family requires.
FurutaParams gen_equal_weight_params(std::uint64_t seed, int n);

// Valid classic-parameter draw for the requested two- or three-operator
// family, kept inside the same conditioning budget.
ClassicParams gen_classic_params(std::uint64_t seed, ClassicTheorem theorem);

// Parameter draw whose exponent ratio (psi - t_n + r) / (r - t_n) is exactly
// the integer m: r is set to t_n + psi / (m - 1).  m is drawn from [2, 8]
// unless a positive forced_m pins it.
std::pair<FurutaParams, int> gen_equality_instance(std::uint64_t seed, int n,
                                                   int forced_m = 0);

// Order-insensitive-free fingerprint of a chain: FNV-1a over the dimensions
// and the raw bit patterns of every entry in order.  Used to pin generator
// determinism and to tag trial records in batch reports.
std::uint64_t chain_fingerprint(const OperatorChain& chain);

}  // namespace opord
