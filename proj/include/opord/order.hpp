#pragma once

#include <optional>
#include <vector>

#include "opord/chain.hpp"
#include "opord/exponents.hpp"
#include "opord/matrix.hpp"

namespace opord {

// Pairwise comparison of every adjacent link A_{i+1} against A_i.
struct OrderReport {
    bool is_ordered = false;
    std::vector<ComparisonVerdict> links;  // links[i-1] compares A_{i+1} vs A_i

    // 1-based indices of the failing links.
    std::vector<int> broken() const;
};

OrderReport check_order(const OperatorChain& chain, double tol = -1.0);

// Every characterization item evaluated on an ordered chain; the item
// family follows the chain parity.  Unordered input raises
// PreorderViolation since the forward direction is only claimed there.
struct ForwardReport {
    Family family = Family::odd_chain_item;
    std::vector<InequalityResult> items;  // items[k-1] is item k
    bool all_hold = false;
};

ForwardReport verify_forward(const OperatorChain& chain, const FurutaParams& params,
                             double tol = -1.0);

// The five diagonal 2x2 matrices of the counterexample family:
//   diag(1, 1/u), I, diag(1, u), diag(u, 1), diag(u + eps, 1)
// Requires u > 1, eps > 0.
OperatorChain counterexample_chain(double u, double eps);

// The counterexample claim: the first and last of the four items hold even
// though the chain is not ordered, so that subset cannot characterize the
// order.
struct CounterexampleReport {
    double u = 0.0;
    double eps = 0.0;
    OrderReport order;
    InequalityResult first_item;  // item 1
    InequalityResult last_item;   // item 2n
    bool first_holds = false;
    bool last_holds = false;
    bool order_fails = false;
    bool expectations_met = false;
};

CounterexampleReport verify_counterexample(double u, double eps, const FurutaParams& params,
                                           double tol = -1.0);

// The pinned two-stage parameter set the counterexample is usually run
// with: t = (1, 1), p = (2, 2, 2, 2), r = 2.
FurutaParams counterexample_default_params();

// The spectral bound that a characterization item imposes on its link
// bracket.  For ascending items the bracket is A_{k+1}^{-1/2} A_k
// A_{k+1}^{-1/2} and the item forces lambda_max <= factor^{1/p2}; for
// descending items the bracket is A_k^{-1/2} A_{k+1} A_k^{-1/2} and the
// item forces lambda_min >= factor^{1/p2}.  The factor multiplies one
// extreme-ratio term for the anchor with the alternating per-operator
// spectral bounds picked up while peeling the nest.
struct LinkBound {
    int item = 1;
    int link = 1;
    double factor = 1.0;
    double threshold = 1.0;       // factor^{1/p2}
    SpdMatrix bracket = SpdMatrix::identity(1);
    double bracket_extreme = 1.0; // lambda_max (ascending) / lambda_min (descending)
    bool consistent = false;      // extreme inside the implied bound
};

// Requires an ordered chain (PreorderViolation otherwise), where the bound
// is a theorem; p2 >= 1.
LinkBound link_spectral_bound(const OperatorChain& chain, int item, double p2);

// Scaled evaluation of the nested side of ascending item `item` at the
// special witness setting (every stage power 1 except p_2, all weights 1,
// r = 2).  Factors the explosive p_2 power into a scalar so arbitrarily
// large p_2 stays representable; the scalar is clamped at 1e150, which can
// only understate the result, never inflate it.  Descending items are
// evaluated by calling this on the inverted reversed chain.
SymMatrix witness_rhs(const OperatorChain& chain, int item, int n, double p2);

struct WitnessBound {
    int item = 1;
    int link = 1;
    double factor = 1.0;
    double threshold = 1.0;
    double bracket_extreme = 1.0;
};

struct WitnessReport {
    bool found = false;
    std::optional<InequalitySpec> spec;  // family, k, and witness parameters
    double p2_used = 0.0;
    double residual = 0.0;  // most negative eigenvalue of the violated comparison
    std::vector<WitnessBound> bounds;  // per item, at the last p2 scanned
};

// Geometric schedule 1, 2, 4, ..., 16384.
std::vector<double> default_schedule();

// Sweeps p2 over the schedule, evaluating every characterization item at
// the witness setting, and returns the first violation beyond ten times
// the comparison tolerance.  On an ordered chain no witness exists and the
// report carries the per-item bound diagnostics instead.
WitnessReport reverse_witness(const OperatorChain& chain, int n,
                              const std::vector<double>& schedule, double tol = -1.0);

}  // namespace opord
