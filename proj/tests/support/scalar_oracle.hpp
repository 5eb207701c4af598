#pragma once

// Independent scalar route to every inequality the library evaluates.
// Scalars commute, so each sandwich collapses to plain exponent arithmetic;
// the item indices are derived by iterating the index substitution that
// generates item j+1 from item j, not by the closed-form rule the library
// uses.  Agreement between the two routes is therefore meaningful.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "opord/chain.hpp"
#include "opord/exponents.hpp"
#include "opord/matrix.hpp"

namespace opord::oracle {

// Slot s of item 1 reads index s+1 (core s=0 reads 1), saturating at the
// chain top; on even-length chains the top occupies the last two slots.
// Each step to the next item shifts indices in [v, top-1] up by one,
// leaving the top fixed.
inline int up_item_index(int item, int s, int length) {
    int idx = (s == 0) ? 1 : std::min(s + 1, length);
    for (int v = 1; v < item; ++v)
        if (idx >= v && idx < length) ++idx;
    return idx;
}

// Scalar value of the nested side for an ascending item (item <= n), with
// the requested numerator in the outer exponent: numerator = r - t_n for
// the characterization items, 1 - t_n + r for the chain-top extension.
inline double up_item_rhs(const std::vector<double>& a, int item, const FurutaParams& fp,
                          double numerator) {
    const int length = static_cast<int>(a.size());
    const auto val = [&](int s) { return a[up_item_index(item, s, length) - 1]; };

    double x = std::pow(val(0), fp.p[0]);
    x = std::pow(val(1), -fp.t[0]) * x;
    x = std::pow(x, fp.p[1]);
    for (int w = 1; w < fp.n; ++w) {
        x = std::pow(val(2 * w), fp.t[w - 1]) * x;
        x = std::pow(x, fp.p[2 * w]);
        x = std::pow(val(2 * w + 1), -fp.t[w]) * x;
        x = std::pow(x, fp.p[2 * w + 1]);
    }
    x = std::pow(val(2 * fp.n), fp.r) * x;

    const double tn = fp.t[fp.n - 1];
    const double psi = psi_2n(fp);
    return std::pow(x, numerator / (psi - tn + fp.r));
}

inline std::vector<double> inverted_reversed(const std::vector<double>& a) {
    std::vector<double> b(a.rbegin(), a.rend());
    for (double& x : b) x = 1.0 / x;
    return b;
}

// Scalar sides of characterization item k on a chain of positive scalars.
// Descending items (k > n) are computed on the inverted reversed chain via
// the ascending item length-k, then inverted back.
inline std::pair<double, double> item_sides(const std::vector<double>& a, int k,
                                            const FurutaParams& fp) {
    const int length = static_cast<int>(a.size());
    const double tn = fp.t[fp.n - 1];
    if (k <= fp.n) {
        return {std::pow(a.back(), fp.r - tn), up_item_rhs(a, k, fp, fp.r - tn)};
    }
    const std::vector<double> b = inverted_reversed(a);
    const double rhs = 1.0 / up_item_rhs(b, length - k, fp, fp.r - tn);
    return {std::pow(a.front(), fp.r - tn), rhs};
}

// Scalar sides for the named two- and three-operator families.
inline std::pair<double, double> family_sides(Family family, const std::vector<double>& a,
                                              const ClassicParams& cp) {
    switch (family) {
        case Family::furuta_a:
            return {std::pow(a[1], (cp.p + cp.r) / cp.q),
                    std::pow(std::pow(a[1], cp.r) * std::pow(a[0], cp.p), 1.0 / cp.q)};
        case Family::furuta_b:
            return {std::pow(std::pow(a[0], cp.r) * std::pow(a[1], cp.p), 1.0 / cp.q),
                    std::pow(a[0], (cp.p + cp.r) / cp.q)};
        case Family::grand_furuta: {
            const double inner = std::pow(a[1], -cp.t) * std::pow(a[0], cp.p);
            const double outer = std::pow(a[1], cp.r) * std::pow(inner, cp.s);
            return {std::pow(a[1], 1.0 - cp.t + cp.r),
                    std::pow(outer, (1.0 - cp.t + cp.r) / ((cp.p - cp.t) * cp.s + cp.r))};
        }
        case Family::extended_grand_furuta: {
            const double inner = std::pow(a[1], -cp.t) * std::pow(a[0], cp.p);
            const double outer = std::pow(a[2], cp.r) * std::pow(inner, cp.s);
            return {std::pow(a[2], 1.0 - cp.t + cp.r),
                    std::pow(outer, (1.0 - cp.t + cp.r) / ((cp.p - cp.t) * cp.s + cp.r))};
        }
        default:
            throw InvalidParams("family has no classic scalar form");
    }
}

// The two staged families anchored at the chain top.
inline std::pair<double, double> extension_sides(Family family, const std::vector<double>& a,
                                                 const FurutaParams& fp) {
    const double tn = fp.t[fp.n - 1];
    if (family == Family::further_extension) {
        return {std::pow(a.back(), 1.0 - tn + fp.r), up_item_rhs(a, 1, fp, 1.0 - tn + fp.r)};
    }
    // Shared-weight two-operator form: the staged walk with every factor the
    // larger scalar.
    const double t = fp.t.front();
    double x = std::pow(a[0], fp.p[0]);
    x = std::pow(a[1], -t) * x;
    x = std::pow(x, fp.p[1]);
    for (int w = 1; w < fp.n; ++w) {
        x = std::pow(a[1], t) * x;
        x = std::pow(x, fp.p[2 * w]);
        x = std::pow(a[1], -t) * x;
        x = std::pow(x, fp.p[2 * w + 1]);
    }
    x = std::pow(a[1], fp.r) * x;
    const double phi = phi_2n(fp.p, t);
    return {std::pow(a[1], 1.0 - t + fp.r), std::pow(x, (1.0 - t + fp.r) / (phi - t + fp.r))};
}

// Verdict arithmetic identical in definition to the matrix route, expressed
// over per-entry scalar differences (diagonal matrices diagonalize freely).
inline ComparisonVerdict compare(const std::vector<double>& lhs,
                                 const std::vector<double>& rhs) {
    double norm_l = 0.0, norm_r = 0.0;
    for (double v : lhs) norm_l = std::max(norm_l, std::abs(v));
    for (double v : rhs) norm_r = std::max(norm_r, std::abs(v));
    const double tol = 1e-8 * std::max({norm_l, norm_r, 1.0});

    double lo = lhs[0] - rhs[0], hi = lhs[0] - rhs[0];
    for (std::size_t i = 1; i < lhs.size(); ++i) {
        const double d = lhs[i] - rhs[i];
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    ComparisonVerdict v;
    v.min_eig_diff = lo;
    v.max_eig_diff = hi;
    v.tolerance_used = tol;
    if (std::abs(lo) <= tol && std::abs(hi) <= tol) v.relation = Relation::Equal;
    else if (lo >= -tol) v.relation = Relation::GreaterEqual;
    else if (hi <= tol) v.relation = Relation::LessEqual;
    else v.relation = Relation::Incomparable;
    return v;
}

// Full oracle verdict for a diagonal chain (vector per matrix, one value
// per diagonal entry): evaluates every entry's scalar chain independently.
struct DiagonalChain {
    std::vector<std::vector<double>> entries;  // entries[i] = diagonal of A_{i+1}
    int dim() const { return static_cast<int>(entries.front().size()); }
    std::vector<double> scalar_chain(int e) const {
        std::vector<double> a;
        a.reserve(entries.size());
        for (const auto& m : entries) a.push_back(m[static_cast<std::size_t>(e)]);
        return a;
    }
};

inline ComparisonVerdict item_verdict(const DiagonalChain& chain, int k,
                                      const FurutaParams& fp) {
    std::vector<double> lhs, rhs;
    for (int e = 0; e < chain.dim(); ++e) {
        const auto [l, r] = item_sides(chain.scalar_chain(e), k, fp);
        lhs.push_back(l);
        rhs.push_back(r);
    }
    return compare(lhs, rhs);
}

inline ComparisonVerdict family_verdict(const DiagonalChain& chain, Family family,
                                        const ClassicParams& cp) {
    std::vector<double> lhs, rhs;
    for (int e = 0; e < chain.dim(); ++e) {
        const auto [l, r] = family_sides(family, chain.scalar_chain(e), cp);
        lhs.push_back(l);
        rhs.push_back(r);
    }
    return compare(lhs, rhs);
}

inline ComparisonVerdict extension_verdict(const DiagonalChain& chain, Family family,
                                           const FurutaParams& fp) {
    std::vector<double> lhs, rhs;
    for (int e = 0; e < chain.dim(); ++e) {
        const auto [l, r] = extension_sides(family, chain.scalar_chain(e), fp);
        lhs.push_back(l);
        rhs.push_back(r);
    }
    return compare(lhs, rhs);
}

}  // namespace opord::oracle
