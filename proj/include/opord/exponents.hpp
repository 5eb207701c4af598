#pragma once

#include <optional>
#include <string>
#include <vector>

#include "opord/errors.hpp"

namespace opord {

// Parameter bundle for the n-fold iterated inequalities: n sandwich stages
// with mixing weights t_1..t_n in [0,1], stage exponents p_1..p_{2n} each
// at least 1, and an outer weight r >= t_n.
struct FurutaParams {
    int n = 1;
    std::vector<double> t;
    std::vector<double> p;
    double r = 1.0;

    // Throws InvalidParams naming the first violated constraint.
    void validate() const;
};

// Parameters of the classic two- and three-operator inequalities.  Each
// family reads the subset it needs.
struct ClassicParams {
    double p = 1.0;
    double q = 1.0;
    double r = 0.0;
    double s = 1.0;
    double t = 0.0;
};

enum class ClassicTheorem { furuta, grand_furuta, extended_grand_furuta };

struct DomainCheck {
    bool valid = true;
    std::string reason;  // first failing constraint, empty when valid
};

// Constraint set of the classic families:
//   furuta:               p >= 0, q >= 1, r >= 0, (1+r)q >= p+r
//   grand / extended:     p >= 1, t in [0,1], s >= 1, r >= t
DomainCheck validate_classic_domain(ClassicTheorem theorem, const ClassicParams& params);

// The alternating exponent recursion
//   x = p_1;  x = (x - t_1) p_2 + t_1;
//   then for j = 2..n:  x = x p_{2j-1} - t_j;  x = x p_{2j} + t_j.
// Always >= 1 on the valid domain.
double psi_2n(const FurutaParams& params);
double psi_2n(int n, const std::vector<double>& p, const std::vector<double>& t);

// Same recursion with every weight equal to t.
double phi_2n(const std::vector<double>& p, double t);

// Derived exponent data for a parameter bundle: the recursion value, the
// outer exponent (r - t_n) / (psi - t_n + r), and the integer multiplicity
// m with (r - t_n) m = psi - t_n + r when one exists.
struct ExponentReport {
    double psi = 1.0;
    double outer_exponent = 0.0;
    std::optional<int> m;
};

ExponentReport exponent_report(const FurutaParams& params);

// The integer m >= 2 with (r - t_n) m = psi - t_n + r, accepted within 1e-9
// relative tolerance; absent when no such integer exists.  Throws
// DegenerateExponent when r == t_n (the ratio is undefined there).
std::optional<int> compute_m(const FurutaParams& params);

// Parameter bundle used by the reverse-direction witness search: every
// exponent 1 except the free slot p_2, every weight 1, r = 2.  Under it
// psi = 1 for every p_2, so the outer exponent is (2-1)/(1-1+2) = 1/2 and
// the compared sides keep a fixed shape while p_2 grows.
FurutaParams witness_setting(int n, double p2);

}  // namespace opord
