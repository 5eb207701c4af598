#include "opord/exponents.hpp"

#include <cmath>
#include <sstream>

namespace opord {

void FurutaParams::validate() const {
    std::ostringstream os;
    if (n < 1) {
        os << "n must be a positive integer, got " << n;
        throw InvalidParams(os.str());
    }
    if (t.size() != static_cast<std::size_t>(n)) {
        os << "expected " << n << " weights t, got " << t.size();
        throw InvalidParams(os.str());
    }
    if (p.size() != static_cast<std::size_t>(2 * n)) {
        os << "expected " << 2 * n << " exponents p, got " << p.size();
        throw InvalidParams(os.str());
    }
    for (int j = 0; j < n; ++j) {
        if (!(t[j] >= 0.0 && t[j] <= 1.0)) {
            os << "t_" << (j + 1) << " = " << t[j] << " outside [0,1]";
            throw InvalidParams(os.str());
        }
    }
    for (int j = 0; j < 2 * n; ++j) {
        if (!(p[j] >= 1.0)) {
            os << "p_" << (j + 1) << " = " << p[j] << " below 1";
            throw InvalidParams(os.str());
        }
    }
    if (!(r >= t[n - 1])) {
        os << "r = " << r << " below t_n = " << t[n - 1];
        throw InvalidParams(os.str());
    }
}

double psi_2n(int n, const std::vector<double>& p, const std::vector<double>& t) {
    FurutaParams check{n, t, p, t.empty() ? 1.0 : t.back()};
    check.validate();
    double x = p[0];
    x = (x - t[0]) * p[1] + t[0];
    for (int j = 2; j <= n; ++j) {
        x = x * p[2 * j - 2] - t[j - 1];
        x = x * p[2 * j - 1] + t[j - 1];
    }
    return x;
}

double psi_2n(const FurutaParams& params) {
    params.validate();
    return psi_2n(params.n, params.p, params.t);
}

double phi_2n(const std::vector<double>& p, double t) {
    if (p.empty() || p.size() % 2 != 0) {
        throw InvalidParams("phi expects a nonempty even-length exponent list, got " +
                            std::to_string(p.size()));
    }
    const int n = static_cast<int>(p.size() / 2);
    return psi_2n(n, p, std::vector<double>(n, t));
}

DomainCheck validate_classic_domain(ClassicTheorem theorem, const ClassicParams& params) {
    auto fail = [](const std::string& reason) { return DomainCheck{false, reason}; };
    switch (theorem) {
        case ClassicTheorem::furuta:
            if (!(params.p >= 0.0)) return fail("p >= 0");
            if (!(params.q >= 1.0)) return fail("q >= 1");
            if (!(params.r >= 0.0)) return fail("r >= 0");
            if (!((1.0 + params.r) * params.q >= params.p + params.r))
                return fail("(1+r)q >= p+r");
            return {};
        case ClassicTheorem::grand_furuta:
        case ClassicTheorem::extended_grand_furuta:
            if (!(params.p >= 1.0)) return fail("p >= 1");
            if (!(params.t >= 0.0 && params.t <= 1.0)) return fail("t in [0,1]");
            if (!(params.s >= 1.0)) return fail("s >= 1");
            if (!(params.r >= params.t)) return fail("r >= t");
            return {};
    }
    return fail("unknown family");
}

ExponentReport exponent_report(const FurutaParams& params) {
    params.validate();
    ExponentReport rep;
    rep.psi = psi_2n(params);
    const double tn = params.t.back();
    const double denom = rep.psi - tn + params.r;
    rep.outer_exponent = (params.r - tn) / denom;
    if (params.r > tn) {
        const double m_real = denom / (params.r - tn);
        const long long m = std::llround(m_real);
        if (std::abs(m_real - static_cast<double>(m)) <= 1e-9 * std::max(1.0, m_real) && m >= 2)
            rep.m = static_cast<int>(m);
    }
    return rep;
}

std::optional<int> compute_m(const FurutaParams& params) {
    params.validate();
    const double tn = params.t.back();
    if (params.r == tn) {
        throw DegenerateExponent("r equals t_n = " + std::to_string(tn) +
                                 "; the multiplicity (psi - t_n + r)/(r - t_n) is undefined");
    }
    return exponent_report(params).m;
}

FurutaParams witness_setting(int n, double p2) {
    if (n < 1) throw InvalidParams("witness setting needs n >= 1, got " + std::to_string(n));
    if (!(p2 >= 1.0)) throw InvalidParams("witness setting needs p_2 >= 1, got " + std::to_string(p2));
    FurutaParams params;
    params.n = n;
    params.t.assign(n, 1.0);
    params.p.assign(2 * n, 1.0);
    params.p[1] = p2;
    params.r = 2.0;
    return params;
}

}  // namespace opord
