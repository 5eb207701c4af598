#include "opord/chain.hpp"

#include <algorithm>
#include <sstream>

namespace opord {

// The index rules reproduce every fully written display, including the
// even-length variant where the top index is the chain length itself.
int item_slot_index(int k, int s, int n, int chain_length) {
    if (k <= n) return std::min(k + s, chain_length);
    return std::max(k + 1 - s, 1);
}

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw InvalidParams(msg);
}

const FurutaParams& need_furuta(const InequalitySpec& spec) {
    require(spec.furuta.has_value(),
            std::string(family_name(spec.family)) + " needs the staged parameter bundle");
    spec.furuta->validate();
    return *spec.furuta;
}

const ClassicParams& need_classic(const InequalitySpec& spec, ClassicTheorem theorem) {
    require(spec.classic.has_value(),
            std::string(family_name(spec.family)) + " needs the classic parameter bundle");
    const DomainCheck check = validate_classic_domain(theorem, *spec.classic);
    require(check.valid,
            std::string(family_name(spec.family)) + " parameters violate " + check.reason);
    return *spec.classic;
}

// Layer structure shared by the staged families: slot s odd carries
// -t_{(s+1)/2}/2, slot s even carries +t_{s/2}/2, slot 2n carries r/2; the
// core power of stage s is p_s.
std::vector<ChainLayer> staged_layers(int k, const FurutaParams& fp, int len) {
    const int n = fp.n;
    std::vector<ChainLayer> layers;
    layers.reserve(2 * n);
    for (int s = 1; s <= 2 * n; ++s) {
        ChainLayer layer;
        layer.factor_index = item_slot_index(k, s, n, len);
        if (s == 2 * n) {
            layer.factor_exponent = fp.r / 2.0;
        } else if (s % 2 == 1) {
            layer.factor_exponent = -fp.t[(s + 1) / 2 - 1] / 2.0;
        } else {
            layer.factor_exponent = fp.t[s / 2 - 1] / 2.0;
        }
        layer.core_exponent = fp.p[s - 1];
        layers.push_back(layer);
    }
    return layers;
}

ChainExpr plain_power(int index, double exponent) {
    ChainExpr e;
    e.core_index = index;
    e.outer_exponent = exponent;
    return e;
}

// The characterization item k and the chain-top extension share one shape;
// they differ only in the numerator of the left side and outer exponent
// (r - t_n for the items, 1 - t_n + r for the extension).
InequalityForm staged_form(int k, const FurutaParams& fp, int len, double numerator) {
    const int n = fp.n;
    const double tn = fp.t[n - 1];
    const double psi = psi_2n(fp);

    InequalityForm form;
    form.direction = item_direction(k, n);
    const int anchor = (k <= n) ? len : 1;
    form.lhs = plain_power(anchor, numerator);

    form.rhs.core_index = item_slot_index(k, 0, n, len);
    form.rhs.layers = staged_layers(k, fp, len);
    form.rhs.outer_exponent = numerator / (psi - tn + fp.r);
    return form;
}

}  // namespace

OperatorChain::OperatorChain(std::vector<SpdMatrix> matrices) : matrices_(std::move(matrices)) {
    require(matrices_.size() >= 2, "an operator chain needs at least 2 matrices, got " +
                                       std::to_string(matrices_.size()));
    const int d = matrices_.front().dim();
    for (const SpdMatrix& m : matrices_) {
        if (m.dim() != d) {
            std::ostringstream os;
            os << "operator chain mixes dimensions " << d << " and " << m.dim();
            throw DimensionMismatch(os.str());
        }
    }
}

const SpdMatrix& OperatorChain::at(int index) const {
    if (index < 1 || index > length()) {
        throw InvalidParams("chain index " + std::to_string(index) + " outside 1.." +
                            std::to_string(length()));
    }
    return matrices_[static_cast<std::size_t>(index - 1)];
}

const char* family_name(Family family) {
    switch (family) {
        case Family::furuta_a: return "furuta-a";
        case Family::furuta_b: return "furuta-b";
        case Family::grand_furuta: return "grand-furuta";
        case Family::extended_grand_furuta: return "extended-grand-furuta";
        case Family::furuta_extension: return "furuta-extension";
        case Family::further_extension: return "further-extension";
        case Family::odd_chain_item: return "odd-chain-item";
        case Family::even_chain_item: return "even-chain-item";
    }
    return "unknown";
}

std::optional<Family> family_from_name(std::string_view name) {
    for (const Family f :
         {Family::furuta_a, Family::furuta_b, Family::grand_furuta,
          Family::extended_grand_furuta, Family::furuta_extension, Family::further_extension,
          Family::odd_chain_item, Family::even_chain_item}) {
        if (name == family_name(f)) return f;
    }
    return std::nullopt;
}

int item_count(int chain_length) {
    require(chain_length >= 2, "item count needs a chain of length >= 2");
    // 2n items for odd length 2n+1, 2n-1 items for even length 2n.
    return chain_length - 1;
}

int half_stages(int chain_length) {
    require(chain_length >= 2, "stage count needs a chain of length >= 2");
    return chain_length / 2;
}

Direction item_direction(int k, int n) {
    return (k <= n) ? Direction::lhs_geq_rhs : Direction::lhs_leq_rhs;
}

int expected_chain_length(const InequalitySpec& spec) {
    switch (spec.family) {
        case Family::furuta_a:
        case Family::furuta_b:
        case Family::grand_furuta:
        case Family::furuta_extension:
            return 2;
        case Family::extended_grand_furuta:
            return 3;
        case Family::further_extension:
        case Family::odd_chain_item:
            return 2 * need_furuta(spec).n + 1;
        case Family::even_chain_item:
            return 2 * need_furuta(spec).n;
    }
    throw InvalidParams("unknown family");
}

InequalityForm build_inequality(const InequalitySpec& spec, int chain_length) {
    const int expected = expected_chain_length(spec);
    require(chain_length == expected,
            std::string(family_name(spec.family)) + " expects a chain of length " +
                std::to_string(expected) + ", got " + std::to_string(chain_length));

    InequalityForm form;
    switch (spec.family) {
        case Family::furuta_a: {
            const ClassicParams& cp = need_classic(spec, ClassicTheorem::furuta);
            // (A^{r/2} A^p A^{r/2})^{1/q} vs (A^{r/2} B^p A^{r/2})^{1/q}
            form.lhs.core_index = 2;
            form.lhs.layers = {{2, cp.r / 2.0, cp.p}};
            form.lhs.outer_exponent = 1.0 / cp.q;
            form.rhs.core_index = 1;
            form.rhs.layers = {{2, cp.r / 2.0, cp.p}};
            form.rhs.outer_exponent = 1.0 / cp.q;
            return form;
        }
        case Family::furuta_b: {
            const ClassicParams& cp = need_classic(spec, ClassicTheorem::furuta);
            // (B^{r/2} A^p B^{r/2})^{1/q} vs (B^{r/2} B^p B^{r/2})^{1/q}
            form.lhs.core_index = 2;
            form.lhs.layers = {{1, cp.r / 2.0, cp.p}};
            form.lhs.outer_exponent = 1.0 / cp.q;
            form.rhs.core_index = 1;
            form.rhs.layers = {{1, cp.r / 2.0, cp.p}};
            form.rhs.outer_exponent = 1.0 / cp.q;
            return form;
        }
        case Family::grand_furuta:
        case Family::extended_grand_furuta: {
            const ClassicParams& cp = need_classic(spec, ClassicTheorem::grand_furuta);
            // top^{1-t+r} vs {top^{r/2} (mid^{-t/2} bottom^p mid^{-t/2})^s top^{r/2}}^e
            // with two operators the top doubles as the inner factor
            const int top = chain_length;
            const int mid = 2;
            form.lhs = plain_power(top, 1.0 - cp.t + cp.r);
            form.rhs.core_index = 1;
            form.rhs.layers = {{mid, -cp.t / 2.0, cp.p}, {top, cp.r / 2.0, cp.s}};
            form.rhs.outer_exponent =
                (1.0 - cp.t + cp.r) / ((cp.p - cp.t) * cp.s + cp.r);
            return form;
        }
        case Family::furuta_extension: {
            const FurutaParams& fp = need_furuta(spec);
            for (double tj : fp.t) {
                require(tj == fp.t.front(),
                        "this family uses one shared weight; weights differ");
            }
            const double t = fp.t.front();
            const double phi = phi_2n(fp.p, t);
            form.lhs = plain_power(2, 1.0 - t + fp.r);
            form.rhs.core_index = 1;
            // All factors are the larger operator: the staged layout with
            // every slot index saturated at 2.
            for (int s = 1; s <= 2 * fp.n; ++s) {
                ChainLayer layer;
                layer.factor_index = 2;
                if (s == 2 * fp.n) layer.factor_exponent = fp.r / 2.0;
                else if (s % 2 == 1) layer.factor_exponent = -t / 2.0;
                else layer.factor_exponent = t / 2.0;
                layer.core_exponent = fp.p[s - 1];
                form.rhs.layers.push_back(layer);
            }
            form.rhs.outer_exponent = (1.0 - t + fp.r) / (phi - t + fp.r);
            return form;
        }
        case Family::further_extension: {
            const FurutaParams& fp = need_furuta(spec);
            return staged_form(1, fp, chain_length, 1.0 - fp.t[fp.n - 1] + fp.r);
        }
        case Family::odd_chain_item:
        case Family::even_chain_item: {
            const FurutaParams& fp = need_furuta(spec);
            const int items = item_count(chain_length);
            require(spec.k >= 1 && spec.k <= items,
                    "item index " + std::to_string(spec.k) + " outside 1.." +
                        std::to_string(items));
            return staged_form(spec.k, fp, chain_length, fp.r - fp.t[fp.n - 1]);
        }
    }
    throw InvalidParams("unknown family");
}

ChainExpr build_chain(const InequalitySpec& spec, int chain_length) {
    const InequalityForm form = build_inequality(spec, chain_length);
    return (spec.side == Side::lhs) ? form.lhs : form.rhs;
}

SpdMatrix evaluate_chain(const ChainExpr& expr, const OperatorChain& chain) {
    SpdMatrix acc = chain.at(expr.core_index);
    for (const ChainLayer& layer : expr.layers) {
        const SpdMatrix core = fractional_power(acc, layer.core_exponent);
        const SpdMatrix factor =
            fractional_power(chain.at(layer.factor_index), layer.factor_exponent);
        acc = congruence(factor, core);
    }
    return fractional_power(acc, expr.outer_exponent);
}

InequalityResult check_inequality(const InequalitySpec& spec, const OperatorChain& chain,
                                  double tol) {
    const InequalityForm form = build_inequality(spec, chain.length());
    InequalityResult res{evaluate_chain(form.lhs, chain), evaluate_chain(form.rhs, chain),
                         ComparisonVerdict{}, form.direction, false};
    res.verdict = loewner_compare(res.lhs.sym(), res.rhs.sym(), tol);
    res.holds = (form.direction == Direction::lhs_geq_rhs) ? res.verdict.holds_geq()
                                                           : res.verdict.holds_leq();
    return res;
}

ChainExpr peel_outer_layer(const ChainExpr& expr) {
    require(!expr.layers.empty(), "cannot peel a bare power expression");
    ChainExpr inner = expr;
    inner.outer_exponent = inner.layers.back().core_exponent;
    inner.layers.pop_back();
    return inner;
}

ChainExpr with_outer_exponent(ChainExpr expr, double outer) {
    expr.outer_exponent = outer;
    return expr;
}

}  // namespace opord
