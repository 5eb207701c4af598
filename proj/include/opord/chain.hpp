#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "opord/exponents.hpp"
#include "opord/matrix.hpp"

namespace opord {

// Finite tuple A_1..A_k of strictly positive matrices of one common
// dimension.  Indexing is 1-based throughout to match the algebra.
class OperatorChain {
  public:
    explicit OperatorChain(std::vector<SpdMatrix> matrices);

    int length() const { return static_cast<int>(matrices_.size()); }
    int dim() const { return matrices_.front().dim(); }
    const SpdMatrix& at(int index) const;
    const std::vector<SpdMatrix>& matrices() const { return matrices_; }

  private:
    std::vector<SpdMatrix> matrices_;
};

// The inequality families this library evaluates.
//   furuta_a / furuta_b          two operators, sandwich by the larger / smaller
//   grand_furuta                 two operators, (t, p, s, r) interpolation
//   extended_grand_furuta        three operators
//   furuta_extension             two operators, 2n nested stages, one shared t
//   further_extension            2n+1 operators, weights t_1..t_n
//   odd_chain_item               item k of the odd-length characterization
//   even_chain_item              item k of the even-length characterization
enum class Family {
    furuta_a,
    furuta_b,
    grand_furuta,
    extended_grand_furuta,
    furuta_extension,
    further_extension,
    odd_chain_item,
    even_chain_item,
};

const char* family_name(Family family);
std::optional<Family> family_from_name(std::string_view name);

enum class Side { lhs, rhs };
enum class Direction { lhs_geq_rhs, lhs_leq_rhs };

// One sandwich stage: the accumulated core is raised to core_exponent, then
// multiplied on both sides by the same factor_index matrix raised to
// factor_exponent.  Equal left and right factors keep every stage
// self-adjoint by construction.
struct ChainLayer {
    int factor_index = 1;
    double factor_exponent = 0.0;
    double core_exponent = 1.0;
};

// Declarative nested-sandwich expression, innermost stage first:
//   (((A_core ^ ce_1 sandwiched) ^ ce_2 sandwiched) ... ) ^ outer_exponent
struct ChainExpr {
    int core_index = 1;
    std::vector<ChainLayer> layers;
    double outer_exponent = 1.0;
};

// Which inequality to build: the family, the item index k (used only by the
// two *_chain_item families), the parameter bundle the family reads, and the
// side of interest when a single expression is requested.
struct InequalitySpec {
    Family family = Family::furuta_a;
    int k = 0;
    std::optional<FurutaParams> furuta;
    std::optional<ClassicParams> classic;
    Side side = Side::rhs;
};

struct InequalityForm {
    ChainExpr lhs;
    ChainExpr rhs;
    Direction direction = Direction::lhs_geq_rhs;
};

// Chain length each family expects; item families derive it from n.
int expected_chain_length(const InequalitySpec& spec);

// Number of characterization items a chain of this length carries (2n for
// odd length 2n+1, 2n-1 for even length 2n) and the stage count n.
int item_count(int chain_length);
int half_stages(int chain_length);

// Items 1..n assert "top >= nested"; items n+1 and beyond assert the
// mirrored "bottom <= nested".
Direction item_direction(int k, int n);

// Matrix index occupying slot s of item k: slot 0 is the core, slots
// 1..2n-1 the alternating weight factors, slot 2n the outer factor.
// Ascending items walk upward saturating at the chain top, descending
// items walk downward saturating at 1.
int item_slot_index(int k, int s, int n, int chain_length);

// Build both sides of the requested inequality.  Validates parameter
// domains and the family/k/chain_length consistency (InvalidParams).
InequalityForm build_inequality(const InequalitySpec& spec, int chain_length);

// One side only, selected by spec.side.
ChainExpr build_chain(const InequalitySpec& spec, int chain_length);

// Evaluate a nested expression on a chain, innermost out, re-symmetrizing
// after every stage.  Strictly positive inputs give a strictly positive
// result; positivity loss raises StrictPositivityViolation.
SpdMatrix evaluate_chain(const ChainExpr& expr, const OperatorChain& chain);

struct InequalityResult {
    SpdMatrix lhs = SpdMatrix::identity(1);
    SpdMatrix rhs = SpdMatrix::identity(1);
    ComparisonVerdict verdict;
    Direction direction = Direction::lhs_geq_rhs;
    bool holds = false;
};

// Build, evaluate, and compare with the family's stated direction.
InequalityResult check_inequality(const InequalitySpec& spec, const OperatorChain& chain,
                                  double tol = -1.0);

// Drop the outermost stage; its core power becomes the outer exponent.
// Turns a full sandwich into its inner bracket.
ChainExpr peel_outer_layer(const ChainExpr& expr);

ChainExpr with_outer_exponent(ChainExpr expr, double outer);

}  // namespace opord
