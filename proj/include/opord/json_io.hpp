#pragma once

// JSON bindings for the core value types plus small file helpers.  The
// wire shapes are deliberately flat:
//   matrix  {"dim": d, "entries": [d*d doubles, row major]}
//   chain   {"matrices": [matrix, ...]}
//   params  {"n": n, "t": [...], "p": [...], "r": r}
//   classic {"p": .., "q": .., "r": .., "s": .., "t": ..}
// Chain inputs are validated as they load: off-symmetry beyond 1e-12
// (relative) or a non-positive operator is rejected, not repaired.

#include <cstdint>
#include <string>

#include "json.hpp"
#include "opord/chain.hpp"
#include "opord/exponents.hpp"

namespace opord {

using Json = nlohmann::json;

// Version stamp written into every report artifact.
inline constexpr int kSchemaVersion = 1;

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

Json chain_to_json(const OperatorChain& chain);
OperatorChain chain_from_json(const Json& j);

Json furuta_params_to_json(const FurutaParams& params);
FurutaParams furuta_params_from_json(const Json& j);

Json classic_params_to_json(const ClassicParams& params);
ClassicParams classic_params_from_json(const Json& j);

// Read and parse, or serialize and write, with the file path woven into any
// IoError so batch callers can say which input failed.
Json load_json_file(const std::string& path);
void save_json_file(const std::string& path, const Json& j);

// FNV-1a over a byte string; the report hash runs this over a canonical
// dump with the volatile fields removed.
std::uint64_t fnv1a_hash(const std::string& bytes);

}  // namespace opord
