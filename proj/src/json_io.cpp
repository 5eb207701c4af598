#include "opord/json_io.hpp"

#include <fstream>
#include <sstream>

#include "opord/errors.hpp"

namespace opord {
namespace {

const Json& field(const Json& j, const char* key, const char* context) {
    const auto it = j.find(key);
    if (it == j.end())
        throw IoError(std::string(context) + " JSON is missing \"" + key + "\"");
    return *it;
}

std::vector<double> number_list(const Json& j, const char* key,
                                const char* context) {
    const Json& raw = field(j, key, context);
    if (!raw.is_array())
        throw IoError(std::string(context) + " field \"" + key +
                      "\" must be an array of numbers");
    std::vector<double> out;
    out.reserve(raw.size());
    for (const Json& v : raw) {
        if (!v.is_number())
            throw IoError(std::string(context) + " field \"" + key +
                          "\" must be an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

double number(const Json& j, const char* key, const char* context,
              double fallback, bool required) {
    const auto it = j.find(key);
    if (it == j.end()) {
        if (required)
            throw IoError(std::string(context) + " JSON is missing \"" + key + "\"");
        return fallback;
    }
    if (!it->is_number())
        throw IoError(std::string(context) + " field \"" + key +
                      "\" must be a number");
    return it->get<double>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) entries.push_back(m.at(i, j));
    return Json{{"dim", m.dim()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    const Json& dim_field = field(j, "dim", "matrix");
    if (!dim_field.is_number_integer() || dim_field.get<int>() < 1)
        throw IoError("matrix \"dim\" must be a positive integer");
    const int dim = dim_field.get<int>();
    const std::vector<double> entries = number_list(j, "entries", "matrix");
    if (static_cast<int>(entries.size()) != dim * dim) {
        std::ostringstream msg;
        msg << "matrix of dim " << dim << " needs " << dim * dim
            << " entries, got " << entries.size();
        throw IoError(msg.str());
    }
    Matrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            m.at(i, k) = entries[static_cast<std::size_t>(i * dim + k)];
    return m;
}

Json chain_to_json(const OperatorChain& chain) {
    Json list = Json::array();
    for (const SpdMatrix& op : chain.matrices()) list.push_back(matrix_to_json(op.mat()));
    return Json{{"matrices", std::move(list)}};
}

OperatorChain chain_from_json(const Json& j) {
    const Json& list = field(j, "matrices", "chain");
    if (!list.is_array()) throw IoError("chain \"matrices\" must be an array");
    std::vector<SpdMatrix> ops;
    ops.reserve(list.size());
    for (const Json& entry : list)
        ops.emplace_back(SymMatrix(matrix_from_json(entry)));
    return OperatorChain(std::move(ops));
}

Json furuta_params_to_json(const FurutaParams& params) {
    return Json{{"n", params.n}, {"t", params.t}, {"p", params.p}, {"r", params.r}};
}

FurutaParams furuta_params_from_json(const Json& j) {
    FurutaParams fp;
    const Json& n_field = field(j, "n", "params");
    if (!n_field.is_number_integer())
        throw IoError("params \"n\" must be an integer");
    fp.n = n_field.get<int>();
    fp.t = number_list(j, "t", "params");
    fp.p = number_list(j, "p", "params");
    fp.r = number(j, "r", "params", 0.0, true);
    fp.validate();
    return fp;
}

Json classic_params_to_json(const ClassicParams& params) {
    return Json{{"p", params.p},
                {"q", params.q},
                {"r", params.r},
                {"s", params.s},
                {"t", params.t}};
}

ClassicParams classic_params_from_json(const Json& j) {
    ClassicParams cp;
    cp.p = number(j, "p", "classic params", cp.p, true);
    cp.q = number(j, "q", "classic params", cp.q, false);
    cp.r = number(j, "r", "classic params", cp.r, true);
    cp.s = number(j, "s", "classic params", cp.s, false);
    cp.t = number(j, "t", "classic params", cp.t, false);
    return cp;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path + " for reading");
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& err) {
        throw IoError("cannot parse " + path + ": " + err.what());
    }
    return j;
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << '\n';
    if (!out) throw IoError("write to " + path + " failed");
}

std::uint64_t fnv1a_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace opord
