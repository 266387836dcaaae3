#include "springer/serialize.hpp"

#include <json.hpp>

#include "springer/errors.hpp"

namespace springer {

namespace {

using nlohmann::json;

json parse(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw ParseError("document is not valid JSON", 0);
    }
    return doc;
}

} // namespace

std::string flag_to_json(const Flag& flag) {
    json doc;
    doc["type"] = "flag";
    doc["N"] = flag.space.N();
    doc["m"] = flag.length();
    doc["spaces"] = json::array();
    for (const Subspace& s : flag.levels) {
        json entry;
        entry["dim"] = s.dim();
        json basis = json::array();
        for (int r = 0; r < s.ambient_dim(); ++r) {
            for (int c = 0; c < s.dim(); ++c) {
                basis.push_back(s.basis()(r, c).real());
                basis.push_back(s.basis()(r, c).imag());
            }
        }
        entry["basis"] = std::move(basis);
        doc["spaces"].push_back(std::move(entry));
    }
    return doc.dump(2);
}

Flag flag_from_json(const std::string& text, const Tolerances& tol) {
    (void)tol;
    const json doc = parse(text);
    if (!doc.is_object() || doc.value("type", "") != "flag") {
        throw ParseError("expected a flag document", 0);
    }
    if (!doc.contains("N") || !doc.contains("m") || !doc.contains("spaces")) {
        throw ParseError("flag document is missing N, m or spaces", 0);
    }
    const int N = doc["N"].get<int>();
    const int m = doc["m"].get<int>();
    if (N < 1 || m < 0 || !doc["spaces"].is_array() ||
        static_cast<int>(doc["spaces"].size()) != m) {
        throw ParseError("flag document has inconsistent sizes", 0);
    }
    Flag flag{NilpotentSpace(N), {}};
    const int ambient = 2 * N;
    for (int j = 1; j <= m; ++j) {
        const json& entry = doc["spaces"][j - 1];
        const int dim = entry.value("dim", -1);
        if (dim < 0 || dim > ambient) {
            throw ParseError("flag level has an invalid dimension", 0);
        }
        const json& basis = entry["basis"];
        if (!basis.is_array() ||
            static_cast<int>(basis.size()) != 2 * ambient * dim) {
            throw ParseError("flag level basis has the wrong length", 0);
        }
        Eigen::MatrixXcd q(ambient, dim);
        std::size_t k = 0;
        for (int r = 0; r < ambient; ++r) {
            for (int c = 0; c < dim; ++c) {
                const double re = basis[k++].get<double>();
                const double im = basis[k++].get<double>();
                q(r, c) = std::complex<double>(re, im);
            }
        }
        flag.levels.push_back(Subspace::from_orthonormal(std::move(q)));
    }
    return flag;
}

std::string tuple_to_json(const LineTuple& t) {
    json doc;
    doc["type"] = "lines";
    doc["m"] = static_cast<int>(t.size());
    doc["lines"] = json::array();
    for (const Line& l : t) {
        doc["lines"].push_back(json::array({l.rep()(0).real(), l.rep()(0).imag(),
                                            l.rep()(1).real(), l.rep()(1).imag()}));
    }
    return doc.dump(2);
}

LineTuple tuple_from_json(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object() || doc.value("type", "") != "lines") {
        throw ParseError("expected a lines document", 0);
    }
    if (!doc.contains("lines") || !doc["lines"].is_array()) {
        throw ParseError("lines document is missing the lines array", 0);
    }
    if (doc.contains("m") &&
        doc["m"].get<int>() != static_cast<int>(doc["lines"].size())) {
        throw ParseError("lines document length disagrees with m", 0);
    }
    LineTuple out;
    for (const json& entry : doc["lines"]) {
        if (!entry.is_array() || entry.size() != 4) {
            throw ParseError("each line must be a 4-array [re a, im a, re b, im b]", 0);
        }
        Eigen::Vector2cd rep;
        rep << std::complex<double>(entry[0].get<double>(), entry[1].get<double>()),
            std::complex<double>(entry[2].get<double>(), entry[3].get<double>());
        out.push_back(Line(rep));
    }
    return out;
}

std::string json_document_type(const std::string& text) {
    const json doc = parse(text);
    if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
        throw ParseError("document has no type field", 0);
    }
    return doc["type"].get<std::string>();
}

} // namespace springer
