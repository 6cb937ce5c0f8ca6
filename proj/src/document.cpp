#include "qpmap/document.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace qpmap {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& why) {
    throw Error(ErrorCode::ParseError, path + ": " + why);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
    }
}

Rational rational_at(const json& v, const std::string& path) {
    if (v.is_number_integer()) {
        return Rational(mpz_class(v.dump(), 10));
    }
    if (!v.is_string()) {
        fail(path, "expected a rational string");
    }
    try {
        return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
        fail(path, e.what());
    }
}

std::size_t size_at(const json& doc, const char* key) {
    if (!doc.contains(key)) {
        fail(key, "missing");
    }
    const json& v = doc.at(key);
    if (!v.is_number_integer() || v.get<long long>() < 1) {
        fail(key, "expected a positive integer");
    }
    return v.get<std::size_t>();
}

const json& array_at(const json& parent, const std::string& key, std::size_t expected, const std::string& path) {
    const json& v = key.empty() ? parent : parent.at(key);
    if (!v.is_array()) {
        fail(path, "expected an array");
    }
    if (v.size() != expected) {
        fail(path, "expected " + std::to_string(expected) + " entries, found " + std::to_string(v.size()));
    }
    return v;
}

RationalMatrix matrix_at(const json& doc, const char* key, std::size_t rows, std::size_t cols) {
    if (!doc.contains(key)) {
        fail(key, "missing");
    }
    const json& outer = array_at(doc, key, rows, key);
    RationalMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_path = std::string(key) + "[" + std::to_string(r) + "]";
        const json& row = array_at(outer[r], "", cols, row_path);
        for (std::size_t c = 0; c < cols; ++c) {
            out(r, c) = rational_at(row[c], row_path + "[" + std::to_string(c) + "]");
        }
    }
    return out;
}

ordered_json matrix_json(const RationalMatrix& m) {
    ordered_json out = ordered_json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(to_string(m(r, c)));
        }
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace

QPMap parse_map_document(std::string_view json_text) {
    const json doc = parse_json(json_text);
    if (!doc.is_object()) {
        throw Error(ErrorCode::ParseError, "map document must be a JSON object");
    }
    const std::size_t n = size_at(doc, "n");
    const std::size_t m = size_at(doc, "m");
    if (!doc.contains("lambda")) {
        fail("lambda", "missing");
    }
    const json& lam = array_at(doc, "lambda", n, "lambda");
    RationalVector lambda(n);
    for (std::size_t i = 0; i < n; ++i) {
        lambda[i] = rational_at(lam[i], "lambda[" + std::to_string(i) + "]");
    }
    RationalMatrix a = matrix_at(doc, "A", n, m);
    RationalMatrix b = matrix_at(doc, "B", m, n);

    bool relaxed = false;
    if (doc.contains("relaxed")) {
        if (!doc.at("relaxed").is_boolean()) {
            fail("relaxed", "expected a boolean");
        }
        relaxed = doc.at("relaxed").get<bool>();
    }
    return relaxed ? QPMap::create_relaxed(std::move(lambda), std::move(a), std::move(b))
                   : QPMap::create(std::move(lambda), std::move(a), std::move(b));
}

std::string write_map_document(const QPMap& map) {
    ordered_json doc;
    doc["n"] = map.n();
    doc["m"] = map.m();
    ordered_json lam = ordered_json::array();
    for (const Rational& v : map.lambda()) {
        lam.push_back(to_string(v));
    }
    doc["lambda"] = std::move(lam);
    doc["A"] = matrix_json(map.a());
    doc["B"] = matrix_json(map.b());
    if (map.relaxed()) {
        doc["relaxed"] = true;
    }
    return doc.dump(2) + "\n";
}

QMT parse_qmt_document(std::string_view json_text) {
    const json doc = parse_json(json_text);
    if (!doc.is_object() || !doc.contains("C")) {
        fail("C", "missing");
    }
    const json& c = doc.at("C");
    if (!c.is_array() || c.empty()) {
        fail("C", "expected a non-empty array of rows");
    }
    return QMT(matrix_at(doc, "C", c.size(), c.size()));
}

std::string write_qmt_document(const QMT& qmt) {
    ordered_json doc;
    doc["C"] = matrix_json(qmt.c());
    return doc.dump(2) + "\n";
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::ParseError, path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace qpmap
