#include "grstrata/json_io.hpp"

#include "grstrata/error.hpp"

#include <string>

namespace grstrata {

namespace {

Rational parse_rational(const Json& num, const Json& den) {
    if (!num.is_string() || !den.is_string()) throw Error(ErrorCode::Parse, "rational components must be decimal strings");
    mpz_class p, q;
    if (p.set_str(num.get<std::string>(), 10) != 0 || q.set_str(den.get<std::string>(), 10) != 0) {
        throw Error(ErrorCode::Parse, "malformed integer component");
    }
    if (q == 0) throw Error(ErrorCode::Parse, "zero denominator");
    Rational r(p, q);
    r.canonicalize();
    return r;
}

std::size_t count_field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key) || !j.at(key).is_number_unsigned()) {
        throw Error(ErrorCode::Parse, std::string("missing or invalid field '") + key + "'");
    }
    return j.at(key).get<std::size_t>();
}

}  // namespace

Json matrix_to_json(const Matrix& m) {
    Json entries = Json::array();
    for (const auto& x : m.entries()) {
        entries.push_back({x.re().get_num().get_str(), x.re().get_den().get_str(), x.im().get_num().get_str(),
                           x.im().get_den().get_str()});
    }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

Matrix matrix_from_json(const Json& j) {
    const std::size_t rows = count_field(j, "rows");
    const std::size_t cols = count_field(j, "cols");
    const Json& entries = j.at("entries");
    if (!entries.is_array() || entries.size() != rows * cols) {
        throw Error(ErrorCode::Parse, "entries must hold rows*cols elements");
    }
    std::vector<GaussianRational> data;
    data.reserve(entries.size());
    for (const auto& e : entries) {
        if (!e.is_array() || e.size() != 4) throw Error(ErrorCode::Parse, "entry must be [re_num, re_den, im_num, im_den]");
        data.emplace_back(parse_rational(e[0], e[1]), parse_rational(e[2], e[3]));
    }
    return {rows, cols, std::move(data)};
}

Json subspace_to_json(const Subspace& s) {
    return Json{{"n", s.n()}, {"k", s.k()}, {"basis", matrix_to_json(s.basis())}};
}

Subspace subspace_from_json(const Json& j) {
    const std::size_t n = count_field(j, "n");
    const std::size_t k = count_field(j, "k");
    if (!j.contains("basis")) throw Error(ErrorCode::Parse, "missing field 'basis'");
    const Matrix raw = matrix_from_json(j.at("basis"));
    if (raw.cols() != n || raw.rows() != k) throw Error(ErrorCode::Parse, "basis shape does not match (k, n)");
    if (rank(raw) != k) throw Error(ErrorCode::Parse, "basis is rank-deficient");
    return Subspace::canonicalize(raw);
}

Json configuration_to_json(const Configuration& c) {
    Json points = Json::array();
    for (const auto& p : c.points()) points.push_back(subspace_to_json(p));
    return Json{{"h", c.h()}, {"k", c.k()}, {"n", c.n()}, {"points", std::move(points)}};
}

Configuration configuration_from_json(const Json& j) {
    const std::size_t h = count_field(j, "h");
    const std::size_t k = count_field(j, "k");
    const std::size_t n = count_field(j, "n");
    if (!j.contains("points") || !j.at("points").is_array() || j.at("points").size() != h) {
        throw Error(ErrorCode::Parse, "points must be an array of h subspaces");
    }
    std::vector<Subspace> points;
    for (const auto& p : j.at("points")) {
        points.push_back(subspace_from_json(p));
        if (points.back().k() != k || points.back().n() != n) throw Error(ErrorCode::Parse, "point does not match (k, n)");
    }
    return Configuration(std::move(points));
}

}  // namespace grstrata
