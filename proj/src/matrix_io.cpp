#include "qrec/matrix_io.hpp"

#include <stdexcept>
#include <string>

namespace qrec {

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw std::invalid_argument("matrix_io: " + what);
}

Real parse_real_scalar(const Json& j, mpfr_prec_t prec) {
    if (j.is_number_integer()) return Real::of(j.get<long>(), prec);
    if (j.is_number_float()) return Real::of(j.get<double>(), prec);
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s.find('/') != std::string::npos)
            return Real::of(rational_from_string(s), prec);
        return Real::parse(s, prec);
    }
    bad("expected a real scalar (number or decimal/\"p/q\" string)");
}

}  // namespace

Rational parse_rational_json(const Json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    bad("expected a rational entry (integer literal or \"p/q\" string)");
}

RatVector parse_rat_vector(const Json& j) {
    if (!j.is_array() || j.empty()) bad("expected a non-empty array for a vector");
    RatVector v;
    for (const auto& e : j) v.push_back(parse_rational_json(e));
    return v;
}

RatMatrix parse_rat_matrix(const Json& j) {
    if (!j.is_array() || j.empty()) bad("expected a non-empty array of rows");
    if (!j[0].is_array() || j[0].empty()) bad("matrix rows must be non-empty arrays");
    RatMatrix m(static_cast<long>(j.size()), static_cast<long>(j[0].size()));
    for (long i = 0; i < m.rows; ++i) {
        if (!j[i].is_array() || static_cast<long>(j[i].size()) != m.cols)
            bad("matrix rows must all have the same length");
        for (long k = 0; k < m.cols; ++k) m(i, k) = parse_rational_json(j[i][k]);
    }
    return m;
}

RatSymMatrix parse_rat_sym_matrix(const Json& j) {
    RatMatrix m = parse_rat_matrix(j);
    if (!m.is_square()) bad("symmetric matrix must be square");
    for (long i = 0; i < m.rows; ++i)
        for (long k = i + 1; k < m.cols; ++k)
            if (m(i, k) != m(k, i)) bad("matrix is not symmetric");
    return RatSymMatrix(std::move(m));
}

IntMatrix parse_int_matrix(const Json& j) {
    RatMatrix m = parse_rat_matrix(j);
    IntMatrix out(m.rows, m.cols);
    for (long i = 0; i < m.rows; ++i)
        for (long k = 0; k < m.cols; ++k) {
            if (m(i, k).get_den() != 1) bad("expected integer entries");
            out(i, k) = m(i, k).get_num();
        }
    return out;
}

PrecComplex parse_complex_json(const Json& j, mpfr_prec_t prec) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            if (it.key() != "re" && it.key() != "im")
                bad("complex entries take only \"re\" and \"im\" fields");
        Real re = j.contains("re") ? parse_real_scalar(j.at("re"), prec) : Real(prec);
        Real im = j.contains("im") ? parse_real_scalar(j.at("im"), prec) : Real(prec);
        return PrecComplex(std::move(re), std::move(im));
    }
    return PrecComplex(parse_real_scalar(j, prec), Real(prec));
}

CplxVector parse_cplx_vector(const Json& j, mpfr_prec_t prec) {
    if (!j.is_array() || j.empty()) bad("expected a non-empty array for a vector");
    CplxVector v;
    for (const auto& e : j) v.push_back(parse_complex_json(e, prec));
    return v;
}

CplxMatrix parse_cplx_matrix(const Json& j, mpfr_prec_t prec) {
    if (!j.is_array() || j.empty()) bad("expected a non-empty array of rows");
    if (!j[0].is_array() || j[0].empty()) bad("matrix rows must be non-empty arrays");
    CplxMatrix m(static_cast<long>(j.size()), static_cast<long>(j[0].size()));
    for (long i = 0; i < m.rows; ++i) {
        if (!j[i].is_array() || static_cast<long>(j[i].size()) != m.cols)
            bad("matrix rows must all have the same length");
        for (long k = 0; k < m.cols; ++k)
            m(i, k) = parse_complex_json(j[i][k], prec);
    }
    return m;
}

std::string rational_to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Json rational_to_json(const Rational& r) {
    if (r.get_den() == 1 && r.get_num().fits_slong_p())
        return Json(r.get_num().get_si());
    return Json(rational_to_string(r));
}

Json rat_vector_to_json(const RatVector& v) {
    Json j = Json::array();
    for (const auto& e : v) j.push_back(rational_to_json(e));
    return j;
}

Json rat_matrix_to_json(const RatMatrix& m) {
    Json j = Json::array();
    for (long i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (long k = 0; k < m.cols; ++k) row.push_back(rational_to_json(m(i, k)));
        j.push_back(std::move(row));
    }
    return j;
}

Json int_matrix_to_json(const IntMatrix& m) {
    Json j = Json::array();
    for (long i = 0; i < m.rows; ++i) {
        Json row = Json::array();
        for (long k = 0; k < m.cols; ++k) {
            if (m(i, k).fits_slong_p())
                row.push_back(m(i, k).get_si());
            else
                row.push_back(m(i, k).get_str());
        }
        j.push_back(std::move(row));
    }
    return j;
}

Json complex_to_json(const PrecComplex& z) {
    return Json{{"re", z.re.to_string()}, {"im", z.im.to_string()}};
}

}  // namespace qrec

