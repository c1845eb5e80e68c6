// JSON wire format shared by the CLI and test fixtures.
//
// Rational entries are integer literals or strings "p/q" (also plain integer
// strings); a matrix is an array of equal-length row arrays, a vector a flat
// array. Complex entries are {"re": ..., "im": ...} objects whose parts are
// decimal strings or numbers; a bare number/string is read as a real. All
// output numbers are decimal strings at full working precision, so a report
// can be reparsed without binary-float loss.
#pragma once

#include <string>

#include "json.hpp"
#include "qrec/lattice.hpp"
#include "qrec/prec_complex.hpp"
#include "qrec/rational.hpp"
#include "qrec/theta.hpp"

namespace qrec {

using Json = nlohmann::json;

// All parsers throw std::invalid_argument with a short reason on bad input.
Rational parse_rational_json(const Json& j);
RatVector parse_rat_vector(const Json& j);
RatMatrix parse_rat_matrix(const Json& j);
// Additionally checks entries[i][j] == entries[j][i].
RatSymMatrix parse_rat_sym_matrix(const Json& j);
IntMatrix parse_int_matrix(const Json& j);

PrecComplex parse_complex_json(const Json& j, mpfr_prec_t prec = kDefaultPrec);
CplxVector parse_cplx_vector(const Json& j, mpfr_prec_t prec = kDefaultPrec);
CplxMatrix parse_cplx_matrix(const Json& j, mpfr_prec_t prec = kDefaultPrec);

std::string rational_to_string(const Rational& r);
Json rational_to_json(const Rational& r);
Json rat_vector_to_json(const RatVector& v);
Json rat_matrix_to_json(const RatMatrix& m);
Json int_matrix_to_json(const IntMatrix& m);
Json complex_to_json(const PrecComplex& z);

}  // namespace qrec
