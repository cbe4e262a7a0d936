#pragma once

#include <json.hpp>

#include "csh/complex.hpp"
#include "csh/novikov.hpp"

namespace csh {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

struct JsonFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json rational_json(const Rational& r);  // "p/q" string
Rational rational_from_json(const Json& j);

Field field_from_name(const std::string& s);

// {"terms": [{"num", "den", "coeff"}...], "precision": "p/q"?}; exponents are num/den
Json scalar_json(const NovikovScalar& x);
NovikovScalar scalar_from_json(Field f, const Json& j);

Json complex_json(const FilteredComplex& c);
FilteredComplex complex_from_json(const Json& j);

Json window_report_json(const WindowReport& w);
WindowReport window_report_from_json(const Json& j);

Json graded_json(const std::map<Rational, std::int64_t>& ranks);
Json completed_ranks_json(const CompletedRanks& r);

}  // namespace csh
