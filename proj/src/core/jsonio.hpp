#pragma once

#include <string>

#include "json.hpp"

#include "core/heights.hpp"
#include "core/smallgen.hpp"
#include "core/spectral.hpp"
#include "core/suite.hpp"
#include "core/torus_point.hpp"
#include "core/verify.hpp"

namespace monoheight::jsonio {

using nlohmann::json;

// Matrix form: {"n": 2, "rows": [[2,1],[1,1]]}; entries are JSON integers or
// decimal strings when they exceed the native integer range.
IntMatrix matrix_from_json(const json& j);
json matrix_to_json(const IntMatrix& a);

// Point forms: {"coords": ["2/3","-5","1"]} or
// {"signs": [1,-1], "primes": {"2": [5,-8]}}; exponents may be strings.
TorusPoint point_from_json(const json& j);
json point_to_json(const TorusPoint& p);

json spectral_to_json(const SpectralData& sd);
json estimate_to_json(const HeightEstimate& e);
json report_to_json(const VerificationReport& r);
json certificate_to_json(const SmallHeightCertificate& c);
json suite_to_json(const SuiteSummary& s);

HeightOptions height_options_from_json(const json& j);

}  // namespace monoheight::jsonio
