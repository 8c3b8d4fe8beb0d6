#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "chaincv/chars.hpp"
#include "chaincv/laurent.hpp"
#include "chaincv/mat2.hpp"

namespace chaincv {

// Key-order-preserving JSON so emitted documents are deterministic.
using Json = nlohmann::ordered_json;

// Complex numbers travel as two-element arrays [re, im].
Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

// Points are objects keyed t1, t2, t3, r12, r13, r23, beta.
Json point_to_json(const CharacterPoint& p);
CharacterPoint point_from_json(const Json& j);

// Laurent polynomials are arrays of {"k": [k1,k2,k3], "c": [re,im]} terms
// in lexicographic exponent order.
Json laurent_to_json(const LaurentPoly3& p);
LaurentPoly3 laurent_from_json(const Json& j);

}  // namespace chaincv
