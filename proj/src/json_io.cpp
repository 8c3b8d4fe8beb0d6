#include "chaincv/json_io.hpp"

#include <stdexcept>

namespace chaincv {

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw std::invalid_argument(
        "complex_from_json: expected a [re, im] number pair");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json point_to_json(const CharacterPoint& p) {
  Json j;
  j["t1"] = complex_to_json(p.t1);
  j["t2"] = complex_to_json(p.t2);
  j["t3"] = complex_to_json(p.t3);
  j["r12"] = complex_to_json(p.r12);
  j["r13"] = complex_to_json(p.r13);
  j["r23"] = complex_to_json(p.r23);
  j["beta"] = complex_to_json(p.beta);
  return j;
}

CharacterPoint point_from_json(const Json& j) {
  if (!j.is_object()) {
    throw std::invalid_argument("point_from_json: expected an object");
  }
  auto field = [&](const char* name) {
    if (!j.contains(name)) {
      throw std::invalid_argument(
          std::string("point_from_json: missing field ") + name);
    }
    return complex_from_json(j.at(name));
  };
  CharacterPoint p;
  p.t1 = field("t1");
  p.t2 = field("t2");
  p.t3 = field("t3");
  p.r12 = field("r12");
  p.r13 = field("r13");
  p.r23 = field("r23");
  p.beta = field("beta");
  return p;
}

Json laurent_to_json(const LaurentPoly3& p) {
  Json terms = Json::array();
  for (const auto& [k, c] : p.terms()) {
    Json term;
    term["k"] = Json::array({k[0], k[1], k[2]});
    term["c"] = complex_to_json(c);
    terms.push_back(std::move(term));
  }
  return terms;
}

LaurentPoly3 laurent_from_json(const Json& j) {
  if (!j.is_array()) {
    throw std::invalid_argument(
        "laurent_from_json: expected an array of terms");
  }
  LaurentPoly3 p;
  for (const auto& term : j) {
    if (!term.is_object() || !term.contains("k") || !term.contains("c")) {
      throw std::invalid_argument(
          "laurent_from_json: each term needs fields k and c");
    }
    const Json& k = term.at("k");
    if (!k.is_array() || k.size() != 3) {
      throw std::invalid_argument(
          "laurent_from_json: k must hold three integer exponents");
    }
    p.add_term({k[0].get<int>(), k[1].get<int>(), k[2].get<int>()},
               complex_from_json(term.at("c")));
  }
  return p;
}

}  // namespace chaincv
