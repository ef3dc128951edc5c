#include <string>

#include <json.hpp>

#include "qfa/algebra.hpp"
#include "qfa/errors.hpp"

namespace qfa {

using nlohmann::json;

std::string element_to_json(const AlgebraElement& a) {
  json coeffs = json::array();
  for (std::size_t j = 0; j < a.rank(); ++j) coeffs.push_back({a[j].real(), a[j].imag()});
  return json{{"side", std::string(side_name(a.side()))}, {"coeffs", coeffs}}.dump();
}

AlgebraElement element_from_json(const std::shared_ptr<const FusionAlgebra>& algebra, std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("element: ") + e.what(), 0, 0);
  }
  if (!doc.is_object() || !doc.contains("side") || !doc.contains("coeffs")) {
    throw ParseError("element: expected an object with \"side\" and \"coeffs\"", 0, 0);
  }
  const std::string side = doc["side"].is_string() ? doc["side"].get<std::string>() : "";
  if (side != "A" && side != "B") throw ValueError("element: side must be \"A\" or \"B\"");
  const json& c = doc["coeffs"];
  if (!c.is_array()) throw ValueError("element: coeffs must be an array");
  Eigen::VectorXcd coeffs(static_cast<Eigen::Index>(c.size()));
  for (std::size_t j = 0; j < c.size(); ++j) {
    const json& z = c[j];
    if (z.is_number()) {
      coeffs[static_cast<Eigen::Index>(j)] = z.get<double>();
    } else if (z.is_array() && z.size() == 2 && z[0].is_number() && z[1].is_number()) {
      coeffs[static_cast<Eigen::Index>(j)] = cplx(z[0].get<double>(), z[1].get<double>());
    } else {
      throw ValueError("element: coefficient " + std::to_string(j) + " is not [re, im]");
    }
  }
  return algebra->element(side == "A" ? Side::A : Side::B, std::move(coeffs));
}

}  // namespace qfa
