#pragma once

#include <charconv>
#include <string>

#include "json.hpp"
#include "subdom/channel.hpp"

namespace subdom {

/// Shortest round-trip decimal form of x.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Complex vectors serialise as arrays of [re, im] pairs.
inline nlohmann::ordered_json complex_array(const CVector& v) {
  auto out = nlohmann::ordered_json::array();
  for (Eigen::Index j = 0; j < v.size(); ++j) out.push_back({v(j).real(), v(j).imag()});
  return out;
}

inline nlohmann::ordered_json to_json(const TransmissionRecord& r) {
  nlohmann::ordered_json j;
  j["input"] = complex_array(r.input);
  j["subcarriers"] = complex_array(r.subcarriers);
  j["transmittance"] = complex_array(r.transmittance);
  j["fourier_transmittance"] = complex_array(r.fourier_transmittance);
  j["noise"] = complex_array(r.noise);
  j["output"] = complex_array(r.output);
  j["domain_output"] = complex_array(r.domain_output);
  return j;
}

inline CVector complex_vector_from_json(const nlohmann::ordered_json& a) {
  CVector v(static_cast<Eigen::Index>(a.size()));
  for (std::size_t j = 0; j < a.size(); ++j) {
    v(static_cast<Eigen::Index>(j)) = cplx(a[j].at(0).get<double>(), a[j].at(1).get<double>());
  }
  return v;
}

inline TransmissionRecord transmission_from_json(const nlohmann::ordered_json& j) {
  TransmissionRecord r;
  r.input = complex_vector_from_json(j.at("input"));
  r.subcarriers = complex_vector_from_json(j.at("subcarriers"));
  r.transmittance = complex_vector_from_json(j.at("transmittance"));
  r.fourier_transmittance = complex_vector_from_json(j.at("fourier_transmittance"));
  r.noise = complex_vector_from_json(j.at("noise"));
  r.output = complex_vector_from_json(j.at("output"));
  r.domain_output = complex_vector_from_json(j.at("domain_output"));
  return r;
}

}  // namespace subdom
