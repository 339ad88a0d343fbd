#pragma once

#include <json.hpp>

#include <string>

#include "nnv/ffnn.hpp"

namespace nnv {

// Model files keep every number exact: rationals are serialized as decimal or
// "p/q" strings. Plain JSON integers are accepted on input; non-integer JSON
// numbers are rejected because a double round-trip would silently lose
// precision.
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json rational_to_json(const Rational& q);

Vec vec_from_json(const nlohmann::json& j);
Mat mat_from_json(const nlohmann::json& j);
nlohmann::json vec_to_json(const Vec& v);
nlohmann::json mat_to_json(const Mat& m);

// {"type":"ffnn","layers":[{"weights":[[...]],"bias":[...],"activation":"relu"}]}
Ffnn ffnn_from_json(const nlohmann::json& j);
nlohmann::json ffnn_to_json(const Ffnn& net);

Ffnn load_ffnn(const std::string& path);
void save_ffnn(const Ffnn& net, const std::string& path);

nlohmann::json load_json_file(const std::string& path);
void save_json_file(const nlohmann::json& j, const std::string& path);

}  // namespace nnv
