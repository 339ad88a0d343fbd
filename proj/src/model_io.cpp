#include "nnv/model_io.hpp"

#include <fstream>
#include <stdexcept>

namespace nnv {

using nlohmann::json;

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational_or_throw(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number())
    throw std::invalid_argument(
        "non-integer JSON number in model file; write it as a string to keep it exact");
  throw std::invalid_argument("expected a rational literal, got: " + j.dump());
}

json rational_to_json(const Rational& q) { return to_string(q); }

Vec vec_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected an array: " + j.dump());
  Vec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(rational_from_json(e));
  return v;
}

Mat mat_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("expected a matrix: " + j.dump());
  Mat m;
  m.reserve(j.size());
  for (const auto& row : j) m.push_back(vec_from_json(row));
  check_rectangular(m);
  return m;
}

json vec_to_json(const Vec& v) {
  json j = json::array();
  for (const auto& q : v) j.push_back(rational_to_json(q));
  return j;
}

json mat_to_json(const Mat& m) {
  json j = json::array();
  for (const auto& row : m) j.push_back(vec_to_json(row));
  return j;
}

Ffnn ffnn_from_json(const json& j) {
  if (j.value("type", "") != "ffnn")
    throw std::invalid_argument("model file is not of type \"ffnn\"");
  Ffnn net;
  for (const auto& jl : j.at("layers")) {
    Layer l;
    l.weights = mat_from_json(jl.at("weights"));
    l.bias = vec_from_json(jl.at("bias"));
    auto name = jl.at("activation").get<std::string>();
    auto act = activation_from_name(name);
    if (!act) throw std::invalid_argument("unknown activation: " + name);
    l.act = *act;
    net.layers.push_back(std::move(l));
  }
  check_wellformed(net);
  return net;
}

json ffnn_to_json(const Ffnn& net) {
  json layers = json::array();
  for (const Layer& l : net.layers) {
    layers.push_back({{"weights", mat_to_json(l.weights)},
                      {"bias", vec_to_json(l.bias)},
                      {"activation", std::string(activation_name(l.act))}});
  }
  return {{"type", "ffnn"}, {"layers", layers}};
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void save_json_file(const json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

Ffnn load_ffnn(const std::string& path) { return ffnn_from_json(load_json_file(path)); }

void save_ffnn(const Ffnn& net, const std::string& path) {
  save_json_file(ffnn_to_json(net), path);
}

}  // namespace nnv
