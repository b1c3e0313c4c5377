#include "wahba/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wahba/errors.hpp"

namespace wahba::io {

using nlohmann::json;

namespace {

Vec3 vec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw InputError("expected 3-element array");
  return Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

Method method_from_name(const std::string& name) {
  if (name == "q_method") return Method::QMethod;
  if (name == "quest") return Method::Quest;
  if (name == "first_order") return Method::FirstOrder;
  if (name == "recursive") return Method::Recursive;
  throw InputError("unknown method name: " + name);
}

}  // namespace

MeasurementSet read_measurements_json(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError(std::string("measurement JSON parse error: ") + e.what());
  }
  if (!j.is_array()) throw InputError("measurement file must be a JSON array");
  MeasurementSet meas;
  for (const auto& item : j) {
    if (!item.contains("b") || !item.contains("r") || !item.contains("w"))
      throw InputError("measurement entry needs b, r, w");
    meas.entries.push_back(
        {vec3_from_json(item["b"]), vec3_from_json(item["r"]), item["w"].get<double>()});
  }
  return meas;
}

MeasurementSet read_measurements_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("empty CSV file");
  // header: bx,by,bz,rx,ry,rz,w
  MeasurementSet meas;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double f[7];
    char comma;
    for (int i = 0; i < 7; ++i) {
      if (!(ss >> f[i])) throw InputError("bad CSV row: " + line);
      if (i < 6 && !(ss >> comma)) throw InputError("bad CSV row: " + line);
    }
    meas.entries.push_back({Vec3(f[0], f[1], f[2]), Vec3(f[3], f[4], f[5]), f[6]});
  }
  return meas;
}

MeasurementSet read_measurements_file(const std::string& path, bool renormalize) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open: " + path);
  MeasurementSet meas = path.size() >= 4 && path.substr(path.size() - 4) == ".csv"
                            ? read_measurements_csv(in)
                            : read_measurements_json(in);
  if (renormalize) {
    for (auto& m : meas.entries) {
      if (m.b.norm() == 0.0 || m.r.norm() == 0.0)
        throw InputError("cannot renormalize zero vector");
      m.b.normalize();
      m.r.normalize();
    }
  }
  return meas;
}

std::string solve_report_json(const SolveReport& rep) {
  json j{{"method", method_name(rep.method)},
         {"q", {rep.q.c(0), rep.q.c(1), rep.q.c(2), rep.q.c(3)}},
         {"lambda", rep.lambda},
         {"iterations", rep.iterations},
         {"residual", rep.residual},
         {"taste", rep.taste}};
  return j.dump(2);
}

SolveReport parse_solve_report_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("report JSON parse error: ") + e.what());
  }
  SolveReport rep;
  const auto& q = j.at("q");
  if (!q.is_array() || q.size() != 4) throw InputError("q must be a 4-element array");
  rep.q = Quaterniond(q[0].get<double>(), q[1].get<double>(), q[2].get<double>(),
                      q[3].get<double>());
  rep.lambda = j.at("lambda").get<double>();
  rep.iterations = j.at("iterations").get<int>();
  rep.residual = j.at("residual").get<double>();
  rep.taste = j.at("taste").get<double>();
  rep.method = method_from_name(j.at("method").get<std::string>());
  return rep;
}

std::string histogram_csv(const Histogram& h) {
  std::ostringstream out;
  out << "bin_lo,bin_hi,count\n";
  out.precision(17);
  for (std::size_t i = 0; i < h.counts.size(); ++i)
    out << h.bin_edges[i] << ',' << h.bin_edges[i + 1] << ',' << h.counts[i] << '\n';
  return out.str();
}

std::string histogram_json(const Histogram& h, const CampaignConfig& config) {
  json j{{"config",
          {{"seed", config.seed},
           {"sigma1_deg", config.noise.sigma1_deg},
           {"sigma2_deg", config.noise.sigma2_deg},
           {"rho_h", config.rho_h},
           {"n_trials", config.n_trials},
           {"weights", {config.weights.first, config.weights.second}},
           {"taste_gate", config.taste_gate}}},
         {"bin_edges", h.bin_edges},
         {"counts", h.counts},
         {"n_total", h.n_total},
         {"n_rejected", h.n_rejected}};
  return j.dump(2);
}

Histogram parse_histogram_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("histogram JSON parse error: ") + e.what());
  }
  Histogram h;
  h.bin_edges = j.at("bin_edges").get<std::vector<double>>();
  h.counts = j.at("counts").get<std::vector<std::uint64_t>>();
  h.n_total = j.at("n_total").get<std::uint64_t>();
  h.n_rejected = j.at("n_rejected").get<std::uint64_t>();
  return h;
}

}  // namespace wahba::io
