#include <iomanip>
#include <istream>
#include <ostream>

#include "json.hpp"

#include "gapcert/groundstate.hpp"

namespace gapcert {

void write_profile_json(const GroundStateProfile& p, std::ostream& out) {
  nlohmann::ordered_json j;
  j["shoot_param"] = p.shoot_param;
  j["tail_coeff"] = p.tail_coeff;
  j["resolution_error"] = p.resolution_error;
  j["bracket"] = {p.bracket_lo, p.bracket_hi};
  j["grid"] = p.grid;
  j["values"] = p.values;
  j["derivs"] = p.derivs;
  out << j.dump() << '\n';
}

GroundStateProfile read_profile_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("profile: malformed JSON: ") + e.what());
  }
  GroundStateProfile p;
  try {
    p.shoot_param = j.at("shoot_param").get<double>();
    p.tail_coeff = j.at("tail_coeff").get<double>();
    p.resolution_error = j.at("resolution_error").get<double>();
    const auto br = j.at("bracket").get<std::vector<double>>();
    if (br.size() != 2) throw std::runtime_error("profile: bracket needs two entries");
    p.bracket_lo = br[0];
    p.bracket_hi = br[1];
    p.grid = j.at("grid").get<std::vector<double>>();
    p.values = j.at("values").get<std::vector<double>>();
    p.derivs = j.at("derivs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("profile: ") + e.what());
  }
  if (auto err = validate_profile(p); !err.empty()) {
    throw std::runtime_error("profile: " + err);
  }
  return p;
}

void write_profile_csv(const GroundStateProfile& p, std::ostream& out) {
  out << "r,Q,dQ\n" << std::setprecision(17);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    out << p.grid[i] << ',' << p.values[i] << ',' << p.derivs[i] << '\n';
  }
}

}  // namespace gapcert
