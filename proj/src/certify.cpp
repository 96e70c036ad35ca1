#include "gapcert/certify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

#include "certify_internal.hpp"
#include "json.hpp"

namespace gapcert {

namespace {

constexpr const char* kCertified = "gap certified at desk scale";
constexpr const char* kNotCertified = "not certified";

bool selects(const std::string& selection, Operator op) {
  return selection == "both" || selection == to_string(op);
}

std::vector<std::string> required_prefixes(const std::string& selection) {
  std::vector<std::string> out{"Q.bound."};
  if (selects(selection, Operator::Lplus)) {
    out.insert(out.end(), {"Lplus.l_ge_2.", "Lplus.l1.", "Lplus.l0."});
  }
  if (selects(selection, Operator::Lminus)) {
    out.insert(out.end(), {"Lminus.l_ge_1.", "Lminus.l0."});
  }
  return out;
}

}  // namespace

std::vector<double> default_lambda_grid() {
  return {0.01, 0.05, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
}

std::vector<double> t0_grid(const PipelineConfig& cfg) {
  std::vector<double> out;
  const auto n = static_cast<std::size_t>(
      std::ceil((cfg.t0_hi - cfg.t0_lo) / cfg.t0_step - 1e-9));
  for (std::size_t i = 0; i <= n; ++i) {
    out.push_back(std::min(cfg.t0_hi, cfg.t0_lo + cfg.t0_step * static_cast<double>(i)));
  }
  if (out.size() > 1 && out[out.size() - 1] == out[out.size() - 2]) out.pop_back();
  return out;
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (double l : cfg.lambda_grid) {
    if (!(l > 0.0 && l <= 1.0)) {
      throw std::invalid_argument("lambda grid value " + std::to_string(l) + " outside (0, 1]");
    }
  }
  if (!(cfg.t0_lo >= 0.2 && cfg.t0_hi <= 1.5 && cfg.t0_lo <= cfg.t0_hi)) {
    throw std::invalid_argument("t0 grid must lie in [0.2, 1.5]");
  }
  if (!(cfg.t0_step > 0.0)) throw std::invalid_argument("t0 grid step must be positive");
  if (!(cfg.tol > 0.0 && cfg.kernel_tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(cfg.checkpoint_slack > 0.0)) throw std::invalid_argument("checkpoint slack must be positive");
  for (double e : cfg.eps_sweep_lplus) {
    if (!(e >= 0.0 && e <= 1.0)) throw std::invalid_argument("L+ eps sweep outside [0, 1]");
  }
  for (double e : cfg.eps_sweep_lminus) {
    if (!(e >= 0.0 && e < 1.0)) throw std::invalid_argument("L- eps sweep outside [0, 1)");
  }
  if (!(cfg.horizon > cfg.sturm_to && cfg.sturm_to > cfg.sturm_from && cfg.sturm_from >= 5.0)) {
    throw std::invalid_argument("need 5 <= sturm_from < sturm_to < horizon");
  }
  if (!(cfg.launch_t > 0.0 && cfg.launch_t <= 0.05)) {
    throw std::invalid_argument("launch_t must lie in (0, 0.05]");
  }
  const auto& b = cfg.bounds;
  if (!(b.origin_spacing > 0.0 && b.near_spacing > 0.0 && b.far_spacing > 0.0 &&
        b.origin_spacing <= 1e-3 && b.near_spacing <= 1e-3 && b.far_spacing <= 1e-2)) {
    throw std::invalid_argument("bound grid spacings must be positive and within 1e-3 / 1e-2");
  }
}

Certificate verify_l_ge_2(const GroundStateProfile& profile, const BoundGridOptions& grid) {
  const auto bounds = certify_Q_bounds(profile, grid);
  const char* parts[] = {"Q.bound.centrifugal_l1.origin", "Q.bound.centrifugal_l2",
                         "Q.bound.centrifugal_l1.mid", "Q.bound.centrifugal_l1.tail"};
  Certificate c{"Lplus.l_ge_2.potential_positive",
                "6/t^2 - 3 Q(t)^2 > 0 for all t > 0, so l >= 2 admits no L^2 solution"};
  c.pass = true;
  c.margin = std::numeric_limits<double>::infinity();
  for (const char* id : parts) {
    const auto& b = detail::find_cert(bounds, id);
    c.pass = c.pass && b.pass;
    c.margin = std::min(c.margin, b.margin);
    c.with(std::string("margin:") + id, b.margin);
  }
  c.notes =
      "(0,0.2], [1.5,inf) via 6/t^2 >= 2/t^2; [0.2,1.5] direct; positive potential "
      "excludes decaying solutions (cited)";
  if (!(c.margin > 0.0)) c.pass = false;
  return c;
}

Certificate verify_lminus_l_ge_1(const GroundStateProfile& profile,
                                 const BoundGridOptions& grid) {
  const auto bounds = certify_Q_bounds(profile, grid);
  const auto& b = detail::find_cert(bounds, "Q.bound.lminus_centrifugal");
  Certificate c{"Lminus.l_ge_1.potential_positive",
                "l(l+1)/t^2 + 1 - lambda - Q^2 >= 2/t^2 - Q^2 > 0 for l >= 1"};
  c.margin = b.margin;
  c.pass = b.pass && b.margin > 0.0;
  c.with("scaled_margin", b.margin);
  c.notes = "margin in scaled form min (2 - t^2 Q^2)";
  return c;
}

std::vector<Certificate> run_pipeline(const std::string& selection,
                                      const GroundStateProfile& profile,
                                      const PipelineConfig& cfg) {
  if (selection != "lplus" && selection != "lminus" && selection != "both") {
    throw std::invalid_argument("unknown operator selection " + selection);
  }
  validate_config(cfg);
  auto out = certify_Q_bounds(profile, cfg.bounds);
  auto append = [&out](std::vector<Certificate> v) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  };
  if (selects(selection, Operator::Lplus)) {
    out.push_back(verify_l_ge_2(profile, cfg.bounds));
    append(verify_l1(profile, cfg));
    append(verify_l0_lplus(profile, cfg));
  }
  if (selects(selection, Operator::Lminus)) {
    out.push_back(verify_lminus_l_ge_1(profile, cfg.bounds));
    append(verify_l0_lminus(profile, cfg));
  }
  return out;
}

std::vector<const Certificate*> GapReport::failures() const {
  std::vector<const Certificate*> out;
  for (const auto& c : certificates) {
    if (!c.pass) out.push_back(&c);
  }
  return out;
}

GapReport assemble_report(const std::string& operator_name, std::vector<Certificate> certs,
                          const GroundStateProfile& profile, const PipelineConfig& cfg) {
  GapReport r;
  r.operator_name = operator_name;
  r.shoot_param = profile.shoot_param;
  r.resolution_error = profile.resolution_error;
  r.lambda_grid = cfg.lambda_grid;
  r.t0_grid = t0_grid(cfg);
  r.tol = cfg.tol;
  r.certificates = std::move(certs);

  r.complete = !r.certificates.empty();
  for (const auto& prefix : required_prefixes(operator_name)) {
    const bool present = std::any_of(
        r.certificates.begin(), r.certificates.end(),
        [&](const Certificate& c) { return c.id.rfind(prefix, 0) == 0; });
    r.complete = r.complete && present;
  }
  const bool all_pass = std::all_of(r.certificates.begin(), r.certificates.end(),
                                    [](const Certificate& c) { return c.pass; });
  r.verdict = r.complete && all_pass ? kCertified : kNotCertified;
  return r;
}

void write_report_json(const GapReport& r, std::ostream& out) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["operator"] = r.operator_name;
  j["verdict"] = r.verdict;
  j["complete"] = r.complete;
  j["profile_fingerprint"] = {{"shoot_param", r.shoot_param},
                              {"resolution_error", r.resolution_error}};
  j["grids"] = {{"lambda", r.lambda_grid}, {"t0", r.t0_grid}};
  j["tol"] = r.tol;
  ordered_json certs = ordered_json::array();
  for (const auto& c : r.certificates) {
    ordered_json meta = ordered_json::object();
    for (const auto& [k, v] : c.meta) meta[k] = v;
    ordered_json e;
    e["id"] = c.id;
    e["anchor"] = c.anchor;
    e["pass"] = c.pass;
    e["margin"] = c.margin;
    e["meta"] = std::move(meta);
    if (!c.notes.empty()) e["notes"] = c.notes;
    certs.push_back(std::move(e));
  }
  j["certificates"] = std::move(certs);
  out << j.dump(2) << '\n';
}

void write_margin_table(const GapReport& r, std::ostream& out) {
  std::size_t width = 10;
  for (const auto& c : r.certificates) width = std::max(width, c.id.size());
  out << std::left << std::setw(6) << "pass" << std::setw(static_cast<int>(width) + 2)
      << "certificate" << "margin\n";
  for (const auto& c : r.certificates) {
    out << std::left << std::setw(6) << (c.pass ? "PASS" : "FAIL")
        << std::setw(static_cast<int>(width) + 2) << c.id << std::setprecision(6)
        << c.margin << '\n';
  }
  out << "verdict: " << r.verdict << (r.complete ? "" : " (incomplete)") << '\n';
}

void write_margins_csv(const GapReport& r, std::ostream& out) {
  out << "id,pass,margin,anchor\n" << std::setprecision(17);
  for (const auto& c : r.certificates) {
    std::string anchor = c.anchor;
    std::replace(anchor.begin(), anchor.end(), '"', '\'');
    out << c.id << ',' << (c.pass ? 1 : 0) << ',' << c.margin << ",\"" << anchor << "\"\n";
  }
}

}  // namespace gapcert
