#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "capcert/capcert.hpp"

namespace {

using capcert::Angle;
using capcert::Json;
using capcert::kPi;

double parse_angle(const std::string& text) {
  static const std::regex pi_form(
      R"(^\s*([0-9]*\.?[0-9]*)\s*\*?\s*pi\s*(?:/\s*([0-9]*\.?[0-9]+))?\s*$)",
      std::regex::icase);
  std::smatch m;
  if (std::regex_match(text, m, pi_form)) {
    const double coef = m[1].str().empty() ? 1.0 : std::stod(m[1].str());
    const double div = m[2].str().empty() ? 1.0 : std::stod(m[2].str());
    if (div == 0.0) throw CLI::ValidationError("angle", "division by zero in '" + text + "'");
    return coef * kPi / div;
  }
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw CLI::ValidationError("angle", "cannot parse angle '" + text + "'");
  }
  while (used < text.size() && std::isspace(static_cast<unsigned char>(text[used]))) ++used;
  if (used != text.size())
    throw CLI::ValidationError("angle", "cannot parse angle '" + text + "'");
  return value;
}

std::vector<std::uint64_t> parse_seed_range(const std::string& text) {
  static const std::regex range_form(R"(^\s*([0-9]+)\s*\.\.\s*([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, range_form))
    throw CLI::ValidationError("seeds", "expected A..B, got '" + text + "'");
  const std::uint64_t lo = std::stoull(m[1].str());
  const std::uint64_t hi = std::stoull(m[2].str());
  if (hi < lo) throw CLI::ValidationError("seeds", "range upper end below lower end");
  if (hi - lo >= 100000) throw CLI::ValidationError("seeds", "seed range too large");
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
  return seeds;
}

struct CommonOptions {
  std::size_t dim = 0;
  std::string alpha_text, psi_text, phi_text;
  double epsilon = 0.05;
  std::uint64_t seed = 0;
  std::string seeds_text;
  std::size_t samples_per_ring = 0;
  std::size_t mc_samples = 100000;
  std::size_t exact_limit = 0;
  std::size_t n_override = 0;
  std::string out_path;
  std::string format = "json";
  std::string points_path;
  std::string save_points_path;
  std::string method = "exact";
  bool timing = false;

  std::vector<std::uint64_t> seed_list() const {
    if (!seeds_text.empty()) return parse_seed_range(seeds_text);
    return {seed};
  }
  std::optional<std::size_t> override_opt() const {
    if (n_override == 0) return std::nullopt;
    return n_override;
  }
};

class PhaseTimer {
 public:
  void start(const std::string& phase) {
    flush();
    phase_ = phase;
    t0_ = std::chrono::steady_clock::now();
  }
  Json finish() {
    flush();
    Json j = Json::object();
    for (const auto& [name, seconds] : spans_) j[name] = seconds;
    return j;
  }

 private:
  void flush() {
    if (phase_.empty()) return;
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    spans_.emplace_back(phase_, dt);
    phase_.clear();
  }
  std::string phase_;
  std::chrono::steady_clock::time_point t0_;
  std::vector<std::pair<std::string, double>> spans_;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : (v[m - 1] + v[m]) / 2.0;
}

Json aggregate_stats(const std::vector<double>& values) {
  Json j = Json::object();
  if (values.empty()) return j;
  j["min"] = *std::min_element(values.begin(), values.end());
  j["median"] = median(values);
  j["max"] = *std::max_element(values.begin(), values.end());
  return j;
}

void emit_report(const CommonOptions& opt, const Json& report, const std::string& csv) {
  std::string body;
  if (opt.format == "csv") {
    if (csv.empty()) throw capcert::error("csv output is not defined for this mode");
    body = csv;
  } else {
    body = report.dump(2);
    body.push_back('\n');
  }
  if (opt.out_path.empty() || opt.out_path == "-")
    std::cout << body;
  else
    capcert::write_file(opt.out_path, body);
}

std::string csv_escape_join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line.push_back(',');
    line += cells[i];
  }
  line.push_back('\n');
  return line;
}

std::string fmt(double x) {
  Json j = x;
  return j.dump();
}

std::vector<capcert::Vec> load_euclidean_points(const CommonOptions& opt,
                                                const std::vector<std::string>& inline_points) {
  std::vector<capcert::Vec> rows;
  if (!opt.points_path.empty()) {
    capcert::PointFile file = capcert::read_points(opt.points_path);
    rows = std::move(file.rows);
  }
  for (const std::string& text : inline_points) {
    capcert::Vec row;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t used = 0;
      row.push_back(std::stod(text.substr(pos), &used));
      pos += used;
      if (pos < text.size()) {
        if (text[pos] != ',')
          throw CLI::ValidationError("point", "expected comma in '" + text + "'");
        ++pos;
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw capcert::error("no input points: pass --points or --point");
  for (const capcert::Vec& r : rows)
    if (r.size() != rows[0].size())
      throw capcert::dimension_mismatch("inline points disagree on dimension");
  return rows;
}

Json config_echo(const std::string& mode, const CommonOptions& opt) {
  Json j = Json::object();
  j["mode"] = mode;
  if (opt.dim != 0) j["dim"] = opt.dim;
  if (!opt.alpha_text.empty()) j["alpha"] = parse_angle(opt.alpha_text);
  if (!opt.psi_text.empty()) j["psi"] = parse_angle(opt.psi_text);
  if (!opt.phi_text.empty()) j["phi"] = parse_angle(opt.phi_text);
  j["epsilon"] = opt.epsilon;
  j["format"] = opt.format;
  j["method"] = opt.method;
  if (!opt.seeds_text.empty())
    j["seeds"] = opt.seeds_text;
  else
    j["seed"] = opt.seed;
  if (opt.n_override != 0) j["n_override"] = opt.n_override;
  if (opt.samples_per_ring != 0) j["samples_per_ring"] = opt.samples_per_ring;
  j["mc_samples"] = opt.mc_samples;
  if (opt.exact_limit != 0) j["exact_limit"] = opt.exact_limit;
  if (!opt.points_path.empty()) j["points"] = opt.points_path;
  if (!opt.save_points_path.empty()) j["save_points"] = opt.save_points_path;
  return j;
}

int run_construct(const CommonOptions& opt) {
  PhaseTimer timer;
  timer.start("construct");
  capcert::ConstructionParams params;
  params.dim = opt.dim;
  params.psi = Angle(parse_angle(opt.psi_text.empty() ? "6pi/14" : opt.psi_text));
  params.phi = Angle(opt.phi_text.empty() ? params.psi.value() + opt.epsilon
                                          : parse_angle(opt.phi_text));
  params.n_override = opt.override_opt();

  Json results = Json::array();
  std::vector<double> kept;
  std::size_t successes = 0;
  std::string csv = csv_escape_join(
      {"seed", "candidates", "bad_pairs", "deleted", "kept", "min_angle", "max_angle", "ok"});
  const std::vector<std::uint64_t> seeds = opt.seed_list();
  for (const std::uint64_t s : seeds) {
    params.seed = s;
    capcert::Configuration c = capcert::construct_separated(params);
    capcert::SeparationReport sep = capcert::verify_separation(c.points, params.psi);
    if (!sep.ok) throw capcert::error("separation verification failed");
    if (2 * c.points.size() >= c.candidate_count) ++successes;
    kept.push_back(static_cast<double>(c.points.size()));
    Json r = Json::object();
    r["seed"] = s;
    r["candidates"] = c.candidate_count;
    r["bad_pairs"] = c.bad_pair_count;
    r["deleted"] = c.deleted_count;
    r["kept"] = c.points.size();
    r["min_angle"] = sep.min_angle;
    r["max_angle"] = sep.max_angle;
    r["separation_ok"] = sep.ok;
    results.push_back(r);
    csv += csv_escape_join({std::to_string(s), std::to_string(c.candidate_count),
                            std::to_string(c.bad_pair_count), std::to_string(c.deleted_count),
                            std::to_string(c.points.size()), fmt(sep.min_angle),
                            fmt(sep.max_angle), sep.ok ? "1" : "0"});
    if (!opt.save_points_path.empty() && seeds.size() == 1) {
      Json meta = config_echo("construct", opt);
      meta["psi"] = params.psi.value();
      meta["phi"] = params.phi.value();
      capcert::write_points(opt.save_points_path, params.dim,
                            capcert::to_rows(c.points), meta.dump());
    }
  }

  Json report = Json::object();
  report["config"] = config_echo("construct", opt);
  report["config"]["psi"] = params.psi.value();
  report["config"]["phi"] = params.phi.value();
  report["results"] = results;
  Json agg = Json::object();
  agg["kept"] = aggregate_stats(kept);
  agg["success_fraction"] =
      static_cast<double>(successes) / static_cast<double>(seeds.size());
  report["aggregate"] = agg;
  if (opt.timing) report["timing"] = timer.finish();
  emit_report(opt, report, csv);
  return 0;
}

int run_witness(const CommonOptions& opt) {
  const Angle alpha(parse_angle(opt.alpha_text.empty() ? "pi/14" : opt.alpha_text));
  std::vector<capcert::UnitVector> apexes;
  Json source = Json::object();
  if (!opt.points_path.empty()) {
    capcert::PointFile file = capcert::read_points(opt.points_path);
    apexes = capcert::to_unit_vectors(file.rows);
    source["points"] = opt.points_path;
  } else {
    capcert::ConstructionParams params;
    params.dim = opt.dim;
    params.psi = Angle(parse_angle(opt.psi_text.empty() ? "6pi/14" : opt.psi_text));
    params.phi = Angle(opt.phi_text.empty() ? params.psi.value() + opt.epsilon
                                            : parse_angle(opt.phi_text));
    params.seed = opt.seed;
    params.n_override = opt.override_opt();
    apexes = capcert::construct_separated(params).points;
    source["psi"] = params.psi.value();
    source["phi"] = params.phi.value();
  }
  const std::size_t spr = opt.samples_per_ring != 0
                              ? opt.samples_per_ring
                              : capcert::default_ring_samples(apexes[0].dim());
  capcert::WitnessSet w = capcert::build_witness(
      apexes, alpha, spr, capcert::derive_seed(opt.seed, capcert::kWitnessSalt));
  const double diam = capcert::witness_diameter(w);
  const double expected = 2.0 * std::cos(alpha.value());

  Json report = Json::object();
  report["config"] = config_echo("witness", opt);
  report["config"]["alpha"] = alpha.value();
  report["config"]["source"] = source;
  Json r = Json::object();
  r["apexes"] = w.apexes.size();
  r["samples_per_ring"] = spr;
  r["witness_diameter"] = diam;
  r["expected_diameter"] = expected;
  r["defect"] = diam - expected;
  r["hypothesis_ok"] = capcert::check_witness_hypothesis(w.apexes, alpha);
  report["results"] = Json::array({r});
  report["aggregate"] = Json::object();
  if (!opt.save_points_path.empty()) {
    Json meta = Json::object();
    meta["alpha"] = alpha.value();
    meta["samples_per_ring"] = spr;
    meta["seed"] = opt.seed;
    capcert::write_points(opt.save_points_path, apexes[0].dim(),
                          capcert::to_rows(capcert::witness_points(w)), meta.dump());
  }
  emit_report(opt, report, "");
  return 0;
}

Json illumination_result_json(std::uint64_t seed,
                              const capcert::IlluminationPipelineResult& r) {
  Json j = Json::object();
  j["seed"] = seed;
  j["candidates"] = r.config.candidate_count;
  j["deleted"] = r.config.deleted_count;
  j["kept"] = r.config.points.size();
  j["witness_diameter"] = r.witness_diam;
  j["expected_diameter"] = r.expected_diam;
  j["multiplicity"] = r.certificate.certificate.parameters.at("multiplicity");
  j["lower_bound"] = r.certificate.certificate.lower_bound;
  j["upper_bound"] = r.certificate.certificate.upper_bound;
  j["certified"] = r.certificate.certified;
  j["reference_rate"] = r.reference_rate;
  return j;
}

int run_theorem1(const CommonOptions& opt, bool certify_only) {
  PhaseTimer timer;
  timer.start("pipeline");
  capcert::PipelineOptions options;
  options.epsilon = opt.epsilon;
  options.exact = opt.method != "mc";
  if (opt.exact_limit != 0) options.exact_limit = opt.exact_limit;
  options.n_override = opt.override_opt();
  options.samples_per_ring = opt.samples_per_ring;
  options.mc_samples = opt.mc_samples;

  Json results = Json::array();
  std::vector<double> lbs, ubs, kept;
  std::size_t successes = 0;
  std::string csv = csv_escape_join({"seed", "candidates", "kept", "multiplicity",
                                     "lower_bound", "upper_bound", "witness_diameter"});
  const std::vector<std::uint64_t> seeds = opt.seed_list();
  for (const std::uint64_t s : seeds) {
    options.seed = s;
    capcert::IlluminationPipelineResult r =
        capcert::illumination_pipeline(opt.dim, options);
    results.push_back(illumination_result_json(s, r));
    lbs.push_back(static_cast<double>(r.certificate.certificate.lower_bound));
    ubs.push_back(static_cast<double>(r.certificate.certificate.upper_bound));
    kept.push_back(static_cast<double>(r.config.points.size()));
    if (2 * r.config.points.size() >= r.config.candidate_count) ++successes;
    csv += csv_escape_join(
        {std::to_string(s), std::to_string(r.config.candidate_count),
         std::to_string(r.config.points.size()),
         fmt(r.certificate.certificate.parameters.at("multiplicity")),
         std::to_string(r.certificate.certificate.lower_bound),
         std::to_string(r.certificate.certificate.upper_bound), fmt(r.witness_diam)});
    if (!opt.save_points_path.empty() && seeds.size() == 1) {
      Json meta = config_echo(certify_only ? "illum-certify" : "theorem1", opt);
      capcert::write_points(opt.save_points_path, opt.dim,
                            capcert::to_rows(r.config.points), meta.dump());
    }
  }

  Json report = Json::object();
  report["config"] = config_echo(certify_only ? "illum-certify" : "theorem1", opt);
  report["results"] = results;
  Json agg = Json::object();
  agg["kept"] = aggregate_stats(kept);
  agg["lower_bound"] = aggregate_stats(lbs);
  agg["upper_bound"] = aggregate_stats(ubs);
  agg["success_fraction"] =
      static_cast<double>(successes) / static_cast<double>(seeds.size());
  report["aggregate"] = agg;
  if (opt.timing) report["timing"] = timer.finish();
  emit_report(opt, report, csv);
  return 0;
}

Json ball_result_json(std::uint64_t seed, const capcert::BallPipelineResult& r) {
  Json j = Json::object();
  j["seed"] = seed;
  j["candidates"] = r.config.candidate_count;
  j["deleted"] = r.config.deleted_count;
  j["kept"] = r.config.points.size();
  j["scaled_diameter"] = r.scaled_diameter;
  j["lower_bound"] = r.cover.certificate.lower_bound;
  j["upper_bound"] = r.cover.certificate.upper_bound;
  j["lb_method"] = r.cover.certificate.lb_method;
  j["ub_method"] = r.cover.certificate.ub_method;
  j["packing_bound"] = r.cover.packing;
  j["max_coverable"] = r.cover.max_coverable;
  j["candidate_balls"] = r.cover.candidate_count;
  j["membership_checked"] = r.membership_checked;
  j["membership_hits"] = r.membership_hits;
  j["reference_rate"] = r.reference_rate;
  return j;
}

int run_theorem2_balls(const CommonOptions& opt) {
  PhaseTimer timer;
  timer.start("pipeline");
  capcert::PipelineOptions options;
  options.epsilon = opt.epsilon;
  options.exact = opt.method != "greedy";
  if (opt.exact_limit != 0) options.ball_exact_limit = opt.exact_limit;
  options.n_override = opt.override_opt();

  Json results = Json::array();
  std::vector<double> lbs, ubs, kept;
  std::size_t successes = 0;
  std::string csv = csv_escape_join({"seed", "candidates", "kept", "lower_bound",
                                     "upper_bound", "packing", "max_coverable",
                                     "scaled_diameter"});
  const std::vector<std::uint64_t> seeds = opt.seed_list();
  for (const std::uint64_t s : seeds) {
    options.seed = s;
    capcert::BallPipelineResult r = capcert::ball_cover_pipeline(opt.dim, options);
    results.push_back(ball_result_json(s, r));
    lbs.push_back(static_cast<double>(r.cover.certificate.lower_bound));
    ubs.push_back(static_cast<double>(r.cover.certificate.upper_bound));
    kept.push_back(static_cast<double>(r.config.points.size()));
    if (2 * r.config.points.size() >= r.config.candidate_count) ++successes;
    csv += csv_escape_join({std::to_string(s), std::to_string(r.config.candidate_count),
                            std::to_string(r.config.points.size()),
                            std::to_string(r.cover.certificate.lower_bound),
                            std::to_string(r.cover.certificate.upper_bound),
                            std::to_string(r.cover.packing),
                            std::to_string(r.cover.max_coverable),
                            fmt(r.scaled_diameter)});
  }

  Json report = Json::object();
  report["config"] = config_echo("theorem2-balls", opt);
  report["results"] = results;
  Json agg = Json::object();
  agg["kept"] = aggregate_stats(kept);
  agg["lower_bound"] = aggregate_stats(lbs);
  agg["upper_bound"] = aggregate_stats(ubs);
  agg["success_fraction"] =
      static_cast<double>(successes) / static_cast<double>(seeds.size());
  report["aggregate"] = agg;
  if (opt.timing) report["timing"] = timer.finish();
  emit_report(opt, report, csv);
  return 0;
}

int run_ball_cover(const CommonOptions& opt, const std::vector<std::string>& inline_points,
                   double d) {
  const std::vector<capcert::Vec> rows = load_euclidean_points(opt, inline_points);
  capcert::BallCoverOptions options;
  options.exact = opt.method != "greedy";
  if (opt.exact_limit != 0) options.exact_limit = opt.exact_limit;
  capcert::BallCoverResult r = capcert::ball_cover_number(rows, d, options);

  Json report = Json::object();
  report["config"] = config_echo("ball-cover", opt);
  report["config"]["d"] = d;
  report["config"]["point_count"] = rows.size();
  Json result = capcert::json_from_certificate(r.certificate);
  result["packing_bound"] = r.packing;
  result["max_coverable"] = r.max_coverable;
  result["candidate_balls"] = r.candidate_count;
  Json balls = Json::array();
  for (std::size_t b = 0; b < r.centers.size(); ++b) {
    Json ball = Json::object();
    ball["center"] = r.centers[b];
    Json covers = Json::array();
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (r.covered[b] & (capcert::Mask{1} << i)) covers.push_back(i);
    ball["covers"] = covers;
    balls.push_back(ball);
  }
  result["balls"] = balls;
  report["results"] = Json::array({result});
  report["aggregate"] = Json::object();
  emit_report(opt, report, "");
  return 0;
}

int run_cap_table(const CommonOptions& opt, const std::string& dims_text,
                  std::size_t steps) {
  static const std::regex range_form(R"(^\s*([0-9]+)\s*\.\.\s*([0-9]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(dims_text, m, range_form))
    throw CLI::ValidationError("dims", "expected A..B, got '" + dims_text + "'");
  const std::size_t lo = std::stoull(m[1].str());
  const std::size_t hi = std::stoull(m[2].str());
  if (lo < 2 || hi < lo || hi > 500)
    throw CLI::ValidationError("dims", "dims range must satisfy 2 <= A <= B <= 500");
  if (steps == 0) throw CLI::ValidationError("steps", "steps must be positive");

  std::string csv = csv_escape_join({"dim", "theta", "omega"});
  Json results = Json::array();
  for (std::size_t n = lo; n <= hi; ++n)
    for (std::size_t k = 1; k <= steps; ++k) {
      const double theta = kPi * static_cast<double>(k) / static_cast<double>(steps + 1);
      const double omega = capcert::cap_measure(static_cast<int>(n), Angle(theta));
      csv += csv_escape_join({std::to_string(n), fmt(theta), fmt(omega)});
      Json row = Json::object();
      row["dim"] = n;
      row["theta"] = theta;
      row["omega"] = omega;
      results.push_back(row);
    }
  Json report = Json::object();
  report["config"] = config_echo("cap-table", opt);
  report["config"]["dims"] = dims_text;
  report["config"]["steps"] = steps;
  report["results"] = results;
  report["aggregate"] = Json::object();
  emit_report(opt, report, csv);
  return 0;
}

void add_common_flags(CLI::App* cmd, CommonOptions& opt, bool needs_dim) {
  if (needs_dim)
    cmd->add_option("--dim,-n", opt.dim, "ambient dimension n (sphere S^{n-1})")
        ->required();
  else
    cmd->add_option("--dim,-n", opt.dim, "ambient dimension n (sphere S^{n-1})");
  cmd->add_option("--seed", opt.seed, "run seed (default 0)");
  cmd->add_option("--seeds", opt.seeds_text, "inclusive seed range A..B");
  cmd->add_option("--out", opt.out_path, "report path ('-' or empty for stdout)");
  cmd->add_option("--format", opt.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_flag("--timing", opt.timing, "include wall-clock timing in the report");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "capcert: separated spherical point sets and covering/illumination "
      "lower-bound certificates"};
  app.require_subcommand(1);
  CommonOptions opt;
  double ball_d = 1.0;
  std::vector<std::string> inline_points;
  std::string dims_text = "2..10";
  std::size_t steps = 25;

  CLI::App* c_construct = app.add_subcommand(
      "construct", "sample a pairwise angle-separated point set");
  add_common_flags(c_construct, opt, true);
  c_construct->add_option("--psi", opt.psi_text, "separation angle (default 6pi/14)");
  c_construct->add_option("--phi", opt.phi_text, "cap angle for sizing (default psi + epsilon)");
  c_construct->add_option("--epsilon", opt.epsilon, "phi - psi when --phi is omitted");
  c_construct->add_option("--n-override", opt.n_override, "candidate count override");
  c_construct->add_option("--save-points", opt.save_points_path,
                          "write kept points to this file (single seed only)");

  CLI::App* c_witness = app.add_subcommand(
      "witness", "build the ring witness set and report its diameter");
  add_common_flags(c_witness, opt, false);
  c_witness->add_option("--alpha", opt.alpha_text, "apex half-angle (default pi/14)");
  c_witness->add_option("--psi", opt.psi_text, "separation when constructing apexes");
  c_witness->add_option("--phi", opt.phi_text, "cap angle when constructing apexes");
  c_witness->add_option("--epsilon", opt.epsilon, "phi - psi when --phi is omitted");
  c_witness->add_option("--n-override", opt.n_override, "candidate count override");
  c_witness->add_option("--samples-per-ring", opt.samples_per_ring,
                        "ring samples per apex (default max(64, 2n))");
  c_witness->add_option("--points", opt.points_path, "apex point file (skips construction)");
  c_witness->add_option("--save-points", opt.save_points_path,
                        "write apexes plus ring samples to this file");

  CLI::App* c_illum = app.add_subcommand(
      "illum-certify", "illumination lower-bound certificate for a separated set");
  add_common_flags(c_illum, opt, true);
  c_illum->add_option("--epsilon", opt.epsilon, "phi - psi margin (default 0.05)");
  c_illum->add_option("--n-override", opt.n_override, "candidate count override");
  c_illum->add_option("--samples-per-ring", opt.samples_per_ring,
                      "ring samples per apex (default max(64, 2n))");
  c_illum->add_option("--mc-samples", opt.mc_samples, "Monte Carlo sample count");
  c_illum->add_option("--exact-limit", opt.exact_limit, "family size cap for exact mode");
  c_illum->add_option("--method", opt.method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  c_illum->add_option("--save-points", opt.save_points_path,
                      "write kept apexes to this file (single seed only)");

  CLI::App* c_ball = app.add_subcommand(
      "ball-cover", "minimum diameter-d ball cover of an explicit point set");
  add_common_flags(c_ball, opt, false);
  c_ball->add_option("--points", opt.points_path, "point file to cover");
  c_ball->add_option("--point", inline_points,
                     "inline point as comma-separated coordinates (repeatable)");
  c_ball->add_option("--d", ball_d, "ball diameter (default 1)");
  c_ball->add_option("--exact-limit", opt.exact_limit, "point cap for exact mode");
  c_ball->add_option("--method", opt.method, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));

  CLI::App* c_table = app.add_subcommand(
      "cap-table", "normalized cap measure table over dimensions and angles");
  add_common_flags(c_table, opt, false);
  c_table->add_option("--dims", dims_text, "inclusive dimension range A..B");
  c_table->add_option("--steps", steps, "interior grid points on (0, pi)");

  CLI::App* c_t1 = app.add_subcommand(
      "theorem1", "full illumination pipeline (psi = 6pi/14, alpha = pi/14)");
  add_common_flags(c_t1, opt, true);
  c_t1->add_option("--epsilon", opt.epsilon, "phi - psi margin (default 0.05)");
  c_t1->add_option("--n-override", opt.n_override, "candidate count override");
  c_t1->add_option("--samples-per-ring", opt.samples_per_ring,
                   "ring samples per apex (default max(64, 2n))");
  c_t1->add_option("--mc-samples", opt.mc_samples, "Monte Carlo sample count");
  c_t1->add_option("--exact-limit", opt.exact_limit, "family size cap for exact mode");
  c_t1->add_option("--method", opt.method, "exact or mc")
      ->check(CLI::IsMember({"exact", "mc"}));
  c_t1->add_option("--save-points", opt.save_points_path,
                   "write kept apexes to this file (single seed only)");

  CLI::App* c_t2 = app.add_subcommand(
      "theorem2-balls", "full ball-cover pipeline (psi = pi/3, rescaled to diameter 1)");
  add_common_flags(c_t2, opt, true);
  c_t2->add_option("--epsilon", opt.epsilon, "phi - psi margin (default 0.05)");
  c_t2->add_option("--n-override", opt.n_override, "candidate count override");
  c_t2->add_option("--exact-limit", opt.exact_limit, "point cap for exact cover mode");
  c_t2->add_option("--method", opt.method, "exact or greedy")
      ->check(CLI::IsMember({"exact", "greedy"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  try {
    const auto t0 = std::chrono::steady_clock::now();
    int rc = 1;
    if (app.got_subcommand(c_construct)) rc = run_construct(opt);
    if (app.got_subcommand(c_witness)) rc = run_witness(opt);
    if (app.got_subcommand(c_illum)) rc = run_theorem1(opt, true);
    if (app.got_subcommand(c_ball)) rc = run_ball_cover(opt, inline_points, ball_d);
    if (app.got_subcommand(c_table)) rc = run_cap_table(opt, dims_text, steps);
    if (app.got_subcommand(c_t1)) rc = run_theorem1(opt, false);
    if (app.got_subcommand(c_t2)) rc = run_theorem2_balls(opt);
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "done in " << dt << " s\n";
    return rc;
  } catch (const capcert::desk_scale_error& e) {
    std::cerr << "desk-scale limit: " << e.what() << "\n";
    return 3;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
