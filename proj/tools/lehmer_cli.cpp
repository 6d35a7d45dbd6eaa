// lehmer: command-line front end. Every success prints one JSON document on
// stdout; diagnostics go to stderr. Exit status 0 success, 1 internal
// failure, 2 usage or domain error.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "json_output.hpp"
#include "lehmer/lehmer.hpp"

namespace {

using lehmer::cli::Json;

/// User-facing failures outside the library error types (bad files, flag
/// conflicts); exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Envelope {
  explicit Envelope(std::string cmd = {}) : command(std::move(cmd)) {}

  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  std::vector<std::string> warnings;

  void print() const {
    Json doc = Json::object();
    doc["command"] = command;
    doc["inputs"] = inputs;
    doc["result"] = result;
    doc["warnings"] = warnings;
    lehmer::cli::write_json(std::cout, doc);
    std::cout << '\n';
  }
};

Json measure_json(const lehmer::MeasureResult& m, bool with_moduli) {
  Json j = Json::object();
  j["value"] = m.value;
  j["error_radius"] = m.error_radius;
  j["method"] = lehmer::to_string(m.method);
  j["log_mahler"] = {{"value", std::log(m.value)}, {"error_radius", m.error_radius / (m.value - m.error_radius)}};
  if (m.method == lehmer::MeasureMethod::RootProduct) j["cyclotomic_fast_path"] = m.cyclotomic_fast_path;
  if (with_moduli && m.root_moduli) j["root_moduli"] = *m.root_moduli;
  return j;
}

Json optional_double(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json optional_poly(const std::optional<lehmer::IntPolynomial>& p) {
  return p ? Json(lehmer::to_wire(*p)) : Json(nullptr);
}

Json constants_json(const lehmer::BoundConstants& k) {
  return {{"c1", k.c1}, {"c2", k.c2}, {"c3", k.c3}, {"c_agg", k.c_agg}, {"c_n", k.c_n}, {"dim_n", k.dim_n}};
}

void add_constant_flags(CLI::App* app, lehmer::BoundConstants& k) {
  app->add_option("--c1", k.c1, "Dobrowolski-type constant")->capture_default_str();
  app->add_option("--c2", k.c2, "degree-volume slope")->capture_default_str();
  app->add_option("--c3", k.c3, "degree-volume offset (0 selects the pure power form)")->capture_default_str();
  app->add_option("--c-agg", k.c_agg, "aggregate constant of the pure power form")->capture_default_str();
  app->add_option("--cn", k.c_n, "volume-systole constant")->capture_default_str();
  app->add_option("--dim-n", k.dim_n, "manifold dimension n >= 3")->capture_default_str();
}

// ---------------------------------------------------------------------------

struct MeasureOptions {
  std::string poly;
  double tol = lehmer::kDefaultTolerance;
  std::string method = "roots";
  std::size_t samples = 65536;
};

Envelope cmd_measure(const MeasureOptions& o) {
  const auto p = lehmer::parse(o.poly);
  Envelope env{"measure"};
  env.inputs = {{"polynomial", lehmer::to_wire(p)}, {"tol", o.tol}, {"method", o.method}};
  if (o.method != "roots") env.inputs["samples"] = o.samples;

  std::optional<lehmer::MeasureResult> roots, jensen;
  if (o.method != "jensen") roots = lehmer::mahler_measure(p, o.tol);
  if (o.method != "roots") jensen = lehmer::jensen_measure(p, o.samples);

  if (o.method == "both") {
    env.result = measure_json(*roots, true);
    env.result["method"] = "both";
    env.result["root_product"] = measure_json(*roots, false);
    env.result["jensen"] = measure_json(*jensen, false);
    const double delta = std::abs(roots->value - jensen->value);
    const double combined = roots->error_radius + jensen->error_radius;
    env.result["agreement"] = {{"delta", delta}, {"combined_radius", combined}, {"agree", delta <= combined}};
    if (delta > combined) env.warnings.push_back("methods disagree beyond their error radii");
  } else {
    env.result = measure_json(roots ? *roots : *jensen, true);
  }
  if (roots && roots->cyclotomic_fast_path)
    env.result["note"] = "cyclotomic fast path: only x and cyclotomic factors, value is exact";
  return env;
}

Json salem_json(const lehmer::SalemCertificate& c) {
  Json j = Json::object();
  j["residual"] = lehmer::to_wire(c.residual);
  j["removed_cyclotomic_degree"] = c.removed_cyclotomic_degree;
  j["reciprocal_even"] = c.reciprocal_even;
  j["trace_polynomial"] = optional_poly(c.trace_polynomial);
  j["half_degree"] = c.half_degree;
  j["roots_above_two"] = c.roots_above_two;
  j["roots_inside"] = c.roots_inside;
  j["roots_below_minus_two"] = c.roots_below_minus_two;
  j["root_at_two"] = c.root_at_two;
  j["root_at_minus_two"] = c.root_at_minus_two;
  j["reason"] = c.reason;
  return j;
}

Json pisot_json(const lehmer::PisotCertificate& c) {
  Json j = Json::object();
  j["residual"] = lehmer::to_wire(c.residual);
  j["removed_cyclotomic_degree"] = c.removed_cyclotomic_degree;
  j["roots_outside"] = c.roots_outside;
  j["roots_ambiguous"] = c.roots_ambiguous;
  j["dominant_root"] = optional_double(c.dominant_root);
  j["margin"] = c.margin;
  j["uncertain"] = c.uncertain;
  j["reason"] = c.reason;
  return j;
}

Envelope cmd_classify(const std::string& poly) {
  const auto p = lehmer::parse(poly);
  Envelope env{"classify"};
  env.inputs = {{"polynomial", lehmer::to_wire(p)}};
  const auto c = lehmer::classify(p);
  env.result["kind"] = lehmer::to_string(c.kind);
  env.result["dominant_root"] = optional_double(c.dominant_root);
  env.result["removed_cyclotomic_degree"] = c.certificate.removed_cyclotomic_degree;
  env.result["irreducibility_checked"] = c.certificate.irreducibility_checked;
  env.result["salem"] = c.certificate.salem ? salem_json(*c.certificate.salem) : Json(nullptr);
  env.result["pisot"] = c.certificate.pisot ? pisot_json(*c.certificate.pisot) : Json(nullptr);
  if (c.kind != lehmer::ClassKind::CyclotomicProduct) env.warnings.push_back("irreducibility not verified");
  return env;
}

struct GeodesicOptions {
  std::string trace_poly, u_poly;
  double tol = lehmer::kDefaultTolerance;
};

Envelope cmd_geodesic(const GeodesicOptions& o) {
  Envelope env{"geodesic"};
  lehmer::DisplacementResult d;
  if (!o.trace_poly.empty()) {
    const auto q = lehmer::parse(o.trace_poly);
    env.inputs = {{"trace_poly", lehmer::to_wire(q)}, {"tol", o.tol}};
    d = lehmer::displacement_from_trace(q, o.tol);
  } else {
    const auto p = lehmer::parse(o.u_poly);
    env.inputs = {{"u_poly", lehmer::to_wire(p)}, {"tol", o.tol}};
    d = lehmer::displacement_from_u_polynomial(p, o.tol);
  }
  env.result["u_polynomial"] = lehmer::to_wire(d.u_polynomial);
  env.result["trace_polynomial"] = optional_poly(d.trace_polynomial);
  env.result["measure"] = measure_json(d.measure, false);
  env.result["length_dim2"] = d.length_dim2;
  env.result["length_dim3"] = d.length_dim3;
  env.warnings.push_back("irreducibility not verified");
  return env;
}

struct BoundOptions {
  lehmer::BoundConstants k;
  int d = 0;
  double vol = 0, systole = 0;
};

Envelope cmd_bound(const std::string& which, const BoundOptions& o) {
  o.k.validate();
  Envelope env{"bound " + which};
  env.inputs = Json::object();
  if (which == "dobrowolski") {
    env.inputs["d"] = o.d;
    const double v = lehmer::dobrowolski_lower_bound(o.d, o.k);
    env.result["log_measure_lower_bound"] = v;
    env.result["measure_lower_bound"] = std::exp(v);
    env.result["field_degree_lower_bound"] = lehmer::field_degree_lower_bound(o.d);
    if (v <= 0) env.warnings.push_back("vacuous bound");
  } else if (which == "degree-volume") {
    env.inputs["vol"] = o.vol;
    const double v = lehmer::degree_volume_upper_bound(o.vol, o.k);
    env.result["field_degree_upper_bound"] = v;
    if (v <= 0) env.warnings.push_back("vacuous bound");
  } else if (which == "systole-volume") {
    env.inputs["vol"] = o.vol;
    const double v = lehmer::systole_volume_lower_bound(o.vol, o.k);
    env.result["systole_lower_bound"] = v;
    env.result["form"] = lehmer::to_string(lehmer::chain_form(o.k));
    env.result["chain_argument"] = lehmer::chain_argument(o.vol, o.k);
    env.result["minimum_admissible_volume"] = lehmer::minimum_admissible_volume(o.k);
    env.result["monotone_regime_volume"] = lehmer::monotone_regime_volume(o.k);
    if (o.vol < lehmer::monotone_regime_volume(o.k))
      env.warnings.push_back("non-monotone regime: bound increases with volume below monotone_regime_volume");
    if (v <= 0) env.warnings.push_back("vacuous bound");
  } else {
    env.inputs["systole"] = o.systole;
    env.result["volume_lower_bound"] = lehmer::theorem1b_volume_lower_bound(o.systole, o.k);
  }
  env.inputs["constants"] = constants_json(o.k);
  return env;
}

struct GrowthOptions {
  lehmer::BoundConstants k;
  double vol_min = 0, vol_max = 0;
  int steps = 10;
  std::string out;
};

Envelope cmd_compare_growth(const GrowthOptions& o) {
  Envelope env{"compare-growth"};
  env.inputs = {{"vol_min", o.vol_min}, {"vol_max", o.vol_max}, {"steps", o.steps}, {"out", o.out},
                {"constants", constants_json(o.k)}};
  const auto rows = lehmer::growth_table(o.vol_min, o.vol_max, o.steps, o.k);
  {
    std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
    if (!f) throw UsageError("cannot open output file " + o.out);
    lehmer::write_growth_csv(f, rows);
    if (!f.flush()) throw UsageError("cannot write output file " + o.out);
  }
  env.result["out"] = o.out;
  env.result["rows"] = rows.size();
  env.result["header"] = lehmer::kGrowthCsvHeader;
  env.result["form"] = lehmer::to_string(lehmer::chain_form(o.k));
  if (o.vol_min < lehmer::monotone_regime_volume(o.k))
    env.warnings.push_back("non-monotone regime: table starts below monotone_regime_volume");
  return env;
}

struct SearchOptions {
  std::optional<int> degree, coeff_bound, shards;
  std::optional<double> tol;
  bool reciprocal_only = false;
  bool reciprocal_flag_given = false;
  std::string checkpoint, resume;
  std::optional<std::uint64_t> stop_after;
  std::uint64_t checkpoint_every = 10000;
  bool report_timing = false;
};

Envelope cmd_search(const SearchOptions& o) {
  std::vector<lehmer::ShardState> states;
  lehmer::SearchSpec base;
  int shards = 1;
  if (!o.resume.empty()) {
    states = lehmer::load_checkpoint(o.resume);
    base = states.front().spec.with_shard(0, 1);
    shards = states.front().spec.shard_count;
    std::vector<std::string> mismatch;
    if (o.degree && *o.degree != base.degree) mismatch.push_back("degree");
    if (o.coeff_bound && *o.coeff_bound != base.coeff_bound) mismatch.push_back("coeff_bound");
    if (o.reciprocal_flag_given && o.reciprocal_only != base.reciprocal_only) mismatch.push_back("reciprocal_only");
    if (o.tol && *o.tol != base.tol) mismatch.push_back("tol");
    if (o.shards && *o.shards != shards) mismatch.push_back("shards");
    if (!mismatch.empty()) {
      std::string list;
      for (const auto& m : mismatch) list += (list.empty() ? "" : ", ") + m;
      throw lehmer::LoadError("checkpoint spec mismatch (" + list + ") with " + o.resume);
    }
  } else {
    if (!o.degree || !o.coeff_bound) throw UsageError("search needs --degree and --coeff-bound (or --resume)");
    base.degree = *o.degree;
    base.coeff_bound = *o.coeff_bound;
    base.reciprocal_only = o.reciprocal_only;
    base.tol = o.tol.value_or(lehmer::kDefaultTolerance);
    shards = o.shards.value_or(1);
    if (shards < 1 || shards > 256) throw UsageError("--shards must be in [1, 256]");
    states = lehmer::start_shards(base, shards);
  }
  if (o.checkpoint_every == 0) throw UsageError("--checkpoint-every must be positive");

  const std::string checkpoint = !o.checkpoint.empty() ? o.checkpoint : o.resume;
  std::function<void(const std::vector<lehmer::ShardState>&)> save;
  std::optional<std::uint64_t> round;
  if (!checkpoint.empty()) {
    save = [&](const std::vector<lehmer::ShardState>& s) { lehmer::save_checkpoint(checkpoint, s); };
    round = o.checkpoint_every;
  }
  lehmer::run_shards(states, o.stop_after, round, save);
  if (save) save(states);

  const auto rec = lehmer::merge_shards(states);
  bool complete = true;
  for (const auto& s : states) complete = complete && s.complete();

  Envelope env{"search"};
  env.inputs = {{"degree", base.degree},
                {"coeff_bound", base.coeff_bound},
                {"reciprocal_only", base.reciprocal_only},
                {"tol", base.tol},
                {"shards", shards}};
  env.result["complete"] = complete;
  env.result["best_polynomial"] = optional_poly(rec.best_polynomial);
  env.result["best_polynomial_display"] =
      rec.best_polynomial ? Json(lehmer::to_display_string(*rec.best_polynomial)) : Json(nullptr);
  if (rec.best_measure) {
    env.result["best_measure"] = measure_json(*rec.best_measure, false);
    const auto jm = lehmer::jensen_measure(*rec.best_polynomial, 1u << 16);
    const double delta = std::abs(jm.value - rec.best_measure->value);
    env.result["jensen_check"] = {{"value", jm.value},
                                  {"error_radius", jm.error_radius},
                                  {"agree", delta <= jm.error_radius + rec.best_measure->error_radius}};
  } else {
    env.result["best_measure"] = nullptr;
  }
  env.result["family_size"] = base.family_size();
  env.result["scanned"] = rec.scanned;
  env.result["measured"] = rec.measured;
  env.result["skipped_cyclotomic"] = rec.skipped_cyclotomic;
  env.result["skipped_pruned"] = rec.skipped_pruned;
  if (o.report_timing) env.result["elapsed_seconds"] = std::chrono::duration<double>(rec.elapsed).count();
  if (!complete) env.warnings.push_back("search incomplete: resume from the checkpoint to finish");
  if (base.reciprocal_only)
    env.warnings.push_back("reciprocal-only: non-reciprocal polynomials skipped (their measure is at least 1.3247)");
  return env;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahler measures, Salem/Pisot classification, geodesic lengths, bound chains and record search"};
  app.require_subcommand(1);

  MeasureOptions mo;
  auto* measure = app.add_subcommand("measure", "Mahler measure of a polynomial");
  measure->add_option("poly", mo.poly, "coefficients, constant first, comma separated")->required();
  measure->add_option("--tol", mo.tol, "error radius target")->capture_default_str();
  measure->add_option("--method", mo.method, "roots, jensen or both")
      ->check(CLI::IsMember({"roots", "jensen", "both"}))
      ->capture_default_str();
  measure->add_option("--samples", mo.samples, "Jensen quadrature points")->capture_default_str();

  std::string classify_poly;
  auto* classify = app.add_subcommand("classify", "cyclotomic / Salem / Pisot / other");
  classify->add_option("poly", classify_poly, "coefficients, constant first")->required();

  GeodesicOptions go;
  auto* geodesic = app.add_subcommand("geodesic", "translation length from trace data");
  auto* trace_opt = geodesic->add_option("--trace-poly", go.trace_poly, "monic polynomial of the trace");
  auto* u_opt = geodesic->add_option("--u-poly", go.u_poly, "monic polynomial of an eigenvalue");
  trace_opt->excludes(u_opt);
  u_opt->excludes(trace_opt);
  geodesic->add_option("--tol", go.tol)->capture_default_str();

  BoundOptions bo;
  auto* bound = app.add_subcommand("bound", "evaluate one inequality of the bound chain");
  bound->require_subcommand(1);
  auto* dob = bound->add_subcommand("dobrowolski", "log M(P) lower bound from the degree");
  dob->add_option("--d", bo.d, "polynomial degree")->required();
  auto* degvol = bound->add_subcommand("degree-volume", "field degree upper bound from the volume");
  degvol->add_option("--vol", bo.vol, "volume")->required();
  auto* sysvol = bound->add_subcommand("systole-volume", "arithmetic systole lower bound from the volume");
  sysvol->add_option("--vol", bo.vol, "volume")->required();
  auto* t1b = bound->add_subcommand("theorem1b", "volume lower bound from the systole");
  t1b->add_option("--systole", bo.systole, "systole length")->required();
  for (auto* sub : {dob, degvol, sysvol, t1b}) add_constant_flags(sub, bo.k);

  SearchOptions so;
  auto* search = app.add_subcommand("search", "exhaustive minimum-measure search");
  search->add_option("--degree", so.degree, "polynomial degree");
  search->add_option("--coeff-bound", so.coeff_bound, "coefficients range over [-B, B]");
  auto* recip = search->add_flag("--reciprocal-only", so.reciprocal_only, "only self-reciprocal polynomials");
  search->add_option("--shards", so.shards, "concurrent shards (default 1)");
  search->add_option("--tol", so.tol, "measure tolerance (default 1e-9)");
  search->add_option("--checkpoint", so.checkpoint, "checkpoint file written at quiescent points");
  search->add_option("--resume", so.resume, "continue from a checkpoint file");
  search->add_option("--stop-after", so.stop_after, "process at most this many polynomials per shard");
  search->add_option("--checkpoint-every", so.checkpoint_every, "polynomials per shard between checkpoints")
      ->capture_default_str();
  search->add_flag("--report-timing", so.report_timing, "include elapsed time in the output");

  GrowthOptions gro;
  auto* growth = app.add_subcommand("compare-growth", "systole bounds over a volume range, as CSV");
  growth->add_option("--vol-min", gro.vol_min)->required();
  growth->add_option("--vol-max", gro.vol_max)->required();
  growth->add_option("--steps", gro.steps)->capture_default_str();
  growth->add_option("--out", gro.out, "CSV output path")->required();
  add_constant_flags(growth, gro.k);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    Envelope env;
    if (measure->parsed()) {
      env = cmd_measure(mo);
    } else if (classify->parsed()) {
      env = cmd_classify(classify_poly);
    } else if (geodesic->parsed()) {
      if (go.trace_poly.empty() && go.u_poly.empty()) throw UsageError("geodesic needs --trace-poly or --u-poly");
      env = cmd_geodesic(go);
    } else if (bound->parsed()) {
      const std::string which = dob->parsed()      ? "dobrowolski"
                                : degvol->parsed() ? "degree-volume"
                                : sysvol->parsed() ? "systole-volume"
                                                   : "theorem1b";
      env = cmd_bound(which, bo);
    } else if (search->parsed()) {
      so.reciprocal_flag_given = recip->count() > 0;
      env = cmd_search(so);
    } else {
      env = cmd_compare_growth(gro);
    }
    env.print();
    return 0;
  } catch (const lehmer::ParseError& e) {
    std::cerr << "error: parse: " << e.what() << '\n';
  } catch (const lehmer::ConvergenceError& e) {
    std::cerr << "error: convergence: " << e.what() << " (best residual " << e.best_residual() << ")\n";
  } catch (const lehmer::QuadratureError& e) {
    std::cerr << "error: quadrature: " << e.what() << '\n';
  } catch (const lehmer::LoadError& e) {
    std::cerr << "error: checkpoint: " << e.what() << '\n';
  } catch (const lehmer::DomainError& e) {
    std::cerr << "error: domain: " << e.what() << '\n';
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
