#include "attoclock/cli.hpp"

#include <filesystem>
#include <ostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "attoclock/analysis.hpp"
#include "attoclock/dataset.hpp"
#include "attoclock/errors.hpp"
#include "attoclock/model.hpp"
#include "attoclock/plot.hpp"
#include "textio.hpp"

namespace attoclock::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;

void apply_config_json(const std::string& json_text, RunConfig& cfg) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config must be a JSON object");

  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "ip") cfg.ip = v.get<double>();
      else if (key == "zeff") cfg.zeff = v.get<double>();
      else if (key == "fmin") cfg.f_min = v.get<double>();
      else if (key == "fmax") cfg.f_max = v.get<double>();
      else if (key == "n") cfg.n_points = v.get<std::size_t>();
      else if (key == "grid") cfg.grid_scale = v.get<std::string>() == "linear" ? GridScale::linear : GridScale::log;
      else if (key == "units") cfg.time_unit_out = units::parse_time_unit(v.get<std::string>());
      else if (key == "basis") cfg.basis = parse_fit_basis(v.get<std::string>());
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "allow_extrapolation") cfg.allow_extrapolation = v.get<bool>();
      else if (key == "in") cfg.in = v.get<std::string>();
      else if (key == "minuend") cfg.minuend = v.get<std::string>();
      else if (key == "subtrahend") cfg.subtrahend = v.get<std::string>();
      else if (key == "adiabatic") cfg.adiabatic = v.get<std::string>();
      else if (key == "nonadiabatic") cfg.nonadiabatic = v.get<std::string>();
      else if (key == "lc") cfg.lc = v.get<std::string>();
      else if (key == "z_list") cfg.z_list = v.get<std::vector<double>>();
      else if (key == "model") cfg.model = v.get<std::string>();
      else if (key == "noise") cfg.noise = v.get<double>();
      else if (key == "files") cfg.files = v.get<std::vector<std::string>>();
      else if (key == "labels") cfg.labels = v.get<std::vector<std::string>>();
      else if (key == "columns") cfg.columns = v.get<std::vector<std::string>>();
      else if (key == "title") cfg.title = v.get<std::string>();
      else if (key == "width") cfg.width = v.get<int>();
      else if (key == "height") cfg.height = v.get<int>();
      else throw ParseError("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ParseError(std::string("bad config value: ") + e.what());
  }
  if (j.contains("grid") && j["grid"] != "linear" && j["grid"] != "log") {
    throw ParseError("config key 'grid' must be linear or log");
  }
}

namespace {

void emit(const RunConfig& cfg, std::string_view content, std::ostream& out) {
  if (cfg.out.empty()) {
    out << content;
  } else {
    textio::write_file(cfg.out, content);
  }
}

std::vector<double> grid_of(const RunConfig& cfg) {
  const AtomicSystem sys(cfg.ip, cfg.zeff);
  const double f_max = cfg.f_max.value_or(atomic_field_strength(sys));
  return make_grid(cfg.f_min, f_max, cfg.n_points, cfg.grid_scale);
}

void require_path(const std::string& path, const char* flag) {
  if (path.empty()) throw DomainError(std::string("missing required ") + flag);
}

int cmd_model(const RunConfig& cfg, std::ostream& out) {
  const AtomicSystem sys(cfg.ip, cfg.zeff);
  const auto grid = grid_of(cfg);
  const TimeUnit unit = cfg.time_unit_out.value_or(TimeUnit::atomic);
  auto t = [&](double tau) { return textio::format_g17(units::convert_time(tau, TimeUnit::atomic, unit)); };

  std::string csv = "# time_unit: " + std::string(units::to_string(unit)) + "\n";
  csv += "f_au,delta_z,d_b,tau_a,tau_dion,tau_db,tau_td,tau_ti,xi,lambda\n";
  for (const double f : grid) {
    const auto g = barrier_geometry(sys, f);
    const auto d = delay_breakdown(sys, f);
    csv += textio::format_g17(f) + "," + textio::format_g17(g.delta_z) + "," + textio::format_g17(g.d_b) + "," +
           t(d.tau_a) + "," + t(d.tau_dion) + "," + t(d.tau_db) + "," + t(d.tau_td) + "," + t(d.tau_ti) + "," +
           textio::format_g17(d.xi) + "," + textio::format_g17(d.lambda) + "\n";
  }
  emit(cfg, csv, out);
  return kExitOk;
}

int cmd_fit(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.in, "--in");
  auto ds = read_dataset(cfg.in);
  if (cfg.time_unit_out) ds = convert_time_unit(std::move(ds), *cfg.time_unit_out);
  emit(cfg, format_fit_json(fit(ds, cfg.basis)), out);
  return kExitOk;
}

Curve load_operand(const RunConfig& cfg, const std::string& path) {
  if (fs::path(path).extension() == ".json") return eval_curve(read_fit(path), grid_of(cfg));
  return read_curve(path);
}

int cmd_subtract(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.minuend, "--minuend");
  require_path(cfg.subtrahend, "--subtrahend");
  auto lhs = load_operand(cfg, cfg.minuend);
  auto rhs = load_operand(cfg, cfg.subtrahend);
  if (cfg.time_unit_out) {
    lhs = convert_time_unit(std::move(lhs), *cfg.time_unit_out);
    rhs = convert_time_unit(std::move(rhs), *cfg.time_unit_out);
  }
  emit(cfg, format_curve(subtract_curves(lhs, rhs)), out);
  return kExitOk;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  require_path(cfg.adiabatic, "--adiabatic");
  require_path(cfg.nonadiabatic, "--nonadiabatic");
  require_path(cfg.out, "--out (output directory)");

  const auto grid = grid_of(cfg);
  auto adiabatic = read_dataset(cfg.adiabatic);
  if (cfg.time_unit_out) adiabatic = convert_time_unit(std::move(adiabatic), *cfg.time_unit_out);
  const auto nonadiabatic = read_dataset(cfg.nonadiabatic);
  const auto extraction = extract_barrier(adiabatic, nonadiabatic, cfg.basis, grid);
  const TimeUnit unit = extraction.barrier.time_unit;

  const AtomicSystem base(cfg.ip, cfg.zeff);
  auto models = model_sweep(base, cfg.z_list, grid, unit);

  std::optional<Curve> lc;
  if (!cfg.lc.empty()) {
    const auto lc_data = convert_time_unit(read_dataset(cfg.lc), unit);
    lc = eval_curve(fit(lc_data, cfg.basis), grid);
  }

  const auto report = compare(extraction.barrier, std::move(models), lc, {cfg.allow_extrapolation});
  write_report_bundle(report, cfg.out);
  write_fit(extraction.adiabatic_fit, fs::path(cfg.out) / "fit_adiabatic.json");
  write_fit(extraction.nonadiabatic_fit, fs::path(cfg.out) / "fit_nonadiabatic.json");

  out << "wrote comparison bundle to " << cfg.out << "\n";
  if (report.crossover_f) out << "crossover_f " << textio::format_g17(*report.crossover_f) << "\n";
  for (const auto& m : report.metrics) {
    out << m.label << " rmse " << textio::format_short(m.rmse) << " max_abs " << textio::format_short(m.max_abs)
        << "\n";
  }
  return kExitOk;
}

int cmd_synth(const RunConfig& cfg, std::ostream& out) {
  const AtomicSystem sys(cfg.ip, cfg.zeff);
  const auto ds = synth_dataset(sys, parse_delay_model(cfg.model), grid_of(cfg), cfg.noise, cfg.seed,
                                cfg.time_unit_out.value_or(TimeUnit::atomic));
  emit(cfg, format_dataset(ds), out);
  return kExitOk;
}

int cmd_plot(const RunConfig& cfg, std::ostream& out) {
  if (cfg.files.empty()) throw DomainError("plot needs at least one curve file");
  if (!cfg.labels.empty() && cfg.labels.size() != cfg.files.size()) {
    throw DomainError("--label must be given once per input file");
  }
  std::vector<plot::Series> series;
  std::optional<TimeUnit> unit;
  for (std::size_t i = 0; i < cfg.files.size(); ++i) {
    const std::string label = cfg.labels.empty() ? fs::path(cfg.files[i]).stem().string() : cfg.labels[i];
    auto table = plot::read_table(cfg.files[i], label, cfg.columns);
    if (unit && *unit != table.time_unit) throw UnitMismatch("input files use different time units");
    unit = table.time_unit;
    for (auto& s : table.series) series.push_back(std::move(s));
  }
  plot::Options options;
  options.width = cfg.width;
  options.height = cfg.height;
  options.title = cfg.title;
  options.time_unit = unit.value_or(TimeUnit::attosecond);
  emit(cfg, plot::render_svg(series, options), out);
  return kExitOk;
}

// Finds --config before the real parse so that flags can override the file.
std::optional<std::string> find_config(int argc, const char* const* argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return std::string(arg.substr(9));
  }
  return std::nullopt;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  try {
    if (const auto path = find_config(argc, argv)) {
      std::string text;
      for (const auto& line : textio::read_lines(*path)) text += line + "\n";
      apply_config_json(text, cfg);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }

  CLI::App app{"Attoclock tunneling-time model and barrier-delay analysis"};
  app.require_subcommand(1);

  std::string config_path;
  double f_max = 0;
  std::string units_text;
  std::string grid_text = cfg.grid_scale == GridScale::linear ? "linear" : "log";
  std::string basis_text(to_string(cfg.basis));

  struct Shared {
    CLI::Option* f_max = nullptr;
    CLI::Option* units = nullptr;
  };
  std::vector<Shared> shared;

  auto add_shared = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON file with default values for any flag");
    sub->add_option("--ip", cfg.ip, "ionization potential (au)");
    sub->add_option("--zeff", cfg.zeff, "effective nuclear charge");
    sub->add_option("--fmin", cfg.f_min, "smallest grid field strength (au)");
    Shared s;
    s.f_max = sub->add_option("--fmax", f_max, "largest grid field strength (au), default F_a");
    sub->add_option("--n", cfg.n_points, "number of grid points");
    sub->add_option("--grid", grid_text, "grid spacing")->check(CLI::IsMember({"linear", "log"}));
    s.units = sub->add_option("--units", units_text, "time unit of the output")->check(CLI::IsMember({"au", "as"}));
    sub->add_option("--basis", basis_text, "fit basis")->check(CLI::IsMember({"inv_f", "inv_f_offset"}));
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.out, "output file (directory for compare); stdout when omitted");
    sub->add_flag("--allow-extrapolation", cfg.allow_extrapolation,
                  "include extrapolated points in comparison metrics");
    shared.push_back(s);
  };

  auto* model = app.add_subcommand("model", "tabulate geometry and delays over a field grid");
  auto* fit_cmd = app.add_subcommand("fit", "fit a delay dataset in the 1/F basis");
  auto* subtract = app.add_subcommand("subtract", "subtract two fitted curves");
  auto* compare_cmd = app.add_subcommand("compare", "extract the barrier delay and compare with the model");
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset from the model");
  auto* plot_cmd = app.add_subcommand("plot", "render curve CSVs as an SVG chart");
  for (auto* sub : {model, fit_cmd, subtract, compare_cmd, synth, plot_cmd}) add_shared(sub);

  fit_cmd->add_option("--in", cfg.in, "dataset CSV");
  subtract->add_option("--minuend", cfg.minuend, "fit JSON or curve CSV");
  subtract->add_option("--subtrahend", cfg.subtrahend, "fit JSON or curve CSV");
  compare_cmd->add_option("--adiabatic", cfg.adiabatic, "adiabatic-calibration dataset CSV");
  compare_cmd->add_option("--nonadiabatic", cfg.nonadiabatic, "nonadiabatic-calibration dataset CSV");
  compare_cmd->add_option("--lc", cfg.lc, "Larmor-clock dataset CSV");
  compare_cmd->add_option("--z-list", cfg.z_list, "effective charges for the model sweep")->delimiter(',');
  synth->add_option("--model", cfg.model, "generating model")
      ->check(CLI::IsMember({"adiabatic", "nonadiabatic", "barrier"}));
  synth->add_option("--noise", cfg.noise, "Gaussian noise sigma, in the output time unit");
  plot_cmd->add_option("files", cfg.files, "curve or table CSV files");
  plot_cmd->add_option("--label", cfg.labels, "legend label, once per file");
  plot_cmd->add_option("--columns", cfg.columns, "table columns to draw")->delimiter(',');
  plot_cmd->add_option("--title", cfg.title, "chart title");
  plot_cmd->add_option("--width", cfg.width, "width in px");
  plot_cmd->add_option("--height", cfg.height, "height in px");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUserError;
  }

  for (const auto& s : shared) {
    if (s.f_max->count() > 0) cfg.f_max = f_max;
    if (s.units->count() > 0) cfg.time_unit_out = units::parse_time_unit(units_text);
  }
  cfg.grid_scale = grid_text == "linear" ? GridScale::linear : GridScale::log;
  cfg.basis = parse_fit_basis(basis_text);

  try {
    if (model->parsed()) return cmd_model(cfg, out);
    if (fit_cmd->parsed()) return cmd_fit(cfg, out);
    if (subtract->parsed()) return cmd_subtract(cfg, out);
    if (compare_cmd->parsed()) return cmd_compare(cfg, out);
    if (synth->parsed()) return cmd_synth(cfg, out);
    if (plot_cmd->parsed()) return cmd_plot(cfg, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIoError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return kExitUserError;
}

}  // namespace attoclock::cli
