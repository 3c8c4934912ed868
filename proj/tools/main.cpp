#include "cli_support.hpp"

#include "qsub/bounds.hpp"
#include "qsub/contcode.hpp"
#include "qsub/decoupling.hpp"
#include "qsub/io.hpp"
#include "qsub/parallel.hpp"
#include "qsub/selftest.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

using namespace qsub;
using cli::format_number;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string out;
  std::string format = "csv";
  std::uint64_t seed = 20240917;
};

// Either a CSV table or a JSON array, filled in grid order.
struct Output {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> csv_rows;
  Json json_rows = Json::array();
  bool all_pass = true;
};

std::vector<double> values_of(const std::string& flag, const std::string& spec) {
  try {
    return cli::parse_values(spec);
  } catch (const std::invalid_argument& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

void emit(const Common& common, const std::string& text) {
  if (common.out.empty() || common.out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + common.out);
  f << text;
}

void emit_table(const Common& common, const Output& out) {
  if (common.format == "json") {
    emit(common, out.json_rows.dump(2) + "\n");
    return;
  }
  cli::CsvTable table(out.header);
  for (const auto& r : out.csv_rows) table.add_row(r);
  emit(common, table.str());
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// Evaluates `cell` on every (t, r) pair on the worker pool; rows come out in
// grid order (t outer, r inner).
template <typename Cell>
Output grid_run(const std::vector<double>& ts, const std::vector<double>& rs, std::vector<std::string> header,
                Cell cell) {
  const std::size_t n = ts.size() * rs.size();
  std::vector<std::pair<std::vector<std::string>, Json>> rows(n);
  std::vector<char> passes(n, 1);
  parallel_for(n, [&](std::size_t i) {
    const double t = ts[i / rs.size()], r = rs[i % rs.size()];
    bool pass = true;
    rows[i] = cell(t, r, pass);
    passes[i] = pass;
  });
  Output out;
  out.header = std::move(header);
  for (std::size_t i = 0; i < n; ++i) {
    out.csv_rows.push_back(std::move(rows[i].first));
    out.json_rows.push_back(std::move(rows[i].second));
    out.all_pass = out.all_pass && passes[i];
  }
  return out;
}

DensityMatrix reference_state(Index d, double p) {
  RealVector v = RealVector::Constant(d, d > 1 ? (1.0 - p) / static_cast<double>(d - 1) : 1.0);
  v(0) = p;
  return DensityMatrix::diagonal(v);
}

QuantumChannel make_channel(const std::string& family, double param, Index d, Index n_kraus, Rng& rng) {
  if (family == "depolarizing") return QuantumChannel::depolarizing(param, d);
  if (family == "completely-depolarizing") return QuantumChannel::completely_depolarizing(d);
  if (family == "amplitude-damping") {
    if (d != 2) throw UsageError("--channel amplitude-damping needs --d 2");
    return QuantumChannel::amplitude_damping(param);
  }
  if (family == "unitary") return QuantumChannel::unitary(haar_unitary(d, rng));
  if (family == "random") return QuantumChannel::random(d, d, n_kraus, rng);
  throw UsageError("unknown channel family " + family);
}

DensityMatrix make_probe(const std::string& kind, Index d_ref, Index d_in, Rng& rng) {
  if (kind == "omega") {
    if (d_ref != d_in) throw UsageError("--probe omega needs --reference-dim equal to --input-dim");
    return DensityMatrix::max_entangled(d_in);
  }
  if (kind == "random-pure") return DensityMatrix(PureState::random(d_ref * d_in, rng));
  if (kind == "random-mixed") return DensityMatrix::random(d_ref * d_in, rng);
  throw UsageError("unknown probe " + kind);
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> subcommands{"depolarizing-bounds", "five-qubit-continuous", "classical-repetition",
                                             "decoupling-mc",       "f-surface",             "entropy-checks",
                                             "selftest"};

  // --config is expanded into ordinary flags before CLI11 sees them.
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        args.erase(args.begin() + i, args.begin() + i + 2);
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        args.erase(args.begin() + i);
      } else {
        continue;
      }
      std::ifstream f(path);
      if (!f) throw UsageError("cannot read config " + path);
      args = cli::merge_config(Json::parse(f), args, subcommands);
      break;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  CLI::App app{"Continuous-time quantum coding experiments"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  Common common;
  bool selftest_flag = false;
  std::string config_unused;
  app.add_option("--config", config_unused, "JSON object whose keys mirror the flags");
  app.add_option("--out", common.out, "Output file (default stdout)");
  app.add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--seed", common.seed, "Seed for stochastic subcommands");
  app.add_flag("--selftest", selftest_flag, "Run the acceptance suite");

  std::string t_spec, r_spec = "1";
  Index d = 2, k_max = 256, n_samples = 200, n_kraus = 2, input_dim = 0, reference_dim = 0;
  std::optional<double> p_opt;
  double c = 1.0;
  std::string family = "depolarizing", param_spec = "0.5", probe_kind = "omega", channel_file;

  auto* bounds = app.add_subcommand("depolarizing-bounds", "Upper and lower bounds for depolarizing generators");
  bounds->add_option("--r", r_spec, "Rates (list or start:stop:step)");
  bounds->add_option("--t", t_spec, "Times (list or start:stop:step)")->required();
  bounds->add_option("--d", d, "Dimension")->check(CLI::Range(2, 8));
  bounds->add_option("--p", p_opt, "Largest eigenvalue of the fixed point (default 1/d)")->check(CLI::Range(0.0, 1.0));
  bounds->add_option("--k-max", k_max, "Subdivisions scanned by the lower bound")->check(CLI::Range(1, 100000));
  bounds->add_option("--c", c, "Typical-subspace constant of the lower bound")->check(CLI::PositiveNumber);

  auto* five = app.add_subcommand("five-qubit-continuous", "Five-qubit code with continuous recovery");
  five->add_option("--t", t_spec, "Times")->required();
  five->add_option("--r", r_spec, "Recovery rates")->required();

  auto* classical = app.add_subcommand("classical-repetition", "Three-bit repetition code with continuous recovery");
  classical->add_option("--t", t_spec, "Times")->required();
  classical->add_option("--r", r_spec, "Recovery rates")->required();

  auto* surface = app.add_subcommand("f-surface", "Recovery lower bound f(t, r) on a grid");
  surface->add_option("--t", t_spec, "Times")->required();
  surface->add_option("--r", r_spec, "Rates")->required();

  auto* dmc = app.add_subcommand("decoupling-mc", "Monte-Carlo decoupling runs");
  dmc->add_option("--channel", family, "Channel family")
      ->check(CLI::IsMember({"depolarizing", "amplitude-damping", "completely-depolarizing", "unitary", "random"}));
  dmc->add_option("--channel-file", channel_file, "Channel JSON {d_in, d_out, kraus}; overrides --channel");
  dmc->add_option("--param", param_spec, "λ or γ values");
  dmc->add_option("--d", d, "Channel input dimension")->check(CLI::Range(2, 8));
  dmc->add_option("--kraus", n_kraus, "Kraus operators of random channels")->check(CLI::Range(1, 64));
  dmc->add_option("--input-dim", input_dim, "Encoded system dimension (default d)")->check(CLI::Range(1, 8));
  dmc->add_option("--reference-dim", reference_dim, "Reference dimension (default input dim)")->check(CLI::Range(1, 8));
  dmc->add_option("--probe", probe_kind, "Probe state")->check(CLI::IsMember({"omega", "random-pure", "random-mixed"}));
  dmc->add_option("--n", n_samples, "Haar samples per run")->check(CLI::Range(1, 1000000));

  auto* entropy = app.add_subcommand("entropy-checks", "Entropy inequalities and min-entropy values");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    worker_count();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*bounds) {
      const auto ts = values_of("--t", t_spec);
      const auto rs = values_of("--r", r_spec);
      const double p = p_opt.value_or(1.0 / static_cast<double>(d));
      if (p < 1.0 / static_cast<double>(d) - 1e-12) throw UsageError("--p must be at least 1/d");
      const auto rho0 = reference_state(d, p);
      const bool has_lower = p > 1.0 / static_cast<double>(d) + 1e-12;
      auto out = grid_run(ts, rs, {"r", "t", "d", "p", "upper", "lower"}, [&](double t, double r, bool&) {
        const double upper = unitary_upper_bound_depolarizing(r, t, rho0, d).value;
        std::optional<double> lower;
        if (has_lower) lower = lower_bound_fixed_point(depolarizing_liouvillian(r, rho0), t, rho0, k_max, c).value;
        Json j{{"r", r}, {"t", t}, {"d", d}, {"p", p}, {"upper", upper}};
        j["lower"] = lower ? Json(*lower) : Json(nullptr);
        return std::make_pair(std::vector<std::string>{format_number(r), format_number(t), std::to_string(d),
                                                       format_number(p), format_number(upper),
                                                       lower ? format_number(*lower) : ""},
                              j);
      });
      // Rows ordered by r, then t.
      std::vector<std::size_t> order(out.csv_rows.size());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = (i % rs.size()) * ts.size() + i / rs.size();
      Output sorted;
      sorted.header = out.header;
      sorted.csv_rows.resize(order.size());
      std::vector<Json> js(order.size());
      for (std::size_t i = 0; i < order.size(); ++i) {
        sorted.csv_rows[order[i]] = out.csv_rows[i];
        js[order[i]] = out.json_rows[i];
      }
      for (auto& j : js) sorted.json_rows.push_back(std::move(j));
      emit_table(common, sorted);
      return 0;
    }

    if (*five) {
      const auto code = five_qubit_code();
      const auto out = grid_run(values_of("--t", t_spec), values_of("--r", r_spec),
                                {"t", "r", "fidelity", "f_bound", "pass"}, [&](double t, double r, bool& pass) {
                                  const auto a = alpha_lower_bound_check(code, t, r);
                                  pass = a.pass;
                                  return std::make_pair(
                                      std::vector<std::string>{format_number(t), format_number(r), format_number(a.fidelity),
                                                               format_number(a.f_bound), bool_text(a.pass)},
                                      Json{{"t", t}, {"r", r}, {"fidelity", a.fidelity}, {"f_bound", a.f_bound}, {"pass", a.pass}});
                                });
      emit_table(common, out);
      return out.all_pass ? 0 : 1;
    }

    if (*classical) {
      const auto out = grid_run(values_of("--t", t_spec), values_of("--r", r_spec),
                                {"t", "r", "tv_distance", "f_bound", "pass"}, [&](double t, double r, bool& pass) {
                                  const auto a = classical_alpha_check(t, r);
                                  pass = a.pass;
                                  return std::make_pair(
                                      std::vector<std::string>{format_number(t), format_number(r), format_number(a.tv_distance),
                                                               format_number(a.f_bound), bool_text(a.pass)},
                                      Json{{"t", t}, {"r", r}, {"tv_distance", a.tv_distance}, {"f_bound", a.f_bound}, {"pass", a.pass}});
                                });
      emit_table(common, out);
      return out.all_pass ? 0 : 1;
    }

    if (*surface) {
      const auto out = grid_run(values_of("--t", t_spec), values_of("--r", r_spec), {"t", "r", "f"},
                                [&](double t, double r, bool&) {
                                  const double f = f_closed_form(t, r);
                                  return std::make_pair(
                                      std::vector<std::string>{format_number(t), format_number(r), format_number(f)},
                                      Json{{"t", t}, {"r", r}, {"f", f}});
                                });
      emit_table(common, out);
      return 0;
    }

    if (*dmc) {
      const bool from_file = !channel_file.empty();
      std::optional<QuantumChannel> file_channel;
      if (from_file) {
        std::ifstream f(channel_file);
        if (!f) throw UsageError("cannot read " + channel_file);
        file_channel = channel_from_json(Json::parse(f));
        d = file_channel->d_in();
      }
      const std::vector<double> params = from_file ? std::vector<double>{0.0} : values_of("--param", param_spec);
      const Index d_in = input_dim ? input_dim : d;
      const Index d_ref = reference_dim ? reference_dim : d_in;
      if (d_in > d) throw UsageError("--input-dim exceeds the channel dimension");

      const Rng root(common.seed);
      Output out;
      out.header = {"channel", "param", "n", "mean", "standard_error", "min", "max", "bound", "pass"};
      Json runs = Json::array();
      for (std::size_t i = 0; i < params.size(); ++i) {
        Rng build = root.substream(2 * i);
        const QuantumChannel ch = from_file ? *file_channel : make_channel(family, params[i], d, n_kraus, build);
        const Isometry v(d_in == d ? Matrix(Matrix::Identity(d, d)) : haar_isometry(d_in, d, build));
        const auto probe = make_probe(probe_kind, d_ref, d_in, build);
        const std::string name = from_file ? channel_file : family;
        const auto run = decoupling_experiment(ch, probe, v, n_samples, root.substream(2 * i + 1), name);
        const auto check = decoupling_bound_check(run, probe, ch);
        out.all_pass = out.all_pass && check.pass;
        Json j = decoupling_run_to_json(run);
        j["param"] = params[i];
        j["probe"] = probe_kind;
        j["seed"] = common.seed;
        j["pass"] = check.pass;
        runs.push_back(std::move(j));
        out.csv_rows.push_back({name, format_number(params[i]), std::to_string(n_samples), format_number(run.mean),
                                format_number(run.standard_error()), format_number(run.min), format_number(run.max),
                                format_number(check.rhs), bool_text(check.pass)});
      }
      out.json_rows = std::move(runs);
      emit_table(common, out);
      return out.all_pass ? 0 : 1;
    }

    SelftestOptions opts;
    opts.seed = common.seed;

    if (*entropy) {
      const auto growth = run_criterion(7, opts);
      const auto minent = run_criterion(8, opts);
      const auto& g = growth.details;
      const auto& m = minent.details;
      struct Row {
        std::string check;
        double value;
        double threshold;
        bool pass;
      };
      const std::vector<Row> rows{
          {"growth_min_margin", g["growth_min_margin"], -1e-9, g["growth_min_margin"].get<double>() >= -1e-9},
          {"fannes_audenaert_violations", g["fannes_audenaert_violations"].get<double>(), 0.0,
           g["fannes_audenaert_violations"].get<int>() == 0},
          {"holevo_min_margin", g["holevo_min_margin"], -1e-9, g["holevo_min_margin"].get<double>() >= -1e-9},
          {"min_entropy_product_error", m["product_max_error"], 1e-6, m["product_max_error"].get<double>() <= 1e-6},
          {"min_entropy_mixed_error", m["maximally_mixed_max_error"], 1e-6,
           m["maximally_mixed_max_error"].get<double>() <= 1e-6},
          {"min_entropy_entangled_error", m["maximally_entangled_max_error"], 1e-6,
           m["maximally_entangled_max_error"].get<double>() <= 1e-6}};
      Output out;
      out.header = {"check", "value", "threshold", "pass"};
      for (const auto& r : rows) {
        out.csv_rows.push_back({r.check, format_number(r.value), format_number(r.threshold), bool_text(r.pass)});
        out.json_rows.push_back({{"check", r.check}, {"value", r.value}, {"threshold", r.threshold}, {"pass", r.pass}});
        out.all_pass = out.all_pass && r.pass;
      }
      emit_table(common, out);
      return out.all_pass ? 0 : 1;
    }

    if (*selftest || selftest_flag) {
      const auto results = run_selftest(opts, [](const CriterionResult& r) { std::cerr << summary_line(r) << std::endl; });
      const Json artifact = selftest_artifact(opts, results);
      if (common.format == "json") {
        emit(common, artifact.dump(2) + "\n");
      } else {
        cli::CsvTable table({"id", "name", "pass"});
        for (const auto& r : results) table.add_row({std::to_string(r.id), r.name, bool_text(r.pass)});
        emit(common, table.str());
      }
      return artifact["pass"].get<bool>() ? 0 : 1;
    }

    std::cerr << app.help();
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
