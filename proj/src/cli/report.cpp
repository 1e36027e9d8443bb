#include "dicke/cli.hpp"

#include "dicke/elimination.hpp"
#include "dicke/flow.hpp"
#include "dicke/spectra.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <variant>

namespace dicke::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

struct Empty {};
using Cell = std::variant<Empty, double, long, std::string, bool>;

/// Report table: fixed column order, optional footer summary fields.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return "";
        } else if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, long>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return v;
        }
      },
      c);
}

ordered_json cell_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Empty>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

std::string render_csv(const Table& t) {
  std::string out;
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) out += ',';
    out += t.columns[i];
  }
  out += '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_cell(row[i]);
    }
    out += '\n';
  }
  if (!t.summary.empty()) {
    out += "# ";
    for (std::size_t i = 0; i < t.summary.size(); ++i) {
      if (i) out += ',';
      out += t.summary[i].first + "=" + format_cell(t.summary[i].second);
    }
    out += '\n';
  }
  return out;
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["command"] = to_string(c.command);
  j["params"] = {{"omega0", c.params.omega0}, {"omega1", c.params.omega1}, {"g", c.params.g}};
  j["space"] = {{"two_s", c.two_s}, {"n_max", c.n_max}};
  if (c.sweep) {
    j["sweep"] = {{"delta_min", c.sweep->delta_min},
                  {"delta_max", c.sweep->delta_max},
                  {"points", c.sweep->points},
                  {"spacing", to_string(c.sweep->spacing)}};
  }
  j["q_max"] = c.q_max;
  j["variant"] = to_string(c.variant);
  j["tolerances"] = {{"tol_gap", c.tolerances.tol_gap},
                     {"tol_offdiag", c.tolerances.tol_offdiag}};
  j["output"] = {{"path", c.output.path}, {"format", to_string(c.output.format)}};
  return j;
}

std::string render_json(const RunConfig& c, const Table& t) {
  ordered_json root;
  root["meta"]["command"] = to_string(c.command);
  root["meta"]["version"] = kVersion;
  root["meta"]["config"] = config_json(c);
  ordered_json summary = ordered_json::object();
  for (const auto& [k, v] : t.summary) summary[k] = cell_json(v);
  root["meta"]["summary"] = summary;
  ordered_json records = ordered_json::array();
  for (const auto& row : t.rows) {
    ordered_json r = ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = cell_json(row[i]);
    records.push_back(std::move(r));
  }
  root["records"] = std::move(records);
  return root.dump(2) + "\n";
}

void append_spectrum_rows(Table& t, const SpectrumReport& report) {
  for (const auto& block : report.per_block) {
    for (std::size_t i = 0; i < block.eigs_a.size(); ++i) {
      t.rows.push_back({static_cast<long>(block.q), block.eigs_a[i], block.eigs_b[i],
                        std::abs(block.eigs_a[i] - block.eigs_b[i])});
    }
  }
}

Table run_eliminate(const RunConfig& c) {
  const SpaceSpec space = c.space();
  const Operator full = dicke_hamiltonian(c.params, space);
  const auto eff = effective_hamiltonian(c.params, space, c.tolerances.tol_gap);
  const SpectrumReport report = compare_spectra(full, eff.hamiltonian, c.q_max);
  Table t{{"q", "eig_exact", "eig_effective", "abs_err"}, {}, {}};
  append_spectrum_rows(t, report);
  t.summary = {{"residual_max", eff.report.residual_max},
               {"zeroed_entries", eff.report.zeroed_entries},
               {"min_gap_used", eff.report.min_gap_used},
               {"max_abs_err", report.global_max_abs_err},
               {"rmse", report.global_rmse}};
  return t;
}

Table run_compare(const RunConfig& c) {
  const SpaceSpec space = c.space();
  const Operator full = dicke_hamiltonian(c.params, space);
  const Operator eff = effective_closed_form(c.params, space, c.variant);
  const SpectrumReport report = compare_spectra(full, eff, c.q_max);
  Table t{{"q", "eig_exact", "eig_effective", "abs_err"}, {}, {}};
  append_spectrum_rows(t, report);
  return t;
}

Table run_variants(const RunConfig& c) {
  const SpaceSpec space = c.space();
  const Operator full = dicke_hamiltonian(c.params, space);
  Table t{{"variant", "commutator_with_n", "max_abs_err"}, {}, {}};
  for (const VariantId id : kAllVariants) {
    const Operator h = effective_closed_form(c.params, space, id);
    const double comm = excitation_commutator_norm(h);
    Cell err = Empty{};
    if (comm <= 1e-12 * h.max_abs()) {
      err = compare_spectra(full, h, c.q_max).global_max_abs_err;
    }
    t.rows.push_back({std::string(to_string(id)), comm, err});
  }
  t.summary = {{"discrete_coefficient", discrete_coefficient(c.params)}};
  return t;
}

Table run_flow(const RunConfig& c) {
  const SpaceSpec space = c.space();
  const Operator full = dicke_hamiltonian(c.params, space);
  FlowOptions opts;
  opts.tol_offdiag = c.tolerances.tol_offdiag;
  Table t{{"q", "eig_flow", "eig_exact", "abs_err"}, {}, {}};
  bool converged = true;
  long steps = 0;
  double worst = 0.0;
  for (const Block& b : block_decompose(full).blocks) {
    if (b.q > c.q_max) break;
    const FlowResult r = integrate_flow(b.submatrix, opts);
    converged = converged && r.converged;
    steps += r.steps;
    const Eigen::VectorXd d = r.final.h.diagonal();
    std::vector<double> flowed(d.data(), d.data() + d.size());
    std::sort(flowed.begin(), flowed.end());
    const std::vector<double> exact = eigenvalues_sym(b.submatrix);
    for (std::size_t i = 0; i < exact.size(); ++i) {
      const double err = std::abs(flowed[i] - exact[i]);
      worst = std::max(worst, err);
      t.rows.push_back({static_cast<long>(b.q), flowed[i], exact[i], err});
    }
  }
  t.summary = {{"converged", converged}, {"steps", steps}, {"max_abs_err", worst}};
  return t;
}

Table run_sweep(const RunConfig& c) {
  const SpaceSpec space = c.space();
  const SweepResult sweep = detuning_sweep(c.params, sweep_deltas(*c.sweep), space, c.q_max);
  Table t{{"delta", "g", "omega0", "two_s", "n_max", "q_max", "max_abs_err", "rmse"}, {}, {}};
  for (const SweepRecord& r : sweep.records) {
    t.rows.push_back({r.delta, c.params.g, c.params.omega0, static_cast<long>(c.two_s),
                      static_cast<long>(c.n_max), static_cast<long>(c.q_max),
                      r.global_max_abs_err, r.global_rmse});
  }
  t.summary = {{"slope", sweep.slope ? Cell{*sweep.slope} : Cell{std::nan("")}}};
  return t;
}

}  // namespace

std::string render_report(const RunConfig& config) {
  Table t;
  switch (config.command) {
    case Command::Eliminate:
      t = run_eliminate(config);
      break;
    case Command::Variants:
      t = run_variants(config);
      break;
    case Command::Flow:
      t = run_flow(config);
      break;
    case Command::Compare:
      t = run_compare(config);
      break;
    case Command::Sweep:
      t = run_sweep(config);
      break;
  }
  return config.output.format == Format::Json ? render_json(config, t) : render_csv(t);
}

std::string error_record(std::string_view kind, std::string_view message) {
  ordered_json j;
  j["error"] = kind;
  j["message"] = message;
  return j.dump();
}

int exit_code_for(const Error& e) noexcept {
  return dynamic_cast<const PhysicsError*>(&e) != nullptr ? 2 : 1;
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::string text;
  try {
    text = render_report(config);
  } catch (const Error& e) {
    err << error_record(e.kind(), e.what()) << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << error_record("InternalError", e.what()) << '\n';
    return 1;
  }

  if (config.output.path.empty()) {
    out << text;
    out.flush();
    return out ? 0 : 1;
  }
  std::ofstream file(config.output.path, std::ios::binary | std::ios::trunc);
  file << text;
  file.close();
  if (!file) {
    err << error_record("IoError", "cannot write report to '" + config.output.path + "'") << '\n';
    return 1;
  }
  return 0;
}

}  // namespace dicke::cli
