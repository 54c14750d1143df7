#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qent/csv.hpp"
#include "qent/ed.hpp"
#include "qent/ising.hpp"
#include "qent/measures.hpp"
#include "qent/paradigm.hpp"
#include "qent/quadrature.hpp"

namespace qent {

namespace detail {

// Index-parallel map; results land at their own index so output never
// depends on scheduling. The lowest-index exception wins.
template <typename Fn>
void parallel_for(std::size_t count, int threads, Fn&& fn) {
  int n_threads = threads > 0
                      ? threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = std::min<int>(n_threads, static_cast<int>(std::max<std::size_t>(count, 1)));

  std::vector<std::exception_ptr> errors(count);
  if (n_threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

// Product ground states make measures vanish only up to quadrature
// round-off; snap those to the exact boundary.
inline double clamp_measure(double v) {
  if (v < 0.0 && v > -1e-12) return 0.0;
  if (v > 1.0 && v < 1.0 + 1e-12) return 1.0;
  return v;
}

}  // namespace detail

struct RefineWindow {
  double center = 1.0;
  double half_width = 0.1;
  double step = 1e-3;
};

struct SweepConfig {
  double lambda_min = 0.0;
  double lambda_max = 2.0;
  int steps = 401;
  std::optional<RefineWindow> refine = RefineWindow{};
  int l_max = 15;
  QuadratureSpec quad;
  std::string output_path = "sweep.csv";
  int threads = 0;  // 0 = hardware concurrency

  void validate() const {
    if (!(lambda_min < lambda_max)) {
      throw std::invalid_argument("sweep: need lambda_min < lambda_max");
    }
    if (lambda_min < 0.0) throw std::invalid_argument("sweep: lambda must be >= 0");
    if (steps < 2) throw std::invalid_argument("sweep: need steps >= 2");
    if (l_max < 1) throw std::invalid_argument("sweep: need l_max >= 1");
    if (refine && !(refine->step > 0.0 && refine->half_width > 0.0)) {
      throw std::invalid_argument("sweep: refine window must have positive extent");
    }
    quad.validate();
  }
};

// Per-lambda record of everything the sweep emits. For lambda > 1 the
// two-site values come from the p_xz = 0 table and bound the true
// measures from above; upper_bound marks those rows.
struct MeasureReport {
  double lambda;
  double eg1;
  std::vector<double> g2l;  // index l = 1..l_max
  double eg2;
  double sv;  // single-site von Neumann entropy, base 2
  bool upper_bound;
};

inline MeasureReport compute_measure_report(double lambda, int l_max,
                                            const QuadratureSpec& quad) {
  const IsingPoint point(lambda, l_max, quad);
  MeasureReport rep;
  rep.lambda = lambda;
  rep.upper_bound = lambda > 1.0;
  rep.eg1 = detail::clamp_measure(eg1_ising(point));
  rep.g2l.assign(static_cast<std::size_t>(l_max) + 1, 0.0);
  double sum = 0.0;
  for (int l = 1; l <= l_max; ++l) {
    if (!rep.upper_bound) two_site_rho(point, l);  // PSD gate, throws on failure
    const double g = detail::clamp_measure(g2l_ising(point, l));
    rep.g2l[static_cast<std::size_t>(l)] = g;
    sum += g;
  }
  rep.eg2 = detail::clamp_measure(sum / l_max);
  rep.sv = detail::clamp_measure(von_neumann_entropy(single_site_rho(point), 2));
  return rep;
}

// Coarse grid over [lambda_min, lambda_max]; inside the refine window the
// coarse points are replaced by the fine ones, so no near-duplicates occur.
inline std::vector<double> sweep_grid(const SweepConfig& config) {
  config.validate();
  const double span = config.lambda_max - config.lambda_min;
  double lo = 1.0, hi = 0.0;
  std::vector<double> grid;
  if (config.refine) {
    lo = config.refine->center - config.refine->half_width;
    hi = config.refine->center + config.refine->half_width;
    for (int j = 0;; ++j) {
      const double x = lo + j * config.refine->step;
      if (x > hi + 1e-15) break;
      if (x >= config.lambda_min && x <= config.lambda_max) grid.push_back(x);
    }
  }
  for (int i = 0; i < config.steps; ++i) {
    const double x = config.lambda_min + span * i / (config.steps - 1);
    if (!config.refine || x < lo - 1e-15 || x > hi + 1e-15) grid.push_back(x);
  }
  std::sort(grid.begin(), grid.end());
  return grid;
}

inline std::vector<MeasureReport> run_sweep(const SweepConfig& config) {
  const std::vector<double> grid = sweep_grid(config);
  std::vector<MeasureReport> rows(grid.size());
  detail::parallel_for(grid.size(), config.threads, [&](std::size_t i) {
    try {
      rows[i] = compute_measure_report(grid[i], config.l_max, config.quad);
    } catch (const std::exception& e) {
      throw std::runtime_error("sweep failed at lambda = " +
                               csv::fmt(grid[i]) + ": " + e.what());
    }
  });
  return rows;
}

inline csv::Writer sweep_csv(const std::vector<MeasureReport>& rows, int l_max) {
  std::vector<std::string> header = {"lambda", "eg1", "sv"};
  for (int l = 1; l <= l_max; ++l) header.push_back("g2_" + std::to_string(l));
  header.emplace_back("eg2");
  header.emplace_back("upper_bound");
  csv::Writer out(std::move(header));
  for (const auto& r : rows) {
    std::vector<std::string> f = {csv::fmt(r.lambda), csv::fmt(r.eg1), csv::fmt(r.sv)};
    for (int l = 1; l <= l_max; ++l) f.push_back(csv::fmt(r.g2l[static_cast<std::size_t>(l)]));
    f.push_back(csv::fmt(r.eg2));
    f.emplace_back(r.upper_bound ? "1" : "0");
    out.row(std::move(f));
  }
  return out;
}

struct Table1Row {
  ParadigmTag family;
  int n;
  MeasureTriple closed;
  MeasureTriple state;
  double max_abs_diff;
};

inline std::vector<Table1Row> run_table1(const std::vector<int>& n_list) {
  std::vector<Table1Row> rows;
  for (const ParadigmTag tag : {ParadigmTag::GHZ, ParadigmTag::EPR, ParadigmTag::W}) {
    for (int n : n_list) {
      if (tag == ParadigmTag::EPR && n % 2 != 0) continue;
      const ParadigmFamily family(tag, n);
      const StateVector psi = build_state(family);
      const MeasureTriple closed = closed_form(family);
      const MeasureTriple state{meyer_wallach(psi), g2_of_state(psi, 1),
                                eg2_of_state(psi)};
      const double diff = std::max({std::abs(closed.eg1 - state.eg1),
                                    std::abs(closed.g21 - state.g21),
                                    std::abs(closed.eg2 - state.eg2)});
      rows.push_back({tag, n, closed, state, diff});
    }
  }
  return rows;
}

inline csv::Writer table1_csv(const std::vector<Table1Row>& rows) {
  csv::Writer out({"family", "n", "eg1_closed", "g21_closed", "eg2_closed",
                   "eg1_state", "g21_state", "eg2_state", "max_abs_diff"});
  for (const auto& r : rows) {
    out.row({to_string(r.family), csv::fmt(r.n), csv::fmt(r.closed.eg1),
             csv::fmt(r.closed.g21), csv::fmt(r.closed.eg2), csv::fmt(r.state.eg1),
             csv::fmt(r.state.g21), csv::fmt(r.state.eg2), csv::fmt(r.max_abs_diff)});
  }
  return out;
}

struct GlProfileRow {
  int l;
  double g2l;
};

inline std::vector<GlProfileRow> run_gl_profile(double lambda,
                                                const std::vector<int>& l_list,
                                                const QuadratureSpec& quad) {
  if (l_list.empty()) throw std::invalid_argument("gl profile: empty l list");
  for (std::size_t i = 0; i + 1 < l_list.size(); ++i) {
    if (l_list[i] >= l_list[i + 1]) {
      throw std::invalid_argument("gl profile: l list must be sorted ascending");
    }
  }
  if (l_list.front() < 1) throw std::invalid_argument("gl profile: l must be >= 1");
  const IsingPoint point(lambda, l_list.back(), quad);
  std::vector<GlProfileRow> rows;
  rows.reserve(l_list.size());
  for (int l : l_list) {
    rows.push_back({l, detail::clamp_measure(g2l_ising(point, l))});
  }
  return rows;
}

inline csv::Writer gl_csv(const std::vector<GlProfileRow>& rows) {
  csv::Writer out({"l", "g2l"});
  for (const auto& r : rows) out.row({csv::fmt(r.l), csv::fmt(r.g2l)});
  return out;
}

// Long-format comparison harness: one row per (kind, N, lambda, observable).
// kind "point" rows hold finite-N ED values; kind "extrap" rows hold the
// Richardson extrapolation over the N list. Correlator and sz differences
// compare magnitudes (see the sign-convention note in ed.hpp).
struct OracleCompareRow {
  std::string kind;
  int n;  // 0 on extrap rows
  double lambda;
  std::string status;
  std::string observable;
  double ed_value;
  double analytic_value;
  double abs_diff;
};

inline std::vector<OracleCompareRow> run_oracle_compare(
    const std::vector<int>& n_list, const std::vector<double>& lambda_list,
    int l_max, const QuadratureSpec& quad, bool allow_lambda_above_one = false,
    int threads = 0) {
  if (n_list.size() < 3) {
    throw std::invalid_argument("oracle compare: need >= 3 chain sizes");
  }
  for (int n : n_list) {
    if (l_max > n - 1) {
      throw std::invalid_argument("oracle compare: l_max too large for N = " +
                                  std::to_string(n));
    }
  }
  for (double lam : lambda_list) {
    if (lam > 1.0 && !allow_lambda_above_one) {
      throw std::invalid_argument(
          "oracle compare: lambda > 1 needs the explicit override (finite "
          "rings have symmetric ground states there; see README)");
    }
  }

  struct PerLambda {
    IsingPoint point;
    std::vector<OracleReport> reports;
  };
  std::vector<std::optional<PerLambda>> work(lambda_list.size());
  detail::parallel_for(lambda_list.size(), threads, [&](std::size_t i) {
    PerLambda w{IsingPoint(lambda_list[i], l_max, quad), {}};
    w.reports.reserve(n_list.size());
    for (int n : n_list) w.reports.push_back(oracle_measures(ChainSpec(n, lambda_list[i]), l_max));
    work[i] = std::move(w);
  });

  std::vector<OracleCompareRow> rows;
  for (std::size_t i = 0; i < lambda_list.size(); ++i) {
    const double lam = lambda_list[i];
    const auto& point = work[i]->point;
    const auto& reports = work[i]->reports;
    const bool degenerate =
        std::any_of(reports.begin(), reports.end(),
                    [](const OracleReport& r) { return r.gap < 1e-6; });
    const std::string status = degenerate ? "skipped_degenerate" : "ok";

    const double ana_eg1 = eg1_ising(point);
    const double ana_g21 = g2l_ising(point, 1);
    const double ana_eg2 = eg2_ising(point, l_max);

    auto emit = [&](const std::string& kind, int n, const std::string& name,
                    double ed, double ana, bool magnitude) {
      const double diff = magnitude ? std::abs(std::abs(ed) - std::abs(ana))
                                    : std::abs(ed - ana);
      rows.push_back({kind, n, lam, status, name, ed,
                      degenerate ? std::nan("") : ana,
                      degenerate ? std::nan("") : diff});
    };

    for (std::size_t k = 0; k < reports.size(); ++k) {
      const auto& rep = reports[k];
      const std::string kind = "point";
      emit(kind, rep.n_qubits, "eg1", rep.eg1, ana_eg1, false);
      emit(kind, rep.n_qubits, "g21", rep.g2l[1], ana_g21, false);
      emit(kind, rep.n_qubits, "eg2", rep.eg2, ana_eg2, false);
      emit(kind, rep.n_qubits, "sz", rep.correlators.sz, point.sz_mean(), true);
      for (int l = 1; l <= l_max; ++l) {
        const auto sl = static_cast<std::size_t>(l);
        emit(kind, rep.n_qubits, "xx" + std::to_string(l), rep.correlators.xx[sl],
             point.xx(l), true);
        emit(kind, rep.n_qubits, "yy" + std::to_string(l), rep.correlators.yy[sl],
             point.yy(l), true);
        emit(kind, rep.n_qubits, "zz" + std::to_string(l), rep.correlators.zz[sl],
             point.zz(l), true);
      }
    }

    auto extrap_of = [&](auto&& get) {
      std::vector<std::pair<int, double>> by_n;
      for (const auto& rep : reports) by_n.emplace_back(rep.n_qubits, get(rep));
      return extrapolate(by_n).value;
    };
    emit("extrap", 0, "eg1", extrap_of([](const OracleReport& r) { return r.eg1; }),
         ana_eg1, false);
    emit("extrap", 0, "sz",
         extrap_of([](const OracleReport& r) { return r.correlators.sz; }),
         point.sz_mean(), true);
    for (int l = 1; l <= l_max; ++l) {
      const auto sl = static_cast<std::size_t>(l);
      emit("extrap", 0, "xx" + std::to_string(l),
           extrap_of([sl](const OracleReport& r) { return r.correlators.xx[sl]; }),
           point.xx(l), true);
      emit("extrap", 0, "yy" + std::to_string(l),
           extrap_of([sl](const OracleReport& r) { return r.correlators.yy[sl]; }),
           point.yy(l), true);
      emit("extrap", 0, "zz" + std::to_string(l),
           extrap_of([sl](const OracleReport& r) { return r.correlators.zz[sl]; }),
           point.zz(l), true);
    }
  }
  return rows;
}

inline csv::Writer oracle_csv(const std::vector<OracleCompareRow>& rows) {
  csv::Writer out({"kind", "n", "lambda", "status", "observable", "ed_value",
                   "analytic_value", "abs_diff"});
  for (const auto& r : rows) {
    out.row({r.kind, r.n > 0 ? csv::fmt(r.n) : std::string{}, csv::fmt(r.lambda),
             r.status, r.observable, csv::fmt(r.ed_value),
             std::isnan(r.analytic_value) ? std::string{} : csv::fmt(r.analytic_value),
             std::isnan(r.abs_diff) ? std::string{} : csv::fmt(r.abs_diff)});
  }
  return out;
}

}  // namespace qent
