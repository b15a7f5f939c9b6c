#ifndef QRAD_SCENARIO_HPP
#define QRAD_SCENARIO_HPP

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <fstream>
#include <future>
#include <iomanip>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "qrad/cavity.hpp"
#include "qrad/config.hpp"
#include "qrad/dielectric.hpp"
#include "qrad/frw.hpp"
#include "qrad/mirror.hpp"
#include "qrad/thermal.hpp"
#include "qrad/trajectory.hpp"
#include "qrad/units.hpp"

namespace qrad::scenario {

inline constexpr const char* kVersion = "1.0.0";

struct SpectrumRow {
  std::string mode;   // mode label (wavenumber, mode index, ...)
  double omega = 0.0;
  double dn_vacuum = 0.0;
  double dn_thermal = 0.0;
  double dn_total = 0.0;
};

struct ResultRecord {
  std::string scenario;
  double temperature = 0.0;  // 0 encodes the distinguished vacuum value
  std::vector<SpectrumRow> rows;
  std::vector<std::pair<std::string, double>> scalars;
  std::vector<std::string> warnings;
  double wall_seconds = 0.0;
  std::string version = kVersion;
};

namespace detail {

inline qrad::Temperature make_temperature(double t) {
  return t == 0.0 ? qrad::Temperature::zero()
                  : qrad::Temperature::from_temperature(t);
}

inline std::shared_ptr<const qrad::Trajectory> make_profile(
    const qrad::config::ScenarioConfig& cfg) {
  const double a = cfg.number("profile.amplitude", 1.0);
  const double tau = cfg.number("profile.tau", 1.0);
  if (cfg.word("profile.family", "gaussian") == "windowed-sine")
    return std::make_shared<qrad::WindowedSine>(
        a, cfg.number("profile.omega0", 5.0 / tau), tau);
  return std::make_shared<qrad::GaussianPulse>(a, tau);
}

// Enforces the emission invariant: every row must satisfy
// vacuum + thermal = total to within 1e-12 (relative to total).
inline void check_decomposition(const ResultRecord& rec) {
  for (const auto& row : rec.rows) {
    const double lhs = row.dn_vacuum + row.dn_thermal;
    const double scale = std::max(1.0, std::abs(row.dn_total));
    if (std::abs(lhs - row.dn_total) > 1e-12 * scale)
      throw std::runtime_error("vacuum + thermal != total for mode " +
                               row.mode);
  }
}

inline ResultRecord run_mirror(const qrad::config::ScenarioConfig& cfg,
                               qrad::Temperature temp) {
  auto traj = make_profile(cfg);
  const int nodes = static_cast<int>(cfg.number("numerics.grid_nodes", 400));
  auto grid = qrad::mirror::WavenumberGrid::log_spaced(*traj, nodes);
  ResultRecord rec;
  const auto spec = qrad::mirror::spectrum(*traj, temp, grid);
  for (const auto& pt : spec) {
    std::ostringstream label;
    label << "k=" << std::setprecision(12) << pt.k;
    rec.rows.push_back({label.str(), pt.k, pt.vacuum, pt.thermal, pt.total()});
  }
  const auto energy = qrad::mirror::energy_closed(*traj, temp);
  rec.scalars.emplace_back("energy_vacuum", energy.vacuum);
  rec.scalars.emplace_back("energy_thermal", energy.thermal);
  rec.scalars.emplace_back("energy_total", energy.vacuum + energy.thermal);
  const double ratio = qrad::mirror::perturbative_ratio(spec, temp);
  rec.scalars.emplace_back("perturbative_ratio", ratio);
  if (ratio > 0.1)
    rec.warnings.push_back(
        "mode occupation change exceeds 10% of the ambient occupation; "
        "second-order results may not be trustworthy");
  return rec;
}

inline ResultRecord run_cavity(const qrad::config::ScenarioConfig& cfg,
                               qrad::Temperature temp) {
  double edge = cfg.number("cavity.edge", 1.0);
  if (cfg.has("cavity.edge_cm"))
    edge = qrad::units::length_from_cm(cfg.number("cavity.edge_cm", 1.0));
  qrad::cavity::BoxGeometry geom{{edge, edge, edge}};
  qrad::cavity::require_unique_fundamental(qrad::cavity::box_modes(geom, 4));
  const double omega1 = geom.frequency(1, 1, 1);
  const double eps = cfg.number("cavity.epsilon", 1e-4);
  const double omega_ts = cfg.number("cavity.omega_ts", 1000.0);
  qrad::cavity::VibrationProfile profile{eps, omega1, omega_ts / omega1};

  ResultRecord rec;
  const auto rwa = qrad::cavity::rwa_photon_number(profile, temp);
  const double n1 = qrad::bose_occupation(omega1, temp);
  const double dn_vac = std::sinh(rwa.xi) * std::sinh(rwa.xi);
  const double dn_th = dn_vac * 2.0 * n1;
  rec.rows.push_back({"(1,1,1)", omega1, dn_vac, dn_th, dn_vac + dn_th});
  rec.scalars.emplace_back("xi", rwa.xi);
  rec.scalars.emplace_back("delta_n1", rwa.delta_n1);
  rec.scalars.emplace_back("thermal_factor", qrad::thermal_factor(omega1, temp));
  rec.scalars.emplace_back("energy_total", omega1 * rwa.delta_n1);
  const auto detect = qrad::cavity::detectability(rwa.delta_n1, omega1, temp);
  rec.scalars.emplace_back("detectability_ratio", detect.ratio);
  rec.scalars.emplace_back("vacuum_limited", detect.vacuum_limited ? 1.0 : 0.0);
  for (const auto& w : profile.warnings()) rec.warnings.push_back(w);
  for (const auto& w : rwa.warnings) rec.warnings.push_back(w);
  return rec;
}

inline ResultRecord run_dielectric_small(const qrad::config::ScenarioConfig& cfg,
                                         qrad::Temperature temp) {
  qrad::dielectric::SmallRProfile prof{
      make_profile(cfg), cfg.number("dielectric.theta0", 1e-3),
      cfg.number("dielectric.eps_inf", 2.0)};
  prof.validate();
  const auto energy = qrad::dielectric::smallR_energy(prof, temp);
  ResultRecord rec;
  rec.scalars.emplace_back("energy_vacuum", energy.vacuum);
  rec.scalars.emplace_back("energy_thermal", energy.thermal);
  rec.scalars.emplace_back("energy_total", energy.vacuum + energy.thermal);
  return rec;
}

inline ResultRecord run_dielectric_large(const qrad::config::ScenarioConfig& cfg,
                                         qrad::Temperature temp) {
  qrad::dielectric::LargeRModulation mod{
      cfg.number("dielectric.epsilon", 1e-3),
      cfg.number("dielectric.omega_drive", 1.0),
      cfg.number("dielectric.duration", 100.0),
      cfg.number("dielectric.eps_inf", 2.0)};
  const double w0 = cfg.number("grid.omega_min", 0.1 * mod.omega_drive);
  const double w1 = cfg.number("grid.omega_max", 2.0 * mod.omega_drive);
  const int count = static_cast<int>(cfg.number("grid.count", 200));
  std::vector<double> omegas(count);
  for (int i = 0; i < count; ++i)
    omegas[i] = w0 + (w1 - w0) * i / std::max(1, count - 1);
  ResultRecord rec;
  for (const auto& pt : qrad::dielectric::largeR_spectrum(mod, temp, omegas)) {
    std::ostringstream label;
    label << "omega=" << std::setprecision(12) << pt.omega;
    rec.rows.push_back({label.str(), pt.omega, pt.vacuum, pt.thermal,
                        pt.vacuum + pt.thermal});
  }
  return rec;
}

inline ResultRecord run_frw(const qrad::config::ScenarioConfig& cfg,
                            qrad::Temperature temp) {
  std::shared_ptr<qrad::frw::ScaleFactorProfile> prof;
  if (cfg.word("frw.family", "tanh") == "bump")
    prof = std::make_shared<qrad::frw::GaussianBump>(
        cfg.number("frw.omega_in", 1.0), cfg.number("frw.height", 0.5),
        cfg.number("frw.ramp_time", 1.0));
  else
    prof = std::make_shared<qrad::frw::TanhRamp>(
        cfg.number("frw.omega_in", 1.0), cfg.number("frw.omega_out", 2.0),
        cfg.number("frw.ramp_time", 1.0));
  const double w0 = cfg.number("grid.omega_min", 0.05);
  const double w1 = cfg.number("grid.omega_max", 5.0);
  const int count = static_cast<int>(cfg.number("grid.count", 40));
  std::vector<double> omegas(count);
  for (int i = 0; i < count; ++i)
    omegas[i] = w0 + (w1 - w0) * i / std::max(1, count - 1);
  ResultRecord rec;
  for (const auto& pt : qrad::frw::thermal_spectrum(*prof, omegas, temp)) {
    std::ostringstream label;
    label << "omega=" << std::setprecision(12) << pt.omega;
    const double vac = pt.beta_sq;
    const double th = pt.delta_n_thermal - vac;
    rec.rows.push_back({label.str(), pt.omega, vac, th, pt.delta_n_thermal});
  }
  return rec;
}

}  // namespace detail

// Runs one scenario at one temperature.
inline ResultRecord run_scenario(const qrad::config::ScenarioConfig& cfg,
                                 double temperature) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto temp = detail::make_temperature(temperature);
  ResultRecord rec;
  switch (cfg.kind) {
    case qrad::config::ScenarioKind::mirror:
      rec = detail::run_mirror(cfg, temp);
      break;
    case qrad::config::ScenarioKind::cavity:
      rec = detail::run_cavity(cfg, temp);
      break;
    case qrad::config::ScenarioKind::dielectric_small_r:
      rec = detail::run_dielectric_small(cfg, temp);
      break;
    case qrad::config::ScenarioKind::dielectric_large_r:
      rec = detail::run_dielectric_large(cfg, temp);
      break;
    case qrad::config::ScenarioKind::frw:
      rec = detail::run_frw(cfg, temp);
      break;
  }
  rec.scenario = qrad::config::to_string(cfg.kind);
  rec.temperature = temperature;
  for (const auto& w : cfg.warnings) rec.warnings.push_back(w);
  detail::check_decomposition(rec);
  rec.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return rec;
}

inline int worker_count() {
  if (const char* env = std::getenv("QRAD_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

// Runs the temperature sweep on a worker pool.  Results are assembled
// in temperature order regardless of completion order, so the output
// is deterministic.
inline std::vector<ResultRecord> run_sweep(
    const qrad::config::ScenarioConfig& cfg, int workers = 0) {
  std::vector<double> temps = cfg.list("temperature.T", {0.0});
  if (cfg.has("temperature.kelvin")) {
    temps.clear();
    for (double tk : cfg.list("temperature.kelvin", {}))
      temps.push_back(qrad::units::kelvin_to_angular_frequency(tk));
  }
  if (workers <= 0) workers = worker_count();
  workers = std::min<int>(workers, static_cast<int>(temps.size()));
  workers = std::max(workers, 1);

  std::vector<ResultRecord> out(temps.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> pool;
  std::mutex error_mutex;
  std::string first_error;
  for (int w = 0; w < workers; ++w) {
    pool.push_back(std::async(std::launch::async, [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= temps.size()) return;
        try {
          out[i] = run_scenario(cfg, temps[i]);
        } catch (const std::exception& e) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (first_error.empty()) first_error = e.what();
        }
      }
    }));
  }
  for (auto& f : pool) f.get();
  if (!first_error.empty()) throw std::runtime_error(first_error);
  return out;
}

// --- Output writers -------------------------------------------------
//
// All writers format with a fixed precision and locale-independent
// streams so repeated runs produce byte-identical files.

namespace detail {

inline std::string format_number(double x) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(15) << x;
  return os.str();
}

}  // namespace detail

inline std::string to_csv(const ResultRecord& rec) {
  std::ostringstream os;
  os << "mode,omega,dn_vacuum,dn_thermal,dn_total\n";
  for (const auto& row : rec.rows)
    os << row.mode << ',' << detail::format_number(row.omega) << ','
       << detail::format_number(row.dn_vacuum) << ','
       << detail::format_number(row.dn_thermal) << ','
       << detail::format_number(row.dn_total) << '\n';
  return os.str();
}

// Two-column "omega  dn_total" file ready for plotting tools.
inline std::string to_plot(const ResultRecord& rec) {
  std::ostringstream os;
  for (const auto& row : rec.rows)
    os << detail::format_number(row.omega) << ' '
       << detail::format_number(row.dn_total) << '\n';
  return os.str();
}

inline std::string to_json_summary(const std::vector<ResultRecord>& records) {
  std::ostringstream os;
  os << "{\n  \"version\": \"" << kVersion << "\",\n  \"records\": [\n";
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    os << "    {\n      \"scenario\": \"" << rec.scenario << "\",\n"
       << "      \"temperature\": " << detail::format_number(rec.temperature)
       << ",\n      \"rows\": " << rec.rows.size()
       << ",\n      \"wall_seconds\": "
       << detail::format_number(rec.wall_seconds) << ",\n      \"scalars\": {";
    for (std::size_t j = 0; j < rec.scalars.size(); ++j)
      os << (j ? ", " : "") << '"' << rec.scalars[j].first
         << "\": " << detail::format_number(rec.scalars[j].second);
    os << "},\n      \"warnings\": [";
    for (std::size_t j = 0; j < rec.warnings.size(); ++j)
      os << (j ? ", " : "") << '"' << rec.warnings[j] << '"';
    os << "]\n    }" << (i + 1 < records.size() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

inline void write_outputs(const std::vector<ResultRecord>& records,
                          const std::string& out_dir) {
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string stem =
        out_dir + "/" + records[i].scenario + "_T" + std::to_string(i);
    if (!records[i].rows.empty()) {
      std::ofstream(stem + ".csv") << to_csv(records[i]);
      std::ofstream(stem + ".dat") << to_plot(records[i]);
    }
  }
  std::ofstream(out_dir + "/summary.json") << to_json_summary(records);
}

}  // namespace qrad::scenario

#endif  // QRAD_SCENARIO_HPP
