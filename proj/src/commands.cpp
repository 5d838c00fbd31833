#include "nhll/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nhll/hofstadter.hpp"
#include "nhll/landau.hpp"
#include "nhll/semiclassics.hpp"
#include "nhll/spectrum.hpp"
#include "nhll/wavepacket.hpp"

namespace nhll {

namespace fs = std::filesystem;

namespace {

constexpr Complex kI(0.0, 1.0);

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

std::string file_name(const std::string& stem, std::initializer_list<long long> parts) {
  std::ostringstream s;
  s << stem;
  for (long long p : parts) s << '_' << p;
  s << ".csv";
  return s.str();
}

void write_state(const fs::path& path, const json& cfg, const LatticeSpec& lattice, const Eigen::VectorXcd& v) {
  const Eigen::VectorXcd u = v.normalized();
  CsvWriter csv(path, cfg, {"x", "y", "abs2", "re", "im"});
  for (Index i = 0; i < lattice.size(); ++i) {
    const Eigen::Vector2d r = site_coordinates(lattice, i);
    csv << r.x() << r.y() << std::norm(u(i)) << u(i).real() << u(i).imag();
    csv.end_row();
  }
}

void write_continuum_state(const fs::path& path, const json& cfg, const FieldConfig& field,
                           const LatticeSpec& lattice, QuantumNumbers qn) {
  const Eigen::VectorXcd v = sample_on_lattice(build_right_wavefunction(field, qn.n, qn.m), lattice).normalized();
  CsvWriter csv(path, cfg, {"x", "y", "re", "im"});
  for (Index i = 0; i < lattice.size(); ++i) {
    const Eigen::Vector2d r = site_coordinates(lattice, i);
    csv << r.x() << r.y() << v(i).real() << v(i).imag();
    csv.end_row();
  }
}

// Im(lambda) non-decreasing when the members are ordered by angular momentum.
bool im_monotone_in_ang_mom(const SpectrumResult& spec, const std::vector<Index>& members, double tol) {
  std::vector<Index> sorted = members;
  std::sort(sorted.begin(), sorted.end(), [&](Index a, Index b) { return spec.ang_mom(a) < spec.ang_mom(b); });
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (spec.eigenvalues(sorted[k]).imag() < spec.eigenvalues(sorted[k - 1]).imag() - tol) return false;
  return true;
}

double flux_error(const SparseHamiltonian& H) {
  double worst = 0.0;
  for (Index p = 0; p < plaquette_count(H.lattice); ++p)
    worst = std::max(worst, std::abs(plaquette_flux(H, plaquette_corner(H.lattice, p)) - H.field.B()));
  return worst;
}

std::string complex_tag(Complex z) {
  std::ostringstream s;
  s << z.real() << (z.imag() < 0 ? "" : "+") << z.imag() << "i";
  return s.str();
}

}  // namespace

json cmd_spectrum(const ScenarioConfig& config, const fs::path& out) {
  const json cfg = to_json(config);
  const FieldConfig field = field_config(config);
  const LatticeSpec lattice = lattice_spec(config);
  const SparseHamiltonian H = build_hamiltonian(field, lattice);

  SpectrumResult spec = diagonalize(H);
  angular_momentum_of_states(spec, lattice,
                             config.ang_mom_mode == "biorthogonal" ? AngularMomentumMode::Biorthogonal
                                                                   : AngularMomentumMode::Right);
  json report{{"dimension", H.dimension()},
              {"condition", spec.condition},
              {"used_fallback", spec.used_fallback},
              {"max_eigen_residual", max_eigen_residual(H, spec)},
              {"biorthogonality_defect", biorthogonality_defect(spec)},
              {"hermiticity_defect", hermiticity_defect(H.matrix)},
              {"max_abs_im", spec.eigenvalues.imag().cwiseAbs().maxCoeff()},
              {"flux_max_error", flux_error(H)}};

  std::vector<LandauCluster> clusters;
  json cluster_json = json::array();
  std::vector<fs::path> written;
  if (!field.field_free()) {
    const ClusterReference ref =
        config.reference == "continuum" ? ClusterReference::Continuum : ClusterReference::LatticeBand;
    clusters = extract_clusters(spec, field, config.n_max, config.radius, ref);
    const auto candidates = candidate_grid(config.candidate_n_max, config.candidate_m_max);
    for (const LandauCluster& c : clusters) {
      const auto matches = continuum_overlap_id(spec, field, lattice, candidates, c.members);
      std::size_t best = 0;
      for (std::size_t k = 1; k < matches.size(); ++k)
        if (matches[k].score > matches[best].score) best = k;
      std::size_t edge = 0;
      for (std::size_t k = 1; k < c.members.size(); ++k)
        if (spec.ang_mom(c.members[k]) > spec.ang_mom(c.members[edge])) edge = k;
      json members = json::array();
      for (std::size_t k = 0; k < c.members.size(); ++k) {
        members.push_back({{"idx", c.members[k]},
                           {"qn", {matches[k].qn.n, matches[k].qn.m}},
                           {"score", matches[k].score},
                           {"distance", std::abs(spec.eigenvalues(c.members[k]) - c.reference)}});
      }
      const Index best_idx = c.members[best];
      cluster_json.push_back(
          {{"n", c.level},
           {"reference", complex_json(c.reference)},
           {"continuum_reference", complex_json(cluster_reference_energy(field, c.level, ClusterReference::Continuum))},
           {"count", c.members.size()},
           {"best_state", best_idx},
           {"best_qn", {matches[best].qn.n, matches[best].qn.m}},
           {"best_score", matches[best].score},
           {"best_distance", std::abs(spec.eigenvalues(best_idx) - c.reference)},
           {"edge_state", c.members[edge]},
           {"im_monotone_in_ang_mom", im_monotone_in_ang_mom(spec, c.members, 1e-9)},
           {"members", members}});
      if (c.level < config.dump_levels) {
        std::vector<std::pair<Index, QuantumNumbers>> dumps{{best_idx, matches[best].qn}};
        if (c.level == 0 && edge != best) dumps.emplace_back(c.members[edge], matches[edge].qn);
        for (const auto& [idx, qn] : dumps) {
          write_state(out / file_name("state", {idx}), cfg, lattice, spec.right.col(idx));
          write_continuum_state(out / file_name("continuum", {qn.n, qn.m}), cfg, field, lattice, qn);
          written.push_back(out / file_name("state", {idx}));
          written.push_back(out / file_name("continuum", {qn.n, qn.m}));
        }
      }
    }
  }

  const Eigen::VectorXi labels = cluster_labels(clusters, spec.size());
  {
    CsvWriter csv(out / "spectrum.csv", cfg, {"idx", "re_e", "im_e", "ang_mom", "cluster_n"});
    for (Index k = 0; k < spec.size(); ++k) {
      csv << static_cast<long long>(k) << spec.eigenvalues(k).real() << spec.eigenvalues(k).imag() << spec.ang_mom(k)
          << labels(k);
      csv.end_row();
    }
  }
  write_json(out / "clusters.json", cfg,
             {{"reference", config.reference},
              {"radius", config.radius > 0.0 ? config.radius : std::abs(field.B()) / 4.0},
              {"count", clusters.size()},
              {"levels", cluster_json}});
  write_json(out / "spectrum_report.json", cfg, report);
  if (config.dump_matrix) write_matrix_dump(out / "hamiltonian.txt", H, cfg);

  report["clusters"] = clusters.size();
  report["files"] = written.size() + 3 + (config.dump_matrix ? 1 : 0);
  return report;
}

json cmd_wavepacket(const ScenarioConfig& config, const fs::path& out) {
  const json cfg = to_json(config);
  const FieldConfig field = field_config(config);
  const LatticeSpec lattice = lattice_spec(config);
  const SparseHamiltonian H = build_hamiltonian(field, lattice);
  const WavePacketState psi0 = make_gaussian(lattice, {config.center_x, config.center_y}, config.sigma,
                                             {config.k0x, config.k0y});
  PropagateOptions options;
  options.seed = config.seed;
  const Trajectory traj = propagate(H, psi0, config.dt, config.steps, options);
  const double dt_dev = dt_halving_deviation(H, psi0, config.dt, config.steps, options);
  if (dt_dev > config.dt_tolerance) {
    std::ostringstream msg;
    msg << "wavepacket: dt and dt/2 runs differ by " << dt_dev << " sites (tolerance " << config.dt_tolerance
        << "); reduce dt";
    throw std::runtime_error(msg.str());
  }
  {
    CsvWriter csv(out / "trajectory.csv", cfg, {"t", "x_c", "y_c", "sigma_x", "sigma_y", "norm_log"});
    for (const auto& s : traj.samples) {
      csv << s.t << s.x_c << s.y_c << s.sigma_x << s.sigma_y << s.norm_log;
      csv.end_row();
    }
  }

  const double m_eff = measure_effective_mass(lattice, config.sigma, config.effmass_E).m_eff;
  const Complex E_c(config.E_x, config.E_y);
  const Eigen::VectorXd t = traj.times();
  const Eigen::VectorXcd z = traj.positions();
  const double t_end = t(t.size() - 1) - t(0);
  json report{{"m_eff", m_eff},
              {"sigma", config.sigma},
              {"dt_halving_deviation", dt_dev},
              {"norm_log_final", traj.samples.back().norm_log},
              {"steps", config.steps}};

  Eigen::VectorXcd closed_form;
  SemiclassicalParams params;
  if (field.field_free()) {
    // z = z0 + v0 t + (E_c / 2m) t^2 with v0 from least squares
    const Complex accel = E_c / m_eff;
    const Eigen::VectorXd tt = (t.array() - t(0)).matrix();
    const Eigen::VectorXcd rest = z.array() - z(0) - 0.5 * accel * tt.array().square().cast<Complex>();
    const Complex v0 = tt.cast<Complex>().dot(rest) / tt.squaredNorm();
    params = make_semiclassical_params(Complex(0.0, 0.0), E_c, m_eff, z(0), v0);
    closed_form = (z(0) + v0 * tt.cast<Complex>().array() + 0.5 * accel * tt.array().square().cast<Complex>()).matrix();
    const double k = std::hypot(config.k0x, config.k0y);
    report["v0_fit"] = complex_json(v0);
    report["band_velocity"] = complex_json(Complex(2.0 * std::sin(config.k0x), 2.0 * std::sin(config.k0y)));
    report["k0"] = k;
    report["orbit"] = "free";
  } else {
    OrbitFit fit;
    report["orbit"] = E_c == Complex(0.0, 0.0) ? "spiral" : "skipping";
    try {
      fit = E_c == Complex(0.0, 0.0) ? fit_spiral_parameters(traj) : fit_skipping_parameters(traj, -kI * E_c / field.B());
    } catch (const std::exception& e) {
      // the packet left the semiclassical regime; keep the prediction from rest
      report["fit_error"] = e.what();
      fit.omega = field.B() / m_eff;
      fit.v0 = 0.0;
      fit.z0 = z(0);
      fit.drift = E_c == Complex(0.0, 0.0) ? Complex(0.0, 0.0) : -kI * E_c / field.B();
    }
    if (E_c != Complex(0.0, 0.0) && !report.contains("fit_error")) {
      const Complex drift = mean_drift_velocity(traj, fit.omega);
      report["drift_measured"] = complex_json(drift);
      report["drift_expected"] = complex_json(fit.drift);
      report["drift_ratio"] = std::abs(drift) / std::abs(fit.drift);
      report["drift_angle_deg"] = std::arg(drift / fit.drift) * 180.0 / std::numbers::pi;
    }
    params = make_semiclassical_params(field.B(), E_c, m_eff, z(0), fit.v0);
    closed_form = evaluate_orbit(fit, t);
    report["omega_expected"] = complex_json(params.omega());
    if (!report.contains("fit_error")) {
      report["omega_fit"] = complex_json(fit.omega);
      report["rotation_rate_ratio"] = fit.omega.real() / params.omega().real();
      report["v0_fit"] = complex_json(fit.v0);
      report["fit_relative_residual"] = fit.relative_residual;
      report["periods"] = fit.omega.real() * t_end / (2.0 * std::numbers::pi);
      report["trajectory_distance"] = trajectory_distance(t, closed_form, traj);
    }
  }
  const EomSolution integrated = integrate_eom(params, t_end, config.dt);
  if (!field.field_free()) {
    report["prediction_distance"] =
        trajectory_distance((integrated.times.array() + t(0)).matrix(), integrated.positions, traj);
  }
  {
    CsvWriter csv(out / "semiclassical.csv", cfg, {"t", "x", "y", "source"});
    for (Index k = 0; k < t.size(); ++k) {
      csv << t(k) << closed_form(k).real() << closed_form(k).imag() << std::string("closed_form");
      csv.end_row();
    }
    for (Index k = 0; k < integrated.times.size(); ++k) {
      csv << integrated.times(k) + t(0) << integrated.positions(k).real() << integrated.positions(k).imag()
          << std::string("integrated");
      csv.end_row();
    }
  }
  write_json(out / "fit_report.json", cfg, report);
  return report;
}

json cmd_continuum(const ScenarioConfig& config, const fs::path& out) {
  const json cfg = to_json(config);
  const int max_index = config.continuum_max_index;
  json per_field = json::array();

  CsvWriter ladder(out / "ladder_residuals.csv", cfg, {"B_re", "B_im", "op", "n", "m", "h", "residual", "order"});
  CsvWriter conv(out / "hamiltonian_convergence.csv", cfg, {"B_re", "B_im", "n", "m", "h", "residual", "order"});
  const std::vector<std::pair<LadderKind, std::string>> ops{
      {LadderKind::A, "a"}, {LadderKind::ASharp, "a_dag"}, {LadderKind::B, "b"}, {LadderKind::BSharp, "b_dag"}};
  const std::vector<QuantumNumbers> ladder_states{{0, 0}, {1, 0}, {0, 1}, {1, 2}, {2, 1}, {2, 2}};

  for (std::size_t k = 0; k < config.continuum_B.size(); ++k) {
    const Complex B = config.continuum_B[k];
    const FieldConfig field = make_field_config(B);
    const double ac = std::abs(field.a_c());

    const auto t0 = std::chrono::steady_clock::now();
    const GridSpec grid = overlap_grid(field, max_index);
    const Eigen::MatrixXcd M = overlap_matrix(field, max_index, grid);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double identity_error = (M - Eigen::MatrixXcd::Identity(M.rows(), M.cols())).cwiseAbs().maxCoeff();
    {
      CsvWriter csv(out / file_name("biorthogonality", {static_cast<long long>(k)}), cfg,
                    {"n_left", "m_left", "n_right", "m_right", "re", "im"});
      const int side = max_index + 1;
      for (int a = 0; a < side * side; ++a)
        for (int b = 0; b < side * side; ++b) {
          csv << a / side << a % side << b / side << b % side << M(a, b).real() << M(a, b).imag();
          csv.end_row();
        }
    }

    double ladder_worst_order_dev = 0.0;
    for (const auto& [kind, name] : ops)
      for (const QuantumNumbers& qn : ladder_states) {
        const ConvergenceReport r = ladder_convergence(field, kind, qn, 10.0 * ac, ac / 10.0);
        ladder_worst_order_dev = std::max(ladder_worst_order_dev, std::abs(r.order - 2.0));
        for (std::size_t j = 0; j < r.spacings.size(); ++j) {
          ladder << B.real() << B.imag() << name << qn.n << qn.m << r.spacings[j] << r.residuals[j] << r.order;
          ladder.end_row();
        }
      }

    double ham_worst_order_dev = 0.0;
    for (int n = 0; n <= 4; ++n)
      for (int m = 0; n + m <= 4; ++m) {
        const ConvergenceReport r = hamiltonian_convergence(field, n, m, 10.0 * ac, ac / 10.0);
        ham_worst_order_dev = std::max(ham_worst_order_dev, std::abs(r.order - 2.0));
        for (std::size_t j = 0; j < r.spacings.size(); ++j) {
          conv << B.real() << B.imag() << n << m << r.spacings[j] << r.residuals[j] << r.order;
          conv.end_row();
        }
      }

    double left_right = 0.0;
    for (int n = 0; n <= max_index; ++n)
      for (int m = 0; m <= max_index; ++m) {
        const Eigen::MatrixXcd l = sample(build_left_wavefunction(field, n, m), grid);
        const Eigen::MatrixXcd r = sample(build_right_wavefunction(field, n, m), grid);
        left_right = std::max(left_right, (l - r).cwiseAbs().maxCoeff());
      }

    per_field.push_back({{"B", complex_json(B)},
                         {"label", complex_tag(B)},
                         {"biorthogonality_file", file_name("biorthogonality", {static_cast<long long>(k)})},
                         {"identity_error", identity_error},
                         {"overlap_seconds", seconds},
                         {"grid_points", grid.points},
                         {"ladder_max_order_deviation", ladder_worst_order_dev},
                         {"hamiltonian_max_order_deviation", ham_worst_order_dev},
                         {"left_right_max_difference", left_right}});
  }

  json sweep = json::array();
  bool agree = true;
  {
    CsvWriter csv(out / "gauge_sweep.csv", cfg,
                  {"B_re", "B_im", "analytic", "numeric", "integral_8", "integral_16", "integral_32"});
    for (const Complex B : config.gauge_sweep) {
      const DomainGrowthReport r = domain_growth_test(B);
      const Normalizability a = classify_normalizability(B);
      agree = agree && a == r.verdict;
      csv << B.real() << B.imag() << to_string(a) << to_string(r.verdict) << r.integrals[0] << r.integrals[1]
          << r.integrals[2];
      csv.end_row();
    }
  }
  json boundary = json::array();
  for (const Complex B : {Complex(1.0, 1.0), Complex(1.0, -1.0), Complex(1.0, 1.0 - 1e-12), Complex(1.0, -1.0 + 1e-12)})
    boundary.push_back({{"B", complex_json(B)}, {"analytic", to_string(classify_normalizability(B))}});

  json report{{"fields", per_field}, {"gauge_sweep_agree", agree}, {"boundary_checks", boundary}};
  write_json(out / "continuum_report.json", cfg, report);
  return report;
}

json cmd_effmass(const ScenarioConfig& config, const fs::path& out) {
  const json cfg = to_json(config);
  const LatticeSpec lattice = lattice_spec(config);
  CsvWriter csv(out / "effmass.csv", cfg, {"sigma", "m_eff"});
  json points = json::array();
  for (double sigma : config.sigmas) {
    const EffectiveMassResult r = measure_effective_mass(lattice, sigma, config.effmass_E);
    csv << sigma << r.m_eff;
    csv.end_row();
    points.push_back({{"sigma", sigma}, {"m_eff", r.m_eff}, {"window", r.window}, {"edge_density", r.edge_density}});
  }
  return json{{"E", config.effmass_E}, {"points", points}};
}

}  // namespace nhll
