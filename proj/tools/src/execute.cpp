#include <cstdio>
#include <fstream>
#include <future>
#include <ostream>
#include <sstream>

#include "chemotaxis/cli/run_config.hpp"
#include "chemotaxis/error.hpp"

namespace chemotaxis::cli {

namespace {

namespace fs = std::filesystem;

constexpr double kMinSpatialOrder = 1.8;
constexpr double kMinTemporalOrder = 0.85;

std::string optional_number(const std::optional<double>& x) { return x ? format_number(*x) : std::string(); }

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  out << contents;
  out.close();
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::string verdict_text(const Scenario& scn, const ScenarioRun& traj, const VerdictReport& report) {
  std::ostringstream os;
  os << "scenario: " << scn.name << '\n';
  if (traj.run.status == RunStatus::completed) {
    os << "status: completed (" << traj.run.steps_taken << " steps)\n";
  } else {
    os << "status: aborted at t=" << format_number(traj.run.abort_time.value_or(0.0)) << ": "
       << traj.run.abort_reason.value_or("") << '\n';
  }
  os << "max_advective_cfl: " << format_number(traj.run.max_advective_cfl) << '\n';
  for (const auto& w : traj.run.warnings) {
    os << "warning: " << w << '\n';
  }
  for (const auto& v : report.verdicts) {
    os << (v.passed ? "PASS " : "FAIL ") << v.name << " measured=" << format_number(v.measured)
       << " target=" << format_number(v.target) << " tolerance=" << format_number(v.tolerance) << " | "
       << v.detail << '\n';
  }
  const bool ok = traj.run.status == RunStatus::completed && report.all_passed();
  os << "result: " << (ok ? "PASS" : "FAIL") << '\n';
  return os.str();
}

}  // namespace

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_series(std::ostream& os, const std::vector<DiagnosticsRecord>& records) {
  os << "t,entropy,lyapunov,l2_u_tilde,l2_v_tilde,h1_u_tilde,h1_v_tilde,h2_u_tilde,h2_v_tilde,fisher,v_mass,"
        "sup_dist_u,sup_dist_v,alpha1,alpha2,beta1,beta2,max_char_speed,advective_cfl\n";
  for (const auto& r : records) {
    const double row[] = {r.l2_u_tilde, r.l2_v_tilde, r.h1_u_tilde, r.h1_v_tilde, r.h2_u_tilde,
                          r.h2_v_tilde, r.fisher, r.v_mass, r.sup_dist_u, r.sup_dist_v,
                          r.boundary_values.alpha1, r.boundary_values.alpha2, r.boundary_values.beta1,
                          r.boundary_values.beta2, r.max_char_speed, r.advective_cfl};
    os << format_number(r.t) << ',' << optional_number(r.entropy) << ',' << optional_number(r.lyapunov);
    for (double x : row) {
      os << ',' << format_number(x);
    }
    os << '\n';
  }
}

void write_snapshot(std::ostream& os, const State& s, const SchemeConfig& cfg) {
  const ReferenceProfiles ref = state_references(s, cfg);
  os << "# t=" << format_number(s.t) << '\n';
  os << "x,u,v,A,B\n";
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    os << format_number(cfg.grid.x(i)) << ',' << format_number(s.u[i]) << ',' << format_number(s.v[i]) << ','
       << format_number(ref.A[i]) << ',' << format_number(ref.B[i]) << '\n';
  }
}

std::string snapshot_name(double requested_time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "snapshot_%.6f.csv", requested_time);
  return buf;
}

int execute(const RunConfig& rc, std::ostream& log) {
  const Scenario scn = effective_scenario(rc);
  try {
    scn.cfg.validate();
  } catch (const Error& e) {
    log << scn.name << ": configuration error: " << e.what() << '\n';
    return kAborted;
  }

  ScenarioRun traj;
  try {
    traj = run_scenario(scn);
  } catch (const Error& e) {
    log << scn.name << ": " << e.what() << '\n';
    return kAborted;
  }
  const VerdictReport report = evaluate_expectations(scn, traj);

  try {
    fs::create_directories(rc.output_dir);
    std::ostringstream series;
    write_series(series, traj.records);
    write_file(rc.output_dir / "series.csv", series.str());
    if (rc.emit_snapshots) {
      for (std::size_t k = 1; k < traj.run.samples.size(); ++k) {
        const Sample& sample = traj.run.samples[k];
        std::ostringstream snap;
        write_snapshot(snap, sample.state, scn.cfg);
        write_file(rc.output_dir / snapshot_name(sample.requested_time), snap.str());
      }
    }
    write_file(rc.output_dir / "verdict.txt", verdict_text(scn, traj, report));
  } catch (const std::exception& e) {
    log << scn.name << ": I/O failure: " << e.what() << '\n';
    return kAborted;
  }

  for (const auto& w : traj.run.warnings) {
    log << scn.name << ": warning: " << w << '\n';
  }
  if (traj.run.status != RunStatus::completed) {
    log << scn.name << ": aborted: " << traj.run.abort_reason.value_or("") << '\n';
    return kAborted;
  }
  for (const auto& v : report.verdicts) {
    log << scn.name << ": " << (v.passed ? "PASS " : "FAIL ") << v.name << " | " << v.detail << '\n';
  }
  return report.all_passed() ? kSuccess : kExpectationFailed;
}

int execute_all_presets(const std::filesystem::path& output_dir, std::ostream& log) {
  struct Job {
    std::future<int> status;
    std::ostringstream log;
  };
  std::vector<Job> jobs(preset_names().size());
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    RunConfig rc;
    rc.scenario = paper_preset(preset_names()[i]);
    rc.preset = preset_names()[i];
    rc.output_dir = output_dir / preset_names()[i];
    jobs[i].status = std::async(std::launch::async, [rc, &out = jobs[i].log] { return execute(rc, out); });
  }
  int worst = kSuccess;
  for (auto& job : jobs) {
    const int status = job.status.get();
    log << job.log.str();
    if (status == kAborted || (status == kExpectationFailed && worst == kSuccess)) {
      worst = status;
    }
  }
  return worst;
}

int execute_mms(Mode mode, const std::filesystem::path& output_dir, std::ostream& log) {
  const ConvergenceStudy study = mms_convergence(mode);
  std::ostringstream csv;
  csv << "study,parameter,error,order\n";
  for (std::size_t i = 0; i < study.n_cells.size(); ++i) {
    csv << "spatial," << study.n_cells[i] << ',' << format_number(study.spatial_errors[i]) << ','
        << (i > 0 ? format_number(study.spatial_orders[i - 1]) : "") << '\n';
  }
  for (std::size_t i = 0; i < study.dts.size(); ++i) {
    csv << "temporal," << format_number(study.dts[i]) << ',' << format_number(study.temporal_errors[i]) << ','
        << (i > 0 ? format_number(study.temporal_orders[i - 1]) : "") << '\n';
  }

  std::ostringstream verdict;
  bool ok = true;
  for (double o : study.spatial_orders) {
    const bool pass = o >= kMinSpatialOrder;
    ok = ok && pass;
    verdict << (pass ? "PASS" : "FAIL") << " spatial_order measured=" << format_number(o)
            << " target=" << format_number(kMinSpatialOrder) << '\n';
  }
  for (double o : study.temporal_orders) {
    const bool pass = o >= kMinTemporalOrder;
    ok = ok && pass;
    verdict << (pass ? "PASS" : "FAIL") << " temporal_order measured=" << format_number(o)
            << " target=" << format_number(kMinTemporalOrder) << '\n';
  }
  verdict << "result: " << (ok ? "PASS" : "FAIL") << '\n';

  try {
    fs::create_directories(output_dir);
    write_file(output_dir / (std::string("mms_") + to_string(mode) + ".csv"), csv.str());
    write_file(output_dir / "verdict.txt", verdict.str());
  } catch (const std::exception& e) {
    log << "mms: I/O failure: " << e.what() << '\n';
    return kAborted;
  }
  log << "mms " << to_string(mode) << ":\n" << verdict.str();
  return ok ? kSuccess : kExpectationFailed;
}

}  // namespace chemotaxis::cli
