#include "commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "config.hpp"
#include "spinopt/audit.hpp"
#include "spinopt/brachistochrone.hpp"
#include "spinopt/closed_forms.hpp"
#include "spinopt/error.hpp"
#include "spinopt/generators.hpp"
#include "spinopt/oracle.hpp"

namespace spinctl {

namespace {

constexpr const char* kUsage =
    "usage: spinctl <basis|integrate|closedform|gate|propagate|audit> [options] (spinctl --help for details)";

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string format_complex(spinopt::Complex z) {
  char buf[64];
  // Adding +0.0 turns -0 into 0 so blocks diff cleanly.
  std::snprintf(buf, sizeof buf, "%.17g%+.17gj", z.real() + 0.0, z.imag() + 0.0);
  return buf;
}

std::string format_sci(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", value);
  return buf;
}

spinopt::Vec3 parse_vec3(const std::string& text) {
  spinopt::Vec3 v{};
  std::size_t start = 0;
  for (std::size_t k = 0; k < 3; ++k) {
    const auto comma = text.find(',', start);
    if ((k < 2) == (comma == std::string::npos)) throw InputError("--p expects three comma-separated reals: " + text);
    try {
      v[k] = parse_real(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start), "--p");
    } catch (const ConfigError& e) {
      throw InputError(e.what());
    }
    start = comma + 1;
  }
  return v;
}

/// Output sink: the named file, or `fallback` when no path was given.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw InputError("cannot open output file: " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw InputError("write failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FamilyArgs {
  std::string family;
  double theta = 0.0;
  bool theta_set = false;
  double mass = 1.0;
  std::string momentum = "0,0,1";
};

void add_family_options(CLI::App* cmd, FamilyArgs& args) {
  cmd->add_option("--family", args.family, "su2, su3 or su4")->required();
  cmd->add_option("--theta", args.theta, "phase theta (su3 default 0, su4 default -pi/2)");
  cmd->add_option("--m", args.mass, "rest mass (su4)")->capture_default_str();
  cmd->add_option("--p", args.momentum, "initial momentum x,y,z (su4)")->capture_default_str();
}

spinopt::UnitaryFamily resolve_family(const FamilyArgs& args, std::optional<spinopt::DiracParameters>& dirac) {
  spinopt::GroupId group;
  try {
    group = spinopt::parse_group(args.family);
  } catch (const spinopt::DomainError&) {
    throw InputError("unknown family: " + args.family);
  }
  switch (group) {
    case spinopt::GroupId::su2:
      return spinopt::su2_unitary_family();
    case spinopt::GroupId::su3:
      return spinopt::su3_unitary_family(args.theta_set ? args.theta : spinopt::kDefaultSu3Theta);
    case spinopt::GroupId::su4:
      dirac.emplace(args.mass, parse_vec3(args.momentum), args.theta_set ? args.theta : spinopt::kDefaultDiracTheta);
      return spinopt::su4_unitary_family(*dirac);
  }
  throw InputError("unknown family: " + args.family);
}

void run_basis(const std::string& group_text, const std::string& out_path, std::ostream& out) {
  const spinopt::GeneratorBasis basis = spinopt::build_basis(spinopt::parse_group(group_text));
  Sink sink(out_path, out);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (k) sink.stream() << '\n';
    write_matrix(sink.stream(), basis.label(k) + " norm=" + format_real(basis.norm(k)), basis[k]);
  }
  sink.finish();
}

void run_integrate(const std::string& config_path, const std::string& out_path, std::ostream& out) {
  RunConfig config;
  try {
    config = parse_config(read_file(config_path));
  } catch (const ConfigError& e) {
    throw InputError(config_path + ": " + e.what());
  }
  const spinopt::ControlSplit split = make_split(config);
  const spinopt::OperatorPair init = initial_pair(config, split);
  const spinopt::Trajectory traj = spinopt::integrate(init, split, {config.h, config.T, config.stride});

  Sink sink(out_path, out);
  std::ostream& os = sink.stream();
  os << 't';
  for (const auto& label : split.hamiltonian_labels()) os << ',' << label;
  for (const auto& label : split.constraint_labels()) os << ',' << label;
  os << ",trH2,trF2,trHF\n";
  for (const auto& s : traj.samples) {
    os << format_real(s.time);
    for (double v : s.h) os << ',' << format_real(v);
    for (double v : s.f) os << ',' << format_real(v);
    os << ',' << format_real(s.monitors.tr_h2) << ',' << format_real(s.monitors.tr_f2) << ','
       << format_real(s.monitors.tr_hf) << '\n';
  }
  sink.finish();
}

void run_closedform(const FamilyArgs& args, double t, double s, std::ostream& out) {
  std::optional<spinopt::DiracParameters> dirac;
  const spinopt::UnitaryFamily family = resolve_family(args, dirac);
  write_matrix(out, "H(t)", family.hamiltonian(t));
  out << '\n';
  write_matrix(out, "U(t,s)", family.propagator(t, s));
}

void run_gate(double t, double theta, std::ostream& out) { write_matrix(out, "Q(t)", spinopt::su3_gate(theta, t)); }

void run_propagate(const FamilyArgs& args, double t1, std::optional<std::size_t> steps, std::ostream& out) {
  std::optional<spinopt::DiracParameters> dirac;
  const spinopt::UnitaryFamily family = resolve_family(args, dirac);
  const std::size_t n = steps.value_or(spinopt::default_steps(0.0, t1));
  if (n == 0) throw InputError("--steps must be >= 1");

  const spinopt::HamiltonianSchedule schedule(spinopt::group_dimension(family.group), family.hamiltonian);
  const spinopt::Matrix oracle = spinopt::time_ordered_exponential(schedule, 0.0, t1, n);
  const spinopt::Matrix frame =
      spinopt::rotating_frame_propagator(family.frame_generator, family.initial_hamiltonian, t1, 0.0);
  const spinopt::Matrix closed = family.propagator(t1, 0.0);

  out << "steps " << n << '\n';
  write_matrix(out, "oracle(t1,0)", oracle);
  out << '\n';
  write_matrix(out, "rotating_frame(t1,0)", frame);
  out << "max_dev rotating_frame=" << format_sci(spinopt::max_abs_diff(frame, oracle)) << "\n\n";
  write_matrix(out, "closed_form(t1,0)", closed);
  out << "max_dev closed_form=" << format_sci(spinopt::max_abs_diff(closed, oracle)) << '\n';
}

int run_audit(double tol, std::uint64_t seed, const std::vector<std::string>& checks,
              const std::optional<std::string>& family, const std::string& out_path, std::ostream& out) {
  std::vector<spinopt::CheckResult> results;
  spinopt::AuditOptions options;
  options.tol = tol;
  options.seed = seed;
  if (family) {
    try {
      options.family = spinopt::parse_group(*family);
    } catch (const spinopt::DomainError&) {
      throw InputError("unknown family: " + *family);
    }
  }
  if (!std::isfinite(tol) || tol < 0.0) throw InputError("--tol must be finite and non-negative");
  if (checks.empty()) {
    for (const auto id : spinopt::check_catalog()) results.push_back(spinopt::run_check(id, options));
  } else {
    for (const auto& id : checks) {
      const auto catalog = spinopt::check_catalog();
      if (std::find(catalog.begin(), catalog.end(), id) == catalog.end()) throw InputError("unknown check: " + id);
      results.push_back(spinopt::run_check(id, options));
    }
  }
  Sink sink(out_path, out);
  sink.stream() << spinopt::format_report(results);
  sink.finish();
  return spinopt::has_failure(results) ? kExitCheckFailure : kExitOk;
}

int fail(std::ostream& err, const std::string& message) {
  std::string line = message;
  std::replace(line.begin(), line.end(), '\n', ' ');
  err << "spinctl: error: " << line << '\n' << kUsage << '\n';
  return kExitInvalidInput;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_matrix(std::ostream& os, const std::string& title, const spinopt::Matrix& m) {
  os << title << ' ' << m.dim() << 'x' << m.dim() << '\n';
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) os << (j ? " " : "") << format_complex(m(i, j));
    os << '\n';
  }
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Time-optimal quantum control toolkit", "spinctl"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for all subcommands");

  std::string group_text, out_path, config_path;
  FamilyArgs family_args;
  double t = 0.0, s = 0.0, t1 = 0.0, theta = spinopt::kDefaultSu3Theta, tol = 1e-10;
  std::uint64_t seed = 0;
  std::optional<std::size_t> steps;
  std::vector<std::string> checks;
  std::optional<std::string> audit_family;

  auto* basis = app.add_subcommand("basis", "Print the labeled generator basis of a group");
  basis->add_option("--group", group_text, "su2, su3 or su4")->required();
  basis->add_option("--out", out_path, "output file (default stdout)");

  auto* integ = app.add_subcommand("integrate", "Integrate the brachistochrone equation from a config file");
  integ->add_option("--config", config_path, "run configuration")->required();
  integ->add_option("--out", out_path, "CSV output file (default stdout)");

  auto* closed = app.add_subcommand("closedform", "Print H(t) and U(t,s) of a closed-form family");
  add_family_options(closed, family_args);
  closed->add_option("--t", t, "time t")->required();
  closed->add_option("--s", s, "time s")->capture_default_str();

  auto* gate = app.add_subcommand("gate", "Print the qutrit gate Q(t)");
  gate->add_option("--t", t, "time t")->required();
  gate->add_option("--theta", theta, "phase theta")->capture_default_str();

  auto* prop = app.add_subcommand("propagate", "Compare the step-product oracle with the closed forms");
  add_family_options(prop, family_args);
  prop->add_option("--t1", t1, "final time (start time 0)")->required();
  prop->add_option("--steps", steps, "midpoint steps (default 10^4 per 2 pi)");

  auto* audit = app.add_subcommand("audit", "Run the identity audit");
  audit->add_option("--tol", tol, "pass tolerance")->capture_default_str();
  audit->add_option("--seed", seed, "probe seed")->capture_default_str();
  audit->add_option("--check", checks, "run only these check ids (repeatable)");
  audit->add_option("--family", audit_family, "restrict propagator_question to one family");
  audit->add_option("--out", out_path, "report file (default stdout)");

  if (!args.empty() && !args.front().empty() && args.front().front() != '-' &&
      app.get_subcommand_no_throw(args.front()) == nullptr) {
    return fail(err, "unknown subcommand: " + args.front());
  }

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    for (auto* cmd : {closed, prop}) {
      if (cmd->parsed()) family_args.theta_set = cmd->count("--theta") > 0;
    }

    if (basis->parsed()) {
      run_basis(group_text, out_path, out);
    } else if (integ->parsed()) {
      run_integrate(config_path, out_path, out);
    } else if (closed->parsed()) {
      run_closedform(family_args, t, s, out);
    } else if (gate->parsed()) {
      run_gate(t, theta, out);
    } else if (prop->parsed()) {
      run_propagate(family_args, t1, steps, out);
    } else if (audit->parsed()) {
      return run_audit(tol, seed, checks, audit_family, out_path, out);
    }
    return kExitOk;
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, e.what());
  } catch (const std::exception& e) {
    return fail(err, e.what());
  } catch (...) {
    return fail(err, "unexpected failure");
  }
}

}  // namespace spinctl
