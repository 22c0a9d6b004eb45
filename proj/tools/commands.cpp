// Copyright 2026 The sal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csv.hpp"
#include "sal/counterdiabatic.hpp"
#include "sal/dynamics.hpp"
#include "sal/metrics.hpp"

namespace sal::cli {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFidelityTol = 1e-6;

std::string fmt(double v) { return format_double(v); }
std::string fmt(std::size_t v) { return std::to_string(v); }
std::string fmt(bool v) { return v ? "1" : "0"; }

std::string describe(const char* what, double got, double want) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s: got %.12g, expected %.12g", what, got, want);
  return buf;
}

Schedule schedule_from(const std::string& name) {
  auto fam = parse_schedule(name);
  if (!fam) throw ConfigError("unknown schedule '" + name + "'");
  return Schedule(*fam);
}

CdMethod cd_method(const RunConfig& c) {
  return c.cd == "generic" ? CdMethod::kGeneric : CdMethod::kAnalytic;
}

std::optional<Operator> resolve_gate(const RunConfig& c, std::size_t n) {
  if (c.gate == "none") return std::nullopt;
  std::optional<Operator> g;
  if (c.gate == "custom") {
    if (!c.custom_gate) throw ConfigError("gate 'custom' needs custom_gate in the config");
    g = c.custom_gate;
  } else {
    g = gates::by_name(c.gate);
    if (!g) throw ConfigError("unknown gate '" + c.gate + "'");
  }
  if (g->dim() != (std::size_t{1} << n))
    throw ConfigError("gate '" + c.gate + "' does not act on " + std::to_string(n) +
                      " qubit(s)");
  if (!is_unitary(*g)) throw ConfigError("gate '" + c.gate + "' is not unitary");
  return g;
}

struct Point {
  std::vector<std::string> fields;
  std::vector<std::string> violations;
};

CommandResult collect(std::vector<std::string> header, std::vector<Point> points) {
  CsvTable table(std::move(header));
  CommandResult out;
  for (Point& p : points) {
    table.add_row(std::move(p.fields));
    for (std::string& v : p.violations) out.violations.push_back(std::move(v));
  }
  out.csv = table.str();
  out.exit_code = out.violations.empty() ? kExitOk : kExitInvariant;
  return out;
}

// Teleportation runs --------------------------------------------------------

struct TeleportOutcome {
  double fidelity = 1.0;  // worst over the sampled states
  double sigma_sa = 0.0;
  double sigma_ad = 0.0;
  std::vector<QslReport> qsl;
};

TeleportOutcome run_teleport(const RunConfig& c, std::size_t n, double tau,
                             const std::string& schedule) {
  const std::optional<Operator> gate = resolve_gate(c, n);
  TeleportSpec spec{n, schedule_from(schedule), gate, c.omega};
  const bool sa_mode = c.mode == "superadiabatic";

  std::optional<SuperadiabaticHamiltonian> sa;
  TimeDepHamiltonian h;
  TimeDepHamiltonian base;
  if (sa_mode) {
    sa = teleport_superadiabatic(spec, tau, cd_method(c), c.grid);
    h = sa->total();
    base = sa->base;
  } else {
    h = teleport_hamiltonian(spec);
    base = h;
  }

  TeleportOutcome out;
  for (std::size_t i = 0; i < c.states; ++i) {
    const QState psi = random_state(n, c.seed + i);
    const QState psi0 = teleport_initial_state(psi, gate);
    QslAccumulator acc(h, psi0, tau);
    EvolveOptions opt;
    opt.steps = c.steps;
    opt.samples = 2;
    opt.observer = acc.observer();
    opt.tracking = &base;
    const EvolutionResult r = evolve(h, psi0, tau, opt);
    out.fidelity = std::min(out.fidelity, fidelity(r.final_state, teleport_target(psi, gate)));
    out.qsl.push_back(acc.report());
  }

  if (sa_mode) {
    const CostReport cost = superadiabatic_cost(*sa->frame(c.grid), tau);
    out.sigma_sa = cost.sigma_sa;
    out.sigma_ad = cost.sigma_ad;
  } else {
    out.sigma_ad = energy_cost([&](double s) { return h(s); }, c.grid);
    out.sigma_sa = out.sigma_ad;
  }
  return out;
}

// Controlled-evolution runs ---------------------------------------------------

struct ControlledOutcome {
  double fidelity = 1.0;
  double p_success = 0.0;  // p(ancilla = 1), worst deviation from sin^2
  double branch0 = 1.0;
  double sigma = 0.0;
  double sigma_closed = 0.0;
  std::vector<QslReport> qsl;
};

ControlledSpec controlled_spec(const RunConfig& c, double theta0, double tau) {
  ControlledSpec spec;
  spec.n_controls = c.n_controls;
  spec.axis = c.axis;
  spec.phi = c.phi;
  spec.theta0 = theta0;
  spec.tau = tau;
  spec.activation = c.activation;
  spec.omega = c.omega;
  validate(spec);
  return spec;
}

ControlledOutcome run_controlled(const RunConfig& c, const std::string& protocol,
                                 double theta0, double tau) {
  const ControlledSpec spec = controlled_spec(c, theta0, tau);
  const bool sce = protocol == "sce";
  std::optional<SuperadiabaticHamiltonian> sa;
  TimeDepHamiltonian h;
  if (sce) {
    sa = cd_controlled(spec);
    h = sa->total();
  } else {
    h = controlled_hamiltonian(spec);
  }
  const TimeDepHamiltonian base = sce ? sa->base : h;
  const double p_expected = std::pow(std::sin(theta0 / 2.0), 2);

  ControlledOutcome out;
  out.p_success = p_expected;
  for (std::size_t i = 0; i < c.states; ++i) {
    const QState psi = random_state(c.n_controls + 1, c.seed + i);
    const QState psi0 = controlled_initial_state(psi);
    QslAccumulator acc(h, psi0, tau);
    EvolveOptions opt;
    opt.steps = c.steps;
    opt.samples = 2;
    opt.observer = acc.observer();
    opt.tracking = &base;
    const EvolutionResult r = evolve(h, psi0, tau, opt);
    out.fidelity = std::min(out.fidelity, fidelity(r.final_state, controlled_target(spec, psi)));
    for (const MeasurementOutcome& m : measure_ancilla(r.final_state)) {
      if (m.branch == 1) {
        if (std::abs(m.probability - p_expected) >= std::abs(out.p_success - p_expected))
          out.p_success = m.probability;
      } else if (m.post_state) {
        out.branch0 = std::min(out.branch0, fidelity(*m.post_state, psi));
      }
    }
    out.qsl.push_back(acc.report());
  }
  out.sigma = energy_cost([&](double s) { return h(s); }, c.grid);
  out.sigma_closed = sce ? cost_controlled_gate(c.n_controls, theta0, tau, c.omega)
                         : cost_controlled_adiabatic(c.n_controls, c.omega);
  return out;
}

void check_qsl(const std::vector<QslReport>& reports, std::vector<std::string>& violations) {
  for (const QslReport& q : reports) {
    if (!q.satisfied) violations.push_back(describe("speed limit violated, tau", q.tau, q.bound));
    if (!q.chi_satisfied) violations.push_back(describe("chi sub-bound violated", q.chi, q.chi_bound));
  }
}

double worst_bound(const std::vector<QslReport>& reports) {
  double b = 0.0;
  for (const QslReport& q : reports) b = std::max(b, q.bound);
  return b;
}

bool all_ok(const std::vector<QslReport>& reports) {
  for (const QslReport& q : reports)
    if (!q.satisfied || !q.chi_satisfied) return false;
  return true;
}

double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

template <class A, class B>
std::vector<std::pair<A, B>> grid2(const std::vector<A>& a, const std::vector<B>& b) {
  std::vector<std::pair<A, B>> out;
  for (const A& x : a)
    for (const B& y : b) out.emplace_back(x, y);
  return out;
}

double parse_number(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + text + "'");
  }
  if (used != text.size()) throw ConfigError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

}  // namespace

// Configuration ---------------------------------------------------------------

double parse_angle(const std::string& raw) {
  std::string text;
  for (char ch : raw)
    if (ch != ' ') text += ch;
  const std::size_t p = text.find("pi");
  if (p == std::string::npos) return parse_number(text);
  std::string num = text.substr(0, p);
  std::string rest = text.substr(p + 2);
  if (!num.empty() && num.back() == '*') num.pop_back();
  double factor = 1.0;
  if (num == "-") factor = -1.0;
  else if (!num.empty()) factor = parse_number(num);
  double den = 1.0;
  if (!rest.empty()) {
    if (rest[0] != '/') throw ConfigError("bad angle '" + raw + "'");
    den = parse_number(rest.substr(1));
    if (den == 0.0) throw ConfigError("bad angle '" + raw + "'");
  }
  return factor * kPi / den;
}

std::array<double, 3> parse_axis(const std::string& text) {
  if (text == "x") return {1.0, 0.0, 0.0};
  if (text == "y") return {0.0, 1.0, 0.0};
  if (text == "z") return {0.0, 0.0, 1.0};
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw ConfigError("axis must be x, y, z or 'a,b,c'");
  std::array<double, 3> a{};
  for (int i = 0; i < 3; ++i) a[i] = parse_number(parts[i]);
  const double len = std::hypot(a[0], a[1], a[2]);
  if (len == 0.0) throw ConfigError("axis has zero length");
  for (double& x : a) x /= len;
  return a;
}

void validate(const RunConfig& c) {
  static const std::vector<std::string> commands{"teleport", "cae",       "sce",     "cost-sweep",
                                                 "theta-opt", "qsl-check", "selftest"};
  if (std::find(commands.begin(), commands.end(), c.command) == commands.end())
    throw ConfigError("unknown command '" + c.command + "'");
  if (c.mode != "superadiabatic" && c.mode != "adiabatic")
    throw ConfigError("mode must be superadiabatic or adiabatic");
  if (c.cd != "analytic" && c.cd != "generic") throw ConfigError("cd must be analytic or generic");
  if (!c.protocol.empty() && c.protocol != "teleport" && c.protocol != "sce" &&
      c.protocol != "cae")
    throw ConfigError("protocol must be teleport, sce or cae");
  if (c.n_sectors.empty()) throw ConfigError("n must not be empty");
  for (std::size_t n : c.n_sectors)
    if (n < 1 || n > 3) throw ConfigError("n must be 1, 2 or 3");
  for (const std::string& s : c.schedules) schedule_from(s);
  if (c.schedules.empty()) throw ConfigError("schedule must not be empty");
  if (c.taus.empty()) throw ConfigError("tau must not be empty");
  for (double t : c.taus)
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("tau must be positive");
  if (!(c.omega > 0.0) || !std::isfinite(c.omega)) throw ConfigError("omega must be positive");
  if (c.grid < 101 || c.grid % 2 == 0) throw ConfigError("grid must be odd and >= 101");
  if (c.steps != 0 && c.steps < 100) throw ConfigError("steps must be 0 (auto) or >= 100");
  if (c.states < 1) throw ConfigError("states must be >= 1");
  if (c.n_controls > 4) throw ConfigError("n-controls must be <= 4");
  if (c.theta0s.empty()) throw ConfigError("theta0 must not be empty");
  for (double t : c.theta0s)
    if (!(t > 0.0) || t > kPi + 1e-15) throw ConfigError("theta0 must lie in (0, pi]");
  if (c.activation && *c.activation >= (std::size_t{1} << c.n_controls))
    throw ConfigError("activation index out of range");
}

void apply_json(RunConfig& c, const std::string& json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  auto angle = [](const json& v) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_angle(v.get<std::string>());
    throw ConfigError("angle must be a number or string");
  };
  auto list = [](const json& v, auto conv) {
    using T = decltype(conv(v));
    std::vector<T> out;
    if (v.is_array())
      for (const json& x : v) out.push_back(conv(x));
    else
      out.push_back(conv(v));
    return out;
  };
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      const json& v = it.value();
      if (k == "command") c.command = v.get<std::string>();
      else if (k == "protocol") c.protocol = v.get<std::string>();
      else if (k == "n" || k == "n_sectors")
        c.n_sectors = list(v, [](const json& x) { return x.get<std::size_t>(); });
      else if (k == "gate") c.gate = v.get<std::string>();
      else if (k == "custom_gate") {
        const std::size_t count = v.size();
        const auto dim = static_cast<std::size_t>(std::llround(std::sqrt(double(count))));
        if (dim * dim != count || dim == 0) throw ConfigError("custom_gate must be square");
        Operator g(dim);
        for (std::size_t i = 0; i < count; ++i) {
          const json& e = v[i];
          g.data()[i] = e.is_array() ? Complex(e.at(0).get<double>(), e.at(1).get<double>())
                                     : Complex(e.get<double>(), 0.0);
        }
        c.custom_gate = g;
        c.gate = "custom";
      } else if (k == "mode") c.mode = v.get<std::string>();
      else if (k == "cd") c.cd = v.get<std::string>();
      else if (k == "schedule")
        c.schedules = list(v, [](const json& x) { return x.get<std::string>(); });
      else if (k == "n_controls") c.n_controls = v.get<std::size_t>();
      else if (k == "axis") {
        if (v.is_string()) {
          c.axis = parse_axis(v.get<std::string>());
        } else {
          const auto a = v.get<std::vector<double>>();
          if (a.size() != 3) throw ConfigError("axis needs 3 components");
          c.axis = parse_axis(fmt(a[0]) + "," + fmt(a[1]) + "," + fmt(a[2]));
        }
      } else if (k == "phi") c.phi = angle(v);
      else if (k == "theta0") c.theta0s = list(v, angle);
      else if (k == "activation") c.activation = v.get<std::size_t>();
      else if (k == "tau") c.taus = list(v, [](const json& x) { return x.get<double>(); });
      else if (k == "omega") c.omega = v.get<double>();
      else if (k == "grid") c.grid = v.get<std::size_t>();
      else if (k == "steps") c.steps = v.get<std::size_t>();
      else if (k == "states") c.states = v.get<std::size_t>();
      else if (k == "seed") c.seed = v.get<std::uint64_t>();
      else if (k == "jobs") c.jobs = v.get<std::size_t>();
      else if (k == "output") c.output = v.get<std::string>();
      else throw ConfigError("config: unknown key '" + k + "'");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::size_t resolve_jobs(std::size_t requested) {
  if (const char* env = std::getenv("SAL_JOBS"); env && *env) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (*end != '\0' || v == 0) throw ConfigError("SAL_JOBS must be a positive integer");
    return v;
  }
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

// Commands ------------------------------------------------------------------

CommandResult cmd_teleport(const RunConfig& c) {
  const auto pts = grid2(c.n_sectors, c.taus);
  const std::string protocol = c.gate == "none" ? "teleport-state" : "teleport-gate";
  const bool sa_mode = c.mode == "superadiabatic";
  auto points = parallel_map<Point>(pts.size(), resolve_jobs(c.jobs), [&](std::size_t i) {
    const auto [n, tau] = pts[i];
    const TeleportOutcome o = run_teleport(c, n, tau, c.schedules.front());
    Point p;
    p.fields = {sa_mode ? protocol : protocol + "-adiabatic",
                fmt(n),
                c.gate,
                fmt(tau),
                fmt(o.fidelity),
                fmt(o.sigma_sa),
                fmt(o.sigma_ad),
                fmt(worst_bound(o.qsl)),
                fmt(all_ok(o.qsl))};
    if (sa_mode && o.fidelity < 1.0 - kFidelityTol)
      p.violations.push_back(describe("teleport fidelity", o.fidelity, 1.0));
    check_qsl(o.qsl, p.violations);
    return p;
  });
  return collect({"protocol", "n", "gate", "tau", "fidelity", "sigma_sa", "sigma_ad",
                  "qsl_bound", "qsl_ok"},
                 std::move(points));
}

CommandResult cmd_controlled(const RunConfig& c) {
  const std::string protocol = c.command;
  const auto pts = grid2(c.theta0s, c.taus);
  auto points = parallel_map<Point>(pts.size(), resolve_jobs(c.jobs), [&](std::size_t i) {
    const auto [theta0, tau] = pts[i];
    const ControlledOutcome o = run_controlled(c, protocol, theta0, tau);
    Point p;
    p.fields = {protocol,          fmt(c.n_controls), fmt(theta0),
                fmt(tau),          fmt(o.fidelity),   fmt(o.p_success),
                fmt(o.branch0),    fmt(o.sigma),      fmt(o.sigma_closed),
                fmt(worst_bound(o.qsl)), fmt(all_ok(o.qsl))};
    if (protocol == "sce") {
      const double p1 = std::pow(std::sin(theta0 / 2.0), 2);
      if (o.fidelity < 1.0 - kFidelityTol)
        p.violations.push_back(describe("sce fidelity", o.fidelity, 1.0));
      if (std::abs(o.p_success - p1) > kFidelityTol)
        p.violations.push_back(describe("sce success probability", o.p_success, p1));
      if (o.branch0 < 1.0 - kFidelityTol)
        p.violations.push_back(describe("sce failure branch", o.branch0, 1.0));
    }
    if (rel_err(o.sigma, o.sigma_closed) > 1e-6)
      p.violations.push_back(describe("cost closed form", o.sigma, o.sigma_closed));
    check_qsl(o.qsl, p.violations);
    return p;
  });
  return collect({"protocol", "n_controls", "theta0", "tau", "fidelity", "p_success",
                  "branch0_fidelity", "sigma", "sigma_closed", "qsl_bound", "qsl_ok"},
                 std::move(points));
}

CommandResult cmd_cost_sweep(const RunConfig& c) {
  const std::size_t jobs = resolve_jobs(c.jobs);
  if (c.protocol == "teleport") {
    struct Key {
      std::string schedule;
      std::size_t n;
      double tau;
    };
    std::vector<Key> keys;
    for (const std::string& sch : c.schedules)
      for (std::size_t n : c.n_sectors)
        for (double t : c.taus) keys.push_back({sch, n, t});
    auto points = parallel_map<Point>(keys.size(), jobs, [&](std::size_t i) {
      const Key& k = keys[i];
      TeleportSpec spec{k.n, schedule_from(k.schedule), std::nullopt, c.omega};
      const SuperadiabaticHamiltonian sa =
          teleport_superadiabatic(spec, k.tau, cd_method(c), c.grid);
      const double sigma_sa = energy_cost([&](double s) { return sa(s); }, c.grid);
      const double sigma_ad = energy_cost([&](double s) { return sa.base(s); }, c.grid);
      const double closed = cost_teleport(
          k.n, cost_teleport_single(
                   teleport_block_cost(spec.schedule, k.tau, c.omega, c.grid)));
      const double err = rel_err(sigma_sa, closed);
      Point p;
      p.fields = {fmt(c.omega * k.tau), k.schedule,  fmt(k.n),   fmt(sigma_sa),
                  fmt(sigma_ad),        fmt(closed), fmt(err)};
      if (err > 1e-6) p.violations.push_back(describe("teleport cost closed form", sigma_sa, closed));
      if (!(sigma_sa > sigma_ad))
        p.violations.push_back(describe("cost ordering sigma_sa > sigma_ad", sigma_sa, sigma_ad));
      return p;
    });
    return collect({"omega_tau", "schedule", "n", "sigma_sa", "sigma_ad", "closed_form",
                    "rel_err"},
                   std::move(points));
  }
  const auto pts = grid2(c.theta0s, c.taus);
  auto points = parallel_map<Point>(pts.size(), jobs, [&](std::size_t i) {
    const auto [theta0, tau] = pts[i];
    const ControlledSpec spec = controlled_spec(c, theta0, tau);
    const SuperadiabaticHamiltonian sa = cd_controlled(spec);
    const double sigma_sa = energy_cost([&](double s) { return sa(s); }, c.grid);
    const double sigma_ad = energy_cost([&](double s) { return sa.base(s); }, c.grid);
    const double closed = cost_controlled_gate(c.n_controls, theta0, tau, c.omega);
    const double err = rel_err(sigma_sa, closed);
    Point p;
    p.fields = {fmt(c.omega * tau), fmt(theta0),  fmt(c.n_controls), fmt(sigma_sa),
                fmt(sigma_ad),      fmt(closed),  fmt(err)};
    if (err > 1e-6) p.violations.push_back(describe("sce cost closed form", sigma_sa, closed));
    if (!(sigma_sa > sigma_ad))
      p.violations.push_back(describe("cost ordering sigma_sa > sigma_ad", sigma_sa, sigma_ad));
    return p;
  });
  return collect({"omega_tau", "theta0", "n", "sigma_sa", "sigma_ad", "closed_form", "rel_err"},
                 std::move(points));
}

CommandResult cmd_theta_opt(const RunConfig& c) {
  auto points = parallel_map<Point>(c.taus.size(), resolve_jobs(c.jobs), [&](std::size_t i) {
    const double w = c.omega * c.taus[i];
    const double theta = theta_opt(w, CostMode::kSuperadiabatic);
    const double residual = std::abs(stationarity_residual(theta, w));
    const bool feasible = std::tan(theta / 2.0) >= theta;
    const double theta_ad = theta_opt(w, CostMode::kAdiabatic);
    Point p;
    p.fields = {fmt(w), fmt(theta), fmt(residual), fmt(theta_ad), fmt(feasible)};
    if (residual > 1e-5) p.violations.push_back(describe("theta_opt residual", residual, 0.0));
    if (!feasible) p.violations.push_back(describe("theta_opt infeasible", theta, feasibility_onset()));
    return p;
  });
  return collect({"omega_tau", "theta0_min", "residual", "theta0_min_adiabatic", "feasible"},
                 std::move(points));
}

CommandResult cmd_qsl_check(const RunConfig& c) {
  const std::string protocol = c.protocol.empty() ? "teleport" : c.protocol;
  auto points = parallel_map<Point>(c.taus.size(), resolve_jobs(c.jobs), [&](std::size_t i) {
    const double tau = c.taus[i];
    std::vector<QslReport> reports;
    if (protocol == "teleport") {
      reports = run_teleport(c, c.n_sectors.front(), tau, c.schedules.front()).qsl;
    } else {
      reports = run_controlled(c, protocol, c.theta0s.front(), tau).qsl;
    }
    // Report the state with the tightest margin.
    const QslReport* q = &reports.front();
    for (const QslReport& r : reports)
      if (r.tau - r.bound < q->tau - q->bound) q = &r;
    Point p;
    p.fields = {protocol,         fmt(tau),          fmt(q->bures_angle), fmt(q->e_tau),
                fmt(q->bound),    fmt(q->satisfied), fmt(q->chi),         fmt(q->chi_bound),
                fmt(q->chi_satisfied)};
    check_qsl(reports, p.violations);
    return p;
  });
  return collect({"protocol", "tau", "bures_angle", "e_tau", "bound", "satisfied", "chi",
                  "chi_bound", "chi_ok"},
                 std::move(points));
}

CommandResult cmd_selftest(const RunConfig& config) {
  struct Check {
    std::string name;
    std::function<std::pair<double, bool>()> run;
  };
  RunConfig base;
  base.seed = 20260101;
  base.states = 2;
  const std::vector<Check> checks{
      {"teleport_state_n1_tau0.5",
       [&] {
         const double f = run_teleport(base, 1, 0.5, "linear").fidelity;
         return std::pair{f, f >= 1.0 - kFidelityTol};
       }},
      {"teleport_gate_H_n1_tau1",
       [&] {
         RunConfig c = base;
         c.gate = "H";
         const double f = run_teleport(c, 1, 1.0, "linear").fidelity;
         return std::pair{f, f >= 1.0 - kFidelityTol};
       }},
      {"teleport_adiabatic_n1_tau0.5",
       [&] {
         RunConfig c = base;
         c.mode = "adiabatic";
         const double f = run_teleport(c, 1, 0.5, "linear").fidelity;
         return std::pair{f, f < 0.99};
       }},
      {"sce_not_fidelity",
       [&] {
         const double f = run_controlled(base, "sce", kPi, 0.5).fidelity;
         return std::pair{f, f >= 1.0 - kFidelityTol};
       }},
      {"sce_half_success_probability",
       [&] {
         const double p = run_controlled(base, "sce", kPi / 2.0, 0.5).p_success;
         return std::pair{p, std::abs(p - 0.5) <= kFidelityTol};
       }},
      {"cost_single_gate_rel_err",
       [&] {
         RunConfig c = base;
         c.command = "sce";
         const ControlledSpec spec = controlled_spec(c, kPi, 1.0);
         const SuperadiabaticHamiltonian sa = cd_controlled(spec);
         const double e = rel_err(energy_cost([&](double s) { return sa(s); }),
                                  cost_single_gate(kPi, 1.0));
         return std::pair{e, e <= 1e-6};
       }},
      {"teleport_block_cost_rel_err",
       [&] {
         TeleportSpec spec{1, Schedule(), std::nullopt, 1.0};
         const SuperadiabaticHamiltonian sa = teleport_superadiabatic(spec, 1.0);
         const double e = rel_err(energy_cost([&](double s) { return sa(s); }),
                                  cost_teleport_single(teleport_block_cost(Schedule(), 1.0)));
         return std::pair{e, e <= 1e-6};
       }},
      {"theta_opt_residual_wtau1",
       [&] {
         const double r = std::abs(stationarity_residual(theta_opt(1.0), 1.0));
         return std::pair{r, r <= 1e-5};
       }},
      {"qsl_margin_teleport_tau0.1",
       [&] {
         const auto q = run_teleport(base, 1, 0.1, "linear").qsl;
         return std::pair{0.1 - worst_bound(q), all_ok(q)};
       }},
  };
  auto points = parallel_map<Point>(checks.size(), resolve_jobs(config.jobs), [&](std::size_t i) {
    const auto [value, pass] = checks[i].run();
    Point p;
    p.fields = {checks[i].name, fmt(value), fmt(pass)};
    if (!pass) p.violations.push_back("selftest " + checks[i].name + " failed");
    return p;
  });
  return collect({"check", "value", "pass"}, std::move(points));
}

CommandResult run_command(const RunConfig& config) {
  validate(config);
  if (config.command == "teleport") return cmd_teleport(config);
  if (config.command == "cae" || config.command == "sce") return cmd_controlled(config);
  if (config.command == "cost-sweep") return cmd_cost_sweep(config);
  if (config.command == "theta-opt") return cmd_theta_opt(config);
  if (config.command == "qsl-check") return cmd_qsl_check(config);
  return cmd_selftest(config);
}

// Entry point ---------------------------------------------------------------

namespace {

std::vector<double> log_grid(const std::string& spec) {
  const auto parts = split(spec, ',');
  if (parts.size() != 3) throw ConfigError("tau-log must be 'min,max,count'");
  const double lo = parse_number(parts[0]);
  const double hi = parse_number(parts[1]);
  const double count = parse_number(parts[2]);
  if (!(lo > 0.0) || !(hi >= lo) || count < 1 || count != std::floor(count))
    throw ConfigError("tau-log must be 'min,max,count' with 0 < min <= max");
  const auto m = static_cast<std::size_t>(count);
  std::vector<double> out;
  for (std::size_t i = 0; i < m; ++i) {
    const double f = m == 1 ? 0.0 : double(i) / double(m - 1);
    out.push_back(lo * std::pow(hi / lo, f));
  }
  return out;
}

}  // namespace

int main_entry(int argc, char** argv) {
  CLI::App app{"Shortcuts-to-adiabaticity simulator"};
  RunConfig cli_cfg;
  std::string config_path, tau_log, axis_text, phi_text, activation_text;
  std::vector<std::string> theta_text;
  app.add_option("command", cli_cfg.command,
                 "teleport | cae | sce | cost-sweep | theta-opt | qsl-check | selftest")
      ->required();
  auto* o_n = app.add_option("--n,--n-sectors", cli_cfg.n_sectors, "teleport sectors (1-3)");
  auto* o_gate = app.add_option("--gate", cli_cfg.gate, "none | X | Y | Z | H | T | CNOT | Toffoli | custom");
  auto* o_mode = app.add_option("--mode", cli_cfg.mode, "superadiabatic | adiabatic");
  auto* o_cd = app.add_option("--cd", cli_cfg.cd, "analytic | generic");
  auto* o_sched = app.add_option("--schedule", cli_cfg.schedules, "linear | trig | exp");
  auto* o_tau = app.add_option("--tau", cli_cfg.taus, "protocol time(s)");
  auto* o_taulog = app.add_option("--tau-log", tau_log, "log-spaced taus: min,max,count");
  auto* o_grid = app.add_option("--grid", cli_cfg.grid, "s grid for frames and costs (odd)");
  auto* o_steps = app.add_option("--steps", cli_cfg.steps, "integrator steps (0: auto)");
  auto* o_seed = app.add_option("--seed", cli_cfg.seed, "RNG seed");
  auto* o_states = app.add_option("--states", cli_cfg.states, "random input states per point");
  auto* o_nc = app.add_option("--n-controls", cli_cfg.n_controls, "control qubits");
  auto* o_axis = app.add_option("--axis", axis_text, "x | y | z | a,b,c");
  auto* o_phi = app.add_option("--phi", phi_text, "phase, e.g. pi or 0.5");
  auto* o_theta = app.add_option("--theta0", theta_text, "final angle(s), e.g. pi pi/2");
  auto* o_act = app.add_option("--activation", activation_text, "control pattern index");
  auto* o_proto = app.add_option("--protocol", cli_cfg.protocol, "teleport | sce | cae");
  auto* o_omega = app.add_option("--omega", cli_cfg.omega, "energy scale");
  auto* o_jobs = app.add_option("--jobs", cli_cfg.jobs, "worker threads (SAL_JOBS overrides)");
  app.add_option("--config", config_path, "JSON config; explicit flags override it");
  auto* o_out = app.add_option("--output", cli_cfg.output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config '" + config_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      apply_json(cfg, ss.str());
    }
    cfg.command = cli_cfg.command;
    auto given = [](const CLI::Option* o) { return o->count() > 0; };
    if (given(o_n)) cfg.n_sectors = cli_cfg.n_sectors;
    if (given(o_gate)) cfg.gate = cli_cfg.gate;
    if (given(o_mode)) cfg.mode = cli_cfg.mode;
    if (given(o_cd)) cfg.cd = cli_cfg.cd;
    if (given(o_sched)) cfg.schedules = cli_cfg.schedules;
    if (given(o_tau)) cfg.taus = cli_cfg.taus;
    if (given(o_taulog)) cfg.taus = log_grid(tau_log);
    if (given(o_grid)) cfg.grid = cli_cfg.grid;
    if (given(o_steps)) cfg.steps = cli_cfg.steps;
    if (given(o_seed)) cfg.seed = cli_cfg.seed;
    if (given(o_states)) cfg.states = cli_cfg.states;
    if (given(o_nc)) cfg.n_controls = cli_cfg.n_controls;
    if (given(o_axis)) cfg.axis = parse_axis(axis_text);
    if (given(o_phi)) cfg.phi = parse_angle(phi_text);
    if (given(o_theta)) {
      cfg.theta0s.clear();
      for (const std::string& t : theta_text) cfg.theta0s.push_back(parse_angle(t));
    }
    if (given(o_act)) cfg.activation = static_cast<std::size_t>(parse_number(activation_text));
    if (given(o_proto)) cfg.protocol = cli_cfg.protocol;
    if (given(o_omega)) cfg.omega = cli_cfg.omega;
    if (given(o_jobs)) cfg.jobs = cli_cfg.jobs;
    if (given(o_out)) cfg.output = cli_cfg.output;
    if (cfg.command == "cost-sweep" && cfg.protocol.empty()) cfg.protocol = "sce";
    validate(cfg);
    resolve_jobs(cfg.jobs);
  } catch (const ConfigError& e) {
    std::cerr << "sal: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "sal: config error: " << e.what() << '\n';
    return kExitConfig;
  }

  CommandResult result;
  try {
    result = run_command(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "sal: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "sal: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DimensionMismatch& e) {
    std::cerr << "sal: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const Error& e) {
    std::cerr << "sal: invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  }

  if (cfg.output.empty()) {
    std::cout << result.csv;
  } else {
    std::ofstream out(cfg.output, std::ios::binary);
    if (!out) {
      std::cerr << "sal: cannot write '" << cfg.output << "'\n";
      return kExitConfig;
    }
    out << result.csv;
  }
  for (const std::string& v : result.violations) std::cerr << "sal: " << v << '\n';
  return result.exit_code;
}

}  // namespace sal::cli
