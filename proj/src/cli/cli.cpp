#include "menger/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "menger/menger.hpp"

namespace menger::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Options {
  double p = 2.5, q = 2.0;
  Eigen::Index N = 0;  // 0: subcommand default
  std::string Ns = "64,128,256,512";
  int dim = 3;
  std::string preset;
  std::string input;
  std::string out;
  int steps = 200;
  double step_size = 1e-3;
  double tol = 1e-6;
  double s = 0.5, rho = 2.0;
  std::string variant = "first";
  std::string ks = "8,16,32,64";
  double lambda = 0.0;
  bool deterministic = true;
  int threads = 0;
  bool fast = false;
  std::string policy;
  std::string method = "decomposed";
  std::string deltas = "0.1,0.03,0.01,0.003";
  bool fd = false;
  // flow extras
  double armijo_c = 1e-4, backtrack = 0.5, guard = 0.25;
  int resample_every = 10, snapshot_every = 0;
  std::string preconditioner = "spectral";
};

// validation problems inside the dispatcher
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::istringstream cs(cell);
    T v;
    if (!(cs >> v) || !(cs >> std::ws).eof()) throw UsageError(std::string("bad entry '") + cell + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw UsageError(std::string("empty list for ") + what);
  return out;
}

std::string regime_words(RangeLabel l) {
  switch (l) {
    case RangeLabel::NonRepulsive: return "non-repulsive";
    case RangeLabel::SubcriticalKnotEnergy: return "sub-critical";
    case RangeLabel::NondegenerateSubcritical: return "non-degenerate sub-critical";
    case RangeLabel::Singular: return "singular";
    case RangeLabel::Strange: return "strange";
    case RangeLabel::Boundary: return "boundary";
  }
  return "?";
}

EnergyParams params_of(const Options& o) { return EnergyParams::make(o.p, o.q); }

void warn_regime(const Options& o, std::ostream& err) {
  const RangeClass rc = classify(o.p, o.q);
  if (!is_subcritical(rc.label))
    err << "warning: (p,q) = (" << o.p << "," << o.q << ") lies in the " << regime_words(rc.label)
        << " regime, outside the sub-critical range\n";
}

QuadratureSpec quad_of(const Options& o, DegeneratePolicy fallback) {
  QuadratureSpec q;
  q.deterministic_reduction = o.deterministic;
  if (o.policy.empty())
    q.degenerate_policy = fallback;
  else if (o.policy == "skip")
    q.degenerate_policy = DegeneratePolicy::skip_coincident;
  else if (o.policy == "zeta")
    q.degenerate_policy = DegeneratePolicy::zeta_corrected;
  else
    throw UsageError("--policy must be skip or zeta");
  return q;
}

const char* policy_name(DegeneratePolicy p) {
  return p == DegeneratePolicy::zeta_corrected ? "zeta_corrected" : "skip_coincident";
}

Curve load_curve(const Options& o, bool need_arclength, std::ostream& err) {
  if (o.input.empty() == o.preset.empty()) throw UsageError("give exactly one of --input or --preset");
  if (!o.preset.empty()) return make_preset(o.preset, o.N, o.dim);
  Curve c = read_curve(o.input);
  if (need_arclength && !c.is_arclength()) {
    err << "note: input is not arc-length parametrized, resampling to " << c.size() << " equal chords\n";
    c = resample_arclength(c, c.size());
  }
  return c;
}

fs::path out_dir(const Options& o, const char* fallback) {
  fs::path d = o.out.empty() ? fs::path(fallback) : fs::path(o.out);
  fs::create_directories(d);
  return d;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << "\n"; }

json curve_summary(const Curve& c) {
  return {{"N", c.size()}, {"dim", c.dim()}, {"length", c.length()}, {"is_arclength", c.is_arclength()}};
}

int cmd_classify(const Options& o, std::ostream& out) {
  const RangeClass rc = classify(o.p, o.q);
  const EnergyParams e = params_of(o);
  emit(out, {{"label", to_string(rc.label)},
             {"detail", rc.detail},
             {"p", o.p},
             {"q", o.q},
             {"s", e.s()},
             {"kernel_exponent", e.kernel_exponent()},
             {"alpha", e.alpha()}});
  return kOk;
}

int cmd_energy(const Options& o, std::ostream& out, std::ostream& err) {
  const EnergyParams e = params_of(o);
  const Curve c = load_curve(o, true, err);
  const QuadratureSpec q = quad_of(o, DegeneratePolicy::skip_coincident);
  EnergyReport r;
  if (o.method == "full")
    r = energy_full(c, e, q);
  else if (o.method == "decomposed")
    r = energy_decomposed(c, e, q);
  else
    throw UsageError("--method must be full or decomposed");
  emit(out, {{"value", r.value},
             {"N", r.N},
             {"p", o.p},
             {"q", o.q},
             {"class", to_string(classify(o.p, o.q).label)},
             {"decomposition_used", r.decomposition_used},
             {"kernel_evaluations", r.kernel_evaluations},
             {"policy", policy_name(q.degenerate_policy)},
             {"diagonal_correction", r.diagonal_correction}});
  return kOk;
}

int cmd_converge(const Options& o, std::ostream& out) {
  const EnergyParams e = params_of(o);
  if (o.preset.empty()) throw UsageError("converge needs --preset");
  const auto Ns = parse_list<Eigen::Index>(o.Ns, "--Ns");
  const PresetSpec ps = PresetSpec::parse(o.preset);
  ConvergenceTable t;
  if (o.policy.empty())
    t = energy_convergence(ps, o.dim, e, Ns);
  else
    t = energy_convergence(ps, o.dim, e, Ns, quad_of(o, DegeneratePolicy::skip_coincident).degenerate_policy);
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"N", r.N}, {"value", r.value}, {"raw", r.raw}});
  emit(out, {{"preset", ps.name()},
             {"p", o.p},
             {"q", o.q},
             {"class", to_string(classify(o.p, o.q).label)},
             {"policy", policy_name(t.policy)},
             {"rows", rows},
             {"slope", t.slope},
             {"differences", t.differences},
             {"last_relative_change", t.last_relative_change()}});
  return kOk;
}

int cmd_strands(const Options& o, std::ostream& out) {
  const EnergyParams e = params_of(o);
  const auto deltas = parse_list<double>(o.deltas, "--delta");
  const int N = static_cast<int>(o.N);
  json rows = json::array();
  std::vector<double> vals;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (double d : deltas) {
    const double v = strand_pair_experiment(d, e, N);
    vals.push_back(v);
    rows.push_back({{"delta", d}, {"value", v}});
    sx += std::log(d);
    sy += std::log(v);
  }
  const double n = double(deltas.size());
  for (size_t i = 0; i < deltas.size(); ++i) {
    const double dx = std::log(deltas[i]) - sx / n;
    sxx += dx * dx;
    sxy += dx * (std::log(vals[i]) - sy / n);
  }
  const auto [lo, hi] = std::minmax_element(vals.begin(), vals.end());
  emit(out, {{"p", o.p},
             {"q", o.q},
             {"N", N},
             {"rows", rows},
             {"slope", sxx > 0 ? sxy / sxx : 0.0},
             {"variation", *hi / *lo - 1.0}});
  return kOk;
}

int cmd_grad(const Options& o, std::ostream& out, std::ostream& err) {
  const EnergyParams e = params_of(o);
  warn_regime(o, err);
  const Curve c = load_curve(o, false, err);
  const QuadratureSpec q = quad_of(o, DegeneratePolicy::skip_coincident);
  const auto pg = projected_gradient(c, e, q);
  json j{{"residual", pg.residual},
         {"lambda", pg.lambda},
         {"energy", discrete_energy(c, e, q)},
         {"gradient_sup_norm", pg.energy_gradient.sup_norm()},
         {"policy", policy_name(q.degenerate_policy)},
         {"curve", curve_summary(c)}};
  if (o.fd) {
    // central differences of the discrete energy, step 1e-5
    const double hstep = 1e-5;
    double worst = 0;
    for (Eigen::Index i = 0; i < c.size(); ++i)
      for (int d = 0; d < c.dim(); ++d) {
        Eigen::MatrixXd P = c.vertices();
        P(d, i) += hstep;
        const double ep = discrete_energy(Curve{P}, e, q);
        P(d, i) -= 2 * hstep;
        const double em = discrete_energy(Curve{P}, e, q);
        const double fd = (ep - em) / (2 * hstep);
        const double an = pg.energy_gradient.vectors(d, i) / double(c.size());
        worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-300));
      }
    j["max_fd_error"] = worst;
  }
  if (!o.out.empty()) {
    const fs::path dir = out_dir(o, ".");
    std::ofstream csv(dir / "gradient.csv");
    csv << std::setprecision(17) << (c.dim() == 3 ? "i,gx,gy,gz,px,py,pz\n" : "i,gx,gy,px,py\n");
    for (Eigen::Index i = 0; i < c.size(); ++i) {
      csv << i;
      for (int d = 0; d < c.dim(); ++d) csv << "," << pg.energy_gradient.vectors(d, i);
      for (int d = 0; d < c.dim(); ++d) csv << "," << pg.field.vectors(d, i);
      csv << "\n";
    }
  }
  emit(out, j);
  return kOk;
}

int cmd_flow(const Options& o, std::ostream& out, std::ostream& err) {
  FlowConfig cfg;
  cfg.params = params_of(o);
  warn_regime(o, err);
  cfg.max_steps = o.steps;
  cfg.initial_step = o.step_size;
  cfg.residual_tol = o.tol;
  cfg.armijo_c = o.armijo_c;
  cfg.backtrack_factor = o.backtrack;
  cfg.guard_distance_factor = o.guard;
  cfg.resample_every = o.resample_every;
  cfg.snapshot_every = o.snapshot_every;
  const DegeneratePolicy fallback =
      o.p - o.q < 1.0 ? DegeneratePolicy::zeta_corrected : DegeneratePolicy::skip_coincident;
  cfg.quad = quad_of(o, fallback);
  if (o.preconditioner == "spectral")
    cfg.preconditioner = Preconditioner::spectral;
  else if (o.preconditioner == "none")
    cfg.preconditioner = Preconditioner::none;
  else
    throw UsageError("--preconditioner must be spectral or none");
  cfg.validate();
  const Curve c = load_curve(o, false, err);
  const FlowResult res = run_flow(c, cfg);

  const fs::path dir = out_dir(o, "flow_out");
  {
    std::ofstream h(dir / "history.csv");
    h << std::setprecision(17) << "step,energy,residual,lambda,step_size,min_dist\n";
    for (const auto& r : res.history)
      h << r.step << "," << r.energy << "," << r.residual << "," << r.lambda << "," << r.step_size << "," << r.min_dist
        << "\n";
  }
  for (const auto& [k, snap] : res.snapshots) write_curve(snap, (dir / ("snap_" + std::to_string(k) + ".json")).string());
  write_curve(res.state.curve, (dir / "final.json").string());

  json j{{"steps", res.state.step_index},
         {"energy", res.state.energy},
         {"initial_energy", res.history.front().energy},
         {"residual", res.state.residual},
         {"lambda", res.state.lambda},
         {"converged", res.state.converged},
         {"guard_trips", res.state.guard_trips},
         {"resamples_rejected", res.state.resamples_rejected},
         {"resample_energy_change", res.state.resample_energy_change},
         {"min_dist", res.state.min_distance},
         {"snapshots", res.snapshots.size()},
         {"out", dir.string()}};
  if (res.failure) j["failure"] = *res.failure;
  emit(out, j);
  return res.failure ? kNumeric : kOk;
}

int cmd_seminorm(const Options& o, std::ostream& out, std::ostream& err) {
  const Curve c = load_curve(o, true, err);
  SeminormSpec spec{o.s, o.rho, SeminormVariant::first_difference};
  spec.validate();
  json j{{"s", o.s}, {"rho", o.rho}, {"variant", o.variant}};
  if (o.variant == "first") {
    j["value"] = seminorm_first(c, spec);
  } else if (o.variant == "second") {
    spec.variant = SeminormVariant::second_difference;
    j["value"] = seminorm_second(c, spec);
  } else if (o.variant == "both") {
    const EquivalenceReport r = equivalence_check(c, spec);
    j["value"] = r.second;
    j["first"] = r.first;
    j["second"] = r.second;
    j["ratio"] = r.ratio;
    j["interval"] = {r.lower, r.upper};
    j["within"] = r.within;
  } else {
    throw UsageError("--variant must be first, second or both");
  }
  emit(out, j);
  return kOk;
}

int cmd_symbol(const Options& o, std::ostream& out, std::ostream& err) {
  warn_regime(o, err);
  const auto ks = parse_list<int>(o.ks, "--ks");
  const SymbolTable t = rho_asymptotic(o.p, ks);
  json rows = json::array();
  std::ostringstream csv;
  csv << std::setprecision(17) << "k,rho,scaled,tilde_rho\n";
  for (size_t i = 0; i < ks.size(); ++i) {
    const double tr = tilde_rho(o.p, o.lambda, ks[i]);
    rows.push_back({{"k", ks[i]}, {"rho", t.rho[i]}, {"scaled", t.scaled[i]}, {"tilde_rho", tr}});
    csv << ks[i] << "," << t.rho[i] << "," << t.scaled[i] << "," << tr << "\n";
  }
  if (!o.out.empty()) {
    std::ofstream f(out_dir(o, ".") / "symbol.csv");
    f << csv.str();
  }
  emit(out, {{"p", o.p},
             {"lambda", o.lambda},
             {"plateau", t.plateau},
             {"slope", t.slope},
             {"expected_slope", 3.0 * o.p - 4.0},
             {"deviation", t.deviation},
             {"rows", rows}});
  return kOk;
}

int resolve_threads(const Options& o) {
  if (o.threads > 0) return o.threads;
  if (const char* env = std::getenv("MENGER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<int>(v);
  }
  return 0;
}

}  // namespace

int parse_and_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Integral Menger curvature energies E^{p,q} on closed polygons", "menger"};
  app.require_subcommand(1);
  Options o;

  app.add_flag("--deterministic,!--nondeterministic", o.deterministic, "fixed reduction order (default on)");
  app.add_option("--threads", o.threads, "worker threads (default: MENGER_THREADS or all)")->check(CLI::NonNegativeNumber);

  auto pq = [&](CLI::App* s) {
    s->add_option("--p", o.p, "chord exponent p")->capture_default_str();
    s->add_option("--q", o.q, "wedge exponent q")->capture_default_str();
  };
  auto curve_opts = [&](CLI::App* s, Eigen::Index defaultN) {
    s->add_option("--preset", o.preset, "circle, ellipse(a), torus_knot(a,b), polygon(k), perturbed_circle(eps,seed)");
    s->add_option("--input", o.input, "curve file (.json or .csv)");
    s->add_option("--N", o.N, "number of vertices for presets (default " + std::to_string(defaultN) + ")")
        ->check(CLI::PositiveNumber);
    s->add_option("--dim", o.dim, "ambient dimension for presets")->check(CLI::IsMember({2, 3}))->capture_default_str();
  };
  auto common = [&](CLI::App* s) {
    s->add_option("--out", o.out, "output directory");
    s->add_flag("--deterministic,!--nondeterministic", o.deterministic, "fixed reduction order (default on)");
    s->add_option("--threads", o.threads, "worker threads")->check(CLI::NonNegativeNumber);
  };

  auto* classify_cmd = app.add_subcommand("classify", "regime of (p,q)");
  pq(classify_cmd);

  auto* energy_cmd = app.add_subcommand("energy", "evaluate E^{p,q}");
  pq(energy_cmd);
  curve_opts(energy_cmd, 64);
  common(energy_cmd);
  energy_cmd->add_option("--policy", o.policy, "skip or zeta (diagonal correction)");
  energy_cmd->add_option("--method", o.method, "full or decomposed")->capture_default_str();

  auto* converge_cmd = app.add_subcommand("converge", "refinement study on a preset");
  pq(converge_cmd);
  converge_cmd->add_option("--preset", o.preset, "preset curve")->required();
  converge_cmd->add_option("--N", o.Ns, "comma separated grid sizes")->capture_default_str();
  converge_cmd->add_option("--dim", o.dim, "ambient dimension")->check(CLI::IsMember({2, 3}));
  converge_cmd->add_option("--policy", o.policy, "skip or zeta (default: zeta when p-q<1)");
  common(converge_cmd);

  auto* strands_cmd = app.add_subcommand("strands", "two straight strands at distance delta");
  pq(strands_cmd);
  strands_cmd->add_option("--N", o.N, "cells per strand, even (default 200)")->check(CLI::PositiveNumber);
  strands_cmd->add_option("--delta", o.deltas, "comma separated strand distances")->capture_default_str();
  common(strands_cmd);

  auto* grad_cmd = app.add_subcommand("grad", "gradient, Lagrange multiplier and residual");
  pq(grad_cmd);
  curve_opts(grad_cmd, 64);
  common(grad_cmd);
  grad_cmd->add_option("--policy", o.policy, "skip or zeta");
  grad_cmd->add_flag("--fd", o.fd, "also compare with central finite differences");

  auto* flow_cmd = app.add_subcommand("flow", "length-constrained descent");
  pq(flow_cmd);
  curve_opts(flow_cmd, 64);
  common(flow_cmd);
  flow_cmd->add_option("--steps", o.steps, "maximum number of steps")->capture_default_str();
  flow_cmd->add_option("--step-size", o.step_size, "initial step size")->capture_default_str();
  flow_cmd->add_option("--tol", o.tol, "residual tolerance")->capture_default_str();
  flow_cmd->add_option("--armijo-c", o.armijo_c, "sufficient decrease constant")->capture_default_str();
  flow_cmd->add_option("--backtrack", o.backtrack, "backtracking factor")->capture_default_str();
  flow_cmd->add_option("--guard", o.guard, "guard distance as a fraction of the mean edge")->capture_default_str();
  flow_cmd->add_option("--resample-every", o.resample_every, "resampling cadence (0: never)")->capture_default_str();
  flow_cmd->add_option("--snapshot-every", o.snapshot_every, "snapshot cadence (0: none)")->capture_default_str();
  flow_cmd->add_option("--preconditioner", o.preconditioner, "spectral or none")->capture_default_str();
  flow_cmd->add_option("--policy", o.policy, "skip or zeta");

  auto* seminorm_cmd = app.add_subcommand("seminorm", "fractional Sobolev seminorms");
  curve_opts(seminorm_cmd, 256);
  common(seminorm_cmd);
  seminorm_cmd->add_option("--s", o.s, "differentiability in (0,1)")->capture_default_str();
  seminorm_cmd->add_option("--rho", o.rho, "integrability >= 1")->capture_default_str();
  seminorm_cmd->add_option("--variant", o.variant, "first, second or both")->capture_default_str();

  auto* symbol_cmd = app.add_subcommand("symbol", "Fourier symbol rho_k of the leading bilinear form");
  symbol_cmd->add_option("--p", o.p, "chord exponent p")->capture_default_str();
  symbol_cmd->add_option("--ks", o.ks, "comma separated wave numbers")->capture_default_str();
  symbol_cmd->add_option("--lambda", o.lambda, "Lagrange multiplier in tilde rho")->capture_default_str();
  common(symbol_cmd);

  auto* check_cmd = app.add_subcommand("check", "run the invariant battery");
  check_cmd->add_flag("--fast", o.fast, "smaller sizes");
  common(check_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsage;
  }

  if (o.N == 0) o.N = *strands_cmd ? 200 : *seminorm_cmd ? 256 : 64;
  set_num_threads(resolve_threads(o));
  try {
    if (*classify_cmd) return cmd_classify(o, out);
    if (*energy_cmd) return cmd_energy(o, out, err);
    if (*converge_cmd) return cmd_converge(o, out);
    if (*strands_cmd) return cmd_strands(o, out);
    if (*grad_cmd) return cmd_grad(o, out, err);
    if (*flow_cmd) return cmd_flow(o, out, err);
    if (*seminorm_cmd) return cmd_seminorm(o, out, err);
    if (*symbol_cmd) return cmd_symbol(o, out, err);
    if (*check_cmd) return check_suite(o.fast, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.is_numeric() ? kNumeric : kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumeric;
  }
  return kUsage;
}

}  // namespace menger::cli
