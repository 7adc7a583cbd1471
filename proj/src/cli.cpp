// hillcert — certified Floquet stability via Hill-matrix exponentials
// SPDX-License-Identifier: MIT
#include "hillcert/cli.hpp"

#include <cmath>
#include <exception>
#include <iostream>
#include <limits>
#include <thread>

#include "hillcert/bounds.hpp"
#include "hillcert/floquet.hpp"
#include "hillcert/fourier.hpp"
#include "hillcert/hbm.hpp"
#include "hillcert/io.hpp"
#include "hillcert/projection.hpp"
#include "hillcert/series.hpp"
#include "hillcert/systems.hpp"

namespace hillcert {

namespace {

constexpr int kMaxDerivedOrder = 1000;  // N* scan ceiling for E_des requests

const char* kUsage =
    "usage: hillcert <analyze|sweep|validate|xi|duffing> [--config <file>]\n"
    "                [--system <name>] [--N <int>] [--edes <float>]\n"
    "                [--formulation direct|subharmonic] [--t <float>]\n"
    "                [--out <path>] [--circle-samples <int>]\n"
    "                [--axis-samples <int>] [--<param> <value> ...]\n"
    "Systems: scalar (beta, gamma), mathieu (delta, eps), duffing[1|2]\n"
    "         (alpha, beta, delta, F), series_file=<json>, solution_file=<json>.\n"
    "Exit codes: 0 ok, 1 usage, 2 certificate inapplicable, 3 numeric failure.\n";

double get_param(const RunConfig& config, const std::string& key,
                 double fallback) {
  auto it = config.params.find(key);
  return it == config.params.end() ? fallback : it->second;
}

DuffingParams resolve_duffing_params(const RunConfig& config,
                                     const std::string& system) {
  DuffingParams base = duffing_config(system == "duffing2" ? 2 : 1);
  base.alpha = get_param(config, "alpha", base.alpha);
  base.beta = get_param(config, "beta", base.beta);
  base.delta = get_param(config, "delta", base.delta);
  base.F = get_param(config, "F", base.F);
  base.omega = get_param(config, "omega", base.omega);
  return base;
}

// A system ready for analysis, plus what the envelope policy needs to know:
// builtin support-1 systems get the bound-optimal envelope, everything else
// the least-squares fit (explicit --env-a/--env-b always win).
struct SystemBundle {
  FourierMatrixSeries series;
  std::string name;
  bool support_one = false;
  double beta0 = 0.0;   // ||J_0||_2 for the optimal-envelope parametrization
  double gamma0 = 0.0;  // ||J_{+-1}||_2
  bool dichotomy = false;  // undamped 2x2: the two-set circle/axis test applies
};

SystemBundle build_system(const RunConfig& config) {
  if (!config.series_file.empty() && !config.solution_file.empty())
    throw usage_error("series_file and solution_file are mutually exclusive");
  SystemBundle sys;
  if (!config.series_file.empty()) {
    sys.series = parse_series_json(read_text_file(config.series_file));
    sys.name = "series-file";
    return sys;
  }
  if (!config.solution_file.empty()) {
    auto [sol, params] = parse_solution_json(read_text_file(config.solution_file));
    sys.series = linearized_series(sol, params);
    sys.name = "duffing-solution";
    return sys;
  }
  const std::string& system = config.system;
  if (system.empty())
    throw usage_error(
        "no system selected (set system=scalar|mathieu|duffing[1|2] or "
        "series_file/solution_file)");
  if (system == "scalar") {
    double beta = get_param(config, "beta", 0.01);
    double gamma = get_param(config, "gamma", 0.8);
    double omega = get_param(config, "omega", 1.0);
    sys.series = scalar_system(beta, gamma, omega);
    sys.name = "scalar";
    sys.support_one = true;
    sys.beta0 = std::abs(beta);
    sys.gamma0 = std::abs(gamma);
    return sys;
  }
  if (system == "mathieu") {
    double delta = get_param(config, "delta", 1.0);
    double eps = get_param(config, "eps", 0.1);
    double omega = get_param(config, "omega", 2.0);
    sys.series = mathieu_system(delta, eps, omega);
    sys.name = "mathieu";
    sys.support_one = true;
    sys.beta0 = spectral_norm(sys.series.coeff(0));
    sys.gamma0 = std::abs(eps) / 2.0;
    sys.dichotomy = true;
    return sys;
  }
  if (system == "duffing" || system == "duffing1" || system == "duffing2") {
    DuffingParams params = resolve_duffing_params(config, system);
    PeriodicSolution sol = solve_duffing_hbm(params, config.n_h);
    sys.series = linearized_series(sol, params);
    sys.name = system;
    return sys;
  }
  throw usage_error("unknown system '" + system + "'");
}

int exponent_for(Formulation formulation, int N) {
  return formulation == Formulation::Subharmonic ? 2 * N : N;
}

/// Envelope used at order N for a bound targeted at time t. Support-1
/// builtins with harmonics get the closed-form optimal envelope; a harmonic-
/// free system admits any decay rate (b = 50 here); otherwise the fit.
DecayEnvelope envelope_at(const SystemBundle& sys, const RunConfig& config,
                          Formulation formulation, double t, int N) {
  if (config.env_a.has_value() || config.env_b.has_value()) {
    if (!(config.env_a.has_value() && config.env_b.has_value()))
      throw usage_error("env_a and env_b must be given together");
    DecayEnvelope env = make_envelope(*config.env_a, *config.env_b);
    if (!envelope_majorizes(env, sys.series))
      throw envelope_error(
          "explicit envelope a = " + format_double(env.a) +
          ", b = " + format_double(env.b) +
          " does not majorize the coefficient norms ||J_k||_2");
    return env;
  }
  if (sys.support_one) {
    if (sys.gamma0 > 0.0) {
      OptimalEnvelope opt = optimal_finite_support_envelope(
          sys.beta0, sys.gamma0, t, exponent_for(formulation, N));
      return make_envelope(opt.a, opt.b);
    }
    return make_envelope(std::max(sys.beta0, 1e-300), 50.0);
  }
  DecayEnvelope env = fit_decay_envelope(sys.series);
  // A harmonic-free series fits b = +inf (any decay rate holds); certificates
  // need a finite rate, and with no harmonics every finite b majorizes.
  if (std::isinf(env.b)) env = make_envelope(env.a, 50.0);
  return env;
}

/// Smallest order whose certificate at time t reaches E_des (per-order
/// optimal envelopes for support-1 builtins, the fixed envelope otherwise).
int derive_order(const SystemBundle& sys, const RunConfig& config,
                 Formulation formulation, double t, double E_des) {
  if (!(E_des > 0.0)) throw usage_error("edes must be positive");
  if (!sys.support_one || config.env_a.has_value()) {
    // Fixed envelope: the closed-form inversion applies.
    return required_truncation(envelope_at(sys, config, formulation, t, 1), t,
                               E_des, formulation);
  }
  for (int N = 1; N <= kMaxDerivedOrder; ++N) {
    double bound = std::numeric_limits<double>::infinity();
    try {
      bound = error_bound_value(envelope_at(sys, config, formulation, t, N), N,
                                t, formulation);
    } catch (const envelope_error&) {
      // Optimal eps >= 1 at this order; no certificate yet.
    }
    if (bound <= E_des) return N;
  }
  throw envelope_error(
      "no truncation order up to " + std::to_string(kMaxDerivedOrder) +
      " certifies E_des = " + format_double(E_des) +
      " (envelope family has b <= ln 2 or the bound plateaus)");
}

FundamentalApprox project_fundamental(const FourierMatrixSeries& series,
                                      Formulation formulation, int N,
                                      double t) {
  switch (formulation) {
    case Formulation::Direct:
      return direct_fundamental(series, N, t);
    case Formulation::Subharmonic:
      return subharmonic_fundamental(series, N, t);
    case Formulation::Reference:
    default:
      return reference_fundamental(series, t);
  }
}

const char* formulation_name(Formulation formulation) {
  switch (formulation) {
    case Formulation::Direct:
      return "direct";
    case Formulation::Subharmonic:
      return "subharmonic";
    default:
      return "reference";
  }
}

void emit_artifact(const RunConfig& config, const std::string& text) {
  if (config.out.empty())
    std::cout << text;
  else
    write_text_file(config.out, text);
}

void append_complex_matrix(std::string& out, const ComplexMatrix& M) {
  out += "{ \"re\": [";
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    if (r > 0) out += ", ";
    out += '[';
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c > 0) out += ", ";
      out += format_double(M(r, c).real());
    }
    out += ']';
  }
  out += "], \"im\": [";
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    if (r > 0) out += ", ";
    out += '[';
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c > 0) out += ", ";
      out += format_double(M(r, c).imag());
    }
    out += ']';
  }
  out += "] }";
}

void append_complex_list(std::string& out, const ComplexVector& v) {
  out += '[';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) out += ", ";
    out += "{ \"re\": " + format_double(v(i).real()) +
           ", \"im\": " + format_double(v(i).imag()) + " }";
  }
  out += ']';
}

/// Report label for a verdict.  Certified and plain-numeric statuses pass
/// through; an undetermined verdict (certification attempted but the bound was
/// too large to decide) degrades to the uncertified numeric label so reports
/// always carry one of the four stable/unstable labels.
std::string verdict_label(const StabilityVerdict& verdict) {
  if (verdict.status != StabilityStatus::Undetermined)
    return to_string(verdict.status);
  const double radius =
      verdict.multipliers.size() > 0 ? std::abs(verdict.multipliers(0)) : 0.0;
  return to_string(radius <= 1.0 + 1e-9 ? StabilityStatus::NumericStable
                                        : StabilityStatus::NumericUnstable);
}

std::vector<double> linspace(double lo, double hi, int count) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i)
    xs[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return xs;
}

/// Index-ordered parallel map; worker threads stride over the index space so
/// the aggregated output is independent of scheduling.
void parallel_for(int count, const std::function<void(int)>& work) {
  int n_threads = std::min(threads_from_env(), std::max(count, 1));
  if (n_threads <= 1) {
    for (int i = 0; i < count; ++i) work(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n_threads);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int w = 0; w < n_threads; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (int i = w; i < count; i += n_threads) work(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& th : pool) th.join();
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

int cmd_analyze(const RunConfig& config) {
  SystemBundle sys = build_system(config);
  const double T = sys.series.period();
  const double t_bound = config.t.value_or(T);
  if (!(t_bound > 0.0)) throw usage_error("t must be positive");
  const Formulation formulation = config.formulation;

  if (config.N.has_value() == config.E_des.has_value())
    throw usage_error("analyze requires exactly one of --N / --edes");
  if (formulation == Formulation::Reference && config.E_des.has_value())
    throw usage_error(
        "the reference formulation carries no certificate; --edes cannot "
        "derive a truncation order (use --N)");

  int N_used = 0;
  DecayEnvelope env_T = make_envelope(1.0, 1.0);  // placeholder for reference
  double bound_T = std::numeric_limits<double>::infinity();
  double bound_t = std::numeric_limits<double>::infinity();
  if (formulation != Formulation::Reference) {
    N_used = config.N.has_value()
                 ? *config.N
                 : derive_order(sys, config, formulation, t_bound, *config.E_des);
    env_T = envelope_at(sys, config, formulation, T, N_used);
    // Throws envelope_error (exit 2) when b <= ln 2 — a certificate is
    // always requested for the projection formulations.
    bound_T = error_bound_value(env_T, N_used, T, formulation);
    bound_t = error_bound_value(
        envelope_at(sys, config, formulation, t_bound, N_used), N_used,
        t_bound, formulation);
  } else {
    N_used = config.N.value_or(0);
  }

  FundamentalApprox monodromy =
      project_fundamental(sys.series, formulation, std::max(N_used, 1), T);
  StabilityVerdict verdict = analyze_stability(
      sys.series, env_T, std::max(N_used, 1), formulation, sys.dichotomy,
      config.circle_samples, config.axis_samples);

  std::string out = "{\n";
  out += "  \"system\": \"" + sys.name + "\",\n";
  out += "  \"omega\": " + format_double(sys.series.omega) + ",\n";
  out += "  \"period\": " + format_double(T) + ",\n";
  out += std::string("  \"formulation\": \"") + formulation_name(formulation) +
         "\",\n";
  out += "  \"N\": " + std::to_string(N_used) + ",\n";
  if (config.E_des.has_value()) {
    out += "  \"E_des\": " + format_double(*config.E_des) + ",\n";
    out += "  \"N_star\": " + std::to_string(N_used) + ",\n";
  }
  if (formulation != Formulation::Reference) {
    out += "  \"envelope\": { \"a\": " + format_double(env_T.a) +
           ", \"b\": " + format_double(env_T.b) + " },\n";
  }
  out += "  \"t\": " + format_double(t_bound) + ",\n";
  out += "  \"bound\": " + format_double(bound_t) + ",\n";
  out += "  \"monodromy_bound\": " + format_double(bound_T) + ",\n";
  out += "  \"monodromy\": ";
  append_complex_matrix(out, monodromy.value);
  out += ",\n  \"multipliers\": ";
  append_complex_list(out, verdict.multipliers);
  out += ",\n  \"exponents\": ";
  append_complex_list(out, verdict.exponents);
  out += ",\n  \"verdict\": \"" + verdict_label(verdict) + "\"\n}\n";
  emit_artifact(config, out);
  return 0;
}

int cmd_sweep(const RunConfig& config) {
  if (!(std::isfinite(config.delta_min) && std::isfinite(config.delta_max) &&
        std::isfinite(config.eps_min) && std::isfinite(config.eps_max)))
    throw usage_error("sweep grid bounds must be finite");
  if (config.delta_count < 1 || config.eps_count < 1)
    throw usage_error("sweep grid resolution must be >= 1 in each direction");
  if (config.delta_max < config.delta_min || config.eps_max < config.eps_min)
    throw usage_error("sweep grid bounds must satisfy max >= min");
  if (!config.system.empty() && config.system != "mathieu")
    throw usage_error("sweep always runs the Mathieu family; drop system=" +
                      config.system);
  if (config.E_des.has_value())
    throw usage_error("sweep uses a fixed truncation order; --edes is not "
                      "supported (use --N)");

  const int N = config.N.value_or(45);
  if (N < 1) throw usage_error("sweep requires N >= 1");
  const double omega = get_param(config, "omega", 2.0);
  const Formulation formulation = config.formulation;
  const std::vector<double> deltas =
      linspace(config.delta_min, config.delta_max, config.delta_count);
  const std::vector<double> epss =
      linspace(config.eps_min, config.eps_max, config.eps_count);

  const int points = config.delta_count * config.eps_count;
  std::vector<std::string> rows(points);
  parallel_for(points, [&](int idx) {
    const double delta = deltas[idx / config.eps_count];
    const double eps = epss[idx % config.eps_count];
    FourierMatrixSeries series = mathieu_system(delta, eps, omega);
    const double T = series.period();
    DecayEnvelope env = make_envelope(spectral_norm(series.coeff(0)), 50.0);
    if (eps > 0.0) {
      OptimalEnvelope opt = optimal_finite_support_envelope(
          spectral_norm(series.coeff(0)), eps / 2.0, T,
          exponent_for(formulation, N));
      env = make_envelope(opt.a, opt.b);  // may be certificate-invalid:
    }                                     // the verdict then stays numeric
    StabilityVerdict verdict =
        analyze_stability(series, env, N, formulation, /*mathieu_dichotomy=*/true,
                          config.circle_samples, config.axis_samples);
    const double max_modulus =
        verdict.multipliers.size() > 0 ? std::abs(verdict.multipliers(0)) : 0.0;
    rows[idx] = format_double(delta) + "," + format_double(eps) + "," +
                format_double(max_modulus) + "," + verdict_label(verdict) +
                "\n";
  });

  std::string out = "delta,epsilon,max_multiplier,verdict\n";
  for (const std::string& row : rows) out += row;
  emit_artifact(config, out);
  return 0;
}

int cmd_validate(const RunConfig& config) {
  if (config.N.has_value())
    throw usage_error("validate sweeps N = 1..n_max; use --n-max, not --N");
  if (config.formulation == Formulation::Reference)
    throw usage_error(
        "validate compares a projection formulation against the reference; "
        "pick direct or subharmonic");
  if (config.n_max < 1) throw usage_error("n_max must be >= 1");

  SystemBundle sys = build_system(config);
  const double T = sys.series.period();
  const double t_bound = config.t.value_or(T);
  if (!(t_bound > 0.0)) throw usage_error("t must be positive");
  const double E_des = config.E_des.value_or(1e-6);
  const Formulation formulation = config.formulation;

  const ComplexMatrix reference =
      reference_fundamental(sys.series, t_bound).value;

  auto bound_at = [&](int N) {
    try {
      return error_bound_value(envelope_at(sys, config, formulation, t_bound, N),
                               N, t_bound, formulation);
    } catch (const envelope_error&) {
      if (!sys.support_one || config.env_a.has_value()) throw;
      // Per-order optimal envelope not yet certificate-valid at this order.
      return std::numeric_limits<double>::infinity();
    }
  };

  std::string out = "N,actual_error,bound\n";
  int N_num = -1;
  for (int N = 1; N <= config.n_max; ++N) {
    FundamentalApprox phi =
        project_fundamental(sys.series, formulation, N, t_bound);
    const double actual = spectral_norm(phi.value - reference);
    if (N_num < 0 && actual < E_des) N_num = N;
    out += std::to_string(N) + "," + format_double(actual) + "," +
           format_double(bound_at(N)) + "\n";
  }
  int N_star = -1;
  for (int N = 1; N <= kMaxDerivedOrder; ++N) {
    if (bound_at(N) <= E_des) {
      N_star = N;
      break;
    }
  }
  out += "# N_num," + std::to_string(N_num) + "\n";
  out += "# N_star," + std::to_string(N_star) + "\n";
  emit_artifact(config, out);
  return 0;
}

int cmd_xi(const RunConfig& config) {
  if (config.tuple.empty())
    throw usage_error("xi requires a harmonic tuple (tuple = [k1, k2, ...])");
  const double omega = get_param(config, "omega", 1.0);
  if (!(omega > 0.0)) throw usage_error("omega must be positive");
  if (config.samples < 2) throw usage_error("samples must be >= 2");
  const double t_max =
      config.t_max > 0.0 ? config.t_max : 2.0 * pi / omega;

  const IndexTuple p(config.tuple);
  const ExpPolynomial xi = xi_factor(p, omega);
  const int m = p.length();

  std::string out = "t,xi_re,xi_im,bound\n";
  for (int i = 0; i < config.samples; ++i) {
    const double t = t_max * i / (config.samples - 1);
    const Complex v = xi_eval(xi, t);
    out += format_double(t) + "," + format_double(v.real()) + "," +
           format_double(v.imag()) + "," +
           format_double(xi_polynomial_bound(m, t)) + "\n";
  }
  emit_artifact(config, out);
  return 0;
}

int cmd_duffing(const RunConfig& config) {
  std::string system = config.system.empty() ? "duffing1" : config.system;
  if (system != "duffing" && system != "duffing1" && system != "duffing2")
    throw usage_error("the duffing command requires system = duffing|duffing1|duffing2");
  if (config.n_h < 1) throw usage_error("n_h must be >= 1");
  DuffingParams params = resolve_duffing_params(config, system);
  PeriodicSolution sol = solve_duffing_hbm(params, config.n_h);
  emit_artifact(config, write_solution_json(sol, params));
  return 0;
}

int run_cli(const std::vector<std::string>& args) {
  try {
    if (args.empty()) {
      std::cerr << kUsage;
      return 1;
    }
    const std::string& command = args[0];
    if (command == "help" || command == "--help" || command == "-h") {
      std::cout << kUsage;
      return 0;
    }
    RunConfig config =
        parse_run_config(std::vector<std::string>(args.begin() + 1, args.end()));
    if (command == "analyze") return cmd_analyze(config);
    if (command == "sweep") return cmd_sweep(config);
    if (command == "validate") return cmd_validate(config);
    if (command == "xi") return cmd_xi(config);
    if (command == "duffing") return cmd_duffing(config);
    throw usage_error("unknown command '" + command + "'");
  } catch (const usage_error& e) {
    std::cerr << "error: " << e.what() << "\n" << kUsage;
    return 1;
  } catch (const envelope_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const fit_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const parameter_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const dimension_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const structure_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  args.reserve(argc > 0 ? argc - 1 : 0);
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace hillcert
