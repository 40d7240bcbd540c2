// Command-line front end: evaluates single bounds, sweeps best-rate curves
// over blocklength grids, and runs a quick self-check. Rows go to stdout as
// CSV or JSON lines; diagnostics go to stderr. Exit codes: 0 success, 1 a
// validate check failed, 2 the request could not be evaluated, 3 the result
// carries warning flags (rows are still printed).

#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcbound/baselines.hpp"
#include "rcbound/bounds.hpp"
#include "rcbound/oracle.hpp"
#include "rcbound/ratesearch.hpp"
#include "rcbound/rckernel.hpp"

namespace {

using nlohmann::ordered_json;
using namespace rcbound;

std::string g17(double x) {
  char b[64];
  std::snprintf(b, sizeof b, "%.17g", x);
  return b;
}

// JSON has no -inf/nan literals; map non-finite doubles to null.
ordered_json jnum(double x) {
  if (std::isfinite(x)) return x;
  return nullptr;
}

const char* channel_name(Channel c) {
  switch (c) {
    case Channel::bsc: return "bsc";
    case Channel::bec: return "bec";
    case Channel::awgn: return "awgn";
  }
  return "unknown";
}

const std::map<std::string, Channel> kChannelNames{
    {"bsc", Channel::bsc}, {"bec", Channel::bec}, {"awgn", Channel::awgn}};
const std::map<std::string, Method> kMethodNames{
    {"rc", Method::rc},
    {"awgn_upper", Method::awgn_upper},
    {"awgn_lower", Method::awgn_lower},
    {"bec_rcu", Method::bec_rcu},
    {"bec_dt", Method::bec_dt},
    {"bec_converse", Method::bec_converse}};

ChannelSpec make_spec(Channel c, double param) {
  switch (c) {
    case Channel::bsc: return ChannelSpec::bsc(param);
    case Channel::bec: return ChannelSpec::bec(param);
    case Channel::awgn: return ChannelSpec::awgn(param);
  }
  throw DomainError("unknown channel");
}

struct QuadOpts {
  QuadratureConfig cfg;
  void attach(CLI::App* cmd) {
    cmd->add_option("--rel-tol", cfg.rel_tol, "quadrature relative tolerance")
        ->envname("RCB_REL_TOL")->capture_default_str();
    cmd->add_option("--abs-tol", cfg.abs_tol, "quadrature absolute tolerance")
        ->envname("RCB_ABS_TOL")->capture_default_str();
    cmd->add_option("--max-depth", cfg.max_depth, "max interval bisection depth")
        ->envname("RCB_MAX_DEPTH")->capture_default_str();
    cmd->add_option("--tail-mass", cfg.tail_mass, "probability mass trimmed per integral")
        ->envname("RCB_TAIL_MASS")->capture_default_str();
  }
};

struct BoundCmd {
  Channel channel = Channel::bsc;
  double param = 0.0;
  std::int64_t n = 1;
  double log2_m = std::nan("");
  double m_count = std::nan("");
  Method method = Method::rc;
  QuadOpts quad;
  std::string format = "csv";
  bool no_header = false;

  int run() const {
    EnsembleSize m = std::isnan(log2_m) ? EnsembleSize::from_count(m_count)
                                        : EnsembleSize(log2_m);
    const ChannelSpec spec = make_spec(channel, param);
    const BoundResult r = evaluate_bound(spec, n, m, method, quad.cfg);
    const double le = r.log_epsilon.log();
    if (format == "json") {
      ordered_json j{{"schema_version", 1},
                     {"kind", "bound"},
                     {"channel", channel_name(channel)},
                     {"param", param},
                     {"n", n},
                     {"log2_m", m.log2_m()},
                     {"method", method_name(r.method)},
                     {"epsilon", jnum(r.log_epsilon.linear())},
                     {"log_epsilon", jnum(le)},
                     {"err_est", jnum(r.err_est)},
                     {"flags", flags_to_string(r.flags)},
                     {"terms", r.diag.terms},
                     {"cells", r.diag.cells}};
      std::cout << j.dump() << "\n";
    } else {
      if (!no_header) {
        std::cout << "kind,channel,param,n,log2_m,method,epsilon,log_epsilon,"
                     "err_est,flags,terms,cells\n";
      }
      std::cout << "bound," << channel_name(channel) << ',' << g17(param) << ','
                << n << ',' << g17(m.log2_m()) << ',' << method_name(r.method)
                << ',' << g17(r.log_epsilon.linear()) << ',' << g17(le) << ','
                << g17(r.err_est) << ',' << flags_to_string(r.flags) << ','
                << r.diag.terms << ',' << r.diag.cells << "\n";
    }
    if (r.flags != kFlagNone) {
      std::cerr << "warning flags: " << flags_to_string(r.flags) << "\n";
      return 3;
    }
    return 0;
  }
};

struct SweepCmd {
  Channel channel = Channel::bsc;
  double param = 0.0;
  double target = 1e-3;
  std::vector<std::int64_t> n_grid;
  std::vector<Method> methods{Method::rc};
  RateSearchConfig cfg;
  QuadOpts quad;
  int jobs = 1;
  std::string format = "csv";
  bool no_header = false;

  int run() const {
    SweepSpec spec;
    spec.channel = make_spec(channel, param);
    spec.n_grid = n_grid;
    spec.epsilon_target = target;
    spec.methods = methods;
    spec.config = cfg;
    spec.config.quad = quad.cfg;
    const std::vector<RateCurveRow> rows = sweep(spec, jobs);

    unsigned all_flags = 0;
    if (format == "csv" && !no_header) {
      std::cout << "kind,channel,param,n,epsilon_target,method,rate,log2_m,"
                   "achieved_log_epsilon,err_est,bracket_lo,bracket_hi,"
                   "log_eps_lo,log_eps_hi,flags\n";
    }
    for (const RateCurveRow& row : rows) {
      all_flags |= row.flags;
      if (format == "json") {
        ordered_json j{{"schema_version", 1},
                       {"kind", "rate"},
                       {"channel", channel_name(channel)},
                       {"param", param},
                       {"n", row.n},
                       {"epsilon_target", row.epsilon_target},
                       {"method", method_name(row.method)},
                       {"rate", jnum(row.rate)},
                       {"log2_m", jnum(row.log2_m)},
                       {"achieved_log_epsilon", jnum(row.achieved_log_epsilon)},
                       {"err_est", jnum(row.err_est)},
                       {"bracket_lo", jnum(row.bracket_lo)},
                       {"bracket_hi", jnum(row.bracket_hi)},
                       {"log_eps_lo", jnum(row.log_eps_lo)},
                       {"log_eps_hi", jnum(row.log_eps_hi)},
                       {"flags", flags_to_string(row.flags)}};
        std::cout << j.dump() << "\n";
      } else {
        std::cout << "rate," << channel_name(channel) << ',' << g17(param) << ','
                  << row.n << ',' << g17(row.epsilon_target) << ','
                  << method_name(row.method) << ',' << g17(row.rate) << ','
                  << g17(row.log2_m) << ',' << g17(row.achieved_log_epsilon)
                  << ',' << g17(row.err_est) << ',' << g17(row.bracket_lo) << ','
                  << g17(row.bracket_hi) << ',' << g17(row.log_eps_lo) << ','
                  << g17(row.log_eps_hi) << ',' << flags_to_string(row.flags)
                  << "\n";
      }
    }
    if (all_flags != kFlagNone) {
      std::cerr << "warning flags: " << flags_to_string(all_flags) << "\n";
      return 3;
    }
    return 0;
  }
};

struct ValidateCmd {
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail = "") {
    if (ok) {
      std::cout << "ok: " << name << "\n";
    } else {
      ++failures;
      std::cout << "FAIL: " << name << (detail.empty() ? "" : " (" + detail + ")")
                << "\n";
    }
  }

  void check_close(const std::string& name, double got, double want, double tol) {
    const double err = std::fabs(got - want);
    check(name, err <= tol, "got " + g17(got) + " want " + g17(want));
  }

  int run() {
    check_close("bsc n=1 delta=0.1 m=2",
                bsc_rc(0.1, 1, EnsembleSize::from_count(2)).log_epsilon.linear(),
                0.3, 1e-12);
    check_close("bec n=2 delta=0.5 m=2",
                bec_rc(0.5, 2, EnsembleSize::from_count(2)).log_epsilon.linear(),
                0.28125, 1e-12);
    check_close("bec_rcu n=2 delta=0.5 m=2",
                bec_rcu(0.5, 2, EnsembleSize::from_count(2)).log_epsilon.linear(),
                0.5625, 1e-12);
    check_close("bec_dt n=2 delta=0.5 m=4",
                bec_dt(0.5, 2, EnsembleSize::from_count(4)).log_epsilon.linear(),
                0.71875, 1e-12);
    check_close("bec_converse n=2 delta=0.5 m=8",
                bec_converse(0.5, 2, EnsembleSize::from_count(8)).log_epsilon.linear(),
                0.71875, 1e-12);

    {
      const TieMass t(LogReal::from_linear(0.25), LogReal::from_linear(0.5));
      const double a = correct_prob_kernel(t, EnsembleSize::from_count(64)).log();
      const double b = direct_sum_kernel(t, 64).log();
      check("kernel closed form matches direct sum",
            std::fabs(a - b) <= 1e-12 * std::fabs(b), g17(a) + " vs " + g17(b));
    }
    {
      const double a = bsc_rc(0.11, 10, EnsembleSize::from_count(32)).log_epsilon.linear();
      const double b = rc_direct_bsc(0.11, 10, 32).linear();
      check("bsc closed form matches enumeration",
            std::fabs(a - b) <= 1e-10 * b, g17(a) + " vs " + g17(b));
    }
    {
      const double a = bec_rc(0.3, 8, EnsembleSize::from_count(16)).log_epsilon.linear();
      const double b = rc_direct_bec(0.3, 8, 16).linear();
      check("bec closed form matches enumeration",
            std::fabs(a - b) <= 1e-10 * b, g17(a) + " vs " + g17(b));
    }
    {
      const EnsembleSize m = EnsembleSize::from_count(16);
      const BoundResult lo = awgn_rc_lower(1.0, 8, m);
      const BoundResult mid = awgn_rc_exact(1.0, 8, m);
      const BoundResult hi = awgn_rc_upper(1.0, 8, m);
      const double slack = lo.err_est + mid.err_est + hi.err_est;
      check("awgn sandwich brackets the exact value",
            lo.log_epsilon.linear() <= mid.log_epsilon.linear() + slack &&
                mid.log_epsilon.linear() <= hi.log_epsilon.linear() + slack,
            g17(lo.log_epsilon.linear()) + " / " + g17(mid.log_epsilon.linear()) +
                " / " + g17(hi.log_epsilon.linear()));
    }
    std::cout << (failures == 0 ? "all checks passed" : "checks FAILED") << "\n";
    return failures == 0 ? 0 : 1;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ensemble-average error bounds for random codes"};
  app.require_subcommand(1);

  BoundCmd bound;
  SweepCmd sw;
  ValidateCmd validate;

  CLI::App* cb = app.add_subcommand("bound", "evaluate one bound");
  cb->add_option("--channel", bound.channel, "channel family")
      ->required()
      ->transform(CLI::CheckedTransformer(kChannelNames, CLI::ignore_case));
  cb->add_option("--param", bound.param,
                 "channel parameter (crossover / erasure prob / snr)")
      ->required();
  cb->add_option("--n", bound.n, "blocklength")->required();
  auto* olog2m = cb->add_option("--log2m", bound.log2_m, "log2 of codebook size");
  cb->add_option("--m", bound.m_count, "codebook size (count)")->excludes(olog2m);
  cb->add_option("--method", bound.method, "bound to evaluate")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case))
      ->capture_default_str();
  bound.quad.attach(cb);
  cb->add_option("--format", bound.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("RCB_FORMAT")->capture_default_str();
  cb->add_flag("--no-header", bound.no_header, "suppress the csv header row");

  CLI::App* cs = app.add_subcommand("sweep", "best rate vs blocklength");
  cs->add_option("--channel", sw.channel, "channel family")
      ->required()
      ->transform(CLI::CheckedTransformer(kChannelNames, CLI::ignore_case));
  cs->add_option("--param", sw.param,
                 "channel parameter (crossover / erasure prob / snr)")
      ->required();
  cs->add_option("--target", sw.target, "error probability target")->required();
  cs->add_option("--n", sw.n_grid, "blocklength grid")->required()->expected(-1);
  cs->add_option("--method", sw.methods, "methods to sweep")
      ->transform(CLI::CheckedTransformer(kMethodNames, CLI::ignore_case))
      ->capture_default_str()
      ->expected(-1);
  cs->add_option("--rate-tol", sw.cfg.rate_tol, "bisection width target, bits/use")
      ->capture_default_str();
  cs->add_flag("--integer-m", sw.cfg.integer_m, "round the codebook size down to an integer");
  cs->add_option("--jobs", sw.jobs, "worker threads")
      ->envname("RCB_JOBS")->capture_default_str();
  sw.quad.attach(cs);
  cs->add_option("--format", sw.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->envname("RCB_FORMAT")->capture_default_str();
  cs->add_flag("--no-header", sw.no_header, "suppress the csv header row");

  CLI::App* cv = app.add_subcommand("validate", "run fast self-checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cb->parsed()) {
      if (std::isnan(bound.log2_m) && std::isnan(bound.m_count)) {
        std::cerr << "error: one of --log2m / --m is required\n";
        return 2;
      }
      return bound.run();
    }
    if (cs->parsed()) return sw.run();
    if (cv->parsed()) return validate.run();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
