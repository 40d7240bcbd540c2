#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "rcbound/bounds.hpp"
#include "rcbound/ratesearch.hpp"

using namespace rcbound;

TEST_CASE("finds the largest feasible ensemble for a reachable target") {
  // epsilon(m=2) = 0.28125 <= 0.29 < epsilon(m=4) = 0.5322..., so the search
  // must land in log2_m in (1, 2).
  const RateCurveRow row = max_rate(ChannelSpec::bec(0.5), 2, 0.29, Method::rc);
  CHECK(row.n == 2);
  CHECK(row.method == Method::rc);
  CHECK(row.epsilon_target == 0.29);
  CHECK(row.flags == kFlagNone);
  CHECK(row.log2_m > 1.0);
  CHECK(row.log2_m < 2.0);
  CHECK(row.rate == row.log2_m / 2.0);
  // Bisection witness: feasible at lo, infeasible at hi, bracket closed to
  // the requested width.
  CHECK(row.bracket_hi - row.bracket_lo <= 2.0 * 1e-6 + 1e-12);
  CHECK(row.log_eps_lo <= std::log(0.29));
  CHECK(row.log_eps_hi > std::log(0.29));
  CHECK(row.achieved_log_epsilon == row.log_eps_lo);
  CHECK(row.log2_m == row.bracket_lo);
}

TEST_CASE("integer codebooks round down to the nearest power") {
  RateSearchConfig cfg;
  cfg.integer_m = true;
  const RateCurveRow row = max_rate(ChannelSpec::bec(0.5), 2, 0.29, Method::rc, cfg);
  CHECK(row.flags == kFlagNone);
  CHECK(row.log2_m == 1.0);  // m = 2 exactly
  CHECK(row.rate == 0.5);
  CHECK(std::exp(row.achieved_log_epsilon) == doctest::Approx(0.28125).epsilon(1e-12));
}

TEST_CASE("an unreachable target reports no feasible rate") {
  RateSearchConfig cfg;
  cfg.integer_m = true;
  const RateCurveRow row = max_rate(ChannelSpec::bec(0.5), 2, 1e-9, Method::rc, cfg);
  CHECK((row.flags & kFlagNoFeasibleRate) != 0);
  CHECK(row.log2_m == 0.0);
  CHECK(row.rate == 0.0);
  CHECK(row.achieved_log_epsilon == kNegInf);

  // The real-valued search reports an honest near-zero rate instead.
  const RateCurveRow real_row = max_rate(ChannelSpec::bec(0.5), 2, 1e-9, Method::rc);
  CHECK(real_row.flags == kFlagNone);
  CHECK(real_row.rate <= 1e-6);
}

TEST_CASE("a target met even at the cap is flagged") {
  const RateCurveRow row = max_rate(ChannelSpec::bec(0.5), 4, 0.999, Method::rc);
  CHECK((row.flags & kFlagAtRateCap) != 0);
  CHECK(row.log2_m == 4.0);  // cap = n for discrete channels
  CHECK(row.rate == 1.0);
  CHECK(row.achieved_log_epsilon <= std::log(0.999));
}

TEST_CASE("rate curves grow with blocklength") {
  RateCurveRow prev;
  bool first = true;
  for (std::int64_t n : {16, 64, 256}) {
    const RateCurveRow row = max_rate(ChannelSpec::bec(0.5), n, 1e-3, Method::rc);
    CHECK(row.flags == kFlagNone);
    CHECK(row.rate > 0.0);
    CHECK(row.rate < 0.5);  // capacity of BEC(1/2)
    if (!first) CHECK(row.rate >= prev.rate);
    prev = row;
    first = false;
  }
}

TEST_CASE("awgn rate search uses the doubled cap") {
  RateSearchConfig cfg;
  cfg.rate_tol = 1e-2;
  const RateCurveRow row = max_rate(ChannelSpec::awgn(1.0), 8, 0.1, Method::rc, cfg);
  CHECK(row.flags == kFlagNone);
  CHECK(row.rate > 0.0);
  CHECK(row.bracket_hi <= 16.0);
  CHECK(row.bracket_hi - row.bracket_lo <= 8.0 * 1e-2 + 1e-12);
  CHECK(row.log_eps_lo <= std::log(0.1));
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(max_rate(ChannelSpec::bec(0.5), 0, 0.1, Method::rc), DomainError);
  CHECK_THROWS_AS(max_rate(ChannelSpec::bec(0.5), 4, 0.0, Method::rc), DomainError);
  CHECK_THROWS_AS(max_rate(ChannelSpec::bec(0.5), 4, 1.0, Method::rc), DomainError);
  RateSearchConfig bad;
  bad.rate_tol = 0.0;
  CHECK_THROWS_AS(max_rate(ChannelSpec::bec(0.5), 4, 0.1, Method::rc, bad), DomainError);
}

TEST_CASE("sweeps preserve grid order and parallel determinism") {
  SweepSpec spec;
  spec.channel = ChannelSpec::bec(0.5);
  spec.n_grid = {2, 4, 8};
  spec.epsilon_target = 1e-2;
  spec.methods = {Method::rc, Method::bec_rcu};

  const std::vector<RateCurveRow> serial = sweep(spec, 1);
  const std::vector<RateCurveRow> parallel = sweep(spec, 4);
  REQUIRE(serial.size() == 6);
  REQUIRE(parallel.size() == 6);
  for (size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(i);
    CHECK(serial[i].n == spec.n_grid[i / 2]);
    CHECK(serial[i].method == spec.methods[i % 2]);
    CHECK(serial[i].rate == parallel[i].rate);
    CHECK(serial[i].log2_m == parallel[i].log2_m);
    CHECK(serial[i].achieved_log_epsilon == parallel[i].achieved_log_epsilon);
    CHECK(serial[i].flags == parallel[i].flags);
  }
}

TEST_CASE("a failing sweep cell is flagged instead of aborting") {
  SweepSpec spec;
  spec.channel = ChannelSpec::bsc(0.11);  // bec_rcu rejects a bsc channel
  spec.n_grid = {4, 8};
  spec.epsilon_target = 1e-2;
  spec.methods = {Method::rc, Method::bec_rcu};

  const std::vector<RateCurveRow> rows = sweep(spec, 1);
  REQUIRE(rows.size() == 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    if (rows[i].method == Method::rc) {
      CHECK(rows[i].flags == kFlagNone);
      CHECK(std::isfinite(rows[i].rate));
    } else {
      CHECK((rows[i].flags & kFlagEvalFailed) != 0);
      CHECK(std::isnan(rows[i].rate));
      CHECK(std::isnan(rows[i].achieved_log_epsilon));
    }
  }
}
