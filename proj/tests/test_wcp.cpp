#include "gllp/wcp.hpp"

#include <cmath>

#include "catch_amalgamated.hpp"

using namespace gllp;
using namespace gllp::wcp;

namespace {

Link bare_link(double eta_det, double dark = 0.0, double dint = 0.0) {
  Link l;
  l.eta_det = eta_det;
  l.dark_prob = dark;
  l.delta_intrinsic = dint;
  return l;
}

// Least-squares slope of log y against log x.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("photon statistics are exact Poisson") {
  const PhotonStats s = photon_stats(0.1);
  CHECK(s.p0 == Catch::Approx(0.904837).margin(1e-6));
  CHECK(s.p1 == Catch::Approx(0.0904837).margin(1e-6));
  CHECK(s.pM == Catch::Approx(0.004679).margin(1e-6));
  // Exact Poisson: mu^2/2 - mu^3/3 + O(mu^4); the mu^2/2 head is 5.0e-5.
  CHECK(photon_stats(0.01).pM == Catch::Approx(4.9667913340157e-5).margin(1e-15));
  CHECK(photon_stats(0.01).pM == Catch::Approx(5.0e-5).epsilon(0.01));

  SECTION("p0 + p1 + pM = 1 for all mu") {
    for (double mu = 0.001; mu < 5.0; mu *= 1.37)
      CHECK(std::abs(photon_stats(mu).p0 + photon_stats(mu).p1 +
                     photon_stats(mu).pM - 1.0) < 1e-12);
  }
  SECTION("leading-order forms in the small-mu limit") {
    const PhotonStats t = photon_stats(1e-4);
    CHECK(t.p1 / 1e-4 == Catch::Approx(1.0).margin(1e-3));
    CHECK(t.pM / (0.5e-8) == Catch::Approx(1.0).margin(1e-3));
  }
  CHECK_THROWS_AS(photon_stats(0.0), std::domain_error);
}

TEST_CASE("detection probability") {
  CHECK(detection_prob(0.01, bare_link(0.1)) ==
        Catch::Approx(9.950e-4).margin(1e-7));
  CHECK(detection_prob(0.01, bare_link(0.0, 1e-5)) ==
        Catch::Approx(9.9e-6).margin(1e-7));
  SECTION("saturation at unit efficiency") {
    CHECK(detection_prob(30.0, bare_link(1.0)) ==
          Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("tag fraction") {
  CHECK(tag_fraction(0.01, bare_link(0.1)).Delta ==
        Catch::Approx(0.04991666680544579).margin(1e-10));
  SECTION("closed form mu/(2 eta) in the small-mu regime") {
    for (double mu : {0.001, 0.005, 0.02})
      for (double eta : {0.1, 0.5, 1.0}) {
        if (mu > eta / 5.0) continue;
        const double d = tag_fraction(mu, bare_link(eta)).Delta;
        CHECK(d == Catch::Approx(mu / (2.0 * eta)).epsilon(0.05));
      }
  }
  SECTION("insecure link") {
    const TagFraction t = tag_fraction(0.1, bare_link(0.05));
    CHECK(t.Delta == Catch::Approx(0.983).margin(1e-3));
    CHECK(t.feasible);
  }
  SECTION("vanishing mu") {
    CHECK(tag_fraction(1e-6, bare_link(0.1)).Delta < 1e-5);
  }
  SECTION("zero detection errors out") {
    CHECK_THROWS_AS(tag_fraction(0.01, bare_link(0.0)), std::runtime_error);
  }
  SECTION("measured pD override") {
    Link l = bare_link(0.1);
    l.measured_pd = 2.0 * detection_prob(0.01, l);
    CHECK(tag_fraction(0.01, l).Delta ==
          Catch::Approx(0.5 * 0.04991666680544579).margin(1e-10));
  }
}

TEST_CASE("link budget chain") {
  const WcpBudget b = budget(WcpSource{0.01, 1e6}, bare_link(0.1, 0.0, 0.01));
  CHECK(b.final_rate.clamped == Catch::Approx(0.7892396177897116).margin(1e-9));
  CHECK(b.throughput_hz == Catch::Approx(392.65).margin(0.01));
  CHECK(b.sifted_rate_hz == Catch::Approx(0.5 * 1e6 * b.pD).margin(1e-9));

  SECTION("tagged out: throughput zero past the feasibility boundary") {
    const WcpBudget bad = budget(WcpSource{0.5, 1e6}, bare_link(0.01));
    CHECK(bad.throughput_hz == 0.0);
    CHECK_FALSE(bad.final_rate.feasible);
  }
  SECTION("dark-count floor raises delta_bits") {
    const WcpBudget d = budget(WcpSource{0.01, 1e6}, bare_link(0.1, 1e-5, 0.0));
    CHECK(d.delta_bits > 0.0);
    CHECK(d.delta_bits ==
          Catch::Approx(0.5 * 1e-5 * std::exp(-0.01) / d.pD).margin(1e-12));
  }
  SECTION("throughput continuous in mu across a fine grid") {
    double prev = -1.0;
    for (int i = 1; i <= 400; ++i) {
      const double mu = 0.002 * i / 400.0 + 0.004;
      const double t = budget(WcpSource{mu, 1e6}, bare_link(0.1, 0, 0.01)).throughput_hz;
      if (prev >= 0.0) CHECK(std::abs(t - prev) < 2.0);
      prev = t;
    }
  }
}

TEST_CASE("throughput scales as eta squared at fixed Delta") {
  std::vector<double> etas, ts;
  for (int i = 0; i < 20; ++i) {
    const double eta = 0.01 * std::pow(50.0, i / 19.0);
    const double mu = 0.04 * eta;  // Delta pinned near 0.02
    const WcpBudget b = budget(WcpSource{mu, 1e6}, bare_link(eta, 0, 0.01));
    etas.push_back(eta);
    ts.push_back(b.throughput_hz);
  }
  CHECK(loglog_slope(etas, ts) == Catch::Approx(2.0).margin(0.1));
}

TEST_CASE("intensity optimization") {
  SECTION("optimum dominates a scan and sits at mu = eta for clean links") {
    const MuOptimum opt = optimize_mu(1e6, bare_link(0.1));
    CHECK(opt.feasible);
    CHECK(opt.unimodal);
    // With zero intrinsic error and no dark counts the optimum is exactly
    // mu = eta: throughput = (nu/2) (pD - pM) peaks there.
    CHECK(opt.mu_star == Catch::Approx(0.1).epsilon(1e-4));
    for (int i = 1; i <= 100; ++i) {
      const double mu = 1e-3 + (1.0 - 1e-3) * i / 100.0;
      CHECK(budget(WcpSource{mu, 1e6}, bare_link(0.1)).throughput_hz <=
            opt.at_star.throughput_hz * (1.0 + 1e-9));
    }
  }
  SECTION("optimal mu scales linearly with eta") {
    std::vector<double> etas, mus;
    for (int i = 0; i < 10; ++i) {
      const double eta = 0.01 * std::pow(10.0, i / 9.0);
      etas.push_back(eta);
      mus.push_back(optimize_mu(1e6, bare_link(eta)).mu_star);
    }
    CHECK(loglog_slope(etas, mus) == Catch::Approx(1.0).margin(0.15));
  }
  SECTION("with intrinsic error the optimum still dominates the scan") {
    const MuOptimum opt = optimize_mu(1e6, bare_link(0.1, 0.0, 0.01));
    CHECK(opt.feasible);
    for (int i = 1; i <= 100; ++i) {
      const double mu = 1e-3 + (1.0 - 1e-3) * i / 100.0;
      CHECK(budget(WcpSource{mu, 1e6}, bare_link(0.1, 0, 0.01)).throughput_hz <=
            opt.at_star.throughput_hz * (1.0 + 1e-9));
    }
  }
  SECTION("dead link is reported infeasible") {
    CHECK_FALSE(optimize_mu(1e6, bare_link(0.0)).feasible);
  }
}

TEST_CASE("rate versus distance") {
  Link tpl = bare_link(0.15, 0.0, 0.01);
  tpl.alpha_db_per_km = 0.25;

  SECTION("zero length gives the detector efficiency") {
    const auto rows = rate_vs_distance(WcpSource{0.01, 1e6}, tpl, {0.0}, false);
    CHECK(rows[0].eta == Catch::Approx(0.15).margin(1e-15));
  }
  SECTION("throughput nonincreasing in length at fixed mu") {
    std::vector<double> ls;
    for (int i = 0; i <= 30; ++i) ls.push_back(2.0 * i);
    const auto rows = rate_vs_distance(WcpSource{0.005, 1e6}, tpl, ls, false);
    for (std::size_t i = 1; i < rows.size(); ++i)
      CHECK(rows[i].b.throughput_hz <= rows[i - 1].b.throughput_hz + 1e-9);
  }
  SECTION("optimized intensity stays positive without dark counts") {
    const auto rows =
        rate_vs_distance(WcpSource{0.01, 1e6}, tpl, {0, 10, 25, 50}, true);
    for (const auto& r : rows) CHECK(r.b.throughput_hz > 0.0);
  }
  SECTION("dark counts cut the range off") {
    Link noisy = tpl;
    noisy.dark_prob = 1e-5;
    std::vector<double> ls;
    for (int i = 0; i <= 40; ++i) ls.push_back(5.0 * i);
    const auto rows = rate_vs_distance(WcpSource{0.01, 1e6}, noisy, ls, true);
    CHECK(rows.front().b.throughput_hz > 0.0);
    CHECK(rows.back().b.throughput_hz == 0.0);
    bool seen_zero = false;
    for (const auto& r : rows) {
      if (seen_zero) CHECK(r.b.throughput_hz == 0.0);
      if (r.b.throughput_hz == 0.0) seen_zero = true;
    }
  }
  SECTION("unsorted lengths are rejected") {
    CHECK_THROWS_AS(rate_vs_distance(WcpSource{0.01, 1e6}, tpl, {5.0, 1.0}, false),
                    std::domain_error);
  }
}
