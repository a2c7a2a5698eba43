#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <random>

#include "allmach/stability_lab.hpp"
#include "allmach/time_integrators.hpp"

using namespace allmach;

namespace {

using Cplx = std::complex<double>;

Rhs<double> linear_rhs(double lambda) {
  return [lambda](double, const StateVector<double>& y, StateVector<double>& f) {
    f.assign(y.size(), 0.0);
    for (std::size_t k = 0; k < y.size(); ++k) f[k] = lambda * y[k];
  };
}

// Weights from the moment conditions sum_j beta_j (t_j - t_n)^m = h^(m+1)/(m+1).
std::vector<double> moment_oracle(const std::vector<double>& times, double t_next) {
  const int n = static_cast<int>(times.size());
  const double h = t_next - times[0];
  Eigen::MatrixXd v(n, n);
  Eigen::VectorXd rhs(n);
  for (int m = 0; m < n; ++m) {
    for (int j = 0; j < n; ++j) v(m, j) = std::pow(times[j] - times[0], m);
    rhs(m) = std::pow(h, m + 1) / (m + 1);
  }
  const Eigen::VectorXd beta = v.fullPivLu().solve(rhs);
  return {beta.data(), beta.data() + n};
}

double rk_error(const ButcherTableau& tab, int n) {
  const double dt = 1.0 / n;
  StateVector<double> y{1.0};
  const auto f = linear_rhs(-1.0);
  for (int s = 0; s < n; ++s) y = rk_step(tab, f, s * dt, y, dt);
  return std::abs(y[0] - std::exp(-1.0));
}

// Integrates to t = 1 with n equal steps after `startup` preliminary steps
// of size h0 each (h0 = 0 means no separate startup phase).
double ab_error(int order, int n, int startup = 0, double h0 = 0.0) {
  StateVector<double> y{1.0}, f;
  const auto rhs = linear_rhs(-1.0);
  AdamsHistory<double> hist(order);
  double t = 0.0;
  const auto advance = [&](double h) {
    rhs(t, y, f);
    hist.push(t, f);
    y = ab_step(hist, y, t + h);
    t += h;
  };
  for (int s = 0; s < startup; ++s) advance(h0);
  const double dt = (1.0 - t) / n;
  for (int s = 0; s < n; ++s) advance(dt);
  return std::abs(y[0] - std::exp(-1.0));
}

}  // namespace

TEST_CASE("tableaus") {
  const auto h2 = heun2_tableau();
  CHECK(h2.stages == 2);
  CHECK(h2.coeff(1, 0) == 1.0);
  CHECK(h2.b == std::vector<double>{0.5, 0.5});
  CHECK(h2.c == std::vector<double>{0.0, 1.0});
  const auto h3 = heun3_tableau();
  CHECK(h3.stages == 3);
  CHECK(h3.coeff(1, 0) == 1.0 / 3.0);
  CHECK(h3.coeff(2, 0) == 0.0);
  CHECK(h3.coeff(2, 1) == 2.0 / 3.0);
  CHECK(h3.b == std::vector<double>{0.25, 0.0, 0.75});
  CHECK(h3.c == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0});
  CHECK(euler_tableau().b == std::vector<double>{1.0});
  for (const auto& t : {euler_tableau(), h2, h3, rk4_tableau()}) CHECK_NOTHROW(t.validate());

  auto bad = h2;
  bad.b = {0.6, 0.6};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = h2;
  bad.a[1] = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = h2;
  bad.c = {0.0, 0.5};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("rk_step") {
  const Rhs<double> zero = [](double, const StateVector<double>& y, StateVector<double>& f) {
    f.assign(y.size(), 0.0);
  };
  for (const auto& t : {euler_tableau(), heun2_tableau(), heun3_tableau(), rk4_tableau()})
    CHECK(rk_step(t, zero, 0.3, StateVector<double>{1.5, -2.0}, 0.7) == StateVector<double>{1.5, -2.0});

  SUBCASE("amplification polynomials") {
    for (double z : {-0.3, -1.0, 0.4, -2.2}) {
      const double y2 = rk_step(heun2_tableau(), linear_rhs(z), 0.0, {1.0}, 1.0)[0];
      CHECK(std::abs(y2 - (1 + z + z * z / 2)) <= 1e-14);
      const double y3 = rk_step(heun3_tableau(), linear_rhs(z / 0.5), 0.0, {1.0}, 0.5)[0];
      CHECK(std::abs(y3 - (1 + z + z * z / 2 + z * z * z / 6)) <= 1e-14);
    }
  }
  SUBCASE("complex scalar step matches the stability function") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-2.5, 0.5);
    for (const auto& t : {euler_tableau(), heun2_tableau(), heun3_tableau(), rk4_tableau()}) {
      for (int n = 0; n < 20; ++n) {
        const Cplx lam(u(rng), u(rng));
        const Rhs<Cplx> f = [lam](double, const StateVector<Cplx>& y, StateVector<Cplx>& d) {
          d = {lam * y[0]};
        };
        const Cplx y = rk_step(t, f, 0.0, StateVector<Cplx>{1.0}, 1.0)[0];
        CHECK(std::abs(y - rk_stability_function(t, lam)) <= 1e-13);
      }
    }
  }
  SUBCASE("failures carry the stage index") {
    const Rhs<double> fail_second = [n = 0](double, const StateVector<double>& y,
                                            StateVector<double>& f) mutable {
      if (++n == 2) throw std::runtime_error("boom");
      f = y;
    };
    try {
      rk_step(heun3_tableau(), fail_second, 0.0, {1.0}, 0.1);
      FAIL("expected StageError");
    } catch (const StageError& e) {
      CHECK(e.stage() == 2);
    }
  }
}

TEST_CASE("Adams-Bashforth coefficients") {
  const double dt = 0.1;
  SUBCASE("classical equal-step weights") {
    const std::vector<double> t1{0.0};
    const auto b1 = ab_coefficients(t1, dt);
    REQUIRE(b1.size() == 1);
    CHECK(b1[0] == doctest::Approx(dt).epsilon(1e-15));
    const std::vector<double> t2{0.0, -dt};
    const auto b2 = ab_coefficients(t2, dt);
    const auto o2 = moment_oracle(t2, dt);
    for (int j = 0; j < 2; ++j) CHECK(std::abs(b2[j] - o2[j]) <= 1e-14);
    CHECK(std::abs(o2[0] - 1.5 * dt) <= 1e-14);
    CHECK(std::abs(o2[1] + 0.5 * dt) <= 1e-14);
    const std::vector<double> t3{0.0, -dt, -2 * dt};
    const auto b3 = ab_coefficients(t3, dt);
    const auto o3 = moment_oracle(t3, dt);
    const double classical[3] = {23.0 / 12, -16.0 / 12, 5.0 / 12};
    for (int j = 0; j < 3; ++j) {
      CHECK(std::abs(o3[j] - classical[j] * dt) <= 1e-14);
      CHECK(std::abs(b3[j] - classical[j] * dt) <= 1e-14);
    }
  }
  SUBCASE("variable steps match the moment oracle and sum to the step") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> h(0.2, 2.0);
    for (int n = 0; n < 50; ++n) {
      for (int k = 1; k <= 5; ++k) {
        std::vector<double> t{5.0};
        for (int j = 1; j < k; ++j) t.push_back(t.back() - h(rng));
        const double t_next = 5.0 + h(rng);
        const auto b = ab_coefficients(t, t_next);
        const auto o = moment_oracle(t, t_next);
        double sum = 0.0;
        for (int j = 0; j < k; ++j) {
          CHECK(std::abs(b[j] - o[j]) <= 1e-11);
          sum += b[j];
        }
        CHECK(std::abs(sum - (t_next - 5.0)) <= 1e-13);
      }
    }
  }
  SUBCASE("degenerate histories") {
    const std::vector<double> rep{1.0, 1.0};
    CHECK_THROWS_AS(ab_coefficients(rep, 2.0), DegenerateHistory);
    const std::vector<double> one{1.0};
    CHECK_THROWS_AS(ab_coefficients(one, 1.0), DegenerateHistory);
    AdamsHistory<double> hist(2);
    hist.push(1.0, {0.0});
    CHECK_THROWS_AS(hist.push(1.0, {0.0}), DegenerateHistory);
    CHECK_THROWS_AS(AdamsHistory<double>(6), std::invalid_argument);
    CHECK_THROWS_AS(ab_step(AdamsHistory<double>(2), StateVector<double>{1.0}, 1.0), DegenerateHistory);
  }
}

TEST_CASE("ab_step") {
  SUBCASE("zero right-hand side") {
    AdamsHistory<double> hist(3);
    for (int s = 0; s < 3; ++s) hist.push(s * 0.1, {0.0, 0.0});
    CHECK(ab_step(hist, StateVector<double>{2.0, 3.0}, 0.3) == StateVector<double>{2.0, 3.0});
  }
  SUBCASE("single entry is explicit Euler") {
    AdamsHistory<double> hist(3);
    hist.push(0.0, {-0.7});
    CHECK(ab_step(hist, StateVector<double>{2.0}, 0.25)[0] == 2.0 + 0.25 * -0.7);
  }
  SUBCASE("history buffer keeps the newest entries") {
    AdamsHistory<double> hist(2);
    for (int s = 0; s < 4; ++s) hist.push(s, {double(s)});
    CHECK(hist.size() == 2);
    CHECK(hist[0].t == 3.0);
    CHECK(hist[1].t == 2.0);
  }
  SUBCASE("AB2 recurrence") {
    const double lambda = -1.3, dt = 0.05, z = lambda * dt;
    StateVector<double> y{1.0}, f;
    const auto rhs = linear_rhs(lambda);
    AdamsHistory<double> hist(2);
    double prev = 1.0, cur = 1.0 + z;
    for (int s = 0; s < 30; ++s) {
      rhs(s * dt, y, f);
      hist.push(s * dt, f);
      y = ab_step(hist, y, (s + 1) * dt);
      if (s == 0) {
        CHECK(std::abs(y[0] - cur) <= 1e-15);
      } else {
        const double next = cur + 1.5 * z * cur - 0.5 * z * prev;
        prev = cur;
        cur = next;
        CHECK(std::abs(y[0] - cur) <= 1e-14);
      }
    }
  }
}

TEST_CASE("convergence orders on y' = -y") {
  const auto order_of = [](auto err) { return std::log2(err(80) / err(160)); };
  CHECK(order_of([](int n) { return rk_error(euler_tableau(), n); }) == doctest::Approx(1.0).epsilon(0.2));
  CHECK(order_of([](int n) { return rk_error(heun2_tableau(), n); }) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(order_of([](int n) { return rk_error(heun3_tableau(), n); }) == doctest::Approx(3.0).epsilon(0.066));
  CHECK(order_of([](int n) { return ab_error(2, n); }) == doctest::Approx(2.0).epsilon(0.1));
  // With equal-size startup steps the local error of the first Euler step
  // is O(dt^2) and caps AB3 at second order globally.
  CHECK(order_of([](int n) { return ab_error(3, n); }) == doctest::Approx(2.0).epsilon(0.1));
  // Startup steps of size dt^2 keep their local error below dt^3.
  CHECK(order_of([](int n) { return ab_error(3, n, 2, 1.0 / (double(n) * n)); }) ==
        doctest::Approx(3.0).epsilon(0.066));
}

TEST_CASE("integrator names and factors") {
  for (auto k : {IntegratorKind::Euler, IntegratorKind::RK2, IntegratorKind::RK3, IntegratorKind::AB2,
                 IntegratorKind::AB3, IntegratorKind::MusclHancock})
    CHECK(parse_integrator(integrator_name(k)) == k);
  CHECK_THROWS_AS(parse_integrator("rk45"), std::invalid_argument);
  CHECK(default_method_factor(IntegratorKind::Euler) == 1.0);
  CHECK(default_method_factor(IntegratorKind::RK2) == 1.0);
  CHECK(default_method_factor(IntegratorKind::RK3) == 1.2);
  CHECK(default_method_factor(IntegratorKind::AB2) == 0.4);
  CHECK(default_method_factor(IntegratorKind::AB3) == 0.15);

  const auto upwind = advection_spectrum(720, 1.0);
  CHECK(default_method_factor(IntegratorKind::AB2) <= max_stable_dt(ab_polys(2), upwind));
  CHECK(default_method_factor(IntegratorKind::AB3) <= max_stable_dt(ab_polys(3), upwind));
  CHECK(default_method_factor(IntegratorKind::Euler) <= max_stable_dt(euler_tableau(), upwind) + 1e-9);
}

TEST_CASE("cfl_dt") {
  const GasModel gas{};
  const PrimitiveState rest{1.4, 0.0, 0.0, 1.0};
  const auto g1 = build_cartesian(4, 4, {0, 4}, {0, 4});
  const auto g2 = build_cartesian(8, 8, {0, 4}, {0, 4});
  const StepController ctl{0.5, 1.0};
  const double dt1 = cfl_dt(std::vector<PrimitiveState>(16, rest), g1, ctl, gas);
  const double dt2 = cfl_dt(std::vector<PrimitiveState>(64, rest), g2, ctl, gas);
  CHECK(dt1 == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(dt2 == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(cfl_dt(std::vector<PrimitiveState>(16, rest), g1, {0.5, 0.15}, gas) ==
        doctest::Approx(0.075).epsilon(1e-14));
  std::vector<PrimitiveState> moving(16, rest);
  moving[5].u = 3.0;
  moving[5].v = 4.0;
  CHECK(cfl_dt(moving, g1, ctl, gas) == doctest::Approx(0.5 / 6.0).epsilon(1e-14));
}
