#include <cmath>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <doctest.h>

#include "wlanmab/bandits.hpp"
#include "wlanmab/error.hpp"

using namespace wlanmab;
using namespace wlanmab::bandits;

TEST_CASE("sampling variance schedule") {
  CHECK(sampling_variance(0) == 1.0);
  CHECK(sampling_variance(99) == 0.01);
  CHECK(sampling_variance(3) == 0.25);
}

TEST_CASE("update recurrence") {
  Agent agent(6, 1);
  agent.update(2, 1.0);
  CHECK(agent.arm(2).r_hat == 0.5);
  CHECK(agent.arm(2).n == 1);
  agent.set_arm(3, {0.5, 1});
  agent.update(3, 0.5);
  CHECK(agent.arm(3).r_hat == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(agent.arm(3).n == 2);

  CHECK_THROWS_AS(agent.update(1, -0.01), Error);
  CHECK_THROWS_AS(agent.update(1, 1.01), Error);
  CHECK_THROWS_AS(agent.update(0, 0.5), Error);
  CHECK_THROWS_AS(agent.update(7, 0.5), Error);
}

TEST_CASE("constant reward settles at half its value") {
  // (x/2 * n + x) / (n + 2) = x/2: the n+2 denominator halves every estimate.
  for (double x : {0.2, 0.7, 1.0}) {
    Agent agent(1, 5);
    for (int i = 0; i < 200; ++i) {
      agent.update(1, x);
      CHECK(agent.arm(1).r_hat == doctest::Approx(x / 2.0).epsilon(1e-12));
      CHECK(agent.arm(1).r_hat < x);
    }
  }
}

TEST_CASE("estimates stay in [0, 1] for random reward sequences") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> reward(0.0, 1.0);
  std::uniform_int_distribution<int> arm(1, 6);
  for (int seq = 0; seq < 200; ++seq) {
    Agent agent(6, static_cast<std::uint64_t>(seq));
    for (int i = 0; i < 200; ++i) {
      const double r = (i % 17 == 0) ? 1.0 : reward(rng);
      agent.update(arm(rng), r);
    }
    for (const auto& e : agent.arms()) {
      CHECK(e.r_hat >= 0.0);
      CHECK(e.r_hat < 1.0);
    }
  }
}

TEST_CASE("sample_arm draws one normal per arm in order") {
  constexpr std::uint64_t seed = 1234;
  Agent agent(6, seed);
  agent.set_arm(2, {0.3, 3});
  agent.set_arm(5, {0.8, 99});
  const int chosen = agent.sample_arm();

  std::mt19937_64 engine(seed);
  std::vector<double> expected;
  for (int k = 1; k <= 6; ++k) {
    const auto& e = agent.arm(k);
    boost::random::normal_distribution<double> normal(e.r_hat, std::sqrt(sampling_variance(e.n)));
    expected.push_back(normal(engine));
  }
  CHECK(agent.last_samples() == expected);
  CHECK(chosen == static_cast<int>(argmax_lowest(expected)) + 1);
}

TEST_CASE("sample_arm is deterministic for a fixed stream") {
  Agent a(6, 99), b(6, 99);
  for (int i = 0; i < 1000; ++i) {
    const int x = a.sample_arm();
    CHECK(x == b.sample_arm());
    CHECK(x >= 1);
    CHECK(x <= 6);
    a.update(x, 0.25);
    b.update(x, 0.25);
  }
}

TEST_CASE("confident best arm dominates") {
  for (int j = 1; j <= 6; ++j) {
    Agent agent(6, static_cast<std::uint64_t>(j));
    for (int k = 1; k <= 6; ++k) agent.set_arm(k, {k == j ? 1.0 : 0.0, 1'000'000});
    int hits = 0;
    for (int i = 0; i < 1000; ++i) hits += agent.sample_arm() == j;
    CHECK(hits >= 999);
  }
}

TEST_CASE("argmax ties go to the lowest index and ignore a common shift") {
  const std::vector<double> tied{0.1, 0.7, 0.7, 0.2};
  CHECK(argmax_lowest(tied) == 1);
  std::mt19937_64 rng(23);
  std::normal_distribution<double> z;
  std::uniform_real_distribution<double> shift(-100.0, 100.0);
  for (int i = 0; i < 1000; ++i) {
    std::vector<double> theta(6);
    for (double& t : theta) t = z(rng);
    const double c = shift(rng);
    std::vector<double> moved = theta;
    for (double& t : moved) t += c;
    CHECK(argmax_lowest(theta) == argmax_lowest(moved));
  }
}

TEST_CASE("reset") {
  Agent agent(6, 8);
  for (int i = 0; i < 50; ++i) agent.update(agent.sample_arm(), 0.6);
  agent.reset();
  for (const auto& e : agent.arms()) CHECK(e == ArmEstimate{});
  const auto once = agent.arms();
  agent.reset();
  CHECK(agent.arms() == once);

  // The stream continues: a reset agent does not replay a fresh agent's draws.
  Agent fresh(6, 8);
  fresh.sample_arm();
  agent.sample_arm();
  CHECK(agent.last_samples() != fresh.last_samples());

  // After reset every arm samples from N(0, 1).
  double sum = 0.0, sq = 0.0;
  constexpr int kDraws = 20000;
  for (int i = 0; i < kDraws; ++i) {
    agent.sample_arm();
    for (double t : agent.last_samples()) {
      sum += t;
      sq += t * t;
    }
  }
  const double n = 6.0 * kDraws;
  CHECK(std::abs(sum / n) < 0.02);
  CHECK(std::abs(sq / n - 1.0) < 0.03);
}

TEST_CASE("shared reward") {
  const std::vector<double> caps{200e6, 200e6};
  CHECK(shared_reward({{200e6, 200e6}}, caps, {0, 1}) == 1.0);
  CHECK(shared_reward({{0.0, 150e6}}, caps, {0, 1}) == 0.0);
  CHECK(shared_reward({{100e6, 50e6}}, caps, {0, 1}) == 0.25);
  CHECK(shared_reward({{100e6, 50e6}}, caps, {0}) == 0.5);
  CHECK(shared_reward({{300e6, 300e6}}, caps, {0, 1}) == 1.0);
  CHECK_THROWS_AS(shared_reward({{1.0, 1.0}}, caps, {}), Error);
  CHECK_THROWS_AS(shared_reward({{1.0, 1.0}}, std::vector<double>{0.0, 1.0}, {0, 1}), Error);
}

TEST_CASE("policies") {
  Agent agent(6, 3);
  for (int i = 0; i < 100; ++i) {
    CHECK(select(Static{1}, agent) == 1);
    CHECK(select(Static{6}, agent) == 6);
  }
  // Static selection consumes no randomness.
  Agent untouched(6, 3);
  CHECK(select(ThompsonSampling{}, agent) == select(ThompsonSampling{}, untouched));
  CHECK(agent.last_samples() == untouched.last_samples());
  CHECK_THROWS_AS(select(Static{7}, agent), Error);

  CHECK(parse_policy("ts") == Policy{ThompsonSampling{}});
  CHECK(parse_policy("static:5") == Policy{Static{5}});
  CHECK(to_string(parse_policy("static:5")) == "static:5");
  CHECK_THROWS_AS(parse_policy("static:"), Error);
  CHECK_THROWS_AS(parse_policy("static:0"), Error);
  CHECK_THROWS_AS(parse_policy("ucb"), Error);
}

TEST_CASE("stream seeds differ per run and per WLAN") {
  CHECK(derive_stream_seed(0, 1, 0) != derive_stream_seed(0, 1, 1));
  CHECK(derive_stream_seed(0, 1, 0) != derive_stream_seed(0, 2, 0));
  CHECK(derive_stream_seed(0, 1, 0) != derive_stream_seed(1, 1, 0));
  CHECK(derive_stream_seed(5, 6, 7) == derive_stream_seed(5, 6, 7));
}
