#include <doctest.h>

#include <string>

#include "valprof/task.hpp"

using namespace valprof;

TEST_CASE("default task config validates without warnings") {
    TaskConfig cfg;
    CHECK(cfg.validate().empty());
}

TEST_CASE("truncated final block is a warning, not an error") {
    TaskConfig cfg;
    cfg.n_trials = 410;
    const auto warnings = cfg.validate();
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("truncated") != std::string::npos);
}

TEST_CASE("task config rejects out-of-range values") {
    TaskConfig cfg;
    cfg.n_trials = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = TaskConfig{};
    cfg.context_block_len = -1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = TaskConfig{};
    cfg.hint_accuracy = 1.2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = TaskConfig{};
    cfg.p_reward_volatile = {0.3, 0.7};  // good must exceed bad
    CHECK_THROWS_AS(cfg.validate(), ConfigError);

    cfg = TaskConfig{};
    cfg.p_reward_stable.good = -0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("context blocks alternate starting volatile") {
    Environment env{TaskConfig{}};
    for (int t = 0; t < 400; ++t) {
        const Context expect = (t / 40) % 2 == 0 ? Context::kVolatile : Context::kStable;
        CHECK(env.context_at(t) == expect);
    }
}

TEST_CASE("better arm flips on the fast schedule only inside volatile blocks") {
    Environment env{TaskConfig{}};
    for (int t = 1; t < 400; ++t) {
        const int in_block = t % 40;
        if (in_block == 0) continue;  // fresh draw at block starts
        const bool flipped = env.better_arm_at(t) != env.better_arm_at(t - 1);
        if (env.context_at(t) == Context::kVolatile)
            CHECK(flipped == (in_block % 10 == 0));
        else
            CHECK_FALSE(flipped);
    }
}

TEST_CASE("environment schedule and observations are seed-deterministic") {
    TaskConfig cfg;
    Environment a(cfg), b(cfg);
    for (int t = 0; t < cfg.n_trials; ++t) {
        CHECK(a.context_at(t) == b.context_at(t));
        CHECK(a.better_arm_at(t) == b.better_arm_at(t));
    }
    for (int t = 0; t < cfg.n_trials; ++t) {
        const Action act = static_cast<Action>(t % 4);
        const Observation oa = a.step(act), ob = b.step(act);
        CHECK(oa.hint == ob.hint);
        CHECK(oa.reward == ob.reward);
        CHECK(oa.choice_echo == act);
    }
}

TEST_CASE("observation nullness tracks the action family") {
    Environment env{TaskConfig{}};
    const Observation start = env.step(Action::kStart);
    CHECK(start.hint == HintObs::kNull);
    CHECK(start.reward == RewardObs::kNull);
    const Observation hint = env.step(Action::kHint);
    CHECK(hint.hint != HintObs::kNull);
    CHECK(hint.reward == RewardObs::kNull);
    const Observation arm = env.step(Action::kLeft);
    CHECK(arm.hint == HintObs::kNull);
    CHECK(arm.reward != RewardObs::kNull);
}

TEST_CASE("stepping past the last trial throws") {
    TaskConfig cfg;
    cfg.n_trials = 5;
    cfg.context_block_len = 5;
    Environment env(cfg);
    for (int t = 0; t < 5; ++t) env.step(Action::kStart);
    CHECK(env.done());
    CHECK_THROWS_AS(env.step(Action::kStart), RuntimeError);
}

TEST_CASE("hint accuracy matches the configured rate empirically") {
    TaskConfig cfg;
    cfg.n_trials = 100000;
    cfg.context_block_len = 100000;  // one long volatile block
    cfg.seed = 11;
    Environment env(cfg);
    int truthful = 0;
    for (int t = 0; t < cfg.n_trials; ++t) {
        const Arm better = env.state().better_arm;
        const Observation obs = env.step(Action::kHint);
        const Arm pointed = obs.hint == HintObs::kLeft ? Arm::kLeft : Arm::kRight;
        truthful += pointed == better;
    }
    CHECK(static_cast<double>(truthful) / cfg.n_trials ==
          doctest::Approx(0.85).epsilon(0.01));
}

TEST_CASE("reward rates match the volatile contrast empirically") {
    TaskConfig cfg;
    cfg.n_trials = 100000;
    cfg.context_block_len = 100000;
    cfg.seed = 12;
    Environment env(cfg);
    int win_match = 0, n_match = 0, win_mis = 0, n_mis = 0;
    for (int t = 0; t < cfg.n_trials; ++t) {
        const bool match = env.state().better_arm == Arm::kLeft;
        const Observation obs = env.step(Action::kLeft);
        const bool win = obs.reward == RewardObs::kWin;
        if (match) {
            n_match++;
            win_match += win;
        } else {
            n_mis++;
            win_mis += win;
        }
    }
    CHECK(static_cast<double>(win_match) / n_match == doctest::Approx(0.70).epsilon(0.02));
    CHECK(static_cast<double>(win_mis) / n_mis == doctest::Approx(0.30).epsilon(0.02));
}

TEST_CASE("enum names render as expected") {
    CHECK(std::string(to_string(Context::kVolatile)) == "volatile");
    CHECK(std::string(to_string(Context::kStable)) == "stable");
    CHECK(std::string(to_string(Arm::kLeft)) == "left");
    CHECK(std::string(to_string(Arm::kRight)) == "right");
    CHECK(std::string(to_string(Action::kStart)) == "start");
    CHECK(std::string(to_string(Action::kHint)) == "hint");
    CHECK(std::string(to_string(Action::kLeft)) == "left");
    CHECK(std::string(to_string(Action::kRight)) == "right");
    CHECK(std::string(to_string(HintObs::kNull)) == "null");
    CHECK(std::string(to_string(RewardObs::kLoss)) == "loss");
    CHECK(std::string(to_string(RewardObs::kWin)) == "win");
}
