/* Copyright 2026 The ksatptf Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "ksat/error.hpp"
#include "ksat/metrics.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <doctest.h>
#include <algorithm>
#include <vector>

using namespace ksat;
using namespace ksat::eval;

namespace {

std::pair<std::vector<double>, std::vector<double>> random_series(testing::SampleSource& src, std::size_t n)
{
    std::vector<double> est(n), meas(n);
    for (std::size_t i = 0; i < n; ++i) {
        est[i] = std::pow(10.0, src.uniform(-3, 7));
        meas[i] = std::pow(10.0, src.uniform(-2, 6));
    }
    return {est, meas};
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected ksat::Error");
    return ErrorCode::InvalidConfig;
}

} // namespace

TEST_CASE("rmsle and mle spot values")
{
    const std::vector<double> a = {3.0, 0.2, 1e5};
    CHECK(rmsle(a, a) == 0.0);
    CHECK(mle(a, a) == 0.0);

    const std::vector<double> est = {10, 1000}, meas = {100, 100};
    CHECK(rmsle(est, meas) == 1.0);
    CHECK(mle(est, meas) == 0.0);

    const std::vector<double> e3 = {50, 200, 5}, m3 = {100, 100, 10};
    CHECK(rmsle(e3, m3) == doctest::Approx(0.30103).epsilon(1e-5));
    CHECK(mle(e3, m3) == doctest::Approx(-0.100343).epsilon(1e-5));

    const std::vector<double> ten = {30, 2, 1e4}, one = {3, 0.2, 1e3};
    CHECK(mle(ten, one) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("metric input errors")
{
    const std::vector<double> empty;
    const std::vector<double> one = {1.0}, two = {1.0, 2.0}, zero = {0.0}, neg = {-1.0};
    CHECK(code_of([&] { rmsle(empty, empty); }) == ErrorCode::EmptySeries);
    CHECK(code_of([&] { mle(one, two); }) == ErrorCode::LengthMismatch);
    CHECK(code_of([&] { mle(zero, one); }) == ErrorCode::NonPositiveValue);
    CHECK(code_of([&] { rmsle(one, neg); }) == ErrorCode::NonPositiveValue);
}

TEST_CASE("metrics agree with a naive two-pass implementation")
{
    testing::SampleSource src(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto [est, meas] = random_series(src, 1 + static_cast<std::size_t>(src.uniform(0, 200)));
        const auto got = log_error_stats(est, meas);
        const auto want = oracle::naive_metrics(est, meas);
        CHECK(got.n == est.size());
        // mle may sit near zero, so compare against the residual scale
        REQUIRE(std::abs(got.mle - want.mle) <= 1e-12 * std::max(1.0, std::abs(want.mle)));
        REQUIRE(got.rmsle == doctest::Approx(want.rmsle).epsilon(1e-12));
    }
}

TEST_CASE("scale equivariance")
{
    testing::SampleSource src(8);
    for (int trial = 0; trial < 200; ++trial) {
        auto [est, meas] = random_series(src, 50);
        const auto before = log_error_stats(est, meas);
        for (auto& e : est)
            e *= 10.0;
        const auto after = log_error_stats(est, meas);
        REQUIRE(std::abs(after.mle - (before.mle + 1.0)) <= 1e-12);
        const double predicted = std::sqrt(before.rmsle * before.rmsle + 2 * before.mle + 1);
        REQUIRE(after.rmsle == doctest::Approx(predicted).epsilon(1e-12));
    }
}

TEST_CASE("permutation invariance is bit-exact")
{
    testing::SampleSource src(21);
    auto [est, meas] = random_series(src, 500);
    const auto ref = log_error_stats(est, meas);
    std::vector<std::size_t> order(est.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    for (int trial = 0; trial < 50; ++trial) {
        std::shuffle(order.begin(), order.end(), src.engine());
        std::vector<double> e2, m2;
        for (auto i : order) {
            e2.push_back(est[i]);
            m2.push_back(meas[i]);
        }
        const auto got = log_error_stats(e2, m2);
        REQUIRE(got.mle == ref.mle);
        REQUIRE(got.rmsle == ref.rmsle);
    }
}

TEST_CASE("rmsle bounds |mle|")
{
    testing::SampleSource src(4);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(src.uniform(0, 6));
        std::vector<double> est(n), meas(n);
        const double base = src.uniform(0.1, 100);
        for (std::size_t i = 0; i < n; ++i) {
            meas[i] = base;
            est[i] = base * (trial % 2 ? 10.0 : std::pow(10.0, src.uniform(-1, 1)));
        }
        const auto s = log_error_stats(est, meas);
        REQUIRE(s.rmsle >= std::abs(s.mle));
        REQUIRE(s.rmsle >= 0.0);
    }
}
