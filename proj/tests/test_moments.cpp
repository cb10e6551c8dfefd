#include <doctest.h>

#include <chrono>
#include <random>

#include "seqpart/moments.hpp"

using namespace seqpart;

namespace {

SampleSet random_in_box(std::mt19937_64& rng, const AxisBox& box, std::size_t n) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const int d = box.dim();
    std::vector<double> data(n * static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < n; ++i) {
        for (int j = 0; j < d; ++j) {
            data[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)] =
                box.lo(j) + uni(rng) * box.width(j);
        }
    }
    return SampleSet(d, data);
}

}  // namespace

TEST_CASE("sample moments of the two-corner set") {
    const SampleSet set(2, {0, 0, 1, 1});
    const auto mom = sample_moments(full_view(set));
    CHECK(mom.mean[0] == doctest::Approx(0.5));
    CHECK(mom.mean[1] == doctest::Approx(0.5));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(mom.cov_at(i, j) == doctest::Approx(0.25));
}

TEST_CASE("sample moments of a single point") {
    const SampleSet set(3, {0.3, 0.9, -2.0});
    const auto mom = sample_moments(full_view(set));
    CHECK(mom.mean[2] == doctest::Approx(-2.0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK(mom.cov_at(i, j) == doctest::Approx(0.0));
}

TEST_CASE("translation shifts the mean and leaves the covariance alone") {
    std::mt19937_64 rng(3);
    const AxisBox box({0, 0}, {1, 1});
    const SampleSet set = random_in_box(rng, box, 200);
    const auto base = sample_moments(full_view(set));
    std::vector<double> shifted = set.data();
    for (std::size_t i = 0; i < 200; ++i) {
        shifted[2 * i] += 3.5;
        shifted[2 * i + 1] -= 1.25;
    }
    const SampleSet moved(2, shifted);
    const auto mom = sample_moments(full_view(moved));
    CHECK(mom.mean[0] == doctest::Approx(base.mean[0] + 3.5).epsilon(1e-12));
    CHECK(mom.mean[1] == doctest::Approx(base.mean[1] - 1.25).epsilon(1e-12));
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(mom.cov_at(i, j) == doctest::Approx(base.cov_at(i, j)).epsilon(1e-9));
        }
    }
}

TEST_CASE("sample covariance matches a direct second-moment oracle") {
    std::mt19937_64 rng(5);
    const AxisBox box({-1, 2, 0}, {4, 3, 0.5});
    const SampleSet set = random_in_box(rng, box, 500);
    const auto mom = sample_moments(full_view(set));
    const int d = 3;
    for (int a = 0; a < d; ++a) {
        for (int b = 0; b < d; ++b) {
            double exy = 0.0, ex = 0.0, ey = 0.0;
            for (std::uint64_t i = 0; i < set.count(); ++i) {
                exy += set.at(i, a) * set.at(i, b);
                ex += set.at(i, a);
                ey += set.at(i, b);
            }
            const double n = static_cast<double>(set.count());
            const double oracle = exy / n - (ex / n) * (ey / n);
            CHECK(mom.cov_at(a, b) == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("uniform moments") {
    const auto one = uniform_moments(AxisBox({0.0}, {1.0}));
    CHECK(one.mean[0] == doctest::Approx(0.5));
    CHECK(one.cov_at(0, 0) == doctest::Approx(1.0 / 12.0));

    const auto two = uniform_moments(AxisBox({0.0}, {2.0}));
    CHECK(two.mean[0] == doctest::Approx(1.0));
    CHECK(two.cov_at(0, 0) == doctest::Approx(1.0 / 3.0));

    const auto cube = uniform_moments(AxisBox({0, 0, 0}, {1, 1, 1}));
    for (int j = 0; j < 3; ++j) {
        CHECK(cube.mean[static_cast<std::size_t>(j)] == doctest::Approx(0.5));
        CHECK(cube.cov_at(j, j) == doctest::Approx(1.0 / 12.0));
    }
    CHECK(cube.cov_at(0, 1) == 0.0);
    CHECK(cube.cov_at(1, 2) == 0.0);
}

TEST_CASE("moment test accepts the midpoint lattice") {
    const AxisBox box({0.2, -1.0}, {0.8, 2.5});
    std::vector<double> data;
    const int k = 40;
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            data.push_back(box.lo(0) + (a + 0.5) / k * box.width(0));
            data.push_back(box.lo(1) + (b + 0.5) / k * box.width(1));
        }
    }
    const SampleSet set(2, data);
    CHECK(moment_uniformity_test(full_view(set), box, {0.1, 0.1, 0.1}));
}

TEST_CASE("moment test rejects a degenerate cluster at the center") {
    const AxisBox box({0, 0}, {1, 1});
    std::vector<double> data;
    for (int i = 0; i < 64; ++i) {
        data.push_back(0.5);
        data.push_back(0.5);
    }
    const SampleSet set(2, data);
    CHECK_FALSE(moment_uniformity_test(full_view(set), box, {0.1, 0.1, 0.1}));
}

TEST_CASE("moment test in one dimension reduces to mean and variance checks") {
    const AxisBox box({0.0}, {1.0});
    std::vector<double> data;
    const int k = 64;
    for (int i = 0; i < k; ++i) data.push_back((i + 0.5) / k);
    const SampleSet set(1, data);
    CHECK(moment_uniformity_test(full_view(set), box, {0.1, 0.1, 1e-300}));
}

TEST_CASE("moment test rejects the empty subset") {
    const SampleSet set(1, {0.5});
    SubsetView view{&set, {}};
    CHECK_THROWS_AS(moment_uniformity_test(view, AxisBox({0.0}, {1.0}), {0.1, 0.1, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_moments(view), std::invalid_argument);
}

TEST_CASE("moment test outcome is invariant under box reflection and rotation") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 150; ++trial) {
        const int d = 2 + static_cast<int>(rng() % 4);
        const int ri = static_cast<int>(rng() % static_cast<unsigned>(d));
        int rj = static_cast<int>(rng() % static_cast<unsigned>(d - 1));
        if (rj >= ri) ++rj;
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            lo[static_cast<std::size_t>(j)] = -2.0 + 3.0 * uni(rng);
            hi[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 0.2 + 2.0 * uni(rng);
        }
        // Rotation invariance needs equal extents on the rotated pair.
        hi[static_cast<std::size_t>(rj)] =
            lo[static_cast<std::size_t>(rj)] +
            (hi[static_cast<std::size_t>(ri)] - lo[static_cast<std::size_t>(ri)]);
        const AxisBox box(lo, hi);
        const std::size_t n = 2 + rng() % 100;
        const SampleSet set = random_in_box(rng, box, n);
        const MomentTolerances tol{0.02 + 0.3 * uni(rng), 0.02 + 0.3 * uni(rng),
                                   0.02 + 0.3 * uni(rng)};
        const bool base = moment_uniformity_test(full_view(set), box, tol);

        std::vector<double> reflected = set.data();
        for (std::size_t i = 0; i < n; ++i) {
            auto& v = reflected[i * static_cast<std::size_t>(d) + static_cast<std::size_t>(ri)];
            v = box.lo(ri) + box.hi(ri) - v;
        }
        const SampleSet rset(d, reflected);
        CHECK(moment_uniformity_test(full_view(rset), box, tol) == base);

        std::vector<double> rotated = set.data();
        for (std::size_t i = 0; i < n; ++i) {
            double* row = rotated.data() + i * static_cast<std::size_t>(d);
            const double yi = row[ri];
            const double yj = row[rj];
            row[ri] = box.center(ri) + (yj - box.center(rj));
            row[rj] = box.center(rj) - (yi - box.center(ri));
        }
        const SampleSet rotset(d, rotated);
        CHECK(moment_uniformity_test(full_view(rotset), box, tol) == base);
    }
}

TEST_CASE("moment computation scales roughly linearly in n") {
    std::mt19937_64 rng(29);
    const AxisBox box({0, 0}, {1, 1});
    const SampleSet small = random_in_box(rng, box, 300000);
    const SampleSet big = random_in_box(rng, box, 600000);
    auto time_of = [](const SampleSet& set) {
        double best = 1e100;
        for (int rep = 0; rep < 7; ++rep) {
            const auto t0 = std::chrono::steady_clock::now();
            const auto mom = sample_moments(full_view(set));
            const double dt =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            best = std::min(best, dt + (mom.mean[0] > 1e300 ? 1.0 : 0.0));
        }
        return best;
    };
    const double t_small = time_of(small);
    const double t_big = time_of(big);
    CHECK(t_big / t_small < 2.5);
}
