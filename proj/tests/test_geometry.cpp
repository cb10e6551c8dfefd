#include <doctest.h>

#include <random>

#include "seqpart/engine.hpp"
#include "seqpart/geometry.hpp"

using namespace seqpart;

namespace {

SampleSet make_set(int d, std::vector<double> data) { return SampleSet(d, std::move(data)); }

}  // namespace

TEST_CASE("volume of simple boxes") {
    CHECK(AxisBox({0, 0, 0}, {1, 1, 1}).volume() == doctest::Approx(1.0));
    CHECK(AxisBox({0, 0}, {0.5, 1}).volume() == doctest::Approx(0.5));
    CHECK(AxisBox({0.2}, {0.7}).volume() == doctest::Approx(0.5));
}

TEST_CASE("box invariants are enforced") {
    CHECK_THROWS_AS(AxisBox({0.0}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(AxisBox({1.0}, {0.5}), std::invalid_argument);
    CHECK_THROWS_AS(AxisBox({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(AxisBox({0.0, 0.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("containment is half-open except on closed upper faces") {
    const AxisBox box({0, 0}, {1, 1});
    const UpperClosedFlags open2{0, 0};
    const UpperClosedFlags closed2{1, 1};
    const double origin[] = {0.0, 0.0};
    const double corner[] = {1.0, 1.0};
    CHECK(box_contains(box, origin, open2));
    CHECK_FALSE(box_contains(box, corner, open2));
    CHECK(box_contains(box, corner, closed2));

    const AxisBox lower({0.0}, {0.5});
    const AxisBox upper({0.5}, {1.0});
    const double split_point[] = {0.5};
    CHECK_FALSE(box_contains(lower, split_point, {0}));
    CHECK(box_contains(upper, split_point, {1}));

    CHECK_THROWS_AS(box_contains(box, std::span<const double>(origin, 1), open2),
                    std::invalid_argument);
}

TEST_CASE("upper_closed_flags marks domain faces") {
    const AxisBox domain({0, 0}, {1, 1});
    const auto [lower, upper] = split_box(domain, 0, 0.25);
    const auto flags_lower = upper_closed_flags(lower, domain);
    const auto flags_upper = upper_closed_flags(upper, domain);
    CHECK(flags_lower == UpperClosedFlags{0, 1});
    CHECK(flags_upper == UpperClosedFlags{1, 1});
}

TEST_CASE("scale_to_unit applies the affine map") {
    const SampleSet one_d = make_set(1, {1.0});
    CHECK(scale_to_unit(full_view(one_d), AxisBox({0.0}, {2.0})).at(0, 0) ==
          doctest::Approx(0.5).epsilon(1e-14));

    const SampleSet quarter = make_set(1, {0.75});
    CHECK(scale_to_unit(full_view(quarter), AxisBox({0.5}, {1.0})).at(0, 0) ==
          doctest::Approx(0.5).epsilon(1e-14));

    const SampleSet in_cube = make_set(3, {0.1, 0.7, 0.3});
    const auto scaled = scale_to_unit(full_view(in_cube), AxisBox({0, 0, 0}, {1, 1, 1}));
    CHECK(scaled.at(0, 0) == 0.1);
    CHECK(scaled.at(0, 1) == 0.7);
    CHECK(scaled.at(0, 2) == 0.3);

    const SampleSet outside = make_set(1, {0.4});
    CHECK_THROWS_AS(scale_to_unit(full_view(outside), AxisBox({0.5}, {1.0})), std::domain_error);
}

TEST_CASE("scale_to_unit inverts the unit-to-box affine map") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 5);
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            lo[static_cast<std::size_t>(j)] = -3.0 + 5.0 * uni(rng);
            hi[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 0.01 + 4.0 * uni(rng);
        }
        const AxisBox box(lo, hi);
        std::vector<double> unit(static_cast<std::size_t>(d)), data(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            unit[static_cast<std::size_t>(j)] = uni(rng);
            data[static_cast<std::size_t>(j)] =
                box.lo(j) + unit[static_cast<std::size_t>(j)] * box.width(j);
        }
        const SampleSet set(d, data);
        const auto back = scale_to_unit(full_view(set), box);
        for (int j = 0; j < d; ++j) {
            CHECK(back.at(0, j) == doctest::Approx(unit[static_cast<std::size_t>(j)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("split volumes add up to the parent volume") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        const int d = 1 + static_cast<int>(rng() % 4);
        std::vector<double> lo(static_cast<std::size_t>(d)), hi(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            lo[static_cast<std::size_t>(j)] = -1.0 + 2.0 * uni(rng);
            hi[static_cast<std::size_t>(j)] = lo[static_cast<std::size_t>(j)] + 0.05 + 2.0 * uni(rng);
        }
        const AxisBox box(lo, hi);
        const int axis = static_cast<int>(rng() % static_cast<unsigned>(d));
        const double s = box.lo(axis) + (0.1 + 0.8 * uni(rng)) * box.width(axis);
        const auto [a, b] = split_box(box, axis, s);
        CHECK(a.volume() + b.volume() == doctest::Approx(box.volume()).epsilon(1e-12));
    }
}

TEST_CASE("unit cube symmetry transforms") {
    UnitPointSet pts;
    pts.dim = 3;
    pts.pts = {0.1, 0.2, 0.9, 0.4, 0.5, 0.6};

    const auto reflected = reflect_unit_axis(pts, 1);
    CHECK(reflected.at(0, 1) == doctest::Approx(0.8));
    CHECK(reflected.at(1, 1) == doctest::Approx(0.5));
    const auto twice = reflect_unit_axis(reflected, 1);
    for (std::size_t i = 0; i < pts.pts.size(); ++i) {
        CHECK(twice.pts[i] == doctest::Approx(pts.pts[i]).epsilon(1e-15));
    }

    const auto rotated = rotate_unit_plane(pts, 0, 2);
    CHECK(rotated.at(0, 0) == doctest::Approx(0.9));
    CHECK(rotated.at(0, 2) == doctest::Approx(0.9));

    const int perm[] = {2, 0, 1};
    const auto permuted = permute_axes(pts, perm);
    CHECK(permuted.at(0, 0) == doctest::Approx(0.9));
    CHECK(permuted.at(0, 1) == doctest::Approx(0.1));
    CHECK(permuted.at(0, 2) == doctest::Approx(0.2));
}
