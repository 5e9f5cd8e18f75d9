#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "knv/constructions.hpp"
#include "knv/cycle_method.hpp"
#include "knv/freeness.hpp"
#include "knv/log_bounds.hpp"
#include "oracles.hpp"

using namespace knv;

namespace {

SubsetMask S(std::initializer_list<int> e) { return SubsetMask::of(e); }

}  // namespace

TEST(LogBounds, EnclosureContainsLog) {
    for (long long x : {2LL, 3LL, 4LL, 6LL, 10LL, 1000LL}) {
        const LogEnclosure e = log_enclosure(x, 30);
        const double ln = std::log(static_cast<double>(x));
        EXPECT_LT(static_cast<double>(e.lo), ln + 1e-12);
        EXPECT_GT(static_cast<double>(e.hi), ln - 1e-12);
        EXPECT_LT(e.lo, e.hi);
    }
    EXPECT_THROW((void)log_enclosure(1, 5), std::invalid_argument);
}

TEST(LogBounds, CeilScaledLog) {
    EXPECT_EQ(ceil_scaled_log(4, 2), 3);   // 2.7725...
    EXPECT_EQ(ceil_scaled_log(2, 2), 2);   // 1.3862...
    EXPECT_EQ(ceil_scaled_log(6, 4), 9);   // 8.3177...
    EXPECT_EQ(ceil_scaled_log(8, 6), 15);  // 14.3335...
    EXPECT_EQ(ceil_scaled_log(5, 1), 0);
    for (long long c = 1; c <= 40; ++c) {
        for (long long x = 2; x <= 12; ++x) {
            const double v = static_cast<double>(c) * std::log(static_cast<double>(x));
            // Away from integers the double value decides the ceiling.
            if (std::abs(v - std::round(v)) > 1e-6) {
                ASSERT_EQ(ceil_scaled_log(c, x), static_cast<long long>(std::ceil(v))) << c << " " << x;
            }
        }
    }
}

TEST(LogBounds, RationalRounding) {
    EXPECT_EQ(knv::ceil(Rational(7, 2)), 4);
    EXPECT_EQ(knv::floor(Rational(7, 2)), 3);
    EXPECT_EQ(knv::ceil(Rational(-7, 2)), -3);
    EXPECT_EQ(knv::floor(Rational(-7, 2)), -4);
    EXPECT_EQ(knv::ceil(Rational(4)), 4);
}

TEST(CyclicPerm, CanonicalForm) {
    const CyclicPerm a({3, 1, 2});
    EXPECT_EQ(a.order(), (std::vector<int>{1, 2, 3}));
    EXPECT_EQ(a, CyclicPerm({2, 3, 1}));
    EXPECT_EQ(a.at(4), 1);
    EXPECT_EQ(a.at(0), 3);
    EXPECT_EQ(a.position_of(3), 3);
    EXPECT_THROW(CyclicPerm({1, 1, 2}), std::invalid_argument);
    EXPECT_THROW(CyclicPerm({1, 4}), std::invalid_argument);
}

TEST(CyclicPerm, EnumerationCount) {
    for (int nv = 1; nv <= 7; ++nv) {
        std::vector<std::vector<int>> seen;
        for_each_cyclic_perm(GroundSize(nv), [&](const CyclicPerm& pi) { seen.push_back(pi.order()); });
        EXPECT_EQ(BigCount(seen.size()), factorial(nv - 1));
        if (nv <= 6) {
            EXPECT_EQ(seen, oracle::cyclic_orders(nv));
        }
    }
}

TEST(Intervals, Examples) {
    const CyclicPerm p132({1, 3, 2});
    EXPECT_TRUE(is_interval(S({3, 1}), p132));
    EXPECT_TRUE(is_interval(S({1, 2}), p132));
    EXPECT_FALSE(is_interval(S({1, 3}), CyclicPerm({1, 2, 3, 4})));
    EXPECT_TRUE(is_interval(S({1, 2, 3, 4}), CyclicPerm({1, 2, 3, 4})));
    EXPECT_THROW((void)is_interval(SubsetMask{}, p132), std::invalid_argument);
    const auto spec = interval_spec(S({1, 2}), p132);
    ASSERT_TRUE(spec);
    EXPECT_EQ(spec->start, 3);
    EXPECT_EQ(spec->length, 2);
    EXPECT_EQ(spec->mask(p132), S({1, 2}));
}

TEST(Intervals, Restrict) {
    const GroundSize n3(3);
    Family no_empty(n3);
    {
        std::vector<SubsetMask> m;
        for (std::uint32_t b = 1; b < 8; ++b) {
            m.emplace_back(b);
        }
        no_empty = Family(n3, m);
    }
    EXPECT_EQ(restrict_to_intervals(no_empty, CyclicPerm({1, 3, 2})).size(), 7u);
    const CyclicPerm id4 = CyclicPerm::identity(GroundSize(4));
    EXPECT_EQ(restrict_to_intervals(level_slice(GroundSize(4), 2, 2), id4),
              Family(GroundSize(4), {S({1, 2}), S({2, 3}), S({3, 4}), S({1, 4})}));
    // Intervals containing 1 under the identity: {1},{1,2},{4,1},{1,2,3},{3,4,1},{4,1,2},[4].
    EXPECT_EQ(restrict_to_intervals(star_family(GroundSize(4), 1), id4).size(), 7u);
    EXPECT_TRUE(restrict_to_intervals(Family(n3, {SubsetMask{}}), CyclicPerm({1, 2, 3})).empty());
}

TEST(Weight, Examples) {
    EXPECT_EQ(weight(GroundSize(3), S({1})), 3);
    EXPECT_EQ(weight(GroundSize(4), S({1, 2})), 6);
    EXPECT_EQ(weight(GroundSize(5), SubsetMask{}), 1);
    EXPECT_EQ(family_weight(level_slice(GroundSize(4), 1, 2)), 4 * 4 + 6 * 6);
}

TEST(DoubleCount, Examples) {
    const DoubleCount a = double_count_check(Family(GroundSize(3), {S({1}), S({1, 2})}));
    EXPECT_EQ(a.lhs, 12);
    EXPECT_EQ(a.rhs, 12);
    EXPECT_TRUE(a.equal);
    const DoubleCount b = double_count_check(level_slice(GroundSize(4), 2, 2));
    EXPECT_EQ(b.lhs, 144);
    EXPECT_TRUE(b.equal);
    const DoubleCount c = double_count_check(Family(GroundSize(4)));
    EXPECT_EQ(c.lhs, 0);
    EXPECT_EQ(c.rhs, 0);
    EXPECT_TRUE(c.equal);
    EXPECT_THROW((void)double_count_check(Family(GroundSize(3), {SubsetMask{}})), std::invalid_argument);
    EXPECT_THROW((void)double_count_check(Family(GroundSize(3), {S({1, 2, 3})})), std::invalid_argument);
    EXPECT_THROW((void)double_count_check(Family(GroundSize(8))), std::invalid_argument);
}

TEST(MOfJ, Examples) {
    const GroundSize n7(7);
    EXPECT_EQ(m_of_j(n7, 1, 0), 2);
    EXPECT_EQ(m_of_j(n7, 1, 1), 3);
    EXPECT_EQ(m_of_j(n7, 1, 2), 3);
    EXPECT_THROW((void)m_of_j(n7, 1, 3), std::invalid_argument);
    EXPECT_THROW((void)m_of_j(n7, 1, -1), std::invalid_argument);
    EXPECT_THROW((void)m_of_j(n7, 0, 0), std::invalid_argument);
}

TEST(ShiftImage, Examples) {
    const CyclicPerm id7 = CyclicPerm::identity(GroundSize(7));
    const auto img = shift_image(IntervalSpec{1, 2}, id7, 1);
    EXPECT_EQ(img, (std::vector<SubsetMask>{S({3, 4}), S({5, 6})}));

    const CyclicPerm id10 = CyclicPerm::identity(GroundSize(10));
    const auto five = shift_image(IntervalSpec{1, 4}, id10, 2);
    ASSERT_EQ(five.size(), 4u);
    std::vector<SubsetMask> cyc{S({1, 2, 3, 4})};
    cyc.insert(cyc.end(), five.begin(), five.end());
    EXPECT_TRUE(is_graph_copy(cyc, cycle(5)));

    EXPECT_THROW((void)shift_image(IntervalSpec{1, 1}, CyclicPerm::identity(GroundSize(4)), 2), CycleShapeError);
    // Length not of the form floor(kn/(2k+1)) - j with j >= 0.
    EXPECT_THROW((void)shift_image(IntervalSpec{1, 3}, id7, 1), std::invalid_argument);
}

TEST(CycleBounds, Examples) {
    EXPECT_EQ(cycle_shift_constant(1), 3);
    EXPECT_EQ(cycle_shift_constant(2), 9);
    EXPECT_EQ(cycle_shift_constant(3), 15);
    EXPECT_EQ(half_shift_constant(1), 2);
    EXPECT_EQ(cycle_upper_bound(GroundSize(15), 1), 32752);
    // ceil(12/3) - 3 = 1, so the tail from level 1.
    EXPECT_EQ(cycle_upper_bound(GroundSize(12), 1), 4095);
    EXPECT_EQ(threshold_lower_bound(GroundSize(12), 1), 3302);
    EXPECT_EQ(BigCount(threshold_family(GroundSize(12), 1).size()), threshold_lower_bound(GroundSize(12), 1));
}

TEST(MissingImage, Examples) {
    const GroundSize n9(9);
    const CyclicPerm id9 = CyclicPerm::identity(n9);
    std::vector<SubsetMask> big;
    for (int start = 1; start <= 9; ++start) {
        for (int len = 4; len <= 9; ++len) {
            big.push_back(IntervalSpec{start, len}.mask(id9));
        }
    }
    const MissingImageReport vac = missing_image_check(Family(n9, big), id9, 1);
    EXPECT_TRUE(vac.holds);
    EXPECT_EQ(vac.checked, 0u);

    // Greedy C3-free interval family at n = 7: add intervals shortest-first while free.
    const GroundSize n7(7);
    const CyclicPerm id7 = CyclicPerm::identity(n7);
    std::vector<SubsetMask> greedy;
    for (int len = 1; len <= 7; ++len) {
        for (int start = 1; start <= (len == 7 ? 1 : 7); ++start) {
            greedy.push_back(IntervalSpec{start, len}.mask(id7));
            if (!is_free(Family(n7, greedy), clique(3))) {
                greedy.pop_back();
            }
        }
    }
    const MissingImageReport g = missing_image_check(Family(n7, greedy), id7, 1);
    EXPECT_TRUE(g.holds);
    EXPECT_GT(g.checked, 0u);

    // F together with its whole shift image spans a triangle: precondition fails.
    const Family bad(n7, {S({1, 2}), S({3, 4}), S({5, 6})});
    EXPECT_THROW((void)missing_image_check(bad, id7, 1), std::invalid_argument);
    EXPECT_THROW((void)missing_image_check(Family(n7, {S({1, 3})}), id7, 1), std::invalid_argument);
}

// Properties.

TEST(CycleProperty, IntervalTestAgreesWithRunOracle) {
    for (int nv = 1; nv <= 6; ++nv) {
        for (const auto& order : oracle::cyclic_orders(nv)) {
            const CyclicPerm pi(order);
            for (std::uint32_t b = 1; b < (1u << nv); ++b) {
                ASSERT_EQ(is_interval(SubsetMask{b}, pi), oracle::cyclic_run(b, order));
                if (const auto spec = interval_spec(SubsetMask{b}, pi)) {
                    ASSERT_EQ(spec->mask(pi), SubsetMask{b});
                }
            }
        }
    }
}

TEST(CycleProperty, SingletonFamiliesSatisfyTheIdentity) {
    for (int nv = 2; nv <= 6; ++nv) {
        const GroundSize n(nv);
        const auto orders = oracle::cyclic_orders(nv);
        for (std::uint32_t b = 1; b + 1 < (1u << nv); ++b) {
            const DoubleCount d = double_count_check(Family(n, {SubsetMask{b}}));
            ASSERT_TRUE(d.equal) << nv << " " << b;
            // Oracle: number of cyclic orders where the set is a run, times its weight.
            std::size_t runs = 0;
            for (const auto& o : orders) {
                runs += oracle::cyclic_run(b, o) ? 1 : 0;
            }
            const int s = std::popcount(b);
            ASSERT_EQ(BigCount(runs), factorial(s) * factorial(nv - s));
            ASSERT_EQ(d.lhs, BigCount(runs) * binomial(nv, s));
        }
    }
}

TEST(CycleProperty, DoubleCountThreadCountIndependent) {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<SubsetMask> m;
        for (std::uint32_t b = 1; b < 63; ++b) {
            if (rng() & 1u) {
                m.emplace_back(b);
            }
        }
        const Family f(GroundSize(6), m);
        const DoubleCount one = double_count_check(f, 1);
        const DoubleCount four = double_count_check(f, 4);
        ASSERT_EQ(one.lhs, four.lhs);
        ASSERT_TRUE(one.equal);
    }
}

TEST(CycleProperty, MOfJMonotoneAndPeriodic) {
    for (int nv = 1; nv <= 30; ++nv) {
        const GroundSize n(nv);
        for (int k = 1; k <= 3; ++k) {
            const int lower = (k * nv + 2 * k) / (2 * k + 1) - half_shift_constant(k);
            for (int j = 0; j_in_domain(n, k, j); ++j) {
                const int m = m_of_j(n, k, j);
                ASSERT_EQ(m, oracle::m_by_search(nv, k, j));
                ASSERT_GE(m, lower) << nv << " " << k << " " << j;
                if (j_in_domain(n, k, j + 1)) {
                    ASSERT_LE(m, m_of_j(n, k, j + 1));
                }
                if (j_in_domain(n, k, j + 2 * k)) {
                    ASSERT_EQ(m_of_j(n, k, j + 2 * k), m + 1);
                }
            }
        }
    }
}

TEST(CycleProperty, WeightRatio) {
    for (int nv = 1; nv <= 30; ++nv) {
        for (int h = 1; h <= nv; ++h) {
            const BigCount wh = binomial(nv, h);
            const BigCount wp = binomial(nv, h - 1);
            // w(h) / w(h-1) = (n-h+1)/h, cross-multiplied.
            ASSERT_EQ(wh * h, wp * (nv - h + 1));
            // Below the cycle level the ratio exceeds (k+1)/k.
            for (int k = 1; k <= 3; ++k) {
                if (h * (2 * k + 1) < k * nv) {
                    ASSERT_GT(wh * k, wp * (k + 1)) << nv << " " << h << " " << k;
                }
            }
        }
    }
}

TEST(CycleProperty, ShiftImagesAreCycles) {
    for (int nv = 3; nv <= 16; ++nv) {
        const GroundSize n(nv);
        const CyclicPerm id = CyclicPerm::identity(n);
        for (int k = 1; k <= 3; ++k) {
            for (int j = 0; j_in_domain(n, k, j); ++j) {
                const int len = cycle_level(n, k) - j;
                if (len < 1) {
                    continue;
                }
                for (int start = 1; start <= nv; ++start) {
                    try {
                        const auto img = shift_image(IntervalSpec{start, len}, id, k);
                        std::vector<SubsetMask> cyc{IntervalSpec{start, len}.mask(id)};
                        cyc.insert(cyc.end(), img.begin(), img.end());
                        ASSERT_TRUE(oracle::contains_graph(Family(n, cyc), cycle(2 * k + 1)));
                        for (SubsetMask s : img) {
                            ASSERT_EQ(s.size(), m_of_j(n, k, j));
                        }
                    } catch (const CycleShapeError&) {
                    }
                }
            }
        }
    }
}

TEST(CycleProperty, SandwichUpTo30) {
    for (int nv = 1; nv <= 30; ++nv) {
        for (int k = 1; k <= 3; ++k) {
            ASSERT_LE(threshold_lower_bound(GroundSize(nv), k), cycle_upper_bound(GroundSize(nv), k));
        }
    }
}
