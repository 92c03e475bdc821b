//------------------------------------------------------------------------------
//
//   Copyright 2026 The divbound Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "divbound/oracle_harness.hpp"

#include "divbound/fdiv_engine.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace {

using namespace divbound;

TEST(StreamSeedTest, DeterministicAndDistinct)
{
  EXPECT_EQ(stream_seed(1, 0), stream_seed(1, 0));
  EXPECT_NE(stream_seed(1, 0), stream_seed(1, 1));
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(PairSamplerTest, PairsHaveRequestedDistance)
{
  for (int support = 2; support <= 8; ++support)
  {
    for (double eps : {0.01, 0.3, 0.77, 1.0})
    {
      PairSampler         s({support, eps, 42, 1e-9});
      std::vector<double> p, q;
      for (int i = 0; i < 500; ++i)
      {
        s.next(support, p, q);
        ASSERT_EQ(p.size(), static_cast<std::size_t>(support));
        double sp = 0, sq = 0;
        for (std::size_t k = 0; k < p.size(); ++k)
        {
          ASSERT_GE(p[k], 0.0);
          ASSERT_GE(q[k], 0.0);
          sp += p[k];
          sq += q[k];
        }
        EXPECT_NEAR(sp, 1.0, 1e-12);
        EXPECT_NEAR(sq, 1.0, 1e-12);
        EXPECT_NEAR(static_cast<double>(oracle::tv(p, q)), eps, 1e-9);
      }
    }
  }
}

TEST(PairSamplerTest, SameSeedSameStream)
{
  PairSampler a({4, 0.4, 9, 1e-9});
  PairSampler b({4, 0.4, 9, 1e-9});
  PairSampler c({4, 0.4, 10, 1e-9});
  auto const  x = a.next();
  EXPECT_EQ(x, b.next());
  EXPECT_NE(x, c.next());
  EXPECT_EQ(x.first.size(), 4u);
}

TEST(PairSamplerTest, RejectsBadConfig)
{
  EXPECT_THROW(PairSampler({1, 0.5, 1, 1e-9}), std::invalid_argument);
  EXPECT_THROW(PairSampler({9, 0.5, 1, 1e-9}), std::invalid_argument);
  EXPECT_THROW(PairSampler({3, 1.5, 1, 1e-9}), std::invalid_argument);
  PairSampler         s({3, 0.5, 1, 1e-9});
  std::vector<double> p, q;
  EXPECT_THROW(s.next(12, p, q), std::invalid_argument);
}

TEST(MeasureTest, NamesAndAliases)
{
  for (auto const &name : measure_names())
  {
    EXPECT_EQ(measure(name).name, name);
  }
  EXPECT_EQ(measure("hellinger2").name, "squared_hellinger");
  EXPECT_EQ(measure("tv").name, "total_variation");
  EXPECT_TRUE(measure("bhattacharyya").has_upper());
  EXPECT_FALSE(measure("chernoff").has_upper());
  EXPECT_THROW(measure("kl"), std::invalid_argument);
}

TEST(GridPairsTest, AllAtRequestedDistance)
{
  std::size_t count = 0;
  for_each_grid_pair(0.3, 0.01, [&](std::span<double const> p, std::span<double const> q) {
    double sp = 0, sq = 0, d = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
    {
      EXPECT_GE(p[i], 0.0);
      EXPECT_GE(q[i], 0.0);
      sp += p[i];
      sq += q[i];
      d += std::abs(p[i] - q[i]);
    }
    EXPECT_NEAR(sp, 1.0, 1e-12);
    EXPECT_NEAR(sq, 1.0, 1e-12);
    EXPECT_NEAR(d / 2, 0.3, 1e-12);
    ++count;
  });
  EXPECT_GT(count, 70u);
}

TEST(VerifyTest, EveryMeasurePassesAtModestSize)
{
  VerifyConfig cfg;
  cfg.grid_step = 1e-2;
  cfg.gap_threshold = 5e-3;
  for (auto const &name : measure_names())
  {
    for (double eps : {0.1, 0.5, 0.9})
    {
      auto const r = verify_min(measure(name), eps, 2000, cfg, 0);
      EXPECT_TRUE(r.pass()) << name << " eps=" << eps << " gap=" << r.gap();
      EXPECT_EQ(r.violations, 0u) << name;
      EXPECT_TRUE(r.grid_ran);
      EXPECT_GE(r.evaluated, 2000u);
    }
  }
}

TEST(VerifyTest, WrongClosedFormIsCaught)
{
  Measure fake = measure("jeffreys");
  fake.lower   = [](double e) { return 1.5 * jeffreys_min(e); };
  auto const r = verify_min(fake, 0.4, 500, VerifyConfig{}, 0);
  EXPECT_FALSE(r.pass());
  EXPECT_GT(r.violations, 0u);
  ASSERT_TRUE(r.witness.has_value());
  EXPECT_LT(r.witness->value, 1.5 * jeffreys_min(0.4));
  EXPECT_FALSE(r.attained);
}

TEST(VerifyTest, LooseClosedFormFailsTheGap)
{
  Measure fake = measure("hellinger2");
  fake.lower   = [](double e) { return 0.5 * symmetric_lower_bound(generator("hellinger2"), e); };
  VerifyConfig cfg;
  cfg.grid_step = 1e-2;
  auto const r  = verify_min(fake, 0.6, 500, cfg, 0);
  EXPECT_EQ(r.violations, 0u);
  EXPECT_FALSE(r.gap_ok);
  EXPECT_FALSE(r.pass());
}

TEST(VerifyTest, DomainChecks)
{
  EXPECT_THROW(verify_min(measure("jeffreys"), 1.0, 10, VerifyConfig{}), std::invalid_argument);
  EXPECT_THROW(verify_min(measure("jeffreys"), -0.1, 10, VerifyConfig{}), std::invalid_argument);
  VerifyConfig bad;
  bad.max_support = 9;
  EXPECT_THROW(verify_min(measure("tv"), 0.5, 10, bad), std::invalid_argument);
  // Validation happens before any work starts.
  EXPECT_THROW(grid_verify(measure("capacitory"), {0.5, 1.0}, 10, VerifyConfig{}), std::invalid_argument);
}

TEST(GridVerifyTest, ReproducibleAcrossThreadCounts)
{
  VerifyConfig one;
  one.threads  = 1;
  one.use_grid = false;
  one.gap_threshold = 1.0;
  VerifyConfig four = one;
  four.threads      = 4;
  std::vector<double> const eps{0.2, 0.4, 0.6, 0.8};
  auto const a = grid_verify(measure("chernoff"), eps, 500, one);
  auto const b = grid_verify(measure("chernoff"), eps, 500, four);
  ASSERT_EQ(a.reports.size(), 4u);
  for (std::size_t i = 0; i < eps.size(); ++i)
  {
    EXPECT_EQ(a.reports[i].sample_min, b.reports[i].sample_min);
    EXPECT_EQ(a.reports[i].stream_seed, b.reports[i].stream_seed);
  }
  EXPECT_TRUE(a.pass());
  EXPECT_EQ(a.closed_form.points.size(), 4u);
  EXPECT_EQ(a.empirical_min.points[2].eps, 0.6);
}

TEST(VerifyTest, IdenticalSeedsGiveIdenticalReports)
{
  VerifyConfig cfg;
  cfg.grid_step = 1e-2;
  cfg.seed      = 99;
  auto const a  = verify_min(measure("bhattacharyya"), 0.35, 3000, cfg, 4);
  auto const b  = verify_min(measure("bhattacharyya"), 0.35, 3000, cfg, 4);
  EXPECT_EQ(a.sample_min, b.sample_min);
  EXPECT_EQ(a.sample_max, b.sample_max);
  EXPECT_EQ(a.grid_min, b.grid_min);
  EXPECT_EQ(a.evaluated, b.evaluated);
  EXPECT_LE(a.empirical_max(), a.closed_form_upper + 1e-9);
  EXPECT_GE(a.empirical_min(), a.closed_form - 1e-9);
}

}  // namespace
