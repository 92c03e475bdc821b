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

#include "divbound/jensen_fdiv.hpp"

#include "divbound/fdiv_engine.hpp"
#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace {

using namespace divbound;

FiniteDist const kHalf    = make_dist({0.5, 0.5});
FiniteDist const kQuarter = make_dist({0.25, 0.75});

TEST(PairedGeneratorTest, CertifiedPairs)
{
  EXPECT_TRUE(is_certified_pair(generator("dual_kl")));
  EXPECT_TRUE(is_certified_pair(generator("dual_chi2")));
  EXPECT_FALSE(is_certified_pair(generator("kl")));

  EXPECT_EQ(paired_generator(generator("dual_kl")).name, "kl");
  auto const lin = paired_generator(generator("dual_chi2"));
  for (double t : {1e-3, 0.5, 1.0, 7.0})
  {
    EXPECT_DOUBLE_EQ(lin(t), t - 1.0);
    EXPECT_NEAR(lin(t), -t * generator("dual_chi2")(t), 1e-12);
  }
}

TEST(PairedGeneratorTest, NonConvexPairingIsRejected)
{
  // -t^2 log t is not convex.
  EXPECT_THROW(paired_generator(generator("kl")), std::invalid_argument);
  EXPECT_THROW(sandwich(generator("kl"), kHalf, kQuarter), std::invalid_argument);
}

TEST(SandwichTest, WorkedExampleDualKl)
{
  auto const r = sandwich(generator("dual_kl"), kHalf, kQuarter);
  EXPECT_NEAR(r.r_min, 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.r_max, 2.0, 1e-15);
  EXPECT_NEAR(r.chi2, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(r.middle, 0.1438410362258904637, 1e-14);
  EXPECT_NEAR(r.left, 2.0 / 3.0 * 0.1308120359411369591, 1e-14);
  EXPECT_NEAR(r.right, 2.0 * 0.1308120359411369591, 1e-14);
  EXPECT_TRUE(r.ordered());
  EXPECT_TRUE(r.diagnostic.empty());
}

TEST(SandwichTest, RequiresStrictlyPositiveMasses)
{
  auto const Z = make_dist({1.0, 0.0});
  EXPECT_THROW(sandwich(generator("dual_kl"), Z, kHalf), std::invalid_argument);
  EXPECT_THROW(sandwich(generator("dual_kl"), kHalf, Z), std::invalid_argument);
}

TEST(SandwichTest, PropertiesOnRandomPairs)
{
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 2000; ++trial)
  {
    int const  n = 2 + trial % 7;
    auto const p = oracle::random_positive(rng, n);
    auto const q = oracle::random_positive(rng, n);
    auto const P = make_dist(p), Q = make_dist(q);

    auto const a = sandwich(generator("dual_kl"), P, Q);
    EXPECT_TRUE(a.ordered()) << a.left << " " << a.middle << " " << a.right;
    double const chi2 = static_cast<double>(oracle::chi2(p, q));
    EXPECT_NEAR(a.middle, std::log1p(chi2) - static_cast<double>(oracle::kl(p, q)), 1e-10);

    auto const b = sandwich(generator("dual_chi2"), P, Q);
    EXPECT_TRUE(b.ordered()) << b.left << " " << b.middle << " " << b.right;
    EXPECT_NEAR(b.middle, chi2 / (1.0 + chi2), 1e-10);

    EXPECT_LE(a.r_min, 1.0);
    EXPECT_GE(a.r_max, 1.0);
  }
}

TEST(JensenFunctionalTest, KnownValue)
{
  std::vector<double> const u{2.0, 0.5};
  EXPECT_NEAR(jensen_functional(generator("kl"), u, kHalf), 0.2409309462771967874, 1e-15);
  EXPECT_NEAR(jensen_functional(generator("kl"), u, kHalf),
              0.75 * std::log(2.0) - 1.25 * std::log(1.25), 1e-15);
  EXPECT_THROW(jensen_functional(generator("kl"), std::vector<double>{1.0}, kHalf), std::invalid_argument);
}

TEST(JensenFunctionalTest, DragomirSandwichOnRandomInputs)
{
  std::mt19937_64                        rng(77);
  std::uniform_real_distribution<double> pos(0.01, 10.0);
  for (auto const *name : {"kl", "dual_kl", "chi2", "hellinger2", "jeffreys", "capacitory"})
  {
    for (int trial = 0; trial < 300; ++trial)
    {
      int const           n = 2 + trial % 5;
      std::vector<double> u(static_cast<std::size_t>(n));
      for (auto &x : u)
      {
        x = pos(rng);
      }
      auto const P = make_dist(oracle::random_positive(rng, n));
      auto const Q = make_dist(oracle::random_positive(rng, n));
      auto const t = dragomir_sandwich_check(generator(name), u, P, Q);
      double const slack = 1e-10 * std::max(1.0, std::abs(t.right));
      EXPECT_GE(t.left, -slack) << name;
      EXPECT_LE(t.left, t.mid + slack) << name;
      EXPECT_LE(t.mid, t.right + slack) << name;
    }
  }
}

TEST(Chi2ExpBoundTest, WorkedExampleAndRandomPairs)
{
  auto const w = chi2_exp_bound_check(kHalf, kQuarter);
  EXPECT_NEAR(w.chi2, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w.exp_d_minus_1, 0.1547005383792515290, 1e-15);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 2000; ++trial)
  {
    auto const P = make_dist(oracle::random_positive(rng, 2 + trial % 7, 1e-4));
    auto const Q = make_dist(oracle::random_positive(rng, 2 + trial % 7, 1e-4));
    auto const c = chi2_exp_bound_check(P, Q);
    EXPECT_GE(c.chi2, c.exp_d_minus_1 - 1e-12 * std::max(1.0, c.chi2));
  }
}

TEST(SandwichTest, ChiSquaredAndRelativeEntropyInequalities)
{
  std::mt19937_64 rng(4321);
  for (int trial = 0; trial < 2000; ++trial)
  {
    int const  n = 2 + trial % 7;
    auto const p = oracle::random_positive(rng, n);
    auto const q = oracle::random_positive(rng, n);
    auto const P = make_dist(p), Q = make_dist(q);

    double const chi2 = chi_squared(P, Q);
    double const back = chi_squared(Q, P);
    auto const   s    = sandwich(generator("dual_chi2"), P, Q);
    EXPECT_LE(s.r_min * back, chi2 / (1.0 + chi2) + 1e-10);
    EXPECT_LE(chi2 / (1.0 + chi2), s.r_max * back + 1e-10);

    double const dqp = kl_divergence(Q, P);
    EXPECT_GE(std::log1p(chi2) - kl_divergence(P, Q), s.r_min * dqp - 1e-10);
    EXPECT_GE(s.r_min * dqp, 0.0);
  }
}

TEST(JensenFunctionalTest, NonNegative)
{
  std::mt19937_64                        rng(21);
  std::uniform_real_distribution<double> pos(1e-3, 1e3);
  for (auto const &name : GeneratorRegistry::instance().names())
  {
    for (int trial = 0; trial < 200; ++trial)
    {
      std::vector<double> u(static_cast<std::size_t>(2 + trial % 6));
      for (auto &x : u)
      {
        x = pos(rng);
      }
      auto const W = make_dist(oracle::random_positive(rng, static_cast<int>(u.size())));
      EXPECT_GE(jensen_functional(generator(name), u, W), -1e-12 * std::max(1.0, u.back())) << name;
    }
  }
}

TEST(JensenFunctionalTest, LikelihoodRatioSpecializations)
{
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial)
  {
    int const  n = 2 + trial % 7;
    auto const P = make_dist(oracle::random_positive(rng, n));
    auto const Q = make_dist(oracle::random_positive(rng, n));
    std::vector<double> u;
    for (std::size_t i = 0; i < P.size(); ++i)
    {
      u.push_back(P[i] / Q[i]);
    }
    for (auto const *name : {"dual_kl", "dual_chi2"})
    {
      auto const &f = generator(name);
      EXPECT_NEAR(jensen_functional(f, u, Q), f_divergence(f, P, Q), 1e-10) << name;
      EXPECT_NEAR(dragomir_sandwich_check(f, u, P, Q).mid, sandwich(f, P, Q).middle, 1e-10) << name;
    }
  }
}

}  // namespace
