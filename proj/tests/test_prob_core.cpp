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

#include "divbound/prob_core.hpp"

#include "support/oracle.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

namespace {

using divbound::FiniteDist;
using divbound::Labels;
using divbound::make_dist;

TEST(FiniteDistTest, GeneratedLabelsAndAccess)
{
  auto const P = make_dist({0.2, 0.3, 0.5});
  ASSERT_EQ(P.size(), 3u);
  EXPECT_EQ(P.label(0), "x1");
  EXPECT_EQ(P.label(2), "x3");
  EXPECT_DOUBLE_EQ(P[1], 0.3);
  EXPECT_DOUBLE_EQ(P.mass_of("x3"), 0.5);
  EXPECT_DOUBLE_EQ(P.mass_of("missing"), 0.0);
}

TEST(FiniteDistTest, RejectsMalformedInput)
{
  EXPECT_THROW(make_dist(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(make_dist(Labels{"a", "b"}, {0.5}), std::invalid_argument);
  EXPECT_THROW(make_dist(Labels{"a", "a"}, {0.5, 0.5}), std::invalid_argument);
  EXPECT_THROW(make_dist({0.5, 0.6}), std::invalid_argument);
  EXPECT_THROW(make_dist({1.1, -0.1}), std::invalid_argument);
  EXPECT_THROW(make_dist({0.5, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(make_dist({0.5, INFINITY}), std::invalid_argument);
}

TEST(FiniteDistTest, ClampsTinyNegativesAndRenormalizes)
{
  auto const P = make_dist({0.5 + 1e-16, 0.5, -1e-16});
  EXPECT_EQ(P[2], 0.0);

  auto const R = make_dist({0.25 + 2e-10, 0.75});
  EXPECT_NEAR(R[0] + R[1], 1.0, 1e-15);
}

TEST(FiniteDistTest, ToleranceOverride)
{
  divbound::Tolerances loose;
  loose.normalization = 1e-3;
  EXPECT_NO_THROW(make_dist({0.5, 0.5005}, loose));
  EXPECT_THROW(make_dist({0.5, 0.5005}), std::invalid_argument);
}

TEST(AlignTest, UnionAlphabetKeepsOrder)
{
  auto const P = make_dist(Labels{"a", "b"}, {0.5, 0.5});
  auto const Q = make_dist(Labels{"b", "c"}, {0.25, 0.75});
  auto const A = divbound::align(P, Q);
  EXPECT_EQ(A.labels, (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(A.p, (std::vector<double>{0.5, 0.5, 0.0}));
  EXPECT_EQ(A.q, (std::vector<double>{0.0, 0.25, 0.75}));
  EXPECT_DOUBLE_EQ(divbound::total_variation(P, Q), 0.75);
  EXPECT_DOUBLE_EQ(divbound::l1_distance(P, Q), 1.5);
}

TEST(TotalVariationTest, MetricPropertiesOnRandomPairs)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial)
  {
    int const  n = 2 + trial % 7;
    auto const p = divbound::oracle::random_positive(rng, n);
    auto const q = divbound::oracle::random_positive(rng, n);
    auto const r = divbound::oracle::random_positive(rng, n);
    auto const P = make_dist(p), Q = make_dist(q), R = make_dist(r);

    double const pq = divbound::total_variation(P, Q);
    EXPECT_NEAR(pq, static_cast<double>(divbound::oracle::tv(p, q)), 1e-14);
    EXPECT_DOUBLE_EQ(pq, divbound::total_variation(Q, P));
    EXPECT_GE(pq, 0.0);
    EXPECT_LE(pq, 1.0);
    EXPECT_LE(pq, divbound::total_variation(P, R) + divbound::total_variation(R, Q) + 1e-15);
    EXPECT_EQ(divbound::total_variation(P, P), 0.0);
  }
}

TEST(BinaryDivergenceTest, KnownValue)
{
  // d(1/4 || 1/2) = (3/4) log 3 - log 2
  EXPECT_NEAR(divbound::binary_divergence(0.25, 0.5), 0.1308120359411369591, 1e-15);
  EXPECT_NEAR(divbound::binary_divergence(0.25, 0.5), 0.75 * std::log(3.0) - std::log(2.0), 1e-15);
  EXPECT_EQ(divbound::binary_divergence(0.3, 0.3), 0.0);
  EXPECT_NEAR(divbound::binary_divergence(0.0, 0.5), std::log(2.0), 1e-15);
  EXPECT_THROW(divbound::binary_divergence(0.5, 0.0), std::invalid_argument);
  EXPECT_THROW(divbound::binary_divergence(1.5, 0.5), std::invalid_argument);
}

TEST(EntropyTest, BaseConversion)
{
  auto const U = make_dist({0.25, 0.25, 0.25, 0.25});
  EXPECT_DOUBLE_EQ(divbound::entropy_base(U, 2), 2.0);
  EXPECT_DOUBLE_EQ(divbound::entropy_base(U, 4), 1.0);
  EXPECT_DOUBLE_EQ(divbound::log_base(1.0 / 8.0, 2), -3.0);
  EXPECT_NEAR(divbound::entropy_base(make_dist({0.6, 0.3, 0.1}), 2), 1.295461844238321785, 1e-14);
  EXPECT_THROW(divbound::entropy_base(U, 1), std::invalid_argument);
  EXPECT_EQ(divbound::support_size(make_dist({0.5, 0.0, 0.5})), 2u);
}

TEST(ParseDistTest, ReadsCommentsAndBlanks)
{
  std::istringstream in("# header\n\na\t0.25\nb\t0.75\n");
  auto const         P = divbound::parse_dist(in);
  EXPECT_EQ(P.labels(), (std::vector<std::string>{"a", "b"}));
  EXPECT_DOUBLE_EQ(P[0], 0.25);
}

TEST(ParseDistTest, ErrorsCarryLineNumbers)
{
  std::istringstream bad("a\t0.5\nb 0.5\n");
  try
  {
    divbound::parse_dist(bad);
    FAIL() << "expected an exception";
  }
  catch (std::invalid_argument const &e)
  {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }

  std::istringstream junk("a\t0.5\nb\tabc\n");
  EXPECT_THROW(divbound::parse_dist(junk), std::invalid_argument);
  EXPECT_THROW(divbound::load_dist("/nonexistent/file.txt"), std::invalid_argument);
}

TEST(TotalVariationTest, TwiceTvIsTermwiseL1)
{
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial)
  {
    auto const P = make_dist(divbound::oracle::random_positive(rng, 2 + trial % 7, 0.0));
    auto const Q = make_dist(divbound::oracle::random_positive(rng, 2 + trial % 7, 0.0));
    EXPECT_EQ(2.0 * divbound::total_variation(P, Q), divbound::l1_distance(P, Q));
  }
}

TEST(BinaryDivergenceTest, NonNegativeWithEqualityOnlyOnDiagonal)
{
  for (int i = 0; i <= 100; ++i)
  {
    for (int j = 1; j < 100; ++j)
    {
      double const p = i / 100.0, q = j / 100.0;
      double const d = divbound::binary_divergence(p, q);
      EXPECT_GE(d, 0.0);
      if (i == j)
      {
        EXPECT_LE(d, 1e-12);
      }
      else
      {
        EXPECT_GT(d, 1e-12) << p << " " << q;
      }
    }
  }
}

TEST(EntropyTest, BoundedByLogSupport)
{
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial)
  {
    auto p = divbound::oracle::random_positive(rng, 2 + trial % 9);
    p[0] += p[1];
    p[1] = 0.0;
    auto const P = make_dist(p);
    int const  d = 2 + trial % 4;
    EXPECT_LE(divbound::entropy_base(P, d),
              divbound::log_base(static_cast<double>(divbound::support_size(P)), d) + 1e-12);
  }
}

}  // namespace
