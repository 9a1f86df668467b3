#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <vector>

#include "rgfbk/errors.hpp"
#include "rgfbk/selection.hpp"
#include "test_util.hpp"

using namespace rgfbk;

TEST_CASE("full sample returns every index for any seed") {
  for (std::uint64_t seed : {0ULL, 1ULL, 77ULL}) {
    Rng rng(seed);
    const ControlSet control = sample_control(5, 5, rng);
    CHECK(control.indices == std::vector<int>{0, 1, 2, 3, 4});
  }
}

TEST_CASE("singleton sample is deterministic per seed") {
  Rng a(42), b(42);
  CHECK(sample_control(3, 1, a).indices == sample_control(3, 1, b).indices);
}

TEST_CASE("pair frequencies stay within three sigma of uniform") {
  // m = 4, alpha = 2: six pairs, each with probability 1/6.
  const int draws = 10000;
  Rng rng(7);
  std::map<std::vector<int>, int> counts;
  for (int i = 0; i < draws; ++i) {
    counts[sample_control(4, 2, rng).indices] += 1;
  }
  CHECK(counts.size() == 6);
  const double expected = draws / 6.0;
  const double sigma = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
  for (const auto& [pair, count] : counts) {
    CHECK(std::abs(count - expected) <= 3.0 * sigma);
  }
}

TEST_CASE("sample_control rejects out-of-range alpha") {
  Rng rng(1);
  CHECK_THROWS_AS(sample_control(4, 0, rng), ParameterError);
  CHECK_THROWS_AS(sample_control(4, 5, rng), ParameterError);
}

TEST_CASE("greedy_top_beta picks the largest residuals in the control set") {
  Eigen::VectorXd abs_r(4);
  abs_r << 5.0, 2.0, 9.0, 1.0;
  const ControlSet control{{0, 1, 2}};
  CHECK(greedy_top_beta(abs_r, control, 2).indices == std::vector<int>{0, 2});
}

TEST_CASE("greedy with beta = alpha returns the control set") {
  Eigen::VectorXd abs_r(5);
  abs_r << 1.0, 4.0, 2.0, 0.5, 3.0;
  const ControlSet control{{1, 2, 4}};
  CHECK(greedy_top_beta(abs_r, control, 3).indices == control.indices);
}

TEST_CASE("greedy ties break toward the smaller index") {
  Eigen::VectorXd abs_r(3);
  abs_r << 4.0, 4.0, 4.0;
  const ControlSet control{{0, 1, 2}};
  CHECK(greedy_top_beta(abs_r, control, 2).indices == std::vector<int>{0, 1});
}

TEST_CASE("greedy rejects beta out of range") {
  Eigen::VectorXd abs_r = Eigen::VectorXd::Ones(4);
  const ControlSet control{{0, 1}};
  CHECK_THROWS_AS(greedy_top_beta(abs_r, control, 0), ParameterError);
  CHECK_THROWS_AS(greedy_top_beta(abs_r, control, 3), ParameterError);
}

TEST_CASE("greedy dominance holds on random residual vectors") {
  Rng rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 10 + rng.uniform_index(20);
    const int alpha = 1 + rng.uniform_index(m);
    const int beta = 1 + rng.uniform_index(alpha);
    Eigen::VectorXd abs_r(m);
    for (int i = 0; i < m; ++i) abs_r[i] = rng.uniform01();
    const ControlSet control = sample_control(m, alpha, rng);
    const BlockIndexSet block = greedy_top_beta(abs_r, control, beta);
    CHECK(block.beta() == beta);
    CHECK(std::is_sorted(block.indices.begin(), block.indices.end()));
    double min_selected = 1e300;
    for (int i : block.indices) min_selected = std::min(min_selected, abs_r[i]);
    for (int j : control.indices) {
      if (std::find(block.indices.begin(), block.indices.end(), j) ==
          block.indices.end()) {
        CHECK(min_selected >= abs_r[j]);
      }
    }
  }
}

TEST_CASE("capped_set hand examples") {
  Eigen::VectorXd a(4);
  a << 3.0, 1.0, 0.0, 0.0;  // threshold 5.75, only 9 qualifies
  CHECK(capped_set(a).indices == std::vector<int>{0});

  Eigen::VectorXd b = Eigen::VectorXd::Constant(6, 2.5);
  CHECK(capped_set(b).indices == std::vector<int>{0, 1, 2, 3, 4, 5});

  Eigen::VectorXd c(2);
  c << 1.0, 0.0;  // threshold 0.75
  CHECK(capped_set(c).indices == std::vector<int>{0});
}

TEST_CASE("capped_set signals an all-zero residual as already converged") {
  CHECK_THROWS_AS(capped_set(Eigen::VectorXd::Zero(3)), AlreadyConverged);
}

TEST_CASE("capped_set membership and argmax invariants") {
  Rng rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int m = 2 + rng.uniform_index(30);
    Eigen::VectorXd abs_r(m);
    for (int i = 0; i < m; ++i) {
      abs_r[i] = rng.uniform01() < 0.2 ? 0.0 : rng.uniform01();
    }
    if (abs_r.maxCoeff() == 0.0) abs_r[0] = 0.5;
    const double total = abs_r.squaredNorm();
    int argmax = 0;
    abs_r.maxCoeff(&argmax);
    const double delta =
        0.5 * (abs_r[argmax] * abs_r[argmax] / total + 1.0 / m);
    const BlockIndexSet block = capped_set(abs_r);
    CHECK(!block.indices.empty());
    CHECK(std::find(block.indices.begin(), block.indices.end(), argmax) !=
          block.indices.end());
    for (int i = 0; i < m; ++i) {
      const bool member = std::find(block.indices.begin(), block.indices.end(),
                                    i) != block.indices.end();
      const bool qualifies = abs_r[i] * abs_r[i] >= delta * total;
      CHECK(member == qualifies);
    }
  }
}

TEST_CASE("max_residual_from_sample matches greedy_top_beta") {
  Rng rng(9);
  Eigen::VectorXd abs_r(12);
  for (int i = 0; i < 12; ++i) abs_r[i] = rng.uniform01();
  const ControlSet control = sample_control(12, 7, rng);
  CHECK(max_residual_from_sample(abs_r, control, 3).indices ==
        greedy_top_beta(abs_r, control, 3).indices);
}

TEST_CASE("max_distance_from_sample scores residual over row norm") {
  Eigen::VectorXd abs_r(2), norms(2);
  abs_r << 2.0, 2.0;
  norms << 1.0, 4.0;
  const ControlSet control{{0, 1}};
  CHECK(max_distance_from_sample(abs_r, norms, control, 1).indices ==
        std::vector<int>{0});
}

TEST_CASE("max_distance coincides with greedy under equal row norms") {
  Rng rng(31);
  Eigen::VectorXd abs_r(10);
  for (int i = 0; i < 10; ++i) abs_r[i] = rng.uniform01();
  const Eigen::VectorXd norms = Eigen::VectorXd::Constant(10, 2.0);
  const ControlSet control = sample_control(10, 6, rng);
  CHECK(max_distance_from_sample(abs_r, norms, control, 2).indices ==
        greedy_top_beta(abs_r, control, 2).indices);
}

TEST_CASE("max_distance rejects zero row norms inside the control set") {
  Eigen::VectorXd abs_r(3), norms(3);
  abs_r << 1.0, 1.0, 1.0;
  norms << 1.0, 0.0, 1.0;
  const ControlSet control{{0, 1}};
  CHECK_THROWS_AS(max_distance_from_sample(abs_r, norms, control, 1),
                  DegenerateError);
}

// For small m the realizable blocks must coincide with brute-force
// enumeration over all alpha-subsets.
TEST_CASE("realization set matches brute-force enumeration") {
  Rng rng(77);
  const int m = 6, alpha = 3, beta = 2;
  Eigen::VectorXd abs_r(m);
  for (int i = 0; i < m; ++i) abs_r[i] = rng.uniform01();

  std::set<std::vector<int>> brute;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      for (int c = b + 1; c < m; ++c) {
        // top-2 of the triple by (value desc, index asc)
        std::vector<int> subset{a, b, c};
        std::sort(subset.begin(), subset.end(), [&](int lhs, int rhs) {
          if (abs_r[lhs] != abs_r[rhs]) return abs_r[lhs] > abs_r[rhs];
          return lhs < rhs;
        });
        std::vector<int> top(subset.begin(), subset.begin() + beta);
        std::sort(top.begin(), top.end());
        brute.insert(top);
      }
    }
  }

  std::set<std::vector<int>> realized;
  for (int draw = 0; draw < 20000; ++draw) {
    realized.insert(
        greedy_top_beta(abs_r, sample_control(m, alpha, rng), beta).indices);
  }
  CHECK(realized == brute);
}
