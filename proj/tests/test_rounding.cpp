#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numeric>

#include "hkm/errors.hpp"
#include "hkm/rng.hpp"
#include "hkm/rounding.hpp"
#include "hkm/sdp.hpp"

using namespace hkm;

TEST_CASE("assignment construction validates and summarizes labels") {
  Assignment a = Assignment::from_labels({1, 2, 1, 2, 2});
  CHECK(a.K == 2);
  CHECK(a.n() == 5);
  CHECK(a.cluster_sizes == std::vector<int>{2, 3});
  CHECK(a.n_min() == 2);
  CHECK_THROWS_AS(Assignment::from_labels({1, 3}), input_error);  // gap: label 2 missing
  CHECK_THROWS_AS(Assignment::from_labels({0, 1}), input_error);
  CHECK_THROWS_AS(Assignment::from_labels({}), input_error);
}

TEST_CASE("canonical form relabels by first appearance") {
  Assignment a = Assignment::from_labels({2, 1, 2, 3});
  CHECK(a.canonical().labels == std::vector<int>{1, 2, 1, 3});
  CHECK(same_partition(a, a.canonical()));
}

TEST_CASE("same_partition ignores label permutations only") {
  Assignment a = Assignment::from_labels({1, 1, 2, 2});
  Assignment b = Assignment::from_labels({2, 2, 1, 1});
  Assignment c = Assignment::from_labels({1, 2, 1, 2});
  CHECK(same_partition(a, b));
  CHECK(!same_partition(a, c));
  CHECK(!same_partition(a, Assignment::from_labels({1, 1, 2})));
}

TEST_CASE("membership matrix blocks carry reciprocal cluster sizes") {
  Assignment a = Assignment::from_labels({1, 1, 2});
  MembershipMatrix z = membership_matrix(a);
  Eigen::MatrixXd want(3, 3);
  want << 0.5, 0.5, 0.0, 0.5, 0.5, 0.0, 0.0, 0.0, 1.0;
  CHECK((z.z - want).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("entrywise distance between two-pair blocks and the flat matrix") {
  MembershipMatrix zs = membership_matrix(Assignment::from_labels({1, 1, 2, 2}));
  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(4, 4, 0.25);
  // 8 within-block entries off by 1/4, 8 cross entries off by 1/4.
  CHECK(error_l1(flat, zs) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(error_l1(zs.z, zs) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("rounding a clean membership matrix returns its partition") {
  Rng rng(31);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<int> labels(20);
    for (auto& l : labels) l = 1 + static_cast<int>(rng.uniform01() * 4.0);
    // Ensure surjectivity onto 1..4.
    labels[0] = 1;
    labels[1] = 2;
    labels[2] = 3;
    labels[3] = 4;
    Assignment truth = Assignment::from_labels(labels);
    Assignment rounded = round_solution(membership_matrix(truth).z);
    CHECK(same_partition(rounded, truth));
  }
}

TEST_CASE("rounding tolerates blending toward the flat matrix") {
  Assignment truth = Assignment::from_labels({1, 1, 1, 2, 2, 2, 3, 3, 3});
  Eigen::MatrixXd zs = membership_matrix(truth).z;
  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(9, 9, 1.0 / 9.0);
  for (double eps : {0.1, 0.4, 0.7}) {
    Eigen::MatrixXd blend = (1.0 - eps) * zs + eps * flat;
    CHECK(same_partition(round_solution(blend), truth));
  }
}

TEST_CASE("nonpositive diagonal rows become singletons") {
  Eigen::MatrixXd z(4, 4);
  z.setZero();
  z.block(1, 1, 3, 3).setConstant(1.0 / 3.0);
  Assignment a = round_solution(z);
  CHECK(a.K == 2);
  CHECK(a.labels == std::vector<int>{1, 2, 2, 2});
}

TEST_CASE("brute force on the identity similarity") {
  // Every partition scores sum_k |G_k| / |G_k| = K, so the first canonical
  // labeling in enumeration order wins.
  BruteForceResult r = brute_force_kmeans(Eigen::MatrixXd::Identity(3, 3), 2);
  CHECK(r.objective == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(r.assignment.labels == std::vector<int>{1, 1, 2});
}

TEST_CASE("brute force finds a planted two-block structure") {
  Assignment truth = Assignment::from_labels({1, 1, 1, 2, 2, 2});
  Eigen::MatrixXd a = membership_matrix(truth).z;
  Rng rng(17);
  Eigen::MatrixXd noise(6, 6);
  for (int j = 0; j < 6; ++j) noise.col(j) = rng.normal_vector(6);
  a += 0.01 * (noise + noise.transpose());
  BruteForceResult r = brute_force_kmeans(a, 2);
  CHECK(same_partition(r.assignment, truth));
  CHECK_THROWS_AS(brute_force_kmeans(Eigen::MatrixXd::Identity(15, 15), 2), input_error);
  CHECK_THROWS_AS(brute_force_kmeans(Eigen::MatrixXd::Identity(3, 3), 4), input_error);
}

TEST_CASE("brute force dominates the rounded relaxation objective") {
  Rng rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::MatrixXd m(6, 6);
    for (int j = 0; j < 6; ++j) m.col(j) = rng.normal_vector(6);
    Eigen::MatrixXd a = m * m.transpose();  // psd gram
    BruteForceResult best = brute_force_kmeans(a, 2);
    SdpSolution sol = solve(a, 2);
    Assignment rounded = round_solution(sol.z_hat);
    if (rounded.K == 2) {
      const double rounded_obj = (a.array() * membership_matrix(rounded).z.array()).sum();
      CHECK(best.objective >= rounded_obj - 1e-9 * std::max(1.0, std::abs(best.objective)));
    }
    // The relaxation objective itself sits above the combinatorial optimum.
    CHECK(sol.objective >= best.objective - 1e-3 * std::max(1.0, a.norm()));
  }
}

TEST_CASE("rearrangement bound: frozen example and properties") {
  CHECK(rearrangement_bound({3.0, 1.0, 2.0}, {0.5, 1.0, 1.0}) ==
        doctest::Approx(5.5).epsilon(1e-14));
  CHECK_THROWS_AS(rearrangement_bound({1.0}, {1.5}), input_error);
  CHECK_THROWS_AS(rearrangement_bound({1.0}, {-0.1}), input_error);
  CHECK_THROWS_AS(rearrangement_bound({1.0, 2.0}, {1.0}), input_error);

  Rng rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const int n = 2 + static_cast<int>(rng.uniform01() * 10.0);
    std::vector<double> a(n), b(n);
    double dot = 0.0;
    for (int i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.uniform01();
      dot += a[i] * b[i];
    }
    CHECK(rearrangement_bound(a, b) >= dot - 1e-12);
  }

  // Equality when b is the indicator of the s largest entries of a.
  std::vector<double> a{5.0, -1.0, 3.0, 2.0, 4.0};
  std::vector<double> b{1.0, 0.0, 0.0, 0.0, 1.0};  // top-2 entries: 5 and 4
  CHECK(rearrangement_bound(a, b) == doctest::Approx(9.0).epsilon(1e-14));
}

TEST_CASE("feasible-set relations: membership matrix and flat matrix") {
  Assignment truth = Assignment::from_labels({1, 1, 1, 2, 2, 2});
  MembershipMatrix zs = membership_matrix(truth);

  FeasibleSetCheck self = feasible_set_identities(zs.z, zs, truth.n_min());
  CHECK(self.all_pass());
  CHECK(self.lhs1 <= 1e-12);
  CHECK(self.rhs <= 1e-12);

  // For the flat matrix J/n both equality sides evaluate to 2 n (K-1) / K.
  Eigen::MatrixXd flat = Eigen::MatrixXd::Constant(6, 6, 1.0 / 6.0);
  FeasibleSetCheck fc = feasible_set_identities(flat, zs, truth.n_min());
  CHECK(fc.all_pass());
  CHECK(fc.lhs1 == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(fc.lhs2 == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(fc.rhs == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("feasible-set relations hold on projection-generated points") {
  Rng rng(59);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 10 + 2 * rep;
    const int K = 2 + rep % 3;
    Eigen::MatrixXd z = random_feasible_point(n, K, 900 + rep);
    std::vector<int> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = 1 + i % K;
    Assignment truth = Assignment::from_labels(labels);
    FeasibleSetCheck fc =
        feasible_set_identities(z, membership_matrix(truth), truth.n_min());
    CHECK(fc.all_pass());
  }
}
