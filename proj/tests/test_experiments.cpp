#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hkm/errors.hpp"
#include "hkm/experiments.hpp"
#include "hkm/sampling.hpp"

using namespace hkm;

namespace {

ExperimentConfig small_euclidean() {
  ExperimentConfig cfg;
  cfg.n = 12;
  cfg.K = 2;
  cfg.noise = GaussianIso{0.5};
  cfg.spaces = {SpaceSpec{Euclidean{4}}};
  cfg.delta_grid = {0.0, 6.0};
  cfg.trials_per_cell = 5;
  cfg.seed = 2;
  return cfg;
}

}  // namespace

TEST_CASE("experiment validation catches inconsistent configs") {
  ExperimentConfig cfg = small_euclidean();
  CHECK_NOTHROW(validate_experiment(cfg));

  cfg.K = 1;
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.n = 1;
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.mean_layout = "ring";
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.spaces = {SpaceSpec{KernelImplicit{RBF{1.0}}}};
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.spaces.clear();
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.cluster_sizes = {6, 5};  // sums to 11, not 12
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.trials_per_cell = 0;
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  cfg = small_euclidean();
  cfg.delta_grid = {-1.0};
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  // Simplex directions need dim >= K.
  cfg = small_euclidean();
  cfg.K = 5;
  cfg.n = 10;
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
  // The sine layout is two antipodal clusters on a grid space.
  cfg = small_euclidean();
  cfg.mean_layout = "sine";
  CHECK_THROWS_AS(validate_experiment(cfg), input_error);
}

TEST_CASE("simplex means are equidistant at exactly the requested separation") {
  ExperimentConfig cfg = small_euclidean();
  cfg.K = 3;
  cfg.spaces = {SpaceSpec{Euclidean{5}}};
  auto means = mean_points(cfg, 2.0);
  REQUIRE(means.size() == 3);
  for (size_t i = 0; i < means.size(); ++i)
    for (size_t j = i + 1; j < means.size(); ++j)
      CHECK((means[i] - means[j]).norm() == doctest::Approx(2.0).epsilon(1e-12));
  auto zero = mean_points(cfg, 0.0);
  for (const auto& m : zero) CHECK(m.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("sine means are antipodal with the requested grid-space separation") {
  ExperimentConfig cfg;
  cfg.n = 10;
  cfg.K = 2;
  cfg.noise = GaussianIso{1.0};
  cfg.spaces = {SpaceSpec{L2Grid{uniform_grid(101)}}};
  cfg.mean_layout = "sine";
  cfg.sine_j = 8;
  cfg.delta_grid = {1.5};
  cfg.trials_per_cell = 10;
  auto means = mean_points(cfg, 1.5);
  REQUIRE(means.size() == 2);
  CHECK((means[0] + means[1]).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(min_separation(means, cfg.spaces[0]) == doctest::Approx(1.5).epsilon(1e-10));
}

TEST_CASE("error curve: separation drives recovery and shrinks the error") {
  ExperimentConfig cfg = small_euclidean();
  ExperimentResult r = run_error_curve(cfg);
  REQUIRE(r.cells.size() == 2);
  REQUIRE(r.trials.size() == 10);

  const CellResult& far = r.cells[1];
  const CellResult& zero = r.cells[0];
  CHECK(far.delta == doctest::Approx(6.0));
  CHECK(far.recovery_rate == doctest::Approx(1.0));
  CHECK(zero.recovery_rate < 1.0);
  CHECK(far.median_l1_error < zero.median_l1_error);
  CHECK(far.snr2 > zero.snr2);
  CHECK(far.mean_iters > 0.0);

  for (const TrialRecord& t : r.trials) {
    CHECK(t.l1_error <= 2.0 * cfg.n);  // coarse bound that always holds
    CHECK(t.converged);
    CHECK(t.identities_pass);
  }
}

TEST_CASE("experiments are deterministic and thread-count invariant") {
  ExperimentConfig cfg = small_euclidean();
  cfg.threads = 1;
  ExperimentResult a = run_error_curve(cfg);
  ExperimentResult b = run_error_curve(cfg);
  cfg.threads = 3;
  ExperimentResult c = run_error_curve(cfg);
  REQUIRE(a.trials.size() == b.trials.size());
  REQUIRE(a.trials.size() == c.trials.size());
  for (size_t i = 0; i < a.trials.size(); ++i) {
    CHECK(a.trials[i].l1_error == b.trials[i].l1_error);
    CHECK(a.trials[i].l1_error == c.trials[i].l1_error);
    CHECK(a.trials[i].recovered == c.trials[i].recovered);
  }
}

TEST_CASE("phase diagram sweeps (n, delta) row major with near-even sizes") {
  ExperimentConfig cfg = small_euclidean();
  cfg.n_grid = {8, 12};
  cfg.delta_grid = {0.0, 5.0};
  cfg.trials_per_cell = 4;
  ExperimentResult r = run_phase_diagram(cfg);
  REQUIRE(r.cells.size() == 4);
  CHECK(r.cells[0].n == 8);
  CHECK(r.cells[0].delta == doctest::Approx(0.0));
  CHECK(r.cells[1].n == 8);
  CHECK(r.cells[1].delta == doctest::Approx(5.0));
  CHECK(r.cells[2].n == 12);
  CHECK(r.cells[3].n == 12);
  CHECK(r.cells[1].recovery_rate == doctest::Approx(1.0));
  CHECK(r.cells[3].recovery_rate == doctest::Approx(1.0));
  for (const auto& c : r.cells) {
    CHECK(c.snr2_threshold == doctest::Approx(snr_threshold(c.n, c.n / 2)));
    CHECK(c.size_condition);  // near-even split: (n/2)^2 * 2 >= n for n >= 2
  }
}

TEST_CASE("derivative-weighted space multiplies the separation of a sine difference") {
  auto grid = uniform_grid(101);
  ExperimentConfig cfg;
  cfg.n = 10;
  cfg.K = 2;
  cfg.noise = KLProcess{1.0, 10, grid};
  cfg.spaces = {SpaceSpec{L2Grid{grid}}, SpaceSpec{Sobolev{grid, 1}}};
  cfg.mean_layout = "sine";
  cfg.sine_j = 4;
  cfg.delta_grid = {0.8};
  cfg.trials_per_cell = 4;
  cfg.seed = 6;
  SobolevComparison cmp = run_sobolev_comparison(cfg);
  REQUIRE(cmp.summaries.size() == 2);
  CHECK(cmp.summaries[0].space_tag == "l2");
  CHECK(cmp.summaries[1].space_tag == "sobolev1");
  CHECK(cmp.summaries[0].delta == doctest::Approx(0.8).epsilon(1e-10));
  // A sine of frequency j gains (1 + (j pi)^2) in squared separation under
  // one derivative; the difference scheme sees that up to O(h) endpoint error.
  const double gain = std::pow(cmp.summaries[1].delta / cmp.summaries[0].delta, 2);
  const double want = 1.0 + std::pow(4.0 * M_PI, 2);
  CHECK(gain == doctest::Approx(want).epsilon(0.05));
  REQUIRE(cmp.result.cells.size() == 2);
  CHECK(cmp.result.cells[0].space_tag == "l2");
  CHECK(cmp.result.cells[1].space_tag == "sobolev1");
  // Both spaces cluster the identical datasets; the summary separations feed
  // the per-space snr2.
  CHECK(cmp.summaries[1].snr2 != cmp.summaries[0].snr2);
}

TEST_CASE("space tags are stable strings") {
  CHECK(space_tag(SpaceSpec{Euclidean{3}}) == "euclidean");
  CHECK(space_tag(SpaceSpec{L2Grid{uniform_grid(5)}}) == "l2");
  CHECK(space_tag(SpaceSpec{Sobolev{uniform_grid(5), 1}}) == "sobolev1");
  CHECK(space_tag(SpaceSpec{Sobolev{uniform_grid(5), 2}}) == "sobolev2");
  CHECK(space_tag(SpaceSpec{KernelImplicit{RBF{1.0}}}) == "kernel");
}
