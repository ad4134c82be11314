// Copyright 2026 The shadowtomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "shadowtomo/measurement.hpp"
#include "shadowtomo/theory.hpp"

using namespace shadowtomo;

namespace {

template <typename F>
std::string error_code(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return "none";
}

RealVector probs(std::initializer_list<double> values) {
  RealVector p(static_cast<int>(values.size()));
  int i = 0;
  for (double v : values) p(i++) = v;
  return p;
}

}  // namespace

TEST_CASE("multinomial counts") {
  RngStream rng(1, 0, 0);
  CHECK(sample_counts(probs({1, 0, 0, 0}), 17, rng) == Counts{17, 0, 0, 0});
  for (int s = 0; s < 200; ++s) {
    RngStream r(2, 0, static_cast<std::uint64_t>(s));
    const Counts c = sample_counts(probs({0.1, 0.2, 0.3, 0.4}), 1, r);
    CHECK(std::count(c.begin(), c.end(), 1) == 1);
    CHECK(std::accumulate(c.begin(), c.end(), std::int64_t{0}) == 1);
  }
  constexpr std::int64_t kShots = 1000000;
  const Counts big = sample_counts(probs({0.5, 0.5}), kShots, rng);
  CHECK(std::abs(static_cast<double>(big[0]) / kShots - 0.5) < 3.0 * std::sqrt(0.25 / kShots));

  CHECK(error_code([&] { sample_counts(probs({0.5, 0.6}), 1, rng); }) == "invalid-argument");
  CHECK(error_code([&] { sample_counts(probs({1.5, -0.5}), 1, rng); }) == "invalid-argument");
  CHECK(error_code([&] { sample_counts(probs({0.5, 0.5}), 0, rng); }) == "invalid-argument");
}

TEST_CASE("multinomial moments match their closed forms") {
  const RealVector p = probs({0.1, 0.6, 0.3});
  constexpr std::int64_t kShots = 5;
  constexpr int kDraws = 100000;
  std::vector<double> sq0;
  std::vector<double> cross01;
  for (int s = 0; s < kDraws; ++s) {
    RngStream r(3, 0, static_cast<std::uint64_t>(s));
    const Counts c = sample_counts(p, kShots, r);
    const double f0 = static_cast<double>(c[0]) / kShots;
    const double f1 = static_cast<double>(c[1]) / kShots;
    sq0.push_back(f0 * f0);
    cross01.push_back(f0 * f1);
  }
  const auto m2 = oracle::mean_se(sq0);
  const auto mx = oracle::mean_se(cross01);
  CHECK(std::abs(m2.mean - (p(0) * p(0) + p(0) * (1 - p(0)) / kShots)) < 3.0 * m2.se);
  CHECK(std::abs(mx.mean - (1.0 - 1.0 / kShots) * p(0) * p(1)) < 3.0 * mx.se);
}

TEST_CASE("records and frequencies") {
  const auto id = RankOnePovm::from_unitary(Matrix::Identity(2, 2));
  CHECK(empirical_frequencies(make_record(id, {1, 0})) == probs({1, 0}));
  CHECK(empirical_frequencies(make_record(id, {3, 1})) == probs({0.75, 0.25}));
  const auto id3 = RankOnePovm::from_unitary(Matrix::Identity(3, 3));
  CHECK(empirical_frequencies(make_record(id3, {0, 0, 9})) == probs({0, 0, 1}));
  CHECK(make_record(id, {3, 1}).shots == 4);
  CHECK(error_code([&] { make_record(id, {1, 0, 0}); }) == "dim-mismatch");
  CHECK(error_code([&] { make_record(id, {-1, 2}); }) == "invalid-argument");
  CHECK(error_code([&] { make_record(id, {0, 0}); }) == "invalid-argument");
}

TEST_CASE("adjoint map") {
  const auto id = RankOnePovm::from_unitary(Matrix::Identity(3, 3));
  Matrix e1 = Matrix::Zero(3, 3);
  e1(1, 1) = 1.0;
  CHECK((adjoint_map(id, probs({0, 1, 0})) - e1).norm() == 0.0);

  RngStream rng(5, 0, 0);
  const auto povm = povm_from_unitary(sample_global_haar(5, rng));
  CHECK((adjoint_map(povm, RealVector::Constant(5, 0.2)) - Matrix::Identity(5, 5) / 5.0).norm() <
        1e-12);
  for (int k = 0; k < 5; ++k) {
    RealVector onehot = RealVector::Zero(5);
    onehot(k) = 1.0;
    // U^dagger e_k outer product, written out directly.
    const Vector w = povm.unitary().adjoint().col(k);
    CHECK((adjoint_map(povm, onehot) - w * w.adjoint()).norm() < 1e-12);
    CHECK((adjoint_map_one_hot(povm, k) - w * w.adjoint()).norm() < 1e-12);
  }
  const RealVector phat = probs({0.1, 0.2, 0.3, 0.15, 0.25});
  const Matrix a = adjoint_map(povm, phat);
  CHECK(std::abs(a.trace().real() - 1.0) < 1e-12);
  CHECK(hermitian_eigenvalues(a).minCoeff() > -1e-12);
  CHECK(hermiticity_defect(a) == 0.0);
  CHECK(error_code([&] { adjoint_map(povm, probs({0.5, 0.5})); }) == "dim-mismatch");
}

TEST_CASE("adjoint map averages to the Born-weighted operator") {
  RngStream urng(7, 0, 0);
  const auto povm = povm_from_unitary(sample_global_haar(2, urng));
  RngStream srng(8, 0, 0);
  const auto state = sample_random_state(2, srng);
  const RealVector p = born_probabilities(povm, state);
  const Matrix expected = povm.unitary().adjoint() * p.cast<Complex>().asDiagonal() *
                          povm.unitary();
  constexpr int kTrials = 10000;
  std::vector<std::vector<double>> entries(8);
  for (int t = 0; t < kTrials; ++t) {
    RngStream r(9, static_cast<std::uint64_t>(t), 0);
    const Matrix a = adjoint_map(povm, empirical_frequencies(
                                           make_record(povm, sample_counts(p, 3, r))));
    for (int i = 0; i < 4; ++i) {
      entries[static_cast<std::size_t>(2 * i)].push_back(a(i / 2, i % 2).real());
      entries[static_cast<std::size_t>(2 * i + 1)].push_back(a(i / 2, i % 2).imag());
    }
  }
  for (int i = 0; i < 4; ++i) {
    const auto re = oracle::mean_se(entries[static_cast<std::size_t>(2 * i)]);
    const auto im = oracle::mean_se(entries[static_cast<std::size_t>(2 * i + 1)]);
    const Complex want = expected(i / 2, i % 2);
    CHECK(std::abs(re.mean - want.real()) <= 3.0 * re.se + 1e-14);
    CHECK(std::abs(im.mean - want.imag()) <= 3.0 * im.se + 1e-14);
  }
}

TEST_CASE("run_plan") {
  const MeasurementPlan single{1, 1, Fixed{{Matrix::Identity(2, 2)}}};
  const auto recs = run_plan(DensityMatrix::basis_state(2, 0), single, RngStream(1, 0, 0));
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].counts == Counts{1, 0});

  const MeasurementPlan four{4, 7, GlobalHaar{4}};
  const auto many = run_plan(DensityMatrix::maximally_mixed(4), four, RngStream(2, 0, 0));
  CHECK(many.size() == 4);
  for (const auto& r : many) {
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::int64_t{0}) == 7);
    CHECK(r.shots == 7);
  }
  const auto again = run_plan(DensityMatrix::maximally_mixed(4), four, RngStream(2, 0, 0));
  for (std::size_t m = 0; m < 4; ++m) {
    CHECK(again[m].counts == many[m].counts);
    CHECK((again[m].povm.unitary() - many[m].povm.unitary()).norm() == 0.0);
  }
  // Records are prefixes of longer plans.
  const MeasurementPlan longer{8, 7, GlobalHaar{4}};
  const auto extended = run_plan(DensityMatrix::maximally_mixed(4), longer, RngStream(2, 0, 0));
  CHECK(extended[3].counts == many[3].counts);

  constexpr std::int64_t kShots = 100000;
  const MeasurementPlan wide{1, kShots, GlobalHaar{2}};
  const auto rec = run_plan(DensityMatrix::maximally_mixed(2), wide, RngStream(3, 0, 0));
  CHECK(std::abs(empirical_frequencies(rec[0])(0) - 0.5) < 3.0 * std::sqrt(0.25 / kShots));

  std::vector<Provenance> prov;
  const MeasurementPlan mixed{16, 1, Mixture{1.0, 2}};
  run_plan(DensityMatrix::maximally_mixed(4), mixed, RngStream(4, 0, 0), &prov);
  CHECK(prov.size() == 16);
  CHECK(std::all_of(prov.begin(), prov.end(), [](Provenance p) { return p == Provenance::kLocal; }));

  CHECK(error_code([] {
          run_plan(DensityMatrix::maximally_mixed(2), MeasurementPlan{1, 1, GlobalHaar{4}},
                   RngStream(0, 0, 0));
        }) == "dim-mismatch");
  CHECK(error_code([] {
          run_plan(DensityMatrix::maximally_mixed(2), MeasurementPlan{0, 1, GlobalHaar{2}},
                   RngStream(0, 0, 0));
        }) == "invalid-argument");
}

TEST_CASE("expanding multishot records") {
  const auto id = RankOnePovm::from_unitary(Matrix::Identity(3, 3));
  const std::vector<MeasurementRecord> recs{make_record(id, {2, 0, 1})};
  const auto single = expand_to_single_shot(recs);
  REQUIRE(single.size() == 3);
  CHECK(single[0].counts == Counts{1, 0, 0});
  CHECK(single[1].counts == Counts{1, 0, 0});
  CHECK(single[2].counts == Counts{0, 0, 1});
}
