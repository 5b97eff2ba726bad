// Copyright 2026 The qbench Authors
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
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qbench/common/error.hpp"
#include "qbench/sim/clifford_group.hpp"
#include "qbench/sim/counts.hpp"
#include "qbench/sim/mirror.hpp"
#include "qbench/sim/pauli.hpp"
#include "qbench/sim/sampler.hpp"
#include "qbench/sim/statevector.hpp"
#include "qbench/sim/tableau.hpp"

namespace qbench {
namespace {

constexpr double kPi = std::numbers::pi;

oracle::Vec to_vec(const StateVector& sv) {
  oracle::Vec v(sv.amplitudes().size());
  for (std::size_t i = 0; i < sv.amplitudes().size(); ++i) v(i) = sv.amplitudes()[i];
  return v;
}

/// Exact outcome distribution over classical bits 0..n-1 = qubits 0..n-1.
std::map<std::string, double> exact_distribution(const Circuit& unitary_part) {
  oracle::Vec psi = oracle::circuit_state(unitary_part);
  const int n = unitary_part.num_qubits();
  std::map<std::string, double> p;
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    double pr = std::norm(psi(i));
    if (pr < 1e-14) continue;
    std::string s(n, '0');
    for (int q = 0; q < n; ++q) s[q] = ((i >> q) & 1) ? '1' : '0';
    p[s] += pr;
  }
  return p;
}

/// Total-variation distance and its shot-noise scale.
std::pair<double, double> tvd_with_sigma(const std::map<std::string, double>& p,
                                         const CountsMap& c) {
  double tvd = 0.0, sigma = 0.0;
  const double n = static_cast<double>(c.shots);
  for (const auto& [k, pk] : p) {
    tvd += std::abs(c.probability(k) - pk);
    sigma += std::sqrt(pk * (1 - pk) / n);
  }
  for (const auto& [k, v] : c.counts) {
    if (!p.count(k)) tvd += static_cast<double>(v) / n;
  }
  return {tvd / 2, sigma / 2};
}

// --- statevector ----------------------------------------------------------

TEST(Statevector, HadamardOnZero) {
  Circuit c(1);
  c.h(0);
  StateVector sv = simulate_statevector(c);
  EXPECT_NEAR(sv.amplitudes()[0].real(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sv.amplitudes()[1].real(), 1 / std::sqrt(2.0), 1e-15);
}

TEST(Statevector, MatchesDenseOracleAndKeepsNorm) {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 1 + trial % 8;
    Circuit c = oracle::random_circuit(n, 60, rng);
    StateVector sv = simulate_statevector(c);
    EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
    EXPECT_GT(oracle::overlap(to_vec(sv), oracle::circuit_state(c)), 1 - 1e-12);
  }
}

TEST(Statevector, WidthCapEnforced) {
  EXPECT_THROW(StateVector(21), Error);
  Circuit c(21);
  c.rx(0, 0.1).cx(0, 20);
  for (int q = 0; q < 20; ++q) c.cx(q, q + 1);
  c.measure_all();
  EXPECT_THROW(sample_counts(c, 10, std::nullopt, 1), Error);
}

TEST(Statevector, ResetCollapsesAndRenormalizes) {
  Circuit c(2);
  c.h(0).cx(0, 1).reset(0);
  Rng rng(5);
  StateVector sv = simulate_statevector(c, rng);
  EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
  EXPECT_NEAR(sv.probability_one(0), 0.0, 1e-12);
}

// --- Pauli conjugation ------------------------------------------------------

TEST(Pauli, TextbookConjugations) {
  Circuit h(1);
  h.h(0);
  EXPECT_EQ(clifford_conjugate_pauli(h.ops(), PauliString::parse("Z")).str(), "+X");
  Circuit cx(2);
  cx.cx(0, 1);
  EXPECT_EQ(clifford_conjugate_pauli(cx.ops(), PauliString::parse("XI")).str(), "+XX");
  Circuit s(1);
  s.s(0);
  EXPECT_EQ(clifford_conjugate_pauli(s.ops(), PauliString::parse("X")).str(), "+Y");
  EXPECT_EQ(clifford_conjugate_pauli(s.ops(), PauliString::parse("Y")).str(), "-X");
  Circuit rx(1);
  rx.rx(0, 0.1);
  EXPECT_THROW(clifford_conjugate_pauli(rx.ops(), PauliString::parse("X")), std::invalid_argument);
}

oracle::Mat pauli_matrix(const PauliString& p) {
  GateOp id{GateKind::Z, {0}, {}};
  const int n = p.size();
  oracle::Mat m = oracle::Mat::Identity(std::size_t{1} << n, std::size_t{1} << n);
  for (int q = 0; q < n; ++q) {
    char l = p.letter(q);
    if (l == 'I') continue;
    GateOp g{l == 'X' ? GateKind::X : l == 'Y' ? GateKind::Y : GateKind::Z, {q}, {}};
    m = oracle::full_matrix(g, n) * m;
  }
  static const std::complex<double> kPhase[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return kPhase[p.phase] * m;
}

TEST(Pauli, ConjugationMatchesDenseMatrices) {
  std::mt19937_64 rng(99);
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 25; ++trial) {
    Circuit c = oracle::random_circuit(6, 40, rng, true);
    PauliString p(6);
    for (int q = 0; q < 6; ++q) p.set(q, letters[rng() % 4]);
    p.phase = static_cast<int>(rng() % 4);
    PauliString out = clifford_conjugate_pauli(c.ops(), p);
    oracle::Mat u = oracle::circuit_unitary(c);
    oracle::Mat expect = u * pauli_matrix(p) * u.adjoint();
    EXPECT_LT((expect - pauli_matrix(out)).norm(), 1e-9);
    // conjugating back with the inverse word is the identity map
    EXPECT_EQ(clifford_conjugate_pauli(c.inverse().ops(), out), p);
  }
}

TEST(Pauli, ProductAndCommutation) {
  auto xy = PauliString::parse("X") * PauliString::parse("Y");
  EXPECT_EQ(xy.str(), "+iZ");
  EXPECT_FALSE(PauliString::parse("XZ").commutes_with(PauliString::parse("ZZ")));
  EXPECT_TRUE(PauliString::parse("XX").commutes_with(PauliString::parse("ZZ")));
}

// --- tableau -----------------------------------------------------------------

TEST(Tableau, StaysSymplecticUnderRandomGates) {
  std::mt19937_64 rng(1);
  Rng mrng(2);
  StabilizerTableau t(7);
  Circuit c = oracle::random_circuit(7, 300, rng, true);
  for (const auto& op : c.ops()) t.apply(op);
  EXPECT_TRUE(t.is_consistent());
  t.measure(3, mrng);
  t.reset(5, mrng);
  EXPECT_TRUE(t.is_consistent());
}

TEST(Tableau, StabilizersMatchStatevector) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    Circuit c = oracle::random_circuit(5, 50, rng, true);
    StabilizerTableau t(5);
    for (const auto& op : c.ops()) t.apply(op);
    oracle::Vec psi = oracle::circuit_state(c);
    for (int i = 0; i < 5; ++i) {
      oracle::Vec out = pauli_matrix(t.stabilizer(i)) * psi;
      EXPECT_LT((out - psi).norm(), 1e-9) << "stabilizer " << t.stabilizer(i).str();
    }
  }
}

TEST(Sampler, TableauAndStatevectorAgreeOnCliffordCircuits) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 9;  // 2..10 qubits
    Circuit unitary = oracle::random_circuit(n, 8 * n, rng, true);
    Circuit c = unitary;
    c.measure_all();
    CountsMap counts = sample_counts(c, 10000, std::nullopt, 1000 + trial);
    auto [tvd, sigma] = tvd_with_sigma(exact_distribution(unitary), counts);
    EXPECT_LT(tvd, 3 * sigma + 1e-12) << "trial " << trial;
  }
}

// --- sampling with noise ---------------------------------------------------

TEST(Sampler, NoiselessExamples) {
  Circuit x(1);
  x.x(0).measure(0);
  CountsMap c = sample_counts(x, 100, std::nullopt, 7);
  EXPECT_EQ(c.get("1"), 100);
  EXPECT_EQ(c.shots, 100);

  for (bool clifford : {true, false}) {
    Circuit bell(2);
    bell.h(0).cx(0, 1);
    if (!clifford) bell.rz(1, 0.7);
    bell.measure_all();
    CountsMap b = sample_counts(bell, 4000, std::nullopt, 3);
    EXPECT_EQ(b.get("00") + b.get("11"), 4000);
    EXPECT_NEAR(b.probability("00"), 0.5, 0.03);
  }
}

TEST(Sampler, ReadoutFlipRateIsBinomial) {
  NoiseProfile noise;
  noise.readout_eps = 0.1;
  Circuit id(1);
  id.measure(0);
  CountsMap c = sample_counts(id, 100000, noise, 11);
  EXPECT_NEAR(c.probability("1"), 0.1, 0.005);

  Circuit sv(1);
  sv.rz(0, 0.0).measure(0);
  CountsMap d = sample_counts(sv, 100000, noise, 12);
  EXPECT_NEAR(d.probability("1"), 0.1, 0.005);
}

/// Fits p from the survival of |0> after m noisy gates whose ideal product is I.
double fitted_depolarizing(const Circuit& c, int m, double p) {
  NoiseProfile noise;
  noise.p1 = p;
  CountsMap counts = sample_counts(c, 100000, noise, 2718);
  double q = 2 * counts.probability("0") - 1;
  return 0.75 * (1 - std::pow(q, 1.0 / m));
}

TEST(Sampler, DepolarizingDecayRecoversRate) {
  const int m = 20;
  const double p = 0.01;
  Circuit cliff(1), dense(1);
  for (int i = 0; i < m; ++i) {
    cliff.x(0);
    dense.rz(0, 0.0);
  }
  cliff.measure(0);
  dense.measure(0);
  EXPECT_NEAR(fitted_depolarizing(cliff, m, p), p, 0.1 * p);
  EXPECT_NEAR(fitted_depolarizing(dense, m, p), p, 0.1 * p);
}

TEST(Sampler, PureFunctionOfInputs) {
  std::mt19937_64 rng(4);
  Circuit c = oracle::random_circuit(6, 50, rng);
  c.measure_all();
  NoiseProfile noise{1e-3, 2e-2, 0.02, {}};
  EXPECT_EQ(sample_counts(c, 500, noise, 9).counts, sample_counts(c, 500, noise, 9).counts);
  EXPECT_NE(sample_counts(c, 500, noise, 9).counts, sample_counts(c, 500, noise, 10).counts);
}

TEST(Sampler, ResetOnBothBackends) {
  for (bool clifford : {true, false}) {
    Circuit c(2);
    c.h(0).cx(0, 1);
    if (!clifford) c.rz(0, 0.3);
    c.reset(0).measure(0).measure(1);
    CountsMap k = sample_counts(c, 4000, std::nullopt, 21);
    EXPECT_EQ(k.get("00") + k.get("01"), 4000);
    EXPECT_NEAR(k.probability("01"), 0.5, 0.03);
  }
}

TEST(Sampler, WideCliffordCircuitsRunOnFrames) {
  Circuit ghz(128);
  ghz.h(0);
  for (int q = 0; q + 1 < 128; ++q) ghz.cx(q, q + 1);
  ghz.measure_all();
  CountsMap c = sample_counts(ghz, 1000, std::nullopt, 5);
  EXPECT_EQ(c.get(std::string(128, '0')) + c.get(std::string(128, '1')), 1000);
}

TEST(Sampler, IndependentBlocksKeepClassicalBitOrder) {
  Circuit c(4);
  c.x(3).ry(1, kPi).measure(3, 0).measure(1, 1).measure(0, 2);
  CountsMap k = sample_counts(c, 10, std::nullopt, 1);
  EXPECT_EQ(k.get("110"), 10);
}

// --- counts helpers ----------------------------------------------------------

TEST(Counts, ExpectationZExamples) {
  CountsMap a;
  a.add("0", 100);
  EXPECT_DOUBLE_EQ(expectation_z(a, 0), 1.0);
  CountsMap b;
  b.add("0", 50);
  b.add("1", 50);
  EXPECT_DOUBLE_EQ(expectation_z(b, 0), 0.0);
  CountsMap c;
  c.add("0", 773);
  c.add("1", 227);
  EXPECT_NEAR(expectation_z(c, 0), 0.546, 1e-12);
  EXPECT_THROW(expectation_z(c, 1), Error);
  EXPECT_EQ(CountsMap::from_json(c.to_json()).counts, c.counts);
}

// --- Clifford groups and mirror oracle -----------------------------------------

TEST(CliffordGroup, OrdersAndInverses) {
  const auto& g1 = CliffordGroup::one_qubit();
  const auto& g2 = CliffordGroup::two_qubit();
  EXPECT_EQ(g1.size(), 24u);
  EXPECT_EQ(g2.size(), 11520u);
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t i = rng() % g2.size();
    CliffordImage img(2);
    img.apply(g2.word(i));
    img.apply(g2.word(g2.inverse(i)));
    EXPECT_EQ(g2.index_of(img), 0u);
  }
}

TEST(Mirror, TrivialSpecs) {
  MirrorCircuitSpec spec;
  spec.width = 3;
  spec.qubits = {0, 1, 2};
  spec.central = PauliString(3);
  EXPECT_EQ(expected_mirror_bitstring(spec), "000");
  spec.central = PauliString::parse("XII");
  EXPECT_EQ(expected_mirror_bitstring(spec), "100");
}

TEST(Mirror, ExpectedBitstringMatchesStatevector) {
  std::mt19937_64 rng(123);
  Rng crng(55);
  const auto& g1 = CliffordGroup::one_qubit();
  const char letters[4] = {'I', 'X', 'Y', 'Z'};
  for (int trial = 0; trial < 10; ++trial) {
    const int w = 2 + trial % 7;
    MirrorCircuitSpec spec;
    spec.width = w;
    for (int q = 0; q < w; ++q) spec.qubits.push_back(q);
    for (int q = 0; q < w; ++q) {
      auto word = remap_ops(g1.word(g1.sample(crng)), {q});
      spec.prep.insert(spec.prep.end(), word.begin(), word.end());
    }
    for (int d = 0; d < 4; ++d) {
      spec.layers.push_back(oracle::random_circuit(w, 3 * w, rng, true).ops());
    }
    spec.central = PauliString(w);
    for (int q = 0; q < w; ++q) spec.central.set(q, letters[rng() % 4]);
    Circuit c = spec.to_circuit(w);
    StateVector sv = simulate_statevector(c);
    auto probs = sv.probabilities();
    std::size_t argmax = std::max_element(probs.begin(), probs.end()) - probs.begin();
    EXPECT_NEAR(probs[argmax], 1.0, 1e-9);
    std::string bits(w, '0');
    for (int q = 0; q < w; ++q) bits[q] = ((argmax >> q) & 1) ? '1' : '0';
    EXPECT_EQ(expected_mirror_bitstring(spec), bits);
  }
}

}  // namespace
}  // namespace qbench
