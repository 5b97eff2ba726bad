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
#include "qbench/sim/sampler.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "qbench/common/error.hpp"
#include "qbench/common/rng.hpp"
#include "qbench/sim/pauli.hpp"
#include "qbench/sim/statevector.hpp"
#include "qbench/sim/tableau.hpp"

namespace qbench {
namespace {

/// Per-classical-bit outcomes, one bit per shot.
using BitColumn = std::vector<std::uint64_t>;

struct Block {
  std::vector<int> qubits;  // physical, ascending
  std::vector<GateOp> ops;  // local qubit indices
  std::vector<double> error_prob;
  bool clifford = true;
};

constexpr std::size_t kCheckpointBudgetBytes = std::size_t{256} << 20;

inline bool get_bit(const BitColumn& col, std::int64_t s) { return (col[s >> 6] >> (s & 63)) & 1; }
inline void flip_bit(BitColumn& col, std::int64_t s) { col[s >> 6] ^= std::uint64_t{1} << (s & 63); }

char pauli_letter(int code) {
  static constexpr char kLetters[4] = {'I', 'X', 'Z', 'Y'};
  return kLetters[code & 3];
}

std::vector<Block> split_blocks(const Circuit& c, const std::optional<NoiseProfile>& noise) {
  const int n = c.num_qubits();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Barrier || op.qubits.size() < 2) continue;
    parent[find(op.qubits[0])] = find(op.qubits[1]);
  }
  std::map<int, int> block_of_root;
  std::vector<Block> blocks;
  std::vector<int> block_of(n), local(n);
  for (int q = 0; q < n; ++q) {
    auto [it, fresh] = block_of_root.try_emplace(find(q), static_cast<int>(blocks.size()));
    if (fresh) blocks.emplace_back();
    block_of[q] = it->second;
    local[q] = static_cast<int>(blocks[it->second].qubits.size());
    blocks[it->second].qubits.push_back(q);
  }
  for (const auto& op : c.ops()) {
    if (op.kind == GateKind::Barrier) continue;
    Block& b = blocks[block_of[op.qubits[0]]];
    GateOp lop = op;
    for (int& q : lop.qubits) q = local[q];
    double p = 0.0;
    if (noise && op.is_unitary()) {
      p = op.is_two_qubit() ? noise->two_qubit_error(op.qubits[0], op.qubits[1]) : noise->p1;
    }
    if (op.is_unitary() && !is_clifford_gate(op.kind)) b.clifford = false;
    b.ops.push_back(std::move(lop));
    b.error_prob.push_back(p);
  }
  std::vector<Block> measured;
  for (auto& b : blocks) {
    bool any = std::any_of(b.ops.begin(), b.ops.end(),
                           [](const GateOp& op) { return op.kind == GateKind::Measure; });
    if (any) measured.push_back(std::move(b));
  }
  return measured;
}

/// Random non-identity Pauli code on the op support: 2 bits per qubit.
int random_pauli_code(Rng& rng, std::size_t arity) {
  return 1 + static_cast<int>(uniform_below(rng, arity == 1 ? 3 : 15));
}

void run_frames(const Block& b, std::int64_t shots, Rng& rng, std::vector<BitColumn>& out) {
  const int m = static_cast<int>(b.qubits.size());
  const std::size_t words = static_cast<std::size_t>((shots + 63) / 64);
  const std::uint64_t tail = (shots % 64) ? ((std::uint64_t{1} << (shots % 64)) - 1) : ~std::uint64_t{0};

  // one noiseless reference execution
  StabilizerTableau tab(m);
  std::vector<int> ref;
  for (const auto& op : b.ops) {
    if (op.kind == GateKind::Measure) {
      ref.push_back(tab.measure(op.qubits[0], rng).bit);
    } else if (op.kind == GateKind::Reset) {
      tab.reset(op.qubits[0], rng);
    } else {
      tab.apply(op);
    }
  }

  std::vector<BitColumn> fx(m, BitColumn(words, 0)), fz(m, BitColumn(words, 0));
  auto randomize = [&](BitColumn& col) {
    for (auto& w : col) w = rng();
    col.back() &= tail;
  };
  for (auto& col : fz) randomize(col);

  std::size_t meas_index = 0;
  for (std::size_t k = 0; k < b.ops.size(); ++k) {
    const GateOp& op = b.ops[k];
    const int a = op.qubits[0];
    switch (op.kind) {
      case GateKind::H: std::swap(fx[a], fz[a]); break;
      case GateKind::S: case GateKind::Sdg:
        for (std::size_t w = 0; w < words; ++w) fz[a][w] ^= fx[a][w];
        break;
      case GateKind::X: case GateKind::Y: case GateKind::Z: break;
      case GateKind::CX: {
        const int t = op.qubits[1];
        for (std::size_t w = 0; w < words; ++w) {
          fx[t][w] ^= fx[a][w];
          fz[a][w] ^= fz[t][w];
        }
        break;
      }
      case GateKind::CZ: {
        const int t = op.qubits[1];
        for (std::size_t w = 0; w < words; ++w) {
          fz[a][w] ^= fx[t][w];
          fz[t][w] ^= fx[a][w];
        }
        break;
      }
      case GateKind::Swap:
        std::swap(fx[a], fx[op.qubits[1]]);
        std::swap(fz[a], fz[op.qubits[1]]);
        break;
      case GateKind::Measure: {
        BitColumn& col = out[op.clbit];
        col = fx[a];
        if (ref[meas_index++]) {
          for (auto& w : col) w = ~w;
          col.back() &= tail;
        }
        randomize(fz[a]);
        break;
      }
      case GateKind::Reset:
        std::fill(fx[a].begin(), fx[a].end(), 0);
        randomize(fz[a]);
        break;
      default:
        throw execution_error("frame sampler: unsupported op " + std::string(op.name()));
    }
    const double p = b.error_prob[k];
    if (p <= 0.0) continue;
    for (auto s = static_cast<std::int64_t>(geometric_skip(rng, p)); s < shots;
         s += 1 + static_cast<std::int64_t>(geometric_skip(rng, p))) {
      int code = random_pauli_code(rng, op.qubits.size());
      for (std::size_t j = 0; j < op.qubits.size(); ++j, code >>= 2) {
        if (code & 1) flip_bit(fx[op.qubits[j]], s);
        if (code & 2) flip_bit(fz[op.qubits[j]], s);
      }
    }
  }
}

void check_terminal_measurements(const Block& b) {
  std::vector<char> measured(b.qubits.size(), 0);
  for (const auto& op : b.ops) {
    for (int q : op.qubits) {
      if (measured[q]) {
        throw execution_error("statevector backend: qubit reused after measurement");
      }
    }
    if (op.kind == GateKind::Measure) measured[op.qubits[0]] = 1;
  }
}

void apply_event(StateVector& sv, const GateOp& op, int code) {
  for (std::size_t j = 0; j < op.qubits.size(); ++j, code >>= 2) {
    sv.apply_pauli(op.qubits[j], pauli_letter(code));
  }
}

/// Draws \p shot_ids.size() outcomes of the measured qubits from \p sv.
void sample_final(const StateVector& sv, const std::vector<std::pair<int, int>>& meas,
                  const std::vector<std::int64_t>& shot_ids, Rng& rng,
                  std::vector<BitColumn>& out) {
  const auto& amp = sv.amplitudes();
  std::vector<double> cdf(amp.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < amp.size(); ++i) cdf[i] = acc += std::norm(amp[i]);
  for (std::int64_t s : shot_ids) {
    double u = uniform01(rng) * acc;
    auto idx = static_cast<std::size_t>(std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
    idx = std::min(idx, cdf.size() - 1);
    for (const auto& [q, clbit] : meas) {
      if ((idx >> q) & 1) flip_bit(out[clbit], s);
    }
  }
}

void run_statevector(const Block& b, std::int64_t shots, Rng& rng, std::vector<BitColumn>& out) {
  const int m = static_cast<int>(b.qubits.size());
  if (m > kStatevectorMaxQubits) {
    throw execution_error("non-Clifford block of " + std::to_string(m) +
                          " qubits exceeds the statevector cap of " +
                          std::to_string(kStatevectorMaxQubits));
  }
  check_terminal_measurements(b);
  std::vector<std::pair<int, int>> meas;  // (local qubit, clbit)
  bool has_reset = false;
  for (const auto& op : b.ops) {
    if (op.kind == GateKind::Measure) meas.emplace_back(op.qubits[0], op.clbit);
    if (op.kind == GateKind::Reset) has_reset = true;
  }
  const std::size_t nops = b.ops.size();

  if (has_reset) {
    // resets branch the state, so every shot is its own trajectory
    for (std::int64_t s = 0; s < shots; ++s) {
      StateVector sv(m);
      for (std::size_t k = 0; k < nops; ++k) {
        const GateOp& op = b.ops[k];
        if (op.kind == GateKind::Reset) {
          sv.reset(op.qubits[0], rng);
          continue;
        }
        sv.apply(op);
        if (b.error_prob[k] > 0 && uniform01(rng) < b.error_prob[k]) {
          apply_event(sv, op, random_pauli_code(rng, op.qubits.size()));
        }
      }
      sample_final(sv, meas, {s}, rng, out);
    }
    return;
  }

  // error events per shot, grouped so each distinct pattern is simulated once
  std::vector<std::vector<std::pair<int, int>>> events(shots);
  for (std::size_t k = 0; k < nops; ++k) {
    const double p = b.error_prob[k];
    if (p <= 0.0) continue;
    for (auto s = static_cast<std::int64_t>(geometric_skip(rng, p)); s < shots;
         s += 1 + static_cast<std::int64_t>(geometric_skip(rng, p))) {
      events[s].emplace_back(static_cast<int>(k), random_pauli_code(rng, b.ops[k].qubits.size()));
    }
  }
  std::map<std::vector<std::pair<int, int>>, std::vector<std::int64_t>> groups;
  for (std::int64_t s = 0; s < shots; ++s) groups[events[s]].push_back(s);
  events.clear();

  // ideal-state checkpoints every `stride` ops, within the memory budget
  const std::size_t state_bytes = (std::size_t{1} << m) * sizeof(cplx);
  const std::size_t max_ckpt = std::max<std::size_t>(1, kCheckpointBudgetBytes / state_bytes);
  const std::size_t stride = std::max<std::size_t>(1, (nops + max_ckpt - 1) / max_ckpt);
  std::vector<StateVector> ckpt;
  {
    StateVector sv(m);
    for (std::size_t k = 0; k < nops; ++k) {
      if (k % stride == 0) ckpt.push_back(sv);
      sv.apply(b.ops[k]);
    }
    if (groups.count({})) sample_final(sv, meas, groups.at({}), rng, out);
  }

  for (const auto& [pattern, ids] : groups) {
    if (pattern.empty()) continue;
    const std::size_t first = static_cast<std::size_t>(pattern.front().first);
    const std::size_t start = (first / stride) * stride;
    StateVector sv = ckpt[first / stride];
    std::size_t e = 0;
    for (std::size_t k = start; k < nops; ++k) {
      sv.apply(b.ops[k]);
      while (e < pattern.size() && static_cast<std::size_t>(pattern[e].first) == k) {
        apply_event(sv, b.ops[k], pattern[e].second);
        ++e;
      }
    }
    sample_final(sv, meas, ids, rng, out);
  }
}

}  // namespace

CountsMap sample_counts(const Circuit& c, std::int64_t shots,
                        const std::optional<NoiseProfile>& noise, std::uint64_t seed) {
  if (shots < 1) throw Error(ErrorKind::Validation, "shots must be at least 1");
  if (noise) noise->validate();
  const int nclb = c.num_clbits();
  const std::size_t words = static_cast<std::size_t>((shots + 63) / 64);
  std::vector<BitColumn> out(nclb, BitColumn(words, 0));

  std::vector<Block> blocks = split_blocks(c, noise);
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    if (blocks[i].clifford) {
      run_frames(blocks[i], shots, rng, out);
    } else {
      run_statevector(blocks[i], shots, rng, out);
    }
  }

  if (noise && noise->readout_eps > 0) {
    Rng rng(derive_seed(seed, "readout"));
    const double eps = noise->readout_eps;
    const auto mq = c.measured_qubits();
    for (int cb = 0; cb < nclb; ++cb) {
      if (mq[cb] < 0) continue;
      for (auto s = static_cast<std::int64_t>(geometric_skip(rng, eps)); s < shots;
           s += 1 + static_cast<std::int64_t>(geometric_skip(rng, eps))) {
        flip_bit(out[cb], s);
      }
    }
  }

  CountsMap counts;
  std::map<std::string, std::int64_t> tally;
  std::string bits(nclb, '0');
  for (std::int64_t s = 0; s < shots; ++s) {
    for (int cb = 0; cb < nclb; ++cb) bits[cb] = get_bit(out[cb], s) ? '1' : '0';
    ++tally[bits];
  }
  for (const auto& [k, v] : tally) counts.add(k, v);
  return counts;
}

}  // namespace qbench
