// Copyright 2026 The bqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "bqec/ft/exrec.hpp"
#include "bqec/ft/noise.hpp"
#include "bqec/ft/pauli_frame.hpp"

namespace bqec::ft {

struct Fault {
  std::uint32_t loc = 0;
  std::uint32_t value = 1;
  bool operator==(const Fault &) const = default;
};

/// Upper bound on re-preparations of a rejected ancilla in sampled trials.
inline constexpr int kMaxFactoryRetries = 8;

/// Executes an ExRec program on a Pauli frame.
class ExRecSimulator {
 public:
  struct State {
    PauliFrame frame;
    std::vector<std::uint8_t> meas;
  };

  explicit ExRecSimulator(const ExRec &ex) : ex_(&ex), frame_(ex.num_qubits), meas_(ex.num_slots, 0) {
  }

  void reset() {
    frame_.clear();
    std::fill(meas_.begin(), meas_.end(), 0);
  }
  void reset(const PauliFrame &initial) {
    if (initial.n() != frame_.n()) {
      throw DimensionError("initial frame has wrong size");
    }
    frame_ = initial;
    std::fill(meas_.begin(), meas_.end(), 0);
  }

  const PauliFrame &frame() const {
    return frame_;
  }
  State save() const {
    return State{frame_, meas_};
  }
  void restore(const State &s) {
    frame_ = s.frame;
    meas_ = s.meas;
  }

  /// Runs ops [begin, end) with the given faults (sorted by location).
  /// A rejected ancilla is replaced by a fault-free one.
  void run_forced(std::size_t begin, std::size_t end, std::span<const Fault> faults) {
    run<false>(begin, end, faults, nullptr, nullptr);
  }
  void run_forced(std::span<const Fault> faults) {
    run_forced(0, ex_->ops.size(), faults);
  }

  /// Runs the whole program with pre-sampled faults; a rejected ancilla is
  /// reprepared with fresh noise drawn from `rng`.
  void run_sampled(std::span<const Fault> faults, const NoiseModel &noise, SplitMix64 &rng) {
    run<true>(0, ex_->ops.size(), faults, &noise, &rng);
  }

  /// True when ideal decoding of any output block leaves a logical error.
  bool logical_failure() const {
    for (const auto &blk : ex_->outputs) {
      std::uint32_t xw = 0, zw = 0;
      for (std::uint32_t j = 0; j < 7; ++j) {
        xw |= static_cast<std::uint32_t>(frame_.x(blk[j])) << j;
        zw |= static_cast<std::uint32_t>(frame_.z(blk[j])) << j;
      }
      if (decodes_to_logical(xw) || decodes_to_logical(zw)) {
        return true;
      }
    }
    return false;
  }

 private:
  std::uint32_t slot_word(const std::array<std::uint32_t, 7> &slots) const {
    std::uint32_t w = 0;
    for (std::uint32_t j = 0; j < 7; ++j) {
      w |= static_cast<std::uint32_t>(meas_[slots[j]]) << j;
    }
    return w;
  }

  bool accepted(const Factory &f) const {
    const std::uint32_t w = slot_word(f.verifier_slots);
    return hamming_syndrome(w) == 0 && (std::popcount(w) & 1) == 0;
  }

  void clear_factory(const Factory &f) {
    for (std::uint32_t j = 0; j < 7; ++j) {
      frame_.clear(f.ancilla[j]);
      frame_.clear(f.verifier[j]);
    }
  }

  void random_fault(const Op &op, const NoiseModel &noise, SplitMix64 &rng, bool &flip) {
    const double p = class_probability(noise, noise_class(op.kind));
    if (p > 0 && rng.bernoulli(p)) {
      flip ^= frame_apply_fault(frame_, op.kind, op.a, op.b, 1 + rng.below(fault_values(op.kind)));
    }
  }

  template <bool kSampled>
  void run(std::size_t begin, std::size_t end, std::span<const Fault> faults, const NoiseModel *noise,
           SplitMix64 *rng) {
    std::size_t cur = 0;
    const auto &ops = ex_->ops;
    for (std::size_t i = begin; i < end; ++i) {
      const Op &op = ops[i];
      switch (op.code) {
        case OpCode::Gate: {
          while (cur < faults.size() && static_cast<std::int64_t>(faults[cur].loc) < op.loc) {
            ++cur;
          }
          const bool hit = cur < faults.size() && static_cast<std::int64_t>(faults[cur].loc) == op.loc;
          if (op.kind == GateKind::WAIT && !hit) {
            break;
          }
          bool flip = frame_apply_gate(frame_, op.kind, op.a, op.b);
          if (hit) {
            flip ^= frame_apply_fault(frame_, op.kind, op.a, op.b, faults[cur].value);
            ++cur;
          }
          if (op.kind == GateKind::MEAS_Z || op.kind == GateKind::MEAS_X) {
            meas_[op.aux] = flip;
          }
          break;
        }
        case OpCode::Check: {
          const Factory &f = ex_->factories[op.aux];
          if (accepted(f)) {
            break;
          }
          if constexpr (!kSampled) {
            clear_factory(f);
          } else {
            for (int attempt = 0; attempt < kMaxFactoryRetries && !accepted(f); ++attempt) {
              clear_factory(f);
              for (std::uint32_t k = f.begin; k < f.end; ++k) {
                const Op &fo = ops[k];
                bool flip = frame_apply_gate(frame_, fo.kind, fo.a, fo.b);
                random_fault(fo, *noise, *rng, flip);
                if (fo.kind == GateKind::MEAS_Z || fo.kind == GateKind::MEAS_X) {
                  meas_[fo.aux] = flip;
                }
              }
              // The data block idles while the ancilla is reprepared.
              if (noise->p_mem > 0) {
                for (std::uint32_t t = 0; t < f.duration; ++t) {
                  for (auto q : f.data) {
                    if (rng->bernoulli(noise->p_mem)) {
                      frame_.apply_pauli(q, 1 + rng->below(3));
                    }
                  }
                }
              }
            }
          }
          break;
        }
        case OpCode::Correct: {
          const Correction &c = ex_->corrections[op.aux];
          const std::uint32_t s = hamming_syndrome(slot_word(c.slots));
          if (s != 0) {
            if (c.x_type) {
              frame_.flip_x(c.data[s - 1]);
            } else {
              frame_.flip_z(c.data[s - 1]);
            }
          }
          break;
        }
      }
    }
  }

  const ExRec *ex_;
  PauliFrame frame_;
  std::vector<std::uint8_t> meas_;
};

/// Draws the faults of one trial by geometric skipping within each noise class.
class FaultSampler {
 public:
  FaultSampler(const ExRec &ex, const NoiseModel &noise) {
    noise.validate();
    for (std::size_t c = 0; c < kNumNoiseClasses; ++c) {
      const auto cls = static_cast<NoiseClass>(c);
      auto locs = ex.locations_of(cls);
      const double p = class_probability(noise, cls);
      if (locs.empty() || p <= 0) {
        continue;
      }
      std::vector<std::uint32_t> values;
      for (auto l : locs) {
        values.push_back(fault_values(ex.locations[l].kind));
      }
      classes_.push_back(ClassInfo{std::move(locs), std::move(values), std::log1p(-p)});
    }
  }

  void sample(SplitMix64 &rng, std::vector<Fault> &out) const {
    out.clear();
    for (const auto &c : classes_) {
      std::uint64_t pos = geometric_skip(rng, c.log_q);
      while (pos < c.locs.size()) {
        out.push_back(Fault{c.locs[pos], 1 + rng.below(c.values[pos])});
        pos += 1 + geometric_skip(rng, c.log_q);
      }
    }
    std::sort(out.begin(), out.end(), [](const Fault &a, const Fault &b) { return a.loc < b.loc; });
  }

 private:
  struct ClassInfo {
    std::vector<std::uint32_t> locs;
    std::vector<std::uint32_t> values;
    double log_q;
  };
  std::vector<ClassInfo> classes_;
};

struct TrialCounts {
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
};

inline unsigned resolve_threads(unsigned threads) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  return threads;
}

/// Runs `fn(worker_index, item)` for items [0, count) on `threads` workers.
template <class Fn>
void parallel_for(std::uint64_t count, unsigned threads, std::uint64_t chunk, Fn fn) {
  threads = resolve_threads(threads);
  std::atomic<std::uint64_t> next{0};
  auto worker = [&](unsigned w) {
    for (;;) {
      const std::uint64_t start = next.fetch_add(chunk);
      if (start >= count) {
        return;
      }
      const std::uint64_t stop = std::min(count, start + chunk);
      for (std::uint64_t i = start; i < stop; ++i) {
        fn(w, i);
      }
    }
  };
  if (threads == 1 || count <= chunk) {
    worker(0);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back(worker, w);
  }
  for (auto &t : pool) {
    t.join();
  }
}

/// Monte Carlo estimate of the exRec failure count. Trial t at sweep point
/// `point` uses the seed trial_seed(seed, point, t), so results do not
/// depend on the number of threads.
inline TrialCounts run_exrec_trials(const ExRec &ex, const NoiseModel &noise, std::uint64_t trials,
                                    std::uint64_t seed, std::uint64_t point = 0, unsigned threads = 0) {
  if (trials == 0) {
    throw ValidationError("trials must be at least 1");
  }
  const FaultSampler sampler(ex, noise);
  threads = resolve_threads(threads);
  std::vector<ExRecSimulator> sims(threads, ExRecSimulator(ex));
  std::vector<std::vector<Fault>> buffers(threads);
  std::atomic<std::uint64_t> failures{0};
  parallel_for(trials, threads, 1024, [&](unsigned w, std::uint64_t t) {
    SplitMix64 rng(trial_seed(seed, point, t));
    sampler.sample(rng, buffers[w]);
    if (buffers[w].empty()) {
      return;
    }
    sims[w].reset();
    sims[w].run_sampled(buffers[w], noise, rng);
    if (sims[w].logical_failure()) {
      failures.fetch_add(1, std::memory_order_relaxed);
    }
  });
  return TrialCounts{trials, failures.load()};
}

/// Every (location, value) whose fault alone makes the exRec fail.
inline std::vector<Fault> failing_single_faults(const ExRec &ex) {
  std::vector<Fault> bad;
  ExRecSimulator sim(ex);
  for (std::uint32_t l = 0; l < ex.locations.size(); ++l) {
    for (std::uint32_t v = 1; v <= fault_values(ex.locations[l].kind); ++v) {
      const Fault f{l, v};
      sim.reset();
      sim.run_forced(std::span<const Fault>(&f, 1));
      if (sim.logical_failure()) {
        bad.push_back(f);
      }
    }
  }
  return bad;
}

/// True if some pair of nontrivial fault values at locations i and j causes failure.
inline bool is_malignant_pair(const ExRec &ex, std::uint32_t loc_i, std::uint32_t loc_j) {
  if (loc_i > loc_j) {
    std::swap(loc_i, loc_j);
  }
  ExRecSimulator sim(ex);
  for (std::uint32_t vi = 1; vi <= fault_values(ex.locations[loc_i].kind); ++vi) {
    for (std::uint32_t vj = 1; vj <= fault_values(ex.locations[loc_j].kind); ++vj) {
      const Fault f[2] = {{loc_i, vi}, {loc_j, vj}};
      sim.reset();
      sim.run_forced(f);
      if (sim.logical_failure()) {
        return true;
      }
    }
  }
  return false;
}

struct MalignantReport {
  std::uint64_t malignant = 0;
  std::uint64_t pairs = 0;
  std::uint64_t locations = 0;
};

/// Exhaustive count over unordered pairs of CNOT locations with all 15 x 15
/// fault assignments.
inline MalignantReport count_malignant_pairs(const ExRec &ex, unsigned threads = 0) {
  std::vector<std::uint32_t> cnots;
  for (std::uint32_t l = 0; l < ex.locations.size(); ++l) {
    if (ex.locations[l].kind == GateKind::CNOT) {
      cnots.push_back(l);
    }
  }
  const std::size_t m = cnots.size();
  MalignantReport rep;
  rep.locations = m;
  rep.pairs = m < 2 ? 0 : m * (m - 1) / 2;
  if (m < 2) {
    return rep;
  }
  threads = resolve_threads(threads);
  std::vector<ExRecSimulator> sims(threads, ExRecSimulator(ex));
  std::atomic<std::uint64_t> total{0};
  parallel_for(m - 1, threads, 1, [&](unsigned w, std::uint64_t ii) {
    ExRecSimulator &sim = sims[w];
    const std::uint32_t li = cnots[ii];
    const std::uint32_t op_i = ex.locations[li].op;
    std::vector<char> malignant(m, 0);
    sim.reset();
    sim.run_forced(0, op_i, {});
    const ExRecSimulator::State before_i = sim.save();
    for (std::uint32_t vi = 1; vi <= 15; ++vi) {
      sim.restore(before_i);
      const Fault fi{li, vi};
      std::size_t pos = op_i;
      bool first = true;
      for (std::size_t jj = ii + 1; jj < m; ++jj) {
        const std::uint32_t lj = cnots[jj];
        const std::uint32_t op_j = ex.locations[lj].op;
        // Advance the single-fault prefix up to op_j.
        sim.run_forced(pos, op_j, first ? std::span<const Fault>(&fi, 1) : std::span<const Fault>());
        first = false;
        pos = op_j;
        if (malignant[jj]) {
          continue;
        }
        const ExRecSimulator::State at_j = sim.save();
        for (std::uint32_t vj = 1; vj <= 15 && !malignant[jj]; ++vj) {
          const Fault fj{lj, vj};
          sim.run_forced(op_j, ex.ops.size(), std::span<const Fault>(&fj, 1));
          if (sim.logical_failure()) {
            malignant[jj] = 1;
          }
          sim.restore(at_j);
        }
      }
    }
    std::uint64_t c = 0;
    for (char b : malignant) {
      c += b;
    }
    total.fetch_add(c, std::memory_order_relaxed);
  });
  rep.malignant = total.load();
  return rep;
}

}  // namespace bqec::ft
