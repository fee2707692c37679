#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace seeker {

/// Source of uniform draws in [0, 1). Callers own their streams; a stream is never
/// shared between workers.
class UniformSource {
  public:
    virtual ~UniformSource() = default;
    virtual double next() = 0;
};

/// mt19937_64 with a fixed 53-bit mantissa conversion, so a seed yields the same
/// stream on every standard library.
class SeededUniform final : public UniformSource {
  public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}

    double next() override {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

  private:
    std::mt19937_64 engine_;
};

/// Replays a fixed list of draws, cycling. For tests and tooling.
class ScriptedUniform final : public UniformSource {
  public:
    explicit ScriptedUniform(std::vector<double> draws) : draws_(std::move(draws)) {}

    double next() override {
        const double u = draws_[pos_ % draws_.size()];
        ++pos_;
        return u;
    }

    std::size_t consumed() const noexcept { return pos_; }

  private:
    std::vector<double> draws_;
    std::size_t pos_ = 0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Independent per-worker seed derived from (global seed, worker index).
std::uint64_t worker_seed(std::uint64_t global_seed, std::uint64_t worker_index) noexcept;

}  // namespace seeker
