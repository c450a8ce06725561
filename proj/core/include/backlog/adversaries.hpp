#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "backlog/engine.hpp"

namespace backlog {

// Pours 1/2 into each endpoint of a diameter-realizing cup pair, fixed for
// the whole run (the pair with the smallest ids wins ties). A single cup
// receives the full rate.
class DiameterEndpointsAdversary final : public Adversary {
 public:
  PourAllocation allocate(const Simulation& sim) override;
  bool is_static() const override { return true; }
  std::string name() const override { return "diameter-endpoints"; }

 private:
  bool chosen_ = false;
  int a_ = 0;
  int b_ = 0;
};

// Pours the full rate into the cup farthest from the player right now;
// ties go to the smaller id.
class FarthestFromPlayerAdversary final : public Adversary {
 public:
  PourAllocation allocate(const Simulation& sim) override;
  std::string name() const override { return "farthest"; }
};

// Pours the full rate into the currently fullest cup; ties go to the
// smaller id.
class FullestCupAdversary final : public Adversary {
 public:
  PourAllocation allocate(const Simulation& sim) override;
  std::string name() const override { return "fullest-cup"; }
};

// Pours 1/n into every cup, fixed for the whole run.
class UniformAdversary final : public Adversary {
 public:
  PourAllocation allocate(const Simulation& sim) override;
  bool is_static() const override { return true; }
  std::string name() const override { return "uniform"; }
};

// Pours random weights, normalized to the full unit rate, over a random
// subset of the cups, re-drawn at every control epoch. The subset holds at
// most eight cups so the rate churn stays cheap even on huge runs.
// Reproducible for a fixed seed.
class RandomSubsetAdversary final : public Adversary {
 public:
  explicit RandomSubsetAdversary(std::uint64_t seed) : gen_(seed) {}
  PourAllocation allocate(const Simulation& sim) override;
  std::string name() const override { return "random"; }

 private:
  std::mt19937_64 gen_;
};

enum class AdversaryKind {
  diameter_endpoints,
  farthest,
  fullest_cup,
  uniform,
  random,
};

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind,
                                          std::uint64_t seed = 0);
std::optional<AdversaryKind> adversary_kind_from_name(std::string_view name);
const std::string& adversary_name(AdversaryKind kind);
const std::vector<std::string>& adversary_names();

}  // namespace backlog
