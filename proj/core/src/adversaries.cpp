#include "backlog/adversaries.hpp"

#include <stdexcept>

#include "backlog/rng.hpp"

namespace backlog {

PourAllocation DiameterEndpointsAdversary::allocate(const Simulation& sim) {
  if (!chosen_) {
    const PointSet& cups = sim.cups();
    if (cups.size() == 1) {
      a_ = b_ = 0;
    } else {
      double best = -1.0;
      for (int i = 0; i < cups.size(); ++i) {
        for (int j = i + 1; j < cups.size(); ++j) {
          const double d = distance(cups[i], cups[j]);
          if (d > best) {
            best = d;
            a_ = i;
            b_ = j;
          }
        }
      }
    }
    chosen_ = true;
  }
  PourAllocation out;
  if (a_ == b_) {
    out.amounts[a_] = 1.0;
  } else {
    out.amounts[a_] = 0.5;
    out.amounts[b_] = 0.5;
  }
  return out;
}

PourAllocation FarthestFromPlayerAdversary::allocate(const Simulation& sim) {
  const PointSet& cups = sim.cups();
  const Point& p = sim.position();
  int best = 0;
  double best_d2 = -1.0;
  for (int i = 0; i < cups.size(); ++i) {
    const double dx = cups[i].x - p.x;
    const double dy = cups[i].y - p.y;
    const double d2 = dx * dx + dy * dy;
    if (d2 > best_d2) {
      best_d2 = d2;
      best = i;
    }
  }
  PourAllocation out;
  out.amounts[best] = 1.0;
  return out;
}

PourAllocation FullestCupAdversary::allocate(const Simulation& sim) {
  PourAllocation out;
  out.amounts[sim.fullest_cup()] = 1.0;
  return out;
}

PourAllocation UniformAdversary::allocate(const Simulation& sim) {
  const int n = sim.n();
  const double share = 1.0 / static_cast<double>(n);
  PourAllocation out;
  for (int i = 0; i < n; ++i) out.amounts[i] = share;
  return out;
}

PourAllocation RandomSubsetAdversary::allocate(const Simulation& sim) {
  const std::uint64_t n = static_cast<std::uint64_t>(sim.n());
  const std::uint64_t width = n < 8 ? n : 8;
  const std::uint64_t size = 1 + uniform_below(gen_, width);

  PourAllocation out;
  for (std::uint64_t i = 0; i < size; ++i) {
    const int id = static_cast<int>(uniform_below(gen_, n));
    out.amounts[id] += uniform01(gen_);
  }
  double total = 0.0;
  for (const auto& [id, w] : out.amounts) total += w;
  if (total <= 0.0) {
    out.amounts.begin()->second = 1.0;
    return out;
  }
  for (auto& [id, w] : out.amounts) w /= total;
  return out;
}

std::unique_ptr<Adversary> make_adversary(AdversaryKind kind,
                                          std::uint64_t seed) {
  switch (kind) {
    case AdversaryKind::diameter_endpoints:
      return std::make_unique<DiameterEndpointsAdversary>();
    case AdversaryKind::farthest:
      return std::make_unique<FarthestFromPlayerAdversary>();
    case AdversaryKind::fullest_cup:
      return std::make_unique<FullestCupAdversary>();
    case AdversaryKind::uniform:
      return std::make_unique<UniformAdversary>();
    case AdversaryKind::random:
      return std::make_unique<RandomSubsetAdversary>(seed);
  }
  throw std::invalid_argument("unknown adversary kind");
}

std::optional<AdversaryKind> adversary_kind_from_name(std::string_view name) {
  if (name == "diameter-endpoints") return AdversaryKind::diameter_endpoints;
  if (name == "farthest") return AdversaryKind::farthest;
  if (name == "fullest-cup") return AdversaryKind::fullest_cup;
  if (name == "uniform") return AdversaryKind::uniform;
  if (name == "random") return AdversaryKind::random;
  return std::nullopt;
}

const std::vector<std::string>& adversary_names() {
  static const std::vector<std::string> names = {
      "diameter-endpoints", "farthest", "fullest-cup", "uniform", "random"};
  return names;
}

const std::string& adversary_name(AdversaryKind kind) {
  return adversary_names()[static_cast<std::size_t>(kind)];
}

}  // namespace backlog
