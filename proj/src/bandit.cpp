#include "lipmab/bandit.hpp"

#include <stdexcept>

namespace lipmab {

std::size_t argmax_index(std::span<const ArmRecord> arms) {
  if (arms.empty()) throw std::logic_error("argmax_index: no active arms");
  std::size_t best = 0;
  double best_index = arms[0].index();
  for (std::size_t i = 1; i < arms.size(); ++i) {
    const double idx = arms[i].index();
    if (idx > best_index) {
      best = i;
      best_index = idx;
      continue;
    }
    if (idx == best_index) {
      const auto& a = arms[i];
      const auto& b = arms[best];
      if (a.activation_round < b.activation_round ||
          (a.activation_round == b.activation_round &&
           point_less(a.strategy, b.strategy)))
        best = i;
    }
  }
  return best;
}

}  // namespace lipmab
