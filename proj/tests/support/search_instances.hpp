#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "sagan/constant.hpp"
#include "sagan/search.hpp"

namespace fixtures {

struct SearchInstance {
  sagan::ConstantSpec constant;
  unsigned base = 10;
  std::vector<sagan::search::DigitSet> sets;
  std::uint64_t limit = 0;
  std::size_t block_size = 0;
};

// Random (constant, base, per-position digit classes, limit) tuples. Window
// lengths run past 64 so both scanner paths are exercised.
inline std::vector<SearchInstance> random_search_instances(std::size_t count, std::uint64_t seed,
                                                           std::uint64_t max_limit = 100000) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](std::uint64_t lo, std::uint64_t hi) {
    return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
  };
  std::vector<SearchInstance> out;
  for (std::size_t i = 0; i < count; ++i) {
    SearchInstance inst;
    switch (uniform(0, 5)) {
      case 0:
        inst.constant = sagan::ConstantSpec::pi();
        break;
      case 1:
        inst.constant = sagan::ConstantSpec::e();
        break;
      case 2:
        inst.constant = sagan::ConstantSpec::sqrt2();
        break;
      case 3:
        inst.constant = sagan::ConstantSpec::rational(static_cast<std::int64_t>(uniform(1, 999999)),
                                                      static_cast<std::int64_t>(uniform(1000000, 9999999)));
        break;
      case 4:
        inst.constant = sagan::ConstantSpec::champernowne(static_cast<unsigned>(uniform(2, 16)));
        break;
      default:
        inst.constant = sagan::ConstantSpec::copeland_erdos();
        break;
    }
    unsigned native = inst.constant.native_base();
    inst.base = native != 0 && uniform(0, 1) == 0 ? native : static_cast<unsigned>(uniform(2, 40));
    std::size_t window = uniform(0, 3) == 0 ? uniform(65, 120) : uniform(1, 64);
    // Long windows need permissive classes to ever match.
    double density = window > 12 ? 0.85 + 0.15 * static_cast<double>(uniform(0, 100)) / 100.0
                                 : 0.1 + 0.9 * static_cast<double>(uniform(0, 100)) / 100.0;
    for (std::size_t j = 0; j < window; ++j) {
      sagan::search::DigitSet s;
      std::vector<unsigned> digits(inst.base);
      for (unsigned d = 0; d < inst.base; ++d) digits[d] = d;
      std::shuffle(digits.begin(), digits.end(), rng);
      auto size = static_cast<std::size_t>(std::max(1.0, density * inst.base));
      for (std::size_t k = 0; k < size; ++k) s.set(digits[k]);
      inst.sets.push_back(s);
    }
    inst.limit = uniform(window, max_limit);
    inst.block_size = static_cast<std::size_t>(uniform(1, 5000));
    out.push_back(inst);
  }
  return out;
}

}  // namespace fixtures
