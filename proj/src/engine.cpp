#include "imsim/engine.hpp"

namespace imsim {

const char* to_string(Strategy s) {
  return s == Strategy::FA ? "fa" : "fac";
}

Strategy strategy_from_string(const std::string& name) {
  if (name == "fa") return Strategy::FA;
  if (name == "fac") return Strategy::FAC;
  throw SpecError("unknown strategy: " + name);
}

std::int64_t workload(std::int64_t param, std::int64_t loadValue) {
  std::int64_t j = 0;
  for (std::int64_t i = 0; i < loadValue; ++i) {
    // The barrier pins j to a register each iteration, so the loop really
    // performs loadValue unit increments instead of folding to a constant.
    asm volatile("" : "+r"(j));
    ++j;
  }
  return j + param;
}

}  // namespace imsim
