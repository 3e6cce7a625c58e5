#include "smimc/kernels.hpp"

#include <atomic>
#include <cstdlib>

namespace smimc::kernels {
namespace {

const KernelTable* pick(std::string_view name) noexcept {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table() ? avx2_table() : &scalar_table();
  // "auto" or anything else: best available
  if (const KernelTable* t = avx2_table()) return t;
  return &scalar_table();
}

const KernelTable* initial_backend() noexcept {
  if (const char* env = std::getenv("SMIMC_KERNELS")) return pick(env);
  return pick("auto");
}

std::atomic<const KernelTable*>& current() noexcept {
  static std::atomic<const KernelTable*> table{initial_backend()};
  return table;
}

}  // namespace

const KernelTable& active() noexcept { return *current().load(); }

void force_backend(std::string_view name) noexcept {
  current().store(pick(name));
}

}  // namespace smimc::kernels
