#include "nin/kernels.hpp"

#include <cstdlib>
#include <string>

namespace nin::kernels {

#if defined(NIN_HAVE_AVX2)
const backend* avx2_backend_impl();  // defined in the -mavx2 translation unit
#endif

const backend* avx2_backend() {
#if defined(NIN_HAVE_AVX2)
  static const backend* impl =
      __builtin_cpu_supports("avx2") ? avx2_backend_impl() : nullptr;
  return impl;
#else
  return nullptr;
#endif
}

std::vector<const backend*> available_backends() {
  std::vector<const backend*> v{&scalar_backend()};
  if (const backend* a = avx2_backend()) v.push_back(a);
  return v;
}

namespace {

const backend* find_backend(std::string_view name) {
  if (name.empty() || name == "auto") {
    if (const backend* a = avx2_backend()) return a;
    return &scalar_backend();
  }
  for (const backend* b : available_backends()) {
    if (name == b->name) return b;
  }
  throw error("unknown or unsupported kernel backend '" + std::string(name) +
              "'");
}

const backend*& active_slot() {
  static const backend* slot = [] {
    const char* env = std::getenv("NIN_KERNEL");
    return find_backend(env ? std::string_view(env) : std::string_view());
  }();
  return slot;
}

}  // namespace

const backend& active_backend() { return *active_slot(); }

void force_backend(std::string_view name) { active_slot() = find_backend(name); }

const backend& backend_for(int transverse) {
  const backend& b = active_backend();
  return transverse <= b.max_transverse ? b : scalar_backend();
}

}  // namespace nin::kernels
