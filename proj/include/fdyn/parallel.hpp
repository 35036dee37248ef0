#pragma once

#include <cstddef>
#include <functional>

namespace fdyn {

/// Caps the number of worker threads used by the per-pixel fills.
/// 0 restores the default (hardware concurrency).
void set_max_threads(unsigned n);
unsigned max_threads();

/// Runs body(k) for every k in [0, count). Work items are handed out
/// dynamically; callers must only write state owned by item k.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace fdyn
