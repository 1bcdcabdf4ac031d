#pragma once

#include <functional>

namespace lieapp {

/// Reads LIEAPP_THREADS and caps the OpenMP thread pool accordingly.
/// Safe to call more than once; a no-op in serial builds.
void configure_threads_from_env();

int max_threads();

/// Global switch between the OpenMP kernels and their serial references.
/// Parallel is the default whenever the build has OpenMP.
bool parallel_enabled();
void set_parallel_enabled(bool on);

namespace par {

/// Static-schedule parallel loop over [0, n). Every iteration writes only
/// its own slots, so results are bitwise identical to the serial loop.
void for_each(int n, const std::function<void(int)>& body);

}  // namespace par

}  // namespace lieapp
