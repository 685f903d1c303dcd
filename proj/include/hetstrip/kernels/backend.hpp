#pragma once

#include <string>

namespace hetstrip::kernels {

// scalar is the ordered reference path (strict left-to-right reductions, used
// by the deterministic mode); avx2/neon are runtime-selected variants that
// round identically per element but may reassociate reductions.
enum class Backend { scalar, avx2, neon };

bool backend_available(Backend be);
Backend best_backend();

Backend default_backend();
void set_default_backend(Backend be);

std::string backend_name(Backend be);

}  // namespace hetstrip::kernels
