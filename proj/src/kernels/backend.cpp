#include "hetstrip/kernels/backend.hpp"

#include "kernels_impl.hpp"

namespace hetstrip::kernels {

namespace {
Backend g_default = best_backend();
}

bool backend_available(Backend be) {
    switch (be) {
        case Backend::scalar:
            return true;
        case Backend::avx2:
#if defined(__x86_64__) || defined(__i386__)
            return avx2_impl::compiled() && __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case Backend::neon:
            return neon_impl::compiled();
    }
    return false;
}

Backend best_backend() {
    if (backend_available(Backend::avx2)) return Backend::avx2;
    if (backend_available(Backend::neon)) return Backend::neon;
    return Backend::scalar;
}

Backend default_backend() { return g_default; }

void set_default_backend(Backend be) { g_default = backend_available(be) ? be : Backend::scalar; }

std::string backend_name(Backend be) {
    switch (be) {
        case Backend::scalar:
            return "scalar";
        case Backend::avx2:
            return "avx2";
        case Backend::neon:
            return "neon";
    }
    return "?";
}

}  // namespace hetstrip::kernels
