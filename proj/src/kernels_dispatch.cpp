#include "sw/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>

namespace sw::kernels {

namespace {

std::atomic<const Backend*> g_active{nullptr};
std::mutex g_mutex;

const Backend* pick_default() {
    if (const char* env = std::getenv("SW_KERNELS")) {
        const std::string want(env);
        if (want == "scalar") return &scalar_backend();
        if (want == "avx2") {
            if (const Backend* b = avx2_backend()) return b;
            // requested backend missing: fall through to scalar rather than abort
            return &scalar_backend();
        }
    }
    if (const Backend* b = avx2_backend()) return b;
    return &scalar_backend();
}

} // namespace

const Backend& active() {
    const Backend* b = g_active.load(std::memory_order_acquire);
    if (!b) {
        std::lock_guard<std::mutex> lock(g_mutex);
        b = g_active.load(std::memory_order_relaxed);
        if (!b) {
            b = pick_default();
            g_active.store(b, std::memory_order_release);
        }
    }
    return *b;
}

void select(const std::string& name) {
    std::lock_guard<std::mutex> lock(g_mutex);
    if (name == "scalar") {
        g_active.store(&scalar_backend(), std::memory_order_release);
        return;
    }
    if (name == "avx2") {
        if (const Backend* b = avx2_backend()) {
            g_active.store(b, std::memory_order_release);
            return;
        }
        throw std::runtime_error("avx2 kernels not supported on this CPU");
    }
    throw std::runtime_error("unknown kernel backend: " + name);
}

} // namespace sw::kernels
