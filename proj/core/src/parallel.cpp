#include "snb/parallel.hpp"

namespace snb {

namespace {
std::atomic<std::size_t> configured_workers{0};
}

void set_worker_count(std::size_t n) { configured_workers.store(n); }

std::size_t worker_count()
{
    const std::size_t n = configured_workers.load();
    if (n > 0)
        return n;
    return std::max(1u, std::thread::hardware_concurrency());
}

} // namespace snb
