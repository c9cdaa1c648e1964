#include "resqu/rng.hpp"

#include <limits>

#include "resqu/sdt.hpp"

namespace resqu {

double CounterRng::normal() {
    return sdt::phi_inv(uniform());
}

std::uint64_t CounterRng::below(std::uint64_t n) noexcept {
    // Rejection keeps the result unbiased for any n.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % n;
}

}  // namespace resqu
