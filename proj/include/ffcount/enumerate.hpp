#pragma once

// Exhaustive solution counting over F_q^n or (F_q^*)^n.

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "ffcount/error.hpp"
#include "ffcount/ff.hpp"

namespace ffcount {

struct BruteOptions {
    /// Upper bound on q^n tuple evaluations.
    std::uint64_t work_cap = 100'000'000;
    unsigned workers = 1;
};

/// q^n, saturating at UINT64_MAX.
inline std::uint64_t tuple_space(std::uint64_t q, std::size_t n) {
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (total > UINT64_MAX / q) return UINT64_MAX;
        total *= q;
    }
    return total;
}

inline void require_within_cap(std::uint64_t q, std::size_t n, std::uint64_t cap) {
    const auto total = tuple_space(q, n);
    if (total > cap) {
        fail(ErrorKind::WorkCapExceeded,
             std::to_string(q) + "^" + std::to_string(n) + " tuples exceeds cap " + std::to_string(cap));
    }
}

/// Calls visit(x) for every tuple with x_0 in [first, last) and every other
/// coordinate in [low, q), in lexicographic order with the last coordinate
/// varying fastest.
template <typename Visit>
void for_each_tuple(std::size_t n, std::uint32_t q, std::uint32_t low, std::uint32_t first, std::uint32_t last,
                    Visit&& visit) {
    if (first >= last || low >= q) return;
    std::vector<Element> x(n, Element{low});
    x[0] = Element{first};
    for (;;) {
        visit(std::span<const Element>(x));
        std::size_t j = n;
        for (;;) {
            --j;
            const std::uint32_t next = x[j].index() + 1;
            if (j == 0) {
                if (next >= last) return;
                x[0] = Element{next};
                break;
            }
            if (next < q) {
                x[j] = Element{next};
                break;
            }
            x[j] = Element{low};
        }
    }
}

/// Number of tuples satisfying pred. pred must be safe to call concurrently.
/// The outermost coordinate is split into contiguous slices, one per worker.
template <typename Predicate>
std::uint64_t count_tuples(const Field& f, std::size_t n, bool restricted, const BruteOptions& options,
                           const Predicate& pred) {
    if (n == 0) fail(ErrorKind::PreconditionViolated, "need at least one variable");
    require_within_cap(f.order(), n, options.work_cap);
    const std::uint32_t q = f.order();
    const std::uint32_t low = restricted ? 1 : 0;
    const std::uint32_t span = q - low;
    const unsigned workers = std::max(1U, std::min<unsigned>(options.workers, span));

    auto run_slice = [&](std::uint32_t first, std::uint32_t last) {
        std::uint64_t local = 0;
        for_each_tuple(n, q, low, first, last, [&](std::span<const Element> x) {
            if (pred(x)) ++local;
        });
        return local;
    };

    if (workers == 1) return run_slice(low, q);

    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> threads;
    threads.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint32_t first = low + static_cast<std::uint32_t>(std::uint64_t{span} * w / workers);
        const std::uint32_t last = low + static_cast<std::uint32_t>(std::uint64_t{span} * (w + 1) / workers);
        threads.emplace_back([&, w, first, last] { partial[w] = run_slice(first, last); });
    }
    for (auto& t : threads) t.join();
    std::uint64_t total = 0;
    for (auto v : partial) total += v;
    return total;
}

/// Number of x with lhs(x) == rhs(x).
template <typename Lhs, typename Rhs>
std::uint64_t brute_count(const Lhs& lhs, const Rhs& rhs, const Field& f, std::size_t n, bool restricted,
                          const BruteOptions& options = {}) {
    return count_tuples(f, n, restricted, options, [&](std::span<const Element> x) { return lhs(x) == rhs(x); });
}

/// Per-variable table of coeff * x^e for every x in the field.
class PowerTable {
public:
    PowerTable() = default;
    PowerTable(const Field& f, Element coeff, std::uint64_t e) : values_(f.order()) {
        for (std::uint32_t i = 0; i < f.order(); ++i) values_[i] = f.mul_unchecked(coeff, f.pow_unchecked(Element{i}, e));
    }

    Element operator[](Element x) const noexcept { return values_[x.index()]; }

private:
    std::vector<Element> values_;
};

}  // namespace ffcount
