#pragma once

// Compensated accumulation and a deterministic blocked parallel reduction.
//
// The reduction tree is fixed by the block size alone: the index range is cut
// into blocks of `block_size`, each block is reduced left to right, and the
// block partials are combined in block order.  Threads only decide who
// computes which block, so results are bit-identical for any thread count.

#ifdef __FAST_MATH__
#error "fast-math breaks compensated summation"
#endif

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <thread>
#include <vector>

namespace dsum {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
    double sum_ = 0.0;
    double carry_ = 0.0;

public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum_);
        add(other.carry_);
    }
    double value() const { return sum_ + carry_; }
};

class CompensatedComplexSum {
    CompensatedSum re_, im_;

public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    void add(const CompensatedComplexSum& other) {
        re_.add(other.re_);
        im_.add(other.im_);
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }
};

struct ParallelConfig {
    unsigned threads = 1;
    std::size_t block_size = 4096;
};

/**
 * Reduces `block_fn(begin, end)` over [0, count) in fixed blocks.
 *
 * `block_fn` returns a partial of type Acc; `combine(total, partial)` folds
 * the partials in ascending block order.
 */
template <typename Acc, typename BlockFn, typename Combine>
Acc blocked_reduce(std::size_t count, const ParallelConfig& cfg, BlockFn block_fn, Combine combine,
                   Acc init = Acc{}) {
    const std::size_t block = std::max<std::size_t>(cfg.block_size, 1);
    const std::size_t nblocks = (count + block - 1) / block;
    std::vector<Acc> partials(nblocks);
    auto run = [&](std::size_t first_block, std::size_t stride) {
        for (std::size_t b = first_block; b < nblocks; b += stride) {
            std::size_t lo = b * block;
            partials[b] = block_fn(lo, std::min(count, lo + block));
        }
    };
    unsigned nthreads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(nblocks)));
    if (nthreads <= 1) {
        run(0, 1);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(run, t, nthreads);
    }
    Acc total = std::move(init);
    for (auto& p : partials) combine(total, p);
    return total;
}

/// Applies `fn(i)` for i in [0, count) across threads; `fn` must write only to slot i.
template <typename Fn>
void parallel_for(std::size_t count, unsigned threads, Fn fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
}

}  // namespace dsum
