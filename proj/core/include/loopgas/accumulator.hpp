#pragma once

#include <cstdint>
#include <vector>

namespace loopgas {

/// Streaming scalar accumulator with batch-means error estimation.
///
/// Samples are grouped into base batches of fixed size; each batch keeps
/// compensated sums labeled by (source, index).  All statistics are
/// computed over the label-sorted batch list, so merging is exactly
/// associative and commutative, independent of merge order.  Error bars
/// use batch means with automatic batch-size doubling until the lag-1
/// batch autocorrelation drops below 0.1.
class Accumulator {
public:
    explicit Accumulator(std::uint64_t source = 0, int base_batch = 64);

    void add(double x);
    /// Union of batch lists; sources should be distinct between chains.
    void merge(const Accumulator& other);

    std::int64_t count() const { return count_; }
    double mean() const;
    double variance() const;  // population variance of the samples
    /// Batch-means standard error of the mean; falls back to the iid
    /// estimate below 8 complete batches.
    double std_error() const;
    /// Lag-1 autocorrelation of the base batch means (diagnostic).
    double batch_autocorr() const;

    struct Batch {
        std::uint64_t source = 0;
        std::int64_t index = 0;
        double sum = 0.0;
        double sumsq = 0.0;
        std::int64_t n = 0;

        bool operator<(const Batch& o) const {
            return source != o.source ? source < o.source : index < o.index;
        }
    };
    /// Label-sorted batches, including the in-progress partial one.
    std::vector<Batch> batches() const;
    int base_batch() const { return base_batch_; }
    std::uint64_t source() const { return source_; }

    // Checkpoint support: exact state round-trip.
    struct State {
        std::uint64_t source = 0;
        int base_batch = 64;
        std::vector<Batch> done;
        Batch cur;
        double cur_comp = 0.0, cur_sq_comp = 0.0;
    };
    State state() const;
    static Accumulator from_state(const State& s);

private:
    std::uint64_t source_ = 0;
    int base_batch_ = 64;
    std::int64_t count_ = 0;
    std::vector<Batch> done_;
    Batch cur_;
    double cur_comp_ = 0.0, cur_sq_comp_ = 0.0;
};

}  // namespace loopgas
