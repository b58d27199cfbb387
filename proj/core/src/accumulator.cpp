#include "loopgas/accumulator.hpp"

#include <algorithm>
#include <cmath>

namespace loopgas {

namespace {

inline void kahan_add(double& sum, double& comp, double x) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
}

double lag1_autocorr(const std::vector<double>& m) {
    const std::size_t n = m.size();
    if (n < 3) return 0.0;
    double mu = 0.0;
    for (double v : m) mu += v;
    mu /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = m[i] - mu;
        den += d * d;
        if (i + 1 < n) num += d * (m[i + 1] - mu);
    }
    return den > 0.0 ? num / den : 0.0;
}

}  // namespace

Accumulator::Accumulator(std::uint64_t source, int base_batch)
    : source_(source), base_batch_(base_batch) {
    cur_.source = source;
}

void Accumulator::add(double x) {
    kahan_add(cur_.sum, cur_comp_, x);
    kahan_add(cur_.sumsq, cur_sq_comp_, x * x);
    ++cur_.n;
    ++count_;
    if (cur_.n >= base_batch_) {
        const std::int64_t next = cur_.index + 1;
        done_.push_back(cur_);
        cur_ = Batch{};
        cur_.source = source_;
        cur_.index = next;
        cur_comp_ = cur_sq_comp_ = 0.0;
    }
}

void Accumulator::merge(const Accumulator& other) {
    for (const Batch& b : other.batches()) {
        done_.push_back(b);
        count_ += b.n;
    }
}

std::vector<Accumulator::Batch> Accumulator::batches() const {
    std::vector<Batch> all = done_;
    if (cur_.n > 0) all.push_back(cur_);
    std::sort(all.begin(), all.end());
    return all;
}

double Accumulator::mean() const {
    if (count_ == 0) return 0.0;
    double sum = 0.0, comp = 0.0;
    for (const Batch& b : batches()) kahan_add(sum, comp, b.sum);
    return sum / static_cast<double>(count_);
}

double Accumulator::variance() const {
    if (count_ == 0) return 0.0;
    double sq = 0.0, comp = 0.0;
    for (const Batch& b : batches()) kahan_add(sq, comp, b.sumsq);
    const double mu = mean();
    return std::max(0.0, sq / static_cast<double>(count_) - mu * mu);
}

double Accumulator::std_error() const {
    if (count_ < 2) return 0.0;
    std::vector<double> means;
    std::vector<std::uint64_t> src;
    for (const Batch& b : batches()) {
        if (b.n == base_batch_) {
            means.push_back(b.sum / static_cast<double>(b.n));
            src.push_back(b.source);
        }
    }
    if (means.size() < 8)
        return std::sqrt(variance() / static_cast<double>(count_));
    // Double the batch size until the means decorrelate.
    while (means.size() >= 16 && std::abs(lag1_autocorr(means)) >= 0.1) {
        std::vector<double> half;
        std::vector<std::uint64_t> hsrc;
        std::size_t i = 0;
        while (i < means.size()) {
            if (i + 1 < means.size() && src[i] == src[i + 1]) {
                half.push_back(0.5 * (means[i] + means[i + 1]));
                hsrc.push_back(src[i]);
                i += 2;
            } else {
                ++i;  // unpaired trailing batch dropped at this level
            }
        }
        if (half.size() < 8) break;
        means.swap(half);
        src.swap(hsrc);
    }
    double mu = 0.0;
    for (double v : means) mu += v;
    mu /= static_cast<double>(means.size());
    double var = 0.0;
    for (double v : means) var += (v - mu) * (v - mu);
    var /= static_cast<double>(means.size() - 1);
    return std::sqrt(var / static_cast<double>(means.size()));
}

double Accumulator::batch_autocorr() const {
    std::vector<double> means;
    for (const Batch& b : batches())
        if (b.n == base_batch_) means.push_back(b.sum / static_cast<double>(b.n));
    return lag1_autocorr(means);
}

Accumulator::State Accumulator::state() const {
    State s;
    s.source = source_;
    s.base_batch = base_batch_;
    s.done = done_;
    s.cur = cur_;
    s.cur_comp = cur_comp_;
    s.cur_sq_comp = cur_sq_comp_;
    return s;
}

Accumulator Accumulator::from_state(const State& s) {
    Accumulator a(s.source, s.base_batch);
    a.done_ = s.done;
    a.cur_ = s.cur;
    a.cur_comp_ = s.cur_comp;
    a.cur_sq_comp_ = s.cur_sq_comp;
    a.count_ = s.cur.n;
    for (const Batch& b : s.done) a.count_ += b.n;
    return a;
}

}  // namespace loopgas
