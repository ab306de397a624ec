#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace avgmix {

// Neumaier compensated summation.
class KahanSum {
public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + comp_; }

    void reset() { sum_ = comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(const std::vector<double>& xs) {
    KahanSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

// Running mean / standard error over trial results.
class MeanAccumulator {
public:
    void add(double x) {
        sum_.add(x);
        sumsq_.add(x * x);
        ++count_;
    }

    std::size_t count() const { return count_; }

    double mean() const { return count_ ? sum_.value() / static_cast<double>(count_) : 0.0; }

    double variance() const {
        if (count_ < 2) return 0.0;
        double n = static_cast<double>(count_);
        double m = mean();
        double v = (sumsq_.value() - n * m * m) / (n - 1.0);
        return v > 0.0 ? v : 0.0;
    }

    double stderror() const {
        return count_ ? std::sqrt(variance() / static_cast<double>(count_)) : 0.0;
    }

private:
    KahanSum sum_;
    KahanSum sumsq_;
    std::size_t count_ = 0;
};

} // namespace avgmix
