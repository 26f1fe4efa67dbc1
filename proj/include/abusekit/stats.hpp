#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace abusekit::stats {

struct KsResult {
    double d_statistic = 0.0;
    std::size_t n = 0;
    std::size_t m = 0;
    double alpha = 0.0;
    double critical_value = 0.0;
    bool reject_null = false;
};

// Two-sample Kolmogorov-Smirnov test. D is the largest ECDF gap over the
// pooled sample points; the decision uses the critical value
// sqrt(-ln(alpha)/2) * sqrt((n+m)/(n*m)) rather than a p-value.
KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha = 0.01);

struct KappaResult {
    double kappa = 0.0;
    double p_a = 0.0;  // observed agreement
    double p_e = 0.0;  // chance agreement
};

// ratings: one row per item, one column per category, cell = number of raters
// who chose that category. Every row must sum to the same rater count (>= 2).
KappaResult fleiss_kappa(const std::vector<std::vector<int>>& ratings);

class Ecdf {
public:
    explicit Ecdf(std::vector<double> sample);

    // P(X <= x), right-continuous.
    double cdf(double x) const;
    // P(X > x).
    double ccdf(double x) const { return 1.0 - cdf(x); }

    const std::vector<double>& support() const { return support_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> support_;  // sorted distinct sample points
    std::vector<double> values_;   // cdf at each support point
};

struct Description {
    double mean = 0.0;
    double median = 0.0;
    double std_dev = 0.0;  // population convention (divide by n)
};

Description describe(const std::vector<double>& sample);

// Downsamples every group, without replacement, to the smallest group's size.
std::map<std::string, std::vector<std::string>> equal_size_sample(
    const std::map<std::string, std::vector<std::string>>& groups, std::uint64_t seed);

}  // namespace abusekit::stats
