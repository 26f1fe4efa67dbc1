#include "abusekit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abusekit/errors.hpp"
#include "abusekit/rng.hpp"

namespace abusekit::stats {

KsResult ks_two_sample(const std::vector<double>& a, const std::vector<double>& b, double alpha) {
    if (a.empty() || b.empty()) throw ContractViolation("ks_two_sample: empty sample");
    if (!(alpha > 0.0 && alpha < 1.0)) throw ContractViolation("ks_two_sample: alpha outside (0,1)");

    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());

    const auto n = sa.size();
    const auto m = sb.size();

    // Merge sweep over the pooled points; at each distinct value advance both
    // counters past all ties before taking the gap.
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < n || j < m) {
        double x;
        if (j >= m || (i < n && sa[i] <= sb[j])) {
            x = sa[i];
        } else {
            x = sb[j];
        }
        while (i < n && sa[i] <= x) ++i;
        while (j < m && sb[j] <= x) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / static_cast<double>(n) -
                                  static_cast<double>(j) / static_cast<double>(m)));
    }

    KsResult r;
    r.d_statistic = d;
    r.n = n;
    r.m = m;
    r.alpha = alpha;
    r.critical_value = std::sqrt(-std::log(alpha) / 2.0) *
                       std::sqrt(static_cast<double>(n + m) / (static_cast<double>(n) * static_cast<double>(m)));
    r.reject_null = d > r.critical_value;
    return r;
}

KappaResult fleiss_kappa(const std::vector<std::vector<int>>& ratings) {
    if (ratings.empty()) throw ContractViolation("fleiss_kappa: no items");
    const std::size_t categories = ratings.front().size();
    long long raters = 0;
    for (int c : ratings.front()) raters += c;
    if (raters < 2) throw ContractViolation("fleiss_kappa: fewer than 2 raters per item");

    const double n_items = static_cast<double>(ratings.size());
    const double n = static_cast<double>(raters);

    std::vector<double> category_share(categories, 0.0);
    double p_a_sum = 0.0;
    for (const auto& row : ratings) {
        if (row.size() != categories) throw ContractViolation("fleiss_kappa: ragged ratings matrix");
        long long row_sum = 0;
        double sq = 0.0;
        for (std::size_t j = 0; j < categories; ++j) {
            row_sum += row[j];
            sq += static_cast<double>(row[j]) * static_cast<double>(row[j]);
            category_share[j] += static_cast<double>(row[j]);
        }
        if (row_sum != raters) throw ContractViolation("fleiss_kappa: inconsistent row sums");
        p_a_sum += (sq - n) / (n * (n - 1.0));
    }

    KappaResult r;
    r.p_a = p_a_sum / n_items;
    double p_e = 0.0;
    for (double s : category_share) {
        const double p = s / (n_items * n);
        p_e += p * p;
    }
    r.p_e = p_e;
    // p_e == 1 means every rating fell in a single category, which forces
    // complete agreement.
    r.kappa = (p_e >= 1.0) ? 1.0 : (r.p_a - p_e) / (1.0 - p_e);
    return r;
}

Ecdf::Ecdf(std::vector<double> sample) {
    if (sample.empty()) throw ContractViolation("ecdf: empty sample");
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    for (std::size_t i = 0; i < sample.size(); ++i) {
        if (i + 1 == sample.size() || sample[i + 1] != sample[i]) {
            support_.push_back(sample[i]);
            values_.push_back(static_cast<double>(i + 1) / n);
        }
    }
}

double Ecdf::cdf(double x) const {
    auto it = std::upper_bound(support_.begin(), support_.end(), x);
    if (it == support_.begin()) return 0.0;
    return values_[static_cast<std::size_t>(it - support_.begin()) - 1];
}

Description describe(const std::vector<double>& sample) {
    if (sample.empty()) throw ContractViolation("describe: empty sample");
    const double n = static_cast<double>(sample.size());

    Description d;
    double sum = 0.0;
    for (double v : sample) sum += v;
    d.mean = sum / n;

    double ss = 0.0;
    for (double v : sample) ss += (v - d.mean) * (v - d.mean);
    d.std_dev = std::sqrt(ss / n);

    std::vector<double> sorted = sample;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    d.median = (sorted.size() % 2 == 1) ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    return d;
}

std::map<std::string, std::vector<std::string>> equal_size_sample(
    const std::map<std::string, std::vector<std::string>>& groups, std::uint64_t seed) {
    std::size_t target = std::numeric_limits<std::size_t>::max();
    for (const auto& [name, ids] : groups) {
        if (ids.empty()) throw ContractViolation("equal_size_sample: empty group " + name);
        target = std::min(target, ids.size());
    }

    std::map<std::string, std::vector<std::string>> out;
    std::uint64_t state = seed;
    for (const auto& [name, ids] : groups) {
        std::mt19937_64 gen(rng::split_seed(state));
        std::vector<std::string> pool = ids;
        rng::shuffle(pool, gen);
        pool.resize(target);
        out.emplace(name, std::move(pool));
    }
    return out;
}

}  // namespace abusekit::stats
