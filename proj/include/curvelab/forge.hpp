#pragma once

#include "curvelab/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

namespace curvelab {

/// Finitely supported coefficient sequence; the elements z_m live in this sequence space.
using SparseVector = std::map<std::size_t, double>;

inline SparseVector scaled(const SparseVector& v, double c) {
    SparseVector out;
    for (const auto& [k, x] : v) out[k] = c * x;
    return out;
}

inline SparseVector added(const SparseVector& a, const SparseVector& b) {
    SparseVector out = a;
    for (const auto& [k, x] : b) out[k] += x;
    return out;
}

inline double sup_norm(const SparseVector& v) {
    double n = 0.0;
    for (const auto& [k, x] : v) n = std::max(n, std::abs(x));
    return n;
}

/// A sequence of nonnegative, positively homogeneous, countably subadditive functionals p_m
/// (m = 1, 2, ...) together with unit-ball elements z_m whose values p_m(z_m) grow without bound.
struct ForgeProblem {
    std::function<double(std::size_t m, const SparseVector& z)> functional;
    std::function<SparseVector(std::size_t m)> element;
    std::function<double(const SparseVector&)> norm = sup_norm;
    std::size_t horizon = 1'000'000;  // budget of functional evaluations
};

/// p_m(z) = m |z_m| on bounded sequences with z_m the m-th unit vector. Here p_m(z_m) = m and
/// p_m(z_k) = 0 for k != m.
inline ForgeProblem diagonal_toy_problem() {
    ForgeProblem problem;
    problem.functional = [](std::size_t m, const SparseVector& z) {
        const auto it = z.find(m);
        return it == z.end() ? 0.0 : static_cast<double>(m) * std::abs(it->second);
    };
    problem.element = [](std::size_t m) { return SparseVector{{m, 1.0}}; };
    return problem;
}

struct ForgeLevel {
    std::size_t j = 0;            // level index, the step from (alpha_j, m_j) to (alpha_{j+1}, m_{j+1})
    double smallness = 0.0;       // max{alpha_{j+1}, alpha_{j+1} p_{m_j}(z_{m_{j+1}})}
    double smallness_bound = 0.0; // 2^{-j}
    double growth = 0.0;          // alpha_{j+1} p_{m_{j+1}}(z_{m_{j+1}})
    double growth_bound = 0.0;    // 3 max{j, sums over earlier terms}
    double chain_value = 0.0;     // p_{m_{j+1}}(sum_{i<=J} alpha_i z_{m_i})
};

struct ForgeResult {
    std::vector<double> alphas;
    std::vector<std::size_t> indices;
    std::vector<ForgeLevel> levels;
    SparseVector partial_sum;
    double sup_value = 0.0;  // max over the chosen m_j of p_{m_j}(partial_sum)
    std::size_t evaluations = 0;
};

/// Builds alpha_1 > alpha_2 > ... and m_1 < m_2 < ... with alpha_1 = 1/2, m_1 = 1 such that
///   max{alpha_{j+1}, alpha_{j+1} p_{m_j}(z_{m_{j+1}})} <= 2^{-j}
///   alpha_{j+1} p_{m_{j+1}}(z_{m_{j+1}}) >= 3 max{j, sum_{i<=j} alpha_i p(z_{m_i})}
/// where the sum is taken under both p_{m_j} and p_{m_{j+1}}. The partial sum
/// z = sum_{i<=depth} alpha_i z_{m_i} then satisfies p_{m_{j+1}}(z) >= j at each level.
/// Candidate indices are scanned linearly; exceeding the evaluation horizon throws HorizonError.
inline ForgeResult banach_steinhaus_forge(const ForgeProblem& problem, std::size_t depth) {
    if (depth == 0) throw InputError("forge depth must be positive");
    if (!problem.functional || !problem.element) throw InputError("forge problem is incomplete");

    ForgeResult result;
    auto p = [&](std::size_t m, const SparseVector& z) {
        if (result.evaluations >= problem.horizon)
            throw HorizonError("forge horizon of " + std::to_string(problem.horizon) +
                                   " evaluations exhausted at level " + std::to_string(result.levels.size() + 1),
                               result.levels.size() + 1);
        ++result.evaluations;
        return problem.functional(m, z);
    };

    std::vector<SparseVector> chosen;
    result.alphas.push_back(0.5);
    result.indices.push_back(1);
    chosen.push_back(problem.element(1));

    for (std::size_t j = 1; j < depth; ++j) {
        const double alpha_j = result.alphas.back();
        const std::size_t m_j = result.indices.back();
        const double jd = static_cast<double>(j);
        const double two_pow = std::ldexp(1.0, -static_cast<int>(j));

        double earlier_under_mj = 0.0;
        for (std::size_t i = 0; i < j; ++i) earlier_under_mj += result.alphas[i] * p(m_j, chosen[i]);

        for (std::size_t m = m_j + 1;; ++m) {
            const SparseVector z = problem.element(m);
            if (problem.norm(z) > 1.0) throw InputError("forge element z_" + std::to_string(m) + " has norm above 1");
            const double cross = p(m_j, z);
            double alpha = std::min(two_pow, 0.5 * alpha_j);
            if (cross > 0.0) alpha = std::min(alpha, two_pow / cross);
            const double growth = alpha * p(m, z);
            if (growth < 3.0 * std::max(jd, earlier_under_mj)) continue;

            double earlier_under_m = 0.0;
            for (std::size_t i = 0; i < j; ++i) earlier_under_m += result.alphas[i] * p(m, chosen[i]);
            const double need = 3.0 * std::max({jd, earlier_under_mj, earlier_under_m});
            if (growth < need) continue;

            result.alphas.push_back(alpha);
            result.indices.push_back(m);
            chosen.push_back(z);
            ForgeLevel level;
            level.j = j;
            level.smallness = std::max(alpha, alpha * cross);
            level.smallness_bound = two_pow;
            level.growth = growth;
            level.growth_bound = need;
            result.levels.push_back(level);
            break;
        }
    }

    for (std::size_t i = 0; i < chosen.size(); ++i)
        result.partial_sum = added(result.partial_sum, scaled(chosen[i], result.alphas[i]));
    for (auto& level : result.levels) level.chain_value = p(result.indices[level.j], result.partial_sum);
    for (std::size_t m : result.indices) result.sup_value = std::max(result.sup_value, p(m, result.partial_sum));
    return result;
}

struct ForgeAudit {
    double worst_homogeneity_gap = 0.0;   // max |p(c z) - |c| p(z)| / (1 + |c| p(z))
    double worst_subadditivity_gap = 0.0; // max p(sum) - sum p, positive means violated
    bool passed(double tol = 1e-9) const {
        return worst_homogeneity_gap <= tol && worst_subadditivity_gap <= tol;
    }
};

/// Spot-checks positive homogeneity and finite subadditivity of p_1..p_max_index on random
/// combinations of the elements z_m.
inline ForgeAudit audit_forge_problem(const ForgeProblem& problem, std::size_t max_index, std::size_t samples,
                                      std::uint64_t seed = 0) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(1, max_index);
    std::uniform_real_distribution<double> coef(-2.0, 2.0);
    ForgeAudit audit;
    for (std::size_t s = 0; s < samples; ++s) {
        const std::size_t m = pick(rng);
        SparseVector a = scaled(problem.element(pick(rng)), coef(rng));
        SparseVector b = scaled(problem.element(pick(rng)), coef(rng));
        const double c = coef(rng);
        const double pa = problem.functional(m, a);
        const double gap = std::abs(problem.functional(m, scaled(a, c)) - std::abs(c) * pa) / (1.0 + std::abs(c) * pa);
        audit.worst_homogeneity_gap = std::max(audit.worst_homogeneity_gap, gap);
        const double excess = problem.functional(m, added(a, b)) - (pa + problem.functional(m, b));
        audit.worst_subadditivity_gap = std::max(audit.worst_subadditivity_gap, excess);
    }
    return audit;
}

} // namespace curvelab
