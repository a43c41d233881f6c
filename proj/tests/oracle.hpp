#pragma once

// Test-only brute-force oracles, kept independent of the library's own
// algorithms: the decomposition oracle solves the orthogonality system over
// every subset of the curve universe.

#include <optional>
#include <vector>

#include "logdelta/zariski.hpp"

namespace logdelta::testing {

inline std::optional<std::vector<Rat>> oracle_solve(std::vector<std::vector<Rat>> a,
                                                    std::vector<Rat> rhs) {
    const std::size_t n = a.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && a[pivot][col] == 0) ++pivot;
        if (pivot == n) return std::nullopt;
        std::swap(a[pivot], a[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < n; ++row) {
            if (a[row][col] == 0) continue;
            const Rat f = a[row][col] / a[col][col];
            for (std::size_t k = col; k < n; ++k) a[row][k] -= f * a[col][k];
            rhs[row] -= f * rhs[col];
        }
    }
    std::vector<Rat> x(n, Rat(0));
    for (std::size_t i = n; i-- > 0;) {
        Rat acc = rhs[i];
        for (std::size_t k = i + 1; k < n; ++k) acc -= a[i][k] * x[k];
        x[i] = acc / a[i][i];
    }
    return x;
}

inline bool oracle_negative_definite(const std::vector<std::vector<Rat>>& g) {
    const std::size_t n = g.size();
    for (std::size_t k = 1; k <= n; ++k) {
        std::vector<std::vector<Rat>> block(k, std::vector<Rat>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) block[i][j] = g[i][j];
        Rat det(1);
        bool singular = false;
        for (std::size_t col = 0; col < k && !singular; ++col) {
            std::size_t pivot = col;
            while (pivot < k && block[pivot][col] == 0) ++pivot;
            if (pivot == k) {
                singular = true;
                break;
            }
            if (pivot != col) {
                std::swap(block[pivot], block[col]);
                det = -det;
            }
            det *= block[col][col];
            for (std::size_t row = col + 1; row < k; ++row) {
                if (block[row][col] == 0) continue;
                const Rat f = block[row][col] / block[col][col];
                for (std::size_t c = col; c < k; ++c) block[row][c] -= f * block[col][c];
            }
        }
        if (singular) return false;
        if (k % 2 == 1 && det >= 0) return false;
        if (k % 2 == 0 && det <= 0) return false;
    }
    return true;
}

inline std::optional<Decomposition> oracle_decompose(const SurfaceModel& model,
                                                     const DivisorClass& d,
                                                     const std::vector<CurveRecord>& universe) {
    const std::size_t u = universe.size();
    if (u > 20) return std::nullopt;
    for (unsigned long mask = 0; mask < (1ul << u); ++mask) {
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < u; ++i)
            if (mask & (1ul << i)) members.push_back(i);
        std::vector<std::vector<Rat>> gram(members.size(), std::vector<Rat>(members.size()));
        std::vector<Rat> rhs(members.size());
        for (std::size_t i = 0; i < members.size(); ++i) {
            for (std::size_t j = 0; j < members.size(); ++j)
                gram[i][j] = model.intersect(universe[members[i]].cls, universe[members[j]].cls);
            rhs[i] = model.intersect(d, universe[members[i]].cls);
        }
        auto coeffs = members.empty() ? std::optional<std::vector<Rat>>(std::vector<Rat>{})
                                      : oracle_solve(gram, rhs);
        if (!coeffs) continue;
        bool ok = true;
        for (const auto& c : *coeffs)
            if (c < 0) ok = false;
        if (!ok) continue;
        DivisorClass p = d;
        for (std::size_t i = 0; i < members.size(); ++i)
            p -= (*coeffs)[i] * universe[members[i]].cls;
        for (const auto& curve : universe)
            if (model.intersect(p, curve.cls) < 0) ok = false;
        if (!ok) continue;
        if (!members.empty() && !oracle_negative_definite(gram)) continue;
        Decomposition z;
        z.positive = p;
        for (std::size_t i = 0; i < members.size(); ++i)
            if ((*coeffs)[i] != 0) z.negative.emplace_back(universe[members[i]], (*coeffs)[i]);
        return z;
    }
    return std::nullopt;
}

}  // namespace logdelta::testing
