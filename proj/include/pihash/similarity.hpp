#pragma once

#include <cmath>
#include <cstddef>

#include "pihash/hashes.hpp"

namespace pihash {

struct SimilarityScore {
    double value = 0.0; // in [-1, 1]
};

// Same/different decision boundary; must lie strictly inside (-1, 1).
struct DecisionThreshold {
    explicit DecisionThreshold(double threshold) : value(threshold) {
        detail::require(threshold > -1.0 && threshold < 1.0,
                        "DecisionThreshold: must lie in (-1, 1)");
    }
    double value;
};

// Correlation coefficient between two hashes:
//   S = sum((h1-mu1)(h2-mu2)) / (||h1-mu1|| * ||h2-mu2|| + xi),  xi = 1e-10.
// The epsilon in the denominator sends constant (zero-variance) hashes to
// S = 0 instead of dividing by zero.
inline SimilarityScore correlation(const HashVector& h1, const HashVector& h2) {
    detail::require(h1.algorithm == h2.algorithm, "correlation: algorithm mismatch");
    detail::require(h1.values.size() == h2.values.size(), "correlation: length mismatch");
    detail::require(h1.values.size() >= 2, "correlation: need length >= 2");
    constexpr double kXi = 1e-10;

    const std::size_t n = h1.values.size();
    double mu1 = 0.0, mu2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mu1 += h1.values[i];
        mu2 += h2.values[i];
    }
    mu1 /= static_cast<double>(n);
    mu2 /= static_cast<double>(n);

    double num = 0.0, sq1 = 0.0, sq2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d1 = h1.values[i] - mu1;
        const double d2 = h2.values[i] - mu2;
        num += d1 * d2;
        sq1 += d1 * d1;
        sq2 += d2 * d2;
    }
    return SimilarityScore{num / (std::sqrt(sq1) * std::sqrt(sq2) + kXi)};
}

// Strictly "higher than": a score exactly at the threshold is not similar.
inline bool is_similar(const HashVector& h1, const HashVector& h2, DecisionThreshold t) {
    return correlation(h1, h2).value > t.value;
}

inline std::size_t hamming(const HashVector& h1, const HashVector& h2) {
    detail::require(h1.binary && h2.binary, "hamming: binary hashes required");
    detail::require(h1.values.size() == h2.values.size(), "hamming: length mismatch");
    std::size_t d = 0;
    for (std::size_t i = 0; i < h1.values.size(); ++i)
        if (h1.values[i] != h2.values[i]) ++d;
    return d;
}

} // namespace pihash
