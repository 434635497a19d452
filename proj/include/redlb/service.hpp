#pragma once

#include <cmath>

namespace redlb {

// Job size distribution G. Only the exponential family ships; the tag keeps
// the tail interface open for other laws, which route the k-kernel through
// numeric quadrature instead of the closed exponential forms.
struct ServiceLaw {
    enum class Kind { Exponential };

    Kind kind = Kind::Exponential;
    double rate = 1.0;

    static ServiceLaw exponential(double mu) { return ServiceLaw{Kind::Exponential, mu}; }

    // Gbar(x) = 1 - G(x), with Gbar(x) = 1 for x <= 0 ((x)_+ convention).
    double tail(double x) const {
        if (x <= 0.0) return 1.0;
        return std::exp(-rate * x);
    }

    double mean() const { return 1.0 / rate; }
};

}  // namespace redlb
