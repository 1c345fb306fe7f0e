#pragma once

#include "grstrata/grassmann.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace grstrata {

class Rng;

/// Chart data over a base point V0: a complement L0 with L0 + V0 = C^n and
/// the projector onto V0 along L0.
struct Trivialization {
    Subspace base_point;
    Subspace complement;
    Matrix projector;

    /// Uses the standard complement of v0.
    static Trivialization over(const Subspace& v0);
    /// Throws NotComplementary unless v0 and l0 form a direct sum of C^n.
    static Trivialization over(const Subspace& v0, const Subspace& l0);

    /// Random V0 and L0 (both seeded) such that `point` lies in the chart.
    static Trivialization random_around(const Subspace& point, Rng& rng);

    /// v lies in the chart U_{L0}: same dimension as V0 and transverse to L0.
    bool in_chart(const Subspace& v) const;
};

template <class Base, class Fiber>
struct ChartPoint {
    Base base;
    Fiber fiber;

    friend bool operator==(const ChartPoint&, const ChartPoint&) = default;
};

/// Fiber of the forget-last map: the image of the last point under phi_V.
/// `coordinates` is its graph chart relative to gamma(V0), present whenever
/// the fiber is a single chart (n = hk).
struct PrFiber {
    Subspace image;
    std::optional<Matrix> coordinates;

    friend bool operator==(const PrFiber&, const PrFiber&) = default;
};

using GammaChartPoint = ChartPoint<Subspace, Configuration>;
using PrChartPoint = ChartPoint<Configuration, PrFiber>;
/// Fiber is the pair (H1 mod V0, H2 mod V0), realized inside L0.
using EtaChartPoint = ChartPoint<Subspace, std::pair<Subspace, Subspace>>;

/// The invertible n x n matrix that maps v onto V0 by the chart projector and
/// fixes L0 pointwise. Throws OutsideChart unless triv.in_chart(v).
Matrix extend_isomorphism(const Subspace& v, const Trivialization& triv);

GammaChartPoint gamma_trivialize(const Configuration& c, const Trivialization& triv);
Configuration gamma_untrivialize(const GammaChartPoint& p, const Trivialization& triv);

/// (H_1, ..., H_h) -> (H_1, ..., H_{h-1}) on the direct-sum stratum i = hk.
Configuration pr_forget_last(const Configuration& c);

/// Graph coordinates of hh over the standard complement of w: the k x (n-k)
/// matrix A with hh = rowspan(S + A * basis(w)), S = complement(w).
Matrix chart_coordinates(const Subspace& hh, const Subspace& w);
Subspace chart_point(const Matrix& coords, const Subspace& w);

PrChartPoint pr_trivialize(const Configuration& c, const Trivialization& triv);
Configuration pr_untrivialize(const PrChartPoint& p, const Trivialization& triv);

/// H_1 ∩ H_2 for a pair with nontrivial intersection.
Subspace eta(const Configuration& c);

EtaChartPoint eta_fiber_point(const Configuration& c, const Trivialization& triv);
Configuration eta_fiber_lift(const EtaChartPoint& p, const Trivialization& triv);

}  // namespace grstrata
