#include "grstrata/fibrations.hpp"

#include "grstrata/error.hpp"
#include "grstrata/random.hpp"

namespace grstrata {

Trivialization Trivialization::over(const Subspace& v0) { return over(v0, grstrata::complement(v0)); }

Trivialization Trivialization::over(const Subspace& v0, const Subspace& l0) {
    return {v0, l0, projection_along(v0, l0)};
}

Trivialization Trivialization::random_around(const Subspace& point, Rng& rng) {
    const std::size_t n = point.n();
    const std::size_t d = point.k();
    if (d == n) throw Error(ErrorCode::FullSpace, "no chart around the whole space");
    for (;;) {
        Subspace v0 = random_subspace(d, n, rng);
        Subspace l0 = random_subspace(n - d, n, rng);
        if (is_direct_sum_complement(v0, l0) && is_direct_sum_complement(point, l0)) return over(v0, l0);
    }
}

bool Trivialization::in_chart(const Subspace& v) const {
    return v.n() == base_point.n() && v.k() == base_point.k() && is_direct_sum_complement(v, complement);
}

Matrix extend_isomorphism(const Subspace& v, const Trivialization& triv) {
    if (!triv.in_chart(v)) throw Error(ErrorCode::OutsideChart, "subspace is not transverse to the chart complement");
    const Matrix frame = vstack(v.basis(), triv.complement.basis());
    const Matrix images = vstack(v.basis() * triv.projector, triv.complement.basis());
    return solve(frame, images);
}

namespace {

void require_inside(const Configuration& c, const Subspace& frame, const char* what) {
    for (const auto& p : c.points()) {
        if (!frame.contains(p)) throw Error(ErrorCode::OutsideChart, what);
    }
}

}  // namespace

GammaChartPoint gamma_trivialize(const Configuration& c, const Trivialization& triv) {
    Subspace sum = subspace_sum(c.points());
    const Matrix phi = extend_isomorphism(sum, triv);
    return {std::move(sum), c.transformed(phi)};
}

Configuration gamma_untrivialize(const GammaChartPoint& p, const Trivialization& triv) {
    const Matrix phi = extend_isomorphism(p.base, triv);
    require_inside(p.fiber, triv.base_point, "fiber configuration does not lie in V0");
    if (subspace_sum(p.fiber.points()) != triv.base_point) {
        throw Error(ErrorCode::OutsideChart, "fiber configuration does not span V0");
    }
    return p.fiber.transformed(inverse(phi));
}

Configuration pr_forget_last(const Configuration& c) {
    if (c.h() < 2) throw Error(ErrorCode::WrongArity, "forgetting a point needs h >= 2");
    if (stratum_of(c) != c.h() * c.k()) throw Error(ErrorCode::NotDirectSum, "points are not in direct sum");
    std::vector<Subspace> head(c.points().begin(), c.points().end() - 1);
    return Configuration(std::move(head));
}

Matrix chart_coordinates(const Subspace& hh, const Subspace& w) {
    if (!is_direct_sum_complement(hh, w)) throw Error(ErrorCode::OutsideChart, "subspace meets the chart centre");
    const std::size_t k = hh.k();
    const Subspace s = complement(w);
    // Coefficients of hh's basis in the frame [S; w], then normalize the S-block to the identity.
    const Matrix frame = vstack(s.basis(), w.basis());
    const Matrix coeffs = solve(frame.transpose(), hh.basis().transpose()).transpose();
    const Matrix s_block = coeffs.col_block(0, k);
    const Matrix w_block = coeffs.col_block(k, hh.n());
    return inverse(s_block) * w_block;
}

Subspace chart_point(const Matrix& coords, const Subspace& w) {
    if (w.is_full()) throw Error(ErrorCode::FullSpace, "no chart around the whole space");
    const Subspace s = complement(w);
    if (coords.rows() != s.k() || coords.cols() != w.k()) {
        throw Error(ErrorCode::DimensionMismatch, "chart coordinates must be k x (n-k)");
    }
    return Subspace::canonicalize(s.basis() + coords * w.basis());
}

PrChartPoint pr_trivialize(const Configuration& c, const Trivialization& triv) {
    Configuration base = pr_forget_last(c);
    const Matrix phi = extend_isomorphism(subspace_sum(base.points()), triv);
    Subspace image = c[c.h() - 1].transformed(phi);
    std::optional<Matrix> coords;
    if (image.k() + triv.base_point.k() == image.n()) coords = chart_coordinates(image, triv.base_point);
    return {std::move(base), {std::move(image), std::move(coords)}};
}

Configuration pr_untrivialize(const PrChartPoint& p, const Trivialization& triv) {
    const Matrix phi = extend_isomorphism(subspace_sum(p.base.points()), triv);
    const Subspace image = p.fiber.coordinates ? chart_point(*p.fiber.coordinates, triv.base_point) : p.fiber.image;
    if (intersection_dimension(image, triv.base_point) != 0) {
        throw Error(ErrorCode::OutsideChart, "fiber point meets gamma(V0)");
    }
    std::vector<Subspace> points = p.base.points();
    points.push_back(image.transformed(inverse(phi)));
    Configuration c(std::move(points));
    if (stratum_of(c) != c.h() * c.k()) throw Error(ErrorCode::NotDirectSum, "lifted points are not in direct sum");
    return c;
}

Subspace eta(const Configuration& c) {
    if (c.h() != 2) throw Error(ErrorCode::WrongArity, "the intersection map is defined for pairs");
    auto meet = subspace_intersection(c[0], c[1]);
    if (!meet) throw Error(ErrorCode::DirectSum, "the pair is in direct sum");
    return std::move(*meet);
}

EtaChartPoint eta_fiber_point(const Configuration& c, const Trivialization& triv) {
    Subspace meet = eta(c);
    const Matrix phi = extend_isomorphism(meet, triv);
    // C^n / V0 is modelled by L0 through the projection along V0.
    const Matrix to_quotient = Matrix::identity(c.n()) - triv.projector;
    const Matrix onto_quotient = phi * to_quotient;
    return {std::move(meet),
            {c[0].transformed(onto_quotient), c[1].transformed(onto_quotient)}};
}

Configuration eta_fiber_lift(const EtaChartPoint& p, const Trivialization& triv) {
    const Matrix phi = extend_isomorphism(p.base, triv);
    const auto& [q1, q2] = p.fiber;
    if (!triv.complement.contains(q1) || !triv.complement.contains(q2)) {
        throw Error(ErrorCode::OutsideChart, "quotient pair does not lie in L0");
    }
    if (q1.k() != q2.k() || intersection_dimension(q1, q2) != 0) {
        throw Error(ErrorCode::OutsideChart, "quotient pair is not in direct sum");
    }
    const Matrix back = inverse(phi);
    const auto lift = [&](const Subspace& q) {
        return Subspace::canonicalize(vstack(q.basis(), triv.base_point.basis()) * back);
    };
    return Configuration({lift(q1), lift(q2)});
}

}  // namespace grstrata
