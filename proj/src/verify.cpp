#include "grstrata/verify.hpp"

#include "grstrata/error.hpp"
#include "grstrata/fibrations.hpp"
#include "grstrata/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>

namespace grstrata {

using Json = nlohmann::ordered_json;

Json report_to_json(const VerificationReport& r) {
    Json failures = Json::array();
    for (const auto& f : r.failures) failures.push_back({{"seed", f.seed}, {"desc", f.desc}});
    return {{"suite", r.suite},
            {"cases", r.cases},
            {"passed", r.passed},
            {"failures", std::move(failures)},
            {"params", r.params.is_null() ? Json::object() : r.params}};
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) { return mix_seed(seed, index); }

namespace {

// nullopt means the case passed.
using CaseFn = std::function<std::optional<std::string>(std::size_t index, std::uint64_t seed)>;

std::optional<std::string> run_guarded(const CaseFn& fn, std::size_t index, std::uint64_t seed) {
    try {
        return fn(index, seed);
    } catch (const std::exception& e) {
        return std::string("exception: ") + e.what();
    }
}

VerificationReport run_cases(std::string suite, Json params, std::size_t count, std::uint64_t seed, Execution mode,
                             const CaseFn& fn) {
    std::vector<std::optional<std::string>> results(count);
    if (mode == Execution::Serial) {
        for (std::size_t t = 0; t < count; ++t) results[t] = run_guarded(fn, t, case_seed(seed, t));
    } else {
        const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic)
        for (std::ptrdiff_t t = 0; t < n; ++t) {
            const auto u = static_cast<std::size_t>(t);
            results[u] = run_guarded(fn, u, case_seed(seed, u));
        }
    }

    VerificationReport r{std::move(suite), count, 0, {}, std::move(params)};
    for (std::size_t t = 0; t < count; ++t) {
        if (results[t]) {
            r.failures.push_back({case_seed(seed, t), std::move(*results[t])});
        } else {
            ++r.passed;
        }
    }
    return r;
}

Json stratum_json(const StratumId& s) { return {{"h", s.h}, {"i", s.i}, {"k", s.k}, {"n", s.n}}; }

// ---------------------------------------------------------------------------
// Float chart

using CMat = Eigen::MatrixXcd;

CMat to_eigen(const Matrix& m) {
    CMat out{static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols())};
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) out(Eigen::Index(r), Eigen::Index(c)) = m(r, c).to_complex();
    }
    return out;
}

// Chart around c:
//   V(A)      = rowspan(Vb + A Lb),            A is i x (n - i)
//   H_j(A, B) = rowspan((C_j + B_j D_j) M(A)),  B_j is k x (i - k)
// where C_j is the canonical basis of H_j in V-coordinates and D_j the unit
// rows of its non-pivot columns. Output: real and imaginary parts of every
// orthogonal projector entry.
class Chart {
public:
    explicit Chart(const Configuration& c) : h_(c.h()), k_(c.k()), n_(c.n()) {
        const Subspace v = subspace_sum(c.points());
        i_ = v.k();
        vb_ = to_eigen(v.basis());
        if (i_ < n_) lb_ = to_eigen(complement(v).basis());
        for (const auto& p : c.points()) {
            const Subspace local = coordinates_in(p, v);
            cs_.push_back(to_eigen(local.basis()));
            Matrix d(i_ - k_, i_);
            std::size_t row = 0;
            for (std::size_t col = 0; col < i_; ++col) {
                if (std::find(local.pivots().begin(), local.pivots().end(), col) == local.pivots().end()) {
                    d(row++, col) = 1;
                }
            }
            ds_.push_back(to_eigen(d));
        }
    }

    std::size_t params() const { return 2 * (i_ * (n_ - i_) + h_ * k_ * (i_ - k_)); }
    std::size_t outputs() const { return 2 * h_ * n_ * n_; }

    Eigen::VectorXd eval(const Eigen::VectorXd& x) const {
        std::size_t at = 0;
        const auto take = [&](std::size_t rows, std::size_t cols) {
            CMat m{Eigen::Index(rows), Eigen::Index(cols)};
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t c = 0; c < cols; ++c) {
                    m(Eigen::Index(r), Eigen::Index(c)) = {x[Eigen::Index(at)], x[Eigen::Index(at + 1)]};
                    at += 2;
                }
            }
            return m;
        };
        CMat frame = vb_;
        if (i_ < n_) frame += take(i_, n_ - i_) * lb_;

        Eigen::VectorXd out{Eigen::Index(outputs())};
        Eigen::Index o = 0;
        for (std::size_t j = 0; j < h_; ++j) {
            CMat x_j = cs_[j];
            if (i_ > k_) x_j += take(k_, i_ - k_) * ds_[j];
            const CMat basis = x_j * frame;
            const CMat gram = basis * basis.adjoint();
            const CMat proj = basis.adjoint() * gram.ldlt().solve(basis);
            for (Eigen::Index r = 0; r < proj.rows(); ++r) {
                for (Eigen::Index c = 0; c < proj.cols(); ++c) {
                    out[o++] = proj(r, c).real();
                    out[o++] = proj(r, c).imag();
                }
            }
        }
        return out;
    }

    std::size_t jacobian_rank(double step, double tol) const {
        const auto p = Eigen::Index(params());
        Eigen::MatrixXd jac{Eigen::Index(outputs()), p};
        Eigen::VectorXd x = Eigen::VectorXd::Zero(p);
        for (Eigen::Index t = 0; t < p; ++t) {
            x[t] = step;
            const Eigen::VectorXd plus = eval(x);
            x[t] = -step;
            const Eigen::VectorXd minus = eval(x);
            x[t] = 0;
            jac.col(t) = (plus - minus) / (2 * step);
        }
        for (Eigen::Index t = 0; t < p; ++t) {
            const double norm = jac.col(t).norm();
            if (norm > 0) jac.col(t) /= norm;
        }
        Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(jac);
        qr.setThreshold(tol);
        return static_cast<std::size_t>(qr.rank());
    }

private:
    std::size_t h_, k_, n_, i_ = 0;
    CMat vb_, lb_;
    std::vector<CMat> cs_, ds_;
};

}  // namespace

std::size_t chart_parameter_count(const Configuration& c) { return Chart(c).params(); }

std::size_t chart_jacobian_rank(const Configuration& c, double step, double tol) {
    return Chart(c).jacobian_rank(step, tol);
}

VerificationReport check_dimension(const StratumId& s, std::size_t samples, double tol, std::uint64_t seed,
                                   Execution mode) {
    if (!is_stratum_nonempty(s)) throw Error(ErrorCode::EmptyStratum, "stratum is empty");
    if (!(tol > 0)) throw Error(ErrorCode::OutOfRange, "tolerance must be positive");
    const std::size_t expected = 2 * stratum_dimension(s);
    Json params = stratum_json(s);
    params["samples"] = samples;
    params["tol"] = tol;
    params["seed"] = seed;
    params["steps"] = {1e-4, 1e-5};
    params["bound"] = "lower bound by chart rank";
    return run_cases("dimension", std::move(params), samples, seed, mode,
                     [&](std::size_t, std::uint64_t cs) -> std::optional<std::string> {
                         const Chart chart(sample_configuration(s, cs));
                         const std::size_t coarse = chart.jacobian_rank(1e-4, tol);
                         const std::size_t fine = chart.jacobian_rank(1e-5, tol);
                         if (coarse == expected && fine == expected) return std::nullopt;
                         return "rank " + std::to_string(coarse) + " at step 1e-4, " + std::to_string(fine) +
                                " at step 1e-5, expected " + std::to_string(expected);
                     });
}

// ---------------------------------------------------------------------------
// Adjacency

Matrix orthogonal_projector(const Subspace& s) {
    const Matrix& x = s.basis();
    const Matrix xh = x.conj_transpose();
    return xh * inverse(x * xh) * x;
}

namespace {

Rational projector_distance(std::span<const Matrix> a, std::span<const Matrix> b) {
    Rational worst = 0;
    for (std::size_t j = 0; j < a.size(); ++j) worst = std::max(worst, max_abs_entry(a[j] - b[j]));
    return worst;
}

std::vector<Matrix> projectors(const std::vector<Subspace>& points) {
    std::vector<Matrix> out;
    for (const auto& p : points) out.push_back(orthogonal_projector(p));
    return out;
}

// Raises the sum dimension of c to target by tilting, each tilt of size t.
Configuration tilt_to(const Configuration& c, std::size_t target, const Rational& t) {
    const std::size_t k = c.k();
    const std::size_t n = c.n();
    std::vector<Matrix> bases;
    for (const auto& p : c.points()) bases.push_back(p.basis());
    std::size_t current = stratum_of(c);
    while (current < target) {
        const Matrix stacked = vstack(bases);
        // A row with a nonzero coefficient in a left-kernel vector is redundant.
        const Matrix dependencies = kernel(stacked.transpose());
        std::size_t row = 0;
        while (dependencies(0, row).is_zero()) ++row;
        const Subspace sum = Subspace::canonicalize(stacked);
        std::size_t fresh = 0;
        std::vector<GaussianRational> e(n);
        for (;; ++fresh) {
            std::fill(e.begin(), e.end(), GaussianRational{});
            e[fresh] = 1;
            if (!sum.contains(e)) break;
        }
        bases[row / k](row % k, fresh) += GaussianRational(t);
        ++current;
    }
    std::vector<Subspace> points;
    for (const auto& b : bases) points.push_back(Subspace::canonicalize(b));
    return Configuration(std::move(points));
}

constexpr int kMaxHalvings = 200;

}  // namespace

Rational chart_distance(const Configuration& a, const Configuration& b) {
    if (a.h() != b.h() || a.n() != b.n()) throw Error(ErrorCode::DimensionMismatch, "configurations differ in shape");
    const auto pa = projectors(a.points());
    const auto pb = projectors(b.points());
    return projector_distance(pa, pb);
}

std::optional<Configuration> adjacency_witness(const Configuration& c, std::size_t target_i, const Rational& eps) {
    if (stratum_of(c) == target_i) return c;
    const auto base = projectors(c.points());
    Rational t = 1;
    for (int attempt = 0; attempt < kMaxHalvings; ++attempt, t /= 2) {
        Configuration w = tilt_to(c, target_i, t);
        if (projector_distance(base, projectors(w.points())) < eps) return w;
    }
    return std::nullopt;
}

VerificationReport check_adjacency(const Configuration& c, std::size_t target_i, const Rational& eps,
                                   std::size_t trials, std::uint64_t seed, Execution mode) {
    const std::size_t j = stratum_of(c);
    if (target_i < j || target_i > std::min(c.h() * c.k(), c.n())) {
        throw Error(ErrorCode::Unreachable, "target stratum is not in the closure range");
    }
    if (sgn(eps) <= 0) throw Error(ErrorCode::OutOfRange, "eps must be positive");

    const auto base = projectors(c.points());
    Json params{{"h", c.h()}, {"k", c.k()}, {"n", c.n()}, {"from_i", j}, {"target_i", target_i},
                {"eps", eps.get_str()}, {"trials", trials}, {"seed", seed}};

    const auto witness_case = [&](const Rational& radius) -> std::optional<std::string> {
        const auto w = adjacency_witness(c, target_i, radius);
        if (!w) return "no witness within " + radius.get_str();
        if (stratum_of(*w) != target_i) return "witness lies in stratum " + std::to_string(stratum_of(*w));
        if (projector_distance(base, projectors(w->points())) >= radius) return "witness too far";
        return std::nullopt;
    };

    const auto perturbation_case = [&](std::uint64_t cs) -> std::optional<std::string> {
        Rng rng(cs);
        std::vector<Matrix> directions;
        for (const auto& p : c.points()) {
            Matrix e(p.k(), p.n());
            for (std::size_t r = 0; r < e.rows(); ++r) {
                for (std::size_t col = 0; col < e.cols(); ++col) {
                    e(r, col) = GaussianRational(Rational(rng.uniform(-1, 1)), Rational(rng.uniform(-1, 1)));
                }
            }
            directions.push_back(std::move(e));
        }
        Rational delta = eps;
        for (int attempt = 0; attempt < kMaxHalvings; ++attempt, delta /= 2) {
            std::vector<Subspace> moved;
            bool full_rank = true;
            for (std::size_t p = 0; p < c.h() && full_rank; ++p) {
                const Matrix raw = c[p].basis() + GaussianRational(delta) * directions[p];
                if (rank(raw) != c.k()) full_rank = false;
                else moved.push_back(Subspace::canonicalize(raw));
            }
            if (!full_rank || projector_distance(base, projectors(moved)) >= eps) continue;
            const std::size_t dim = sum_dimension(moved);
            if (dim < j) return "perturbation dropped to stratum " + std::to_string(dim);
            return std::nullopt;
        }
        return "no perturbation within eps";
    };

    return run_cases("adjacency", std::move(params), trials + 2, seed, mode,
                     [&](std::size_t index, std::uint64_t cs) -> std::optional<std::string> {
                         if (index == 0) return witness_case(eps);
                         if (index == 1) return witness_case(eps / 2);
                         return perturbation_case(cs);
                     });
}

// ---------------------------------------------------------------------------
// Round trips

std::string to_string(RoundTrip which) {
    switch (which) {
        case RoundTrip::Gamma: return "gamma";
        case RoundTrip::Pr: return "pr";
        case RoundTrip::Eta: return "eta";
    }
    return {};
}

RoundTrip round_trip_from_string(const std::string& name) {
    if (name == "gamma") return RoundTrip::Gamma;
    if (name == "pr") return RoundTrip::Pr;
    if (name == "eta") return RoundTrip::Eta;
    throw Error(ErrorCode::Parse, "unknown suite " + name);
}

StratumId default_roundtrip_stratum(RoundTrip which) {
    switch (which) {
        case RoundTrip::Gamma: return {2, 3, 2, 5};
        case RoundTrip::Pr: return {3, 6, 2, 6};
        case RoundTrip::Eta: return {2, 3, 2, 4};
    }
    return {};
}

namespace {

using Check = std::optional<std::string>;

Subspace random_in_chart(const Trivialization& triv, Rng& rng) {
    for (;;) {
        Subspace s = random_subspace(triv.base_point.k(), triv.base_point.n(), rng);
        if (triv.in_chart(s)) return s;
    }
}

Check gamma_case(const StratumId& s, std::uint64_t seed) {
    Rng rng(mix_seed(seed, 1));
    const Configuration c = sample_configuration(s, seed);
    const Subspace sum = subspace_sum(c.points());
    const Trivialization triv = Trivialization::random_around(sum, rng);
    const auto p = gamma_trivialize(c, triv);
    if (p.base != sum) return "base component differs from the sum map";
    if (gamma_untrivialize(p, triv) != c) return "lift of the chart point differs from the sample";

    // For h = 1 the fiber F_1^k(k, k) is the single point V0.
    const Configuration local = s.i == s.k ? Configuration({whole_space(s.i)})
                                           : sample_configuration({s.h, s.i, s.k, s.i}, mix_seed(seed, 2));
    std::vector<Subspace> inside;
    for (const auto& h : local.points()) inside.push_back(embed_in(h, triv.base_point));
    const GammaChartPoint q{random_in_chart(triv, rng), Configuration(std::move(inside))};
    const Configuration lifted = gamma_untrivialize(q, triv);
    if (stratum_of(lifted) != s.i) return "lifted chart point left the stratum";
    if (subspace_sum(lifted.points()) != q.base) return "lifted chart point has the wrong sum";
    if (gamma_trivialize(lifted, triv) != q) return "chart point does not return";
    return std::nullopt;
}

Check pr_case(const StratumId& s, std::uint64_t seed) {
    if (s.h < 2 || s.i != s.h * s.k) throw Error(ErrorCode::InvalidStratum, "pr suite needs h >= 2 and i = hk");
    Rng rng(mix_seed(seed, 1));
    const Configuration c = sample_configuration(s, seed);
    const Configuration head = pr_forget_last(c);
    const Trivialization triv = Trivialization::random_around(subspace_sum(head.points()), rng);
    const auto p = pr_trivialize(c, triv);
    if (p.base != head) return "base component differs from the forget-last map";
    if (p.fiber.coordinates.has_value() != (s.n == s.h * s.k)) return "fiber coordinates present on the wrong stratum";
    if (pr_untrivialize(p, triv) != c) return "lift of the chart point differs from the sample";

    // A random chart point: another base configuration plus a fiber transverse to V0.
    const StratumId below{s.h - 1, (s.h - 1) * s.k, s.k, s.n};
    Configuration base = sample_configuration(below, mix_seed(seed, 2));
    for (std::uint64_t t = 3; !triv.in_chart(subspace_sum(base.points())); ++t) {
        base = sample_configuration(below, mix_seed(seed, t));
    }
    Subspace image = random_subspace(s.k, s.n, rng);
    while (intersection_dimension(image, triv.base_point) != 0) image = random_subspace(s.k, s.n, rng);
    std::optional<Matrix> coords;
    if (s.n == s.h * s.k) coords = chart_coordinates(image, triv.base_point);
    const PrChartPoint q{base, {image, coords}};
    const Configuration lifted = pr_untrivialize(q, triv);
    if (pr_forget_last(lifted) != base) return "lifted chart point has the wrong base";
    if (pr_trivialize(lifted, triv) != q) return "chart point does not return";
    return std::nullopt;
}

Check eta_case(const StratumId& s, std::uint64_t seed) {
    if (s.h != 2 || s.i >= 2 * s.k) throw Error(ErrorCode::InvalidStratum, "eta suite needs h = 2 and i < 2k");
    Rng rng(mix_seed(seed, 1));
    const Configuration c = sample_configuration(s, seed);
    const Subspace meet = eta(c);
    if (meet.k() != 2 * s.k - s.i) return "intersection has the wrong dimension";
    const Trivialization triv = Trivialization::random_around(meet, rng);
    const auto p = eta_fiber_point(c, triv);
    if (p.base != meet) return "base component differs from the intersection map";
    const Configuration pair({coordinates_in(p.fiber.first, triv.complement),
                              coordinates_in(p.fiber.second, triv.complement)});
    if (stratum_of(pair) != 2 * (s.i - s.k)) return "quotient pair is not in stratum 2(i - k)";
    if (eta_fiber_lift(p, triv) != c) return "lift of the chart point differs from the sample";

    const StratumId quotient{2, 2 * (s.i - s.k), s.i - s.k, s.n - 2 * s.k + s.i};
    const Configuration local = sample_configuration(quotient, mix_seed(seed, 2));
    const EtaChartPoint q{random_in_chart(triv, rng),
                          {embed_in(local[0], triv.complement), embed_in(local[1], triv.complement)}};
    const Configuration lifted = eta_fiber_lift(q, triv);
    if (stratum_of(lifted) != s.i) return "lifted chart point left the stratum";
    if (eta(lifted) != q.base) return "lifted chart point has the wrong intersection";
    if (eta_fiber_point(lifted, triv) != q) return "chart point does not return";
    return std::nullopt;
}

}  // namespace

VerificationReport run_roundtrip_suite(RoundTrip which, std::span<const StratumId> grid, std::size_t cases,
                                       std::uint64_t seed, Execution mode) {
    const std::vector<StratumId> strata(grid.begin(), grid.end());
    Json g = Json::array();
    for (const auto& s : strata) g.push_back(stratum_json(s));
    Json params{{"grid", std::move(g)}, {"cases", cases}, {"seed", seed}};
    const std::string name = to_string(which);
    return run_cases(name, std::move(params), strata.empty() ? 0 : cases, seed, mode,
                     [&](std::size_t index, std::uint64_t cs) -> std::optional<std::string> {
                         const StratumId& s = strata[index % strata.size()];
                         switch (which) {
                             case RoundTrip::Gamma: return gamma_case(s, cs);
                             case RoundTrip::Pr: return pr_case(s, cs);
                             case RoundTrip::Eta: return eta_case(s, cs);
                         }
                         return std::nullopt;
                     });
}

}  // namespace grstrata
