#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <istream>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <vector>

#include "faces.hpp"
#include "graph.hpp"

namespace formality {

using Complex = std::complex<double>;
inline constexpr double PI = std::numbers::pi;

// Points of C+_{n,m}: n distinct upper-half-plane points, m increasing reals.
struct Configuration {
    std::vector<Complex> aerial;
    std::vector<double> ground;
};

// Hyperbolic angle Arg((a - p)/(a - conj p)), normalized to [0, 2pi).
// Zero for real p.
inline double angle(Complex p, Complex a) {
    if (a == p) throw std::domain_error("angle: coincident points");
    if (p.imag() == 0.0) return 0.0;
    double v = std::arg((a - p) / (a - std::conj(p)));
    if (v < 0) v += 2 * PI;
    return v;
}

// --- charts of section-style coordinates on the quotient ---

struct Chart {
    int choice = 1;   // 1 | 2 | 3
    int j0 = 1;       // fixed aerial point (choices 1, 2)
    int l0 = 1;       // fixed ground point (choices 2, 3)
    int l1 = 2;       // second fixed ground point (choice 3)
};

inline Chart default_chart(int n, int m) {
    if (m >= 2) return Chart{3, 1, 1, 2};
    if (m == 1 && n >= 1) return Chart{2, 1, 1, 2};
    if (n >= 1) return Chart{1, 1, 1, 2};
    return Chart{3, 1, 1, 2};  // zero-dimensional cases never sample
}

namespace detail {

enum class CoordKind { AerialX, AerialY, AerialTheta, Ground };

struct Coord {
    CoordKind kind;
    int index;            // aerial or ground vertex, 1-based
    bool full_line_y = false;  // cluster charts: y ranges over all of R
};

// u in (0,1) -> full line, with Jacobian
inline std::pair<double, double> map_full_line(double u) {
    double x = std::tan(PI * (u - 0.5));
    return {x, PI * (1 + x * x)};
}
// u in (0,1) -> (0, inf)
inline std::pair<double, double> map_half_line(double u) {
    double x = std::tan(PI * u / 2);
    return {x, (PI / 2) * (1 + x * x)};
}

struct ChartFrame {
    std::vector<Coord> coords;   // in orientation order
    int prefactor = 1;
    int n = 0, m = 0;
    Chart chart;
    bool cluster = false;        // internal C_n chart (Euclidean angles)
};

inline ChartFrame build_frame(Chart const& c, int n, int m) {
    ChartFrame f;
    f.n = n; f.m = m; f.chart = c;
    switch (c.choice) {
        case 1: {
            if (n < 1 || c.j0 < 1 || c.j0 > n)
                throw std::invalid_argument("chart 1 needs an aerial point to fix");
            for (int j = 1; j <= n; ++j)
                if (j != c.j0) {
                    f.coords.push_back({CoordKind::AerialX, j});
                    f.coords.push_back({CoordKind::AerialY, j});
                }
            for (int l = 1; l <= m; ++l) f.coords.push_back({CoordKind::Ground, l});
            f.prefactor = 1;
            break;
        }
        case 2: {
            if (n < 1 || m < 1 || c.j0 < 1 || c.j0 > n || c.l0 < 1 || c.l0 > m)
                throw std::invalid_argument("chart 2 needs an aerial and a ground point");
            f.coords.push_back({CoordKind::AerialTheta, c.j0});
            for (int j = 1; j <= n; ++j)
                if (j != c.j0) {
                    f.coords.push_back({CoordKind::AerialX, j});
                    f.coords.push_back({CoordKind::AerialY, j});
                }
            for (int l = 1; l <= m; ++l)
                if (l != c.l0) f.coords.push_back({CoordKind::Ground, l});
            f.prefactor = (c.l0 - 1) % 2 ? -1 : 1;
            break;
        }
        case 3: {
            if (m < 2 || c.l0 >= c.l1 || c.l0 < 1 || c.l1 > m)
                throw std::invalid_argument("chart 3 needs two ground points l0 < l1");
            for (int j = 1; j <= n; ++j) {
                f.coords.push_back({CoordKind::AerialX, j});
                f.coords.push_back({CoordKind::AerialY, j});
            }
            for (int l = 1; l <= m; ++l)
                if (l != c.l0 && l != c.l1) f.coords.push_back({CoordKind::Ground, l});
            f.prefactor = (c.l0 + c.l1 + 1) % 2 ? -1 : 1;
            break;
        }
        default:
            throw std::invalid_argument("chart choice must be 1, 2 or 3");
    }
    if (static_cast<int>(f.coords.size()) != 2 * n + m - 2)
        throw std::logic_error("chart dimension mismatch");
    return f;
}

// Internal cluster space C_{n1} (quotient by z -> az+b, a>0, b in C):
// z_1 = 0, z_2 = e^{i theta} with theta in (0, 2pi), remaining points free
// in the whole plane.  Orientation d theta_2 ^ (da_3 ^ db_3) ^ ...
inline ChartFrame build_cluster_frame(int n1) {
    if (n1 < 2) throw std::invalid_argument("cluster chart needs >= 2 points");
    ChartFrame f;
    f.n = n1; f.m = 0; f.cluster = true;
    f.coords.push_back({CoordKind::AerialTheta, 2});
    for (int j = 3; j <= n1; ++j) {
        f.coords.push_back({CoordKind::AerialX, j});
        f.coords.push_back({CoordKind::AerialY, j, true});
    }
    f.prefactor = 1;
    return f;
}

struct Sample {
    Configuration cfg;
    double jacobian = 0;   // of the (0,1)^D -> coords map
    bool in_domain = false;
    std::vector<double> theta;  // per aerial vertex, for Theta coords
};

inline Sample draw(ChartFrame const& f, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    Sample s;
    s.cfg.aerial.assign(f.n, Complex(0, 0));
    s.cfg.ground.assign(f.m, 0.0);
    s.theta.assign(f.n + 1, 0.0);
    s.jacobian = 1.0;
    // fixed points
    if (!f.cluster) {
        if (f.chart.choice == 1) s.cfg.aerial[f.chart.j0 - 1] = Complex(0, 1);
        if (f.chart.choice == 2) s.cfg.ground[f.chart.l0 - 1] = 0.0;
        if (f.chart.choice == 3) {
            s.cfg.ground[f.chart.l0 - 1] = 0.0;
            s.cfg.ground[f.chart.l1 - 1] = 1.0;
        }
    }
    std::vector<double> xs(f.n, 0.0), ys(f.n, 0.0);
    for (auto const& c : f.coords) {
        double u = uni(rng);
        switch (c.kind) {
            case CoordKind::AerialX: {
                auto [v, j] = map_full_line(u);
                xs[c.index - 1] = v;
                s.jacobian *= j;
                break;
            }
            case CoordKind::AerialY: {
                auto [v, j] = c.full_line_y ? map_full_line(u) : map_half_line(u);
                ys[c.index - 1] = v;
                s.jacobian *= j;
                break;
            }
            case CoordKind::AerialTheta: {
                double range = f.cluster ? 2 * PI : PI;
                s.theta[c.index] = range * u;
                s.jacobian *= range;
                break;
            }
            case CoordKind::Ground: {
                auto [v, j] = map_full_line(u);
                s.cfg.ground[c.index - 1] = v;
                s.jacobian *= j;
                break;
            }
        }
    }
    for (auto const& c : f.coords) {
        if (c.kind == CoordKind::AerialX || c.kind == CoordKind::AerialY)
            s.cfg.aerial[c.index - 1] = Complex(xs[c.index - 1], ys[c.index - 1]);
        if (c.kind == CoordKind::AerialTheta) {
            double t = s.theta[c.index];
            s.cfg.aerial[c.index - 1] = Complex(std::cos(t), std::sin(t));
        }
    }
    if (f.cluster) s.cfg.aerial[0] = Complex(0, 0);
    // domain: ground strictly increasing
    s.in_domain = true;
    for (int l = 1; l < f.m; ++l)
        if (!(s.cfg.ground[l - 1] < s.cfg.ground[l])) s.in_domain = false;
    return s;
}

inline double min_separation(Configuration const& cfg, bool cluster) {
    double sep = 1e300;
    auto upd = [&](double v) { if (v < sep) sep = v; };
    for (size_t i = 0; i < cfg.aerial.size(); ++i)
        for (size_t j = i + 1; j < cfg.aerial.size(); ++j)
            upd(std::abs(cfg.aerial[i] - cfg.aerial[j]));
    if (!cluster) {
        for (auto z : cfg.aerial)
            for (double q : cfg.ground) upd(std::abs(z - Complex(q, 0)));
        for (size_t i = 0; i + 1 < cfg.ground.size(); ++i)
            upd(cfg.ground[i + 1] - cfg.ground[i]);
    }
    return sep;
}

// Motion of a point under a unit change of the given coordinate.
inline Complex point_motion(Coord const& c, int vertex, bool is_ground,
                            Sample const& s) {
    if (is_ground) {
        if (c.kind == CoordKind::Ground && c.index == vertex) return Complex(1, 0);
        return Complex(0, 0);
    }
    if (c.kind == CoordKind::AerialX && c.index == vertex) return Complex(1, 0);
    if (c.kind == CoordKind::AerialY && c.index == vertex) return Complex(0, 1);
    if (c.kind == CoordKind::AerialTheta && c.index == vertex)
        return Complex(0, 1) * s.cfg.aerial[vertex - 1];  // d/dtheta e^{i theta}
    return Complex(0, 0);
}

// Row of angle partials for one edge, in coordinate order.  Exact closed-form
// partials of Arg: dPhi = Im(dw / w).
inline void angle_partials(ChartFrame const& f, Sample const& s,
                           GraphEdge const& e, std::vector<double>& row) {
    Complex z = s.cfg.aerial[e.src - 1];
    Complex a = e.to_ground ? Complex(s.cfg.ground[e.dst - 1], 0)
                            : s.cfg.aerial[e.dst - 1];
    row.assign(f.coords.size(), 0.0);
    if (f.cluster) {
        Complex w = a - z;
        for (size_t c = 0; c < f.coords.size(); ++c) {
            Complex dz = point_motion(f.coords[c], e.src, false, s);
            Complex da = point_motion(f.coords[c], e.dst, e.to_ground, s);
            row[c] = std::imag((da - dz) / w);
        }
        return;
    }
    Complex denom = a - std::conj(z);
    Complex w = (a - z) / denom;
    Complex w_a = (z - std::conj(z)) / (denom * denom);
    Complex w_z = -1.0 / denom;
    Complex w_zb = (a - z) / (denom * denom);
    for (size_t c = 0; c < f.coords.size(); ++c) {
        Complex dz = point_motion(f.coords[c], e.src, false, s);
        Complex da = point_motion(f.coords[c], e.dst, e.to_ground, s);
        Complex dw = w_a * da + w_z * dz + w_zb * std::conj(dz);
        row[c] = std::imag(dw / w);
    }
}

// Finite-difference cross-check variant of the same row.
inline void angle_partials_fd(ChartFrame const& f, Sample const& s,
                              GraphEdge const& e, std::vector<double>& row) {
    double const h = 1e-6;
    row.assign(f.coords.size(), 0.0);
    auto phi = [&](Complex z, Complex a) {
        return f.cluster ? std::arg(a - z) : std::arg((a - z) / (a - std::conj(z)));
    };
    Complex z0 = s.cfg.aerial[e.src - 1];
    Complex a0 = e.to_ground ? Complex(s.cfg.ground[e.dst - 1], 0)
                             : s.cfg.aerial[e.dst - 1];
    for (size_t c = 0; c < f.coords.size(); ++c) {
        Complex dz = point_motion(f.coords[c], e.src, false, s);
        Complex da = point_motion(f.coords[c], e.dst, e.to_ground, s);
        double p = phi(z0 + h * dz, a0 + h * da);
        double q = phi(z0 - h * dz, a0 - h * da);
        double diff = p - q;
        while (diff > PI) diff -= 2 * PI;
        while (diff < -PI) diff += 2 * PI;
        row[c] = diff / (2 * h);
    }
}

inline double det_inplace(std::vector<std::vector<double>>& mat) {
    int const n = static_cast<int>(mat.size());
    double det = 1.0;
    for (int i = 0; i < n; ++i) {
        int piv = i;
        for (int r = i + 1; r < n; ++r)
            if (std::abs(mat[r][i]) > std::abs(mat[piv][i])) piv = r;
        if (mat[piv][i] == 0.0) return 0.0;
        if (piv != i) { std::swap(mat[piv], mat[i]); det = -det; }
        det *= mat[i][i];
        for (int r = i + 1; r < n; ++r) {
            double fac = mat[r][i] / mat[i][i];
            for (int c = i; c < n; ++c) mat[r][c] -= fac * mat[i][c];
        }
    }
    return det;
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t batch) {
    std::uint64_t x = seed + 0x9e3779b97f4a7c15ull * (batch + 1);
    x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
    x ^= x >> 27; x *= 0x94d049bb133111ebull;
    x ^= x >> 31;
    return x;
}

} // namespace detail

enum class Normalization { Ordered, Grouped };  // 1/E!  vs  1/(k_1!...k_n!)

struct WeightEstimate {
    double mean = 0;
    double stderr_ = 0;
    long long samples = 0;
    std::uint64_t seed = 0;
    long long rejected = 0;  // near-degenerate samples

    WeightEstimate scaled(double c) const {
        return {mean * c, stderr_ * std::abs(c), samples, seed, rejected};
    }
};

namespace detail {

inline double normalization_factor(AdmissibleGraph const& g, Normalization norm) {
    double f = std::pow(2 * PI, g.edge_count());
    if (norm == Normalization::Ordered) {
        for (int i = 2; i <= g.edge_count(); ++i) f *= i;
    } else {
        for (int k : g.out_degrees())
            for (int i = 2; i <= k; ++i) f *= i;
    }
    return f;
}

inline WeightEstimate integrate(AdmissibleGraph const& g, ChartFrame const& f,
                                long long samples, std::uint64_t seed,
                                Normalization norm, bool finite_diff = false) {
    int const E = g.edge_count();
    double const scale = f.prefactor / normalization_factor(g, norm);
    long long const batch_size = 8192;
    double total = 0, total_sq = 0;
    long long rejected = 0, done = 0;
    std::vector<std::vector<double>> mat(E);
    for (long long batch = 0; done < samples; ++batch) {
        std::mt19937_64 rng(mix_seed(seed, static_cast<std::uint64_t>(batch)));
        double bsum = 0, bsumsq = 0;
        long long const want = std::min(batch_size, samples - done);
        for (long long i = 0; i < want; ++i) {
            Sample s = draw(f, rng);
            double v = 0;
            if (s.in_domain) {
                if (min_separation(s.cfg, f.cluster) < 1e-9) {
                    ++rejected;
                } else {
                    for (int e = 0; e < E; ++e)
                        (finite_diff ? angle_partials_fd : angle_partials)(
                            f, s, g.edges[e], mat[e]);
                    v = scale * s.jacobian * det_inplace(mat);
                    if (!std::isfinite(v)) { v = 0; ++rejected; }
                }
            }
            bsum += v;
            bsumsq += v * v;
        }
        total += bsum;
        total_sq += bsumsq;
        done += want;
    }
    WeightEstimate w;
    w.samples = samples;
    w.seed = seed;
    w.rejected = rejected;
    w.mean = total / samples;
    double var = std::max(0.0, total_sq / samples - w.mean * w.mean);
    w.stderr_ = std::sqrt(var / samples);
    return w;
}

} // namespace detail

// Monte-Carlo weight of a graph over C+_{n,m}.  Exact 0 when the form degree
// does not match the space dimension; exact 1 for the empty graph on a
// zero-dimensional space.
inline WeightEstimate weight_mc(AdmissibleGraph const& g, Chart const& chart,
                                long long samples, std::uint64_t seed,
                                Normalization norm = Normalization::Ordered,
                                bool finite_diff = false) {
    int const dim = 2 * g.n + g.m - 2;
    if (g.edge_count() != dim) return {0, 0, 0, seed, 0};
    if (dim == 0) return {1, 0, 0, seed, 0};
    auto frame = detail::build_frame(chart, g.n, g.m);
    return detail::integrate(g, frame, samples, seed, norm, finite_diff);
}

inline WeightEstimate weight_mc(AdmissibleGraph const& g, long long samples,
                                std::uint64_t seed,
                                Normalization norm = Normalization::Ordered) {
    int const dim = 2 * g.n + g.m - 2;
    if (g.edge_count() != dim) return {0, 0, 0, seed, 0};
    if (dim == 0) return {1, 0, 0, seed, 0};
    return weight_mc(g, default_chart(g.n, g.m), samples, seed, norm);
}

// Weight of a cluster graph over the internal space C_{n1} (dimension
// 2 n1 - 3, Euclidean angle forms).
inline WeightEstimate internal_weight_mc(AdmissibleGraph const& g,
                                         long long samples, std::uint64_t seed) {
    if (g.m != 0) throw std::invalid_argument("internal weight: cluster graphs have no ground");
    int const dim = 2 * g.n - 3;
    if (g.edge_count() != dim) return {0, 0, 0, seed, 0};
    if (dim == 0) return {1, 0, 0, seed, 0};
    auto frame = detail::build_cluster_frame(g.n);
    return detail::integrate(g, frame, samples, seed, Normalization::Ordered);
}

// Signed, factorized integral of the weight form over one boundary face.
inline WeightEstimate face_integral(AdmissibleGraph const& g, BoundaryFace const& face,
                                    long long samples, std::uint64_t seed) {
    std::optional<CollapsedPair> cp =
        face.kind == 1 ? collapse_type1(g, face.S)
                       : collapse_type2(g, face.S, face.l, face.m1);
    if (!cp) return {0, 0, 0, seed, 0};
    WeightEstimate wi = face.kind == 1
        ? internal_weight_mc(cp->inner, samples, seed)
        : weight_mc(cp->inner, samples, seed);
    WeightEstimate wo = weight_mc(cp->outer, samples, detail::mix_seed(seed, 0x0face));
    double c = face_sign(face).value * cp->edge_shuffle.value *
               scalar_traits<Rat>::to_double(orientation_multiplicity(cp->inner, cp->outer));
    WeightEstimate out;
    out.mean = c * wi.mean * wo.mean;
    out.stderr_ = std::abs(c) * std::hypot(wi.mean * wo.stderr_, wo.mean * wi.stderr_);
    out.samples = samples;
    out.seed = seed;
    out.rejected = wi.rejected + wo.rejected;
    return out;
}

// Sum of the signed face integrals of a closed form of degree dim-1: zero by
// Stokes, up to Monte-Carlo error.
inline WeightEstimate stokes_residual(AdmissibleGraph const& g, long long samples,
                                      std::uint64_t seed) {
    if (g.edge_count() != 2 * g.n + g.m - 3)
        throw std::invalid_argument("stokes_residual: form degree must be dim-1");
    WeightEstimate out;
    out.samples = samples;
    out.seed = seed;
    double var = 0;
    int face_no = 0;
    for (auto const& face : enumerate_faces(g.n, g.m)) {
        WeightEstimate fi =
            face_integral(g, face, samples, detail::mix_seed(seed, 0xfa00 + face_no++));
        out.mean += fi.mean;
        var += fi.stderr_ * fi.stderr_;
        out.rejected += fi.rejected;
    }
    out.stderr_ = std::sqrt(var);
    return out;
}

// Memoizing provider of grouped-normalization weights for the assembly code.
class WeightProvider {
public:
    WeightProvider(long long samples, std::uint64_t seed)
        : samples_(samples), seed_(seed) {}

    WeightEstimate get(AdmissibleGraph const& g) const {
        auto it = cache_.find(g);
        if (it != cache_.end()) return it->second;
        WeightEstimate w = weight_mc(g, samples_, seed_ ^ graph_hash(g),
                                     Normalization::Grouped);
        cache_.emplace(g, w);
        return w;
    }
    long long samples() const { return samples_; }
    std::uint64_t seed() const { return seed_; }

private:
    long long samples_;
    std::uint64_t seed_;
    mutable std::map<AdmissibleGraph, WeightEstimate> cache_;
};

// --- weight table: one line per graph ---
// hash n m E src:kind:dst,... mean stderr samples seed

inline void write_weight_row(std::ostream& os, AdmissibleGraph const& g,
                             WeightEstimate const& w) {
    os << graph_hash(g) << ' ' << g.n << ' ' << g.m << ' ' << g.edge_count() << ' ';
    if (g.edges.empty()) os << '-';
    for (size_t i = 0; i < g.edges.size(); ++i) {
        if (i) os << ',';
        os << g.edges[i].src << ':' << (g.edges[i].to_ground ? 'g' : 'a') << ':'
           << g.edges[i].dst;
    }
    char buf[128];
    snprintf(buf, sizeof buf, " %.17g %.17g %lld %llu", w.mean, w.stderr_,
             w.samples, static_cast<unsigned long long>(w.seed));
    os << buf << '\n';
}

} // namespace formality
