#include "numrange/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "numrange/linalg.hpp"
#include "numrange/parallel.hpp"

namespace numrange {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (int i = 0; i < 4; ++i) s_[i] = splitmix64(sm);
}

Rng Rng::for_trial(RngSeed seed, std::uint64_t trial) {
    std::uint64_t mix = seed.seed ^ (0x9e3779b97f4a7c15ull * (trial + 1));
    return Rng(splitmix64(mix));
}

std::uint64_t Rng::next_u64() {
    std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Rng::next_double() { return double(next_u64() >> 11) * 0x1.0p-53; }

double Rng::next_normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;  // (0, 1]
    double u2 = next_double();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    cached_normal_ = r * std::sin(a);
    has_cached_ = true;
    return r * std::cos(a);
}

Complex Rng::next_complex_normal() {
    double re = next_normal();
    double im = next_normal();
    return Complex(re * M_SQRT1_2, im * M_SQRT1_2);
}

Complex Rng::next_unit_disk() {
    double r = std::sqrt(next_double());
    double a = 2.0 * M_PI * next_double();
    return std::polar(r, a);
}

CVector sample_complex_gaussian(std::size_t n, Rng& rng) {
    if (n < 1) throw DomainError("sample_complex_gaussian: n must be >= 1");
    CVector v(n);
    for (Complex& z : v) z = rng.next_complex_normal();
    return v;
}

CVector sample_sphere(std::size_t n, Rng& rng) {
    if (n < 1) throw DomainError("sample_sphere: n must be >= 1");
    for (int attempt = 0; attempt < 64; ++attempt) {
        CVector v = sample_complex_gaussian(n, rng);
        double nv = norm2(v);
        if (nv > 0) {
            for (Complex& z : v) z /= nv;
            return v;
        }
    }
    throw DomainError("sample_sphere: degenerate draw");
}

std::size_t MatrixSpec::dimension() const {
    switch (kind) {
        case MatrixKind::roots_of_unity:
        case MatrixKind::laplacian_1d:
        case MatrixKind::ellipse_rank1:
            return n;
        case MatrixKind::radial_roots:
        case MatrixKind::correlated_eigvecs:
            return ell * m * m;
        case MatrixKind::circle_mult:
            return k * ell;
        case MatrixKind::explicit_matrix:
            return entries.rows();
    }
    return 0;
}

namespace {

CVector radial_root_eigenvalues(std::size_t m, std::size_t ell) {
    // r (x) theta (x) ones with r_q = sqrt(q/m), theta_p = exp(2 pi i p / m)
    CVector lam(ell * m * m);
    std::size_t idx = 0;
    for (std::size_t q = 1; q <= m; ++q) {
        double r = std::sqrt(double(q) / double(m));
        for (std::size_t p = 1; p <= m; ++p) {
            Complex value = r * std::polar(1.0, 2.0 * M_PI * double(p) / double(m));
            for (std::size_t l = 0; l < ell; ++l) lam[idx++] = value;
        }
    }
    return lam;
}

}  // namespace

BuiltMatrix build_matrix(const MatrixSpec& spec) {
    BuiltMatrix out;
    switch (spec.kind) {
        case MatrixKind::roots_of_unity: {
            if (spec.n < 1) throw DomainError("build_matrix: roots_of_unity needs n >= 1");
            CVector lam(spec.n);
            for (std::size_t j = 1; j <= spec.n; ++j)
                lam[j - 1] = std::polar(1.0, 2.0 * M_PI * double(j) / double(spec.n));
            out.a = CMatrix::diagonal(lam);
            out.eigenvalues = std::move(lam);
            out.normal = true;
            return out;
        }
        case MatrixKind::laplacian_1d: {
            if (spec.n < 1) throw DomainError("build_matrix: laplacian_1d needs n >= 1");
            CMatrix a(spec.n, spec.n);
            for (std::size_t i = 0; i < spec.n; ++i) {
                a(i, i) = 2.0;
                if (i + 1 < spec.n) {
                    a(i, i + 1) = -1.0;
                    a(i + 1, i) = -1.0;
                }
            }
            CVector lam(spec.n);
            for (std::size_t j = 1; j <= spec.n; ++j)
                lam[j - 1] = 2.0 - 2.0 * std::cos(double(j) * M_PI / double(spec.n + 1));
            out.a = std::move(a);
            out.eigenvalues = std::move(lam);
            out.normal = true;
            return out;
        }
        case MatrixKind::radial_roots: {
            if (spec.m < 1 || spec.ell < 1)
                throw DomainError("build_matrix: radial_roots needs m, ell >= 1");
            if (spec.n != 0 && spec.n != spec.ell * spec.m * spec.m)
                throw DomainError("build_matrix: radial_roots requires n = ell*m^2");
            CVector lam = radial_root_eigenvalues(spec.m, spec.ell);
            out.a = CMatrix::diagonal(lam);
            out.eigenvalues = std::move(lam);
            out.normal = true;
            return out;
        }
        case MatrixKind::circle_mult: {
            if (spec.k < 1 || spec.ell < 1)
                throw DomainError("build_matrix: circle_mult needs k, ell >= 1");
            if (spec.n != 0 && spec.n != spec.k * spec.ell)
                throw DomainError("build_matrix: circle_mult requires n = k*ell");
            CVector lam(spec.k * spec.ell);
            std::size_t idx = 0;
            for (std::size_t j = 1; j <= spec.k; ++j) {
                Complex value = std::polar(1.0, 2.0 * M_PI * double(j) / double(spec.k));
                for (std::size_t l = 0; l < spec.ell; ++l) lam[idx++] = value;
            }
            out.a = CMatrix::diagonal(lam);
            out.eigenvalues = std::move(lam);
            out.normal = true;
            return out;
        }
        case MatrixKind::ellipse_rank1: {
            if (spec.n < 2) throw DomainError("build_matrix: ellipse_rank1 needs n >= 2");
            if (spec.gamma <= 0.0)
                throw DomainError("build_matrix: ellipse_rank1 needs gamma > 0");
            const std::size_t n = spec.n;
            CVector lam(n);
            for (std::size_t i = 0; i < n; ++i)
                lam[i] = std::cos(double(i) * M_PI / double(n - 1));
            CMatrix a = CMatrix::diagonal(lam);
            a(0, n - 1) += spec.gamma;

            // Eigenvectors are e_i except for lambda = -1, whose unit
            // eigenvector mixes e_1 and e_n through the rank-one coupling.
            double s = std::sqrt(1.0 + spec.gamma * spec.gamma / 4.0);
            CMatrix v = CMatrix::identity(n);
            v(0, n - 1) = -spec.gamma / (2.0 * s);
            v(n - 1, n - 1) = 1.0 / s;
            CMatrix v_inv = CMatrix::identity(n);
            v_inv(0, n - 1) = spec.gamma / 2.0;
            v_inv(n - 1, n - 1) = s;

            out.a = std::move(a);
            out.eigenvalues = std::move(lam);
            out.normal = false;
            out.v = std::move(v);
            out.v_inv = std::move(v_inv);
            return out;
        }
        case MatrixKind::correlated_eigvecs: {
            if (spec.m < 1 || spec.ell < 1)
                throw DomainError("build_matrix: correlated_eigvecs needs m, ell >= 1");
            const std::size_t n = spec.ell * spec.m * spec.m;
            if (spec.n != 0 && spec.n != n)
                throw DomainError("build_matrix: correlated_eigvecs requires n = ell*m^2");
            CVector lam = radial_root_eigenvalues(spec.m, spec.ell);

            // V is the Hermitian PSD square root of (1-c) I + c 11^T; its
            // columns have unit norm and V^-1 has the same rank-one shape.
            double c = std::pow(double(n), -2.0 / 3.0);
            double alpha = std::sqrt(1.0 - c);
            double beta = (std::sqrt(1.0 - c + c * double(n)) - alpha) / double(n);
            double ainv = 1.0 / alpha;
            double binv = -beta / (alpha * (alpha + beta * double(n)));

            Complex lam_sum = 0.0;
            for (Complex z : lam) lam_sum += z;
            CMatrix a(n, n);
            parallel_for(n, [&](std::size_t i) {
                for (std::size_t j = 0; j < n; ++j) {
                    Complex val = alpha * binv * lam[i] + beta * ainv * lam[j] +
                                  beta * binv * lam_sum;
                    if (i == j) val += alpha * ainv * lam[i];
                    a(i, j) = val;
                }
            });

            CMatrix v(n, n), v_inv(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    v(i, j) = beta + (i == j ? alpha : 0.0);
                    v_inv(i, j) = binv + (i == j ? ainv : 0.0);
                }

            out.a = std::move(a);
            out.eigenvalues = std::move(lam);
            out.normal = false;
            out.v = std::move(v);
            out.v_inv = std::move(v_inv);
            return out;
        }
        case MatrixKind::explicit_matrix: {
            require_square(spec.entries, "build_matrix(explicit)");
            out.a = spec.entries;
            out.normal = false;
            return out;
        }
    }
    throw DomainError("build_matrix: unknown kind");
}

BetaNormalReport beta_normality(const CMatrix& v, const CMatrix& v_inv) {
    require_square(v, "beta_normality");
    const std::size_t n = v.rows();
    if (v_inv.rows() != n || v_inv.cols() != n)
        throw DimensionError("beta_normality: inverse shape mismatch");

    for (std::size_t j = 0; j < n; ++j) {
        double cn = norm2(v.col(j));
        if (std::abs(cn - 1.0) > 1e-9)
            throw PreconditionError("beta_normality: columns of V must be unit norm");
    }
    {
        CMatrix prod = matmul(v_inv, v);
        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                err = std::max(err,
                               std::abs(prod(i, j) - (i == j ? Complex(1.0) : Complex(0.0))));
        if (err > 1e-8)
            throw PreconditionError("beta_normality: v_inv is not the inverse of V");
    }

    // gv[k][l] = |v_k^* v_l|, gw[l][j] = |w_l^* w_j| with W = (V^-1)^*.
    std::vector<double> gv(n * n), gw(n * n);
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex sv = 0.0, sw = 0.0;
            for (std::size_t l = 0; l < n; ++l) {
                sv += std::conj(v(l, i)) * v(l, j);
                sw += v_inv(i, l) * std::conj(v_inv(j, l));
            }
            gv[i * n + j] = std::abs(sv);
            gw[i * n + j] = std::abs(sw);
        }
    });

    // lhs(j,k) = sum_{l != k} gv[k][l] (gw[l][j] + gw[k][j])
    std::vector<double> rowsum(n, 0.0);
    for (std::size_t k2 = 0; k2 < n; ++k2)
        for (std::size_t l = 0; l < n; ++l) rowsum[k2] += gv[k2 * n + l];

    std::vector<double> best_per_k(n, -1.0);
    std::vector<std::size_t> best_j(n, 0);
    parallel_for(n, [&](std::size_t k2) {
        const double* gvk = gv.data() + k2 * n;
        double extra = rowsum[k2] - 2.0 * gvk[k2];
        for (std::size_t j = 0; j < n; ++j) {
            double prod = 0.0;
            for (std::size_t l = 0; l < n; ++l) prod += gvk[l] * gw[l * n + j];
            double lhs = prod + extra * gw[k2 * n + j];
            double normalized = lhs / gw[j * n + j];
            if (normalized > best_per_k[k2]) {
                best_per_k[k2] = normalized;
                best_j[k2] = j;
            }
        }
    });

    BetaNormalReport rep;
    double best = -1.0;
    for (std::size_t k2 = 0; k2 < n; ++k2)
        if (best_per_k[k2] > best) {
            best = best_per_k[k2];
            rep.worst_pair = {best_j[k2], k2};
        }
    rep.max_normalized_lhs = best;
    if (best <= 0.0)
        rep.beta_star = std::numeric_limits<double>::infinity();
    else
        rep.beta_star = -std::log(best) / std::log(double(n));
    return rep;
}

double convtonum_bound(const CMatrix& v, const CVector& lambda) {
    require_square(v, "convtonum_bound");
    for (Complex z : lambda)
        if (std::abs(z) > 1.0 + 1e-12)
            throw DomainError("convtonum_bound: ||Lambda|| must be <= 1");

    CMatrix g = matmul(v.adjoint(), v);
    std::vector<double> ev = hermitian_eigenvalues(g);
    double lmax = std::max(ev.back(), 0.0);
    if (lmax == 0.0 || ev.front() <= 1e-24 * lmax)
        throw SingularityError("convtonum_bound: singular V");

    double half_dev = 0.0, inv_half_dev = 0.0;
    for (double l : ev) {
        double r = std::sqrt(l);
        half_dev = std::max(half_dev, std::abs(r - 1.0));
        inv_half_dev = std::max(inv_half_dev, std::abs(1.0 / r - 1.0));
    }
    return std::sqrt(lmax) * inv_half_dev + half_dev;
}

// ---------------------------------------------------------------------------
// verify_prob
// ---------------------------------------------------------------------------

namespace {

CMatrix random_gaussian_matrix(std::size_t n, Rng& rng) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.next_complex_normal();
    return m;
}

double binomial_se(double p, long trials) {
    return std::sqrt(std::max(p * (1.0 - p), 1e-12) / double(trials));
}

VerifyReport verify_chisq_tail(const nlohmann::json& params, long trials, RngSeed seed) {
    int k = params.value("k", 100);
    double t = params.value("t", 0.5);
    std::vector<long> partial(64, 0);
    parallel_for(64, [&](std::size_t chunk) {
        long local = 0;
        for (long i = long(chunk); i < trials; i += 64) {
            Rng rng = Rng::for_trial(seed, std::uint64_t(i) + 1);
            double x = 0.0;
            for (int j = 0; j < k; ++j) {
                double g = rng.next_normal();
                x += g * g;
            }
            if (std::abs(x - k) >= k * t) ++local;
        }
        partial[chunk] = local;
    });
    long hits = 0;
    for (long p : partial) hits += p;

    VerifyReport rep;
    rep.name = "chisq_tail";
    rep.empirical = double(hits) / double(trials);
    rep.bound = 2.0 * std::exp(-double(k) * t * t / 8.0);
    rep.pass = rep.empirical <= rep.bound;
    rep.details = {{"k", k}, {"t", t}, {"trials", trials}};
    return rep;
}

VerifyReport verify_min_coord(const nlohmann::json& params, long trials, RngSeed seed) {
    std::size_t n = params.value("n", 32);
    double t = params.value("t", 0.1);
    Rng setup = Rng::for_trial(seed, 0);
    CMatrix m = random_gaussian_matrix(n, setup);
    double kappa = condition_number(m);
    double threshold = t / (double(n) * double(n) * kappa * kappa);

    std::vector<long> partial(64, 0);
    parallel_for(64, [&](std::size_t chunk) {
        long local = 0;
        for (long i = long(chunk); i < trials; i += 64) {
            Rng rng = Rng::for_trial(seed, std::uint64_t(i) + 1);
            CVector b = sample_sphere(n, rng);
            CVector mb = matvec(m, b);
            double total = norm2_squared(mb);
            double mn = std::numeric_limits<double>::infinity();
            for (Complex z : mb) mn = std::min(mn, std::norm(z));
            if (mn / total >= threshold) ++local;
        }
        partial[chunk] = local;
    });
    long hits = 0;
    for (long p : partial) hits += p;

    VerifyReport rep;
    rep.name = "min_coord";
    rep.empirical = double(hits) / double(trials);
    double se = binomial_se(rep.empirical, trials);
    rep.bound = 1.0 - M_E * t - 4.0 * se;  // lower bound on the probability
    rep.pass = rep.empirical >= rep.bound;
    rep.details = {{"n", n}, {"t", t}, {"kappa", kappa}, {"trials", trials}, {"se", se}};
    return rep;
}

VerifyReport verify_quad_form_stats(const nlohmann::json& params, long trials,
                                    RngSeed seed) {
    std::size_t n = params.value("n", 48);
    Rng setup = Rng::for_trial(seed, 0);
    CMatrix m = hermitian_part(random_gaussian_matrix(n, setup));
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i).real();
    double frob2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) frob2 += std::norm(m(i, j));

    std::vector<double> xs(trials);
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i + 1);
        CVector b = sample_complex_gaussian(n, rng);
        xs[i] = dot(b, matvec(m, b)).real();
    });

    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= double(trials);
    double var = 0.0, m4 = 0.0;
    for (double x : xs) {
        double d = x - mean;
        var += d * d;
        m4 += d * d * d * d;
    }
    var /= double(trials);
    m4 /= double(trials);

    double se_mean = std::sqrt(var / double(trials));
    double se_var = std::sqrt(std::max(m4 - var * var, 0.0) / double(trials));

    VerifyReport rep;
    rep.name = "quad_form_stats";
    double mean_err = std::abs(mean - trace);
    double var_err = std::abs(var - frob2);
    rep.empirical = std::max(mean_err / (4.0 * se_mean), var_err / (4.0 * se_var));
    rep.bound = 1.0;
    rep.pass = mean_err <= 4.0 * se_mean && var_err <= 4.0 * se_var;
    rep.details = {{"n", n},           {"trace", trace}, {"frob2", frob2},
                   {"mean", mean},     {"var", var},     {"se_mean", se_mean},
                   {"se_var", se_var}, {"trials", trials}};
    return rep;
}

VerifyReport verify_subexp_tail(const nlohmann::json& params, long trials, RngSeed seed) {
    std::size_t n = params.value("n", 48);
    std::vector<double> t_over_sigma =
        params.value("t_over_sigma", std::vector<double>{5.0, 6.0, 8.0});
    Rng setup = Rng::for_trial(seed, 0);
    CMatrix m = random_gaussian_matrix(n, setup);
    CMatrix m1 = hermitian_part(m);
    CMatrix m2 = m;
    m2 -= m1;
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) var += std::norm(m1(i, j)) + std::norm(m2(i, j));
    double sigma = std::sqrt(var);
    double opnorm = two_norm(m);
    Complex expectation = 0.0;
    for (std::size_t i = 0; i < n; ++i) expectation += m(i, i);

    std::vector<double> deviations(trials);
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i + 1);
        CVector b = sample_complex_gaussian(n, rng);
        deviations[i] = std::abs(dot(b, matvec(m, b)) - expectation);
    });

    VerifyReport rep;
    rep.name = "subexp_tail";
    rep.pass = true;
    rep.details = {{"n", n}, {"sigma", sigma}, {"trials", trials}};
    rep.details["checks"] = nlohmann::json::array();
    double worst_ratio = 0.0;
    for (double mult : t_over_sigma) {
        double t = mult * sigma;
        long hits = 0;
        for (double d : deviations)
            if (d >= t) ++hits;
        double empirical = double(hits) / double(trials);
        double bound =
            4.0 * std::exp(-std::min(t * t / (8.0 * var), t / (4.0 * M_SQRT2 * opnorm)));
        bool ok = empirical <= bound;
        rep.pass = rep.pass && ok;
        worst_ratio = std::max(worst_ratio, bound > 0 ? empirical / bound : 0.0);
        rep.details["checks"].push_back(
            {{"t", t}, {"empirical", empirical}, {"bound", bound}, {"pass", ok}});
    }
    rep.empirical = worst_ratio;
    rep.bound = 1.0;
    return rep;
}

VerifyReport verify_anticoncentration(const nlohmann::json& params, long trials,
                                      RngSeed seed) {
    std::size_t n = params.value("n", 48);
    std::vector<double> ts = params.value("ts", std::vector<double>{0.01, 0.05, 0.1});
    Rng setup = Rng::for_trial(seed, 0);
    CMatrix b0 = random_gaussian_matrix(n, setup);
    CMatrix m = matmul(b0.adjoint(), b0);  // Hermitian positive definite
    double trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) trace += m(i, i).real();

    std::vector<double> values(trials);
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i + 1);
        CVector b = sample_complex_gaussian(n, rng);
        values[i] = dot(b, matvec(m, b)).real();
    });

    VerifyReport rep;
    rep.name = "anticoncentration";
    rep.pass = true;
    rep.details = {{"n", n}, {"trace", trace}, {"trials", trials}};
    rep.details["checks"] = nlohmann::json::array();
    double worst = 0.0;
    for (double t : ts) {
        long hits = 0;
        for (double v : values)
            if (v <= t * trace) ++hits;
        double empirical = double(hits) / double(trials);
        double bound = M_E * t;
        bool ok = empirical <= bound;
        rep.pass = rep.pass && ok;
        worst = std::max(worst, empirical / bound);
        rep.details["checks"].push_back(
            {{"t", t}, {"empirical", empirical}, {"bound", bound}, {"pass", ok}});
    }
    rep.empirical = worst;
    rep.bound = 1.0;
    return rep;
}

VerifyReport verify_power_sum(const nlohmann::json& params) {
    int n_max = params.value("n_max", 50);
    double worst = 0.0;
    bool pass = true;
    int worst_n = 0, worst_k = 0;
    for (int n = 2; n <= n_max; ++n) {
        for (int k = 0; k < n; ++k) {
            double lhs = 0.0, base = 0.0;
            for (int j = 1; j <= n; ++j) {
                double jk = std::pow(double(j), double(k));
                base += jk;
                lhs += jk * double(j);
            }
            double rhs = (double(n) - 1.0 / (M_E + 1.0)) * base;
            double ratio = lhs / rhs;
            if (ratio >= 1.0) pass = false;
            if (ratio > worst) {
                worst = ratio;
                worst_n = n;
                worst_k = k;
            }
        }
    }
    VerifyReport rep;
    rep.name = "power_sum";
    rep.empirical = worst;
    rep.bound = 1.0;
    rep.pass = pass;
    rep.details = {{"n_max", n_max}, {"worst_n", worst_n}, {"worst_k", worst_k}};
    return rep;
}

VerifyReport verify_polar_perturb(const nlohmann::json& params, long trials,
                                  RngSeed seed) {
    std::size_t rows = params.value("rows", 12);
    std::size_t cols = params.value("cols", 4);
    long instances = trials > 0 ? trials : 200;

    std::vector<double> ratios(instances);
    parallel_for(std::size_t(instances), [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i + 1);
        CMatrix g = random_gaussian_matrix(rows, rng);
        CMatrix vq(rows, cols);
        for (std::size_t j = 0; j < cols; ++j) {
            CVector col = g.col(j);
            for (int pass = 0; pass < 2; ++pass)
                for (std::size_t l = 0; l < j; ++l) {
                    CVector ql = vq.col(l);
                    axpy(-dot(ql, col), ql, col);
                }
            double nc = norm2(col);
            for (Complex& z : col) z /= nc;
            vq.set_col(j, col);
        }
        CMatrix a = random_gaussian_matrix(rows, rng);
        CMatrix d(rows, rows);
        double dnorm = 0.0;
        for (std::size_t l = 0; l < rows; ++l) {
            Complex val = 0.9 * rng.next_unit_disk();
            d(l, l) = val;
            dnorm = std::max(dnorm, std::abs(val));
        }
        CMatrix b = matmul(CMatrix::identity(rows) + d, vq);
        PolarDecomposition pd = polar_decompose(b);
        double lhs = two_norm(matmul(matmul(vq.adjoint(), a), vq) -
                              matmul(matmul(pd.orthonormal.adjoint(), a), pd.orthonormal));
        double rhs = 4.0 * two_norm(a) * dnorm / (1.0 - dnorm);
        ratios[i] = lhs / rhs;
    });

    VerifyReport rep;
    rep.name = "polar_perturb";
    rep.empirical = *std::max_element(ratios.begin(), ratios.end());
    rep.bound = 1.0;
    rep.pass = rep.empirical <= 1.0;
    rep.details = {{"rows", rows}, {"cols", cols}, {"instances", instances}};
    return rep;
}

VerifyReport verify_vv_small(const nlohmann::json& params, long trials, RngSeed seed) {
    std::size_t m = params.value("m", 8);
    std::size_t ell = params.value("ell", 16);
    double c_exponent = params.value("c_exponent", 2.0 / 3.0);
    const std::size_t n = ell * m * m;

    double c = std::pow(double(n), -c_exponent);
    double alpha = std::sqrt(1.0 - c);
    double beta_coef = (std::sqrt(1.0 - c + c * double(n)) - alpha) / double(n);
    double ainv = 1.0 / alpha;
    double binv = -beta_coef / (alpha * (alpha + beta_coef * double(n)));

    double beta;
    if (params.contains("beta")) {
        beta = params["beta"].get<double>();
    } else {
        // Build V and V^-1 densely once to measure beta_star exactly.
        CMatrix v(n, n), v_inv(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                v(i, j) = beta_coef + (i == j ? alpha : 0.0);
                v_inv(i, j) = binv + (i == j ? ainv : 0.0);
            }
        beta = beta_normality(v, v_inv).beta_star;
    }

    double epsilon = 2.0 * std::pow(double(n), -beta / 2.0) * std::log(M_E * double(n));

    std::vector<char> failures(trials, 0);
    parallel_for(std::size_t(trials), [&](std::size_t i) {
        Rng rng = Rng::for_trial(seed, i + 1);
        CVector b = sample_sphere(n, rng);
        CVector pdiag(n), ddiag(n);
        for (Complex& z : pdiag) z = rng.next_unit_disk();
        for (Complex& z : ddiag) z = rng.next_unit_disk();

        // x = P V^-1 b with V^-1 = ainv I + binv 1 1^T applied in O(n)
        Complex bsum = 0.0;
        for (Complex z : b) bsum += z;
        CVector x(n);
        for (std::size_t l = 0; l < n; ++l)
            x[l] = pdiag[l] * (ainv * b[l] + binv * bsum);

        // quadratic forms against G = (1-c) I + c 1 1^T
        Complex xsum = 0.0, dxsum = 0.0;
        double x2 = 0.0;
        Complex xdx = 0.0;
        for (std::size_t l = 0; l < n; ++l) {
            xsum += x[l];
            Complex dx = ddiag[l] * x[l];
            dxsum += dx;
            x2 += std::norm(x[l]);
            xdx += std::conj(x[l]) * dx;
        }
        double y = (1.0 - c) * x2 + c * std::norm(xsum);
        Complex zy = (1.0 - c) * xdx + c * std::conj(xsum) * dxsum;

        double lhs = std::abs(zy) / y;
        double rhs = (1.0 / (1.0 - epsilon)) * (std::abs(xdx) / x2 + epsilon);
        bool failed = epsilon >= 1.0 ? (rhs <= 0.0 ? true : lhs >= rhs) : lhs >= rhs;
        failures[i] = failed ? 1 : 0;
    });
    long fail_count = 0;
    for (char f : failures) fail_count += f;

    VerifyReport rep;
    rep.name = "vv_small";
    rep.empirical = double(fail_count) / double(trials);
    double se = binomial_se(rep.empirical, trials);
    rep.bound = M_E * std::pow(double(n), -beta / 2.0) + 2.0 / std::sqrt(double(n)) +
                4.0 * std::pow(double(n), -0.25) + 4.0 * se;
    rep.pass = rep.empirical <= rep.bound;
    rep.details = {{"n", n},           {"beta", beta}, {"epsilon", epsilon},
                   {"c", c},           {"trials", trials}, {"se", se}};
    return rep;
}

}  // namespace

VerifyReport verify_prob(const std::string& name, const nlohmann::json& params,
                         long trials, RngSeed seed) {
    if (name != "power_sum" && name != "polar_perturb" && trials < 1000)
        throw DomainError("verify_prob: Monte Carlo variants need trials >= 1000");
    if (name == "chisq_tail") return verify_chisq_tail(params, trials, seed);
    if (name == "min_coord") return verify_min_coord(params, trials, seed);
    if (name == "quad_form_stats") return verify_quad_form_stats(params, trials, seed);
    if (name == "subexp_tail") return verify_subexp_tail(params, trials, seed);
    if (name == "anticoncentration") return verify_anticoncentration(params, trials, seed);
    if (name == "power_sum") return verify_power_sum(params);
    if (name == "polar_perturb") return verify_polar_perturb(params, trials, seed);
    if (name == "vv_small") return verify_vv_small(params, trials, seed);
    throw DomainError("verify_prob: unknown verifier '" + name + "'");
}

void to_json(nlohmann::json& j, const MatrixSpec& spec) {
    switch (spec.kind) {
        case MatrixKind::roots_of_unity:
            j = {{"kind", "roots_of_unity"}, {"n", spec.n}};
            return;
        case MatrixKind::laplacian_1d:
            j = {{"kind", "laplacian_1d"}, {"n", spec.n}};
            return;
        case MatrixKind::radial_roots:
            j = {{"kind", "radial_roots"}, {"m", spec.m}, {"ell", spec.ell}};
            return;
        case MatrixKind::circle_mult:
            j = {{"kind", "circle_mult"}, {"k", spec.k}, {"ell", spec.ell}};
            return;
        case MatrixKind::ellipse_rank1:
            j = {{"kind", "ellipse_rank1"}, {"n", spec.n}, {"gamma", spec.gamma}};
            return;
        case MatrixKind::correlated_eigvecs:
            j = {{"kind", "correlated_eigvecs"}, {"m", spec.m}, {"ell", spec.ell}};
            return;
        case MatrixKind::explicit_matrix: {
            nlohmann::json rows = nlohmann::json::array();
            for (std::size_t i = 0; i < spec.entries.rows(); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (std::size_t c2 = 0; c2 < spec.entries.cols(); ++c2)
                    row.push_back({spec.entries(i, c2).real(), spec.entries(i, c2).imag()});
                rows.push_back(row);
            }
            j = {{"kind", "explicit"}, {"entries", rows}};
            return;
        }
    }
}

void from_json(const nlohmann::json& j, MatrixSpec& spec) {
    std::string kind = j.at("kind").get<std::string>();
    spec = MatrixSpec{};
    if (kind == "roots_of_unity") {
        spec.kind = MatrixKind::roots_of_unity;
        spec.n = j.at("n").get<std::size_t>();
    } else if (kind == "laplacian_1d") {
        spec.kind = MatrixKind::laplacian_1d;
        spec.n = j.at("n").get<std::size_t>();
    } else if (kind == "radial_roots") {
        spec.kind = MatrixKind::radial_roots;
        spec.m = j.at("m").get<std::size_t>();
        spec.ell = j.at("ell").get<std::size_t>();
        if (j.contains("n")) spec.n = j["n"].get<std::size_t>();
    } else if (kind == "circle_mult") {
        spec.kind = MatrixKind::circle_mult;
        spec.k = j.at("k").get<std::size_t>();
        spec.ell = j.at("ell").get<std::size_t>();
        if (j.contains("n")) spec.n = j["n"].get<std::size_t>();
    } else if (kind == "ellipse_rank1") {
        spec.kind = MatrixKind::ellipse_rank1;
        spec.n = j.at("n").get<std::size_t>();
        spec.gamma = j.at("gamma").get<double>();
    } else if (kind == "correlated_eigvecs") {
        spec.kind = MatrixKind::correlated_eigvecs;
        spec.m = j.at("m").get<std::size_t>();
        spec.ell = j.at("ell").get<std::size_t>();
        if (j.contains("n")) spec.n = j["n"].get<std::size_t>();
    } else if (kind == "explicit") {
        spec.kind = MatrixKind::explicit_matrix;
        const auto& rows = j.at("entries");
        std::size_t r = rows.size();
        std::size_t c2 = r > 0 ? rows[0].size() : 0;
        CMatrix m(r, c2);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t l = 0; l < c2; ++l)
                m(i, l) = Complex(rows[i][l][0].get<double>(), rows[i][l][1].get<double>());
        spec.entries = std::move(m);
    } else {
        throw ConfigError("MatrixSpec: unknown kind '" + kind + "'");
    }
}

void to_json(nlohmann::json& j, const VerifyReport& r) {
    j = {{"name", r.name},
         {"empirical", r.empirical},
         {"bound", r.bound},
         {"pass", r.pass},
         {"details", r.details}};
}

}  // namespace numrange
