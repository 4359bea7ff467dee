#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "numrange/matrix.hpp"

namespace numrange {

struct RngSeed {
    std::uint64_t seed = 1;
};

// xoshiro256++ seeded through splitmix64. Same seed gives bit-identical
// streams on every platform; per-trial streams come from for_trial, so
// parallel schedules cannot change the numbers.
class Rng {
  public:
    explicit Rng(std::uint64_t seed);

    // Stream-splitting rule: the trial stream is seeded with
    // splitmix64(seed ^ (0x9e3779b97f4a7c15 * (trial + 1))).
    static Rng for_trial(RngSeed seed, std::uint64_t trial);

    std::uint64_t next_u64();
    double next_double();            // uniform [0, 1)
    double next_normal();            // N(0, 1), Box-Muller
    Complex next_complex_normal();   // Re, Im ~ N(0, 1/2) independent
    Complex next_unit_disk();        // uniform on |z| <= 1

  private:
    std::uint64_t s_[4];
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

// Unit-norm vector uniform on the complex sphere.
CVector sample_sphere(std::size_t n, Rng& rng);
// i.i.d. standard complex normal entries.
CVector sample_complex_gaussian(std::size_t n, Rng& rng);

enum class MatrixKind {
    roots_of_unity,
    laplacian_1d,
    radial_roots,
    circle_mult,
    ellipse_rank1,
    correlated_eigvecs,
    explicit_matrix,
};

struct MatrixSpec {
    MatrixKind kind = MatrixKind::roots_of_unity;
    std::size_t n = 0;    // dimension (derived for kron kinds)
    std::size_t m = 0;    // radial ring count / correlated factor
    std::size_t k = 0;    // circle_mult point count
    std::size_t ell = 0;  // multiplicity
    double gamma = 0.0;   // ellipse_rank1 coupling
    CMatrix entries;      // explicit_matrix only

    std::size_t dimension() const;
};

// A together with its eigendecomposition data. For normal kinds the
// eigenvector matrix is unitary and omitted (identity marker: normal=true).
struct BuiltMatrix {
    CMatrix a;
    CVector eigenvalues;
    bool normal = true;
    CMatrix v;      // unit-column eigenvector matrix when !normal
    CMatrix v_inv;  // its inverse when !normal
};

BuiltMatrix build_matrix(const MatrixSpec& spec);

struct BetaNormalReport {
    double beta_star = 0.0;  // +inf when the left側 vanishes (unitary V)
    std::pair<std::size_t, std::size_t> worst_pair{0, 0};
    double max_normalized_lhs = 0.0;
};

// Exact maximization of the eigenvector-repulsion inequality's left side
// over all (j, k) pairs, normalized by ||w_j||^2.
BetaNormalReport beta_normality(const CMatrix& v, const CMatrix& v_inv);

// ||V|| ||(V*V)^{-1/2} - I|| + ||(V*V)^{1/2} - I||, the hull-vs-range gap
// bound for ||Lambda|| <= 1.
double convtonum_bound(const CMatrix& v, const CVector& lambda);

struct VerifyReport {
    std::string name;
    double empirical = 0.0;
    double bound = 0.0;
    bool pass = false;
    nlohmann::json details;
};

// Monte Carlo / exhaustive verifiers for the probabilistic toolbox:
// chisq_tail, min_coord, quad_form_stats, subexp_tail, anticoncentration,
// power_sum, polar_perturb, vv_small.
VerifyReport verify_prob(const std::string& name, const nlohmann::json& params,
                         long trials, RngSeed seed);

void to_json(nlohmann::json& j, const MatrixSpec& spec);
void from_json(const nlohmann::json& j, MatrixSpec& spec);
void to_json(nlohmann::json& j, const VerifyReport& r);

}  // namespace numrange
