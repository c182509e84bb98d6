// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORR_EXPSIM_HPP
#define QCORR_EXPSIM_HPP

// Monte Carlo stand-in for the photon-counting experiment: fixed number of
// trials per measurement setting, binomial/multinomial outcome splits,
// Pauli-basis tomography and a closed-form physicality projection.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "qcorr/correlations.hpp"
#include "qcorr/errors.hpp"
#include "qcorr/linalg.hpp"
#include "qcorr/measurement.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

/// Counter-based SplitMix64: the k-th output is mix(seed + k * golden), so a
/// stream is fully determined by (seed, number of draws so far).
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed) : seed_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return mix(seed_ + (++counter_) * kGolden); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t counter() const { return counter_; }

    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

private:
    static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

/// Independent stream seed for sub-run `index` of a run seeded with `seed`.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64::mix(seed ^ SplitMix64::mix(index + 0x632BE59BD9B4E019ULL));
}

/// Optional non-ideal detection. Defaults reproduce ideal statistics.
/// A click on a channel happens with probability efficiency * P(outcome) + dark;
/// counts are split between the two channels in that ratio.
struct DetectorModel {
    double efficiency = 1.0;
    double dark_probability = 0.0;

    double effective_plus(double p_plus) const {
        const double a = efficiency * p_plus + dark_probability;
        const double b = efficiency * (1.0 - p_plus) + dark_probability;
        return a + b > 0.0 ? a / (a + b) : 0.5;
    }
};

inline std::uint64_t draw_binomial(std::uint64_t n, double prob, SplitMix64& rng) {
    prob = std::clamp(prob, 0.0, 1.0);
    if (n == 0 || prob <= 0.0) return 0;
    if (prob >= 1.0) return n;
    std::binomial_distribution<std::uint64_t> dist(n, prob);
    return dist(rng);
}

/// Multinomial split of n trials by sequential conditional binomials.
template <std::size_t K>
std::array<std::uint64_t, K> draw_multinomial(std::uint64_t n, const std::array<double, K>& probs, SplitMix64& rng) {
    std::array<std::uint64_t, K> counts{};
    double mass = 0.0;
    for (double p : probs) mass += std::max(0.0, p);
    std::uint64_t left = n;
    for (std::size_t i = 0; i + 1 < K && left > 0; ++i) {
        const double pi = std::max(0.0, probs[i]);
        const std::uint64_t c = mass > 0.0 ? draw_binomial(left, pi / mass, rng) : 0;
        counts[i] = c;
        left -= c;
        mass -= pi;
    }
    counts[K - 1] += left;
    return counts;
}

struct CountRecord {
    MeasurementSetting setting;
    std::uint64_t n_plus = 0;
    std::uint64_t n_minus = 0;
    std::uint64_t total() const { return n_plus + n_minus; }
};

/// N trials of the projective measurement on a single qubit.
inline CountRecord simulate_counts(const Density2& rho, const MeasurementSetting& setting, std::uint64_t n,
                                   SplitMix64& rng, const DetectorModel& det = {}) {
    if (n == 0) throw InvalidArgumentError("number of trials must be >= 1");
    const auto pr = projectors(setting);
    const double p_plus = (rho.matrix() * pr.first).trace().real();
    const std::uint64_t np = draw_binomial(n, det.effective_plus(p_plus), rng);
    return CountRecord{setting, np, n - np};
}

inline CountRecord simulate_counts(const Density2& rho, const MeasurementSetting& setting, std::uint64_t n,
                                   std::uint64_t seed, const DetectorModel& det = {}) {
    SplitMix64 rng(seed);
    return simulate_counts(rho, setting, n, rng, det);
}

/// (n+/N, n-/N); throws for an empty record.
inline std::pair<double, double> estimate_r(const CountRecord& c) {
    if (c.total() == 0) throw InvalidArgumentError("cannot estimate probabilities from zero counts");
    const double rp = static_cast<double>(c.n_plus) / static_cast<double>(c.total());
    return {rp, 1.0 - rp};
}

/// Euclidean projection of v onto the probability simplex.
template <std::size_t N>
std::array<double, N> project_to_simplex(const std::array<double, N>& v) {
    std::array<double, N> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) tau = t;
    }
    std::array<double, N> w{};
    for (std::size_t i = 0; i < N; ++i) w[i] = std::max(0.0, v[i] - tau);
    return w;
}

/// Nearest physical state. Qubits: Bloch vector clipped radially to the unit
/// ball. Larger dimensions: spectrum projected onto the simplex, eigenvectors
/// kept. Physical input is returned unchanged.
template <std::size_t N>
DensityMatrix<N> ml_project(const Matrix<N>& raw) {
    if (!is_hermitian(raw, 1e-9)) throw NotHermitianError("ml_project: input is not Hermitian");
    const Matrix<N> h = 0.5 * (raw + raw.adjoint());
    if (is_density(h) && std::abs(h.trace().real() - 1.0) <= 1e-12) return DensityMatrix<N>(h);
    if constexpr (N == 2) {
        const double tr = h.trace().real();
        BlochVector r = bloch_components(h).scaled(tr != 0.0 ? 1.0 / tr : 0.0);
        if (r.norm() > 1.0) r = r.scaled(1.0 / r.norm());
        return bloch_to_density(r);
    } else {
        const auto es = eigh(h);
        const auto w = project_to_simplex(es.values);
        EigenSystem<N> proj = es;
        proj.values = w;
        Matrix<N> m = apply_spectral(proj, [](double x) { return x; });
        m = 0.5 * (m + m.adjoint());
        return DensityMatrix<N>(m);
    }
}

template <std::size_t N>
struct TomographyResult {
    Matrix<N> rho_raw;
    DensityMatrix<N> rho_ml;
    std::vector<std::string> settings_used;
    std::uint64_t n_per_setting = 0;
    std::optional<double> fidelity_vs_truth;
};

/// Bloch estimate from Pauli-basis counts: r_i = (n+ - n-) / (n+ + n-).
inline TomographyResult<2> reconstruct_single_qubit(const std::array<CountRecord, 3>& counts) {
    std::array<double, 3> r{};
    for (std::size_t i = 0; i < 3; ++i) {
        const auto n = counts[i].total();
        if (n == 0) throw InvalidArgumentError("tomography setting has zero counts");
        r[i] = (static_cast<double>(counts[i].n_plus) - static_cast<double>(counts[i].n_minus)) / static_cast<double>(n);
    }
    Mat2 raw = 0.5 * (Mat2::identity() + r[0] * pauli::x() + r[1] * pauli::y() + r[2] * pauli::z());
    return TomographyResult<2>{raw, ml_project(raw), {"X", "Y", "Z"}, counts[0].total(), std::nullopt};
}

inline const std::array<BlochVector, 3>& pauli_axes() {
    static const std::array<BlochVector, 3> axes{BlochVector{1, 0, 0}, BlochVector{0, 1, 0}, BlochVector{0, 0, 1}};
    return axes;
}

/// Measurements in the three Pauli eigenbases, n trials each.
inline TomographyResult<2> tomography_single_qubit(const Density2& truth, std::uint64_t n, std::uint64_t seed,
                                                   const DetectorModel& det = {}) {
    SplitMix64 rng(seed);
    std::array<CountRecord, 3> counts{CountRecord{MeasurementSetting::direction(pauli_axes()[0])},
                                      CountRecord{MeasurementSetting::direction(pauli_axes()[1])},
                                      CountRecord{MeasurementSetting::direction(pauli_axes()[2])}};
    for (std::size_t i = 0; i < 3; ++i) counts[i] = simulate_counts(truth, counts[i].setting, n, rng, det);
    auto res = reconstruct_single_qubit(counts);
    res.n_per_setting = n;
    res.fidelity_vs_truth = fidelity(res.rho_ml, truth);
    return res;
}

/// Nine joint Pauli settings, four outcomes each; 15 expectation values by
/// linear inversion, then ml_project.
inline TomographyResult<4> tomography_two_qubit(const Density4& truth, std::uint64_t n, std::uint64_t seed) {
    if (n == 0) throw InvalidArgumentError("number of trials must be >= 1");
    SplitMix64 rng(seed);
    static constexpr const char* kNames = "XYZ";
    std::array<std::array<double, 4>, 4> t{};  // t[mu][nu], index 0 = identity
    t[0][0] = 1.0;
    std::vector<std::string> used;
    for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            std::array<double, 4> probs{};
            for (int sa = 0; sa < 2; ++sa)
                for (int sb = 0; sb < 2; ++sb) {
                    const Mat2 pa = 0.5 * (Mat2::identity() + (sa == 0 ? 1.0 : -1.0) * pauli::axis(a));
                    const Mat2 pb = 0.5 * (Mat2::identity() + (sb == 0 ? 1.0 : -1.0) * pauli::axis(b));
                    probs[2 * sa + sb] = (truth.matrix() * kron(pa, pb)).trace().real();
                }
            const auto c = draw_multinomial(n, probs, rng);
            const double inv = 1.0 / static_cast<double>(n);
            const double npp = c[0] * inv, npm = c[1] * inv, nmp = c[2] * inv, nmm = c[3] * inv;
            t[a + 1][b + 1] = npp - npm - nmp + nmm;
            t[a + 1][0] += (npp + npm - nmp - nmm) / 3.0;
            t[0][b + 1] += (npp - npm + nmp - nmm) / 3.0;
            used.push_back(std::string{kNames[a], kNames[b]});
        }
    }
    Mat4 raw;
    for (std::size_t mu = 0; mu < 4; ++mu)
        for (std::size_t nu = 0; nu < 4; ++nu) {
            const Mat2 sa = mu == 0 ? Mat2::identity() : pauli::axis(mu - 1);
            const Mat2 sb = nu == 0 ? Mat2::identity() : pauli::axis(nu - 1);
            raw += (0.25 * t[mu][nu]) * kron(sa, sb);
        }
    auto ml = ml_project(raw);
    const double f = fidelity(ml, truth);
    return TomographyResult<4>{raw, ml, std::move(used), n, f};
}

/// One phi point of the emulated experiment.
struct PhiRecord {
    double phi = 0.0;
    CountRecord counts_b;
    double r_plus_hat = 0.0;
    double r_minus_hat = 0.0;
    std::optional<double> purity_cond_plus_hat;
    std::optional<double> purity_cond_minus_hat;
    double purity_avg_hat = 0.0;
    double purity_a_hat = 0.0;
    double discord_phi_hat = 0.0;
    double info_deficit_hat = 0.0;
    bool plus_skipped = false;   ///< no coincidences in the + branch
    bool minus_skipped = false;  ///< no coincidences in the - branch
};

struct ExperimentRun {
    ThetaPState state;
    std::uint64_t n_per_setting = 0;
    std::uint64_t seed = 0;
    TomographyResult<4> preparation;
    double purity_ab_hat = 0.0;
    std::vector<PhiRecord> records;
};

struct PipelineOptions {
    DetectorModel detector;
};

namespace detail {

/// Conditional tomography of A triggered on B along phi: each Pauli basis on
/// A gets n pair trials split over the four (B, A) outcome pairs.
/// Returns per-branch A counts for each basis, plus the untriggered A counts.
struct ConditionalCounts {
    std::array<std::array<CountRecord, 3>, 2> branch;  // [B outcome][A basis]
    std::array<CountRecord, 3> marginal;
};

inline ConditionalCounts conditional_tomography_counts(const Density4& rho, double phi, std::uint64_t n,
                                                       SplitMix64& rng) {
    const auto pb = projectors(MeasurementSetting::xz(phi));
    ConditionalCounts out{};
    for (std::size_t a = 0; a < 3; ++a) {
        const auto setting = MeasurementSetting::direction(pauli_axes()[a]);
        const auto pa = projectors(setting);
        std::array<double, 4> probs{};
        for (int sb = 0; sb < 2; ++sb)
            for (int sa = 0; sa < 2; ++sa) {
                const Mat4 op = kron(sa == 0 ? pa.first : pa.second, sb == 0 ? pb.first : pb.second);
                probs[2 * sb + sa] = (rho.matrix() * op).trace().real();
            }
        const auto c = draw_multinomial(n, probs, rng);
        out.branch[0][a] = CountRecord{setting, c[0], c[1]};
        out.branch[1][a] = CountRecord{setting, c[2], c[3]};
        out.marginal[a] = CountRecord{setting, c[0] + c[2], c[1] + c[3]};
    }
    return out;
}

inline bool has_counts(const std::array<CountRecord, 3>& c) {
    return std::all_of(c.begin(), c.end(), [](const CountRecord& r) { return r.total() > 0; });
}

}  // namespace detail

/// Emulates preparation tomography, then for every phi: B single counts for
/// r+-, conditional tomography of A for P_{A/B+-}, and the derived estimates
/// of the average conditional purity, D(A/B_phi) and I2(A, B_phi).
inline ExperimentRun run_experiment_pipeline(const ThetaPState& s, const std::vector<double>& phis, std::uint64_t n,
                                             std::uint64_t seed, const PipelineOptions& opt = {}) {
    if (n == 0) throw InvalidArgumentError("number of trials must be >= 1");
    const Density4 rho = make_theta_state(s);
    const Density2 rho_b = reduce(rho, Subsystem::B);

    auto prep = tomography_two_qubit(rho, n, derive_seed(seed, 0));
    const double p_ab_hat = purity(prep.rho_ml);
    ExperimentRun run{s, n, seed, std::move(prep), p_ab_hat, {}};
    run.records.reserve(phis.size());

    for (std::size_t i = 0; i < phis.size(); ++i) {
        SplitMix64 rng(derive_seed(seed, i + 1));
        PhiRecord rec;
        rec.phi = phis[i];
        rec.counts_b = simulate_counts(rho_b, MeasurementSetting::xz(phis[i]), n, rng, opt.detector);
        std::tie(rec.r_plus_hat, rec.r_minus_hat) = estimate_r(rec.counts_b);

        const auto cc = detail::conditional_tomography_counts(rho, phis[i], n, rng);
        const double p_a_hat = purity(reconstruct_single_qubit(cc.marginal).rho_ml);
        rec.purity_a_hat = p_a_hat;

        double measured_entropy = 0.0, post_purity = 0.0;
        for (int b = 0; b < 2; ++b) {
            const double r = b == 0 ? rec.r_plus_hat : rec.r_minus_hat;
            if (!detail::has_counts(cc.branch[b])) {
                (b == 0 ? rec.plus_skipped : rec.minus_skipped) = true;
                continue;
            }
            const double pc = purity(reconstruct_single_qubit(cc.branch[b]).rho_ml);
            (b == 0 ? rec.purity_cond_plus_hat : rec.purity_cond_minus_hat) = pc;
            rec.purity_avg_hat += r * pc;
            measured_entropy += r * entropy_from_purity(pc);
            post_purity += r * r * pc;
        }
        const double cond_entropy = entropy_from_purity(p_ab_hat) - entropy_from_purity(p_a_hat);
        rec.discord_phi_hat = measured_entropy - cond_entropy;
        rec.info_deficit_hat = 2.0 * (p_ab_hat - post_purity);
        run.records.push_back(std::move(rec));
    }
    return run;
}

/// Absolute estimator errors of one phi record against the closed forms.
struct EstimatorErrors {
    double r_plus = 0.0;
    std::optional<double> purity_cond_plus;
    std::optional<double> purity_cond_minus;
    double purity_avg = 0.0;
    double discord_phi = 0.0;
    double info_deficit = 0.0;
};

inline EstimatorErrors estimator_errors(const ThetaPState& s, const PhiRecord& rec) {
    EstimatorErrors e;
    e.r_plus = std::abs(rec.r_plus_hat - outcome_probabilities(s, rec.phi).first);
    if (rec.purity_cond_plus_hat)
        e.purity_cond_plus = std::abs(*rec.purity_cond_plus_hat - conditional_purity(s, rec.phi, Outcome::plus));
    if (rec.purity_cond_minus_hat)
        e.purity_cond_minus = std::abs(*rec.purity_cond_minus_hat - conditional_purity(s, rec.phi, Outcome::minus));
    e.purity_avg = std::abs(rec.purity_avg_hat - avg_conditional_purity(s, rec.phi));
    e.discord_phi = std::abs(rec.discord_phi_hat - discord_phi(s, rec.phi));
    e.info_deficit = std::abs(rec.info_deficit_hat - info_deficit_phi(s, rec.phi));
    return e;
}

/// Median of a sample (mean of the two central values for even sizes).
inline double median(std::vector<double> v) {
    if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
    const std::size_t mid = v.size() / 2;
    std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
    const double hi = v[mid];
    if (v.size() % 2 == 1) return hi;
    const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lo + hi);
}

}  // namespace qcorr

#endif  // QCORR_EXPSIM_HPP
