#include "qsep/fi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsep/gaussian.hpp"
#include "qsep/hermitian.hpp"

namespace qsep {

double FiConfig::sigma() const {
    return 1.0 / std::sqrt(static_cast<double>(support_size));
}

void FiConfig::validate() const {
    if (n_points < 1) throw std::invalid_argument("FiConfig: n_points must be positive");
    if (support_size < 1 || support_size > n_points)
        throw std::invalid_argument("FiConfig: support_size must be in [1, N]");
}

void FiParams::validate() const {
    if (k < 1) throw std::invalid_argument("FiParams: k must be positive");
    if (delta < 0.0 || delta > 1.0) throw std::invalid_argument("FiParams: delta must be in [0, 1]");
    if (!(gamma > 0.0 && gamma <= 0.5))
        throw std::invalid_argument("FiParams: gamma must be in (0, 1/2]");
}

SubsetOracle sample_support_bernoulli(Eigen::Index n_points, double p, Rng& rng) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("bernoulli_p must be in [0, 1]");
    SubsetOracle s(n_points);
    for (Eigen::Index x = 0; x < n_points; ++x)
        if (rng.next_double() < p) s.insert(x);
    return s;
}

SubsetOracle sample_support_fixed(Eigen::Index n_points, Eigen::Index l, Rng& rng) {
    if (l < 0 || l > n_points) throw std::invalid_argument("fixed support size out of range");
    // Partial Fisher-Yates over [N].
    std::vector<Eigen::Index> perm(static_cast<size_t>(n_points));
    for (Eigen::Index i = 0; i < n_points; ++i) perm[static_cast<size_t>(i)] = i;
    SubsetOracle s(n_points);
    for (Eigen::Index i = 0; i < l; ++i) {
        Eigen::Index j = i + static_cast<Eigen::Index>(rng.next_below(
                                 static_cast<uint64_t>(n_points - i)));
        std::swap(perm[static_cast<size_t>(i)], perm[static_cast<size_t>(j)]);
        s.insert(perm[static_cast<size_t>(i)]);
    }
    return s;
}

FiSample sample_fi(const SubsetOracle& s, const FiConfig& cfg, Rng& rng) {
    cfg.validate();
    const Eigen::Index n = cfg.n_points;
    if (s.n_points() != n) throw std::invalid_argument("sample_fi: oracle/config N mismatch");
    const auto members = s.members();
    if (members.empty()) throw std::invalid_argument("sample_fi: empty support");
    if (static_cast<Eigen::Index>(members.size()) != cfg.support_size)
        throw std::invalid_argument("sample_fi: |S| != support_size");

    FiSample out;
    out.psi = ComplexVector::Zero(n);
    const GaussianParams gp{{0.0, 0.0}, cfg.sigma()};
    for (Eigen::Index y : members) out.psi[y] = sample_complex_gaussian(gp, rng);

    out.fourier_amps = qft(out.psi) * std::sqrt(static_cast<double>(n));

    out.u_set = SubsetOracle(n);
    for (Eigen::Index z = 0; z < n; ++z) {
        const double b2 = std::norm(out.fourier_amps[z]);
        if (rng.next_double() < 1.0 - std::exp(-b2)) out.u_set.insert(z);
    }
    return out;
}

namespace {

constexpr Eigen::Index kDenseCap = 4096;

std::complex<double> m_entry(const std::vector<Eigen::Index>& sum_members, Eigen::Index n,
                             Eigen::Index z, Eigen::Index zp) {
    if (z == zp) {
        return {static_cast<double>(sum_members.size()) / static_cast<double>(n), 0.0};
    }
    std::complex<double> acc(0.0, 0.0);
    const double base = 2.0 * M_PI * static_cast<double>(z - zp) / static_cast<double>(n);
    for (Eigen::Index y : sum_members) {
        const double ang = base * static_cast<double>(y);
        acc += std::complex<double>(std::cos(ang), std::sin(ang));
    }
    return acc / static_cast<double>(n);
}

}  // namespace

ComplexMatrix build_m_serial(const SubsetOracle& s) {
    const Eigen::Index n = s.n_points();
    if (n > kDenseCap) throw std::length_error("build_m: N exceeds dense cap 4096");
    const auto members = s.members();
    ComplexMatrix m(n, n);
    for (Eigen::Index z = 0; z < n; ++z) {
        for (Eigen::Index zp = 0; zp <= z; ++zp) {
            m(z, zp) = m_entry(members, n, z, zp);
            m(zp, z) = std::conj(m(z, zp));
        }
    }
    return m;
}

ComplexMatrix build_m(const SubsetOracle& s) {
    const Eigen::Index n = s.n_points();
    if (n > kDenseCap) throw std::length_error("build_m: N exceeds dense cap 4096");
    const auto members = s.members();
    ComplexMatrix m(n, n);
#pragma omp parallel for schedule(dynamic, 8)
    for (Eigen::Index z = 0; z < n; ++z) {
        for (Eigen::Index zp = 0; zp <= z; ++zp) {
            m(z, zp) = m_entry(members, n, z, zp);
        }
    }
    for (Eigen::Index z = 0; z < n; ++z)
        for (Eigen::Index zp = z + 1; zp < n; ++zp) m(z, zp) = std::conj(m(zp, z));
    return m;
}

ComplexMatrix build_m_minor(const SubsetOracle& sum_set,
                            const std::vector<Eigen::Index>& index_set) {
    if (index_set.empty()) throw std::invalid_argument("build_m_minor: empty index set");
    const Eigen::Index n = sum_set.n_points();
    std::vector<Eigen::Index> idx = index_set;
    std::sort(idx.begin(), idx.end());
    for (Eigen::Index z : idx)
        if (z < 0 || z >= n) throw std::out_of_range("build_m_minor: index out of range");
    const auto members = sum_set.members();
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    ComplexMatrix m(k, k);
    for (Eigen::Index a = 0; a < k; ++a) {
        for (Eigen::Index b = 0; b <= a; ++b) {
            m(a, b) = m_entry(members, n, idx[a], idx[b]);
            m(b, a) = std::conj(m(a, b));
        }
    }
    return m;
}

double tau_exact(const SubsetOracle& s, const SubsetOracle& t, Eigen::Index l) {
    const auto s_members = s.members();
    const auto t_members = t.members();
    if (static_cast<Eigen::Index>(s_members.size()) != l || l < 1)
        throw std::invalid_argument("tau_exact: |S| must equal l >= 1");
    if (t_members.empty()) throw std::invalid_argument("tau_exact: T must be nonempty");
    if (static_cast<Eigen::Index>(t_members.size()) > 64)
        throw std::length_error("tau_exact: |T| exceeds dense-minor cap 64");

    const double scale = static_cast<double>(s.n_points()) / static_cast<double>(l);
    ComplexMatrix a = build_m_minor(s, t_members);  // M^S_T
    ComplexMatrix b = build_m_minor(t, s_members);  // M^T_S
    const double det_primal = det_hermitian(
        ComplexMatrix(ComplexMatrix::Identity(a.rows(), a.cols()) + scale * a));
    const double det_dual = det_hermitian(
        ComplexMatrix(ComplexMatrix::Identity(b.rows(), b.cols()) + scale * b));
    // Weinstein-Aronszajn: both determinants are equal.
    if (std::abs(det_primal - det_dual) > 1e-8 * std::max(1.0, std::abs(det_primal)))
        throw std::runtime_error("tau_exact: primal/dual determinant mismatch");
    return 1.0 / det_primal;
}

MonteCarloEstimate tau_monte_carlo(const SubsetOracle& s, const SubsetOracle& t,
                                   const FiConfig& cfg, long trials, uint64_t master_seed,
                                   bool use_indicator) {
    cfg.validate();
    if (trials < 1000) throw std::invalid_argument("tau_monte_carlo: trials must be >= 1000");
    const auto t_members = t.members();
    if (t_members.empty()) return {1.0, 0.0, trials};

    const auto s_members = s.members();
    const Eigen::Index n = cfg.n_points;
    const GaussianParams gp{{0.0, 0.0}, cfg.sigma()};

    std::vector<double> per_trial(static_cast<size_t>(trials));
#pragma omp parallel for schedule(static)
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(trial));
        std::vector<std::complex<double>> alphas(s_members.size());
        for (auto& a : alphas) a = sample_complex_gaussian(gp, rng);
        std::vector<double> b2(t_members.size());
        for (size_t zi = 0; zi < t_members.size(); ++zi) {
            std::complex<double> beta(0.0, 0.0);
            const double base =
                2.0 * M_PI * static_cast<double>(t_members[zi]) / static_cast<double>(n);
            for (size_t j = 0; j < s_members.size(); ++j) {
                const double ang = base * static_cast<double>(s_members[j]);
                beta += std::complex<double>(std::cos(ang), std::sin(ang)) * alphas[j];
            }
            b2[zi] = std::norm(beta);
        }
        if (use_indicator) {
            // Sample the inclusion step itself and count disjointness.
            bool disjoint = true;
            for (double v : b2) {
                if (rng.next_double() < 1.0 - std::exp(-v)) {
                    disjoint = false;
                    break;
                }
            }
            per_trial[static_cast<size_t>(trial)] = disjoint ? 1.0 : 0.0;
        } else {
            double sum_b2 = 0.0;
            for (double v : b2) sum_b2 += v;
            per_trial[static_cast<size_t>(trial)] = std::exp(-sum_b2);
        }
    }

    // Deterministic serial reduction.
    double sum = 0.0, sum_sq = 0.0;
    for (double v : per_trial) {
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / static_cast<double>(trials);
    const double var = std::max(0.0, sum_sq / static_cast<double>(trials) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(trials)), trials};
}

double acceptance_stat(const FiSample& sample) { return acceptance_stat(sample, sample.u_set); }

double acceptance_stat(const FiSample& sample, const SubsetOracle& u) {
    const double norm2 = sample.psi.squaredNorm();
    if (!(norm2 > 0.0)) throw std::invalid_argument("acceptance_stat: zero state");
    const Eigen::Index n = sample.psi.size();
    double mass = 0.0;
    for (Eigen::Index z = 0; z < n; ++z)
        if (u.contains(z)) mass += std::norm(sample.fourier_amps[z]) / static_cast<double>(n);
    return mass / norm2;
}

std::vector<NormConcentrationRow> norm_concentration_experiment(
    const FiConfig& cfg, const std::vector<double>& epsilons, long trials, uint64_t master_seed) {
    cfg.validate();
    const GaussianParams gp{{0.0, 0.0}, cfg.sigma()};
    const Eigen::Index l = cfg.support_size;

    std::vector<double> norms(static_cast<size_t>(trials));
#pragma omp parallel for schedule(static)
    for (long trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::stream(master_seed, static_cast<uint64_t>(trial));
        double norm2 = 0.0;
        for (Eigen::Index j = 0; j < l; ++j) norm2 += std::norm(sample_complex_gaussian(gp, rng));
        norms[static_cast<size_t>(trial)] = norm2;
    }

    std::vector<NormConcentrationRow> rows;
    for (double eps : epsilons) {
        NormConcentrationRow row;
        row.epsilon = eps;
        long exceed = 0;
        for (double n2 : norms)
            if (n2 < 1.0 - eps || n2 > 1.0 + eps) ++exceed;
        row.exceedance = static_cast<double>(exceed) / static_cast<double>(trials);
        row.bound = 2.0 * std::exp(-eps * eps * static_cast<double>(l) / 8.0);
        row.pass = row.exceedance <= row.bound;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace qsep
