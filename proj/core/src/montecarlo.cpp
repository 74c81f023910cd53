// SPDX-License-Identifier: Apache-2.0
//
// relaysim — spectral-efficiency engine for multipair two-way massive-MIMO relaying
// Copyright (C) 2026 relaysim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "relaysim/montecarlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "relaysim/af_analysis.hpp"
#include "relaysim/df_analysis.hpp"
#include "relaysim/model.hpp"
#include "relaysim/parallel.hpp"

namespace relaysim {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

void fill_cgaussian(MatrixXcd& m, const VectorXd& col_variance, TrialRng& rng) {
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) m(i, j) = rng.cgaussian(col_variance[j]);
}

McEstimate make_estimate(double sum, double sum_sq, long trials) {
    McEstimate e;
    e.trials = trials;
    e.mean = sum / double(trials);
    const double var = std::max(0.0, sum_sq / double(trials) - e.mean * e.mean);
    e.half_width_95 = 1.96 * std::sqrt(var / double(trials));
    return e;
}

double se_map(double sinr) { return 0.5 * std::log2(1.0 + sinr); }

void check_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw std::runtime_error(std::string("non-finite value in ") + what);
}

// per-chunk accumulator for the AF simulation
struct AfAccum {
    VectorXd den_sum_a, den_sq_a, den_sum_b, den_sq_b;  // per-trial SINR denominators (no constants)
    Eigen::VectorXcd desired_mean_a, desired_mean_b;    // running mean of g^T F g_peer
    Eigen::VectorXcd self_mean_a;                       // running mean of g^T F g_self
    double q_sum = 0.0, q_sq = 0.0;                     // relay output power (rho estimate)
    void init(int n) {
        den_sum_a = den_sq_a = den_sum_b = den_sq_b = VectorXd::Zero(n);
        desired_mean_a = desired_mean_b = self_mean_a = Eigen::VectorXcd::Zero(n);
    }
    void add(const AfAccum& o) {
        den_sum_a += o.den_sum_a;
        den_sq_a += o.den_sq_a;
        den_sum_b += o.den_sum_b;
        den_sq_b += o.den_sq_b;
        desired_mean_a += o.desired_mean_a;
        desired_mean_b += o.desired_mean_b;
        self_mean_a += o.self_mean_a;
        q_sum += o.q_sum;
        q_sq += o.q_sq;
    }
};

struct DfAccum {
    VectorXd r1_sum, r1_sq, rar_sum, rar_sq, rbr_sum, rbr_sq;
    void init(int n) { r1_sum = r1_sq = rar_sum = rar_sq = rbr_sum = rbr_sq = VectorXd::Zero(n); }
    void add(const DfAccum& o) {
        r1_sum += o.r1_sum;
        r1_sq += o.r1_sq;
        rar_sum += o.rar_sum;
        rar_sq += o.rar_sq;
        rbr_sum += o.rbr_sum;
        rbr_sq += o.rbr_sq;
    }
};

}  // namespace

ChannelDraw sample_channels(const SystemConfig& cfg, const FadingProfile& fading,
                            const EstimationStats& stats, TrialRng& rng, SamplingMode mode) {
    const int m = cfg.m, n = cfg.n;
    ChannelDraw d;
    if (mode == SamplingMode::Direct) {
        d.ghat_ar.resize(m, n);
        d.ghat_rb.resize(m, n);
        d.e_ar.resize(m, n);
        d.e_rb.resize(m, n);
        fill_cgaussian(d.ghat_ar, stats.sigma2_ar, rng);
        fill_cgaussian(d.e_ar, stats.sigma2tilde_ar, rng);
        fill_cgaussian(d.ghat_rb, stats.sigma2_rb, rng);
        fill_cgaussian(d.e_rb, stats.sigma2tilde_rb, rng);
        d.g_ar = d.ghat_ar + d.e_ar;
        d.g_rb = d.ghat_rb + d.e_rb;
        return d;
    }
    if (cfg.tau_p < 2 * n) throw std::invalid_argument("pilot mode requires tau_p >= 2N");
    d.g_ar.resize(m, n);
    d.g_rb.resize(m, n);
    fill_cgaussian(d.g_ar, fading.beta_ar, rng);
    fill_cgaussian(d.g_rb, fading.beta_rb, rng);
    // tau_p * p_p recovered from the stats: sigma2 / (sigma2tilde * beta)
    const double tpp = stats.sigma2tilde_ar[0] > 0.0 && fading.beta_ar[0] > 0.0
                           ? stats.sigma2_ar[0] / (stats.sigma2tilde_ar[0] * fading.beta_ar[0])
                           : 0.0;
    if (tpp <= 0.0) {  // no training power: estimates carry no information
        d.ghat_ar = MatrixXcd::Zero(m, n);
        d.ghat_rb = MatrixXcd::Zero(m, n);
        d.e_ar = d.g_ar;
        d.e_rb = d.g_rb;
        return d;
    }
    // Orthonormal pilots: Phi_A column i is the i-th, Phi_B column i the
    // (N+i)-th unit vector of length tau_p. Build the received pilot block
    // Y_p = sqrt(tau_p p_p) (G_ar Phi_A^T + G_rb Phi_B^T) + N_p, de-spread
    // with Phi^* and apply the per-user MMSE filter D~ (diagonal).
    const double amp = std::sqrt(tpp);
    MatrixXcd yp(m, cfg.tau_p);
    for (int j = 0; j < cfg.tau_p; ++j)
        for (int i = 0; i < m; ++i) yp(i, j) = rng.cgaussian(1.0);
    yp.block(0, 0, m, n) += amp * d.g_ar;
    yp.block(0, n, m, n) += amp * d.g_rb;
    d.ghat_ar.resize(m, n);
    d.ghat_rb.resize(m, n);
    for (int j = 0; j < n; ++j) {
        const double filt_ar = tpp * fading.beta_ar[j] / (1.0 + tpp * fading.beta_ar[j]);
        const double filt_rb = tpp * fading.beta_rb[j] / (1.0 + tpp * fading.beta_rb[j]);
        d.ghat_ar.col(j) = (filt_ar / amp) * yp.col(j);
        d.ghat_rb.col(j) = (filt_rb / amp) * yp.col(n + j);
    }
    d.e_ar = d.g_ar - d.ghat_ar;
    d.e_rb = d.g_rb - d.ghat_rb;
    return d;
}

AfSimResult simulate_af_sum_se(const SystemConfig& cfg, const FadingProfile& fading,
                               const PowerProfile& powers, const McOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const int n = cfg.n;
    const double m = double(cfg.m);
    const EstimationStats stats = estimation_stats(cfg, fading, powers.p_p);
    const double rho2 = af_rho_squared(cfg, stats, fading, powers);
    const double inv_rho2 = rho2 > 0.0 ? 1.0 / rho2 : std::numeric_limits<double>::infinity();

    const long num_chunks = (opt.trials + opt.chunk_size - 1) / opt.chunk_size;
    std::vector<AfAccum> acc(num_chunks);
    for (auto& a : acc) a.init(n);

    parallel_chunks(opt.trials, opt.chunk_size, opt.threads, [&](long begin, long end, long ci) {
        AfAccum& a = acc[ci];
        for (long t = begin; t < end; ++t) {
            TrialRng rng(cfg.seed, static_cast<std::uint64_t>(t));
            const ChannelDraw d = sample_channels(cfg, fading, stats, rng, opt.mode);
            MatrixXcd am(cfg.m, 2 * n), bm(cfg.m, 2 * n);
            am << d.ghat_ar, d.ghat_rb;
            bm << d.ghat_rb, d.ghat_ar;
            const MatrixXcd bc = bm.conjugate();
            const MatrixXcd la = d.g_ar.transpose() * bc;  // N x 2N
            const MatrixXcd lb = d.g_rb.transpose() * bc;
            const MatrixXcd r_ar = am.adjoint() * d.g_ar;  // 2N x N
            const MatrixXcd r_rb = am.adjoint() * d.g_rb;
            const MatrixXcd gram_a = am.adjoint() * am;
            const MatrixXcd gram_bc = (bm.adjoint() * bm).conjugate();
            const MatrixXcd p_aa = la * r_ar;  // (i,j): g_ar_i^T F g_ar_j
            const MatrixXcd p_ab = la * r_rb;
            const MatrixXcd p_ba = lb * r_ar;
            const MatrixXcd p_bb = lb * r_rb;
            for (int i = 0; i < n; ++i) {
                double inter_a = 0.0, inter_b = 0.0;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    inter_a += powers.p_a[j] * std::norm(p_aa(i, j)) +
                               powers.p_b[j] * std::norm(p_ab(i, j));
                    inter_b += powers.p_a[j] * std::norm(p_ba(i, j)) +
                               powers.p_b[j] * std::norm(p_bb(i, j));
                }
                const double noise_a = (la.row(i) * gram_a * la.row(i).adjoint())(0, 0).real();
                const double noise_b = (lb.row(i) * gram_a * lb.row(i).adjoint())(0, 0).real();
                const double den_a = powers.p_b[i] * std::norm(p_ab(i, i)) +
                                     powers.p_a[i] * std::norm(p_aa(i, i)) + inter_a + noise_a;
                const double den_b = powers.p_a[i] * std::norm(p_ba(i, i)) +
                                     powers.p_b[i] * std::norm(p_bb(i, i)) + inter_b + noise_b;
                check_finite(den_a, "AF denominator");
                check_finite(den_b, "AF denominator");
                a.den_sum_a[i] += den_a;
                a.den_sq_a[i] += den_a * den_a;
                a.den_sum_b[i] += den_b;
                a.den_sq_b[i] += den_b * den_b;
                a.desired_mean_a[i] += p_ab(i, i);
                a.desired_mean_b[i] += p_ba(i, i);
                a.self_mean_a[i] += p_aa(i, i);
            }
            double q = (gram_bc * gram_a).trace().real();
            for (int i = 0; i < n; ++i) {
                q += powers.p_a[i] * (r_ar.col(i).adjoint() * gram_bc * r_ar.col(i))(0, 0).real();
                q += powers.p_b[i] * (r_rb.col(i).adjoint() * gram_bc * r_rb.col(i))(0, 0).real();
            }
            check_finite(q, "relay output power");
            a.q_sum += q;
            a.q_sq += q * q;
        }
    });

    AfAccum total;
    total.init(n);
    for (const auto& a : acc) total.add(a);

    AfSimResult res;
    res.user_a.resize(n);
    res.user_b.resize(n);
    res.self_gain_mean_a.resize(n);
    const long trials = opt.trials;
    double sum_se = 0.0, sum_hw_sq = 0.0;
    for (Side side : {Side::A, Side::B}) {
        const bool is_a = side == Side::A;
        const VectorXd& den_sum = is_a ? total.den_sum_a : total.den_sum_b;
        const VectorXd& den_sq = is_a ? total.den_sq_a : total.den_sq_b;
        const Eigen::VectorXcd& desired = is_a ? total.desired_mean_a : total.desired_mean_b;
        const Eigen::VectorXd& p_peer = is_a ? powers.p_b : powers.p_a;
        for (int i = 0; i < n; ++i) {
            const double analytic_mean = m * (m + 1.0) * stats.sigma2_ar[i] * stats.sigma2_rb[i];
            const double mean_sq = opt.empirical_desired_power
                                       ? std::norm(desired[i] / double(trials))
                                       : analytic_mean * analytic_mean;
            const double numerator = p_peer[i] * mean_sq;
            McEstimate den = make_estimate(den_sum[i], den_sq[i], trials);
            const double d_mean = den.mean - p_peer[i] * mean_sq + inv_rho2;
            const double d_lo = d_mean - den.half_width_95;
            const double d_hi = d_mean + den.half_width_95;
            SinrEstimate& u = is_a ? res.user_a[i] : res.user_b[i];
            u.sinr = numerator > 0.0 ? numerator / d_mean : 0.0;
            u.sinr_lo = numerator > 0.0 ? numerator / d_hi : 0.0;
            u.sinr_hi = numerator > 0.0 && d_lo > 0.0 ? numerator / d_lo
                                                      : (numerator > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
            u.se.trials = trials;
            u.se.mean = se_map(u.sinr);
            u.se.half_width_95 = 0.5 * (se_map(u.sinr_hi) - se_map(u.sinr_lo));
            sum_se += u.se.mean;
            sum_hw_sq += u.se.half_width_95 * u.se.half_width_95;
        }
    }
    for (int i = 0; i < n; ++i) res.self_gain_mean_a[i] = total.self_mean_a[i] / double(trials);
    res.sum_se.trials = trials;
    res.sum_se.mean = cfg.overhead() * sum_se;
    res.sum_se.half_width_95 = cfg.overhead() * std::sqrt(sum_hw_sq);
    return res;
}

double df_conditional_denominator(const SystemConfig& cfg, const EstimationStats& stats,
                                  const PowerProfile& powers, const ChannelDraw& draw, int pair) {
    const int i = pair;
    const Eigen::VectorXcd ghat_ar_i = draw.ghat_ar.col(i);
    const Eigen::VectorXcd ghat_rb_i = draw.ghat_rb.col(i);
    const double n2 = ghat_ar_i.squaredNorm() + ghat_rb_i.squaredNorm();
    double den = n2 * (powers.p_a[i] * stats.sigma2tilde_ar[i] +
                       powers.p_b[i] * stats.sigma2tilde_rb[i]);  // own estimation errors
    for (int j = 0; j < cfg.n; ++j) {
        if (j == i) continue;
        const double cross_a = (ghat_ar_i.adjoint() * draw.ghat_ar.col(j)).squaredNorm() +
                               (ghat_rb_i.adjoint() * draw.ghat_ar.col(j)).squaredNorm();
        const double cross_b = (ghat_ar_i.adjoint() * draw.ghat_rb.col(j)).squaredNorm() +
                               (ghat_rb_i.adjoint() * draw.ghat_rb.col(j)).squaredNorm();
        den += powers.p_a[j] * (cross_a + n2 * stats.sigma2tilde_ar[j]);
        den += powers.p_b[j] * (cross_b + n2 * stats.sigma2tilde_rb[j]);
    }
    return den + n2;  // + compound noise
}

DfSimResult simulate_df_sum_se(const SystemConfig& cfg, const FadingProfile& fading,
                               const PowerProfile& powers, const McOptions& opt) {
    if (opt.trials < 1) throw std::invalid_argument("trials must be >= 1");
    const int n = cfg.n;
    const EstimationStats stats = estimation_stats(cfg, fading, powers.p_p);

    const long num_chunks = (opt.trials + opt.chunk_size - 1) / opt.chunk_size;
    std::vector<DfAccum> acc(num_chunks);
    for (auto& a : acc) a.init(n);

    parallel_chunks(opt.trials, opt.chunk_size, opt.threads, [&](long begin, long end, long ci) {
        DfAccum& a = acc[ci];
        for (long t = begin; t < end; ++t) {
            TrialRng rng(cfg.seed, static_cast<std::uint64_t>(t));
            const ChannelDraw d = sample_channels(cfg, fading, stats, rng, opt.mode);
            const MatrixXcd ha = d.ghat_ar.adjoint() * d.ghat_ar;
            const MatrixXcd hb = d.ghat_rb.adjoint() * d.ghat_rb;
            const MatrixXcd hx = d.ghat_ar.adjoint() * d.ghat_rb;
            for (int i = 0; i < n; ++i) {
                const double n2 = ha(i, i).real() + hb(i, i).real();
                double den = n2 * (powers.p_a[i] * stats.sigma2tilde_ar[i] +
                                   powers.p_b[i] * stats.sigma2tilde_rb[i]) +
                             n2;
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    den += powers.p_a[j] * (std::norm(ha(i, j)) + std::norm(hx(j, i)) +
                                            n2 * stats.sigma2tilde_ar[j]);
                    den += powers.p_b[j] * (std::norm(hx(i, j)) + std::norm(hb(i, j)) +
                                            n2 * stats.sigma2tilde_rb[j]);
                }
                const double sig_a =
                    powers.p_a[i] * (std::norm(ha(i, i)) + std::norm(hx(i, i)));
                const double sig_b =
                    powers.p_b[i] * (std::norm(hx(i, i)) + std::norm(hb(i, i)));
                check_finite(den, "DF denominator");
                const double r1 = se_map((sig_a + sig_b) / den);
                const double rar = se_map(sig_a / den);
                const double rbr = se_map(sig_b / den);
                a.r1_sum[i] += r1;
                a.r1_sq[i] += r1 * r1;
                a.rar_sum[i] += rar;
                a.rar_sq[i] += rar * rar;
                a.rbr_sum[i] += rbr;
                a.rbr_sq[i] += rbr * rbr;
            }
        }
    });

    DfAccum total;
    total.init(n);
    for (const auto& a : acc) total.add(a);

    DfSimResult res;
    res.pairs.resize(n);
    double sum = 0.0, hw_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        DfPairEstimate& p = res.pairs[i];
        p.r1 = make_estimate(total.r1_sum[i], total.r1_sq[i], opt.trials);
        p.r_ar = make_estimate(total.rar_sum[i], total.rar_sq[i], opt.trials);
        p.r_br = make_estimate(total.rbr_sum[i], total.rbr_sq[i], opt.trials);
        p.r_ra = se_map(df_second_phase_sinr(cfg, stats, fading, powers, i, Side::A));
        p.r_rb = se_map(df_second_phase_sinr(cfg, stats, fading, powers, i, Side::B));
        p.r2 = std::min(p.r_ar.mean, p.r_rb) + std::min(p.r_br.mean, p.r_ra);
        p.rate = std::min(p.r1.mean, p.r2);
        sum += p.rate;
        const double hw = p.r1.mean <= p.r2 ? p.r1.half_width_95
                                            : std::hypot(p.r_ar.half_width_95, p.r_br.half_width_95);
        hw_sq += hw * hw;
    }
    res.sum_se.trials = opt.trials;
    res.sum_se.mean = cfg.overhead() * sum;
    res.sum_se.half_width_95 = cfg.overhead() * std::sqrt(hw_sq);
    return res;
}

RhoEstimate rho_af_empirical(const SystemConfig& cfg, const FadingProfile& fading,
                             const PowerProfile& powers, const McOptions& opt) {
    const int n = cfg.n;
    const EstimationStats stats = estimation_stats(cfg, fading, powers.p_p);
    const long num_chunks = (opt.trials + opt.chunk_size - 1) / opt.chunk_size;
    std::vector<double> q_sum(num_chunks, 0.0), q_sq(num_chunks, 0.0);

    parallel_chunks(opt.trials, opt.chunk_size, opt.threads, [&](long begin, long end, long ci) {
        for (long t = begin; t < end; ++t) {
            TrialRng rng(cfg.seed, static_cast<std::uint64_t>(t));
            const ChannelDraw d = sample_channels(cfg, fading, stats, rng, opt.mode);
            MatrixXcd am(cfg.m, 2 * n), bm(cfg.m, 2 * n);
            am << d.ghat_ar, d.ghat_rb;
            bm << d.ghat_rb, d.ghat_ar;
            const MatrixXcd gram_a = am.adjoint() * am;
            const MatrixXcd gram_bc = (bm.adjoint() * bm).conjugate();
            const MatrixXcd r_ar = am.adjoint() * d.g_ar;
            const MatrixXcd r_rb = am.adjoint() * d.g_rb;
            double q = (gram_bc * gram_a).trace().real();
            for (int i = 0; i < n; ++i) {
                q += powers.p_a[i] * (r_ar.col(i).adjoint() * gram_bc * r_ar.col(i))(0, 0).real();
                q += powers.p_b[i] * (r_rb.col(i).adjoint() * gram_bc * r_rb.col(i))(0, 0).real();
            }
            q_sum[ci] += q;
            q_sq[ci] += q * q;
        }
    });

    double sum = 0.0, sq = 0.0;
    for (long c = 0; c < num_chunks; ++c) {
        sum += q_sum[c];
        sq += q_sq[c];
    }
    const McEstimate q = make_estimate(sum, sq, opt.trials);
    RhoEstimate r;
    r.trials = opt.trials;
    if (powers.p_r <= 0.0 || q.mean <= 0.0) return r;  // rho^2 = 0
    r.rho2 = powers.p_r / q.mean;
    r.lo = powers.p_r / (q.mean + q.half_width_95);
    r.hi = powers.p_r / std::max(q.mean - q.half_width_95, 1e-300);
    return r;
}

Lemma1Report lemma1_diagnostics(int m, double sigma_x2, double sigma_y2, long trials,
                                std::uint64_t seed) {
    double xx = 0.0, xy2 = 0.0;
    std::complex<double> xy = 0.0;
    for (long t = 0; t < trials; ++t) {
        TrialRng rng(seed, static_cast<std::uint64_t>(t));
        Eigen::VectorXcd x(m), y(m);
        for (int i = 0; i < m; ++i) x[i] = rng.cgaussian(sigma_x2);
        for (int i = 0; i < m; ++i) y[i] = rng.cgaussian(sigma_y2);
        const std::complex<double> dot = x.adjoint() * y;
        xx += x.squaredNorm() / double(m);
        xy += dot / double(m);
        xy2 += std::norm(dot) / (double(m) * double(m));
    }
    Lemma1Report rep;
    rep.xx_dev = std::abs(xx / double(trials) - sigma_x2);
    rep.xy_dev = std::abs(xy / double(trials));
    rep.xy2_dev = std::abs(xy2 / double(trials) - sigma_x2 * sigma_y2 / double(m));
    rep.scale = 1.0 / std::sqrt(double(m) * double(trials));
    return rep;
}

}  // namespace relaysim
