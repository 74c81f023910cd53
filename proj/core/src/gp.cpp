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

#include "relaysim/gp.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace relaysim {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

// log-sum-exp function of u: f(u) = log sum_k exp(logc_k + a_k . u)
struct Lse {
    std::vector<double> logc;
    std::vector<std::vector<std::pair<int, double>>> rows;  // sparse exponent rows

    double eval(const VectorXd& u, VectorXd* grad, MatrixXd* hess) const {
        const int k = static_cast<int>(logc.size());
        thread_local std::vector<double> y;
        y.assign(k, 0.0);
        double ymax = -kInf;
        for (int t = 0; t < k; ++t) {
            double v = logc[t];
            for (const auto& [j, e] : rows[t]) v += e * u[j];
            y[t] = v;
            ymax = std::max(ymax, v);
        }
        double z = 0.0;
        for (int t = 0; t < k; ++t) {
            y[t] = std::exp(y[t] - ymax);
            z += y[t];
        }
        if (grad) {
            grad->setZero();
            for (int t = 0; t < k; ++t) {
                const double p = y[t] / z;
                for (const auto& [j, e] : rows[t]) (*grad)[j] += p * e;
            }
        }
        if (hess) {
            hess->setZero();
            for (int t = 0; t < k; ++t) {
                const double p = y[t] / z;
                for (const auto& [j1, e1] : rows[t])
                    for (const auto& [j2, e2] : rows[t]) (*hess)(j1, j2) += p * e1 * e2;
            }
            // subtract the softmax-mean outer product
            VectorXd g = VectorXd::Zero(u.size());
            for (int t = 0; t < k; ++t) {
                const double p = y[t] / z;
                for (const auto& [j, e] : rows[t]) g[j] += p * e;
            }
            hess->noalias() -= g * g.transpose();
        }
        return ymax + std::log(z);
    }
};

struct Compiled {
    std::vector<std::string> vars;  // sorted, defines the index space
    Lse objective;
    std::vector<Lse> constraints;  // includes bound constraints
};

int var_index(const std::vector<std::string>& vars, const std::string& name) {
    const auto it = std::lower_bound(vars.begin(), vars.end(), name);
    return static_cast<int>(it - vars.begin());
}

Lse compile_posynomial(const Posynomial& p, const std::vector<std::string>& vars) {
    Lse f;
    for (const Monomial& m : p.terms) {
        if (!(m.coeff > 0.0))
            throw std::invalid_argument("monomial coefficients must be positive");
        f.logc.push_back(std::log(m.coeff));
        std::vector<std::pair<int, double>> row;
        for (const auto& [name, e] : m.exponents)
            if (e != 0.0) row.emplace_back(var_index(vars, name), e);
        f.rows.push_back(std::move(row));
    }
    if (f.logc.empty()) throw std::invalid_argument("posynomial must have at least one term");
    return f;
}

Compiled compile(const GpProblem& p) {
    std::set<std::string> names;
    auto collect = [&names](const Posynomial& poly) {
        for (const Monomial& m : poly.terms)
            for (const auto& [name, e] : m.exponents)
                if (e != 0.0) names.insert(name);
    };
    collect(p.objective);
    for (const auto& c : p.constraints) collect(c);
    for (const auto& [name, b] : p.bounds) names.insert(name);

    Compiled c;
    c.vars.assign(names.begin(), names.end());
    c.objective = compile_posynomial(p.objective, c.vars);
    for (const auto& poly : p.constraints) c.constraints.push_back(compile_posynomial(poly, c.vars));
    for (const auto& [name, b] : p.bounds) {
        if (!(b.first > 0.0) || !(b.second >= b.first))
            throw std::invalid_argument("bounds must satisfy 0 < lo <= hi");
        const int j = var_index(c.vars, name);
        Lse hi;  // x / hi <= 1
        hi.logc = {-std::log(b.second)};
        hi.rows = {{{j, 1.0}}};
        c.constraints.push_back(std::move(hi));
        Lse lo;  // lo / x <= 1
        lo.logc = {std::log(b.first)};
        lo.rows = {{{j, -1.0}}};
        c.constraints.push_back(std::move(lo));
    }
    return c;
}

struct SolveScratch {
    int newton_total = 0;
    VectorXd last_direction;
};

// Barrier centering for minimize t*f0 + phi(u) with phi = -sum log(-f_i).
// The objective may be an Lse or the linear phase-I objective (lse == nullptr,
// then f0(u) = u[lin_index]).
struct BarrierProblem {
    const Lse* f0 = nullptr;
    int lin_index = -1;  // phase-I: objective is u[lin_index]
    const std::vector<Lse>* cons = nullptr;

    double objective(const VectorXd& u, VectorXd* g, MatrixXd* h) const {
        if (f0) return f0->eval(u, g, h);
        if (g) {
            g->setZero();
            (*g)[lin_index] = 1.0;
        }
        if (h) h->setZero();
        return u[lin_index];
    }
};

bool strictly_feasible(const BarrierProblem& bp, const VectorXd& u, double margin = 0.0) {
    for (const Lse& c : *bp.cons)
        if (c.eval(u, nullptr, nullptr) >= -margin) return false;
    return true;
}

enum class CenterResult { Converged, MaxIterations, Diverging };

// One centering stage. early_exit: stop as soon as u[lin_index] < early_value
// (used by phase I once strict feasibility is certain).
CenterResult center(const BarrierProblem& bp, double t, VectorXd& u, double newton_tol,
                    SolveScratch& scratch, double early_value = -kInf,
                    bool floor_exit = true) {
    const int nv = static_cast<int>(u.size());
    const int m = static_cast<int>(bp.cons->size());
    VectorXd g(nv), gi(nv), grad(nv);
    MatrixXd h(nv, nv), hi(nv, nv), hess(nv, nv);

    auto barrier_value = [&](const VectorXd& point) -> double {
        double val = t * bp.objective(point, nullptr, nullptr);
        for (const Lse& c : *bp.cons) {
            const double f = c.eval(point, nullptr, nullptr);
            if (f >= 0.0) return kInf;
            val -= std::log(-f);
        }
        return val;
    };

    // The decrement bounds the barrier-value suboptimality, which carries a
    // factor t relative to the objective; scale the threshold accordingly but
    // never leave the quadratic-convergence zone (lambda <= 1/4).
    const double decrement_tol = std::min(0.03125, std::max(newton_tol, newton_tol * t));
    double prev_val = kInf;
    double prev_lambda2 = kInf;
    int stalled = 0;
    int stagnant = 0;
    for (int it = 0; it < 250; ++it) {
        ++scratch.newton_total;
        double val = t * bp.objective(u, &g, &h);
        grad = t * g;
        hess = t * h;
        for (int i = 0; i < m; ++i) {
            const double f = (*bp.cons)[i].eval(u, &gi, &hi);
            const double inv = 1.0 / (-f);
            val -= std::log(-f);
            grad.noalias() += inv * gi;
            hess.noalias() += inv * hi;
            hess.noalias() += (inv * inv) * gi * gi.transpose();
        }
        // at large t the decrement drops below what doubles can resolve in the
        // barrier value; treat a flat stretch as a converged center
        if (prev_val - val <= 1e-13 * (std::abs(val) + 1.0)) {
            if (++stalled >= 2) return CenterResult::Converged;
        } else {
            stalled = 0;
        }
        prev_val = val;
        // guard against singular Hessians (flat directions)
        const double reg = 1e-12 * std::max(1.0, hess.diagonal().cwiseAbs().maxCoeff());
        hess.diagonal().array() += reg;
        const auto ldlt = hess.ldlt();
        VectorXd d = ldlt.solve(-grad);
        d += ldlt.solve(-grad - hess * d);  // one refinement step for ill-conditioned stages
        scratch.last_direction = d;
        const double lambda2 = -grad.dot(d);
        if (lambda2 / 2.0 <= decrement_tol) return CenterResult::Converged;
        if (!std::isfinite(lambda2)) return CenterResult::Diverging;
        if (lambda2 <= 0.0) return CenterResult::Converged;

        // damped phase: full Newton steps overshoot while the decrement is
        // large, so start from the self-concordant step length; huge steps on
        // flat objectives are trimmed to stay in representable range
        double step = lambda2 > 0.0625 ? 1.0 / (1.0 + std::sqrt(lambda2)) : 1.0;
        const double reach = d.lpNorm<Eigen::Infinity>();
        if (step * reach > 50.0) step = 50.0 / reach;
        // ill-conditioned stages (curvature ~ t^2) hit the double-precision
        // floor: a decrement that stops contracting means no resolvable
        // progress is left
        if (floor_exit && lambda2 > 0.95 * prev_lambda2) {
            if (++stagnant >= 8) return CenterResult::Converged;
        } else {
            stagnant = 0;
        }
        prev_lambda2 = std::min(prev_lambda2, lambda2);
        const double slope = grad.dot(d);
        int bt = 0;
        for (; bt < 80; ++bt) {
            const VectorXd cand = u + step * d;
            const double cand_val = barrier_value(cand);
            if (std::isfinite(cand_val) && cand_val <= val + 0.3 * step * slope) break;
            step *= 0.5;
        }
        if (bt == 80) return CenterResult::Converged;  // no further progress possible
        if (step * d.lpNorm<Eigen::Infinity>() < 1e-12 && ++stalled >= 2)
            return CenterResult::Converged;
        const double old_norm = u.lpNorm<Eigen::Infinity>();
        u += step * d;
        if (bp.lin_index >= 0 && u[bp.lin_index] < early_value) return CenterResult::Converged;
        const double new_norm = u.lpNorm<Eigen::Infinity>();
        if (new_norm > 350.0 && new_norm > old_norm) return CenterResult::Diverging;
    }
    return CenterResult::MaxIterations;
}

// Unconstrained Newton minimization of an Lse (used when a GP has no
// constraints at all). Unboundedness shows up as divergence.
CenterResult minimize_unconstrained(const Lse& f, VectorXd& u, double tol, SolveScratch& scratch) {
    const int nv = static_cast<int>(u.size());
    VectorXd g(nv);
    MatrixXd h(nv, nv);
    for (int it = 0; it < 250; ++it) {
        ++scratch.newton_total;
        const double val = f.eval(u, &g, &h);
        const double reg = 1e-12 * std::max(1.0, h.diagonal().cwiseAbs().maxCoeff());
        h.diagonal().array() += reg;
        const VectorXd d = h.ldlt().solve(-g);
        scratch.last_direction = d;
        const double lambda2 = -g.dot(d);
        if (lambda2 / 2.0 <= tol) return CenterResult::Converged;
        double step = 1.0;
        const double reach = d.lpNorm<Eigen::Infinity>();
        if (step * reach > 50.0) step = 50.0 / reach;
        int bt = 0;
        for (; bt < 80; ++bt) {
            if (f.eval(u + step * d, nullptr, nullptr) <= val + 0.3 * step * g.dot(d)) break;
            step *= 0.5;
        }
        if (bt == 80) return CenterResult::Converged;
        const double old_norm = u.lpNorm<Eigen::Infinity>();
        u += step * d;
        const double new_norm = u.lpNorm<Eigen::Infinity>();
        if (new_norm > 350.0 && new_norm > old_norm) return CenterResult::Diverging;
    }
    return CenterResult::MaxIterations;
}

// A descent ray certifies unboundedness when every objective term strictly
// decreases along it and no constraint term increases.
bool certify_unbounded_ray(const Compiled& c, const VectorXd& d) {
    if (d.norm() == 0.0) return false;
    const VectorXd dir = d / d.norm();
    auto row_dot = [&dir](const std::vector<std::pair<int, double>>& row) {
        double s = 0.0;
        for (const auto& [j, e] : row) s += e * dir[j];
        return s;
    };
    for (const auto& row : c.objective.rows)
        if (row_dot(row) > -1e-10) return false;
    for (const Lse& con : c.constraints)
        for (const auto& row : con.rows)
            if (row_dot(row) > 1e-12) return false;
    return true;
}

}  // namespace

double eval_monomial(const Monomial& m, const GpPoint& point) {
    double v = m.coeff;
    for (const auto& [name, e] : m.exponents) {
        const auto it = point.find(name);
        if (it == point.end()) throw std::domain_error("missing variable " + name);
        if (!(it->second > 0.0)) throw std::domain_error("nonpositive coordinate " + name);
        v *= std::pow(it->second, e);
    }
    return v;
}

double eval_posynomial(const Posynomial& p, const GpPoint& point) {
    if (p.terms.empty()) throw std::invalid_argument("posynomial must have at least one term");
    double v = 0.0;
    for (const Monomial& m : p.terms) v += eval_monomial(m, point);
    return v;
}

Monomial monomial_approx(const Posynomial& p, const GpPoint& anchor) {
    const double total = eval_posynomial(p, anchor);
    Monomial out;
    std::map<std::string, double> expo;
    for (const Monomial& m : p.terms) {
        const double share = eval_monomial(m, anchor) / total;
        for (const auto& [name, e] : m.exponents) expo[name] += share * e;
    }
    double log_coeff = std::log(total);
    for (const auto& [name, e] : expo) {
        if (e == 0.0) continue;
        log_coeff -= e * std::log(anchor.at(name));
        out.exponents[name] = e;
    }
    out.coeff = std::exp(log_coeff);
    return out;
}

Monomial am_gm_lower_bound(const Posynomial& p, const GpPoint& anchor) {
    const double total = eval_posynomial(p, anchor);
    Monomial out;
    double log_coeff = 0.0;
    std::map<std::string, double> expo;
    for (const Monomial& m : p.terms) {
        const double nu = eval_monomial(m, anchor) / total;
        if (nu <= 0.0) continue;
        log_coeff += nu * (std::log(m.coeff) - std::log(nu));
        for (const auto& [name, e] : m.exponents) expo[name] += nu * e;
    }
    for (const auto& [name, e] : expo)
        if (e != 0.0) out.exponents[name] = e;
    out.coeff = std::exp(log_coeff);
    return out;
}

GpResult gp_solve(const GpProblem& problem, double tol, const GpPoint* start) {
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
    const Compiled c = compile(problem);
    const int nv = static_cast<int>(c.vars.size());
    const int m = static_cast<int>(c.constraints.size());
    SolveScratch scratch;

    VectorXd u = VectorXd::Zero(nv);
    for (int j = 0; j < nv; ++j) {
        const auto it = problem.bounds.find(c.vars[j]);
        if (it != problem.bounds.end())
            u[j] = 0.5 * (std::log(it->second.first) + std::log(it->second.second));
    }
    if (start) {
        for (int j = 0; j < nv; ++j) {
            const auto it = start->find(c.vars[j]);
            if (it != start->end() && it->second > 0.0) u[j] = std::log(it->second);
        }
    }

    GpResult res;
    const double newton_tol = tol / 10.0;

    if (m == 0) {
        const CenterResult cr = minimize_unconstrained(c.objective, u, newton_tol, scratch);
        if (cr == CenterResult::Diverging) {
            if (certify_unbounded_ray(c, scratch.last_direction))
                throw GpError(GpStatus::Unbounded, "objective decreases along a feasible ray");
            throw GpError(GpStatus::MaxIterations, "newton diverged without certificate");
        }
        if (cr == CenterResult::MaxIterations)
            throw GpError(GpStatus::MaxIterations, "newton iteration limit reached");
    } else {
        BarrierProblem bp;
        bp.cons = &c.constraints;

        if (!strictly_feasible(bp, u, 1e-10)) {
            // phase I: minimize s subject to f_i(u) - s <= 0 in the lifted space
            std::vector<Lse> lifted = c.constraints;
            for (Lse& con : lifted)
                for (auto& row : con.rows) row.emplace_back(nv, -1.0);
            VectorXd w(nv + 1);
            w.head(nv) = u;
            double worst = -kInf;
            for (const Lse& con : c.constraints)
                worst = std::max(worst, con.eval(u, nullptr, nullptr));
            w[nv] = worst + 1.0;

            BarrierProblem phase1;
            phase1.cons = &lifted;
            phase1.lin_index = nv;
            double t = 1.0;
            for (int outer = 0; outer < 60; ++outer) {
                // the line search keeps every iterate strictly feasible for the
                // lifted problem, so partial progress is usable even when the
                // stage ends by divergence (s running off to -infinity)
                const CenterResult cr = center(phase1, t, w, newton_tol, scratch, -1e-4, false);
                if (w[nv] < -1e-6) break;  // strictly feasible point found
                if (cr == CenterResult::Diverging) break;
                if (double(lifted.size()) / t < 1e-9) break;
                t *= 10.0;
            }
            if (w[nv] >= 0.0)
                throw GpError(GpStatus::Infeasible, "phase-I objective stayed positive");
            u = w.head(nv);
        }

        bp.f0 = &c.objective;
        double t = 1.0;
        bool done = false;
        for (int outer = 0; outer < 60 && !done; ++outer) {
            const CenterResult cr = center(bp, t, u, newton_tol, scratch);
            if (cr == CenterResult::Diverging) {
                if (certify_unbounded_ray(c, scratch.last_direction))
                    throw GpError(GpStatus::Unbounded, "objective decreases along a feasible ray");
                throw GpError(GpStatus::MaxIterations, "newton diverged without certificate");
            }
            if (cr == CenterResult::MaxIterations)
                throw GpError(GpStatus::MaxIterations, "newton iteration limit reached");
            if (double(m) / t < tol) done = true;
            t *= 10.0;
        }
        if (!done) throw GpError(GpStatus::MaxIterations, "barrier iteration limit reached");

        // KKT stationarity residual minimized over dual-feasible multipliers:
        // nonnegative least squares of -g0 against the constraint gradients
        // (Lawson-Hanson active set; the canonical barrier multipliers are far
        // noisier at ill-conditioned final stages)
        VectorXd g0(nv), gi(nv);
        c.objective.eval(u, &g0, nullptr);
        MatrixXd gmat(nv, m);
        for (int k = 0; k < m; ++k) {
            c.constraints[k].eval(u, &gi, nullptr);
            gmat.col(k) = gi;
        }
        std::vector<bool> in_set(m, false);
        VectorXd lam = VectorXd::Zero(m);
        VectorXd resid = g0;
        for (int pass = 0; pass < 4 * m + 8; ++pass) {
            int enter = -1;
            double best_w = 1e-12 * std::max(1.0, g0.norm());
            for (int k = 0; k < m; ++k) {
                if (in_set[k]) continue;
                const double w = -gmat.col(k).dot(resid);
                if (w > best_w) {
                    best_w = w;
                    enter = k;
                }
            }
            if (enter < 0) break;
            in_set[enter] = true;
            for (;;) {
                std::vector<int> act;
                for (int k = 0; k < m; ++k)
                    if (in_set[k]) act.push_back(k);
                MatrixXd sub(nv, act.size());
                for (std::size_t k = 0; k < act.size(); ++k) sub.col(k) = gmat.col(act[k]);
                MatrixXd gram = sub.transpose() * sub;
                gram.diagonal().array() += 1e-14 * std::max(1.0, gram.diagonal().maxCoeff());
                const VectorXd sol = gram.ldlt().solve(-sub.transpose() * g0);
                int worst = -1;
                for (std::size_t k = 0; k < act.size(); ++k)
                    if (sol[k] <= 0.0) worst = static_cast<int>(k);
                if (worst < 0) {
                    lam.setZero();
                    for (std::size_t k = 0; k < act.size(); ++k) lam[act[k]] = sol[k];
                    break;
                }
                in_set[act[worst]] = false;
                if (act.size() == 1) {
                    lam.setZero();
                    break;
                }
            }
            resid = g0 + gmat * lam;
        }
        res.kkt_residual = resid.norm();
    }

    res.status = GpStatus::Optimal;
    res.newton_iterations = scratch.newton_total;
    for (int j = 0; j < nv; ++j) res.x[c.vars[j]] = std::exp(u[j]);
    res.objective = std::exp(c.objective.eval(u, nullptr, nullptr));
    return res;
}

std::string gp_export(const GpProblem& problem) {
    std::ostringstream os;
    os.precision(17);
    auto emit = [&os](const Posynomial& p) {
        for (const Monomial& m : p.terms) {
            os << m.coeff;
            for (const auto& [name, e] : m.exponents)
                if (e != 0.0) os << ' ' << name << ':' << e;
            os << '\n';
        }
    };
    os << "objective:\n";
    emit(problem.objective);
    for (const Posynomial& c : problem.constraints) {
        os << "constraint:\n";
        emit(c);
    }
    if (!problem.bounds.empty()) {
        os << "bounds:\n";
        for (const auto& [name, b] : problem.bounds)
            os << name << ' ' << b.first << ' ' << b.second << '\n';
    }
    return os.str();
}

GpProblem gp_import(const std::string& text) {
    GpProblem p;
    std::istringstream is(text);
    std::string line;
    enum class Section { None, Objective, Constraint, Bounds } section = Section::None;
    Posynomial* current = nullptr;
    while (std::getline(is, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        line = line.substr(first);
        if (line[0] == '#') continue;
        if (line.rfind("objective:", 0) == 0) {
            section = Section::Objective;
            current = &p.objective;
            continue;
        }
        if (line.rfind("constraint:", 0) == 0) {
            section = Section::Constraint;
            p.constraints.emplace_back();
            current = &p.constraints.back();
            continue;
        }
        if (line.rfind("bounds:", 0) == 0) {
            section = Section::Bounds;
            current = nullptr;
            continue;
        }
        std::istringstream ls(line);
        if (section == Section::Bounds) {
            std::string name;
            double lo, hi;
            if (!(ls >> name >> lo >> hi)) throw std::invalid_argument("bad bounds line: " + line);
            p.bounds[name] = {lo, hi};
            continue;
        }
        if (!current) throw std::invalid_argument("monomial line outside a section: " + line);
        Monomial mono;
        if (!(ls >> mono.coeff)) throw std::invalid_argument("bad monomial line: " + line);
        std::string tok;
        while (ls >> tok) {
            const auto colon = tok.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("bad exponent token: " + tok);
            mono.exponents[tok.substr(0, colon)] = std::stod(tok.substr(colon + 1));
        }
        current->terms.push_back(std::move(mono));
    }
    if (p.objective.terms.empty()) throw std::invalid_argument("missing objective section");
    return p;
}

}  // namespace relaysim
