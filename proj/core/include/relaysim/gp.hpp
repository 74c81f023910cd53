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

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace relaysim {

/// c * prod_j x_j^(e_j) with c > 0.
struct Monomial {
    double coeff = 1.0;
    std::map<std::string, double> exponents;
};

/// Sum of monomials; positive at every positive point.
struct Posynomial {
    std::vector<Monomial> terms;

    Posynomial() = default;
    Posynomial(std::initializer_list<Monomial> t) : terms(t) {}
    explicit Posynomial(Monomial m) : terms{std::move(m)} {}
    Posynomial& operator+=(const Monomial& m) {
        terms.push_back(m);
        return *this;
    }
};

/// minimize objective s.t. each constraint <= 1, optional positive box
/// bounds per variable (bounds become single-term constraints internally).
struct GpProblem {
    Posynomial objective;
    std::vector<Posynomial> constraints;
    std::map<std::string, std::pair<double, double>> bounds;
};

enum class GpStatus { Optimal, Infeasible, Unbounded, MaxIterations };

struct GpResult {
    GpStatus status = GpStatus::Optimal;
    std::map<std::string, double> x;
    double objective = 0.0;
    double kkt_residual = 0.0;
    int newton_iterations = 0;  ///< total Newton steps (deterministic for identical input)
};

struct GpError : std::runtime_error {
    GpStatus status;
    GpError(GpStatus s, const std::string& what) : std::runtime_error(what), status(s) {}
};

using GpPoint = std::map<std::string, double>;

double eval_monomial(const Monomial& m, const GpPoint& point);

/// Throws std::domain_error on nonpositive coordinates.
double eval_posynomial(const Posynomial& p, const GpPoint& point);

/// Best local monomial approximation at the anchor: value and gradient of
/// log p match in log coordinates. For a posynomial this coincides with the
/// arithmetic-geometric-mean bound, so the result underestimates p globally.
Monomial monomial_approx(const Posynomial& p, const GpPoint& anchor);

/// prod_k (term_k / nu_k)^(nu_k) with nu_k the value share of term k at the
/// anchor; equals p at the anchor and lower-bounds it everywhere.
Monomial am_gm_lower_bound(const Posynomial& p, const GpPoint& anchor);

/// Solves the GP by the standard log-domain transform (x = exp u) and a
/// damped-Newton barrier method. Returns a point with KKT residual <= tol
/// and every constraint <= 1 + 10 tol. An optional start point is used when
/// strictly feasible, otherwise a phase-I problem finds one. Throws GpError
/// on infeasible or unbounded problems.
GpResult gp_solve(const GpProblem& problem, double tol = 1e-8, const GpPoint* start = nullptr);

/// Plain-text round-trip format: sections "objective:", "constraint:" (one
/// per constraint), "bounds:"; one monomial per line as
/// "coeff name:exponent ...", bounds as "name lo hi".
std::string gp_export(const GpProblem& problem);
GpProblem gp_import(const std::string& text);

}  // namespace relaysim
