// SPDX-License-Identifier: Apache-2.0
//
// pamq: symbol error analysis for low-resolution PAM receivers
// Copyright (C) 2026 The pamq authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pamq/sep.hpp"

#include "pamq/detector.hpp"
#include "pamq/specfun.hpp"
#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace pamq {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClampSlack = 1e-12;
constexpr double kQuadTolerance = 1e-10;

/// Neumaier summation after sorting by decreasing magnitude.
double compensated_sum(std::vector<double> terms)
{
    std::sort(terms.begin(), terms.end(), [](double a, double b) { return std::abs(a) > std::abs(b); });
    double sum = 0.0;
    double comp = 0.0;
    for (double t : terms) {
        const double s = sum + t;
        if (std::abs(sum) >= std::abs(t)) {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    return sum + comp;
}

/// Gamma(m, m z / omega) / Gamma(m), i.e. P(Z > z).
double survival(double m, double omega, double z)
{
    if (z == kInf) {
        return 0.0;
    }
    return upper_gamma_reg(m, m * z / omega);
}

void check_h_args(double m, double omega, double b, double c, double z_lo, double z_hi)
{
    if (!(m >= 0.5) || !(omega > 0.0) || !std::isfinite(omega)) {
        throw std::domain_error("H function: need m >= 1/2 and omega > 0");
    }
    if (!(b >= 0.0) || !std::isfinite(b) || !(c >= 0.0)) {
        throw std::domain_error("H function: need b >= 0 finite and c >= 0");
    }
    if (!(z_lo >= 0.0) || !(z_lo <= z_hi) || std::isnan(z_hi)) {
        throw std::domain_error("H function: need 0 <= z_lo <= z_hi");
    }
}

double finalize_probability(double p, const char* engine)
{
    if (p < 0.0 && p >= -kClampSlack) {
        return 0.0;
    }
    if (p > 1.0 && p <= 1.0 + kClampSlack) {
        return 1.0;
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw NumericalError(std::string(engine) + ": SEP " + std::to_string(p) + " outside [0, 1]");
    }
    return p;
}

/// Scaled boundary c_y = sqrt(2) q_y / sigma, +inf for the saturation edge.
double scaled_boundary(const Quantizer& q, int y, double sigma)
{
    const double qy = q.boundary(y);
    return qy == kInf ? kInf : std::numbers::sqrt2 * qy / sigma;
}

void check_system(const ChannelModel& ch, double snr_lin)
{
    ch.validate();
    if (!(snr_lin > 0.0) || !std::isfinite(snr_lin)) {
        throw std::invalid_argument("SNR must be positive and finite");
    }
}

/// Breakpoints on the z axis where sqrt(b z) - c changes regime.
void add_transition_points(std::vector<double>& pts, double b, double c)
{
    if (!(b > 0.0) || !std::isfinite(c)) {
        return;
    }
    for (double shift : {-8.0, -3.0, 0.0, 3.0, 8.0}) {
        const double t = c + shift;
        if (t > 0.0) {
            pts.push_back(t * t / b);
        }
    }
}

void add_fading_points(std::vector<double>& pts, double m, double omega)
{
    for (double k : {0.01, 0.1, 1.0, 4.0, 16.0, 64.0}) {
        pts.push_back(k * omega * std::max(1.0, 1.0 / m));
    }
    pts.push_back(omega * (1.0 + 40.0 / m));
}

/// Integrate g(z) f_Z(z) over (z_lo, z_hi). The substitution z = w^k with
/// k = max(2, 2/m) removes the sqrt(z) kink of g and the z^(m-1) singularity
/// of the density at the origin.
QuadratureValue integrate_against_fading(const std::function<double(double)>& g, double m, double omega, double z_lo,
                                         double z_hi, std::vector<double> pts)
{
    add_fading_points(pts, m, omega);
    if (z_hi == kInf) {
        // Beyond this point the remaining Gamma mass is below e^-80 of what
        // lies past z_lo, and the integrand is bounded by 1.
        z_hi = z_lo + omega / m * (80.0 + 4.0 * m) + omega;
    }
    const double k = std::max(2.0, 2.0 / m);
    const double power = k * m - 1.0;
    const double log_norm = m * std::log(m / omega) - std::lgamma(m) + std::log(k);
    auto f = [&](double w) {
        const double z = std::pow(w, k);
        if (w <= 0.0) {
            return power == 0.0 ? g(0.0) * std::exp(log_norm) : 0.0;
        }
        const double weight = std::exp(log_norm + power * std::log(w) - m * z / omega);
        return weight == 0.0 ? 0.0 : g(z) * weight;
    };
    for (double& p : pts) {
        p = std::pow(p, 1.0 / k);
    }
    const detail::Integral r = detail::integrate(f, std::pow(z_lo, 1.0 / k), std::pow(z_hi, 1.0 / k), std::move(pts));
    return {r.value, r.abs_error, r.abs_error <= kQuadTolerance};
}

}  // namespace

const char* to_string(SepMethod m)
{
    switch (m) {
    case SepMethod::closed_form:
        return "closed_form";
    case SepMethod::quadrature:
        return "quadrature";
    case SepMethod::monte_carlo:
        return "monte_carlo";
    case SepMethod::noiseless:
        return "noiseless";
    case SepMethod::bound_upper:
        return "bound_upper";
    case SepMethod::bound_lower:
        return "bound_lower";
    case SepMethod::aqnm:
        return "aqnm";
    }
    return "unknown";
}

double gamma_mass(double m, double omega, double z_lo, double z_hi)
{
    if (!(z_lo < z_hi)) {
        return 0.0;
    }
    const double x_lo = m * z_lo / omega;
    if (z_hi == kInf) {
        return upper_gamma_reg(m, x_lo);
    }
    const double x_hi = m * z_hi / omega;
    const double mass = x_hi <= m ? lower_gamma_reg(m, x_hi) - lower_gamma_reg(m, x_lo)
                                  : upper_gamma_reg(m, x_lo) - upper_gamma_reg(m, x_hi);
    return std::max(mass, 0.0);
}

double h_function(int m, double omega, double b, double c, double z_lo, double z_hi)
{
    if (m < 1) {
        throw std::domain_error("H function series needs integer m >= 1");
    }
    check_h_args(m, omega, b, c, z_lo, z_hi);
    if (z_lo == z_hi) {
        return 0.0;
    }
    const double md = m;
    if (c == kInf) {
        return gamma_mass(md, omega, z_lo, z_hi);
    }
    if (b == 0.0) {
        return q_func(-c) * gamma_mass(md, omega, z_lo, z_hi);
    }

    auto boundary = [&](double z) { return z == kInf ? 0.0 : q_func(-c + std::sqrt(b * z)) * survival(md, omega, z); };

    const double ratio = 2.0 * md / (omega * b);  // k - 1
    const double k = 1.0 + ratio;
    const double sqrt_k = std::sqrt(k);
    const double log_k = std::log1p(ratio);
    auto u_of = [&](double z) { return z == kInf ? kInf : (k * std::sqrt(b * z) - c) / sqrt_k; };
    const double u_hi = u_of(z_hi);
    const double u_lo = u_of(z_lo);

    std::vector<double> terms;
    const double log_a = std::log(md / (omega * b));
    if (c > 0.0) {
        const double log_c = std::log(c);
        const double log_e = -0.5 * c * c * ratio / (ratio + 1.0);
        for (int r = 0; r < m; ++r) {
            for (int l = 0; l <= 2 * r; ++l) {
                const double fi = f_integral(u_hi, u_lo, l);
                if (fi == 0.0) {
                    continue;
                }
                const double log_binom = std::lgamma(2.0 * r + 1.0) - std::lgamma(l + 1.0) - std::lgamma(2.0 * r - l + 1.0);
                const double log_mag = r * log_a + log_binom + log_e + (2 * r - l) * log_c - std::lgamma(r + 1.0) -
                                       (2.0 * r - 0.5 * (l - 1)) * log_k;
                terms.push_back(std::exp(log_mag) * fi);
            }
        }
    } else {
        const double log_x = std::log(md / (omega * b + 2.0 * md));
        const double log_s = 0.5 * std::log(omega * b / (omega * b + 2.0 * md));
        for (int r = 0; r < m; ++r) {
            const double fi = f_integral(u_hi, u_lo, 2 * r);
            terms.push_back(std::exp(r * log_x + log_s - std::lgamma(r + 1.0)) * fi);
        }
    }
    const double series = compensated_sum(std::move(terms)) / std::sqrt(2.0 * std::numbers::pi);
    return compensated_sum({boundary(z_lo), -boundary(z_hi), -series});
}

QuadratureValue h_function_quad(double m, double omega, double b, double c, double z_lo, double z_hi)
{
    check_h_args(m, omega, b, c, z_lo, z_hi);
    if (z_lo == z_hi) {
        return {};
    }
    if (c == kInf || b == 0.0) {
        const double w = c == kInf ? 1.0 : q_func(-c);
        return {w * gamma_mass(m, omega, z_lo, z_hi), 0.0, true};
    }
    std::vector<double> pts;
    add_transition_points(pts, b, c);
    auto g = [&](double z) { return q_func(-c + std::sqrt(b * z)); };
    return integrate_against_fading(g, m, omega, z_lo, z_hi, std::move(pts));
}

SepResult sep_closed_form(const Constellation& c, const Quantizer& q, const ChannelModel& ch, double snr_lin)
{
    check_system(ch, snr_lin);
    if (!ch.integer_shape()) {
        throw std::invalid_argument("closed-form SEP needs integer m; use the quadrature engine");
    }
    const int m = static_cast<int>(ch.m);
    const double sigma = std::sqrt(noise_variance(c, snr_lin));
    std::vector<double> terms;
    for (int y = 1; y <= q.levels() + 1; ++y) {
        const double c_hi = scaled_boundary(q, y, sigma);
        const double c_lo = scaled_boundary(q, y - 1, sigma);
        for (std::size_t i = 0; i < c.half_size(); ++i) {
            const DecisionRegion reg = decision_region(c, q, y, i);
            if (reg.empty()) {
                continue;
            }
            const double b = per_symbol_snr(c, i, snr_lin);
            terms.push_back(h_function(m, ch.omega, b, c_hi, reg.lower, reg.upper));
            terms.push_back(-h_function(m, ch.omega, b, c_lo, reg.lower, reg.upper));
        }
    }
    const double n_terms = static_cast<double>(terms.size());
    const double correct = compensated_sum(std::move(terms));
    const double p = 1.0 - 2.0 / c.order() * correct;
    return {finalize_probability(p, "closed-form engine"), SepMethod::closed_form,
            n_terms * 64.0 * std::numeric_limits<double>::epsilon()};
}

SepResult sep_quadrature(const Constellation& c, const Quantizer& q, const ChannelModel& ch, double snr_lin)
{
    check_system(ch, snr_lin);
    const double sigma = std::sqrt(noise_variance(c, snr_lin));
    std::vector<double> terms;
    double err = 0.0;
    bool converged = true;
    for (int y = 1; y <= q.levels() + 1; ++y) {
        const double c_hi = scaled_boundary(q, y, sigma);
        const double c_lo = scaled_boundary(q, y - 1, sigma);
        for (std::size_t i = 0; i < c.half_size(); ++i) {
            const DecisionRegion reg = decision_region(c, q, y, i);
            if (reg.empty()) {
                continue;
            }
            const double b = per_symbol_snr(c, i, snr_lin);
            // P(y | z, rho_i) = Q(-c_y + t) - Q(-c_{y-1} + t), t = sqrt(b z)
            auto g = [&](double z) {
                const double t = std::sqrt(b * z);
                return gaussian_interval(t - c_hi, t - c_lo);
            };
            std::vector<double> pts;
            add_transition_points(pts, b, c_hi);
            add_transition_points(pts, b, c_lo);
            const QuadratureValue v = integrate_against_fading(g, ch.m, ch.omega, reg.lower, reg.upper, std::move(pts));
            terms.push_back(v.value);
            err += v.abs_error;
            converged = converged && v.converged;
        }
    }
    const double correct = compensated_sum(std::move(terms));
    const double p = 1.0 - 2.0 / c.order() * correct;
    if (!converged) {
        throw NumericalError("quadrature engine did not converge (best estimate " + std::to_string(p) +
                             ", error estimate " + std::to_string(err) + ")");
    }
    return {finalize_probability(p, "quadrature engine"), SepMethod::quadrature, 2.0 / c.order() * err};
}

SepResult sep_noiseless(const Constellation& c, const Quantizer& q, const ChannelModel& ch)
{
    ChannelModel probe = ch;
    probe.sigma2 = 0.0;
    probe.validate();
    std::vector<double> gaps;
    for (std::size_t i = 0; i < c.half_size(); ++i) {
        std::vector<std::pair<double, double>> accept;
        for (int y = 1; y <= q.levels() + 1; ++y) {
            const DecisionRegion r = noiseless_region(c, q, y, i);
            if (!r.empty()) {
                accept.emplace_back(r.lower, r.upper);
            }
        }
        std::sort(accept.begin(), accept.end());
        // Error mass of symbol i = Gamma mass of the complement of the union.
        // Adjacent regions share an endpoint up to round-off; slivers of a
        // few ulps are not gaps.
        constexpr double kJoin = 16.0 * std::numeric_limits<double>::epsilon();
        double covered = 0.0;
        for (const auto& [lo, hi] : accept) {
            if (lo > covered * (1.0 + kJoin)) {
                gaps.push_back(gamma_mass(ch.m, ch.omega, covered, lo));
            }
            covered = std::max(covered, hi);
        }
        if (covered < kInf) {
            gaps.push_back(gamma_mass(ch.m, ch.omega, covered, kInf));
        }
    }
    const double p = 2.0 / c.order() * compensated_sum(std::move(gaps));
    return {finalize_probability(p, "noiseless engine"), SepMethod::noiseless,
            16.0 * std::numeric_limits<double>::epsilon() * p};
}

FloorBounds floor_bounds(const Constellation& c, const Quantizer& q, const ChannelModel& ch)
{
    ChannelModel probe = ch;
    probe.sigma2 = 0.0;
    probe.validate();
    if (c.half_size() < 2) {
        throw std::invalid_argument("floor bounds need M >= 4");
    }
    const double rho1 = c.amplitude(1);
    const double rho_lo = c.amplitude(c.half_size() - 2);
    const double q1 = q.boundary(1);
    const double qk = q.boundary(q.levels());
    const double bracket = gamma_mass(ch.m, ch.omega, 0.0, q1 * q1 / (rho1 * rho1)) +
                           gamma_mass(ch.m, ch.omega, qk * qk / (rho_lo * rho_lo), kInf);
    const double big_m = c.order();
    return {2.0 / big_m * bracket, (big_m / 4.0 - 0.5) * bracket};
}

double floor_geometric(const GeometricConstellation& cg, double q_param, const ChannelModel& ch, int bits,
                       FloorKind kind)
{
    ChannelModel probe = ch;
    probe.sigma2 = 0.0;
    probe.validate();
    if (!(q_param > 0.0) || !std::isfinite(q_param)) {
        throw std::invalid_argument("quantizer parameter must be positive");
    }
    boundary_count(bits);
    const int big_m = cg.order();
    const double log_rho = std::log(cg.rho());
    const double log_scale = std::log(ch.m / ch.omega) - 2.0 * std::log(cg.normalizer());
    double inner_exponent = 0.0;  // exponent of rho in the lower-tail argument
    double outer_exponent = 0.0;
    double outer_gain = 0.0;      // log of (q_K / q_param)^2
    if (kind == FloorKind::ratio) {
        if (!(std::ldexp(1.0, bits) > big_m - 2)) {
            throw RegimeError("geometric floor bound needs 2^b > M - 2");
        }
        inner_exponent = big_m - 2;
        outer_exponent = std::ldexp(1.0, bits);
    } else {
        if (big_m != 4) {
            throw RegimeError("uniform-quantizer floor bound is derived for M = 4 only");
        }
        inner_exponent = 2;
        outer_exponent = 4;
        outer_gain = 2.0 * std::log(boundary_count(bits));
    }
    const double log_q2 = 2.0 * std::log(q_param);
    const double x_inner = std::exp(log_scale + log_q2 - inner_exponent * log_rho);
    const double x_outer = std::exp(log_scale + log_q2 + outer_gain - outer_exponent * log_rho);
    return (big_m / 4.0 - 0.5) * (lower_gamma_reg(ch.m, x_inner) + upper_gamma_reg(ch.m, x_outer));
}

SepResult sep_aqnm(const Constellation& c, double snr_lin, double alpha)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("AQNM distortion factor must lie in (0, 1]");
    }
    if (!(snr_lin > 0.0)) {
        throw std::invalid_argument("SNR must be positive");
    }
    const double es = symbol_energy(c);
    const double sigma2 = snr_lin == kInf ? 0.0 : es / snr_lin;
    const double distortion = sigma2 + (1.0 - alpha) * es;
    const double ratio = distortion == 0.0 ? 1.0 : std::sqrt(alpha * es / (es * distortion + alpha * es));
    // SINR / (E_s + SINR) = alpha E_s / (E_s d + alpha E_s), d = sigma2 + (1 - alpha) E_s
    const double big_m = c.order();
    const double p = (big_m - 1.0) / big_m * (1.0 - ratio);
    return {finalize_probability(p, "AQNM baseline"), SepMethod::aqnm, 4.0 * std::numeric_limits<double>::epsilon()};
}

}  // namespace pamq
