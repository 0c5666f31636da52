// SPDX-License-Identifier: Apache-2.0
//
// hbc-channel: capacitive body-channel modelling toolkit
// Copyright (C) 2026 The hbc-channel authors
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

#include "hbc/transfer.hpp"
#include "hbc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace hbc
{
    namespace
    {
        // Denominators below 1e-30 F (per capacitance factor) are treated as degenerate.
        double guarded_divide(double num, double den, int degree)
        {
            if (!(std::abs(den) >= std::pow(1e-30, degree)))
                throw DegenerateScenarioError("degenerate scenario: vanishing denominator in transfer function");
            return num / den;
        }

        void require_positive(Capacitance c, const char *what)
        {
            if (!(c.value() > 0.0) || !std::isfinite(c.value()))
                throw DomainError(std::string(what) + " must be positive");
        }

        void require_scenario(const ChannelScenario &s)
        {
            require_positive(s.c_x_tx, "C_x-Tx");
            require_positive(s.c_x_rx, "C_x-Rx");
            require_positive(s.c_gb_rx, "C_GB-Rx");
            require_positive(s.c_l, "C_L");
            require_positive(s.c_b, "C_B");
            if (!(s.c_c.value() >= 0.0) || !std::isfinite(s.c_c.value()))
                throw DomainError("C_c must be nonnegative");
        }

        double rel_err(double a, double ref)
        {
            if (ref == 0.0)
                return a == 0.0 ? 0.0 : INFINITY;
            return std::abs(a - ref) / std::abs(ref);
        }

        bool close_rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }
    } // namespace

    void ChannelScenario::validate() const
    {
        require_scenario(*this);
        if (!provenance)
            return;
        const auto &p = *provenance;
        const double tol = 1e-12;
        if (!close_rel(return_path_capacitance(p.tx, p.x_tx).value(), c_x_tx.value(), tol))
            throw DomainError("scenario C_x-Tx does not match its geometric provenance");
        if (!close_rel(return_path_capacitance(p.rx, p.x_rx).value(), c_x_rx.value(), tol))
            throw DomainError("scenario C_x-Rx does not match its geometric provenance");
        const auto gb = ground_to_body_capacitance(plate_to_plate_capacitance(p.rx), p.fringe);
        if (!close_rel(gb.value(), c_gb_rx.value(), tol))
            throw DomainError("scenario C_GB-Rx does not match its geometric provenance");
        if (p.separation && p.coupling)
        {
            const auto cc = coupling_capacitance(p.tx, *p.separation, *p.coupling);
            if (!close_rel(cc.value(), c_c.value(), tol))
                throw DomainError("scenario C_c does not match its geometric provenance");
        }
    }

    double body_potential_ratio(Capacitance c_return, Capacitance c_b)
    {
        require_positive(c_return, "return path capacitance");
        require_positive(c_b, "body capacitance");
        return guarded_divide(c_return.value(), c_b.value(), 1);
    }

    Capacitance extract_return_path(double v_ratio, Capacitance c_b)
    {
        if (!(v_ratio > 0.0 && v_ratio < 1.0))
            throw DomainError("body potential ratio must lie in (0, 1)");
        require_positive(c_b, "body capacitance");
        return Capacitance(c_b.value() * v_ratio);
    }

    double rx_transfer_distant(const ChannelScenario &s)
    {
        require_scenario(s);
        // Same operation order as simplified_transfer so both agree bit-for-bit at C_c = 0.
        const double forward = guarded_divide(s.c_x_rx.value() * s.c_x_tx.value(), s.c_b.value(), 1);
        return guarded_divide(forward, s.c_l.value() + s.c_gb_rx.value(), 1);
    }

    double full_transfer(const ChannelScenario &s)
    {
        require_scenario(s);
        const double cb = s.c_b.value(), cxt = s.c_x_tx.value(), cxr = s.c_x_rx.value();
        const double cc = s.c_c.value(), rx_side = s.c_l.value() + s.c_gb_rx.value();

        const double coupling_term = cc * (cb + cxr + cxt);
        const double num = coupling_term + cxr * cxt;
        const double den = coupling_term + (cb + cxr) * (rx_side + cxt) + cxt * rx_side;
        return guarded_divide(num, den, 2);
    }

    double simplified_transfer(const ChannelScenario &s)
    {
        require_scenario(s);
        const double cc = s.c_c.value();
        const double num = cc + guarded_divide(s.c_x_rx.value() * s.c_x_tx.value(), s.c_b.value(), 1);
        return guarded_divide(num, cc + (s.c_l.value() + s.c_gb_rx.value()), 1);
    }

    double geometric_transfer(const GeometricInputs &in, CouplingRegime regime)
    {
        in.tx.validate();
        in.rx.validate();
        if (in.tx.radius != in.rx.radius)
            throw DomainError("geometric transfer assumes equal Tx and Rx radius");
        for (double x : {in.x_tx, in.x_rx})
            if (!(x > 0.0 && x <= 1.0))
                throw DomainError("shadowing fraction must lie in (0, 1]");
        require_positive(in.c_l, "C_L");
        require_positive(in.c_b, "C_B");
        if (!(in.fringe.value() >= 0.0))
            throw DomainError("fringe capacitance must be nonnegative");

        const double e0 = physical::epsilon0;
        const double a = in.rx.radius.value();
        const double area = physical::pi * a * a;
        const double self = 8.0 * e0 * a;
        const double return_product = in.x_tx * in.x_rx * self * self;
        const double rx_side = e0 * area / in.rx.thickness.value() + in.fringe.value() + in.c_l.value();

        if (regime == CouplingRegime::distant)
            return guarded_divide(return_product, in.c_b.value() * rx_side, 2);

        if (!in.coupling)
            throw DomainError("coupled geometric transfer needs a coupling constant");
        if (!(in.separation.value() > 0.0))
            throw DomainError("device separation must be positive");
        const double coupling = in.coupling->value() * area / in.separation.value();
        const double num = coupling + guarded_divide(return_product, in.c_b.value(), 1);
        return guarded_divide(num, coupling + rx_side, 1);
    }

    double ratio_to_db(double r)
    {
        if (!(r > 0.0) || !std::isfinite(r))
            throw DomainError("dB conversion needs a positive ratio");
        return 20.0 * std::log10(r);
    }

    RegimeFlags classify_regime(const ChannelScenario &s)
    {
        RegimeFlags f;
        f.distant = s.c_c.value() < distant_coupling_limit_f;
        f.coupled = s.c_c.value() > coupled_coupling_limit_f;
        const double cx = std::max(s.c_x_tx.value(), s.c_x_rx.value());
        f.invalid_approximation = cx / (s.c_l.value() + s.c_gb_rx.value()) > approximation_ratio_limit ||
                                  cx / s.c_b.value() > approximation_ratio_limit;
        return f;
    }

    CapNetwork channel_network(const ChannelScenario &s)
    {
        return build_channel_network(s.c_x_tx, s.c_x_rx, s.c_gb_rx, s.c_l, s.c_b, s.c_c);
    }

    TransferReport compare_closed_forms(const ChannelScenario &s, Frequency frequency)
    {
        s.validate();
        TransferReport r;
        r.frequency = frequency;
        r.body_potential = body_potential_ratio(s.c_x_tx, s.c_b);
        r.rx_distant = rx_transfer_distant(s);
        r.simplified = simplified_transfer(s);
        r.full = full_transfer(s);

        if (s.provenance && s.provenance->tx.radius == s.provenance->rx.radius)
        {
            const auto &p = *s.provenance;
            GeometricInputs in{p.tx, p.rx, p.separation.value_or(Length(0.0)), p.coupling, p.x_tx, p.x_rx,
                               p.fringe, s.c_l, s.c_b};
            r.geometric_distant = geometric_transfer(in, CouplingRegime::distant);
            if (p.separation && p.coupling)
                r.geometric_coupled = geometric_transfer(in, CouplingRegime::coupled);
        }

        const auto sol = solve_transfer(channel_network(s), frequency);
        r.oracle = sol.ratio.real();

        r.relative_errors["rx_distant_vs_full"] = rel_err(r.rx_distant, r.full);
        r.relative_errors["simplified_vs_full"] = rel_err(r.simplified, r.full);
        r.relative_errors["rx_distant_vs_simplified"] = rel_err(r.rx_distant, r.simplified);
        r.relative_errors["full_vs_oracle"] = rel_err(r.full, *r.oracle);
        r.relative_errors["simplified_vs_oracle"] = rel_err(r.simplified, *r.oracle);
        if (r.geometric_coupled)
            r.relative_errors["geometric_coupled_vs_simplified"] = rel_err(*r.geometric_coupled, r.simplified);
        if (r.geometric_distant)
            r.relative_errors["geometric_distant_vs_rx_distant"] = rel_err(*r.geometric_distant, r.rx_distant);

        r.flags = classify_regime(s);
        return r;
    }

} // namespace hbc
