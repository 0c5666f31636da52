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

#ifndef HBC_NETWORK_HPP
#define HBC_NETWORK_HPP

#include "hbc/quantity.hpp"

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace hbc
{
    struct CapBranch
    {
        int node_a;
        int node_b;
        Capacitance capacitance;
    };

    // Ideal voltage source: V(plus) - V(minus) = amplitude.
    struct VoltageSource
    {
        int plus;
        int minus;
        double amplitude = 1.0;
    };

    struct OutputPort
    {
        int plus;
        int minus;
    };

    // Lumped capacitive network with one ideal source and one output port.
    // Construction validates node ranges, capacitances and port pairs; the
    // object is immutable afterwards.
    class CapNetwork
    {
    public:
        CapNetwork(int node_count, int reference_node, std::vector<CapBranch> branches, VoltageSource source,
                   OutputPort output, std::vector<std::string> node_labels = {});

        int node_count() const { return node_count_; }
        int reference_node() const { return reference_; }
        const std::vector<CapBranch> &branches() const { return branches_; }
        const VoltageSource &source() const { return source_; }
        const OutputPort &output() const { return output_; }
        const std::string &label(int node) const { return labels_.at(static_cast<std::size_t>(node)); }

        // Same topology with every branch capacitance multiplied by factor.
        CapNetwork scaled(double factor) const;

    private:
        int node_count_;
        int reference_;
        std::vector<CapBranch> branches_;
        VoltageSource source_;
        OutputPort output_;
        std::vector<std::string> labels_;
    };

    struct TransferSolution
    {
        std::complex<double> ratio;                       // (V_out+ - V_out-) / amplitude
        std::vector<std::complex<double>> node_potentials; // indexed by node id, reference = 0
        // Determinant of the reduced nodal admittance system (pivot product).
        // ratio * determinant is the numerator polynomial of the transfer.
        std::complex<double> determinant;
    };

    struct WellPosedness
    {
        bool ok() const { return floating_nodes.empty(); }
        std::vector<int> floating_nodes;
    };

    // Node ids of the channel network produced by build_channel_network.
    namespace channel_nodes
    {
        inline constexpr int earth = 0;
        inline constexpr int body = 1;
        inline constexpr int tx_ground = 2;
        inline constexpr int rx_ground = 3;
    } // namespace channel_nodes

    // Four-node reconstruction of the full channel circuit:
    //   C_B      body      - earth
    //   C_x-Tx   tx ground - earth
    //   C_x-Rx   rx ground - earth
    //   C_L      body      - rx ground
    //   C_GB-Rx  body      - rx ground
    //   C_c      tx ground - rx ground   (omitted when zero)
    // Source drives body against tx ground; output is read across body/rx ground.
    // Body to tx-ground capacitance sits directly across the ideal source and
    // does not affect the transfer, so it is not represented.
    CapNetwork build_channel_network(Capacitance c_x_tx, Capacitance c_x_rx, Capacitance c_gb_rx, Capacitance c_l,
                                     Capacitance c_b, Capacitance c_c);

    // Every node must reach the reference through branches or the source.
    WellPosedness well_posedness_check(const CapNetwork &net);

    // AC nodal solve at the given frequency (Y = j w C); throws SingularSystemError
    // listing offending nodes when the system cannot be solved.
    TransferSolution solve_transfer(const CapNetwork &net, Frequency frequency);

    // Debug listing: "node_i node_j C_farads" per branch, then SRC and OUT lines.
    void dump_network(const CapNetwork &net, std::ostream &os);

} // namespace hbc

#endif
