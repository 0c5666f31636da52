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

#ifndef HBC_ERRORS_HPP
#define HBC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace hbc
{
    // Input outside an operation's mathematical domain (nonpositive radius, x outside (0,1], ...).
    class DomainError : public std::invalid_argument
    {
    public:
        using std::invalid_argument::invalid_argument;
    };

    // A closed form would divide by a vanishing denominator.
    class DegenerateScenarioError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Nodal system cannot be solved; carries the nodes that caused it.
    class SingularSystemError : public std::runtime_error
    {
    public:
        SingularSystemError(const std::string &what, std::vector<int> nodes)
            : std::runtime_error(what), nodes_(std::move(nodes)) {}
        const std::vector<int> &nodes() const { return nodes_; }

    private:
        std::vector<int> nodes_;
    };

    // Peak search failures in resonance sweeps.
    class PeakSearchError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // Bad or missing configuration data.
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class MissingParameterError : public ConfigError
    {
    public:
        explicit MissingParameterError(const std::string &field)
            : ConfigError("missing parameter: " + field), field_(field) {}
        const std::string &field() const { return field_; }

    private:
        std::string field_;
    };

    class InconsistentParameterError : public ConfigError
    {
    public:
        using ConfigError::ConfigError;
    };

    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

} // namespace hbc

#endif
