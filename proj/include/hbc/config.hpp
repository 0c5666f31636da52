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

#ifndef HBC_CONFIG_HPP
#define HBC_CONFIG_HPP

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hbc
{
    // Sectioned key-value text:
    //
    //   # comment
    //   [rx]
    //   radius_m = 0.03
    //
    // Keys are addressed as (section, key); values are kept as text and
    // converted on access.
    class Config
    {
    public:
        Config() = default;

        static Config parse(std::istream &is, const std::string &source_name = "<stream>");
        static Config load(const std::filesystem::path &path);

        bool has(const std::string &section, const std::string &key) const;
        std::optional<std::string> get(const std::string &section, const std::string &key) const;
        // Throws ConfigError when present but not a number.
        std::optional<double> get_number(const std::string &section, const std::string &key) const;
        // Throws MissingParameterError("section.key") when absent.
        double require_number(const std::string &section, const std::string &key) const;
        std::string require(const std::string &section, const std::string &key) const;
        bool get_flag(const std::string &section, const std::string &key, bool fallback) const;

        void set(const std::string &section, const std::string &key, const std::string &value);
        void set_number(const std::string &section, const std::string &key, double value);
        void erase(const std::string &section, const std::string &key);
        void erase_section(const std::string &section);

        bool has_section(const std::string &section) const { return sections_.count(section) > 0; }
        std::vector<std::string> section_names() const;

        // Directory of the file the config was loaded from (empty for streams).
        const std::filesystem::path &base_dir() const { return base_dir_; }
        void set_base_dir(std::filesystem::path dir) { base_dir_ = std::move(dir); }

    private:
        std::map<std::string, std::map<std::string, std::string>> sections_;
        std::filesystem::path base_dir_;
    };

    // Shortest decimal text that parses back to the same double.
    std::string format_number(double v);

} // namespace hbc

#endif
